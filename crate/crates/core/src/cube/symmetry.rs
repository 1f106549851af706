//! The hyperoctahedral group: coordinate permutations composed with bit flips.

use super::vertex::{coord, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSymmetry {
    n: usize,
    /// Coordinate `j` (0-based) of the input moves to position `perm[j]`.
    perm: Vec<usize>,
    /// Bit pattern XORed onto the output vertex.
    flip: u32,
}

impl CubeSymmetry {
    pub fn apply(&self, v: u32) -> u32 {
        let mut out = 0u32;
        for j in 0..self.n {
            if coord(self.n, v, j + 1) == 1 {
                out |= 1 << (self.n - 1 - self.perm[j]);
            }
        }
        out ^ self.flip
    }

    pub fn apply_set(&self, set: &VertexSet) -> VertexSet {
        VertexSet::from_indices(set.n(), set.iter().map(|v| self.apply(v)))
    }
}

/// All `2^n · n!` symmetries of the n-cube.
pub fn all_symmetries(n: usize) -> Vec<CubeSymmetry> {
    let mut perms = Vec::new();
    permutations(&mut (0..n).collect::<Vec<_>>(), 0, &mut perms);
    let mut out = Vec::with_capacity(perms.len() << n);
    for perm in perms {
        for flip in 0..(1u32 << n) {
            out.push(CubeSymmetry {
                n,
                perm: perm.clone(),
                flip,
            });
        }
    }
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}
