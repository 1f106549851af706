//! Triangulations and regular subdivisions of the 3-cube, its secondary fan,
//! the first tropical RBM model `TM¹₃` as a subcomplex of the secondary
//! sphere, and simplicial homology.

use crate::cube::combinations;
use crate::cube::symmetry::all_symmetries;
use crate::cube::vertex::{coord, parse_vertex, vertex_string};
use crate::cube::VertexSet;
use crate::exact::rational::{canonical_direction, int};
use crate::exact::{solve_feasibility, Feasibility, LinearSystem, Rational, RationalMatrix};
use crate::tropical::{membership_tm1, phi, TropicalPoint};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

const N: usize = 3;
const POINTS: usize = 8;
/// Vertices fixed to height zero when reducing lifts modulo affine functions.
const AFFINE_BASIS: [usize; 4] = [0b000, 0b100, 0b010, 0b001];
/// Remaining coordinates of a reduced lift.
const FREE: [usize; 4] = [0b011, 0b101, 0b110, 0b111];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("lift must have {POINTS} entries, got {0}")]
    LiftLength(usize),
    #[error("membership verdicts are not closed under taking faces: {0}")]
    NotClosed(String),
    #[error("kept face is not a simplex: {0}")]
    NotSimplicial(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("malformed triangulation file: {0}")]
    Parse(String),
}

/// Homogeneous coordinates `(1, v₁, v₂, v₃)`.
fn point(v: usize) -> [i64; 4] {
    let v = v as u32;
    [
        1,
        i64::from(coord(N, v, 1)),
        i64::from(coord(N, v, 2)),
        i64::from(coord(N, v, 3)),
    ]
}

fn det3(m: [[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of four homogeneous points: six times the signed volume.
fn det4(ps: [usize; 4]) -> i64 {
    let rows = ps.map(point);
    let mut total = 0;
    for col in 0..4 {
        let minor = [0, 1, 2].map(|r| {
            let row = rows[r + 1];
            let mut out = [0; 3];
            let mut k = 0;
            for (c, &x) in row.iter().enumerate() {
                if c != col {
                    out[k] = x;
                    k += 1;
                }
            }
            out
        });
        let sign = if col % 2 == 0 { 1 } else { -1 };
        total += sign * rows[0][col] * det3(minor);
    }
    total
}

fn homogeneous_matrix(vertices: &[usize]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(4, vertices.len());
    for (c, &v) in vertices.iter().enumerate() {
        for (r, x) in point(v).iter().enumerate() {
            m.set(r, c, int(*x));
        }
    }
    m
}

/// A signed circuit: minimal affinely dependent set split by coefficient sign.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Circuit {
    positive: Vec<usize>,
    negative: Vec<usize>,
}

fn circuits() -> Vec<Circuit> {
    let mut out = Vec::new();
    for size in 2..=5 {
        for s in combinations(POINTS, size) {
            let m = homogeneous_matrix(&s);
            if m.rank() != size - 1 {
                continue;
            }
            let minimal = (0..size).all(|skip| {
                let sub: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                homogeneous_matrix(&sub).rank() == size - 1
            });
            if !minimal {
                continue;
            }
            let kernel = m.nullspace().column(0);
            let pos: Vec<usize> = s.iter().zip(&kernel).filter(|(_, x)| x.is_positive()).map(|(&v, _)| v).collect();
            let neg: Vec<usize> = s.iter().zip(&kernel).filter(|(_, x)| x.is_negative()).map(|(&v, _)| v).collect();
            out.push(Circuit {
                positive: pos.clone(),
                negative: neg.clone(),
            });
            out.push(Circuit {
                positive: neg,
                negative: pos,
            });
        }
    }
    out
}

/// A tetrahedron as four sorted vertex indices.
pub type Tetrahedron = [usize; 4];

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triangulation {
    cells: Vec<Tetrahedron>,
}

impl Triangulation {
    pub fn new(mut cells: Vec<Tetrahedron>) -> Self {
        for c in &mut cells {
            c.sort_unstable();
        }
        cells.sort_unstable();
        Self { cells }
    }

    pub fn cells(&self) -> &[Tetrahedron] {
        &self.cells
    }

    /// Sum of the tetrahedron volumes (the cube has volume 1).
    pub fn volume(&self) -> Rational {
        self.cells
            .iter()
            .map(|&t| Rational::new(det4(t).abs().into(), 6.into()))
            .sum()
    }

    pub fn cell_sets(&self) -> Vec<VertexSet> {
        self.cells
            .iter()
            .map(|t| VertexSet::from_indices(N, t.iter().map(|&v| v as u32)))
            .collect()
    }

    /// One cell per line as four vertex bit strings.
    pub fn to_text(&self) -> String {
        self.cells
            .iter()
            .map(|t| {
                let parts: Vec<String> = t.iter().map(|&v| vertex_string(N, v as u32)).collect();
                parts.join(" ") + "\n"
            })
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self, FanError> {
        let mut cells = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let vs: Vec<usize> = line
                .split_whitespace()
                .map(|s| {
                    parse_vertex(s)
                        .filter(|_| s.len() == N)
                        .map(|v| v as usize)
                        .ok_or_else(|| FanError::Parse(format!("bad vertex {s:?}")))
                })
                .collect::<Result<_, _>>()?;
            let cell: Tetrahedron = vs
                .try_into()
                .map_err(|_| FanError::Parse(format!("cell {line:?} needs four vertices")))?;
            cells.push(cell);
        }
        Ok(Self::new(cells))
    }

    /// Pairs of cells sharing a triangle, as `(triangle, a, b)` with `a` and
    /// `b` the opposite vertices.
    fn interior_triangles(&self) -> Vec<([usize; 3], usize, usize)> {
        let mut out = Vec::new();
        for (i, s) in self.cells.iter().enumerate() {
            for t in &self.cells[i + 1..] {
                let common: Vec<usize> = s.iter().copied().filter(|v| t.contains(v)).collect();
                if common.len() == 3 {
                    let a = *s.iter().find(|v| !common.contains(v)).expect("one extra");
                    let b = *t.iter().find(|v| !common.contains(v)).expect("one extra");
                    out.push(([common[0], common[1], common[2]], a, b));
                }
            }
        }
        out
    }

    /// Folding inequalities `ℓ·w > 0` cutting out the secondary cone: one per
    /// interior triangle, from the affine dependency on its five points,
    /// signed positive on the two opposite vertices.
    pub fn folding_rows(&self) -> Vec<Vec<Rational>> {
        self.interior_triangles()
            .into_iter()
            .map(|(f, a, b)| {
                let vs = [f[0], f[1], f[2], a, b];
                let kernel = homogeneous_matrix(&vs).nullspace();
                debug_assert_eq!(kernel.cols(), 1);
                let mut lambda = kernel.column(0);
                if lambda[3].is_negative() {
                    lambda.iter_mut().for_each(|x| *x = -x.clone());
                }
                debug_assert!(lambda[4].is_positive());
                let mut row = vec![Rational::zero(); POINTS];
                for (&v, l) in vs.iter().zip(lambda) {
                    row[v] = l;
                }
                row
            })
            .collect()
    }

    /// A lift inducing this triangulation, if it is regular.
    pub fn regular_lift(&self) -> Option<Vec<Rational>> {
        let mut sys = LinearSystem::new(POINTS);
        for row in self.folding_rows() {
            sys.strict(row);
        }
        for v in AFFINE_BASIS {
            let mut e = vec![Rational::zero(); POINTS];
            e[v] = int(1);
            sys.equal(e);
        }
        match solve_feasibility(&sys).expect("well-formed system") {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

fn proper_intersection(s: &Tetrahedron, t: &Tetrahedron, circuits: &[Circuit]) -> bool {
    !circuits.iter().any(|c| {
        c.positive.iter().all(|v| s.contains(v)) && c.negative.iter().all(|v| t.contains(v))
    })
}

/// All triangulations of the 3-cube using its vertices, by backtracking over
/// non-degenerate tetrahedra: pairwise proper intersection (no circuit splits
/// across two cells) and total volume equal to that of the cube.
pub fn enumerate_triangulations() -> Vec<Triangulation> {
    let circuits = circuits();
    let tets: Vec<(Tetrahedron, i64)> = combinations(POINTS, 4)
        .into_iter()
        .map(|c| [c[0], c[1], c[2], c[3]])
        .map(|t| (t, det4(t).abs()))
        .filter(|&(_, d)| d != 0)
        .collect();
    let compatible: Vec<Vec<bool>> = tets
        .iter()
        .map(|(s, _)| tets.iter().map(|(t, _)| proper_intersection(s, t, &circuits)).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    backtrack(&tets, &compatible, 0, 6, &mut chosen, &mut out);
    out.sort();
    out
}

fn backtrack(
    tets: &[(Tetrahedron, i64)],
    compatible: &[Vec<bool>],
    start: usize,
    remaining: i64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Triangulation>,
) {
    if remaining == 0 {
        out.push(Triangulation::new(chosen.iter().map(|&i| tets[i].0).collect()));
        return;
    }
    for i in start..tets.len() {
        if tets[i].1 > remaining || !chosen.iter().all(|&j| compatible[i][j]) {
            continue;
        }
        chosen.push(i);
        backtrack(tets, compatible, i + 1, remaining - tets[i].1, chosen, out);
        chosen.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubdivision {
    pub cells: Vec<VertexSet>,
    pub lift: Vec<Rational>,
}

impl RegularSubdivision {
    pub fn is_triangulation(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 4)
    }

    /// Cell sizes in increasing order.
    pub fn cell_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.cells.iter().map(VertexSet::len).collect();
        s.sort_unstable();
        s
    }
}

/// Regular subdivision induced by lifting vertex `v` to height `w_v` and
/// projecting the lower faces of the lifted polytope.
pub fn regular_subdivision_from_lift(w: &[Rational]) -> Result<RegularSubdivision, FanError> {
    if w.len() != POINTS {
        return Err(FanError::LiftLength(w.len()));
    }
    let mut cells: BTreeSet<VertexSet> = BTreeSet::new();
    for c in combinations(POINTS, 4) {
        let t = [c[0], c[1], c[2], c[3]];
        if det4(t) == 0 {
            continue;
        }
        // affine function h(x) = a·(1, x) interpolating the lift on t
        let mut m = RationalMatrix::zeros(4, 4);
        for (r, &v) in t.iter().enumerate() {
            for (col, x) in point(v).iter().enumerate() {
                m.set(r, col, int(*x));
            }
        }
        let rhs: Vec<Rational> = t.iter().map(|&v| w[v].clone()).collect();
        let a = m.solve(&rhs).expect("non-degenerate tetrahedron");
        let height = |v: usize| -> Rational {
            point(v).iter().zip(&a).map(|(&x, ai)| ai * int(x)).sum()
        };
        let mut cell = VertexSet::empty(N);
        let mut lower = true;
        for v in 0..POINTS {
            let h = height(v);
            if w[v] < h {
                lower = false;
                break;
            }
            if w[v] == h {
                cell.insert(v as u32);
            }
        }
        if lower {
            cells.insert(cell);
        }
    }
    Ok(RegularSubdivision {
        cells: cells.into_iter().collect(),
        lift: w.to_vec(),
    })
}

/// A lift with `w = 0` on the affine basis and `y` on the free vertices.
pub fn lift_from_reduced(y: &[Rational]) -> Vec<Rational> {
    let mut w = vec![Rational::zero(); POINTS];
    for (&v, x) in FREE.iter().zip(y) {
        w[v] = x.clone();
    }
    w
}

/// The same lift modulo affine functions, in the free coordinates.
pub fn reduce_lift(w: &[Rational]) -> Vec<Rational> {
    // subtract the affine function agreeing with w on the basis vertices
    let base = &w[0];
    let slope: Vec<Rational> = [0b100, 0b010, 0b001].iter().map(|&v| &w[v] - base).collect();
    FREE.iter()
        .map(|&v| {
            let mut aff = base.clone();
            for j in 1..=N {
                if coord(N, v as u32, j) == 1 {
                    aff += &slope[j - 1];
                }
            }
            &w[v] - aff
        })
        .collect()
}

/// One secondary cone in reduced coordinates.
#[derive(Debug, Clone)]
struct Cone {
    rows: Vec<Vec<Rational>>,
}

impl Cone {
    fn satisfied(&self, r: &[Rational]) -> (bool, bool) {
        let vals: Vec<Rational> = self
            .rows
            .iter()
            .map(|a| a.iter().zip(r).map(|(x, y)| x * y).sum())
            .collect();
        (
            vals.iter().all(|v: &Rational| !v.is_negative()),
            vals.iter().all(|v: &Rational| !v.is_positive()),
        )
    }

    fn extreme_rays(&self) -> BTreeSet<Vec<BigInt>> {
        let mut rays = BTreeSet::new();
        for idx in combinations(self.rows.len(), 3) {
            let m = RationalMatrix::from_rows(idx.iter().map(|&i| self.rows[i].clone()).collect(), 4)
                .expect("uniform rows");
            if m.rank() != 3 {
                continue;
            }
            let r = m.nullspace().column(0);
            match self.satisfied(&r) {
                (true, _) => {
                    rays.insert(canonical_ray(&r));
                }
                (false, true) => {
                    let neg: Vec<Rational> = r.iter().map(|x| -x.clone()).collect();
                    rays.insert(canonical_ray(&neg));
                }
                _ => {}
            }
        }
        rays
    }
}

/// Primitive integer vector with the same direction (sign kept).
fn canonical_ray(r: &[Rational]) -> Vec<BigInt> {
    let dir = canonical_direction(r);
    let flip = r
        .iter()
        .zip(&dir)
        .find(|(x, _)| !x.is_zero())
        .map_or(false, |(x, d)| x.is_positive() != d.is_positive());
    if flip {
        dir.into_iter().map(|x| -x).collect()
    } else {
        dir
    }
}

fn ray_rank(rays: &[Vec<BigInt>], ids: &[usize]) -> usize {
    if ids.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = ids
        .iter()
        .map(|&i| rays[i].iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect();
    RationalMatrix::from_rows(rows, 4).expect("uniform rows").rank()
}

/// The secondary fan modulo its lineality space: one pointed 4-dimensional
/// cone per triangulation, with faces recorded by their extreme rays.
#[derive(Debug, Clone)]
pub struct SecondaryFan {
    pub triangulations: Vec<Triangulation>,
    /// Extreme rays in reduced coordinates, sorted.
    pub rays: Vec<Vec<BigInt>>,
    /// Every nonzero face, as sorted ray ids, with its dimension (1..=4).
    pub faces: BTreeMap<Vec<usize>, usize>,
    /// Ray set of the maximal cone of each triangulation.
    pub maximal: Vec<Vec<usize>>,
    pub lineality_dim: usize,
}

impl SecondaryFan {
    pub fn compute() -> Self {
        let triangulations = enumerate_triangulations();
        let all_rows: Vec<Vec<Rational>> =
            triangulations.iter().flat_map(Triangulation::folding_rows).collect();
        let lineality_dim = RationalMatrix::from_rows(all_rows, POINTS)
            .expect("uniform rows")
            .nullspace()
            .cols();
        let cones: Vec<Cone> = triangulations
            .iter()
            .map(|t| Cone {
                rows: t
                    .folding_rows()
                    .into_iter()
                    .map(|row| FREE.iter().map(|&v| row[v].clone()).collect())
                    .collect(),
            })
            .collect();
        let cone_rays: Vec<BTreeSet<Vec<BigInt>>> = cones.par_iter().map(Cone::extreme_rays).collect();
        let rays: Vec<Vec<BigInt>> = cone_rays
            .iter()
            .flatten()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let id: BTreeMap<&Vec<BigInt>, usize> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut faces = BTreeMap::new();
        let mut maximal = Vec::new();
        for (cone, cr) in cones.iter().zip(&cone_rays) {
            let ids: Vec<usize> = cr.iter().map(|r| id[r]).collect();
            // facets: rays tight on one inequality, spanning a 3-space
            let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
            for a in &cone.rows {
                let tight: Vec<usize> = ids
                    .iter()
                    .copied()
                    .filter(|&i| {
                        a.iter()
                            .zip(&rays[i])
                            .map(|(x, y)| x * Rational::from_integer(y.clone()))
                            .sum::<Rational>()
                            .is_zero()
                    })
                    .collect();
                if ray_rank(&rays, &tight) == 3 {
                    facets.insert(tight);
                }
            }
            // every proper face is an intersection of facets
            let mut closure: BTreeSet<Vec<usize>> = facets.clone();
            loop {
                let current: Vec<Vec<usize>> = closure.iter().cloned().collect();
                let mut grew = false;
                for f in &current {
                    for g in &facets {
                        let meet: Vec<usize> = f.iter().copied().filter(|i| g.contains(i)).collect();
                        if !meet.is_empty() && closure.insert(meet) {
                            grew = true;
                        }
                    }
                }
                if !grew {
                    break;
                }
            }
            closure.insert(ids.clone());
            for f in closure {
                let d = ray_rank(&rays, &f);
                faces.insert(f, d);
            }
            maximal.push(ids);
        }
        Self {
            triangulations,
            rays,
            faces,
            maximal,
            lineality_dim,
        }
    }

    /// Counts of faces of dimension 1..=4, i.e. cells of the 3-sphere of
    /// dimension 0..=3.
    pub fn fvector(&self) -> [usize; 4] {
        let mut f = [0; 4];
        for &d in self.faces.values() {
            f[d - 1] += 1;
        }
        f
    }

    /// Sum of the face's rays, a point in its relative interior, as a lift.
    pub fn interior_lift(&self, face: &[usize]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); 4];
        for &i in face {
            for (acc, x) in y.iter_mut().zip(&self.rays[i]) {
                *acc += Rational::from_integer(x.clone());
            }
        }
        lift_from_reduced(&y)
    }
}

/// `(22, 100, 152, 74)`-style face counts of the secondary sphere.
pub fn secondary_sphere_fvector() -> [usize; 4] {
    SecondaryFan::compute().fvector()
}

/// A simplicial complex given by its faces, listed by dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplexData {
    pub vertices: Vec<VertexLabel>,
    /// `faces_by_dim[d]` lists the `d`-faces as sorted vertex indices.
    pub faces_by_dim: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexLabel {
    pub label: String,
    /// `"D"` (diagonal cut) or `"V"` (corner cut) for `TM¹₃`; empty otherwise.
    pub class: String,
}

impl SimplicialComplexData {
    pub fn new(vertex_count: usize, faces_by_dim: Vec<Vec<Vec<usize>>>) -> Result<Self, FanError> {
        let c = Self {
            vertices: (0..vertex_count)
                .map(|i| VertexLabel {
                    label: format!("{i}"),
                    class: String::new(),
                })
                .collect(),
            faces_by_dim,
        };
        c.validate()?;
        Ok(c)
    }

    /// Every face listed with its subsets (closure) and no repeats.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>]) -> Result<Self, FanError> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            for size in 1..=f.len() {
                for idx in combinations(f.len(), size) {
                    all.insert(idx.iter().map(|&i| f[i]).collect());
                }
            }
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        for f in all {
            by_dim[f.len() - 1].push(f);
        }
        Self::new(vertex_count, by_dim)
    }

    pub fn fvector(&self) -> Vec<usize> {
        self.faces_by_dim.iter().map(Vec::len).collect()
    }

    pub fn validate(&self) -> Result<(), FanError> {
        let mut seen: BTreeSet<&Vec<usize>> = BTreeSet::new();
        for (d, faces) in self.faces_by_dim.iter().enumerate() {
            for f in faces {
                if f.len() != d + 1 || f.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(FanError::InvalidComplex(format!("{f:?} is not a sorted {d}-face")));
                }
                if f.iter().any(|&v| v >= self.vertices.len()) {
                    return Err(FanError::InvalidComplex(format!("{f:?} uses an unknown vertex")));
                }
                if !seen.insert(f) {
                    return Err(FanError::InvalidComplex(format!("duplicate face {f:?}")));
                }
            }
        }
        for faces in self.faces_by_dim.iter().skip(1) {
            for f in faces {
                for skip in 0..f.len() {
                    let sub: Vec<usize> =
                        f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    if !seen.contains(&sub) {
                        return Err(FanError::InvalidComplex(format!("{sub:?} missing below {f:?}")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Boundary matrix `∂_d : C_d → C_{d−1}` with the usual alternating signs.
fn boundary_matrix(c: &SimplicialComplexData, d: usize) -> RationalMatrix {
    let faces = &c.faces_by_dim[d];
    let lower = &c.faces_by_dim[d - 1];
    let index: BTreeMap<&Vec<usize>, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = RationalMatrix::zeros(lower.len(), faces.len());
    for (col, f) in faces.iter().enumerate() {
        for skip in 0..f.len() {
            let sub: Vec<usize> = f.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            let sign = if skip % 2 == 0 { 1 } else { -1 };
            m.set(index[&sub], col, int(sign));
        }
    }
    m
}

/// Ranks of reduced rational homology in degrees `0..=top`.
pub fn reduced_homology_ranks(c: &SimplicialComplexData) -> Result<Vec<usize>, FanError> {
    c.validate()?;
    let top = c.faces_by_dim.len();
    // rank of ∂_d for d = 0..=top, with ∂_0 the augmentation
    let ranks: Vec<usize> = (0..=top)
        .into_par_iter()
        .map(|d| {
            if d == 0 {
                usize::from(!c.faces_by_dim.is_empty() && !c.faces_by_dim[0].is_empty())
            } else if d == top {
                0
            } else {
                boundary_matrix(c, d).rank()
            }
        })
        .collect();
    Ok((0..top)
        .map(|d| c.faces_by_dim[d].len() - ranks[d] - ranks[d + 1])
        .collect())
}

#[derive(Debug, Clone)]
pub struct Tm13 {
    pub complex: SimplicialComplexData,
    /// Reduced-coordinate ray of each complex vertex.
    pub rays: Vec<Vec<BigInt>>,
    /// Indices (into the triangulation list) of the maximal cones kept.
    pub triangulations: Vec<usize>,
    pub all_triangulations: Vec<Triangulation>,
    /// Number of (VV, VD, DD) edges.
    pub edge_census: (usize, usize, usize),
}

/// Keeps the faces of the secondary sphere whose relative-interior point lies
/// in `TM¹₃` (by the membership oracle) and assembles them into a simplicial
/// complex.
pub fn tm13_subcomplex() -> Result<Tm13, FanError> {
    tm13_from_fan(&SecondaryFan::compute())
}

pub fn tm13_from_fan(fan: &SecondaryFan) -> Result<Tm13, FanError> {
    let faces: Vec<(&Vec<usize>, &usize)> = fan.faces.iter().collect();
    let verdicts: Vec<bool> = faces
        .par_iter()
        .map(|(f, _)| {
            let q = TropicalPoint::new(fan.interior_lift(f)).expect("8 coordinates");
            let m = membership_tm1(&q).expect("n = 3");
            if let Some(p) = &m.params {
                let back = phi(&p.to_trop_params());
                let shifted = back.add(&vec![p.mu.clone(); POINTS]);
                assert_eq!(shifted.coords(), q.coords(), "membership parameters reproduce the point");
            }
            m.member
        })
        .collect();
    let kept: BTreeSet<&Vec<usize>> = faces
        .iter()
        .zip(&verdicts)
        .filter(|(_, &ok)| ok)
        .map(|((f, _), _)| *f)
        .collect();
    for f in &kept {
        let d = fan.faces[*f];
        if f.len() != d {
            return Err(FanError::NotSimplicial(format!("{d}-face with {} rays", f.len())));
        }
        for (g, _) in &faces {
            if g.len() < f.len() && g.iter().all(|i| f.contains(i)) && !kept.contains(g) {
                return Err(FanError::NotClosed(format!("{g:?} below kept {f:?}")));
            }
        }
    }
    let vertex_rays: Vec<usize> = kept.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect();
    let index: BTreeMap<usize, usize> = vertex_rays.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let classes: Vec<&'static str> = vertex_rays
        .iter()
        .map(|&r| {
            let sub = regular_subdivision_from_lift(&fan.interior_lift(&[r])).expect("8 entries");
            match sub.cell_sizes().as_slice() {
                [4, 7] => "V",
                [6, 6] => "D",
                other => panic!("unexpected two-region cover {other:?}"),
            }
        })
        .collect();
    let mut counters = BTreeMap::new();
    let vertices = classes
        .iter()
        .map(|&c| {
            let k = counters.entry(c).or_insert(0);
            *k += 1;
            VertexLabel {
                label: format!("{c}{k}"),
                class: c.to_string(),
            }
        })
        .collect();
    let top = kept.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut faces_by_dim = vec![Vec::new(); top];
    for f in &kept {
        let mut s: Vec<usize> = f.iter().map(|r| index[r]).collect();
        s.sort_unstable();
        faces_by_dim[f.len() - 1].push(s);
    }
    for level in &mut faces_by_dim {
        level.sort();
    }
    let complex = SimplicialComplexData {
        vertices,
        faces_by_dim,
    };
    complex.validate()?;
    let mut census = (0, 0, 0);
    if let Some(edges) = complex.faces_by_dim.get(1) {
        for e in edges {
            match (classes[e[0]], classes[e[1]]) {
                ("V", "V") => census.0 += 1,
                ("D", "D") => census.2 += 1,
                _ => census.1 += 1,
            }
        }
    }
    let triangulations = fan
        .maximal
        .iter()
        .enumerate()
        .filter(|(_, m)| kept.contains(m))
        .map(|(i, _)| i)
        .collect();
    Ok(Tm13 {
        complex,
        rays: vertex_rays.iter().map(|&r| fan.rays[r].clone()).collect(),
        triangulations,
        all_triangulations: fan.triangulations.clone(),
        edge_census: census,
    })
}

/// Image of a triangulation under a cube symmetry.
fn transform(t: &Triangulation, s: &crate::cube::symmetry::CubeSymmetry) -> Triangulation {
    Triangulation::new(
        t.cells()
            .iter()
            .map(|c| c.map(|v| s.apply(v as u32) as usize))
            .collect(),
    )
}

/// Whether all given triangulations lie in one orbit of the 48 symmetries.
pub fn single_orbit(ts: &[Triangulation]) -> bool {
    let Some(first) = ts.first() else {
        return true;
    };
    let orbit: BTreeSet<Triangulation> = all_symmetries(N).iter().map(|s| transform(first, s)).collect();
    ts.iter().all(|t| orbit.contains(t))
}
