use std::cmp::Ordering;
use std::fmt;

/// A vertex of the n-cube, stored as the integer whose binary expansion
/// (most significant bit first) is the string `v_1 v_2 … v_n`. Index order is
/// therefore the lexicographic order `0…00, 0…01, 0…10, …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeVertex {
    pub n: usize,
    pub bits: u32,
}

impl CubeVertex {
    pub fn new(n: usize, bits: u32) -> Self {
        assert!(n < 32 && u64::from(bits) < (1u64 << n), "vertex out of range");
        Self { n, bits }
    }

    /// Coordinate `v_j` for `j` in `1..=n`.
    pub fn coord(&self, j: usize) -> u8 {
        coord(self.n, self.bits, j)
    }

    pub fn coords(&self) -> Vec<u8> {
        (1..=self.n).map(|j| self.coord(j)).collect()
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }
}

impl fmt::Display for CubeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", vertex_string(self.n, self.bits))
    }
}

pub fn coord(n: usize, bits: u32, j: usize) -> u8 {
    debug_assert!((1..=n).contains(&j));
    ((bits >> (n - j)) & 1) as u8
}

pub fn vertex_string(n: usize, bits: u32) -> String {
    (1..=n)
        .map(|j| if coord(n, bits, j) == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a binary string `v_1…v_n` into its vertex index.
pub fn parse_vertex(s: &str) -> Option<u32> {
    if s.is_empty() || s.len() > 31 || !s.bytes().all(|b| b == b'0' || b == b'1') {
        return None;
    }
    u32::from_str_radix(s, 2).ok()
}

/// A subset of the vertices of the n-cube, as a bitmask over vertex indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        assert!(n < 32, "cube dimension too large");
        let bits = 1usize << n;
        Self {
            n,
            words: vec![0; bits.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..(1u32 << n) {
            s.insert(v);
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = u32>>(n: usize, indices: I) -> Self {
        let mut s = Self::empty(n);
        for v in indices {
            s.insert(v);
        }
        s
    }

    /// Subset of a cube with at most 64 vertices from a plain bitmask.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 6, "from_mask supports n <= 6");
        let mut s = Self::empty(n);
        let limit = if n == 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        s.words[0] = mask & limit;
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> u32 {
        1u32 << self.n
    }

    pub fn contains(&self, v: u32) -> bool {
        (self.words[(v / 64) as usize] >> (v % 64)) & 1 == 1
    }

    pub fn insert(&mut self, v: u32) {
        assert!(v < self.universe(), "vertex {v} outside the {}-cube", self.n);
        self.words[(v / 64) as usize] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: u32) {
        self.words[(v / 64) as usize] &= !(1 << (v % 64));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.universe()).filter(move |&v| self.contains(v))
    }

    pub fn complement(&self) -> Self {
        let mut s = Self::empty(self.n);
        for v in 0..self.universe() {
            if !self.contains(v) {
                s.insert(v);
            }
        }
        s
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    /// The low 64 bits of the mask (the whole mask when n ≤ 6).
    pub fn low_mask(&self) -> u64 {
        self.words[0]
    }

    /// Hexadecimal bitmask, most significant digit first, no prefix.
    pub fn to_hex(&self) -> String {
        let mut s = String::new();
        for w in self.words.iter().rev() {
            if s.is_empty() {
                if *w != 0 {
                    s = format!("{w:x}");
                }
            } else {
                s.push_str(&format!("{w:016x}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn from_hex(n: usize, hex: &str) -> Option<Self> {
        let hex = hex.trim().trim_start_matches("0x");
        if hex.is_empty() || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return None;
        }
        let mut s = Self::empty(n);
        let digits: Vec<u32> = hex
            .chars()
            .rev()
            .map(|c| c.to_digit(16).expect("checked hex digit"))
            .collect();
        for (i, d) in digits.iter().enumerate() {
            for b in 0..4 {
                if (d >> b) & 1 == 1 {
                    let v = (i * 4 + b) as u64;
                    if v >= u64::from(s.universe()) {
                        return None;
                    }
                    s.insert(v as u32);
                }
            }
        }
        Some(s)
    }

    fn cmp_mask(&self, other: &Self) -> Ordering {
        for (a, b) in self.words.iter().rev().zip(other.words.iter().rev()) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: dimension, then cardinality, then bitmask value.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.len().cmp(&other.len()))
            .then_with(|| self.cmp_mask(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|v| vertex_string(self.n, v)).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}
