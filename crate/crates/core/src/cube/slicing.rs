//! Slicings of the n-cube: vertex subsets that an affine hyperplane strictly
//! separates from their complement (equivalently, linear threshold functions).

use super::vertex::{coord, VertexSet};
use crate::exact::rational::{int, parse_rational, primitive_rational_vector, Pq};
use crate::exact::{solve_feasibility, Feasibility, LinearSystem, Rational};
use num_traits::{One, Signed, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SlicingError {
    #[error("dimension {n} above the supported limit {limit} for this strategy")]
    DimensionTooLarge { n: usize, limit: usize },
    #[error("malformed slicing line {line:?}: {reason}")]
    Parse { line: String, reason: String },
    #[error("witness does not separate the stated positive set")]
    BadWitness,
}

/// A slicing together with an exact separating hyperplane:
/// `ω·v + c > 0` exactly for `v` in `positive`.
#[derive(Clone, PartialEq, Eq)]
pub struct Slicing {
    positive: VertexSet,
    omega: Vec<Rational>,
    offset: Rational,
}

impl Slicing {
    /// Checks the witness against every vertex before accepting it.
    pub fn new(
        positive: VertexSet,
        omega: Vec<Rational>,
        offset: Rational,
    ) -> Result<Self, SlicingError> {
        let s = Self {
            positive,
            omega,
            offset,
        };
        if s.omega.len() != s.n() || !s.witness_separates() {
            return Err(SlicingError::BadWitness);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.positive.n()
    }

    pub fn positive(&self) -> &VertexSet {
        &self.positive
    }

    pub fn omega(&self) -> &[Rational] {
        &self.omega
    }

    /// The constant term `c` of the hyperplane.
    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// `ω·v + c` at vertex index `v`.
    pub fn evaluate(&self, v: u32) -> Rational {
        affine_value(self.n(), &self.omega, &self.offset, v)
    }

    pub fn witness_separates(&self) -> bool {
        (0..self.positive.universe()).all(|v| {
            let val = self.evaluate(v);
            if self.positive.contains(v) {
                val.is_positive()
            } else {
                val.is_negative()
            }
        })
    }

    /// The complementary slicing, witnessed by the negated hyperplane.
    pub fn complement(&self) -> Slicing {
        Slicing {
            positive: self.positive.complement(),
            omega: self.omega.iter().map(|w| -w.clone()).collect(),
            offset: -self.offset.clone(),
        }
    }

    /// Line of the slicing-set file: `n:<dim> pos:<hex> w:<c>,<ω_1>,…,<ω_n>`.
    pub fn to_line(&self) -> String {
        let mut s = format!(
            "n:{} pos:{} w:{}",
            self.n(),
            self.positive.to_hex(),
            Pq(&self.offset)
        );
        for w in &self.omega {
            s.push(',');
            s.push_str(&Pq(w).to_string());
        }
        s
    }

    pub fn parse_line(line: &str) -> Result<Slicing, SlicingError> {
        let err = |reason: &str| SlicingError::Parse {
            line: line.to_string(),
            reason: reason.to_string(),
        };
        let mut n = None;
        let mut pos = None;
        let mut w = None;
        for field in line.split_whitespace() {
            if let Some(v) = field.strip_prefix("n:") {
                n = Some(v.parse::<usize>().map_err(|_| err("bad dimension"))?);
            } else if let Some(v) = field.strip_prefix("pos:") {
                pos = Some(v);
            } else if let Some(v) = field.strip_prefix("w:") {
                w = Some(v);
            } else {
                return Err(err("unknown field"));
            }
        }
        let n = n.ok_or_else(|| err("missing n"))?;
        if n >= 32 {
            return Err(err("dimension too large"));
        }
        let positive =
            VertexSet::from_hex(n, pos.ok_or_else(|| err("missing pos"))?).ok_or_else(|| err("bad mask"))?;
        let values = w
            .ok_or_else(|| err("missing w"))?
            .split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| err("bad rational"))?;
        if values.len() != n + 1 {
            return Err(err("witness must have n+1 entries"));
        }
        let mut it = values.into_iter();
        let offset = it.next().expect("length checked");
        Slicing::new(positive, it.collect(), offset)
    }
}

impl fmt::Debug for Slicing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slicing({:?}; {})", self.positive, self.to_line())
    }
}

impl PartialOrd for Slicing {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order is that of the positive sets; witnesses do not participate.
impl Ord for Slicing {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.positive.cmp(&other.positive)
    }
}

pub(crate) fn affine_value(n: usize, omega: &[Rational], offset: &Rational, v: u32) -> Rational {
    let mut acc = offset.clone();
    for j in 1..=n {
        if coord(n, v, j) == 1 {
            acc += &omega[j - 1];
        }
    }
    acc
}

/// Row `(1, v)` of the separation system, variables ordered `(c, ω_1, …, ω_n)`.
pub(crate) fn homogeneous_row(n: usize, v: u32) -> Vec<Rational> {
    let mut row = Vec::with_capacity(n + 1);
    row.push(Rational::one());
    for j in 1..=n {
        row.push(int(i64::from(coord(n, v, j))));
    }
    row
}

/// Key identifying the coordinatewise sum `x + y` of two vertices.
fn pair_sum_key(n: usize, x: u32, y: u32) -> u64 {
    (u64::from(x & y) << n) | u64::from(x ^ y)
}

/// Cheap certificate of non-separability: distinct `x, y` on the positive side
/// and distinct `x', y'` on the negative side with `x + y = x' + y'`.
/// Any separating `(ω, c)` would give `ω(x+y) + 2c` both positive and negative.
pub(crate) fn has_summable_conflict(n: usize, positive: &[u32], negative: &[u32]) -> bool {
    if positive.len() < 2 || negative.len() < 2 {
        return false;
    }
    let mut seen = std::collections::HashSet::with_capacity(positive.len() * positive.len() / 2);
    for (i, &x) in positive.iter().enumerate() {
        for &y in &positive[i + 1..] {
            seen.insert(pair_sum_key(n, x, y));
        }
    }
    for (i, &x) in negative.iter().enumerate() {
        for &y in &negative[i + 1..] {
            if seen.contains(&pair_sum_key(n, x, y)) {
                return true;
            }
        }
    }
    false
}

/// Finds `(c, ω)` with `ω·v + c > 0` on `positive` and `< 0` on `negative`
/// (vertices in neither list are unconstrained). The witness is scaled to a
/// primitive integer vector.
pub(crate) fn separate(n: usize, positive: &[u32], negative: &[u32]) -> Option<(Rational, Vec<Rational>)> {
    if positive.is_empty() && negative.is_empty() {
        return Some((Rational::zero(), vec![Rational::zero(); n]));
    }
    if has_summable_conflict(n, positive, negative) {
        return None;
    }
    let mut sys = LinearSystem::new(n + 1);
    for &v in positive {
        sys.strict(homogeneous_row(n, v));
    }
    for &v in negative {
        sys.strict(homogeneous_row(n, v).into_iter().map(|x| -x).collect());
    }
    match solve_feasibility(&sys).expect("separation system is well formed") {
        Feasibility::Infeasible => None,
        Feasibility::Feasible(x) => {
            let x = primitive_rational_vector(&x);
            let mut it = x.into_iter();
            let c = it.next().expect("n + 1 entries");
            Some((c, it.collect()))
        }
    }
}

/// Decides whether `subset` is a slicing of the n-cube; on success the returned
/// slicing carries an exact separating hyperplane.
pub fn is_slicing(subset: &VertexSet) -> Option<Slicing> {
    let n = subset.n();
    if subset.is_empty() {
        return Some(Slicing {
            positive: subset.clone(),
            omega: vec![Rational::zero(); n],
            offset: int(-1),
        });
    }
    if subset.len() == subset.universe() as usize {
        return Some(Slicing {
            positive: subset.clone(),
            omega: vec![Rational::zero(); n],
            offset: int(1),
        });
    }
    let positive: Vec<u32> = subset.iter().collect();
    let negative: Vec<u32> = subset.complement().iter().collect();
    let (offset, omega) = separate(n, &positive, &negative)?;
    let s = Slicing {
        positive: subset.clone(),
        omega,
        offset,
    };
    debug_assert!(s.witness_separates());
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn set(n: usize, vs: &[&str]) -> VertexSet {
        VertexSet::from_indices(n, vs.iter().map(|s| u32::from_str_radix(s, 2).unwrap()))
    }

    #[test]
    fn corner_cut() {
        let s = is_slicing(&set(3, &["111"])).expect("corner is a slicing");
        assert!(s.witness_separates());
        let documented =
            Slicing::new(set(3, &["111"]), vec![int(1), int(1), int(1)], rat(-5, 2));
        assert!(documented.is_ok());
    }

    #[test]
    fn parity_is_not_a_slicing() {
        assert!(is_slicing(&set(3, &["000", "011", "101", "110"])).is_none());
        assert!(is_slicing(&set(2, &["00", "11"])).is_none());
    }

    #[test]
    fn low_weight_half() {
        let s = is_slicing(&set(3, &["000", "100", "010", "001"])).unwrap();
        assert!(s.witness_separates());
        assert!(Slicing::new(
            set(3, &["000", "100", "010", "001"]),
            vec![int(-1), int(-1), int(-1)],
            rat(3, 2)
        )
        .is_ok());
    }

    #[test]
    fn constants_are_slicings() {
        let e = is_slicing(&VertexSet::empty(2)).unwrap();
        assert_eq!(e.offset(), &int(-1));
        let f = is_slicing(&VertexSet::full(2)).unwrap();
        assert_eq!(f.offset(), &int(1));
        assert!(e.omega().iter().all(Zero::is_zero));
    }

    #[test]
    fn bad_witness_rejected() {
        assert_eq!(
            Slicing::new(set(2, &["11"]), vec![int(1), int(1)], int(-1)),
            Err(SlicingError::BadWitness)
        );
    }

    #[test]
    fn file_line_round_trip() {
        let s = is_slicing(&set(3, &["000", "100", "010", "001"])).unwrap();
        let line = s.to_line();
        assert!(line.starts_with("n:3 pos:17 w:"));
        assert_eq!(Slicing::parse_line(&line).unwrap(), s);
        let fixed = Slicing::parse_line("n:2 pos:8 w:-3/2,1/1,1/1").unwrap();
        assert_eq!(fixed.positive().iter().collect::<Vec<_>>(), vec![3]);
        assert!(Slicing::parse_line("n:2 pos:8 w:1/1,1/1,1/1").is_err());
        assert!(Slicing::parse_line("n:2 pos:8").is_err());
        assert!(Slicing::parse_line("n:2 pos:zz w:0,0,0").is_err());
    }

    #[test]
    fn complement_negates_witness() {
        let s = is_slicing(&set(3, &["111", "110"])).unwrap();
        let c = s.complement();
        assert!(c.witness_separates());
        assert_eq!(c.positive(), &s.positive().complement());
    }

    #[test]
    fn summable_conflict_detects_xor() {
        assert!(has_summable_conflict(2, &[0, 3], &[1, 2]));
        assert!(!has_summable_conflict(2, &[3], &[0, 1, 2]));
    }
}
