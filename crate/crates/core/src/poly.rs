//! Sparse integer polynomials in the coordinates `p_v`, initial forms, the
//! 3×3 minors of flattenings, and the `2×2×2×2` prevariety witness.

use crate::cube::combinations;
use crate::cube::vertex::{parse_vertex, vertex_string};
use crate::exact::rational::{int, Pq};
use crate::exact::Rational;
use crate::stats::all_splits;
use crate::tropical::TropicalPoint;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Weight vectors live in the same space as tropical points.
pub type WeightVector = TropicalPoint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("the zero polynomial has no initial form")]
    Zero,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("malformed polynomial file, line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("coefficient overflow")]
    Overflow,
}

/// Exponent vector: `(v, e)` pairs with `e ≥ 1`, sorted by `v`.
pub type Monomial = Vec<(u32, u32)>;

#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    n: usize,
    terms: BTreeMap<Monomial, i64>,
}

impl SparsePolynomial {
    /// Collects like terms and drops zero coefficients.
    pub fn new(n: usize, terms: Vec<(i64, Monomial)>) -> Result<Self, PolyError> {
        let mut map: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (c, mono) in terms {
            let mono = normalize(n, mono)?;
            let slot = map.entry(mono).or_insert(0);
            *slot = slot.checked_add(c).ok_or(PolyError::Overflow)?;
        }
        map.retain(|_, c| *c != 0);
        Ok(Self { n, terms: map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Monomial)> {
        self.terms.iter().map(|(m, &c)| (c, m))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.iter().map(|&(_, e)| e).sum::<u32>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// One term per line: `<coeff> * p_<bits>[^e] ...`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (c, m) in self.terms() {
            s.push_str(&format!("{c} *"));
            for &(v, e) in m {
                s.push_str(&format!(" p_{}", vertex_string(self.n, v)));
                if e > 1 {
                    s.push_str(&format!("^{e}"));
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<Self, PolyError> {
        let mut n = None;
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: &str| PolyError::Parse {
                line: idx + 1,
                reason: reason.to_string(),
            };
            let (coeff, rest) = line.split_once('*').ok_or_else(|| err("missing '*'"))?;
            let c: i64 = coeff.trim().parse().map_err(|_| err("bad coefficient"))?;
            let mut mono = Vec::new();
            for factor in rest.split_whitespace() {
                let body = factor.strip_prefix("p_").ok_or_else(|| err("factor must start with p_"))?;
                let (bits, e) = match body.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (body, 1),
                };
                let v = parse_vertex(bits).ok_or_else(|| err("bad vertex bits"))?;
                match n {
                    None => n = Some(bits.len()),
                    Some(m) if m != bits.len() => return Err(err("inconsistent vertex lengths")),
                    _ => {}
                }
                if e == 0 {
                    return Err(err("exponent must be positive"));
                }
                mono.push((v, e));
            }
            terms.push((c, mono));
        }
        let n = n.ok_or(PolyError::Parse {
            line: 0,
            reason: "no variables".into(),
        })?;
        Self::new(n, terms)
    }
}

fn normalize(n: usize, mono: Monomial) -> Result<Monomial, PolyError> {
    let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
    for (v, e) in mono {
        if u64::from(v) >= 1u64 << n {
            return Err(PolyError::Shape(format!("variable index {v} out of range for n={n}")));
        }
        *acc.entry(v).or_insert(0) += e;
    }
    Ok(acc.into_iter().filter(|&(_, e)| e > 0).collect())
}

/// `p0000*p0110` style rendering of a monomial.
pub fn monomial_string(n: usize, m: &Monomial) -> String {
    m.iter()
        .map(|&(v, e)| {
            if e > 1 {
                format!("p{}^{e}", vertex_string(n, v))
            } else {
                format!("p{}", vertex_string(n, v))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.terms().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let mag = c.unsigned_abs();
            let body = monomial_string(self.n, m);
            if mag == 1 {
                write!(f, "{sep}{sign}{body}")?;
            } else {
                write!(f, "{sep}{sign}{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `Σ e_v w_v` over the exponent vector.
pub fn monomial_weight(m: &Monomial, w: &WeightVector) -> Rational {
    m.iter().map(|&(v, e)| w.get(v) * int(i64::from(e))).sum()
}

/// The terms of maximal `w`-weight, and that weight.
pub fn initial_form_with_weight(
    f: &SparsePolynomial,
    w: &WeightVector,
) -> Result<(SparsePolynomial, Rational), PolyError> {
    if f.is_empty() {
        return Err(PolyError::Zero);
    }
    if w.n() != f.n {
        return Err(PolyError::Shape(format!(
            "weight vector for n={} on a polynomial in n={}",
            w.n(),
            f.n
        )));
    }
    let weights: Vec<(Rational, &Monomial, i64)> =
        f.terms().map(|(c, m)| (monomial_weight(m, w), m, c)).collect();
    let top = weights.iter().map(|t| &t.0).max().expect("nonempty").clone();
    let terms = weights
        .iter()
        .filter(|t| t.0 == top)
        .map(|t| (t.2, t.1.clone()))
        .collect();
    Ok((SparsePolynomial::new(f.n, terms)?, top))
}

pub fn initial_form(f: &SparsePolynomial, w: &WeightVector) -> Result<SparsePolynomial, PolyError> {
    initial_form_with_weight(f, w).map(|(g, _)| g)
}

/// All 3×3 minors of the symbolic flattening with rows indexed by the
/// coordinates in `a_set` (1-based), expanded by the Leibniz formula.
pub fn flattening_minors(n: usize, a_set: &[usize]) -> Result<Vec<SparsePolynomial>, PolyError> {
    let mut a: Vec<usize> = a_set.to_vec();
    a.sort_unstable();
    a.dedup();
    if a.is_empty() || a.len() >= n || a.iter().any(|&i| i == 0 || i > n) {
        return Err(PolyError::Shape(format!("{a_set:?} is not a proper split of 1..={n}")));
    }
    let b: Vec<usize> = (1..=n).filter(|i| !a.contains(i)).collect();
    // variable at (row r, column c)
    let var = |r: usize, c: usize| -> u32 {
        let mut v = 0u32;
        for (pos, &j) in a.iter().enumerate() {
            if (r >> (a.len() - 1 - pos)) & 1 == 1 {
                v |= 1 << (n - j);
            }
        }
        for (pos, &j) in b.iter().enumerate() {
            if (c >> (b.len() - 1 - pos)) & 1 == 1 {
                v |= 1 << (n - j);
            }
        }
        v
    };
    const PERMS: [([usize; 3], i64); 6] = [
        ([0, 1, 2], 1),
        ([1, 2, 0], 1),
        ([2, 0, 1], 1),
        ([0, 2, 1], -1),
        ([2, 1, 0], -1),
        ([1, 0, 2], -1),
    ];
    let rows = combinations(1 << a.len(), 3);
    let cols = combinations(1 << b.len(), 3);
    let mut out = Vec::with_capacity(rows.len() * cols.len());
    for r in &rows {
        for c in &cols {
            let terms = PERMS
                .iter()
                .map(|(p, s)| (*s, (0..3).map(|i| (var(r[i], c[p[i]]), 1)).collect()))
                .collect();
            out.push(SparsePolynomial::new(n, terms)?);
        }
    }
    Ok(out)
}

/// Minors of every flattening, tagged with the row side of the split.
pub fn all_flattening_minors(n: usize) -> Vec<(Vec<usize>, SparsePolynomial)> {
    if n < 2 {
        return Vec::new();
    }
    all_splits(n)
        .into_iter()
        .flat_map(|a| {
            flattening_minors(n, &a)
                .expect("valid split")
                .into_iter()
                .map(move |f| (a.clone(), f))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailingMinor {
    /// Row side of the split (1-based coordinates).
    pub split: Vec<usize>,
    pub minor: String,
    pub initial_form: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrevarietyReport {
    pub member: bool,
    pub minors_checked: usize,
    pub failing_minor: Option<FailingMinor>,
}

/// `q` lies on the prevariety of the 3×3 minors iff no minor has a monomial
/// initial form at `q`. The first failing minor (in split order) is reported.
pub fn prevariety_member(q: &WeightVector) -> PrevarietyReport {
    let minors = all_flattening_minors(q.n());
    let failing = minors.par_iter().find_map_first(|(split, f)| {
        let g = initial_form(f, q).expect("nonzero minor of matching shape");
        (g.len() < 2).then(|| FailingMinor {
            split: split.clone(),
            minor: f.to_string(),
            initial_form: g.to_string(),
        })
    });
    PrevarietyReport {
        member: failing.is_none(),
        minors_checked: minors.len(),
        failing_minor: failing,
    }
}

/// The degree-4 polynomial in the ideal of the first RBM model for `n = 4`
/// whose initial form separates the prevariety from the tropical variety.
pub fn quartic_2222() -> SparsePolynomial {
    let rows: [(i64, [&str; 4]); 8] = [
        (1, ["0000", "0110", "1010", "1101"]),
        (-1, ["0010", "0100", "1000", "1111"]),
        (1, ["0010", "0100", "1001", "1110"]),
        (-1, ["0000", "0110", "1001", "1110"]),
        (-1, ["0001", "0110", "1010", "1100"]),
        (1, ["0000", "0010", "1100", "1111"]),
        (-1, ["0000", "0010", "1101", "1110"]),
        (1, ["0001", "0110", "1000", "1110"]),
    ];
    let terms = rows
        .iter()
        .map(|(c, vs)| (*c, vs.iter().map(|s| (parse_vertex(s).expect("literal"), 1)).collect()))
        .collect();
    SparsePolynomial::new(4, terms).expect("literal polynomial")
}

/// Relative-interior point of a cone of the prevariety outside the variety.
pub fn q_2222() -> WeightVector {
    let q = [59, 1, 80, 86, 102, 108, 107, 113, 109, 115, 100, 106, 78, 84, 21, 43];
    TropicalPoint::new(q.iter().map(|&x| int(x)).collect()).expect("16 coordinates")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub prevariety: bool,
    pub minors_checked: usize,
    pub quartic_terms: usize,
    pub quartic_initial_terms: usize,
    pub quartic_monomial: bool,
    pub initial_form: String,
    /// Maximal weight attained, as `p/q`.
    pub initial_weight: String,
    /// True when `q` is certified to lie on the prevariety but off the
    /// tropical variety.
    pub separates: bool,
}

/// Evaluates the minors and the quartic at `q` (default: [`q_2222`]).
pub fn quartic_witness_check(q: Option<&WeightVector>) -> Result<WitnessReport, PolyError> {
    let default = q_2222();
    let q = q.unwrap_or(&default);
    if q.n() != 4 {
        return Err(PolyError::Shape("the witness lives in n = 4".into()));
    }
    let prevariety = prevariety_member(q);
    let quartic = quartic_2222();
    let (g, weight) = initial_form_with_weight(&quartic, q)?;
    Ok(WitnessReport {
        prevariety: prevariety.member,
        minors_checked: prevariety.minors_checked,
        quartic_terms: quartic.len(),
        quartic_initial_terms: g.len(),
        quartic_monomial: g.len() == 1,
        initial_form: g.to_string(),
        initial_weight: Pq(&weight).to_string(),
        separates: prevariety.member && g.len() == 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(values: &[i64]) -> WeightVector {
        TropicalPoint::new(values.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn initial_forms() {
        let f = SparsePolynomial::new(1, vec![(3, vec![(0, 2)])]).unwrap();
        assert_eq!(initial_form(&f, &w(&[5, 1])).unwrap(), f);
        let g = SparsePolynomial::new(1, vec![(1, vec![(0, 1)]), (1, vec![(1, 1)])]).unwrap();
        assert_eq!(initial_form(&g, &w(&[2, 2])).unwrap().len(), 2);
        assert_eq!(initial_form(&g, &w(&[2, 3])).unwrap().to_string(), "p1");
        assert_eq!(initial_form(&SparsePolynomial::new(1, vec![]).unwrap(), &w(&[0, 0])), Err(PolyError::Zero));
    }

    #[test]
    fn minor_counts() {
        assert_eq!(flattening_minors(4, &[1, 2]).unwrap().len(), 16);
        assert_eq!(all_flattening_minors(4).len(), 48);
        assert!(flattening_minors(3, &[1]).unwrap().is_empty());
        assert!(all_flattening_minors(3).is_empty());
        for (_, f) in all_flattening_minors(4) {
            assert_eq!(f.len(), 6);
            assert!(f.terms().all(|(c, m)| c.abs() == 1 && m.len() == 3));
        }
    }

    #[test]
    fn witness_2222() {
        let r = quartic_witness_check(None).unwrap();
        assert!(r.prevariety && r.quartic_monomial && r.separates);
        assert_eq!(r.initial_form, "p0000*p0110*p1010*p1101");
        assert_eq!(r.initial_weight, "350/1");
        assert_eq!(r.minors_checked, 48);
        let zero = quartic_witness_check(Some(&TropicalPoint::zero(4))).unwrap();
        assert_eq!(zero.quartic_initial_terms, 8);
    }

    #[test]
    fn monomial_minor_breaks_membership() {
        let mut q = vec![0; 16];
        for v in [0b0000, 0b0101, 0b1010] {
            q[v] = 1;
        }
        let r = prevariety_member(&w(&q));
        assert!(!r.member);
        assert!(r.failing_minor.is_some());
    }

    #[test]
    fn file_round_trip() {
        let f = quartic_2222();
        let text = f.to_text();
        assert!(text.contains("1 * p_0000 p_0110 p_1010 p_1101\n"));
        assert_eq!(SparsePolynomial::parse(&text).unwrap(), f);
        let sq = SparsePolynomial::parse("2 * p_01^2 p_10\n-1 * p_00\n").unwrap();
        assert_eq!(sq.len(), 2);
        assert!(!sq.is_homogeneous());
        assert!(SparsePolynomial::parse("2 p_01\n").is_err());
    }
}
