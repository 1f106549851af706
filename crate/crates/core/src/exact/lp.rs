//! Exact feasibility of homogeneous systems of strict, weak and equality
//! constraints `a·x > 0`, `a·x ≥ 0`, `a·x = 0`.
//!
//! Equalities are eliminated first by restricting to their exact kernel.
//! Strict feasibility is then decided by maximising a margin `t` (every
//! strict row becomes `a·x ≥ t`) over the box `|x_i| ≤ B`, with
//! `B = 2·(variables + 1)`, using a dense rational simplex with Bland's rule.
//! Because every constraint is homogeneous, `x = 0, t = 0` is feasible and the
//! slack basis is a valid starting point, so no phase one is needed.

use super::matrix::RationalMatrix;
use super::rational::{dot, int, primitive_rational_vector, Rational};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LpError {
    #[error("linear system has no rows")]
    Empty,
    #[error("row of length {got} in a system with {expected} variables")]
    RowLength { expected: usize, got: usize },
}

/// Relation of a row against zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Strict,
    Weak,
    Equal,
}

/// A homogeneous linear system. Affine constraints are encoded with an extra
/// homogenising variable that is itself constrained to be strictly positive.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearSystem {
    vars: usize,
    strict: Vec<Vec<Rational>>,
    weak: Vec<Vec<Rational>>,
    equalities: Vec<Vec<Rational>>,
}

/// Outcome of [`solve_feasibility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Rational]> {
        match self {
            Feasibility::Feasible(x) => Some(x),
            Feasibility::Infeasible => None,
        }
    }
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            ..Self::default()
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn push(&mut self, row: Vec<Rational>, relation: Relation) -> &mut Self {
        match relation {
            Relation::Strict => self.strict.push(row),
            Relation::Weak => self.weak.push(row),
            Relation::Equal => self.equalities.push(row),
        }
        self
    }

    pub fn strict(&mut self, row: Vec<Rational>) -> &mut Self {
        self.push(row, Relation::Strict)
    }

    pub fn weak(&mut self, row: Vec<Rational>) -> &mut Self {
        self.push(row, Relation::Weak)
    }

    pub fn equal(&mut self, row: Vec<Rational>) -> &mut Self {
        self.push(row, Relation::Equal)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[Rational], Relation)> {
        self.strict
            .iter()
            .map(|r| (r.as_slice(), Relation::Strict))
            .chain(self.weak.iter().map(|r| (r.as_slice(), Relation::Weak)))
            .chain(
                self.equalities
                    .iter()
                    .map(|r| (r.as_slice(), Relation::Equal)),
            )
    }

    pub fn row_count(&self) -> usize {
        self.strict.len() + self.weak.len() + self.equalities.len()
    }

    fn validate(&self) -> Result<(), LpError> {
        if self.row_count() == 0 {
            return Err(LpError::Empty);
        }
        for (row, _) in self.rows() {
            if row.len() != self.vars {
                return Err(LpError::RowLength {
                    expected: self.vars,
                    got: row.len(),
                });
            }
        }
        Ok(())
    }

    /// Evaluates every relation at `x`.
    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.vars
            && self.rows().all(|(row, rel)| {
                let v = dot(row, x);
                match rel {
                    Relation::Strict => v.is_positive(),
                    Relation::Weak => !v.is_negative(),
                    Relation::Equal => v.is_zero(),
                }
            })
    }
}

/// Decides the system exactly. A returned witness satisfies every relation,
/// strict ones strictly.
pub fn solve_feasibility(sys: &LinearSystem) -> Result<Feasibility, LpError> {
    sys.validate()?;
    let d = sys.vars;

    // Parameterise the kernel of the equalities: x = N z.
    let basis = if sys.equalities.is_empty() {
        None
    } else {
        let eq = RationalMatrix::from_rows(sys.equalities.clone(), d)
            .expect("validated row lengths");
        Some(eq.nullspace())
    };
    let reduce = |row: &[Rational]| -> Vec<Rational> {
        match &basis {
            None => row.to_vec(),
            Some(n) => (0..n.cols())
                .map(|k| {
                    row.iter()
                        .enumerate()
                        .filter(|(_, a)| !a.is_zero())
                        .fold(Rational::zero(), |acc, (i, a)| acc + a * n.get(i, k))
                })
                .collect(),
        }
    };
    let lift = |z: &[Rational]| -> Vec<Rational> {
        match &basis {
            None => z.to_vec(),
            Some(n) => n.mul_vec(z),
        }
    };
    let reduced_dim = basis.as_ref().map_or(d, RationalMatrix::cols);

    let mut strict = Vec::with_capacity(sys.strict.len());
    for row in &sys.strict {
        let r = reduce(row);
        if r.iter().all(Zero::is_zero) {
            return Ok(Feasibility::Infeasible);
        }
        strict.push(primitive_rational_vector(&r));
    }
    let weak: Vec<Vec<Rational>> = sys
        .weak
        .iter()
        .map(|row| reduce(row))
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .map(|r| primitive_rational_vector(&r))
        .collect();

    if strict.is_empty() {
        return Ok(Feasibility::Feasible(vec![Rational::zero(); d]));
    }

    let bound = int(2 * (d as i64 + 1));
    let z = match margin_program(reduced_dim, &strict, &weak, &bound) {
        Some(z) => z,
        None => return Ok(Feasibility::Infeasible),
    };
    let x = lift(&z);
    assert!(
        sys.is_satisfied_by(&x),
        "simplex produced a point violating the system"
    );
    Ok(Feasibility::Feasible(x))
}

/// Maximises `t` over `strict·z ≥ t`, `weak·z ≥ 0`, `|z_i| ≤ bound`, `t ≤ 1`.
/// Returns a point with positive margin, or `None` if the optimum is `t = 0`.
fn margin_program(
    dim: usize,
    strict: &[Vec<Rational>],
    weak: &[Vec<Rational>],
    bound: &Rational,
) -> Option<Vec<Rational>> {
    // Variables: z+ (dim), z- (dim), t.
    let nv = 2 * dim + 1;
    let t_var = 2 * dim;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for a in strict {
        let mut row = vec![Rational::zero(); nv];
        for (i, v) in a.iter().enumerate() {
            if !v.is_zero() {
                row[i] = -v.clone();
                row[dim + i] = v.clone();
            }
        }
        row[t_var] = Rational::one();
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for a in weak {
        let mut row = vec![Rational::zero(); nv];
        for (i, v) in a.iter().enumerate() {
            if !v.is_zero() {
                row[i] = -v.clone();
                row[dim + i] = v.clone();
            }
        }
        rows.push(row);
        rhs.push(Rational::zero());
    }
    for i in 0..dim {
        let mut row = vec![Rational::zero(); nv];
        row[i] = Rational::one();
        row[dim + i] = Rational::one();
        rows.push(row);
        rhs.push(bound.clone());
    }
    let mut cap = vec![Rational::zero(); nv];
    cap[t_var] = Rational::one();
    rows.push(cap);
    rhs.push(Rational::one());

    let mut objective = vec![Rational::zero(); nv];
    objective[t_var] = Rational::one();

    let mut tableau = Tableau::new(&rows, &rhs, &objective);
    let stop_when = |tab: &Tableau| tab.value_of(t_var).is_positive();
    let x = tableau.maximize(stop_when)?;
    if !x[t_var].is_positive() {
        return None;
    }
    Some((0..dim).map(|i| &x[i] - &x[dim + i]).collect())
}

/// Dense simplex tableau for `max c·x, A x ≤ b, x ≥ 0` with `b ≥ 0`.
struct Tableau {
    m: usize,
    width: usize,
    /// `m` constraint rows then the objective row; last column is the rhs.
    cells: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn new(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> Self {
        let m = a.len();
        let n = c.len();
        let width = n + m + 1;
        let mut cells = Vec::with_capacity(m + 1);
        for (i, row) in a.iter().enumerate() {
            debug_assert!(!b[i].is_negative());
            let mut r = vec![Rational::zero(); width];
            r[..n].clone_from_slice(row);
            r[n + i] = Rational::one();
            r[width - 1] = b[i].clone();
            cells.push(r);
        }
        let mut obj = vec![Rational::zero(); width];
        for (j, v) in c.iter().enumerate() {
            obj[j] = -v.clone();
        }
        cells.push(obj);
        Self {
            m,
            width,
            cells,
            basis: (n..n + m).collect(),
        }
    }

    fn value_of(&self, var: usize) -> Rational {
        self.basis
            .iter()
            .position(|&b| b == var)
            .map_or_else(Rational::zero, |i| self.cells[i][self.width - 1].clone())
    }

    fn solution(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.width - 1];
        for (i, &b) in self.basis.iter().enumerate() {
            x[b] = self.cells[i][self.width - 1].clone();
        }
        x
    }

    /// Runs Bland's rule until optimal or `stop` holds. Returns `None` only if
    /// the program is unbounded.
    fn maximize(&mut self, stop: impl Fn(&Tableau) -> bool) -> Option<Vec<Rational>> {
        loop {
            if stop(self) {
                return Some(self.solution());
            }
            let obj = &self.cells[self.m];
            let Some(enter) = (0..self.width - 1).find(|&j| obj[j].is_negative()) else {
                return Some(self.solution());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let a = &self.cells[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.cells[i][self.width - 1] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (row, _) = leave?;
            self.pivot(row, enter);
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.cells[row][col].recip();
        for v in self.cells[row].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = std::mem::take(&mut self.cells[row]);
        let nonzero: Vec<usize> = (0..self.width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, r) in self.cells.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let factor = r[col].clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &nonzero {
                let delta = &factor * &pivot_row[j];
                r[j] -= delta;
            }
        }
        self.cells[row] = pivot_row;
        self.basis[row] = col;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    /// Separation of a vertex subset of the cube; variables (c, ω).
    fn separation(n: usize, positive: &[u32]) -> LinearSystem {
        let mut sys = LinearSystem::new(n + 1);
        for idx in 0..(1u32 << n) {
            let mut row = vec![int(1)];
            for j in 0..n {
                row.push(int(((idx >> (n - 1 - j)) & 1) as i64));
            }
            if !positive.contains(&idx) {
                row.iter_mut().for_each(|x| *x = -x.clone());
            }
            sys.strict(row);
        }
        sys
    }

    #[test]
    fn corner_cut_is_feasible() {
        let sys = separation(3, &[0b111]);
        let x = solve_feasibility(&sys).unwrap();
        assert!(sys.is_satisfied_by(x.witness().unwrap()));
        // the documented witness also works
        assert!(sys.is_satisfied_by(&[rat(-5, 2), int(1), int(1), int(1)]));
    }

    #[test]
    fn xor_is_infeasible() {
        let sys = separation(2, &[0b00, 0b11]);
        assert_eq!(solve_feasibility(&sys).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn weight_at_most_one_is_feasible() {
        let sys = separation(3, &[0b000, 0b100, 0b010, 0b001]);
        assert!(solve_feasibility(&sys).unwrap().is_feasible());
        assert!(sys.is_satisfied_by(&[rat(3, 2), int(-1), int(-1), int(-1)]));
    }

    #[test]
    fn equalities_and_homogenising_variable() {
        // x0 + x1 = 2 h, x0 - x1 = 0 h, x0 >= 0, h > 0  -> x = (1, 1)
        let mut sys = LinearSystem::new(3);
        sys.equal(ints(&[1, 1, -2]))
            .equal(ints(&[1, -1, 0]))
            .weak(ints(&[1, 0, 0]))
            .strict(ints(&[0, 0, 1]));
        let x = solve_feasibility(&sys).unwrap();
        let w = x.witness().unwrap();
        assert_eq!(&w[0] / &w[2], int(1));
        assert_eq!(&w[1] / &w[2], int(1));
    }

    #[test]
    fn equality_forces_strict_row_to_zero() {
        let mut sys = LinearSystem::new(2);
        sys.equal(ints(&[1, 0])).strict(ints(&[1, 0]));
        assert_eq!(solve_feasibility(&sys).unwrap(), Feasibility::Infeasible);
    }

    #[test]
    fn no_strict_rows_gives_origin() {
        let mut sys = LinearSystem::new(2);
        sys.weak(ints(&[1, -1]));
        assert_eq!(
            solve_feasibility(&sys).unwrap(),
            Feasibility::Feasible(vec![int(0), int(0)])
        );
    }

    #[test]
    fn malformed_systems() {
        assert_eq!(
            solve_feasibility(&LinearSystem::new(2)),
            Err(LpError::Empty)
        );
        let mut sys = LinearSystem::new(2);
        sys.strict(ints(&[1]));
        assert!(matches!(
            solve_feasibility(&sys),
            Err(LpError::RowLength { .. })
        ));
    }

    #[test]
    fn opposite_strict_rows_infeasible_weak_feasible() {
        let mut sys = LinearSystem::new(1);
        sys.strict(ints(&[1])).strict(ints(&[-1]));
        assert!(!solve_feasibility(&sys).unwrap().is_feasible());
        let mut sys = LinearSystem::new(1);
        sys.weak(ints(&[1])).weak(ints(&[-1]));
        assert!(solve_feasibility(&sys).unwrap().is_feasible());
    }
}
