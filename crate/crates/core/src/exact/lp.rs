//! Exact feasibility LP: phase-one simplex with Bland's rule.
//!
//! Every answer carries a certificate. Feasible systems return a point that
//! satisfies all constraints exactly; infeasible ones return Farkas
//! multipliers whose combination reads `0 <= -1`.

use super::Vector;
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Field;

/// `A x = b, x >= 0` in dense form.
#[derive(Clone, Debug)]
pub struct StandardForm<F> {
    pub rows: Vec<Vec<F>>,
    pub rhs: Vec<F>,
    pub num_vars: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum StandardOutcome<F> {
    /// `x >= 0` with `A x = b`.
    Feasible(Vec<F>),
    /// `y` with `A^T y >= 0` and `b^T y = -1`.
    Infeasible(Vec<F>),
}

impl<F: Field> StandardForm<F> {
    pub fn new(num_vars: usize) -> Self {
        StandardForm { rows: Vec::new(), rhs: Vec::new(), num_vars }
    }

    pub fn push_row(&mut self, row: Vec<F>, rhs: F) {
        debug_assert_eq!(row.len(), self.num_vars);
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn solve(&self) -> StandardOutcome<F> {
        Tableau::phase_one(self).run(None)
    }

    /// Like [`solve`](Self::solve), but a feasible answer is a vertex
    /// minimizing `cost . x`. Costs must be nonnegative so the optimum exists.
    pub fn minimize(&self, cost: &[F]) -> StandardOutcome<F> {
        debug_assert!(cost.len() == self.num_vars && cost.iter().all(|c| !c.is_negative()));
        Tableau::phase_one(self).run(Some(cost))
    }

    pub fn check(&self, outcome: &StandardOutcome<F>) -> bool {
        match outcome {
            StandardOutcome::Feasible(x) => {
                x.len() == self.num_vars
                    && x.iter().all(|v| !v.is_negative())
                    && self.rows.iter().zip(&self.rhs).all(|(row, b)| dot(row, x) == *b)
            }
            StandardOutcome::Infeasible(y) => {
                y.len() == self.rows.len()
                    && (0..self.num_vars).all(|j| {
                        let col: F =
                            self.rows.iter().zip(y).fold(F::zero(), |acc, (row, yi)| acc + row[j].clone() * yi.clone());
                        !col.is_negative()
                    })
                    && dot(&self.rhs, y) == -F::one()
            }
        }
    }
}

fn dot<F: Field>(a: &[F], b: &[F]) -> F {
    a.iter().zip(b).fold(F::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Integer-preserving (Bareiss) simplex tableau. The true tableau is
/// `cells / scale`; every pivot divides exactly by the previous pivot, so no
/// gcds are taken while pivoting.
struct Tableau<F: Field> {
    /// `m` rows of `n + m + 1` entries: structural, artificial, rhs.
    cells: Vec<Vec<F::Int>>,
    /// Reduced costs, same layout; the last entry is minus the objective.
    objective: Vec<F::Int>,
    scale: F::Int,
    basis: Vec<usize>,
    /// Per row: the positive factor that cleared its denominators, and
    /// whether it was negated to make the rhs nonnegative.
    row_scale: Vec<F::Int>,
    signs: Vec<bool>,
    n: usize,
}

/// Integer multiples of `values` by the lcm of their denominators.
fn clear_denominators<F: Field>(values: &[&F]) -> (Vec<F::Int>, F::Int) {
    let parts: Vec<(F::Int, F::Int)> = values.iter().map(|v| v.to_parts()).collect();
    let lcm = parts.iter().fold(F::Int::one(), |acc, (_, d)| acc.lcm(d));
    let ints = parts.into_iter().map(|(n, d)| n * (lcm.clone() / d)).collect();
    (ints, lcm)
}

impl<F: Field> Tableau<F> {
    fn phase_one(sf: &StandardForm<F>) -> Self {
        let m = sf.rows.len();
        let n = sf.num_vars;
        let width = n + m + 1;
        let zero = F::Int::zero;
        let mut cells = Vec::with_capacity(m);
        let mut signs = Vec::with_capacity(m);
        let mut row_scale = Vec::with_capacity(m);
        for (i, (row, b)) in sf.rows.iter().zip(&sf.rhs).enumerate() {
            let entries: Vec<&F> = row.iter().chain(std::iter::once(b)).collect();
            let (mut ints, factor) = clear_denominators(&entries);
            let flip = b.is_negative();
            if flip {
                ints.iter_mut().for_each(|x| *x = -x.clone());
            }
            let rhs = ints.pop().expect("rhs present");
            let mut line = ints;
            line.reserve(m + 1);
            line.extend((0..m).map(|k| if k == i { F::Int::one() } else { zero() }));
            line.push(rhs);
            cells.push(line);
            signs.push(flip);
            row_scale.push(factor);
        }
        let mut objective = vec![zero(); width];
        objective[n..n + m].fill(F::Int::one());
        for line in &cells {
            for (o, c) in objective.iter_mut().zip(line) {
                *o -= c;
            }
        }
        Tableau { cells, objective, scale: F::Int::one(), basis: (n..n + m).collect(), row_scale, signs, n }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.cells[row][col].clone();
        let scale = std::mem::replace(&mut self.scale, p.clone());
        let pivot_row = self.cells[row].clone();
        let eliminate = |line: &mut Vec<F::Int>| {
            let factor = line[col].clone();
            for (x, q) in line.iter_mut().zip(&pivot_row) {
                let mut t = p.clone() * &*x;
                if !factor.is_zero() && !q.is_zero() {
                    t -= factor.clone() * q;
                }
                *x = t / &scale;
            }
        };
        for (i, line) in self.cells.iter_mut().enumerate() {
            if i != row {
                eliminate(line);
            }
        }
        eliminate(&mut self.objective);
        self.basis[row] = col;
        if self.scale.is_negative() {
            // Keep the scale positive so entry signs are true signs.
            for x in self.cells.iter_mut().flatten().chain(self.objective.iter_mut()) {
                *x = -x.clone();
            }
            self.scale = -self.scale.clone();
        }
    }

    /// Bland: lowest-index improving column; artificials never re-enter.
    fn optimize(&mut self) {
        let rhs = self.objective.len() - 1;
        while let Some(col) = (0..self.n).find(|&j| self.objective[j].is_negative()) {
            let mut best: Option<usize> = None;
            for (i, line) in self.cells.iter().enumerate() {
                if !line[col].is_positive() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(bi) => {
                        let b = &self.cells[bi];
                        let lhs = line[rhs].clone() * &b[col];
                        let rhs_ = b[rhs].clone() * &line[col];
                        lhs < rhs_ || (lhs == rhs_ && self.basis[i] < self.basis[bi])
                    }
                };
                if better {
                    best = Some(i);
                }
            }
            let row = best.expect("objective is bounded below");
            self.pivot(row, col);
        }
    }

    /// Swaps zero-level artificials out of the basis where a structural
    /// column allows, then minimizes `cost` from the feasible basis.
    fn phase_two(&mut self, cost: &[F]) {
        let rhs = self.objective.len() - 1;
        for row in 0..self.basis.len() {
            if self.basis[row] >= self.n {
                if let Some(col) = (0..self.n).find(|&j| !self.cells[row][j].is_zero()) {
                    self.pivot(row, col);
                }
            }
        }
        let (cost, _) = clear_denominators(&cost.iter().collect::<Vec<_>>());
        let mut objective = vec![F::Int::zero(); rhs + 1];
        for (o, c) in objective.iter_mut().zip(&cost) {
            *o = c.clone() * &self.scale;
        }
        for (line, &b) in self.cells.iter().zip(&self.basis) {
            if b < self.n && !cost[b].is_zero() {
                for (o, x) in objective.iter_mut().zip(line) {
                    *o -= cost[b].clone() * x;
                }
            }
        }
        self.objective = objective;
        self.optimize();
    }

    fn run(mut self, cost: Option<&[F]>) -> StandardOutcome<F> {
        let rhs = self.objective.len() - 1;
        self.optimize();
        if self.objective[rhs].is_zero() {
            if let Some(cost) = cost {
                self.phase_two(cost);
            }
            let mut x = vec![F::zero(); self.n];
            for (i, &b) in self.basis.iter().enumerate() {
                if b < self.n {
                    x[b] = F::from_parts(self.cells[i][rhs].clone(), self.scale.clone());
                }
            }
            StandardOutcome::Feasible(x)
        } else {
            // Dual of row i is 1 - (reduced cost of artificial i), divided by
            // minus the optimum, then mapped back through the row scaling.
            let denom = self.objective[rhs].clone();
            let y = (0..self.signs.len())
                .map(|i| {
                    let u = self.scale.clone() - &self.objective[self.n + i];
                    let u = if self.signs[i] { -u } else { u };
                    F::from_parts(u * &self.row_scale[i], denom.clone())
                })
                .collect();
            StandardOutcome::Infeasible(y)
        }
    }
}

/// Equalities `<a, x> = b` and inequalities `<a, x> <= b` over free `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem<F> {
    pub dim: usize,
    pub equalities: Vec<(Vector<F>, F)>,
    pub inequalities: Vec<(Vector<F>, F)>,
}

/// Result of [`lp_feasible`].
#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<F> {
    Feasible {
        witness: Vector<F>,
    },
    /// Multipliers for equalities (any sign) followed by inequalities
    /// (nonnegative). The combined row vanishes and the combined bound is -1.
    Infeasible {
        farkas: Vector<F>,
    },
}

impl<F> Feasibility<F> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible { .. })
    }
}

impl<F: Field> LinearSystem<F> {
    pub fn new(dim: usize) -> Self {
        LinearSystem { dim, equalities: Vec::new(), inequalities: Vec::new() }
    }

    pub fn equal(mut self, a: Vector<F>, b: F) -> Self {
        self.equalities.push((a, b));
        self
    }

    pub fn at_most(mut self, a: Vector<F>, b: F) -> Self {
        self.inequalities.push((a, b));
        self
    }

    pub fn at_least(self, a: Vector<F>, b: F) -> Self {
        let neg = a.scale(&-F::one());
        self.at_most(neg, -b)
    }

    fn constraints(&self) -> impl Iterator<Item = (&Vector<F>, &F)> {
        self.equalities.iter().chain(&self.inequalities).map(|(a, b)| (a, b))
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidArgument("system dimension must be positive".into()));
        }
        for (a, _) in self.constraints() {
            a.check_dim(self.dim)?;
        }
        Ok(())
    }

    /// Re-checks a feasibility answer by substitution.
    pub fn verify(&self, answer: &Feasibility<F>) -> bool {
        match answer {
            Feasibility::Feasible { witness } => {
                witness.dim() == self.dim
                    && self.equalities.iter().all(|(a, b)| a.dot(witness) == *b)
                    && self.inequalities.iter().all(|(a, b)| a.dot(witness) <= *b)
            }
            Feasibility::Infeasible { farkas } => {
                let neq = self.equalities.len();
                if farkas.dim() != neq + self.inequalities.len()
                    || farkas.coords()[neq..].iter().any(|y| y.is_negative())
                {
                    return false;
                }
                let mut row = Vector::zeros(self.dim);
                let mut bound = F::zero();
                for ((a, b), y) in self.constraints().zip(farkas.coords()) {
                    row.add_scaled(y, a);
                    bound += y.clone() * b.clone();
                }
                row.is_zero() && bound.is_negative()
            }
        }
    }
}

/// Decides feasibility of `sys` exactly. Feasible answers have the least
/// l1 norm among all solutions.
pub fn lp_feasible<F: Field>(sys: &LinearSystem<F>) -> Result<Feasibility<F>> {
    sys.validate()?;
    let dim = sys.dim;
    let nineq = sys.inequalities.len();
    let num_vars = 2 * dim + nineq;
    let mut sf = StandardForm::new(num_vars);
    for (k, (a, b)) in sys.constraints().enumerate() {
        let mut row = Vec::with_capacity(num_vars);
        row.extend(a.coords().iter().cloned());
        row.extend(a.coords().iter().map(|c| -c.clone()));
        row.extend((0..nineq).map(|s| {
            if k >= sys.equalities.len() && s == k - sys.equalities.len() {
                F::one()
            } else {
                F::zero()
            }
        }));
        sf.push_row(row, b.clone());
    }
    // Unit cost on x+ and x- selects a witness of least l1 norm.
    let cost: Vec<F> = (0..num_vars).map(|j| if j < 2 * dim { F::one() } else { F::zero() }).collect();
    let answer = match sf.minimize(&cost) {
        StandardOutcome::Feasible(x) => Feasibility::Feasible {
            witness: Vector::new((0..dim).map(|i| x[i].clone() - x[dim + i].clone()).collect()),
        },
        StandardOutcome::Infeasible(y) => Feasibility::Infeasible { farkas: Vector::new(y) },
    };
    debug_assert!(sys.verify(&answer));
    Ok(answer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn r(n: i64) -> Rational {
        Rational::from_i64(n)
    }

    fn v(c: &[i64]) -> Vector<Rational> {
        Vector::from_i64s(c)
    }

    #[test]
    fn unit_interval_is_feasible_at_zero() {
        let sys = LinearSystem::new(1).at_least(v(&[1]), r(0)).at_most(v(&[1]), r(1));
        let ans = lp_feasible(&sys).unwrap();
        assert!(sys.verify(&ans));
        assert_eq!(ans, Feasibility::Feasible { witness: v(&[0]) });
    }

    #[test]
    fn witness_has_least_l1_norm() {
        // x + 2y >= 4 and x - y <= 1: the cheapest point is (0, 2).
        let sys = LinearSystem::new(2).at_least(v(&[1, 2]), r(4)).at_most(v(&[1, -1]), r(1));
        let ans = lp_feasible(&sys).unwrap();
        assert_eq!(ans, Feasibility::Feasible { witness: v(&[0, 2]) });
    }

    #[test]
    fn empty_interval_has_farkas_certificate() {
        let sys = LinearSystem::new(1).at_least(v(&[1]), r(1)).at_most(v(&[1]), r(0));
        let ans = lp_feasible(&sys).unwrap();
        assert!(sys.verify(&ans));
        assert_eq!(ans, Feasibility::Infeasible { farkas: v(&[1, 1]) });
    }

    #[test]
    fn centroid_barycentric_system() {
        // lambda_1..3 >= 0, sum = 1, lambda_2 = 1/3, lambda_3 = 1/3
        let third = Rational::from_ratio(1, 3);
        let mut sys = LinearSystem::new(3)
            .equal(v(&[1, 1, 1]), r(1))
            .equal(v(&[0, 1, 0]), third.clone())
            .equal(v(&[0, 0, 1]), third.clone());
        for i in 0..3 {
            sys = sys.at_least(Vector::unit(3, i), r(0));
        }
        let ans = lp_feasible(&sys).unwrap();
        assert!(sys.verify(&ans));
        assert_eq!(ans, Feasibility::Feasible { witness: Vector::new(vec![third.clone(), third.clone(), third]) });
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let sys = LinearSystem::new(2).at_most(v(&[1]), r(0));
        assert!(matches!(lp_feasible(&sys), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn standard_form_certificate_checks() {
        // x1 + x2 = -1 with x >= 0 is infeasible.
        let mut sf = StandardForm::new(2);
        sf.push_row(vec![r(1), r(1)], r(-1));
        let out = sf.solve();
        assert!(matches!(out, StandardOutcome::Infeasible(_)));
        assert!(sf.check(&out));
    }

    fn frac() -> impl proptest::strategy::Strategy<Value = Rational> {
        use proptest::prelude::*;
        (-9i64..=9, 1i64..=7).prop_map(|(n, d)| Rational::from_ratio(n, d))
    }

    proptest::proptest! {
        #[test]
        fn fractional_systems_carry_certificates(
            rows in proptest::collection::vec((proptest::collection::vec(frac(), 4), frac()), 1..5),
            cost in proptest::collection::vec(0i64..3, 4),
        ) {
            let mut sf = StandardForm::new(4);
            for (row, b) in rows {
                sf.push_row(row, b);
            }
            let plain = sf.solve();
            proptest::prop_assert!(sf.check(&plain));
            let cost: Vec<Rational> = cost.into_iter().map(r).collect();
            let cheapest = sf.minimize(&cost);
            proptest::prop_assert!(sf.check(&cheapest));
            proptest::prop_assert_eq!(
                matches!(plain, StandardOutcome::Feasible(_)),
                matches!(cheapest, StandardOutcome::Feasible(_))
            );
        }
    }
}
