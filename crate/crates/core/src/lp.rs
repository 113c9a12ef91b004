//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves `max c·x` subject to `A x = b`, `x ≥ 0`. At an optimum the dual
//! vector `y` satisfies `yᵀA ≥ c` and `yᵀb = c·x`, which is checked by the
//! tests rather than trusted.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Q>,
    /// One entry per constraint row, in input order.
    pub duals: Vec<Q>,
    pub value: Q,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    /// Reduced costs `c_j - c_B B⁻¹ A_j`, followed by minus the objective value.
    cost: Vec<Q>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Q {
        &self.rows[r][self.width]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        let nonzero: Vec<usize> = (0..=self.width)
            .filter(|&j| !self.rows[r][j].is_zero())
            .collect();
        for &j in &nonzero {
            self.rows[r][j] = &self.rows[r][j] / &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for &j in &nonzero {
                row[j] = &row[j] - &f * &pivot_row[j];
            }
        }
        if !self.cost[col].is_zero() {
            let f = self.cost[col].clone();
            for &j in &nonzero {
                self.cost[j] = &self.cost[j] - &f * &pivot_row[j];
            }
        }
        self.basis[r] = col;
    }

    /// Runs Bland's rule over columns `< limit`. Returns false when unbounded.
    fn optimize(&mut self, limit: usize) -> bool {
        loop {
            let Some(col) = (0..limit).find(|&j| self.cost[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Q)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / a;
                let better = match &best {
                    None => true,
                    Some((br, bq)) => ratio < *bq || (ratio == *bq && self.basis[r] < self.basis[*br]),
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }

    fn set_costs(&mut self, c: &[Q]) {
        let mut cost: Vec<Q> = (0..=self.width)
            .map(|j| if j < c.len() { c[j].clone() } else { Q::zero() })
            .collect();
        for (r, &b) in self.basis.iter().enumerate() {
            let cb = if b < c.len() { c[b].clone() } else { Q::zero() };
            if cb.is_zero() {
                continue;
            }
            for (j, cj) in cost.iter_mut().enumerate() {
                if !self.rows[r][j].is_zero() {
                    *cj = &*cj - &cb * &self.rows[r][j];
                }
            }
        }
        self.cost = cost;
    }
}

/// `max c·x` s.t. `A x = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<Q>], b: &[Q], c: &[Q]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    assert_eq!(b.len(), m);
    assert!(a.iter().all(|row| row.len() == n));

    // Normalise to b ≥ 0 and append one artificial column per row.
    let mut flipped = vec![false; m];
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for i in 0..m {
        flipped[i] = b[i].is_negative();
        let sign = if flipped[i] { -Q::one() } else { Q::one() };
        let mut row: Vec<Q> = a[i].iter().map(|v| v * &sign).collect();
        row.extend((0..m).map(|k| if k == i { Q::one() } else { Q::zero() }));
        row.push(&b[i] * &sign);
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        cost: Vec::new(),
        basis: (n..n + m).collect(),
        width,
    };
    let phase1: Vec<Q> = (0..width).map(|j| if j < n { Q::zero() } else { -Q::one() }).collect();
    t.set_costs(&phase1);
    t.optimize(width);
    if t.cost[width].is_positive() {
        // Remaining artificial mass: minus the phase-1 value is positive.
        return LpOutcome::Infeasible;
    }

    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are linear combinations of the others.
    let mut kept: Vec<usize> = (0..m).collect();
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, col);
            } else {
                // The stuck artificial names the original row that is redundant.
                let original = t.basis[r] - n;
                kept.retain(|&i| i != original);
                t.rows.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }
    for row in &mut t.rows {
        row.drain(n..width);
    }
    t.width = n;
    t.set_costs(c);
    if !t.optimize(n) {
        return LpOutcome::Unbounded;
    }

    let mut x = vec![Q::zero(); n];
    for (r, &j) in t.basis.iter().enumerate() {
        x[j] = t.rhs(r).clone();
    }
    let value = c.iter().zip(&x).fold(Q::zero(), |acc, (ci, xi)| acc + ci * xi);

    // yᵀ B = c_B on the kept (normalised) rows.
    let k = kept.len();
    let mut system: Vec<Vec<Q>> = (0..k)
        .map(|col_pos| {
            let j = t.basis[col_pos];
            let mut eq: Vec<Q> = kept
                .iter()
                .map(|&i| if flipped[i] { -a[i][j].clone() } else { a[i][j].clone() })
                .collect();
            eq.push(c[j].clone());
            eq
        })
        .collect();
    let y_kept = solve_square(&mut system).expect("optimal basis is nonsingular");
    let mut duals = vec![Q::zero(); m];
    for (pos, &i) in kept.iter().enumerate() {
        duals[i] = if flipped[i] {
            -y_kept[pos].clone()
        } else {
            y_kept[pos].clone()
        };
    }
    LpOutcome::Optimal(LpSolution { x, duals, value })
}

/// Gaussian elimination on an augmented `k × (k+1)` system.
fn solve_square(system: &mut [Vec<Q>]) -> Option<Vec<Q>> {
    let k = system.len();
    for col in 0..k {
        let p = (col..k).find(|&r| !system[r][col].is_zero())?;
        system.swap(col, p);
        let pivot = system[col][col].clone();
        for j in col..=k {
            system[col][j] = &system[col][j] / &pivot;
        }
        let prow = system[col].clone();
        for (r, row) in system.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..=k {
                row[j] = &row[j] - &f * &prow[j];
            }
        }
    }
    Some(system.iter().map(|row| row[k].clone()).collect())
}

/// Smallest positive integer multiple of `xs` that is integral, divided by the gcd of the result.
pub fn clear_denominators(xs: &[Q]) -> Vec<BigInt> {
    use num::Integer;
    let l = xs
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = xs.iter().map(|v| (v * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn check_certificate(a: &[Vec<Q>], b: &[Q], c: &[Q], s: &LpSolution) {
        for (i, row) in a.iter().enumerate() {
            let lhs = row.iter().zip(&s.x).fold(Q::zero(), |acc, (p, x)| acc + p * x);
            assert_eq!(lhs, b[i], "primal row {i}");
        }
        assert!(s.x.iter().all(|v| !v.is_negative()));
        for j in 0..c.len() {
            let ya = a.iter().zip(&s.duals).fold(Q::zero(), |acc, (row, y)| acc + &row[j] * y);
            assert!(ya >= c[j], "dual column {j}");
        }
        let yb = b.iter().zip(&s.duals).fold(Q::zero(), |acc, (bi, y)| acc + bi * y);
        assert_eq!(yb, s.value);
    }

    #[test]
    fn small_optimum() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6
        let a = vec![qs(&[1, 2, 1, 0]), qs(&[3, 1, 0, 1])];
        let b = qs(&[4, 6]);
        let c = qs(&[1, 1, 0, 0]);
        let LpOutcome::Optimal(s) = maximize(&a, &b, &c) else {
            panic!()
        };
        assert_eq!(s.value, Q::new(BigInt::from(14), BigInt::from(5)));
        check_certificate(&a, &b, &c, &s);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![qs(&[1, 1])];
        assert_eq!(maximize(&a, &qs(&[-1]), &qs(&[0, 0])), LpOutcome::Infeasible);
        let a = vec![qs(&[1, -1])];
        assert_eq!(maximize(&a, &qs(&[0]), &qs(&[1, 0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_and_negative_rhs() {
        let a = vec![qs(&[1, 1, 0]), qs(&[2, 2, 0]), qs(&[-1, 0, -1])];
        let b = qs(&[2, 4, -1]);
        let c = qs(&[1, 0, 0]);
        let LpOutcome::Optimal(s) = maximize(&a, &b, &c) else {
            panic!()
        };
        assert_eq!(s.value, q(1));
        check_certificate(&a, &b, &c, &s);
    }

    #[test]
    fn clearing() {
        let xs = vec![Q::new(BigInt::from(1), BigInt::from(6)), Q::new(BigInt::from(1), BigInt::from(3)), q(0)];
        assert_eq!(clear_denominators(&xs), vec![BigInt::from(1), BigInt::from(2), BigInt::from(0)]);
        let xs = vec![q(4), q(6)];
        assert_eq!(clear_denominators(&xs), vec![BigInt::from(2), BigInt::from(3)]);
    }

    proptest! {
        // Bounded random LPs: a known feasible point keeps phase 1 honest and
        // the box row keeps the optimum finite.
        #[test]
        fn duals_certify_optimality(
            rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..4),
            point in prop::collection::vec(0i64..3, 5),
            c in prop::collection::vec(-3i64..4, 5),
            combos in prop::collection::vec((0usize..4, 0usize..4), 0..3),
        ) {
            let mut rows = rows;
            // Dependent rows, placed in front, exercise the redundant-row cleanup.
            for (k, (i, j)) in combos.iter().enumerate() {
                let (i, j) = (i % rows.len(), j % rows.len());
                let sum: Vec<i64> = rows[i].iter().zip(&rows[j]).map(|(x, y)| x + (k as i64 + 1) * y).collect();
                rows.insert(0, sum);
            }
            let mut a: Vec<Vec<Q>> = rows.iter().map(|r| qs(r)).collect();
            let mut b: Vec<Q> = rows
                .iter()
                .map(|r| q(r.iter().zip(&point).map(|(x, y)| x * y).sum()))
                .collect();
            // x_0 + … + x_4 + slack = 20
            for row in &mut a { row.push(q(0)); }
            let mut bound = qs(&[1, 1, 1, 1, 1]);
            bound.push(q(1));
            a.push(bound);
            b.push(q(20 ));
            let mut c = qs(&c);
            c.push(q(0));
            match maximize(&a, &b, &c) {
                LpOutcome::Optimal(s) => check_certificate(&a, &b, &c, &s),
                other => prop_assert!(false, "unexpected {:?}", other),
            }
        }
    }
}
