//! Exact phase-I simplex over rationals with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

/// A row `coefficients · x (≤ | =) rhs` over free variables x.
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coefficients: Vec<Rational>,
    pub rhs: Rational,
    pub equality: bool,
}

struct Tableau {
    /// rows × (cols + 1); the last column is the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Phase-I objective (reduced costs), length cols + 1.
    objective: Vec<Rational>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            if !v.is_zero() {
                *v = &*v / &p;
            }
        }
        let pivot_row = self.rows[row].clone();
        let eliminate = |target: &mut Vec<Rational>| {
            let f = target[col].clone();
            if f.is_zero() {
                return;
            }
            for (t, pv) in target.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *t = &*t - &f * pv;
                }
            }
        };
        for (r, target) in self.rows.iter_mut().enumerate() {
            if r != row {
                eliminate(target);
            }
        }
        eliminate(&mut self.objective);
        self.basis[row] = col;
    }

    /// Minimizes the phase-I objective. Bland's rule: lowest entering
    /// index with negative reduced cost, ties in the ratio test broken by
    /// lowest basic index.
    fn minimize(&mut self) {
        loop {
            let Some(col) = (0..self.cols).find(|&j| self.objective[j].is_negative()) else {
                return;
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((b, _, basic)) => ratio < *b || (ratio == *b && self.basis[r] < *basic),
                };
                if better {
                    best = Some((ratio, r, self.basis[r]));
                }
            }
            match best {
                Some((_, r, _)) => self.pivot(r, col),
                // Phase I is bounded below by zero, so this cannot happen.
                None => return,
            }
        }
    }
}

/// A point satisfying every constraint, or `None` if there is none.
pub fn find_feasible_point(constraints: &[Constraint], vars: usize) -> Option<Vec<Rational>> {
    // Columns: x⁺ (vars), x⁻ (vars), one slack per inequality, one
    // artificial per row that lacks a usable slack.
    let ineqs = constraints.iter().filter(|c| !c.equality).count();
    let mut slack_of = Vec::with_capacity(constraints.len());
    let mut next_slack = 2 * vars;
    for c in constraints {
        if c.equality {
            slack_of.push(None);
        } else {
            slack_of.push(Some(next_slack));
            next_slack += 1;
        }
    }
    debug_assert_eq!(next_slack, 2 * vars + ineqs);
    let needs_artificial: Vec<bool> = constraints
        .iter()
        .map(|c| c.equality || c.rhs.is_negative())
        .collect();
    let artificials = needs_artificial.iter().filter(|&&b| b).count();
    let cols = next_slack + artificials;

    let mut rows = Vec::with_capacity(constraints.len());
    let mut basis = Vec::with_capacity(constraints.len());
    let mut next_art = next_slack;
    for (i, c) in constraints.iter().enumerate() {
        let sign = if c.rhs.is_negative() {
            -Rational::one()
        } else {
            Rational::one()
        };
        let mut row = vec![Rational::zero(); cols + 1];
        for (j, a) in c.coefficients.iter().enumerate() {
            if !a.is_zero() {
                row[j] = &sign * a;
                row[vars + j] = -(&sign * a);
            }
        }
        if let Some(s) = slack_of[i] {
            row[s] = sign.clone();
        }
        row[cols] = &sign * &c.rhs;
        if needs_artificial[i] {
            row[next_art] = Rational::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(slack_of[i].expect("inequality rows have slacks"));
        }
        rows.push(row);
    }

    // Objective: minimize the sum of artificials, expressed in nonbasic
    // terms by subtracting their rows.
    let mut objective = vec![Rational::zero(); cols + 1];
    for (row, needs) in rows.iter().zip(&needs_artificial) {
        if *needs {
            for (o, v) in objective.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o = &*o - v;
                }
            }
        }
    }
    for o in &mut objective[next_slack..cols] {
        *o = Rational::zero();
    }

    let mut t = Tableau {
        rows,
        basis,
        objective,
        cols,
    };
    t.minimize();
    if !t.objective[cols].is_zero() {
        return None;
    }
    let mut values = vec![Rational::zero(); cols];
    for (r, &b) in t.basis.iter().enumerate() {
        values[b] = t.rows[r][cols].clone();
    }
    Some((0..vars).map(|j| &values[j] - &values[vars + j]).collect())
}
