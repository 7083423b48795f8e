//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Minimizes `c·x` subject to rows `a_i·x (≤|=|≥) b_i` and `x ≥ 0`. Duals
//! follow the usual sign convention for minimization: `y_i ≤ 0` on `≤` rows,
//! `y_i ≥ 0` on `≥` rows, free on equalities, with `c − Aᵀy ≥ 0` at the
//! optimum and `b·y = c·x`.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub status: Status,
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Original,
    Slack,
    Artificial,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    kinds: Vec<Column>,
    pivots: usize,
}

impl Tableau {
    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut d = cost.to_vec();
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in row.iter().enumerate() {
                if !a.is_zero() {
                    d[j] -= cb * a;
                }
            }
        }
        d
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for a in self.rows[r].iter_mut() {
            *a /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (a, b) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = col;
        self.pivots += 1;
    }

    /// Runs Bland's rule to optimality. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allow: impl Fn(usize) -> bool) -> bool {
        loop {
            let d = self.reduced_costs(cost);
            let Some(col) = (0..d.len()).find(|&j| allow(j) && d[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, col),
                None => return false,
            }
        }
    }
}

pub fn solve(problem: &Problem) -> Solution {
    let n = problem.objective.len();
    let m = problem.constraints.len();

    // Normalize to nonnegative right-hand sides.
    let mut flipped = vec![false; m];
    let mut normalized = Vec::with_capacity(m);
    for (i, c) in problem.constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), n, "constraint {i} has the wrong width");
        if c.rhs.is_negative() {
            flipped[i] = true;
            let relation = match c.relation {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
            normalized.push(Constraint {
                coeffs: c.coeffs.iter().map(|a| -a).collect(),
                relation,
                rhs: -&c.rhs,
            });
        } else {
            normalized.push(c.clone());
        }
    }

    // Columns: originals, then one slack/surplus per inequality, then one
    // artificial per ≥/= row. `identity[i]` is the column that started as e_i.
    let mut kinds = vec![Column::Original; n];
    let mut slack_of = vec![None; m];
    for (i, c) in normalized.iter().enumerate() {
        if c.relation != Relation::Eq {
            slack_of[i] = Some(kinds.len());
            kinds.push(Column::Slack);
        }
    }
    let mut identity = vec![0; m];
    for (i, c) in normalized.iter().enumerate() {
        if c.relation == Relation::Le {
            identity[i] = slack_of[i].unwrap();
        } else {
            identity[i] = kinds.len();
            kinds.push(Column::Artificial);
        }
    }
    let width = kinds.len();
    let mut rows = Vec::with_capacity(m);
    for (i, c) in normalized.iter().enumerate() {
        let mut row = vec![Rational::zero(); width];
        row[..n].clone_from_slice(&c.coeffs);
        if let Some(s) = slack_of[i] {
            row[s] = match c.relation {
                Relation::Le => Rational::from_integer(1.into()),
                _ => Rational::from_integer((-1).into()),
            };
        }
        row[identity[i]] = Rational::from_integer(1.into());
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        rhs: normalized.iter().map(|c| c.rhs.clone()).collect(),
        basis: identity.clone(),
        kinds,
        pivots: 0,
    };

    let infeasible = |pivots| Solution {
        status: Status::Infeasible,
        value: Rational::zero(),
        primal: vec![Rational::zero(); n],
        dual: vec![Rational::zero(); m],
        pivots,
    };

    // Phase I: minimize the sum of artificials.
    if t.kinds.contains(&Column::Artificial) {
        let phase1: Vec<Rational> = t
            .kinds
            .iter()
            .map(|k| match k {
                Column::Artificial => Rational::from_integer(1.into()),
                _ => Rational::zero(),
            })
            .collect();
        t.optimize(&phase1, |_| true);
        let residual = (0..m)
            .filter(|&i| t.kinds[t.basis[i]] == Column::Artificial)
            .fold(Rational::zero(), |acc, i| acc + &t.rhs[i]);
        if residual.is_positive() {
            return infeasible(t.pivots);
        }
        // Drive zero-valued artificials out of the basis where possible.
        for i in 0..m {
            if t.kinds[t.basis[i]] != Column::Artificial {
                continue;
            }
            if let Some(col) = (0..width).find(|&j| t.kinds[j] != Column::Artificial && !t.rows[i][j].is_zero()) {
                t.pivot(i, col);
            }
        }
    }

    // Phase II.
    let mut cost = vec![Rational::zero(); width];
    cost[..n].clone_from_slice(&problem.objective);
    let kinds = t.kinds.clone();
    let bounded = t.optimize(&cost, |j| kinds[j] != Column::Artificial);
    let mut primal = vec![Rational::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < n {
            primal[b] = t.rhs[i].clone();
        }
    }
    if !bounded {
        return Solution {
            status: Status::Unbounded,
            value: Rational::zero(),
            primal,
            dual: vec![Rational::zero(); m],
            pivots: t.pivots,
        };
    }
    let d = t.reduced_costs(&cost);
    let dual = (0..m)
        .map(|i| {
            let y = -&d[identity[i]];
            if flipped[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    let value = primal
        .iter()
        .zip(&problem.objective)
        .fold(Rational::zero(), |acc, (x, c)| acc + x * c);
    Solution {
        status: Status::Optimal,
        value,
        primal,
        dual,
        pivots: t.pivots,
    }
}
