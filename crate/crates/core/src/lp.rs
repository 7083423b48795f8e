//! The discharging argument as a linear program over degree profiles.
//!
//! Variables are the fractions `n_j` of vertices of degree `j ∈ [3, Δ]`.
//! Minimizing the average degree `Σ j·n_j` subject to `Σ n_j = 1` and every
//! inequality row (weakly) gives the best threshold `m*(Δ)` that this row
//! family can support. The dual of that LP is a multiplier vector plus a bound
//! `μ`; it is feasible exactly when every degree class ends with charge at
//! least `μ` after discharging.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::discharging::{
    build_inequalities, paper_multipliers, threshold, DischargingError, InequalitySystem,
    MultiplierVector,
};
use crate::graph::DegreeProfile;
use crate::rational::{exact, int, ratio, Rational};
use crate::simplex::{self, Constraint, Relation, Status};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error(transparent)]
    Discharging(#[from] DischargingError),
    #[error("multiplier for row a = {a} is negative")]
    NegativeMultiplier { a: usize },
    #[error("expected {expected} multipliers, got {got}")]
    WrongLength { expected: usize, got: usize },
}

/// `min Σ j·n_j` s.t. `Σ n_j = 1`, `(RHS_a − LHS_a)·n ≥ 0`, `n ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub delta: usize,
    pub system: InequalitySystem,
}

impl LpProblem {
    pub fn new(delta: usize) -> Result<Self, LpError> {
        Ok(LpProblem {
            delta,
            system: build_inequalities(delta)?,
        })
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<usize> {
        3..=self.delta
    }

    fn to_simplex(&self) -> simplex::Problem {
        let degrees: Vec<usize> = self.degrees().collect();
        let mut constraints = vec![Constraint {
            coeffs: degrees.iter().map(|_| Rational::one()).collect(),
            relation: Relation::Eq,
            rhs: Rational::one(),
        }];
        for row in &self.system.rows {
            constraints.push(Constraint {
                coeffs: degrees.iter().map(|&j| int(row.slack_coefficient(j))).collect(),
                relation: Relation::Ge,
                rhs: Rational::zero(),
            });
        }
        simplex::Problem {
            objective: degrees.iter().map(|&j| int(j as i64)).collect(),
            constraints,
        }
    }

    /// Whether a rational profile satisfies every constraint weakly.
    pub fn is_feasible(&self, primal: &BTreeMap<usize, Rational>) -> bool {
        let get = |j: usize| primal.get(&j).cloned().unwrap_or_else(Rational::zero);
        let total = self.degrees().fold(Rational::zero(), |acc, j| acc + get(j));
        total.is_one()
            && self.degrees().all(|j| !get(j).is_negative())
            && self.system.rows.iter().all(|row| {
                let slack = self
                    .degrees()
                    .fold(Rational::zero(), |acc, j| acc + int(row.slack_coefficient(j)) * get(j));
                !slack.is_negative()
            })
    }

    pub fn objective(&self, primal: &BTreeMap<usize, Rational>) -> Rational {
        primal
            .iter()
            .fold(Rational::zero(), |acc, (j, n)| acc + int(*j as i64) * n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    pub delta: usize,
    pub status: LpStatus,
    /// `m*(Δ)`.
    #[serde(with = "crate::rational::serde_exact")]
    pub value: Rational,
    /// Worst-case profile, keyed by degree.
    #[serde(serialize_with = "crate::rational::serde_exact::map::serialize")]
    pub primal: BTreeMap<usize, Rational>,
    /// Row multipliers `λ_a`, keyed by `a`.
    pub dual: MultiplierVector,
    /// Dual bound `μ`.
    #[serde(with = "crate::rational::serde_exact")]
    pub mu: Rational,
    pub pivots: usize,
}

/// Solves the LP for `Δ` with the exact simplex.
pub fn optimal_threshold(delta: usize) -> Result<LpSolution, LpError> {
    let problem = LpProblem::new(delta)?;
    let sol = simplex::solve(&problem.to_simplex());
    let status = match sol.status {
        Status::Optimal => LpStatus::Optimal,
        Status::Infeasible => LpStatus::Infeasible,
        Status::Unbounded => LpStatus::Unbounded,
    };
    let primal = problem
        .degrees()
        .zip(sol.primal)
        .filter(|(_, n)| !n.is_zero())
        .collect();
    Ok(LpSolution {
        delta,
        status,
        value: sol.value,
        primal,
        mu: sol.dual[0].clone(),
        dual: MultiplierVector {
            lambdas: sol.dual[1..].to_vec(),
        },
        pivots: sol.pivots,
    })
}

/// `j − Σ_a λ_a·r_{a,j}` for every class `j ∈ [3, Δ]`: the charge class `j`
/// keeps after discharging with these multipliers.
pub fn class_charges(
    delta: usize,
    lambdas: &MultiplierVector,
) -> Result<BTreeMap<usize, Rational>, LpError> {
    let system = build_inequalities(delta)?;
    if lambdas.lambdas.len() != system.rows.len() {
        return Err(LpError::WrongLength {
            expected: system.rows.len(),
            got: lambdas.lambdas.len(),
        });
    }
    Ok((3..=delta)
        .map(|j| {
            let spent = system
                .rows
                .iter()
                .zip(&lambdas.lambdas)
                .fold(Rational::zero(), |acc, (row, l)| acc + l * int(row.slack_coefficient(j)));
            (j, int(j as i64) - spent)
        })
        .collect())
}

/// True iff nonnegative `lambdas` prove that every profile weakly satisfying
/// all rows has average degree at least `m`.
pub fn verify_certificate(
    delta: usize,
    lambdas: &MultiplierVector,
    m: &Rational,
) -> Result<bool, LpError> {
    if let Some(i) = lambdas.lambdas.iter().position(|l| l.is_negative()) {
        return Err(LpError::NegativeMultiplier { a: i + 3 });
    }
    Ok(class_charges(delta, lambdas)?.values().all(|charge| charge >= m))
}

/// The multipliers the discharging proof uses, with `m = m(Δ)`.
pub fn certificate_from_paper(delta: usize) -> Result<(MultiplierVector, Rational), LpError> {
    let m = threshold(delta)?.m;
    Ok((paper_multipliers(delta, &m)?, m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub primal_feasible: bool,
    pub primal_objective_matches: bool,
    pub dual_feasible: bool,
    pub bound_matches: bool,
}

impl DualityCheck {
    pub fn holds(&self) -> bool {
        self.primal_feasible && self.primal_objective_matches && self.dual_feasible && self.bound_matches
    }
}

/// Re-checks an optimal solution independently of the solver.
pub fn check_strong_duality(solution: &LpSolution) -> Result<DualityCheck, LpError> {
    let problem = LpProblem::new(solution.delta)?;
    let dual_feasible = solution.status == LpStatus::Optimal
        && solution.dual.is_nonnegative()
        && verify_certificate(solution.delta, &solution.dual, &solution.mu)?;
    Ok(DualityCheck {
        primal_feasible: problem.is_feasible(&solution.primal),
        primal_objective_matches: problem.objective(&solution.primal) == solution.value,
        dual_feasible,
        bound_matches: solution.mu == solution.value,
    })
}

/// Comparison of `m*(Δ)` with `m(Δ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SoundnessReport {
    pub delta: usize,
    #[serde(with = "crate::rational::serde_exact")]
    pub m: Rational,
    #[serde(with = "crate::rational::serde_exact")]
    pub m_star: Rational,
    /// `m* − m`; negative means the row family cannot support `m`.
    #[serde(with = "crate::rational::serde_exact")]
    pub gap: Rational,
    pub sound: bool,
    pub duality: DualityCheck,
    /// When unsound: an integer profile that satisfies every row strictly
    /// yet has average degree below `m`.
    pub strict_counterexample: Option<DegreeProfile>,
    #[serde(with = "crate::rational::serde_exact::option")]
    pub counterexample_average: Option<Rational>,
}

impl SoundnessReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "delta: {}", self.delta);
        let _ = writeln!(out, "m: {}", exact(&self.m));
        let _ = writeln!(out, "m_star: {}", exact(&self.m_star));
        let _ = writeln!(out, "gap: {}", exact(&self.gap));
        let _ = writeln!(out, "sound: {}", self.sound);
        let _ = writeln!(out, "strong_duality: {}", self.duality.holds());
        if let (Some(p), Some(avg)) = (&self.strict_counterexample, &self.counterexample_average) {
            let _ = writeln!(out, "strict_counterexample: {p}");
            let _ = writeln!(out, "counterexample_average: {}", exact(avg));
        }
        out
    }
}

pub fn soundness(delta: usize) -> Result<(LpSolution, SoundnessReport), LpError> {
    let m = threshold(delta)?.m;
    let sol = optimal_threshold(delta)?;
    let duality = check_strong_duality(&sol)?;
    let sound = sol.value >= m;
    let (strict_counterexample, counterexample_average) = if sound {
        (None, None)
    } else {
        let p = strict_profile_below(delta, &sol.primal, &sol.value, &m);
        let avg = Rational::new(BigInt::from(p.degree_sum()), BigInt::from(p.vertex_count()));
        (Some(p), Some(avg))
    };
    let report = SoundnessReport {
        delta,
        gap: &sol.value - &m,
        m_star: sol.value.clone(),
        m,
        sound,
        duality,
        strict_counterexample,
        counterexample_average,
    };
    Ok((sol, report))
}

/// Mixes the weak optimum with the all-`Δ` profile (which satisfies every
/// row strictly) just enough to make every row strict while keeping the
/// average below `m`, then clears denominators.
fn strict_profile_below(
    delta: usize,
    primal: &BTreeMap<usize, Rational>,
    m_star: &Rational,
    m: &Rational,
) -> DegreeProfile {
    let d = int(delta as i64);
    let eps = (m - m_star) / (int(2) * (&d - m_star));
    let mut mix: BTreeMap<usize, Rational> = primal
        .iter()
        .map(|(j, n)| (*j, n * (Rational::one() - &eps)))
        .collect();
    *mix.entry(delta).or_insert_with(Rational::zero) += &eps;
    let lcm = mix
        .values()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let lcm = Rational::from_integer(lcm);
    DegreeProfile::from_counts(mix.into_iter().map(|(j, n)| {
        let count = (n * &lcm).to_integer();
        (j, usize::try_from(count).expect("profile counts fit in usize"))
    }))
}

/// The largest `m` that nonnegative `lambdas` certify: the minimum class charge.
pub fn certified_bound(delta: usize, lambdas: &MultiplierVector) -> Result<Rational, LpError> {
    Ok(class_charges(delta, lambdas)?
        .into_values()
        .min()
        .unwrap_or_else(|| ratio(0, 1)))
}
