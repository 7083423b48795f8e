use std::fmt;

use madcert::density::{mad_exact, DensityError, DensityWitness};
use madcert::discharging::{threshold, MIN_DELTA};
use madcert::graph::Graph;
use madcert::lp::{optimal_threshold, LpError};
use madcert::rational::{decimal, exact};
use madcert::Rational;
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerdictError {
    #[error(transparent)]
    Density(#[from] DensityError),
    #[error(transparent)]
    Lp(#[from] LpError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    GuaranteedSmallDelta,
    GuaranteedSparse,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::GuaranteedSmallDelta => "guaranteed_small_delta",
            Outcome::GuaranteedSparse => "guaranteed_sparse",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

/// The threshold a graph is compared against; absent below `Δ = 5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThresholdValue {
    SmallDelta,
    Value(Rational),
}

impl fmt::Display for ThresholdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThresholdValue::SmallDelta => f.write_str("small_delta"),
            ThresholdValue::Value(m) => f.write_str(&exact(m)),
        }
    }
}

impl Serialize for ThresholdValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub delta: usize,
    #[serde(with = "madcert::rational::serde_exact")]
    pub mad: Rational,
    pub m: ThresholdValue,
    /// `min(m, m*)` where `m*` is the exact LP optimum over the inequality
    /// family. Only computed when `mad < m`, since otherwise the outcome is
    /// inconclusive either way.
    #[serde(with = "madcert::rational::serde_exact::option")]
    pub m_certified: Option<Rational>,
    pub outcome: Outcome,
    pub witness: DensityWitness,
}

impl Verdict {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "delta: {}\nmad: {} ({})\nm: {}\n",
            self.delta,
            exact(&self.mad),
            decimal(&self.mad, 6),
            self.m
        );
        if let Some(mc) = &self.m_certified {
            out.push_str(&format!("m_certified: {}\n", exact(mc)));
        }
        out.push_str(&format!("outcome: {}\n", self.outcome.as_str()));
        out.push_str(&format!("witness: {}\n", join(&self.witness.vertices)));
        out
    }
}

pub(crate) fn join(vs: &[usize]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Classifies `g` by comparing `mad(g)` against the threshold for its `Δ`.
///
/// A sparse verdict requires `mad < m` and also `mad < m*`: for large `Δ` the
/// closed-form `m` exceeds what nonnegative multipliers on the inequality
/// family can certify, and only `m*` is backed by a dual certificate.
pub fn theorem_verdict(g: &Graph) -> Result<Verdict, VerdictError> {
    let witness = mad_exact(g)?;
    let delta = g.max_degree();
    let mad = witness.density.clone();
    if delta < MIN_DELTA {
        return Ok(Verdict {
            delta,
            mad,
            m: ThresholdValue::SmallDelta,
            m_certified: None,
            outcome: Outcome::GuaranteedSmallDelta,
            witness,
        });
    }
    let m = threshold(delta).map_err(LpError::from)?.m;
    let (m_certified, outcome) = if mad < m {
        let m_star = optimal_threshold(delta)?.value;
        let certified = m_star.min(m.clone());
        let outcome = if mad < certified {
            Outcome::GuaranteedSparse
        } else {
            Outcome::Inconclusive
        };
        (Some(certified), outcome)
    } else {
        (None, Outcome::Inconclusive)
    };
    Ok(Verdict {
        delta,
        mad,
        m: ThresholdValue::Value(m),
        m_certified,
        outcome,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use madcert::graph::{generate, Generator};
    use madcert::rational::{int, ratio};

    fn verdict(g: Generator) -> Verdict {
        theorem_verdict(&generate(g).unwrap()).unwrap()
    }

    #[test]
    fn small_delta() {
        let v = verdict(Generator::Cycle(5));
        assert_eq!(v.outcome, Outcome::GuaranteedSmallDelta);
        assert_eq!(v.m, ThresholdValue::SmallDelta);
        assert_eq!(verdict(Generator::Petersen).outcome, Outcome::GuaranteedSmallDelta);
        assert_eq!(verdict(Generator::Complete(5)).outcome, Outcome::GuaranteedSmallDelta);
    }

    #[test]
    fn sparse_tree() {
        let v = verdict(Generator::Star(9));
        assert_eq!(v.delta, 9);
        assert_eq!(v.mad, ratio(9, 5));
        assert_eq!(v.m, ThresholdValue::Value(int(6)));
        assert_eq!(v.m_certified, Some(int(6)));
        assert_eq!(v.outcome, Outcome::GuaranteedSparse);
    }

    #[test]
    fn dense_complete() {
        let v = verdict(Generator::Complete(6));
        assert_eq!(v.mad, int(5));
        assert_eq!(v.outcome, Outcome::Inconclusive);
        assert_eq!(v.m_certified, None);
    }

    #[test]
    fn certified_threshold_below_closed_form() {
        // Δ = 14: m = 61/8 but the inequality family only certifies 53/7.
        let v = verdict(Generator::Star(14));
        assert_eq!(v.m, ThresholdValue::Value(ratio(61, 8)));
        assert_eq!(v.m_certified, Some(ratio(53, 7)));
        assert_eq!(v.outcome, Outcome::GuaranteedSparse);
    }

    #[test]
    fn empty_graph_is_an_error() {
        assert!(theorem_verdict(&Graph::empty(0)).is_err());
    }
}
