//! Exact tools for certifying list-edge-coloring bounds on sparse graphs.
//!
//! * [`graph`]: simple graphs, edge-list and graph6 formats, generators.
//! * [`density`]: average degree and exact maximum average degree.
//! * [`discharging`]: thresholds, the inequality system, and the discharging
//!   replay that turns `mad(G) < m(Δ)` into `χ'ₗ(G) ≤ Δ+1`.
//! * [`lp`]: the same argument as an exact linear program with dual
//!   certificates.
//! * [`choosability`]: exact edge-coloring and list-edge-coloring searches on
//!   small graphs, plus necessary conditions for criticality.

pub mod choosability;
pub mod density;
pub mod discharging;
pub mod flow;
pub mod graph;
pub mod lp;
pub mod rational;
pub mod simplex;

pub use rational::Rational;
