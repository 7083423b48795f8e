//! Average degree and maximum average degree.
//!
//! Densities use the average-degree convention `2·e(H)/|H|` throughout. The
//! exact algorithm works internally with the edge ratio `e(H)/|H|` and doubles
//! at the boundary.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::flow::{Capacity, Dinic};
use crate::graph::Graph;
use crate::rational::{int, Rational};

pub const DEFAULT_BRUTEFORCE_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("{n} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// A vertex subset together with the average degree of the subgraph it
/// induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityWitness {
    pub vertices: Vec<usize>,
    #[serde(with = "crate::rational::serde_exact")]
    pub density: Rational,
}

impl DensityWitness {
    fn new(g: &Graph, vertices: Vec<usize>) -> Self {
        let density = induced_density(g, &vertices);
        DensityWitness { vertices, density }
    }

    /// Recomputes `2·e(H)/|H|` from the graph.
    pub fn recompute(&self, g: &Graph) -> Rational {
        induced_density(g, &self.vertices)
    }
}

fn induced_density(g: &Graph, vertices: &[usize]) -> Rational {
    let e = g.induced_edge_count(vertices);
    Rational::new(BigInt::from(2 * e), BigInt::from(vertices.len()))
}

/// Smaller cardinality first, then lexicographic vertex order.
fn witness_order(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn average_degree(g: &Graph) -> Result<Rational, DensityError> {
    if g.n() == 0 {
        return Err(DensityError::EmptyGraph);
    }
    Ok(Rational::new(
        BigInt::from(2 * g.edge_count()),
        BigInt::from(g.n()),
    ))
}

pub fn mad_bruteforce(g: &Graph) -> Result<DensityWitness, DensityError> {
    mad_bruteforce_with_limit(g, DEFAULT_BRUTEFORCE_LIMIT)
}

/// Exhaustive maximum over all nonempty vertex subsets.
pub fn mad_bruteforce_with_limit(g: &Graph, limit: usize) -> Result<DensityWitness, DensityError> {
    let n = g.n();
    if n == 0 {
        return Err(DensityError::EmptyGraph);
    }
    if n > limit || n >= 64 {
        return Err(DensityError::TooLarge { n, limit });
    }
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let members = |mask: u64| -> Vec<usize> { (0..n).filter(|&v| mask >> v & 1 == 1).collect() };

    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        let twice_edges: u32 = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .map(|v| (adj[v] & mask).count_ones())
            .sum();
        let edges = twice_edges as usize / 2;
        let better = match &best {
            None => true,
            Some((be, bs, bv)) => match (edges * bs).cmp(&(be * size)) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => witness_order(&members(mask), bv) == Ordering::Less,
            },
        };
        if better {
            best = Some((edges, size, members(mask)));
        }
    }
    let (_, _, vertices) = best.expect("n >= 1");
    Ok(DensityWitness::new(g, vertices))
}

/// `γ = numer/denom`, the edge ratio being tested.
#[derive(Debug, Clone, Copy)]
struct Guess {
    numer: Capacity,
    denom: Capacity,
}

impl Guess {
    fn new(numer: usize, denom: usize) -> Self {
        let g = gcd(numer, denom).max(1);
        Guess {
            numer: (numer / g) as Capacity,
            denom: (denom / g) as Capacity,
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Computes `max_H (denom·e(H) − numer·|H|)` and the smallest maximizing
/// vertex set, optionally forcing `forced` into `H`.
fn parametric_cut(g: &Graph, guess: Guess, forced: Option<usize>) -> (Capacity, Vec<usize>) {
    let m = g.edge_count();
    let n = g.n();
    let (source, sink) = (0, 1);
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: usize| 2 + m + v;
    let infinity = guess.denom * (m as Capacity + 1);

    let mut net = Dinic::new(2 + m + n);
    for (i, e) in g.edges().iter().enumerate() {
        net.add_edge(source, edge_node(i), guess.denom);
        net.add_edge(edge_node(i), vertex_node(e.0), infinity);
        net.add_edge(edge_node(i), vertex_node(e.1), infinity);
    }
    for v in 0..n {
        net.add_edge(vertex_node(v), sink, guess.numer);
    }
    if let Some(v) = forced {
        net.add_edge(source, vertex_node(v), infinity);
    }
    let cut = net.max_flow(source, sink);
    let side = net.source_side(source);
    let vertices: Vec<usize> = (0..n).filter(|&v| side[vertex_node(v)]).collect();
    let value = match forced {
        // The forced arc contributes `infinity` to every flow that saturates it;
        // recompute the objective directly instead.
        Some(_) => {
            guess.denom * g.induced_edge_count(&vertices) as Capacity
                - guess.numer * vertices.len() as Capacity
        }
        None => guess.denom * m as Capacity - cut,
    };
    (value, vertices)
}

/// Result of the Dinkelbach iteration: the witness plus the sequence of
/// densities (average-degree convention) it passed through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MadTrace {
    pub witness: DensityWitness,
    pub densities: Vec<Rational>,
}

pub fn mad_exact(g: &Graph) -> Result<DensityWitness, DensityError> {
    mad_exact_trace(g).map(|t| t.witness)
}

/// Exact maximum average degree via parametric min cuts.
pub fn mad_exact_trace(g: &Graph) -> Result<MadTrace, DensityError> {
    let n = g.n();
    if n == 0 {
        return Err(DensityError::EmptyGraph);
    }
    if g.edge_count() == 0 {
        return Ok(MadTrace {
            witness: DensityWitness::new(g, vec![0]),
            densities: vec![Rational::zero()],
        });
    }

    let mut guess = Guess::new(g.edge_count(), n);
    let mut densities = vec![average_degree(g)?];
    loop {
        let (value, best) = parametric_cut(g, guess, None);
        if value <= 0 {
            break;
        }
        let next = Guess::new(g.induced_edge_count(&best), best.len());
        densities.push(Rational::new(
            BigInt::from(2 * next.numer),
            BigInt::from(next.denom),
        ));
        guess = next;
    }

    // At the optimum, the smallest maximizer containing each vertex; the
    // minimum-cardinality optimal sets are among them.
    let mut witness: Option<Vec<usize>> = None;
    for v in 0..n {
        if g.degree(v) == 0 {
            continue;
        }
        let (value, set) = parametric_cut(g, guess, Some(v));
        if value != 0 {
            continue;
        }
        if witness
            .as_ref()
            .is_none_or(|w| witness_order(&set, w) == Ordering::Less)
        {
            witness = Some(set);
        }
    }
    let witness = DensityWitness::new(g, witness.expect("some vertex lies in an optimal set"));
    debug_assert_eq!(
        witness.density,
        int(2) * Rational::new(
            BigInt::from(guess.numer.to_i64().unwrap()),
            BigInt::from(guess.denom.to_i64().unwrap())
        )
    );
    Ok(MadTrace { witness, densities })
}
