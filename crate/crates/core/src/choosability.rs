//! Exact edge coloring, list-edge coloring and list-edge choosability on small
//! graphs, plus necessary conditions for `(Δ+1)`-list-edge-criticality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::discharging::inequality_rows;
use crate::graph::{degree_profile, DegreeProfile, Edge, Graph};

pub type Color = u32;

pub const DEFAULT_COLORING_EDGE_LIMIT: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChoosabilityError {
    #[error("{edges} edges exceeds the limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },
    #[error("list size {k} exceeds the limit of {limit}")]
    ListSizeTooLarge { k: usize, limit: usize },
    #[error("list size must be at least 1")]
    ZeroListSize,
    #[error("edge {0} has no list")]
    MissingEdge(Edge),
    #[error("edge {0} has an empty list")]
    EmptyList(Edge),
    #[error("edge {0} is not in the graph")]
    UnknownEdge(Edge),
    #[error("line {line}: expected \"u v : c1,c2,...\"")]
    BadLine { line: usize },
}

/// Search limits for the exhaustive choosability enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_edges: usize,
    pub max_k: usize,
    pub coloring_edges: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_edges: 6,
            max_k: 4,
            coloring_edges: DEFAULT_COLORING_EDGE_LIMIT,
        }
    }
}

/// Caps the number of list assignments examined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 5_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ListAssignment {
    pub lists: BTreeMap<Edge, BTreeSet<Color>>,
}

impl ListAssignment {
    pub fn uniform(g: &Graph, colors: impl IntoIterator<Item = Color> + Clone) -> Self {
        ListAssignment {
            lists: g
                .edges()
                .iter()
                .map(|&e| (e, colors.clone().into_iter().collect()))
                .collect(),
        }
    }

    /// Parses lines `u v : c1,c2,...`; blank lines and `#` comments skipped.
    pub fn parse(text: &str) -> Result<Self, ChoosabilityError> {
        let mut lists = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let bad = || ChoosabilityError::BadLine { line };
            let (ends, colors) = body.split_once(':').ok_or_else(bad)?;
            let ends: Vec<usize> = ends
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if ends.len() != 2 || ends[0] == ends[1] {
                return Err(bad());
            }
            let colors: BTreeSet<Color> = colors
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            lists
                .entry(Edge::new(ends[0], ends[1]))
                .or_insert_with(BTreeSet::new)
                .extend(colors);
        }
        Ok(ListAssignment { lists })
    }

    /// One line per edge, `u v : c1,c2,...`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Dense per-edge lists in the graph's edge order.
    fn dense(&self, g: &Graph) -> Result<Vec<Vec<Color>>, ChoosabilityError> {
        for e in self.lists.keys() {
            if g.edge_index(*e).is_none() {
                return Err(ChoosabilityError::UnknownEdge(*e));
            }
        }
        g.edges()
            .iter()
            .map(|e| match self.lists.get(e) {
                None => Err(ChoosabilityError::MissingEdge(*e)),
                Some(l) if l.is_empty() => Err(ChoosabilityError::EmptyList(*e)),
                Some(l) => Ok(l.iter().copied().collect()),
            })
            .collect()
    }
}

impl fmt::Display for ListAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, list) in &self.lists {
            let colors: Vec<String> = list.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{} {} : {}", e.0, e.1, colors.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for ListAssignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.lists.iter().map(|(e, l)| (e.0, e.1, l)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct EdgeColoring {
    pub colors: BTreeMap<Edge, Color>,
}

/// True iff no two edges sharing an endpoint get the same color.
pub fn is_proper(g: &Graph, col: &EdgeColoring) -> Result<bool, ChoosabilityError> {
    let colors: Vec<Color> = g
        .edges()
        .iter()
        .map(|e| col.colors.get(e).copied().ok_or(ChoosabilityError::MissingEdge(*e)))
        .collect::<Result<_, _>>()?;
    for v in 0..g.n() {
        let mut seen = BTreeSet::new();
        for &w in g.neighbors(v) {
            let id = g.edge_index(Edge::new(v, w)).expect("adjacent");
            if !seen.insert(colors[id]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Backtracking list-edge-colorer on the line graph of a fixed graph.
struct Colorer {
    conflicts: Vec<Vec<usize>>,
}

impl Colorer {
    fn new(g: &Graph) -> Self {
        let edges = g.edges();
        let conflicts = edges
            .iter()
            .enumerate()
            .map(|(i, e)| {
                (0..edges.len())
                    .filter(|&j| j != i && e.touches(&edges[j]))
                    .collect()
            })
            .collect();
        Colorer { conflicts }
    }

    fn available(&self, e: usize, lists: &[Vec<Color>], assigned: &[Option<Color>]) -> Vec<Color> {
        lists[e]
            .iter()
            .copied()
            .filter(|c| self.conflicts[e].iter().all(|&f| assigned[f] != Some(*c)))
            .collect()
    }

    fn has_available(&self, e: usize, lists: &[Vec<Color>], assigned: &[Option<Color>]) -> bool {
        lists[e]
            .iter()
            .any(|c| self.conflicts[e].iter().all(|&f| assigned[f] != Some(*c)))
    }

    fn solve(&self, lists: &[Vec<Color>], assigned: &mut Vec<Option<Color>>) -> bool {
        // most constrained uncolored edge, lowest index on ties
        let mut pick: Option<(usize, Vec<Color>)> = None;
        for e in 0..lists.len() {
            if assigned[e].is_some() {
                continue;
            }
            let avail = self.available(e, lists, assigned);
            if avail.is_empty() {
                return false;
            }
            if pick.as_ref().is_none_or(|(_, a)| avail.len() < a.len()) {
                pick = Some((e, avail));
            }
        }
        let Some((e, avail)) = pick else {
            return true;
        };
        for c in avail {
            assigned[e] = Some(c);
            let viable = self.conflicts[e]
                .iter()
                .all(|&f| assigned[f].is_some() || self.has_available(f, lists, assigned));
            if viable && self.solve(lists, assigned) {
                return true;
            }
        }
        assigned[e] = None;
        false
    }

    fn color(&self, lists: &[Vec<Color>], preset: &[(usize, Color)]) -> Option<Vec<Color>> {
        let mut assigned = vec![None; lists.len()];
        for &(e, c) in preset {
            assigned[e] = Some(c);
        }
        self.solve(lists, &mut assigned)
            .then(|| assigned.into_iter().map(|c| c.expect("complete")).collect())
    }
}

fn check_edges(g: &Graph, limit: usize) -> Result<(), ChoosabilityError> {
    if g.edge_count() > limit {
        Err(ChoosabilityError::TooManyEdges {
            edges: g.edge_count(),
            limit,
        })
    } else {
        Ok(())
    }
}

fn to_coloring(g: &Graph, colors: Vec<Color>) -> EdgeColoring {
    EdgeColoring {
        colors: g.edges().iter().copied().zip(colors).collect(),
    }
}

pub fn chromatic_index(g: &Graph) -> Result<usize, ChoosabilityError> {
    chromatic_index_with_limit(g, DEFAULT_COLORING_EDGE_LIMIT)
}

/// Exact `χ'` by trying `Δ` colors, then `Δ + 1`.
pub fn chromatic_index_with_limit(g: &Graph, limit: usize) -> Result<usize, ChoosabilityError> {
    check_edges(g, limit)?;
    if g.edge_count() == 0 {
        return Ok(0);
    }
    let delta = g.max_degree();
    let colorer = Colorer::new(g);
    // The edges at a maximum-degree vertex are pairwise adjacent and all lists
    // are equal, so their colors can be fixed.
    let hub = (0..g.n()).find(|&v| g.degree(v) == delta).expect("nonempty");
    let preset: Vec<(usize, Color)> = g
        .neighbors(hub)
        .iter()
        .enumerate()
        .map(|(i, &w)| (g.edge_index(Edge::new(hub, w)).unwrap(), i as Color))
        .collect();
    let mut k = delta;
    loop {
        let lists = vec![(0..k as Color).collect::<Vec<_>>(); g.edge_count()];
        if colorer.color(&lists, &preset).is_some() {
            return Ok(k);
        }
        k += 1;
    }
}

pub fn is_l_colorable(g: &Graph, lists: &ListAssignment) -> Result<Option<EdgeColoring>, ChoosabilityError> {
    is_l_colorable_with_limit(g, lists, DEFAULT_COLORING_EDGE_LIMIT)
}

/// A proper coloring choosing every edge's color from its list, if any.
pub fn is_l_colorable_with_limit(
    g: &Graph,
    lists: &ListAssignment,
    limit: usize,
) -> Result<Option<EdgeColoring>, ChoosabilityError> {
    let dense = lists.dense(g)?;
    check_edges(g, limit)?;
    Ok(Colorer::new(g).color(&dense, &[]).map(|c| to_coloring(g, c)))
}

/// Three-valued outcome of the bad-assignment search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// An assignment of `k`-lists admitting no coloring.
    Found(ListAssignment),
    /// Every assignment was examined; all are colorable.
    NoneComplete { explored: u64 },
    /// The budget ran out first.
    Exhausted { explored: u64 },
}

/// Visits every `k`-list assignment on `edge_count` edges exactly once up to
/// renaming colors. A color is determined by the set of edges whose lists
/// contain it, so a class is a multiset of nonempty edge subsets covering
/// each edge exactly `k` times; those multisets are generated as
/// nondecreasing sequences of subset bitmasks. Stops early when `visit`
/// returns false.
pub fn for_each_canonical(edge_count: usize, k: usize, mut visit: impl FnMut(&[u32]) -> bool) {
    assert!(edge_count < 32);
    fn rec(
        k: usize,
        last: u32,
        counts: &mut [usize],
        chosen: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        let deficient = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c < k)
            .fold(0u32, |m, (e, _)| m | 1 << e);
        if deficient == 0 {
            return visit(chosen);
        }
        if deficient < last {
            return true;
        }
        for s in last.max(1)..=deficient {
            if s & !deficient != 0 {
                continue;
            }
            for (e, c) in counts.iter_mut().enumerate() {
                if s >> e & 1 == 1 {
                    *c += 1;
                }
            }
            chosen.push(s);
            let go_on = rec(k, s, counts, chosen, visit);
            chosen.pop();
            for (e, c) in counts.iter_mut().enumerate() {
                if s >> e & 1 == 1 {
                    *c -= 1;
                }
            }
            if !go_on {
                return false;
            }
        }
        true
    }
    if edge_count == 0 {
        visit(&[]);
        return;
    }
    let mut counts = vec![0; edge_count];
    rec(k, 1, &mut counts, &mut Vec::new(), &mut visit);
}

/// Dense lists for a signature multiset: color `i` is on edge `e` iff bit `e`
/// of `signatures[i]` is set.
fn lists_from_signatures(edge_count: usize, signatures: &[u32]) -> Vec<Vec<Color>> {
    (0..edge_count)
        .map(|e| {
            signatures
                .iter()
                .enumerate()
                .filter(|(_, &s)| s >> e & 1 == 1)
                .map(|(i, _)| i as Color)
                .collect()
        })
        .collect()
}

/// Searches for a `k`-list assignment under which `g` is not colorable.
pub fn find_bad_assignment(
    g: &Graph,
    k: usize,
    budget: SearchBudget,
    limits: Limits,
) -> Result<SearchOutcome, ChoosabilityError> {
    check_edges(g, limits.max_edges)?;
    if k == 0 {
        return Err(ChoosabilityError::ZeroListSize);
    }
    if k > limits.max_k {
        return Err(ChoosabilityError::ListSizeTooLarge {
            k,
            limit: limits.max_k,
        });
    }
    let m = g.edge_count();
    let colorer = Colorer::new(g);
    let mut explored = 0u64;
    let mut outcome = None;
    for_each_canonical(m, k, |signatures| {
        if explored >= budget.max_nodes {
            outcome = Some(SearchOutcome::Exhausted { explored });
            return false;
        }
        explored += 1;
        let lists = lists_from_signatures(m, signatures);
        if colorer.color(&lists, &[]).is_none() {
            let assignment = ListAssignment {
                lists: g
                    .edges()
                    .iter()
                    .zip(lists)
                    .map(|(&e, l)| (e, l.into_iter().collect()))
                    .collect(),
            };
            outcome = Some(SearchOutcome::Found(assignment));
            return false;
        }
        true
    });
    Ok(outcome.unwrap_or(SearchOutcome::NoneComplete { explored }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ListChromaticIndex {
    pub chromatic_index: usize,
    /// `χ'ₗ` when `exact`, otherwise a verified lower bound.
    pub value: usize,
    pub exact: bool,
    /// A bad assignment with lists of size `value − 1`, when one was found.
    pub witness_below: Option<ListAssignment>,
    pub explored: u64,
}

/// Smallest `k ≥ χ'(g)` for which the exhaustive search finds no bad
/// assignment.
pub fn list_chromatic_index(
    g: &Graph,
    budget: SearchBudget,
    limits: Limits,
) -> Result<ListChromaticIndex, ChoosabilityError> {
    check_edges(g, limits.max_edges)?;
    let chi = chromatic_index_with_limit(g, limits.coloring_edges)?;
    let mut result = ListChromaticIndex {
        chromatic_index: chi,
        value: chi,
        exact: false,
        witness_below: None,
        explored: 0,
    };
    if g.edge_count() == 0 {
        result.exact = true;
        return Ok(result);
    }
    let mut k = chi;
    loop {
        result.value = k;
        if k > limits.max_k {
            return Ok(result);
        }
        match find_bad_assignment(g, k, budget, limits)? {
            SearchOutcome::Found(l) => {
                result.witness_below = Some(l);
                k += 1;
            }
            SearchOutcome::NoneComplete { explored } => {
                result.explored += explored;
                result.exact = true;
                return Ok(result);
            }
            SearchOutcome::Exhausted { explored } => {
                result.explored += explored;
                return Ok(result);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CriticalityVerdict {
    CannotBeCritical,
    ConditionsHold,
}

/// Necessary conditions for `(Δ+1)`-list-edge-criticality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalityReport {
    pub delta: usize,
    pub min_degree: usize,
    pub min_degree_ok: bool,
    pub edge_weight_violations: Vec<Edge>,
    /// Rows `a` whose inequality fails (equality counts as failure).
    pub hmp_violations: Vec<usize>,
    pub verdict: CriticalityVerdict,
}

impl CriticalityReport {
    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self
            .edge_weight_violations
            .iter()
            .map(|e| format!("{}-{}", e.0, e.1))
            .collect();
        let rows: Vec<String> = self.hmp_violations.iter().map(|a| a.to_string()).collect();
        format!(
            "delta: {}\nmin_degree: {}\nmin_degree_ok: {}\nedge_weight_violations: [{}]\nhmp_violations: [{}]\nverdict: {}\n",
            self.delta,
            self.min_degree,
            self.min_degree_ok,
            edges.join(", "),
            rows.join(", "),
            match self.verdict {
                CriticalityVerdict::CannotBeCritical => "cannot_be_critical",
                CriticalityVerdict::ConditionsHold => "conditions_hold",
            }
        )
    }
}

/// Rows `a` of the inequality family at the profile's `Δ` that fail strictly.
pub fn profile_violations(profile: &DegreeProfile) -> Vec<usize> {
    inequality_rows(profile.delta())
        .into_iter()
        .filter(|r| !r.holds_strictly(profile))
        .map(|r| r.a)
        .collect()
}

pub fn criticality_filter(g: &Graph) -> CriticalityReport {
    let profile = degree_profile(g);
    let delta = profile.delta();
    let min_degree = g.min_degree();
    let edge_weight_violations: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|e| g.degree(e.0) + g.degree(e.1) < delta + 3)
        .collect();
    let hmp_violations = profile_violations(&profile);
    let min_degree_ok = min_degree >= 3;
    let verdict = if min_degree_ok && edge_weight_violations.is_empty() && hmp_violations.is_empty() {
        CriticalityVerdict::ConditionsHold
    } else {
        CriticalityVerdict::CannotBeCritical
    };
    CriticalityReport {
        delta,
        min_degree,
        min_degree_ok,
        edge_weight_violations,
        hmp_violations,
        verdict,
    }
}
