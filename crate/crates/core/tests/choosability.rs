use std::collections::{BTreeMap, BTreeSet};

use madcert::choosability::{
    chromatic_index, for_each_canonical, is_l_colorable, is_proper, list_chromatic_index,
    ListAssignment, Limits, SearchBudget,
};
use madcert::graph::{generate, Generator, Graph};
use num_bigint::BigUint;
use num_traits::One;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = [
        Generator::Path(2),
        Generator::Path(3),
        Generator::Path(5),
        Generator::Cycle(3),
        Generator::Cycle(4),
        Generator::Cycle(5),
        Generator::Star(3),
        Generator::Star(4),
        Generator::Complete(4),
        Generator::CompleteBipartite(2, 3),
    ]
    .into_iter()
    .map(|g| (g.to_string(), generate(g).unwrap()))
    .collect();
    out.push(("paw".into(), Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])));
    out.push(("bull".into(), Graph::from_edges(5, [(0, 1), (1, 2), (0, 2), (1, 3), (2, 4)])));
    out
}

#[test]
fn vizing_bounds() {
    for (name, g) in small_graphs() {
        let chi = chromatic_index(&g).unwrap();
        let delta = g.max_degree();
        assert!(chi == delta || chi == delta + 1, "{name}: {chi}");
    }
    assert_eq!(chromatic_index(&generate(Generator::Petersen).unwrap()).unwrap(), 4);
    assert_eq!(chromatic_index(&generate(Generator::Cycle(7)).unwrap()).unwrap(), 3);
    assert_eq!(chromatic_index(&generate(Generator::Complete(5)).unwrap()).unwrap(), 5);
}

#[test]
fn random_list_colorings_respect_lists() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (name, g) in small_graphs() {
        for _ in 0..20 {
            let k = g.max_degree() + 1;
            let lists = ListAssignment {
                lists: g
                    .edges()
                    .iter()
                    .map(|&e| (e, sample(&mut rng, 2 * k, k).into_iter().map(|c| c as u32).collect()))
                    .collect(),
            };
            if let Some(col) = is_l_colorable(&g, &lists).unwrap() {
                assert!(is_proper(&g, &col).unwrap(), "{name}");
                for (e, c) in &col.colors {
                    assert!(lists.lists[e].contains(c), "{name}");
                }
            }
        }
    }
}

#[test]
fn list_index_dominates_chromatic_index() {
    for (name, g) in small_graphs() {
        if g.edge_count() > 5 {
            continue;
        }
        let r = list_chromatic_index(&g, SearchBudget::default(), Limits::default()).unwrap();
        assert!(r.exact, "{name}");
        assert!(r.value >= r.chromatic_index, "{name}");
        if let Some(bad) = &r.witness_below {
            assert!(is_l_colorable(&g, bad).unwrap().is_none(), "{name}");
        }
    }
}

#[test]
fn bipartite_graphs_are_class_one_choosable() {
    let graphs = [
        Generator::Path(3),
        Generator::Path(4),
        Generator::Path(5),
        Generator::Cycle(4),
        Generator::Star(3),
        Generator::Star(4),
        Generator::Cycle(6),
    ];
    for gen in graphs {
        let g = generate(gen).unwrap();
        assert!(g.is_bipartite());
        let r = list_chromatic_index(&g, SearchBudget::default(), Limits::default()).unwrap();
        assert!(r.exact, "{gen}");
        assert_eq!(r.value, g.max_degree(), "{gen}");
        assert_eq!(r.value, r.chromatic_index, "{gen}");
    }
}

fn canonical_classes(edges: usize, k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_canonical(edges, k, |s| {
        out.push(s.to_vec());
        true
    });
    out
}

/// Every concrete assignment of `k`-subsets of `0..n` to `edges` edges.
fn concrete_assignments(n: usize, k: usize, edges: usize) -> Vec<Vec<BTreeSet<usize>>> {
    fn subsets(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }
    let pool = subsets(n, k);
    let mut out: Vec<Vec<BTreeSet<usize>>> = vec![Vec::new()];
    for _ in 0..edges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pool.iter().map(move |s| {
                    let mut p = prefix.clone();
                    p.push(s.clone());
                    p
                })
            })
            .collect();
    }
    out
}

/// The color-renaming invariant of an assignment: the sorted multiset of
/// edge sets, one per color in use.
fn invariant(lists: &[BTreeSet<usize>]) -> Vec<u32> {
    let colors: BTreeSet<usize> = lists.iter().flatten().copied().collect();
    let mut sig: Vec<u32> = colors
        .into_iter()
        .map(|c| {
            lists
                .iter()
                .enumerate()
                .filter(|(_, l)| l.contains(&c))
                .fold(0, |m, (e, _)| m | 1 << e)
        })
        .collect();
    sig.sort();
    sig
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

#[test]
fn canonical_classes_are_the_renaming_orbits() {
    for (edges, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)] {
        let n = edges * k;
        let canonical = canonical_classes(edges, k);
        let canonical_set: BTreeSet<Vec<u32>> = canonical.iter().cloned().collect();
        assert_eq!(canonical_set.len(), canonical.len(), "duplicates for {edges}/{k}");

        let mut orbit_sizes: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
        for a in concrete_assignments(n, k, edges) {
            *orbit_sizes.entry(invariant(&a)).or_default() += 1;
        }
        let seen: BTreeSet<Vec<u32>> = orbit_sizes.keys().cloned().collect();
        assert_eq!(seen, canonical_set, "{edges}/{k}");

        // orbit-size formula: n!/((n-c)! Π mult!) summed over classes
        let mut total = BigUint::from(0u32);
        for sig in &canonical {
            let c = sig.len();
            let mut mult: BTreeMap<u32, usize> = BTreeMap::new();
            for s in sig {
                *mult.entry(*s).or_default() += 1;
            }
            let denom = mult.values().fold(factorial(n - c), |acc, &m| acc * factorial(m));
            let size = factorial(n) / denom;
            assert_eq!(size, BigUint::from(orbit_sizes[sig]), "{sig:?}");
            total += size;
        }
        let choose = factorial(n) / (factorial(k) * factorial(n - k));
        assert_eq!(total, choose.pow(edges as u32));
    }
}

#[test]
fn canonical_counts_for_larger_cases() {
    assert_eq!(canonical_classes(6, 2).len(), 29388);
    let mut count = 0u64;
    for_each_canonical(5, 3, |_| {
        count += 1;
        true
    });
    assert_eq!(count, 35775);
}
