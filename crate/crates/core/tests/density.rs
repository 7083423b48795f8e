use madcert::density::{average_degree, mad_bruteforce, mad_exact, mad_exact_trace};
use madcert::graph::{generate, Generator, Graph};
use madcert::rational::int;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[test]
fn random_corpus_matches_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6164);
    let densities = [0.1, 0.25, 0.4, 0.6, 0.85];
    for i in 0..250 {
        let n = 1 + i % 10;
        let g = random_graph(&mut rng, n, densities[i % densities.len()]);
        let exact = mad_exact(&g).unwrap();
        let brute = mad_bruteforce(&g).unwrap();
        assert_eq!(exact, brute, "graph {:?}", g.edges());
        assert_eq!(exact.recompute(&g), exact.density);
    }
}

#[test]
fn dinkelbach_iteration_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..100 {
        let n = 2 + i % 12;
        let g = random_graph(&mut rng, n, 0.3);
        let trace = mad_exact_trace(&g).unwrap();
        assert!(trace.densities.windows(2).all(|w| w[0] < w[1]));
        assert!(trace.densities.len() <= n * n);
        assert_eq!(trace.densities.last().unwrap(), &trace.witness.density);
    }
}

#[test]
fn vertex_transitive_graphs_are_balanced() {
    let gens = [
        Generator::Cycle(3),
        Generator::Cycle(7),
        Generator::Complete(4),
        Generator::Complete(6),
        Generator::Petersen,
    ];
    for gen in gens {
        let g = generate(gen).unwrap();
        assert_eq!(mad_exact(&g).unwrap().density, average_degree(&g).unwrap(), "{gen}");
    }
}

fn planar_corpus() -> Vec<Graph> {
    let mut corpus: Vec<Graph> = [
        Generator::Grid(3, 3),
        Generator::Grid(4, 5),
        Generator::Grid(1, 6),
        Generator::Wheel(5),
        Generator::Wheel(9),
        Generator::Complete(4),
        Generator::Cycle(5),
        Generator::Cycle(6),
        Generator::Star(7),
        Generator::Path(9),
        Generator::CompleteBipartite(2, 5),
    ]
    .into_iter()
    .map(|g| generate(g).unwrap())
    .collect();
    // triangulated grids: every square split by a diagonal
    for (r, c) in [(3, 3), (4, 4), (3, 6)] {
        let grid = generate(Generator::Grid(r, c)).unwrap();
        let diagonals = (0..r - 1).flat_map(|i| (0..c - 1).map(move |j| (i * c + j, (i + 1) * c + j + 1)));
        let pairs = grid.edges().iter().map(|e| (e.0, e.1)).chain(diagonals);
        corpus.push(Graph::from_edges(r * c, pairs));
    }
    corpus
}

#[test]
fn planar_sanity() {
    for g in planar_corpus() {
        let mad = mad_exact(&g).unwrap().density;
        assert!(mad < int(6), "{:?}", g.edges());
        if !g.has_triangle() {
            assert!(mad < int(4), "{:?}", g.edges());
        }
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..(2 * n)).prop_map(move |pairs| {
            Graph::from_edges(n, pairs.into_iter().filter(|(u, v)| u != v))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adding_an_edge_never_lowers_mad(g in arb_graph(9), u in 0usize..9, v in 0usize..9) {
        let (u, v) = (u % g.n(), v % g.n());
        prop_assume!(u != v);
        let before = mad_exact(&g).unwrap().density;
        let after = mad_exact(&g.with_edge(u, v)).unwrap().density;
        prop_assert!(after >= before);
    }

    #[test]
    fn mad_dominates_average_degree(g in arb_graph(12)) {
        let w = mad_exact(&g).unwrap();
        prop_assert!(w.density >= average_degree(&g).unwrap());
        prop_assert_eq!(w.recompute(&g), w.density.clone());
        if g.edge_count() > 0 {
            prop_assert!(w.vertices.iter().all(|&v| g.degree(v) > 0));
        }
    }
}
