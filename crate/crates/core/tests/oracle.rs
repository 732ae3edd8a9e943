//! Enumeration checked against a from-scratch recomputation over raw edges.

use mucheeger_core::enumeration::exact_mu_conductance;
use mucheeger_core::generate::{generate, Family};
use mucheeger_core::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const MUS: [f64; 6] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5];

/// Best `(value, members)` over every nonempty proper subset, recomputing cut
/// and volumes directly from the edge triples.
fn naive(n: usize, edges: &[(usize, usize, f64)], mu: f64) -> Option<(f64, Vec<usize>)> {
    let mut deg = vec![0.0; n];
    for &(u, v, w) in edges {
        deg[u] += w;
        deg[v] += w;
    }
    let vol: f64 = deg.iter().sum();
    let (lo, hi) = (mu * vol - 1e-9 * vol, (1.0 - mu) * vol + 1e-9 * vol);
    let mut best: Option<(f64, Vec<usize>)> = None;
    for mask in 1u64..(1 << n) - 1 {
        let members: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        let vs: f64 = members.iter().map(|&v| deg[v]).sum();
        let rest: f64 = (0..n).filter(|v| mask >> v & 1 == 0).map(|v| deg[v]).sum();
        if vs < lo || vs > hi || vs.min(rest) <= 0.0 {
            continue;
        }
        let cut: f64 = edges
            .iter()
            .filter(|&&(u, v, _)| (mask >> u & 1) != (mask >> v & 1))
            .map(|e| e.2)
            .sum();
        let phi = cut / vs.min(rest);
        let wins = match &best {
            None => true,
            Some((bv, bm)) => {
                phi < *bv || (phi == *bv && (members.len(), &members) < (bm.len(), bm))
            }
        };
        if wins {
            best = Some((phi, members));
        }
    }
    best
}

fn assert_matches_naive(n: usize, edges: &[(usize, usize, f64)]) {
    let g = Graph::new(n, edges).unwrap();
    for mu in MUS {
        let got = exact_mu_conductance(&g, mu).unwrap();
        let want = naive(n, edges, mu);
        match (got.best, want) {
            (None, None) => {}
            (Some(c), Some((v, m))) => {
                assert_eq!(c.value, v, "value, n={n} mu={mu} edges={edges:?}");
                assert_eq!(
                    c.witness.to_vec(),
                    m,
                    "witness, n={n} mu={mu} edges={edges:?}"
                );
            }
            (a, b) => panic!("feasibility differs: {a:?} vs {b:?} for {edges:?} at {mu}"),
        }
    }
}

#[test]
fn all_graphs_up_to_five_vertices() {
    let mut checked = 0;
    for n in 2..=5usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 1u32..(1 << pairs.len()) {
            let edges: Vec<(usize, usize, f64)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &(u, v))| (u, v, 1.0))
                .collect();
            let g = Graph::new(n, &edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            assert_matches_naive(n, &edges);
            checked += 1;
        }
    }
    assert!(checked > 700);
}

#[test]
fn weighted_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..150 {
        let n = rng.gen_range(2..=9);
        let p = [0.3, 0.5, 0.8][rng.gen_range(0..3)];
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    let w = if rng.gen_bool(0.5) {
                        1.0
                    } else {
                        rng.gen_range(1..=4) as f64 * 0.5
                    };
                    edges.push((u, v, w));
                }
            }
        }
        if edges.is_empty() {
            continue;
        }
        assert_matches_naive(n, &edges);
    }
}

#[test]
fn named_families() {
    for family in [
        Family::Path(7),
        Family::Cycle(8),
        Family::Complete(6),
        Family::Barbell(3, 3),
        Family::Barbell(4, 2),
        Family::Lollipop(6, 2),
        Family::Lollipop(4, 4),
    ] {
        let g = generate(family, 0).unwrap();
        let edges: Vec<(usize, usize, f64)> = g.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        assert_matches_naive(g.n(), &edges);
    }
}
