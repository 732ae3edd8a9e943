use mucheeger_core::cheeger::mu_lower_bound;
use mucheeger_core::enumeration::{exact_conductance, exact_mu_conductance};
use mucheeger_core::ratios::{
    box_ratio_check, mediant_check, weighted_ratio_check, BoxRatioInput, WeightedRatioInput,
};
use mucheeger_core::solver::{solve_lambda_mu, SolverConfig};
use mucheeger_core::spectral::{
    check_feasible, decompose_pos_neg, deflate, lambda2, rayleigh, set_embedding,
};
use mucheeger_core::sweep::{constrained_sweep_cut, sweep_profile};
use mucheeger_core::{Graph, VertexSet};
use proptest::prelude::*;

/// Connected weighted graph: a random spanning tree plus extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        let parents = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n, 1u8..=4), 0..2 * n);
        let tree_w = proptest::collection::vec(1u8..=4, n - 1);
        (Just(n), parents, tree_w, extra).prop_map(|(n, parents, tree_w, extra)| {
            let mut edges = Vec::new();
            for v in 1..n {
                edges.push((parents[v - 1].index(v), v, f64::from(tree_w[v - 1]) * 0.5));
            }
            for (u, v, w) in extra {
                if u != v {
                    edges.push((u.min(v), u.max(v), f64::from(w) * 0.5));
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn graph_and_set(max_n: usize) -> impl Strategy<Value = (Graph, VertexSet)> {
    connected_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), 1u64..(1 << (n - 1))).prop_map(move |(g, mask)| {
            let set = VertexSet::from_mask(n, mask);
            (g, set)
        })
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conductance_is_symmetric((g, s) in graph_and_set(10)) {
        prop_assert_eq!(g.conductance(&s).unwrap(), g.conductance(&s.complement()).unwrap());
    }

    #[test]
    fn indicator_quadratic_is_cut((g, s) in graph_and_set(10)) {
        let q = g.laplacian_quadratic(&s.indicator()).unwrap();
        prop_assert!(close(q, g.cut_weight(&s), 1e-12));
    }

    #[test]
    fn set_embedding_identities((g, s) in graph_and_set(10)) {
        let psi = set_embedding(&g, &s).unwrap();
        let vol = g.total_volume();
        let (vs, vr) = (g.volume(&s), g.volume(&s.complement()));
        prop_assert!(g.degree_dot(&psi).unwrap().abs() <= 1e-12 * vol.sqrt());
        prop_assert!(close(g.degree_norm_sq(&psi).unwrap(), 1.0, 1e-12));
        let objective = g.laplacian_quadratic(&psi).unwrap();
        prop_assert!(close(objective, g.cut_weight(&s) * vol / (vs * vr), 1e-12));
        prop_assert!(objective <= 2.0 * g.conductance(&s).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn positive_negative_split(x in proptest::collection::vec(-5.0f64..5.0, 1..12)) {
        let (pos, neg) = decompose_pos_neg(&x);
        for i in 0..x.len() {
            prop_assert_eq!(pos[i] - neg[i], x[i]);
            prop_assert!(pos[i] >= 0.0 && neg[i] >= 0.0);
            prop_assert!(pos[i] == 0.0 || neg[i] == 0.0);
        }
    }

    #[test]
    fn rayleigh_dominates_lambda2(
        g in connected_graph(9),
        raw in proptest::collection::vec(-1.0f64..1.0, 9),
    ) {
        let mut x = raw[..g.n()].to_vec();
        deflate(&g, &mut x);
        prop_assume!(g.degree_norm_sq(&x).unwrap() > 1e-6);
        let (l2, _) = lambda2(&g).unwrap();
        prop_assert!(rayleigh(&g, &x).unwrap() >= l2 - 1e-9);
    }

    #[test]
    fn prefix_cuts_match_scratch(
        g in connected_graph(10),
        raw in proptest::collection::vec(-1.0f64..1.0, 10),
    ) {
        let x = &raw[..g.n()];
        let prof = sweep_profile(&g, x, 0.0).unwrap();
        for j in 1..g.n() {
            let set = prof.set(j);
            prop_assert!(close(prof.prefix_cut[j - 1], g.cut_weight(&set), 1e-12));
            prop_assert!(close(prof.volume(j), g.volume(&set), 1e-12));
        }
    }

    #[test]
    fn sweep_never_beats_enumeration(g in connected_graph(9), mu in 0.0f64..0.5) {
        let (_, fiedler) = lambda2(&g).unwrap();
        let exact = exact_mu_conductance(&g, mu).unwrap();
        let sweep = constrained_sweep_cut(&g, &fiedler, mu).unwrap();
        if let (Some(s), Some(e)) = (sweep.value(), exact.value()) {
            prop_assert!(s >= e);
        }
        if sweep.feasible() {
            prop_assert!(exact.feasible());
        }
    }

    #[test]
    fn fiedler_sweep_guarantee(g in connected_graph(10)) {
        let (l2, fiedler) = lambda2(&g).unwrap();
        let phi = constrained_sweep_cut(&g, &fiedler, 0.0).unwrap().value().unwrap();
        prop_assert!(phi <= (2.0 * l2).sqrt() + 1e-9);
        let exact = exact_conductance(&g).unwrap().value().unwrap();
        prop_assert!(2.0 * exact >= l2 - 1e-9);
        prop_assert!(l2 >= exact * exact / 2.0 - 1e-9);
    }

    #[test]
    fn solver_stays_feasible_and_below_seeds(g in connected_graph(8), mu in 0.01f64..0.49) {
        let phi_mu = exact_mu_conductance(&g, mu).unwrap();
        prop_assume!(phi_mu.feasible());
        let r = solve_lambda_mu(&g, mu, SolverConfig::default(), &[]).unwrap();
        prop_assert!(check_feasible(&g, &r.best, mu, 1e-9).unwrap().feasible);
        for s in &r.seed_values {
            prop_assert!(r.value <= *s);
        }
        prop_assert!(r.value <= 2.0 * phi_mu.value().unwrap() + 1e-9);
        let phi0 = exact_conductance(&g).unwrap().value().unwrap();
        let lower = mu_lower_bound(phi0, phi_mu.value().unwrap(), mu).unwrap();
        prop_assert!(lower <= r.value + 1e-7);
    }

    #[test]
    fn lower_bound_dominates_classical(phi0 in 0.0f64..2.0, gap in 0.0f64..2.0, mu in 0.0f64..=0.5) {
        let b = mu_lower_bound(phi0, phi0 + gap, mu).unwrap();
        prop_assert!(b >= phi0 * phi0 / 2.0);
        prop_assert_eq!(mu_lower_bound(phi0, phi0 + gap, 0.0).unwrap(), phi0 * phi0 / 2.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn mediant_random(pairs in proptest::collection::vec((0.0f64..10.0, 0.01f64..10.0), 1..10)) {
        let (a, b): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        prop_assert!(mediant_check(&a, &b).unwrap());
    }

    #[test]
    fn box_ratio_random(
        big_a in 0.0f64..10.0,
        big_b in 0.0f64..10.0,
        lo in 0.0f64..2.0,
        width in 0.0f64..3.0,
        rows in proptest::collection::vec((0.0f64..3.0, 0.0f64..1.0, 0.0f64..=1.0), 0..8),
    ) {
        let hi = lo + width;
        let c: Vec<f64> = rows.iter().map(|r| r.0).collect();
        let x: Vec<f64> = rows.iter().map(|r| lo + r.2 * width).map(|v| v.clamp(lo, hi)).collect();
        // Scale d so that A − hi·Σd ≥ 0.
        let raw: f64 = rows.iter().map(|r| r.1).sum();
        let scale = if raw > 0.0 && hi > 0.0 { big_a / (hi * raw) } else { 0.0 };
        let d: Vec<f64> = rows.iter().map(|r| r.1 * scale * 0.999).collect();
        let input = BoxRatioInput { big_a, big_b, hi, lo, c: &c, d: Some(&d), x: &x };
        prop_assert!(box_ratio_check(&input).unwrap());
    }

    #[test]
    fn weighted_ratio_random(
        y in 0.01f64..10.0,
        lo in 0.0f64..3.0,
        width in 0.0f64..3.0,
        t in 0.0f64..=1.0,
        consts in (0.0f64..5.0, 0.0f64..5.0, 0.01f64..5.0, 0.01f64..5.0),
    ) {
        let hi = lo + width;
        let x = y * (lo + t * width).clamp(lo, hi);
        let (big_a, big_b, big_c, big_d) = consts;
        let input = WeightedRatioInput { x, y, hi, lo, big_a, big_b, big_c, big_d };
        prop_assert!(weighted_ratio_check(&input).unwrap());
    }
}
