mod common;

use proptest::prelude::*;

use powcol::coloring::{
    dsatur_chromatic_exact, greedy_power_coloring, two_phase_power_coloring,
    verify_proper_power_coloring,
};
use powcol::graph::{gnp_sample, gnp_sample_with, graph_power, io, DEFAULT_EDGE_CAP};
use powcol::metrics::{clique_lower_bound, max_clique_exact, power_max_degree};
use powcol::theory::{janson_k0, janson_mu, lemma2_min_exact, lemma2_min_lagrange, lemma2_objective};
use powcol::{Coloring, DegreeProfile, Graph, RandomSource, SamplingMode, TheoryParams, VertexSet};

fn small_graph() -> impl Strategy<Value = Graph> {
    (2usize..40, 0.5f64..4.0, any::<u64>()).prop_map(|(n, d, seed)| {
        gnp_sample(n, (d / n as f64).min(1.0), &mut RandomSource::new(seed))
    })
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut src = RandomSource::new(seed);
    for i in (1..n).rev() {
        let j = (src.uniform() * (i + 1) as f64) as usize;
        order.swap(i, j.min(i));
    }
    order
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn explicit_power_matches_set_expansion(g in small_graph(), r in 1usize..4) {
        let p = graph_power(&g, r, DEFAULT_EDGE_CAP).unwrap();
        let sets = common::power_sets(&g, r);
        for v in 0..g.n() {
            let nb: Vec<usize> = p.neighbors(v).iter().map(|&w| w as usize).collect();
            prop_assert_eq!(nb, sets[v].iter().copied().collect::<Vec<_>>());
        }
        prop_assert_eq!(power_max_degree(&g, r).delta_r, p.max_degree());
    }

    #[test]
    fn greedy_is_proper_within_max_degree(g in small_graph(), r in 1usize..4, seed in any::<u64>()) {
        let c = greedy_power_coloring(&g, r, &shuffled(g.n(), seed));
        prop_assert!(verify_proper_power_coloring(&g, r, &c).is_ok());
        prop_assert!(c.palette_size() <= power_max_degree(&g, r).delta_r + 1);
    }

    #[test]
    fn two_phase_success_is_proper(g in small_graph(), r in 2usize..4) {
        if let Ok(c) = two_phase_power_coloring(&g, r) {
            prop_assert!(verify_proper_power_coloring(&g, r, &c).is_ok());
            prop_assert!(c.palette_size() <= power_max_degree(&g, r - 1).delta_r + 1);
        }
    }

    #[test]
    fn sandwich_chain(g in small_graph(), r in 1usize..3) {
        let p = graph_power(&g, r, DEFAULT_EDGE_CAP).unwrap();
        let lower = clique_lower_bound(&g, r);
        let omega = max_clique_exact(&p, 1_000_000).unwrap();
        let chi = dsatur_chromatic_exact(&p, 1_000_000).unwrap().chi;
        let greedy = greedy_power_coloring(&g, r, &(0..g.n()).collect::<Vec<_>>()).palette_size();
        prop_assert!(lower <= omega && omega <= chi && chi <= greedy);
        prop_assert!(greedy <= p.max_degree() + 1);
    }

    #[test]
    fn lemma2_min_below_random_profiles(total in 1u64..80, r in 1usize..4, cuts in prop::collection::vec(any::<u64>(), 3)) {
        // A random feasible profile: positive prefix, then zeros.
        let mut ell = Vec::new();
        let mut left = total;
        for i in 0..r {
            let l = if i + 1 == r { left } else { 1 + cuts[i] % left.max(1) };
            let l = l.min(left);
            ell.push(l);
            left -= l;
        }
        let profile = DegreeProfile::new(ell);
        prop_assume!(profile.is_feasible());
        let m = lemma2_min_exact(total, r).unwrap();
        prop_assert!(m.value <= lemma2_objective(&profile) + 1e-9);
    }

    #[test]
    fn lemma2_more_layers_never_hurt(total in 1u64..120, r in 1usize..4) {
        let a = lemma2_min_exact(total, r).unwrap().value;
        let b = lemma2_min_exact(total, r + 1).unwrap().value;
        prop_assert!(b <= a + 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn lagrange_below_exact(total in 2u64..200, r in 1usize..4) {
        if let Ok(s) = lemma2_min_lagrange(total as f64, r) {
            let exact = lemma2_min_exact(total, r).unwrap().value;
            prop_assert!(s.value <= exact + 1e-9 * exact.abs().max(1.0));
        }
    }

    /// At fixed k, mu falls like 1/n; growth in n holds along k = k0(n).
    #[test]
    fn janson_mu_monotone(k in 2u64..30, n in 1_000u64..1_000_000, d in 1.1f64..5.0, r in 1usize..3) {
        let eps = 0.25 / r as f64;
        let at = |n: u64, d: f64| TheoryParams::new(n, d, r, eps).unwrap();
        let base = janson_mu(&at(n, d), k);
        prop_assert!(janson_mu(&at(n, d), k + 1) >= base);
        prop_assert!(janson_mu(&at(n, d * 1.5), k) >= base);
        let along_k0 = |n: u64| {
            let p = at(n, d);
            janson_mu(&p, janson_k0(&p).unwrap().ceil() as u64)
        };
        prop_assert!(along_k0(2 * n) >= along_k0(n));
    }

    #[test]
    fn edge_list_and_dimacs_roundtrip(g in small_graph()) {
        let mut buf = Vec::new();
        io::write_edge_list(&g, &mut buf).unwrap();
        prop_assert_eq!(&io::read_edge_list(&buf[..]).unwrap(), &g);
        let mut buf = Vec::new();
        io::write_dimacs(&g, &mut buf).unwrap();
        prop_assert_eq!(&io::read_dimacs(&buf[..]).unwrap(), &g);
    }

    #[test]
    fn coloring_text_roundtrip(colors in prop::collection::vec(0usize..50, 0..60), r in 1usize..4) {
        let c = Coloring::new(colors, r);
        let mut buf = Vec::new();
        c.write_text(&mut buf).unwrap();
        prop_assert_eq!(Coloring::read_text(&buf[..]).unwrap(), c);
    }

    #[test]
    fn vertex_set_is_sorted_and_unique(vs in prop::collection::vec(0usize..100, 0..80)) {
        let s = VertexSet::from_unsorted(vs.clone());
        prop_assert!(s.as_slice().windows(2).all(|w| w[0] < w[1]));
        for v in &vs {
            prop_assert!(s.contains(*v));
            prop_assert_eq!(s.as_slice()[s.rank(*v).unwrap()], *v);
        }
        prop_assert_eq!(s.len(), vs.iter().collect::<std::collections::BTreeSet<_>>().len());
    }

    #[test]
    fn sampling_is_deterministic(n in 1usize..300, d in 0.1f64..6.0, seed in any::<u64>()) {
        let p = (d / n as f64).min(1.0);
        for mode in [SamplingMode::Dense, SamplingMode::Skip] {
            let a = gnp_sample_with(n, p, &mut RandomSource::new(seed), mode);
            let b = gnp_sample_with(n, p, &mut RandomSource::new(seed), mode);
            prop_assert_eq!(&a, &b);
            prop_assert!(a.validate().is_ok());
        }
    }
}
