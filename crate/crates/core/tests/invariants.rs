//! Property tests for identities that hold for every input.

use mgx_core::blowup::{build_blowup, lemma_upper_bound, optimize_blowup, Composition, Mode, DEFAULT_BUDGET};
use mgx_core::bounds::integer_am_gm_log;
use mgx_core::density::{clone_reduce, pi_density, sigma_density};
use mgx_core::oracle::{brute_force_extremal, OracleOptions, OracleStatus};
use mgx_core::{choose2, Multigraph, Objective, Pattern};
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn multigraph(max_n: usize, max_m: u32) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..=max_m, n * (n - 1) / 2).prop_map(move |ws| {
            let mut it = ws.into_iter();
            Multigraph::from_fn(n, |_, _| it.next().unwrap())
        })
    })
}

fn pattern(max_k: usize, max_m: u32) -> impl Strategy<Value = Pattern> {
    (1..=max_k).prop_flat_map(move |k| {
        (proptest::collection::vec(0..=max_m, k), proptest::collection::vec(0..=max_m, k * (k - 1) / 2)).prop_map(
            move |(loops, pairs)| {
                let mut p = Pattern::zero(k);
                let mut it = pairs.into_iter();
                for u in 0..k {
                    p.set_loop(u, loops[u]);
                    for v in u + 1..k {
                        p.set_pair(u, v, it.next().unwrap());
                    }
                }
                p
            },
        )
    })
}

fn uniform_loop_pattern(max_k: usize, max_m: u32) -> impl Strategy<Value = Pattern> {
    (pattern(max_k, max_m), 0..=max_m).prop_map(|(mut p, c)| {
        for u in 0..p.k() {
            p.set_loop(u, c);
        }
        p
    })
}

fn subset(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|&v| mask >> v & 1 == 1).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn adding_a_vertex_adds_its_degree(g in multigraph(9, 6), mask in any::<u64>(), v in 0usize..9) {
        let v = v % g.n();
        let x: Vec<usize> = subset(g.n(), mask).into_iter().filter(|&u| u != v).collect();
        let mut xv = x.clone();
        xv.push(v);
        xv.sort_unstable();
        prop_assert_eq!(g.edge_sum(&xv).unwrap() - g.edge_sum(&x).unwrap(), g.degree_in(v, &x));
    }

    #[test]
    fn product_respects_integer_am_gm(g in multigraph(8, 5), mask in any::<u64>()) {
        let x = subset(g.n(), mask);
        prop_assume!(x.len() >= 2);
        let pairs = choose2(x.len() as u64);
        let prod = g.edge_product(&x).unwrap().log_value();
        let cap = integer_am_gm_log(pairs, g.edge_sum(&x).unwrap());
        prop_assert!(prod <= cap + 1e-9, "{} > {}", prod, cap);
        let top = x.iter().flat_map(|&u| x.iter().map(move |&w| (u, w))).filter(|(u, w)| u < w)
            .map(|(u, w)| g.get(u, w)).max().unwrap();
        prop_assert!(prod <= pairs as f64 * (top as f64).ln() + 1e-9);
    }

    #[test]
    fn geometric_averaging(g in multigraph(8, 5), mask in 1u64.., raw in proptest::collection::vec(1u32..100, 8)) {
        let u = subset(g.n(), mask);
        prop_assume!(!u.is_empty());
        let total: u32 = u.iter().map(|&v| raw[v]).sum();
        let logs: Vec<f64> = u.iter().map(|&v| g.log_product_degree(v)).collect();
        let min = logs.iter().cloned().fold(f64::INFINITY, f64::min);
        if min.is_finite() {
            let avg: f64 = u.iter().zip(&logs).map(|(&v, l)| raw[v] as f64 / total as f64 * l).sum();
            prop_assert!(min <= avg + 1e-9);
        }
    }

    #[test]
    fn cloning_preserves_sigma(p in uniform_loop_pattern(6, 5)) {
        let r = clone_reduce(&p, Objective::Sum).unwrap();
        prop_assert_eq!(sigma_density(&r.pattern).unwrap().value, sigma_density(&p).unwrap().value);
    }

    #[test]
    fn pi_below_log_sigma(p in pattern(5, 5)) {
        let sigma = sigma_density(&p).unwrap().value.to_f64().unwrap();
        let pi = pi_density(&p, 1e-10).unwrap().value;
        if sigma > 0.0 {
            prop_assert!(pi <= sigma.ln() + 1e-9, "π {} > ln σ {}", pi, sigma.ln());
        } else {
            prop_assert_eq!(pi, f64::NEG_INFINITY);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn blowup_ratio_non_increasing(p in pattern(4, 4)) {
        let mut prev: Option<(u64, u64)> = None;
        for n in 2..=14u32 {
            let v = optimize_blowup(&p, n, Objective::Sum, Mode::Exact, DEFAULT_BUDGET).unwrap().value.as_sum().unwrap();
            let e = choose2(n as u64);
            if let Some((pv, pe)) = prev {
                prop_assert!(v as u128 * pe as u128 <= pv as u128 * e as u128, "ratio rises at n={}", n);
            }
            prev = Some((v, e));
        }
    }

    #[test]
    fn blowups_obey_the_density_bound(p in uniform_loop_pattern(4, 4), s in 2u64..16) {
        let sigma = sigma_density(&p).unwrap().value;
        let v = optimize_blowup(&p, s as u32, Objective::Sum, Mode::Exact, DEFAULT_BUDGET).unwrap().value.as_sum().unwrap();
        prop_assert!(v as i128 <= lemma_upper_bound(&sigma, p.loop_mult(0), s).unwrap());
    }

    #[test]
    fn local_never_beats_exact(p in pattern(4, 4), n in 2u32..12) {
        for obj in [Objective::Sum, Objective::Product] {
            let ex = optimize_blowup(&p, n, obj, Mode::Exact, DEFAULT_BUDGET).unwrap();
            let lo = optimize_blowup(&p, n, obj, Mode::Local, 0).unwrap();
            prop_assert!(lo.value.cmp_value(&ex.value).is_le());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    // A blow-up of P on n vertices is an (s, Σ_P(s))-graph, so the oracle can
    // only do better.
    #[test]
    fn oracle_dominates_blowups(p in pattern(3, 2), s in 3usize..=4, extra in 0usize..=1) {
        let n = s + extra;
        let q = optimize_blowup(&p, s as u32, Objective::Sum, Mode::Exact, DEFAULT_BUDGET).unwrap().value.as_sum().unwrap();
        let bl = optimize_blowup(&p, n as u32, Objective::Sum, Mode::Exact, DEFAULT_BUDGET).unwrap();
        let g = build_blowup(&p, &Composition::new(bl.witness.sizes.clone())).unwrap();
        prop_assert!(g.is_sq_graph(s, q, false).unwrap().holds);
        let or = brute_force_extremal(n, s, q, Objective::Sum, OracleOptions::default()).unwrap();
        prop_assert_eq!(or.status, OracleStatus::Exact);
        prop_assert!(or.value.as_sum().unwrap() >= bl.value.as_sum().unwrap());
    }
}
