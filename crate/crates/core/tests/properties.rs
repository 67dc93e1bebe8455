mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use permenergy::bounds::{check_lower, full_report, Evaluation, ReportConfig};
use permenergy::enumerate::{all_labeled_graphs, tree_from_prufer};
use permenergy::orientation::{find_odd_orientation, skew_char_poly};
use permenergy::*;

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = permenergy::enumerate::vertex_pairs(n);
            let edges: Vec<_> = pairs.into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn tree() -> impl Strategy<Value = Graph> {
    (2usize..=10).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n - 2).prop_map(move |seq| tree_from_prufer(n, &seq).unwrap())
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<_> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edges(g.n(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn low_coefficients(g in graph()) {
        let p = perm_poly_ryser(&g).unwrap();
        let m = g.metrics();
        prop_assert_eq!(p.coeff(0), &BigInt::from(1));
        if g.n() >= 1 { prop_assert_eq!(p.coeff(1), &BigInt::from(0)); }
        if g.n() >= 2 { prop_assert_eq!(p.coeff(2), &BigInt::from(m.m)); }
        if g.n() >= 3 { prop_assert_eq!(p.coeff(3), &-BigInt::from(2 * m.t)); }
    }

    #[test]
    fn root_power_sums(g in graph()) {
        let roots = perm_roots(&perm_poly_ryser(&g).unwrap()).unwrap();
        let m = g.edge_count() as f64;
        prop_assert!(roots.sum().norm() <= 1e-8 * g.n() as f64);
        prop_assert!((roots.sum_of_squares() + 2.0 * m).norm() <= 1e-6 * m.max(1.0));
        prop_assert!(roots.is_conjugate_closed(1e-9));
    }

    #[test]
    fn every_verdict_passes(g in graph()) {
        let r = full_report(&g, &ReportConfig::default()).unwrap();
        prop_assert!(r.all_pass(), "{} failed {:?}", r.graph_id, r.failures());
    }

    #[test]
    fn invariant_under_relabeling(g in graph(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(perm_poly_ryser(&g).unwrap(), perm_poly_ryser(&relabel(&g, &perm)).unwrap());
    }

    #[test]
    fn disjoint_union_multiplies(a in graph(), b in graph()) {
        let u = a.disjoint_union(&b).unwrap();
        let pa = perm_poly_ryser(&a).unwrap();
        let pb = perm_poly_ryser(&b).unwrap();
        prop_assert_eq!(perm_poly_ryser(&u).unwrap(), pa.mul(&pb));
    }

    #[test]
    fn isolated_vertices_do_not_change_energy(g in graph(), k in 1usize..4) {
        let padded = g.disjoint_union(&Graph::empty(k).unwrap()).unwrap();
        prop_assert_eq!(permanental_energy(&g).unwrap(), permanental_energy(&padded).unwrap());
    }

    #[test]
    fn trees_have_skew_determinant_model(t in tree()) {
        let o = find_odd_orientation(&t).unwrap().unwrap();
        prop_assert_eq!(skew_char_poly(&o.skew_matrix()), perm_poly_ryser(&t).unwrap());
        let e = permanental_energy(&t).unwrap();
        prop_assert!((e - adjacency_energy(&t).unwrap()).abs() <= 1e-8 * t.n() as f64);
    }
}

#[test]
fn lower_bound_equality_census_up_to_six_vertices() {
    let cfg = ReportConfig::default();
    for n in 1..=6 {
        let mut tight = 0;
        for g in all_labeled_graphs(n).unwrap() {
            let c = check_lower(&Evaluation::new(&g, &cfg).unwrap());
            assert_eq!(c.tight, c.star, "{}", to_graph6(&g));
            tight += c.tight as usize;
        }
        assert!(tight > 0);
    }
}
