use cpog_core::arith::{factorize, gcd};
use cpog_core::closed_form::{build_block_l, spectrum_block};
use cpog_core::graph::{adjacent, build_graph};
use cpog_core::group::{canonicalize_abelian, decompose_order, GroupSpec, OrderDecomposition};
use cpog_core::linalg::modular::{nullity, NullityMethod};
use cpog_core::linalg::{bareiss_eliminate, certify_spectrum, char_poly, ExactMatrix};
use cpog_core::Spectrum;
use num_bigint::BigInt;
use proptest::prelude::*;

const CAP: usize = 400;

fn abelian_factors() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=12, 1..=3).prop_filter("small enough", |f| f.iter().product::<u64>() <= CAP as u64)
}

fn small_group() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        abelian_factors().prop_map(GroupSpec::Abelian),
        (3u64..=60).prop_map(GroupSpec::Dihedral),
    ]
}

fn square_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_dim).prop_flat_map(move |n| {
        prop::collection::vec(-bound..=bound, n * n).prop_map(move |e| ExactMatrix::from_vec(n, e).unwrap())
    })
}

fn symmetric_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = ExactMatrix> {
    square_matrix(max_dim, bound)
        .prop_map(|m| ExactMatrix::from_fn(m.dim(), |i, j| if i <= j { m.get(i, j) } else { m.get(j, i) }).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_profile_sums_to_group_order(g in small_group()) {
        let profile = g.order_profile(CAP).unwrap();
        prop_assert_eq!(profile.total(), g.order() as u64);
        prop_assert_eq!(profile.count(1), 1);
        for o in profile.orders() {
            prop_assert_eq!(g.order() as u64 % o, 0, "Lagrange fails for order {}", o);
        }
    }

    #[test]
    fn elementary_abelian_profile(p in prop::sample::select(vec![2u64, 3, 5, 7]), t in 1usize..=3) {
        let g = GroupSpec::Abelian(vec![p; t]);
        let profile = g.order_profile(CAP).unwrap();
        prop_assert_eq!(profile.count(p), p.pow(t as u32) - 1);
    }

    #[test]
    fn canonical_form_ignores_factor_order(mut f in abelian_factors(), seed in any::<u64>()) {
        let canon = canonicalize_abelian(&f);
        let k = f.len();
        f.rotate_left(seed as usize % k);
        f.reverse();
        prop_assert_eq!(&canonicalize_abelian(&f), &canon);
        prop_assert_eq!(canon.order(), f.iter().product::<u64>());
        let back = canonicalize_abelian(match &canon.to_spec() {
            GroupSpec::Abelian(v) => v,
            GroupSpec::Dihedral(_) => unreachable!(),
        });
        prop_assert_eq!(back, canon);
    }

    #[test]
    fn order_decomposition_reconstructs(o in 1u64..100_000) {
        let d = OrderDecomposition::of(o);
        prop_assert_eq!(d.reconstruct(), o);
        prop_assert_eq!(d.k() + d.l(), factorize(o).len());
    }

    #[test]
    fn realized_orders_decompose(f in abelian_factors()) {
        let canon = canonicalize_abelian(&f);
        let g = GroupSpec::Abelian(f);
        for o in g.order_profile(CAP).unwrap().orders() {
            prop_assert_eq!(decompose_order(o, &canon).unwrap().reconstruct(), o);
        }
    }

    #[test]
    fn adjacency_rule(a in 1u64..500, b in 1u64..500) {
        let d = gcd(a, b);
        let expected = d == 1 || factorize(d) == vec![(d, 1)];
        prop_assert_eq!(adjacent(a, b), expected);
        prop_assert_eq!(adjacent(a, b), adjacent(b, a));
    }

    #[test]
    fn graph_structure(g in small_group()) {
        let graph = build_graph(&g, CAP).unwrap();
        let n = graph.len();
        prop_assert_eq!(graph.vertices[0].order, 1);
        for i in 0..n {
            prop_assert!(!graph.adjacency.get(i, i));
            for j in 0..n {
                prop_assert_eq!(graph.adjacency.get(i, j), graph.adjacency.get(j, i));
            }
            let o = graph.vertices[i].order;
            if o == 1 || factorize(o).len() == 1 && factorize(o)[0].1 == 1 {
                prop_assert_eq!(graph.degrees[i], n - 1);
            }
        }
        prop_assert_eq!(graph.degrees.iter().sum::<usize>(), 2 * graph.edge_count());
    }

    #[test]
    fn laplacian_rows_sum_to_zero(g in small_group()) {
        let l = build_graph(&g, CAP).unwrap().laplacian();
        prop_assert!(l.is_symmetric());
        for i in 0..l.dim() {
            prop_assert_eq!(l.row(i).iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn nullity_routes_agree(m in square_matrix(9, 3)) {
        let auto = nullity(&m, NullityMethod::Auto);
        let exact = nullity(&m, NullityMethod::Bareiss);
        prop_assert_eq!(auto.rank, exact.rank);
    }

    #[test]
    fn low_rank_nullity(n in 2usize..9, u in prop::collection::vec(-4i64..=4, 9), v in prop::collection::vec(-4i64..=4, 9)) {
        // rank <= 1 outer product
        let m = ExactMatrix::from_fn(n, |i, j| u[i] * v[j]).unwrap();
        let expected_rank = usize::from(u[..n].iter().any(|&x| x != 0) && v[..n].iter().any(|&x| x != 0));
        prop_assert_eq!(nullity(&m, NullityMethod::Auto).rank, expected_rank);
        prop_assert_eq!(bareiss_eliminate(&m).rank, expected_rank);
    }

    #[test]
    fn char_poly_extreme_coefficients(m in square_matrix(7, 6)) {
        let n = m.dim();
        let cp = char_poly(&m).unwrap();
        prop_assert_eq!(cp.degree(), n);
        prop_assert_eq!(cp.coeff(n - 1), &BigInt::from(-m.trace()));
        let det = bareiss_eliminate(&m).determinant;
        let c0 = if n % 2 == 0 { det } else { -det };
        prop_assert_eq!(cp.coeff(0), &c0);
    }

    #[test]
    fn block_family_certifies(p in 1usize..=12, q in 1usize..=12) {
        let l = build_block_l(p, q).unwrap();
        let claimed = spectrum_block(p, q).unwrap();
        prop_assert!(certify_spectrum(&l, &claimed).verdict);
    }

    #[test]
    fn perturbed_claims_are_rejected(p in 1usize..=10, q in 2usize..=10, shift in 1u64..=3) {
        let l = build_block_l(p, q).unwrap();
        let true_pairs = spectrum_block(p, q).unwrap();
        let wrong = Spectrum::new(true_pairs.pairs().iter().map(|&(v, m)| if v == p as u64 { (v + shift, m) } else { (v, m) }));
        prop_assert!(!certify_spectrum(&l, &wrong).verdict);
    }

    #[test]
    fn certificate_never_accepts_wrong_multiplicity(m in symmetric_matrix(6, 3), lambda in -6i64..=6, extra in 1u64..=2) {
        // claim lambda with one more copy than it has, padded with nothing else
        let true_null = nullity(&m.shifted(lambda).unwrap(), NullityMethod::Bareiss).nullity as u64;
        if lambda >= 0 {
            let claim = Spectrum::new([(lambda as u64, true_null + extra)]);
            prop_assert!(!certify_spectrum(&m, &claim).verdict);
        }
    }
}
