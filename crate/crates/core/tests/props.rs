use erpolar::chrom4::{triangle_solve, weil_check};
use erpolar::colorodd::QuadraticSystem;
use erpolar::ff::{Fe, GaloisField, TowerSpec};
use erpolar::graph::{
    degeneracy_order, exact_k_colorable, greedy_color, parse_dimacs, to_dimacs, Graph, KColorability,
};
use erpolar::polarity::{build_gq, phi_auto, psi_auto};
use proptest::prelude::*;

const ORDERS: [u64; 8] = [3, 5, 7, 9, 11, 25, 27, 49];

fn field() -> impl Strategy<Value = GaloisField> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| GaloisField::new(q).unwrap())
}

fn field_with<const N: usize>() -> impl Strategy<Value = (GaloisField, [Fe; N])> {
    field().prop_flat_map(|f| {
        let q = f.order();
        let els = prop::array::uniform::<_, N>((0..q).prop_map(Fe));
        (Just(f), els)
    })
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..12).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..30).prop_map(move |e| Graph::from_edges(n, e).unwrap())
    })
}

fn brute_colorable(g: &Graph, k: usize) -> bool {
    let n = g.n();
    let total = (k as u64).pow(n as u32);
    (0..total).any(|code| {
        let c: Vec<u64> = (0..n).map(|i| code / (k as u64).pow(i as u32) % k as u64).collect();
        g.edges().all(|(u, v)| c[u] != c[v])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms((f, [a, b, c]) in field_with::<3>()) {
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Fe::ZERO);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
            prop_assert_eq!(f.pow(a, f.order() - 1), Fe::ONE);
            prop_assert_eq!((f.order() - 1) % f.element_order(a).unwrap(), 0);
        }
    }

    #[test]
    fn character_is_multiplicative((f, [a, b]) in field_with::<2>()) {
        prop_assert_eq!(f.quad_char(f.mul(a, b)), f.quad_char(a) * f.quad_char(b));
        prop_assert_eq!(f.quad_char(f.square(a)), if a.is_zero() { 0 } else { 1 });
    }

    #[test]
    fn sign_splits_negation_pairs((f, [a]) in field_with::<1>()) {
        match f.sign(a) {
            None => prop_assert!(a.is_zero()),
            Some(s) => prop_assert_ne!(Some(s), f.sign(f.neg(a))),
        }
    }

    #[test]
    fn triangle_solve_inverts_pair_sums((f, [a, b, c]) in field_with::<3>()) {
        let (x, y, z) = triangle_solve(&f, a, b, c);
        prop_assert_eq!(f.add(x, y), a);
        prop_assert_eq!(f.add(y, z), b);
        prop_assert_eq!(f.add(z, x), c);
    }

    #[test]
    fn automorphisms_preserve_gq_adjacency((f, [k, x1, x2, y1]) in field_with::<4>()) {
        let y2 = f.sub(f.square(f.add(x1, y1)), x2);
        let adj = |(a, b): (Fe, Fe), (c, d): (Fe, Fe)| f.square(f.add(a, c)) == f.add(b, d);
        let (u, v) = ((x1, x2), (y1, y2));
        prop_assert!(adj(u, v));
        prop_assert!(adj(psi_auto(&f, k, u), psi_auto(&f, k, v)));
        if !k.is_zero() {
            prop_assert!(adj(phi_auto(&f, k, u).unwrap(), phi_auto(&f, k, v).unwrap()));
        }
    }

    #[test]
    fn tower_round_trip(q in prop::sample::select(vec![3u64, 5, 7]), t in prop::sample::select(vec![2usize, 3]), seed in any::<u64>()) {
        let base = GaloisField::new(q).unwrap();
        let tower = if t == 2 {
            TowerSpec::quadratic(&base).unwrap()
        } else {
            match TowerSpec::find_binomial(&base, 3).unwrap() {
                Some(tw) => tw,
                None => return Ok(()),
            }
        };
        let f = tower.field().clone();
        let x = Fe(seed % f.order());
        let y = Fe(seed / 7 % f.order());
        prop_assert_eq!(tower.assemble(&tower.coeffs(x)), x);
        // coordinates are additive
        let sum: Vec<Fe> = tower.coeffs(x).iter().zip(tower.coeffs(y)).map(|(&a, b)| base.add(a, b)).collect();
        prop_assert_eq!(tower.coeffs(f.add(x, y)), sum);
    }

    #[test]
    fn system_is_homogeneous(q in prop::sample::select(vec![5u64, 7]), z in prop::collection::vec(0u64..35, 3), c in 1u64..5) {
        let f = GaloisField::new(q).unwrap();
        let mu = Fe(2);
        let sys = QuadraticSystem::new(&f, 1, mu).unwrap();
        let z: Vec<Fe> = z.into_iter().map(|v| Fe(v % q)).collect();
        let cz: Vec<Fe> = z.iter().map(|&v| f.mul(Fe(c), v)).collect();
        let c2 = f.square(Fe(c));
        let scaled: Vec<Fe> = sys.residuals(&z).unwrap().into_iter().map(|v| f.mul(c2, v)).collect();
        prop_assert_eq!(sys.residuals(&cz).unwrap(), scaled);
    }

    #[test]
    fn weil_holds_for_random_cubics((f, [a, b, c]) in field_with::<3>()) {
        let poly = vec![c, b, a, Fe::ONE];
        if let Ok(w) = weil_check(&f, &poly) {
            prop_assert!(w.ok, "{:?}", w);
        }
    }

    #[test]
    fn dimacs_round_trip(g in small_graph()) {
        let h = parse_dimacs(&to_dimacs(&g)).unwrap();
        prop_assert_eq!(h.n(), g.n());
        prop_assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        prop_assert_eq!(h.loops(), g.loops());
    }

    #[test]
    fn greedy_respects_degeneracy(g in small_graph()) {
        let (order, degen) = degeneracy_order(&g);
        let c = greedy_color(&g, &order).unwrap();
        prop_assert!(c.is_proper(&g));
        prop_assert!(c.palette_size() <= degen + 1);
        prop_assert!(c.palette_size() <= g.max_degree() + 1);
    }

    #[test]
    fn exact_coloring_agrees_with_brute_force(g in small_graph(), k in 1usize..4) {
        prop_assume!(g.n() <= 9);
        let res = exact_k_colorable(&g, k).unwrap();
        prop_assert_eq!(res.is_colorable(), brute_colorable(&g, k));
        if let KColorability::Colorable(c) = res {
            prop_assert!(c.is_proper(&g));
        }
    }
}

#[test]
fn gq_has_no_four_cycles_for_small_fields() {
    for q in [3u64, 5, 7, 9] {
        let g = build_gq(&GaloisField::new(q).unwrap()).unwrap();
        assert!(!g.graph.has_c4(), "q={q}");
    }
}
