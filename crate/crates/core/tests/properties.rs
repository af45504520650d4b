mod common;

use common::{graph, graph_in, poly, q};
use graph_deform::algebra::{antipode, bracket, compose, differential, AntipodeSign};
use graph_deform::graphs::{canonicalize, enumerate, superpose, EnumerateOptions, LabeledGraph, Sign, SignedGraphClass};
use graph_deform::homology::boundary_matrix_on;
use graph_deform::kontsevich::evaluate;
use graph_deform::{GraphVectorQ, PoissonQ, PolyQ, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

type V = GraphVectorQ;

fn v(g: &LabeledGraph) -> V {
    V::from_graph(g)
}

fn koszul(a: &LabeledGraph, b: &LabeledGraph) -> Rational {
    if (a.lie_degree() * b.lie_degree()).rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn shuffled(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(common::config(96))]

    #[test]
    fn relabeling_preserves_the_class(
        (g, perm) in graph_in(0..=4, 1..=3).prop_flat_map(|g| { let n = g.n(); (Just(g), shuffled(n)) })
    ) {
        prop_assert_eq!(canonicalize(&g.permuted(&perm)), canonicalize(&g));
    }

    #[test]
    fn a_single_flip_negates_the_class(g in graph_in(1..=4, 1..=3), k in 0usize..4) {
        let k = k % g.n();
        prop_assert_eq!(canonicalize(&g.flipped(k)), canonicalize(&g).negated());
    }

    #[test]
    fn canonical_representatives_are_fixed(g in graph_in(0..=4, 1..=3)) {
        if let SignedGraphClass::Class { graph, .. } = canonicalize(&g) {
            prop_assert_eq!(canonicalize(&graph), SignedGraphClass::Class { graph: graph.clone(), sign: Sign::Plus });
        }
    }

    #[test]
    fn merger_simplicial_identity(g in graph_in(0..=3, 3..=5)) {
        let c = canonicalize(&g);
        for j in 1..=g.m() - 2 {
            for i in 1..=j {
                let lhs = c.merge_boundary(i).unwrap().merge_boundary(j).unwrap();
                let rhs = c.merge_boundary(j + 1).unwrap().merge_boundary(i).unwrap();
                prop_assert_eq!(lhs, rhs, "i={} j={}", i, j);
            }
        }
    }

    #[test]
    fn superposition_commutes((a, b) in (0usize..=2, 0usize..=2, 2usize..=3)
        .prop_flat_map(|(na, nb, m)| (graph(na, m), graph(nb, m))))
    {
        prop_assert_eq!(superpose(&a, &b).unwrap(), superpose(&b, &a).unwrap());
    }

    #[test]
    fn bracket_is_graded_antisymmetric(f in graph_in(0..=2, 1..=3), g in graph_in(0..=2, 1..=3)) {
        let fg = bracket(&v(&f), &v(&g)).unwrap();
        let gf = bracket(&v(&g), &v(&f)).unwrap();
        prop_assert!((&fg + &gf.scaled(&koszul(&f, &g))).is_zero());
    }

    #[test]
    fn pre_lie_relation(f in graph_in(0..=1, 1..=3), g in graph_in(0..=1, 1..=3), h in graph_in(0..=1, 1..=3)) {
        let (f, g, h) = (v(&f), v(&g), v(&h));
        let assoc = |a: &V, b: &V, c: &V| &compose(&compose(a, b).unwrap(), c).unwrap() - &compose(a, &compose(b, c).unwrap()).unwrap();
        let sign = {
            let (gm, hm) = (g.arity().unwrap().unwrap(), h.arity().unwrap().unwrap());
            if ((gm - 1) * (hm - 1)) % 2 == 0 { Rational::one() } else { -Rational::one() }
        };
        prop_assert_eq!(assoc(&f, &g, &h), assoc(&f, &h, &g).scaled(&sign));
    }

    #[test]
    fn graded_jacobi_identity(f in graph_in(0..=1, 1..=3), g in graph_in(0..=1, 1..=3), h in graph_in(0..=1, 1..=3)) {
        let term = |a: &LabeledGraph, b: &LabeledGraph, c: &LabeledGraph| {
            bracket(&v(a), &bracket(&v(b), &v(c)).unwrap()).unwrap().scaled(&koszul(a, c))
        };
        let total = &(&term(&f, &g, &h) + &term(&g, &h, &f)) + &term(&h, &f, &g);
        prop_assert!(total.is_zero());
    }

    #[test]
    fn differential_squares_to_zero(g in graph_in(0..=3, 1..=3)) {
        prop_assert!(differential(&differential(&v(&g)).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn antipode_is_an_involutive_morphism(f in graph_in(0..=2, 1..=3), g in graph_in(0..=2, 1..=3)) {
        let s = |x: &V| antipode(x, AntipodeSign::Reversal);
        prop_assert_eq!(s(&s(&v(&f))), v(&f));
        let fg = compose(&v(&f), &v(&g)).unwrap();
        prop_assert_eq!(s(&fg), compose(&s(&v(&f)), &s(&v(&g))).unwrap());
    }

    #[test]
    fn evaluation_is_multilinear(
        g in graph_in(0..=2, 2..=2),
        (u, u2, w) in (poly(2, 3), poly(2, 3), poly(2, 3)),
        (a, b) in (-3i64..=3, -3i64..=3),
    ) {
        let alpha = PoissonQ::symplectic(2);
        let (a, b) = (q(a, 1), q(b, 2));
        let mix = u.scaled(&a).add(&u2.scaled(&b));
        let ev = |x: &PolyQ, y: &PolyQ| evaluate(&g, &alpha, &[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(ev(&mix, &w), ev(&u, &w).scaled(&a).add(&ev(&u2, &w).scaled(&b)));
        prop_assert_eq!(ev(&w, &mix), ev(&w, &u).scaled(&a).add(&ev(&w, &u2).scaled(&b)));
    }

    #[test]
    fn poisson_bracket_is_antisymmetric(u in poly(3, 3), w in poly(3, 3), entries in proptest::collection::vec(-4i64..=4, 3)) {
        let b1 = graph_deform::graphs::b1();
        let mut alpha = vec![vec![Rational::zero(); 3]; 3];
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            alpha[i][j] = q(entries[k], 1);
            alpha[j][i] = q(-entries[k], 1);
        }
        for a in [PoissonQ::constant(alpha).unwrap(), PoissonQ::so3()] {
            let x = evaluate(&b1, &a, &[u.clone(), w.clone()]).unwrap();
            let y = evaluate(&b1, &a, &[w.clone(), u.clone()]).unwrap();
            prop_assert!(x.add(&y).is_zero());
        }
    }
}

fn dims_with_bases(n: usize, m: usize, order: &[Vec<usize>; 3]) -> (usize, usize) {
    let opts = EnumerateOptions::default();
    let pick = |basis: Vec<LabeledGraph>, perm: &Vec<usize>| perm.iter().map(|&k| basis[k].clone()).collect::<Vec<_>>();
    let lower = pick(enumerate(n, m - 1, opts).unwrap(), &order[0]);
    let mid = pick(enumerate(n, m, opts).unwrap(), &order[1]);
    let upper = pick(enumerate(n, m + 1, opts).unwrap(), &order[2]);
    let incoming = boundary_matrix_on(n, m - 1, lower, mid.clone()).unwrap();
    let outgoing = boundary_matrix_on(n, m, mid, upper).unwrap();
    (outgoing.nullity(), incoming.rank())
}

proptest! {
    #![proptest_config(common::config(12))]

    #[test]
    fn cohomology_ignores_basis_order(
        order in {
            let opts = EnumerateOptions::default();
            let sizes: Vec<usize> = (1..=3).map(|m| enumerate(2, m, opts).unwrap().len()).collect();
            (shuffled(sizes[0]), shuffled(sizes[1]), shuffled(sizes[2]))
        }
    ) {
        let identity = [
            (0..order.0.len()).collect(),
            (0..order.1.len()).collect(),
            (0..order.2.len()).collect(),
        ];
        let shuffled = [order.0, order.1, order.2];
        prop_assert_eq!(dims_with_bases(2, 2, &shuffled), dims_with_bases(2, 2, &identity));
    }
}
