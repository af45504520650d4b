#![allow(dead_code)]

use graph_deform::graphs::{LabeledGraph, Target};
use graph_deform::{PolyQ, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(d))
}

fn target(m: usize, k: usize, code: usize) -> Target {
    // codes 0..m are boundary points, the rest are the other internal vertices
    if code < m {
        Target::Boundary(code + 1)
    } else {
        let u = code - m;
        Target::Internal(if u >= k { u + 1 } else { u })
    }
}

/// Arbitrary admissible labeled graph with the given sizes.
pub fn graph(n: usize, m: usize) -> BoxedStrategy<LabeledGraph> {
    if n == 0 {
        return Just(LabeledGraph::empty(m)).boxed();
    }
    let choices = m + n - 1;
    assert!(choices >= 2, "no admissible graph with n={n}, m={m}");
    proptest::collection::vec((0..choices, 1..choices), n).prop_map(move |codes| {
        let vertices = codes
            .iter()
            .enumerate()
            .map(|(k, &(a, off))| [target(m, k, a), target(m, k, (a + off) % choices)])
            .collect();
        LabeledGraph::new(m, vertices).expect("strategy builds admissible graphs")
    })
    .boxed()
}

/// Graph with `n` in `ns` and `m` in `ms`.
pub fn graph_in(ns: std::ops::RangeInclusive<usize>, ms: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = LabeledGraph> {
    (ns, ms)
        .prop_filter("need at least two targets per vertex", |&(n, m)| n == 0 || m + n >= 3)
        .prop_flat_map(|(n, m)| graph(n, m))
}

/// Small polynomial in `d` variables with integer coefficients.
pub fn poly(d: usize, max_deg: u32) -> impl Strategy<Value = PolyQ> {
    proptest::collection::vec((proptest::collection::vec(0..=max_deg, d), -3i64..=3), 1..4).prop_map(move |terms| {
        let mut p = PolyQ::zero(d);
        for (exps, c) in terms {
            if exps.iter().sum::<u32>() <= max_deg {
                p = p.add(&PolyQ::monomial(d, exps, Rational::from_integer(c.into())));
            }
        }
        p
    })
}

/// All permutations of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Proptest config without on-disk regression files.
pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}
