//! Low-degree cohomology of the graph complex `(kG_{n,•}, ∂)`.
//!
//! `∂ = [b0, ·]` preserves the internal-vertex count `n` and raises the
//! boundary arity `m` by one, so each `n` gives a cochain complex
//! `kG_{n,1} → kG_{n,2} → ...`. Ranks are computed exactly over the
//! integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{differential, merger_sum, AlgebraError, GraphVector};
use crate::graphs::{canonicalize, enumerate, EnumerateOptions, GraphError, LabeledGraph, SignedGraphClass};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("differential produced a class outside the target basis: {0}")]
    OutsideBasis(String),
    #[error("non-integral coefficient {0} in boundary matrix")]
    NonIntegral(String),
    #[error("expected a nonzero class in G_(n,1) with n >= 1, got {0}")]
    NotUnary(String),
}

/// Matrix of `∂ : kG_{n,m} → kG_{n,m+1}`, stored by columns.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix {
    pub n: usize,
    pub m: usize,
    pub source: Vec<LabeledGraph>,
    pub target: Vec<LabeledGraph>,
    /// `columns[c]` lists the nonzero `(row, value)` entries of `∂ source[c]`.
    pub columns: Vec<Vec<(usize, BigInt)>>,
}

/// Builds `∂` between explicitly given bases (each a list of canonical classes).
pub fn boundary_matrix_on(
    n: usize,
    m: usize,
    source: Vec<LabeledGraph>,
    target: Vec<LabeledGraph>,
) -> Result<BoundaryMatrix, HomologyError> {
    let index: BTreeMap<&LabeledGraph, usize> = target.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let mut columns = Vec::with_capacity(source.len());
    for g in &source {
        let d = differential(&GraphVector::<BigRational>::from_graph(g))?;
        let mut col = Vec::with_capacity(d.len());
        for (h, c) in d.terms() {
            let row = *index.get(h).ok_or_else(|| HomologyError::OutsideBasis(h.to_string()))?;
            if !c.is_integer() {
                return Err(HomologyError::NonIntegral(c.to_string()));
            }
            col.push((row, c.to_integer()));
        }
        col.sort_by_key(|e| e.0);
        columns.push(col);
    }
    Ok(BoundaryMatrix { n, m, source, target, columns })
}

/// `∂` restricted to `kG_{n,m}`, in enumeration order.
pub fn boundary_matrix(n: usize, m: usize, cap: u64) -> Result<BoundaryMatrix, HomologyError> {
    let opts = EnumerateOptions { max_in_degree: None, cap };
    let source = enumerate(n, m, opts)?;
    let target = enumerate(n, m + 1, opts)?;
    boundary_matrix_on(n, m, source, target)
}

impl BoundaryMatrix {
    pub fn rows(&self) -> usize {
        self.target.len()
    }

    pub fn cols(&self) -> usize {
        self.source.len()
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        self.columns[c].is_empty()
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        rank_of_columns(self.columns.iter().map(|c| c.iter().cloned().collect()))
    }

    pub fn nullity(&self) -> usize {
        self.cols() - self.rank()
    }

    /// Whether `next · self = 0` (requires `next.source == self.target`).
    pub fn composes_to_zero(&self, next: &BoundaryMatrix) -> bool {
        assert_eq!(self.target, next.source, "bases do not line up");
        self.columns.iter().all(|col| {
            let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (mid, a) in col {
                for (row, b) in &next.columns[*mid] {
                    *acc.entry(*row).or_insert_with(BigInt::zero) += a * b;
                }
            }
            acc.values().all(Zero::is_zero)
        })
    }
}

/// Rank of a family of sparse integer vectors by fraction-free elimination,
/// normalizing each reduced vector by the gcd of its entries.
pub fn rank_of_columns(cols: impl IntoIterator<Item = BTreeMap<usize, BigInt>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for mut v in cols {
        v.retain(|_, x| !x.is_zero());
        while let Some((&lead, lv)) = v.iter().next() {
            let Some(w) = pivots.get(&lead) else {
                normalize(&mut v);
                pivots.insert(lead, v);
                break;
            };
            let lv = lv.clone();
            let wl = w[&lead].clone();
            // v <- wl*v - lv*w
            for x in v.values_mut() {
                *x *= &wl;
            }
            for (k, y) in w {
                let e = v.entry(*k).or_insert_with(BigInt::zero);
                *e -= &lv * y;
            }
            v.retain(|_, x| !x.is_zero());
            normalize(&mut v);
        }
    }
    pivots.len()
}

fn normalize(v: &mut BTreeMap<usize, BigInt>) {
    let g = v.values().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.values_mut() {
            *x /= &g;
        }
    }
    if v.values().next().is_some_and(|x| x.is_negative()) {
        for x in v.values_mut() {
            *x = -x.clone();
        }
    }
}

/// `(|G_{n,m}|, dim Z, dim B, dim H)` at one spot of the complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub n: usize,
    pub m: usize,
    pub classes: usize,
    pub dim_z: usize,
    pub dim_b: usize,
    pub dim_h: usize,
}

pub fn cohomology_dims(n: usize, m: usize, cap: u64) -> Result<CohomologyDims, HomologyError> {
    let outgoing = boundary_matrix(n, m, cap)?;
    let dim_b = if m >= 2 { boundary_matrix(n, m - 1, cap)?.rank() } else { 0 };
    let dim_z = outgoing.nullity();
    Ok(CohomologyDims { n, m, classes: outgoing.cols(), dim_z, dim_b, dim_h: dim_z - dim_b })
}

/// Rows for `0 ≤ n ≤ n_max`, `1 ≤ m ≤ m_max`.
pub fn cohomology_table(n_max: usize, m_max: usize, cap: u64) -> Result<Vec<CohomologyDims>, HomologyError> {
    let mut rows = Vec::new();
    for n in 0..=n_max {
        for m in 1..=m_max {
            rows.push(cohomology_dims(n, m, cap)?);
        }
    }
    Ok(rows)
}

/// Comparison of `σ_1(∂Γ)` with `2^{i-1} Γ` for `Γ ∈ G_{n,1}`, where `i` is
/// the number of edges landing on the boundary vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeCheck {
    pub edges_on_boundary: usize,
    pub lhs: GraphVector<BigRational>,
    pub rhs: GraphVector<BigRational>,
    pub holds: bool,
}

pub fn boundary_merge_check(g: &LabeledGraph) -> Result<MergeCheck, HomologyError> {
    if g.m() != 1 || g.n() == 0 || matches!(canonicalize(g), SignedGraphClass::Zero) {
        return Err(HomologyError::NotUnary(g.to_string()));
    }
    let gv = GraphVector::<BigRational>::from_graph(g);
    // on G_{n,2} the alternating merger sum is the single merge of b1 and b2
    let lhs = merger_sum(&differential(&gv)?)?;
    let i = g.boundary_in_degree(1);
    let factor = if i == 0 {
        BigRational::new(BigInt::one(), BigInt::from(2))
    } else {
        BigRational::from_integer(BigInt::from(1u64 << (i - 1)))
    };
    let rhs = gv.scaled(&factor);
    let holds = lhs == rhs;
    Ok(MergeCheck { edges_on_boundary: i, lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{b0, b1, Target, DEFAULT_ENUMERATION_CAP};

    const CAP: u64 = DEFAULT_ENUMERATION_CAP;

    fn col(entries: &[(usize, i64)]) -> BTreeMap<usize, BigInt> {
        entries.iter().map(|&(r, x)| (r, BigInt::from(x))).collect()
    }

    #[test]
    fn rank_small_matrices() {
        assert_eq!(rank_of_columns(vec![col(&[(0, 1), (1, 2)]), col(&[(0, 2), (1, 4)])]), 1);
        assert_eq!(rank_of_columns(vec![col(&[(0, 2), (1, 3)]), col(&[(0, 3), (1, 5)]), col(&[(2, 7)])]), 3);
        assert_eq!(rank_of_columns(vec![col(&[]), col(&[(4, 0)])]), 0);
        // rows 0,1,2 with a dependent third column
        let c = vec![col(&[(0, 1), (1, -1)]), col(&[(1, 1), (2, -1)]), col(&[(0, 1), (2, -1)])];
        assert_eq!(rank_of_columns(c), 2);
    }

    #[test]
    fn b1_and_b0_are_cocycles() {
        let d12 = boundary_matrix(1, 2, CAP).unwrap();
        assert_eq!(d12.source, vec![b1()]);
        assert!(d12.column_is_zero(0));
        let d02 = boundary_matrix(0, 2, CAP).unwrap();
        assert_eq!(d02.source, vec![b0()]);
        assert!(d02.column_is_zero(0));
        assert!(cohomology_dims(1, 2, CAP).unwrap().dim_z >= 1);
    }

    #[test]
    fn square_zero_at_matrix_level() {
        let a = boundary_matrix(2, 2, CAP).unwrap();
        let b = boundary_matrix(2, 3, CAP).unwrap();
        assert!(a.composes_to_zero(&b));
    }

    #[test]
    fn dims_are_consistent() {
        for n in 0..=2 {
            for m in 1..=3 {
                let d = cohomology_dims(n, m, CAP).unwrap();
                assert!(d.dim_b <= d.dim_z && d.dim_z <= d.classes, "{d:?}");
            }
        }
    }

    #[test]
    fn merge_check_on_the_two_cycle() {
        let g = LabeledGraph::new(1, vec![[Target::Internal(1), Target::Boundary(1)], [Target::Internal(0), Target::Boundary(1)]]).unwrap();
        let r = boundary_merge_check(&g).unwrap();
        assert_eq!(r.edges_on_boundary, 2);
        assert_eq!(r.rhs, GraphVector::from_graph(&g).scaled(&BigRational::from_integer(2.into())));
        // computed value: σ_1(∂Γ) = (2 - 2^i) Γ
        assert_eq!(r.lhs, GraphVector::from_graph(&g).scaled(&BigRational::from_integer((-2).into())));
        assert!(!r.holds);
        assert!(boundary_merge_check(&b1()).is_err());
    }
}
