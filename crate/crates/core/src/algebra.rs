//! The graded Lie algebra of graph vectors.
//!
//! A [`GraphVector`] is a finite formal combination of orientation classes.
//! The Lie degree of a graph with `m` boundary points is `m - 1`; the
//! pre-Lie composition inserts one graph into a boundary point of another
//! and the bracket is its graded commutator. The differential is bracketing
//! with the product graph `b0`, and the merger map `σ` collapses adjacent
//! boundary points.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{self, canonicalize, GraphError, LabeledGraph, SignedGraphClass, Target};
use crate::scalar::{factorial, sign_pow, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("insertion position {position} out of range for m = {m}")]
    PositionOutOfRange { position: usize, m: usize },
    #[error("vector is not homogeneous in boundary arity")]
    Inhomogeneous,
    #[error("merger contraction needs at least two internal vertices, got {graph}")]
    SigmaDomain { graph: String },
    #[error("expected boundary arity {expected}, found {found}")]
    WrongArity { expected: String, found: usize },
    #[error("{} term(s) outside the wedge span: {}", .terms.len(), .terms.join(", "))]
    OutsideWedgeSpan { terms: Vec<String> },
    #[error("cannot parse graph vector: {0}")]
    Parse(String),
}

/// Finite rational combination of canonical graph classes.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphVector<S> {
    terms: BTreeMap<LabeledGraph, S>,
}

impl<S: Scalar> Default for GraphVector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> GraphVector<S> {
    pub fn zero() -> Self {
        GraphVector { terms: BTreeMap::new() }
    }

    /// The class of `g` with coefficient 1 (possibly negated or zero).
    pub fn from_graph(g: &LabeledGraph) -> Self {
        Self::from_class(&canonicalize(g))
    }

    pub fn from_class(c: &SignedGraphClass) -> Self {
        let mut v = Self::zero();
        v.add_class(c, S::one());
        v
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (S, &'a LabeledGraph)>) -> Self {
        let mut v = Self::zero();
        for (c, g) in terms {
            v.add_graph(g, c);
        }
        v
    }

    pub fn add_graph(&mut self, g: &LabeledGraph, coeff: S) {
        self.add_class(&canonicalize(g), coeff);
    }

    pub fn add_class(&mut self, c: &SignedGraphClass, coeff: S) {
        if let SignedGraphClass::Class { graph, sign } = c {
            let coeff = if sign.is_minus() { -coeff } else { coeff };
            self.add_canonical(graph.clone(), coeff);
        }
    }

    /// `graph` must already be canonical.
    fn add_canonical(&mut self, graph: LabeledGraph, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(graph) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &GraphVector<S>, factor: &S) {
        for (g, c) in &other.terms {
            self.add_canonical(g.clone(), c.clone() * factor.clone());
        }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        let mut v = Self::zero();
        v.add_scaled(self, factor);
        v
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&LabeledGraph, &S)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the class of `g`, with `g`'s own orientation.
    pub fn coeff(&self, g: &LabeledGraph) -> S {
        match canonicalize(g) {
            SignedGraphClass::Zero => S::zero(),
            SignedGraphClass::Class { graph, sign } => {
                let c = self.terms.get(&graph).cloned().unwrap_or_else(S::zero);
                if sign.is_minus() {
                    -c
                } else {
                    c
                }
            }
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&LabeledGraph) -> bool) -> Self {
        GraphVector {
            terms: self.terms.iter().filter(|(g, _)| keep(g)).map(|(g, c)| (g.clone(), c.clone())).collect(),
        }
    }

    /// Common boundary arity: `None` for the zero vector.
    pub fn arity(&self) -> Result<Option<usize>, AlgebraError> {
        let mut it = self.terms.keys().map(LabeledGraph::m);
        let Some(first) = it.next() else { return Ok(None) };
        if it.all(|m| m == first) {
            Ok(Some(first))
        } else {
            Err(AlgebraError::Inhomogeneous)
        }
    }

    /// Common internal-vertex count: `None` for the zero vector or mixed counts.
    pub fn vertex_count(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(LabeledGraph::n);
        let first = it.next()?;
        it.all(|n| n == first).then_some(first)
    }

    /// Applies a per-graph linear map given on canonical representatives.
    fn map_terms<F>(&self, mut f: F) -> Result<Self, AlgebraError>
    where
        F: FnMut(&LabeledGraph) -> Result<GraphVector<S>, AlgebraError>,
    {
        let mut out = Self::zero();
        for (g, c) in &self.terms {
            out.add_scaled(&f(g)?, c);
        }
        Ok(out)
    }
}

impl<S: Scalar> Add for &GraphVector<S> {
    type Output = GraphVector<S>;
    fn add(self, rhs: Self) -> GraphVector<S> {
        let mut v = self.clone();
        v.add_scaled(rhs, &S::one());
        v
    }
}

impl<S: Scalar> Sub for &GraphVector<S> {
    type Output = GraphVector<S>;
    fn sub(self, rhs: Self) -> GraphVector<S> {
        let mut v = self.clone();
        v.add_scaled(rhs, &-S::one());
        v
    }
}

impl<S: Scalar> Neg for &GraphVector<S> {
    type Output = GraphVector<S>;
    fn neg(self) -> GraphVector<S> {
        self.scaled(&-S::one())
    }
}

impl<S: Scalar> fmt::Display for GraphVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            match (i, neg) {
                (0, false) => write!(f, "{mag} * {g}")?,
                (0, true) => write!(f, "-{mag} * {g}")?,
                (_, false) => write!(f, " + {mag} * {g}")?,
                (_, true) => write!(f, " - {mag} * {g}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> std::str::FromStr for GraphVector<S> {
    type Err = AlgebraError;

    /// Parses `c1 * G{...} + c2 * G{...} - ...`; a bare graph literal has coefficient 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut v = Self::zero();
        if s == "0" {
            return Ok(v);
        }
        let bad = |m: &str| AlgebraError::Parse(format!("{m} in `{s}`"));
        let mut rest = s;
        let mut first = true;
        while !rest.trim().is_empty() {
            rest = rest.trim_start();
            let mut negative = false;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r.trim_start();
            } else if let Some(r) = rest.strip_prefix('-') {
                negative = true;
                rest = r.trim_start();
            } else if !first {
                return Err(bad("expected + or -"));
            }
            first = false;
            let gpos = rest.find("G{").ok_or_else(|| bad("expected graph literal"))?;
            let head = rest[..gpos].trim();
            let coeff = if head.is_empty() {
                S::one()
            } else {
                let lit = head.strip_suffix('*').ok_or_else(|| bad("expected `*`"))?.trim();
                S::parse_literal(lit).ok_or_else(|| bad("bad coefficient"))?
            };
            let end = rest[gpos..].find('}').ok_or_else(|| bad("unterminated graph"))? + gpos + 1;
            let g: LabeledGraph = rest[gpos..end].parse()?;
            v.add_graph(&g, if negative { -coeff } else { coeff });
            rest = &rest[end..];
        }
        Ok(v)
    }
}

/// One entry of the JSON serialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub graph: String,
    pub coeff: String,
}

impl<S: Scalar> GraphVector<S> {
    /// Terms sorted by canonical graph encoding.
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms.iter().map(|(g, c)| JsonTerm { graph: g.to_string(), coeff: c.to_string() }).collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<Self, AlgebraError> {
        let mut v = Self::zero();
        for t in terms {
            let g: LabeledGraph = t.graph.parse()?;
            let c = S::parse_literal(&t.coeff).ok_or_else(|| AlgebraError::Parse(t.coeff.clone()))?;
            v.add_graph(&g, c);
        }
        Ok(v)
    }
}

// ---------------------------------------------------------------------------
// Insertion, composition, bracket

/// `f ∘_i g` for single graphs: all reattachments of the edges that landed
/// on boundary `i` of `f` to any vertex of `g`.
fn insert_graphs<S: Scalar>(f: &LabeledGraph, i: usize, g: &LabeledGraph) -> Result<GraphVector<S>, AlgebraError> {
    let (mf, mg, nf, ng) = (f.m(), g.m(), f.n(), g.n());
    if i == 0 || i > mf {
        return Err(AlgebraError::PositionOutOfRange { position: i, m: mf });
    }
    let shift_f = |t: Target| match t {
        Target::Boundary(j) if j > i => Target::Boundary(j + mg - 1),
        t => t,
    };
    let shift_g = |t: Target| match t {
        Target::Internal(u) => Target::Internal(u + nf),
        Target::Boundary(j) => Target::Boundary(j + i - 1),
    };
    let mut base: Vec<[Target; 2]> = f.vertices().iter().map(|p| [shift_f(p[0]), shift_f(p[1])]).collect();
    base.extend(g.vertices().iter().map(|p| [shift_g(p[0]), shift_g(p[1])]));

    let slots: Vec<(usize, usize)> = f
        .vertices()
        .iter()
        .enumerate()
        .flat_map(|(k, p)| (0..2).filter(move |&s| p[s] == Target::Boundary(i)).map(move |s| (k, s)))
        .collect();
    let choices: Vec<Target> = (0..ng)
        .map(|u| Target::Internal(nf + u))
        .chain((1..=mg).map(|j| Target::Boundary(j + i - 1)))
        .collect();

    let m = mf + mg - 1;
    let mut out = GraphVector::zero();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut verts = base.clone();
        for (&(k, s), &c) in slots.iter().zip(&idx) {
            verts[k][s] = choices[c];
        }
        out.add_graph(&LabeledGraph::from_parts_unchecked(m, verts), S::one());
        let mut p = 0;
        loop {
            if p == idx.len() {
                return Ok(out);
            }
            idx[p] += 1;
            if idx[p] < choices.len() {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
    }
}

/// `f ∘_i g`, extended bilinearly.
pub fn insert<S: Scalar>(f: &GraphVector<S>, i: usize, g: &GraphVector<S>) -> Result<GraphVector<S>, AlgebraError> {
    let mut out = GraphVector::zero();
    for (fg, fc) in f.terms() {
        for (gg, gc) in g.terms() {
            out.add_scaled(&insert_graphs(fg, i, gg)?, &(fc.clone() * gc.clone()));
        }
    }
    Ok(out)
}

/// Pre-Lie composition `f ∘ g = Σ_i (-1)^{(i-1)|g|} f ∘_i g`.
pub fn compose<S: Scalar>(f: &GraphVector<S>, g: &GraphVector<S>) -> Result<GraphVector<S>, AlgebraError> {
    let Some(mg) = g.arity()? else { return Ok(GraphVector::zero()) };
    let deg_g = mg - 1;
    let mut out = GraphVector::zero();
    for (fg, fc) in f.terms() {
        for (gg, gc) in g.terms() {
            let c = fc.clone() * gc.clone();
            for i in 1..=fg.m() {
                let s: S = sign_pow((i - 1) * deg_g);
                out.add_scaled(&insert_graphs(fg, i, gg)?, &(c.clone() * s));
            }
        }
    }
    Ok(out)
}

/// Graded commutator `[f, g] = f∘g - (-1)^{|f||g|} g∘f`.
pub fn bracket<S: Scalar>(f: &GraphVector<S>, g: &GraphVector<S>) -> Result<GraphVector<S>, AlgebraError> {
    let (Some(mf), Some(mg)) = (f.arity()?, g.arity()?) else {
        return Ok(GraphVector::zero());
    };
    let mut out = compose(f, g)?;
    let s: S = sign_pow((mf - 1) * (mg - 1));
    out.add_scaled(&compose(g, f)?, &-s);
    Ok(out)
}

/// `∂f = [b0, f]`.
pub fn differential<S: Scalar>(f: &GraphVector<S>) -> Result<GraphVector<S>, AlgebraError> {
    bracket(&GraphVector::from_graph(&graphs::b0()), f)
}

/// `{f, g} = f ∘_1 g - g ∘_2 f` on binary graphs.
pub fn curly<S: Scalar>(f: &GraphVector<S>, g: &GraphVector<S>) -> Result<GraphVector<S>, AlgebraError> {
    for v in [f, g] {
        if let Some(bad) = v.terms().map(|(t, _)| t.m()).find(|&m| m != 2) {
            return Err(AlgebraError::WrongArity { expected: "2".into(), found: bad });
        }
    }
    Ok(&insert(f, 1, g)? - &insert(g, 2, f)?)
}

// ---------------------------------------------------------------------------
// Merger contraction

/// Normalization of the merger contraction on graphs with `n` internal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaNorm {
    /// `1 / (2(2^n - 2))`.
    #[default]
    Merger,
    /// `-1 / (2^{n-1} - 1)`, the low-degree linear-case constant.
    LinearAlt,
}

impl SigmaNorm {
    pub fn factor<S: Scalar>(self, n: usize) -> S {
        let p = 1i64 << (n - 1);
        match self {
            SigmaNorm::Merger => S::ratio(1, 4 * (p - 1)),
            SigmaNorm::LinearAlt => S::ratio(-1, p - 1),
        }
    }
}

fn alternating_merges<S: Scalar>(g: &LabeledGraph) -> Result<GraphVector<S>, AlgebraError> {
    let mut out = GraphVector::zero();
    for i in 1..g.m() {
        out.add_class(&graphs::merge_boundary(g, i)?, sign_pow(i - 1));
    }
    Ok(out)
}

/// Alternating merger sum `Σ_i (-1)^{i-1} σ_i` without normalization.
pub fn merger_sum<S: Scalar>(f: &GraphVector<S>) -> Result<GraphVector<S>, AlgebraError> {
    f.map_terms(alternating_merges)
}

/// `σ(Γ) = c(n) Σ_{i=1}^{m-1} (-1)^{i-1} σ_i(Γ)`.
pub fn sigma<S: Scalar>(f: &GraphVector<S>, norm: SigmaNorm) -> Result<GraphVector<S>, AlgebraError> {
    f.map_terms(|g| {
        if g.n() < 2 {
            return Err(AlgebraError::SigmaDomain { graph: g.to_string() });
        }
        Ok(alternating_merges(g)?.scaled(&norm.factor(g.n())))
    })
}

// ---------------------------------------------------------------------------
// Poisson-kernel projections

/// Drops every graph with an edge landing on an internal vertex.
pub fn project_constant<S: Scalar>(f: &GraphVector<S>) -> GraphVector<S> {
    f.filter(|g| !g.has_internal_edge())
}

/// Drops every graph with an internal vertex of in-degree at least two.
pub fn project_linear<S: Scalar>(f: &GraphVector<S>) -> GraphVector<S> {
    f.filter(|g| g.max_internal_in_degree() <= 1)
}

// ---------------------------------------------------------------------------
// Wedge bases

/// Exponents `(r, s, t)` of `Γ1^r Γ2^s Γ3^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexTriple {
    pub r: usize,
    pub s: usize,
    pub t: usize,
}

impl IndexTriple {
    pub fn new(r: usize, s: usize, t: usize) -> Self {
        IndexTriple { r, s, t }
    }

    pub fn total(&self) -> usize {
        self.r + self.s + self.t
    }
}

impl fmt::Display for IndexTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.t)
    }
}

/// `B_n = b1^n / n!`.
pub fn basis_b<S: Scalar>(n: usize) -> GraphVector<S> {
    GraphVector::from_graph(&graphs::wedges(n)).scaled(&(S::one() / factorial::<S>(n)))
}

/// `Γ_{rst} = (Γ1^r/r!)(Γ2^s/s!)(Γ3^t/t!)`.
pub fn gamma_rst<S: Scalar>(idx: IndexTriple) -> GraphVector<S> {
    let norm = factorial::<S>(idx.r) * factorial::<S>(idx.s) * factorial::<S>(idx.t);
    GraphVector::from_graph(&graphs::wedge_monomial(idx.r, idx.s, idx.t)).scaled(&(S::one() / norm))
}

/// Coordinates in `{B_n}` (binary) or `{Γ_rst}` (ternary).
#[derive(Debug, Clone, PartialEq)]
pub enum WedgeExpansion<S> {
    Binary(BTreeMap<usize, S>),
    Ternary(BTreeMap<IndexTriple, S>),
}

impl<S: Scalar> WedgeExpansion<S> {
    pub fn reconstruct(&self) -> GraphVector<S> {
        let mut v = GraphVector::zero();
        match self {
            WedgeExpansion::Binary(map) => map.iter().for_each(|(&n, c)| v.add_scaled(&basis_b(n), c)),
            WedgeExpansion::Ternary(map) => map.iter().for_each(|(&j, c)| v.add_scaled(&gamma_rst(j), c)),
        }
        v
    }
}

fn wedge_type(g: &LabeledGraph) -> Option<IndexTriple> {
    let mut idx = IndexTriple::new(0, 0, 0);
    for p in g.vertices() {
        let mut q = *p;
        q.sort();
        match q {
            [Target::Boundary(2), Target::Boundary(3)] => idx.r += 1,
            [Target::Boundary(1), Target::Boundary(3)] => idx.s += 1,
            [Target::Boundary(1), Target::Boundary(2)] => idx.t += 1,
            _ => return None,
        }
    }
    Some(idx)
}

/// Expands a constant-projected vector with `m ∈ {2, 3}` in the wedge bases.
pub fn expand_wedge_basis<S: Scalar>(f: &GraphVector<S>) -> Result<WedgeExpansion<S>, AlgebraError> {
    let Some(m) = f.arity()? else { return Ok(WedgeExpansion::Binary(BTreeMap::new())) };
    let mut residual = Vec::new();
    let out = match m {
        2 => {
            let mut map = BTreeMap::new();
            for (g, c) in f.terms() {
                if g.vertices().iter().all(|p| !matches!(p[0], Target::Internal(_)) && !matches!(p[1], Target::Internal(_))) {
                    // canonical pairs over {1,2} are always (b1,b2)
                    map.insert(g.n(), c.clone() * factorial::<S>(g.n()));
                } else {
                    residual.push(g.to_string());
                }
            }
            WedgeExpansion::Binary(map)
        }
        3 => {
            let mut map = BTreeMap::new();
            for (g, c) in f.terms() {
                match wedge_type(g) {
                    Some(j) => {
                        let norm = factorial::<S>(j.r) * factorial::<S>(j.s) * factorial::<S>(j.t);
                        map.insert(j, c.clone() * norm);
                    }
                    None => residual.push(g.to_string()),
                }
            }
            WedgeExpansion::Ternary(map)
        }
        m => return Err(AlgebraError::WrongArity { expected: "2 or 3".into(), found: m }),
    };
    if residual.is_empty() {
        Ok(out)
    } else {
        Err(AlgebraError::OutsideWedgeSpan { terms: residual })
    }
}

// ---------------------------------------------------------------------------
// Antipode

/// Sign convention for `S(Γ) = ε(m) Γ^t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AntipodeSign {
    /// `ε(m) = (-1)^{m(m-1)/2}`, the parity of the order reversal.
    #[default]
    Reversal,
    /// `ε(m) = (-1)^m`.
    Alternating,
}

impl AntipodeSign {
    pub fn exponent(self, m: usize) -> usize {
        match self {
            AntipodeSign::Reversal => m * (m.saturating_sub(1)) / 2,
            AntipodeSign::Alternating => m,
        }
    }
}

pub fn antipode<S: Scalar>(f: &GraphVector<S>, convention: AntipodeSign) -> GraphVector<S> {
    let mut out = GraphVector::zero();
    for (g, c) in f.terms() {
        let eps: S = sign_pow(convention.exponent(g.m()));
        out.add_class(&graphs::transpose(g), c.clone() * eps);
    }
    out
}

// ---------------------------------------------------------------------------
// Index-level structure constants

/// `δ(i,j) = Σ_{r+s=i, t=j} (r,s,t) - Σ_{r=i, s+t=j} (r,s,t)`, zeros dropped.
pub fn delta(i: usize, j: usize) -> BTreeMap<IndexTriple, i64> {
    let mut out = BTreeMap::new();
    let mut add = |k: IndexTriple, c: i64| {
        let e = out.entry(k).or_insert(0);
        *e += c;
    };
    for r in 0..=i {
        add(IndexTriple::new(r, i - r, j), 1);
    }
    for s in 0..=j {
        add(IndexTriple::new(i, s, j - s), -1);
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Checks `Σ_{i+j=n} δ(i,j) = 0`.
pub fn delta_sum_check(n: usize) -> bool {
    let mut total: BTreeMap<IndexTriple, i64> = BTreeMap::new();
    for i in 0..=n {
        for (k, c) in delta(i, n - i) {
            *total.entry(k).or_insert(0) += c;
        }
    }
    total.values().all(|&c| c == 0)
}

/// Coefficients of the constant-projected `[B_i, B_j]` in `{Γ_rst}` predicted
/// by the four-case rule, i.e. `δ(i,j) + δ(j,i)`.
pub fn four_case_rule(i: usize, j: usize) -> BTreeMap<IndexTriple, i64> {
    let mut out = delta(i, j);
    for (k, c) in delta(j, i) {
        *out.entry(k).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    out
}
