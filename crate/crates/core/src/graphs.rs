//! Admissible edge-labeled graphs and their orientation classes.
//!
//! A graph has `m` ordered boundary vertices (sinks, labeled `1..=m`) and
//! `n` internal vertices. Every internal vertex has exactly two outgoing
//! edges, labeled L and R, landing on two distinct vertices other than
//! itself. Relabeling internal vertices is free; swapping the L/R labels at
//! one vertex negates the graph. A graph with an automorphism realizing an
//! odd number of swaps therefore equals its own negative and is zero.

use std::collections::{BTreeMap, BTreeSet};
use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

/// Default bound on the number of labeled candidates visited by [`enumerate`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph needs at least one boundary vertex")]
    NoBoundary,
    #[error("vertex v{vertex} points to boundary b{target}, but m = {m}")]
    BoundaryOutOfRange { vertex: usize, target: usize, m: usize },
    #[error("vertex v{vertex} points to internal v{target}, but n = {n}")]
    InternalOutOfRange { vertex: usize, target: usize, n: usize },
    #[error("vertex v{vertex} has a self-loop")]
    SelfLoop { vertex: usize },
    #[error("vertex v{vertex} has both edges on the same target")]
    DoubleEdge { vertex: usize },
    #[error("boundary index {index} out of range for m = {m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("boundary arities differ: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("operation undefined on the zero class")]
    ZeroClass,
    #[error("enumeration needs {candidates} labeled candidates, cap is {cap}")]
    ResourceCap { candidates: u128, cap: u64 },
    #[error("cannot parse graph literal: {0}")]
    Parse(String),
}

/// Where an edge lands.
///
/// The derived ordering puts every boundary vertex before every internal
/// vertex; canonical forms are minimal with respect to it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Target {
    /// Boundary vertex, 1-based.
    Boundary(usize),
    /// Internal vertex, 0-based index into the vertex list.
    Internal(usize),
}

impl Target {
    fn relabel(self, pos: &[usize]) -> Target {
        match self {
            Target::Internal(u) => Target::Internal(pos[u]),
            b => b,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Boundary(j) => write!(f, "b{j}"),
            Target::Internal(k) => write!(f, "v{}", k + 1),
        }
    }
}

/// A labeled admissible graph: `vertices[k] = [L-target, R-target]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    m: usize,
    vertices: Vec<[Target; 2]>,
}

impl Ord for LabeledGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m, self.vertices.len(), &self.vertices).cmp(&(
            other.m,
            other.vertices.len(),
            &other.vertices,
        ))
    }
}

impl PartialOrd for LabeledGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl LabeledGraph {
    pub fn new(m: usize, vertices: Vec<[Target; 2]>) -> Result<Self, GraphError> {
        let g = LabeledGraph { m, vertices };
        g.validate()?;
        Ok(g)
    }

    /// The edgeless graph on `m` boundary points.
    pub fn empty(m: usize) -> Self {
        assert!(m >= 1);
        LabeledGraph { m, vertices: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(m: usize, vertices: Vec<[Target; 2]>) -> Self {
        let g = LabeledGraph { m, vertices };
        debug_assert!(g.validate().is_ok(), "invalid graph {g:?}");
        g
    }

    fn validate(&self) -> Result<(), GraphError> {
        if self.m == 0 {
            return Err(GraphError::NoBoundary);
        }
        let n = self.vertices.len();
        for (k, pair) in self.vertices.iter().enumerate() {
            for t in pair {
                match *t {
                    Target::Boundary(j) if j == 0 || j > self.m => {
                        return Err(GraphError::BoundaryOutOfRange { vertex: k + 1, target: j, m: self.m })
                    }
                    Target::Internal(u) if u >= n => {
                        return Err(GraphError::InternalOutOfRange { vertex: k + 1, target: u + 1, n })
                    }
                    Target::Internal(u) if u == k => return Err(GraphError::SelfLoop { vertex: k + 1 }),
                    _ => {}
                }
            }
            if pair[0] == pair[1] {
                return Err(GraphError::DoubleEdge { vertex: k + 1 });
            }
        }
        Ok(())
    }

    /// Number of boundary vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of internal vertices.
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[[Target; 2]] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Target> + '_ {
        self.vertices.iter().flat_map(|p| p.iter().copied())
    }

    /// Incoming edge counts of the internal vertices.
    pub fn internal_in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for t in self.edges() {
            if let Target::Internal(u) = t {
                deg[u] += 1;
            }
        }
        deg
    }

    /// Number of edges landing on boundary vertex `j` (1-based).
    pub fn boundary_in_degree(&self, j: usize) -> usize {
        self.edges().filter(|&t| t == Target::Boundary(j)).count()
    }

    /// True if some edge lands on an internal vertex.
    pub fn has_internal_edge(&self) -> bool {
        self.edges().any(|t| matches!(t, Target::Internal(_)))
    }

    pub fn max_internal_in_degree(&self) -> usize {
        self.internal_in_degrees().into_iter().max().unwrap_or(0)
    }

    /// Lie degree `m - 1`.
    pub fn lie_degree(&self) -> i64 {
        self.m as i64 - 1
    }

    /// Swaps L and R at vertex `k`.
    pub fn flipped(&self, k: usize) -> LabeledGraph {
        let mut g = self.clone();
        g.vertices[k].swap(0, 1);
        g
    }

    /// Renames internal vertex `k` to `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> LabeledGraph {
        assert_eq!(perm.len(), self.n());
        let mut vertices = vec![[Target::Boundary(1); 2]; self.n()];
        for (k, pair) in self.vertices.iter().enumerate() {
            vertices[perm[k]] = [pair[0].relabel(perm), pair[1].relabel(perm)];
        }
        LabeledGraph { m: self.m, vertices }
    }
}

/// Orientation sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

/// An orientation class: a canonical graph with a sign, or zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SignedGraphClass {
    Zero,
    Class { graph: LabeledGraph, sign: Sign },
}

impl SignedGraphClass {
    pub fn is_zero(&self) -> bool {
        matches!(self, SignedGraphClass::Zero)
    }

    pub fn graph(&self) -> Option<&LabeledGraph> {
        match self {
            SignedGraphClass::Zero => None,
            SignedGraphClass::Class { graph, .. } => Some(graph),
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            SignedGraphClass::Zero => None,
            SignedGraphClass::Class { sign, .. } => Some(*sign),
        }
    }

    pub fn negated(&self) -> SignedGraphClass {
        self.times(Sign::Minus)
    }

    pub fn times(&self, s: Sign) -> SignedGraphClass {
        match self {
            SignedGraphClass::Zero => SignedGraphClass::Zero,
            SignedGraphClass::Class { graph, sign } => {
                SignedGraphClass::Class { graph: graph.clone(), sign: *sign * s }
            }
        }
    }

    pub fn merge_boundary(&self, i: usize) -> Result<SignedGraphClass, GraphError> {
        match self {
            SignedGraphClass::Zero => Ok(SignedGraphClass::Zero),
            SignedGraphClass::Class { graph, sign } => Ok(merge_boundary(graph, i)?.times(*sign)),
        }
    }

    pub fn transpose(&self) -> Result<SignedGraphClass, GraphError> {
        match self {
            SignedGraphClass::Zero => Err(GraphError::ZeroClass),
            SignedGraphClass::Class { graph, sign } => Ok(transpose(graph).times(*sign)),
        }
    }

    pub fn superpose(&self, other: &SignedGraphClass) -> Result<SignedGraphClass, GraphError> {
        match (self, other) {
            (
                SignedGraphClass::Class { graph: a, sign: sa },
                SignedGraphClass::Class { graph: b, sign: sb },
            ) => Ok(superpose(a, b)?.times(*sa * *sb)),
            _ => Ok(SignedGraphClass::Zero),
        }
    }
}

impl From<&LabeledGraph> for SignedGraphClass {
    fn from(g: &LabeledGraph) -> Self {
        canonicalize(g)
    }
}

// ---------------------------------------------------------------------------
// Canonical form

/// Colour refinement on internal vertices, invariant under relabeling and
/// L/R swaps. Returns a rank per vertex; equal ranks form the search cells.
fn refine_colors(g: &LabeledGraph) -> Vec<usize> {
    let n = g.n();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, pair) in g.vertices.iter().enumerate() {
        for t in pair {
            if let Target::Internal(u) = *t {
                preds[u].push(k);
            }
        }
    }
    let mut color = vec![0usize; n];
    let mut classes = 1;
    for _ in 0..=n {
        let sigs: Vec<Vec<usize>> = (0..n)
            .map(|v| {
                let mut out: Vec<(usize, usize)> = g.vertices[v]
                    .iter()
                    .map(|t| match *t {
                        Target::Boundary(j) => (0, j),
                        Target::Internal(u) => (1, color[u]),
                    })
                    .collect();
                out.sort_unstable();
                let mut inc: Vec<usize> = preds[v].iter().map(|&w| color[w]).collect();
                inc.sort_unstable();
                let mut sig = vec![color[v], out[0].0, out[0].1, out[1].0, out[1].1, inc.len()];
                sig.extend(inc);
                sig
            })
            .collect();
        let distinct: BTreeSet<&Vec<usize>> = sigs.iter().collect();
        let rank: BTreeMap<&Vec<usize>, usize> =
            distinct.iter().enumerate().map(|(r, s)| (*s, r)).collect();
        color = sigs.iter().map(|s| rank[s]).collect();
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    color
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

struct CanonSearch<'a> {
    g: &'a LabeledGraph,
    /// Per cell: the vertices, and the current arrangement of twin-group ids.
    cells: Vec<(Vec<Vec<usize>>, Vec<usize>)>,
    best: Option<Vec<[Target; 2]>>,
    best_odd: bool,
    conflict: bool,
}

impl CanonSearch<'_> {
    fn run(&mut self, cell: usize, order: &mut Vec<usize>) {
        if cell == self.cells.len() {
            self.evaluate(order);
            return;
        }
        let mut ids = self.cells[cell].1.clone();
        loop {
            let mut used = vec![0usize; self.cells[cell].0.len()];
            let base = order.len();
            for &id in &ids {
                order.push(self.cells[cell].0[id][used[id]]);
                used[id] += 1;
            }
            self.run(cell + 1, order);
            order.truncate(base);
            if !next_permutation(&mut ids) {
                break;
            }
        }
    }

    fn evaluate(&mut self, order: &[usize]) {
        let n = order.len();
        let mut pos = vec![0; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut odd = false;
        let mut enc = Vec::with_capacity(n);
        let mut state = match self.best {
            None => Ordering::Less,
            Some(_) => Ordering::Equal,
        };
        for (p, &v) in order.iter().enumerate() {
            let [a, b] = self.g.vertices[v];
            let (a, b) = (a.relabel(&pos), b.relabel(&pos));
            let pair = if a > b {
                odd = !odd;
                [b, a]
            } else {
                [a, b]
            };
            if state == Ordering::Equal {
                state = pair.cmp(&self.best.as_ref().unwrap()[p]);
                if state == Ordering::Greater {
                    return;
                }
            }
            enc.push(pair);
        }
        match state {
            Ordering::Less => {
                self.best = Some(enc);
                self.best_odd = odd;
                self.conflict = false;
            }
            Ordering::Equal => {
                if odd != self.best_odd {
                    self.conflict = true;
                }
            }
            Ordering::Greater => unreachable!(),
        }
    }
}

/// Canonical representative of the orientation class of `g`.
///
/// The representative minimizes the vertex-pair sequence (each pair sorted,
/// the sort contributing a flip) over all relabelings. The returned sign
/// relates `g` to the representative; `Zero` when the minimum is reachable
/// with both flip parities.
pub fn canonicalize(g: &LabeledGraph) -> SignedGraphClass {
    let n = g.n();
    if n == 0 {
        return SignedGraphClass::Class { graph: g.clone(), sign: Sign::Plus };
    }
    let color = refine_colors(g);
    let in_deg = g.internal_in_degrees();
    let ncolors = color.iter().max().unwrap() + 1;
    let mut cells = Vec::with_capacity(ncolors);
    for c in 0..ncolors {
        // Twins: in-degree-0 vertices with the same unordered targets. Swapping
        // two of them is a flip-even automorphism, so their order is fixed.
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut keys: Vec<Option<[Target; 2]>> = Vec::new();
        for v in (0..n).filter(|&v| color[v] == c) {
            let mut key = g.vertices[v];
            key.sort();
            let key = (in_deg[v] == 0).then_some(key);
            match keys.iter().position(|k| k.is_some() && *k == key) {
                Some(idx) => groups[idx].push(v),
                None => {
                    keys.push(key);
                    groups.push(vec![v]);
                }
            }
        }
        let mut ids: Vec<usize> = groups.iter().enumerate().flat_map(|(i, gr)| std::iter::repeat_n(i, gr.len())).collect();
        ids.sort_unstable();
        cells.push((groups, ids));
    }
    let mut search = CanonSearch { g, cells, best: None, best_odd: false, conflict: false };
    search.run(0, &mut Vec::with_capacity(n));
    if search.conflict {
        return SignedGraphClass::Zero;
    }
    SignedGraphClass::Class {
        graph: LabeledGraph { m: g.m, vertices: search.best.unwrap() },
        sign: Sign::from_parity(search.best_odd),
    }
}

// ---------------------------------------------------------------------------
// Enumeration

#[derive(Debug, Clone, Copy)]
pub struct EnumerateOptions {
    pub max_in_degree: Option<usize>,
    pub cap: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions { max_in_degree: None, cap: DEFAULT_ENUMERATION_CAP }
    }
}

/// Number of labeled candidates (one L/R orientation per vertex) visited
/// when enumerating `G_{n,m}`.
pub fn enumeration_candidates(n: usize, m: usize) -> u128 {
    let t = (m + n).saturating_sub(1) as u128;
    let pairs = t * t.saturating_sub(1) / 2;
    pairs.checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// Every nonzero orientation class of `G_{n,m}`, once, as canonical graphs
/// (sign +1), in ascending canonical order.
pub fn enumerate(n: usize, m: usize, opts: EnumerateOptions) -> Result<Vec<LabeledGraph>, GraphError> {
    if m == 0 {
        return Err(GraphError::NoBoundary);
    }
    let candidates = enumeration_candidates(n, m);
    if candidates > opts.cap as u128 {
        return Err(GraphError::ResourceCap { candidates, cap: opts.cap });
    }
    if n == 0 {
        return Ok(vec![LabeledGraph::empty(m)]);
    }
    // Sorted target pairs available to each vertex.
    let options: Vec<Vec<[Target; 2]>> = (0..n)
        .map(|k| {
            let ts: Vec<Target> = (1..=m)
                .map(Target::Boundary)
                .chain((0..n).filter(|&u| u != k).map(Target::Internal))
                .collect();
            let mut pairs = Vec::new();
            for a in 0..ts.len() {
                for b in a + 1..ts.len() {
                    pairs.push([ts[a], ts[b]]);
                }
            }
            pairs
        })
        .collect();
    if options[0].is_empty() {
        return Ok(Vec::new());
    }
    let mut found = BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let vertices: Vec<[Target; 2]> = (0..n).map(|k| options[k][idx[k]]).collect();
        let g = LabeledGraph { m, vertices };
        let keep = opts.max_in_degree.is_none_or(|d| g.max_internal_in_degree() <= d);
        if keep {
            if let SignedGraphClass::Class { graph, .. } = canonicalize(&g) {
                found.insert(graph);
            }
        }
        let mut k = 0;
        loop {
            if k == n {
                return Ok(found.into_iter().collect());
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Surgery

/// Merges boundary vertices `i` and `i + 1` (1-based), compacting the
/// boundary order. Zero when a vertex bridges the two merged points.
pub fn merge_boundary(g: &LabeledGraph, i: usize) -> Result<SignedGraphClass, GraphError> {
    if i == 0 || i + 1 > g.m {
        return Err(GraphError::IndexOutOfRange { index: i, m: g.m });
    }
    let map = |t: Target| match t {
        Target::Boundary(j) if j > i => Target::Boundary(j - 1),
        t => t,
    };
    let mut vertices = Vec::with_capacity(g.n());
    for pair in &g.vertices {
        let p = [map(pair[0]), map(pair[1])];
        if p[0] == p[1] {
            return Ok(SignedGraphClass::Zero);
        }
        vertices.push(p);
    }
    Ok(canonicalize(&LabeledGraph::from_parts_unchecked(g.m - 1, vertices)))
}

/// Reverses the boundary order: `b_k -> b_{m+1-k}`.
pub fn transpose(g: &LabeledGraph) -> SignedGraphClass {
    let m = g.m;
    let map = |t: Target| match t {
        Target::Boundary(j) => Target::Boundary(m + 1 - j),
        t => t,
    };
    let vertices = g.vertices.iter().map(|p| [map(p[0]), map(p[1])]).collect();
    canonicalize(&LabeledGraph::from_parts_unchecked(m, vertices))
}

/// Disjoint union of internal vertices over a shared boundary.
pub fn superpose(a: &LabeledGraph, b: &LabeledGraph) -> Result<SignedGraphClass, GraphError> {
    if a.m != b.m {
        return Err(GraphError::ArityMismatch { left: a.m, right: b.m });
    }
    let off = a.n();
    let shift = |t: Target| match t {
        Target::Internal(u) => Target::Internal(u + off),
        t => t,
    };
    let vertices = a
        .vertices
        .iter()
        .copied()
        .chain(b.vertices.iter().map(|p| [shift(p[0]), shift(p[1])]))
        .collect();
    Ok(canonicalize(&LabeledGraph::from_parts_unchecked(a.m, vertices)))
}

// ---------------------------------------------------------------------------
// Named graphs

fn bnd(j: usize) -> Target {
    Target::Boundary(j)
}

fn int(k: usize) -> Target {
    Target::Internal(k)
}

fn named(m: usize, vertices: Vec<[Target; 2]>) -> LabeledGraph {
    LabeledGraph::from_parts_unchecked(m, vertices)
}

/// The product: two boundary points, no vertices.
pub fn b0() -> LabeledGraph {
    LabeledGraph::empty(2)
}

/// The Poisson bracket wedge `v -> (b1, b2)`.
pub fn b1() -> LabeledGraph {
    wedges(1)
}

/// `b1^n`: `n` wedges over the two boundary points.
pub fn wedges(n: usize) -> LabeledGraph {
    named(2, vec![[bnd(1), bnd(2)]; n])
}

/// Wedge over boundary pair (2, 3) in `G_{1,3}`.
pub fn gamma1() -> LabeledGraph {
    named(3, vec![[bnd(2), bnd(3)]])
}

/// Wedge over boundary pair (1, 3) in `G_{1,3}`.
pub fn gamma2() -> LabeledGraph {
    named(3, vec![[bnd(1), bnd(3)]])
}

/// Wedge over boundary pair (1, 2) in `G_{1,3}`.
pub fn gamma3() -> LabeledGraph {
    named(3, vec![[bnd(1), bnd(2)]])
}

/// `Γ1^r Γ2^s Γ3^t` as a single graph (no factorial normalization).
pub fn wedge_monomial(r: usize, s: usize, t: usize) -> LabeledGraph {
    let mut v = vec![[bnd(2), bnd(3)]; r];
    v.extend(std::iter::repeat_n([bnd(1), bnd(3)], s));
    v.extend(std::iter::repeat_n([bnd(1), bnd(2)], t));
    named(3, v)
}

/// `v -> (w, b3)`, `w -> (b1, b2)`.
pub fn t2r() -> LabeledGraph {
    named(3, vec![[int(1), bnd(3)], [bnd(1), bnd(2)]])
}

/// `v -> (b1, w)`, `w -> (b2, b3)`.
pub fn t2l() -> LabeledGraph {
    named(3, vec![[bnd(1), int(1)], [bnd(2), bnd(3)]])
}

/// Right-hand side of the Jacobi graph relation: `u -> (b1, b3)`, `v -> (u, b2)`.
pub fn c2() -> LabeledGraph {
    named(3, vec![[bnd(1), bnd(3)], [int(0), bnd(2)]])
}

/// `A -> (b1, b3)`, `B -> (b1, b2)`.
pub fn c2l() -> LabeledGraph {
    named(3, vec![[bnd(1), bnd(3)], [bnd(1), bnd(2)]])
}

/// `A -> (b1, b3)`, `B -> (b2, b3)`.
pub fn c2r() -> LabeledGraph {
    named(3, vec![[bnd(1), bnd(3)], [bnd(2), bnd(3)]])
}

// ---------------------------------------------------------------------------
// Text literal: G{m=2; v1=(b1,b2)}

impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{{m={}", self.m)?;
        for (k, [l, r]) in self.vertices.iter().enumerate() {
            write!(f, "; v{}=({l},{r})", k + 1)?;
        }
        write!(f, "}}")
    }
}

fn parse_target(s: &str) -> Result<Target, GraphError> {
    let s = s.trim();
    let bad = || GraphError::Parse(format!("bad target `{s}`"));
    let (kind, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
    let k: usize = num.parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    match kind {
        "b" => Ok(Target::Boundary(k)),
        "v" => Ok(Target::Internal(k - 1)),
        _ => Err(bad()),
    }
}

impl FromStr for LabeledGraph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| GraphError::Parse(format!("{msg} in `{s}`"));
        let body = s
            .trim()
            .strip_prefix("G{")
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| err("expected G{...}"))?;
        let mut items = body.split(';').map(str::trim).filter(|x| !x.is_empty());
        let m: usize = items
            .next()
            .and_then(|x| x.strip_prefix("m="))
            .and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| err("expected m=<int>"))?;
        let mut slots: BTreeMap<usize, [Target; 2]> = BTreeMap::new();
        for item in items {
            let (name, rhs) = item.split_once('=').ok_or_else(|| err("expected v<k>=(...)"))?;
            let k: usize = name
                .trim()
                .strip_prefix('v')
                .and_then(|x| x.parse().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| err("bad vertex name"))?;
            let inner = rhs
                .trim()
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| err("expected (L,R)"))?;
            let (l, r) = inner.split_once(',').ok_or_else(|| err("expected (L,R)"))?;
            if slots.insert(k - 1, [parse_target(l)?, parse_target(r)?]).is_some() {
                return Err(err("repeated vertex"));
            }
        }
        if slots.keys().enumerate().any(|(i, &k)| i != k) {
            return Err(err("vertices must be v1..vn"));
        }
        LabeledGraph::new(m, slots.into_values().collect())
    }
}
