//! Graphs as polydifferential operators on polynomials.
//!
//! Each internal vertex carries a copy of the Poisson tensor `α^{ij}`; its
//! L edge carries the index `i`, its R edge the index `j`, and every edge
//! acts as `∂_index` on whatever it lands on. Boundary vertex `s` holds the
//! `s`-th argument.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::GraphVector;
use crate::graphs::{LabeledGraph, Target};
use crate::mc::StarSeries;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KontsevichError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("graph has {m} boundary points but {got} arguments were given")]
    ArityMismatch { m: usize, got: usize },
    #[error("Poisson tensor is not antisymmetric at ({i},{j})")]
    NotAntisymmetric { i: usize, j: usize },
    #[error("linear Poisson structure violates the Jacobi identity at ({i},{j},{k})")]
    JacobiViolated { i: usize, j: usize, k: usize },
    #[error("series truncated at order {available}, order {requested} requested")]
    SeriesTooShort { requested: usize, available: usize },
    #[error("cannot parse: {0}")]
    Parse(String),
}

/// Multivariate polynomial in `x1..xd`, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<S> {
    dim: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: S) -> Self {
        Self::monomial(dim, vec![0; dim], c)
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, S::one())
    }

    /// `x_{k+1}` (0-based `k`).
    pub fn var(dim: usize, k: usize) -> Self {
        let mut e = vec![0; dim];
        e[k] = 1;
        Self::monomial(dim, e, S::one())
    }

    pub fn monomial(dim: usize, exponents: Vec<u32>, c: S) -> Self {
        assert_eq!(exponents.len(), dim);
        let mut p = Self::zero(dim);
        p.add_term(exponents, c);
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: S) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &S)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_scaled(other, &S::one());
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.add_scaled(other, &-S::one());
        p
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        debug_assert_eq!(self.dim, other.dim);
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v.clone() * c.clone());
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut p = Self::zero(self.dim);
        p.add_scaled(self, c);
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let mut p = Self::zero(self.dim);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                p.add_term(e, a.clone() * b.clone());
            }
        }
        p
    }

    /// `∂/∂x_{k+1}`.
    pub fn derivative(&self, k: usize) -> Self {
        let mut p = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut f = e.clone();
                f[k] -= 1;
                p.add_term(f, c.clone() * S::from_int(e[k] as i64));
            }
        }
        p
    }

    /// Parses `3/2*x1^2*x3 - x2`.
    pub fn parse(s: &str, dim: usize) -> Result<Self, KontsevichError> {
        let bad = |m: &str| KontsevichError::Parse(format!("{m} in polynomial `{s}`"));
        let mut p = Self::zero(dim);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        // split on top-level +/-
        let mut pieces = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let mut coeff = S::one();
            let mut e = vec![0u32; dim];
            for factor in body.split('*') {
                if let Some(v) = factor.strip_prefix('x') {
                    let (idx, pow) = match v.split_once('^') {
                        Some((a, b)) => (a, b.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                        None => (v, 1),
                    };
                    let k: usize = idx.parse().map_err(|_| bad("bad variable"))?;
                    if k == 0 || k > dim {
                        return Err(bad("variable out of range"));
                    }
                    e[k - 1] += pow;
                } else {
                    coeff = coeff * S::parse_literal(factor).ok_or_else(|| bad("bad coefficient"))?;
                }
            }
            p.add_term(e, if neg { -coeff } else { coeff });
        }
        Ok(p)
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.iter().sum::<u32>().cmp(&a.0.iter().sum::<u32>()).then(b.0.cmp(a.0)));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| if p == 1 { format!("x{}", k + 1) } else { format!("x{}^{p}", k + 1) })
                .collect();
            match (mag == "1", vars.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{}", vars.join("*"))?,
                (false, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// All monomials in `dim` variables of total degree at most `max_degree`.
pub fn monomial_corpus<S: Scalar>(dim: usize, max_degree: u32) -> Vec<Poly<S>> {
    fn rec(dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == dim {
            out.push(cur.clone());
            return;
        }
        for p in 0..=left {
            cur.push(p);
            rec(dim, left - p, cur, out);
            cur.pop();
        }
    }
    let mut exps = Vec::new();
    rec(dim, max_degree, &mut Vec::new(), &mut exps);
    exps.into_iter().map(|e| Poly::monomial(dim, e, S::one())).collect()
}

// ---------------------------------------------------------------------------
// Poisson structures

#[derive(Debug, Clone, PartialEq)]
pub enum PoissonKind<S> {
    /// `α^{ij}` constant.
    Constant(Vec<Vec<S>>),
    /// `α^{ij}(x) = Σ_k c[i][j][k] x_k`.
    Linear(Vec<Vec<Vec<S>>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PoissonStructure<S> {
    dim: usize,
    kind: PoissonKind<S>,
    entries: Vec<Vec<Poly<S>>>,
}

impl<S: Scalar> PoissonStructure<S> {
    pub fn constant(alpha: Vec<Vec<S>>) -> Result<Self, KontsevichError> {
        let d = alpha.len();
        for (i, row) in alpha.iter().enumerate() {
            if row.len() != d {
                return Err(KontsevichError::DimensionMismatch { expected: d, got: row.len() });
            }
            for j in 0..d {
                if alpha[i][j].clone() + alpha[j][i].clone() != S::zero() {
                    return Err(KontsevichError::NotAntisymmetric { i: i + 1, j: j + 1 });
                }
            }
        }
        let entries = alpha.iter().map(|row| row.iter().map(|c| Poly::constant(d, c.clone())).collect()).collect();
        Ok(PoissonStructure { dim: d, kind: PoissonKind::Constant(alpha), entries })
    }

    /// `c[i][j][k]` is the coefficient of `x_k` in `α^{ij}`.
    pub fn linear(c: Vec<Vec<Vec<S>>>) -> Result<Self, KontsevichError> {
        let d = c.len();
        for i in 0..d {
            if c[i].len() != d || c[i].iter().any(|v| v.len() != d) {
                return Err(KontsevichError::DimensionMismatch { expected: d, got: c[i].len() });
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if c[i][j][k].clone() + c[j][i][k].clone() != S::zero() {
                        return Err(KontsevichError::NotAntisymmetric { i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        // Σ_l (c^{il}_p c^{jk}_l + c^{jl}_p c^{ki}_l + c^{kl}_p c^{ij}_l) = 0 for every p
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for p in 0..d {
                        let mut sum = S::zero();
                        for l in 0..d {
                            sum = sum
                                + c[i][l][p].clone() * c[j][k][l].clone()
                                + c[j][l][p].clone() * c[k][i][l].clone()
                                + c[k][l][p].clone() * c[i][j][l].clone();
                        }
                        if !sum.is_zero() {
                            return Err(KontsevichError::JacobiViolated { i: i + 1, j: j + 1, k: k + 1 });
                        }
                    }
                }
            }
        }
        let entries = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut p = Poly::zero(d);
                        for k in 0..d {
                            p.add_scaled(&Poly::var(d, k), &c[i][j][k]);
                        }
                        p
                    })
                    .collect()
            })
            .collect();
        Ok(PoissonStructure { dim: d, kind: PoissonKind::Linear(c), entries })
    }

    /// Standard symplectic form on `R^{2k}`: `α^{2l-1, 2l} = 1`.
    pub fn symplectic(dim: usize) -> Self {
        assert!(dim.is_multiple_of(2));
        let mut a = vec![vec![S::zero(); dim]; dim];
        for l in (0..dim).step_by(2) {
            a[l][l + 1] = S::one();
            a[l + 1][l] = -S::one();
        }
        Self::constant(a).expect("symplectic form is antisymmetric")
    }

    /// `so(3)^*`: `c^{ij}_k = ε_{ijk}`.
    pub fn so3() -> Self {
        let mut c = vec![vec![vec![S::zero(); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[i][j][k] = S::one();
            c[j][i][k] = -S::one();
        }
        Self::linear(c).expect("so(3) is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &PoissonKind<S> {
        &self.kind
    }

    /// `α^{ij}` (0-based) as a polynomial.
    pub fn entry(&self, i: usize, j: usize) -> &Poly<S> {
        &self.entries[i][j]
    }
}

/// On-disk form of a Poisson structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonFile {
    pub d: usize,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<LinearEntry>>,
}

/// One nonzero `c^{ij}_k` (1-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub val: String,
}

impl<S: Scalar> PoissonStructure<S> {
    pub fn from_json(text: &str) -> Result<Self, KontsevichError> {
        let file: PoissonFile = serde_json::from_str(text).map_err(|e| KontsevichError::Parse(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &PoissonFile) -> Result<Self, KontsevichError> {
        let d = file.d;
        let num = |s: &str| S::parse_literal(s).ok_or_else(|| KontsevichError::Parse(format!("bad number `{s}`")));
        match file.kind.as_str() {
            "constant" => {
                let rows = file.alpha.as_ref().ok_or_else(|| KontsevichError::Parse("missing `alpha`".into()))?;
                if rows.len() != d {
                    return Err(KontsevichError::DimensionMismatch { expected: d, got: rows.len() });
                }
                let alpha = rows.iter().map(|r| r.iter().map(|x| num(x)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>()?;
                Self::constant(alpha)
            }
            "linear" => {
                let list = file.c.as_ref().ok_or_else(|| KontsevichError::Parse("missing `c`".into()))?;
                let mut c = vec![vec![vec![S::zero(); d]; d]; d];
                for e in list {
                    if [e.i, e.j, e.k].iter().any(|&x| x == 0 || x > d) {
                        return Err(KontsevichError::Parse(format!("index out of range in {e:?}")));
                    }
                    c[e.i - 1][e.j - 1][e.k - 1] = num(&e.val)?;
                }
                Self::linear(c)
            }
            other => Err(KontsevichError::Parse(format!("unknown kind `{other}`"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Evaluation

struct Evaluator<'a, S> {
    g: &'a LabeledGraph,
    alpha: &'a PoissonStructure<S>,
    /// Current (partially differentiated) argument at each boundary vertex.
    boundary: Vec<Poly<S>>,
    /// Current differentiated tensor entry at each assigned internal vertex.
    internal: Vec<Option<Poly<S>>>,
    /// Derivative indices already applied to unassigned internal vertices.
    pending: Vec<Vec<usize>>,
    total: Poly<S>,
}

impl<S: Scalar> Evaluator<'_, S> {
    fn apply(&mut self, target: Target, index: usize) -> bool {
        match target {
            Target::Boundary(s) => {
                let p = self.boundary[s - 1].derivative(index);
                let alive = !p.is_zero();
                self.boundary[s - 1] = p;
                alive
            }
            Target::Internal(u) => match &self.internal[u] {
                Some(p) => {
                    let p = p.derivative(index);
                    let alive = !p.is_zero();
                    self.internal[u] = Some(p);
                    alive
                }
                None => {
                    self.pending[u].push(index);
                    true
                }
            },
        }
    }

    fn run(&mut self, k: usize) {
        if k == self.g.n() {
            let mut prod = self.boundary[0].clone();
            for p in self.boundary[1..].iter().chain(self.internal.iter().flatten()) {
                prod = prod.mul(p);
                if prod.is_zero() {
                    return;
                }
            }
            self.total = self.total.add(&prod);
            return;
        }
        let d = self.alpha.dim();
        let [lt, rt] = self.g.vertices()[k];
        for i in 0..d {
            for j in 0..d {
                let mut own = self.alpha.entry(i, j).clone();
                for &idx in &self.pending[k] {
                    own = own.derivative(idx);
                }
                if own.is_zero() {
                    continue;
                }
                let saved_b = self.boundary.clone();
                let saved_i = self.internal.clone();
                let saved_p = self.pending.clone();
                self.internal[k] = Some(own);
                if self.apply(lt, i) && self.apply(rt, j) {
                    self.run(k + 1);
                }
                self.boundary = saved_b;
                self.internal = saved_i;
                self.pending = saved_p;
            }
        }
    }
}

/// The polydifferential operator of `g` applied to `args`.
pub fn evaluate<S: Scalar>(g: &LabeledGraph, alpha: &PoissonStructure<S>, args: &[Poly<S>]) -> Result<Poly<S>, KontsevichError> {
    if args.len() != g.m() {
        return Err(KontsevichError::ArityMismatch { m: g.m(), got: args.len() });
    }
    if let Some(bad) = args.iter().find(|p| p.dim() != alpha.dim()) {
        return Err(KontsevichError::DimensionMismatch { expected: alpha.dim(), got: bad.dim() });
    }
    let mut ev = Evaluator {
        g,
        alpha,
        boundary: args.to_vec(),
        internal: vec![None; g.n()],
        pending: vec![Vec::new(); g.n()],
        total: Poly::zero(alpha.dim()),
    };
    if args.iter().any(Poly::is_zero) {
        return Ok(ev.total);
    }
    ev.run(0);
    Ok(ev.total)
}

/// Linear extension of [`evaluate`] to graph vectors.
pub fn evaluate_vector<S: Scalar>(v: &GraphVector<S>, alpha: &PoissonStructure<S>, args: &[Poly<S>]) -> Result<Poly<S>, KontsevichError> {
    let mut out = Poly::zero(alpha.dim());
    for (g, c) in v.terms() {
        out.add_scaled(&evaluate(g, alpha, args)?, c);
    }
    Ok(out)
}

/// `u ⋆ v` as coefficients of `ħ^0..ħ^N`.
pub fn star<S: Scalar>(s: &StarSeries<S>, alpha: &PoissonStructure<S>, u: &Poly<S>, v: &Poly<S>) -> Result<Vec<Poly<S>>, KontsevichError> {
    s.coeffs().iter().map(|m| evaluate_vector(m, alpha, &[u.clone(), v.clone()])).collect()
}

/// Star product of two truncated series, truncated at `ħ^N`.
fn star_series<S: Scalar>(s: &StarSeries<S>, alpha: &PoissonStructure<S>, a: &[Poly<S>], b: &[Poly<S>], n_max: usize) -> Result<Vec<Poly<S>>, KontsevichError> {
    let mut out = vec![Poly::zero(alpha.dim()); n_max + 1];
    for (p, ap) in a.iter().enumerate().take(n_max + 1) {
        for (q, bq) in b.iter().enumerate().take(n_max + 1 - p) {
            if ap.is_zero() || bq.is_zero() {
                continue;
            }
            for (r, m) in s.coeffs().iter().enumerate().take(n_max + 1 - p - q) {
                let e = evaluate_vector(m, alpha, &[ap.clone(), bq.clone()])?;
                out[p + q + r] = out[p + q + r].add(&e);
            }
        }
    }
    Ok(out)
}

/// `(u⋆v)⋆w - u⋆(v⋆w)` through `ħ^N`.
pub fn associativity_defect<S: Scalar>(
    s: &StarSeries<S>,
    alpha: &PoissonStructure<S>,
    u: &Poly<S>,
    v: &Poly<S>,
    w: &Poly<S>,
    n_max: usize,
) -> Result<Vec<Poly<S>>, KontsevichError> {
    if n_max > s.order() {
        return Err(KontsevichError::SeriesTooShort { requested: n_max, available: s.order() });
    }
    let one = |p: &Poly<S>| vec![p.clone()];
    let uv = star_series(s, alpha, &one(u), &one(v), n_max)?;
    let vw = star_series(s, alpha, &one(v), &one(w), n_max)?;
    let left = star_series(s, alpha, &uv, &one(w), n_max)?;
    let right = star_series(s, alpha, &one(u), &vw, n_max)?;
    Ok(left.iter().zip(&right).map(|(l, r)| l.sub(r)).collect())
}
