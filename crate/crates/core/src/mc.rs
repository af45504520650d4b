//! Maurer–Cartan iteration for star-product series.
//!
//! Starting from `m0 = b0` and `m1 = b1`, each order is obtained as
//! `m_n = P(σ(D_n))` with `D_n = -½ Σ_{j+k=n, j,k≥1} [m_j, m_k]` and `P` one
//! of the Poisson-kernel projections. The associativity defect of the
//! series at order `n` is `Σ_{i+j=n} [m_i, m_j]`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{self, bracket, differential, sigma, AlgebraError, GraphVector, JsonTerm, SigmaNorm};
use crate::graphs;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("order {requested} needs coefficients up to m_{needed}, series stops at m_{available}")]
    MissingOrder { requested: usize, needed: usize, available: usize },
    #[error("order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },
    #[error("m_{0} does not have the expected shape (n internal vertices, two boundary points)")]
    BadCoefficient(usize),
}

/// Which Poisson kernel is quotiented out after each contraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Projection {
    #[default]
    None,
    Constant,
    Linear,
}

impl Projection {
    pub fn apply<S: Scalar>(self, v: &GraphVector<S>) -> GraphVector<S> {
        match self {
            Projection::None => v.clone(),
            Projection::Constant => algebra::project_constant(v),
            Projection::Linear => algebra::project_linear(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SolveOptions {
    pub projection: Projection,
    pub sigma_norm: SigmaNorm,
}

/// Truncated series `m_0 + ħ m_1 + ... + ħ^N m_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSeries<S> {
    coeffs: Vec<GraphVector<S>>,
    options: SolveOptions,
}

impl<S: Scalar> StarSeries<S> {
    /// `b0 + ħ b1`.
    pub fn initial(options: SolveOptions) -> Self {
        StarSeries {
            coeffs: vec![GraphVector::from_graph(&graphs::b0()), GraphVector::from_graph(&graphs::b1())],
            options,
        }
    }

    /// Wraps given coefficients; `m_0`, `m_1` must be `b0`, `b1` and every
    /// `m_n` must live in `G_{n,2}`.
    pub fn from_coeffs(coeffs: Vec<GraphVector<S>>, options: SolveOptions) -> Result<Self, McError> {
        let init = Self::initial(options);
        for (n, c) in coeffs.iter().enumerate() {
            let ok = match n {
                0 | 1 => *c == init.coeffs[n],
                _ => c.terms().all(|(g, _)| g.n() == n && g.m() == 2),
            };
            if !ok {
                return Err(McError::BadCoefficient(n));
            }
        }
        if coeffs.len() < 2 {
            return Err(McError::OrderTooSmall { min: 1, got: coeffs.len().saturating_sub(1) });
        }
        Ok(StarSeries { coeffs, options })
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> Option<&GraphVector<S>> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[GraphVector<S>] {
        &self.coeffs
    }

    pub fn options(&self) -> SolveOptions {
        self.options
    }

    fn need(&self, requested: usize, needed: usize) -> Result<(), McError> {
        if needed > self.order() {
            Err(McError::MissingOrder { requested, needed, available: self.order() })
        } else {
            Ok(())
        }
    }
}

/// `D_n = -½ Σ_{j+k=n, j,k≥1} [m_j, m_k]`; zero for `n ≤ 1`.
pub fn d_term<S: Scalar>(s: &StarSeries<S>, n: usize) -> Result<GraphVector<S>, McError> {
    if n <= 1 {
        return Ok(GraphVector::zero());
    }
    s.need(n, n - 1)?;
    // odd elements: [m_j, m_k] = [m_k, m_j], so pairs j < k count twice
    let mut out = GraphVector::zero();
    for j in 1..=n / 2 {
        let k = n - j;
        let b = bracket(&s.coeffs[j], &s.coeffs[k])?;
        let w = if j == k { S::ratio(-1, 2) } else { -S::one() };
        out.add_scaled(&b, &w);
    }
    Ok(out)
}

/// Solves through order `n_max` with `m_n = P(σ(D_n))`.
pub fn solve<S: Scalar>(n_max: usize, options: SolveOptions) -> Result<StarSeries<S>, McError> {
    if n_max == 0 {
        return Err(McError::OrderTooSmall { min: 1, got: 0 });
    }
    let mut s = StarSeries::initial(options);
    for n in 2..=n_max {
        let d = d_term(&s, n)?;
        debug_assert!(d.terms().all(|(g, _)| g.n() == n), "D_{n} leaves the ħ-grading");
        let m = options.projection.apply(&sigma(&d, options.sigma_norm)?);
        if m.terms().any(|(g, _)| g.n() != n || g.m() != 2) {
            return Err(McError::BadCoefficient(n));
        }
        s.coeffs.push(m);
    }
    Ok(s)
}

/// `P(∂m_n - D_n)`.
pub fn residual<S: Scalar>(s: &StarSeries<S>, n: usize) -> Result<GraphVector<S>, McError> {
    s.need(n, n)?;
    let r = &differential(&s.coeffs[n])? - &d_term(s, n)?;
    Ok(s.options.projection.apply(&r))
}

/// `[⋆,⋆]_n = Σ_{i+j=n, i,j≥0} [m_i, m_j]`, unprojected.
pub fn defect<S: Scalar>(s: &StarSeries<S>, n: usize) -> Result<GraphVector<S>, McError> {
    s.need(n, n)?;
    let mut out = GraphVector::zero();
    for i in 0..=n {
        out.add_scaled(&bracket(&s.coeffs[i], &s.coeffs[n - i])?, &S::one());
    }
    Ok(out)
}

/// Whether `[⋆,⋆]_n = 2(∂m_n - D_n)` holds exactly (no projection).
pub fn lemma1_identity<S: Scalar>(s: &StarSeries<S>, n: usize) -> Result<bool, McError> {
    let lhs = defect(s, n)?;
    let rhs = (&differential(&s.coeffs[n])? - &d_term(s, n)?).scaled(&S::from_int(2));
    Ok((&lhs - &rhs).is_zero())
}

/// `P(∂D_{n+1})`; zero whenever the lower orders are associative.
pub fn cocycle_check<S: Scalar>(s: &StarSeries<S>, n: usize) -> Result<GraphVector<S>, McError> {
    let d = d_term(s, n + 1)?;
    Ok(s.options.projection.apply(&differential(&d)?))
}

/// `P(∂σD_n + σ∂D_n - D_n)` on the realized cocycle `D_n`, `n ≥ 2`.
pub fn contraction_residual<S: Scalar>(s: &StarSeries<S>, n: usize) -> Result<GraphVector<S>, McError> {
    if n < 2 {
        return Err(McError::OrderTooSmall { min: 2, got: n });
    }
    let norm = s.options.sigma_norm;
    let d = d_term(s, n)?;
    let a = differential(&sigma(&d, norm)?)?;
    let b = sigma(&differential(&d)?, norm)?;
    Ok(s.options.projection.apply(&(&(&a + &b) - &d)))
}

/// `t^{k-1}(b1)` with `t(v) = P(σ([b1, v]))`.
pub fn hat_iteration<S: Scalar>(k: usize, options: SolveOptions) -> Result<GraphVector<S>, McError> {
    if k == 0 {
        return Err(McError::OrderTooSmall { min: 1, got: 0 });
    }
    let b1 = GraphVector::from_graph(&graphs::b1());
    let mut v = b1.clone();
    for _ in 1..k {
        v = options.projection.apply(&sigma(&bracket(&b1, &v)?, options.sigma_norm)?);
    }
    Ok(v)
}

/// Per-order summary of a solved series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub n: usize,
    pub m_n: Vec<JsonTerm>,
    /// Number of terms surviving the projection in `[⋆,⋆]_n`.
    pub defect_norm: usize,
    pub residual: Vec<JsonTerm>,
    pub lemma1_identity: bool,
}

pub fn report<S: Scalar>(s: &StarSeries<S>, n: usize) -> Result<OrderReport, McError> {
    let d = s.options.projection.apply(&defect(s, n)?);
    Ok(OrderReport {
        n,
        m_n: s.coeffs[n].to_json_terms(),
        defect_norm: d.len(),
        residual: residual(s, n)?.to_json_terms(),
        lemma1_identity: lemma1_identity(s, n)?,
    })
}
