//! Built-in invariant checks for `graphdef selftest`.

use graph_deform::algebra::{
    antipode, basis_b, bracket, compose, delta_sum_check, differential, expand_wedge_basis, four_case_rule,
    project_constant, sigma, AntipodeSign, SigmaNorm, WedgeExpansion,
};
use graph_deform::graphs::{self, b1, c2, c2l, c2r, enumerate, t2l, t2r, EnumerateOptions, LabeledGraph};
use graph_deform::kontsevich::{evaluate, evaluate_vector, monomial_corpus};
use graph_deform::mc::{lemma1_identity, solve, Projection, SolveOptions};
use graph_deform::{GraphVectorQ, PoissonQ, Rational};
use num_traits::One;
use serde::Serialize;

use crate::Failure;

type V = GraphVectorQ;

pub const CHECKS: &[&str] = &[
    "d2",
    "moyal",
    "differential-square",
    "sigma-square",
    "antipode",
    "structure-constants",
    "delta-sum",
    "defect-identity",
    "simplicial",
    "kontsevich-kernel",
];

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

pub struct Settings {
    pub n: Option<usize>,
    pub sigma_norm: SigmaNorm,
    pub antipode_sign: AntipodeSign,
    pub cap: u64,
}

type Outcome = Result<Result<String, String>, Failure>;

fn v(g: &LabeledGraph) -> V {
    V::from_graph(g)
}

fn q(p: i64) -> Rational {
    Rational::from_integer(p.into())
}

fn classes(n: usize, m: usize, cap: u64) -> Result<Vec<LabeledGraph>, Failure> {
    if n > 0 && m + n < 3 {
        return Ok(Vec::new());
    }
    Ok(enumerate(n, m, EnumerateOptions { max_in_degree: None, cap })?)
}

fn d2() -> Outcome {
    let got = compose(&v(&b1()), &v(&b1()))?;
    let want = V::from_terms([(q(1), &t2r()), (q(-1), &t2l()), (q(1), &c2l()), (q(-1), &c2r())]);
    Ok(if got == want { Ok("b1∘b1 = t2R - t2L + c2L - c2R".into()) } else { Err(format!("b1∘b1 = {got}")) })
}

fn moyal(s: &Settings) -> Outcome {
    let order = s.n.unwrap_or(4).max(2);
    let series = solve::<Rational>(order, SolveOptions { projection: Projection::Constant, sigma_norm: s.sigma_norm })?;
    for n in 2..=order {
        let e = expand_wedge_basis(series.coeff(n).expect("solved order"))?;
        if e != WedgeExpansion::Binary([(n, Rational::one())].into_iter().collect()) {
            return Ok(Err(format!("m_{n} = {} is not B_{n}", series.coeff(n).unwrap())));
        }
    }
    Ok(Ok(format!("m_n = B_n for 2 ≤ n ≤ {order}")))
}

fn differential_square(s: &Settings) -> Outcome {
    let n_max = s.n.unwrap_or(3);
    let mut count = 0;
    for n in 0..=n_max {
        for m in 1..=3 {
            for g in classes(n, m, s.cap)? {
                let dd = differential(&differential(&v(&g))?)?;
                if !dd.is_zero() {
                    return Ok(Err(format!("∂²({g}) = {dd}")));
                }
                count += 1;
            }
        }
    }
    Ok(Ok(format!("{count} classes, n ≤ {n_max}, m ≤ 3")))
}

fn sigma_square(s: &Settings) -> Outcome {
    let n_max = s.n.unwrap_or(3);
    let mut count = 0;
    for n in 2..=n_max {
        for m in 1..=5 {
            for g in classes(n, m, s.cap)? {
                let ss = sigma(&sigma(&v(&g), s.sigma_norm)?, s.sigma_norm)?;
                if !ss.is_zero() {
                    return Ok(Err(format!("σ²({g}) = {ss}")));
                }
                count += 1;
            }
        }
    }
    Ok(Ok(format!("{count} classes, 2 ≤ n ≤ {n_max}, m ≤ 5")))
}

fn antipode_check(s: &Settings) -> Outcome {
    let ap = |x: &V| antipode(x, s.antipode_sign);
    if ap(&v(&b1())) != v(&b1()) {
        return Ok(Err(format!("S(b1) = {}", ap(&v(&b1())))));
    }
    let n_max = s.n.unwrap_or(2);
    let mut basis = Vec::new();
    for n in 0..=n_max {
        basis.extend(classes(n, 2, s.cap)?);
    }
    for f in &basis {
        if ap(&ap(&v(f))) != v(f) {
            return Ok(Err(format!("S² ≠ 1 on {f}")));
        }
        for g in &basis {
            if ap(&compose(&v(f), &v(g))?) != compose(&ap(&v(f)), &ap(&v(g)))? {
                return Ok(Err(format!("S(f∘g) ≠ S(f)∘S(g) for f = {f}, g = {g}")));
            }
        }
    }
    Ok(Ok(format!("{} pairs from G_(≤{n_max},2)", basis.len() * basis.len())))
}

fn structure_constants(s: &Settings) -> Outcome {
    let total = s.n.unwrap_or(5);
    for i in 1..total {
        for j in 1..=total - i {
            let br = project_constant(&bracket(&basis_b::<Rational>(i), &basis_b(j))?);
            let got = match expand_wedge_basis(&br)? {
                WedgeExpansion::Ternary(map) => map,
                WedgeExpansion::Binary(map) if map.is_empty() => Default::default(),
                other => return Ok(Err(format!("[B_{i}, B_{j}] left the ternary span: {other:?}"))),
            };
            let want: std::collections::BTreeMap<_, _> = four_case_rule(i, j).into_iter().map(|(k, c)| (k, q(c))).collect();
            if got != want {
                return Ok(Err(format!("[B_{i}, B_{j}] = {got:?}, rule gives {want:?}")));
            }
        }
    }
    Ok(Ok(format!("[B_i, B_j] for i + j ≤ {total}")))
}

fn delta_sum(s: &Settings) -> Outcome {
    let n_max = s.n.unwrap_or(20);
    Ok(match (0..=n_max).find(|&n| !delta_sum_check(n)) {
        None => Ok(format!("Σ δ(i,j) = 0 for n ≤ {n_max}")),
        Some(n) => Err(format!("Σ δ(i,j) ≠ 0 for n = {n}")),
    })
}

fn defect_identity(s: &Settings) -> Outcome {
    let order = s.n.unwrap_or(4);
    for projection in [Projection::None, Projection::Constant, Projection::Linear] {
        let series = solve::<Rational>(order, SolveOptions { projection, sigma_norm: s.sigma_norm })?;
        for n in 0..=order {
            if !lemma1_identity(&series, n)? {
                return Ok(Err(format!("fails at n = {n} with projection {projection:?}")));
            }
        }
    }
    Ok(Ok(format!("all projections, n ≤ {order}")))
}

fn simplicial(s: &Settings) -> Outcome {
    let n_max = s.n.unwrap_or(3);
    let mut count = 0;
    for n in 0..=n_max {
        for m in 3..=5 {
            for g in classes(n, m, s.cap)? {
                let c = graphs::canonicalize(&g);
                for j in 1..=m - 2 {
                    for i in 1..=j {
                        if c.merge_boundary(i)?.merge_boundary(j)? != c.merge_boundary(j + 1)?.merge_boundary(i)? {
                            return Ok(Err(format!("{g} at i = {i}, j = {j}")));
                        }
                    }
                }
                count += 1;
            }
        }
    }
    Ok(Ok(format!("{count} classes, n ≤ {n_max}, m ≤ 5")))
}

fn kontsevich_kernel(s: &Settings) -> Outcome {
    let n_max = s.n.unwrap_or(3);
    let alpha = PoissonQ::symplectic(2);
    let corpus = monomial_corpus::<Rational>(2, 3);
    let mut graphs_checked = 0;
    for n in 0..=n_max {
        for g in classes(n, 2, s.cap)?.into_iter().filter(LabeledGraph::has_internal_edge) {
            for u in &corpus {
                for w in &corpus {
                    let e = evaluate(&g, &alpha, &[u.clone(), w.clone()])?;
                    if !e.is_zero() {
                        return Ok(Err(format!("constant α: {g} on ({u}, {w}) = {e}")));
                    }
                }
            }
            graphs_checked += 1;
        }
    }
    let jacobi = &(&v(&t2r()) - &v(&t2l())) - &v(&c2());
    let so3 = PoissonQ::so3();
    let corpus = monomial_corpus::<Rational>(3, 2);
    for a in &corpus {
        for b in &corpus {
            for c in &corpus {
                let e = evaluate_vector(&jacobi, &so3, &[a.clone(), b.clone(), c.clone()])?;
                if !e.is_zero() {
                    return Ok(Err(format!("so(3): Jacobi graph on ({a}, {b}, {c}) = {e}")));
                }
            }
        }
    }
    Ok(Ok(format!("{graphs_checked} graphs vanish for constant α; Jacobi graph vanishes for so(3)")))
}

pub fn run(name: &str, s: &Settings) -> Result<CheckResult, Failure> {
    let outcome = match name {
        "d2" => d2(),
        "moyal" => moyal(s),
        "differential-square" => differential_square(s),
        "sigma-square" => sigma_square(s),
        "antipode" => antipode_check(s),
        "structure-constants" => structure_constants(s),
        "delta-sum" => delta_sum(s),
        "defect-identity" => defect_identity(s),
        "simplicial" => simplicial(s),
        "kontsevich-kernel" => kontsevich_kernel(s),
        other => return Err(Failure::Input(format!("unknown check `{other}`; known: {}", CHECKS.join(", ")))),
    }?;
    let (pass, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Ok(CheckResult { name: name.to_string(), pass, detail })
}
