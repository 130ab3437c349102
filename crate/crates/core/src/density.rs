//! Asymptotic pattern densities σ_P = max xᵀA_P x and π_P = max xᵀA′_P x
//! over the probability simplex, by support enumeration, plus the reduction
//! lemmas built on them.
//!
//! A maximiser x with support S has equal weighted degrees (A x)_v on S and
//! no larger degree outside S. Solving the balance system on every support
//! and keeping the feasible solutions therefore finds the maximum; a
//! singular system leaves a face on which the objective is constant, so a
//! strictly smaller support attains the same value.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::catalog::lift_graph_pattern;
use crate::graph::SimpleGraph;
use crate::linalg::{solve_exact, solve_f64};
use crate::pattern::Pattern;
use crate::{par, Error, Objective, Result};

/// Largest pattern accepted by support enumeration.
pub const MAX_SUPPORT_VERTICES: usize = 24;

/// Default KKT tolerance for π.
pub const PI_TOL: f64 = 1e-10;

/// Exact σ_P with an optimal weighting.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaResult {
    pub value: BigRational,
    pub weighting: Vec<BigRational>,
    pub support: Vec<usize>,
    /// Every support carrying a balanced optimum of the same value, smallest
    /// first (by size, then colex).
    pub tied_supports: Vec<Vec<usize>>,
}

/// Numerical π_P with its certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct PiResult {
    pub value: f64,
    pub weighting: Vec<f64>,
    pub support: Vec<usize>,
    /// Largest violation of balance on the support or exclusion off it.
    pub kkt_residual: f64,
    /// Best value reached by projected ascent from several starts.
    pub ascent_value: f64,
    /// Residual within tolerance and ascent never beat the enumeration.
    pub certified: bool,
    pub tied_supports: Vec<Vec<usize>>,
}

fn mask_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

// Masks by size then numeric (colex) order.
fn support_key(mask: u32) -> (u32, u32) {
    (mask.count_ones(), mask)
}

fn check_size(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::input("pattern has no vertices"));
    }
    if k > MAX_SUPPORT_VERTICES {
        return Err(Error::budget(
            format!("support enumeration over {k} pattern vertices"),
            1u128 << k,
            1u64 << MAX_SUPPORT_VERTICES,
        ));
    }
    Ok(())
}

// Splits 1..2^k into contiguous ranges and applies `f` to each mask, in
// parallel when available, keeping mask order.
fn for_supports<R: Send>(k: usize, f: impl Fn(u32) -> Option<R> + Sync + Send) -> Vec<(u32, R)> {
    let total: u64 = 1 << k;
    let chunks: u64 = if k >= 10 { 256 } else { 1 };
    let step = total.div_ceil(chunks);
    let ranges: Vec<(u64, u64)> =
        (0..chunks).map(|c| ((c * step).max(1), ((c + 1) * step).min(total))).filter(|r| r.0 < r.1).collect();
    par::map(&ranges, |&(lo, hi)| {
        (lo..hi).filter_map(|m| f(m as u32).map(|r| (m as u32, r))).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}

/// Balanced solution on `s` for an integer matrix: (weights, σ), if the
/// system is nonsingular and the weights are strictly positive.
fn exact_balanced(a: &[Vec<i64>], s: &[usize]) -> Option<(Vec<BigRational>, BigRational)> {
    let m = s.len();
    let mut rows = Vec::with_capacity(m + 1);
    let mut rhs = Vec::with_capacity(m + 1);
    for &i in s {
        let mut row: Vec<i64> = s.iter().map(|&j| a[i][j]).collect();
        row.push(-1);
        rows.push(row);
        rhs.push(0);
    }
    let mut last = vec![1i64; m];
    last.push(0);
    rows.push(last);
    rhs.push(1);
    let sol = solve_exact(&rows, &rhs)?;
    let sigma = sol[m].clone();
    let x = sol[..m].to_vec();
    x.iter().all(|v| v.is_positive()).then_some((x, sigma))
}

/// σ_P as an exact rational.
pub fn sigma_density(p: &Pattern) -> Result<SigmaResult> {
    let k = p.k();
    check_size(k)?;
    let a = p.matrix_i64();
    let found = for_supports(k, |mask| {
        let s = mask_vertices(mask);
        let (x, sigma) = exact_balanced(&a, &s)?;
        let excluded_ok = (0..k).filter(|v| mask >> v & 1 == 0).all(|v| {
            let deg: BigRational = s
                .iter()
                .zip(&x)
                .map(|(&j, xj)| BigRational::from_integer(BigInt::from(a[v][j])) * xj)
                .fold(BigRational::zero(), |acc, t| acc + t);
            deg <= sigma
        });
        excluded_ok.then_some((x, sigma))
    });
    let best = found
        .iter()
        .map(|(_, (_, sg))| sg)
        .max()
        .cloned()
        .ok_or_else(|| Error::domain("no balanced support found"))?;
    let mut tied: Vec<&(u32, (Vec<BigRational>, BigRational))> =
        found.iter().filter(|(_, (_, sg))| *sg == best).collect();
    tied.sort_by_key(|(m, _)| support_key(*m));
    let (mask, (x, _)) = tied[0];
    let support = mask_vertices(*mask);
    let mut weighting = vec![BigRational::zero(); k];
    for (&v, xv) in support.iter().zip(x) {
        weighting[v] = xv.clone();
    }
    Ok(SigmaResult {
        value: best,
        weighting,
        support,
        tied_supports: tied.iter().map(|(m, _)| mask_vertices(*m)).collect(),
    })
}

/// Float balanced solution on `s`: (weights, value).
fn float_balanced(a: &[Vec<f64>], s: &[usize]) -> Option<(Vec<f64>, f64)> {
    let m = s.len();
    let mut rows = Vec::with_capacity(m + 1);
    for &i in s {
        let mut row: Vec<f64> = s.iter().map(|&j| a[i][j]).collect();
        row.push(-1.0);
        rows.push(row);
    }
    let mut last = vec![1.0; m];
    last.push(0.0);
    rows.push(last);
    let mut rhs = vec![0.0; m];
    rhs.push(1.0);
    let sol = solve_f64(&rows, &rhs)?;
    let x = sol[..m].to_vec();
    x.iter().all(|&v| v > 0.0).then_some((x, sol[m]))
}

fn quad_form(a: &[Vec<f64>], x: &[f64]) -> f64 {
    let k = x.len();
    let mut acc = 0.0;
    for i in 0..k {
        if x[i] == 0.0 {
            continue;
        }
        for j in 0..k {
            if x[j] == 0.0 {
                continue;
            }
            acc += a[i][j] * x[i] * x[j];
        }
    }
    acc
}

fn weighted_degree(a: &[Vec<f64>], x: &[f64], v: usize) -> f64 {
    (0..x.len()).filter(|&j| x[j] > 0.0).map(|j| a[v][j] * x[j]).sum()
}

/// Outcome of a float maximisation of xᵀMx over the simplex.
#[derive(Clone, Debug)]
pub(crate) struct FloatQp {
    pub value: f64,
    pub x: Vec<f64>,
    pub mask: u32,
    pub residual: f64,
    pub tied: Vec<u32>,
}

/// Maximises xᵀMx over the simplex restricted to supports accepted by
/// `allowed`. Entries may be -∞. Returns `None` if no support is feasible.
pub(crate) fn float_qp_max(m: &[Vec<f64>], allowed: impl Fn(u32) -> bool + Sync + Send, tol: f64) -> Option<FloatQp> {
    let k = m.len();
    let found = for_supports(k, |mask| {
        if !allowed(mask) {
            return None;
        }
        let s = mask_vertices(mask);
        if s.len() == 1 {
            let v = s[0];
            let val = m[v][v];
            if val == f64::NEG_INFINITY {
                return None;
            }
            let mut x = vec![0.0; k];
            x[v] = 1.0;
            let ok = (0..k).all(|u| u == v || m[u][v] <= val + tol);
            return ok.then_some((x, val));
        }
        let (xs, val) = float_balanced(m, &s)?;
        let mut x = vec![0.0; k];
        for (&v, &xv) in s.iter().zip(&xs) {
            x[v] = xv;
        }
        let ok = (0..k).filter(|v| mask >> v & 1 == 0).all(|v| weighted_degree(m, &x, v) <= val + tol);
        ok.then_some((x, val))
    });
    let best = found.iter().map(|(_, (_, v))| *v).fold(f64::NEG_INFINITY, f64::max);
    if found.is_empty() {
        return None;
    }
    let scale = 1.0f64.max(best.abs());
    let mut tied: Vec<&(u32, (Vec<f64>, f64))> =
        found.iter().filter(|(_, (_, v))| (best - *v).abs() <= tol * scale).collect();
    tied.sort_by_key(|(mask, _)| support_key(*mask));
    // Among ties keep the numerically largest value so the reported optimum
    // is never below another candidate.
    let pick = tied
        .iter()
        .copied()
        .max_by(|a, b| a.1 .1.total_cmp(&b.1 .1).then_with(|| support_key(b.0).cmp(&support_key(a.0))))
        .expect("non-empty");
    let (mask, (x, _)) = pick;
    let value = quad_form(m, x);
    let mut residual = (x.iter().sum::<f64>() - 1.0).abs();
    for v in 0..k {
        let dv = weighted_degree(m, x, v);
        if mask >> v & 1 == 1 {
            residual = residual.max((dv - value).abs());
        } else if dv.is_finite() {
            residual = residual.max((dv - value).max(0.0));
        }
    }
    Some(FloatQp { value, x: x.clone(), mask: *mask, residual, tied: tied.iter().map(|(m, _)| *m).collect() })
}

/// Replicator ascent from several deterministic starts. Forbidden entries
/// (-∞) are treated as the smallest weight during the iteration and the
/// final points are scored with the true matrix.
pub(crate) fn ascent_max(m: &[Vec<f64>], iters: usize) -> f64 {
    let k = m.len();
    let lo = m.iter().flatten().copied().filter(|v| v.is_finite()).fold(f64::INFINITY, f64::min);
    if !lo.is_finite() {
        return f64::NEG_INFINITY;
    }
    let b: Vec<Vec<f64>> =
        m.iter().map(|row| row.iter().map(|&v| if v.is_finite() { v - lo + 1.0 } else { 0.0 }).collect()).collect();
    let mut starts: Vec<Vec<f64>> = vec![vec![1.0 / k as f64; k]];
    for v in 0..k {
        let mut x = vec![0.5 / k as f64; k];
        x[v] += 0.5;
        starts.push(x);
    }
    let mut best = f64::NEG_INFINITY;
    for mut x in starts {
        for _ in 0..iters {
            let bx: Vec<f64> = (0..k).map(|i| (0..k).map(|j| b[i][j] * x[j]).sum()).collect();
            let q: f64 = (0..k).map(|i| x[i] * bx[i]).sum();
            if q <= 0.0 {
                break;
            }
            for i in 0..k {
                x[i] *= bx[i] / q;
            }
        }
        for xi in x.iter_mut() {
            if *xi < 1e-9 {
                *xi = 0.0;
            }
        }
        let total: f64 = x.iter().sum();
        if total <= 0.0 {
            continue;
        }
        x.iter_mut().for_each(|xi| *xi /= total);
        let val = quad_form(m, &x);
        if val.is_finite() {
            best = best.max(val);
        }
    }
    best
}

/// Supports with no zero pair and no zero loop, except singletons.
fn pi_allowed(p: &Pattern) -> impl Fn(u32) -> bool + Sync + Send + '_ {
    move |mask: u32| {
        if mask.count_ones() == 1 {
            return true;
        }
        let s = mask_vertices(mask);
        s.iter().enumerate().all(|(i, &u)| p.loop_mult(u) > 0 && s[i + 1..].iter().all(|&v| p.pair(u, v) > 0))
    }
}

/// π_P with a KKT certificate. The value is -∞ when every support has a
/// zero multiplicity.
pub fn pi_density(p: &Pattern, tol: f64) -> Result<PiResult> {
    let k = p.k();
    check_size(k)?;
    let m = p.log_matrix();
    let Some(qp) = float_qp_max(&m, pi_allowed(p), tol.max(1e-12) * 10.0) else {
        return Ok(PiResult {
            value: f64::NEG_INFINITY,
            weighting: vec![0.0; k],
            support: Vec::new(),
            kkt_residual: 0.0,
            ascent_value: f64::NEG_INFINITY,
            certified: true,
            tied_supports: Vec::new(),
        });
    };
    let ascent = ascent_max(&m, 3000);
    let scale = 1.0f64.max(qp.value.abs());
    let certified = qp.residual <= tol * scale && !(ascent > qp.value + tol.max(1e-9) * scale);
    Ok(PiResult {
        value: qp.value,
        weighting: qp.x,
        support: mask_vertices(qp.mask),
        kkt_residual: qp.residual,
        ascent_value: ascent,
        certified,
        tied_supports: qp.tied.iter().map(|&t| mask_vertices(t)).collect(),
    })
}

/// Closed-form product optimum of TUR((r_0,0,…,0,r_d), a).
#[derive(Clone, Debug, PartialEq)]
pub struct TuranAsymptotics {
    pub x_star: f64,
    pub pi: f64,
    /// Heavy blocks first, then light ones.
    pub weighting: Vec<f64>,
}

/// x⋆ = ln((a+1)/a) / ln((a+1)^{r_d(r_0+1)} / (a^{r_d}(a−d+1)^{r_0(r_d−1)}(a−d)^{r_0})).
pub fn turan_x_star(r0: u32, rd: u32, d: u32, a: u32) -> Result<f64> {
    if d == 0 || r0 == 0 || rd == 0 {
        return Err(Error::domain("x⋆ needs r_0, r_d, d ≥ 1"));
    }
    if a < d + 1 {
        return Err(Error::domain(format!("x⋆ needs a ≥ d+1 (a = {a}, d = {d})")));
    }
    let (r0f, rdf, af, df) = (r0 as f64, rd as f64, a as f64, d as f64);
    let den = rdf * (r0f + 1.0) * (af + 1.0).ln()
        - rdf * af.ln()
        - r0f * (rdf - 1.0) * (af - df + 1.0).ln()
        - r0f * (af - df).ln();
    Ok(((af + 1.0) / af).ln() / den)
}

pub fn turan_asymptotics(r0: u32, rd: u32, d: u32, a: u32) -> Result<TuranAsymptotics> {
    let x = turan_x_star(r0, rd, d, a)?;
    let heavy = (1.0 - rd as f64 * x) / r0 as f64;
    let af = a as f64;
    let pi = af.ln() + (1.0 - heavy) * ((af + 1.0) / af).ln();
    let mut weighting = vec![heavy; r0 as usize];
    weighting.extend(core::iter::repeat_n(x, rd as usize));
    Ok(TuranAsymptotics { x_star: x, pi, weighting })
}

/// Result of repeated cloning: the reduced pattern and which original
/// vertices survive, in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CloneReduction {
    pub pattern: Pattern,
    pub kept: Vec<usize>,
}

fn float_weighting(p: &Pattern, objective: Objective) -> Result<Vec<f64>> {
    Ok(match objective {
        Objective::Sum => sigma_density(p)?.weighting.iter().map(|x| x.to_f64().unwrap_or(0.0)).collect(),
        Objective::Product => pi_density(p, PI_TOL)?.weighting,
    })
}

/// Deletes clones while some pair has multiplicity at most the common loop
/// value m. Of the two endpoints the one with the smaller weighted degree
/// to the rest (under a current optimal weighting) goes; σ (or π) is
/// unchanged and every surviving pair exceeds m.
pub fn clone_reduce(p: &Pattern, objective: Objective) -> Result<CloneReduction> {
    let m = p.uniform_loop().ok_or_else(|| Error::domain("cloning needs all loops equal"))?;
    if objective == Objective::Product && m == 0 {
        return Err(Error::domain("product cloning needs loops ≥ 1"));
    }
    let mut cur = p.clone();
    let mut kept: Vec<usize> = (0..p.k()).collect();
    loop {
        let Some((i, j, _)) = cur.pairs().find(|&(_, _, w)| w <= m) else {
            break;
        };
        if objective == Objective::Sum {
            // Exact comparison keeps σ exactly preserved.
            let x = sigma_density(&cur)?.weighting;
            let deg = |u: usize| -> BigRational {
                (0..cur.k())
                    .filter(|&t| t != i && t != j)
                    .map(|t| BigRational::from_integer(cur.pair(u, t).into()) * &x[t])
                    .fold(BigRational::zero(), |s, v| s + v)
            };
            let drop = if deg(i) >= deg(j) { j } else { i };
            cur = cur.without(drop);
            kept.remove(drop);
        } else {
            let x = float_weighting(&cur, objective)?;
            let deg = |u: usize| -> f64 {
                (0..cur.k())
                    .filter(|&t| t != i && t != j && x[t] > 0.0)
                    .map(|t| (cur.pair(u, t) as f64).ln() * x[t])
                    .sum()
            };
            let drop = if deg(i) >= deg(j) { j } else { i };
            cur = cur.without(drop);
            kept.remove(drop);
        }
    }
    Ok(CloneReduction { pattern: cur, kept })
}

/// Density of a lifted graph pattern under either objective, as f64 for
/// comparisons and exactly for the sum objective.
#[derive(Clone, Debug, PartialEq)]
pub enum Density {
    Sigma(BigRational),
    Pi(f64),
}

impl Density {
    pub fn to_f64(&self) -> f64 {
        match self {
            Density::Sigma(r) => r.to_f64().unwrap_or(f64::NAN),
            Density::Pi(v) => *v,
        }
    }
}

pub fn graph_density(h: &SimpleGraph, a: u32, objective: Objective) -> Result<Density> {
    let p = lift_graph_pattern(h, a)?;
    Ok(match objective {
        Objective::Sum => Density::Sigma(sigma_density(&p)?.value),
        Objective::Product => Density::Pi(pi_density(&p, PI_TOL)?.value),
    })
}

fn exceeds_base(d: &Density, a: u32) -> bool {
    match d {
        Density::Sigma(s) => *s > BigRational::from_integer(a.into()),
        Density::Pi(v) => *v > (a as f64).ln() + 1e-9,
    }
}

/// Outcome of reducing a lifted graph to its best component.
#[derive(Clone, Debug, PartialEq)]
pub enum ConnectedReduction {
    /// The density is the baseline (a, or ln a); nothing to reduce.
    Trivial,
    Component { vertices: Vec<usize>, graph: SimpleGraph, density: Density },
}

/// The component whose lifted pattern has the largest density; when the
/// density of H^(a) exceeds the baseline it equals this maximum.
pub fn connected_reduce(h: &SimpleGraph, a: u32, objective: Objective) -> Result<ConnectedReduction> {
    let whole = graph_density(h, a, objective)?;
    if !exceeds_base(&whole, a) {
        return Ok(ConnectedReduction::Trivial);
    }
    let mut best: Option<(Vec<usize>, SimpleGraph, Density)> = None;
    for comp in h.components() {
        let g = h.induced(&comp);
        let d = graph_density(&g, a, objective)?;
        let better = match &best {
            None => true,
            Some((_, _, bd)) => match (&d, bd) {
                (Density::Sigma(x), Density::Sigma(y)) => x > y,
                _ => d.to_f64() > bd.to_f64() + 1e-12,
            },
        };
        if better {
            best = Some((comp, g, d));
        }
    }
    let (vertices, graph, density) = best.expect("graph with a vertex");
    Ok(ConnectedReduction::Component { vertices, graph, density })
}

/// Upper bound on the vertex count of a graph whose lifted density is
/// attained only with full support.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexCountBound {
    /// The bound before rounding: (Δ−1)/(σ−a), or its logarithmic analogue.
    pub value: f64,
    /// Exact value for the sum objective.
    pub exact: Option<BigRational>,
    /// ⌊value⌋.
    pub bound: i64,
}

pub fn vertex_count_bound(h: &SimpleGraph, a: u32, objective: Objective) -> Result<VertexCountBound> {
    let delta = h.max_degree() as i64;
    match graph_density(h, a, objective)? {
        Density::Sigma(s) => {
            let excess = s - BigRational::from_integer(a.into());
            if !excess.is_positive() {
                return Err(Error::domain("σ does not exceed a; the bound is undefined"));
            }
            let v = BigRational::from_integer((delta - 1).into()) / excess;
            let bound = v.floor().to_integer().to_i64().unwrap_or(i64::MAX);
            Ok(VertexCountBound { value: v.to_f64().unwrap_or(f64::NAN), exact: Some(v), bound })
        }
        Density::Pi(pi) => {
            if a < 2 {
                return Err(Error::domain("the product bound needs a ≥ 2"));
            }
            let af = a as f64;
            let excess = pi - af.ln();
            if excess <= 1e-12 {
                return Err(Error::domain("π does not exceed ln a; the bound is undefined"));
            }
            let d = delta as f64;
            let num = d * (af + 1.0).ln() + (af - 1.0).ln() - (d + 1.0) * af.ln();
            let v = num / excess;
            Ok(VertexCountBound { value: v, exact: None, bound: (v + 1e-9).floor() as i64 })
        }
    }
}

/// For Δ(H) ≤ 3 and girth ≥ 5: whether σ_{H^(a)} ≤ a + 1/5.
pub fn subcubic_girth5_bound(h: &SimpleGraph, a: u32) -> Result<bool> {
    if h.max_degree() > 3 {
        return Err(Error::domain("graph has a vertex of degree above 3"));
    }
    if h.girth().is_some_and(|g| g < 5) {
        return Err(Error::domain("graph has girth below 5"));
    }
    let s = sigma_density(&lift_graph_pattern(h, a)?)?.value;
    Ok(s <= BigRational::from_integer(a.into()) + BigRational::new(BigInt::one(), 5.into()))
}
