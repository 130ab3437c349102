//! Blow-ups of patterns and their extremal edge sums and products.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::ToPrimitive;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::density::{ascent_max, float_qp_max, pi_density, sigma_density, PI_TOL};
use crate::graph::Multigraph;
use crate::pattern::Pattern;
use crate::profile::MultiplicityProfile;
use crate::{binomial, choose2, par, Error, Objective, Result, Value};

/// Default node budget for exact blow-up optimisation.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Part sizes, one per pattern vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    pub sizes: Vec<u32>,
}

impl Composition {
    pub fn new(sizes: Vec<u32>) -> Self {
        Composition { sizes }
    }

    pub fn n(&self) -> u64 {
        self.sizes.iter().map(|&c| c as u64).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Global optimum by branch and bound.
    Exact,
    /// Rounded optimal weighting improved by single-vertex moves.
    Local,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certified {
    /// Proven global optimum.
    Exact,
    /// Fixed point of single-vertex moves only.
    Local,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupOptimum {
    pub value: Value,
    pub witness: Composition,
    pub certified: Certified,
    pub nodes_explored: u64,
}

fn check_comp(p: &Pattern, c: &Composition) -> Result<()> {
    if c.sizes.len() != p.k() {
        return Err(Error::input(format!("composition has {} parts, pattern has {} vertices", c.sizes.len(), p.k())));
    }
    Ok(())
}

/// The blow-up with parts laid out consecutively in pattern-vertex order.
pub fn build_blowup(p: &Pattern, c: &Composition) -> Result<Multigraph> {
    check_comp(p, c)?;
    let part: Vec<usize> =
        c.sizes.iter().enumerate().flat_map(|(v, &s)| core::iter::repeat_n(v, s as usize)).collect();
    Ok(Multigraph::from_fn(part.len(), |x, y| p.entry(part[x], part[y])))
}

fn sum_value(p: &Pattern, c: &[u32]) -> u64 {
    let k = p.k();
    let mut e = 0u64;
    for i in 0..k {
        let ci = c[i] as u64;
        if ci == 0 {
            continue;
        }
        e += p.loop_mult(i) as u64 * choose2(ci);
        for j in i + 1..k {
            e += p.pair(i, j) as u64 * ci * c[j] as u64;
        }
    }
    e
}

fn product_value(p: &Pattern, c: &[u32]) -> MultiplicityProfile {
    let k = p.k();
    let mut prof = MultiplicityProfile::new();
    for i in 0..k {
        let ci = c[i] as u64;
        if ci == 0 {
            continue;
        }
        prof.add(p.loop_mult(i), choose2(ci));
        for j in i + 1..k {
            prof.add(p.pair(i, j), ci * c[j] as u64);
        }
    }
    prof
}

fn value_of(p: &Pattern, c: &[u32], objective: Objective) -> Value {
    match objective {
        Objective::Sum => Value::Sum(sum_value(p, c)),
        Objective::Product => Value::Product(product_value(p, c)),
    }
}

/// e(G) = Σ_{i<j} pair(i,j)c_i c_j + Σ_i loop(i)·C(c_i,2), or the matching
/// product, without building G.
pub fn blowup_value(p: &Pattern, c: &Composition, objective: Objective) -> Result<Value> {
    check_comp(p, c)?;
    Ok(value_of(p, &c.sizes, objective))
}

/// Largest-remainder rounding of n·x.
fn round_weighting(x: &[f64], n: u32) -> Vec<u32> {
    let mut c: Vec<u32> = x.iter().map(|&w| (w.max(0.0) * n as f64).floor() as u32).collect();
    let mut left = n as i64 - c.iter().map(|&v| v as i64).sum::<i64>();
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| {
        let fi = x[i] * n as f64 - c[i] as f64;
        let fj = x[j] * n as f64 - c[j] as f64;
        fj.total_cmp(&fi).then(i.cmp(&j))
    });
    let mut idx = 0;
    while left > 0 {
        c[order[idx % order.len()]] += 1;
        left -= 1;
        idx += 1;
    }
    while left < 0 {
        let i = (0..c.len()).max_by_key(|&i| (c[i], core::cmp::Reverse(i))).expect("non-empty");
        c[i] -= 1;
        left += 1;
    }
    c
}

/// Steepest single-vertex moves until none improves; ties go to the first
/// (from, to) pair in lexicographic order.
fn local_improve(p: &Pattern, mut c: Vec<u32>, objective: Objective) -> (Vec<u32>, Value) {
    let k = p.k();
    let mut cur = value_of(p, &c, objective);
    loop {
        let mut best: Option<(usize, usize, Value)> = None;
        for u in 0..k {
            if c[u] == 0 {
                continue;
            }
            for v in 0..k {
                if v == u {
                    continue;
                }
                c[u] -= 1;
                c[v] += 1;
                let val = value_of(p, &c, objective);
                c[v] -= 1;
                c[u] += 1;
                let reference = best.as_ref().map_or(&cur, |b| &b.2);
                if val.cmp_value(reference) == Ordering::Greater {
                    best = Some((u, v, val));
                }
            }
        }
        match best {
            Some((u, v, val)) => {
                c[u] -= 1;
                c[v] += 1;
                cur = val;
            }
            None => return (c, cur),
        }
    }
}

fn start_weighting(p: &Pattern, objective: Objective) -> Result<Vec<f64>> {
    Ok(match objective {
        Objective::Sum => sigma_density(p)?.weighting.iter().map(|r| r.to_f64().unwrap_or(0.0)).collect(),
        Objective::Product => {
            let r = pi_density(p, PI_TOL)?;
            if r.support.is_empty() {
                let mut x = vec![0.0; p.k()];
                x[0] = 1.0;
                x
            } else {
                r.weighting
            }
        }
    })
}

/// Number of compositions of n into k parts after sorting within twin
/// classes (a class of size t contributes partitions into at most t parts).
pub fn estimate_nodes(p: &Pattern, n: u32) -> u128 {
    let n = n as usize;
    let classes = p.twin_classes();
    let maxt = classes.iter().map(|c| c.len()).max().unwrap_or(1);
    // part[t][m] = partitions of m into at most t parts
    let mut part = vec![vec![0u128; n + 1]; maxt + 1];
    part[0][0] = 1;
    for t in 1..=maxt {
        for m in 0..=n {
            part[t][m] = part[t - 1][m].saturating_add(if m >= t { part[t][m - t] } else { 0 });
        }
    }
    let mut dp = vec![0u128; n + 1];
    dp[0] = 1;
    for cls in &classes {
        let t = cls.len();
        let mut next = vec![0u128; n + 1];
        for (used, &ways) in dp.iter().enumerate() {
            if ways == 0 {
                continue;
            }
            for extra in 0..=n - used {
                next[used + extra] = next[used + extra].saturating_add(ways.saturating_mul(part[t][extra]));
            }
        }
        dp = next;
    }
    dp[n]
}

struct Search<'a> {
    p: &'a Pattern,
    objective: Objective,
    // c[v] ≥ c[twin_prev[v]]
    twin_prev: Vec<Option<usize>>,
    autos: Vec<Vec<usize>>,
    // Per suffix start i: upper bound on max xᵀA x over the simplex on
    // {i..k}, and the smallest (log-)loop there.
    mu: Vec<f64>,
    lmin: Vec<f64>,
    // Log entries for the product objective.
    logs: Vec<Vec<f64>>,
    global_bound: f64,
    budget: u64,
}

struct State {
    c: Vec<u32>,
    best: Value,
    best_score: f64,
    witness: Vec<u32>,
    nodes: u64,
    over_budget: bool,
}

impl<'a> Search<'a> {
    fn new(p: &'a Pattern, n: u32, objective: Objective, budget: u64) -> Result<Self> {
        let k = p.k();
        let classes = p.twin_classes();
        let mut twin_prev = vec![None; k];
        for cls in &classes {
            for w in cls.windows(2) {
                twin_prev[w[1]] = Some(w[0]);
            }
        }
        let autos: Vec<Vec<usize>> =
            p.automorphisms(4096).into_iter().filter(|a| a.iter().enumerate().any(|(i, &v)| i != v)).collect();
        let logs = p.log_matrix();
        let mut mu = vec![0.0; k + 1];
        let mut lmin = vec![0.0; k + 1];
        for i in 0..k {
            let rest: Vec<usize> = (i..k).collect();
            let sub = p.induced(&rest);
            match objective {
                Objective::Sum => {
                    let s = sigma_density(&sub)?.value.to_f64().unwrap_or(f64::INFINITY);
                    mu[i] = s + 1e-9 * s.abs().max(1.0);
                    lmin[i] = sub.min_loop() as f64;
                }
                Objective::Product => {
                    // Zero entries raised to ln 1 = 0 keep this an upper bound.
                    let m: Vec<Vec<f64>> = (0..sub.k())
                        .map(|u| (0..sub.k()).map(|v| (sub.entry(u, v).max(1) as f64).ln()).collect())
                        .collect();
                    let qp = float_qp_max(&m, |_| true, 1e-9).map_or(f64::INFINITY, |q| q.value);
                    let asc = ascent_max(&m, 2000);
                    let s = qp.max(asc);
                    mu[i] = s + 1e-9 * s.abs().max(1.0);
                    lmin[i] = (0..sub.k()).map(|v| m[v][v]).fold(f64::INFINITY, f64::min);
                }
            }
        }
        let nf = n as f64;
        let global_bound = match objective {
            Objective::Sum => ((mu[0] * nf * nf - lmin[0] * nf) / 2.0 + 1e-7).floor(),
            Objective::Product => (mu[0] * nf * nf - lmin[0] * nf) / 2.0,
        };
        Ok(Search { p, objective, twin_prev, autos, mu, lmin, logs, global_bound, budget })
    }

    // Some automorphism maps the known prefix to something lexicographically
    // smaller on the positions it determines.
    fn non_canonical(&self, c: &[u32], depth: usize) -> bool {
        'outer: for img in &self.autos {
            for pos in 0..depth {
                let src = img[pos];
                if src >= depth {
                    continue 'outer;
                }
                match c[src].cmp(&c[pos]) {
                    Ordering::Less => return true,
                    Ordering::Greater => continue 'outer,
                    Ordering::Equal => {}
                }
            }
        }
        false
    }

    // Upper bound on the score of any completion of c[..depth].
    fn bound(&self, c: &[u32], depth: usize, remaining: u32) -> f64 {
        let k = self.p.k();
        let m = remaining as f64;
        let local = match self.objective {
            Objective::Sum => {
                let fixed = sum_value(self.p, &prefix_padded(c, depth, k)) as f64;
                let g = (depth..k)
                    .map(|r| (0..depth).map(|j| self.p.entry(j, r) as f64 * c[j] as f64).sum::<f64>())
                    .fold(0.0, f64::max);
                let free = ((self.mu[depth] * m * m - self.lmin[depth] * m) / 2.0 + 1e-7).floor();
                fixed + m * g + free.max(0.0)
            }
            Objective::Product => {
                let fixed = product_value(self.p, &prefix_padded(c, depth, k)).log_value();
                if remaining == 0 {
                    fixed
                } else {
                    let g = (depth..k)
                        .map(|r| {
                            (0..depth)
                                .filter(|&j| c[j] > 0)
                                .map(|j| self.logs[j][r] * c[j] as f64)
                                .sum::<f64>()
                        })
                        .fold(f64::NEG_INFINITY, f64::max);
                    let free = (self.mu[depth] * m * m - self.lmin[depth] * m) / 2.0;
                    fixed + m * g + free
                }
            }
        };
        local.min(self.global_bound)
    }

    fn prune(&self, st: &State, bound: f64, depth: usize) -> bool {
        let lex_greater = st.c[..depth] > st.witness[..depth];
        match self.objective {
            Objective::Sum => bound < st.best_score || (bound <= st.best_score && lex_greater),
            Objective::Product => {
                if bound == f64::NEG_INFINITY {
                    return st.best_score > f64::NEG_INFINITY || lex_greater;
                }
                let eps = 1e-9 * st.best_score.abs().max(1.0);
                bound < st.best_score - eps || (bound <= st.best_score + eps && lex_greater)
            }
        }
    }

    fn leaf(&self, st: &mut State) {
        let val = value_of(self.p, &st.c, self.objective);
        let take = match val.cmp_value(&st.best) {
            Ordering::Greater => true,
            Ordering::Equal => st.c < st.witness,
            Ordering::Less => false,
        };
        if take {
            st.best_score = val.score();
            st.best = val;
            st.witness = st.c.clone();
        }
    }

    fn dfs(&self, st: &mut State, depth: usize, remaining: u32) {
        if st.over_budget {
            return;
        }
        st.nodes += 1;
        if st.nodes > self.budget {
            st.over_budget = true;
            return;
        }
        let k = self.p.k();
        let lo = self.twin_prev[depth].map_or(0, |t| st.c[t]);
        if depth == k - 1 {
            if remaining < lo {
                return;
            }
            st.c[depth] = remaining;
            if !self.non_canonical(&st.c, k) {
                self.leaf(st);
            }
            st.c[depth] = 0;
            return;
        }
        for v in lo..=remaining {
            st.c[depth] = v;
            if self.non_canonical(&st.c, depth + 1) {
                continue;
            }
            let b = self.bound(&st.c, depth + 1, remaining - v);
            if self.prune(st, b, depth + 1) {
                continue;
            }
            self.dfs(st, depth + 1, remaining - v);
        }
        st.c[depth] = 0;
    }

    // Lexicographically smallest image of c under the known symmetries.
    fn canonical_image(&self, c: &[u32]) -> Vec<u32> {
        let mut best = c.to_vec();
        for img in &self.autos {
            let cand: Vec<u32> = (0..c.len()).map(|pos| c[img[pos]]).collect();
            if cand < best {
                best = cand;
            }
        }
        best
    }
}

fn prefix_padded(c: &[u32], depth: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; k];
    v[..depth].copy_from_slice(&c[..depth]);
    v
}

/// Σ_P(n) (sum) or Π_P(n) (product).
///
/// Exact mode enumerates compositions depth-first in lexicographic order,
/// keeps only the lexicographically smallest member of each orbit under
/// twin swaps and pattern automorphisms, and prunes with
/// fixed part + m·(best cross degree) + ½(μ_R m² − ℓ_R m), where μ_R bounds
/// the simplex maximum on the free vertices R and ℓ_R is their least loop.
/// Among optimal compositions the lexicographically smallest is returned.
pub fn optimize_blowup(p: &Pattern, n: u32, objective: Objective, mode: Mode, budget: u64) -> Result<BlowupOptimum> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    if p.k() == 0 {
        return Err(Error::input("pattern has no vertices"));
    }
    let x = start_weighting(p, objective)?;
    let (start, start_val) = local_improve(p, round_weighting(&x, n), objective);
    if mode == Mode::Local {
        return Ok(BlowupOptimum {
            value: start_val,
            witness: Composition::new(start),
            certified: Certified::Local,
            nodes_explored: 0,
        });
    }
    let estimate = estimate_nodes(p, n);
    if estimate > budget as u128 {
        return Err(Error::budget(format!("exact blow-up optimum on n = {n} over {} parts", p.k()), estimate, budget));
    }
    let search = Search::new(p, n, objective, budget)?;
    let seed_witness = search.canonical_image(&start);
    let seed_val = value_of(p, &seed_witness, objective);
    let k = p.k();
    if k == 1 {
        return Ok(BlowupOptimum {
            value: seed_val,
            witness: Composition::new(vec![n]),
            certified: Certified::Exact,
            nodes_explored: 1,
        });
    }
    // Independent subtrees per first part size keep results and node counts
    // independent of scheduling.
    let firsts: Vec<u32> = (0..=n).collect();
    let per_budget = budget;
    let outcomes = par::map(&firsts, |&v0| {
        let mut st = State {
            c: vec![0; k],
            best: seed_val.clone(),
            best_score: seed_val.score(),
            witness: seed_witness.clone(),
            nodes: 0,
            over_budget: false,
        };
        st.c[0] = v0;
        if !search.non_canonical(&st.c, 1) {
            let b = search.bound(&st.c, 1, n - v0);
            if !search.prune(&st, b, 1) {
                search.dfs(&mut st, 1, n - v0);
            }
        }
        (st.best, st.witness, st.nodes, st.over_budget)
    });
    let mut best = seed_val;
    let mut witness = seed_witness;
    let mut nodes = 0u64;
    for (val, wit, cnt, over) in outcomes {
        nodes = nodes.saturating_add(cnt);
        if over || nodes > per_budget {
            return Err(Error::budget(format!("exact blow-up optimum on n = {n}"), nodes as u128, budget));
        }
        let take = match val.cmp_value(&best) {
            Ordering::Greater => true,
            Ordering::Equal => wit < witness,
            Ordering::Less => false,
        };
        if take {
            best = val;
            witness = wit;
        }
    }
    Ok(BlowupOptimum { value: best, witness: Composition::new(witness), certified: Certified::Exact, nodes_explored: nodes })
}

/// Exact Σ_P(n), or an error if the search is too large.
pub fn sigma_max(p: &Pattern, n: u32) -> Result<u64> {
    Ok(optimize_blowup(p, n, Objective::Sum, Mode::Exact, DEFAULT_BUDGET)?.value.as_sum().expect("sum objective"))
}

/// Upper bound ⌊σ_P s²/2 − c s/2⌋ for patterns whose loops all equal c.
pub fn lemma_upper_bound(sigma: &num_rational::BigRational, c: u32, s: u64) -> Result<i128> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let s_r = BigRational::from_integer(BigInt::from(s));
    let two = BigRational::from_integer(BigInt::from(2));
    let v = sigma * &s_r * &s_r / &two - BigRational::from_integer(BigInt::from(c)) * &s_r / &two;
    v.floor().to_integer().to_i128().ok_or_else(|| Error::domain("bound out of range"))
}

/// Number of compositions of n into k parts, before any symmetry reduction.
pub fn composition_count(k: usize, n: u32) -> u128 {
    binomial(n as u64 + k as u64 - 1, k as u64 - 1)
}
