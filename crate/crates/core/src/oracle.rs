//! Exhaustive ex_Σ(n, s, q) and ex_Π(n, s, q) for tiny n.
//!
//! Depth-first over edge multiplicities in lexicographic edge order, largest
//! value first. Each edge is capped by the slack of the tightest s-set through
//! it. The completion bound averages the per-set slack: every remaining edge
//! lies in exactly C(n−2, s−2) s-sets, so the remaining sum is at most
//! Σ_X slack_X / C(n−2, s−2), and the remaining log-product at most the same
//! average of the integer AM-GM maxima of each set.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::bounds::integer_am_gm_log;
use crate::graph::Multigraph;
use crate::profile::MultiplicityProfile;
use crate::{binomial, par, Error, Objective, Result, Value};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleStatus {
    /// The search finished; the value is ex(n, s, q).
    Exact,
    /// The node budget ran out; the value is only a lower bound.
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub objective: Objective,
    pub value: Value,
    pub witness: Multigraph,
    pub nodes_explored: u64,
    pub status: OracleStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleOptions {
    /// Largest multiplicity tried; `None` means q.
    pub max_mult: Option<u32>,
    pub budget: u64,
    /// Only search graphs whose vertex degrees are non-increasing. The value
    /// is unchanged; the witness is then the lexicographically smallest
    /// optimum among degree-sorted graphs.
    pub degree_order: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { max_mult: None, budget: DEFAULT_BUDGET, degree_order: true }
    }
}

struct Problem {
    n: usize,
    q: u64,
    max_mult: u32,
    objective: Objective,
    degree_order: bool,
    edges: Vec<(usize, usize)>,
    // s-sets through each edge
    sets_of_edge: Vec<Vec<usize>>,
    set_count: usize,
    edges_per_set: u64,
    // C(n−2, s−2)
    multiplicity: f64,
    budget: u64,
}

#[derive(Clone)]
struct State {
    w: Vec<u32>,
    set_sum: Vec<u64>,
    set_left: Vec<u64>,
    deg: Vec<u64>,
    sum: u64,
    profile: MultiplicityProfile,
    best: Option<(Value, Vec<u32>)>,
    nodes: u64,
    over: bool,
}

impl Problem {
    fn cap(&self, st: &State, e: usize) -> u32 {
        let slack = self.sets_of_edge[e].iter().map(|&x| self.q - st.set_sum[x]).min().unwrap_or(self.q);
        slack.min(self.max_mult as u64) as u32
    }

    fn assign(&self, st: &mut State, e: usize, m: u32) {
        st.w[e] = m;
        for &x in &self.sets_of_edge[e] {
            st.set_sum[x] += m as u64;
            st.set_left[x] -= 1;
        }
        let (u, v) = self.edges[e];
        st.deg[u] += m as u64;
        st.deg[v] += m as u64;
        st.sum += m as u64;
        if self.objective == Objective::Product {
            st.profile.add(m, 1);
        }
    }

    fn unassign(&self, st: &mut State, e: usize) {
        let m = st.w[e];
        for &x in &self.sets_of_edge[e] {
            st.set_sum[x] -= m as u64;
            st.set_left[x] += 1;
        }
        let (u, v) = self.edges[e];
        st.deg[u] -= m as u64;
        st.deg[v] -= m as u64;
        st.sum -= m as u64;
        if self.objective == Objective::Product {
            st.profile.remove(m, 1);
        }
        st.w[e] = 0;
    }

    // Score bound for completions of edges 0..=e.
    fn bound(&self, st: &State, e: usize) -> f64 {
        let rest = e + 1..self.edges.len();
        match self.objective {
            Objective::Sum => {
                let slack: u64 =
                    (0..self.set_count).filter(|&x| st.set_left[x] > 0).map(|x| self.q - st.set_sum[x]).sum();
                let avg = (slack as f64 / self.multiplicity + 1e-9).floor();
                let caps: u64 = rest.map(|f| self.cap(st, f) as u64).sum();
                st.sum as f64 + avg.min(caps as f64)
            }
            Objective::Product => {
                let mut caps = 0.0;
                for f in rest {
                    let c = self.cap(st, f);
                    if c == 0 {
                        return f64::NEG_INFINITY;
                    }
                    caps += (c as f64).ln();
                }
                let avg: f64 = (0..self.set_count)
                    .map(|x| integer_am_gm_log(st.set_left[x], self.q - st.set_sum[x]))
                    .sum::<f64>()
                    / self.multiplicity;
                st.profile.log_value() + avg.min(caps)
            }
        }
    }

    fn degree_order_ok(&self, st: &State, e: usize) -> bool {
        if !self.degree_order {
            return true;
        }
        // Rows before u are complete, so deg[u − 1] is final while deg[u]
        // can only grow.
        let (u, v) = self.edges[e];
        if u > 0 && st.deg[u] > st.deg[u - 1] {
            return false;
        }
        !(u + 2 == self.n && v + 1 == self.n && st.deg[v] > st.deg[u])
    }

    fn prune(&self, st: &State, bound: f64, e: usize) -> bool {
        let Some((best, wit)) = &st.best else {
            return false;
        };
        let lex_greater = st.w[..=e] > wit[..=e];
        let b = best.score();
        match self.objective {
            Objective::Sum => bound < b || (bound <= b && lex_greater),
            Objective::Product => {
                if bound == f64::NEG_INFINITY {
                    return b > f64::NEG_INFINITY || lex_greater;
                }
                let eps = 1e-9 * b.abs().max(1.0);
                bound < b - eps || (bound <= b + eps && lex_greater)
            }
        }
    }

    fn leaf(&self, st: &mut State) {
        let val = match self.objective {
            Objective::Sum => Value::Sum(st.sum),
            Objective::Product => Value::Product(st.profile.clone()),
        };
        let take = match &st.best {
            None => true,
            Some((b, wit)) => match val.cmp_value(b) {
                Ordering::Greater => true,
                Ordering::Equal => st.w < *wit,
                Ordering::Less => false,
            },
        };
        if take {
            st.best = Some((val, st.w.clone()));
        }
    }

    fn dfs(&self, st: &mut State, e: usize) {
        if st.over {
            return;
        }
        if e == self.edges.len() {
            self.leaf(st);
            return;
        }
        st.nodes += 1;
        if st.nodes > self.budget {
            st.over = true;
            return;
        }
        let cap = self.cap(st, e);
        for m in (0..=cap).rev() {
            self.assign(st, e, m);
            if self.degree_order_ok(st, e) {
                let b = self.bound(st, e);
                if !self.prune(st, b, e) {
                    self.dfs(st, e + 1);
                }
            }
            self.unassign(st, e);
            if st.over {
                return;
            }
        }
    }

    fn fresh_state(&self) -> State {
        State {
            w: vec![0; self.edges.len()],
            set_sum: vec![0; self.set_count],
            set_left: vec![self.edges_per_set; self.set_count],
            deg: vec![0; self.n],
            sum: 0,
            profile: MultiplicityProfile::new(),
            best: None,
            nodes: 0,
            over: false,
        }
    }

    fn witness(&self, w: &[u32]) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            g.set(u, v, w[e]);
        }
        g
    }
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// ex_Σ(n, s, q) or ex_Π(n, s, q) over multiplicities in [0, max_mult].
///
/// The search is split into independent subtrees by the first two edge
/// values, each seeded with the same incumbent, so values, witnesses and node
/// counts do not depend on scheduling. The budget caps the nodes of each
/// subtree; when any subtree hits it the best graph found is returned with
/// status `LowerBound`.
pub fn brute_force_extremal(n: usize, s: usize, q: u64, objective: Objective, opts: OracleOptions) -> Result<OracleResult> {
    if s < 2 {
        return Err(Error::input("s must be at least 2"));
    }
    if n < s {
        return Err(Error::input("n < s leaves every multigraph unconstrained"));
    }
    if n > 9 {
        return Err(Error::budget("oracle beyond 9 vertices", binomial(n as u64, 2), opts.budget));
    }
    let max_mult = opts.max_mult.map_or(q, |m| (m as u64).min(q)) as u32;
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let sets = k_subsets(n, s);
    let mut sets_of_edge = vec![Vec::new(); edges.len()];
    for (x, set) in sets.iter().enumerate() {
        for (e, &(u, v)) in edges.iter().enumerate() {
            if set.contains(&u) && set.contains(&v) {
                sets_of_edge[e].push(x);
            }
        }
    }
    let prob = Problem {
        n,
        q,
        max_mult,
        objective,
        degree_order: opts.degree_order,
        edges,
        sets_of_edge,
        set_count: sets.len(),
        edges_per_set: (s * (s - 1) / 2) as u64,
        multiplicity: binomial(n as u64 - 2, s as u64 - 2) as f64,
        budget: opts.budget,
    };

    // Incumbent: the better of the uniform ⌊q/C(s,2)⌋ graph and the first
    // greedy descent.
    let mut seed = prob.fresh_state();
    let uniform = (q / prob.edges_per_set).min(max_mult as u64) as u32;
    for e in 0..prob.edges.len() {
        prob.assign(&mut seed, e, uniform);
    }
    prob.leaf(&mut seed);
    for e in (0..prob.edges.len()).rev() {
        prob.unassign(&mut seed, e);
    }
    {
        let mut greedy = prob.fresh_state();
        greedy.best = seed.best.clone();
        for e in 0..prob.edges.len() {
            let c = prob.cap(&greedy, e);
            prob.assign(&mut greedy, e, c);
        }
        if (0..prob.edges.len()).all(|e| prob.degree_order_ok(&greedy, e)) {
            prob.leaf(&mut greedy);
        }
        seed.best = greedy.best;
    }
    let incumbent = seed.best.clone();

    let e_count = prob.edges.len();
    let roots: Vec<(u32, Option<u32>)> = {
        let st = prob.fresh_state();
        let c0 = prob.cap(&st, 0);
        let mut out = Vec::new();
        for m0 in (0..=c0).rev() {
            if e_count == 1 {
                out.push((m0, None));
                continue;
            }
            let mut st = prob.fresh_state();
            prob.assign(&mut st, 0, m0);
            let c1 = prob.cap(&st, 1);
            for m1 in (0..=c1).rev() {
                out.push((m0, Some(m1)));
            }
        }
        out
    };
    let outcomes = par::map(&roots, |&(m0, m1)| {
        let mut st = prob.fresh_state();
        st.best = incumbent.clone();
        prob.assign(&mut st, 0, m0);
        let mut depth = 1;
        if let Some(m1) = m1 {
            prob.assign(&mut st, 1, m1);
            depth = 2;
        }
        let ok = (0..depth).all(|e| prob.degree_order_ok(&st, e));
        if ok && !prob.prune(&st, prob.bound(&st, depth - 1), depth - 1) {
            prob.dfs(&mut st, depth);
        }
        (st.best, st.nodes, st.over)
    });

    let mut best = incumbent;
    let mut nodes = roots.len() as u64;
    let mut over = false;
    for (b, cnt, o) in outcomes {
        nodes = nodes.saturating_add(cnt);
        over |= o;
        if let Some((val, wit)) = b {
            let take = match &best {
                None => true,
                Some((bv, bw)) => match val.cmp_value(bv) {
                    Ordering::Greater => true,
                    Ordering::Equal => wit < *bw,
                    Ordering::Less => false,
                },
            };
            if take {
                best = Some((val, wit));
            }
        }
    }
    let (value, w) = best.expect("the all-zero graph is always feasible");
    Ok(OracleResult {
        objective,
        value,
        witness: prob.witness(&w),
        nodes_explored: nodes,
        status: if over { OracleStatus::LowerBound } else { OracleStatus::Exact },
    })
}

/// The exact extremal value, or a budget error carrying the lower bound in
/// its message when the search did not finish.
pub fn extremal_value(n: usize, s: usize, q: u64, objective: Objective, opts: OracleOptions) -> Result<Value> {
    let r = brute_force_extremal(n, s, q, objective, opts)?;
    match r.status {
        OracleStatus::Exact => Ok(r.value),
        OracleStatus::LowerBound => Err(Error::budget(
            alloc::format!("oracle ({n},{s},{q}); best found {:?} is only a lower bound", r.value),
            r.nodes_explored as u128,
            opts.budget,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: usize, s: usize, q: u64, obj: Objective) -> OracleResult {
        brute_force_extremal(n, s, q, obj, OracleOptions::default()).unwrap()
    }

    #[test]
    fn trivial_cases() {
        let r = run(3, 3, 3, Objective::Sum);
        assert_eq!(r.value, Value::Sum(3));
        assert_eq!(r.status, OracleStatus::Exact);
        let r = run(4, 2, 3, Objective::Product);
        assert_eq!(r.value, Value::Product(MultiplicityProfile::from_counts(&[(3, 6)])));
        let r = run(4, 3, 6, Objective::Product);
        assert_eq!(r.value, Value::Product(MultiplicityProfile::from_counts(&[(2, 6)])));
    }

    #[test]
    fn witness_is_feasible() {
        let r = run(5, 3, 4, Objective::Sum);
        assert!(r.witness.is_sq_graph(3, 4, false).unwrap().holds);
        assert_eq!(Value::Sum(r.witness.total_sum()), r.value);
    }

    #[test]
    fn lexicographic_witness_without_symmetry() {
        let opts = OracleOptions { degree_order: false, ..OracleOptions::default() };
        let r = brute_force_extremal(3, 3, 3, Objective::Sum, opts).unwrap();
        // smallest edge vector (w01, w02, w12) with sum 3
        assert_eq!((r.witness.get(0, 1), r.witness.get(0, 2), r.witness.get(1, 2)), (0, 0, 3));
    }

    #[test]
    fn budget_gives_lower_bound() {
        let opts = OracleOptions { budget: 10, ..OracleOptions::default() };
        let r = brute_force_extremal(5, 4, 15, Objective::Product, opts).unwrap();
        assert_eq!(r.status, OracleStatus::LowerBound);
    }
}
