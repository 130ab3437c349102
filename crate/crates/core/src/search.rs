//! Enumeration of small simple graphs under degree and girth caps, and the
//! survey that ranks their lifted patterns by density for each q.
//!
//! Graphs are grown one vertex at a time. Degree caps and girth are
//! hereditary, and every connected graph has a vertex whose removal leaves it
//! connected, so extending each canonical graph on k vertices by one new
//! vertex reaches every class on k+1 vertices. Filters are applied while
//! choosing the new vertex's neighbourhood.
//!
//! Canonical form: the lexicographically smallest upper-triangle bitstring
//! (graph6 column order) over the leaves of an individualisation–refinement
//! tree. The tree only depends on the isomorphism class, so the minimum is a
//! complete invariant.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::admissibility::{blowup_sum_at, sum_bracket};
use crate::catalog::lift_graph_pattern;
use crate::density::{pi_density, sigma_density, Density, PI_TOL};
use crate::graph::SimpleGraph;
use crate::pattern::Pattern;
use crate::{choose2, par, Error, Objective, Result};

/// Largest order accepted by the enumerator.
pub const MAX_ENUMERATION_VERTICES: usize = 11;

/// Upper-triangle bits in graph6 order, first bit most significant.
fn code_for(g: &SimpleGraph, lab: &[usize]) -> u128 {
    let mut code = 0u128;
    for j in 1..lab.len() {
        for i in 0..j {
            code = code << 1 | g.has_edge(lab[i], lab[j]) as u128;
        }
    }
    code
}

// Splits cells by (neighbour counts in every cell) until stable. Sub-cells
// are ordered by their signatures, so the result is label-independent.
fn refine(g: &SimpleGraph, cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u64> = cells.iter().map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|&m| (g.neighbours(v) & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|e| e.1).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

// Vertices of the cell are pairwise interchangeable: same neighbours outside
// the cell and the cell is a clique or an independent set.
fn is_twin_cell(g: &SimpleGraph, cell: &[usize]) -> bool {
    let mask = cell.iter().fold(0u64, |m, &v| m | 1 << v);
    let outside = g.neighbours(cell[0]) & !mask;
    let inside = (g.neighbours(cell[0]) & mask).count_ones();
    let clique = inside as usize == cell.len() - 1;
    if inside != 0 && !clique {
        return false;
    }
    cell.iter().all(|&v| {
        let nb = g.neighbours(v);
        nb & !mask == outside && (nb & mask).count_ones() == inside
    })
}

fn canon_rec(g: &SimpleGraph, mut cells: Vec<Vec<usize>>, best: &mut Option<(u128, Vec<usize>)>) {
    refine(g, &mut cells);
    let Some(pos) = cells.iter().position(|c| c.len() > 1) else {
        let lab: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_for(g, &lab);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, lab));
        }
        return;
    };
    let cell = cells[pos].clone();
    let choices: &[usize] = if is_twin_cell(g, &cell) { &cell[..1] } else { &cell };
    for &v in choices {
        let mut next = Vec::with_capacity(cells.len() + 1);
        next.extend_from_slice(&cells[..pos]);
        next.push(vec![v]);
        next.push(cell.iter().copied().filter(|&u| u != v).collect());
        next.extend_from_slice(&cells[pos + 1..]);
        canon_rec(g, next, best);
    }
}

/// A graph relabelled into canonical position together with its code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub graph: SimpleGraph,
    pub code: u128,
}

pub fn canonical_form(g: &SimpleGraph) -> Result<Canonical> {
    let n = g.n();
    if n > 16 {
        return Err(Error::input("canonical codes are limited to 16 vertices"));
    }
    if n == 0 {
        return Ok(Canonical { graph: g.clone(), code: 0 });
    }
    let mut best = None;
    canon_rec(g, vec![(0..n).collect()], &mut best);
    let (code, lab) = best.expect("at least one leaf");
    // lab[i] is the old vertex placed at position i
    let mut perm = vec![0; n];
    for (i, &v) in lab.iter().enumerate() {
        perm[v] = i;
    }
    Ok(Canonical { graph: g.permuted(&perm), code })
}

// dist[u][w] by BFS, usize::MAX when disconnected.
fn distances(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    (0..n)
        .map(|s| {
            let mut d = vec![usize::MAX; n];
            d[s] = 0;
            let mut frontier = 1u64 << s;
            let mut seen = frontier;
            let mut depth = 0;
            while frontier != 0 {
                depth += 1;
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= g.neighbours(v);
                }
                next &= !seen;
                seen |= next;
                let mut f = next;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    d[v] = depth;
                }
                frontier = next;
            }
            d
        })
        .collect()
}

// Neighbourhoods for a new vertex that keep max degree ≤ max_deg and girth
// ≥ min_girth.
fn extensions(g: &SimpleGraph, max_deg: usize, min_girth: usize, connected_only: bool) -> Vec<u64> {
    let n = g.n();
    let eligible: Vec<usize> = (0..n).filter(|&v| g.degree(v) < max_deg).collect();
    let dist = if min_girth > 3 { distances(g) } else { Vec::new() };
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    fn rec(
        start: usize,
        eligible: &[usize],
        chosen: &mut Vec<usize>,
        dist: &[Vec<usize>],
        max_deg: usize,
        min_girth: usize,
        connected_only: bool,
        out: &mut Vec<u64>,
    ) {
        if !(connected_only && chosen.is_empty()) {
            out.push(chosen.iter().fold(0u64, |m, &v| m | 1 << v));
        }
        if chosen.len() == max_deg {
            return;
        }
        for i in start..eligible.len() {
            let v = eligible[i];
            if min_girth > 3 && chosen.iter().any(|&u| dist[u][v] != usize::MAX && dist[u][v] + 2 < min_girth) {
                continue;
            }
            chosen.push(v);
            rec(i + 1, eligible, chosen, dist, max_deg, min_girth, connected_only, out);
            chosen.pop();
        }
    }
    rec(0, &eligible, &mut chosen, &dist, max_deg, min_girth, connected_only, &mut out);
    out
}

fn extend(g: &SimpleGraph, nb: u64) -> SimpleGraph {
    let n = g.n();
    let mut h = SimpleGraph::empty(n + 1);
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    for u in 0..n {
        if nb >> u & 1 == 1 {
            h.add_edge(u, n);
        }
    }
    h
}

/// One level per order 1..=max_n, each sorted by canonical code.
fn levels(max_n: usize, max_deg: usize, min_girth: usize, connected_only: bool) -> Result<Vec<Vec<Canonical>>> {
    if max_n == 0 {
        return Err(Error::input("graphs need at least one vertex"));
    }
    if max_n > MAX_ENUMERATION_VERTICES {
        return Err(Error::budget(
            alloc::format!("graph enumeration on {max_n} vertices"),
            1u128 << choose2(max_n as u64).min(127),
            1u64 << choose2(MAX_ENUMERATION_VERTICES as u64).min(63),
        ));
    }
    let mut out = vec![vec![canonical_form(&SimpleGraph::empty(1))?]];
    for _ in 1..max_n {
        let prev = out.last().expect("non-empty");
        let children = par::map(prev, |c| {
            extensions(&c.graph, max_deg, min_girth, connected_only)
                .into_iter()
                .map(|nb| canonical_form(&extend(&c.graph, nb)).expect("small graph"))
                .collect::<Vec<_>>()
        });
        let mut uniq: BTreeMap<u128, SimpleGraph> = BTreeMap::new();
        for c in children.into_iter().flatten() {
            uniq.entry(c.code).or_insert(c.graph);
        }
        out.push(uniq.into_iter().map(|(code, graph)| Canonical { graph, code }).collect());
    }
    Ok(out)
}

/// One canonical representative per isomorphism class of graphs on exactly
/// `n` vertices with Δ ≤ max_deg and girth ≥ min_girth (forests always
/// qualify), ordered by canonical code.
pub fn enumerate_graphs(n: usize, max_deg: usize, min_girth: usize, connected_only: bool) -> Result<Vec<SimpleGraph>> {
    let mut lv = levels(n, max_deg, min_girth, connected_only)?;
    Ok(lv.pop().expect("n ≥ 1").into_iter().map(|c| c.graph).collect())
}

/// As `enumerate_graphs`, for every order 1..=max_n, smaller orders first.
pub fn enumerate_graphs_up_to(
    max_n: usize,
    max_deg: usize,
    min_girth: usize,
    connected_only: bool,
) -> Result<Vec<SimpleGraph>> {
    Ok(levels(max_n, max_deg, min_girth, connected_only)?.into_iter().flatten().map(|c| c.graph).collect())
}

/// A candidate pattern in the survey: the single-vertex loop-a pattern
/// (every edge a), or a lifted graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    /// "all-a" or the graph6 string of the canonical graph.
    pub label: String,
    pub graph: Option<SimpleGraph>,
    pub density: Density,
    /// Σ_P(s) bracket; equal ends mean the value is known.
    pub sum_lo: u64,
    pub sum_hi: u64,
    exact_sum: Option<u64>,
}

impl Candidate {
    pub fn sum_at_s(&self) -> Option<u64> {
        if self.sum_lo == self.sum_hi {
            Some(self.sum_lo)
        } else {
            self.exact_sum
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurveyRow {
    pub q: u64,
    /// Best density among admissible candidates. This is a lower bound on the
    /// extremal density; it equals it only where a theorem says so.
    pub best: Density,
    /// Indices into `Survey::candidates` attaining `best`.
    pub winners: Vec<usize>,
}

impl SurveyRow {
    pub fn tie_count(&self) -> usize {
        self.winners.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Survey {
    pub candidates: Vec<Candidate>,
    pub rows: Vec<SurveyRow>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurveyConfig {
    pub s: u64,
    pub a: u32,
    pub max_n: usize,
    pub max_deg: usize,
    pub min_girth: usize,
    pub objective: Objective,
    pub budget: u64,
}

fn density_of(p: &Pattern, objective: Objective) -> Result<Density> {
    Ok(match objective {
        Objective::Sum => Density::Sigma(sigma_density(p)?.value),
        Objective::Product => Density::Pi(pi_density(p, PI_TOL)?.value),
    })
}

fn same_density(x: &Density, y: &Density) -> bool {
    match (x, y) {
        (Density::Sigma(a), Density::Sigma(b)) => a == b,
        (Density::Pi(a), Density::Pi(b)) => (a - b).abs() <= 1e-9 * a.abs().max(1.0),
        _ => false,
    }
}

fn greater_density(x: &Density, y: &Density) -> bool {
    match (x, y) {
        (Density::Sigma(a), Density::Sigma(b)) => a > b,
        (Density::Pi(a), Density::Pi(b)) => *a > *b && !same_density(x, y),
        _ => false,
    }
}

/// For each q, the admissible candidates (Σ_P(s) ≤ q) of largest density.
/// Candidates are the all-a pattern and G^(a) for every connected graph G on
/// at most max_n vertices with Δ ≤ max_deg and girth ≥ min_girth. Σ_P(s) is
/// settled once per candidate, by the exact optimiser only when some q falls
/// inside its bracket.
pub fn survey(cfg: &SurveyConfig, q_list: &[u64]) -> Result<Survey> {
    if cfg.a == 0 {
        return Err(Error::domain("lifted graph patterns need a ≥ 1"));
    }
    let graphs = enumerate_graphs_up_to(cfg.max_n, cfg.max_deg, cfg.min_girth, true)?;
    let baseline = Pattern::new(&[cfg.a], &[])?;
    let base_sum = cfg.a as u64 * choose2(cfg.s);
    let mut candidates = vec![Candidate {
        label: "all-a".to_string(),
        graph: None,
        density: density_of(&baseline, cfg.objective)?,
        sum_lo: base_sum,
        sum_hi: base_sum,
        exact_sum: None,
    }];
    let evaluated = par::map(&graphs, |h| -> Result<Candidate> {
        let p = lift_graph_pattern(h, cfg.a)?;
        let density = density_of(&p, cfg.objective)?;
        let b = sum_bracket(&p, cfg.s)?;
        let exact_sum = if q_list.iter().any(|&q| b.lo <= q && q < b.hi) {
            Some(blowup_sum_at(&p, cfg.s, cfg.budget)?)
        } else {
            None
        };
        Ok(Candidate { label: h.to_graph6(), graph: Some(h.clone()), density, sum_lo: b.lo, sum_hi: b.hi, exact_sum })
    });
    for c in evaluated {
        candidates.push(c?);
    }
    let admissible = |c: &Candidate, q: u64| match c.sum_at_s() {
        Some(v) => v <= q,
        None => c.sum_hi <= q,
    };
    let mut rows = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let mut best: Option<Density> = None;
        let mut winners: Vec<usize> = Vec::new();
        for (i, c) in candidates.iter().enumerate() {
            if !admissible(c, q) {
                continue;
            }
            match &best {
                Some(b) if same_density(&c.density, b) => winners.push(i),
                Some(b) if !greater_density(&c.density, b) => {}
                _ => {
                    best = Some(c.density.clone());
                    winners = vec![i];
                }
            }
        }
        let best = best.ok_or_else(|| Error::domain(alloc::format!("no admissible candidate at q = {q}")))?;
        rows.push(SurveyRow { q, best, winners });
    }
    Ok(Survey { candidates, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::petersen;

    #[test]
    fn canonical_is_invariant() {
        let p = petersen();
        let c1 = canonical_form(&p).unwrap();
        let perm: Vec<usize> = (0..10).map(|i| (i * 3 + 1) % 10).collect();
        let c2 = canonical_form(&p.permuted(&perm)).unwrap();
        assert_eq!(c1, c2);
        assert_ne!(canonical_form(&SimpleGraph::cycle(6)).unwrap().code, canonical_form(&SimpleGraph::path(6)).unwrap().code);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_graphs(5, 2, 3, true).unwrap().len(), 2);
        assert_eq!(enumerate_graphs(4, 3, 3, false).unwrap().len(), 11);
        // connected graphs on 5 vertices
        assert_eq!(enumerate_graphs(5, 4, 3, true).unwrap().len(), 21);
        // all graphs on 6 vertices
        assert_eq!(enumerate_graphs(6, 5, 0, false).unwrap().len(), 156);
    }

    #[test]
    fn petersen_unique_cubic() {
        let gs = enumerate_graphs(10, 3, 5, true).unwrap();
        let cubic: Vec<_> = gs.iter().filter(|g| g.is_regular(3)).collect();
        assert_eq!(cubic.len(), 1);
        assert_eq!(cubic[0].girth(), Some(5));
    }
}
