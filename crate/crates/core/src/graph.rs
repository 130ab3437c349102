//! Dense multigraphs and small simple graphs.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::profile::MultiplicityProfile;
use crate::{Error, Result};

/// Complete multigraph on `n` labelled vertices; every pair carries a
/// multiplicity, absent edges are multiplicity 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Multigraph {
    n: usize,
    // Row-major n×n, symmetric, zero diagonal.
    w: Vec<u32>,
}

/// Outcome of an (s,q) membership test. `witness` is the first violating
/// s-set in colex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqCheck {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, w: vec![0; n * n] }
    }

    /// Every pair has multiplicity `m`.
    pub fn uniform(n: usize, m: u32) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v, m);
            }
        }
        g
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut g = Self::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set(u, v, f(u, v));
            }
        }
        g
    }

    /// Builds from `(u, v, m)` triples; unspecified pairs are 0.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v, m) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::input(format!("bad pair ({u}, {v}) for n = {n}")));
            }
            g.set(u, v, m);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> u32 {
        self.w[u * self.n + v]
    }

    #[inline]
    pub fn set(&mut self, u: usize, v: usize, m: u32) {
        debug_assert!(u != v);
        self.w[u * self.n + v] = m;
        self.w[v * self.n + u] = m;
    }

    /// Pairs `(u, v, m)` with u < v in lexicographic order, including zeros.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.n).flat_map(move |u| (u + 1..self.n).map(move |v| (u, v, self.get(u, v))))
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.w.iter().copied().max().unwrap_or(0)
    }

    fn check_subset(&self, x: &[usize]) -> Result<()> {
        for &v in x {
            if v >= self.n {
                return Err(Error::input(format!("vertex {v} out of range for n = {}", self.n)));
            }
        }
        let mut seen = x.to_vec();
        seen.sort_unstable();
        if seen.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::input("repeated vertex in subset"));
        }
        Ok(())
    }

    /// e_G(X): sum of multiplicities over pairs inside X.
    pub fn edge_sum(&self, x: &[usize]) -> Result<u64> {
        self.check_subset(x)?;
        let mut e = 0u64;
        for (i, &u) in x.iter().enumerate() {
            for &v in &x[i + 1..] {
                e += self.get(u, v) as u64;
            }
        }
        Ok(e)
    }

    /// P_G(X) as a multiplicity profile.
    pub fn edge_product(&self, x: &[usize]) -> Result<MultiplicityProfile> {
        self.check_subset(x)?;
        let mut p = MultiplicityProfile::new();
        for (i, &u) in x.iter().enumerate() {
            for &v in &x[i + 1..] {
                p.add(self.get(u, v), 1);
            }
        }
        Ok(p)
    }

    pub fn total_sum(&self) -> u64 {
        self.pairs().map(|(_, _, m)| m as u64).sum()
    }

    pub fn total_product(&self) -> MultiplicityProfile {
        let mut p = MultiplicityProfile::new();
        for (_, _, m) in self.pairs() {
            p.add(m, 1);
        }
        p
    }

    /// d_X(v) = Σ_{u ∈ X} w(uv); `v` itself is skipped if it lies in X.
    pub fn degree_in(&self, v: usize, x: &[usize]) -> u64 {
        x.iter().filter(|&&u| u != v).map(|&u| self.get(u, v) as u64).sum()
    }

    pub fn degree(&self, v: usize) -> u64 {
        (0..self.n).filter(|&u| u != v).map(|u| self.get(u, v) as u64).sum()
    }

    /// ln of the product degree p_G(v) = Π_{u≠v} w(uv); -∞ if any factor is 0.
    pub fn log_product_degree(&self, v: usize) -> f64 {
        let mut p = MultiplicityProfile::new();
        for u in (0..self.n).filter(|&u| u != v) {
            p.add(self.get(u, v), 1);
        }
        p.log_value()
    }

    /// Tests whether every s-subset spans at most q. With `s > n` the answer
    /// is vacuous and only given when `allow_vacuous` is set.
    pub fn is_sq_graph(&self, s: usize, q: u64, allow_vacuous: bool) -> Result<SqCheck> {
        if s < 2 {
            return Err(Error::input("s must be at least 2"));
        }
        if s > self.n {
            return if allow_vacuous {
                Ok(SqCheck { holds: true, witness: None })
            } else {
                Err(Error::input(format!("s = {s} exceeds n = {}", self.n)))
            };
        }
        let maxw = self.max_multiplicity() as u64;
        let mut chosen = Vec::with_capacity(s);
        let witness = self.colex_violator(s, self.n, q, maxw, 0, &mut chosen);
        Ok(SqCheck { holds: witness.is_none(), witness })
    }

    // Picks the largest remaining element first, in ascending order, which
    // enumerates s-sets in colex order.
    fn colex_violator(
        &self,
        need: usize,
        below: usize,
        q: u64,
        maxw: u64,
        partial: u64,
        chosen: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if need == 0 {
            if partial > q {
                let mut w = chosen.clone();
                w.sort_unstable();
                return Some(w);
            }
            return None;
        }
        let have = chosen.len() as u64;
        let r = need as u64;
        if partial + maxw * (r * (r - 1) / 2 + r * have) <= q {
            return None;
        }
        for top in need - 1..below {
            let add: u64 = chosen.iter().map(|&u| self.get(u, top) as u64).sum();
            chosen.push(top);
            let hit = self.colex_violator(need - 1, top, q, maxw, partial + add, chosen);
            chosen.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }

    /// Adds a vertex joined to everything with multiplicity `m`.
    pub fn with_extra_vertex(&self, m: u32) -> Multigraph {
        let n = self.n + 1;
        Multigraph::from_fn(n, |u, v| if v == n - 1 { m } else { self.get(u, v) })
    }
}

/// Simple graph on at most 64 vertices, adjacency as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= 64, "simple graphs are limited to 64 vertices");
        SimpleGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > 64 {
            return Err(Error::input("simple graphs are limited to 64 vertices"));
        }
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::input(format!("bad edge ({u}, {v}) for n = {n}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Self {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &e).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// K_{1,ℓ}: vertex 0 is the centre.
    pub fn star(leaves: usize) -> Self {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &e).expect("valid star")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    e.push((u, v));
                }
            }
        }
        e
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[u] + 1 >= b) {
                    break;
                }
                let mut nb = self.adj[u];
                while nb != 0 {
                    let v = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            seen |= comp;
            out.push((0..self.n).filter(|&v| comp >> v & 1 == 1).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn induced(&self, vs: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// graph6 encoding: N(n) followed by the upper triangle in column order
    /// (0,1),(0,2),(1,2),(0,3),… packed six bits per printable byte.
    pub fn to_graph6(&self) -> String {
        let mut out = String::new();
        let n = self.n;
        if n <= 62 {
            out.push((n as u8 + 63) as char);
        } else {
            out.push('~');
            for shift in [12, 6, 0] {
                out.push((((n >> shift) & 63) as u8 + 63) as char);
            }
        }
        let mut acc = 0u8;
        let mut bits = 0;
        for v in 1..n {
            for u in 0..v {
                acc = acc << 1 | self.has_edge(u, v) as u8;
                bits += 1;
                if bits == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    bits = 0;
                }
            }
        }
        if bits > 0 {
            out.push(((acc << (6 - bits)) + 63) as char);
        }
        out
    }

    pub fn from_graph6(s: &str) -> Result<SimpleGraph> {
        let bytes: Vec<u8> = s.trim().bytes().collect();
        if bytes.is_empty() || bytes.iter().any(|&b| !(63..=126).contains(&b)) {
            return Err(Error::input("malformed graph6 string"));
        }
        let (n, rest) = if bytes[0] == 126 {
            if bytes.len() < 4 {
                return Err(Error::input("malformed graph6 header"));
            }
            let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &bytes[4..])
        } else {
            ((bytes[0] - 63) as usize, &bytes[1..])
        };
        if n > 64 {
            return Err(Error::input("graph6 graph exceeds 64 vertices"));
        }
        let need = (n * n.saturating_sub(1) / 2).div_ceil(6);
        if rest.len() != need {
            return Err(Error::input("graph6 body has the wrong length"));
        }
        let mut g = SimpleGraph::empty(n);
        let mut idx = 0;
        for v in 1..n {
            for u in 0..v {
                let byte = rest[idx / 6] - 63;
                if byte >> (5 - idx % 6) & 1 == 1 {
                    g.add_edge(u, v);
                }
                idx += 1;
            }
        }
        Ok(g)
    }
}
