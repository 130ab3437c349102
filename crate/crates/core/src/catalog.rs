//! Named patterns: generalised Turán patterns, lifted graph patterns G^(a)
//! and the small-a families.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::graph::SimpleGraph;
use crate::pattern::Pattern;
use crate::{Error, Result};

/// Block sizes r = (r_0, …, r_d) and ambient multiplicity a of TUR(r, a).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TuranSpec {
    pub r: Vec<u32>,
    pub a: u32,
}

impl TuranSpec {
    pub fn new(r: Vec<u32>, a: u32) -> Result<Self> {
        let spec = TuranSpec { r, a };
        spec.check_shape()?;
        Ok(spec)
    }

    /// The shape (r_0, 0, …, 0, r_d) with d ≥ 1, or (r_0) when d = 0.
    pub fn two_block(r0: u32, rd: u32, d: usize, a: u32) -> Result<Self> {
        let mut r = vec![0; d + 1];
        r[0] = r0;
        r[d] = if d == 0 { r0 } else { rd };
        Self::new(r, a)
    }

    fn check_shape(&self) -> Result<()> {
        match (self.r.first(), self.r.last()) {
            (Some(&r0), Some(&rd)) if r0 > 0 && rd > 0 => Ok(()),
            _ => Err(Error::input("Turán block sizes need r_0 > 0 and r_d > 0")),
        }
    }

    pub fn d(&self) -> usize {
        self.r.len() - 1
    }

    pub fn r0(&self) -> u32 {
        self.r[0]
    }

    pub fn rd(&self) -> u32 {
        self.r[self.d()]
    }

    /// Total vertex count R.
    pub fn vertex_count(&self) -> usize {
        self.r.iter().map(|&x| x as usize).sum()
    }

    /// All multiplicities are non-negative iff a ≥ d.
    pub fn is_valid(&self) -> bool {
        self.a as usize >= self.d()
    }

    /// True for (r_0) and (r_0, 0, …, 0, r_d).
    pub fn is_two_block(&self) -> bool {
        self.r[1..self.r.len().saturating_sub(1).max(1)].iter().all(|&x| x == 0)
    }

    /// Block index of every pattern vertex, blocks in increasing order.
    pub fn block_of_vertices(&self) -> Vec<usize> {
        self.r.iter().enumerate().flat_map(|(j, &rj)| core::iter::repeat_n(j, rj as usize)).collect()
    }
}

/// TUR(r, a): a vertex in block j has loop a−j; two vertices in blocks
/// j ≤ j′ are joined with multiplicity a−j+1.
pub fn make_turan_pattern(spec: &TuranSpec) -> Result<Pattern> {
    spec.check_shape()?;
    if !spec.is_valid() {
        return Err(Error::domain(format!(
            "TUR needs a ≥ d (a = {}, d = {}) to keep multiplicities non-negative",
            spec.a,
            spec.d()
        )));
    }
    let block = spec.block_of_vertices();
    let a = spec.a;
    Ok(Pattern::from_fn(block.len(), |u, v| {
        if u == v {
            a - block[u] as u32
        } else {
            a - block[u].min(block[v]) as u32 + 1
        }
    }))
}

/// G^(a): loops a−1, pairs a+1 on edges of H and a on non-edges.
pub fn lift_graph_pattern(h: &SimpleGraph, a: u32) -> Result<Pattern> {
    if a == 0 {
        return Err(Error::domain("lifted graph patterns need a ≥ 1"));
    }
    Ok(Pattern::from_fn(h.n(), |u, v| {
        if u == v {
            a - 1
        } else if h.has_edge(u, v) {
            a + 1
        } else {
            a
        }
    }))
}

fn one_indexed(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
    let e: Vec<_> = edges.iter().map(|&(u, v)| (u - 1, v - 1)).collect();
    SimpleGraph::from_edges(n, &e).expect("hardcoded edge list")
}

pub fn h6() -> SimpleGraph {
    one_indexed(6, &[(1, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
}

pub fn h7() -> SimpleGraph {
    one_indexed(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (1, 6), (6, 7), (7, 4)])
}

pub fn h9() -> SimpleGraph {
    one_indexed(
        9,
        &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (1, 7), (7, 4), (2, 8), (8, 5), (3, 9), (9, 6)],
    )
}

/// Outer 5-cycle 0..4, spokes i–(i+5), inner pentagram on 5..9.
pub fn petersen() -> SimpleGraph {
    let mut g = SimpleGraph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    g
}

/// The 5-regular Clebsch graph (folded 5-cube): 4-bit words joined when they
/// differ in one bit or in all four.
pub fn clebsch() -> SimpleGraph {
    let mut g = SimpleGraph::empty(16);
    for u in 0..16usize {
        for v in u + 1..16 {
            let d = (u ^ v).count_ones();
            if d == 1 || d == 4 {
                g.add_edge(u, v);
            }
        }
    }
    g
}

/// Point–line incidence graph of PG(2,3): points 0..13, lines 13..26.
pub fn h26() -> SimpleGraph {
    // Normalised representatives of the 13 projective points over F_3:
    // first non-zero coordinate equal to 1.
    let mut pts: Vec<[u32; 3]> = Vec::new();
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let v = [x, y, z];
                if let Some(&lead) = v.iter().find(|&&c| c != 0) {
                    if lead == 1 {
                        pts.push(v);
                    }
                }
            }
        }
    }
    let mut g = SimpleGraph::empty(26);
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % 3 == 0 {
                g.add_edge(i, 13 + j);
            }
        }
    }
    g
}

/// {K_{1,3}, C_5, H_6, H_7, H_9, Petersen}.
pub fn c5_family() -> Vec<(&'static str, SimpleGraph)> {
    vec![
        ("K1_3", SimpleGraph::star(3)),
        ("C_5", SimpleGraph::cycle(5)),
        ("H6", h6()),
        ("H7", h7()),
        ("H9", h9()),
        ("Petersen", petersen()),
    ]
}

/// A parsed catalog name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Named {
    Graph(String, SimpleGraph),
    /// Edge of multiplicity a+2 with loops a−1.
    Pplus2,
    /// Edge of multiplicity a+1 with loops a and a−1.
    K1Inf,
}

fn parse_len(tag: &str, digits: &str, ell: Option<usize>) -> Result<usize> {
    if digits == "l" || digits.is_empty() {
        ell.ok_or_else(|| Error::input(format!("{tag}_l needs the parameter ℓ")))
    } else {
        digits.parse().map_err(|_| Error::input(format!("bad length in `{tag}_{digits}`")))
    }
}

/// Resolves a catalog name. `K1_<ℓ>`, `P_<ℓ>` and `C_<ℓ>` take their
/// length from the suffix, or from `ell` when written `K1_l`, `P_l`, `C_l`.
pub fn lookup(name: &str, ell: Option<usize>) -> Result<Named> {
    let lower = name.to_ascii_lowercase();
    let graph = |g: SimpleGraph| Ok(Named::Graph(name.to_string(), g));
    match lower.as_str() {
        "h6" => return graph(h6()),
        "h7" => return graph(h7()),
        "h9" => return graph(h9()),
        "petersen" => return graph(petersen()),
        "clebsch" => return graph(clebsch()),
        "h26" => return graph(h26()),
        "pplus2" | "p_+2" => return Ok(Named::Pplus2),
        "k1_inf" => return Ok(Named::K1Inf),
        _ => {}
    }
    if let Some(rest) = lower.strip_prefix("k1_") {
        let l = parse_len("K1", rest, ell)?;
        if !(1..=63).contains(&l) {
            return Err(Error::input("K1_ℓ needs 1 ≤ ℓ ≤ 63"));
        }
        return graph(SimpleGraph::star(l));
    }
    if let Some(rest) = lower.strip_prefix("p_") {
        let l = parse_len("P", rest, ell)?;
        if !(1..=64).contains(&l) {
            return Err(Error::input("P_ℓ needs 1 ≤ ℓ ≤ 64"));
        }
        return graph(SimpleGraph::path(l));
    }
    if let Some(rest) = lower.strip_prefix("c_") {
        let l = parse_len("C", rest, ell)?;
        if !(3..=64).contains(&l) {
            return Err(Error::input("C_ℓ needs 3 ≤ ℓ ≤ 64"));
        }
        return graph(SimpleGraph::cycle(l));
    }
    Err(Error::input(format!("unknown pattern name `{name}`")))
}

/// Pattern for a catalog name at ambient multiplicity a.
pub fn named_pattern(name: &str, a: u32, ell: Option<usize>) -> Result<Pattern> {
    if a == 0 {
        return Err(Error::domain(format!("`{name}` needs a ≥ 1")));
    }
    match lookup(name, ell)? {
        Named::Graph(_, g) => lift_graph_pattern(&g, a),
        Named::Pplus2 => Pattern::new(&[a - 1, a - 1], &[(0, 1, a + 2)]),
        Named::K1Inf => Pattern::new(&[a, a - 1], &[(0, 1, a + 1)]),
    }
}

/// The linear order on pairs (r, a): first by a, then by the first index
/// where the tuples differ, with a proper initial segment ranking lower.
pub fn turan_order_compare(s1: &TuranSpec, s2: &TuranSpec) -> Ordering {
    s1.a.cmp(&s2.a).then_with(|| {
        for (x, y) in s1.r.iter().zip(&s2.r) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                other => return other,
            }
        }
        s1.r.len().cmp(&s2.r.len())
    })
}
