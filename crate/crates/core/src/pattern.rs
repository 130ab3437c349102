//! Multigraph patterns: loop multiplicities on vertices, pair multiplicities
//! between distinct vertices.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::{Error, Result};

/// Pattern on `k` vertices. `a` stores the adjacency matrix A_P row-major:
/// off-diagonal entries are pair multiplicities, the diagonal holds loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    k: usize,
    a: Vec<u32>,
}

impl Pattern {
    /// All multiplicities zero.
    pub fn zero(k: usize) -> Self {
        Pattern { k, a: vec![0; k * k] }
    }

    /// `edges` lists `(u, v, m)`; omitted pairs are 0.
    pub fn new(loops: &[u32], edges: &[(usize, usize, u32)]) -> Result<Self> {
        let k = loops.len();
        let mut p = Self::zero(k);
        for (v, &l) in loops.iter().enumerate() {
            p.set_loop(v, l);
        }
        for &(u, v, m) in edges {
            if u >= k || v >= k || u == v {
                return Err(Error::input(format!("bad pattern pair ({u}, {v}) for k = {k}")));
            }
            p.set_pair(u, v, m);
        }
        Ok(p)
    }

    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut p = Self::zero(k);
        for u in 0..k {
            p.set_loop(u, f(u, u));
            for v in u + 1..k {
                p.set_pair(u, v, f(u, v));
            }
        }
        p
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Entry of A_P: loop on the diagonal, pair elsewhere.
    #[inline]
    pub fn entry(&self, u: usize, v: usize) -> u32 {
        self.a[u * self.k + v]
    }

    #[inline]
    pub fn loop_mult(&self, v: usize) -> u32 {
        self.entry(v, v)
    }

    #[inline]
    pub fn pair(&self, u: usize, v: usize) -> u32 {
        debug_assert!(u != v);
        self.entry(u, v)
    }

    pub fn set_loop(&mut self, v: usize, m: u32) {
        self.a[v * self.k + v] = m;
    }

    pub fn set_pair(&mut self, u: usize, v: usize, m: u32) {
        self.a[u * self.k + v] = m;
        self.a[v * self.k + u] = m;
    }

    pub fn loops(&self) -> Vec<u32> {
        (0..self.k).map(|v| self.loop_mult(v)).collect()
    }

    /// Pairs `(u, v, m)` with u < v.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.k).flat_map(move |u| (u + 1..self.k).map(move |v| (u, v, self.pair(u, v))))
    }

    /// The common loop multiplicity, if all loops agree.
    pub fn uniform_loop(&self) -> Option<u32> {
        let first = self.loop_mult(0);
        (1..self.k).all(|v| self.loop_mult(v) == first).then_some(first)
    }

    pub fn min_loop(&self) -> u32 {
        (0..self.k).map(|v| self.loop_mult(v)).min().unwrap_or(0)
    }

    pub fn max_entry(&self) -> u32 {
        self.a.iter().copied().max().unwrap_or(0)
    }

    /// Sub-pattern induced on `vs`, in the given order.
    pub fn induced(&self, vs: &[usize]) -> Pattern {
        Pattern::from_fn(vs.len(), |i, j| self.entry(vs[i], vs[j]))
    }

    /// Pattern with vertex `v` removed.
    pub fn without(&self, v: usize) -> Pattern {
        let keep: Vec<usize> = (0..self.k).filter(|&u| u != v).collect();
        self.induced(&keep)
    }

    /// A_P as i64 rows.
    pub fn matrix_i64(&self) -> Vec<Vec<i64>> {
        (0..self.k).map(|u| (0..self.k).map(|v| self.entry(u, v) as i64).collect()).collect()
    }

    /// A′_P: natural logs of the entries, -∞ for zero entries.
    pub fn log_matrix(&self) -> Vec<Vec<f64>> {
        (0..self.k)
            .map(|u| {
                (0..self.k)
                    .map(|v| match self.entry(u, v) {
                        0 => f64::NEG_INFINITY,
                        m => (m as f64).ln(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Vertex permutations preserving every entry of A_P, identity first,
    /// in lexicographic order of image tuples. Stops after `cap` elements.
    pub fn automorphisms(&self, cap: usize) -> Vec<Vec<usize>> {
        let k = self.k;
        let sig: Vec<Vec<u32>> = (0..k)
            .map(|v| {
                let mut row: Vec<u32> = (0..k).filter(|&u| u != v).map(|u| self.entry(u, v)).collect();
                row.sort_unstable();
                row.push(self.loop_mult(v));
                row
            })
            .collect();
        let mut out = Vec::new();
        let mut img = vec![usize::MAX; k];
        let mut used = vec![false; k];
        self.auto_rec(0, &sig, &mut img, &mut used, &mut out, cap);
        out
    }

    fn auto_rec(
        &self,
        v: usize,
        sig: &[Vec<u32>],
        img: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) {
        if out.len() >= cap {
            return;
        }
        if v == self.k {
            out.push(img.clone());
            return;
        }
        for w in 0..self.k {
            if used[w] || sig[w] != sig[v] {
                continue;
            }
            if (0..v).any(|u| self.entry(u, v) != self.entry(img[u], w)) {
                continue;
            }
            img[v] = w;
            used[w] = true;
            self.auto_rec(v + 1, sig, img, used, out, cap);
            used[w] = false;
            img[v] = usize::MAX;
        }
    }

    /// Classes of vertices any two of which can be swapped by an
    /// automorphism fixing everything else. Each class is sorted.
    pub fn twin_classes(&self) -> Vec<Vec<usize>> {
        let k = self.k;
        let twins = |u: usize, v: usize| {
            self.loop_mult(u) == self.loop_mult(v)
                && (0..k).filter(|&w| w != u && w != v).all(|w| self.entry(u, w) == self.entry(v, w))
        };
        let mut class = vec![usize::MAX; k];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for v in 0..k {
            if class[v] != usize::MAX {
                continue;
            }
            class[v] = out.len();
            let mut members = vec![v];
            for u in v + 1..k {
                if class[u] == usize::MAX && twins(v, u) {
                    class[u] = out.len();
                    members.push(u);
                }
            }
            out.push(members);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entries_are_symmetric() {
        let p = Pattern::new(&[2, 1], &[(0, 1, 3)]).unwrap();
        assert_eq!(p.entry(0, 1), 3);
        assert_eq!(p.entry(1, 0), 3);
        assert_eq!(p.loops(), vec![2, 1]);
        assert!(Pattern::new(&[1], &[(0, 0, 1)]).is_err());
    }

    #[test]
    fn star_automorphisms_and_twins() {
        // K_{1,3} lifted at a = 1
        let p = Pattern::from_fn(4, |u, v| match (u, v) {
            _ if u == v => 0,
            (0, _) | (_, 0) => 2,
            _ => 1,
        });
        assert_eq!(p.automorphisms(1000).len(), 6);
        assert_eq!(p.twin_classes(), vec![vec![0], vec![1, 2, 3]]);
    }
}
