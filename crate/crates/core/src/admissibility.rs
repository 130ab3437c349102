//! (s,q)-admissibility of patterns and heavy sets in concrete multigraphs.
//!
//! Every blow-up of P is an (s,q)-graph iff Σ_P(s) ≤ q: an s-set inside any
//! blow-up spans the blow-up of P given by its intersections with the parts,
//! which is itself an s-vertex blow-up of P.

use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::blowup::{optimize_blowup, Mode};
use crate::density::sigma_density;
use crate::graph::Multigraph;
use crate::pattern::Pattern;
use crate::{par, Error, Objective, Result};

/// Upper bound ⌊(σ_P s² − ℓ s)/2⌋ on Σ_P(s), ℓ the least loop. Exact when
/// every loop equals ℓ and σ_P·s-weights are integral.
pub fn sigma_upper_bound(p: &Pattern, s: u64) -> Result<u64> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let sigma = sigma_density(p)?.value;
    let s_r = BigRational::from_integer(BigInt::from(s));
    let l = BigRational::from_integer(BigInt::from(p.min_loop()));
    let v = (sigma * &s_r * &s_r - l * &s_r) / BigRational::from_integer(BigInt::from(2));
    v.floor().to_integer().to_u64().ok_or_else(|| Error::domain("bound out of range"))
}

/// Bracket lo ≤ Σ_P(s) ≤ hi from the density bound and a local optimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumBracket {
    pub lo: u64,
    pub hi: u64,
}

pub fn sum_bracket(p: &Pattern, s: u64) -> Result<SumBracket> {
    let hi = sigma_upper_bound(p, s)?;
    let lo = optimize_blowup(p, s as u32, Objective::Sum, Mode::Local, 0)?.value.as_sum().expect("sum");
    Ok(SumBracket { lo, hi: hi.max(lo) })
}

/// Σ_P(s), using the bracket when it is already tight.
pub fn blowup_sum_at(p: &Pattern, s: u64, budget: u64) -> Result<u64> {
    let b = sum_bracket(p, s)?;
    if b.lo == b.hi {
        return Ok(b.lo);
    }
    Ok(optimize_blowup(p, s as u32, Objective::Sum, Mode::Exact, budget)?.value.as_sum().expect("sum"))
}

/// Σ_P(s) ≤ q. The exact optimiser runs only when the bracket straddles q.
pub fn is_admissible(p: &Pattern, s: u64, q: u64, budget: u64) -> Result<bool> {
    if s < 2 {
        return Err(Error::input("admissibility needs s ≥ 2"));
    }
    let b = sum_bracket(p, s)?;
    if b.hi <= q {
        return Ok(true);
    }
    if b.lo > q {
        return Ok(false);
    }
    let exact = optimize_blowup(p, s as u32, Objective::Sum, Mode::Exact, budget)?;
    Ok(exact.value.as_sum().expect("sum") <= q)
}

// Calls `f` on every `size`-subset of {0..top} ∪ {top} containing `top`,
// in colex order.
fn subsets_with_max(top: usize, size: usize, mut f: impl FnMut(&[usize])) {
    if size == 0 {
        return;
    }
    let k = size - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf: Vec<usize> = Vec::with_capacity(size);
    if k > top {
        return;
    }
    loop {
        buf.clear();
        buf.extend_from_slice(&idx);
        buf.push(top);
        f(&buf);
        // next k-subset of [0, top) in colex
        let limit = |i: usize| if i + 1 < k { idx[i + 1] } else { top };
        let Some(i) = (0..k).find(|&i| idx[i] + 1 < limit(i)) else {
            return;
        };
        idx[i] += 1;
        for (j, slot) in idx.iter_mut().enumerate().take(i) {
            *slot = j;
        }
    }
}

/// All `size`-subsets X with e_G(X) = bound, in colex order.
pub fn find_heavy_sets(g: &Multigraph, size: usize, bound: u64) -> Result<Vec<Vec<usize>>> {
    if size > g.n() {
        return Err(Error::input("heavy-set size exceeds vertex count"));
    }
    if size == 0 {
        return Ok(if bound == 0 { alloc::vec![Vec::new()] } else { Vec::new() });
    }
    let tops: Vec<usize> = (size - 1..g.n()).collect();
    let per_top = par::map(&tops, |&top| {
        let mut out = Vec::new();
        subsets_with_max(top, size, |x| {
            if g.edge_sum(x).expect("in range") == bound {
                out.push(x.to_vec());
            }
        });
        out
    });
    Ok(per_top.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::{build_blowup, Composition, DEFAULT_BUDGET};
    use crate::catalog::{make_turan_pattern, TuranSpec};
    use alloc::vec;

    #[test]
    fn tur11_threshold() {
        let p = make_turan_pattern(&TuranSpec::new(vec![1, 1], 2).unwrap()).unwrap();
        assert!(is_admissible(&p, 4, 15, DEFAULT_BUDGET).unwrap());
        assert!(!is_admissible(&p, 4, 14, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn colex_subsets() {
        let mut seen = Vec::new();
        subsets_with_max(3, 3, |x| seen.push(x.to_vec()));
        assert_eq!(seen, vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
        let mut count = 0;
        subsets_with_max(9, 4, |_| count += 1);
        assert_eq!(count, 84);
    }

    #[test]
    fn heavy_sets_avoid_padding() {
        let p = make_turan_pattern(&TuranSpec::new(vec![1, 1], 2).unwrap()).unwrap();
        let g = build_blowup(&p, &Composition::new(vec![2, 2])).unwrap().with_extra_vertex(0);
        assert_eq!(find_heavy_sets(&g, 4, 15).unwrap(), vec![vec![0, 1, 2, 3]]);
        assert!(find_heavy_sets(&Multigraph::uniform(5, 2), 3, 7).unwrap().is_empty());
    }
}
