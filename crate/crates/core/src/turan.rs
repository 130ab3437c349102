//! Closed forms for sum-optimal blow-ups of generalised Turán patterns with
//! r = (r) or r = (r_0, 0, …, 0, r_d).
//!
//! Σ_T(n) is obtained by summing the growth increments from Σ_T(1) = 0 rather
//! than from a quadratic in n; the increments are the only case analysis used.

use alloc::format;
use alloc::vec::Vec;

use crate::blowup::{build_blowup, optimize_blowup, Mode};
use crate::catalog::{make_turan_pattern, TuranSpec};
use crate::{Error, Objective, Result};

/// Shape parameters of a supported spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// r = (r): Σ_T(n) = a·C(n,2) + ex(n, K_{r+1}).
    Single { r: u64, a: u64 },
    /// r = (r_0, 0, …, 0, r_d) with d ≥ 1.
    TwoBlock { r0: u64, rd: u64, d: u64, a: u64 },
}

fn shape(spec: &TuranSpec) -> Result<Shape> {
    if !spec.is_valid() {
        return Err(Error::domain(format!("a = {} < d = {}", spec.a, spec.d())));
    }
    let a = spec.a as u64;
    if spec.r.len() == 1 {
        return Ok(Shape::Single { r: spec.r0() as u64, a });
    }
    if !spec.is_two_block() {
        return Err(Error::unsupported(format!(
            "closed forms cover r = (r) and r = (r_0, 0, …, 0, r_d) only; got {:?}",
            spec.r
        )));
    }
    Ok(Shape::TwoBlock { r0: spec.r0() as u64, rd: spec.rd() as u64, d: spec.d() as u64, a })
}

/// s_0 = r_0(d·r_d + 1) + r_d + 1, the smallest order on which blow-ups of T
/// are recognisable. For r = (r) this is r + 1.
pub fn s0(spec: &TuranSpec) -> Result<u64> {
    Ok(match shape(spec)? {
        Shape::Single { r, .. } => r + 1,
        Shape::TwoBlock { r0, rd, d, .. } => r0 * (d * rd + 1) + rd + 1,
    })
}

/// s_1 = 2s_0 − d·r_0 − 2 for two-block shapes.
pub fn s1(spec: &TuranSpec) -> Result<u64> {
    match shape(spec)? {
        Shape::Single { .. } => Err(Error::unsupported("s_1 is defined for two-block shapes")),
        Shape::TwoBlock { r0, d, .. } => Ok(2 * s0(spec)? - d * r0 - 2),
    }
}

/// Σ_T(n+1) − Σ_T(n) for n ≥ 1.
pub fn turan_delta(spec: &TuranSpec, n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let n_i = n as i64;
    Ok(match shape(spec)? {
        Shape::Single { r, a } => (a as i64 + 1) * n_i - (n / r) as i64,
        Shape::TwoBlock { r0, rd, d, a } => {
            let base = s0(spec)? - 1;
            let (q, t) = ((n / base) as i64, n % base);
            let block = r0 * d + 1;
            let (d_i, heavy) = (d as i64, (d * rd + 1) as i64);
            let lead = (a as i64 + 1) * n_i;
            if t >= rd * block {
                lead - (q + 1) * heavy + 1
            } else {
                let k = (t / block) as i64;
                let rem = t % block;
                if rem == 0 {
                    lead - q * heavy - d_i * k
                } else {
                    let ell = ((rem - 1) / r0) as i64;
                    lead - q * heavy - d_i * k - ell
                }
            }
        }
    })
}

/// Σ_T(n) by summing increments from Σ_T(1) = 0.
pub fn turan_sigma(spec: &TuranSpec, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::input("n must be at least 1"));
    }
    let mut acc: i64 = 0;
    for m in 1..n {
        acc += turan_delta(spec, m)?;
    }
    u64::try_from(acc).map_err(|_| Error::domain("negative edge sum from increments"))
}

/// Range of |U|, the number of vertices in the r_d light blocks of a
/// sum-optimal n-vertex blow-up. Either a single value or two consecutive ones.
pub fn light_part_range(spec: &TuranSpec, n: u64) -> Result<(u64, u64)> {
    match shape(spec)? {
        Shape::Single { .. } => Ok((0, 0)),
        Shape::TwoBlock { r0, rd, d, .. } => {
            let base = s0(spec)? - 1;
            let (q, t) = (n / base, n % base);
            let block = r0 * d + 1;
            let extra = if t == 0 {
                (0, 0)
            } else if t > (rd - 1) * block + r0 {
                (rd, rd)
            } else {
                // t lies in block k−1 (1-based k): first r_0 positions allow
                // k−1 or k, the rest force k.
                let k = (t - 1) / block + 1;
                let pos = t - (k - 1) * block;
                if pos <= r0 {
                    (k - 1, k)
                } else {
                    (k, k)
                }
            };
            Ok((q * rd + extra.0, q * rd + extra.1))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TuranClosedForm {
    pub n: u64,
    pub sigma_n: u64,
    /// Σ_T(n+1) − Σ_T(n).
    pub delta_n: i64,
    /// Inclusive bounds on |U|.
    pub u_size_range: (u64, u64),
}

pub fn turan_closed_forms(spec: &TuranSpec, n: u64) -> Result<TuranClosedForm> {
    Ok(TuranClosedForm {
        n,
        sigma_n: turan_sigma(spec, n)?,
        delta_n: turan_delta(spec, n)?,
        u_size_range: light_part_range(spec, n)?,
    })
}

/// Σ_T(n+1) − Σ_T(n) < (a + 1 − (d·r_d + 1)/(s_0 − 1))·n + 1, cleared of
/// denominators.
pub fn growth_bound_holds(spec: &TuranSpec, n: u64) -> Result<bool> {
    let Shape::TwoBlock { rd, d, a, .. } = shape(spec)? else {
        return Err(Error::unsupported("growth bound is stated for two-block shapes"));
    };
    let delta = turan_delta(spec, n)? as i128;
    let base = (s0(spec)? - 1) as i128;
    let (a, rd, d, n) = (a as i128, rd as i128, d as i128, n as i128);
    Ok((delta - 1) * base < ((a + 1) * base - (d * rd + 1)) * n)
}

/// The two small-order increment bounds: (i) over 2 ≤ s′ < s_0 and (ii) over
/// s_0 ≤ s′ < 2s_0 − d·r_0 − 2. Each is (Δ(s′) − 1 − a·s′)/s′ ≤ 1 − N/D.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallGrowth {
    pub part_i: bool,
    pub part_ii: bool,
}

pub fn small_growth_bounds(spec: &TuranSpec) -> Result<SmallGrowth> {
    let Shape::TwoBlock { r0, rd, d, a } = shape(spec)? else {
        return Err(Error::unsupported("small-order bounds are stated for two-block shapes"));
    };
    let s_0 = s0(spec)?;
    let check = |lo: u64, hi: u64, num: i128, den: i128| -> Result<bool> {
        for s in lo..hi {
            let lhs = turan_delta(spec, s)? as i128 - 1 - a as i128 * s as i128;
            if lhs * den > s as i128 * (den - num) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let (r0, rd, d) = (r0 as i128, rd as i128, d as i128);
    let n1 = d * (rd - 1) + 1;
    let n2 = d * (2 * rd - 1) + 2;
    let upper = (2 * s_0).saturating_sub(d as u64 * r0 as u64 + 2);
    Ok(SmallGrowth {
        part_i: check(2, s_0, n1, r0 * n1 + rd - 1)?,
        part_ii: check(s_0, upper, n2, r0 * n2 + 2 * rd - 1)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeavyDegreeReport {
    pub s1: u64,
    /// (a+1)(s_1 − 1) − d(2r_d − 1) − 1.
    pub expected: u64,
    pub degrees: Vec<u64>,
    pub holds: bool,
}

/// Every vertex of the exact sum-optimal blow-up on s_1 vertices has degree
/// (a+1)(s_1 − 1) − d(2r_d − 1) − 1.
pub fn heavy_degree_check(spec: &TuranSpec, budget: u64) -> Result<HeavyDegreeReport> {
    let Shape::TwoBlock { rd, d, a, .. } = shape(spec)? else {
        return Err(Error::unsupported("heavy-set degrees are stated for two-block shapes"));
    };
    let s_1 = s1(spec)?;
    let p = make_turan_pattern(spec)?;
    let opt = optimize_blowup(&p, s_1 as u32, Objective::Sum, Mode::Exact, budget)?;
    let g = build_blowup(&p, &opt.witness)?;
    let expected = (a + 1) * (s_1 - 1) - d * (2 * rd - 1) - 1;
    let degrees: Vec<u64> = (0..g.n()).map(|v| g.degree(v)).collect();
    let holds = degrees.iter().all(|&x| x == expected);
    Ok(HeavyDegreeReport { s1: s_1, expected, degrees, holds })
}

/// Turán number ex(n, K_{r+1}): edges of the balanced complete r-partite
/// graph on n vertices.
pub fn turan_number(n: u64, r: u64) -> u64 {
    if r == 0 {
        return 0;
    }
    let (q, t) = (n / r, n % r);
    // t parts of size q+1, r−t of size q
    let sq = t * (q + 1) * (q + 1) + (r - t) * q * q;
    (n * n - sq) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn two(r0: u32, rd: u32, d: usize, a: u32) -> TuranSpec {
        TuranSpec::two_block(r0, rd, d, a).unwrap()
    }

    #[test]
    fn small_values() {
        let t = TuranSpec::new(vec![1, 1], 2).unwrap();
        assert_eq!(turan_sigma(&t, 4).unwrap(), 15);
        let t = TuranSpec::new(vec![1, 0, 1], 3).unwrap();
        assert_eq!(turan_sigma(&t, 5).unwrap(), 3 * 10 + 4);
        let t = TuranSpec::new(vec![3], 2).unwrap();
        assert_eq!(turan_sigma(&t, 7).unwrap(), 2 * 21 + turan_number(7, 3));
    }

    #[test]
    fn matches_exact_blowups() {
        for (r0, rd, d, a) in [(1, 1, 1, 2), (2, 1, 1, 3), (1, 2, 2, 4), (2, 2, 1, 1)] {
            let spec = two(r0, rd, d, a);
            let p = make_turan_pattern(&spec).unwrap();
            for n in 1..=12u64 {
                let opt = optimize_blowup(&p, n as u32, Objective::Sum, Mode::Exact, 1 << 30).unwrap();
                assert_eq!(opt.value.as_sum().unwrap(), turan_sigma(&spec, n).unwrap(), "{spec:?} n={n}");
                let u: u64 = opt.witness.sizes[r0 as usize..].iter().map(|&c| c as u64).sum();
                let (lo, hi) = light_part_range(&spec, n).unwrap();
                assert!(lo <= u && u <= hi, "{spec:?} n={n}: |U|={u} not in [{lo},{hi}]");
            }
        }
    }

    #[test]
    fn refuses_interior_blocks() {
        let t = TuranSpec::new(vec![1, 1, 1], 3).unwrap();
        assert!(matches!(turan_sigma(&t, 4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn heavy_degrees_base_case() {
        let r = heavy_degree_check(&two(1, 1, 1, 2), 1 << 30).unwrap();
        assert_eq!((r.s1, r.expected), (5, 10));
        assert!(r.holds);
    }

    #[test]
    fn turan_numbers() {
        assert_eq!(turan_number(5, 2), 6);
        assert_eq!(turan_number(4, 1), 0);
        assert_eq!(turan_number(7, 3), 16);
    }
}
