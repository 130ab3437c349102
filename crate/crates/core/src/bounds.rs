//! Bounds that need no search: integer AM-GM, averaging propagation of
//! ex_Σ upper bounds, the Füredi–Kündgen density m(s, q), flat intervals of
//! TUR((r), a), and the large-a polynomial gate.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Pow;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::catalog::TuranSpec;
use crate::density::turan_x_star;
use crate::profile::MultiplicityProfile;
use crate::turan::{turan_number, turan_sigma};
use crate::{choose2, Error, Result};

/// Margin below which the float forms of the gate are not decided.
pub const BOUNDARY_MARGIN: f64 = 1e-12;

/// Largest product of n non-negative integers with the given sum:
/// total = a·n + t gives {a: n−t, a+1: t}.
pub fn integer_am_gm_max(n: u64, total: u64) -> MultiplicityProfile {
    if n == 0 {
        return MultiplicityProfile::new();
    }
    let (a, t) = (total / n, total % n);
    let mut p = MultiplicityProfile::new();
    p.add(a as u32, n - t);
    p.add(a as u32 + 1, t);
    p
}

/// ln of the integer AM-GM maximum; -∞ when some factor must be 0.
pub fn integer_am_gm_log(n: u64, total: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let (a, t) = (total / n, total % n);
    let lo = if n - t > 0 { (n - t) as f64 * (a as f64).ln() } else { 0.0 };
    lo + t as f64 * ((a + 1) as f64).ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Seed,
    Propagated,
}

/// Upper bounds on ex_Σ(n, s, q) for s ≤ n ≤ n_max, seeded at n = s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTable {
    pub base_s: u64,
    /// (n, bound, provenance), n ascending from base_s.
    pub values: Vec<(u64, u64, Provenance)>,
}

impl BoundTable {
    pub fn get(&self, n: u64) -> Option<u64> {
        let i = n.checked_sub(self.base_s)? as usize;
        self.values.get(i).map(|e| e.1)
    }
}

/// f(n+1) = ⌊(n+1)/(n−1) · f(n)⌋ from f(s) = value.
pub fn averaging_propagate(s: u64, value: u64, n_max: u64) -> Result<BoundTable> {
    if s < 2 {
        return Err(Error::input("averaging needs s ≥ 2"));
    }
    let mut values = alloc::vec![(s, value, Provenance::Seed)];
    let mut f = value as u128;
    for n in s..n_max {
        f = (n as u128 + 1) * f / (n as u128 - 1);
        let v = u64::try_from(f).map_err(|_| Error::domain(format!("bound overflows u64 at n = {}", n + 1)))?;
        values.push((n + 1, v, Provenance::Propagated));
    }
    Ok(BoundTable { base_s: s, values })
}

/// The step test ((n+1)/(n−1))·f(n) < f(n+1) + 1, which lets a candidate f
/// valid at n carry over to n+1.
pub fn averaging_step_holds(f_n: u64, f_n1: u64, n: u64) -> bool {
    (n as u128 + 1) * (f_n as u128) < (n as u128 - 1) * (f_n1 as u128 + 1)
}

/// F(j/i) = Σ_{k=1}^{s−1} ⌊1 + jk/i⌋.
fn fk_sum(s: u64, j: u128, i: u128) -> u128 {
    (1..s as u128).map(|k| 1 + j * k / i).sum()
}

/// m(s, q) = min{m : Σ_{1≤i<s} ⌊1 + m·i⌋ > q}. The sum jumps only at m = j/i
/// with 1 ≤ i ≤ s−1, so for each i the least j is found by bisection and the
/// minimum over i is returned.
pub fn fk_m(s: u64, q: u64) -> Result<BigRational> {
    if s < 2 {
        return Err(Error::input("m(s, q) needs s ≥ 2"));
    }
    let q = q as u128;
    let mut best: Option<(u128, u128)> = None;
    for i in 1..s as u128 {
        // j = q·i gives m = q and F ≥ (s−1)(q+1) > q.
        let (mut lo, mut hi) = (0u128, q * i);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if fk_sum(s, mid, i) > q {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let better = match best {
            None => true,
            Some((bj, bi)) => lo * bi < bj * i,
        };
        if better {
            best = Some((lo, i));
        }
    }
    let (j, i) = best.expect("s ≥ 2 gives at least one denominator");
    Ok(BigRational::new(BigInt::from(j), BigInt::from(i)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlatInterval {
    pub q_low: u64,
    pub q_high: u64,
    /// a·((a+1)/a)^{(r−1)/r}
    pub value: f64,
}

/// For s ≥ 2r+1 the product density is constant on [Σ_T(s), Σ_T(s) + ⌊(s−1)/r⌋ − 1]
/// with T = TUR((r), a).
pub fn flat_interval(r: u64, a: u64, s: u64) -> Result<FlatInterval> {
    if r == 0 || a == 0 {
        return Err(Error::domain("flat intervals need r ≥ 1 and a ≥ 1"));
    }
    if s < 2 * r + 1 {
        return Err(Error::domain(format!("flat interval needs s ≥ 2r+1 = {}", 2 * r + 1)));
    }
    let spec = TuranSpec::new(alloc::vec![r as u32], a as u32)?;
    let q_low = turan_sigma(&spec, s)?;
    let q_high = q_low + (s - 1) / r - 1;
    let af = a as f64;
    let value = af * ((af + 1.0) / af).powf((r as f64 - 1.0) / r as f64);
    Ok(FlatInterval { q_low, q_high, value })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport {
    /// First n at which a check failed, if any.
    pub first_failure: Option<u64>,
    pub checked_up_to: u64,
}

/// Propagates the averaging bound from (s, q_high) and checks, for every
/// s ≤ n ≤ n_max,
/// a·C(n,2) ≤ Σ_T(n) ≤ f(n) ≤ Σ_T(n) + ⌊(n−1)/r⌋ − 1 ≤ (a+1)·C(n,2),
/// together with the inequality 2·ex(n, K_{r+1}) + (n+1)⌊(n−1)/r⌋ < n² + 1
/// that drives the induction.
pub fn flat_interval_sandwich(r: u64, a: u64, s: u64, n_max: u64) -> Result<SandwichReport> {
    let fi = flat_interval(r, a, s)?;
    let spec = TuranSpec::new(alloc::vec![r as u32], a as u32)?;
    let table = averaging_propagate(s, fi.q_high, n_max)?;
    let mut sigma = turan_sigma(&spec, s)?;
    for n in s..=n_max {
        if n > s {
            sigma = sigma
                .checked_add_signed(crate::turan::turan_delta(&spec, n - 1)?)
                .ok_or_else(|| Error::domain("negative Σ_T"))?;
        }
        let f = table.get(n).expect("table covers s..=n_max");
        let ceiling = sigma + (n - 1) / r - 1;
        let ok = a * choose2(n) <= sigma
            && sigma <= f
            && f <= ceiling
            && ceiling <= (a + 1) * choose2(n)
            && 2 * turan_number(n, r) + (n + 1) * ((n - 1) / r) < n * n + 1;
        if !ok {
            return Ok(SandwichReport { first_failure: Some(n), checked_up_to: n });
        }
    }
    Ok(SandwichReport { first_failure: None, checked_up_to: n_max })
}

/// Float-decided inequality with a flag for margins too small to trust.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Decision {
    pub holds: bool,
    pub margin: f64,
    pub boundary: bool,
}

impl Decision {
    fn strict(margin: f64) -> Self {
        Decision { holds: margin > 0.0, margin, boundary: margin.abs() <= BOUNDARY_MARGIN }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GateReport {
    /// (a+1)^{r_d(d−1)(2r_d−1)+2r_d}(a−d)^{2r_d−1}(a−d+1)^{(2r_d−1)(r_d−1)} > a^{r_d d(2r_d−1)+2r_d}
    pub gate: bool,
    /// Both sides equal; the non-strict forms then hold with equality.
    pub gate_equal: bool,
    /// d(2r_d−1)+2 > (2r_d−1)(1 − r_d x⋆)/(r_0 r_d x⋆)
    pub equiv_b: Decision,
    /// (d(2r_d−1)+2)/(r_0(d(2r_d−1)+2)+2r_d−1) > (1 − r_d x⋆)/r_0
    pub equiv_c: Decision,
    /// a above this value guarantees the gate.
    pub threshold: u64,
}

pub fn gate_threshold(rd: u64, d: u64) -> u64 {
    let m = d * (2 * rd - 1);
    m * (m + 1) + (d - 1) * (2 * rd - 1) * (rd - 1) * (rd * (d - 1) * (2 * rd - 1) + 2 * rd)
}

/// Both sides of the gate polynomial inequality as exact integers.
pub fn gate_sides(rd: u64, d: u64, a: u64) -> (BigUint, BigUint) {
    let e_a1 = rd * (d - 1) * (2 * rd - 1) + 2 * rd;
    let e_ad = 2 * rd - 1;
    let e_ad1 = (2 * rd - 1) * (rd - 1);
    let e_rhs = rd * d * (2 * rd - 1) + 2 * rd;
    let big = |x: u64, e: u64| -> BigUint { Pow::pow(BigUint::from(x), e as u32) };
    let lhs = big(a + 1, e_a1) * big(a - d, e_ad) * big(a - d + 1, e_ad1);
    (lhs, big(a, e_rhs))
}

pub fn large_a_gate(r0: u64, rd: u64, d: u64, a: u64) -> Result<GateReport> {
    if r0 == 0 || rd == 0 || d == 0 {
        return Err(Error::domain("gate needs r_0, r_d, d ≥ 1"));
    }
    if a < d + 1 {
        return Err(Error::domain(format!("gate needs a ≥ d+1 = {}", d + 1)));
    }
    let (lhs, rhs) = gate_sides(rd, d, a);
    let x = turan_x_star(r0 as u32, rd as u32, d as u32, a as u32)?;
    let (r0f, rdf, df) = (r0 as f64, rd as f64, d as f64);
    let m = df * (2.0 * rdf - 1.0) + 2.0;
    let ratio = (1.0 - rdf * x) / (r0f * rdf * x);
    let b = m - (2.0 * rdf - 1.0) * ratio;
    let c = m / (r0f * m + 2.0 * rdf - 1.0) - (1.0 - rdf * x) / r0f;
    Ok(GateReport {
        gate: lhs > rhs,
        gate_equal: lhs == rhs,
        equiv_b: Decision::strict(b),
        equiv_c: Decision::strict(c),
        threshold: gate_threshold(rd, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn am_gm() {
        assert_eq!(integer_am_gm_max(10, 23), MultiplicityProfile::from_counts(&[(2, 7), (3, 3)]));
        assert_eq!(integer_am_gm_max(3, 0).to_biguint(), 0u32.into());
        assert!((integer_am_gm_log(10, 23) - (7.0 * 2f64.ln() + 3.0 * 3f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn propagation() {
        let t = averaging_propagate(5, 30, 8).unwrap();
        assert_eq!(t.get(6), Some(45));
        assert_eq!(t.values[0].2, Provenance::Seed);
    }

    #[test]
    fn fk_values() {
        assert_eq!(fk_m(3, 2).unwrap(), rat(1, 2));
        assert_eq!(fk_m(3, 3).unwrap(), rat(1, 1));
        for q in 0..6 {
            assert_eq!(fk_m(2, q).unwrap(), rat(q as i64, 1));
        }
    }

    #[test]
    fn flat() {
        let f = flat_interval(2, 2, 5).unwrap();
        assert_eq!((f.q_low, f.q_high), (26, 27));
        assert!((f.value - 2.0 * 1.5f64.sqrt()).abs() < 1e-12);
        assert!(flat_interval(2, 2, 4).is_err());
        assert_eq!(flat_interval_sandwich(2, 2, 5, 200).unwrap().first_failure, None);
    }

    #[test]
    fn gate_base_case() {
        let g = large_a_gate(1, 1, 1, 2).unwrap();
        assert!(g.gate);
        assert_eq!(gate_sides(1, 1, 2), (9u32.into(), 8u32.into()));
        assert_eq!(g.threshold, 2);
        assert!(g.equiv_b.holds && g.equiv_c.holds);
    }
}
