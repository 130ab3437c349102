//! Exact products of edge multiplicities, kept as exponent counts.

use alloc::collections::BTreeMap;
use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Product Π m^{count(m)} stored as the map m → count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiplicityProfile {
    counts: BTreeMap<u32, u64>,
}

impl MultiplicityProfile {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(pairs: &[(u32, u64)]) -> Self {
        let mut p = Self::new();
        for &(m, c) in pairs {
            p.add(m, c);
        }
        p
    }

    pub fn add(&mut self, m: u32, count: u64) {
        if count > 0 {
            *self.counts.entry(m).or_insert(0) += count;
        }
    }

    /// Removes `count` edges of multiplicity m; panics if fewer are recorded.
    pub fn remove(&mut self, m: u32, count: u64) {
        if count == 0 {
            return;
        }
        let c = self.counts.get_mut(&m).expect("multiplicity present");
        *c -= count;
        if *c == 0 {
            self.counts.remove(&m);
        }
    }

    pub fn merge(&mut self, other: &MultiplicityProfile) {
        for (&m, &c) in &other.counts {
            self.add(m, c);
        }
    }

    pub fn count(&self, m: u32) -> u64 {
        self.counts.get(&m).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<u32, u64> {
        &self.counts
    }

    /// Number of edges recorded.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Sum of the multiplicities.
    pub fn edge_sum(&self) -> u64 {
        self.counts.iter().map(|(&m, &c)| m as u64 * c).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.count(0) > 0
    }

    /// Σ count(m)·ln m; -∞ when some multiplicity is 0.
    pub fn log_value(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.counts.iter().map(|(&m, &c)| c as f64 * (m as f64).ln()).sum()
    }

    /// The product as a big integer. Display only.
    pub fn to_biguint(&self) -> BigUint {
        if self.is_zero() {
            return BigUint::zero();
        }
        let mut acc = BigUint::one();
        for (&m, &c) in &self.counts {
            if m > 1 {
                acc *= Pow::pow(BigUint::from(m), c);
            }
        }
        acc
    }

    /// Exact comparison of the two products. Logs decide unless they are
    /// within rounding distance, in which case big integers decide.
    pub fn cmp_product(&self, other: &MultiplicityProfile) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (a, b) = (self.log_value(), other.log_value());
        let scale = 1.0f64.max(a.abs()).max(b.abs());
        if (a - b).abs() > 1e-9 * scale {
            return a.partial_cmp(&b).unwrap_or(Ordering::Equal);
        }
        self.to_biguint().cmp(&other.to_biguint())
    }
}

impl core::fmt::Display for MultiplicityProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{{")?;
        for (i, (m, c)) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}:{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_5832() {
        let p = MultiplicityProfile::from_counts(&[(2, 3), (3, 6), (1, 1)]);
        assert_eq!(p.to_biguint(), BigUint::from(5832u32));
        assert_eq!(p.total(), 10);
        assert!((p.log_value() - 5832f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn exact_tie_break() {
        // 2^3 = 8 vs 8^1: equal products, different profiles.
        let a = MultiplicityProfile::from_counts(&[(2, 3)]);
        let b = MultiplicityProfile::from_counts(&[(8, 1), (1, 2)]);
        assert_eq!(a.cmp_product(&b), Ordering::Equal);
        let c = MultiplicityProfile::from_counts(&[(3, 2)]);
        assert_eq!(c.cmp_product(&a), Ordering::Greater);
        let z = MultiplicityProfile::from_counts(&[(0, 1), (9, 5)]);
        assert_eq!(z.cmp_product(&a), Ordering::Less);
    }
}
