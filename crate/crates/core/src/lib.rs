//! Extremal sum and product densities of (s,q)-sparse multigraphs.
//!
//! A multigraph is an (s,q)-graph when every s-set of vertices spans at most
//! q edges counted with multiplicity. This crate computes the quantities that
//! govern the extremal sum and product of such graphs: blow-up optima of
//! patterns, the asymptotic pattern densities σ and π, closed forms for
//! generalised Turán patterns, averaging bounds, and exhaustive ground truth
//! for tiny instances.
//!
//! The crate is `no_std` (with `alloc`). The default `parallel` feature pulls
//! in `std` and rayon for the fan-out in the exhaustive searches; results do
//! not depend on the thread count.

#![no_std]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod admissibility;
pub mod blowup;
pub mod bounds;
pub mod catalog;
pub mod density;
mod error;
pub mod graph;
pub mod linalg;
pub mod oracle;
mod par;
pub mod pattern;
pub mod profile;
pub mod search;
pub mod turan;

pub use error::{Error, Result};
pub use graph::{Multigraph, SimpleGraph};
pub use pattern::Pattern;
pub use profile::MultiplicityProfile;

/// Which aggregate of the edge multiplicities is being maximised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    Sum,
    Product,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Sum => "sum",
            Objective::Product => "product",
        }
    }
}

impl core::str::FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Objective::Sum),
            "product" => Ok(Objective::Product),
            _ => Err(Error::input(alloc::format!("unknown objective `{s}`"))),
        }
    }
}

/// An optimum under either objective: the edge sum, or the exact product as
/// a multiplicity profile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Sum(u64),
    Product(MultiplicityProfile),
}

impl Value {
    pub fn as_sum(&self) -> Option<u64> {
        match self {
            Value::Sum(v) => Some(*v),
            Value::Product(_) => None,
        }
    }

    pub fn as_product(&self) -> Option<&MultiplicityProfile> {
        match self {
            Value::Sum(_) => None,
            Value::Product(p) => Some(p),
        }
    }

    /// The sum, or the natural log of the product.
    pub fn score(&self) -> f64 {
        match self {
            Value::Sum(v) => *v as f64,
            Value::Product(p) => p.log_value(),
        }
    }

    /// Exact comparison; panics on mixed objectives.
    pub fn cmp_value(&self, other: &Value) -> core::cmp::Ordering {
        match (self, other) {
            (Value::Sum(a), Value::Sum(b)) => a.cmp(b),
            (Value::Product(a), Value::Product(b)) => a.cmp_product(b),
            _ => panic!("comparing values of different objectives"),
        }
    }
}

/// Binomial coefficient C(n, 2).
#[inline]
pub fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Binomial coefficient C(n, k) in u128; saturates on overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
