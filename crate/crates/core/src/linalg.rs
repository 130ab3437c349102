//! Small dense linear solvers: fraction-free exact elimination and a
//! partially pivoted float solver with one refinement step.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl ExactRing for i128 {
    fn zero() -> Self {
        0
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert!(self % o == 0);
        Some(self / o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        Some(self / o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

enum Elim {
    Singular,
    Overflow,
    Solved(Vec<BigRational>),
}

// Bareiss elimination on the augmented matrix [A | b].
fn bareiss<T: ExactRing>(mut m: Vec<Vec<T>>) -> Elim {
    let n = m.len();
    let zero = T::zero();
    let mut prev: Option<T> = None;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| m[r][k] != zero) else {
            return Elim::Singular;
        };
        m.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..=n {
                let lhs = match m[i][j].mul(&m[k][k]) {
                    Some(v) => v,
                    None => return Elim::Overflow,
                };
                let rhs = match m[i][k].mul(&m[k][j]) {
                    Some(v) => v,
                    None => return Elim::Overflow,
                };
                let mut v = match lhs.sub(&rhs) {
                    Some(v) => v,
                    None => return Elim::Overflow,
                };
                if let Some(d) = &prev {
                    v = match v.div_exact(d) {
                        Some(v) => v,
                        None => return Elim::Overflow,
                    };
                }
                m[i][j] = v;
            }
            m[i][k] = T::zero();
        }
        prev = Some(m[k][k].clone());
    }
    let mut x: Vec<BigRational> = Vec::with_capacity(n);
    x.resize(n, BigRational::zero());
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(m[i][n].to_big());
        for j in i + 1..n {
            acc -= BigRational::from_integer(m[i][j].to_big()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(m[i][i].to_big());
    }
    Elim::Solved(x)
}

/// Solves `A x = b` over the rationals; `None` when `A` is singular.
pub fn solve_exact(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let aug = |conv: &dyn Fn(i64) -> i128| -> Vec<Vec<i128>> {
        a.iter().zip(b).map(|(row, &bi)| row.iter().map(|&v| conv(v)).chain([conv(bi)]).collect()).collect()
    };
    match bareiss::<i128>(aug(&|v| v as i128)) {
        Elim::Singular => None,
        Elim::Solved(x) => Some(x),
        Elim::Overflow => {
            let big: Vec<Vec<BigInt>> = a
                .iter()
                .zip(b)
                .map(|(row, &bi)| row.iter().map(|&v| BigInt::from(v)).chain([BigInt::from(bi)]).collect())
                .collect();
            match bareiss::<BigInt>(big) {
                Elim::Solved(x) => Some(x),
                _ => None,
            }
        }
    }
}

/// Solves `A x = b` in floating point with partial pivoting and one step of
/// iterative refinement. `None` when a pivot falls below `1e-12` relative to
/// the largest entry.
pub fn solve_f64(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    let scale = a.iter().flatten().fold(0.0f64, |m, &v| m.max(v.abs())).max(1e-300);
    let mut lu: Vec<Vec<f64>> = a.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| lu[i][k].abs().total_cmp(&lu[j][k].abs()))?;
        if lu[p][k].abs() <= 1e-12 * scale {
            return None;
        }
        lu.swap(k, p);
        perm.swap(k, p);
        for i in k + 1..n {
            let f = lu[i][k] / lu[k][k];
            lu[i][k] = f;
            for j in k + 1..n {
                lu[i][j] -= f * lu[k][j];
            }
        }
    }
    let lu_solve = |rhs: &[f64]| -> Vec<f64> {
        let mut y: Vec<f64> = perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for j in 0..i {
                y[i] -= lu[i][j] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                y[i] -= lu[i][j] * y[j];
            }
            y[i] /= lu[i][i];
        }
        y
    };
    let mut x = lu_solve(b);
    let r: Vec<f64> = (0..n).map(|i| b[i] - (0..n).map(|j| a[i][j] * x[j]).sum::<f64>()).collect();
    let dx = lu_solve(&r);
    for i in 0..n {
        x[i] += dx[i];
    }
    x.iter().all(|v| v.is_finite()).then_some(x)
}
