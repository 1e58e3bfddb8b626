//! Exact arithmetic substrate.
//!
//! * [`Rational`]: arbitrary-precision rationals, always reduced.
//! * [`QuadElem`]: the imaginary quadratic field `Q(α)`, `α = (1 + i√7)/2`.
//! * [`CycElem`]: cyclotomic fields `Q(ζ_n)` in canonical power-basis form.
//! * [`CycRing`] / [`CycVec`]: integer-coefficient cyclotomic vectors used on
//!   the hot paths of the theta representation.
//! * [`ApproxComplex`]: multiprecision complex numbers with an absolute
//!   error radius carried through every operation.

mod approx;
mod cyclo;
mod intcyc;
mod quad;

pub use approx::{bits_for_digits, ApproxComplex};
pub use cyclo::{cyclotomic_polynomial, euler_phi, sqrt_int, CycElem};
pub use intcyc::{CycRing, CycVec};
pub use quad::QuadElem;

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Reduced fraction of arbitrary-precision integers.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Converts a rational known to be an integer into `i64`.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.to_integer()).ok()
}

/// Exact determinant of a square rational matrix (row-major, `n × n`).
pub fn rational_det(m: &[Rational], n: usize) -> Rational {
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
            return Rational::zero();
        };
        if piv != col {
            for j in 0..n {
                a.swap(piv * n + j, col * n + j);
            }
            det = -det;
        }
        let p = a[col * n + col].clone();
        det *= &p;
        for r in col + 1..n {
            let f = &a[r * n + col] / &p;
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let t = &f * &a[col * n + j];
                a[r * n + j] -= t;
            }
        }
    }
    det
}

/// Solves `A X = B` exactly for square invertible `A` (`n × n`) and `B`
/// (`n × m`), both row-major. Returns `None` when `A` is singular.
pub fn rational_solve(a: &[Rational], b: &[Rational], n: usize, m: usize) -> Option<Vec<Rational>> {
    let w = n + m;
    let mut aug = Vec::with_capacity(n * w);
    for r in 0..n {
        aug.extend_from_slice(&a[r * n..(r + 1) * n]);
        aug.extend_from_slice(&b[r * m..(r + 1) * m]);
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r * w + col].is_zero())?;
        if piv != col {
            for j in 0..w {
                aug.swap(piv * w + j, col * w + j);
            }
        }
        let inv = aug[col * w + col].recip();
        for j in 0..w {
            aug[col * w + j] *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r * w + col].is_zero() {
                continue;
            }
            let f = aug[r * w + col].clone();
            for j in 0..w {
                let t = &f * &aug[col * w + j];
                aug[r * w + j] -= t;
            }
        }
    }
    let mut x = Vec::with_capacity(n * m);
    for r in 0..n {
        x.extend_from_slice(&aug[r * w + n..(r + 1) * w]);
    }
    Some(x)
}
