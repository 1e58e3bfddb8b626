use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{rat_int, Rational};

/// Element `x + y·α` of `Q(α)` with `α = (1 + i√7)/2`.
///
/// `α` satisfies `α² = α − 2`, equivalently `α + ᾱ = 1` and `α·ᾱ = 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadElem {
    pub x: Rational,
    pub y: Rational,
}

impl QuadElem {
    pub fn new(x: Rational, y: Rational) -> Self {
        QuadElem { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        QuadElem::new(rat_int(x), rat_int(y))
    }

    pub fn from_rational(x: Rational) -> Self {
        QuadElem::new(x, Rational::zero())
    }

    pub fn zero() -> Self {
        QuadElem::from_ints(0, 0)
    }

    pub fn one() -> Self {
        QuadElem::from_ints(1, 0)
    }

    /// `α = (1 + i√7)/2`.
    pub fn alpha() -> Self {
        QuadElem::from_ints(0, 1)
    }

    /// `ᾱ = 1 − α`.
    pub fn alpha_bar() -> Self {
        QuadElem::from_ints(1, -1)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// True when the element is real, i.e. lies in `Q`.
    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// True when both coordinates are integers, i.e. the element lies in `Z[α]`.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    /// Complex conjugate: `x + y·ᾱ = (x + y) − y·α`.
    pub fn conj(&self) -> Self {
        QuadElem::new(&self.x + &self.y, -&self.y)
    }

    /// Field norm `N(x + yα) = x² + xy + 2y²`.
    pub fn norm(&self) -> Rational {
        &self.x * &self.x + &self.x * &self.y + rat_int(2) * &self.y * &self.y
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(QuadElem::new(c.x / &n, c.y / n))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        QuadElem::new(&self.x * r, &self.y * r)
    }

    /// Exact divisibility test in `Z[α]`: `self = d · w` with `w ∈ Z[α]`.
    pub fn divisible_by(&self, d: &QuadElem) -> bool {
        match d.inv() {
            Some(inv) => (self * &inv).is_integral(),
            None => self.is_zero(),
        }
    }

    /// Numerical value as `(re, im)` in double precision (for display only).
    pub fn to_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let x = self.x.to_f64().unwrap_or(f64::NAN);
        let y = self.y.to_f64().unwrap_or(f64::NAN);
        (x + y / 2.0, y * 7f64.sqrt() / 2.0)
    }
}

impl Add for &QuadElem {
    type Output = QuadElem;
    fn add(self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &QuadElem {
    type Output = QuadElem;
    fn sub(self, o: &QuadElem) -> QuadElem {
        QuadElem::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Mul for &QuadElem {
    type Output = QuadElem;
    fn mul(self, o: &QuadElem) -> QuadElem {
        // (a + bα)(c + dα) = ac + (ad + bc)α + bd(α − 2)
        let bd = &self.y * &o.y;
        let x = &self.x * &o.x - rat_int(2) * &bd;
        let y = &self.x * &o.y + &self.y * &o.x + bd;
        QuadElem::new(x, y)
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem::new(-&self.x, -&self.y)
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, o: QuadElem) -> QuadElem {
        &self + &o
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, o: QuadElem) -> QuadElem {
        &self - &o
    }
}

impl Mul for QuadElem {
    type Output = QuadElem;
    fn mul(self, o: QuadElem) -> QuadElem {
        &self * &o
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        -&self
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => write!(f, "{}", self.x),
            (true, false) if self.y.is_one() => write!(f, "α"),
            (true, false) => write!(f, "{}α", self.y),
            (false, false) => {
                let sign = if self.y.is_negative() { "-" } else { "+" };
                let ay = self.y.abs();
                if ay.is_one() {
                    write!(f, "{} {} α", self.x, sign)
                } else {
                    write!(f, "{} {} {}α", self.x, sign, ay)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn alpha_times_conjugate_is_two() {
        assert_eq!(QuadElem::alpha() * QuadElem::alpha_bar(), QuadElem::from_ints(2, 0));
    }

    #[test]
    fn alpha_times_one() {
        assert_eq!(QuadElem::alpha() * QuadElem::one(), QuadElem::alpha());
    }

    #[test]
    fn alpha_squared_is_alpha_minus_two() {
        assert_eq!(QuadElem::alpha() * QuadElem::alpha(), QuadElem::from_ints(-2, 1));
    }

    #[test]
    fn norm_and_inverse() {
        let a = QuadElem::new(rat(3, 2), rat(-1, 3));
        let inv = a.inv().unwrap();
        assert_eq!(&a * &inv, QuadElem::one());
        assert_eq!(QuadElem::alpha().norm(), rat_int(2));
    }

    #[test]
    fn divisibility_by_alpha() {
        // N(α) = 2 does not divide N(1) = 1
        assert!(!QuadElem::one().divisible_by(&QuadElem::alpha()));
        assert!(QuadElem::from_ints(2, 0).divisible_by(&QuadElem::alpha()));
        assert!(QuadElem::zero().divisible_by(&QuadElem::alpha_bar()));
    }

    #[test]
    fn display() {
        assert_eq!(QuadElem::from_ints(-2, 1).to_string(), "-2 + α");
        assert_eq!(QuadElem::alpha_bar().to_string(), "1 - α");
    }
}
