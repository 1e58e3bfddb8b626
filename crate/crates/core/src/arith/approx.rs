use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::{Constant, Round};
use rug::ops::Pow;
use rug::Float;

use super::Rational;

/// Working precision for error radii; radii are always rounded up.
const ERR_PREC: u32 = 53;

/// Bits of working precision for `digits` decimal digits plus guard bits.
pub fn bits_for_digits(digits: u32) -> u32 {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as u32 + 32
}

/// Complex ball: midpoint `re + i·im` and absolute radius `err`.
///
/// Every operation widens `err` to cover both propagated input error and
/// the rounding of the midpoint, so the true value always lies in the ball.
#[derive(Clone, Debug)]
pub struct ApproxComplex {
    pub re: Float,
    pub im: Float,
    pub err: Float,
}

fn err_from(v: &Float) -> Float {
    Float::with_val_round(ERR_PREC, v.clone().abs(), Round::Up).0
}

fn err_add(a: &Float, b: &Float) -> Float {
    Float::with_val_round(ERR_PREC, a + b, Round::Up).0
}

fn err_mul(a: &Float, b: &Float) -> Float {
    Float::with_val_round(ERR_PREC, a * b, Round::Up).0
}

fn exact(ords: &[std::cmp::Ordering]) -> bool {
    ords.iter().all(|o| *o == std::cmp::Ordering::Equal)
}

/// `2^(-prec) · scale`, rounded up: bound on one rounding of a value of size `scale`.
fn ulp_bound(prec: u32, scale: &Float, ops: u32) -> Float {
    let two = Float::with_val(ERR_PREC, 2);
    let u = Float::with_val_round(ERR_PREC, two.pow(-(prec as i32) + 1), Round::Up).0;
    let s = err_mul(&u, scale);
    err_mul(&s, &Float::with_val(ERR_PREC, ops))
}

impl ApproxComplex {
    pub fn zero(prec: u32) -> Self {
        ApproxComplex {
            re: Float::new(prec),
            im: Float::new(prec),
            err: Float::new(ERR_PREC),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    /// Exact small integer.
    pub fn from_int(prec: u32, n: i64) -> Self {
        let mut z = ApproxComplex::zero(prec);
        z.re = Float::with_val(prec, n);
        z
    }

    pub fn from_parts(re: Float, im: Float, err: Float) -> Self {
        ApproxComplex {
            re,
            im,
            err: Float::with_val_round(ERR_PREC, err, Round::Up).0,
        }
    }

    /// Real ball from a float midpoint with a given radius.
    pub fn from_real(re: Float, err: Float) -> Self {
        let prec = re.prec();
        ApproxComplex::from_parts(re, Float::new(prec), err)
    }

    pub fn from_rational(prec: u32, r: &Rational) -> Self {
        let q = rug::Rational::from((
            rug::Integer::from_str_radix(&r.numer().to_str_radix(16), 16).unwrap(),
            rug::Integer::from_str_radix(&r.denom().to_str_radix(16), 16).unwrap(),
        ));
        let (re, ord) = Float::with_val_round(prec, &q, Round::Nearest);
        let err = if ord == std::cmp::Ordering::Equal {
            Float::new(ERR_PREC)
        } else {
            ulp_bound(prec, &err_from(&re), 1)
        };
        ApproxComplex::from_parts(re, Float::new(prec), err)
    }

    /// `π` as a real ball.
    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    /// `e^{2πi j/n}`.
    pub fn root_of_unity(prec: u32, j: i64, n: i64) -> Self {
        let j = j.rem_euclid(n);
        // quarter turns are exact
        if (4 * j) % n == 0 {
            let q = 4 * j / n;
            let (re, im) = [(1, 0), (0, 1), (-1, 0), (0, -1)][q as usize];
            let mut z = ApproxComplex::from_int(prec, re);
            z.im = Float::with_val(prec, im);
            return z;
        }
        let theta = Float::with_val(prec, Constant::Pi) * 2u32 * j / n;
        ApproxComplex::cis(&theta)
    }

    /// `e^{iθ}` for real `θ` given to full precision.
    pub fn cis(theta: &Float) -> Self {
        let prec = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        // θ carries a few ulps from its construction; sin/cos are 1-Lipschitz
        let scale = err_add(&err_from(theta), &Float::with_val(ERR_PREC, 2));
        let err = ulp_bound(prec, &scale, 4);
        ApproxComplex::from_parts(c, s, err)
    }

    /// Complex exponential.
    pub fn exp(&self) -> Self {
        let prec = self.prec();
        let mag = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(prec));
        let re = Float::with_val(prec, &mag * &c);
        let im = Float::with_val(prec, &mag * &s);
        let m = err_from(&mag);
        // |e^{z+δ} − e^z| ≤ |e^z| (e^{|δ|} − 1) ≤ |e^z| |δ| e^{|δ|}
        let ed = Float::with_val_round(ERR_PREC, self.err.clone().exp(), Round::Up).0;
        let prop = err_mul(&err_mul(&m, &self.err), &ed);
        let round_scale = err_mul(&m, &err_add(&err_from(&self.im), &Float::with_val(ERR_PREC, 2)));
        let rnd = ulp_bound(prec, &round_scale, 6);
        ApproxComplex::from_parts(re, im, err_add(&prop, &rnd))
    }

    /// Upper bound for `|z|` including the radius.
    pub fn abs_upper(&self) -> Float {
        let s = err_add(&err_from(&self.re), &err_from(&self.im));
        err_add(&s, &self.err)
    }

    /// Midpoint modulus `√(re² + im²)`.
    pub fn abs_mid(&self) -> Float {
        Float::with_val(self.prec(), self.re.clone().hypot(&self.im))
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self * &ApproxComplex::from_rational(self.prec(), r)
    }

    pub fn mul_real(&self, x: &Float) -> Self {
        self * &ApproxComplex::from_real(x.clone(), Float::new(ERR_PREC))
    }

    pub fn mul_i(&self) -> Self {
        ApproxComplex::from_parts(-self.im.clone(), self.re.clone(), self.err.clone())
    }

    pub fn conj(&self) -> Self {
        ApproxComplex::from_parts(self.re.clone(), -self.im.clone(), self.err.clone())
    }

    /// Division; `None` when the divisor ball contains zero.
    pub fn div(&self, o: &ApproxComplex) -> Option<Self> {
        let prec = self.prec();
        let n2 = Float::with_val(prec, o.re.clone().square() + o.im.clone().square());
        let nabs = Float::with_val(prec, n2.clone().sqrt());
        let lower = Float::with_val_round(ERR_PREC, &nabs - &o.err, Round::Down).0;
        if lower <= 0 {
            return None;
        }
        let inv = ApproxComplex {
            re: Float::with_val(prec, &o.re / &n2),
            im: Float::with_val(prec, -o.im.clone() / &n2),
            err: Float::new(ERR_PREC),
        };
        // |1/(w+δ) − 1/w| ≤ |δ| / (|w| (|w| − |δ|))
        let lo_n = Float::with_val_round(ERR_PREC, &nabs, Round::Down).0;
        let den = Float::with_val_round(ERR_PREC, &lo_n * &lower, Round::Down).0;
        let prop = Float::with_val_round(ERR_PREC, &o.err / &den, Round::Up).0;
        let inv_scale = Float::with_val_round(ERR_PREC, Float::with_val(ERR_PREC, 1) / &lower, Round::Up).0;
        let rnd = ulp_bound(prec, &inv_scale, 8);
        let inv = ApproxComplex { err: err_add(&prop, &rnd), ..inv };
        Some(self * &inv)
    }

    /// Enlarges the radius by `extra` (a nonnegative bound).
    pub fn widen(&self, extra: f64) -> Self {
        let e = Float::with_val_round(ERR_PREC, extra, Round::Up).0;
        ApproxComplex { err: err_add(&self.err, &e), ..self.clone() }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn err_f64(&self) -> f64 {
        self.err.to_f64_round(Round::Up)
    }

    /// Midpoint formatted with `digits` significant digits.
    pub fn format(&self, digits: usize) -> (String, String, String) {
        (
            self.re.to_string_radix(10, Some(digits)),
            self.im.to_string_radix(10, Some(digits)),
            self.err.to_string_radix(10, Some(6)),
        )
    }

    /// True when the ball contains `(re, im)` within extra slack `tol`.
    pub fn contains_f64(&self, re: f64, im: f64, tol: f64) -> bool {
        let dr = Float::with_val(self.prec(), &self.re - re);
        let di = Float::with_val(self.prec(), &self.im - im);
        let d = Float::with_val(self.prec(), dr.hypot(&di));
        d <= Float::with_val(ERR_PREC, &self.err + tol)
    }
}

impl Add for &ApproxComplex {
    type Output = ApproxComplex;
    fn add(self, o: &ApproxComplex) -> ApproxComplex {
        let prec = self.prec().max(o.prec());
        let (re, o1) = Float::with_val_round(prec, &self.re + &o.re, Round::Nearest);
        let (im, o2) = Float::with_val_round(prec, &self.im + &o.im, Round::Nearest);
        let mut e = err_add(&self.err, &o.err);
        if !exact(&[o1, o2]) {
            let scale = err_add(&err_from(&re), &err_from(&im));
            e = err_add(&e, &ulp_bound(prec, &scale, 1));
        }
        ApproxComplex::from_parts(re, im, e)
    }
}

impl Sub for &ApproxComplex {
    type Output = ApproxComplex;
    fn sub(self, o: &ApproxComplex) -> ApproxComplex {
        self + &(-o)
    }
}

impl Mul for &ApproxComplex {
    type Output = ApproxComplex;
    fn mul(self, o: &ApproxComplex) -> ApproxComplex {
        let prec = self.prec().max(o.prec());
        let (ac, o1) = Float::with_val_round(prec, &self.re * &o.re, Round::Nearest);
        let (bd, o2) = Float::with_val_round(prec, &self.im * &o.im, Round::Nearest);
        let (ad, o3) = Float::with_val_round(prec, &self.re * &o.im, Round::Nearest);
        let (bc, o4) = Float::with_val_round(prec, &self.im * &o.re, Round::Nearest);
        let (re, o5) = Float::with_val_round(prec, &ac - &bd, Round::Nearest);
        let (im, o6) = Float::with_val_round(prec, &ad + &bc, Round::Nearest);
        let a = err_add(&err_from(&self.re), &err_from(&self.im));
        let b = err_add(&err_from(&o.re), &err_from(&o.im));
        let prop = err_add(
            &err_add(&err_mul(&a, &o.err), &err_mul(&b, &self.err)),
            &err_mul(&self.err, &o.err),
        );
        if exact(&[o1, o2, o3, o4, o5, o6]) {
            return ApproxComplex::from_parts(re, im, prop);
        }
        let rnd = ulp_bound(prec, &err_mul(&a, &b), 4);
        ApproxComplex::from_parts(re, im, err_add(&prop, &rnd))
    }
}

impl Neg for &ApproxComplex {
    type Output = ApproxComplex;
    fn neg(self) -> ApproxComplex {
        ApproxComplex::from_parts(-self.re.clone(), -self.im.clone(), self.err.clone())
    }
}

impl Add for ApproxComplex {
    type Output = ApproxComplex;
    fn add(self, o: ApproxComplex) -> ApproxComplex {
        &self + &o
    }
}

impl Sub for ApproxComplex {
    type Output = ApproxComplex;
    fn sub(self, o: ApproxComplex) -> ApproxComplex {
        &self - &o
    }
}

impl Mul for ApproxComplex {
    type Output = ApproxComplex;
    fn mul(self, o: ApproxComplex) -> ApproxComplex {
        &self * &o
    }
}

impl Neg for ApproxComplex {
    type Output = ApproxComplex;
    fn neg(self) -> ApproxComplex {
        -&self
    }
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im, err) = self.format(20);
        write!(f, "({re}) + ({im})i ± {err}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, CycElem, QuadElem};

    #[test]
    fn alpha_embeds() {
        // α = ζ_28^? is awkward; use (1 + √−7)/2 via sqrt_int
        let s7 = crate::arith::sqrt_int(7);
        let i = CycElem::imag_unit(4);
        let alpha = (&CycElem::one(4) + &(&i * &s7)).scale(&rat(1, 2));
        let z = alpha.embed(64);
        assert!(z.contains_f64(0.5, 1.3228756555322953, 1e-15));
        assert!(z.err_f64() < 1e-15);
        let (x, y) = QuadElem::alpha().to_f64();
        assert!((x - 0.5).abs() < 1e-15 && (y - 1.3228756555322953).abs() < 1e-15);
    }

    #[test]
    fn integer_is_exact() {
        let z = CycElem::from_int(8, 2).embed(64);
        assert_eq!(z.re, 2);
        assert_eq!(z.err_f64(), 0.0);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        let prec = bits_for_digits(50);
        let mut acc = ApproxComplex::zero(prec);
        for j in 0..7 {
            acc = &acc + &ApproxComplex::root_of_unity(prec, j, 7);
        }
        assert!(acc.contains_f64(0.0, 0.0, 0.0));
        assert!(acc.err_f64() < 1e-48);
    }

    #[test]
    fn exp_of_i_pi_is_minus_one() {
        let prec = 128;
        let z = ApproxComplex::from_parts(Float::new(prec), ApproxComplex::pi(prec), Float::new(53));
        let e = z.exp();
        assert!(e.contains_f64(-1.0, 0.0, 0.0));
    }

    #[test]
    fn division_roundtrip() {
        let prec = 100;
        let a = ApproxComplex::root_of_unity(prec, 1, 5);
        let b = ApproxComplex::from_rational(prec, &rat(3, 7));
        let q = a.div(&b).unwrap();
        let back = &q * &b;
        let (r, i) = a.to_f64();
        assert!(back.contains_f64(r, i, 1e-16));
        assert!(back.err_f64() < 1e-25);
        assert!(a.div(&ApproxComplex::zero(prec)).is_none());
    }

    #[test]
    fn negative_rational() {
        let x = ApproxComplex::from_rational(64, &rat(-3, 4)).re;
        assert_eq!(x, -0.75);
    }
}
