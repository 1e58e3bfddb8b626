use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat_int, ApproxComplex, Rational};

pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1);
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![0i64; qlen];
    debug_assert_eq!(den[dn], 1);
    for i in (0..qlen).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Canonical power-basis coordinates of `ζ_n^j` for `j = 0..n`.
#[derive(Debug)]
pub(crate) struct PowerTable {
    pub order: u32,
    pub phi: usize,
    pub powers: Vec<Vec<i64>>,
}

impl PowerTable {
    fn build(n: u32) -> Self {
        let phi = euler_phi(n) as usize;
        let cyc = cyclotomic_polynomial(n);
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by ζ and reduce with x^φ = -Σ Φ_i x^i
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] -= top * cyc[i];
                }
            }
        }
        PowerTable { order: n, phi, powers }
    }
}

pub(crate) fn power_table(n: u32) -> Arc<PowerTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<PowerTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = tables.lock().expect("power table cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Arc::new(PowerTable::build(n)))
        .clone()
}

/// Element `Σ c_j ζ_n^j` of the cyclotomic field `Q(ζ_n)`.
///
/// The coefficient vector is always the canonical reduction modulo the
/// `n`-th cyclotomic polynomial, so it has length `φ(n)` and equality of
/// same-order elements is coefficient-wise.
#[derive(Clone, Debug)]
pub struct CycElem {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycElem {
    pub fn zero(order: u32) -> Self {
        let phi = euler_phi(order) as usize;
        CycElem { order, coeffs: vec![Rational::zero(); phi] }
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut z = CycElem::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        CycElem::from_rational(order, rat_int(n))
    }

    pub fn one(order: u32) -> Self {
        CycElem::from_int(order, 1)
    }

    /// `ζ_n^j`.
    pub fn root_of_unity(order: u32, j: i64) -> Self {
        CycElem::reduce(&[(j, Rational::one())], order)
    }

    /// `i = ζ_n^{n/4}`; requires `4 | n`.
    pub fn imag_unit(order: u32) -> Self {
        assert!(order.is_multiple_of(4), "i lies in Q(ζ_n) only for 4 | n here");
        CycElem::root_of_unity(order, (order / 4) as i64)
    }

    /// Canonical reduction of `Σ c·ζ_n^e` given as `(e, c)` pairs.
    pub fn reduce(raw: &[(i64, Rational)], order: u32) -> Self {
        assert!(order >= 1);
        let table = power_table(order);
        let mut coeffs = vec![Rational::zero(); table.phi];
        for (e, c) in raw {
            if c.is_zero() {
                continue;
            }
            let j = e.rem_euclid(order as i64) as usize;
            for (acc, &p) in coeffs.iter_mut().zip(&table.powers[j]) {
                if p != 0 {
                    *acc += c * rat_int(p);
                }
            }
        }
        CycElem { order, coeffs }
    }

    /// Builds an element from integer coefficients already in canonical
    /// form, divided by a common denominator.
    pub fn from_canonical_ints(order: u32, coeffs: &[i64], den: i64) -> Self {
        let phi = euler_phi(order) as usize;
        assert_eq!(coeffs.len(), phi);
        let d = BigInt::from(den);
        CycElem {
            order,
            coeffs: coeffs
                .iter()
                .map(|&c| Rational::new(BigInt::from(c), d.clone()))
                .collect(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Returns the rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-expresses the element in `Q(ζ_m)` for a multiple `m` of the order.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.order), "target order must be a multiple");
        if m == self.order {
            return self.clone();
        }
        let step = (m / self.order) as i64;
        let raw: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (j as i64 * step, c.clone()))
            .collect();
        CycElem::reduce(&raw, m)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    /// Galois automorphism `ζ ↦ ζ^a`, `gcd(a, n) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        debug_assert_eq!((a.rem_euclid(self.order as i64) as u32).gcd(&self.order), 1);
        let raw: Vec<(i64, Rational)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| (j as i64 * a, c.clone()))
            .collect();
        CycElem::reduce(&raw, self.order)
    }

    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the product of the non-trivial Galois
    /// conjugates divided by the (rational) field norm.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.order <= 2 {
            // Q(ζ_1) = Q(ζ_2) = Q
            return Some(CycElem::from_rational(self.order, self.coeffs[0].recip()));
        }
        let mut others = CycElem::one(self.order);
        for a in 2..self.order {
            if a.gcd(&self.order) == 1 {
                others = &others * &self.galois(a as i64);
            }
        }
        let norm = (&others * self)
            .as_rational()
            .expect("field norm is rational");
        Some(others.scale(&norm.recip()))
    }

    /// Absolute value squared as an element of the field (`x · conj(x)`).
    pub fn abs2(&self) -> Self {
        self * &self.conj()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycElem::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numerical value with a rigorous error radius.
    pub fn embed(&self, prec: u32) -> ApproxComplex {
        let mut acc = ApproxComplex::zero(prec);
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = ApproxComplex::root_of_unity(prec, j as i64, self.order as i64);
            acc = &acc + &z.mul_rational(c);
        }
        acc
    }

    /// Double-precision value, for display and coarse checks only.
    pub fn to_c64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * j as f64 / self.order as f64;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycElem {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycElem {}

impl Add for &CycElem {
    type Output = CycElem;
    fn add(self, o: &CycElem) -> CycElem {
        let (a, b) = self.common(o);
        CycElem {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Sub for &CycElem {
    type Output = CycElem;
    fn sub(self, o: &CycElem) -> CycElem {
        let (a, b) = self.common(o);
        CycElem {
            order: a.order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl Mul for &CycElem {
    type Output = CycElem;
    fn mul(self, o: &CycElem) -> CycElem {
        let (a, b) = self.common(o);
        let mut raw: Vec<Rational> = vec![Rational::zero(); 2 * a.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    raw[i + j] += x * y;
                }
            }
        }
        let pairs: Vec<(i64, Rational)> = raw
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as i64, c))
            .collect();
        CycElem::reduce(&pairs, a.order)
    }
}

impl Neg for &CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        CycElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for CycElem {
    type Output = CycElem;
    fn add(self, o: CycElem) -> CycElem {
        &self + &o
    }
}

impl Sub for CycElem {
    type Output = CycElem;
    fn sub(self, o: CycElem) -> CycElem {
        &self - &o
    }
}

impl Mul for CycElem {
    type Output = CycElem;
    fn mul(self, o: CycElem) -> CycElem {
        &self * &o
    }
}

impl Neg for CycElem {
    type Output = CycElem;
    fn neg(self) -> CycElem {
        -&self
    }
}

impl fmt::Display for CycElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (j, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z{}^{}", self.order, j)?,
                (_, false) => write!(f, "{a}*z{}^{}", self.order, j)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn legendre(a: i64, p: i64) -> i64 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    let mut r = 1i64;
    let mut b = a;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// `√p` for a prime `p`, built from the classical linear Gauss sum
/// `g_p = Σ (a/p) ζ_p^a` (so `g_p² = (−1)^{(p−1)/2} p`) and from
/// `√2 = ζ_8 + ζ_8⁻¹`.
fn sqrt_prime(p: u32) -> CycElem {
    if p == 2 {
        return &CycElem::root_of_unity(8, 1) + &CycElem::root_of_unity(8, -1);
    }
    let raw: Vec<(i64, Rational)> = (1..p as i64)
        .map(|a| (a, rat_int(legendre(a, p as i64))))
        .collect();
    let g = CycElem::reduce(&raw, p);
    let order = 4 * p;
    let g = g.lift(order);
    if p % 4 == 1 {
        g
    } else {
        // g_p = i√p
        &g * &(-CycElem::imag_unit(order))
    }
}

/// Exact `√m` for a positive integer `m` as a cyclotomic element.
pub fn sqrt_int(m: u64) -> CycElem {
    assert!(m > 0);
    let mut square = 1u64;
    let mut free = 1u64;
    let mut rest = m;
    let mut p = 2u64;
    let mut primes = Vec::new();
    while p * p <= rest {
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
            primes.push(p as u32);
        }
        p += 1;
    }
    if rest > 1 {
        free *= rest;
        primes.push(rest as u32);
    }
    debug_assert_eq!(square * square * free, m);
    let mut acc = CycElem::from_int(1, square as i64);
    for p in primes {
        acc = &acc * &sqrt_prime(p);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(7), vec![1; 7]);
        assert_eq!(euler_phi(28), 12);
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(CycElem::root_of_unity(8, 4), CycElem::from_int(8, -1));
        assert_eq!(CycElem::root_of_unity(2, 1), CycElem::from_int(2, -1));
        let s: Vec<(i64, Rational)> = (0..4).map(|j| (j, rat_int(1))).collect();
        assert!(CycElem::reduce(&s, 4).is_zero());
    }

    #[test]
    fn mixed_order_arithmetic() {
        // ζ_4 = ζ_8²
        let i4 = CycElem::root_of_unity(4, 1);
        let z8 = CycElem::root_of_unity(8, 1);
        assert_eq!(&z8 * &z8, i4);
        assert_eq!((&i4 * &i4).as_rational(), Some(rat_int(-1)));
    }

    #[test]
    fn inverse_roundtrip() {
        let x = &CycElem::root_of_unity(12, 1) + &CycElem::from_rational(12, rat(3, 5));
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycElem::one(12));
    }

    #[test]
    fn square_roots() {
        for m in [2u64, 3, 5, 6, 7, 8, 12, 28, 60, 63] {
            let s = sqrt_int(m);
            assert_eq!((&s * &s).as_rational(), Some(rat_int(m as i64)), "m = {m}");
            let (re, im) = s.to_c64();
            assert!((re - (m as f64).sqrt()).abs() < 1e-12 && im.abs() < 1e-12, "m = {m}");
        }
    }

    #[test]
    fn conjugation() {
        let z = CycElem::root_of_unity(7, 2);
        assert_eq!(z.conj(), CycElem::root_of_unity(7, 5));
        assert_eq!(z.abs2(), CycElem::one(7));
    }
}
