use std::sync::Arc;

use num_integer::Integer;

use super::cyclo::{power_table, PowerTable};
use super::CycElem;

/// Integer arithmetic in `Z[ζ_n]` on canonical power-basis coordinates.
///
/// Values are plain `i64` slices of length `φ(n)`; unreduced values live in
/// buffers of length `n` indexed by the exponent of `ζ_n`, where
/// multiplication by a root of unity is a rotation.
#[derive(Clone, Debug)]
pub struct CycRing {
    table: Arc<PowerTable>,
}

impl CycRing {
    pub fn new(order: u32) -> Self {
        CycRing { table: power_table(order) }
    }

    pub fn order(&self) -> u32 {
        self.table.order
    }

    pub fn phi(&self) -> usize {
        self.table.phi
    }

    /// Canonical coordinates of `ζ^j`.
    pub fn power(&self, j: i64) -> &[i64] {
        &self.table.powers[j.rem_euclid(self.table.order as i64) as usize]
    }

    /// Adds `value · ζ^shift` into an unreduced exponent buffer.
    #[inline]
    pub fn rotate_add(&self, value: &[i64], shift: usize, buf: &mut [i64]) {
        let n = buf.len();
        debug_assert_eq!(n, self.table.order as usize);
        let s = shift % n;
        // value is canonical, so its support is 0..φ; split the wrap-around
        let head = (n - s).min(value.len());
        for (b, &v) in buf[s..s + head].iter_mut().zip(&value[..head]) {
            *b += v;
        }
        for (b, &v) in buf[..value.len() - head].iter_mut().zip(&value[head..]) {
            *b += v;
        }
    }

    /// Adds a whole unreduced buffer rotated by `shift` into another.
    #[inline]
    pub fn rotate_add_buf(&self, src: &[i64], shift: usize, dst: &mut [i64]) {
        let n = src.len();
        let s = shift % n;
        let (a, b) = src.split_at(n - s);
        for (d, &v) in dst[s..].iter_mut().zip(a) {
            *d += v;
        }
        for (d, &v) in dst[..s].iter_mut().zip(b) {
            *d += v;
        }
    }

    /// Reduces an exponent buffer (length `n`) to canonical coordinates.
    pub fn reduce_into(&self, buf: &[i64], out: &mut [i64]) {
        out.iter_mut().for_each(|o| *o = 0);
        for (j, &c) in buf.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&self.table.powers[j]) {
                *o += c * p;
            }
        }
    }

    /// `out += a · b` for canonical values.
    pub fn mul_add(&self, a: &[i64], b: &[i64], out: &mut [i64]) {
        let phi = self.phi();
        let n = self.table.order as usize;
        for i in 0..phi {
            let x = a[i];
            if x == 0 {
                continue;
            }
            for j in 0..phi {
                let y = b[j];
                if y == 0 {
                    continue;
                }
                let p = &self.table.powers[(i + j) % n];
                let xy = x * y;
                for (o, &pk) in out.iter_mut().zip(p) {
                    *o += xy * pk;
                }
            }
        }
    }

    /// Canonical coordinates of the complex conjugate.
    pub fn conj_into(&self, a: &[i64], out: &mut [i64]) {
        out.iter_mut().for_each(|o| *o = 0);
        let n = self.table.order as i64;
        for (j, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(self.power(n - j as i64)) {
                *o += c * p;
            }
        }
    }
}

/// Vector over `Q(ζ_n)` stored as integer canonical coordinates over a
/// single positive common denominator.
#[derive(Clone, Debug)]
pub struct CycVec {
    pub(crate) ring: CycRing,
    pub(crate) len: usize,
    pub(crate) den: i64,
    pub(crate) coeffs: Vec<i64>,
}

impl CycVec {
    pub fn zeros(ring: &CycRing, len: usize) -> Self {
        CycVec {
            ring: ring.clone(),
            len,
            den: 1,
            coeffs: vec![0; len * ring.phi()],
        }
    }

    pub fn basis(ring: &CycRing, len: usize, index: usize) -> Self {
        let mut v = CycVec::zeros(ring, len);
        v.coeffs[index * ring.phi()] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ring(&self) -> &CycRing {
        &self.ring
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Canonical integer coordinates of entry `i` (to be divided by `den`).
    pub fn raw(&self, i: usize) -> &[i64] {
        let phi = self.ring.phi();
        &self.coeffs[i * phi..(i + 1) * phi]
    }

    pub fn entry(&self, i: usize) -> CycElem {
        CycElem::from_canonical_ints(self.ring.order(), self.raw(i), self.den)
    }

    pub fn entries(&self) -> Vec<CycElem> {
        (0..self.len).map(|i| self.entry(i)).collect()
    }

    /// Divides numerator and denominator by their common integer content.
    pub fn normalize(&mut self) {
        let mut g = self.den;
        for &c in &self.coeffs {
            if g == 1 {
                break;
            }
            if c != 0 {
                g = g.gcd(&c);
            }
        }
        if g > 1 {
            self.den /= g;
            self.coeffs.iter_mut().for_each(|c| *c /= g);
        }
    }

    /// Adds another vector over the same ring.
    pub fn add_assign(&mut self, other: &CycVec) {
        assert_eq!(self.len, other.len);
        let l = self.den.lcm(&other.den);
        let fa = l / self.den;
        let fb = l / other.den;
        for (a, &b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a = *a * fa + b * fb;
        }
        self.den = l;
        self.normalize();
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Exact equality as vectors over the field.
    pub fn equals(&self, other: &CycVec) -> bool {
        if self.len != other.len || self.ring.order() != other.ring.order() {
            return false;
        }
        // both normalized representations may differ in den; cross-multiply
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(&a, &b)| (a as i128) * other.den as i128 == (b as i128) * self.den as i128)
    }

    /// Hermitian inner product `Σ conj(self_i) · other_i` as a field element.
    pub fn inner(&self, other: &CycVec) -> CycElem {
        let phi = self.ring.phi();
        let mut acc = vec![0i64; phi];
        let mut cj = vec![0i64; phi];
        for i in 0..self.len {
            let a = self.raw(i);
            if a.iter().all(|&c| c == 0) {
                continue;
            }
            self.ring.conj_into(a, &mut cj);
            self.ring.mul_add(&cj, other.raw(i), &mut acc);
        }
        CycElem::from_canonical_ints(self.ring.order(), &acc, self.den * other.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    #[test]
    fn rotate_and_reduce_match_cycelem() {
        let ring = CycRing::new(12);
        let mut buf = vec![0i64; 12];
        ring.rotate_add(ring.power(1), 5, &mut buf);
        ring.rotate_add(ring.power(3), 11, &mut buf);
        let mut out = vec![0i64; ring.phi()];
        ring.reduce_into(&buf, &mut out);
        let got = CycElem::from_canonical_ints(12, &out, 1);
        let want = &CycElem::root_of_unity(12, 6) + &CycElem::root_of_unity(12, 14);
        assert_eq!(got, want);
    }

    #[test]
    fn mul_add_matches_cycelem() {
        let ring = CycRing::new(16);
        let a: Vec<i64> = (0..8).map(|j| j as i64 - 3).collect();
        let b: Vec<i64> = (0..8).map(|j| (j * j) as i64 % 5 - 2).collect();
        let mut out = vec![0i64; 8];
        ring.mul_add(&a, &b, &mut out);
        let ea = CycElem::from_canonical_ints(16, &a, 1);
        let eb = CycElem::from_canonical_ints(16, &b, 1);
        assert_eq!(CycElem::from_canonical_ints(16, &out, 1), &ea * &eb);
    }

    #[test]
    fn normalize_and_inner() {
        let ring = CycRing::new(8);
        let mut v = CycVec::basis(&ring, 3, 1);
        v.coeffs.iter_mut().for_each(|c| *c *= 6);
        v.den = 4;
        v.normalize();
        assert_eq!(v.den, 2);
        assert_eq!(v.entry(1).as_rational(), Some(crate::arith::rat(3, 2)));
        assert_eq!(v.inner(&v).as_rational(), Some(crate::arith::rat(9, 4)));
        assert!(v.entry(0).is_zero());
        let _ = rat_int(0);
    }
}
