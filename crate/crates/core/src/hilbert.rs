//! Hilbert functions and series of the invariant algebra, of weighted
//! polynomial algebras and of the Veronese subalgebra, plus
//! quasi-polynomial fitting.

use num_traits::{One, Zero};

use crate::arith::{rat, rat_int, rational_solve, rational_to_i64, CycElem, Rational};
use crate::error::{Error, Result};
use crate::theta_rep::{character_table_row, legendre7};

/// Class sizes in the order used by [`character_table_row`].
pub const CLASS_SIZES: [i64; 12] = [1, 1, 21, 21, 56, 56, 42, 42, 24, 24, 24, 24];

/// Truncated power series with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    pub coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn from_poly(p: &[i64], order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order];
        for (c, &v) in coeffs.iter_mut().zip(p) {
            *c = rat_int(v);
        }
        PowerSeries { coeffs }
    }

    pub fn mul(&self, o: &PowerSeries) -> PowerSeries {
        let n = self.order().min(o.order());
        let mut coeffs = vec![Rational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries { coeffs }
    }

    /// Expansion of `num / den` with `den(0) ≠ 0`.
    pub fn rational(num: &[i64], den: &[i64], order: usize) -> Result<Self> {
        if den.first().copied().unwrap_or(0) == 0 {
            return Err(Error::InvalidArgument("denominator vanishes at 0".into()));
        }
        let d0 = rat_int(den[0]);
        let mut c = vec![Rational::zero(); order];
        for n in 0..order {
            let mut v = num.get(n).map_or(Rational::zero(), |&x| rat_int(x));
            for (j, &dj) in den.iter().enumerate().skip(1).take(n) {
                v -= rat_int(dj) * &c[n - j];
            }
            c[n] = v / &d0;
        }
        Ok(PowerSeries { coeffs: c })
    }

    pub fn coeff_int(&self, n: usize) -> Option<i64> {
        rational_to_i64(self.coeffs.get(n)?)
    }
}

/// Integer polynomial product.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `1 − t^w`.
fn one_minus(w: usize) -> Vec<i64> {
    let mut p = vec![0; w + 1];
    p[0] = 1;
    p[w] -= 1;
    p
}

fn poly_prod(ws: &[usize]) -> Vec<i64> {
    ws.iter().fold(vec![1], |acc, &w| poly_mul(&acc, &one_minus(w)))
}

/// `Π 1/(1 − t^w)` to the given order.
pub fn free_weighted_series(weights: &[usize], order: usize) -> Result<PowerSeries> {
    if weights.is_empty() || weights.contains(&0) {
        return Err(Error::InvalidArgument("weights must be positive and nonempty".into()));
    }
    PowerSeries::rational(&[1], &poly_prod(weights), order)
}

/// Number of monomials of weighted degree `d`.
pub fn monomial_count(weights: &[usize], d: usize) -> Result<i64> {
    Ok(free_weighted_series(weights, d + 1)?.coeff_int(d).expect("integer count"))
}

/// `(1 + t⁴) / ((1 − t)²(1 − t²)(1 − t⁷))`.
pub fn veronese_series(order: usize) -> PowerSeries {
    PowerSeries::rational(&[1, 0, 0, 0, 1], &poly_prod(&[1, 1, 2, 7]), order).expect("valid series")
}

pub fn veronese_hilbert(p: usize) -> i64 {
    veronese_series(p + 1).coeff_int(p).expect("integer coefficient")
}

/// `h_R(p) − h_R(p − 8)` for `R` free on weights (1,1,2,4,7).
pub fn hypersurface_hilbert(p: usize) -> i64 {
    let s = free_weighted_series(&[1, 1, 2, 4, 7], p + 1).expect("valid weights");
    let a = s.coeff_int(p).expect("integer");
    let b = if p >= 8 { s.coeff_int(p - 8).expect("integer") } else { 0 };
    a - b
}

/// The polynomial identity
/// `(D(s) + D(−s))(1 − s²)²(1 − s⁴)(1 − s¹⁴) = 2(1 + s⁸)D(s)D(−s)` with
/// `D(s) = (1 − s)(1 − s²)(1 − s⁴)(1 − s⁷)`, which says the even part of
/// the (1,2,4,7) series is the Veronese series.
pub fn veronese_identity_holds() -> bool {
    let d = poly_prod(&[1, 2, 4, 7]);
    let d_neg: Vec<i64> = d
        .iter()
        .enumerate()
        .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
        .collect();
    let sum: Vec<i64> = d.iter().zip(&d_neg).map(|(a, b)| a + b).collect();
    let lhs = poly_mul(&sum, &poly_prod(&[2, 2, 4, 14]));
    let mut one_s8 = vec![0; 9];
    one_s8[0] = 2;
    one_s8[8] = 2;
    let rhs = poly_mul(&one_s8, &poly_mul(&d, &d_neg));
    let trim = |v: &[i64]| {
        let end = v.iter().rposition(|&c| c != 0).map_or(0, |p| p + 1);
        v[..end].to_vec()
    };
    trim(&lhs) == trim(&rhs)
}

/// `h(k/2) = [k³ + 21k² + 140k + 294 + 42(−1)^{k/2} + 48(k/7)] / 336`.
pub fn invariant_hilbert_formula(k: i64) -> Result<i64> {
    if k < 0 || k % 2 == 1 {
        return Err(Error::OddDegree(k as u32));
    }
    if k == 0 {
        return Ok(1);
    }
    let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
    let num = k * k * k + 21 * k * k + 140 * k + 294 + 42 * sign + 48 * legendre7(k);
    if num % 336 != 0 {
        return Err(Error::CheckFailed(format!("h({}) is not an integer", k / 2)));
    }
    Ok(num / 336)
}

/// `(1/336) Σ |Cl|·χ` for character values on the twelve classes.
pub fn class_average(chars: &[CycElem]) -> Result<i64> {
    let mut acc = CycElem::zero(1);
    for (size, ch) in CLASS_SIZES.iter().zip(chars) {
        acc = &acc + &ch.scale(&rat_int(*size));
    }
    let r = acc
        .as_rational()
        .ok_or_else(|| Error::CheckFailed("class average is not rational".into()))?
        / rat_int(336);
    rational_to_i64(&r).ok_or_else(|| Error::CheckFailed(format!("class average {r} is not an integer")))
}

/// Invariant dimension from the tabulated character values.
pub fn invariant_hilbert_table(k: i64) -> Result<i64> {
    if k == 0 {
        return Ok(1);
    }
    class_average(&character_table_row(k))
}

/// Quasi-polynomial `Σ_j c[k mod period][j] k^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub degree: usize,
    pub period: usize,
    pub coeffs: Vec<Vec<Rational>>,
}

impl QuasiPolynomial {
    pub fn eval(&self, k: i64) -> Rational {
        let row = &self.coeffs[k.rem_euclid(self.period as i64) as usize];
        let x = rat_int(k);
        row.iter().rev().fold(Rational::zero(), |acc, c| acc * &x + c)
    }
}

/// Fits a quasi-polynomial to `values[i]` at `k = i`, optionally with the
/// leading coefficient pinned, and checks every supplied value.
pub fn fit_quasipolynomial(
    values: &[i64],
    degree: usize,
    period: usize,
    leading: Option<Rational>,
) -> Result<QuasiPolynomial> {
    if period == 0 {
        return Err(Error::InvalidArgument("period must be positive".into()));
    }
    let free = if leading.is_some() { degree } else { degree + 1 };
    let mut coeffs = Vec::with_capacity(period);
    for r in 0..period {
        let ks: Vec<usize> = (r..values.len()).step_by(period).collect();
        if ks.len() < free {
            return Err(Error::InvalidArgument(format!(
                "residue {r} mod {period}: {} values, need {free}",
                ks.len()
            )));
        }
        let pts = &ks[..free];
        let mut a = Vec::with_capacity(free * free);
        let mut b = Vec::with_capacity(free);
        for &k in pts {
            let x = rat_int(k as i64);
            let mut p = Rational::one();
            for _ in 0..free {
                a.push(p.clone());
                p *= &x;
            }
            let mut v = rat_int(values[k]);
            if let Some(l) = &leading {
                v -= l * p;
            }
            b.push(v);
        }
        let mut row = if free == 0 {
            Vec::new()
        } else {
            rational_solve(&a, &b, free, 1).ok_or_else(|| Error::Inconsistent("singular fit".into()))?
        };
        if let Some(l) = &leading {
            row.push(l.clone());
        }
        coeffs.push(row);
    }
    let q = QuasiPolynomial { degree, period, coeffs };
    for (k, &v) in values.iter().enumerate() {
        if q.eval(k as i64) != rat_int(v) {
            return Err(Error::Inconsistent(format!("quasi-polynomial misses value at k = {k}")));
        }
    }
    Ok(q)
}

/// The closed invariant Hilbert formula rewritten in `p = k/2`:
/// `p³/42 + p²/4 + 5p/6 + [294 + 42(−1)^p + 48(2p/7)]/336`, period 14.
pub fn invariant_hilbert_in_p() -> QuasiPolynomial {
    let coeffs = (0..14)
        .map(|r: i64| {
            let sign = if r % 2 == 0 { 1 } else { -1 };
            vec![
                rat(294 + 42 * sign + 48 * legendre7(2 * r), 336),
                rat(5, 6),
                rat(1, 4),
                rat(1, 42),
            ]
        })
        .collect();
    QuasiPolynomial {
        degree: 3,
        period: 14,
        coeffs,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn veronese_prefix() {
        let want = [1, 2, 4, 6, 10, 14, 20, 27, 36, 46, 58];
        let got: Vec<i64> = (0..11).map(veronese_hilbert).collect();
        assert_eq!(got, want);
        assert_eq!(veronese_hilbert(4), 10);
    }

    #[test]
    fn formula_matches_veronese() {
        for p in 0..=42 {
            assert_eq!(invariant_hilbert_formula(2 * p as i64).unwrap(), veronese_hilbert(p));
            assert_eq!(invariant_hilbert_table(2 * p as i64).unwrap(), veronese_hilbert(p));
            assert_eq!(hypersurface_hilbert(p), veronese_hilbert(p));
        }
        assert_eq!(invariant_hilbert_formula(14).unwrap(), 27);
        assert_eq!(invariant_hilbert_formula(0).unwrap(), 1);
        assert!(invariant_hilbert_formula(3).is_err());
    }

    #[test]
    fn monomials() {
        assert_eq!(monomial_count(&[1, 1, 2, 4], 8).unwrap(), 35);
        assert_eq!(monomial_count(&[1, 1, 2, 4, 7], 8).unwrap(), 37);
        assert_eq!(monomial_count(&[1, 1, 2], 4).unwrap(), 9);
        let s = free_weighted_series(&[1, 1, 2, 4], 11).unwrap();
        let got: Vec<i64> = (0..11).map(|i| s.coeff_int(i).unwrap()).collect();
        assert_eq!(got, [1, 2, 4, 6, 10, 14, 20, 26, 35, 44, 56]);
    }

    #[test]
    fn series_identity() {
        assert!(veronese_identity_holds());
    }

    #[test]
    fn quasi_fits() {
        let q = fit_quasipolynomial(&[1; 10], 0, 1, None).unwrap();
        assert_eq!(q.coeffs, vec![vec![rat_int(1)]]);
        let vals: Vec<i64> = (0..80).map(veronese_hilbert).collect();
        let q = fit_quasipolynomial(&vals, 3, 14, None).unwrap();
        assert_eq!(q, invariant_hilbert_in_p());
        assert!(fit_quasipolynomial(&[1, 2, 4, 8, 16, 32], 1, 1, None).is_err());
    }
}
