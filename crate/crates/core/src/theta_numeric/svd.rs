//! One-sided Jacobi SVD for small complex matrices at multiprecision.

use rug::Float;

/// Complex number with `Float` parts (no error tracking).
#[derive(Clone, Debug)]
pub struct MpComplex {
    pub re: Float,
    pub im: Float,
}

impl MpComplex {
    pub fn new(re: Float, im: Float) -> Self {
        MpComplex { re, im }
    }

    fn abs2(&self) -> Float {
        let p = self.re.prec();
        Float::with_val(p, self.re.clone().square() + self.im.clone().square())
    }
}

/// Singular values (descending) and right singular vectors (columns of `v`,
/// same order) of an `m × n` matrix given column-major.
pub struct Svd {
    pub sigma: Vec<Float>,
    pub v: Vec<Vec<MpComplex>>,
    pub sweeps: usize,
}

pub fn jacobi_svd(mut cols: Vec<Vec<MpComplex>>, prec: u32) -> Svd {
    let n = cols.len();
    let zero = || MpComplex::new(Float::new(prec), Float::new(prec));
    let mut v: Vec<Vec<MpComplex>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let mut z = zero();
                    if i == j {
                        z.re = Float::with_val(prec, 1);
                    }
                    z
                })
                .collect()
        })
        .collect();
    let tol = Float::with_val(prec, Float::i_exp(1, -(prec as i32) + 16));
    let mut sweeps = 0;
    for _ in 0..60 {
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha = col_norm2(&cols[p], prec);
                let beta = col_norm2(&cols[q], prec);
                let (gr, gi) = col_dot(&cols[p], &cols[q], prec);
                let g = Float::with_val(prec, gr.clone().hypot(&gi));
                let scale = Float::with_val(prec, &alpha * &beta).sqrt();
                if g.is_zero() || g <= Float::with_val(prec, &tol * &scale) {
                    continue;
                }
                rotated = true;
                // phase e^{-iφ} with γ = |γ|e^{iφ}
                let ph = MpComplex::new(
                    Float::with_val(prec, &gr / &g),
                    Float::with_val(prec, -gi / &g),
                );
                let zeta = Float::with_val(prec, &beta - &alpha) / Float::with_val(prec, &g * 2u32);
                let root = Float::with_val(prec, zeta.clone().square() + 1u32).sqrt();
                let mut t = Float::with_val(prec, 1u32) / (Float::with_val(prec, zeta.clone().abs() + &root));
                if zeta.is_sign_negative() {
                    t = -t;
                }
                let c = Float::with_val(prec, Float::with_val(prec, t.clone().square() + 1u32).sqrt().recip());
                let s = Float::with_val(prec, &c * &t);
                rotate(&mut cols, p, q, &ph, &c, &s, prec);
                rotate(&mut v, p, q, &ph, &c, &s, prec);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<(Float, usize)> = cols
        .iter()
        .enumerate()
        .map(|(j, c)| (col_norm2(c, prec).sqrt(), j))
        .collect();
    order.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite singular values"));
    Svd {
        sigma: order.iter().map(|(s, _)| s.clone()).collect(),
        v: order.iter().map(|(_, j)| v[*j].clone()).collect(),
        sweeps,
    }
}

fn col_norm2(c: &[MpComplex], prec: u32) -> Float {
    let mut acc = Float::new(prec);
    for z in c {
        acc += z.abs2();
    }
    acc
}

/// `Σ conj(a_i) b_i`.
fn col_dot(a: &[MpComplex], b: &[MpComplex], prec: u32) -> (Float, Float) {
    let mut re = Float::new(prec);
    let mut im = Float::new(prec);
    for (x, y) in a.iter().zip(b) {
        re += Float::with_val(prec, &x.re * &y.re) + Float::with_val(prec, &x.im * &y.im);
        im += Float::with_val(prec, &x.re * &y.im) - Float::with_val(prec, &x.im * &y.re);
    }
    (re, im)
}

fn rotate(m: &mut [Vec<MpComplex>], p: usize, q: usize, ph: &MpComplex, c: &Float, s: &Float, prec: u32) {
    let (lo, hi) = m.split_at_mut(q);
    let (cp, cq) = (&mut lo[p], &mut hi[0]);
    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
        let yr = Float::with_val(prec, &y.re * &ph.re) - Float::with_val(prec, &y.im * &ph.im);
        let yi = Float::with_val(prec, &y.re * &ph.im) + Float::with_val(prec, &y.im * &ph.re);
        let yr = Float::with_val(prec, yr);
        let yi = Float::with_val(prec, yi);
        let nxr = Float::with_val(prec, c * &x.re) - Float::with_val(prec, s * &yr);
        let nxi = Float::with_val(prec, c * &x.im) - Float::with_val(prec, s * &yi);
        let nyr = Float::with_val(prec, s * &x.re) + Float::with_val(prec, c * &yr);
        let nyi = Float::with_val(prec, s * &x.im) + Float::with_val(prec, c * &yi);
        x.re = Float::with_val(prec, nxr);
        x.im = Float::with_val(prec, nxi);
        y.re = Float::with_val(prec, nyr);
        y.im = Float::with_val(prec, nyi);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(prec: u32, re: f64, im: f64) -> MpComplex {
        MpComplex::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    #[test]
    fn diagonal_and_rank_deficient() {
        let p = 128;
        // columns (3, 0), (0, 4i)
        let cols = vec![vec![c(p, 3.0, 0.0), c(p, 0.0, 0.0)], vec![c(p, 0.0, 0.0), c(p, 0.0, 4.0)]];
        let s = jacobi_svd(cols, p);
        assert!((s.sigma[0].to_f64() - 4.0).abs() < 1e-30);
        assert!((s.sigma[1].to_f64() - 3.0).abs() < 1e-30);

        // third column = col0 + i·col1
        let a = vec![c(p, 1.0, 0.0), c(p, 2.0, 1.0), c(p, 0.0, -1.0)];
        let b = vec![c(p, 0.5, 0.5), c(p, -1.0, 0.0), c(p, 3.0, 0.0)];
        let s3: Vec<MpComplex> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| c(p, x.re.to_f64() - y.im.to_f64(), x.im.to_f64() + y.re.to_f64()))
            .collect();
        let s = jacobi_svd(vec![a, b, s3], p);
        assert!(s.sigma[1].to_f64() > 0.1);
        assert!(s.sigma[2].to_f64() < 1e-30);
        // kernel vector ∝ (1, i, −1)
        let k = &s.v[2];
        let r = k[2].re.to_f64().hypot(k[2].im.to_f64());
        assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-20);
    }
}
