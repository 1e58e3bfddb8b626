//! Theta series at high precision: truncated lattice sums with rigorous
//! tail bounds, the Reynolds-averaged invariants `φ̃ᵢ(t, v) = t^{kᵢ}φᵢ(v)`,
//! their Jacobian, and rank checks on degree-8 monomials.
//!
//! A degree-`k` theta combination with coefficients `c_ν` (`ν ∈ (Z/k)³`) is
//! evaluated as `Σ_{u∈Z³} c_{u mod k} q^{B[u]/(2k)} e^{2πi vᵀu}` with
//! `q^r = e^{2πiτr}`, `τ = (3 + i√7)/2`.

pub mod svd;

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::float::Round;
use rug::Float;

use crate::arith::{rat, ApproxComplex, CycVec, Rational};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::PeriodData;
use crate::theta_rep::{dim, nu_index, ThetaRep};
use svd::{jacobi_svd, MpComplex};

/// Theta degrees of `φ₀..φ₃`.
pub const THETA_DEGREES: [usize; 4] = [2, 2, 4, 8];

/// Characteristics `ξᵢ` as (numerator, denominator).
pub const XI: [([i64; 3], i64); 4] = [([0, 0, 0], 1), ([0, 0, 1], 2), ([1, 1, 0], 4), ([2, 1, 1], 8)];

/// `μ₃ = (2, 1, 1)/7` read in the same coordinates as the `ξᵢ`.
pub const MU3: [i64; 3] = [2, 1, 1];

/// `λ_min(B) ≥ 1/‖CᵀC‖_∞ = 1/6`.
const LAMBDA_LOWER: f64 = 1.0 / 6.0;

/// How `q^r` is read for non-integral `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QBranch {
    /// `q^r = e^{2πiτr}`.
    Tau,
    /// Principal power of `q = −e^{−π√7}`: `e^{−π√7 r}·e^{iπr}`.
    Principal,
}

#[derive(Clone, Debug)]
pub struct TruncationParams {
    /// Include `u` with `B[u]/(2k) ≤ cutoff`.
    pub cutoff: Rational,
    pub prec: u32,
    pub branch: QBranch,
}

impl TruncationParams {
    pub fn new(digits: u32, cutoff: Rational) -> Result<Self> {
        if cutoff <= Rational::zero() {
            return Err(Error::InvalidArgument("cutoff must be positive".into()));
        }
        if digits == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        Ok(TruncationParams {
            cutoff,
            prec: crate::arith::bits_for_digits(digits),
            branch: QBranch::Tau,
        })
    }

    /// Largest admissible `4B[u]` for degree `k`.
    fn max4(&self, k: usize) -> i64 {
        let r = &self.cutoff * rat(8 * k as i64, 1);
        (r.numer() / r.denom()).to_i64().expect("cutoff fits i64")
    }

    fn outer4(&self, k: usize) -> i64 {
        let c = self.cutoff.to_f64().unwrap_or(0.0);
        ((3.0 * c + 8.0) * 8.0 * k as f64).ceil() as i64
    }
}

#[derive(Clone, Debug)]
pub struct EvalPoint {
    pub t: ApproxComplex,
    pub v: [ApproxComplex; 3],
}

impl EvalPoint {
    /// `(t₀, v₀) = (1, (1/8, 1/16, 1/4))`.
    pub fn certificate(prec: u32) -> Self {
        let q = |n, d| ApproxComplex::from_rational(prec, &rat(n, d));
        EvalPoint {
            t: ApproxComplex::from_int(prec, 1),
            v: [q(1, 8), q(1, 16), q(1, 4)],
        }
    }
}

/// The integer matrix `4B`.
fn b4(pd: &PeriodData) -> [[i64; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let x = &pd.b[i][j] * rat(4, 1);
            assert!(x.is_integer(), "4B integral");
            x.to_integer().to_i64().expect("small")
        })
    })
}

fn quad4(b4: &[[i64; 3]; 3], u: [i64; 3]) -> i64 {
    (0..3).map(|i| (0..3).map(|j| u[i] * b4[i][j] * u[j]).sum::<i64>()).sum()
}

/// All `u ∈ Z³` with `lo < 4B[u] ≤ hi`, sorted by `4B[u]` then
/// lexicographically. The box uses `max u_j² = B[u]·(CᵀC)_jj`.
pub fn lattice_points(lo: i64, hi: i64) -> Vec<([i64; 3], i64)> {
    let pd = PeriodData::build();
    let b = b4(&pd);
    let g = crate::lattice::imat3_mul(&crate::lattice::imat3_transpose(&pd.c), &pd.c);
    let bound = |j: usize| (((hi.max(0) as f64) / 4.0 * g[j][j] as f64).sqrt().floor() as i64) + 1;
    let (r0, r1, r2) = (bound(0), bound(1), bound(2));
    let mut pts = Vec::new();
    for a in -r0..=r0 {
        for c in -r1..=r1 {
            for d in -r2..=r2 {
                let u = [a, c, d];
                let n = quad4(&b, u);
                if n > lo && n <= hi {
                    pts.push((u, n));
                }
            }
        }
    }
    pts.sort_by_key(|x| (x.1, x.0));
    pts
}

/// `N(c)`: number of `u ∈ Z³` with `B[u]/(2k) ≤ c`.
pub fn term_count(k: usize, cutoff: &Rational) -> usize {
    let p = TruncationParams {
        cutoff: cutoff.clone(),
        prec: 64,
        branch: QBranch::Tau,
    };
    lattice_points(-1, p.max4(k)).len()
}

/// `(4π/(3√det B))(2kc)^{3/2}` with `det B = 1/4`.
pub fn term_count_asymptotic(k: usize, cutoff: f64) -> f64 {
    4.0 * std::f64::consts::PI / 3.0 * 2.0 * (2.0 * k as f64 * cutoff).powf(1.5)
}

/// `q^{n/d} = e^{2πiτn/d}`.
pub fn q_power(prec: u32, n: i64, d: i64) -> ApproxComplex {
    let pi = ApproxComplex::pi(prec + 16);
    let sqrt7 = Float::with_val(prec + 16, 7).sqrt();
    let re = Float::with_val(prec, -(pi.clone() * &sqrt7) * n / d);
    let im = Float::with_val(prec, pi * 3 * n / d);
    let scale = Float::with_val(53, re.clone().abs() + im.clone().abs() + 1);
    let e = Float::with_val_round(53, scale * Float::with_val(53, Float::i_exp(1, -(prec as i32) + 4)), Round::Up).0;
    ApproxComplex::from_parts(re, im, e).exp()
}

/// Principal-branch power `(−e^{−π√7})^{n/d} = e^{−π√7 n/d}·e^{iπn/d}`.
pub fn q_power_principal(prec: u32, n: i64, d: i64) -> ApproxComplex {
    let mag = q_power(prec, n, d).abs_mid();
    let ph = ApproxComplex::root_of_unity(prec, n, 2 * d);
    let m = ApproxComplex::from_real(mag, Float::with_val(53, Float::i_exp(1, -(prec as i32) + 8)));
    &ph * &m
}

/// A degree-`k` theta combination `Σ_ν c_ν θ_{ν/k,k}`.
#[derive(Clone, Debug)]
pub struct ThetaSeries {
    pub k: usize,
    pub coeffs: Vec<ApproxComplex>,
}

/// `Σ term`, `Σ u_j·term` over the truncated lattice, radii include tails.
#[derive(Clone, Debug)]
pub struct SeriesSums {
    pub value: ApproxComplex,
    pub moments: [ApproxComplex; 3],
    pub terms: usize,
    pub tail: f64,
}

fn is_exact_zero(z: &ApproxComplex) -> bool {
    z.re.is_zero() && z.im.is_zero() && z.err.is_zero()
}

impl ThetaSeries {
    pub fn single(k: usize, nu: [i64; 3], prec: u32) -> Self {
        let mut coeffs = vec![ApproxComplex::zero(prec); dim(k)];
        coeffs[nu_index(k, nu)] = ApproxComplex::from_int(prec, 1);
        ThetaSeries { k, coeffs }
    }

    pub fn from_row(k: usize, row: &CycVec, prec: u32) -> Self {
        let coeffs = row.entries().iter().map(|e| e.embed(prec)).collect();
        ThetaSeries { k, coeffs }
    }

    /// `Σ wᵢ·rowᵢ`.
    pub fn combine(k: usize, parts: &[(ApproxComplex, CycVec)], prec: u32) -> Self {
        let mut coeffs = vec![ApproxComplex::zero(prec); dim(k)];
        for (w, row) in parts {
            for (i, e) in row.entries().iter().enumerate() {
                if !e.is_zero() {
                    coeffs[i] = &coeffs[i] + &(w * &e.embed(prec));
                }
            }
        }
        ThetaSeries { k, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(is_exact_zero)
    }

    fn coeff_bounds(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.abs_upper().to_f64_round(Round::Up) * (1.0 + 1e-12))
            .collect()
    }

    pub fn sums(&self, v: &[ApproxComplex; 3], params: &TruncationParams) -> Result<SeriesSums> {
        let k = self.k;
        let prec = params.prec;
        let max4 = params.max4(k);
        let pts = lattice_points(-1, max4);
        let radius = |j: usize| pts.iter().map(|(u, _)| u[j].abs()).max().unwrap_or(0);
        let tables: Vec<PowerTable> = (0..3).map(|j| PowerTable::new(&v[j], radius(j), prec)).collect();
        let mut qpow: Vec<Option<ApproxComplex>> = vec![None; max4 as usize + 1];
        let mut value = ApproxComplex::zero(prec);
        let mut moments = [
            ApproxComplex::zero(prec),
            ApproxComplex::zero(prec),
            ApproxComplex::zero(prec),
        ];
        let mut terms = 0;
        for (u, n) in &pts {
            let c = &self.coeffs[nu_index(k, *u)];
            if is_exact_zero(c) {
                continue;
            }
            terms += 1;
            let qp = qpow[*n as usize].get_or_insert_with(|| match params.branch {
                QBranch::Tau => q_power(prec, *n, 8 * k as i64),
                QBranch::Principal => q_power_principal(prec, *n, 8 * k as i64),
            });
            let e = &(&tables[0].get(u[0]) * &tables[1].get(u[1])) * &tables[2].get(u[2]);
            let term = &(c * qp) * &e;
            value = &value + &term;
            for j in 0..3 {
                if u[j] != 0 {
                    moments[j] = &moments[j] + &(&term * &ApproxComplex::from_int(prec, u[j]));
                }
            }
        }
        let tail = self.tail_bound(v, params)?;
        Ok(SeriesSums {
            value: value.widen(tail),
            moments: std::array::from_fn(|j| moments[j].widen(tail)),
            terms,
            tail,
        })
    }

    /// Bound on `Σ |c_u q^{B[u]/(2k)} e^{2πivᵀu}|·max(1, |u|_∞)` over the
    /// omitted `u`: an explicit outer shell plus a Gaussian estimate beyond.
    fn tail_bound(&self, v: &[ApproxComplex; 3], params: &TruncationParams) -> Result<f64> {
        let k = self.k;
        let cb = self.coeff_bounds();
        let cmax = cb.iter().cloned().fold(0.0, f64::max);
        if cmax == 0.0 {
            return Ok(0.0);
        }
        let growth: Vec<f64> = v
            .iter()
            .map(|x| {
                let im_hi = x.im.to_f64().abs() + x.err.to_f64();
                2.0 * std::f64::consts::PI * im_hi
            })
            .collect();
        let h = growth.iter().cloned().fold(0.0, f64::max);
        let s = std::f64::consts::PI * 7f64.sqrt() / (2.0 * k as f64);
        let lo = params.max4(k);
        let hi = params.outer4(k);
        let shell: f64 = lattice_points(lo, hi)
            .par_iter()
            .map(|(u, n)| {
                let c = cb[nu_index(k, *u)];
                if c == 0.0 {
                    return 0.0;
                }
                let w = (0..3).map(|j| growth[j] * u[j].abs() as f64).sum::<f64>();
                let big = u.iter().map(|x| x.abs()).max().unwrap_or(0).max(1) as f64;
                c * (-s * *n as f64 / 4.0 + w).exp() * big
            })
            .sum();
        let b = s * LAMBDA_LOWER / 2.0;
        let a = h * 3f64.sqrt();
        let t_outer = hi as f64 / 4.0;
        let log_far = (-s * t_outer / 2.0)
            + a * a / (2.0 * b)
            + (1.0 + (2.0 / b).sqrt()).ln()
            + 3.0 * (1.0 + 2.0 / ((b / 4.0).exp_m1())).ln();
        let far = cmax * log_far.exp();
        let total = (shell + far) * 1.01;
        if !total.is_finite() {
            return Err(Error::InsufficientPrecision("tail bound diverges".into()));
        }
        Ok(total)
    }
}

/// `x^n` for `|n| ≤ r`, with `x = e^{2πiv}`.
struct PowerTable {
    pos: Vec<ApproxComplex>,
    neg: Vec<ApproxComplex>,
}

impl PowerTable {
    fn new(v: &ApproxComplex, r: i64, prec: u32) -> Self {
        let two_pi_i = ApproxComplex::from_parts(
            Float::new(prec),
            Float::with_val(prec, ApproxComplex::pi(prec) * 2u32),
            Float::with_val(53, Float::i_exp(1, -(prec as i32) + 4)),
        );
        let z = v * &two_pi_i;
        let x = z.exp();
        let y = (-&z).exp();
        let build = |b: &ApproxComplex| {
            let mut out = vec![ApproxComplex::from_int(prec, 1)];
            for i in 1..=r as usize {
                let next = &out[i - 1] * b;
                out.push(next);
            }
            out
        };
        PowerTable {
            pos: build(&x),
            neg: build(&y),
        }
    }

    fn get(&self, n: i64) -> ApproxComplex {
        if n >= 0 {
            self.pos[n as usize].clone()
        } else {
            self.neg[(-n) as usize].clone()
        }
    }
}

fn pow_approx(z: &ApproxComplex, n: usize) -> ApproxComplex {
    let mut acc = ApproxComplex::from_int(z.prec(), 1);
    for _ in 0..n {
        acc = &acc * z;
    }
    acc
}

/// `φ_i = R_G^{(k_i)}(θ_{ξ_i,k_i})` with its Reynolds row.
#[derive(Clone, Debug)]
pub struct InvariantTheta {
    pub index: usize,
    pub k: usize,
    pub xi: [i64; 3],
    pub row: CycVec,
    pub series: ThetaSeries,
}

/// The four invariants of the Jacobian certificate.
pub fn invariant_thetas(group: &Group, prec: u32) -> Result<Vec<InvariantTheta>> {
    let mut reps: Vec<(usize, ThetaRep)> = Vec::new();
    let mut out = Vec::new();
    for (i, &(num, den)) in XI.iter().enumerate() {
        let k = THETA_DEGREES[i];
        if (k as i64) % den != 0 {
            return Err(Error::InvalidArgument("characteristic not in (1/k)Z³".into()));
        }
        let nu: [i64; 3] = std::array::from_fn(|j| num[j] * (k as i64 / den));
        if !reps.iter().any(|(kk, _)| *kk == k) {
            reps.push((k, ThetaRep::new(group, k)?));
        }
        let rep = &reps.iter().find(|(kk, _)| *kk == k).expect("built").1;
        let row = rep.reynolds_row(nu);
        let series = ThetaSeries::from_row(k, &row, prec);
        out.push(InvariantTheta {
            index: i,
            k,
            xi: nu,
            row,
            series,
        });
    }
    Ok(out)
}

/// Coefficient of `∂/∂t`: the printed `2k` or the direct derivative `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TFactor {
    Printed,
    Direct,
}

/// `(∂φ̃/∂t, ∂φ̃/∂v₁, ∂φ̃/∂v₂, ∂φ̃/∂v₃)` at `p`.
pub fn phi_partials(
    series: &ThetaSeries,
    p: &EvalPoint,
    params: &TruncationParams,
    factor: TFactor,
) -> Result<[ApproxComplex; 4]> {
    let sums = series.sums(&p.v, params)?;
    Ok(partials_from_sums(series.k, &sums, p, factor))
}

fn partials_from_sums(k: usize, sums: &SeriesSums, p: &EvalPoint, factor: TFactor) -> [ApproxComplex; 4] {
    let prec = sums.value.prec();
    let f = match factor {
        TFactor::Printed => 2 * k,
        TFactor::Direct => k,
    } as i64;
    let tk1 = pow_approx(&p.t, k - 1);
    let tk = &tk1 * &p.t;
    let two_pi_i = ApproxComplex::from_parts(
        Float::new(prec),
        Float::with_val(prec, ApproxComplex::pi(prec) * 2u32),
        Float::with_val(53, Float::i_exp(1, -(prec as i32) + 4)),
    );
    let dt = &(&tk1 * &sums.value) * &ApproxComplex::from_int(prec, f);
    let dv = |j: usize| &(&two_pi_i * &tk) * &sums.moments[j];
    [dt, dv(0), dv(1), dv(2)]
}

/// 4×4 determinant by Laplace expansion.
pub fn det4(m: &[[ApproxComplex; 4]; 4]) -> ApproxComplex {
    let prec = m[0][0].prec();
    let det3 = |r: [usize; 3], c: [usize; 3]| {
        let e = |i: usize, j: usize| &m[r[i]][c[j]];
        let t1 = e(0, 0) * &(&(e(1, 1) * e(2, 2)) - &(e(1, 2) * e(2, 1)));
        let t2 = e(0, 1) * &(&(e(1, 0) * e(2, 2)) - &(e(1, 2) * e(2, 0)));
        let t3 = e(0, 2) * &(&(e(1, 0) * e(2, 1)) - &(e(1, 1) * e(2, 0)));
        &(&t1 - &t2) + &t3
    };
    let mut acc = ApproxComplex::zero(prec);
    for j in 0..4 {
        let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
        let minor = det3([1, 2, 3], [cols[0], cols[1], cols[2]]);
        let term = &m[0][j] * &minor;
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[derive(Clone, Debug)]
pub struct JacobianReport {
    /// With the printed `2kᵢ` in `∂/∂t`.
    pub printed: ApproxComplex,
    /// With `kᵢ`; equals `printed/2`.
    pub direct: ApproxComplex,
    pub terms: [usize; 4],
    pub n3: usize,
}

impl JacobianReport {
    pub fn excludes_zero(&self) -> bool {
        self.printed.abs_mid() > self.printed.err
    }
}

pub fn jacobian_at(invariants: &[InvariantTheta], p: &EvalPoint, params: &TruncationParams) -> Result<JacobianReport> {
    if invariants.len() != 4 {
        return Err(Error::InvalidArgument("need four invariants".into()));
    }
    let sums: Vec<SeriesSums> = invariants
        .par_iter()
        .map(|inv| inv.series.sums(&p.v, params))
        .collect::<Result<_>>()?;
    let rows = |f: TFactor| -> [[ApproxComplex; 4]; 4] {
        std::array::from_fn(|i| partials_from_sums(invariants[i].k, &sums[i], p, f))
    };
    let printed = det4(&rows(TFactor::Printed));
    let direct = det4(&rows(TFactor::Direct));
    Ok(JacobianReport {
        printed,
        direct,
        terms: std::array::from_fn(|i| sums[i].terms),
        n3: term_count(8, &params.cutoff),
    })
}

/// `J(t₀, v₀)`; fails when the certified ball contains zero.
pub fn jacobian_certificate(group: &Group, params: &TruncationParams) -> Result<JacobianReport> {
    let invs = invariant_thetas(group, params.prec)?;
    let rep = jacobian_at(&invs, &EvalPoint::certificate(params.prec), params)?;
    if !rep.excludes_zero() {
        return Err(Error::InsufficientPrecision("Jacobian ball contains 0".into()));
    }
    Ok(rep)
}

/// Exponent vectors `e` with `Σ eᵢwᵢ = d`, lexicographic.
pub fn monomials(weights: &[usize], d: usize) -> Vec<Vec<usize>> {
    fn go(w: &[usize], d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w.is_empty() {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=d / w[0] {
            cur.push(e);
            go(&w[1..], d - e * w[0], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

/// Fixed-seed sample points: `|t| = 1`, `v` uniform on the real torus `[0, 1)³`.
pub fn sample_points(n: usize, seed: u64, prec: u32) -> Vec<EvalPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let th: f64 = rng.gen::<f64>();
            let t = ApproxComplex::cis(&Float::with_val(prec, ApproxComplex::pi(prec) * 2u32 * th));
            let v = std::array::from_fn(|_| {
                let x: f64 = rng.gen::<f64>();
                ApproxComplex::from_real(Float::with_val(prec, x), Float::new(53))
            });
            EvalPoint { t, v }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RankReport {
    pub columns: usize,
    pub samples: usize,
    pub rank: usize,
    /// Singular values, descending, after exact power-of-two column scaling.
    pub sigma: Vec<f64>,
    /// Bound on `|σᵢ(A) − σᵢ(Ã)|`: entry radii (Weyl) plus rounding.
    pub floor: f64,
    /// `σ_rank / max(σ_{rank+1}, floor)`.
    pub gap: f64,
    /// Right singular vector of the smallest singular value, scaled to
    /// unit largest entry and undone for the column scaling.
    pub kernel: Vec<(f64, f64)>,
}

/// Numerical rank of the `samples × #monomials` evaluation matrix of the
/// weighted-degree-`d` monomials in `φ̃ᵢ = t^{kᵢ}Fᵢ`, weights `kᵢ/2`.
pub fn monomial_rank(series: &[ThetaSeries], d: usize, points: &[EvalPoint], params: &TruncationParams) -> Result<RankReport> {
    let prec = params.prec;
    let weights: Vec<usize> = series.iter().map(|s| s.k / 2).collect();
    let mons = monomials(&weights, d);
    let vals: Vec<Vec<ApproxComplex>> = points
        .par_iter()
        .map(|p| {
            series
                .iter()
                .map(|s| {
                    let f = s.sums(&p.v, params)?.value;
                    Ok(&pow_approx(&p.t, s.k) * &f)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut cols: Vec<Vec<ApproxComplex>> = mons
        .iter()
        .map(|e| {
            vals.iter()
                .map(|row| {
                    e.iter()
                        .enumerate()
                        .fold(ApproxComplex::from_int(prec, 1), |acc, (i, &ei)| &acc * &pow_approx(&row[i], ei))
                })
                .collect()
        })
        .collect();
    let mut shifts = Vec::with_capacity(cols.len());
    for col in cols.iter_mut() {
        let m = col.iter().map(|z| z.abs_mid().to_f64()).fold(0.0, f64::max);
        let sh = if m > 0.0 { -(m.log2().round() as i32) } else { 0 };
        shifts.push(sh);
        let f = Float::with_val(prec, Float::i_exp(1, sh));
        for z in col.iter_mut() {
            *z = ApproxComplex::from_parts(
                Float::with_val(prec, &z.re * &f),
                Float::with_val(prec, &z.im * &f),
                Float::with_val_round(53, &z.err * &f, Round::Up).0,
            );
        }
    }
    let err_f: f64 = cols.iter().flatten().map(|z| z.err_f64().powi(2)).sum::<f64>().sqrt();
    let norm_f: f64 = cols.iter().flatten().map(|z| z.abs_mid().to_f64().powi(2)).sum::<f64>().sqrt();
    let floor = (err_f + norm_f * 2f64.powi(-(prec as i32) + 30)) * 1.01;
    let mids: Vec<Vec<MpComplex>> = cols
        .iter()
        .map(|c| c.iter().map(|z| MpComplex::new(z.re.clone(), z.im.clone())).collect())
        .collect();
    let svd = jacobi_svd(mids, prec);
    let sigma: Vec<f64> = svd.sigma.iter().map(|s| s.to_f64()).collect();
    let rank = sigma.iter().filter(|&&s| s > 1e3 * floor).count();
    let gap = if rank == 0 {
        0.0
    } else {
        sigma[rank - 1] / sigma.get(rank).copied().unwrap_or(0.0).max(floor)
    };
    let last = svd.v.last().expect("nonempty");
    let raw: Vec<(f64, f64)> = last
        .iter()
        .zip(&shifts)
        .map(|(z, &sh)| {
            let f = 2f64.powi(sh);
            (z.re.to_f64() * f, z.im.to_f64() * f)
        })
        .collect();
    let big = raw.iter().map(|(a, b)| a.hypot(*b)).fold(0.0, f64::max);
    let kernel = raw.iter().map(|(a, b)| (a / big, b / big)).collect();
    Ok(RankReport {
        columns: mons.len(),
        samples: points.len(),
        rank,
        sigma,
        floor,
        gap,
        kernel,
    })
}

/// Rank of the 35 weighted-degree-8 monomials in `φ̃₀..φ̃₃`.
pub fn independence_rank(
    invariants: &[InvariantTheta],
    degree: usize,
    sample_count: usize,
    seed: u64,
    params: &TruncationParams,
) -> Result<RankReport> {
    if sample_count < 40 {
        return Err(Error::InvalidArgument("sample_count must be at least 40".into()));
    }
    let series: Vec<ThetaSeries> = invariants.iter().map(|i| i.series.clone()).collect();
    let pts = sample_points(sample_count, seed, params.prec);
    let rep = monomial_rank(&series, degree, &pts, params)?;
    if rep.rank == rep.columns && rep.gap < 1e3 {
        return Err(Error::Inconclusive("rank gap below 1e3".into()));
    }
    Ok(rep)
}

/// `ϑ_ε = Σ_{d ∈ 2Z³+ε} q^{(7/4)B[d]}`.
pub fn theta_constant(eps: [i64; 3], params: &TruncationParams) -> ApproxComplex {
    let prec = params.prec;
    // q^{7n/16} for n = 4B[d]; keep terms with 7n/16 ≤ 4·cutoff + 8
    let c = params.cutoff.to_f64().unwrap_or(3.5);
    let hi = ((4.0 * c + 8.0) * 16.0 / 7.0).ceil() as i64;
    let mut acc = ApproxComplex::zero(prec);
    for (d, n) in lattice_points(-1, hi) {
        if (0..3).all(|j| (d[j] - eps[j]).rem_euclid(2) == 0) {
            acc = &acc + &q_power(prec, 7 * n, 16);
        }
    }
    // omitted terms: |q|^{7B/4} with B > hi/4, Gaussian bound as above
    let s = std::f64::consts::PI * 7f64.sqrt() * 7.0 / 4.0;
    let b = s * LAMBDA_LOWER / 2.0;
    let log_far = -s * (hi as f64 / 4.0) / 2.0 + 3.0 * (1.0 + 2.0 / ((b / 4.0).exp_m1())).ln();
    acc.widen(log_far.exp() * 1.01)
}

/// The candidate `φ₄ = R_G^{(14)}(θ_{μ₃,7}²)` expanded as
/// `Σ_ε ϑ_ε R_G^{(14)}(θ_{μ₃+ε/2,14})`. `None` when every Reynolds row
/// involved vanishes.
pub fn phi4_candidate(group: &Group, params: &TruncationParams) -> Result<Option<ThetaSeries>> {
    let rep = ThetaRep::new(group, 14)?;
    let eps: Vec<[i64; 3]> = (0..8).map(|b| [(b >> 2) & 1, (b >> 1) & 1, b & 1]).collect();
    let parts: Vec<(ApproxComplex, CycVec)> = eps
        .par_iter()
        .map(|e| {
            let nu: [i64; 3] = std::array::from_fn(|j| 2 * MU3[j] + 7 * e[j]);
            (theta_constant(*e, params), rep.reynolds_row(nu))
        })
        .collect();
    if parts.iter().all(|(_, r)| r.is_zero()) {
        return Ok(None);
    }
    Ok(Some(ThetaSeries::combine(14, &parts, params.prec)))
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub rank: RankReport,
    pub kernel_dim: usize,
    /// Normalized coefficient of `φ₃²` in the kernel vector.
    pub c_phi3_sq: (f64, f64),
    /// Normalized coefficients of `φ₀φ₄` and `φ₁φ₄`.
    pub c_phi4: [(f64, f64); 2],
}

/// Kernel of the 37 weighted-degree-8 monomials in `φ̃₀..φ̃₄`.
pub fn relation_nullspace(
    group: &Group,
    invariants: &[InvariantTheta],
    sample_count: usize,
    seed: u64,
    params: &TruncationParams,
) -> Result<RelationReport> {
    if sample_count < 60 {
        return Err(Error::InvalidArgument("sample_count must be at least 60".into()));
    }
    let phi4 = phi4_candidate(group, params)?
        .ok_or_else(|| Error::Inconclusive("Reynolds average of the φ₄ candidate vanishes".into()))?;
    let mut series: Vec<ThetaSeries> = invariants.iter().map(|i| i.series.clone()).collect();
    series.push(phi4);
    let pts = sample_points(sample_count, seed, params.prec);
    let rank = monomial_rank(&series, 8, &pts, params)?;
    let weights = [1, 1, 2, 4, 7];
    let mons = monomials(&weights, 8);
    let find = |e: [usize; 5]| mons.iter().position(|m| m[..] == e[..]).expect("monomial present");
    let c_phi3_sq = rank.kernel[find([0, 0, 0, 2, 0])];
    let c_phi4 = [rank.kernel[find([1, 0, 0, 0, 1])], rank.kernel[find([0, 1, 0, 0, 1])]];
    Ok(RelationReport {
        kernel_dim: rank.columns - rank.rank,
        rank,
        c_phi3_sq,
        c_phi4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(term_count(8, &rat(7, 2)), 3527);
        let pts = lattice_points(-1, 8 * 8 * 7 / 2);
        assert!(pts.iter().all(|(u, _)| u[0].abs() <= 10 && u[1].abs() <= 10 && u[2].abs() <= 14));
        let a = term_count_asymptotic(8, 3.5);
        assert!((a / 3527.0 - 1.0).abs() < 0.1, "{a}");
        assert_eq!(monomials(&[1, 1, 2, 4], 8).len(), 35);
        assert_eq!(monomials(&[1, 1, 2, 4, 7], 8).len(), 37);
        assert_eq!(monomials(&[1, 1, 2], 4).len(), 9);
    }

    #[test]
    fn q_values() {
        let q = q_power(128, 1, 1);
        assert!(q.contains_f64(-(-std::f64::consts::PI * 7f64.sqrt()).exp(), 0.0, 1e-18));
        let q72 = q_power(128, 7, 2).to_f64();
        assert!(q72.0.abs() < 1e-25 && (q72.1 - 2.3211e-13).abs() < 1e-17, "{q72:?}");
        let p72 = q_power_principal(128, 7, 2).to_f64();
        assert!((p72.1 + 2.3211e-13).abs() < 1e-17, "{p72:?}");
    }

    #[test]
    fn tail_bound_sound() {
        let prec = 128;
        let th = ThetaSeries::single(2, [0, 0, 1], prec);
        let v = EvalPoint::certificate(prec).v;
        let lo = th.sums(&v, &TruncationParams { cutoff: rat(1, 1), prec, branch: QBranch::Tau }).unwrap();
        let hi = th.sums(&v, &TruncationParams { cutoff: rat(2, 1), prec, branch: QBranch::Tau }).unwrap();
        let d = &lo.value - &hi.value;
        let (re, im) = d.to_f64();
        assert!(re.hypot(im) <= lo.tail, "{} > {}", re.hypot(im), lo.tail);
        assert!(lo.tail < 1e-3 && hi.tail < lo.tail);
    }

    #[test]
    fn theta_at_zero() {
        let prec = 128;
        let th = ThetaSeries::single(1, [0, 0, 0], prec);
        let z = ApproxComplex::zero(prec);
        let v = [z.clone(), z.clone(), z];
        let a = th.sums(&v, &TruncationParams { cutoff: rat(7, 2), prec, branch: QBranch::Tau }).unwrap();
        let b = th.sums(&v, &TruncationParams { cutoff: rat(7, 1), prec, branch: QBranch::Tau }).unwrap();
        let (re, im) = (&a.value - &b.value).to_f64();
        assert!(re.hypot(im) <= a.tail && a.tail < 1e-10, "{} {}", re.hypot(im), a.tail);
    }
}
