//! Theta transformation matrices `Ũ_γ`, the representation `ρ_k`, its
//! character, Gauss sums and Reynolds rows.
//!
//! Vectors indexed by `P_k = (Z/k)³` are ordered lexicographically in
//! `ν = k·m`. Entries live in `Q(ζ_{2k})` and are handled exactly as
//! [`CycVec`]s; the transform `x ↦ xᵀŨ_γ` is applied without forming the
//! matrix: phase `ω^{b̃[ν]}`, DFT over `(Z/k)³`, phase `ω^{c̃[ν̂]}`, inverse
//! DFT, then the permutation `ν' ↦ dν'` (`ω = ζ_{2k}`).

use rayon::prelude::*;

use crate::arith::{rat, sqrt_int, CycElem, CycRing, CycVec};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lattice::{IMat3, PeriodData, SymplecticLift};

pub fn dim(k: usize) -> usize {
    k * k * k
}

/// Linear index of `ν mod k`.
pub fn nu_index(k: usize, nu: [i64; 3]) -> usize {
    let r = |x: i64| x.rem_euclid(k as i64) as usize;
    (r(nu[0]) * k + r(nu[1])) * k + r(nu[2])
}

pub fn index_nu(k: usize, idx: usize) -> [i64; 3] {
    [(idx / (k * k)) as i64, (idx / k % k) as i64, (idx % k) as i64]
}

fn quad_form(m: &IMat3, v: [i64; 3]) -> i64 {
    (0..3).map(|i| (0..3).map(|j| v[i] * m[i][j] * v[j]).sum::<i64>()).sum()
}

fn mat_vec(m: &IMat3, v: [i64; 3]) -> [i64; 3] {
    std::array::from_fn(|i| (0..3).map(|j| m[i][j] * v[j]).sum())
}

fn check_even(k: usize) -> Result<()> {
    if k == 0 || k % 2 == 1 {
        return Err(Error::OddDegree(k as u32));
    }
    Ok(())
}

/// `x ↦ xᵀŨ_γ` (optionally scaled) on `(Z/k)³`-indexed vectors.
#[derive(Clone, Debug)]
pub struct ThetaTransform {
    pub k: usize,
    n: usize,
    ring: CycRing,
    b_phase: Vec<usize>,
    c_phase: Vec<usize>,
    perm: Vec<usize>,
    d: IMat3,
    /// Output multiplied by `ζ_{2k}^rot / den_scale`.
    rot: usize,
    den_scale: i64,
    twiddle: Vec<usize>,
}

impl ThetaTransform {
    /// `Ũ_γ` of the theta transformation formula; requires even `k` and
    /// `det d = ±1`.
    pub fn new(gamma: &SymplecticLift, k: usize) -> Result<Self> {
        check_even(k)?;
        let n = 2 * k;
        let bt = gamma
            .b_tilde()
            .ok_or_else(|| Error::InvalidArgument("det d ≠ ±1".into()))?;
        let ct = gamma.c_tilde();
        let dm = dim(k);
        let phase = |m: &IMat3, i: usize| quad_form(m, index_nu(k, i)).rem_euclid(n as i64) as usize;
        let b_phase = (0..dm).map(|i| phase(&bt, i)).collect();
        let c_phase = (0..dm).map(|i| phase(&ct, i)).collect();
        let perm = (0..dm)
            .map(|i| nu_index(k, mat_vec(&gamma.d, index_nu(k, i))))
            .collect();
        let twiddle = (0..k * k).map(|wt| (2 * (wt / k) * (wt % k)) % n).collect();
        Ok(ThetaTransform {
            k,
            n,
            ring: CycRing::new(n as u32),
            b_phase,
            c_phase,
            perm,
            d: gamma.d,
            rot: 0,
            den_scale: 1,
            twiddle,
        })
    }

    /// Multiplies the transform by `ζ_{2k}^rot / den`.
    pub fn scaled(mut self, rot: usize, den: i64) -> Self {
        self.rot = rot % self.n;
        self.den_scale = den;
        self
    }

    pub fn ring(&self) -> &CycRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        dim(self.k)
    }

    fn dft(&self, buf: &mut [i64], sign: i64) {
        let k = self.k;
        let n = self.n;
        let mut line_in = vec![0i64; k * n];
        let mut line_out = vec![0i64; k * n];
        let mut live = vec![false; k];
        for stride in [k * k, k, 1] {
            for base in 0..dim(k) {
                // base must have zero coordinate along this axis
                if (base / stride) % k != 0 {
                    continue;
                }
                for t in 0..k {
                    let at = (base + t * stride) * n;
                    line_in[t * n..(t + 1) * n].copy_from_slice(&buf[at..at + n]);
                    live[t] = line_in[t * n..(t + 1) * n].iter().any(|&c| c != 0);
                }
                if !live.iter().any(|&l| l) {
                    continue;
                }
                line_out.iter_mut().for_each(|c| *c = 0);
                for w in 0..k {
                    let out = &mut line_out[w * n..(w + 1) * n];
                    for t in 0..k {
                        if !live[t] {
                            continue;
                        }
                        let e = self.twiddle[w * k + t];
                        let e = if sign > 0 { e } else { (n - e) % n };
                        self.ring.rotate_add_buf(&line_in[t * n..(t + 1) * n], e, out);
                    }
                }
                for w in 0..k {
                    let at = (base + w * stride) * n;
                    buf[at..at + n].copy_from_slice(&line_out[w * n..(w + 1) * n]);
                }
            }
        }
    }

    fn expand(&self, x: &CycVec, phase: &[usize]) -> Vec<i64> {
        let n = self.n;
        let mut buf = vec![0i64; self.dim() * n];
        for i in 0..self.dim() {
            let v = x.raw(i);
            if v.iter().all(|&c| c == 0) {
                continue;
            }
            self.ring.rotate_add(v, phase[i], &mut buf[i * n..(i + 1) * n]);
        }
        buf
    }

    fn guard(&self, x: &CycVec) {
        let m = x.coeffs.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0) as u128;
        let growth = (dim(self.k) as u128).pow(2) * (self.n as u128) * (self.ring.phi() as u128) * 4;
        assert!(m * growth < i64::MAX as u128, "cyclotomic coefficient overflow");
    }

    fn finish(&self, buf: &[i64], src: impl Fn(usize) -> usize, den: i64) -> CycVec {
        let n = self.n;
        let phi = self.ring.phi();
        let mut out = CycVec::zeros(&self.ring, self.dim());
        let mut tmp = vec![0i64; n];
        for i in 0..self.dim() {
            let s = src(i);
            let b = &buf[s * n..(s + 1) * n];
            if b.iter().all(|&c| c == 0) {
                continue;
            }
            tmp.iter_mut().for_each(|c| *c = 0);
            self.ring.rotate_add_buf(b, self.rot, &mut tmp);
            self.ring.reduce_into(&tmp, &mut out.coeffs[i * phi..(i + 1) * phi]);
        }
        out.den = den;
        out.normalize();
        out
    }

    /// `xᵀ·Ũ_γ` (times the scaling).
    pub fn apply_row(&self, x: &CycVec) -> CycVec {
        assert_eq!(x.ring().order() as usize, self.n);
        self.guard(x);
        let n = self.n;
        let mut buf = self.expand(x, &self.b_phase);
        self.dft(&mut buf, 1);
        for (i, &p) in self.c_phase.iter().enumerate() {
            buf[i * n..(i + 1) * n].rotate_right(p);
        }
        self.dft(&mut buf, -1);
        self.finish(&buf, |i| self.perm[i], x.den * self.den_scale)
    }

    /// `Q̂[w] = Σ_ν̂ ω^{c̃[ν̂]} ζ_k^{w·ν̂}` as an unreduced exponent buffer.
    fn qhat_buf(&self) -> Vec<i64> {
        let n = self.n;
        let mut buf = vec![0i64; self.dim() * n];
        for (i, &p) in self.c_phase.iter().enumerate() {
            buf[i * n + p] = 1;
        }
        self.dft(&mut buf, 1);
        buf
    }

    /// The table `Q̂` (without the output scaling).
    pub fn qhat(&self) -> CycVec {
        let buf = self.qhat_buf();
        let mut out = CycVec::zeros(&self.ring, self.dim());
        let phi = self.ring.phi();
        let n = self.n;
        for i in 0..self.dim() {
            self.ring
                .reduce_into(&buf[i * n..(i + 1) * n], &mut out.coeffs[i * phi..(i + 1) * phi]);
        }
        out
    }

    /// Entry `(ν, ν')` of the scaled matrix, from a precomputed `Q̂`.
    pub fn entry(&self, qhat: &CycVec, nu: usize, nu_p: usize) -> CycElem {
        let a = index_nu(self.k, nu);
        let dn = mat_vec(&self.d, index_nu(self.k, nu_p));
        let w = nu_index(self.k, [a[0] - dn[0], a[1] - dn[1], a[2] - dn[2]]);
        let z = CycElem::root_of_unity(self.n as u32, (self.b_phase[nu] + self.rot) as i64);
        (&z * &qhat.entry(w)).scale(&rat(1, self.den_scale))
    }

    /// All rows of the scaled matrix (small `k` only).
    pub fn rows(&self) -> Vec<CycVec> {
        (0..self.dim())
            .map(|i| self.apply_row(&CycVec::basis(&self.ring, self.dim(), i)))
            .collect()
    }

    /// `tr` of the scaled matrix, `Σ_ν ω^{b̃[ν]} Q̂[(ν − dν) mod k]`.
    pub fn trace(&self) -> CycElem {
        let n = self.n;
        let q = self.qhat_buf();
        let mut acc = vec![0i64; n];
        for nu in 0..self.dim() {
            let a = index_nu(self.k, nu);
            let dn = mat_vec(&self.d, a);
            let w = nu_index(self.k, [a[0] - dn[0], a[1] - dn[1], a[2] - dn[2]]);
            self.ring
                .rotate_add_buf(&q[w * n..(w + 1) * n], self.b_phase[nu] + self.rot, &mut acc);
        }
        let mut c = vec![0i64; self.ring.phi()];
        self.ring.reduce_into(&acc, &mut c);
        CycElem::from_canonical_ints(n as u32, &c, self.den_scale)
    }
}

/// Literal double sum `ũ_{ν,ν'} = Σ_ν̂ ω^{b̃[ν] + c̃[ν̂] + 2(ν − dν')·ν̂}`,
/// `O(k⁹)`; test oracle.
pub fn u_tilde_direct(gamma: &SymplecticLift, k: usize) -> Result<Vec<Vec<CycElem>>> {
    check_even(k)?;
    let n = 2 * k;
    let bt = gamma
        .b_tilde()
        .ok_or_else(|| Error::InvalidArgument("det d ≠ ±1".into()))?;
    let ct = gamma.c_tilde();
    let ring = CycRing::new(n as u32);
    let dm = dim(k);
    let mut rows = Vec::with_capacity(dm);
    for nu in 0..dm {
        let a = index_nu(k, nu);
        let mut row = Vec::with_capacity(dm);
        for nu_p in 0..dm {
            let dn = mat_vec(&gamma.d, index_nu(k, nu_p));
            let mut counts = vec![0i64; n];
            for h in 0..dm {
                let hv = index_nu(k, h);
                let lin: i64 = (0..3).map(|i| (a[i] - dn[i]) * hv[i]).sum();
                let e = quad_form(&bt, a) + quad_form(&ct, hv) + 2 * lin;
                counts[e.rem_euclid(n as i64) as usize] += 1;
            }
            let mut c = vec![0i64; ring.phi()];
            ring.reduce_into(&counts, &mut c);
            row.push(CycElem::from_canonical_ints(n as u32, &c, 1));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// The representation `ρ_k`: `U₁ = Ũ_{r₁}/k³`, `U₂ = Ũ_{r₂}/k³`,
/// `U₃ = Ũ_{r₃}/(ik³)`, extended along shortest words.
pub struct ThetaRep<'g> {
    pub k: usize,
    pub group: &'g Group,
    pub period: PeriodData,
    pub gens: [ThetaTransform; 3],
    children: Vec<Vec<usize>>,
}

impl<'g> ThetaRep<'g> {
    pub fn new(group: &'g Group, k: usize) -> Result<Self> {
        check_even(k)?;
        let period = PeriodData::build();
        let n = 2 * k;
        let k3 = dim(k) as i64;
        let mk = |j: usize, rot: usize| -> Result<ThetaTransform> {
            let gamma = period.gamma_of(&group.generators[j])?;
            Ok(ThetaTransform::new(&gamma, k)?.scaled(rot, k3))
        };
        // 1/i = ζ_{2k}^{3·2k/4}
        let gens = [mk(0, 0)?, mk(1, 0)?, mk(2, 3 * n / 4)?];
        let mut children = vec![Vec::new(); group.order()];
        for (i, e) in group.elements.iter().enumerate().skip(1) {
            let parent = group
                .index_of(&group.eval_word(&e.word[..e.word.len() - 1]))
                .expect("prefix in group");
            children[parent].push(i);
        }
        Ok(ThetaRep {
            k,
            group,
            period,
            gens,
            children,
        })
    }

    pub fn ring(&self) -> &CycRing {
        self.gens[0].ring()
    }

    pub fn dim(&self) -> usize {
        dim(self.k)
    }

    pub fn basis(&self, i: usize) -> CycVec {
        CycVec::basis(self.ring(), self.dim(), i)
    }

    /// `xᵀ·U_{j₁}···U_{j_L}`.
    pub fn apply_word(&self, x: &CycVec, word: &[u8]) -> CycVec {
        word.iter()
            .fold(x.clone(), |acc, &j| self.gens[j as usize - 1].apply_row(&acc))
    }

    /// `xᵀ·ρ_k(g)` for the element with index `g`.
    pub fn apply(&self, x: &CycVec, g: usize) -> CycVec {
        self.apply_word(x, &self.group.elements[g].word)
    }

    /// All rows of `ρ_k(g)` (small `k` only).
    pub fn matrix_rows(&self, g: usize) -> Vec<CycVec> {
        (0..self.dim())
            .into_par_iter()
            .map(|i| self.apply(&self.basis(i), g))
            .collect()
    }

    /// `Σ_{g∈G} xᵀρ_k(g)` over the breadth-first tree, one generator
    /// application per element.
    pub fn group_sum(&self, x: &CycVec) -> CycVec {
        self.subtree_sum(0, x)
    }

    fn subtree_sum(&self, node: usize, row: &CycVec) -> CycVec {
        let parts: Vec<CycVec> = self.children[node]
            .par_iter()
            .map(|&c| {
                let j = *self.group.elements[c].word.last().expect("nonempty word");
                let child = self.gens[j as usize - 1].apply_row(row);
                self.subtree_sum(c, &child)
            })
            .collect();
        let mut acc = row.clone();
        for p in &parts {
            acc.add_assign(p);
        }
        acc
    }

    /// Reynolds operator `x ↦ (1/|G|) Σ_g xᵀρ_k(g)`.
    pub fn reynolds_apply(&self, x: &CycVec) -> CycVec {
        let mut s = self.group_sum(x);
        s.den *= self.group.order() as i64;
        s.normalize();
        s
    }

    /// Row `ξ` of the Reynolds matrix.
    pub fn reynolds_row(&self, xi: [i64; 3]) -> CycVec {
        self.reynolds_apply(&self.basis(nu_index(self.k, xi)))
    }

    /// `tr ρ_k(g)` by summing diagonal entries of all rows (small `k`).
    pub fn trace_full(&self, g: usize) -> CycElem {
        (0..self.dim())
            .into_par_iter()
            .map(|i| self.apply(&self.basis(i), g).entry(i))
            .reduce(|| CycElem::zero(2 * self.k as u32), |a, b| &a + &b)
    }

    /// `Ũ_{γ}` for `γ = γ_{g⁻¹}`. The theta transformation acts on the
    /// right, so this is the matrix proportional to `ρ_k(g)`.
    pub fn u_tilde_for(&self, g: usize) -> Result<ThetaTransform> {
        let gamma = self.period.gamma_of(self.group.matrix(self.group.inv(g)))?;
        ThetaTransform::new(&gamma, self.k)
    }

    /// The scalar `c` with `ρ_k(g) = c·Ũ_{γ_{g⁻¹}}`, determined on row `ν`
    /// and verified on that entire row.
    pub fn projective_factor(&self, g: usize, nu: usize) -> Result<CycElem> {
        let ut = self.u_tilde_for(g)?;
        let e = self.basis(nu);
        let rho_row = self.apply(&e, g);
        let u_row = ut.apply_row(&e);
        proportional(&rho_row, &u_row).ok_or_else(|| {
            Error::Inconsistent(format!("ρ_k(g) not proportional to Ũ_γ on row {nu}"))
        })
    }

    /// `tr ρ_k(g) = c·tr Ũ_{γ_{g⁻¹}}`, with `c` from
    /// [`Self::projective_factor`] checked on each row in `rows`.
    pub fn character(&self, g: usize, rows: &[usize]) -> Result<CycElem> {
        let ut = self.u_tilde_for(g)?;
        let mut factor: Option<CycElem> = None;
        for &nu in rows.iter().chain(std::iter::once(&0)) {
            let c = self.projective_factor(g, nu)?;
            if let Some(f) = &factor {
                if *f != c {
                    return Err(Error::Inconsistent("projective factor differs between rows".into()));
                }
            }
            factor = Some(c);
        }
        Ok(&factor.expect("row 0 checked") * &ut.trace())
    }
}

/// `c` with `a = c·b` when it exists (and `b ≠ 0`).
pub fn proportional(a: &CycVec, b: &CycVec) -> Option<CycElem> {
    let i = (0..b.len()).find(|&i| b.raw(i).iter().any(|&c| c != 0))?;
    let ring = a.ring();
    let phi = ring.phi();
    // a_j·b_i = a_i·b_j for all j, compared on integer numerators
    let mut lhs = vec![0i64; phi];
    let mut rhs = vec![0i64; phi];
    for j in 0..a.len() {
        lhs.iter_mut().for_each(|c| *c = 0);
        rhs.iter_mut().for_each(|c| *c = 0);
        ring.mul_add(a.raw(j), b.raw(i), &mut lhs);
        ring.mul_add(a.raw(i), b.raw(j), &mut rhs);
        if lhs != rhs {
            return None;
        }
    }
    Some(&a.entry(i) * &b.entry(i).inv()?)
}

/// Rank over `Q(ζ_n)` by exact Gaussian elimination.
pub fn cyc_rank(rows: &[CycVec]) -> usize {
    let mut m: Vec<Vec<CycElem>> = rows.iter().map(|r| r.entries()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<CycElem> = m[rank].iter().map(|x| x * &inv).collect();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..ncols {
                let t = &f * &pivot_row[c];
                m[r][c] = &m[r][c] - &t;
            }
        }
        m[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Legendre symbol `(k/7)`.
pub fn legendre7(k: i64) -> i64 {
    [0, 1, 1, -1, 1, -1, -1][k.rem_euclid(7) as usize]
}

/// `i√7` as an element of `Q(ζ_28)`.
pub fn i_sqrt7() -> CycElem {
    &CycElem::imag_unit(4) * &sqrt_int(7)
}

/// The character values on the twelve classes in the order
/// g₁, −g₁, g₂, −g₂, g₃, −g₃, g₄, −g₄, g₇, −g₇, g₇⁻¹, −g₇⁻¹.
pub fn character_table_row(k: i64) -> Vec<CycElem> {
    let c = |v: i64| CycElem::from_int(1, v);
    let (g7, g7inv) = if k % 7 == 0 {
        (-i_sqrt7(), i_sqrt7())
    } else {
        (c(legendre7(k)), c(legendre7(k)))
    };
    vec![
        c(k * k * k),
        c(8),
        c(2 * k),
        c(k * k),
        c(k),
        c(2),
        c(k),
        c(3 + if (k / 2) % 2 == 0 { 1 } else { -1 }),
        g7,
        c(1),
        g7inv,
        c(1),
    ]
}

/// `G(q, r) = Σ_{n<r} e^{2πiqn²/r}` by direct summation.
pub fn gauss_sum_direct(q: i64, r: u32) -> CycElem {
    let ring = CycRing::new(r);
    let mut counts = vec![0i64; r as usize];
    for n in 0..r as i64 {
        counts[(q * n * n).rem_euclid(r as i64) as usize] += 1;
    }
    let mut c = vec![0i64; ring.phi()];
    ring.reduce_into(&counts, &mut c);
    CycElem::from_canonical_ints(r, &c, 1)
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: i64) -> i64 {
    assert!(n > 0 && n % 2 == 1);
    let mut a = a.rem_euclid(n);
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Closed form `G(q, r) = (1 + i)κ_q⁻¹√r (r/q)` for odd `q > 0`, `4 | r`,
/// `gcd(q, r) = 1`.
pub fn gauss_sum_closed(q: i64, r: u32) -> Result<CycElem> {
    if q <= 0 || q % 2 == 0 || !r.is_multiple_of(4) || num_integer::gcd(q, r as i64) != 1 {
        return Err(Error::InvalidArgument(format!("G({q}, {r}) outside 2∤q, 4|r, gcd = 1")));
    }
    let i = CycElem::imag_unit(4);
    let one_plus_i = &CycElem::one(4) + &i;
    let kappa_inv = if q % 4 == 1 { CycElem::one(4) } else { -i };
    let sign = CycElem::from_int(1, jacobi(r as i64, q));
    Ok(&(&(&one_plus_i * &kappa_inv) * &sqrt_int(r as u64)) * &sign)
}

/// `Σ_k = Σ_{x ∈ {0..k−1}⁶} ω^{K[x]}` by direct summation.
pub fn sigma_direct(kmat: &[[i64; 6]; 6], k: usize) -> Result<CycElem> {
    check_even(k)?;
    let n = 2 * k as i64;
    let mut counts = vec![0i64; n as usize];
    // K[x] = Σ K_ii x_i² + 2Σ_{i<j} K_ij x_i x_j, accumulated over the last
    // coordinate for speed
    let mut x = [0i64; 6];
    let total = (k as u64).pow(5);
    for flat in 0..total {
        let mut f = flat;
        for xi in x.iter_mut().take(5) {
            *xi = (f % k as u64) as i64;
            f /= k as u64;
        }
        let mut base = 0i64;
        for i in 0..5 {
            for j in 0..5 {
                base += x[i] * kmat[i][j] * x[j];
            }
        }
        let lin: i64 = 2 * (0..5).map(|i| kmat[i][5] * x[i]).sum::<i64>();
        for x5 in 0..k as i64 {
            let e = base + lin * x5 + kmat[5][5] * x5 * x5;
            counts[e.rem_euclid(n) as usize] += 1;
        }
    }
    let ring = CycRing::new(n as u32);
    let mut c = vec![0i64; ring.phi()];
    ring.reduce_into(&counts, &mut c);
    Ok(CycElem::from_canonical_ints(n as u32, &c, 1))
}

/// `S(a) = Σ_{y<k} ω^{a y²}`.
pub fn quadratic_sum(a: i64, k: usize) -> CycElem {
    let n = 2 * k as i64;
    let ring = CycRing::new(n as u32);
    let mut counts = vec![0i64; n as usize];
    for y in 0..k as i64 {
        counts[(a * y * y).rem_euclid(n) as usize] += 1;
    }
    let mut c = vec![0i64; ring.phi()];
    ring.reduce_into(&counts, &mut c);
    CycElem::from_canonical_ints(n as u32, &c, 1)
}

/// `S(1)³ S(−1)² S(−7)`: `Σ_k` after diagonalizing `K` to
/// `y₁² + y₂² + y₃² − y₄² − y₅² − 7y₆²`.
pub fn sigma_diagonal(k: usize) -> Result<CycElem> {
    check_even(k)?;
    let p = quadratic_sum(1, k);
    let m = quadratic_sum(-1, k);
    let s = quadratic_sum(-7, k);
    Ok(&(&(&(&p * &p) * &p) * &(&m * &m)) * &s)
}

/// `Σ_k / (i k³)`.
pub fn chi_from_sigma(sigma: &CycElem, k: usize) -> CycElem {
    let i = CycElem::imag_unit(4);
    let k3 = CycElem::from_int(1, dim(k) as i64);
    sigma * &(&i * &k3).inv().expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::relation_words;

    fn setup() -> (Group, PeriodData) {
        (Group::build(), PeriodData::build())
    }

    fn as_matrix(rows: &[CycVec]) -> Vec<Vec<CycElem>> {
        rows.iter().map(|r| r.entries()).collect()
    }

    #[test]
    fn identity_transform() {
        let t = ThetaTransform::new(&SymplecticLift::identity(), 2).unwrap();
        let rows = t.rows();
        for (i, r) in rows.iter().enumerate() {
            for j in 0..8 {
                let want = if i == j { 8 } else { 0 };
                assert_eq!(r.entry(j), CycElem::from_int(4, want));
            }
        }
        assert!(ThetaTransform::new(&SymplecticLift::identity(), 3).is_err());
    }

    #[test]
    fn dft_form_matches_double_sum() {
        let (g, pd) = setup();
        for k in [2, 4] {
            for r in &g.generators {
                let gamma = pd.gamma_of(r).unwrap();
                let t = ThetaTransform::new(&gamma, k).unwrap();
                let direct = u_tilde_direct(&gamma, k).unwrap();
                assert_eq!(as_matrix(&t.rows()), direct);
                let q = t.qhat();
                for (nu, row) in direct.iter().enumerate().step_by(5) {
                    for (nu_p, want) in row.iter().enumerate() {
                        assert_eq!(&t.entry(&q, nu, nu_p), want);
                    }
                }
            }
        }
    }

    #[test]
    fn u_tilde_proportional_to_unitary() {
        let (g, pd) = setup();
        let gamma = pd.gamma_of(&g.generators[0]).unwrap();
        let rows = ThetaTransform::new(&gamma, 2).unwrap().rows();
        for a in 0..8 {
            for b in 0..8 {
                let want = if a == b { 64 } else { 0 };
                assert_eq!(rows[b].inner(&rows[a]), CycElem::from_int(4, want));
            }
        }
    }

    #[test]
    fn generator_relations_k2() {
        let g = Group::build();
        let rep = ThetaRep::new(&g, 2).unwrap();
        for (name, w) in relation_words() {
            for i in 0..8 {
                let e = rep.basis(i);
                assert!(rep.apply_word(&e, &w).equals(&e), "{name}");
            }
        }
    }

    #[test]
    fn minus_one_kernel() {
        let g = Group::build();
        let minus = g.index_of(&crate::group::Mat3::identity().neg()).unwrap();
        let rep2 = ThetaRep::new(&g, 2).unwrap();
        assert!((0..8).all(|i| rep2.apply(&rep2.basis(i), minus).equals(&rep2.basis(i))));
        let rep4 = ThetaRep::new(&g, 4).unwrap();
        assert!(!(0..64).all(|i| rep4.apply(&rep4.basis(i), minus).equals(&rep4.basis(i))));
    }

    #[test]
    fn characters_k2_full_trace() {
        let g = Group::build();
        let rep = ThetaRep::new(&g, 2).unwrap();
        let want = character_table_row(2);
        for (c, info) in g.conjugacy_classes().iter().enumerate() {
            assert_eq!(rep.trace_full(info.rep), want[c], "{}", info.label);
            assert_eq!(rep.character(info.rep, &[1, 5]).unwrap(), want[c], "{}", info.label);
        }
    }

    #[test]
    fn rho_proportional_to_inverse_lift() {
        let g = Group::build();
        let rep = ThetaRep::new(&g, 2).unwrap();
        for a in 0..g.order() {
            let rho = rep.matrix_rows(a);
            let u = rep.u_tilde_for(a).unwrap().rows();
            let c = proportional(&rho[0], &u[0]).unwrap();
            for i in 1..8 {
                assert_eq!(proportional(&rho[i], &u[i]).unwrap(), c);
            }
        }
    }

    #[test]
    fn gauss_sums_small() {
        let i = CycElem::imag_unit(4);
        let one_i = &CycElem::one(4) + &i;
        assert_eq!(gauss_sum_direct(1, 4), one_i.scale(&rat(2, 1)));
        assert_eq!(gauss_sum_closed(1, 4).unwrap(), gauss_sum_direct(1, 4));
        assert_eq!(gauss_sum_direct(1, 8), &one_i * &sqrt_int(8));
        assert_eq!(gauss_sum_closed(7, 8).unwrap(), gauss_sum_direct(7, 8));
        assert!(gauss_sum_closed(2, 8).is_err());
        assert_eq!(jacobi(2, 7), 1);
        assert_eq!(jacobi(3, 7), -1);
    }

    #[test]
    fn sigma_k2() {
        let (g, pd) = setup();
        let kmat = pd.gamma_of(g.matrix(g.g7())).unwrap().k_matrix().unwrap();
        let s = sigma_direct(&kmat, 2).unwrap();
        assert_eq!(s, sigma_diagonal(2).unwrap());
        assert_eq!(chi_from_sigma(&s, 2), CycElem::one(4));
    }

    #[test]
    fn reynolds_k2() {
        let g = Group::build();
        let rep = ThetaRep::new(&g, 2).unwrap();
        let rows: Vec<CycVec> = (0..8).map(|i| rep.reynolds_apply(&rep.basis(i))).collect();
        assert_eq!(cyc_rank(&rows), 2);
        let r0 = &rows[0];
        assert!(rep.reynolds_apply(r0).equals(r0));
    }
}
