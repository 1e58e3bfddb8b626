//! Lattice-point counts for the fundamental domain `F` of the affine group
//! acting on the real torus, and for the divisor polytopes of the toric
//! threefold `X′` with fan rays `v₀..v₃`.
//!
//! Points of the shifted lattice `M = Z³ ∪ (Z³ + ½(1,1,1))` are handled in
//! doubled coordinates `y = 2x`, where membership is "all coordinates of the
//! same parity". Barycentric coordinates become integer affine forms in
//! `(y, k)` so the inner loops run on `i64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{rat, rat_int, rational_det, rational_solve, Rational};
use crate::error::{Error, Result};
use crate::hilbert::{fit_quasipolynomial, poly_mul, PowerSeries, QuasiPolynomial};

pub type RVec = [Rational; 3];

fn rv(x: [(i64, i64); 3]) -> RVec {
    x.map(|(n, d)| rat(n, d))
}

/// Named vertices of the alcove and of `F`.
pub mod vertices {
    use super::*;

    pub fn o() -> RVec {
        rv([(0, 1), (0, 1), (0, 1)])
    }
    pub fn a() -> RVec {
        rv([(1, 2), (0, 1), (0, 1)])
    }
    pub fn e() -> RVec {
        rv([(1, 2), (1, 2), (0, 1)])
    }
    pub fn n() -> RVec {
        rv([(1, 2), (1, 2), (1, 2)])
    }
    /// Midpoint of `AE`.
    pub fn k() -> RVec {
        rv([(1, 2), (1, 4), (0, 1)])
    }
    /// Midpoint of `ON`.
    pub fn l() -> RVec {
        rv([(1, 4), (1, 4), (1, 4)])
    }
}

/// Lattices used for counting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftedLattice {
    /// `Z³ ∪ (Z³ + ½(1,1,1))`.
    Weight,
    /// `{m ∈ Z³ : m_j ≡ 0 mod 2, −m₁−m₂+m₃ ≡ 0 mod 4}` with `j = even_coord`
    /// (0-based).
    Toric { even_coord: usize },
}

impl ShiftedLattice {
    /// The toric character lattice dual to `N`.
    pub const TORIC: ShiftedLattice = ShiftedLattice::Toric { even_coord: 1 };
    /// The congruence as printed, with the parity condition on `m₃`.
    pub const TORIC_PRINTED: ShiftedLattice = ShiftedLattice::Toric { even_coord: 2 };

    pub fn contains(&self, x: &RVec) -> bool {
        match self {
            ShiftedLattice::Weight => {
                let y: Vec<Rational> = x.iter().map(|c| c * rat_int(2)).collect();
                y.iter().all(|c| c.is_integer()) && {
                    let p: Vec<bool> = y.iter().map(|c| c.to_integer().is_odd()).collect();
                    p[0] == p[1] && p[1] == p[2]
                }
            }
            ShiftedLattice::Toric { even_coord } => {
                if !x.iter().all(|c| c.is_integer()) {
                    return false;
                }
                let m: Vec<BigInt> = x.iter().map(|c| c.to_integer()).collect();
                m[*even_coord].is_even() && (-&m[0] - &m[1] + &m[2]).mod_floor(&BigInt::from(4)).is_zero()
            }
        }
    }

    fn contains_int(&self, m: [i64; 3]) -> bool {
        match self {
            ShiftedLattice::Weight => true,
            ShiftedLattice::Toric { even_coord } => {
                m[*even_coord].rem_euclid(2) == 0 && (-m[0] - m[1] + m[2]).rem_euclid(4) == 0
            }
        }
    }
}

/// Integer affine form `(a·y + b·k) / D` with `D > 0` absorbed, so only the
/// sign and vanishing matter.
#[derive(Clone, Debug)]
struct Form {
    a: [i64; 3],
    b: i64,
}

impl Form {
    fn from_rational(a: &[Rational], b: &Rational) -> Form {
        let l = a.iter().chain(std::iter::once(b)).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let s = |c: &Rational| (c * Rational::from_integer(l.clone())).to_integer().to_i64().expect("small form");
        Form {
            a: [s(&a[0]), s(&a[1]), s(&a[2])],
            b: s(b),
        }
    }

    #[inline]
    fn eval(&self, y: [i64; 3], k: i64) -> i64 {
        self.a[0] * y[0] + self.a[1] * y[1] + self.a[2] * y[2] + self.b * k
    }
}

/// Simplex with rational vertices, either closed or relatively open.
#[derive(Clone, Debug)]
pub struct RationalSimplex {
    pub vertices: Vec<RVec>,
    pub open: bool,
    bary: Vec<Form>,
    hull: Vec<Form>,
}

impl RationalSimplex {
    pub fn new(vertices: Vec<RVec>, open: bool) -> Result<Self> {
        let d = vertices.len().checked_sub(1).ok_or_else(|| Error::InvalidArgument("empty simplex".into()))?;
        if d > 3 {
            return Err(Error::InvalidArgument("more than four vertices".into()));
        }
        // Q = [p₁−p₀ … p_d−p₀ | completing unit vectors], solve for the
        // coordinates of x − k·p₀ in that basis.
        let p0 = vertices[0].clone();
        let mut cols: Vec<RVec> = vertices[1..]
            .iter()
            .map(|p| std::array::from_fn(|j| &p[j] - &p0[j]))
            .collect();
        if rank_of(&cols) != d {
            return Err(Error::InvalidArgument("vertices are affinely dependent".into()));
        }
        for e in 0..3 {
            if cols.len() == 3 {
                break;
            }
            let mut unit: RVec = std::array::from_fn(|_| Rational::zero());
            unit[e] = Rational::one();
            cols.push(unit);
            if rank_of(&cols) != cols.len() {
                cols.pop();
            }
        }
        let q: Vec<Rational> = (0..3).flat_map(|r| cols.iter().map(move |c| c[r].clone())).collect();
        let id: Vec<Rational> = (0..9).map(|i| if i % 4 == 0 { Rational::one() } else { Rational::zero() }).collect();
        let qinv = rational_solve(&q, &id, 3, 3).expect("completed basis is invertible");
        let half = rat(1, 2);
        // coordinate r: Σ_j qinv[r][j] (y_j/2 − k p0_j)
        let row = |r: usize| -> (Vec<Rational>, Rational) {
            let a: Vec<Rational> = (0..3).map(|j| &qinv[r * 3 + j] * &half).collect();
            let b = -(0..3).fold(Rational::zero(), |acc, j| acc + &qinv[r * 3 + j] * &p0[j]);
            (a, b)
        };
        let mut bary = Vec::with_capacity(d + 1);
        let mut sa = vec![Rational::zero(); 3];
        let mut sb = Rational::zero();
        for r in 0..d {
            let (a, b) = row(r);
            for j in 0..3 {
                sa[j] += &a[j];
            }
            sb += &b;
            bary.push(Form::from_rational(&a, &b));
        }
        let a0: Vec<Rational> = sa.iter().map(|c| -c).collect();
        bary.insert(0, Form::from_rational(&a0, &(Rational::one() - sb)));
        let hull = (d..3)
            .map(|r| {
                let (a, b) = row(r);
                Form::from_rational(&a, &b)
            })
            .collect();
        Ok(RationalSimplex { vertices, open, bary, hull })
    }

    pub fn closed(vertices: Vec<RVec>) -> Self {
        Self::new(vertices, false).expect("valid simplex")
    }

    pub fn relint(vertices: Vec<RVec>) -> Self {
        Self::new(vertices, true).expect("valid simplex")
    }

    /// Volume of a full-dimensional simplex in units of the covolume of
    /// `lat`.
    pub fn lattice_volume(&self, lat: ShiftedLattice) -> Rational {
        let p0 = &self.vertices[0];
        let m: Vec<Rational> = self.vertices[1..].iter().flat_map(|p| (0..3).map(move |j| &p[j] - &p0[j])).collect();
        let covol = match lat {
            ShiftedLattice::Weight => rat(1, 2),
            ShiftedLattice::Toric { .. } => rat_int(8),
        };
        rational_det(&m, 3).abs() / rat_int(6) / covol
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Membership of the doubled-coordinate point `y` in `k·s`.
    #[inline]
    fn contains_doubled(&self, y: [i64; 3], k: i64) -> bool {
        self.hull.iter().all(|f| f.eval(y, k) == 0)
            && self.bary.iter().all(|f| {
                let v = f.eval(y, k);
                if self.open {
                    v > 0
                } else {
                    v >= 0
                }
            })
    }

    /// Exact membership of `x` in `k·s`.
    pub fn contains(&self, x: &RVec, k: i64) -> bool {
        let y: Vec<Rational> = x.iter().map(|c| c * rat_int(2)).collect();
        if !y.iter().all(|c| c.is_integer()) {
            // forms have integer coefficients in y only for half-integral x
            let s = self.scaled_copy(x);
            return s.is_some_and(|(yy, kk, ss)| ss.contains_doubled(yy, kk * k));
        }
        let y = std::array::from_fn(|j| y[j].to_integer().to_i64().expect("small"));
        self.contains_doubled(y, k)
    }

    // Rescales by the denominator of x so the doubled coordinates become
    // integral: x ∈ k·s ⇔ D·x ∈ (D·k)·s.
    fn scaled_copy(&self, x: &RVec) -> Option<([i64; 3], i64, &Self)> {
        let d = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let dd = Rational::from_integer(d.clone());
        let y: Vec<i64> = x.iter().map(|c| (c * &dd * rat_int(2)).to_integer().to_i64()).collect::<Option<_>>()?;
        Some(([y[0], y[1], y[2]], d.to_i64()?, self))
    }

    /// Bounding box of `k·s` in doubled coordinates.
    fn box_doubled(&self, k: i64) -> [(i64, i64); 3] {
        std::array::from_fn(|j| {
            let vals: Vec<Rational> = self.vertices.iter().map(|p| &p[j] * rat_int(2 * k)).collect();
            let lo = vals.iter().min().expect("nonempty").floor().to_integer().to_i64().expect("small");
            let hi = vals.iter().max().expect("nonempty").ceil().to_integer().to_i64().expect("small");
            (lo, hi)
        })
    }
}

fn rank_of(cols: &[RVec]) -> usize {
    let n = cols.len();
    if n == 0 {
        return 0;
    }
    // Gram determinant test on all column subsets is overkill; eliminate.
    let mut m: Vec<Vec<Rational>> = cols.iter().map(|c| c.to_vec()).collect();
    let mut rank = 0;
    for col in 0..3 {
        if let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) {
            m.swap(rank, p);
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let f = &m[r][col] / &m[rank][col];
                    for j in 0..3 {
                        let t = &f * &m[rank][j];
                        m[r][j] -= t;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Number of `lat`-points in `k·s`.
pub fn count_simplex(s: &RationalSimplex, k: i64, lat: ShiftedLattice) -> Result<u64> {
    if k < 0 {
        return Err(Error::InvalidArgument("k must be non-negative".into()));
    }
    let bx = s.box_doubled(k);
    let mut n = 0u64;
    match lat {
        ShiftedLattice::Weight => {
            // the two cosets: y ≡ (0,0,0) and y ≡ (1,1,1) mod 2
            for c in 0..2i64 {
                let start = |j: usize| bx[j].0 + (bx[j].0 - c).rem_euclid(2);
                let mut y0 = start(0);
                while y0 <= bx[0].1 {
                    let mut y1 = start(1);
                    while y1 <= bx[1].1 {
                        let mut y2 = start(2);
                        while y2 <= bx[2].1 {
                            if s.contains_doubled([y0, y1, y2], k) {
                                n += 1;
                            }
                            y2 += 2;
                        }
                        y1 += 2;
                    }
                    y0 += 2;
                }
            }
        }
        ShiftedLattice::Toric { .. } => {
            let half = |(lo, hi): (i64, i64)| (lo.div_euclid(2), hi.div_euclid(2) + 1);
            let b: [(i64, i64); 3] = std::array::from_fn(|j| half(bx[j]));
            for m0 in b[0].0..=b[0].1 {
                for m1 in b[1].0..=b[1].1 {
                    for m2 in b[2].0..=b[2].1 {
                        let m = [m0, m1, m2];
                        if lat.contains_int(m) && s.contains_doubled([2 * m0, 2 * m1, 2 * m2], k) {
                            n += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(n)
}

/// One term of the signed decomposition of `F`.
#[derive(Clone, Debug)]
pub struct FPiece {
    pub name: &'static str,
    pub sign: i64,
    pub simplex: RationalSimplex,
}

/// `F` as the signed union: open `OAKN`, closed triangles `OAK`, `OKL`,
/// `OAL` (with their shared closed edges and `O` corrected by
/// inclusion-exclusion), open triangles `ALN`, `ANK` and the open edge `AN`.
pub fn f_decomposition() -> Vec<FPiece> {
    use vertices::*;
    let p = |name, sign, vs: Vec<RVec>, open| FPiece {
        name,
        sign,
        simplex: RationalSimplex::new(vs, open).expect("valid simplex"),
    };
    vec![
        p("OAKN", 1, vec![o(), a(), k(), n()], true),
        p("[OAK]", 1, vec![o(), a(), k()], false),
        p("[OKL]", 1, vec![o(), k(), l()], false),
        p("[OAL]", 1, vec![o(), a(), l()], false),
        p("ALN", 1, vec![a(), l(), n()], true),
        p("ANK", 1, vec![a(), n(), k()], true),
        p("[OA]", -1, vec![o(), a()], false),
        p("[OK]", -1, vec![o(), k()], false),
        p("[OL]", -1, vec![o(), l()], false),
        p("AN", 1, vec![a(), n()], true),
        p("[O]", 1, vec![o()], false),
    ]
}

/// Number of `M`-points in `k·F`.
pub fn h_f(k: i64) -> Result<i64> {
    f_decomposition()
        .iter()
        .map(|p| Ok(p.sign * count_simplex(&p.simplex, k, ShiftedLattice::Weight)? as i64))
        .sum()
}

pub fn h_f_values(max: i64) -> Result<Vec<i64>> {
    (0..=max).into_par_iter().map(h_f).collect()
}

pub const H_F_PRINTED: [i64; 13] = [1, 1, 3, 4, 8, 10, 16, 20, 29, 35, 47, 56, 72];

/// `E(k) + d₀(k)k + d₁(k)` in closed form.
pub fn h_f_closed_form(k: i64) -> Rational {
    let x = rat_int(k);
    let e = rat(1, 48) * &x * &x * &x + rat(3, 16) * &x * &x + rat(2, 3) * &x + rat_int(1);
    let (d0, d1) = closed_form_corrections(k);
    e + d0 * x + d1
}

/// `(d₀(k), d₁(k))`.
pub fn closed_form_corrections(k: i64) -> (Rational, Rational) {
    match k.rem_euclid(4) {
        0 => (rat(0, 1), rat(0, 1)),
        2 => (rat(0, 1), rat(-1, 4)),
        _ => (rat(-3, 16), rat(-11, 16)),
    }
}

/// The fitted quasi-polynomial against `E`, `d₀`, `d₁` coefficient-wise.
pub fn h_f_fit(max: i64) -> Result<(QuasiPolynomial, bool)> {
    let vals = h_f_values(max)?;
    let q = fit_quasipolynomial(&vals, 3, 4, Some(rat(1, 48)))?;
    let ok = (0..4).all(|r| {
        let (d0, d1) = closed_form_corrections(r as i64);
        q.coeffs[r] == vec![rat_int(1) + d1, rat(2, 3) + d0, rat(3, 16), rat(1, 48)]
    });
    Ok((q, ok))
}

/// `(1−t+t²)/((1−t)²(1−t²)(1−t⁴))` to the given order.
pub fn h_f_series(order: usize) -> Result<PowerSeries> {
    let den = poly_mul(&poly_mul(&[1, -2, 1], &[1, 0, -1]), &[1, 0, 0, 0, -1]);
    PowerSeries::rational(&[1, -1, 1], &den, order)
}

/// Signed multiplicities and `R`-orbits of the `M`-points of the closed
/// alcove `k·OAEN`, where `R` is the half-turn about the axis `KL`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitAudit {
    pub k: i64,
    pub alcove_points: usize,
    pub orbits: usize,
    /// Every point has signed multiplicity 0 or 1.
    pub multiplicity_ok: bool,
    /// `R` maps the alcove points to themselves.
    pub r_stable: bool,
    /// Each orbit contains exactly one point of multiplicity 1.
    pub transversal: bool,
    pub h_f: i64,
}

/// Half-turn about the line through `kK` and `kL`, on doubled coordinates.
pub fn half_turn(y: [i64; 3], k: i64) -> [i64; 3] {
    // in doubled coordinates 2kK = (k, k/2, 0), axis direction d = (−1, 0, 1);
    // R(y) = 2P(y) − y with P(y) = c + ((y−c)·d / 2) d. Work at scale 2 to
    // stay integral.
    let c2 = [2 * k, k, 0];
    let y2 = [2 * y[0], 2 * y[1], 2 * y[2]];
    let t = -(y2[0] - c2[0]) + (y2[2] - c2[2]); // (y−c)·d at scale 2
    let p2 = [c2[0] - t / 2, c2[1], c2[2] + t / 2];
    debug_assert!(t % 2 == 0);
    [(2 * p2[0] - y2[0]) / 2, (2 * p2[1] - y2[1]) / 2, (2 * p2[2] - y2[2]) / 2]
}

pub fn orbit_audit(k: i64) -> Result<OrbitAudit> {
    use vertices as vx;
    if k < 0 {
        return Err(Error::InvalidArgument("k must be non-negative".into()));
    }
    let alcove = RationalSimplex::closed(vec![vx::o(), vx::a(), vx::e(), vx::n()]);
    let pieces = f_decomposition();
    let bx = alcove.box_doubled(k);
    let mut pts = Vec::new();
    for y0 in bx[0].0..=bx[0].1 {
        for y1 in bx[1].0..=bx[1].1 {
            for y2 in bx[2].0..=bx[2].1 {
                let y = [y0, y1, y2];
                let par = y0.rem_euclid(2);
                if y1.rem_euclid(2) == par && y2.rem_euclid(2) == par && alcove.contains_doubled(y, k) {
                    pts.push(y);
                }
            }
        }
    }
    let set: std::collections::HashSet<[i64; 3]> = pts.iter().copied().collect();
    let mult = |y: [i64; 3]| -> i64 {
        pieces
            .iter()
            .filter(|p| p.simplex.contains_doubled(y, k))
            .map(|p| p.sign)
            .sum()
    };
    let mut multiplicity_ok = true;
    let mut r_stable = true;
    let mut transversal = true;
    let mut orbits = 0;
    let mut total = 0;
    for &y in &pts {
        let m = mult(y);
        multiplicity_ok &= m == 0 || m == 1;
        total += m;
        let ry = half_turn(y, k);
        r_stable &= set.contains(&ry);
        if ry == y {
            orbits += 2;
            transversal &= m == 1;
        } else {
            orbits += 1;
            transversal &= m + mult(ry) == 1;
        }
    }
    Ok(OrbitAudit {
        k,
        alcove_points: pts.len(),
        orbits: orbits / 2,
        multiplicity_ok,
        r_stable,
        transversal,
        h_f: total,
    })
}

/// Fits the closed counts of `OAKN` for `k ≤ max` and checks the open
/// counts against `open(k) = −closed(−k)` for `1 ≤ k ≤ max` (the open
/// quasi-polynomial is only valid from `k = 1`).
pub fn reciprocity_oakn(max: i64) -> Result<bool> {
    use vertices as vx;
    let oakn = || vec![vx::o(), vx::a(), vx::k(), vx::n()];
    let closed = RationalSimplex::closed(oakn());
    let open = RationalSimplex::relint(oakn());
    let cv: Vec<i64> = (0..=max)
        .into_par_iter()
        .map(|k| count_simplex(&closed, k, ShiftedLattice::Weight).map(|c| c as i64))
        .collect::<Result<_>>()?;
    let qc = fit_min_period(&cv, 3, &closed.lattice_volume(ShiftedLattice::Weight))?;
    (1..=max).into_par_iter().try_fold(
        || true,
        |acc, k| Ok(acc && rat_int(count_simplex(&open, k, ShiftedLattice::Weight)? as i64) == -qc.eval(-k)),
    )
    .try_reduce(|| true, |a, b| Ok(a && b))
}

/// Fit with the smallest period in 1, 2, 4, 8 that reproduces every value,
/// leading coefficient pinned.
pub fn fit_min_period(values: &[i64], degree: usize, leading: &Rational) -> Result<QuasiPolynomial> {
    [1, 2, 4, 8]
        .iter()
        .find_map(|&p| fit_quasipolynomial(values, degree, p, Some(leading.clone())).ok())
        .ok_or_else(|| Error::Inconsistent("no quasi-polynomial of period ≤ 8 fits".into()))
}

// ---- toric side ----

/// The fan of `X′`: rays in `Q³`, the overlattice `N` and its character
/// lattice.
#[derive(Clone, Debug)]
pub struct ToricFan {
    pub rays: [RVec; 4],
    pub n_basis: [RVec; 3],
    pub lattice: ShiftedLattice,
}

impl ToricFan {
    pub fn x_prime(lattice: ShiftedLattice) -> Self {
        ToricFan {
            rays: [
                rv([(1, 1), (0, 1), (0, 1)]),
                rv([(0, 1), (1, 2), (0, 1)]),
                rv([(-1, 2), (-1, 2), (-1, 2)]),
                rv([(0, 1), (0, 1), (1, 1)]),
            ],
            n_basis: [
                rv([(1, 1), (0, 1), (0, 1)]),
                rv([(0, 1), (1, 2), (0, 1)]),
                rv([(-1, 4), (-1, 4), (1, 4)]),
            ],
            lattice,
        }
    }

    /// Coordinates of `x` in the `N` basis.
    fn n_coords(&self, x: &RVec) -> Vec<Rational> {
        let a: Vec<Rational> = (0..3).flat_map(|r| self.n_basis.iter().map(move |b| b[r].clone())).collect();
        rational_solve(&a, x, 3, 1).expect("N basis is invertible")
    }

    /// Positive relation `Σ cᵢvᵢ = 0`, scaled to coprime integers, if the
    /// rays positively span `R³`.
    pub fn positive_relation(&self) -> Option<[i64; 4]> {
        // c₃ = 1 and solve for c₀..c₂
        let a: Vec<Rational> = (0..3).flat_map(|r| (0..3).map(move |j| (r, j))).map(|(r, j)| self.rays[j][r].clone()).collect();
        let b: Vec<Rational> = (0..3).map(|r| -self.rays[3][r].clone()).collect();
        let c = rational_solve(&a, &b, 3, 1)?;
        let mut all: Vec<Rational> = c;
        all.push(Rational::one());
        if !all.iter().all(|x| x.is_positive()) {
            return None;
        }
        let l = all.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = all.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let v: Vec<i64> = ints.iter().map(|x| (x / &g).to_i64().expect("small")).collect();
        Some([v[0], v[1], v[2], v[3]])
    }

    pub fn rays_independent_triples(&self) -> bool {
        (0..4).all(|skip| {
            let cols: Vec<RVec> = (0..4).filter(|&j| j != skip).map(|j| self.rays[j].clone()).collect();
            rank_of(&cols) == 3
        })
    }

    /// Every ray has integral, coprime `N`-coordinates.
    pub fn rays_primitive(&self) -> bool {
        self.rays.iter().all(|v| {
            let c = self.n_coords(v);
            c.iter().all(|x| x.is_integer()) && c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.to_integer())).is_one()
        })
    }

    /// Index of the sublattice spanned by the rays in `N`.
    pub fn ray_index(&self) -> Result<i64> {
        let coords: Vec<Vec<Rational>> = self.rays.iter().map(|v| self.n_coords(v)).collect();
        if !coords.iter().flatten().all(|x| x.is_integer()) {
            return Err(Error::Inconsistent("ray not in N".into()));
        }
        let mut g = BigInt::zero();
        for skip in 0..4 {
            let m: Vec<Rational> = (0..4).filter(|&j| j != skip).flat_map(|j| coords[j].clone()).collect();
            g = g.gcd(&rational_det(&m, 3).to_integer());
        }
        g.to_i64().ok_or_else(|| Error::Inconsistent("index overflow".into()))
    }

    /// Whether `lattice` is the dual of `N`: integral pairing on a generating
    /// set and matching index in `Z³`.
    pub fn lattice_is_dual(&self) -> bool {
        let gens = self.lattice_generators();
        let pairs = gens.iter().all(|m| self.n_basis.iter().all(|n| dot(m, n).is_integer()));
        let idx = rational_det(&gens.iter().flat_map(|g| g.iter().cloned()).collect::<Vec<_>>(), 3).abs();
        let n_det = rational_det(&self.n_basis.iter().flat_map(|g| g.iter().cloned()).collect::<Vec<_>>(), 3).abs();
        pairs && idx * n_det == Rational::one()
    }

    /// A basis of the congruence lattice, found by Hermite reduction of the
    /// lattice points in a small box.
    fn lattice_generators(&self) -> [RVec; 3] {
        let mut pts: Vec<[i64; 3]> = Vec::new();
        for a in -4..=4 {
            for b in -4..=4 {
                for c in -4..=4 {
                    if (a, b, c) != (0, 0, 0) && self.lattice.contains_int([a, b, c]) {
                        pts.push([a, b, c]);
                    }
                }
            }
        }
        let h = hermite(&pts);
        h.map(|r| r.map(rat_int))
    }

    /// Smallest `c ≥ 1` with `c·Dᵢ` Cartier: on every maximal cone
    /// containing `vᵢ` some lattice `m` has `⟨m, v_j⟩ = −c·δᵢⱼ`.
    pub fn cartier_index(&self, i: usize) -> Option<i64> {
        let cones: Vec<[usize; 3]> = (0..4)
            .map(|skip| {
                let v: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
                [v[0], v[1], v[2]]
            })
            .filter(|c| c.contains(&i))
            .collect();
        (1..=64).find(|&c| {
            cones.iter().all(|cone| {
                let a: Vec<Rational> = cone.iter().flat_map(|&j| self.rays[j].iter().cloned()).collect();
                let b: Vec<Rational> = cone.iter().map(|&j| if j == i { rat_int(-c) } else { Rational::zero() }).collect();
                rational_solve(&a, &b, 3, 1).is_some_and(|m| self.lattice.contains(&[m[0].clone(), m[1].clone(), m[2].clone()]))
            })
        })
    }

    /// Number of lattice points `m` with `⟨m, v_j⟩ ≥ −k·δᵢⱼ`.
    pub fn h0(&self, i: usize, k: i64) -> Result<u64> {
        if i > 3 || k < 0 {
            return Err(Error::InvalidArgument("need i ∈ 0..4 and k ≥ 0".into()));
        }
        let c = self
            .positive_relation()
            .ok_or_else(|| Error::Inconsistent("fan is not complete".into()))?;
        // Σ c_j⟨m,v_j⟩ = 0 gives ⟨m,v_j⟩ ≤ k·cᵢ/c_j; each coordinate of m is
        // bounded through the rays 0, 1, 3 which form a basis of Q³.
        let up = |j: usize| k * c[i] / c[j] + 1;
        let lo = |j: usize| if j == i { -k } else { 0 };
        let basis = [0usize, 1, 3];
        let a: Vec<Rational> = basis.iter().flat_map(|&j| self.rays[j].iter().cloned()).collect();
        let id: Vec<Rational> = (0..9).map(|x| if x % 4 == 0 { Rational::one() } else { Rational::zero() }).collect();
        let inv = rational_solve(&a, &id, 3, 3).ok_or_else(|| Error::Inconsistent("rays 0,1,3 dependent".into()))?;
        // m = inv · ℓ with ℓ_j ∈ [lo, up]; bound |m_r| by interval arithmetic
        let bounds: Vec<(i64, i64)> = (0..3)
            .map(|r| {
                let (mut lo_r, mut hi_r) = (Rational::zero(), Rational::zero());
                for (t, &j) in basis.iter().enumerate() {
                    let w = &inv[r * 3 + t];
                    let (x, y) = (w * rat_int(lo(j)), w * rat_int(up(j)));
                    lo_r += x.clone().min(y.clone());
                    hi_r += x.max(y);
                }
                (
                    lo_r.floor().to_integer().to_i64().expect("small"),
                    hi_r.ceil().to_integer().to_i64().expect("small"),
                )
            })
            .collect();
        // doubled pairings are integral for integral m
        let rays2: Vec<[i64; 3]> = self
            .rays
            .iter()
            .map(|v| std::array::from_fn(|j| (&v[j] * rat_int(2)).to_integer().to_i64().expect("half-integral ray")))
            .collect();
        let mut n = 0;
        for m0 in bounds[0].0..=bounds[0].1 {
            for m1 in bounds[1].0..=bounds[1].1 {
                for m2 in bounds[2].0..=bounds[2].1 {
                    let m = [m0, m1, m2];
                    if !self.lattice.contains_int(m) {
                        continue;
                    }
                    let ok = rays2.iter().enumerate().all(|(j, v)| {
                        let p = v[0] * m0 + v[1] * m1 + v[2] * m2;
                        p >= if j == i { -2 * k } else { 0 }
                    });
                    if ok {
                        n += 1;
                    }
                }
            }
        }
        Ok(n)
    }
}

fn dot(a: &RVec, b: &RVec) -> Rational {
    (0..3).fold(Rational::zero(), |acc, j| acc + &a[j] * &b[j])
}

/// Row-style Hermite basis of the integer span of `pts` (full rank assumed).
fn hermite(pts: &[[i64; 3]]) -> [[i64; 3]; 3] {
    let mut rows: Vec<[i64; 3]> = pts.to_vec();
    let mut out = [[0i64; 3]; 3];
    for col in 0..3 {
        // Euclid on column `col` among remaining rows
        loop {
            rows.retain(|r| r.iter().any(|&x| x != 0));
            let nz: Vec<usize> = (0..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&r| rows[r][col].abs()).expect("nonempty");
            let piv = rows[p];
            for &r in &nz {
                if r != p {
                    let q = rows[r][col].div_euclid(piv[col]);
                    for j in 0..3 {
                        rows[r][j] -= q * piv[j];
                    }
                }
            }
        }
        if let Some(p) = rows.iter().position(|r| r[col] != 0) {
            out[col] = rows.remove(p);
        }
    }
    out
}

pub fn toric_h0(i: usize, k: i64) -> Result<u64> {
    ToricFan::x_prime(ShiftedLattice::TORIC).h0(i, k)
}

/// Data showing the toric model is a weak weighted projective space: a
/// complete fan with a positive relation whose rays span a proper
/// sublattice of `N`.
#[derive(Clone, Debug)]
pub struct WwpsReport {
    pub index: i64,
    pub cartier: [Option<i64>; 4],
    pub complete: bool,
    pub relation: Option<[i64; 4]>,
    pub primitive: bool,
    pub dual: bool,
}

pub fn wwps_check() -> Result<WwpsReport> {
    let fan = ToricFan::x_prime(ShiftedLattice::TORIC);
    let relation = fan.positive_relation();
    Ok(WwpsReport {
        index: fan.ray_index()?,
        cartier: std::array::from_fn(|i| fan.cartier_index(i)),
        complete: relation.is_some() && fan.rays_independent_triples(),
        relation,
        primitive: fan.rays_primitive(),
        dual: fan.lattice_is_dual(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use vertices::*;

    #[test]
    fn small_simplices() {
        let oa = RationalSimplex::closed(vec![o(), a()]);
        assert_eq!(count_simplex(&oa, 2, ShiftedLattice::Weight).unwrap(), 2);
        let pt = RationalSimplex::closed(vec![o()]);
        for k in 0..5 {
            assert_eq!(count_simplex(&pt, k, ShiftedLattice::Weight).unwrap(), 1);
        }
        let ank = RationalSimplex::relint(vec![a(), n(), k()]);
        assert_eq!(count_simplex(&ank, 1, ShiftedLattice::Weight).unwrap(), 0);
        assert!(oa.contains(&rv([(1, 4), (0, 1), (0, 1)]), 1));
        assert!(!oa.contains(&rv([(1, 4), (1, 8), (0, 1)]), 1));
    }

    #[test]
    fn h_f_matches_table_and_series() {
        let v = h_f_values(30).unwrap();
        assert_eq!(&v[..13], &H_F_PRINTED);
        let s = h_f_series(31).unwrap();
        for (k, &h) in v.iter().enumerate() {
            assert_eq!(s.coeff_int(k), Some(h));
            assert_eq!(h_f_closed_form(k as i64), rat_int(h));
        }
        assert!(h_f_fit(30).unwrap().1);
    }

    #[test]
    fn audit_and_reciprocity() {
        for k in 0..=6 {
            let a = orbit_audit(k).unwrap();
            assert!(a.multiplicity_ok && a.r_stable && a.transversal, "{a:?}");
            assert_eq!(a.orbits as i64, h_f(k).unwrap());
        }
        assert!(reciprocity_oakn(30).unwrap());
    }

    #[test]
    fn toric() {
        let w = wwps_check().unwrap();
        assert_eq!(w.index, 2);
        assert_eq!(w.cartier, [Some(4), Some(2), Some(2), Some(4)]);
        assert!(w.complete && w.primitive && w.dual);
        assert_eq!(w.relation, Some([1, 2, 2, 1]));
        for k in 0..=20 {
            let h = h_f(k).unwrap() as u64;
            assert_eq!(toric_h0(0, k).unwrap(), h, "k={k}");
            assert_eq!(toric_h0(3, k).unwrap(), h, "k={k}");
        }
        for i in 0..4 {
            assert_eq!(toric_h0(i, 0).unwrap(), 1);
        }
        assert!(!ToricFan::x_prime(ShiftedLattice::TORIC_PRINTED).lattice_is_dual());
    }
}
