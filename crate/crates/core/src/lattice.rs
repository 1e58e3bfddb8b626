//! The lattice Λ, its period matrices, and the symplectic lift `g ↦ γ_g`.

use num_traits::Zero;

use crate::arith::{rat_int, rational_det, rational_solve, rational_to_i64, QuadElem, Rational};
use crate::error::{Error, Result};
use crate::group::{Mat3, Vec3};

pub type IMat3 = [[i64; 3]; 3];
pub type IMat6 = [[i64; 6]; 6];
pub type QMat3 = [[QuadElem; 3]; 3];

pub fn imat3_identity() -> IMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (i == j) as i64))
}

pub fn imat3_mul(a: &IMat3, b: &IMat3) -> IMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|l| a[i][l] * b[l][j]).sum()))
}

pub fn imat3_transpose(a: &IMat3) -> IMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

pub fn imat3_det(a: &IMat3) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// Inverse of a unimodular integer matrix (adjugate over ±1).
pub fn imat3_inv_unimodular(a: &IMat3) -> Option<IMat3> {
    let det = imat3_det(a);
    if det.abs() != 1 {
        return None;
    }
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        a[r[0]][c[0]] * a[r[1]][c[1]] - a[r[0]][c[1]] * a[r[1]][c[0]]
    };
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            s * cof(j, i) * det
        })
    }))
}

pub fn imat6_mul(a: &IMat6, b: &IMat6) -> IMat6 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..6).map(|l| a[i][l] * b[l][j]).sum()))
}

pub fn imat6_transpose(a: &IMat6) -> IMat6 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i]))
}

fn imat6_det(a: &IMat6) -> i64 {
    let m: Vec<Rational> = a.iter().flatten().map(|&x| rat_int(x)).collect();
    rational_to_i64(&rational_det(&m, 6)).expect("integer determinant")
}

/// `E = [[0, −I], [I, 0]]`.
pub fn symplectic_form() -> IMat6 {
    let mut e = [[0; 6]; 6];
    for i in 0..3 {
        e[i][i + 3] = -1;
        e[i + 3][i] = 1;
    }
    e
}

pub fn qmat_mul(a: &QMat3, b: &QMat3) -> QMat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(QuadElem::zero(), |acc, l| &acc + &(&a[i][l] * &b[l][j])))
    })
}

pub fn qmat_add(a: &QMat3, b: &QMat3) -> QMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| &a[i][j] + &b[i][j]))
}

pub fn qmat_from_int(a: &IMat3) -> QMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| QuadElem::from_ints(a[i][j], 0)))
}

pub fn qmat_det(m: &QMat3) -> QuadElem {
    let t = |a: usize, b: usize, c: usize| &(&m[0][a] * &m[1][b]) * &m[2][c];
    let pos = &(&t(0, 1, 2) + &t(1, 2, 0)) + &t(2, 0, 1);
    let neg = &(&t(0, 2, 1) + &t(1, 0, 2)) + &t(2, 1, 0);
    &pos - &neg
}

pub fn qmat_transpose(a: &QMat3) -> QMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| a[j][i].clone()))
}

/// Inverse over `Q(α)` by the adjugate.
pub fn qmat_inv(m: &QMat3) -> Option<QMat3> {
    let det_inv = qmat_det(m).inv()?;
    let cof = |i: usize, j: usize| {
        let r: Vec<usize> = (0..3).filter(|&x| x != i).collect();
        let c: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        &(&m[r[0]][c[0]] * &m[r[1]][c[1]]) - &(&m[r[0]][c[1]] * &m[r[1]][c[0]])
    };
    Some(std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let c = cof(j, i);
            let c = if (i + j) % 2 == 0 { c } else { -c };
            &c * &det_inv
        })
    }))
}

/// Membership in Λ = {z ∈ O³ : z₁ ≡ z₂ ≡ z₃ mod α, z₁ + z₂ + z₃ ≡ 0 mod ᾱ}.
pub fn lambda_contains(z: &Vec3) -> bool {
    let a = QuadElem::alpha();
    z.iter().all(|x| x.is_integral())
        && (&z[0] - &z[1]).divisible_by(&a)
        && (&z[1] - &z[2]).divisible_by(&a)
        && (&(&z[0] + &z[1]) + &z[2]).divisible_by(&QuadElem::alpha_bar())
}

/// Period data: `ω₂ = αC`, `ω₁ = −2ᾱ(Cᵀ)⁻¹`, `B = (CᵀC)⁻¹`, `τ = −ᾱ²`, `Z = τB`.
#[derive(Clone, Debug)]
pub struct PeriodData {
    pub c: IMat3,
    pub omega1: QMat3,
    pub omega2: QMat3,
    pub b: [[Rational; 3]; 3],
    pub tau: QuadElem,
    pub z: QMat3,
    /// Real 6×6 realization of Ω = (ω₁|ω₂): rows 0..3 are the rational
    /// parts, rows 3..6 the α-parts.
    omega_real: Vec<Rational>,
}

fn realize(cols: &[Vec3]) -> Vec<Rational> {
    let n = cols.len();
    let mut out = vec![Rational::zero(); 6 * n];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..3 {
            out[i * n + j] = col[i].x.clone();
            out[(i + 3) * n + j] = col[i].y.clone();
        }
    }
    out
}

fn columns(m: &QMat3) -> [Vec3; 3] {
    std::array::from_fn(|j| std::array::from_fn(|i| m[i][j].clone()))
}

impl PeriodData {
    pub fn build() -> Self {
        let c: IMat3 = [[1, 0, 0], [-1, 1, 0], [0, -1, 2]];
        let cq = qmat_from_int(&c);
        let alpha = QuadElem::alpha();
        let abar = QuadElem::alpha_bar();
        let omega2: QMat3 = std::array::from_fn(|i| std::array::from_fn(|j| &alpha * &cq[i][j]));
        let ct_inv = qmat_inv(&qmat_transpose(&cq)).expect("C invertible");
        let m2abar = &QuadElem::from_ints(-2, 0) * &abar;
        let omega1: QMat3 = std::array::from_fn(|i| std::array::from_fn(|j| &m2abar * &ct_inv[i][j]));
        let ctc = imat3_mul(&imat3_transpose(&c), &c);
        let ctc_q: Vec<Rational> = ctc.iter().flatten().map(|&x| rat_int(x)).collect();
        let id: Vec<Rational> = (0..9).map(|k| rat_int((k % 4 == 0) as i64)).collect();
        let bv = rational_solve(&ctc_q, &id, 3, 3).expect("CᵀC invertible");
        let b: [[Rational; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| bv[i * 3 + j].clone()));
        let tau = -(&abar * &abar);
        let z: QMat3 = std::array::from_fn(|i| std::array::from_fn(|j| tau.scale(&b[i][j])));
        let mut cols: Vec<Vec3> = columns(&omega1).to_vec();
        cols.extend(columns(&omega2));
        let omega_real = realize(&cols);
        PeriodData {
            c,
            omega1,
            omega2,
            b,
            tau,
            z,
            omega_real,
        }
    }

    /// The six columns of Ω.
    pub fn omega_columns(&self) -> Vec<Vec3> {
        let mut v = columns(&self.omega1).to_vec();
        v.extend(columns(&self.omega2));
        v
    }

    /// Coordinates of `z` in the Z-basis given by the columns of Ω, if
    /// `z` lies in their Z-span.
    pub fn lattice_coords(&self, z: &Vec3) -> Option<[i64; 6]> {
        let rhs = realize(std::slice::from_ref(z));
        let x = rational_solve(&self.omega_real, &rhs, 6, 1)?;
        let mut out = [0; 6];
        for (o, v) in out.iter_mut().zip(&x) {
            *o = rational_to_i64(v)?;
        }
        Some(out)
    }

    /// `ω₂⁻¹ω₁`, which must equal `Z`.
    pub fn normalized_period(&self) -> QMat3 {
        qmat_mul(&qmat_inv(&self.omega2).expect("ω₂ invertible"), &self.omega1)
    }

    pub fn z_is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.z[i][j] == self.z[j][i]))
    }

    /// Positive definiteness of `B` (and hence of `Im Z`, since `Im τ > 0`)
    /// via leading principal minors.
    pub fn b_positive_definite(&self) -> bool {
        let b: Vec<Rational> = self.b.iter().flatten().cloned().collect();
        let m1 = b[0].clone();
        let m2 = &b[0] * &b[4] - &b[1] * &b[3];
        let m3 = rational_det(&b, 3);
        let zero = Rational::zero();
        m1 > zero && m2 > zero && m3 > zero && self.tau.y > zero
    }

    /// Checks that the columns of Ω lie in Λ and that Λ's Z-basis
    /// {φ_i, αφ_i} lies in their span: the columns generate Λ.
    pub fn omega_generates_lambda(&self) -> bool {
        let cols = self.omega_columns();
        if !cols.iter().all(lambda_contains) {
            return false;
        }
        let phis = crate::group::basic_roots();
        let alpha = QuadElem::alpha();
        phis.iter().all(|p| {
            let ap: Vec3 = std::array::from_fn(|i| &alpha * &p[i]);
            self.lattice_coords(p).is_some() && self.lattice_coords(&ap).is_some()
        })
    }

    /// Λ = 2ᾱM + αQ with M = Z³ + ½(1,1,1) and Q the C₃ root lattice,
    /// verified by mutual containment of generating sets.
    pub fn sublattice_structure(&self) -> bool {
        let abar = QuadElem::alpha_bar();
        let alpha = QuadElem::alpha();
        let two_abar = &QuadElem::from_ints(2, 0) * &abar;
        let mut gens: Vec<Vec3> = Vec::new();
        for i in 0..3 {
            let mut v: Vec3 = std::array::from_fn(|_| QuadElem::zero());
            v[i] = two_abar.clone();
            gens.push(v);
        }
        gens.push(std::array::from_fn(|_| abar.clone()));
        for q in columns(&qmat_from_int(&self.c)) {
            gens.push(std::array::from_fn(|i| &alpha * &q[i]));
        }
        // every generator of 2ᾱM + αQ lies in Λ
        if !gens.iter().all(|g| self.lattice_coords(g).is_some()) {
            return false;
        }
        // (2ᾱe₁, 2ᾱe₂, ᾱ(1,1,1), αq₁, αq₂, αq₃) is a Z-basis once 2ᾱe₃ is
        // shown to lie in its span
        let real = realize(&gens);
        let n = gens.len();
        let pick = [0usize, 1, 3, 4, 5, 6];
        let mut basis = vec![Rational::zero(); 36];
        for r in 0..6 {
            for (c, &p) in pick.iter().enumerate() {
                basis[r * 6 + c] = real[r * n + p].clone();
            }
        }
        let e3 = realize(&[gens[2].clone()]);
        let Some(x) = rational_solve(&basis, &e3, 6, 1) else {
            return false;
        };
        if !x.iter().all(|v| v.is_integer()) {
            return false;
        }
        self.omega_columns().iter().all(|col| {
            let rhs = realize(std::slice::from_ref(col));
            rational_solve(&basis, &rhs, 6, 1).is_some_and(|x| x.iter().all(|v| v.is_integer()))
        })
    }

    /// Solves `(ω₁|ω₂)γᵀ = g(ω₁|ω₂)` for the integer matrix `γ_g`.
    pub fn gamma_of(&self, g: &Mat3) -> Result<SymplecticLift> {
        let img: Vec<Vec3> = self.omega_columns().iter().map(|col| g.apply(col)).collect();
        let rhs = realize(&img);
        let x = rational_solve(&self.omega_real, &rhs, 6, 6).ok_or(Error::NotInGroup)?;
        let mut gamma = [[0i64; 6]; 6];
        for r in 0..6 {
            for c in 0..6 {
                // x = γᵀ
                gamma[c][r] = rational_to_i64(&x[r * 6 + c]).ok_or(Error::NonIntegralLift(r * 6 + c))?;
            }
        }
        Ok(SymplecticLift::from_matrix(gamma))
    }
}

/// `γ = [[a, b], [c, d]] ∈ Sp(6, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticLift {
    pub a: IMat3,
    pub b: IMat3,
    pub c: IMat3,
    pub d: IMat3,
}

impl SymplecticLift {
    pub fn from_matrix(m: IMat6) -> Self {
        let block = |r0: usize, c0: usize| -> IMat3 { std::array::from_fn(|i| std::array::from_fn(|j| m[r0 + i][c0 + j])) };
        SymplecticLift {
            a: block(0, 0),
            b: block(0, 3),
            c: block(3, 0),
            d: block(3, 3),
        }
    }

    pub fn identity() -> Self {
        let z = [[0; 3]; 3];
        SymplecticLift {
            a: imat3_identity(),
            b: z,
            c: z,
            d: imat3_identity(),
        }
    }

    pub fn matrix(&self) -> IMat6 {
        let mut m = [[0; 6]; 6];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = self.a[i][j];
                m[i][j + 3] = self.b[i][j];
                m[i + 3][j] = self.c[i][j];
                m[i + 3][j + 3] = self.d[i][j];
            }
        }
        m
    }

    pub fn compose(&self, o: &SymplecticLift) -> SymplecticLift {
        SymplecticLift::from_matrix(imat6_mul(&self.matrix(), &o.matrix()))
    }

    /// `γᵀEγ = E`.
    pub fn is_symplectic(&self) -> bool {
        let g = self.matrix();
        let e = symplectic_form();
        imat6_mul(&imat6_mul(&imat6_transpose(&g), &e), &g) == e
    }

    pub fn det(&self) -> i64 {
        imat6_det(&self.matrix())
    }

    pub fn det_d(&self) -> i64 {
        imat3_det(&self.d)
    }

    /// `ã = (dᵀ)⁻¹`; requires `det d = ±1`.
    pub fn a_tilde(&self) -> Option<IMat3> {
        imat3_inv_unimodular(&imat3_transpose(&self.d))
    }

    /// `b̃ = b·ãᵀ`.
    pub fn b_tilde(&self) -> Option<IMat3> {
        Some(imat3_mul(&self.b, &imat3_transpose(&self.a_tilde()?)))
    }

    /// `c̃ = −c·dᵀ`.
    pub fn c_tilde(&self) -> IMat3 {
        let m = imat3_mul(&self.c, &imat3_transpose(&self.d));
        std::array::from_fn(|i| std::array::from_fn(|j| -m[i][j]))
    }

    /// `K = [[c̃, I − d], [I − dᵀ, b̃]]`.
    pub fn k_matrix(&self) -> Option<IMat6> {
        let bt = self.b_tilde()?;
        let ct = self.c_tilde();
        let mut k = [[0; 6]; 6];
        for i in 0..3 {
            for j in 0..3 {
                let delta = (i == j) as i64;
                k[i][j] = ct[i][j];
                k[i][j + 3] = delta - self.d[i][j];
                k[i + 3][j] = delta - self.d[j][i];
                k[i + 3][j + 3] = bt[i][j];
            }
        }
        Some(k)
    }

    /// Diagonals of `c·dᵀ` and `a·bᵀ` are all even.
    pub fn parity_even(&self) -> bool {
        let cd = imat3_mul(&self.c, &imat3_transpose(&self.d));
        let ab = imat3_mul(&self.a, &imat3_transpose(&self.b));
        (0..3).all(|i| cd[i][i] % 2 == 0 && ab[i][i] % 2 == 0)
    }

    pub fn is_block_diagonal(&self) -> bool {
        self.b == [[0; 3]; 3] && self.c == [[0; 3]; 3]
    }
}

/// Exact checks of `(aZ + b)(cZ + d)⁻¹ = Z`, `det(cZ + d) = det g` and
/// `det d = ±1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub fixes_z: bool,
    pub det_matches: bool,
    pub det_cz_d: QuadElem,
    pub det_d: i64,
}

impl ActionReport {
    pub fn ok(&self) -> bool {
        self.fixes_z && self.det_matches && self.det_d.abs() == 1
    }
}

pub fn period_action_checks(pd: &PeriodData, g: &Mat3, gamma: &SymplecticLift) -> ActionReport {
    let z = &pd.z;
    let az_b = qmat_add(&qmat_mul(&qmat_from_int(&gamma.a), z), &qmat_from_int(&gamma.b));
    let cz_d = qmat_add(&qmat_mul(&qmat_from_int(&gamma.c), z), &qmat_from_int(&gamma.d));
    // (aZ + b)(cZ + d)⁻¹ = Z  ⇔  aZ + b = Z(cZ + d)
    let fixes_z = az_b == qmat_mul(z, &cz_d);
    let det_cz_d = qmat_det(&cz_d);
    ActionReport {
        fixes_z,
        det_matches: det_cz_d == g.det(),
        det_cz_d,
        det_d: gamma.det_d(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::group::{build_roots, Group};

    #[test]
    fn lambda_membership() {
        assert!(build_roots().iter().all(lambda_contains));
        let one = [QuadElem::one(), QuadElem::zero(), QuadElem::zero()];
        assert!(!lambda_contains(&one));
        let zero: Vec3 = std::array::from_fn(|_| QuadElem::zero());
        assert!(lambda_contains(&zero));
    }

    #[test]
    fn period_data() {
        let pd = PeriodData::build();
        let want = [[4, 4, 2], [4, 8, 4], [2, 4, 3]];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(pd.b[i][j], rat(want[i][j], 4));
            }
        }
        assert_eq!(pd.tau, QuadElem::from_ints(1, 1));
        assert_eq!(pd.normalized_period(), pd.z);
        assert!(pd.z_is_symmetric());
        assert!(pd.b_positive_definite());
        assert!(pd.omega_generates_lambda());
        assert!(pd.sublattice_structure());
    }

    #[test]
    fn lift_of_g7() {
        let pd = PeriodData::build();
        let g = Group::build();
        let gamma = pd.gamma_of(g.matrix(g.g7())).unwrap();
        assert_eq!(gamma.a, [[-1, 0, 1], [-1, 1, 0], [0, 0, 1]]);
        assert_eq!(gamma.b, [[0, -2, -1], [0, -4, -2], [-1, -3, -2]]);
        assert_eq!(gamma.c, [[0, 0, 0], [-1, 1, -1], [1, -1, 2]]);
        assert_eq!(gamma.d, [[-1, -1, 0], [1, 0, 0], [-1, -1, -1]]);
        let k = gamma.k_matrix().unwrap();
        assert_eq!(k[0], [0, 0, 0, 2, 1, 0]);
        assert_eq!(imat6_transpose(&k), k);
        assert!(gamma.is_symplectic());
    }

    #[test]
    fn identity_lift() {
        let pd = PeriodData::build();
        let gamma = pd.gamma_of(&Mat3::identity()).unwrap();
        assert_eq!(gamma, SymplecticLift::identity());
        assert_eq!(gamma.k_matrix().unwrap(), [[0; 6]; 6]);
    }

    #[test]
    fn period_action_for_generators() {
        let pd = PeriodData::build();
        let g = Group::build();
        let r2 = g.generators[1];
        let rep = period_action_checks(&pd, &r2, &pd.gamma_of(&r2).unwrap());
        assert!(rep.ok());
        assert_eq!(rep.det_cz_d, QuadElem::from_ints(-1, 0));
        let g7 = *g.matrix(g.g7());
        let rep = period_action_checks(&pd, &g7, &pd.gamma_of(&g7).unwrap());
        assert_eq!(rep.det_cz_d, QuadElem::one());
    }

    #[test]
    fn parity_agrees_with_w() {
        let pd = PeriodData::build();
        let g = Group::build();
        for a in 0..g.order() {
            let gamma = pd.gamma_of(g.matrix(a)).unwrap();
            assert_eq!(gamma.parity_even(), g.is_in_w(a));
            if g.is_in_w(a) {
                assert!(gamma.is_block_diagonal());
                assert_eq!(gamma.a_tilde().unwrap(), gamma.a);
            }
        }
    }

    #[test]
    fn unimodular_inverse() {
        let m = [[2, 1, 0], [1, 1, 0], [0, 0, -1]];
        let inv = imat3_inv_unimodular(&m).unwrap();
        assert_eq!(imat3_mul(&m, &inv), imat3_identity());
    }
}
