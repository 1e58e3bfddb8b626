//! Fixed values computed by hand or by independent means.

use theta_crystal::arith::{rat, CycElem};
use theta_crystal::ehrhart::{self, ShiftedLattice, ToricFan};
use theta_crystal::group::Group;
use theta_crystal::hilbert;
use theta_crystal::theta_rep::{self as tr, gauss_sum_direct};
use theta_crystal::verify::{self, RunParams};

#[test]
fn small_gauss_sums() {
    // Σ_{x mod 4} e^{2πi x²/4} = 1 + i + 1 + i
    assert_eq!(gauss_sum_direct(1, 4), CycElem::from_canonical_ints(4, &[2, 2], 1));
    assert_eq!(gauss_sum_direct(3, 4), CycElem::from_canonical_ints(4, &[2, -2], 1));
    // |G(q, r)|² = 2r
    for r in [8u32, 12, 20, 28] {
        let g = gauss_sum_direct(1, r);
        assert_eq!(g.abs2().as_rational(), Some(rat(2 * r as i64, 1)));
    }
}

#[test]
fn legendre_and_jacobi() {
    let residues: Vec<i64> = (1..7).map(tr::legendre7).collect();
    assert_eq!(residues, [1, 1, -1, 1, -1, -1]);
    assert_eq!(tr::jacobi(2, 7), 1);
    assert_eq!(tr::jacobi(3, 7), -1);
    assert_eq!(tr::jacobi(5, 21), 1);
}

#[test]
fn hilbert_values() {
    let h: Vec<i64> = (0..11).map(hilbert::veronese_hilbert).collect();
    assert_eq!(h, [1, 2, 4, 6, 10, 14, 20, 27, 36, 46, 58]);
    assert_eq!(hilbert::monomial_count(&[1, 1, 2, 4], 8).unwrap(), 35);
    assert_eq!(hilbert::monomial_count(&[1, 1, 2, 4, 7], 8).unwrap(), 37);
    // k odd has no invariants by definition
    assert!(hilbert::invariant_hilbert_formula(5).is_err());
}

#[test]
fn characters_in_degree_two() {
    let g = Group::build();
    let got = verify::character_values(&g, 2).unwrap();
    assert_eq!(got, tr::character_table_row(2));
    // trace at the identity is the dimension 2³
    assert_eq!(got[0].as_rational(), Some(rat(8, 1)));
}

#[test]
fn lattice_counts() {
    let h: Vec<i64> = (0..=12).map(|k| ehrhart::h_f(k).unwrap()).collect();
    assert_eq!(h, ehrhart::H_F_PRINTED);
    // the printed congruence (parity on m₃) gives a different, non-dual lattice
    let printed = ToricFan::x_prime(ShiftedLattice::TORIC_PRINTED);
    assert!(!printed.lattice_is_dual());
    let d0: Vec<u64> = (0..10).map(|k| printed.h0(0, k).unwrap()).collect();
    assert_eq!(d0, [1, 2, 4, 6, 10, 14, 20, 26, 35, 44]);
    let fan = ToricFan::x_prime(ShiftedLattice::TORIC);
    assert!(fan.lattice_is_dual());
    assert_eq!((0..4).map(|i| fan.cartier_index(i)).collect::<Vec<_>>(), [Some(4), Some(2), Some(2), Some(4)]);
    assert_eq!(fan.positive_relation(), Some([1, 2, 2, 1]));
    assert_eq!(fan.ray_index().unwrap(), 2);
}

#[test]
fn run_command_rejects_unknown() {
    let g = Group::build();
    assert!(verify::run_command(&g, "nope", &RunParams::default()).is_err());
    let p = RunParams { max: Some(-1), ..RunParams::default() };
    assert!(verify::run_command(&g, "hilbert", &p).is_err());
}
