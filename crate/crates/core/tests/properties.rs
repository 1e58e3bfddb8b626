use std::sync::OnceLock;

use proptest::prelude::*;

use theta_crystal::arith::{rat, CycElem, Rational};
use theta_crystal::ehrhart::{self, count_simplex, vertices as vx, RationalSimplex, ShiftedLattice};
use theta_crystal::group::{Group, Mat3};
use theta_crystal::hilbert;
use theta_crystal::report::{Claim, Report, Status, Value};
use theta_crystal::theta_rep::{gauss_sum_closed, gauss_sum_direct};
use theta_crystal::verify::parse_rational;

fn group() -> &'static Group {
    static G: OnceLock<Group> = OnceLock::new();
    G.get_or_init(Group::build)
}

fn elem() -> impl Strategy<Value = usize> {
    0..336usize
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn group_mul_is_associative(a in elem(), b in elem(), c in elem()) {
        let g = group();
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    }

    #[test]
    fn group_inverse_and_matrices(a in elem(), b in elem()) {
        let g = group();
        let id = g.index_of(&Mat3::identity()).unwrap();
        prop_assert_eq!(g.mul(a, g.inv(a)), id);
        prop_assert_eq!(g.mul(g.inv(a), a), id);
        prop_assert_eq!(g.matrix(g.mul(a, b)), &g.matrix(a).mul(g.matrix(b)));
        // −1 is central
        prop_assert_eq!(g.mul(g.neg(a), b), g.neg(g.mul(a, b)));
    }

    #[test]
    fn conjugacy_class_sizes_divide_order(a in elem()) {
        let g = group();
        let n = g.conjugacy_class(a).len();
        prop_assert_eq!(336 % n, 0);
        let b = g.conjugacy_class(a)[n / 2];
        prop_assert_eq!(g.conjugacy_class(b).len(), n);
    }

    #[test]
    fn cyclotomic_field_axioms(
        a in prop::collection::vec(-5i64..=5, 12),
        b in prop::collection::vec(-5i64..=5, 12),
        u in prop::sample::select(vec![1i64, 5, 9, 11, 13, 17, 19, 23, 25]),
    ) {
        let x = CycElem::from_canonical_ints(28, &a, 1);
        let y = CycElem::from_canonical_ints(28, &b, 2);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x * &y).galois(u), &x.galois(u) * &y.galois(u));
        prop_assert_eq!(x.conj().conj(), x.clone());
        if let Some(inv) = x.inv() {
            prop_assert_eq!(&x * &inv, CycElem::one(28));
        } else {
            prop_assert!(x.is_zero());
        }
    }

    #[test]
    fn gauss_closed_form_matches_summation(r4 in 1u32..=40, q in 1i64..400) {
        let r = 4 * r4;
        let q = q % r as i64;
        prop_assume!(q % 2 == 1 && num_integer::gcd(q, r as i64) == 1);
        prop_assert_eq!(gauss_sum_closed(q, r).unwrap(), gauss_sum_direct(q, r));
    }

    #[test]
    fn parse_fraction(n in -10_000i64..10_000, d in 1i64..10_000) {
        prop_assert_eq!(parse_rational(&format!("{n}/{d}")).unwrap(), rat(n, d));
    }

    #[test]
    fn parse_decimal(a in 0i64..1000, b in 0i64..1000, neg: bool) {
        let s = format!("{}{a}.{b:03}", if neg { "-" } else { "" });
        let want = rat(a * 1000 + b, 1000);
        prop_assert_eq!(parse_rational(&s).unwrap(), if neg { -want } else { want });
    }

    #[test]
    fn parse_rejects_garbage(s in "[a-z ]{1,8}") {
        prop_assert!(parse_rational(&s).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn h_f_matches_closed_form(k in 0i64..60) {
        prop_assert_eq!(Rational::from_integer(ehrhart::h_f(k).unwrap().into()), ehrhart::h_f_closed_form(k));
    }

    #[test]
    fn toric_sections_count_fundamental_domain(k in 0i64..30, i in prop::sample::select(vec![0usize, 3])) {
        prop_assert_eq!(ehrhart::toric_h0(i, k).unwrap() as i64, ehrhart::h_f(k).unwrap());
    }

    #[test]
    fn simplex_count_agrees_with_membership(
        pick in prop::sample::subsequence(vec![0usize, 1, 2, 3, 4, 5], 1..=4),
        open: bool,
        k in 0i64..7,
    ) {
        let all = [vx::o(), vx::a(), vx::e(), vx::n(), vx::k(), vx::l()];
        let verts: Vec<_> = pick.iter().map(|&i| all[i].clone()).collect();
        let Ok(s) = RationalSimplex::new(verts, open) else { return Ok(()) };
        let lat = ShiftedLattice::Weight;
        let fast = count_simplex(&s, k, lat).unwrap();
        // brute force over half-integral points of [0, k/2]³
        let mut slow = 0u64;
        for a in 0..=k {
            for b in 0..=k {
                for c in 0..=k {
                    let x = [rat(a, 2), rat(b, 2), rat(c, 2)];
                    if lat.contains(&x) && s.contains(&x, k) {
                        slow += 1;
                    }
                }
            }
        }
        prop_assert_eq!(fast, slow);
        if open && k > 0 {
            let closed = RationalSimplex::new(s.vertices.clone(), false).unwrap();
            prop_assert!(fast <= count_simplex(&closed, k, lat).unwrap());
        }
    }

    #[test]
    fn simplex_count_is_translation_invariant(
        k in 1i64..7,
        t in prop::array::uniform3(-2i64..=2),
    ) {
        let base = [vx::o(), vx::a(), vx::e(), vx::n()];
        let shifted: Vec<_> = base
            .iter()
            .map(|p| std::array::from_fn(|j| &p[j] + rat(t[j], 1)))
            .collect();
        let lat = ShiftedLattice::Weight;
        let a = count_simplex(&RationalSimplex::closed(base.to_vec()), k, lat).unwrap();
        let b = count_simplex(&RationalSimplex::closed(shifted), k, lat).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hilbert_formula_matches_series(p in 0usize..300) {
        let h = hilbert::veronese_hilbert(p);
        prop_assert_eq!(hilbert::invariant_hilbert_formula(2 * p as i64).unwrap(), h);
        prop_assert_eq!(hilbert::hypersurface_hilbert(p), h);
    }
}

fn value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        any::<bool>().prop_map(Value::Bool),
        any::<i64>().prop_map(Value::Int),
        "[a-zA-Z0-9 .+-]{0,12}".prop_map(Value::Text),
        ("-?[0-9]\\.[0-9]{1,8}e-[0-9]", "[0-9]\\.[0-9]{3}", "[0-9]\\.[0-9]{2}e-1[0-9]").prop_map(|(re, im, err)| {
            Value::Complex(theta_crystal::report::ComplexValue { re, im, err })
        }),
    ];
    leaf.prop_recursive(2, 8, 4, |inner| prop::collection::vec(inner, 0..4).prop_map(Value::List))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn report_json_round_trip(
        claims in prop::collection::vec(
            ("[a-z.]{1,10}", value(), value(), prop::option::of("[0-9e.-]{1,6}"), any::<u32>(),
             prop::sample::select(vec![Status::Pass, Status::Fail, Status::Inconclusive]),
             prop::option::of("[a-z ]{0,10}")),
            0..5,
        ),
        seed in any::<u64>(),
    ) {
        let mut r = Report::new("verify-all").param("seed", seed);
        for (id, computed, expected, tol, ms, status, note) in claims {
            r.claims.push(Claim { id, anchor: "anchor".into(), status, computed, expected, tol, ms: ms as u64, note });
        }
        let back = Report::from_json(&r.to_json()).unwrap();
        prop_assert_eq!(&back, &r);
        let code = back.exit_code();
        prop_assert_eq!(code == 1, r.count(Status::Fail) > 0);
        prop_assert_eq!(code == 0, r.count(Status::Pass) == r.claims.len());
    }
}

#[test]
fn three_string_list_is_not_read_as_complex() {
    let v = Value::List(vec![Value::Text("a".into()), Value::Text("b".into()), Value::Text("c".into())]);
    let back: Value = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(back, v);
}
