use polyalg::algebra::Dim;
use polyalg::ladder::{labels, LadderSpec};
use polyalg::quadratic::{self, QuadLabel, QuadraticClass};
use polyalg::{antidifference, casimir_on_rep, casimir_spread, q, qi, verify_closure, LadderRep, Polynomial, Q};
use proptest::prelude::*;

fn su2(j2: i128) -> LadderRep {
    // su(2) as a ladder: R(n) = (2j - n)(n + 1), N0 = -j + n.
    let j = q(j2, 2);
    LadderSpec {
        family: "su2".into(),
        labels: labels(&[("j", j)]),
        c0: -j,
        n_start: 0,
        n_end: Some(j2),
        factors: vec![(qi(-1), qi(j2)), (qi(1), qi(1))],
    }
    .build(None)
    .unwrap()
}

#[test]
fn antidifference_linear() {
    assert_eq!(antidifference(&Polynomial::from_ints(&[0, 2])), Polynomial::from_ints(&[0, 1, 1]));
    assert_eq!(antidifference(&Polynomial::from_ints(&[0, -2])), Polynomial::from_ints(&[0, -1, -1]));
}

#[test]
fn antidifference_zero_and_constant() {
    assert_eq!(antidifference(&Polynomial::zero()), Polynomial::zero());
    assert_eq!(antidifference(&Polynomial::from_ints(&[5])), Polynomial::from_ints(&[0, 5]));
}

proptest! {
    #[test]
    fn antidifference_quadratic_closed_form(a in -20i128..20, b in -20i128..20, c in -20i128..20) {
        let f = Polynomial::from_ints(&[c, b, a]);
        let g = antidifference(&f);
        let x = Polynomial::x();
        let x1 = Polynomial::linear(qi(1), qi(1));
        let x21 = Polynomial::linear(qi(2), qi(1));
        let cubic = (&(&x * &x1) * &x21).scale(Q::new(a, 6));
        let quad = (&x * &x1).scale(Q::new(b, 2));
        let lin = x.scale(qi(c));
        prop_assert_eq!(g, &(&cubic + &quad) + &lin);
    }

    #[test]
    fn antidifference_telescopes(coeffs in proptest::collection::vec(-30i128..30, 1..6), xs in -10i128..=10) {
        let f = Polynomial::from_ints(&coeffs);
        let g = antidifference(&f);
        prop_assert_eq!(g.eval(qi(xs)) - g.eval(qi(xs - 1)), f.eval(qi(xs)));
        prop_assert_eq!(g.eval(qi(0)), qi(0));
    }
}

#[test]
fn casimir_su2_half() {
    let rep = su2(1);
    let c = casimir_on_rep(&rep, &Polynomial::from_ints(&[0, 2]));
    for v in c {
        assert!((v - 0.75).abs() < 1e-15);
    }
}

#[test]
fn casimir_qplus2_example() {
    let lab = QuadLabel::new(q(1, 2), q(-1, 4));
    let rep = quadratic::build(QuadraticClass::QPlus2, lab, None).unwrap();
    let f = quadratic::structure_polynomial(QuadraticClass::QPlus2, lab);
    for v in casimir_on_rep(&rep, &f) {
        assert!((v - 75.0 / 64.0).abs() < 1e-14, "{v}");
    }
}

#[test]
fn casimir_diagonal_zero_amps() {
    let rep = LadderRep::new("diag", Default::default(), vec![0.0, 1.0, 2.0], vec![0.0, 0.0], false).unwrap();
    let f = Polynomial::from_ints(&[0, 0, 1]);
    let g = antidifference(&f);
    let c = casimir_on_rep(&rep, &f);
    for (i, v) in c.iter().enumerate() {
        assert_eq!(*v, g.eval_f64(i as f64 - 1.0));
    }
    let zero = casimir_on_rep(&rep, &Polynomial::zero());
    assert!(zero.iter().all(|v| *v == 0.0));
}

#[test]
fn closure_su2_spin_one_exact() {
    let rep = su2(2);
    let r = verify_closure(&rep, &Polynomial::from_ints(&[0, 2]), 1e-14);
    assert!(r.passed());
    assert!(r.max_residual() < 1e-14);
}

#[test]
fn closure_qminus2_example() {
    let lab = QuadLabel::new(q(1, 2), q(1, 4));
    let rep = quadratic::build(QuadraticClass::QMinus2, lab, None).unwrap();
    // -3x^2 - (2l-1)x + j(j+1) + l(l+1)
    let f = Polynomial::new(vec![q(3, 4) + q(5, 16), q(1, 2), qi(-3)]);
    let r = verify_closure(&rep, &f, 1e-12);
    assert!(r.passed(), "{r:?}");
}

#[test]
fn closure_truncated_excludes_boundary() {
    let lab = QuadLabel::new(q(1, 2), q(1, 4));
    let rep = quadratic::build(QuadraticClass::QPlus11, lab, Some(30)).unwrap();
    assert!(rep.truncated);
    let f = quadratic::structure_polynomial(QuadraticClass::QPlus11, lab);
    let r = verify_closure(&rep, &f, 1e-12);
    assert!(r.passed(), "{r:?}");
    // Pretending the cut rep is complete exposes the boundary row.
    let mut fake = rep.clone();
    fake.truncated = false;
    assert!(!verify_closure(&fake, &f, 1e-12).passed());
}

#[test]
fn closure_reports_failure_instead_of_panicking() {
    let rep = su2(2);
    let r = verify_closure(&rep, &Polynomial::from_ints(&[0, -2]), 1e-10);
    assert!(!r.passed());
    let bad = r.checks.iter().find(|c| !c.passed).unwrap();
    assert!(bad.residual > bad.tolerance);
}

#[test]
fn spread_on_truncated_uses_interior() {
    let lab = QuadLabel::new(q(1, 2), q(1, 4));
    let rep = quadratic::build(QuadraticClass::QPlus11, lab, Some(12)).unwrap();
    let f = quadratic::structure_polynomial(QuadraticClass::QPlus11, lab);
    let (mean, spread) = casimir_spread(&rep, &f);
    assert!(spread < 1e-12);
    assert!((mean - 27.0 / 64.0).abs() < 1e-12);
}

#[test]
fn truncate_marks_and_trims() {
    let lab = QuadLabel::new(q(1, 2), q(31, 4));
    let rep = quadratic::build(QuadraticClass::QMinus11, lab, None).unwrap();
    assert_eq!(rep.dim, 16);
    let t = rep.truncate(10).unwrap();
    assert!(t.truncated && t.dim == 10 && t.raise_amps.len() == 9);
    assert!(rep.truncate(0).is_err());
    assert!(rep.truncate(17).is_err());
    assert_eq!(quadratic::dimension(QuadraticClass::QPlus11, lab).ok(), None);
    assert_eq!(quadratic::dimension(QuadraticClass::QMinus11, lab).unwrap(), Dim::Finite(16));
}
