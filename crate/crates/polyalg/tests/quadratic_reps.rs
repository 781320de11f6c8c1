use polyalg::algebra::Dim;
use polyalg::quadratic::{self, ladder_spec, QuadLabel, QuadraticClass::*};
use polyalg::{casimir_spread, q, qi, verify_closure, Error, Polynomial};

fn lab(s: (i128, i128), l: (i128, i128)) -> QuadLabel {
    QuadLabel::new(q(s.0, s.1), q(l.0, l.1))
}

#[test]
fn dimensions_from_examples() {
    assert_eq!(quadratic::dimension(QMinus2, lab((1, 2), (1, 4))).unwrap(), Dim::Finite(2));
    assert_eq!(quadratic::dimension(QMinus2, lab((3, 2), (-1, 4))).unwrap(), Dim::Finite(2));
    assert_eq!(quadratic::dimension(QMinus11, lab((1, 2), (3, 4))).unwrap(), Dim::Finite(2));
    assert_eq!(quadratic::dimension(QPlus11, lab((1, 2), (1, 4))).unwrap(), Dim::Infinite);
    assert_eq!(quadratic::dimension(QPlus2, lab((2, 1), (-3, 1))).unwrap(), Dim::Finite(5));
}

#[test]
fn invalid_labels() {
    assert!(matches!(quadratic::dimension(QMinus2, lab((1, 2), (-1, 1))), Err(Error::InvalidLabel(_))));
    assert!(matches!(quadratic::dimension(QMinus11, lab((1, 2), (1, 2))), Err(Error::InvalidLabel(_))));
    assert!(matches!(quadratic::dimension(QMinus2, lab((1, 3), (1, 1))), Err(Error::InvalidLabel(_))));
    // Q+(2) needs m - 2l + 1 > 0 over the whole multiplet.
    assert!(quadratic::build(QPlus2, lab((1, 1), (1, 1)), None).is_err());
}

#[test]
fn cutoff_rules() {
    assert!(matches!(quadratic::build(QPlus11, lab((1, 2), (1, 4)), None), Err(Error::CutoffRequired)));
    assert!(matches!(
        quadratic::build(QMinus11, lab((1, 2), (3, 4)), Some(4)),
        Err(Error::CutoffNotAllowed(2))
    ));
}

#[test]
fn build_examples() {
    let r = quadratic::build(QMinus2, lab((1, 2), (1, 4)), None).unwrap();
    assert_eq!(r.n0_diag, vec![-0.75, 0.25]);
    assert!((r.raise_amps[0] - 1.0).abs() < 1e-15);

    let r = quadratic::build(QMinus11, lab((1, 2), (3, 4)), None).unwrap();
    assert_eq!(r.n0_diag, vec![-0.25, 0.75]);
    assert!((r.raise_amps[0] - 1.0).abs() < 1e-15);

    let r = quadratic::build(QPlus11, lab((1, 2), (1, 4)), Some(5)).unwrap();
    for (n, a) in r.raise_amps.iter().enumerate() {
        assert!((a - ((n + 1) as f64).powf(1.5)).abs() < 1e-12);
    }
    assert_eq!(r.raise_amps, r.lower_amps);
}

#[test]
fn structure_polynomial_examples() {
    let p = quadratic::structure_polynomial(QMinus2, lab((1, 2), (1, 4)));
    assert_eq!(p, Polynomial::new(vec![q(3, 4) + q(5, 16), q(1, 2), qi(-3)]));
    let p = quadratic::structure_polynomial(QMinus11, lab((1, 1), (1, 1)));
    assert_eq!(p, Polynomial::from_ints(&[-2, 1, 3]));
    let (k, l) = (q(1, 2), q(1, 4));
    let p = quadratic::structure_polynomial(QPlus11, QuadLabel::new(k, l));
    assert_eq!(p, Polynomial::new(vec![-(k * (qi(1) - k) - l * (l - qi(1))), q(-3, 2), qi(-3)]));
}

#[test]
fn closed_form_bracket_equals_ladder_bracket() {
    for class in QuadraticClass::ALL {
        for l in quadratic::label_grid(class, 4, 40) {
            let spec = ladder_spec(class, l).unwrap();
            assert_eq!(spec.structure_polynomial(), quadratic::structure_polynomial(class, l), "{class} {l:?}");
        }
    }
}

use polyalg::quadratic::QuadraticClass;

#[test]
fn closure_grid_all_classes() {
    let mut total = 0;
    for class in QuadraticClass::ALL {
        let grid = quadratic::label_grid(class, 4, 40);
        assert!(grid.len() >= 50, "{class}: {}", grid.len());
        for l in grid {
            let cutoff = matches!(class, QPlus11).then_some(30);
            let rep = quadratic::build(class, l, cutoff).unwrap();
            let f = quadratic::structure_polynomial(class, l);
            let r = verify_closure(&rep, &f, 1e-10);
            assert!(r.passed(), "{class} {l:?} {r:?}");
            let (mean, spread) = casimir_spread(&rep, &f);
            assert!(spread <= 1e-10, "{class} {l:?}");
            let exact = quadratic::casimir_value(class, l).unwrap();
            assert!((mean - exact).abs() <= 1e-10 * (1.0 + exact.abs()));
            total += 1;
        }
    }
    assert!(total >= 200);
}

#[test]
fn dimension_equals_enumerated_range() {
    // Q-(2): m runs from -j up to min(j, 2l); Q-(1,1): n = 0..2l-k.
    for l in quadratic::label_grid(QMinus2, 3, 40) {
        let (j, ll) = (l.spin, l.l);
        let top = if qi(2) * ll < j { qi(2) * ll } else { j };
        let count = ((top + j).to_integer() + 1) as usize;
        assert_eq!(quadratic::dimension(QMinus2, l).unwrap(), Dim::Finite(count));
    }
    for l in quadratic::label_grid(QMinus11, 3, 40) {
        let count = ((qi(2) * l.l - l.spin).to_integer() + 1) as usize;
        assert_eq!(quadratic::dimension(QMinus11, l).unwrap(), Dim::Finite(count));
    }
}

#[test]
fn casimir_values() {
    let v = quadratic::casimir_value(QPlus2, lab((1, 2), (-1, 4))).unwrap();
    assert!((v - 75.0 / 64.0).abs() < 1e-14);
    // Computed from the representation itself.
    assert_eq!(quadratic::casimir_exact(QMinus2, lab((1, 2), (1, 4))).unwrap(), q(7, 64));
    assert_eq!(quadratic::casimir_exact(QPlus11, lab((1, 2), (1, 4))).unwrap(), q(27, 64));
}

#[test]
fn printed_casimir_qplus2_is_consistent() {
    for l in quadratic::label_grid(QPlus2, 3, 40) {
        let (_, printed) = quadratic::printed_casimir(QPlus2, l).unwrap();
        assert_eq!(printed, quadratic::casimir_exact(QPlus2, l).unwrap());
    }
}

#[test]
fn printed_casimirs_that_disagree() {
    let (_, p) = quadratic::printed_casimir(QMinus2, lab((1, 2), (1, 4))).unwrap();
    assert_eq!(p, q(75, 64));
    assert_ne!(p, quadratic::casimir_exact(QMinus2, lab((1, 2), (1, 4))).unwrap());
    let (_, p) = quadratic::printed_casimir(QPlus11, lab((1, 2), (1, 4))).unwrap();
    assert_eq!(p, qi(0));
}
