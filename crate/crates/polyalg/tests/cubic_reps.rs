use polyalg::algebra::Dim;
use polyalg::cubic::{self, c_of, CubicClass, CubicClass::*, CubicLabel};
use polyalg::{casimir_spread, q, qi, verify_closure, Error, Polynomial, Q};

fn lab(names: [&str; 3], v: [Q; 3]) -> CubicLabel {
    CubicLabel::new(&[(names[0], v[0]), (names[1], v[1]), (names[2], v[2])])
}

fn kk(k1: Q, k2: Q, k: Q) -> CubicLabel {
    lab(["k1", "k2", "k"], [k1, k2, k])
}

#[test]
fn dimension_examples() {
    let h = q(1, 2);
    assert_eq!(cubic::dimension_cubic(CMinus11_11, &kk(h, h, q(3, 2))).unwrap(), Dim::Finite(3));
    assert_eq!(cubic::dimension_cubic(CPlus11_11, &kk(h, h, qi(0))).unwrap(), Dim::Infinite);
    let l = lab(["j", "k1", "k"], [qi(1), h, qi(1)]);
    assert_eq!(cubic::dimension_cubic(CMinus2_11, &l).unwrap(), Dim::Finite(3));
    // The other branch: j > 2k - k1.
    let l = lab(["j", "k1", "k"], [qi(3), qi(1), qi(1)]);
    assert_eq!(cubic::dimension_cubic(CMinus2_11, &l).unwrap(), Dim::Finite(5));
}

#[test]
fn build_examples() {
    let h = q(1, 2);
    let r = cubic::build_cubic(CMinus11_11, &kk(h, h, qi(1)), None).unwrap();
    assert_eq!(r.dim, 2);
    assert!((r.raise_amps[0] - 1.0).abs() < 1e-15);

    let r = cubic::build_cubic(CPlus11_11, &kk(h, h, qi(0)), Some(4)).unwrap();
    for (m, a) in r.raise_amps.iter().enumerate() {
        assert!((a - ((m + 1) as f64).powi(2)).abs() < 1e-12);
    }
    assert!(matches!(cubic::build_cubic(CPlus11_11, &kk(h, h, qi(0)), None), Err(Error::CutoffRequired)));
    assert!(cubic::build_cubic(CMinus11_11, &kk(h, h, q(1, 4)), None).is_err());
}

#[test]
fn cminus11_11_bracket_closed_form() {
    for l in cubic::label_grid(CMinus11_11, 3, 40) {
        let (k1, k2, k) = (l.get("k1").unwrap(), l.get("k2").unwrap(), l.get("k").unwrap());
        let (c1, c2) = (c_of(k1), c_of(k2));
        let expect = Polynomial::new(vec![
            qi(2) * (c1 - c2) * k,
            qi(4) * k * k - qi(2) * (c1 + c2),
            qi(0),
            qi(-4),
        ]);
        assert_eq!(cubic::structure_polynomial_cubic(CMinus11_11, &l).unwrap(), expect);
    }
}

#[test]
fn cminus2_2_example_bracket() {
    let h = q(1, 2);
    let l = lab(["j1", "j2", "k"], [h, h, qi(0)]);
    let p = cubic::structure_polynomial_cubic(CMinus2_2, &l).unwrap();
    assert_eq!(p, Polynomial::from_ints(&[0, 3, 0, -4]));
}

#[test]
fn higgs_examples() {
    let h = q(1, 2);
    let r = cubic::higgs_reduction(&kk(h, h, qi(1))).unwrap();
    assert_eq!((r.h, r.a), (-4.0, 1.5));
    assert_eq!(r.a_printed, 1.75);
    let r = cubic::higgs_reduction(&kk(qi(1), qi(1), qi(1))).unwrap();
    assert_eq!(r.a, 2.0);
    let r = cubic::higgs_reduction(&kk(h, h, h)).unwrap();
    assert_eq!(r.a, 0.0);
    assert!(matches!(cubic::higgs_reduction(&kk(h, qi(1), q(3, 4))), Err(Error::Precondition(_))));
}

#[test]
fn higgs_bracket_is_odd() {
    for l in cubic::label_grid(CMinus11_11, 3, 40) {
        if l.get("k1").unwrap() != l.get("k2").unwrap() {
            continue;
        }
        let p = cubic::structure_polynomial_cubic(CMinus11_11, &l).unwrap();
        assert_eq!(p.degree(), 3);
        assert_eq!(p.coeff(0), qi(0));
        assert_eq!(p.coeff(2), qi(0));
        assert!(cubic::higgs_reduction(&l).is_ok());
    }
}

#[test]
fn closure_grid_all_classes() {
    for class in CubicClass::ALL {
        let grid = cubic::label_grid(class, 3, 40);
        assert!(grid.len() >= 30, "{class}: {}", grid.len());
        for l in grid {
            let infinite = cubic::dimension_cubic(class, &l).unwrap() == Dim::Infinite;
            let rep = cubic::build_cubic(class, &l, infinite.then_some(30)).unwrap();
            let f = cubic::structure_polynomial_cubic(class, &l).unwrap();
            assert_eq!(f.degree(), 3, "{class}");
            let r = verify_closure(&rep, &f, 1e-10);
            assert!(r.passed(), "{class} {l:?} {r:?}");
            let (_, spread) = casimir_spread(&rep, &f);
            assert!(spread <= 1e-10, "{class} {l:?} {spread}");
        }
    }
}

#[test]
fn first_violation_equals_dimension() {
    for class in CubicClass::ALL {
        for l in cubic::label_grid(class, 2, 40) {
            let spec = cubic::ladder_spec(class, &l).unwrap();
            if let Dim::Finite(d) = spec.dimension() {
                assert_eq!(spec.first_violation(200), Some(d), "{class} {l:?}");
            } else {
                assert_eq!(spec.first_violation(200), None);
            }
        }
    }
}
