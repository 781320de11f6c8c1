use std::sync::Arc;

use polyalg::algebra::Dim;
use polyalg::boson::{self, mode_operator, Expr, FockSpace, ModeOp};
use polyalg::cubic::{self, CubicClass, CubicClass::*, CubicLabel};
use polyalg::quadratic::{self, QuadLabel, QuadraticClass, QuadraticClass::*};
use polyalg::{q, qi, Error};

fn space(c: &[usize]) -> Arc<FockSpace> {
    Arc::new(FockSpace::bosons(c.to_vec()).unwrap())
}

#[test]
fn mode_operator_ladder_action() {
    let s = space(&[4]);
    let a = mode_operator(&s, 0, ModeOp::Annihilate).unwrap();
    assert_eq!(a.column(0).count(), 0);
    let ad = mode_operator(&s, 0, ModeOp::Create).unwrap();
    assert!((ad.get(3, 2) - 3f64.sqrt()).abs() < 1e-15);
    assert_eq!(ad.column(4).count(), 0);
    let c = a.commutator(&ad);
    for n in 0..4 {
        assert!((c.get(n, n) - 1.0).abs() < 1e-14);
    }
    assert!((c.get(4, 4) - 1.0).abs() > 1.0);
}

#[test]
fn canonical_commutators_interior() {
    let s = space(&[3, 2, 2]);
    assert!(boson::canonical_commutator_residual(&s).unwrap() < 1e-14);
}

#[test]
fn colex_index_round_trip() {
    let s = space(&[2, 3, 1]);
    for i in 0..s.size() {
        assert_eq!(s.index(&s.occupations(i)), i);
    }
    assert_eq!(s.index(&[1, 0, 0]), 1);
    assert_eq!(s.index(&[0, 1, 0]), 3);
}

#[test]
fn qminus2_realization_example() {
    let s = space(&[4, 4, 4]);
    let (r, _) = boson::quadratic_realization(QMinus2, QuadLabel::new(q(1, 2), q(1, 4)));
    let ops = boson::realize(&s, &r).unwrap();
    let v = ops.qplus.get(s.index(&[1, 0, 0]), s.index(&[0, 1, 1]));
    assert!((v - 1.0).abs() < 1e-15);
}

#[test]
fn constrained_subspace_examples() {
    let s = space(&[2, 2, 2]);
    let (r, cons) = boson::quadratic_realization(QMinus2, QuadLabel::new(q(1, 2), q(1, 4)));
    let ops = boson::realize(&s, &r).unwrap();
    let c: Vec<_> = cons
        .iter()
        .map(|(n, v)| (&ops.central.iter().find(|(m, _)| m == n).unwrap().1, *v))
        .collect();
    let sub = boson::constrained_subspace(&c, &ops.q0, 1e-12).unwrap();
    assert_eq!(sub, vec![s.index(&[0, 1, 1]), s.index(&[1, 0, 0])]);

    let bad: Vec<_> = vec![(c[0].0, 0.1)];
    assert!(matches!(boson::constrained_subspace(&bad, &ops.q0, 1e-12), Err(Error::EmptySubspace(_))));

    let s = space(&[6, 6, 6]);
    let (r, cons) = boson::quadratic_realization(QPlus11, QuadLabel::new(q(1, 2), q(1, 4)));
    let ops = boson::realize(&s, &r).unwrap();
    let c: Vec<_> = cons
        .iter()
        .map(|(n, v)| (&ops.central.iter().find(|(m, _)| m == n).unwrap().1, *v))
        .collect();
    assert_eq!(boson::constrained_subspace(&c, &ops.q0, 1e-12).unwrap().len(), 7);
}

#[test]
fn compare_quadratic_examples() {
    let r = boson::check_quadratic(QMinus2, QuadLabel::new(q(1, 2), q(1, 4)), None, 1e-12).unwrap();
    assert!(r.passed(), "{r:?}");
    let r = boson::check_quadratic(QMinus11, QuadLabel::new(qi(1), q(3, 2)), None, 1e-12).unwrap();
    assert!(r.passed(), "{r:?}");
    let r = boson::check_quadratic(QPlus11, QuadLabel::new(q(1, 2), q(1, 4)), Some(12), 1e-12).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn compare_cminus11_11_double_schwinger() {
    let h = q(1, 2);
    let l = CubicLabel::new(&[("k1", h), ("k2", h), ("k", q(3, 2))]);
    let r = boson::check_cubic(CMinus11_11, &l, None, 1e-10).unwrap();
    assert!(r.passed(), "{r:?}");
}

#[test]
fn compare_detects_wrong_amplitudes() {
    let lab = QuadLabel::new(qi(1), q(5, 2));
    let mut rep = quadratic::build(QMinus11, lab, None).unwrap();
    let o = boson::quadratic_oracle(QMinus11, lab, rep.dim, 0).unwrap();
    rep.raise_amps[1] *= 1.01;
    rep.lower_amps[1] *= 1.01;
    assert!(!boson::compare(&rep, &o, 1e-10).unwrap().passed());
}

#[test]
fn compare_shape_mismatch() {
    let lab = QuadLabel::new(q(1, 2), q(1, 4));
    let rep = quadratic::build(QPlus11, lab, Some(10)).unwrap();
    let o = boson::quadratic_oracle(QPlus11, lab, 3, 0).unwrap();
    assert!(matches!(boson::compare(&rep, &o, 1e-10), Err(Error::ShapeMismatch(_))));
}

fn oracle_grid_quadratic(class: QuadraticClass) -> usize {
    let mut n = 0;
    for lab in quadratic::label_grid(class, 3, 20) {
        let cutoff = (quadratic::dimension(class, lab).unwrap() == Dim::Infinite).then_some(12);
        match boson::check_quadratic(class, lab, cutoff, 1e-10) {
            Ok(r) => {
                assert!(r.passed(), "{class} {lab:?} {r:?}");
                n += 1;
            }
            Err(Error::EmptySubspace(_)) => {}
            Err(e) => panic!("{class} {lab:?}: {e}"),
        }
    }
    n
}

#[test]
fn oracle_all_quadratic_classes() {
    for class in QuadraticClass::ALL {
        assert!(oracle_grid_quadratic(class) >= 5, "{class}");
    }
}

#[test]
fn oracle_cubic_classes() {
    for class in CubicClass::ALL {
        let mut n = 0;
        for lab in cubic::label_grid(class, 2, 12).into_iter().step_by(3) {
            let cutoff = (cubic::dimension_cubic(class, &lab).unwrap() == Dim::Infinite).then_some(8);
            match boson::check_cubic(class, &lab, cutoff, 1e-10) {
                Ok(r) => {
                    assert!(r.passed(), "{class} {lab:?} {r:?}");
                    n += 1;
                }
                Err(Error::EmptySubspace(_)) => {}
                Err(e) => panic!("{class} {lab:?}: {e}"),
            }
        }
        assert!(n >= 3, "{class}: {n}");
    }
}

#[test]
fn qh_raw_four_mode_agrees() {
    let cases = [
        (CPlusQm1H, [("k1", q(1, 2)), ("l", q(5, 4)), ("k", q(-7, 8))]),
        (CMinusQm1H, [("k1", q(1, 2)), ("l", q(5, 4)), ("k", q(5, 8))]),
        (CPlusQp1H, [("k1", q(1, 2)), ("l", q(1, 4)), ("k", q(1, 8))]),
        (CMinusQp1H, [("k1", q(1, 2)), ("l", q(1, 4)), ("k", q(9, 8))]),
    ];
    for (class, p) in cases {
        let lab = CubicLabel::new(&p);
        let infinite = cubic::dimension_cubic(class, &lab).unwrap() == Dim::Infinite;
        let rep = cubic::build_cubic(class, &lab, infinite.then_some(6)).unwrap();
        let raw = boson::qh_raw_oracle(class, &lab, rep.dim, 0).unwrap();
        let r = boson::compare(&rep, &raw, 1e-10).unwrap();
        assert!(r.passed(), "{class} {r:?}");
    }
}

#[test]
fn central_elements_commute() {
    let lab = QuadLabel::new(q(1, 2), q(1, 4));
    let o = boson::quadratic_oracle(QPlus11, lab, 8, 0).unwrap();
    assert!(boson::central_commutator_residual(&o) <= 1e-12);
    let l = CubicLabel::new(&[("j1", qi(1)), ("j2", q(1, 2)), ("k", q(1, 4))]);
    let o = boson::cubic_oracle(CMinus2_2, &l, 3, 0).unwrap();
    assert!(boson::central_commutator_residual(&o) <= 1e-12);
}

#[test]
fn cutoff_monotonicity() {
    let lab = QuadLabel::new(q(1, 2), q(1, 4));
    let rep = quadratic::build(QPlus11, lab, Some(8)).unwrap();
    let mut last = f64::INFINITY;
    for pad in 0..3 {
        let o = boson::quadratic_oracle(QPlus11, lab, rep.dim, pad).unwrap();
        let r = boson::compare(&rep, &o, 1e-10).unwrap().max_residual();
        assert!(r <= last + 1e-15);
        last = r;
    }
}

#[test]
fn single_mode_cubic_amplitudes() {
    let s = space(&[12]);
    let ops = boson::realize(&s, &boson::single_mode_cubic()).unwrap();
    assert!((ops.qplus.get(3, 0) - 2f64.sqrt()).abs() < 1e-14);
    for n in 0..3 {
        let v = ops.qplus.get(3 * n + 3, 3 * n);
        assert!((v - boson::single_mode_amplitude(n)).abs() < 1e-12);
    }
    // The ladder-rep reading (n+1)sqrt(n+4) is a different sequence.
    assert!((boson::single_mode_amplitude(0) - 2.0).abs() > 0.5);
}

#[test]
fn calogero_generator_example() {
    let s = space(&[2, 2]);
    let ops = boson::realize(&s, &boson::calogero_realization()).unwrap();
    // j = 1: |1,-1> = |0,2>, |1,1> = |2,0>.
    let v = ops.qplus.get(s.index(&[2, 0]), s.index(&[0, 2]));
    assert!((v - 1.0).abs() < 1e-14);
}

#[test]
fn expr_margins() {
    let e = Expr::prod(&[Expr::Create(0), Expr::Create(0), Expr::Annihilate(1)]);
    assert_eq!(e.creations(0), 2);
    assert_eq!(e.creations(1), 0);
}
