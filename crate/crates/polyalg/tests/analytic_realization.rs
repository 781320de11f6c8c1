use nalgebra::DVector;
use polyalg::analytic::{
    apply, class_realization, compare_realization, cubic_class_realization, generic_realization,
    monomial_commutator_residual, printed_quadratic_realization, solve_qminus2, solve_qplus2_lowering, DiffOp,
    WeightedBasis,
};
use polyalg::cubic::{self, CubicClass};
use polyalg::quadratic::{self, QuadLabel, QuadraticClass::*};
use polyalg::poly::to_f64;
use polyalg::q;

fn lab(s: (i128, i128), l: (i128, i128)) -> QuadLabel {
    QuadLabel::new(q(s.0, s.1), q(l.0, l.1))
}

#[test]
fn euler_and_shift_operators() {
    let basis = WeightedBasis { log_weights: vec![0.0, 0.3, 1.1, 2.0] };
    let e = apply(&DiffOp::new(vec![(1, 1, 1.0)]), &basis, 4).unwrap();
    for i in 0..4 {
        assert_eq!(e[(i, i)], i as f64);
    }
    let z = apply(&DiffOp::new(vec![(1, 0, 1.0)]), &basis, 4).unwrap();
    let w = basis.weights();
    for n in 0..3 {
        assert!((z[(n + 1, n)] - (w[n + 1] / w[n]).sqrt()).abs() < 1e-14);
    }
}

#[test]
fn derivative_on_qminus11_basis() {
    let label = lab((1, 2), (3, 4));
    let r = class_realization(QMinus11, label, 2).unwrap();
    let d = apply(&DiffOp::new(vec![(0, 1, 1.0)]), &r.basis, 2).unwrap();
    let w = r.basis.weights();
    assert!((d[(0, 1)] - (w[0] / w[1]).sqrt()).abs() < 1e-14);
}

#[test]
fn quadratic_examples_reproduce_ladders() {
    let rep = quadratic::build(QMinus11, lab((1, 2), (3, 4)), None).unwrap();
    let r = class_realization(QMinus11, lab((1, 2), (3, 4)), rep.dim).unwrap();
    assert!(compare_realization(&rep, &r, 1e-12).unwrap().passed());

    let rep = quadratic::build(QPlus11, lab((1, 2), (1, 4)), Some(6)).unwrap();
    let printed = printed_quadratic_realization(QPlus11, lab((1, 2), (1, 4)), 6, 0.0).unwrap();
    let report = compare_realization(&rep, &printed, 1e-12).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn every_quadratic_class_on_a_grid() {
    for class in [QMinus2, QPlus2, QMinus11, QPlus11] {
        let grid = quadratic::label_grid(class, 3, 8);
        assert!(!grid.is_empty());
        for label in grid {
            let rep = quadratic::build(class, label, quadratic::dimension(class, label).unwrap().finite().map_or(Some(8), |_| None)).unwrap();
            let r = class_realization(class, label, rep.dim).unwrap();
            let report = compare_realization(&rep, &r, 1e-10).unwrap();
            assert!(report.passed(), "{class} {label:?}: {report:?}");
            assert!(monomial_commutator_residual(&r, rep.dim).unwrap() == 0.0);
        }
    }
}

#[test]
fn qminus2_coefficients_are_solved() {
    for label in quadratic::label_grid(QMinus2, 3, 8) {
        let Ok(sol) = solve_qminus2(label) else {
            assert_eq!(quadratic::dimension(QMinus2, label).unwrap().finite(), Some(1));
            continue;
        };
        let (j, l) = (to_f64(&label.spin), to_f64(&label.l));
        assert!((sol.c - 2.0 * j * (2.0 * l + j)).abs() < 1e-9, "{label:?} {sol:?}");
        if let Some(b) = sol.b {
            assert!((b - (2.0 * l + 3.0 * j - 1.0)).abs() < 1e-9);
        }
    }
}

#[test]
fn printed_qplus2_lowering_coefficient_is_off() {
    let label = lab((2, 1), (-3, 1));
    let (e, res) = solve_qplus2_lowering(label).unwrap();
    assert!(res < 1e-9);
    assert!((e + (2.0 * -3.0 + 2.0 - 1.0)).abs() < 1e-9);
    let rep = quadratic::build(QPlus2, label, None).unwrap();
    let printed = printed_quadratic_realization(QPlus2, label, rep.dim, 0.0).unwrap();
    assert!(!compare_realization(&rep, &printed, 1e-6).unwrap().passed());
}

#[test]
fn cubic_classes_reproduce_ladders() {
    for class in CubicClass::ALL {
        let grid = cubic::label_grid(class, 2, 8);
        assert!(!grid.is_empty(), "{class}");
        for label in grid.iter().take(20) {
            let dim = cubic::dimension_cubic(class, label).unwrap();
            let rep = cubic::build_cubic(class, label, dim.finite().map_or(Some(8), |_| None)).unwrap();
            let r = cubic_class_realization(class, label, rep.dim).unwrap();
            assert!(r.qminus.max_order() <= 4 && r.qplus.max_order() <= 4);
            let report = compare_realization(&rep, &r, 1e-10).unwrap();
            assert!(report.passed(), "{class} {label:?}: {report:?}");
        }
    }
}

#[test]
fn bg_series_solves_the_lowering_equation() {
    // 0F2(;2k,k-2l+1;αz) is an eigenfunction of the third-order Q-.
    let (k, l, alpha) = (0.5, 0.25, 0.7);
    let label = lab((1, 2), (1, 4));
    let spec = quadratic::ladder_spec(QPlus11, label).unwrap();
    let r = generic_realization(&spec, 30).unwrap();
    let dim = 30;
    let mut a = vec![1.0f64];
    for n in 0..dim - 1 {
        let next = a[n] * alpha / ((2.0 * k + n as f64) * (k - 2.0 * l + 1.0 + n as f64) * (n + 1) as f64);
        a.push(next);
    }
    let m = apply(&r.qminus, &WeightedBasis::unit(dim), dim).unwrap();
    let v = DVector::from_vec(a.clone());
    let lhs = &m * &v;
    for i in 0..dim - 1 {
        assert!((lhs[i] - alpha * a[i]).abs() < 1e-14, "row {i}");
    }
}
