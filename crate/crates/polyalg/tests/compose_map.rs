use polyalg::compose::{boson_rep, compose, fit_order, polyfit, rep_order, su11_rep, su2_rep};
use polyalg::cubic::{self, CubicClass, CubicLabel};
use polyalg::quadratic::{self, QuadLabel, QuadraticClass};
use polyalg::{q, qi, verify_closure, Error};

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn two_bosons_give_su11() {
    for pi2 in 0..4 {
        let comp = compose(&boson_rep(30), &boson_rep(30), q(pi2, 2)).unwrap();
        let k = pi2 as f64 / 2.0 + 0.5;
        let rep = &comp.product_rep;
        for n in 0..rep.dim - 1 {
            let want = ((n as f64 + 1.0) * (n as f64 + 2.0 * k)).sqrt();
            assert!((rep.raise_amps[n] - want).abs() < 1e-12);
        }
        let fit = fit_order(&comp).unwrap();
        assert_eq!(fit.degree, 1);
        assert!((fit.coefficients[1] + 2.0).abs() < 1e-9 && fit.residual < 1e-10);
    }
}

#[test]
fn boson_with_su11_gives_qplus11() {
    for label in quadratic::label_grid(QuadraticClass::QPlus11, 2, 30).into_iter().take(8) {
        let QuadLabel { spin: k, l } = label;
        let comp = compose(&boson_rep(40), &su11_rep(k, 40).unwrap(), -l).unwrap();
        let want = quadratic::build(QuadraticClass::QPlus11, label, Some(comp.product_rep.dim)).unwrap();
        assert!(max_diff(&comp.product_rep.raise_amps, &want.raise_amps) < 1e-12);
        assert!(max_diff(&comp.product_rep.n0_diag, &want.n0_diag) < 1e-12);
        let fit = fit_order(&comp).unwrap();
        assert_eq!(fit.degree, 2);
        let f = quadratic::structure_polynomial(QuadraticClass::QPlus11, label);
        for (c, e) in fit.coefficients.iter().zip(f.to_f64_vec()) {
            assert!((c - e).abs() < 1e-6, "{label:?}: {:?} vs {:?}", fit.coefficients, f);
        }
    }
}

#[test]
fn boson_with_su2_is_quadratic() {
    let comp = compose(&boson_rep(20), &su2_rep(qi(3)).unwrap(), q(1, 2)).unwrap();
    assert_eq!(fit_order(&comp).unwrap().degree, 2);
    assert!(fit_order(&comp).unwrap().residual < 1e-10);
}

#[test]
fn su11_pairs_give_cplus11_11() {
    for (k1, k2, k) in [(q(1, 2), q(1, 2), qi(0)), (qi(1), q(1, 2), q(1, 4)), (q(3, 2), qi(2), q(1, 4))] {
        let label = CubicLabel::new(&[("k1", k1), ("k2", k2), ("k", k)]);
        let comp = compose(&su11_rep(k1, 40).unwrap(), &su11_rep(k2, 40).unwrap(), -k).unwrap();
        let want = cubic::build_cubic(CubicClass::CPlus11_11, &label, Some(comp.product_rep.dim)).unwrap();
        assert!(max_diff(&comp.product_rep.raise_amps, &want.raise_amps) < 1e-10 * want.raise_amps.last().unwrap());
        let fit = fit_order(&comp).unwrap();
        assert_eq!(fit.degree, 3);
        assert!(fit.residual < 1e-10);
        let fq = cubic::structure_polynomial_cubic(CubicClass::CPlus11_11, &label).unwrap();
        assert!(verify_closure(&comp.product_rep, &fq, 1e-9).passed());
    }
}

#[test]
fn orders_and_errors() {
    assert_eq!(rep_order(&boson_rep(10)).unwrap(), 0);
    assert_eq!(rep_order(&su2_rep(q(5, 2)).unwrap()).unwrap(), 1);
    assert_eq!(rep_order(&su11_rep(qi(1), 10).unwrap()).unwrap(), 1);
    assert!(matches!(compose(&boson_rep(5), &boson_rep(5), q(1, 3)), Err(Error::EmptySubspace(_))));
    assert!(matches!(compose(&boson_rep(5), &boson_rep(5), qi(9)), Err(Error::EmptySubspace(_))));
    let tiny = compose(&su2_rep(q(1, 2)).unwrap(), &su2_rep(q(1, 2)).unwrap(), qi(0)).unwrap();
    assert!(matches!(fit_order(&tiny), Err(Error::Underdetermined { .. })));
    assert!(polyfit(&[1.0, 2.0], &[1.0, 2.0], 2).is_err());
}
