use polyalg::hypergeom::{hypergeom, hypergeom_exact, kummer_neg, HypergeomParams};
use polyalg::{q, qi, Error};

fn hp(upper: &[f64], lower: &[f64], x: f64) -> HypergeomParams {
    HypergeomParams { upper: upper.to_vec(), lower: lower.to_vec(), argument: x }
}

#[test]
fn trivial_values() {
    assert_eq!(hypergeom(&hp(&[0.0], &[3.0], 7.5), 100, 1e-16).unwrap(), 1.0);
    assert_eq!(hypergeom(&hp(&[], &[1.0, 1.0], 0.0), 100, 1e-16).unwrap(), 1.0);
}

#[test]
fn terminating_exact() {
    // 1F1(-2;1;1) = 1 - 2 + 1/2
    assert_eq!(hypergeom_exact(&[qi(-2)], &[qi(1)], qi(1)).unwrap(), q(-1, 2));
    let v = hypergeom(&hp(&[-2.0], &[1.0], 1.0), 100, 1e-16).unwrap();
    assert!((v + 0.5).abs() < 1e-15);
}

#[test]
fn exponential_and_bessel() {
    let e = hypergeom(&hp(&[], &[], 1.3), 200, 1e-17).unwrap();
    assert!((e - 1.3f64.exp()).abs() < 1e-14);
    // 0F1(;1;x^2/4) = I0(x); I0(1) = 1.2660658777520082
    let i0 = hypergeom(&hp(&[], &[1.0], 0.25), 200, 1e-17).unwrap();
    assert!((i0 - 1.2660658777520082).abs() < 1e-14);
}

#[test]
fn divergence_and_poles() {
    assert!(matches!(hypergeom(&hp(&[1.0, 1.0, 1.0], &[1.0], 0.5), 100, 1e-16), Err(Error::Divergence(_))));
    assert!(matches!(hypergeom(&hp(&[1.0, 1.0], &[1.0], 1.5), 100, 1e-16), Err(Error::Divergence(_))));
    assert!(hypergeom(&hp(&[1.0], &[-2.0], 0.5), 100, 1e-16).is_err());
    // a terminating numerator that stops before the pole is fine
    assert!(hypergeom(&hp(&[-2.0], &[-3.0], 0.5), 100, 1e-16).is_ok());
}

#[test]
fn kummer_branches_agree() {
    for &(a, c) in &[(2.0, 3.5), (3.0, 4.0), (1.5, 2.25)] {
        let x = 40.0;
        let small = kummer_neg(a, c, x).unwrap();
        let big = kummer_neg(a, c, x + 1e-9).unwrap();
        assert!((small - big).abs() <= 1e-8 * small.abs(), "{a} {c}: {small} vs {big}");
    }
    // 1F1(1;2;-x) = (1 - e^{-x})/x
    let x = 100.0;
    assert!((kummer_neg(1.0, 2.0, x).unwrap() - (1.0 - (-x).exp()) / x).abs() < 1e-14);
}
