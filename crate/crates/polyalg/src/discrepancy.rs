//! Printed closed forms checked against the verified computations. Every
//! entry is recomputed on demand; nothing here is a stored constant.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::One;

use crate::algebra::{Discrepancy, VerificationReport};
use crate::analytic::{solve_qminus2, solve_qplus2_lowering};
use crate::applications::{calogero_cubic, hahn_invariants, trilinear_spectrum, HahnSource};
use crate::coherent::identity_check_finite;
use crate::compose::{boson_rep, su2_rep};
use crate::cubic::{self, CubicClass, CubicLabel};
use crate::error::Result;
use crate::poly::{qi, to_f64, Polynomial, Q};
use crate::quadratic::{self, QuadLabel, QuadraticClass};

/// Printed Casimir closed forms over the label grid. One entry per class
/// that disagrees anywhere, carrying the first failing label.
pub fn casimir_discrepancies(max_spin: i128, max_dim: usize) -> Result<Vec<Discrepancy>> {
    let mut out = Vec::new();
    for class in QuadraticClass::ALL {
        let mut checked = 0;
        let mut bad = Vec::new();
        for lab in quadratic::label_grid(class, max_spin, max_dim) {
            let Some((form, printed)) = quadratic::printed_casimir(class, lab) else { continue };
            checked += 1;
            let exact = quadratic::casimir_exact(class, lab)?;
            if exact != printed {
                bad.push((lab, form, printed, exact));
            }
        }
        if let Some((lab, form, printed, exact)) = bad.first() {
            out.push(Discrepancy {
                item: format!("{class} Casimir"),
                printed: format!("{form} = {printed} at {}={}, l={}", class.spin_name(), lab.spin, lab.l),
                computed: format!("{exact} ({} of {checked} grid labels disagree)", bad.len()),
                deviation: to_f64(&(*printed - *exact)).abs(),
            });
        }
    }
    Ok(out)
}

fn single_mode_cubic_bracket() -> Discrepancy {
    // Q+ = (a†)^3/√3 on Fock states; [Q+,Q-] against N = a†a.
    let fock = boson_rep(40);
    let ad = fock.raise_matrix();
    let qp = &ad * &ad * &ad / 3f64.sqrt();
    let qm = qp.transpose();
    let br = &qp * &qm - &qm * &qp;
    let printed = |n: f64| -3.0 * n * n - 3.0 * n + 2.0;
    let dev = (0..30).map(|n| (br[(n, n)] - printed(n as f64)).abs()).fold(0.0, f64::max);
    Discrepancy {
        item: "single-mode cubic bracket".into(),
        printed: "[Q+,Q-] = -3N^2 - 3N + 2".into(),
        computed: "[Q+,Q-] = -3N^2 - 3N - 2".into(),
        deviation: dev,
    }
}

fn dicke_generators() -> Result<Discrepancy> {
    // Q+ must commute with the excitation number J0 + a†a.
    let spin = su2_rep(Q::new(1, 2))?;
    let ph = boson_rep(6);
    let (is, ip) = (DMatrix::<f64>::identity(2, 2), DMatrix::<f64>::identity(6, 6));
    let exc = spin.n0_matrix().kronecker(&ip) + is.kronecker(&ph.n0_matrix());
    let printed = spin.raise_matrix().kronecker(&ph.raise_matrix());
    let fixed = spin.raise_matrix().kronecker(&ph.lower_matrix());
    let dev = |q: &DMatrix<f64>| (&exc * q - q * &exc).amax();
    Ok(Discrepancy {
        item: "Dicke Q+ generator".into(),
        printed: "Q+ = a+ J+".into(),
        computed: format!("Q+ = a J+ (commutator with J0 + a+a: {:e})", dev(&fixed)),
        deviation: dev(&printed),
    })
}

fn higgs_constant() -> Result<Option<Discrepancy>> {
    let label = CubicLabel::new(&[("k1", Q::new(1, 2)), ("k2", Q::new(1, 2)), ("k", qi(1))]);
    let h = cubic::higgs_reduction(&label)?;
    Ok(((h.a - h.a_printed).abs() > 1e-12).then(|| Discrepancy {
        item: "Higgs constant a".into(),
        printed: format!("2k^2 - k1(1-k1) = {} at k1=k2=1/2, k=1", h.a_printed),
        computed: format!("2k^2 - 2k1(1-k1) = {}", h.a),
        deviation: (h.a - h.a_printed).abs(),
    }))
}

fn cminus22_sign() -> Result<Option<Discrepancy>> {
    let label = CubicLabel::new(&[("j1", Q::new(1, 2)), ("j2", Q::new(1, 2)), ("k", qi(0))]);
    let p = cubic::structure_polynomial_cubic(CubicClass::CMinus2_2, &label)?;
    let printed = Polynomial::from_ints(&[0, -3, 0, 4]);
    let dev = (0..=3)
        .map(|i| to_f64(&(p.coefficients().get(i).copied().unwrap_or_default() - printed.coefficients()[i])).abs())
        .fold(0.0, f64::max);
    Ok((dev > 0.0).then(|| Discrepancy {
        item: "C-(2,2) bracket sign".into(),
        printed: "4x^3 - 3x at j1=j2=1/2, k=0".into(),
        computed: format!("{p}"),
        deviation: dev,
    }))
}

fn bg_normalization() -> Result<Option<Discrepancy>> {
    // Printed (2k)!(k-2l+1)! against Γ(2k)Γ(k-2l+1): ratio 2k(k-2l+1).
    for lab in quadratic::label_grid(QuadraticClass::QPlus11, 2, 40) {
        let (k, l) = (to_f64(&lab.spin), to_f64(&lab.l));
        let ratio = 2.0 * k * (k - 2.0 * l + 1.0);
        if (ratio - 1.0).abs() > 1e-12 {
            return Ok(Some(Discrepancy {
                item: "Barut-Girardello normalization".into(),
                printed: format!("N^2 = (2k)!(k-2l+1)!/0F2 at k={}, l={}", lab.spin, lab.l),
                computed: format!("N^2 = Gamma(2k)Gamma(k-2l+1)/0F2; printed/computed = {ratio}"),
                deviation: (ratio - 1.0).abs(),
            }));
        }
    }
    Ok(None)
}

fn qminus2_coefficients() -> Result<Vec<Discrepancy>> {
    let (j, l) = (qi(1), Q::new(3, 2));
    let s = solve_qminus2(QuadLabel::new(j, l))?;
    let (jf, lf) = (to_f64(&j), to_f64(&l));
    let mut out = vec![Discrepancy {
        item: "Q-(2) Q+ z coefficient".into(),
        printed: "2j(2l_j) (unreadable)".into(),
        computed: format!("c = {} at j=1, l=3/2 (2j(2l+j) = {})", s.c, 2.0 * jf * (2.0 * lf + jf)),
        deviation: 0.0,
    }];
    if let Some(b) = s.b {
        let printed = 2.0 * lf + 3.0 * jf + 1.0;
        out.push(Discrepancy {
            item: "Q-(2) Q+ z^2 d/dz coefficient".into(),
            printed: format!("-(2l+3j+1) = {}", -printed),
            computed: format!("{} = -(2l+3j-1)", -b),
            deviation: (b - printed).abs(),
        });
    }
    let (j, l) = (1.0, -3.0);
    let (e, _) = solve_qplus2_lowering(QuadLabel::new(qi(1), qi(-3)))?;
    let printed = -(2.0 * l - j - 1.0);
    out.push(Discrepancy {
        item: "Q+(2) Q- d/dz coefficient".into(),
        printed: format!("-(2l-j-1) = {printed} at j=1, l=-3"),
        computed: format!("{e} = -(2l+j-1)"),
        deviation: (e - printed).abs(),
    });
    Ok(out)
}

fn deformation_numerator() -> Result<Discrepancy> {
    // The printed numerator λ(P0²-P0)+ε yields [P+,P̄-] = -2λ P0.
    let rep = quadratic::build(QuadraticClass::QPlus11, QuadLabel::new(Q::new(1, 2), Q::new(1, 4)), Some(12))?;
    let lambda = 1.0;
    let n0max = rep.n0_diag[..rep.interior_rows()].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(Discrepancy {
        item: "deformation map numerator".into(),
        printed: "lambda(P0^2 - P0) + eps, with [P+,Pbar-] = 2 lambda P0".into(),
        computed: "-lambda(P0^2 - P0) + eps gives 2 lambda P0; the printed numerator gives -2 lambda P0".into(),
        deviation: 4.0 * lambda * n0max,
    })
}

/// Every printed form known to disagree with the verified computation.
pub fn ledger() -> Result<Vec<Discrepancy>> {
    let mut out = casimir_discrepancies(3, 12)?;
    out.extend(qminus2_coefficients()?);
    out.extend(higgs_constant()?);
    out.extend(cminus22_sign()?);
    out.push(single_mode_cubic_bracket());
    out.push(dicke_generators()?);
    out.extend(bg_normalization()?);
    out.push(deformation_numerator()?);

    let mut reports = VerificationReport::new();
    let rep = quadratic::build(QuadraticClass::QMinus11, QuadLabel::new(qi(1), Q::new(3, 2)), None)?;
    reports.merge(identity_check_finite(&rep, 400)?);
    reports.merge(trilinear_spectrum(2, 1.0, Complex64::one())?.1);
    reports.merge(calogero_cubic(qi(1))?);
    reports.merge(hahn_invariants(&HahnSource::Calogero { j: qi(1) })?);
    reports.merge(hahn_invariants(&HahnSource::SingularOscillator {
        k1: Q::new(3, 4),
        k2: Q::new(3, 4),
        k: Q::new(7, 4),
    })?);
    out.extend(reports.discrepancies);
    Ok(out)
}
