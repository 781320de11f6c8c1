//! Differential-operator realizations on weighted monomial bases.
//!
//! Any ladder with radicand R(i) (index i counted from the lowest state)
//! factorizes as Q+ = z A(θ), Q- = z^{-1} B(θ), θ = z d/dz, with
//! A(i) B(i+1) = R(i). Factors that fall with i go to A, rising ones to B.

use nalgebra::DMatrix;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{LadderRep, VerificationReport};
use crate::error::{Error, Result};
use crate::cubic::{self, CubicClass, CubicLabel};
use crate::ladder::LadderSpec;
use crate::poly::{qi, to_f64, Polynomial, Q};
use crate::quadratic::{self, QuadLabel, QuadraticClass};

/// Terms `coefficient * z^p * (d/dz)^q`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiffOp {
    pub terms: Vec<(usize, usize, f64)>,
}

impl DiffOp {
    pub fn new(terms: Vec<(usize, usize, f64)>) -> Self {
        DiffOp { terms }
    }

    /// `z^shift * P(θ)` with P expanded in falling factorials, θ^(q) = z^q d^q.
    /// Needs `shift + q >= 0` for every nonzero term.
    fn from_theta(p: &Polynomial, shift: i64) -> Result<Self> {
        let mut terms = Vec::new();
        for (qd, c) in p.falling_factorial_coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pw = qd as i64 + shift;
            if pw < 0 {
                return Err(Error::Precondition("operator needs a negative power of z".into()));
            }
            terms.push((pw as usize, qd, to_f64(c)));
        }
        Ok(DiffOp { terms })
    }

    pub fn max_order(&self) -> usize {
        self.terms.iter().map(|t| t.1).max().unwrap_or(0)
    }
}

/// Basis functions `ψ_n = z^n / sqrt(w_n)`; weights are kept as logarithms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightedBasis {
    pub log_weights: Vec<f64>,
}

impl WeightedBasis {
    pub fn unit(dim: usize) -> Self {
        WeightedBasis { log_weights: vec![0.0; dim] }
    }

    pub fn weights(&self) -> Vec<f64> {
        self.log_weights.iter().map(|v| v.exp()).collect()
    }
}

fn falling(n: usize, q: usize) -> f64 {
    (0..q).map(|i| (n - i) as f64).product()
}

/// Matrix of `op` in the basis: `op ψ_n = Σ_m M[m,n] ψ_m`. Terms mapping
/// beyond `dim` are dropped.
pub fn apply(op: &DiffOp, basis: &WeightedBasis, dim: usize) -> Result<DMatrix<f64>> {
    if dim > basis.log_weights.len() {
        return Err(Error::ShapeMismatch(format!("dim {dim} exceeds {} weights", basis.log_weights.len())));
    }
    let mut m = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        for &(p, q, c) in &op.terms {
            if n < q {
                continue;
            }
            let t = n - q + p;
            if t >= dim {
                continue;
            }
            let lw = &basis.log_weights;
            m[(t, n)] += c * falling(n, q) * (0.5 * (lw[t] - lw[n])).exp();
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalyticRealization {
    pub q0: DiffOp,
    pub qplus: DiffOp,
    pub qminus: DiffOp,
    pub basis: WeightedBasis,
}

/// Realization reconstructed from a ladder's radicand, on `dim` basis functions.
pub fn generic_realization(spec: &LadderSpec, dim: usize) -> Result<AnalyticRealization> {
    let shift = qi(spec.n_start);
    let mut a = Polynomial::constant(Q::one());
    let mut b = Polynomial::constant(Q::one());
    for (sl, c) in &spec.factors {
        // Factor in terms of the local index i: sl*(i + n_start) + c.
        let local = Polynomial::linear(*sl, sl * shift + c);
        if sl.is_negative() {
            a = &a * &local;
        } else {
            b = &b * &local.shift(-Q::one());
        }
    }
    if !b.eval(Q::zero()).is_zero() {
        return Err(Error::Precondition("lowering part does not annihilate the lowest state".into()));
    }
    let mut lw = vec![0.0; dim];
    for i in 1..dim {
        let ai = to_f64(&a.eval(qi(i as i128 - 1)));
        let bi = to_f64(&b.eval(qi(i as i128)));
        if ai <= 0.0 || bi <= 0.0 {
            return Err(Error::NegativeRadicand { index: i as i128 - 1, value: ai * bi });
        }
        lw[i] = lw[i - 1] + bi.ln() - ai.ln();
    }
    let c0 = to_f64(&spec.n0_exact(0));
    Ok(AnalyticRealization {
        q0: DiffOp::new(vec![(1, 1, 1.0), (0, 0, c0)]),
        qplus: DiffOp::from_theta(&a, 1)?,
        qminus: DiffOp::from_theta(&b, -1)?,
        basis: WeightedBasis { log_weights: lw },
    })
}

/// Max deviation of the realized matrices from the ladder on interior rows.
pub fn compare_realization(rep: &LadderRep, r: &AnalyticRealization, tol: f64) -> Result<VerificationReport> {
    let dim = rep.dim;
    let rows = rep.interior_rows();
    let mut report = VerificationReport::new();
    let pairs = [
        ("Q0", apply(&r.q0, &r.basis, dim)?, rep.n0_matrix()),
        ("Q+", apply(&r.qplus, &r.basis, dim)?, rep.raise_matrix()),
        ("Q-", apply(&r.qminus, &r.basis, dim)?, rep.lower_matrix()),
    ];
    for (name, got, want) in pairs {
        let mut dev = 0.0f64;
        for i in 0..rows {
            for j in 0..dim {
                dev = dev.max((got[(i, j)] - want[(i, j)]).abs());
            }
        }
        let scale = want.iter().fold(1.0f64, |s, v| s.max(v.abs()));
        report.check(format!("{name} analytic vs ladder"), dev / scale, tol);
    }
    Ok(report)
}

/// Realization for a quadratic class as printed, with the label substituted.
/// Q-(2) uses the printed Q+ z^2 d coefficient and has no printed z coefficient
/// (the printed token is unreadable), so `c` must be supplied.
pub fn printed_quadratic_realization(
    class: QuadraticClass,
    label: QuadLabel,
    dim: usize,
    qminus2_c: f64,
) -> Result<AnalyticRealization> {
    let (s, l) = (to_f64(&label.spin), to_f64(&label.l));
    let spec = quadratic::ladder_spec(class, label)?;
    // The printed weights agree with the generic factorization for every class.
    let basis = generic_realization(&spec, dim)?.basis;
    let c0 = to_f64(&spec.n0_exact(0));
    let q0 = DiffOp::new(vec![(1, 1, 1.0), (0, 0, c0)]);
    let (qplus, qminus) = match class {
        QuadraticClass::QMinus11 => (
            DiffOp::new(vec![(2, 1, -1.0), (1, 0, 2.0 * l - s)]),
            DiffOp::new(vec![(1, 2, 1.0), (0, 1, 2.0 * s)]),
        ),
        QuadraticClass::QPlus11 => (
            DiffOp::new(vec![(1, 0, 1.0)]),
            DiffOp::new(vec![
                (2, 3, 1.0),
                (1, 2, 3.0 * s - 2.0 * l + 2.0),
                (0, 1, 2.0 * s * s - 4.0 * s * l + 2.0 * s),
            ]),
        ),
        QuadraticClass::QMinus2 => (
            DiffOp::new(vec![(3, 2, 1.0), (2, 1, -(2.0 * l + 3.0 * s + 1.0)), (1, 0, qminus2_c)]),
            DiffOp::new(vec![(0, 1, 1.0)]),
        ),
        QuadraticClass::QPlus2 => (
            DiffOp::new(vec![(2, 1, -1.0), (1, 0, 2.0 * s)]),
            DiffOp::new(vec![(1, 2, 1.0), (0, 1, -(2.0 * l - s - 1.0))]),
        ),
    };
    Ok(AnalyticRealization { q0, qplus, qminus, basis })
}

/// Verified quadratic realization: the printed operators, with the two
/// coefficients that disagree with the ladder replaced by their solved values
/// (Q-(2): z^2 d coefficient -(2l+3j-1), z coefficient 2j(2l+j); Q+(2): d
/// coefficient -(2l+j-1)).
pub fn class_realization(class: QuadraticClass, label: QuadLabel, dim: usize) -> Result<AnalyticRealization> {
    let (s, l) = (to_f64(&label.spin), to_f64(&label.l));
    let mut r = printed_quadratic_realization(class, label, dim, 2.0 * s * (2.0 * l + s))?;
    match class {
        QuadraticClass::QMinus2 => r.qplus.terms[1].2 = -(2.0 * l + 3.0 * s - 1.0),
        QuadraticClass::QPlus2 => r.qminus.terms[1].2 = -(2.0 * l + s - 1.0),
        _ => {}
    }
    Ok(r)
}

/// Cubic classes use the factorized realization; the printed monomial
/// operators are not reliable enough to transcribe.
pub fn cubic_class_realization(class: CubicClass, label: &CubicLabel, dim: usize) -> Result<AnalyticRealization> {
    generic_realization(&cubic::ladder_spec(class, label)?, dim)
}

/// Largest coefficient difference between two operators, term by term.
pub fn diffop_distance(a: &DiffOp, b: &DiffOp) -> f64 {
    let collect = |d: &DiffOp| {
        let mut m = std::collections::BTreeMap::new();
        for &(p, q, c) in &d.terms {
            *m.entry((p, q)).or_insert(0.0) += c;
        }
        m
    };
    let (ma, mb) = (collect(a), collect(b));
    ma.keys()
        .chain(mb.keys())
        .map(|k| (ma.get(k).unwrap_or(&0.0) - mb.get(k).unwrap_or(&0.0)).abs())
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QMinus2Solve {
    /// Solved z^2 d/dz coefficient magnitude (Q+ has `-b z^2 d/dz`); needs dim >= 3.
    pub b: Option<f64>,
    /// Solved z coefficient of Q+.
    pub c: f64,
    pub residual: f64,
}

/// Solves the Q-(2) raising coefficients from the ladder: the entries of
/// `z^3 d^2 - b z^2 d + c z` in the Q- = d basis are `(n(n-1) - b n + c) sqrt(w_{n+1}/w_n)`.
pub fn solve_qminus2(label: QuadLabel) -> Result<QMinus2Solve> {
    let rep = quadratic::build(QuadraticClass::QMinus2, label, None)?;
    let spec = quadratic::ladder_spec(QuadraticClass::QMinus2, label)?;
    let basis = generic_realization(&spec, rep.dim)?.basis;
    let rows = rep.dim - 1;
    if rows == 0 {
        return Err(Error::Underdetermined { points: 0, degree: 1 });
    }
    let mut a = DMatrix::zeros(rows, 2);
    let mut y = nalgebra::DVector::zeros(rows);
    for n in 0..rows {
        let scale = (0.5 * (basis.log_weights[n + 1] - basis.log_weights[n])).exp();
        let t = rep.raise_amps[n] / scale;
        a[(n, 0)] = -(n as f64);
        a[(n, 1)] = 1.0;
        y[n] = t - (n * n.saturating_sub(1)) as f64;
    }
    if rows == 1 {
        return Ok(QMinus2Solve { b: None, c: y[0], residual: 0.0 });
    }
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&y, 1e-14).map_err(|e| Error::Precondition(e.to_string()))?;
    let residual = (&a * &x - &y).amax();
    Ok(QMinus2Solve { b: Some(x[0]), c: x[1], residual })
}

/// Solves the single d/dz coefficient of the Q+(2) lowering operator
/// `z d^2 + e d`: entries are `(n(n-1) + e n) sqrt(w_{n-1}/w_n)`.
pub fn solve_qplus2_lowering(label: QuadLabel) -> Result<(f64, f64)> {
    let rep = quadratic::build(QuadraticClass::QPlus2, label, None)?;
    let spec = quadratic::ladder_spec(QuadraticClass::QPlus2, label)?;
    let basis = generic_realization(&spec, rep.dim)?.basis;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut eqs = Vec::new();
    for n in 1..rep.dim {
        let scale = (0.5 * (basis.log_weights[n - 1] - basis.log_weights[n])).exp();
        let t = rep.lower_amps[n - 1] / scale - (n * (n - 1)) as f64;
        num += t * n as f64;
        den += (n * n) as f64;
        eqs.push((n as f64, t));
    }
    let e = num / den;
    let residual = eqs.iter().map(|(n, t)| (n * e - t).abs()).fold(0.0, f64::max);
    Ok((e, residual))
}

/// Exact commutator check in the unweighted monomial basis:
/// max |[Q0, Q±] ∓ Q±| over the first `dim` monomials.
pub fn monomial_commutator_residual(r: &AnalyticRealization, dim: usize) -> Result<f64> {
    let unit = WeightedBasis::unit(dim + 8);
    let big = dim + 8;
    let q0 = apply(&r.q0, &unit, big)?;
    let qp = apply(&r.qplus, &unit, big)?;
    let qm = apply(&r.qminus, &unit, big)?;
    let cp = &q0 * &qp - &qp * &q0 - &qp;
    let cm = &q0 * &qm - &qm * &q0 + &qm;
    let mut worst = 0.0f64;
    for i in 0..dim {
        for j in 0..dim {
            worst = worst.max(cp[(i, j)].abs()).max(cm[(i, j)].abs());
        }
    }
    Ok(worst)
}
