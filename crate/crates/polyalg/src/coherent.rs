//! Barut–Girardello and Perelomov states, canonical conjugates, deformation
//! maps and the resolution of identity for finite Q-(1,1) irreps.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::algebra::{casimir_spread, LadderRep, VerificationReport};
use crate::error::{Error, Result};
use crate::hypergeom::{hypergeom, kummer_neg, HypergeomParams};
use crate::poly::{antidifference, is_nonneg_integer, to_f64, Polynomial, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoherentKind {
    BarutGirardello,
    Perelomov,
}

/// Unnormalized coefficients with `c_0 = 1`; the state is `norm_constant * Σ c_n |n>`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoherentState {
    pub kind: CoherentKind,
    #[serde(with = "crate::qmap")]
    pub rep_labels: BTreeMap<String, Q>,
    pub parameter: Complex64,
    pub coefficients: Vec<Complex64>,
    pub norm_constant: f64,
    pub truncation: usize,
    /// Estimate of the probability mass beyond the truncation.
    pub tail_bound: f64,
}

impl CoherentState {
    pub fn normalized(&self) -> Vec<Complex64> {
        self.coefficients.iter().map(|c| c * self.norm_constant).collect()
    }
}

fn norm(c: &[Complex64]) -> f64 {
    c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigenstate of N- with eigenvalue `alpha`. The expansion stops once the
/// last kept term satisfies `|alpha c_T| / ||c|| < tol`, which is exactly the
/// eigen-residual of the truncated vector.
pub fn bg_state(rep: &LadderRep, alpha: Complex64, tol: f64) -> Result<CoherentState> {
    if !rep.truncated {
        return Err(Error::FiniteRep);
    }
    let mut c = vec![Complex64::new(1.0, 0.0)];
    loop {
        let last = *c.last().unwrap();
        let nrm = norm(&c);
        if (alpha * last).norm() / nrm < tol {
            break;
        }
        let n = c.len() - 1;
        if n >= rep.lower_amps.len() {
            return Err(Error::NonConvergence(format!(
                "coefficients still at {:.3e} after {} states",
                last.norm() / nrm,
                c.len()
            )));
        }
        c.push(alpha * last / rep.lower_amps[n]);
    }
    let nrm = norm(&c);
    let n = c.len() - 1;
    // Geometric bound on the dropped mass, valid once amplitudes grow.
    let tail_bound = match rep.lower_amps.get(n) {
        Some(a) if alpha.norm() < *a => {
            let (ratio, next) = (alpha.norm() / a, (alpha * c[n]).norm() / (a * nrm));
            next * next / (1.0 - ratio * ratio)
        }
        _ => f64::INFINITY,
    };
    Ok(CoherentState {
        kind: CoherentKind::BarutGirardello,
        rep_labels: rep.labels.clone(),
        parameter: alpha,
        truncation: c.len(),
        norm_constant: 1.0 / nrm,
        coefficients: c,
        tail_bound,
    })
}

/// `e^{γ N+} |0>`: `c_n = γ^n Π_{i<n} raise_i / n!`. Truncated reps need the
/// ratio `|γ| raise_n / (n+1)` to fall below 1 at the cutoff.
pub fn perelomov_state(rep: &LadderRep, gamma: Complex64) -> Result<CoherentState> {
    let mut c = vec![Complex64::new(1.0, 0.0)];
    for (i, a) in rep.raise_amps.iter().enumerate() {
        let next = c[i] * gamma * *a / (i + 1) as f64;
        c.push(next);
    }
    let mut tail_bound = 0.0;
    if rep.truncated && gamma.norm() > 0.0 {
        let n = rep.raise_amps.len();
        let ratio = |i: usize| gamma.norm() * rep.raise_amps[i] / (i + 1) as f64;
        let r_last = ratio(n - 1);
        // Growth exponent of the ratio: positive means zero radius of convergence.
        let growth = if n >= 3 {
            (r_last / ratio(n - 2)).ln() / (n as f64 / (n - 1) as f64).ln()
        } else {
            0.0
        };
        if r_last >= 1.0 || growth > 0.25 {
            return Err(Error::Divergence(format!("ratio {r_last:.3} at the cutoff for |γ| = {}", gamma.norm())));
        }
        let nrm = norm(&c);
        let last = c[n].norm() / nrm;
        tail_bound = last * last * r_last * r_last / (1.0 - r_last * r_last);
    }
    let nrm = norm(&c);
    Ok(CoherentState {
        kind: CoherentKind::Perelomov,
        rep_labels: rep.labels.clone(),
        parameter: gamma,
        truncation: c.len(),
        norm_constant: 1.0 / nrm,
        coefficients: c,
        tail_bound,
    })
}

/// Relative eigen-residual `||N- v - α v|| / ||v||` on the rep's matrices.
pub fn bg_eigen_residual(rep: &LadderRep, state: &CoherentState) -> f64 {
    let c = &state.coefficients;
    let mut r = 0.0;
    for n in 0..c.len() {
        let lowered = if n + 1 < c.len() { c[n + 1] * rep.lower_amps[n] } else { Complex64::new(0.0, 0.0) };
        r += (lowered - state.parameter * c[n]).norm_sqr();
    }
    r.sqrt() / norm(c)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MapResult {
    pub matrix: DMatrix<f64>,
    pub report: VerificationReport,
}

fn casimir(rep: &LadderRep, f: &Polynomial) -> f64 {
    casimir_spread(rep, f).0
}

/// `P~+ = P+ F(C, P0)` with `F = (P0 + α)/(C - g(P0))`, `α = 1 - c_0` so that
/// `(P0 + α)` is 1 on the vacuum. Then `[P-, P~+] = I` on interior rows.
pub fn canonical_conjugate(rep: &LadderRep, f: &Polynomial) -> Result<MapResult> {
    let g = antidifference(f);
    let c = casimir(rep, f);
    let alpha = 1.0 - rep.n0_diag[0];
    let mut fvals = Vec::with_capacity(rep.dim);
    for m in 0..rep.dim {
        let cm = rep.n0_diag[m];
        let den = c - g.eval_f64(cm);
        if den.abs() <= 1e-10 * (1.0 + c.abs()) {
            return Err(Error::Pole(m));
        }
        fvals.push((cm + alpha) / den);
    }
    let mut pt = DMatrix::zeros(rep.dim, rep.dim);
    for m in 0..rep.dim - 1 {
        pt[(m + 1, m)] = rep.raise_amps[m] * fvals[m];
    }
    let lower = rep.lower_matrix();
    let comm = &lower * &pt - &pt * &lower - DMatrix::identity(rep.dim, rep.dim);
    let rows = rep.dim - 1;
    let mut report = VerificationReport::new();
    report.check("[P-,P~+]-I", max_rows(&comm, rows), 1e-10);
    Ok(MapResult { matrix: pt, report })
}

fn max_rows(m: &DMatrix<f64>, rows: usize) -> f64 {
    let mut r = 0.0f64;
    for i in 0..rows {
        for j in 0..m.ncols() {
            r = r.max(m[(i, j)].abs());
        }
    }
    r
}

/// `ε` that makes the vacuum row of `[P+, P̄-] = 2λP0` hold.
pub fn vacuum_epsilon(rep: &LadderRep, lambda: f64) -> f64 {
    let c0 = rep.n0_diag[0];
    lambda * (c0 * c0 - c0)
}

/// `P̄- = P- G(C, P0)` with `G = (-λ(P0² - P0) + ε)/(C - g(P0 - 1))`, so that
/// `[P+, P̄-] = 2λ P0`. `epsilon = None` uses the vacuum solve. The top row
/// of a finite or truncated rep is reported separately.
pub fn deformation_map(rep: &LadderRep, f: &Polynomial, lambda: f64, epsilon: Option<f64>) -> Result<MapResult> {
    if lambda != 1.0 && lambda != -1.0 {
        return Err(Error::Precondition("lambda must be +1 or -1".into()));
    }
    let eps = epsilon.unwrap_or_else(|| vacuum_epsilon(rep, lambda));
    let g = antidifference(f);
    let c = casimir(rep, f);
    let mut pb = DMatrix::zeros(rep.dim, rep.dim);
    for m in 1..rep.dim {
        let cm = rep.n0_diag[m];
        let den = c - g.eval_f64(cm - 1.0);
        if den.abs() <= 1e-10 * (1.0 + c.abs()) {
            return Err(Error::Pole(m));
        }
        pb[(m - 1, m)] = rep.lower_amps[m - 1] * (-lambda * (cm * cm - cm) + eps) / den;
    }
    let raise = rep.raise_matrix();
    let mut comm = &raise * &pb - &pb * &raise;
    for m in 0..rep.dim {
        comm[(m, m)] -= 2.0 * lambda * rep.n0_diag[m];
    }
    let scale = rep.n0_diag.iter().fold(1.0f64, |s, v| s.max(v.abs()));
    let mut report = VerificationReport::new();
    report.check("[P+,P̄-]-2λP0", max_rows(&comm, rep.dim - 1) / scale, 1e-10);
    let top = (0..rep.dim).map(|j| comm[(rep.dim - 1, j)].abs()).fold(0.0, f64::max);
    report.check("top row (informational)", top / scale, f64::INFINITY);
    Ok(MapResult { matrix: pb, report })
}

/// Gauss–Legendre nodes and weights on [-1, 1] (Golub–Welsch).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut j = DMatrix::zeros(n, n);
    for i in 1..n {
        let b = i as f64 / ((4 * i * i - 1) as f64).sqrt();
        j[(i, i - 1)] = b;
        j[(i - 1, i)] = b;
    }
    let eig = SymmetricEigen::new(j);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| (eig.eigenvalues[i], 2.0 * eig.eigenvectors[(0, i)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Composite Gauss–Legendre on [a, b] with `panels` panels of `order` nodes.
pub fn integrate(fun: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize, order: usize) -> f64 {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let part: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * fun(mid + 0.5 * h * xi)).sum();
        total += 0.5 * h * part;
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FiniteMeasure {
    pub k: f64,
    /// `2l - k`, the top index.
    pub top: usize,
    pub prefactor: f64,
}

impl FiniteMeasure {
    /// Radial weight in `y = 1/|γ|²`, angular average already taken.
    pub fn density(&self, y: f64) -> Result<f64> {
        let d = self.top as f64;
        let poly = hypergeom(
            &HypergeomParams { upper: vec![-d], lower: vec![1.0 - d - 2.0 * self.k], argument: y },
            self.top + 2,
            0.0,
        )?;
        Ok(self.prefactor * poly * kummer_neg(d + 2.0, d + 2.0 * self.k + 1.0, y)?)
    }
}

/// Integrates `|γ><γ|` against the confluent-hypergeometric measure on a
/// finite Q-(1,1) irrep and reports the largest deviation from the identity.
/// The radial variable is `y = |α|²` with `α = 1/γ`, mapped to `t = y/(1+y)`.
pub fn identity_check_finite(rep: &LadderRep, quadrature_points: usize) -> Result<VerificationReport> {
    let k = rep.label("k").ok_or_else(|| Error::InvalidLabel("missing label k".into()))?;
    let l = rep.label("l").ok_or_else(|| Error::InvalidLabel("missing label l".into()))?;
    let top_q = Q::from_integer(2) * l - k;
    if !is_nonneg_integer(&top_q) || rep.truncated {
        return Err(Error::InvalidLabel(format!("k={k}, l={l}: measure does not terminate")));
    }
    let top = top_q.to_integer() as usize;
    if rep.dim != top + 1 {
        return Err(Error::ShapeMismatch(format!("dim {} for top index {top}", rep.dim)));
    }
    let kf = to_f64(&k);
    let d = top as f64;
    let measure = FiniteMeasure { k: kf, top, prefactor: (d + 1.0) / (d + 2.0 * kf) };
    let printed = FiniteMeasure { prefactor: (d + 1.0) / (d + 2.0 * kf + 1.0), ..measure };

    // |<n|γ>|² = b_n |γ|^{2n} / Σ b_m |γ|^{2m}, b_n = Π raise² / n!².
    let mut b = vec![1.0f64];
    for (i, a) in rep.raise_amps.iter().enumerate() {
        b.push(b[i] * a * a / ((i + 1) as f64).powi(2));
    }
    let order = 20;
    let panels = quadrature_points.div_ceil(order).max(1);
    let mut worst = 0.0f64;
    let mut worst_printed = 0.0f64;
    let mut failure = None;
    for n in 0..rep.dim {
        let integrand = |m: &FiniteMeasure, t: f64| -> f64 {
            let y = t / (1.0 - t);
            let jac = 1.0 / ((1.0 - t) * (1.0 - t));
            let den: f64 = (0..=top).map(|j| b[j] * y.powi((top - j) as i32)).sum();
            let p = b[n] * y.powi((top - n) as i32) / den;
            match m.density(y) {
                Ok(v) => p * v * jac,
                Err(_) => f64::NAN,
            }
        };
        let v = integrate(|t| integrand(&measure, t), 0.0, 1.0, panels, order);
        let vp = integrate(|t| integrand(&printed, t), 0.0, 1.0, panels, order);
        if !v.is_finite() {
            failure = Some(n);
        }
        worst = worst.max((v - 1.0).abs());
        worst_printed = worst_printed.max((vp - 1.0).abs());
    }
    if let Some(n) = failure {
        return Err(Error::NonConvergence(format!("measure evaluation failed for state {n}")));
    }
    let mut report = VerificationReport::new();
    report.check("resolution of identity", worst, 1e-6);
    if worst_printed > 1e-6 {
        report.discrepancy(
            "finite-measure prefactor",
            "(2l-k+1)/(2l+k+1)",
            "(2l-k+1)/(2l+k)",
            worst_printed,
        );
    }
    Ok(report)
}

/// Overlap matrix `<n|ρ|m>` of a normalized state, used by callers that
/// want the full projector.
pub fn density_matrix(state: &CoherentState) -> DMatrix<Complex64> {
    let v = DVector::from_vec(state.normalized());
    &v * v.adjoint()
}
