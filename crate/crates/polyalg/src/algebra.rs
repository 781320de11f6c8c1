//! Abstract polynomial algebras, ladder representations and closure checks.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{antidifference, to_f64, Polynomial, Q};

/// `[N0, N±] = ±N±`, `[N+, N-] = f(N0)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub order: usize,
    pub f: Polynomial,
    #[serde(with = "crate::qmap")]
    pub central_values: BTreeMap<String, Q>,
}

impl AlgebraSpec {
    pub fn new(f: Polynomial, central_values: BTreeMap<String, Q>) -> Self {
        AlgebraSpec { order: f.degree(), f, central_values }
    }

    /// Raising-first convention: `[a†, a] = -1`.
    pub fn heisenberg() -> Self {
        Self::new(Polynomial::from_ints(&[-1]), BTreeMap::new())
    }

    pub fn su2() -> Self {
        Self::new(Polynomial::from_ints(&[0, 2]), BTreeMap::new())
    }

    pub fn su11() -> Self {
        Self::new(Polynomial::from_ints(&[0, -2]), BTreeMap::new())
    }

    pub fn g(&self) -> Polynomial {
        antidifference(&self.f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<usize> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }
}

/// Diagonal N0 plus one-step raising and lowering amplitudes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LadderRep {
    pub family: String,
    pub dim: usize,
    #[serde(with = "crate::qmap")]
    pub labels: BTreeMap<String, Q>,
    pub n0_diag: Vec<f64>,
    pub raise_amps: Vec<f64>,
    pub lower_amps: Vec<f64>,
    pub truncated: bool,
}

impl LadderRep {
    pub fn new(
        family: &str,
        labels: BTreeMap<String, Q>,
        n0_diag: Vec<f64>,
        raise_amps: Vec<f64>,
        truncated: bool,
    ) -> Result<Self> {
        let rep = LadderRep {
            family: family.to_string(),
            dim: n0_diag.len(),
            labels,
            lower_amps: raise_amps.clone(),
            n0_diag,
            raise_amps,
            truncated,
        };
        rep.check_shape()?;
        Ok(rep)
    }

    pub fn check_shape(&self) -> Result<()> {
        if self.dim == 0 || self.n0_diag.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "dim {} with {} diagonal entries",
                self.dim,
                self.n0_diag.len()
            )));
        }
        if self.raise_amps.len() != self.dim - 1 || self.lower_amps.len() != self.dim - 1 {
            return Err(Error::ShapeMismatch("amplitude vectors must have length dim-1".into()));
        }
        Ok(())
    }

    pub fn label(&self, name: &str) -> Option<Q> {
        self.labels.get(name).copied()
    }

    /// First `dim` states of this representation, marked truncated.
    pub fn truncate(&self, dim: usize) -> Result<LadderRep> {
        if dim == 0 || dim > self.dim {
            return Err(Error::Precondition(format!("truncation {dim} outside 1..={}", self.dim)));
        }
        let mut out = self.clone();
        out.dim = dim;
        out.n0_diag.truncate(dim);
        out.raise_amps.truncate(dim - 1);
        out.lower_amps.truncate(dim - 1);
        out.truncated = self.truncated || dim < self.dim;
        Ok(out)
    }

    pub fn n0_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.n0_diag.clone()))
    }

    pub fn raise_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, a) in self.raise_amps.iter().enumerate() {
            m[(i + 1, i)] = *a;
        }
        m
    }

    pub fn lower_matrix(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (i, a) in self.lower_amps.iter().enumerate() {
            m[(i, i + 1)] = *a;
        }
        m
    }

    /// Rows whose commutator stencil stays inside the cutoff.
    pub fn interior_rows(&self) -> usize {
        if self.truncated {
            self.dim - 1
        } else {
            self.dim
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// A printed closed form that disagrees with the verified computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub item: String,
    pub printed: String,
    pub computed: String,
    pub deviation: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    #[serde(default)]
    pub discrepancies: Vec<Discrepancy>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn check(&mut self, name: impl Into<String>, residual: f64, tolerance: f64) -> bool {
        let passed = residual <= tolerance;
        self.checks.push(Check { name: name.into(), residual, tolerance, passed });
        passed
    }

    /// A boolean condition recorded as residual 0 or 1.
    pub fn require(&mut self, name: impl Into<String>, ok: bool) -> bool {
        self.check(name, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn discrepancy(
        &mut self,
        item: impl Into<String>,
        printed: impl Into<String>,
        computed: impl Into<String>,
        deviation: f64,
    ) {
        self.discrepancies.push(Discrepancy {
            item: item.into(),
            printed: printed.into(),
            computed: computed.into(),
            deviation,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.discrepancies.extend(other.discrepancies);
    }

    pub fn residual(&self, name: &str) -> Option<f64> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.residual)
    }
}

/// Diagonal of `C = N+N- + g(N0 - 1)` with `g = antidifference(f)`.
pub fn casimir_on_rep(rep: &LadderRep, f: &Polynomial) -> Vec<f64> {
    let g = antidifference(f);
    (0..rep.dim)
        .map(|i| {
            let pm = if i == 0 { 0.0 } else { rep.raise_amps[i - 1] * rep.lower_amps[i - 1] };
            pm + g.eval_f64(rep.n0_diag[i] - 1.0)
        })
        .collect()
}

/// Mean and relative spread of the Casimir diagonal over interior rows.
/// The spread is `max|C_i - mean| / (1 + max(|mean|, max N+N-))`: the
/// diagonal is a difference of two large terms for high-order reps, so the
/// size of those terms sets the rounding floor.
pub fn casimir_spread(rep: &LadderRep, f: &Polynomial) -> (f64, f64) {
    let values = casimir_on_rep(rep, f);
    let rows = rep.interior_rows();
    let v = &values[..rows];
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let dev = v.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max);
    let terms = (1..rows)
        .map(|i| (rep.raise_amps[i - 1] * rep.lower_amps[i - 1]).abs())
        .fold(0.0, f64::max);
    (mean, dev / (1.0 + mean.abs().max(terms)))
}

fn max_abs(m: &DMatrix<f64>, rows: usize) -> f64 {
    let mut r = 0.0f64;
    for i in 0..rows {
        for j in 0..m.ncols() {
            r = r.max(m[(i, j)].abs());
        }
    }
    r
}

/// Checks `[N0,N±] = ±N±`, unitarity and `[N+,N-] = f(N0)` in max-entry norm.
/// The last row is skipped for truncated reps. The f-residual is divided by
/// `max(1, max|f(N0)|)` so that large-amplitude reps are judged by relative
/// rounding error.
pub fn verify_closure(rep: &LadderRep, f: &Polynomial, tol: f64) -> VerificationReport {
    let mut report = VerificationReport::new();
    let n0 = rep.n0_matrix();
    let np = rep.raise_matrix();
    let nm = rep.lower_matrix();
    let rows = rep.interior_rows();

    let c_plus = &n0 * &np - &np * &n0 - &np;
    let c_minus = &n0 * &nm - &nm * &n0 + &nm;
    report.check("[N0,N+]-N+", max_abs(&c_plus, rep.dim), tol);
    report.check("[N0,N-]+N-", max_abs(&c_minus, rep.dim), tol);

    let unit = rep
        .raise_amps
        .iter()
        .zip(&rep.lower_amps)
        .map(|(a, b)| if *a < 0.0 || *b < 0.0 { f64::INFINITY } else { (a - b).abs() })
        .fold(0.0, f64::max);
    report.check("unitarity", unit, tol);

    let mut bracket = &np * &nm - &nm * &np;
    let mut scale = 1.0f64;
    for i in 0..rep.dim {
        let fv = f.eval_f64(rep.n0_diag[i]);
        if i < rows {
            scale = scale.max(fv.abs());
        }
        bracket[(i, i)] -= fv;
    }
    report.check("[N+,N-]-f(N0)", max_abs(&bracket, rows) / scale, tol);
    report
}

pub fn polynomial_f64(p: &Polynomial) -> Vec<f64> {
    p.coefficients().iter().map(to_f64).collect()
}
