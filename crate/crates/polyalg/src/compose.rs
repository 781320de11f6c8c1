//! Composition of two ladder algebras: `Π± = P±(L) P±(R)` on the subspace
//! where `(P0(L) - P0(R))/2` takes a fixed value. Orders m and n combine to m+n+1.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use std::collections::BTreeMap;

use crate::algebra::LadderRep;
use crate::error::{Error, Result};
use crate::poly::{to_f64, Q};

/// Harmonic-oscillator ladder, `N0 = n`, `<n+1|a†|n> = sqrt(n+1)`.
pub fn boson_rep(cutoff: usize) -> LadderRep {
    let n0 = (0..cutoff).map(|n| n as f64).collect();
    let amps = (1..cutoff).map(|n| (n as f64).sqrt()).collect();
    LadderRep::new("boson", BTreeMap::new(), n0, amps, true).expect("cutoff >= 1")
}

/// su(2) spin-j rep with `N0 = m`.
pub fn su2_rep(j: Q) -> Result<LadderRep> {
    let jf = to_f64(&j);
    let dim = (2.0 * jf).round() as usize + 1;
    let n0: Vec<f64> = (0..dim).map(|i| i as f64 - jf).collect();
    let amps = n0[..dim - 1].iter().map(|m| ((jf - m) * (jf + m + 1.0)).sqrt()).collect();
    LadderRep::new("su2", BTreeMap::from([("j".to_string(), j)]), n0, amps, false)
}

/// su(1,1) positive discrete series with `N0 = k + n`.
pub fn su11_rep(k: Q, cutoff: usize) -> Result<LadderRep> {
    let kf = to_f64(&k);
    let n0 = (0..cutoff).map(|n| kf + n as f64).collect();
    let amps = (0..cutoff.saturating_sub(1)).map(|n| ((n as f64 + 1.0) * (n as f64 + 2.0 * kf)).sqrt()).collect();
    LadderRep::new("su11", BTreeMap::from([("k".to_string(), k)]), n0, amps, true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComposedAlgebra {
    pub left: LadderRep,
    pub right: LadderRep,
    pub pi_const: f64,
    pub pi0_diag: Vec<f64>,
    /// Basis pairs (left index, right index) of the constrained subspace.
    pub pairs: Vec<(usize, usize)>,
    pub product_rep: LadderRep,
}

pub fn compose(left: &LadderRep, right: &LadderRep, pi_value: Q) -> Result<ComposedAlgebra> {
    let two_pi = 2.0 * to_f64(&pi_value);
    // j - i is fixed by c_L(i) - c_R(j) = 2π with unit spacing on both sides.
    let shift = left.n0_diag[0] - right.n0_diag[0] - two_pi;
    let offset = shift.round();
    if (shift - offset).abs() > 1e-9 {
        return Err(Error::EmptySubspace(format!("2π = {two_pi} is off the N0 lattice")));
    }
    let offset = offset as i64;
    let i0 = (-offset).max(0) as usize;
    let mut pairs = Vec::new();
    let mut i = i0;
    loop {
        let j = i as i64 + offset;
        if i >= left.dim || j < 0 || j as usize >= right.dim {
            break;
        }
        pairs.push((i, j as usize));
        i += 1;
    }
    if pairs.is_empty() {
        return Err(Error::EmptySubspace("no index pair satisfies the constraint".into()));
    }
    let &(il, jl) = pairs.last().unwrap();
    let truncated = (left.truncated && il + 1 == left.dim) || (right.truncated && jl + 1 == right.dim);
    let n0: Vec<f64> = pairs.iter().map(|&(i, j)| 0.5 * (left.n0_diag[i] + right.n0_diag[j])).collect();
    let amps: Vec<f64> = pairs
        .windows(2)
        .map(|w| left.raise_amps[w[0].0] * right.raise_amps[w[0].1])
        .collect();
    let pi_diag: Vec<f64> = pairs.iter().map(|&(i, j)| 0.5 * (left.n0_diag[i] - right.n0_diag[j])).collect();
    let spread = pi_diag.iter().map(|p| (p - 0.5 * two_pi).abs()).fold(0.0, f64::max);
    if spread > 1e-12 * (1.0 + two_pi.abs()) {
        return Err(Error::Precondition(format!("difference operator varies by {spread:e}")));
    }
    let mut labels = BTreeMap::new();
    for (side, rep) in [("L", left), ("R", right)] {
        for (k, v) in &rep.labels {
            labels.insert(format!("{side}.{k}"), *v);
        }
    }
    labels.insert("pi".into(), pi_value);
    let family = format!("{}x{}", left.family, right.family);
    let product_rep = LadderRep::new(&family, labels, n0.clone(), amps, truncated)?;
    Ok(ComposedAlgebra {
        left: left.clone(),
        right: right.clone(),
        pi_const: 0.5 * two_pi,
        pi0_diag: n0,
        pairs,
        product_rep,
    })
}

/// Diagonal of `[N+, N-]` on interior rows.
pub fn bracket_diagonal(rep: &LadderRep) -> Vec<f64> {
    (0..rep.interior_rows())
        .map(|i| {
            let down = if i == 0 { 0.0 } else { rep.lower_amps[i - 1] * rep.raise_amps[i - 1] };
            let up = if i < rep.dim - 1 { rep.raise_amps[i] * rep.lower_amps[i] } else { 0.0 };
            down - up
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fit {
    /// Highest power with a non-negligible coefficient.
    pub degree: usize,
    /// Monomial coefficients, lowest first.
    pub coefficients: Vec<f64>,
    /// Max deviation divided by `max(1, max|y|)`.
    pub residual: f64,
}

/// Least-squares polynomial fit of degree `max_degree` through `(x, y)`,
/// done on abscissae scaled to [-1, 1] with QR, then mapped back.
pub fn polyfit(x: &[f64], y: &[f64], max_degree: usize) -> Result<Fit> {
    if x.len() < max_degree + 1 {
        return Err(Error::Underdetermined { points: x.len(), degree: max_degree });
    }
    let (lo, hi) = x.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
    let mid = 0.5 * (lo + hi);
    let half = (0.5 * (hi - lo)).max(1.0);
    let a = DMatrix::from_fn(x.len(), max_degree + 1, |r, c| ((x[r] - mid) / half).powi(c as i32));
    let b = DVector::from_column_slice(y);
    let qr = a.clone().qr();
    let rhs = qr.q().transpose() * &b;
    let scaled = qr
        .r()
        .solve_upper_triangular(&rhs)
        .ok_or(Error::Underdetermined { points: x.len(), degree: max_degree })?;
    let fitted = &a * &scaled;
    let ymax = y.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let residual = (fitted - &b).amax() / ymax;
    // Expand Σ s_c ((x - mid)/half)^c into monomials.
    let mut coefficients = vec![0.0; max_degree + 1];
    for (c, sc) in scaled.iter().enumerate() {
        let mut binom = 1.0;
        for p in 0..=c {
            if p > 0 {
                binom = binom * (c - p + 1) as f64 / p as f64;
            }
            coefficients[p] += sc * binom * (-mid).powi((c - p) as i32) / half.powi(c as i32);
        }
    }
    let scale = coefficients.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let degree = (0..=max_degree).rev().find(|&d| coefficients[d].abs() > 1e-8 * scale.max(1.0)).unwrap_or(0);
    Ok(Fit { degree, coefficients, residual })
}

/// Smallest degree whose fit of the bracket diagonal is exact to 1e-9.
pub fn rep_order(rep: &LadderRep) -> Result<usize> {
    let y = bracket_diagonal(rep);
    let x = &rep.n0_diag[..y.len()];
    for d in 0..y.len() {
        let fit = polyfit(x, &y, d)?;
        if fit.residual < 1e-9 {
            return Ok(d);
        }
    }
    Err(Error::Underdetermined { points: y.len(), degree: y.len() })
}

/// Fits the composed bracket against Π0 up to degree m+n+1.
pub fn fit_order(comp: &ComposedAlgebra) -> Result<Fit> {
    let m = rep_order(&comp.left)?;
    let n = rep_order(&comp.right)?;
    let max_degree = m + n + 1;
    let y = bracket_diagonal(&comp.product_rep);
    if y.len() < max_degree + 2 {
        return Err(Error::Underdetermined { points: y.len(), degree: max_degree });
    }
    polyfit(&comp.pi0_diag[..y.len()], &y, max_degree)
}
