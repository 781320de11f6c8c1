//! Generalized hypergeometric series pFq and a large-argument 1F1.

use num_traits::{One, Signed, Zero};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};
use crate::poly::{is_integer, qi, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct HypergeomParams {
    pub upper: Vec<f64>,
    pub lower: Vec<f64>,
    pub argument: f64,
}

fn nonpos_int(v: f64) -> bool {
    v <= 0.0 && v == v.round()
}

/// Index at which the series stops because an upper parameter hits zero.
fn termination(upper: &[f64]) -> Option<usize> {
    upper.iter().filter(|a| nonpos_int(**a)).map(|a| (-a) as usize).min()
}

/// Partial sum of pFq with ratio-test stopping; terminating series are summed
/// in full.
pub fn hypergeom(p: &HypergeomParams, max_terms: usize, tol: f64) -> Result<f64> {
    let stop = termination(&p.upper);
    if let Some(b) = p.lower.iter().find(|b| nonpos_int(**b)) {
        if stop.is_none_or(|n| n as f64 >= -b + 1.0) {
            return Err(Error::Precondition(format!("lower parameter {b} is a pole of the series")));
        }
    }
    let (np, nq) = (p.upper.len(), p.lower.len());
    if stop.is_none() && p.argument != 0.0 {
        if np > nq + 1 {
            return Err(Error::Divergence(format!("{np}F{nq} with nonterminating upper parameters")));
        }
        if np == nq + 1 && p.argument.abs() >= 1.0 {
            return Err(Error::Divergence(format!("{np}F{nq} outside the unit disk")));
        }
    }
    let x = p.argument;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..max_terms {
        if stop == Some(n) {
            return Ok(sum);
        }
        let num: f64 = p.upper.iter().map(|a| a + n as f64).product();
        let den: f64 = p.lower.iter().map(|b| b + n as f64).product();
        let ratio = num / den * x / (n + 1) as f64;
        term *= ratio;
        sum += term;
        if stop.is_none() && term.abs() <= tol * sum.abs() && ratio.abs() < 0.5 {
            return Ok(sum);
        }
        if term == 0.0 {
            return Ok(sum);
        }
    }
    if stop.is_some() {
        return Ok(sum);
    }
    Err(Error::NonConvergence(format!("no convergence within {max_terms} terms")))
}

/// Terminating pFq in exact rational arithmetic.
pub fn hypergeom_exact(upper: &[Q], lower: &[Q], x: Q) -> Result<Q> {
    let stop = upper
        .iter()
        .filter(|a| is_integer(a) && !a.is_positive())
        .map(|a| (-a.to_integer()) as usize)
        .min()
        .ok_or_else(|| Error::Precondition("exact evaluation needs a terminating series".into()))?;
    let mut term = Q::one();
    let mut sum = Q::one();
    for n in 0..stop {
        let nn = qi(n as i128);
        let num: Q = upper.iter().map(|a| a + nn).product();
        let den: Q = lower.iter().map(|b| b + nn).product();
        if den.is_zero() {
            return Err(Error::Precondition("lower parameter is a pole of the series".into()));
        }
        term = term * num / den * x / qi(n as i128 + 1);
        sum += term;
    }
    Ok(sum)
}

/// 1F1(a; c; -x) for x >= 0, stable for large x.
///
/// Small x: Kummer's transform e^{-x} 1F1(c-a; c; x). Large x: the algebraic
/// asymptotic series Γ(c)/Γ(c-a) x^{-a} Σ (a)_s (a-c+1)_s / s! x^{-s},
/// truncated at its smallest term. The dropped part is O(e^{-x}).
pub fn kummer_neg(a: f64, c: f64, x: f64) -> Result<f64> {
    if x < 0.0 {
        return Err(Error::Precondition("kummer_neg needs x >= 0".into()));
    }
    let ca = c - a;
    if x <= 40.0 || nonpos_int(ca) {
        let p = HypergeomParams { upper: vec![ca], lower: vec![c], argument: x };
        return Ok((-x).exp() * hypergeom(&p, 100_000, 1e-17)?);
    }
    let pre = gamma(c) / gamma(ca) * x.powf(-a);
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for s in 0..200 {
        let next = term * (a + s as f64) * (a - c + 1.0 + s as f64) / ((s + 1) as f64 * x);
        if next == 0.0 || next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    Ok(pre * sum)
}
