//! Generic lowest-weight ladder built from a factorized radicand.
//!
//! A state with index n has N0 = c0 + n and `<n+1|N+|n> = sqrt(R(n))`, where
//! R is a product of linear factors in n. The bracket then follows exactly:
//! f(c0 + n) = R(n-1) - R(n).

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::algebra::{Dim, LadderRep};
use crate::error::{Error, Result};
use crate::poly::{antidifference, qi, to_f64, Polynomial, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct LadderSpec {
    pub family: String,
    pub labels: BTreeMap<String, Q>,
    /// N0 eigenvalue at index 0.
    pub c0: Q,
    pub n_start: i128,
    /// Inclusive top index; `None` for infinite ladders.
    pub n_end: Option<i128>,
    /// Radicand factors `(a, b)` meaning `a n + b`.
    pub factors: Vec<(Q, Q)>,
}

impl LadderSpec {
    pub fn radicand(&self, n: Q) -> Q {
        self.factors.iter().fold(Q::one(), |acc, (a, b)| acc * (a * n + b))
    }

    /// R as a polynomial in the index n.
    pub fn radicand_poly(&self) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(Q::one()), |acc, (a, b)| &acc * &Polynomial::linear(*a, *b))
    }

    /// f(x) = R(x - c0 - 1) - R(x - c0).
    pub fn structure_polynomial(&self) -> Polynomial {
        let r = self.radicand_poly();
        let lo = r.shift(-self.c0 - Q::one());
        let hi = r.shift(-self.c0);
        &lo - &hi
    }

    pub fn dimension(&self) -> Dim {
        match self.n_end {
            Some(e) => Dim::Finite((e - self.n_start + 1) as usize),
            None => Dim::Infinite,
        }
    }

    pub fn n0_exact(&self, i: usize) -> Q {
        self.c0 + qi(self.n_start + i as i128)
    }

    /// Casimir value `C = N+N- + g(N0 - 1)` evaluated on the lowest state.
    pub fn casimir_exact(&self) -> Q {
        let g = antidifference(&self.structure_polynomial());
        self.radicand(qi(self.n_start - 1)) + g.eval(self.n0_exact(0) - Q::one())
    }

    /// Number of states reachable from the lowest one before `R <= 0`,
    /// scanning at most `limit` steps.
    pub fn first_violation(&self, limit: usize) -> Option<usize> {
        (0..limit).find(|&i| !self.radicand(qi(self.n_start + i as i128)).is_positive()).map(|i| i + 1)
    }

    pub fn validate(&self, needed: usize) -> Result<()> {
        if let Some(e) = self.n_end {
            if e < self.n_start {
                return Err(Error::InvalidLabel(format!(
                    "{}: empty index range {}..={}",
                    self.family, self.n_start, e
                )));
            }
            if !self.radicand(qi(e)).is_zero() {
                return Err(Error::InvalidLabel(format!("{}: top state does not close", self.family)));
            }
        }
        if !self.radicand(qi(self.n_start - 1)).is_zero() {
            return Err(Error::InvalidLabel(format!("{}: lowest state does not close", self.family)));
        }
        for i in 0..needed.saturating_sub(1) {
            let n = self.n_start + i as i128;
            let r = self.radicand(qi(n));
            if r.is_negative() {
                return Err(Error::NegativeRadicand { index: n, value: to_f64(&r) });
            }
            if r.is_zero() {
                return Err(Error::InvalidLabel(format!(
                    "{}: vanishing amplitude at index {n}, representation is reducible",
                    self.family
                )));
            }
        }
        Ok(())
    }

    pub fn build(&self, cutoff: Option<usize>) -> Result<LadderRep> {
        let (dim, truncated) = match (self.dimension(), cutoff) {
            (Dim::Finite(d), None) => (d, false),
            (Dim::Finite(d), Some(_)) => return Err(Error::CutoffNotAllowed(d)),
            (Dim::Infinite, None) => return Err(Error::CutoffRequired),
            (Dim::Infinite, Some(0)) => {
                return Err(Error::Precondition("cutoff must be positive".into()))
            }
            (Dim::Infinite, Some(c)) => (c, true),
        };
        self.validate(dim)?;
        let n0: Vec<f64> = (0..dim).map(|i| to_f64(&self.n0_exact(i))).collect();
        let amps: Vec<f64> = (0..dim - 1)
            .map(|i| to_f64(&self.radicand(qi(self.n_start + i as i128))).sqrt())
            .collect();
        LadderRep::new(&self.family, self.labels.clone(), n0, amps, truncated)
    }
}

pub fn labels(pairs: &[(&str, Q)]) -> BTreeMap<String, Q> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}
