//! Polynomial deformations of su(2) and su(1,1): ladder representations,
//! boson oracles, differential realizations, coherent states and applications.

pub mod algebra;
pub mod analytic;
pub mod applications;
pub mod boson;
pub mod coherent;
pub mod compose;
pub mod cubic;
pub mod discrepancy;
pub mod error;
pub mod hypergeom;
pub mod ladder;
pub mod poly;
pub mod quadratic;
mod qmap;

pub use algebra::{
    casimir_on_rep, casimir_spread, verify_closure, AlgebraSpec, Check, Dim, Discrepancy, LadderRep,
    VerificationReport,
};
pub use error::{Error, Result};
pub use poly::{antidifference, parse_q, q, qi, Polynomial, Q};
