//! The four quadratic classes Q-(2), Q+(2), Q-(1,1), Q+(1,1).

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::{Dim, LadderRep};
use crate::error::{Error, Result};
use crate::ladder::{labels, LadderSpec};
use crate::poly::{is_half_integer_nonneg, is_nonneg_integer, qi, to_f64, Polynomial, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuadraticClass {
    QMinus2,
    QPlus2,
    QMinus11,
    QPlus11,
}

impl QuadraticClass {
    pub const ALL: [QuadraticClass; 4] = [Self::QMinus2, Self::QPlus2, Self::QMinus11, Self::QPlus11];

    pub fn tag(self) -> &'static str {
        match self {
            Self::QMinus2 => "qminus2",
            Self::QPlus2 => "qplus2",
            Self::QMinus11 => "qminus11",
            Self::QPlus11 => "qplus11",
        }
    }

    /// Name of the first label: `j` for the (2) classes, `k` for (1,1).
    pub fn spin_name(self) -> &'static str {
        match self {
            Self::QMinus2 | Self::QPlus2 => "j",
            _ => "k",
        }
    }
}

impl fmt::Display for QuadraticClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for QuadraticClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.tag() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidLabel(format!("unknown quadratic class {s}")))
    }
}

/// `spin` is j for the (2) classes and k for the (1,1) classes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadLabel {
    pub spin: Q,
    pub l: Q,
}

impl QuadLabel {
    pub fn new(spin: Q, l: Q) -> Self {
        QuadLabel { spin, l }
    }
}

fn lin(a: i128, b: Q) -> (Q, Q) {
    (qi(a), b)
}

pub fn ladder_spec(class: QuadraticClass, label: QuadLabel) -> Result<LadderSpec> {
    let QuadLabel { spin: s, l } = label;
    let one = Q::one();
    let two = qi(2);
    let bad = |why: &str| Err(Error::InvalidLabel(format!("{class} {}={s}, l={l}: {why}", class.spin_name())));
    if !is_half_integer_nonneg(&s) || !s.is_positive() {
        return bad("spin label must be one of 1/2, 1, 3/2, ...");
    }
    let family = class.tag().to_string();
    let lab = labels(&[(class.spin_name(), s), ("l", l)]);
    let spec = match class {
        QuadraticClass::QMinus2 => {
            let top = two * l + s;
            let n_end = if two * l - s >= Q::from_integer(0) {
                (two * s).to_integer()
            } else {
                if !is_nonneg_integer(&top) {
                    return bad("2l+j must be a nonnegative integer when 2l < j");
                }
                top.to_integer()
            };
            LadderSpec {
                family,
                labels: lab,
                c0: -s - l,
                n_start: 0,
                n_end: Some(n_end),
                factors: vec![lin(-1, two * s), lin(1, one), lin(-1, top)],
            }
        }
        QuadraticClass::QPlus2 => LadderSpec {
            family,
            labels: lab,
            c0: -s - l,
            n_start: 0,
            n_end: Some((two * s).to_integer()),
            factors: vec![lin(-1, two * s), lin(1, one), lin(1, one - s - two * l)],
        },
        QuadraticClass::QMinus11 => {
            let top = two * l - s;
            if !is_nonneg_integer(&top) {
                return bad("2l-k must be a nonnegative integer");
            }
            LadderSpec {
                family,
                labels: lab,
                c0: s - l,
                n_start: 0,
                n_end: Some(top.to_integer()),
                factors: vec![lin(1, two * s), lin(1, one), lin(-1, top)],
            }
        }
        QuadraticClass::QPlus11 => {
            if !is_nonneg_integer(&(s - two * l)) {
                return bad("k-2l must be a nonnegative integer");
            }
            LadderSpec {
                family,
                labels: lab,
                c0: s - l,
                n_start: 0,
                n_end: None,
                factors: vec![lin(1, two * s), lin(1, one), lin(1, s - two * l + one)],
            }
        }
    };
    Ok(spec)
}

pub fn dimension(class: QuadraticClass, label: QuadLabel) -> Result<Dim> {
    let spec = ladder_spec(class, label)?;
    let dim = spec.dimension();
    spec.validate(dim.finite().unwrap_or(2))?;
    Ok(dim)
}

pub fn build(class: QuadraticClass, label: QuadLabel, cutoff: Option<usize>) -> Result<LadderRep> {
    ladder_spec(class, label)?.build(cutoff)
}

/// The class bracket with central elements substituted (overall factor 1).
pub fn structure_polynomial(class: QuadraticClass, label: QuadLabel) -> Polynomial {
    let QuadLabel { spin: s, l } = label;
    let one = Q::one();
    let three = qi(3);
    let two = qi(2);
    let (a, b, c) = match class {
        QuadraticClass::QMinus2 => (-three, -(two * l - one), s * (s + one) + l * (l + one)),
        QuadraticClass::QPlus2 => (three, two * l + one, -(s * (s + one) + l * (l - one))),
        QuadraticClass::QMinus11 => (three, two * l - one, s * (one - s) - l * (l + one)),
        QuadraticClass::QPlus11 => (-three, -(two * l + one), -(s * (one - s) - l * (l - one))),
    };
    Polynomial::new(vec![c, b, a])
}

/// Casimir constant computed from the ladder itself (authoritative value).
pub fn casimir_exact(class: QuadraticClass, label: QuadLabel) -> Result<Q> {
    Ok(ladder_spec(class, label)?.casimir_exact())
}

pub fn casimir_value(class: QuadraticClass, label: QuadLabel) -> Result<f64> {
    casimir_exact(class, label).map(|c| to_f64(&c))
}

/// Closed-form Casimir as printed for each class. The Q-(2) form is only
/// stated for its two-dimensional j = 1/2 representation.
pub fn printed_casimir(class: QuadraticClass, label: QuadLabel) -> Option<(String, Q)> {
    let QuadLabel { spin: s, l } = label;
    let one = Q::one();
    match class {
        QuadraticClass::QPlus2 => Some((
            "(1-l)[j(j+1)-l(l+1)]".into(),
            (one - l) * (s * (s + one) - l * (l + one)),
        )),
        QuadraticClass::QMinus11 => Some((
            "(l+1)[k(1-k)+l(l-1)]".into(),
            (l + one) * (s * (one - s) + l * (l - one)),
        )),
        QuadraticClass::QPlus11 => Some(("l(l-k^2)".into(), l * (l - s * s))),
        QuadraticClass::QMinus2 if s == Q::new(1, 2) => Some((
            "(-4l^3+7l+3)/4".into(),
            (qi(-4) * l * l * l + qi(7) * l + qi(3)) / qi(4),
        )),
        QuadraticClass::QMinus2 => None,
    }
}

/// Valid labels with `spin <= max_spin` and finite dimension (or cutoff) at most `max_dim`.
pub fn label_grid(class: QuadraticClass, max_spin: i128, max_dim: usize) -> Vec<QuadLabel> {
    let mut out = Vec::new();
    for s2 in 1..=2 * max_spin {
        let s = Q::new(s2, 2);
        for l4 in -8 * max_spin..=8 * max_spin {
            let lab = QuadLabel::new(s, Q::new(l4, 4));
            if let Ok(d) = dimension(class, lab) {
                if d.finite().map_or(true, |d| d <= max_dim) {
                    out.push(lab);
                }
            }
        }
    }
    out
}
