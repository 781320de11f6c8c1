//! The ten cubic classes: pairs of su(2)/su(1,1) algebras and the
//! quadratic-times-boson (q-h) constructions.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Dim, LadderRep};
use crate::error::{Error, Result};
use crate::ladder::LadderSpec;
use crate::poly::{is_half_integer_nonneg, is_nonneg_integer, qi, to_f64, Polynomial, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicClass {
    CMinus11_11,
    CPlus11_11,
    CMinus2_2,
    CPlus2_2,
    CMinus2_11,
    CPlus2_11,
    CPlusQm1H,
    CMinusQm1H,
    CPlusQp1H,
    CMinusQp1H,
}

impl CubicClass {
    pub const ALL: [CubicClass; 10] = [
        Self::CMinus11_11,
        Self::CPlus11_11,
        Self::CMinus2_2,
        Self::CPlus2_2,
        Self::CMinus2_11,
        Self::CPlus2_11,
        Self::CPlusQm1H,
        Self::CMinusQm1H,
        Self::CPlusQp1H,
        Self::CMinusQp1H,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::CMinus11_11 => "cminus11_11",
            Self::CPlus11_11 => "cplus11_11",
            Self::CMinus2_2 => "cminus2_2",
            Self::CPlus2_2 => "cplus2_2",
            Self::CMinus2_11 => "cminus2_11",
            Self::CPlus2_11 => "cplus2_11",
            Self::CPlusQm1H => "cplus_qm1h",
            Self::CMinusQm1H => "cminus_qm1h",
            Self::CPlusQp1H => "cplus_qp1h",
            Self::CMinusQp1H => "cminus_qp1h",
        }
    }

    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Self::CMinus11_11 | Self::CPlus11_11 => &["k1", "k2", "k"],
            Self::CMinus2_2 | Self::CPlus2_2 => &["j1", "j2", "k"],
            Self::CMinus2_11 | Self::CPlus2_11 => &["j", "k1", "k"],
            _ => &["k1", "l", "k"],
        }
    }

    pub fn is_qh(self) -> bool {
        matches!(self, Self::CPlusQm1H | Self::CMinusQm1H | Self::CPlusQp1H | Self::CMinusQp1H)
    }
}

impl fmt::Display for CubicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for CubicClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| Error::InvalidLabel(format!("unknown cubic class {s}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CubicLabel {
    pub params: BTreeMap<String, Q>,
}

impl CubicLabel {
    pub fn new(pairs: &[(&str, Q)]) -> Self {
        CubicLabel { params: pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect() }
    }

    pub fn get(&self, name: &str) -> Result<Q> {
        self.params
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidLabel(format!("missing parameter {name}")))
    }
}

fn f(a: i128, b: Q) -> (Q, Q) {
    (qi(a), b)
}

fn integer_bound(class: CubicClass, what: &str, v: Q) -> Result<i128> {
    if !v.is_integer() {
        return Err(Error::InvalidLabel(format!("{class}: {what} = {v} must be an integer")));
    }
    Ok(v.to_integer())
}

fn max0(v: Q) -> Q {
    if v.is_negative() {
        Q::zero()
    } else {
        v
    }
}

pub fn ladder_spec(class: CubicClass, label: &CubicLabel) -> Result<LadderSpec> {
    let names = class.param_names();
    let p0 = label.get(names[0])?;
    let p1 = label.get(names[1])?;
    let k = label.get(names[2])?;
    let one = Q::one();
    let two = qi(2);
    let half_pos = |name: &str, v: Q| -> Result<()> {
        if is_half_integer_nonneg(&v) && v.is_positive() {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!("{class}: {name} = {v} must be one of 1/2, 1, 3/2, ...")))
        }
    };
    let half_nonneg = |name: &str, v: Q| -> Result<()> {
        if is_half_integer_nonneg(&v) {
            Ok(())
        } else {
            Err(Error::InvalidLabel(format!("{class}: {name} = {v} must be a nonnegative half-integer")))
        }
    };
    let nonneg_int = |what: &str, v: Q| -> Result<i128> {
        if is_nonneg_integer(&v) {
            Ok(v.to_integer())
        } else {
            Err(Error::InvalidLabel(format!("{class}: {what} = {v} must be a nonnegative integer")))
        }
    };

    // (c0, n_start, n_end, factors)
    let (c0, n_start, n_end, factors): (Q, Q, Option<Q>, Vec<(Q, Q)>) = match class {
        CubicClass::CMinus11_11 => {
            let (k1, k2) = (p0, p1);
            half_pos("k1", k1)?;
            half_pos("k2", k2)?;
            let top = two * k - k1 - k2;
            nonneg_int("2k-k1-k2", top)?;
            (
                k1 - k,
                Q::zero(),
                Some(top),
                vec![f(1, two * k1), f(1, one), f(-1, top), f(-1, two * k - k1 + k2 - one)],
            )
        }
        CubicClass::CPlus11_11 => {
            let (k1, k2) = (p0, p1);
            half_pos("k1", k1)?;
            half_pos("k2", k2)?;
            nonneg_int("k1-k2+2k", k1 - k2 + two * k)?;
            (
                k1 + k,
                Q::zero(),
                None,
                vec![f(1, one), f(1, two * k1), f(1, k1 - k2 + two * k + one), f(1, k1 + k2 + two * k)],
            )
        }
        CubicClass::CMinus2_2 => {
            let (j1, j2) = (p0, p1);
            half_nonneg("j1", j1)?;
            half_nonneg("j2", j2)?;
            integer_bound(class, "2k+j1+j2", two * k + j1 + j2)?;
            let lo = max0(two * k + j1 - j2);
            let hi = (two * j1).min(two * k + j1 + j2);
            (
                -k - j1,
                lo,
                Some(hi),
                vec![
                    f(1, one),
                    f(-1, two * j1),
                    f(-1, two * k + j1 + j2),
                    f(1, one - two * k - j1 + j2),
                ],
            )
        }
        CubicClass::CPlus2_2 => {
            let (j1, j2) = (p0, p1);
            half_nonneg("j1", j1)?;
            half_nonneg("j2", j2)?;
            integer_bound(class, "2k+j1+j2", two * k + j1 + j2)?;
            let lo = max0(j1 - j2 + two * k);
            let hi = (two * j1).min(j1 + j2 + two * k);
            (
                -j1 - k,
                lo,
                Some(hi),
                vec![
                    f(1, one),
                    f(-1, two * j1),
                    f(1, one - j1 + j2 - two * k),
                    f(-1, j1 + j2 + two * k),
                ],
            )
        }
        CubicClass::CMinus2_11 => {
            let (j, k1) = (p0, p1);
            half_nonneg("j", j)?;
            half_pos("k1", k1)?;
            let alt = two * k - k1 + j;
            let hi = if alt < two * j {
                integer_bound(class, "2k-k1+j", alt)?;
                alt
            } else {
                two * j
            };
            (
                -j - k,
                Q::zero(),
                Some(hi),
                vec![f(-1, two * j), f(1, one), f(-1, alt), f(-1, two * k + k1 - one + j)],
            )
        }
        CubicClass::CPlus2_11 => {
            let (j, k1) = (p0, p1);
            half_nonneg("j", j)?;
            half_pos("k1", k1)?;
            let top = j - two * k - k1;
            integer_bound(class, "j-2k-k1", top)?;
            (
                k1 + k,
                max0(-j - two * k - k1),
                Some(top),
                vec![f(-1, top), f(1, j + two * k + k1 + one), f(1, one), f(1, two * k1)],
            )
        }
        CubicClass::CPlusQm1H | CubicClass::CMinusQm1H => {
            let (k1, l) = (p0, p1);
            half_pos("k1", k1)?;
            let qtop = two * l - k1;
            nonneg_int("2l-k1", qtop)?;
            if class == CubicClass::CPlusQm1H {
                integer_bound(class, "2k+l-k1", two * k + l - k1)?;
                (
                    k1 - l - k,
                    max0(two * k + l - k1),
                    Some(qtop),
                    vec![f(1, two * k1), f(1, one), f(-1, qtop), f(1, k1 - l - two * k + one)],
                )
            } else {
                let alt = two * k - k1 + l;
                let hi = if alt < qtop {
                    integer_bound(class, "2k-k1+l", alt)?;
                    alt
                } else {
                    qtop
                };
                (
                    k1 - l - k,
                    Q::zero(),
                    Some(hi),
                    vec![f(1, two * k1), f(1, one), f(-1, qtop), f(-1, alt)],
                )
            }
        }
        CubicClass::CPlusQp1H | CubicClass::CMinusQp1H => {
            let (k1, l) = (p0, p1);
            half_pos("k1", k1)?;
            nonneg_int("k1-2l", k1 - two * l)?;
            if class == CubicClass::CPlusQp1H {
                integer_bound(class, "2k+l-k1", two * k + l - k1)?;
                (
                    k1 - l - k,
                    max0(two * k + l - k1),
                    None,
                    vec![
                        f(1, two * k1),
                        f(1, one),
                        f(1, k1 - two * l + one),
                        f(1, k1 - l - two * k + one),
                    ],
                )
            } else {
                let top = two * k - k1 + l;
                (
                    k1 - l - k,
                    Q::zero(),
                    Some(top),
                    vec![f(1, two * k1), f(1, one), f(1, k1 - two * l + one), f(-1, top)],
                )
            }
        }
    };
    let n_start = integer_bound(class, "lowest index", n_start)?;
    let n_end = match n_end {
        Some(e) => Some(integer_bound(class, "highest index", e)?),
        None => None,
    };
    if let Some(e) = n_end {
        if e < n_start {
            return Err(Error::InvalidLabel(format!("{class}: empty representation ({n_start} > {e})")));
        }
    }
    Ok(LadderSpec {
        family: class.tag().to_string(),
        labels: label.params.clone(),
        c0,
        n_start,
        n_end,
        factors,
    })
}

pub fn dimension_cubic(class: CubicClass, label: &CubicLabel) -> Result<Dim> {
    let spec = ladder_spec(class, label)?;
    let dim = spec.dimension();
    spec.validate(dim.finite().unwrap_or(2))?;
    Ok(dim)
}

pub fn build_cubic(class: CubicClass, label: &CubicLabel, cutoff: Option<usize>) -> Result<LadderRep> {
    ladder_spec(class, label)?.build(cutoff)
}

/// Exact bracket `[C+, C-] = f(C0)` implied by the representation.
pub fn structure_polynomial_cubic(class: CubicClass, label: &CubicLabel) -> Result<Polynomial> {
    Ok(ladder_spec(class, label)?.structure_polynomial())
}

pub fn casimir_exact(class: CubicClass, label: &CubicLabel) -> Result<Q> {
    Ok(ladder_spec(class, label)?.casimir_exact())
}

/// su(1,1) Casimir value k(1-k) used by the structure constants.
pub fn c_of(k: Q) -> Q {
    k * (Q::one() - k)
}

/// Higgs form `[C+,C-] = h x^3 + 2 a x` of C-(11,11) when k1 = k2.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Higgs {
    pub h: f64,
    pub a: f64,
    pub a_printed: f64,
}

pub fn higgs_reduction(label: &CubicLabel) -> Result<Higgs> {
    let k1 = label.get("k1")?;
    let k2 = label.get("k2")?;
    let k = label.get("k")?;
    if k1 != k2 {
        return Err(Error::Precondition(format!("Higgs reduction needs k1 = k2 (got {k1}, {k2})")));
    }
    let a = qi(2) * k * k - qi(2) * c_of(k1);
    let p = structure_polynomial_cubic(CubicClass::CMinus11_11, label)?;
    let expect = Polynomial::new(vec![Q::zero(), qi(2) * a, Q::zero(), qi(-4)]);
    if p != expect {
        return Err(Error::Precondition(format!("bracket {p} is not of Higgs form {expect}")));
    }
    Ok(Higgs { h: -4.0, a: to_f64(&a), a_printed: to_f64(&(qi(2) * k * k - c_of(k1))) })
}

fn half_steps(lo: i128, hi: i128) -> impl Iterator<Item = Q> {
    (2 * lo..=2 * hi).map(|v| Q::new(v, 2))
}

/// Valid labels with parameters up to `max` and dimension (or cutoff) at most `max_dim`.
pub fn label_grid(class: CubicClass, max: i128, max_dim: usize) -> Vec<CubicLabel> {
    let names = class.param_names();
    let mut out = Vec::new();
    for a in half_steps(0, max) {
        let bs: Vec<Q> = if class.is_qh() {
            (-4 * max..=4 * max).map(|v| Q::new(v, 4)).collect()
        } else {
            half_steps(-max, max).collect()
        };
        for &b in &bs {
            // q-h labels put k on an eighth-integer lattice.
            let den: i128 = if class.is_qh() { 8 } else { 4 };
            for kn in -den * max..=den * max {
                let k = Q::new(kn, den);
                let lab = CubicLabel::new(&[(names[0], a), (names[1], b), (names[2], k)]);
                if let Ok(d) = dimension_cubic(class, &lab) {
                    if d.finite().map_or(true, |d| d <= max_dim) {
                        out.push(lab);
                    }
                }
            }
        }
    }
    out
}
