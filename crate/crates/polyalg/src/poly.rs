//! Exact univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact rational scalar used for labels and polynomial coefficients.
pub type Q = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i128) -> Q {
    Q::from_integer(n)
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses "p/q", an integer, or a plain decimal with a finite expansion.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Ok(v) = s.parse::<Q>() {
        return Some(v);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.')?;
    if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let int: i128 = if int.is_empty() { 0 } else { int.parse().ok()? };
    let den = 10i128.pow(frac.len() as u32);
    let num = int * den + frac.parse::<i128>().ok()?;
    Some(Q::new(if neg { -num } else { num }, den))
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

/// True for 0, 1/2, 1, 3/2, ...
pub fn is_half_integer_nonneg(x: &Q) -> bool {
    is_nonneg_integer(&(x * qi(2)))
}

/// Coefficients are stored lowest degree first with no trailing zeros, except
/// that the zero polynomial is `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polynomial {
    #[serde(with = "crate::qmap::list")]
    coefficients: Vec<Q>,
}

impl Polynomial {
    pub fn new(mut coefficients: Vec<Q>) -> Self {
        while coefficients.len() > 1 && coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        if coefficients.is_empty() {
            coefficients.push(Q::zero());
        }
        Polynomial { coefficients }
    }

    pub fn from_ints(c: &[i128]) -> Self {
        Self::new(c.iter().map(|&v| qi(v)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `a x + b`.
    pub fn linear(a: Q, b: Q) -> Self {
        Self::new(vec![b, a])
    }

    pub fn x() -> Self {
        Self::linear(Q::one(), Q::zero())
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coefficients
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coefficients.get(i).copied().unwrap_or_else(Q::zero)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.len() == 1 && self.coefficients[0].is_zero()
    }

    pub fn eval(&self, x: Q) -> Q {
        self.coefficients
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, s: Q) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * s).collect())
    }

    /// p(a x + b).
    pub fn compose_linear(&self, a: Q, b: Q) -> Self {
        let inner = Polynomial::linear(a, b);
        self.coefficients
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| &(&acc * &inner) + &Polynomial::constant(*c))
    }

    /// p(x + s).
    pub fn shift(&self, s: Q) -> Self {
        self.compose_linear(Q::one(), s)
    }

    /// Forward differences at 0: coefficients in the falling-factorial basis,
    /// p(x) = sum_q d_q x(x-1)...(x-q+1).
    pub fn falling_factorial_coefficients(&self) -> Vec<Q> {
        let n = self.degree() + 1;
        let mut vals: Vec<Q> = (0..n).map(|i| self.eval(qi(i as i128))).collect();
        let mut out = Vec::with_capacity(n);
        let mut fact = Q::one();
        for qd in 0..n {
            if qd > 0 {
                fact *= qi(qd as i128);
            }
            out.push(vals[0] / fact);
            for i in 0..vals.len().saturating_sub(1) {
                vals[i] = vals[i + 1] - vals[i];
            }
            vals.pop();
        }
        out
    }

    /// Exact Lagrange interpolation through distinct abscissae.
    pub fn interpolate(points: &[(Q, Q)]) -> Self {
        let mut acc = Polynomial::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Polynomial::constant(*yi);
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    let d = xi - xj;
                    basis = &basis * &Polynomial::linear(Q::one() / d, -xj / d);
                }
            }
            acc = &acc + &basis;
        }
        acc
    }

    pub fn to_f64_vec(&self) -> Vec<f64> {
        self.coefficients.iter().map(to_f64).collect()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        let n = self.coefficients.len().max(o.coefficients.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        let n = self.coefficients.len().max(o.coefficients.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        let mut out = vec![Q::zero(); self.coefficients.len() + o.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in o.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-Q::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// Returns g with g(x) - g(x-1) = f(x) and g(0) = 0.
pub fn antidifference(f: &Polynomial) -> Polynomial {
    let d = f.degree() + 1;
    let mut points = Vec::with_capacity(d + 1);
    let mut acc = Q::zero();
    points.push((Q::zero(), acc));
    for t in 1..=d as i128 {
        acc += f.eval(qi(t));
        points.push((qi(t), acc));
    }
    Polynomial::interpolate(&points)
}
