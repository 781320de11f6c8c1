//! Truncated multi-mode Fock spaces, sparse operators and the bosonic
//! realizations used as independent checks of the ladder representations.

use std::collections::BTreeMap;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_traits::One;

use crate::algebra::{LadderRep, VerificationReport};
use crate::cubic::{CubicClass, CubicLabel};
use crate::error::{Error, Result};
use crate::poly::{qi, to_f64, Q};
use crate::quadratic::{self, QuadLabel, QuadraticClass};

/// A mode is either a plain boson or a generalized ladder (a representation
/// used as one tensor factor).
#[derive(Clone, Debug, PartialEq)]
pub enum ModeKind {
    Boson,
    Ladder { n0: Vec<f64>, amps: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FockSpace {
    pub modes: usize,
    /// Maximum occupation per mode.
    pub cutoffs: Vec<usize>,
    pub kinds: Vec<ModeKind>,
}

impl FockSpace {
    pub fn bosons(cutoffs: Vec<usize>) -> Result<Self> {
        let kinds = vec![ModeKind::Boson; cutoffs.len()];
        Self::new(kinds, cutoffs)
    }

    pub fn new(kinds: Vec<ModeKind>, cutoffs: Vec<usize>) -> Result<Self> {
        if kinds.is_empty() || kinds.len() != cutoffs.len() {
            return Err(Error::ShapeMismatch("one kind and one cutoff per mode".into()));
        }
        for (k, c) in kinds.iter().zip(&cutoffs) {
            if let ModeKind::Ladder { n0, amps } = k {
                if n0.len() != c + 1 || amps.len() != *c {
                    return Err(Error::ShapeMismatch("ladder mode size must match its cutoff".into()));
                }
            }
        }
        Ok(FockSpace { modes: kinds.len(), cutoffs, kinds })
    }

    /// A ladder mode carrying the given representation.
    pub fn ladder_mode(rep: &LadderRep) -> (ModeKind, usize) {
        (ModeKind::Ladder { n0: rep.n0_diag.clone(), amps: rep.raise_amps.clone() }, rep.dim - 1)
    }

    pub fn size(&self) -> usize {
        self.cutoffs.iter().map(|c| c + 1).product()
    }

    /// Colexicographic index: mode 0 varies fastest.
    pub fn index(&self, occ: &[usize]) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (n, c) in occ.iter().zip(&self.cutoffs) {
            idx += n * stride;
            stride *= c + 1;
        }
        idx
    }

    pub fn occupations(&self, mut idx: usize) -> Vec<usize> {
        self.cutoffs
            .iter()
            .map(|c| {
                let n = idx % (c + 1);
                idx /= c + 1;
                n
            })
            .collect()
    }

    fn stride(&self, mode: usize) -> usize {
        self.cutoffs[..mode].iter().map(|c| c + 1).product()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeOp {
    Annihilate,
    Create,
    Number,
}

/// Sparse operator stored by columns.
#[derive(Clone, Debug)]
pub struct FockOperator {
    pub space: Arc<FockSpace>,
    col_ptr: Vec<usize>,
    rows: Vec<usize>,
    vals: Vec<f64>,
}

impl FockOperator {
    fn from_columns(space: Arc<FockSpace>, cols: impl Iterator<Item = Vec<(usize, f64)>>) -> Self {
        let mut col_ptr = vec![0];
        let mut rows = Vec::new();
        let mut vals = Vec::new();
        for mut c in cols {
            c.sort_by_key(|e| e.0);
            for (r, v) in c {
                rows.push(r);
                vals.push(v);
            }
            col_ptr.push(rows.len());
        }
        FockOperator { space, col_ptr, rows, vals }
    }

    pub fn dim(&self) -> usize {
        self.col_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        (self.col_ptr[j]..self.col_ptr[j + 1]).map(move |p| (self.rows[p], self.vals[p]))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = (self.col_ptr[j], self.col_ptr[j + 1]);
        match self.rows[lo..hi].binary_search(&i) {
            Ok(p) => self.vals[lo + p],
            Err(_) => 0.0,
        }
    }

    /// `(row, col, value)` triplets in column order.
    pub fn entries(&self) -> Vec<(usize, usize, f64)> {
        (0..self.dim()).flat_map(|j| self.column(j).map(move |(i, v)| (i, j, v))).collect()
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|j| self.get(j, j)).collect()
    }

    pub fn identity(space: Arc<FockSpace>) -> Self {
        let n = space.size();
        Self::from_columns(space, (0..n).map(|j| vec![(j, 1.0)]))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.vals.iter_mut().for_each(|v| *v *= s);
        out
    }

    pub fn mul(&self, other: &FockOperator) -> Self {
        let n = self.dim();
        let mut acc = vec![0.0; n];
        let mut mark = vec![usize::MAX; n];
        let mut touched = Vec::new();
        let cols = (0..other.dim()).map(|j| {
            touched.clear();
            for (k, b) in other.column(j) {
                for (i, a) in self.column(k) {
                    if mark[i] != j {
                        mark[i] = j;
                        acc[i] = 0.0;
                        touched.push(i);
                    }
                    acc[i] += a * b;
                }
            }
            touched.iter().map(|&i| (i, acc[i])).collect::<Vec<_>>()
        });
        let cols: Vec<_> = cols.collect();
        Self::from_columns(self.space.clone(), cols.into_iter())
    }

    pub fn add(&self, other: &FockOperator) -> Self {
        let cols: Vec<Vec<(usize, f64)>> = (0..self.dim())
            .map(|j| {
                let mut m: BTreeMap<usize, f64> = BTreeMap::new();
                for (i, v) in self.column(j).chain(other.column(j)) {
                    *m.entry(i).or_insert(0.0) += v;
                }
                m.into_iter().collect()
            })
            .collect();
        Self::from_columns(self.space.clone(), cols.into_iter())
    }

    pub fn sub(&self, other: &FockOperator) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn commutator(&self, other: &FockOperator) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    /// Max |entry| over the given columns.
    pub fn max_abs_in_columns(&self, cols: &[usize]) -> f64 {
        cols.iter()
            .flat_map(|&j| self.column(j).map(|(_, v)| v.abs()))
            .fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for (i, j, v) in self.entries() {
            m[(i, j)] = v;
        }
        m
    }
}

/// `a`, `a†` or `N` on one mode; `a†` annihilates the top state.
pub fn mode_operator(space: &Arc<FockSpace>, mode: usize, kind: ModeOp) -> Result<FockOperator> {
    if mode >= space.modes {
        return Err(Error::Precondition(format!("mode {mode} outside 0..{}", space.modes)));
    }
    let stride = space.stride(mode);
    let cut = space.cutoffs[mode];
    let n_states = space.size();
    let amp_up = |n: usize| -> f64 {
        match &space.kinds[mode] {
            ModeKind::Boson => ((n + 1) as f64).sqrt(),
            ModeKind::Ladder { amps, .. } => amps[n],
        }
    };
    let diag = |n: usize| -> f64 {
        match &space.kinds[mode] {
            ModeKind::Boson => n as f64,
            ModeKind::Ladder { n0, .. } => n0[n],
        }
    };
    let cols = (0..n_states).map(|j| {
        let n = (j / stride) % (cut + 1);
        match kind {
            ModeOp::Create if n < cut => vec![(j + stride, amp_up(n))],
            ModeOp::Annihilate if n > 0 => vec![(j - stride, amp_up(n - 1))],
            ModeOp::Number => vec![(j, diag(n))],
            _ => vec![],
        }
    });
    let cols: Vec<_> = cols.collect();
    Ok(FockOperator::from_columns(space.clone(), cols.into_iter()))
}

/// Composition tree over mode operators. `Number` on a ladder mode gives its
/// N0 eigenvalue; products act as written (rightmost factor first).
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Create(usize),
    Annihilate(usize),
    Number(usize),
    Identity,
    Scale(f64, Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
}

impl Expr {
    pub fn scale(s: f64, e: Expr) -> Expr {
        Expr::Scale(s, Box::new(e))
    }

    pub fn prod(items: &[Expr]) -> Expr {
        Expr::Product(items.to_vec())
    }

    pub fn sum(items: &[Expr]) -> Expr {
        Expr::Sum(items.to_vec())
    }

    /// `s * (sum_i c_i N_i + c)`.
    pub fn linear(coeffs: &[(usize, f64)], c: f64, s: f64) -> Expr {
        let mut terms: Vec<Expr> =
            coeffs.iter().map(|&(m, v)| Expr::scale(v, Expr::Number(m))).collect();
        if c != 0.0 {
            terms.push(Expr::scale(c, Expr::Identity));
        }
        Expr::scale(s, Expr::Sum(terms))
    }

    pub fn max_mode(&self) -> Option<usize> {
        match self {
            Expr::Create(m) | Expr::Annihilate(m) | Expr::Number(m) => Some(*m),
            Expr::Identity => None,
            Expr::Scale(_, e) => e.max_mode(),
            Expr::Sum(v) | Expr::Product(v) => v.iter().filter_map(|e| e.max_mode()).max(),
        }
    }

    /// Largest number of creations of `mode` in any single term.
    pub fn creations(&self, mode: usize) -> usize {
        match self {
            Expr::Create(m) => usize::from(*m == mode),
            Expr::Annihilate(_) | Expr::Number(_) | Expr::Identity => 0,
            Expr::Scale(_, e) => e.creations(mode),
            Expr::Sum(v) => v.iter().map(|e| e.creations(mode)).max().unwrap_or(0),
            Expr::Product(v) => v.iter().map(|e| e.creations(mode)).sum(),
        }
    }

    /// For diagonal expressions built from numbers: `(coeffs on occupations, constant)`.
    pub fn linear_form(&self, kinds: &[ModeKind]) -> Option<(Vec<f64>, f64)> {
        let modes = kinds.len();
        match self {
            Expr::Number(m) => {
                let mut c = vec![0.0; modes];
                c[*m] = 1.0;
                let offset = match &kinds[*m] {
                    ModeKind::Boson => 0.0,
                    ModeKind::Ladder { n0, .. } => n0[0],
                };
                Some((c, offset))
            }
            Expr::Identity => Some((vec![0.0; modes], 1.0)),
            Expr::Scale(s, e) => {
                let (c, k) = e.linear_form(kinds)?;
                Some((c.iter().map(|v| v * s).collect(), k * s))
            }
            Expr::Sum(v) => {
                let mut c = vec![0.0; modes];
                let mut k = 0.0;
                for e in v {
                    let (ce, ke) = e.linear_form(kinds)?;
                    c.iter_mut().zip(ce).for_each(|(a, b)| *a += b);
                    k += ke;
                }
                Some((c, k))
            }
            _ => None,
        }
    }

    pub fn eval(&self, space: &Arc<FockSpace>) -> Result<FockOperator> {
        Ok(match self {
            Expr::Create(m) => mode_operator(space, *m, ModeOp::Create)?,
            Expr::Annihilate(m) => mode_operator(space, *m, ModeOp::Annihilate)?,
            Expr::Number(m) => mode_operator(space, *m, ModeOp::Number)?,
            Expr::Identity => FockOperator::identity(space.clone()),
            Expr::Scale(s, e) => e.eval(space)?.scale(*s),
            Expr::Sum(v) => {
                let mut it = v.iter();
                let first = match it.next() {
                    Some(e) => e.eval(space)?,
                    None => FockOperator::identity(space.clone()).scale(0.0),
                };
                it.try_fold(first, |acc, e| Ok::<_, Error>(acc.add(&e.eval(space)?)))?
            }
            Expr::Product(v) => {
                let mut it = v.iter();
                let first = match it.next() {
                    Some(e) => e.eval(space)?,
                    None => FockOperator::identity(space.clone()),
                };
                it.try_fold(first, |acc, e| Ok::<_, Error>(acc.mul(&e.eval(space)?)))?
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Realization {
    pub name: String,
    pub q0: Expr,
    pub qplus: Expr,
    pub qminus: Expr,
    pub central: Vec<(String, Expr)>,
}

impl Realization {
    /// Per-mode number of creations one generator application can add.
    pub fn margins(&self, modes: usize) -> Vec<usize> {
        (0..modes)
            .map(|m| self.qplus.creations(m).max(self.qminus.creations(m)))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Realized {
    pub q0: FockOperator,
    pub qplus: FockOperator,
    pub qminus: FockOperator,
    pub central: Vec<(String, FockOperator)>,
}

pub fn realize(space: &Arc<FockSpace>, r: &Realization) -> Result<Realized> {
    let exprs = [&r.q0, &r.qplus, &r.qminus];
    let top = exprs
        .iter()
        .copied()
        .chain(r.central.iter().map(|(_, e)| e))
        .filter_map(|e| e.max_mode())
        .max();
    if top.is_some_and(|m| m >= space.modes) {
        return Err(Error::Precondition(format!("{} references a missing mode", r.name)));
    }
    Ok(Realized {
        q0: r.q0.eval(space)?,
        qplus: r.qplus.eval(space)?,
        qminus: r.qminus.eval(space)?,
        central: r
            .central
            .iter()
            .map(|(n, e)| Ok((n.clone(), e.eval(space)?)))
            .collect::<Result<_>>()?,
    })
}

/// Basis indices where every constraint diagonal equals its value, ordered
/// by the Q0 diagonal.
pub fn constrained_subspace(
    constraints: &[(&FockOperator, f64)],
    q0: &FockOperator,
    tol: f64,
) -> Result<Vec<usize>> {
    let diags: Vec<(Vec<f64>, f64)> = constraints.iter().map(|(op, v)| (op.diagonal(), *v)).collect();
    let q0d = q0.diagonal();
    let mut idx: Vec<usize> = (0..q0.dim())
        .filter(|&i| diags.iter().all(|(d, v)| (d[i] - v).abs() <= tol))
        .collect();
    if idx.is_empty() {
        return Err(Error::EmptySubspace("no basis state satisfies the constraints".into()));
    }
    idx.sort_by(|a, b| q0d[*a].total_cmp(&q0d[*b]).then(a.cmp(b)));
    Ok(idx)
}

/// Realized generators restricted to a constraint subspace.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub space: Arc<FockSpace>,
    pub realization: Realization,
    pub ops: Realized,
    pub constraint_values: Vec<(String, f64)>,
    pub subspace: Vec<usize>,
    /// Leading subspace states far enough from every cutoff.
    pub interior: usize,
}

impl Oracle {
    /// Occupation vectors of the subspace states.
    pub fn occupations(&self) -> Vec<Vec<usize>> {
        self.subspace.iter().map(|&i| self.space.occupations(i)).collect()
    }
}

/// Sizes a Fock space so that `states` ladder states starting at Q0 =
/// `lowest_q0` fit with room for one generator application, then realizes the
/// generators and extracts the constraint subspace. Every constraint names a
/// central element of the realization. `pad` adds extra occupation room.
pub fn build_oracle(
    kinds: Vec<ModeKind>,
    realization: Realization,
    constraints: Vec<(String, f64)>,
    lowest_q0: f64,
    states: usize,
    pad: usize,
) -> Result<Oracle> {
    let modes = kinds.len();
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for (name, v) in &constraints {
        let e = realization
            .central
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| e)
            .ok_or_else(|| Error::Precondition(format!("no central element named {name}")))?;
        let (c, k) = e
            .linear_form(&kinds)
            .ok_or_else(|| Error::Precondition(format!("{name} is not diagonal")))?;
        rows.push((c, v - k));
    }
    let (q0c, q0k) = realization
        .q0
        .linear_form(&kinds)
        .ok_or_else(|| Error::Precondition("Q0 is not diagonal".into()))?;
    if rows.len() + 1 != modes {
        return Err(Error::Precondition(format!(
            "{} constraints do not fix a ladder on {modes} modes",
            rows.len()
        )));
    }
    let a = DMatrix::from_fn(modes, modes, |i, j| if i < rows.len() { rows[i].0[j] } else { q0c[j] });
    let lu = a.lu();
    let margins = realization.margins(modes);
    let mut need = vec![0usize; modes];
    for i in 0..=states {
        let b = DVector::from_fn(modes, |r, _| if r < rows.len() { rows[r].1 } else { lowest_q0 + i as f64 - q0k });
        let x = lu
            .solve(&b)
            .ok_or_else(|| Error::Precondition("constraints are degenerate".into()))?;
        for (m, v) in x.iter().enumerate() {
            let r = v.round();
            if (v - r).abs() > 1e-8 || r < -1e-8 {
                if i == 0 {
                    return Err(Error::EmptySubspace(format!(
                        "{}: lowest state needs occupation {v} on mode {m}",
                        realization.name
                    )));
                }
                continue;
            }
            need[m] = need[m].max(r as usize);
        }
    }
    let mut cutoffs = Vec::with_capacity(modes);
    for m in 0..modes {
        match &kinds[m] {
            ModeKind::Boson => cutoffs.push(need[m] + margins[m] + pad),
            ModeKind::Ladder { n0, .. } => cutoffs.push(n0.len() - 1),
        }
    }
    let space = Arc::new(FockSpace::new(kinds, cutoffs)?);
    let ops = realize(&space, &realization)?;
    let cons: Vec<(&FockOperator, f64)> = constraints
        .iter()
        .map(|(n, v)| (&ops.central.iter().find(|(m, _)| m == n).unwrap().1, *v))
        .collect();
    let subspace = constrained_subspace(&cons, &ops.q0, 1e-9)?;
    let interior = subspace
        .iter()
        .take_while(|&&s| {
            let occ = space.occupations(s);
            (0..modes).all(|m| match &space.kinds[m] {
                // A finite ladder mode has no artificial edge; a truncated one
                // is handled by the caller's choice of ladder size.
                ModeKind::Ladder { .. } => true,
                ModeKind::Boson => occ[m] + margins[m] <= space.cutoffs[m],
            })
        })
        .count();
    Ok(Oracle { space, realization, ops, constraint_values: constraints, subspace, interior })
}

/// Max deviation between the ladder matrices and the oracle on interior rows.
pub fn compare(rep: &LadderRep, oracle: &Oracle, tol: f64) -> Result<VerificationReport> {
    let rows = rep.interior_rows();
    if oracle.interior < rows || oracle.subspace.len() < rows {
        return Err(Error::ShapeMismatch(format!(
            "oracle has {} interior states, representation needs {rows}",
            oracle.interior
        )));
    }
    let mut report = VerificationReport::new();
    if !rep.truncated {
        report.require(
            format!("subspace size {} == dim {}", oracle.subspace.len(), rep.dim),
            oracle.subspace.len() == rep.dim,
        );
    }
    let s = &oracle.subspace;
    let mut d0 = 0.0f64;
    let mut dp = 0.0f64;
    let mut dm = 0.0f64;
    for i in 0..rows {
        d0 = d0.max((oracle.ops.q0.get(s[i], s[i]) - rep.n0_diag[i]).abs());
        let up = (i + 1 < rep.dim).then(|| (s[i + 1], rep.raise_amps[i]));
        dp = dp.max(column_deviation(&oracle.ops.qplus, s[i], up));
        let down = (i > 0).then(|| (s[i - 1], rep.lower_amps[i - 1]));
        dm = dm.max(column_deviation(&oracle.ops.qminus, s[i], down));
    }
    report.check("Q0 diagonal", d0, tol);
    report.check("Q+ elements", dp, tol);
    report.check("Q- elements", dm, tol);
    Ok(report)
}

fn column_deviation(op: &FockOperator, col: usize, expect: Option<(usize, f64)>) -> f64 {
    let mut dev = 0.0f64;
    let mut seen = false;
    for (r, v) in op.column(col) {
        match expect {
            Some((er, ev)) if er == r => {
                seen = true;
                dev = dev.max((v - ev).abs());
            }
            _ => dev = dev.max(v.abs()),
        }
    }
    if let (Some((_, ev)), false) = (expect, seen) {
        dev = dev.max(ev.abs());
    }
    dev
}

/// `[a_i, a_j†] - δ_ij` in max-entry norm over states below every cutoff.
pub fn canonical_commutator_residual(space: &Arc<FockSpace>) -> Result<f64> {
    let interior: Vec<usize> = (0..space.size())
        .filter(|&i| space.occupations(i).iter().zip(&space.cutoffs).all(|(n, c)| n < c))
        .collect();
    let mut worst = 0.0f64;
    for i in 0..space.modes {
        for j in 0..space.modes {
            let a = mode_operator(space, i, ModeOp::Annihilate)?;
            let ad = mode_operator(space, j, ModeOp::Create)?;
            let mut c = a.commutator(&ad);
            if i == j {
                c = c.sub(&FockOperator::identity(space.clone()));
            }
            worst = worst.max(c.max_abs_in_columns(&interior));
        }
    }
    Ok(worst)
}

/// Max |[C, G]| over interior subspace columns for every central C and generator G.
pub fn central_commutator_residual(oracle: &Oracle) -> f64 {
    let cols = &oracle.subspace[..oracle.interior];
    let gens = [&oracle.ops.q0, &oracle.ops.qplus, &oracle.ops.qminus];
    let mut worst = 0.0f64;
    for (_, c) in &oracle.ops.central {
        for g in gens {
            worst = worst.max(c.commutator(g).max_abs_in_columns(cols));
        }
    }
    worst
}

// Standard realizations ------------------------------------------------------

use Expr::{Annihilate as A, Create as Cr, Number as N};

fn f(v: Q) -> f64 {
    to_f64(&v)
}

/// Three-mode realizations of the quadratic classes with their constraints.
pub fn quadratic_realization(class: QuadraticClass, label: QuadLabel) -> (Realization, Vec<(String, f64)>) {
    let (s, l) = (f(label.spin), f(label.l));
    let (r, cons) = match class {
        QuadraticClass::QMinus2 => (
            Realization {
                name: "qminus2 three-mode".into(),
                qplus: Expr::prod(&[Cr(0), A(1), A(2)]),
                qminus: Expr::prod(&[A(0), Cr(1), Cr(2)]),
                q0: Expr::linear(&[(0, 1.0), (1, -1.0), (2, -2.0)], 0.0, 0.25),
                central: vec![
                    ("L".into(), Expr::linear(&[(0, 1.0), (1, -1.0), (2, 2.0)], 0.0, 0.25)),
                    ("2j".into(), Expr::linear(&[(0, 1.0), (1, 1.0)], 0.0, 1.0)),
                ],
            },
            vec![("L".into(), l), ("2j".into(), 2.0 * s)],
        ),
        QuadraticClass::QPlus2 => (
            Realization {
                name: "qplus2 three-mode".into(),
                qplus: Expr::prod(&[Cr(0), A(1), Cr(2)]),
                qminus: Expr::prod(&[A(0), Cr(1), A(2)]),
                q0: Expr::linear(&[(0, 1.0), (1, -1.0), (2, 2.0)], 0.0, 0.25),
                central: vec![
                    ("L".into(), Expr::linear(&[(0, 1.0), (1, -1.0), (2, -2.0)], 0.0, 0.25)),
                    ("2j".into(), Expr::linear(&[(0, 1.0), (1, 1.0)], 0.0, 1.0)),
                ],
            },
            vec![("L".into(), l), ("2j".into(), 2.0 * s)],
        ),
        QuadraticClass::QMinus11 => (
            Realization {
                name: "qminus11 three-mode".into(),
                qplus: Expr::prod(&[Cr(0), Cr(1), A(2)]),
                qminus: Expr::prod(&[A(0), A(1), Cr(2)]),
                q0: Expr::linear(&[(0, 1.0), (1, 1.0), (2, -2.0)], 1.0, 0.25),
                central: vec![
                    ("L".into(), Expr::linear(&[(0, 1.0), (1, 1.0), (2, 2.0)], 1.0, 0.25)),
                    ("2k-1".into(), Expr::linear(&[(0, 1.0), (1, -1.0)], 0.0, 1.0)),
                ],
            },
            vec![("L".into(), l), ("2k-1".into(), 2.0 * s - 1.0)],
        ),
        QuadraticClass::QPlus11 => (
            Realization {
                name: "qplus11 three-mode".into(),
                qplus: Expr::prod(&[Cr(0), Cr(1), Cr(2)]),
                qminus: Expr::prod(&[A(0), A(1), A(2)]),
                q0: Expr::linear(&[(0, 1.0), (1, 1.0), (2, 2.0)], 1.0, 0.25),
                central: vec![
                    ("L".into(), Expr::linear(&[(0, 1.0), (1, 1.0), (2, -2.0)], 1.0, 0.25)),
                    ("2k-1".into(), Expr::linear(&[(0, 1.0), (1, -1.0)], 0.0, 1.0)),
                ],
            },
            vec![("L".into(), l), ("2k-1".into(), 2.0 * s - 1.0)],
        ),
    };
    (r, cons)
}

/// One su(1,1) or su(2) Schwinger pair on modes (a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Pair {
    Su11(usize, usize),
    Su2(usize, usize),
}

impl Pair {
    fn up(self) -> Expr {
        match self {
            Pair::Su11(a, b) => Expr::prod(&[Cr(a), Cr(b)]),
            Pair::Su2(a, b) => Expr::prod(&[Cr(a), A(b)]),
        }
    }
    fn down(self) -> Expr {
        match self {
            Pair::Su11(a, b) => Expr::prod(&[A(a), A(b)]),
            Pair::Su2(a, b) => Expr::prod(&[A(a), Cr(b)]),
        }
    }
    /// Linear form of the pair's N0 as (coeffs, constant).
    fn zero(self) -> (Vec<(usize, f64)>, f64) {
        match self {
            Pair::Su11(a, b) => (vec![(a, 0.5), (b, 0.5)], 0.5),
            Pair::Su2(a, b) => (vec![(a, 0.5), (b, -0.5)], 0.0),
        }
    }
    /// Label constraint: Na - Nb = 2k - 1 or Na + Nb = 2j.
    fn label(self, v: f64) -> (Expr, f64) {
        match self {
            Pair::Su11(a, b) => (Expr::linear(&[(a, 1.0), (b, -1.0)], 0.0, 1.0), 2.0 * v - 1.0),
            Pair::Su2(a, b) => (Expr::linear(&[(a, 1.0), (b, 1.0)], 0.0, 1.0), 2.0 * v),
        }
    }
}

/// `(s1 * P0 + s2 * Q0) / 2` as an expression.
fn half_combo(p: Pair, s1: f64, q: Pair, s2: f64) -> Expr {
    let (pc, pk) = p.zero();
    let (qc, qk) = q.zero();
    let mut c: Vec<(usize, f64)> = pc.iter().map(|&(m, v)| (m, s1 * v)).collect();
    c.extend(qc.iter().map(|&(m, v)| (m, s2 * v)));
    Expr::linear(&c, s1 * pk + s2 * qk, 0.5)
}

/// Four-mode realizations of the six pair classes with their constraints.
pub fn cubic_pair_realization(
    class: CubicClass,
    label: &CubicLabel,
) -> Result<(Realization, Vec<(String, f64)>)> {
    let names = class.param_names();
    let a = f(label.get(names[0])?);
    let b = f(label.get(names[1])?);
    let k = f(label.get(names[2])?);
    use CubicClass::*;
    let (p, q, plus) = match class {
        CMinus11_11 => (Pair::Su11(0, 1), Pair::Su11(2, 3), false),
        CPlus11_11 => (Pair::Su11(0, 1), Pair::Su11(2, 3), true),
        CMinus2_2 => (Pair::Su2(0, 1), Pair::Su2(2, 3), false),
        CPlus2_2 => (Pair::Su2(0, 1), Pair::Su2(2, 3), true),
        CMinus2_11 => (Pair::Su2(0, 1), Pair::Su11(2, 3), false),
        CPlus2_11 => (Pair::Su2(0, 1), Pair::Su11(2, 3), true),
        _ => return Err(Error::Precondition(format!("{class} is not a pair class"))),
    };
    let (qplus, qminus, q0, kexpr) = if plus {
        // C+ = P+ Q+, C0 = (P0 + Q0)/2, K = (P0 - Q0)/2; for su(1,1)xsu(1,1) K = (Q0 - P0)/2.
        let k_expr = if class == CPlus11_11 { half_combo(p, -1.0, q, 1.0) } else { half_combo(p, 1.0, q, -1.0) };
        (
            Expr::prod(&[p.up(), q.up()]),
            Expr::prod(&[p.down(), q.down()]),
            half_combo(p, 1.0, q, 1.0),
            k_expr,
        )
    } else {
        (
            Expr::prod(&[p.up(), q.down()]),
            Expr::prod(&[p.down(), q.up()]),
            half_combo(p, 1.0, q, -1.0),
            half_combo(p, 1.0, q, 1.0),
        )
    };
    let (pl, pv) = p.label(a);
    let (ql, qv) = q.label(b);
    let r = Realization {
        name: format!("{class} four-mode"),
        q0,
        qplus,
        qminus,
        central: vec![("K".into(), kexpr), ("first".into(), pl), ("second".into(), ql)],
    };
    Ok((r, vec![("K".into(), k), ("first".into(), pv), ("second".into(), qv)]))
}

/// The quadratic class underlying a q-h cubic class.
pub fn qh_parts(class: CubicClass) -> Result<(QuadraticClass, bool)> {
    use CubicClass::*;
    // (quadratic factor, boson raised together with Q+)
    Ok(match class {
        CPlusQm1H => (QuadraticClass::QMinus11, true),
        CMinusQm1H => (QuadraticClass::QMinus11, false),
        CPlusQp1H => (QuadraticClass::QPlus11, true),
        CMinusQp1H => (QuadraticClass::QPlus11, false),
        _ => return Err(Error::Precondition(format!("{class} is not a q-h class"))),
    })
}

/// q-h generators on (quadratic part, boson mode `h`):
/// C+ = Q+ a† or Q+ a, C0 = (Q0 ± N)/2, K = (Q0 ∓ N)/2.
fn qh_generators(q0: Expr, qplus: Expr, qminus: Expr, h: usize, raise_boson: bool) -> (Expr, Expr, Expr, Expr) {
    let sign = if raise_boson { 1.0 } else { -1.0 };
    let c0 = Expr::scale(0.5, Expr::sum(&[q0.clone(), Expr::scale(sign, N(h))]));
    let k = Expr::scale(0.5, Expr::sum(&[q0, Expr::scale(-sign, N(h))]));
    let (bu, bd) = if raise_boson { (Cr(h), A(h)) } else { (A(h), Cr(h)) };
    (c0, Expr::prod(&[qplus, bu]), Expr::prod(&[qminus, bd]), k)
}

/// Quadratic ladder (as one generalized mode) tensored with a boson.
pub fn qh_composite_oracle(class: CubicClass, label: &CubicLabel, states: usize, pad: usize) -> Result<Oracle> {
    let (qc, raise) = qh_parts(class)?;
    let ql = QuadLabel::new(label.get("k1")?, label.get("l")?);
    let qdim = quadratic::dimension(qc, ql)?;
    let qrep = match qdim.finite() {
        Some(_) => quadratic::build(qc, ql, None)?,
        None => {
            // The quadratic index never exceeds the cubic index plus its start.
            let spec = crate::cubic::ladder_spec(class, label)?;
            quadratic::build(qc, ql, Some(spec.n_start as usize + states + 2 + pad))?
        }
    };
    let (kind, _) = FockSpace::ladder_mode(&qrep);
    let (c0, cp, cm, k) = qh_generators(N(0), Cr(0), A(0), 1, raise);
    let r = Realization {
        name: format!("{class} composite"),
        q0: c0,
        qplus: cp,
        qminus: cm,
        central: vec![("K".into(), k)],
    };
    let kk = f(label.get("k")?);
    let lowest = f(crate::cubic::ladder_spec(class, label)?.n0_exact(0));
    let mut o = build_oracle(vec![kind, ModeKind::Boson], r, vec![("K".into(), kk)], lowest, states, pad)?;
    if qdim.finite().is_none() {
        // The ladder mode is itself a cut: its last state is a boundary.
        let top = o.space.cutoffs[0];
        o.interior = o
            .subspace
            .iter()
            .take_while(|&&s| o.space.occupations(s)[0] < top)
            .count()
            .min(o.interior);
    }
    Ok(o)
}

/// Three quadratic boson modes plus one boson, all as plain modes.
pub fn qh_raw_oracle(class: CubicClass, label: &CubicLabel, states: usize, pad: usize) -> Result<Oracle> {
    let (qc, raise) = qh_parts(class)?;
    let ql = QuadLabel::new(label.get("k1")?, label.get("l")?);
    let (qr, qcons) = quadratic_realization(qc, ql);
    let (c0, cp, cm, k) = qh_generators(qr.q0.clone(), qr.qplus.clone(), qr.qminus.clone(), 3, raise);
    let mut central = qr.central.clone();
    central.push(("K".into(), k));
    let r = Realization { name: format!("{class} four-mode"), q0: c0, qplus: cp, qminus: cm, central };
    let mut cons = qcons;
    cons.push(("K".into(), f(label.get("k")?)));
    let lowest = f(crate::cubic::ladder_spec(class, label)?.n0_exact(0));
    build_oracle(vec![ModeKind::Boson; 4], r, cons, lowest, states, pad)
}

pub fn quadratic_oracle(class: QuadraticClass, label: QuadLabel, states: usize, pad: usize) -> Result<Oracle> {
    let (r, cons) = quadratic_realization(class, label);
    let lowest = f(quadratic::ladder_spec(class, label)?.n0_exact(0));
    build_oracle(vec![ModeKind::Boson; 3], r, cons, lowest, states, pad)
}

pub fn cubic_oracle(class: CubicClass, label: &CubicLabel, states: usize, pad: usize) -> Result<Oracle> {
    if class.is_qh() {
        return qh_composite_oracle(class, label, states, pad);
    }
    let (r, cons) = cubic_pair_realization(class, label)?;
    let lowest = f(crate::cubic::ladder_spec(class, label)?.n0_exact(0));
    build_oracle(vec![ModeKind::Boson; 4], r, cons, lowest, states, pad)
}

/// Builds the representation and its oracle and compares them.
pub fn check_quadratic(class: QuadraticClass, label: QuadLabel, cutoff: Option<usize>, tol: f64) -> Result<VerificationReport> {
    let rep = quadratic::build(class, label, cutoff)?;
    let oracle = quadratic_oracle(class, label, rep.dim, 0)?;
    compare(&rep, &oracle, tol)
}

pub fn check_cubic(class: CubicClass, label: &CubicLabel, cutoff: Option<usize>, tol: f64) -> Result<VerificationReport> {
    let rep = crate::cubic::build_cubic(class, label, cutoff)?;
    let oracle = cubic_oracle(class, label, rep.dim, 0)?;
    compare(&rep, &oracle, tol)
}

/// Single-mode cubic boson: Q+ = (a†)^3/√3, Q0 = N/3.
pub fn single_mode_cubic() -> Realization {
    let s = 1.0 / 3f64.sqrt();
    Realization {
        name: "single-mode cubic".into(),
        qplus: Expr::scale(s, Expr::prod(&[Cr(0), Cr(0), Cr(0)])),
        qminus: Expr::scale(s, Expr::prod(&[A(0), A(0), A(0)])),
        q0: Expr::linear(&[(0, 1.0)], 0.0, 1.0 / 3.0),
        central: vec![],
    }
}

/// Calogero cubic generators from a Schwinger su(2) pair: C± = ½ J±², C0 = J0.
pub fn calogero_realization() -> Realization {
    let jp = Expr::prod(&[Cr(0), A(1)]);
    let jm = Expr::prod(&[A(0), Cr(1)]);
    Realization {
        name: "calogero".into(),
        qplus: Expr::scale(0.5, Expr::prod(&[jp.clone(), jp])),
        qminus: Expr::scale(0.5, Expr::prod(&[jm.clone(), jm])),
        q0: Expr::linear(&[(0, 0.5), (1, -0.5)], 0.0, 1.0),
        central: vec![("2j".into(), Expr::linear(&[(0, 1.0), (1, 1.0)], 0.0, 1.0))],
    }
}

/// Rational helper used by the single-mode comparison.
pub fn single_mode_amplitude(n: usize) -> f64 {
    let n = qi(n as i128);
    let v = (qi(3) * n + Q::one()) * (qi(3) * n + qi(2)) * (n + Q::one());
    to_f64(&v).sqrt()
}
