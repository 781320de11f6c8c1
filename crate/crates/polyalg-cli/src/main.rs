use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use polyalg::algebra::{casimir_spread, verify_closure, LadderRep, VerificationReport};
use polyalg::applications::{self, HahnSource};
use polyalg::boson;
use polyalg::coherent;
use polyalg::compose;
use polyalg::cubic::{self, CubicClass, CubicLabel};
use polyalg::quadratic::{self, QuadLabel, QuadraticClass};
use polyalg::{parse_q, Error, Polynomial, Q};

/// Polynomial deformations of su(2) and su(1,1): representations, oracles,
/// coherent states, compositions and applications.
#[derive(Parser)]
#[command(name = "polyalg", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format. `json` is the structured document; `csv` flattens tables.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Tolerance applied to every finite check (default 1e-10).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Key-value file with defaults for `tol` and `format`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build or verify a ladder representation.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Compare a representation with its bosonic realization.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Casimir value of a representation.
    Casimir(LabelArgs),
    /// Coherent states.
    #[command(subcommand)]
    Cs(CsCmd),
    /// Compose two ladder algebras.
    Compose(ComposeArgs),
    /// Canonical conjugates and deformation maps.
    #[command(subcommand)]
    Map(MapCmd),
    /// Physical applications.
    #[command(subcommand)]
    App(AppCmd),
}

#[derive(Subcommand)]
enum RepCmd {
    Build(LabelArgs),
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum OracleCmd {
    Compare(OracleArgs),
}

#[derive(Subcommand)]
enum CsCmd {
    Bg(BgArgs),
    Perelomov(PerelomovArgs),
    IdentityCheck(IdentityArgs),
}

#[derive(Subcommand)]
enum MapCmd {
    Conjugate(LabelArgs),
    Deform(DeformArgs),
}

#[derive(Subcommand)]
enum AppCmd {
    Degeneracy(DegeneracyArgs),
    Dicke(DickeArgs),
    Trilinear(TrilinearArgs),
    Calogero(CalogeroArgs),
    Hahn(HahnArgs),
    Qes(QesArgs),
}

/// Class tag plus labels; rationals are given as "p/q".
#[derive(Args, Clone, Serialize)]
struct LabelArgs {
    #[arg(long)]
    class: String,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    j1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    j2: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<usize>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    /// A document written by `rep build --format json`.
    #[arg(long, conflicts_with = "class")]
    #[serde(skip_serializing_if = "Option::is_none")]
    from_file: Option<PathBuf>,
    #[arg(long, required_unless_present = "from_file")]
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    labels: OptLabels,
}

/// Same labels as `LabelArgs` but with an optional class.
#[derive(Args, Clone, Serialize, Default)]
struct OptLabels {
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    l: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    j1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    j2: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<usize>,
}

impl OptLabels {
    fn with_class(&self, class: String) -> LabelArgs {
        let o = self.clone();
        LabelArgs { class, j: o.j, k: o.k, l: o.l, k1: o.k1, k2: o.k2, j1: o.j1, j2: o.j2, cutoff: o.cutoff }
    }
}

#[derive(Args, Serialize)]
struct OracleArgs {
    #[command(flatten)]
    #[serde(flatten)]
    label: LabelArgs,
    /// Extra Fock levels beyond the minimal cutoffs.
    #[arg(long, default_value_t = 0)]
    pad: usize,
}

#[derive(Args, Serialize)]
struct BgArgs {
    #[command(flatten)]
    #[serde(flatten)]
    label: LabelArgs,
    #[arg(long, allow_hyphen_values = true)]
    alpha_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    alpha_im: f64,
}

#[derive(Args, Serialize)]
struct PerelomovArgs {
    #[command(flatten)]
    #[serde(flatten)]
    label: LabelArgs,
    #[arg(long, allow_hyphen_values = true)]
    gamma_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    gamma_im: f64,
}

#[derive(Args, Serialize)]
struct IdentityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    label: LabelArgs,
    #[arg(long, default_value_t = 400)]
    points: usize,
}

#[derive(Args, Serialize)]
struct DeformArgs {
    #[command(flatten)]
    #[serde(flatten)]
    label: LabelArgs,
    /// +1 maps to su(2), -1 to su(1,1).
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
}

#[derive(Args, Serialize)]
struct ComposeArgs {
    /// Factor such as `boson:cutoff=30`, `su2:j=3`, `su11:k=1,cutoff=30`
    /// or `qplus11:k=1/2,l=1/4,cutoff=30`.
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
    /// Value of (P0(L) - P0(R))/2 on the subspace.
    #[arg(long, allow_hyphen_values = true)]
    pi: String,
}

#[derive(Args, Serialize)]
struct DegeneracyArgs {
    #[arg(long)]
    n: u64,
    /// Tabulate every level from `n` to `n_max`.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<u64>,
}

#[derive(Args, Serialize)]
struct DickeArgs {
    #[arg(long)]
    j: String,
    #[arg(long)]
    l_max: String,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    omega: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    kappa: f64,
    /// Photon cutoff; defaults to the smallest exact one.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<usize>,
}

#[derive(Args, Serialize)]
struct TrilinearArgs {
    #[arg(long)]
    epsilon: u32,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    omega_a: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    kappa_re: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    kappa_im: f64,
    /// b†b - c†c on the sector.
    #[arg(long, default_value_t = 0)]
    cbc: u32,
}

#[derive(Args, Serialize)]
struct CalogeroArgs {
    #[arg(long)]
    j: String,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum HahnKind {
    Calogero,
    SingularOscillator,
}

#[derive(Args, Serialize)]
struct HahnArgs {
    #[arg(long, value_enum)]
    source: HahnKind,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<String>,
}

#[derive(Args, Serialize)]
struct QesArgs {
    #[arg(long, allow_hyphen_values = true)]
    k: String,
    #[arg(long, allow_hyphen_values = true)]
    k1: String,
    #[arg(long, allow_hyphen_values = true)]
    w: f64,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidLabel(_)
            | Error::NegativeRadicand { .. }
            | Error::CutoffRequired
            | Error::CutoffNotAllowed(_)
            | Error::EmptySubspace(_)
            | Error::CutoffInsufficient(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Command output before it is wrapped in the document.
struct Output {
    inputs: Value,
    results: Value,
    reports: Vec<VerificationReport>,
    /// Rows for `--format csv`; the first row is the header.
    table: Option<Vec<Vec<String>>>,
}

impl Output {
    fn new(inputs: impl Serialize, results: Value, reports: Vec<VerificationReport>) -> Self {
        Output { inputs: serde_json::to_value(inputs).unwrap_or(Value::Null), results, reports, table: None }
    }
}

fn rational(name: &str, v: &Option<String>) -> Res<Q> {
    let s = v.as_ref().ok_or_else(|| usage(format!("missing --{name}")))?;
    parse_q(s).ok_or_else(|| usage(format!("--{name}: cannot parse {s:?} as a rational")))
}

fn rat(name: &str, s: &str) -> Res<Q> {
    parse_q(s).ok_or_else(|| usage(format!("--{name}: cannot parse {s:?} as a rational")))
}

enum Class {
    Quad(QuadraticClass, QuadLabel),
    Cubic(CubicClass, CubicLabel),
}

fn label_value(a: &LabelArgs, name: &str) -> Option<String> {
    match name {
        "j" => a.j.clone(),
        "k" => a.k.clone(),
        "l" => a.l.clone(),
        "k1" => a.k1.clone(),
        "k2" => a.k2.clone(),
        "j1" => a.j1.clone(),
        "j2" => a.j2.clone(),
        _ => None,
    }
}

fn parse_class(a: &LabelArgs) -> Res<Class> {
    if let Ok(c) = a.class.parse::<QuadraticClass>() {
        let spin = rational(c.spin_name(), &label_value(a, c.spin_name()))?;
        let l = rational("l", &a.l)?;
        return Ok(Class::Quad(c, QuadLabel::new(spin, l)));
    }
    if let Ok(c) = a.class.parse::<CubicClass>() {
        let mut pairs = Vec::new();
        for name in c.param_names() {
            pairs.push((*name, rational(name, &label_value(a, name))?));
        }
        return Ok(Class::Cubic(c, CubicLabel::new(&pairs)));
    }
    Err(usage(format!("unknown class {:?}", a.class)))
}

impl Class {
    fn build(&self, cutoff: Option<usize>) -> Res<LadderRep> {
        Ok(match self {
            Class::Quad(c, l) => quadratic::build(*c, *l, cutoff)?,
            Class::Cubic(c, l) => cubic::build_cubic(*c, l, cutoff)?,
        })
    }

    fn structure(&self) -> Res<Polynomial> {
        Ok(match self {
            Class::Quad(c, l) => quadratic::structure_polynomial(*c, *l),
            Class::Cubic(c, l) => cubic::structure_polynomial_cubic(*c, l)?,
        })
    }

    fn tag(&self) -> &'static str {
        match self {
            Class::Quad(c, _) => c.tag(),
            Class::Cubic(c, _) => c.tag(),
        }
    }
}

/// Dense row-major rows up to dimension 64, coordinate triplets above.
fn matrix_value(m: &nalgebra::DMatrix<f64>) -> Value {
    if m.nrows() <= 64 {
        let rows: Vec<Vec<f64>> = (0..m.nrows()).map(|i| m.row(i).iter().copied().collect()).collect();
        json!({ "layout": "dense", "rows": rows })
    } else {
        let entries: Vec<(usize, usize, f64)> = (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .filter(|&(i, j)| m[(i, j)] != 0.0)
            .map(|(i, j)| (i, j, m[(i, j)]))
            .collect();
        json!({ "layout": "triplets", "dim": m.nrows(), "entries": entries })
    }
}

fn polynomial_value(p: &Polynomial) -> Value {
    json!({
        "text": p.to_string(),
        "coefficients": p.coefficients().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn rep_results(class: &str, rep: &LadderRep) -> Value {
    let mut v = serde_json::to_value(rep).unwrap_or(Value::Null);
    if let Value::Object(m) = &mut v {
        m.insert("class".into(), json!(class));
        m.insert(
            "matrices".into(),
            json!({
                "n0": matrix_value(&rep.n0_matrix()),
                "raise": matrix_value(&rep.raise_matrix()),
                "lower": matrix_value(&rep.lower_matrix()),
            }),
        );
    }
    v
}

fn complex_list(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

fn rep_build(a: &LabelArgs, tol: f64) -> Res<Output> {
    let class = parse_class(a)?;
    let rep = class.build(a.cutoff)?;
    let report = verify_closure(&rep, &class.structure()?, tol);
    Ok(Output::new(a, rep_results(class.tag(), &rep), vec![report]))
}

fn label_args_from_rep(class: &str, rep: &LadderRep) -> LabelArgs {
    let get = |n: &str| rep.label(n).map(|v| v.to_string());
    LabelArgs {
        class: class.to_string(),
        j: get("j"),
        k: get("k"),
        l: get("l"),
        k1: get("k1"),
        k2: get("k2"),
        j1: get("j1"),
        j2: get("j2"),
        cutoff: rep.truncated.then_some(rep.dim),
    }
}

fn rep_verify(a: &VerifyArgs, tol: f64) -> Res<Output> {
    let (class, rep) = match &a.from_file {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let doc: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let results = doc.get("results").ok_or_else(|| usage("document has no results"))?;
            let tag = results.get("class").and_then(Value::as_str).ok_or_else(|| usage("results carry no class"))?;
            let rep: LadderRep =
                serde_json::from_value(results.clone()).map_err(|e| usage(format!("results are not a representation: {e}")))?;
            rep.check_shape()?;
            (parse_class(&label_args_from_rep(tag, &rep))?, rep)
        }
        None => {
            let la = a.labels.with_class(a.class.clone().unwrap_or_default());
            let class = parse_class(&la)?;
            let rep = class.build(la.cutoff)?;
            (class, rep)
        }
    };
    let f = class.structure()?;
    let mut report = verify_closure(&rep, &f, tol);
    let (mean, spread) = casimir_spread(&rep, &f);
    report.check("Casimir constancy", spread, tol);
    let residuals: Map<String, Value> = report.checks.iter().map(|c| (c.name.clone(), json!(c.residual))).collect();
    let results = json!({
        "class": class.tag(),
        "labels": rep.labels.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect::<Map<String, Value>>(),
        "dim": rep.dim,
        "truncated": rep.truncated,
        "structure_polynomial": polynomial_value(&f),
        "casimir_mean": mean,
        "residuals": residuals,
    });
    Ok(Output::new(a, results, vec![report]))
}

fn oracle_compare(a: &OracleArgs, tol: f64) -> Res<Output> {
    let class = parse_class(&a.label)?;
    let rep = class.build(a.label.cutoff)?;
    let oracle = match &class {
        Class::Quad(c, l) => boson::quadratic_oracle(*c, *l, rep.dim, a.pad)?,
        Class::Cubic(c, l) => boson::cubic_oracle(*c, l, rep.dim, a.pad)?,
    };
    let report = boson::compare(&rep, &oracle, tol)?;
    let results = json!({
        "class": class.tag(),
        "dim": rep.dim,
        "modes": oracle.space.modes,
        "fock_cutoffs": oracle.space.cutoffs,
        "subspace_states": oracle.subspace.len(),
        "interior_states": oracle.interior,
        "realization": oracle.realization.name,
    });
    Ok(Output::new(a, results, vec![report]))
}

fn casimir_cmd(a: &LabelArgs, tol: f64) -> Res<Output> {
    let class = parse_class(a)?;
    let exact = match &class {
        Class::Quad(c, l) => quadratic::casimir_exact(*c, *l)?,
        Class::Cubic(c, l) => cubic::casimir_exact(*c, l)?,
    };
    let rep = match class.build(a.cutoff) {
        Ok(r) => r,
        Err(Failure::Usage(_)) if a.cutoff.is_none() => class.build(Some(20))?,
        Err(e) => return Err(e),
    };
    let f = class.structure()?;
    let (mean, spread) = casimir_spread(&rep, &f);
    let mut report = VerificationReport::new();
    report.check("Casimir constancy", spread, tol);
    let exact_f = polyalg::poly::to_f64(&exact);
    report.check("Casimir matches exact value", (mean - exact_f).abs() / (1.0 + exact_f.abs()), tol);
    let mut printed_v = Value::Null;
    if let Class::Quad(c, l) = &class {
        if let Some((form, p)) = quadratic::printed_casimir(*c, *l) {
            if p != exact {
                report.discrepancy(format!("{c} Casimir"), format!("{form} = {p}"), exact.to_string(), polyalg::poly::to_f64(&(p - exact)).abs());
            }
            printed_v = json!({ "form": form, "value": p.to_string(), "matches": p == exact });
        }
    }
    let results = json!({
        "class": class.tag(),
        "exact": exact.to_string(),
        "value": exact_f,
        "on_rep_mean": mean,
        "spread": spread,
        "printed": printed_v,
    });
    Ok(Output::new(a, results, vec![report]))
}

fn state_value(s: &coherent::CoherentState) -> Value {
    json!({
        "coefficients": complex_list(&s.coefficients),
        "normalized": complex_list(&s.normalized()),
        "norm_constant": s.norm_constant,
        "truncation": s.truncation,
        "tail_bound": s.tail_bound,
    })
}

fn cs_bg(a: &BgArgs, tol: f64) -> Res<Output> {
    let class = parse_class(&a.label)?;
    let rep = class.build(a.label.cutoff)?;
    let alpha = Complex64::new(a.alpha_re, a.alpha_im);
    let s = coherent::bg_state(&rep, alpha, tol)?;
    let mut report = VerificationReport::new();
    report.check("BG eigen-residual", coherent::bg_eigen_residual(&rep, &s), tol);
    Ok(Output::new(a, state_value(&s), vec![report]))
}

fn cs_perelomov(a: &PerelomovArgs, tol: f64) -> Res<Output> {
    let class = parse_class(&a.label)?;
    let rep = class.build(a.label.cutoff)?;
    let s = coherent::perelomov_state(&rep, Complex64::new(a.gamma_re, a.gamma_im))?;
    let mass: f64 = s.normalized().iter().map(|z| z.norm_sqr()).sum();
    let mut report = VerificationReport::new();
    report.check("unit norm", (mass - 1.0).abs(), tol);
    Ok(Output::new(a, state_value(&s), vec![report]))
}

fn cs_identity(a: &IdentityArgs) -> Res<Output> {
    let class = parse_class(&a.label)?;
    let rep = class.build(a.label.cutoff)?;
    let report = coherent::identity_check_finite(&rep, a.points)?;
    let results = json!({ "dim": rep.dim, "deviation": report.residual("resolution of identity") });
    Ok(Output::new(a, results, vec![report]))
}

fn parse_factor(spec: &str) -> Res<LadderRep> {
    let (family, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let mut la = LabelArgs {
        class: family.to_string(),
        j: None,
        k: None,
        l: None,
        k1: None,
        k2: None,
        j1: None,
        j2: None,
        cutoff: None,
    };
    for kv in rest.split(',').filter(|s| !s.is_empty()) {
        let (key, val) = kv.split_once('=').ok_or_else(|| usage(format!("bad factor entry {kv:?}")))?;
        let v = Some(val.trim().to_string());
        match key.trim() {
            "j" => la.j = v,
            "k" => la.k = v,
            "l" => la.l = v,
            "k1" => la.k1 = v,
            "k2" => la.k2 = v,
            "j1" => la.j1 = v,
            "j2" => la.j2 = v,
            "cutoff" => la.cutoff = Some(val.trim().parse().map_err(|_| usage(format!("bad cutoff {val:?}")))?),
            other => return Err(usage(format!("unknown factor key {other:?}"))),
        }
    }
    let need_cutoff = || la.cutoff.ok_or_else(|| usage(format!("{family} needs cutoff=N")));
    match family {
        "boson" => Ok(compose::boson_rep(need_cutoff()?)),
        "su2" => Ok(compose::su2_rep(rational("j", &la.j)?)?),
        "su11" => Ok(compose::su11_rep(rational("k", &la.k)?, need_cutoff()?)?),
        _ => parse_class(&la)?.build(la.cutoff),
    }
}

fn compose_cmd(a: &ComposeArgs, tol: f64) -> Res<Output> {
    let left = parse_factor(&a.left)?;
    let right = parse_factor(&a.right)?;
    let pi = rat("pi", &a.pi)?;
    let comp = compose::compose(&left, &right, pi)?;
    let m = compose::rep_order(&left)?;
    let n = compose::rep_order(&right)?;
    let fit = compose::fit_order(&comp)?;
    let mut report = VerificationReport::new();
    report.require("degree <= m+n+1", fit.degree <= m + n + 1);
    report.check("fit residual (relative)", fit.residual, tol.max(1e-9));
    let results = json!({
        "left_order": m,
        "right_order": n,
        "bound": m + n + 1,
        "subspace_dim": comp.pairs.len(),
        "pairs": comp.pairs,
        "pi0_diag": comp.pi0_diag,
        "raise_amps": comp.product_rep.raise_amps,
        "fit": fit,
    });
    Ok(Output::new(a, results, vec![report]))
}

/// Rewrites finite, nonzero tolerances to the requested one.
fn retolerance(report: &mut VerificationReport, tol: f64) {
    for c in &mut report.checks {
        if c.tolerance.is_finite() && c.tolerance > 0.0 {
            c.tolerance = tol;
            c.passed = c.residual <= tol;
        }
    }
}

fn map_conjugate(a: &LabelArgs, tol: f64) -> Res<Output> {
    let class = parse_class(a)?;
    let rep = class.build(a.cutoff)?;
    let mut m = coherent::canonical_conjugate(&rep, &class.structure()?)?;
    retolerance(&mut m.report, tol);
    Ok(Output::new(a, json!({ "dim": rep.dim, "matrix": matrix_value(&m.matrix) }), vec![m.report]))
}

fn map_deform(a: &DeformArgs, tol: f64) -> Res<Output> {
    let class = parse_class(&a.label)?;
    let rep = class.build(a.label.cutoff)?;
    let eps = a.epsilon.unwrap_or_else(|| coherent::vacuum_epsilon(&rep, a.lambda));
    let mut m = coherent::deformation_map(&rep, &class.structure()?, a.lambda, a.epsilon)?;
    retolerance(&mut m.report, tol);
    let results = json!({ "dim": rep.dim, "epsilon": eps, "matrix": matrix_value(&m.matrix) });
    Ok(Output::new(a, results, vec![m.report]))
}

fn app_degeneracy(a: &DegeneracyArgs) -> Res<Output> {
    let hi = a.n_max.unwrap_or(a.n);
    if hi < a.n {
        return Err(usage("--n-max must be at least --n"));
    }
    let rows: Vec<_> = (a.n..=hi).map(applications::aniso_degeneracy).collect();
    let mut report = VerificationReport::new();
    for r in &rows {
        report.require(format!("N={} enumeration = closed form = census", r.n), r.consistent());
    }
    let mut table = vec![
        ["N", "ordered", "closed_form_ordered", "unordered", "closed_form_unordered", "census_ordered", "census_unordered"]
            .map(String::from)
            .to_vec(),
    ];
    for r in &rows {
        table.push(
            [r.n, r.ordered_count, r.closed_form_ordered, r.unordered_count, r.closed_form_unordered, r.census_ordered, r.census_unordered]
                .map(|v| v.to_string())
                .to_vec(),
        );
    }
    let results = if rows.len() == 1 {
        let r = &rows[0];
        json!({
            "N": r.n,
            "ordered": r.ordered_count,
            "closed_form": r.closed_form_ordered,
            "unordered": r.unordered_count,
            "closed_form_unordered": r.closed_form_unordered,
            "census_ordered": r.census_ordered,
            "census_unordered": r.census_unordered,
        })
    } else {
        json!({ "levels": rows })
    };
    let mut out = Output::new(a, results, vec![report]);
    out.table = Some(table);
    Ok(out)
}

fn spectrum_table(s: &applications::BlockSpectrum) -> Vec<Vec<String>> {
    let mut t = vec![vec!["block".to_string(), "index".to_string(), "eigenvalue".to_string()]];
    for (lab, ev) in s.block_labels.iter().zip(&s.eigenvalues) {
        for (i, e) in ev.iter().enumerate() {
            t.push(vec![lab.clone(), i.to_string(), format!("{e:.17e}")]);
        }
    }
    t
}

fn app_dicke(a: &DickeArgs, tol: f64) -> Res<Output> {
    let j = rat("j", &a.j)?;
    let l_max = rat("l-max", &a.l_max)?;
    let (s, mut report) = match a.cutoff {
        Some(c) => applications::dicke_spectrum_with_cutoff(j, l_max, a.omega, a.kappa, c)?,
        None => applications::dicke_spectrum(j, l_max, a.omega, a.kappa)?,
    };
    retolerance(&mut report, tol);
    let mut out = Output::new(a, serde_json::to_value(&s).unwrap_or(Value::Null), vec![report]);
    out.table = Some(spectrum_table(&s));
    Ok(out)
}

fn app_trilinear(a: &TrilinearArgs, tol: f64) -> Res<Output> {
    let kappa = Complex64::new(a.kappa_re, a.kappa_im);
    let (s, mut report) = applications::trilinear_sector(a.epsilon, a.cbc, a.omega_a, kappa)?;
    retolerance(&mut report, tol);
    let mut out = Output::new(a, serde_json::to_value(&s).unwrap_or(Value::Null), vec![report]);
    out.table = Some(spectrum_table(&s));
    Ok(out)
}

fn app_calogero(a: &CalogeroArgs, tol: f64) -> Res<Output> {
    let j = rat("j", &a.j)?;
    let mut report = applications::calogero_cubic(j)?;
    retolerance(&mut report, tol);
    Ok(Output::new(a, json!({ "j": j.to_string(), "states": (polyalg::poly::to_f64(&j) as usize) + 1 }), vec![report]))
}

fn app_hahn(a: &HahnArgs, tol: f64) -> Res<Output> {
    let src = match a.source {
        HahnKind::Calogero => HahnSource::Calogero { j: rational("j", &a.j)? },
        HahnKind::SingularOscillator => HahnSource::SingularOscillator {
            k1: rational("k1", &a.k1)?,
            k2: rational("k2", &a.k2)?,
            k: rational("k", &a.k)?,
        },
    };
    let mut report = applications::hahn_invariants(&src)?;
    retolerance(&mut report, tol);
    Ok(Output::new(a, json!({ "source": a.source }), vec![report]))
}

fn app_qes(a: &QesArgs) -> Res<Output> {
    let p = applications::qes_potential(rat("k", &a.k)?, rat("k1", &a.k1)?, a.w);
    Ok(Output::new(a, serde_json::to_value(p).unwrap_or(Value::Null), vec![]))
}

fn run(cli: &Cli, tol: f64) -> Res<(String, Output)> {
    let (name, out) = match &cli.cmd {
        Cmd::Rep(RepCmd::Build(a)) => ("rep build", rep_build(a, tol)?),
        Cmd::Rep(RepCmd::Verify(a)) => ("rep verify", rep_verify(a, tol)?),
        Cmd::Oracle(OracleCmd::Compare(a)) => ("oracle compare", oracle_compare(a, tol)?),
        Cmd::Casimir(a) => ("casimir", casimir_cmd(a, tol)?),
        Cmd::Cs(CsCmd::Bg(a)) => ("cs bg", cs_bg(a, tol)?),
        Cmd::Cs(CsCmd::Perelomov(a)) => ("cs perelomov", cs_perelomov(a, tol)?),
        Cmd::Cs(CsCmd::IdentityCheck(a)) => ("cs identity-check", cs_identity(a)?),
        Cmd::Compose(a) => ("compose", compose_cmd(a, tol)?),
        Cmd::Map(MapCmd::Conjugate(a)) => ("map conjugate", map_conjugate(a, tol)?),
        Cmd::Map(MapCmd::Deform(a)) => ("map deform", map_deform(a, tol)?),
        Cmd::App(AppCmd::Degeneracy(a)) => ("app degeneracy", app_degeneracy(a)?),
        Cmd::App(AppCmd::Dicke(a)) => ("app dicke", app_dicke(a, tol)?),
        Cmd::App(AppCmd::Trilinear(a)) => ("app trilinear", app_trilinear(a, tol)?),
        Cmd::App(AppCmd::Calogero(a)) => ("app calogero", app_calogero(a, tol)?),
        Cmd::App(AppCmd::Hahn(a)) => ("app hahn", app_hahn(a, tol)?),
        Cmd::App(AppCmd::Qes(a)) => ("app qes", app_qes(a)?),
    };
    Ok((name.to_string(), out))
}

/// `key = value` lines; `#` starts a comment. Known keys: tol, format.
fn read_config(path: &PathBuf) -> Res<(Option<f64>, Option<Format>)> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let (mut tol, mut format) = (None, None);
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key = value", path.display(), no + 1)))?;
        let v = v.trim();
        match k.trim() {
            "tol" => tol = Some(v.parse().map_err(|_| usage(format!("config tol: bad number {v:?}")))?),
            "format" => format = Some(Format::from_str(v, true).map_err(|_| usage(format!("config format: {v:?}")))?),
            other => return Err(usage(format!("{}:{}: unknown key {other:?}", path.display(), no + 1))),
        }
    }
    Ok((tol, format))
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<Vec<String>>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&p, x, rows);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        Value::String(s) => rows.push(vec![prefix.to_string(), s.clone()]),
        other => rows.push(vec![prefix.to_string(), other.to_string()]),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cfg_tol, cfg_format) = match cli.config.as_ref().map(read_config).transpose() {
        Ok(c) => c.unwrap_or((None, None)),
        Err(Failure::Usage(m) | Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    let tol = cli.tol.or(cfg_tol).unwrap_or(1e-10);
    let format = cli.format.or(cfg_format).unwrap_or(Format::Json);
    if tol.is_nan() || tol <= 0.0 {
        eprintln!("error: --tol must be positive");
        return ExitCode::from(2);
    }
    let (name, out) = match run(&cli, tol) {
        Ok(v) => v,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
    };
    let passed = out.reports.iter().all(VerificationReport::passed);
    let mut stdout = std::io::stdout().lock();
    match format {
        Format::Json => {
            let doc = json!({
                "schema_version": "1",
                "command": name,
                "inputs": out.inputs,
                "results": out.results,
                "reports": out.reports,
                "status": if passed { "PASS" } else { "FAIL" },
                "tolerance": tol,
            });
            let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&doc).expect("document serializes"));
        }
        Format::Csv => {
            let table = out.table.unwrap_or_else(|| {
                let mut rows = vec![vec!["key".to_string(), "value".to_string()]];
                flatten("", &out.results, &mut rows);
                rows
            });
            for row in table {
                let _ = writeln!(stdout, "{}", row.iter().map(|s| csv_field(s)).collect::<Vec<_>>().join(","));
            }
        }
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
