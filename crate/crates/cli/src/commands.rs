//! The `lsea` command tree.
//!
//! Element arguments are expressions (see [`crate::expr`]) or `@path` to an
//! element JSON file. Map arguments are paths to map JSON files.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lsea_core::maps::{check_inverse_pair, u1_closed_form, DerivationData, EndomorphismData, NilpotencyProbe, PolyMap};
use lsea_core::scalar::parse_scalar;
use lsea_core::serial::{map_kind, MapKind};
use lsea_core::solver::{ad_preimage, derivation_space, twisted_kernel, rfactor_decompose};
use lsea_core::{commutator, Element, Error, WeightVector};
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{self, ExprError};
use crate::suites;

#[derive(Debug, Parser)]
#[command(name = "lsea", version, about = "Exact computations in the algebra U_n")]
pub struct Cli {
    /// Number of generator pairs; inferred from the inputs when omitted.
    #[arg(short = 'n', global = true)]
    pub n: Option<usize>,

    /// Abort once a product exceeds this many terms.
    #[arg(long, global = true, env = "LSEA_MAX_TERMS")]
    pub max_terms: Option<usize>,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form of an expression.
    Norm { expr: String },
    /// Product a*b.
    Mul { a: String, b: String },
    /// Commutator [a, b].
    Comm { a: String, b: String },
    /// ad(a)(b) = [a, b] evaluated through the inner derivation.
    Ad { a: String, b: String },
    /// Partial derivative of an element of L_n in l_j.
    Pderiv {
        expr: String,
        #[arg(long, short = 'j')]
        index: usize,
    },
    /// f(l - r) for f in L_n.
    Shift { expr: String },
    /// Leading L-monomial.
    Lm { expr: String },
    /// Leading coefficient in R_n.
    Lc { expr: String },
    /// Weighted degree.
    Wdeg {
        expr: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
    },
    /// Weighted homogeneous components.
    Parts {
        expr: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
    },
    /// Derivations given by generator images.
    #[command(subcommand)]
    Der(DerCommand),
    /// Endomorphisms given by generator images.
    #[command(subcommand)]
    Endo(EndoCommand),
    /// Closed-form automorphism pairs of U_1.
    #[command(subcommand)]
    U1(U1Command),
    /// Linear-algebra solvers.
    #[command(subcommand)]
    Solve(SolveCommand),
    /// Run a randomized verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
pub enum DerCommand {
    Check { map: PathBuf },
    Apply { map: PathBuf, expr: String },
    Probe {
        map: PathBuf,
        expr: String,
        #[arg(long, default_value_t = 8)]
        bound: u32,
    },
    Grade {
        map: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
    },
}

#[derive(Debug, Subcommand)]
pub enum EndoCommand {
    Check { map: PathBuf },
    Apply { map: PathBuf, expr: String },
    /// phi∘psi, i.e. x ↦ phi(psi(x)).
    Compose { phi: PathBuf, psi: PathBuf },
    /// The extension of f = (f1; …; fn) on L_n to U_n.
    Lift { components: String },
    Affine { map: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum U1Command {
    /// phi: l1 ↦ alpha*l1 + h(r1), r1 ↦ alpha*r1, with its inverse.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SolveCommand {
    /// Find g in I_n with ad(l_i)(g) = u_i, given "u1; …; un".
    AdPreimage { u: String },
    /// Homogeneous g of degree d with -ad(l_i)(g) = r_i g + g r_i.
    #[command(name = "lemma27")]
    Twisted {
        #[arg(long)]
        i: usize,
        #[arg(long)]
        d: u32,
    },
    /// u, v in R_n with r_i^k r_j h = ad(l_i)(r_i u) + r_i r_j v.
    Rfactor {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        h: String,
    },
    /// Basis of the derivations of one weighted degree.
    Derspace {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long)]
        into_i: bool,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        weights: Option<Vec<i64>>,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub suite: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub cases: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// The inputs are well-formed but lack the property asked about.
    #[error("{0}")]
    Failed(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Failed(_) => 1,
            CliError::Core(e) => match e {
                Error::Anomaly(_) => 3,
                Error::TermLimit { .. } => 4,
                Error::RelationsViolated(_)
                | Error::Unverified
                | Error::NotInSubalgebra { .. }
                | Error::Incompatible { .. }
                | Error::NotHomogeneous { .. } => 1,
                _ => 2,
            },
        }
    }
}

impl From<ExprError> for CliError {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Syntax(p) => CliError::Usage(p.to_string()),
            ExprError::Algebra(a) => CliError::Core(a),
        }
    }
}

/// Result of a successful command: text for humans, JSON for `--json`,
/// and the exit code (nonzero when a verification reports a failure).
pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            code: 0,
        }
    }

    fn element(e: &Element) -> Self {
        Output::ok(expr::format(e), to_json(e))
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

struct Ctx {
    n: Option<usize>,
    limit: Option<usize>,
}

/// Largest generator index mentioned in an expression.
fn max_index(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 1;
    for (k, &c) in b.iter().enumerate() {
        if c == b'l' || c == b'r' {
            let digits: String = text[k + 1..].chars().take_while(char::is_ascii_digit).collect();
            if let Ok(v) = digits.parse::<usize>() {
                best = best.max(v);
            }
        }
    }
    best
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &Path) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Usage(format!("{}: {e}", what.display())))
}

impl Ctx {
    /// Ambient for a `;`-separated list with one entry per generator pair.
    fn ambient_for_list(&self, text: &str) -> usize {
        self.n.unwrap_or_else(|| max_index(text).max(text.split(';').count()))
    }

    fn element_in(&self, arg: &str, n: usize) -> Result<Element, CliError> {
        if let Some(path) = arg.strip_prefix('@') {
            let path = Path::new(path);
            let e: Element = parse_json(&read_file(path)?, path)?;
            if e.ambient() != n {
                return Err(CliError::Usage(format!(
                    "{}: element lives in U_{}, expected U_{n}",
                    path.display(),
                    e.ambient()
                )));
            }
            e.check_terms(self.limit)?;
            return Ok(e);
        }
        Ok(expr::parse_limited(arg, n, self.limit)?)
    }

    fn list_in(&self, arg: &str, n: usize) -> Result<Vec<Element>, CliError> {
        Ok(expr::parse_list(arg, n, self.limit)?)
    }

    /// Ambient for element arguments, reading `@file` headers when needed.
    fn ambient_of(&self, args: &[&str]) -> Result<usize, CliError> {
        if let Some(n) = self.n {
            return Ok(n);
        }
        let mut n = 1;
        for a in args {
            n = n.max(match a.strip_prefix('@') {
                Some(p) => {
                    let p = Path::new(p);
                    let v: Value = parse_json(&read_file(p)?, p)?;
                    v.get("n").and_then(Value::as_u64).unwrap_or(1) as usize
                }
                None => max_index(a),
            });
        }
        Ok(n)
    }

    fn elements(&self, args: &[&str]) -> Result<Vec<Element>, CliError> {
        let n = self.ambient_of(args)?;
        args.iter().map(|a| self.element_in(a, n)).collect()
    }

    fn mul(&self, a: &Element, b: &Element) -> Result<Element, CliError> {
        Ok(a.mul_limited(b, self.limit)?)
    }

    fn weights(&self, w: Option<Vec<i64>>, n: usize) -> Result<WeightVector, CliError> {
        match w {
            None => Ok(WeightVector::standard(n)),
            Some(v) if v.len() == n => Ok(WeightVector::new(v)),
            Some(v) => Err(CliError::Usage(format!("expected {n} weights, got {}", v.len()))),
        }
    }

    fn map_value(&self, path: &Path, want: MapKind) -> Result<Value, CliError> {
        let v: Value = parse_json(&read_file(path)?, path)?;
        match map_kind(&v) {
            Some(k) if k == want => {}
            Some(k) => return Err(CliError::Usage(format!("{}: expected a {want:?} map, found {k:?}", path.display()))),
            None => return Err(CliError::Usage(format!("{}: missing or unknown \"kind\"", path.display()))),
        }
        if let Some(n) = self.n {
            if v.get("n").and_then(Value::as_u64) != Some(n as u64) {
                return Err(CliError::Usage(format!("{}: map is not on U_{n}", path.display())));
            }
        }
        Ok(v)
    }

    fn derivation(&self, path: &Path) -> Result<DerivationData, CliError> {
        let v = self.map_value(path, MapKind::Derivation)?;
        map_from_value(v, path)
    }

    fn endomorphism(&self, path: &Path) -> Result<EndomorphismData, CliError> {
        let v = self.map_value(path, MapKind::Endomorphism)?;
        map_from_value(v, path)
    }
}

/// A map whose file claims `verified: true` but fails the relations is a
/// math failure, not a usage error.
fn map_from_value<T: serde::de::DeserializeOwned>(v: Value, path: &Path) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| {
        let msg = format!("{}: {e}", path.display());
        if msg.contains("fails the defining relations") {
            CliError::Failed(msg)
        } else {
            CliError::Usage(msg)
        }
    })
}

fn violations_output(kind: &str, violations: &[lsea_core::maps::Violation], map: Value) -> Output {
    if violations.is_empty() {
        return Output::ok(format!("{kind}: OK"), json!({"ok": true, "map": map}));
    }
    let mut text = format!("{kind}: FAILED");
    for v in violations {
        let _ = write!(text, "\n  {v}");
    }
    let list: Vec<Value> = violations
        .iter()
        .map(|v| json!({"relation": v.relation.to_string(), "residual": expr::format(&v.residual)}))
        .collect();
    Output {
        text,
        json: json!({"ok": false, "violations": list}),
        code: 1,
    }
}

fn probe_output(p: &NilpotencyProbe) -> Output {
    match p {
        NilpotencyProbe::ZeroAt(k) => Output::ok(format!("zero at k = {k}"), json!({"zero_at": k})),
        NilpotencyProbe::NonzeroThrough { bound, degrees } => Output::ok(
            format!(
                "nonzero through k = {bound}; degrees {}",
                degrees.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ),
            json!({"nonzero_through": bound, "degrees": degrees}),
        ),
    }
}

fn map_text(l: &[Element], r: &[Element]) -> String {
    let mut out = String::new();
    for (k, e) in l.iter().enumerate() {
        let _ = writeln!(out, "l{} -> {}", k + 1, expr::format(e));
    }
    for (k, e) in r.iter().enumerate() {
        let _ = writeln!(out, "r{} -> {}", k + 1, expr::format(e));
    }
    out.pop();
    out
}

fn run_command(cli: Cli) -> Result<Output, CliError> {
    let ctx = Ctx {
        n: cli.n,
        limit: cli.max_terms,
    };
    if ctx.n == Some(0) {
        return Err(CliError::Usage("n must be positive".into()));
    }
    Ok(match cli.command {
        Command::Norm { expr } => Output::element(&ctx.elements(&[&expr])?[0]),
        Command::Mul { a, b } => {
            let v = ctx.elements(&[&a, &b])?;
            Output::element(&ctx.mul(&v[0], &v[1])?)
        }
        Command::Comm { a, b } => {
            let v = ctx.elements(&[&a, &b])?;
            let ab = ctx.mul(&v[0], &v[1])?;
            let ba = ctx.mul(&v[1], &v[0])?;
            Output::element(&(&ab - &ba))
        }
        Command::Ad { a, b } => {
            let v = ctx.elements(&[&a, &b])?;
            let out = DerivationData::ad(&v[0]).apply(&v[1])?;
            debug_assert_eq!(Some(&out), commutator(&v[0], &v[1]).ok().as_ref());
            out.check_terms(ctx.limit)?;
            Output::element(&out)
        }
        Command::Pderiv { expr, index } => Output::element(&ctx.elements(&[&expr])?[0].pderiv_l(index)?),
        Command::Shift { expr } => {
            let e = ctx.elements(&[&expr])?.remove(0);
            let out = e.shift_lr()?;
            out.check_terms(ctx.limit)?;
            Output::element(&out)
        }
        Command::Lm { expr } => {
            let e = ctx.elements(&[&expr])?.remove(0);
            match e.lm_lc().0 {
                Some(u) => {
                    let m = Element::basis(lsea_core::BasisWord::new(u.clone(), lsea_core::RWord::empty()));
                    Output::ok(expr::format(&m), json!({"exponents": u.exponents()}))
                }
                None => Output::ok("undefined (zero element)", Value::Null),
            }
        }
        Command::Lc { expr } => Output::element(&ctx.elements(&[&expr])?[0].lm_lc().1),
        Command::Wdeg { expr, weights } => {
            let e = ctx.elements(&[&expr])?.remove(0);
            let w = ctx.weights(weights, e.ambient())?;
            match e.wdeg(&w)?.finite() {
                Some(d) => Output::ok(d.to_string(), json!(d)),
                None => Output::ok("-inf", json!("-inf")),
            }
        }
        Command::Parts { expr, weights } => {
            let e = ctx.elements(&[&expr])?.remove(0);
            let w = ctx.weights(weights, e.ambient())?;
            let parts = e.homogeneous_components(&w)?;
            let text = parts
                .iter()
                .rev()
                .map(|(d, p)| format!("{d}: {}", expr::format(p)))
                .collect::<Vec<_>>()
                .join("\n");
            let js: Vec<Value> = parts
                .iter()
                .rev()
                .map(|(d, p)| json!({"degree": d, "part": to_json(p)}))
                .collect();
            Output::ok(text, Value::Array(js))
        }
        Command::Der(c) => der(&ctx, c)?,
        Command::Endo(c) => endo(&ctx, c)?,
        Command::U1(U1Command::Pair { alpha, h }) => {
            if ctx.n.is_some_and(|n| n != 1) {
                return Err(CliError::Usage("u1 works in U_1 only".into()));
            }
            let alpha = parse_scalar(&alpha).map_err(|e| CliError::Usage(format!("alpha: {e}")))?;
            let h = Ctx { n: Some(1), ..ctx }.element_in(&h, 1)?;
            let (phi, psi) = u1_closed_form(&alpha, &h)?;
            if !check_inverse_pair(&phi, &psi)? {
                return Err(CliError::Core(Error::InvalidArgument("closed form did not invert".into())));
            }
            Output::ok(
                format!(
                    "phi:\n{}\npsi:\n{}",
                    map_text(phi.l_images(), phi.r_images()),
                    map_text(psi.l_images(), psi.r_images())
                ),
                json!({"phi": to_json(&phi), "psi": to_json(&psi)}),
            )
        }
        Command::Solve(c) => solve(&ctx, c)?,
        Command::Verify(args) => {
            let cases = match args.cases {
                Some(c) => c,
                None => suites::default_cases(&args.suite).unwrap_or(0),
            };
            let report = suites::run_suite(&args.suite, args.seed, cases).ok_or_else(|| {
                let names: Vec<&str> = suites::SUITES.iter().map(|(s, _)| *s).collect();
                CliError::Usage(format!("unknown suite {:?}; known: {}", args.suite, names.join(", ")))
            })?;
            Output {
                text: report.summary(),
                json: to_json(&report),
                code: report.exit_code(),
            }
        }
    })
}

fn der(ctx: &Ctx, c: DerCommand) -> Result<Output, CliError> {
    Ok(match c {
        DerCommand::Check { map } => {
            let d = ctx.derivation(&map)?;
            let (d, violations) = d.check();
            violations_output("derivation", &violations, to_json(&d))
        }
        DerCommand::Apply { map, expr } => {
            let d = ctx.derivation(&map)?.verify()?;
            let x = ctx.element_in(&expr, d.ambient())?;
            let out = d.apply(&x)?;
            out.check_terms(ctx.limit)?;
            Output::element(&out)
        }
        DerCommand::Probe { map, expr, bound } => {
            let d = ctx.derivation(&map)?.verify()?;
            let x = ctx.element_in(&expr, d.ambient())?;
            probe_output(&d.probe_nilpotent(&x, bound)?)
        }
        DerCommand::Grade { map, weights } => {
            let d = ctx.derivation(&map)?.verify()?;
            let w = ctx.weights(weights, d.ambient())?;
            let parts = d.graded_parts(&w)?;
            let text = parts
                .iter()
                .rev()
                .map(|(m, p)| format!("degree {m}:\n{}", map_text(p.l_images(), p.r_images())))
                .collect::<Vec<_>>()
                .join("\n");
            let js: Vec<Value> = parts
                .iter()
                .rev()
                .map(|(m, p)| json!({"degree": m, "part": to_json(p)}))
                .collect();
            Output::ok(text, Value::Array(js))
        }
    })
}

fn endo(ctx: &Ctx, c: EndoCommand) -> Result<Output, CliError> {
    Ok(match c {
        EndoCommand::Check { map } => {
            let e = ctx.endomorphism(&map)?;
            let (e, violations) = e.check();
            violations_output("endomorphism", &violations, to_json(&e))
        }
        EndoCommand::Apply { map, expr } => {
            let e = ctx.endomorphism(&map)?.verify()?;
            let x = ctx.element_in(&expr, e.ambient())?;
            let out = e.apply(&x)?;
            out.check_terms(ctx.limit)?;
            Output::element(&out)
        }
        EndoCommand::Compose { phi, psi } => {
            let a = ctx.endomorphism(&phi)?.verify()?;
            let b = ctx.endomorphism(&psi)?.verify()?;
            let c = a.compose(&b)?;
            Output::ok(map_text(c.l_images(), c.r_images()), to_json(&c))
        }
        EndoCommand::Lift { components } => {
            let n = ctx.ambient_for_list(&components);
            let comps = ctx.list_in(&components, n)?;
            if comps.len() != n {
                return Err(CliError::Usage(format!("expected {n} components, got {}", comps.len())));
            }
            let f = PolyMap::new(n, comps)?;
            let phi = EndomorphismData::lift(&f).verify()?;
            // the map JSON is the natural output here, text or not
            let js = to_json(&phi);
            Output::ok(serde_json::to_string_pretty(&js).expect("serializable"), js)
        }
        EndoCommand::Affine { map } => {
            let e = ctx.endomorphism(&map)?.verify()?;
            let a = e.is_affine()?;
            Output::ok(if a { "affine" } else { "not affine" }, json!({"affine": a}))
        }
    })
}

fn solve(ctx: &Ctx, c: SolveCommand) -> Result<Output, CliError> {
    Ok(match c {
        SolveCommand::AdPreimage { u } => {
            let n = ctx.ambient_for_list(&u);
            let u = ctx.list_in(&u, n)?;
            if u.len() != n {
                return Err(CliError::Usage(format!("expected {n} elements u_i, got {}", u.len())));
            }
            let p = ad_preimage(&u)?;
            let mut text = expr::format(&p.g);
            if let Some(k) = p.kernel_dim {
                let _ = write!(text, "\nkernel dimension {k}");
            }
            Output::ok(text, json!({"g": to_json(&p.g), "kernel_dim": p.kernel_dim}))
        }
        SolveCommand::Twisted { i, d } => {
            let n = ctx.n.unwrap_or(i.max(2));
            let sols = twisted_kernel(n, i, d)?;
            let text = if sols.is_empty() {
                "no nonzero solutions".to_string()
            } else {
                expr::format_list(&sols).replace("; ", "\n")
            };
            Output::ok(text, Value::Array(sols.iter().map(to_json).collect()))
        }
        SolveCommand::Rfactor { k, i, j, h } => {
            let n = ctx.n.unwrap_or(max_index(&h).max(i).max(j));
            let h = ctx.element_in(&h, n)?;
            let (u, v) = rfactor_decompose(k, i, j, &h)?;
            Output::ok(
                format!("u = {}\nv = {}", expr::format(&u), expr::format(&v)),
                json!({"u": to_json(&u), "v": to_json(&v)}),
            )
        }
        SolveCommand::Derspace { degree, into_i, weights } => {
            let n = ctx.n.ok_or_else(|| CliError::Usage("derspace needs -n".into()))?;
            let w = ctx.weights(weights, n)?;
            let space = derivation_space(n, degree, into_i, &w)?;
            let mut text = format!("dimension {}", space.dim());
            for (k, b) in space.basis().iter().enumerate() {
                let _ = write!(text, "\nbasis {}:\n{}", k + 1, map_text(b.l_images(), b.r_images()));
            }
            Output::ok(
                text,
                json!({"dimension": space.dim(), "basis": space.basis().iter().map(to_json).collect::<Vec<_>>()}),
            )
        }
    })
}

/// Parses `args`, runs the command and writes the result; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let json_out = cli.json;
    match run_command(cli) {
        Ok(o) => {
            let _ = if json_out {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("serializable"))
            } else {
                writeln!(out, "{}", o.text)
            };
            o.code
        }
        Err(e) => {
            let code = e.exit_code();
            let _ = match (&e, code) {
                (_, 4) => writeln!(err, "error: {e}; raise --max-terms or LSEA_MAX_TERMS"),
                (CliError::Core(Error::Anomaly(rep)), _) if json_out => {
                    writeln!(err, "{}", serde_json::to_string_pretty(rep.as_ref()).expect("serializable"))
                }
                (CliError::Core(Error::Anomaly(rep)), _) => writeln!(
                    err,
                    "error: {e}\n{}",
                    serde_json::to_string(rep.as_ref()).expect("serializable")
                ),
                _ => writeln!(err, "error: {e}"),
            };
            code
        }
    }
}
