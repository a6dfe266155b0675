//! Command-line front end. [`run`] is pure: it returns the exit code and both
//! output streams so the binary stays a thin wrapper.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::algebra::{membership, Element, Subalgebra};
use crate::canonical::{apply_basis, conjugate_by_v, window_matrix, WindowMatrix, WindowOperator};
use crate::diagonal::{build_uz, check_uz_relations, membership_uz, RootOfUnity};
use crate::error::{Error, Result};
use crate::expectations::{e_cu, e_d2, e_diag_window, e_gauge, f_map, s1_limit};
use crate::morphisms::{bogoljubov_classify, BogoljubovClass, BogoljubovMatrix, Endomorphism};
use crate::parse::{parse_element, parse_element_with, parse_scalar, ParseOptions};
use crate::scalar::Scalar;
use crate::torus::{
    cascade_solve, check_power_equation, flipflop_commute_obstruction, gauge_equiv_obstruction,
    DyadicGridFunction, LaurentCircleFunction, OscillationReport, Preset,
};

/// Exit code for success and `EQUAL`.
pub const EXIT_OK: i32 = 0;
/// Exit code for `DIFFERENT`, non-membership and detected obstructions.
pub const EXIT_NEGATIVE: i32 = 1;
/// Exit code for malformed input.
pub const EXIT_PARSE: i32 = 2;
/// Exit code for engine errors.
pub const EXIT_ENGINE: i32 = 3;

const MAX_WINDOW_WIDTH: i64 = 1 << 14;
const MAX_INDEX: i64 = 1 << 30;

#[derive(Parser, Debug)]
#[command(name = "q2", about = "Exact computation in the 2-adic ring C*-algebra Q2", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the coarsened form, or the unique form at a fixed depth.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long)]
        depth: Option<u32>,
    },
    /// Decide operator equality; exit 0 for EQUAL, 1 for DIFFERENT.
    Eq {
        #[arg(allow_hyphen_values = true)]
        lhs: String,
        #[arg(allow_hyphen_values = true)]
        rhs: String,
    },
    /// Apply a named endomorphism (flipflop, shift, gauge:z, chi:k, beta:w,n, adU, ad:u).
    Apply {
        morphism: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Conditional expectations: CU, D2, gauge, S1 (limit), diag (windowed), F:i.
    Expect {
        target: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "-8:8", allow_hyphen_values = true)]
        window: String,
    },
    /// The vector x e_i in the canonical representation.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        index: i64,
    },
    /// Dump the window <e_row, x e_col> as CSV (text) or JSON.
    Window {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "-8:8", allow_hyphen_values = true)]
        window: String,
        /// Conjugate by V e_k = e_{-k-1} first.
        #[arg(long)]
        flip: bool,
    },
    /// Classify the Bogoljubov automorphism of the matrix (a b; c d).
    ClassifyBogoljubov {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Build U_z for z = zeta(2^n) and check its relations, or test a root order:exponent.
    Uz {
        n: Option<u32>,
        #[arg(long, conflicts_with = "n")]
        root: Option<String>,
    },
    /// Solve the cascade for a preset (step:eps, bump:v@c, char:n) or a grid JSON file.
    Cascade {
        source: String,
        #[arg(long, default_value_t = 10)]
        level: u32,
        #[arg(long, value_enum, default_value_t = CascadeMode::Gauge)]
        mode: CascadeMode,
    },
    /// Solve f(z^n) = f(z)^n for a Laurent polynomial f in z.
    SolveFeq {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
    },
    /// Membership in CU, D2, F2, O2 or QT.
    Member {
        sub: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CascadeMode {
    /// Obstruction to gauge equivalence of beta^f.
    Gauge,
    /// Obstruction to commuting with the flip-flop.
    Flipflop,
    /// Treat the input as psi and print h.
    Solve,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    code: i32,
    text: String,
    json: Value,
}

impl Reply {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Reply { code: EXIT_OK, text: text.into(), json }
    }

    fn verdict(positive: bool, text: impl Into<String>, json: Value) -> Self {
        let code = if positive { EXIT_OK } else { EXIT_NEGATIVE };
        Reply { code, text: text.into(), json }
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(reply) => {
            let stdout = match cli.format {
                Format::Text => format!("{}\n", reply.text.trim_end()),
                Format::Json => format!("{}\n", reply.json),
            };
            Outcome { code: reply.code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = if matches!(e, Error::Parse(_)) { EXIT_PARSE } else { EXIT_ENGINE };
            let stderr = match cli.format {
                Format::Text => format!("error: {e}\n"),
                Format::Json => format!("{}\n", error_json(&e)),
            };
            Outcome { code, stdout: String::new(), stderr }
        }
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "error": e.kind(), "message": e.to_string() });
    if let Error::Parse(p) = e {
        v["position"] = json!(p.position);
        v["expected"] = json!(p.expected);
        v["found"] = json!(p.found);
    }
    v
}

fn element_json(x: &Element) -> Value {
    serde_json::to_value(x).expect("elements serialize")
}

fn scalar_json(s: &Scalar) -> Value {
    serde_json::to_value(s).expect("scalars serialize")
}

fn parse_window(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::InvalidInput(format!("window must look like lo:hi, got {s:?}"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi || hi - lo >= MAX_WINDOW_WIDTH || lo.abs() > MAX_INDEX || hi.abs() > MAX_INDEX {
        return Err(Error::InvalidInput(format!(
            "window {lo}:{hi} must satisfy lo <= hi, width < {MAX_WINDOW_WIDTH}, |index| <= {MAX_INDEX}"
        )));
    }
    Ok((lo, hi))
}

fn vector_text(v: &BTreeMap<i64, Scalar>) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter().map(|(i, s)| format!("{i}: {s}")).collect::<Vec<_>>().join("\n")
}

fn vector_json(v: &BTreeMap<i64, Scalar>) -> Value {
    Value::Array(v.iter().map(|(i, s)| json!([i, scalar_json(s)])).collect())
}

fn window_reply(w: &WindowMatrix) -> Reply {
    Reply::ok(w.to_csv(), serde_json::to_value(w).expect("windows serialize"))
}

fn execute(cmd: &Command) -> Result<Reply> {
    match cmd {
        Command::Normalize { expr, depth } => {
            let x = parse_element(expr)?;
            let y = match depth {
                Some(b) => {
                    let b = *b;
                    let needed: u32 = x.terms().map(|(m, _)| b.saturating_sub(m.b)).max().unwrap_or(0);
                    if b > crate::algebra::MAX_DEPTH || needed > 14 {
                        return Err(Error::InvalidInput(format!("depth {b} would expand too many terms")));
                    }
                    x.normalize_depth(b)?
                }
                None => x.coarsen(),
            };
            Ok(Reply::ok(y.to_string(), element_json(&y)))
        }
        Command::Eq { lhs, rhs } => {
            let eq = parse_element(lhs)?.equals(&parse_element(rhs)?);
            let text = if eq { "EQUAL" } else { "DIFFERENT" };
            Ok(Reply::verdict(eq, text, json!({ "equal": eq })))
        }
        Command::Apply { morphism, expr } => {
            let e = Endomorphism::from_label(morphism)?;
            let y = e.apply(&parse_element(expr)?);
            Ok(Reply::ok(y.to_string(), element_json(&y)))
        }
        Command::Expect { target, expr, window } => expect(target, &parse_element(expr)?, window),
        Command::Eval { expr, index } => {
            if index.abs() > MAX_INDEX {
                return Err(Error::InvalidInput(format!("|index| must not exceed {MAX_INDEX}")));
            }
            let v = apply_basis(&parse_element(expr)?, *index);
            Ok(Reply::ok(vector_text(&v), vector_json(&v)))
        }
        Command::Window { expr, window, flip } => {
            let x = parse_element(expr)?;
            let (lo, hi) = parse_window(window)?;
            let w = if *flip { conjugate_by_v(&x, lo, hi)? } else { window_matrix(&WindowOperator::Element(x), lo, hi)? };
            Ok(window_reply(&w))
        }
        Command::ClassifyBogoljubov { a, b, c, d } => {
            let m = bogoljubov_matrix([a, b, c, d])?;
            let class = bogoljubov_classify(&m)?;
            let extensible = !matches!(class, BogoljubovClass::NotExtensible);
            let text = class.to_string();
            Ok(Reply::verdict(extensible, text.clone(), json!({ "class": text, "extensible": extensible })))
        }
        Command::Uz { n, root } => match (n, root) {
            (_, Some(root)) => {
                let (order, exp) = root
                    .split_once(':')
                    .and_then(|(o, e)| Some((o.trim().parse::<u64>().ok()?, e.trim().parse::<i64>().ok()?)))
                    .ok_or_else(|| Error::InvalidInput(format!("root must look like order:exponent, got {root:?}")))?;
                let z = RootOfUnity::new(order, exp)?;
                let inside = membership_uz(&z);
                let text = format!("{z}: U_z {} D2", if inside { "in" } else { "not in" });
                Ok(Reply::verdict(inside, text, json!({ "order": z.order(), "exponent": z.exponent(), "member": inside })))
            }
            (Some(n), None) => {
                let uz = build_uz(*n)?;
                check_uz_relations(*n)?;
                let text = format!("{uz}\nrelations: ok");
                Ok(Reply::ok(text, json!({ "element": element_json(&uz), "relations": true })))
            }
            (None, None) => Err(Error::InvalidInput("uz needs a level n or --root order:exponent".into())),
        },
        Command::Cascade { source, level, mode } => cascade(source, *level, *mode),
        Command::SolveFeq { f, n_max } => {
            let x = parse_element_with(f, ParseOptions { z_is_u: true })?;
            let f = LaurentCircleFunction::from_element(&x)
                .ok_or_else(|| Error::InvalidInput(format!("{x} is not a Laurent polynomial in z")))?;
            let n = check_power_equation(&f, (*n_max).clamp(2, 64))?;
            Ok(Reply::ok(format!("z^{n}"), json!({ "exponent": n })))
        }
        Command::Member { sub, expr } => {
            let s: Subalgebra = sub.parse()?;
            let inside = membership(&parse_element(expr)?, s);
            Ok(Reply::verdict(inside, inside.to_string(), json!({ "subalgebra": s.to_string(), "member": inside })))
        }
    }
}

fn expect(target: &str, x: &Element, window: &str) -> Result<Reply> {
    let element = |y: Element| Reply::ok(y.to_string(), element_json(&y));
    match target {
        "CU" => Ok(element(e_cu(x).coarsen())),
        "D2" => Ok(element(e_d2(x).coarsen())),
        "gauge" | "QT" => Ok(element(e_gauge(x).coarsen())),
        "S1" => {
            let s = s1_limit(x)?;
            Ok(Reply::ok(s.to_string(), scalar_json(&s)))
        }
        "diag" => {
            let (lo, hi) = parse_window(window)?;
            let d = e_diag_window(x, lo, hi)?;
            Ok(Reply::ok(vector_text(&d), vector_json(&d)))
        }
        t => match t.strip_prefix("F:").map(str::parse::<i64>) {
            Some(Ok(i)) if i.abs() <= 64 => Ok(element(f_map(x, i).coarsen())),
            _ => Err(Error::InvalidInput(format!("unknown expectation {t:?}; use CU, D2, gauge, S1, diag or F:i"))),
        },
    }
}

fn bogoljubov_matrix(entries: [&String; 4]) -> Result<BogoljubovMatrix> {
    let exact: Option<Vec<Scalar>> = entries.iter().map(|s| parse_scalar(s).ok()).collect();
    if let Some(v) = exact {
        let [a, b, c, d]: [Scalar; 4] = v.try_into().expect("four entries");
        return Ok(BogoljubovMatrix::exact(a, b, c, d));
    }
    let mut z = [Complex64::new(0.0, 0.0); 4];
    for (slot, s) in z.iter_mut().zip(entries) {
        *slot = parse_complex(s)?;
    }
    Ok(BogoljubovMatrix::float(z[0], z[1], z[2], z[3]))
}

/// Reads `re` or `re,im` as floats.
fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::InvalidInput(format!("matrix entry {s:?} is neither a scalar expression nor re[,im]"));
    let (re, im) = match s.split_once(',') {
        Some((r, i)) => (r.trim().parse::<f64>().map_err(|_| bad())?, i.trim().parse::<f64>().map_err(|_| bad())?),
        None => (s.trim().parse::<f64>().map_err(|_| bad())?, 0.0),
    };
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(bad())
    }
}

fn load_grid(source: &str, level: u32) -> Result<DyadicGridFunction> {
    if let Ok(p) = source.parse::<Preset>() {
        return p.sample(level);
    }
    if source.ends_with(".json") {
        let text = std::fs::read_to_string(source)
            .map_err(|e| Error::InvalidInput(format!("cannot read {source}: {e}")))?;
        return serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("bad grid JSON: {e}")));
    }
    Err(Error::InvalidInput(format!("unknown preset or grid file {source:?}")))
}

fn cascade(source: &str, level: u32, mode: CascadeMode) -> Result<Reply> {
    if level > 16 {
        return Err(Error::InvalidInput(format!("cascade level {level} exceeds 16")));
    }
    let f = load_grid(source, level)?;
    let report: OscillationReport = match mode {
        CascadeMode::Solve => {
            let h = cascade_solve(&f)?;
            let json = serde_json::to_value(&h).expect("grids serialize");
            let mut text = String::new();
            for (j, z) in h.values().iter().enumerate() {
                let _ = writeln!(text, "{j},{},{}", z.re, z.im);
            }
            return Ok(Reply::ok(text, json));
        }
        CascadeMode::Gauge => gauge_equiv_obstruction(&f)?,
        CascadeMode::Flipflop => flipflop_commute_obstruction(&f)?,
    };
    let text = format!(
        "level: {}\ncharacter: {}\noscillation at 1: {:.9}\nmax oscillation: {:.9} at index {}\n{}",
        report.level,
        report.character,
        report.oscillation_at_one,
        report.max_oscillation,
        report.worst_index,
        if report.is_obstructed() { "OBSTRUCTED" } else { "NO OBSTRUCTION" }
    );
    let mut json = serde_json::to_value(&report).expect("reports serialize");
    json["obstructed"] = json!(report.is_obstructed());
    Ok(Reply::verdict(!report.is_obstructed(), text, json))
}
