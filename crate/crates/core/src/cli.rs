//! Command-line front end for the `okapprox` binary.
//!
//! Complex numbers on the command line are written `a+bi` (`0.5`, `-0.3+0.4i`,
//! `2i`); JSON uses `[re, im]` pairs. JSON output has sorted keys and every
//! float printed with 17 significant digits, so identical invocations give
//! identical bytes and every value reads back exactly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::approximants::{
    is_inner, optimal_approximant_with, projection_sequence, ApproximantOptions, SolverKind, DEFAULT_INNER_TOL,
    DEFAULT_JMAX,
};
use crate::error::{Error, Result};
use crate::kernels::{default_truncation, gram_matrix, kernel_series, GramSource, GramTruncation, PointSet};
use crate::oracles::{
    bergman_distance_1pt, bergman_distance_2pt, bergman_one_point, bergman_singular_extremal, bergman_two_point,
    blaschke_product, hardy_distance, product_function, singular_inner_taylor,
};
use crate::series::TaylorSeries;
use crate::shapiro_shields::{shapiro_shields, three_way_distance, ShapiroShieldsResult};
use crate::weights::{WeightFamily, WeightSequence};
use crate::Complex64;

type Series = TaylorSeries<f64>;
type Weights = WeightSequence<f64>;
type Points = PointSet<f64>;

/// Series degree for named constructors when no truncation is given.
pub const DEFAULT_SOURCE_TRUNCATION: usize = 400;
/// Approximant degree used for the third distance route.
pub const DEFAULT_ROUTE_DEGREE: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "okapprox", version, about = "Optimal polynomial approximants and inner functions in weighted Hardy spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// hardy | bergman | dirichlet | dalpha=<alpha> | custom=<file>
    #[arg(long, global = true, default_value = "hardy")]
    pub space: String,
    /// Series truncation degree
    #[arg(long, global = true, env = "OKAPPROX_TRUNCATION")]
    pub truncation: Option<usize>,
    /// Inner-ness tolerance
    #[arg(long, global = true, default_value_t = DEFAULT_INNER_TOL)]
    pub tol: f64,
    /// Largest shift checked for inner-ness
    #[arg(long, global = true, default_value_t = DEFAULT_JMAX)]
    pub jmax: usize,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Cholesky,
    Lu,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimal polynomial approximant to 1/f
    Approx {
        /// Function source: constructor, inline coefficients or JSON file
        #[arg(long = "f")]
        f: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = Solver::Cholesky)]
        solver: Solver,
    },
    /// Shapiro-Shields inner function vanishing on a point set
    Ss {
        /// Comma-separated points or a JSON file with "points"
        #[arg(long)]
        points: String,
        /// Approximant degree for the third distance route
        #[arg(long, default_value_t = DEFAULT_ROUTE_DEGREE)]
        degree: usize,
    },
    /// Distance from 1 to the invariant subspace generated by the inner function of a point set
    Dist {
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = DEFAULT_ROUTE_DEGREE)]
        degree: usize,
    },
    /// Check whether f is inner
    InnerCheck {
        #[arg(long = "f")]
        f: String,
    },
    /// Long-format tables over a parameter grid
    Sweep {
        #[command(subcommand)]
        kind: SweepKind,
    },
    /// Reproducing kernel series at a point, or the Gram matrix of a point set
    Kernel {
        #[arg(long, conflicts_with = "points", required_unless_present = "points")]
        at: Option<String>,
        #[arg(long)]
        points: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SweepKind {
    /// Residual of p_n* f - 1 for n = 0..=max-degree
    Residuals {
        #[arg(long = "f")]
        f: String,
        #[arg(long, default_value_t = 10)]
        max_degree: usize,
        /// Comma-separated spaces; defaults to --space
        #[arg(long)]
        spaces: Option<String>,
    },
    /// dist² for a single zero at radius r, over start:stop:count
    Singleton {
        #[arg(long, default_value = "0.05:0.95:19")]
        radii: String,
        #[arg(long)]
        spaces: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ROUTE_DEGREE)]
        degree: usize,
    },
    /// dist² for zeros r and r·e^{iθ}, θ over count equally spaced angles in (0, π]
    Pair {
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        #[arg(long, default_value_t = 12)]
        angles: usize,
        #[arg(long)]
        spaces: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ROUTE_DEGREE)]
        degree: usize,
    },
}

/// Exit status for an error: 3 for numerical degeneracy, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        3
    } else {
        2
    }
}

/// Runs one invocation and returns the text to emit.
pub fn run(cli: &Cli) -> Result<String> {
    let g = &cli.global;
    let w = parse_space(&g.space)?;
    let out = match &cli.command {
        Command::Approx { f, degree, solver } => cmd_approx(g, &w, f, *degree, *solver)?,
        Command::Ss { points, degree } => cmd_ss(g, &w, &parse_points(points)?, *degree)?,
        Command::Dist { points, degree } => cmd_dist(g, &w, &parse_points(points)?, *degree)?,
        Command::InnerCheck { f } => cmd_inner_check(g, &w, f)?,
        Command::Sweep { kind } => cmd_sweep(g, &w, kind)?,
        Command::Kernel { at, points } => cmd_kernel(g, &w, at.as_deref(), points.as_deref())?,
    };
    Ok(match (g.format, out) {
        (Format::Json, Output { json, .. }) => to_json_string(&json),
        (Format::Csv, Output { csv, .. }) => csv,
    })
}

struct Output {
    json: Value,
    csv: String,
}

fn cmd_approx(g: &GlobalOpts, w: &Weights, src: &str, degree: usize, solver: Solver) -> Result<Output> {
    let f = parse_source(src, g.truncation)?;
    let solver = match solver {
        Solver::Cholesky => SolverKind::Cholesky,
        Solver::Lu => SolverKind::Lu,
    };
    let res = optimal_approximant_with(&f, degree, w, ApproximantOptions { solver })?;
    let mut json = to_value(&res)?;
    insert(&mut json, "space", json!(w.label()));
    Ok(Output { json, csv: coeff_csv(&res.coeffs) })
}

fn cmd_ss(g: &GlobalOpts, w: &Weights, z: &Points, degree: usize) -> Result<Output> {
    let res = shapiro_shields(z, w, g.truncation)?;
    let dist = three_way_distance(&res, w, degree)?;
    let inner = is_inner(&res.g_z, w, g.jmax, g.tol)?;
    let json = json!({
        "space": w.label(),
        "points": points_json(z),
        "g_z": to_value(&res.g_z)?,
        "gram_determinant": cx(res.gram_determinant),
        "cofactors": res.cofactors.iter().map(|&c| cx(c)).collect::<Vec<_>>(),
        "distances": to_value(&dist)?,
        "closed_form_distance": closed_form_distance(w, z),
        "diagnostics": {
            "gram_condition": res.gram_condition,
            "norm_sq_fz": res.norm_sq_fz,
            "fz_at_zero": cx(res.fz_at_zero),
            "value_at_zero": cx(res.value_at_zero),
            "norm_identity_defect": res.norm_identity_defect,
            "vanishing_defect": res.vanishing_defect,
            "inner": to_value(&inner)?,
        },
        "truncation": res.truncation,
        "gram_truncation": gram_truncation_json(&res),
        "warnings": res.warnings,
    });
    Ok(Output { json: strip_nulls(json), csv: res.g_z.to_csv() })
}

fn cmd_dist(g: &GlobalOpts, w: &Weights, z: &Points, degree: usize) -> Result<Output> {
    let res = shapiro_shields(z, w, g.truncation)?;
    let dist = three_way_distance(&res, w, degree)?;
    let closed = closed_form_distance(w, z);
    let mut json = to_value(&dist)?;
    insert(&mut json, "space", json!(w.label()));
    insert(&mut json, "points", points_json(z));
    insert(&mut json, "closed_form", json!(closed));
    insert(&mut json, "warnings", json!(res.warnings));
    let mut csv = String::from("route,dist_sq\n");
    let mut row = |name: &str, v: f64| writeln!(csv, "{name},{}", fmt_f64(v)).unwrap();
    row("gram", dist.gram);
    row("value", dist.value);
    row("approximant", dist.approximant);
    if let Some(c) = closed {
        row("closed_form", c);
    }
    Ok(Output { json: strip_nulls(json), csv })
}

fn cmd_inner_check(g: &GlobalOpts, w: &Weights, src: &str) -> Result<Output> {
    let f = parse_source(src, g.truncation)?;
    let check = is_inner(&f, w, g.jmax, g.tol)?;
    let mut json = to_value(&check)?;
    insert(&mut json, "space", json!(w.label()));
    insert(&mut json, "jmax", json!(g.jmax));
    insert(&mut json, "tol", json!(g.tol));
    let mut csv = String::from("j,defect\n");
    writeln!(csv, "0,{}", fmt_f64(check.norm_defect)).unwrap();
    for (j, d) in check.orthogonality_defects.iter().enumerate() {
        writeln!(csv, "{},{}", j + 1, fmt_f64(*d)).unwrap();
    }
    Ok(Output { json, csv })
}

fn cmd_kernel(g: &GlobalOpts, w: &Weights, at: Option<&str>, points: Option<&str>) -> Result<Output> {
    if let Some(p) = points {
        let z = parse_points(p)?;
        let source = g.truncation.map_or(GramSource::Auto, GramSource::Series);
        let gram = gram_matrix(&z, w, source)?;
        let n = gram.order();
        let entries: Vec<Vec<Value>> = (0..n).map(|i| (0..n).map(|j| cx(gram.entry(i, j))).collect()).collect();
        let json = json!({
            "space": w.label(),
            "points": points_json(&z),
            "entries": entries,
            "truncation": truncation_json(gram.truncation()),
        });
        return Ok(Output { json: strip_nulls(json), csv: gram.to_csv() });
    }
    let at = at.ok_or_else(|| Error::InvalidInput("kernel needs --at or --points".into()))?;
    let z0 = parse_complex(at)?;
    let n = g.truncation.unwrap_or_else(|| default_truncation(z0.norm(), w));
    let k = kernel_series(z0, w, n)?;
    let mut json = to_value(&k)?;
    insert(&mut json, "space", json!(w.label()));
    insert(&mut json, "at", cx(z0));
    Ok(Output { json, csv: k.to_csv() })
}

fn cmd_sweep(g: &GlobalOpts, w: &Weights, kind: &SweepKind) -> Result<Output> {
    let spaces = |list: &Option<String>| -> Result<Vec<Weights>> {
        match list {
            Some(l) => l.split(',').map(|s| parse_space(s.trim())).collect(),
            None => Ok(vec![w.clone()]),
        }
    };
    let (name, table) = match kind {
        SweepKind::Residuals { f, max_degree, spaces: s } => {
            let mut t = Table::new(&["space", "degree", "residual", "residual_sq"]);
            for w in spaces(s)? {
                let f = parse_source(f, g.truncation)?;
                for step in projection_sequence(&f, &w, *max_degree)? {
                    let r = step.residual_norm;
                    t.row(vec![Cell::Text(w.label()), Cell::Int(step.degree), Cell::Num(r), Cell::Num(r * r)]);
                }
            }
            ("residuals", t)
        }
        SweepKind::Singleton { radii, spaces: s, degree } => {
            let mut t = Table::new(&["space", "radius", "gram", "value", "approximant", "closed_form"]);
            for w in spaces(s)? {
                for r in parse_range(radii)? {
                    let z = Points::new(vec![Complex64::new(r, 0.0)])?;
                    distance_row(&mut t, g, &w, &z, *degree, r)?;
                }
            }
            ("singleton", t)
        }
        SweepKind::Pair { radius, angles, spaces: s, degree } => {
            if *angles == 0 {
                return Err(Error::InvalidInput("--angles must be positive".into()));
            }
            let mut t = Table::new(&["space", "theta", "gram", "value", "approximant", "closed_form"]);
            for w in spaces(s)? {
                for k in 1..=*angles {
                    let theta = std::f64::consts::PI * k as f64 / *angles as f64;
                    let z = Points::new(vec![Complex64::new(*radius, 0.0), Complex64::from_polar(*radius, theta)])?;
                    distance_row(&mut t, g, &w, &z, *degree, theta)?;
                }
            }
            ("pair", t)
        }
    };
    Ok(Output { json: json!({ "kind": name, "rows": table.json_rows() }), csv: table.csv() })
}

fn distance_row(t: &mut Table, g: &GlobalOpts, w: &Weights, z: &Points, degree: usize, param: f64) -> Result<()> {
    let res = shapiro_shields(z, w, g.truncation)?;
    let d = three_way_distance(&res, w, degree)?;
    t.row(vec![
        Cell::Text(w.label()),
        Cell::Num(param),
        Cell::Num(d.gram),
        Cell::Num(d.value),
        Cell::Num(d.approximant),
        closed_form_distance(w, z).map_or(Cell::Empty, Cell::Num),
    ]);
    Ok(())
}

enum Cell {
    Text(String),
    Int(usize),
    Num(f64),
    Empty,
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    fn row(&mut self, cells: Vec<Cell>) {
        self.rows.push(cells);
    }

    fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => s.clone(),
                    Cell::Int(i) => i.to_string(),
                    Cell::Num(x) => fmt_f64(*x),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn json_rows(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (h, c) in self.header.iter().zip(row) {
                    let v = match c {
                        Cell::Text(s) => json!(s),
                        Cell::Int(i) => json!(i),
                        Cell::Num(x) => json!(x),
                        Cell::Empty => continue,
                    };
                    m.insert((*h).to_string(), v);
                }
                Value::Object(m)
            })
            .collect()
    }
}

/// Closed-form `dist²` where one is known: any finite set in the Hardy
/// space, one or two points in the Bergman space.
pub fn closed_form_distance(w: &Weights, z: &Points) -> Option<f64> {
    let p = z.points();
    match (w.family(), p) {
        (WeightFamily::Hardy, _) => Some(hardy_distance(p)),
        (WeightFamily::Bergman, [a]) => Some(bergman_distance_1pt(*a)),
        (WeightFamily::Bergman, [a, b]) => Some(bergman_distance_2pt(*a, *b)),
        _ => None,
    }
}

fn gram_truncation_json(res: &ShapiroShieldsResult<f64>) -> Value {
    truncation_json(res.gram.truncation())
}

fn truncation_json(t: GramTruncation<f64>) -> Value {
    match t {
        GramTruncation::ClosedForm => json!("closed_form"),
        GramTruncation::Series { degree, tail_bound } => json!({ "degree": degree, "tail_bound": tail_bound }),
    }
}

fn coeff_csv(c: &[Complex64]) -> String {
    let mut out = String::from("k,re,im\n");
    for (k, a) in c.iter().enumerate() {
        writeln!(out, "{k},{},{}", fmt_f64(a.re), fmt_f64(a.im)).unwrap();
    }
    out
}

fn cx(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn points_json(z: &Points) -> Value {
    Value::Array(z.points().iter().map(|&p| cx(p)).collect())
}

fn to_value<S: serde::Serialize>(x: &S) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::InvalidInput(format!("serialization: {e}")))
}

fn insert(v: &mut Value, key: &str, x: Value) {
    if let Value::Object(m) = v {
        m.insert(key.to_string(), x);
    }
}

fn strip_nulls(v: Value) -> Value {
    match v {
        Value::Object(m) => Value::Object(m.into_iter().filter(|(_, x)| !x.is_null()).map(|(k, x)| (k, strip_nulls(x))).collect()),
        Value::Array(a) => Value::Array(a.into_iter().map(strip_nulls).collect()),
        x => x,
    }
}

/// 17 significant digits, round-trip exact.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        // keep the sign of negative zero out of diffs
        return "0.0000000000000000e0".to_string();
    }
    format!("{x:.16e}")
}

/// Pretty JSON with sorted keys and [`fmt_f64`] floats.
pub fn to_json_string(v: &Value) -> String {
    let mut out = String::new();
    write_json(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_json(out: &mut String, v: &Value, indent: usize) {
    let pad = |out: &mut String, n: usize| out.extend(std::iter::repeat_n(' ', 2 * n));
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) => out.push_str(&u.to_string()),
            (_, Some(i), _) => out.push_str(&i.to_string()),
            (_, _, Some(x)) => out.push_str(&fmt_f64(x)),
            _ => out.push_str(&n.to_string()),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        // complex pairs and other flat numeric rows stay on one line
        Value::Array(a) if a.iter().all(|x| x.is_number()) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_json(out, x, indent);
            }
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                pad(out, indent + 1);
                write_json(out, x, indent + 1);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push(']');
        }
        Value::Object(m) if m.is_empty() => out.push_str("{}"),
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                pad(out, indent + 1);
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_json(out, &m[*k], indent + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(out, indent);
            out.push('}');
        }
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (`j` is accepted for `i`).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidInput(format!("cannot parse complex number {s:?}"));
    let num = |x: &str| x.parse::<f64>().map_err(|_| bad());
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return parse_real(&t).map_err(|_| bad()).map(|re| Complex64::new(re, 0.0));
    };
    let split = body
        .char_indices()
        .rev()
        .find(|&(i, c)| i > 0 && (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i);
    let imag = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        x => num(x),
    };
    let z = match split {
        Some(i) => Complex64::new(num(&body[..i])?, imag(&body[i..])?),
        None => Complex64::new(0.0, imag(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>> {
    s.split(',').map(parse_complex).collect()
}

fn parse_real(s: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|x| x.is_finite())
        .ok_or_else(|| Error::InvalidInput(format!("cannot parse number {s:?}")))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn from_value<D: serde::de::DeserializeOwned>(v: Value, what: &str) -> Result<D> {
    serde_json::from_value(v).map_err(|e| Error::InvalidInput(format!("{what}: {e}")))
}

/// `hardy`, `bergman`, `dirichlet`, `dalpha=<α>` or `custom=<file>`; the file
/// holds a JSON array of weights or a serialized weight sequence.
pub fn parse_space(s: &str) -> Result<Weights> {
    match s.split_once('=') {
        None => match s {
            "hardy" => Ok(Weights::hardy()),
            "bergman" => Ok(Weights::bergman()),
            "dirichlet" => Ok(Weights::dirichlet()),
            _ => Err(Error::InvalidInput(format!("unknown space {s:?}"))),
        },
        Some(("dalpha", a)) => Weights::dirichlet_alpha(parse_real(a)?),
        Some(("custom", path)) => match read_json(Path::new(path))? {
            Value::Array(a) => Weights::custom(from_value(Value::Array(a), "custom weights")?),
            v => from_value(v, "weight sequence"),
        },
        _ => Err(Error::InvalidInput(format!("unknown space {s:?}"))),
    }
}

/// A comma-separated list of complex numbers, or a JSON file with a
/// `"points"` array (such as the output of `ss` or `dist`).
pub fn parse_points(s: &str) -> Result<Points> {
    let path = Path::new(s);
    if path.is_file() {
        let v = read_json(path)?;
        let points = v
            .get("points")
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("{s}: no \"points\" field")))?;
        return from_value(json!({ "points": points }), "points");
    }
    Points::new(parse_complex_list(s)?)
}

/// Function sources:
///
/// * named constructors `const:c`, `one-minus-z`, `blaschke:a[,b…]`,
///   `product:λ[,…]` (`(1−z)` times Blaschke factors), `bergman-point:a`,
///   `bergman-pair:z1,z2`, `singular:σ`, `bergman-singular:σ`,
///   expanded to the truncation degree;
/// * `coeffs:c0,c1,…` or a bare list `c0,c1,…`, an exact polynomial;
/// * a JSON file with top-level `"coeffs"` (series, approximant output) or a
///   `"g_z"` series (output of `ss`).
pub fn parse_source(s: &str, truncation: Option<usize>) -> Result<Series> {
    let n = truncation.unwrap_or(DEFAULT_SOURCE_TRUNCATION);
    let one = |arg: &str| -> Result<Complex64> { parse_complex(arg) };
    let sigma = |arg: &str| -> Result<f64> {
        let x = parse_real(arg)?;
        if x > 0.0 {
            Ok(x)
        } else {
            Err(Error::InvalidInput(format!("sigma must be positive, got {x}")))
        }
    };
    if let Some((name, arg)) = s.split_once(':') {
        let f = match name {
            "const" => Some(Series::constant(one(arg)?, n)),
            "blaschke" => Some(blaschke_product(&parse_complex_list(arg)?, n)?),
            "product" => Some(product_function(&parse_complex_list(arg)?, n)?),
            "bergman-point" => Some(bergman_one_point(one(arg)?, n)?),
            "bergman-pair" => match parse_complex_list(arg)?.as_slice() {
                [a, b] => Some(bergman_two_point(*a, *b, n)?),
                _ => return Err(Error::InvalidInput("bergman-pair takes two points".into())),
            },
            "singular" => Some(singular_inner_taylor(sigma(arg)?, n)),
            "bergman-singular" => Some(bergman_singular_extremal(sigma(arg)?, n)),
            "coeffs" => Some(Series::polynomial(parse_complex_list(arg)?)),
            _ => None,
        };
        if let Some(f) = f {
            return Ok(f);
        }
    }
    if s == "one-minus-z" {
        return Ok(Series::polynomial(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]));
    }
    let path = Path::new(s);
    if path.is_file() {
        let v = read_json(path)?;
        let series = if v.get("coeffs").is_some() {
            v
        } else if let Some(g) = v.get("g_z") {
            g.clone()
        } else {
            return Err(Error::InvalidInput(format!("{s}: no \"coeffs\" or \"g_z\" field")));
        };
        return from_value(series, "series");
    }
    match parse_complex_list(s) {
        Ok(c) => Ok(Series::polynomial(c)),
        Err(_) => Err(Error::InvalidInput(format!("unrecognized function source {s:?}"))),
    }
}

fn parse_range(s: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, n] = parts.as_slice() else {
        return Err(Error::InvalidInput(format!("range {s:?} is not start:stop:count")));
    };
    let (a, b) = (parse_real(a)?, parse_real(b)?);
    let n: usize = n.trim().parse().map_err(|_| Error::InvalidInput(format!("bad count in {s:?}")))?;
    Ok(match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    })
}
