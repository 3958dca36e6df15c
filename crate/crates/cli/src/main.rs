use std::collections::BTreeMap;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use superjordan::algebra::{BilinearForm, SuperBasis};
use superjordan::catalog::{parse_catalog_name, CatalogEntry, CATALOG_GRAMMAR};
use superjordan::decomposition::{
    beta_orthogonal_idempotent, beta_orthogonality_check, check_frame, check_frame_rules, check_peirce, classify,
    frame_peirce, is_idempotent, peirce_of_idempotent, primitivity, spectral, spectral_signature, Eigenvalues,
};
use superjordan::error::Error;
use superjordan::io::{load_algebra, parse_covector, parse_vector};
use superjordan::linalg::Subspace;
use superjordan::orbits::{bracket_space, derivations, inner_derivations, mult_space, structure_algebra, tangent_spaces, MetricContext, OrbitSpaces, SpaceTag};
use superjordan::reproduction::{dual_text, reproduce, Status};
use superjordan::scalar::Rational;
use superjordan::suite::identity_suite;

/// Random triples per bracket identity in `verify`.
const VERIFY_SAMPLES: usize = 20;

#[derive(Parser)]
#[command(name = "superjordan", version, about = "Exact computations for Jordan superalgebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Catalog algebra, e.g. `dt(-1/2)`, `gl+(1|1)`, `spin(1|2)`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    algebra: Option<String>,
    /// JSON algebra-spec file.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Even vector such as `2e1+3e2`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    point: Option<String>,
    /// Dual point; vector terms are read through flat, `label*` is a dual basis element.
    #[arg(long, global = true, allow_hyphen_values = true)]
    xi: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    eta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    etap: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    idempotent: Option<String>,
    /// Frame idempotents separated by `;`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    frame: Option<String>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Identity suite: super Jordan identity, associator formula, forms, Peirce rules, dual bracket.
    Verify,
    /// Semisimplicity, positivity and (pseudo-)Euclidean type.
    Classify,
    /// Peirce decomposition of `--idempotent`.
    Peirce,
    /// Frame Peirce decomposition of `--frame` or the catalog frame.
    Frame,
    /// Spectral decomposition of `--point`.
    Spectral,
    /// Structure Lie superalgebra and derivations.
    Structure,
    /// Tangent spaces of the orbits through `--point`.
    Orbit,
    /// Orbit metric at `--xi` on `--eta`, `--etap`.
    Metric,
    /// Catalog grammar, or the tables of `--algebra`.
    Catalog,
    /// Recompute the worked examples and compare with the printed values.
    ReproducePaper,
}

#[derive(Serialize)]
struct CheckOut {
    name: String,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Value>,
}

#[derive(Serialize)]
struct Report {
    algebra: Value,
    checks: Vec<CheckOut>,
    values: BTreeMap<String, Value>,
    seed: u64,
    #[serde(skip)]
    table: Option<Vec<String>>,
}

impl Report {
    fn new(algebra: Option<&str>, seed: u64) -> Self {
        Report { algebra: algebra.map_or(Value::Null, |a| json!(a)), checks: vec![], values: BTreeMap::new(), seed, table: None }
    }

    fn check(&mut self, name: &str, passed: bool, witness: Option<Value>) {
        let status = if passed { "PASS" } else { "FAIL" };
        self.checks.push(CheckOut { name: name.into(), status, witness: if passed { None } else { witness } });
    }

    fn value(&mut self, key: &str, v: Value) {
        self.values.insert(key.into(), v);
    }

    fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == "FAIL")
    }
}

/// Errors in the user's input (exit code 2), as opposed to failed checks.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

type Input<T> = std::result::Result<T, InputError>;

fn input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_) | Error::InvalidParameter(_) | Error::OddDimensionNotEven(_) | Error::DimensionMismatch(_) | Error::NotHomogeneous
    )
}

/// Input errors abort; other errors become a failed check.
fn or_check<T>(report: &mut Report, name: &str, r: superjordan::error::Result<T>) -> Input<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if input_error(&e) => Err(e.into()),
        Err(e) => {
            report.check(name, false, Some(json!(e.to_string())));
            Ok(None)
        }
    }
}

fn load(cli: &Cli) -> Input<CatalogEntry> {
    match (&cli.algebra, &cli.file) {
        (Some(_), Some(_)) => Err(InputError("give either --algebra or --file, not both".into())),
        (None, None) => Err(InputError("an algebra is required: --algebra NAME or --file PATH".into())),
        (Some(name), None) => Ok(parse_catalog_name(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
            Ok(load_algebra(&path.display().to_string(), &text)?)
        }
    }
}

fn required<'a>(flag: &'a Option<String>, name: &str) -> Input<&'a str> {
    flag.as_deref().ok_or_else(|| InputError(format!("--{name} is required for this command")))
}

fn beta_of(entry: &CatalogEntry) -> Input<&BilinearForm<Rational>> {
    entry.beta.as_ref().ok_or_else(|| InputError(format!("{} has no invariant form beta", entry.name)))
}

fn vector_text(basis: &SuperBasis, v: &[Rational]) -> Value {
    json!(basis.format_vector(v))
}

fn subspace_json(basis: &SuperBasis, s: &Subspace<Rational>) -> Value {
    Value::Array(s.basis().iter().map(|v| vector_text(basis, v)).collect())
}

fn lambdas_json(l: &Eigenvalues) -> Value {
    match l {
        Eigenvalues::Exact(v) => json!(v.iter().map(ToString::to_string).collect::<Vec<_>>()),
        Eigenvalues::Numeric(v) => json!(v),
    }
}

fn verify(cli: &Cli, report: &mut Report) -> Input<()> {
    let entry = load(cli)?;
    for c in identity_suite(&entry, cli.seed, VERIFY_SAMPLES) {
        let witness = c.witness.map(|w| json!({ "arguments": w, "detail": c.detail.unwrap_or_default() }));
        report.check(&c.name, c.passed, witness);
    }
    let alg = &entry.algebra;
    report.value("dimension", json!(format!("({}|{})", alg.even_dim(), alg.odd_dim())));
    report.value("unit", alg.find_unit().map_or(Value::Null, |u| vector_text(alg.basis(), &u)));
    Ok(())
}

fn classify_cmd(cli: &Cli, report: &mut Report) -> Input<()> {
    let entry = load(cli)?;
    if let Some(c) = or_check(report, "classification", classify(&entry.algebra, entry.beta.as_ref()))? {
        let Value::Object(map) = serde_json::to_value(&c).expect("plain data") else { unreachable!() };
        for (k, v) in map {
            report.value(&k, v);
        }
    }
    Ok(())
}

fn peirce_cmd(cli: &Cli, report: &mut Report) -> Input<()> {
    let entry = load(cli)?;
    let alg = &entry.algebra;
    let basis = alg.basis();
    let e = parse_vector(basis, required(&cli.idempotent, "idempotent")?)?;
    let idem = is_idempotent(alg, &e);
    report.check("idempotent", idem, Some(json!({ "e": basis.format_vector(&e), "e^2": basis.format_vector(&alg.mul(&e, &e)) })));
    if !idem {
        return Ok(());
    }
    let Some(p) = or_check(report, "Peirce decomposition", peirce_of_idempotent(alg, &e))? else { return Ok(()) };
    let rules = check_peirce(alg, &p);
    report.check("Peirce projectors and rules", rules.is_ok(), rules.err().map(|m| json!(m)));
    if let Some(beta) = &entry.beta {
        report.check("beta orthogonality", beta_orthogonal_idempotent(beta, &p), None);
    }
    for (label, _, s) in p.parts() {
        report.value(&format!("P{label}"), subspace_json(basis, s));
    }
    if let Some(prim) = or_check(report, "primitivity", primitivity(alg, &e))? {
        report.value("primitive", serde_json::to_value(prim).expect("plain enum"));
    }
    Ok(())
}

fn frame_cmd(cli: &Cli, report: &mut Report) -> Input<()> {
    let entry = load(cli)?;
    let alg = &entry.algebra;
    let basis = alg.basis();
    let idempotents = match &cli.frame {
        Some(s) => s.split(';').map(|p| parse_vector(basis, p)).collect::<superjordan::error::Result<Vec<_>>>()?,
        None => entry.frame.clone().ok_or_else(|| InputError(format!("{} has no standard frame; pass --frame", entry.name)))?,
    };
    let Some(frame) = or_check(report, "Jordan frame", check_frame(alg, &idempotents))? else { return Ok(()) };
    report.check("Jordan frame", true, None);
    report.value("idempotents", Value::Array(frame.idempotents.iter().map(|e| vector_text(basis, e)).collect()));
    report.value("primitive", serde_json::to_value(&frame.primitive).expect("plain enum"));
    let Some(fp) = or_check(report, "frame Peirce rules", frame_peirce(alg, &frame))? else { return Ok(()) };
    let rules = check_frame_rules(alg, &fp);
    report.check("frame Peirce rules", rules.is_ok(), rules.err().map(|m| json!(m)));
    if let Some(beta) = &entry.beta {
        report.check("beta orthogonality", beta_orthogonality_check(beta, &fp), None);
    }
    let blocks: serde_json::Map<String, Value> =
        fp.blocks.iter().map(|((i, j), s)| (format!("P{}{}", i + 1, j + 1), subspace_json(basis, s))).collect();
    report.value("blocks", Value::Object(blocks));
    Ok(())
}

fn spectral_cmd(cli: &Cli, report: &mut Report) -> Input<()> {
    let entry = load(cli)?;
    let alg = &entry.algebra;
    let basis = alg.basis();
    let x = parse_vector(basis, required(&cli.point, "point")?)?;
    let Some(data) = or_check(report, "spectral decomposition", spectral(alg, &x))? else { return Ok(()) };
    report.value("lambdas", lambdas_json(&data.lambdas));
    report.value("path", json!(if data.exact_lambdas().is_some() { "exact" } else { "numeric" }));
    report.value("multiplicities", json!(data.multiplicities));
    if let (Some(frame), Some(l)) = (&data.frame, data.exact_lambdas()) {
        report.value("idempotents", Value::Array(frame.idempotents.iter().map(|e| vector_text(basis, e)).collect()));
        let mut sum = vec![Rational::from_integer(0.into()); alg.dim()];
        for (lam, e) in l.iter().zip(&frame.idempotents) {
            for (s, c) in sum.iter_mut().zip(e) {
                *s += lam * c;
            }
        }
        report.check("sum of lambda_i e_i reproduces the point", sum == x, Some(vector_text(basis, &sum)));
    }
    if let Some(sig) = or_check(report, "spectral signature", spectral_signature(&data))? {
        report.value("signature", serde_json::to_value(sig).expect("plain data"));
    }
    Ok(())
}

fn structure_cmd(cli: &Cli, report: &mut Report) -> Input<()> {
    let entry = load(cli)?;
    let alg = &entry.algebra;
    let m = mult_space(alg);
    let br = bracket_space(alg);
    report.value("dim m_J", json!(m.dim()));
    report.value("dim [m_J,m_J]", json!(br.dim()));
    if let Some(g) = or_check(report, "g(J) bracket closed", structure_algebra(alg))? {
        report.check("g(J) bracket closed", g.bracket_closed().is_ok(), None);
        report.value("dim g(J)", json!(g.dim()));
    }
    if alg.find_unit().is_some() {
        let split = m.intersect(&br, SpaceTag::GJ).dim() == 0;
        report.check("m_J and [m_J,m_J] intersect trivially", split, None);
    }
    if let Some(inner) = or_check(report, "inner derivations", inner_derivations(alg))? {
        report.value("dim inner derivations", json!(inner.dim()));
        let bad = inner.basis().into_iter().find_map(|d| d.is_derivation_of(alg).err());
        report.check("inner derivations are derivations", bad.is_none(), bad.map(|f| json!(f.to_string())));
    }
    if let Some(der) = or_check(report, "even derivations", derivations(alg, 0))? {
        report.value("dim Der_0", json!(der.dim()));
    }
    Ok(())
}

fn orbit_cmd(cli: &Cli, report: &mut Report) -> Input<()> {
    let entry = load(cli)?;
    let alg = &entry.algebra;
    let basis = alg.basis();
    let x = parse_vector(basis, required(&cli.point, "point")?)?;
    let Some(spaces) = or_check(report, "structure algebra", OrbitSpaces::new(alg))? else { return Ok(()) };
    let Some(t) = or_check(report, "tangent spaces", tangent_spaces(alg, &spaces, &x))? else { return Ok(()) };
    report.value("point", vector_text(basis, &t.point));
    report.value("m_J x", subspace_json(basis, &t.m_x));
    report.value("Der_0 x", subspace_json(basis, &t.der_x));
    report.value("g(J) x", subspace_json(basis, &t.g_x));
    report.value("ranks", json!({ "m_J": t.m_x.dim(), "Der_0": t.der_x.dim(), "g(J)": t.g_x.dim() }));
    report.value("regular", json!(t.regular));
    if let Some(s) = &t.spectral {
        report.value("lambdas", lambdas_json(&s.lambdas));
    }
    match t.agrees() {
        Some(ok) => {
            let p = t.predicted.as_ref().expect("agreement needs a prediction");
            let pred = json!({ "m_J": subspace_json(basis, &p.m), "Der_0": subspace_json(basis, &p.der), "g(J)": subspace_json(basis, &p.g) });
            report.check("tangent spaces match the Peirce prediction", ok, Some(pred.clone()));
            report.value("predicted", pred);
        }
        None => report.value("predicted", json!("unavailable: numeric spectral data")),
    }
    Ok(())
}

fn metric_cmd(cli: &Cli, report: &mut Report) -> Input<()> {
    let entry = load(cli)?;
    let alg = &entry.algebra;
    let basis = alg.basis();
    let beta = beta_of(&entry)?;
    let xi = parse_covector(basis, beta, required(&cli.xi, "xi")?)?;
    let eta = parse_covector(basis, beta, required(&cli.eta, "eta")?)?;
    let etap = parse_covector(basis, beta, required(&cli.etap, "etap")?)?;
    report.value("xi", json!(dual_text(basis, &xi)));
    report.value("eta", json!(dual_text(basis, &eta)));
    report.value("etap", json!(dual_text(basis, &etap)));
    let Some(spaces) = or_check(report, "structure algebra", OrbitSpaces::new(alg))? else { return Ok(()) };
    let Some(ctx) = or_check(report, "xi regular with positive even part", MetricContext::new(alg, beta, &spaces, &xi))? else {
        return Ok(());
    };
    report.check("xi regular with positive even part", true, None);
    report.value("lambdas", json!(ctx.lambdas.iter().map(ToString::to_string).collect::<Vec<_>>()));
    if let Some(g) = or_check(report, "eta and etap tangent", ctx.metric(beta, &eta, &etap))? {
        report.check("eta and etap tangent", true, None);
        report.value("g_xi", json!(g.to_string()));
    }
    Ok(())
}

fn catalog_cmd(cli: &Cli, report: &mut Report) -> Input<()> {
    if cli.algebra.is_none() && cli.file.is_none() {
        report.value("grammar", json!(CATALOG_GRAMMAR));
        return Ok(());
    }
    let entry = load(cli)?;
    let alg = &entry.algebra;
    let basis = alg.basis();
    report.value("notes", json!(entry.notes));
    report.value("even labels", json!(&basis.labels()[..basis.even_dim()]));
    report.value("odd labels", json!(&basis.labels()[basis.even_dim()..]));
    let mut products = serde_json::Map::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let p = alg.basis_product(i, j);
            if p.iter().any(|c| *c != Rational::from_integer(0.into())) {
                products.insert(format!("{} {}", basis.label(i), basis.label(j)), vector_text(basis, &p));
            }
        }
    }
    report.value("products", Value::Object(products));
    if let Some(beta) = &entry.beta {
        let mut form = serde_json::Map::new();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let v = beta.matrix().get(i, j);
                if *v != Rational::from_integer(0.into()) {
                    form.insert(format!("beta({}, {})", basis.label(i), basis.label(j)), json!(v.to_string()));
                }
            }
        }
        report.value("beta", Value::Object(form));
    }
    if let Some(frame) = &entry.frame {
        report.value("frame", Value::Array(frame.iter().map(|e| vector_text(basis, e)).collect()));
    }
    Ok(())
}

fn reproduce_cmd(report: &mut Report) {
    let rows = reproduce();
    let mut table = Vec::new();
    let mut group = "";
    for r in &rows {
        if r.group != group {
            group = r.group;
            table.push(format!("[{group}]"));
        }
        let status = match r.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Deviation => "DEVIATION",
        };
        let mut line = format!("  {status:<9} {}: expected {}, got {}", r.name, r.expected, r.actual);
        if let Some(note) = &r.note {
            line.push_str(&format!(" ({note})"));
        }
        table.push(line);
        let witness = (r.status != Status::Pass).then(|| json!({ "expected": r.expected, "actual": r.actual, "note": r.note }));
        report.checks.push(CheckOut { name: format!("{}: {}", r.group, r.name), status, witness });
    }
    let mut counts = BTreeMap::new();
    for c in &report.checks {
        *counts.entry(c.status.to_lowercase()).or_insert(0usize) += 1;
    }
    report.value("summary", json!(counts));
    report.table = Some(table);
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(value_text).collect::<Vec<_>>().join(", ")),
        Value::Object(m) => format!("{{{}}}", m.iter().map(|(k, v)| format!("{k}: {}", value_text(v))).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn render_human(report: &Report) -> String {
    let mut out = String::new();
    macro_rules! line { ($($t:tt)*) => {{ out.push_str(&format!($($t)*)); out.push('\n'); }} }
    if let Value::String(a) = &report.algebra {
        line!("algebra: {a}");
    }
    if let Some(table) = &report.table {
        for line in table {
            line!("{line}");
        }
        line!("summary: {}", value_text(&report.values["summary"]));
        line!("seed: {}", report.seed);
        return out;
    }
    for c in &report.checks {
        match &c.witness {
            None => line!("{}: {}", c.name, c.status),
            Some(w) => {
                let args = w.get("arguments").and_then(Value::as_array).map(|a| a.iter().map(value_text).collect::<Vec<_>>().join(", "));
                match args {
                    Some(args) => line!("{}: {}  witness ({args})  {}", c.name, c.status, value_text(&w["detail"])),
                    None => line!("{}: {}  {}", c.name, c.status, value_text(w)),
                }
            }
        }
    }
    for (k, v) in &report.values {
        line!("{k}: {}", value_text(v));
    }
    line!("seed: {}", report.seed);
    out
}

fn run(cli: &Cli) -> Input<Report> {
    let mut report = Report::new(cli.algebra.as_deref().or(cli.file.as_ref().and_then(|p| p.to_str())), cli.seed);
    match cli.command {
        Command::Verify => verify(cli, &mut report)?,
        Command::Classify => classify_cmd(cli, &mut report)?,
        Command::Peirce => peirce_cmd(cli, &mut report)?,
        Command::Frame => frame_cmd(cli, &mut report)?,
        Command::Spectral => spectral_cmd(cli, &mut report)?,
        Command::Structure => structure_cmd(cli, &mut report)?,
        Command::Orbit => orbit_cmd(cli, &mut report)?,
        Command::Metric => metric_cmd(cli, &mut report)?,
        Command::Catalog => catalog_cmd(cli, &mut report)?,
        Command::ReproducePaper => reproduce_cmd(&mut report),
    }
    if let Ok(entry) = parse_catalog_name(cli.algebra.as_deref().unwrap_or_default()) {
        report.algebra = json!(entry.name);
    }
    report.checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Ok(report) => {
            if cli.json {
                let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("plain data"));
            } else {
                let _ = io::stdout().write_all(render_human(&report).as_bytes());
            }
            if report.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
