use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use pimtop::algebra::{build_example, AlgebraData, ExampleKind};
use pimtop::arith::{Field, FieldDesc, PrimeField, Rationals};
use pimtop::correspondence::{bijection, verify_table, verify_theorems};
use pimtop::io::{
    algebra_from_file, certificate_from_data, module_from_data, report, AlgebraFile, AlgebraRef,
    AnyAlgebra, CertificateData, ModuleData, ModuleFile,
};
use pimtop::module::regular_module;
use pimtop::Error;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::args::{Cli, Command, Format, Input, ModuleInput};
use crate::table;

pub struct Output {
    pub text: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct CliError {
    kind: String,
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { kind: "Usage".into(), message: message.into(), code: 2 }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }

    pub fn to_json(&self, code: u8) -> String {
        json!({ "error": self.kind, "message": self.message, "exit_code": code }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::UnsupportedField(_)
            | Error::UnsupportedCharacteristic { .. }
            | Error::NotPrime(_)
            | Error::BadParam(_)
            | Error::DimensionMismatch(_)
            | Error::InvalidAlgebra(_)
            | Error::InvalidModule(_)
            | Error::ZeroModule => 2,
            Error::SearchBudgetExceeded(_) => 3,
            _ => 1,
        };
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        CliError { kind, message: e.to_string(), code }
    }
}

type Res<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> Res<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], what: &str) -> Res<T> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("{what}: {e}")).into())
}

fn parse_field(s: &str) -> Res<FieldDesc> {
    Ok(s.parse::<FieldDesc>()?)
}

fn parse_kind(s: &str, n: Option<usize>) -> Res<ExampleKind> {
    let spec = match n {
        Some(n) if !s.contains(':') => format!("{s}:{n}"),
        Some(_) => return Err(CliError::usage("--n given together with a sized kind")),
        None => s.to_string(),
    };
    Ok(spec.parse()?)
}

fn build_any(kind: &ExampleKind, field: FieldDesc) -> Res<AnyAlgebra> {
    Ok(match field {
        FieldDesc::Prime { p } => AnyAlgebra::Fp(build_example(kind, PrimeField::new(p as u64)?)?.shared()),
        FieldDesc::Rationals => AnyAlgebra::Q(build_example(kind, Rationals)?.shared()),
    })
}

struct Loaded {
    algebra: AnyAlgebra,
    module: Option<ModuleData>,
    hashes: Map<String, Value>,
}

fn load_algebra_file(path: &Path, field: Option<&str>, hashes: &mut Map<String, Value>, key: &str) -> Res<AnyAlgebra> {
    let bytes = read(path)?;
    hashes.insert(key.into(), json!(sha256(&bytes)));
    let mut file: AlgebraFile = parse_json(&bytes, "algebra file")?;
    if let Some(f) = field {
        file.field = parse_field(f)?;
    }
    Ok(algebra_from_file(&file)?)
}

fn load_input(inp: &Input) -> Res<Loaded> {
    let mut hashes = Map::new();
    let algebra = match (&inp.algebra, &inp.example) {
        (Some(path), None) => {
            if inp.n.is_some() {
                return Err(CliError::usage("--n only applies to --example"));
            }
            load_algebra_file(path, inp.field.as_deref(), &mut hashes, "algebra")?
        }
        (None, Some(ex)) => {
            let field = inp.field.as_deref().ok_or_else(|| CliError::usage("--example needs --field"))?;
            let a = build_any(&parse_kind(ex, inp.n)?, parse_field(field)?)?;
            let canonical = serde_json::to_vec(&a.to_file()).expect("serializable");
            hashes.insert("algebra".into(), json!(sha256(&canonical)));
            a
        }
        _ => return Err(CliError::usage("give an algebra file or --example")),
    };
    Ok(Loaded { algebra, module: None, hashes })
}

fn load_module_input(mi: &ModuleInput) -> Res<Loaded> {
    let Some(path) = &mi.module else { return load_input(&mi.input) };
    if mi.input.algebra.is_some() || mi.input.example.is_some() {
        return Err(CliError::usage("--module carries its own algebra"));
    }
    let bytes = read(path)?;
    let mut hashes = Map::new();
    hashes.insert("module".into(), json!(sha256(&bytes)));
    let file: ModuleFile = parse_json(&bytes, "module file")?;
    let algebra = match file.algebra {
        AlgebraRef::Inline(mut af) => {
            if let Some(f) = &mi.input.field {
                af.field = parse_field(f)?;
            }
            algebra_from_file(&af)?
        }
        AlgebraRef::Path(rel) => {
            let base = path.parent().map(PathBuf::from).unwrap_or_default();
            load_algebra_file(&base.join(rel), mi.input.field.as_deref(), &mut hashes, "algebra")?
        }
    };
    Ok(Loaded { algebra, module: Some(ModuleData { dim: file.dim, action: file.action }), hashes })
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::Info(_) => "info",
        Command::Radical(_) => "radical",
        Command::Decompose(_) => "decompose",
        Command::CompSeries(_) => "comp-series",
        Command::Simples(_) => "simples",
        Command::Pims(_) => "pims",
        Command::Bijection(_) => "bijection",
        Command::Check(_) => "check",
        Command::VerifyCert { .. } => "verify-cert",
        Command::Gen { .. } => "gen",
    }
}

/// Computes the report for an algebra command; the exit code is 1 when the
/// report records a failed check.
fn compute<F: Field>(cmd: &Command, a: &Arc<AlgebraData<F>>, module: Option<&ModuleData>, seed: u64) -> Res<(Value, u8)> {
    let target = || -> Res<_> {
        Ok(match module {
            Some(d) => module_from_data(a, d)?,
            None => regular_module(a),
        })
    };
    Ok(match cmd {
        Command::Validate(_) => (report::validation(a), 0),
        Command::Info(_) => (report::info(a), 0),
        Command::Radical(_) => (report::radical(a, seed)?, 0),
        Command::Decompose(_) => (report::decomposition(&target()?, seed)?, 0),
        Command::CompSeries(_) => (report::comp_series(&target()?, seed)?, 0),
        Command::Simples(_) => (report::simples(&bijection(a, seed)?), 0),
        Command::Pims(_) => (report::pims(&bijection(a, seed)?), 0),
        Command::Bijection(_) => {
            let t = bijection(a, seed)?;
            let checks = verify_table(&t)?;
            (report::bijection(&t, &checks)?, if checks.all_passed() { 0 } else { 1 })
        }
        Command::Check(_) => {
            let r = verify_theorems(a, seed)?;
            (report::check(&r), if r.all_passed() { 0 } else { 1 })
        }
        Command::VerifyCert { .. } | Command::Gen { .. } => unreachable!("handled separately"),
    })
}

fn envelope(cli: &Cli, mut body: Value, hashes: Map<String, Value>, algebra: Option<&AnyAlgebra>) -> Value {
    let obj = body.as_object_mut().expect("reports are objects");
    obj.insert("tool".into(), json!("pimtop"));
    obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    obj.insert("command".into(), json!(command_name(&cli.command)));
    obj.insert("seed".into(), json!(cli.seed));
    obj.insert("input_sha256".into(), Value::Object(hashes));
    if let Some(a) = algebra {
        obj.entry("algebra").or_insert_with(|| serde_json::to_value(a.to_file()).expect("serializable"));
    }
    body
}

fn render(cli: &Cli, body: &Value) -> String {
    match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(body).expect("serializable")),
        Format::Table => table::render(command_name(&cli.command), body),
    }
}

pub fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::Gen { kind, n, field, output } => gen(cli, kind, *n, field, output.as_deref()),
        Command::VerifyCert { report } => verify_cert(cli, report),
        Command::Validate(inp) => match load_input(inp) {
            Err(CliError { kind, message, .. }) if kind == "InvalidAlgebra" => {
                let body = envelope(cli, json!({ "valid": false, "violation": message }), Map::new(), None);
                Ok(Output { text: render(cli, &body), code: 1 })
            }
            Err(e) => Err(e),
            Ok(l) => algebra_command(cli, l),
        },
        Command::Decompose(mi) | Command::CompSeries(mi) => algebra_command(cli, load_module_input(mi)?),
        Command::Info(inp)
        | Command::Radical(inp)
        | Command::Simples(inp)
        | Command::Pims(inp)
        | Command::Bijection(inp)
        | Command::Check(inp) => algebra_command(cli, load_input(inp)?),
    }
}

fn algebra_command(cli: &Cli, l: Loaded) -> Res<Output> {
    let module = l.module.as_ref();
    let (body, code) = match &l.algebra {
        AnyAlgebra::Fp(a) => compute(&cli.command, a, module, cli.seed)?,
        AnyAlgebra::Q(a) => compute(&cli.command, a, module, cli.seed)?,
    };
    let body = envelope(cli, body, l.hashes, Some(&l.algebra));
    Ok(Output { text: render(cli, &body), code })
}

fn gen(cli: &Cli, kind: &str, n: Option<usize>, field: &str, output: Option<&Path>) -> Res<Output> {
    let a = build_any(&parse_kind(kind, n)?, parse_field(field)?)?;
    let text = format!("{}\n", serde_json::to_string_pretty(&a.to_file()).expect("serializable"));
    let Some(path) = output else { return Ok(Output { text, code: 0 }) };
    fs::write(path, &text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    let body = envelope(
        cli,
        json!({ "output": path.display().to_string(), "dim": a.dim(), "field": a.desc().to_string() }),
        Map::from_iter([("output".to_string(), json!(sha256(text.as_bytes())))]),
        None,
    );
    let text = match cli.format {
        Format::Json => render(cli, &body),
        Format::Table => format!("wrote {} (dimension {}, {})\n", path.display(), a.dim(), a.desc()),
    };
    Ok(Output { text, code: 0 })
}

fn collect_certified<'a>(v: &'a Value, path: String, out: &mut Vec<(String, &'a Value, &'a Value)>) {
    match v {
        Value::Object(o) => {
            if let (Some(m), Some(c)) = (o.get("module"), o.get("certificate")) {
                out.push((path.clone(), m, c));
            }
            for (k, x) in o {
                collect_certified(x, format!("{path}/{k}"), out);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                collect_certified(x, format!("{path}/{i}"), out);
            }
        }
        _ => {}
    }
}

fn replay<F: Field>(a: &Arc<AlgebraData<F>>, m: &Value, c: &Value) -> Res<()> {
    let md: ModuleData = serde_json::from_value(m.clone()).map_err(|e| Error::Parse(format!("module: {e}")))?;
    let cd: CertificateData =
        serde_json::from_value(c.clone()).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    let module = module_from_data(a, &md)?;
    let cert = certificate_from_data(&module, &cd)?;
    Ok(cert.verify(&module)?)
}

fn verify_cert(cli: &Cli, path: &Path) -> Res<Output> {
    let bytes = read(path)?;
    let doc: Value = parse_json(&bytes, "report")?;
    let af: AlgebraFile = serde_json::from_value(doc.get("algebra").cloned().unwrap_or(Value::Null))
        .map_err(|e| Error::Parse(format!("report has no usable algebra: {e}")))?;
    let algebra = algebra_from_file(&af)?;
    let mut found = Vec::new();
    collect_certified(&doc, String::new(), &mut found);
    if found.is_empty() {
        return Err(CliError::usage("no certificates found in the report"));
    }
    let mut rejected = Vec::new();
    for (p, m, c) in &found {
        let r = match &algebra {
            AnyAlgebra::Fp(a) => replay(a, m, c),
            AnyAlgebra::Q(a) => replay(a, m, c),
        };
        if let Err(e) = r {
            rejected.push(json!({ "path": p, "reason": e.message }));
        }
    }
    let kinds: Vec<Value> = found.iter().map(|(_, _, c)| c["kind"].clone()).collect();
    let body = json!({
        "certificates": found.len(),
        "kinds": kinds,
        "verified": found.len() - rejected.len(),
        "rejected": rejected,
    });
    let code = if rejected.is_empty() { 0 } else { 1 };
    let hashes = Map::from_iter([("report".to_string(), json!(sha256(&bytes)))]);
    let body = envelope(cli, body, hashes, Some(&algebra));
    Ok(Output { text: render(cli, &body), code })
}
