//! Command-line front end for moldkit.
//!
//! Inputs are JSON representation documents:
//!
//! ```json
//! {"field": {"p": 3}, "mode": "monoid",
//!  "generators": [[[1, 1], [0, 1]]], "words": ["1,1"]}
//! ```
//!
//! `field` is `{"p": N}` or `"Q"`; entries are integers or strings such as
//! `"-3/2"`; `mode` defaults to `"monoid"`; `words` are optional and may be
//! written as `"1,2,-1"` or `[1, 2, -1]`. Every report is a JSON object with a
//! `schema` tag and the SHA-256 of its inputs, serialized with sorted keys.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use moldkit::cache::{sha256_hex, Cache};
use moldkit::canon::{self, ABChart, CharDeriv};
use moldkit::census::{self, CensusConfig, CensusKey, LabelCounts, Report, StratumCounts};
use moldkit::mold::{self, AirWitness};
use moldkit::{FieldElement, FieldSpec, Mat2, Mode, MoldLabel, RepTuple, Word};

pub const SCHEMA_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "MOLDKIT_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".moldkit-cache";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document at {path}: {message}")]
    Validation { path: String, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Domain(#[from] moldkit::Error),
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Validation {
        path: path.into(),
        message: message.into(),
    }
}

/// A validated representation document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepDocument {
    pub field: FieldSpec,
    pub mode: Mode,
    pub generators: Vec<Mat2>,
    pub words: Vec<Word>,
}

impl RepDocument {
    pub fn tuple(&self) -> RepTuple {
        RepTuple::new(self.generators.clone(), self.mode).expect("validated on load")
    }
}

pub fn parse_rep_document(text: &str) -> Result<RepDocument, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let obj = value.as_object().ok_or_else(|| invalid("$", "expected an object"))?;
    for key in obj.keys() {
        if !["field", "mode", "generators", "words"].contains(&key.as_str()) {
            return Err(invalid(format!("$.{key}"), "unknown key"));
        }
    }

    let field = match obj.get("field") {
        Some(Value::String(s)) if s == "Q" => FieldSpec::Rationals,
        Some(Value::Object(f)) if f.len() == 1 && f.contains_key("p") => {
            let p = f["p"]
                .as_u64()
                .ok_or_else(|| invalid("$.field.p", "expected a positive integer"))?;
            FieldSpec::prime(p).map_err(|e| invalid("$.field.p", e.to_string()))?
        }
        Some(_) => return Err(invalid("$.field", "expected \"Q\" or {\"p\": N}")),
        None => return Err(invalid("$.field", "missing")),
    };

    let mode = match obj.get("mode") {
        None => Mode::Monoid,
        Some(Value::String(s)) => s
            .parse()
            .map_err(|_| invalid("$.mode", "expected \"monoid\" or \"group\""))?,
        Some(_) => return Err(invalid("$.mode", "expected a string")),
    };

    let gens = obj
        .get("generators")
        .ok_or_else(|| invalid("$.generators", "missing"))?
        .as_array()
        .ok_or_else(|| invalid("$.generators", "expected an array of matrices"))?;
    if gens.is_empty() {
        return Err(invalid("$.generators", "at least one generator is required"));
    }
    let generators = gens
        .iter()
        .enumerate()
        .map(|(i, g)| parse_matrix(g, field, &format!("$.generators[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    if mode == Mode::Group {
        if let Some(i) = generators.iter().position(|g| g.det().is_zero()) {
            return Err(invalid(
                format!("$.generators[{i}]"),
                "singular generator in group mode",
            ));
        }
    }

    let words = match obj.get("words") {
        None => Vec::new(),
        Some(Value::Array(ws)) => ws
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let path = format!("$.words[{i}]");
                let word = parse_word(w).ok_or_else(|| invalid(path.clone(), "expected \"1,2,-1\" or [1,2,-1]"))?;
                word.validate(generators.len(), mode)
                    .map_err(|e| invalid(path, e.to_string()))?;
                Ok(word)
            })
            .collect::<Result<Vec<_>, CliError>>()?,
        Some(_) => return Err(invalid("$.words", "expected an array")),
    };

    Ok(RepDocument {
        field,
        mode,
        generators,
        words,
    })
}

fn parse_matrix(v: &Value, field: FieldSpec, path: &str) -> Result<Mat2, CliError> {
    let rows = v
        .as_array()
        .filter(|r| r.len() == 2)
        .ok_or_else(|| invalid(path, "expected [[a, b], [c, d]]"))?;
    let mut entries = Vec::with_capacity(4);
    for (i, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .filter(|r| r.len() == 2)
            .ok_or_else(|| invalid(format!("{path}[{i}]"), "expected a row of two entries"))?;
        for (j, x) in row.iter().enumerate() {
            let here = format!("{path}[{i}][{j}]");
            let text = match x {
                Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
                Value::String(s) => s.clone(),
                _ => return Err(invalid(here, "expected an integer or a string such as \"1/2\"")),
            };
            entries.push(field.parse(&text).map_err(|e| invalid(here, e.to_string()))?);
        }
    }
    Ok(Mat2::from_vector(&entries))
}

fn parse_word(v: &Value) -> Option<Word> {
    match v {
        Value::String(s) => Word::parse(s).ok(),
        Value::Array(xs) => Word::new(xs.iter().map(Value::as_i64).collect::<Option<Vec<_>>>()?).ok(),
        _ => None,
    }
}

#[derive(Debug, Parser)]
#[command(name = "moldkit", version, about = "Classify 2x2 matrix representations of free monoids and groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mold label, mold dimension and a witness.
    Classify { doc: PathBuf },
    /// Decide equivalence of two documents and emit a conjugator.
    Equiv { a: PathBuf, b: PathBuf },
    /// Determinants and traces of increasing generator products.
    Invariants { doc: PathBuf },
    /// Normal forms and moduli coordinates for the document's mold.
    Normalize { doc: PathBuf },
    /// Exhaustive census over F_q.
    Census(CensusArgs),
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value = "monoid", value_parser = ["monoid", "group"])]
    mode: String,
    /// Also count PGL_2 orbits per label.
    #[arg(long)]
    orbits: bool,
    /// Run the consistency checks (always recomputed).
    #[arg(long)]
    report: bool,
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line (`argv[0]` is the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut warnings = String::new();
    match dispatch(cli.command, &mut warnings) {
        Ok(report) => Outcome {
            code: 0,
            stdout: serde_json::to_string_pretty(&report).expect("json") + "\n",
            stderr: warnings,
        },
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("{warnings}error: {}\n", single_line(&e.to_string())),
        },
    }
}

fn single_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn dispatch(command: Command, warnings: &mut String) -> Result<Value, CliError> {
    match command {
        Command::Classify { doc } => {
            let (doc, hash) = load(&doc)?;
            Ok(classify_report(&doc, &hash))
        }
        Command::Equiv { a, b } => {
            let (da, ha) = load(&a)?;
            let (db, hb) = load(&b)?;
            equiv_report(&da, &db, [&ha, &hb])
        }
        Command::Invariants { doc } => {
            let (doc, hash) = load(&doc)?;
            invariants_report(&doc, &hash)
        }
        Command::Normalize { doc } => {
            let (doc, hash) = load(&doc)?;
            normalize_report(&doc, &hash)
        }
        Command::Census(args) => census_command(&args, warnings),
    }
}

fn load(path: &Path) -> Result<(RepDocument, String), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Parse {
        line: 1,
        column: 1,
        message: "input is not UTF-8".into(),
    })?;
    Ok((parse_rep_document(&text)?, sha256_hex(&bytes)))
}

fn el(x: &FieldElement) -> Value {
    Value::String(x.to_string())
}

fn mat(a: &Mat2) -> Value {
    json!([[el(a.at(0, 0)), el(a.at(0, 1))], [el(a.at(1, 0)), el(a.at(1, 1))]])
}

fn header(kind: &str, hash: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema".into(), json!(format!("moldkit.{kind}/{SCHEMA_VERSION}")));
    m.insert("input_sha256".into(), hash);
    m
}

fn doc_header(kind: &str, doc: &RepDocument, hash: &str) -> Map<String, Value> {
    let mut m = header(kind, json!(hash));
    m.insert("field".into(), json!(doc.field.to_string()));
    m.insert("mode".into(), json!(doc.mode.name()));
    m
}

pub fn classify_report(doc: &RepDocument, hash: &str) -> Value {
    let t = doc.tuple();
    let (label, basis) = mold::classify_with_basis(&t);
    let mut out = doc_header("classify", doc, hash);
    out.insert("label".into(), json!(label.name()));
    out.insert("mold_dim".into(), json!(basis.dim()));
    out.insert("mold_basis".into(), Value::Array(basis.basis.iter().map(mat).collect()));
    let witness = match label {
        MoldLabel::Air => {
            let w = mold::air_witness(&t);
            let g = t.gens();
            match w {
                Some(AirWitness::Pair(i, j)) => json!({
                    "kind": "delta",
                    "indices": [i, j],
                    "value": el(&moldkit::invariants::delta2(&g[i - 1], &g[j - 1])),
                }),
                Some(AirWitness::Triple(i, j, k)) => json!({
                    "kind": "tau",
                    "indices": [i, j, k],
                    "value": el(&moldkit::invariants::tau3(&g[i - 1], &g[j - 1], &g[k - 1])),
                }),
                _ => Value::Null,
            }
        }
        MoldLabel::Borel => match mold::invariant_line(&t) {
            Some(line) => json!({"kind": "invariant_line", "vector": [el(&line[0]), el(&line[1])]}),
            None => Value::Null,
        },
        MoldLabel::SemiSimple => match canon::ss_witness(&t) {
            Ok(idx) => {
                let p = t.subsequence_product(&idx);
                json!({
                    "kind": "split_product",
                    "indices": idx,
                    "m": el(&p.m()),
                })
            }
            Err(_) => Value::Null,
        },
        MoldLabel::Unipotent => match canon::unipotent_decompose(&t) {
            Ok(cd) => json!({"kind": "nilpotent_eta", "generator": cd.alpha, "eta": mat(&cd.eta)}),
            Err(_) => Value::Null,
        },
        MoldLabel::UnipotentF2 => match canon::uf2_decompose(&t) {
            Ok(ch) => json!({"kind": "trace_zero_generator", "word": ch.base.to_string(), "z": mat(&ch.z)}),
            Err(_) => Value::Null,
        },
        MoldLabel::Scalar => json!({"kind": "scalar"}),
    };
    out.insert("witness".into(), witness);
    Value::Object(out)
}

pub fn equiv_report(a: &RepDocument, b: &RepDocument, hashes: [&str; 2]) -> Result<Value, CliError> {
    let (ta, tb) = (a.tuple(), b.tuple());
    if ta.spec() != tb.spec() {
        return Err(moldkit::Error::FieldMismatch {
            expected: ta.spec(),
            found: tb.spec(),
        }
        .into());
    }
    if ta.len() != tb.len() || ta.mode() != tb.mode() {
        return Err(moldkit::Error::Incompatible("documents differ in rank or mode").into());
    }
    let la = mold::classify(&ta);
    let lb = mold::classify(&tb);
    let (method, conj) = if la != lb {
        ("label", None)
    } else if la == MoldLabel::SemiSimple {
        ("trace", canon::ss_conjugator(&ta, &tb)?)
    } else {
        ("solver", canon::general_conjugator(&ta, &tb)?)
    };
    if let Some(p) = &conj {
        assert!(canon::verify_conjugator(p, &ta, &tb), "unverified conjugator");
    }
    let mut out = header("equiv", json!(hashes));
    out.insert("labels".into(), json!([la.name(), lb.name()]));
    out.insert("equivalent".into(), json!(conj.is_some()));
    out.insert("conjugator".into(), conj.as_ref().map_or(Value::Null, mat));
    out.insert("method".into(), json!(method));
    Ok(Value::Object(out))
}

pub fn invariants_report(doc: &RepDocument, hash: &str) -> Result<Value, CliError> {
    let iv = moldkit::invariants::invariant_vector(&doc.tuple())?;
    let mut out = doc_header("invariants", doc, hash);
    out.insert("dets".into(), Value::Array(iv.dets.iter().map(el).collect()));
    out.insert(
        "traces".into(),
        Value::Array(
            iv.traces
                .iter()
                .map(|(idx, v)| {
                    let word: Vec<String> = idx.iter().map(usize::to_string).collect();
                    json!({"indices": word.join(","), "value": el(v)})
                })
                .collect(),
        ),
    );
    Ok(Value::Object(out))
}

fn char_deriv_json(cd: &CharDeriv) -> Value {
    json!({
        "alpha": cd.alpha,
        "eta": mat(&cd.eta),
        "generators": cd.gen_coords.iter().map(|(r, d)| json!({"r": el(r), "d": el(d)})).collect::<Vec<_>>(),
    })
}

fn chart_json(ch: &ABChart) -> Value {
    json!({
        "base": ch.base.to_string(),
        "z": mat(&ch.z),
        "det_z": el(&ch.det_z),
        "generators": ch.gen_coords.iter().map(|(a, b)| json!({"a": el(a), "b": el(b)})).collect::<Vec<_>>(),
    })
}

pub fn normalize_report(doc: &RepDocument, hash: &str) -> Result<Value, CliError> {
    let t = doc.tuple();
    let label = mold::classify(&t);
    let mut out = doc_header("normalize", doc, hash);
    out.insert("label".into(), json!(label.name()));
    let mut words = Vec::new();
    match label {
        MoldLabel::Air | MoldLabel::Borel | MoldLabel::SemiSimple => {
            let certs = t
                .gens()
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    if g.is_scalar() {
                        return Ok(json!({"generator": i + 1, "scalar": el(g.at(0, 0))}));
                    }
                    let cert = g.companion_normalize()?;
                    assert_eq!(moldkit::mat2::conjugate(&cert.p, g)?, cert.companion);
                    Ok(json!({
                        "generator": i + 1,
                        "p": mat(&cert.p),
                        "companion": mat(&cert.companion),
                        "branch": cert.branch.name(),
                    }))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            out.insert("companion_certificates".into(), Value::Array(certs));
            for w in &doc.words {
                words.push(json!({"word": w.to_string(), "matrix": mat(&t.eval(w)?)}));
            }
        }
        MoldLabel::Unipotent => {
            let cd = canon::unipotent_decompose(&t)?;
            out.insert("char_deriv".into(), char_deriv_json(&cd));
            for w in &doc.words {
                let (r, d) = cd.coords(w)?;
                let m = canon::unipotent_reconstruct(&cd, w)?;
                assert_eq!(m, t.eval(w)?);
                words.push(json!({"word": w.to_string(), "matrix": mat(&m), "r": el(&r), "d": el(&d)}));
            }
        }
        MoldLabel::UnipotentF2 => {
            let ch = canon::uf2_decompose(&t)?;
            out.insert("ab_chart".into(), chart_json(&ch));
            for w in &doc.words {
                let (a, b) = ch.coords(w)?;
                let m = canon::uf2_reconstruct(&ch, w)?;
                assert_eq!(m, t.eval(w)?);
                words.push(json!({
                    "word": w.to_string(),
                    "matrix": mat(&m),
                    "a": el(&a),
                    "b": el(&b),
                    "d": el(&ch.d(w)?),
                }));
            }
        }
        MoldLabel::Scalar => {
            let values = canon::scalar_decompose(&t)?;
            out.insert("scalars".into(), Value::Array(values.iter().map(el).collect()));
            for w in &doc.words {
                words.push(json!({"word": w.to_string(), "matrix": mat(&t.eval(w)?)}));
            }
        }
    }
    out.insert("words".into(), Value::Array(words));
    Ok(Value::Object(out))
}

fn counts_json(c: &LabelCounts) -> Value {
    Value::Object(c.iter().map(|(l, n)| (l.name().to_string(), json!(n))).collect())
}

fn cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

fn census_command(args: &CensusArgs, warnings: &mut String) -> Result<Value, CliError> {
    let mode: Mode = args.mode.parse()?;
    let key = CensusKey::new(args.q, args.m, mode)?;
    let request = format!(
        "census q={} m={} mode={} orbits={} report={}",
        key.q,
        key.m,
        mode.name(),
        args.orbits,
        args.report
    );
    let mut out = header("census", json!(sha256_hex(request.as_bytes())));
    out.insert("key".into(), json!({"q": key.q, "m": key.m, "mode": mode.name()}));
    let config = CensusConfig::default();
    if args.report {
        let oc = census::orbit_census_detailed(key, &config)?;
        let report = census::report_from(&oc);
        insert_counts(&mut out, &oc.counts);
        insert_report(&mut out, &report);
        return Ok(Value::Object(out));
    }
    let cache = Cache::new(cache_dir());
    let counts = match cache.load(&key, args.orbits) {
        Some(c) => c,
        None => {
            let c = if args.orbits {
                census::orbit_census_detailed(key, &config)?.counts
            } else {
                census::stratum_census_with(key, &config)?
            };
            if let Err(e) = cache.store(&c) {
                warnings.push_str(&format!(
                    "warning: cache not written to {}: {}\n",
                    cache.dir().display(),
                    single_line(&e.to_string())
                ));
            }
            c
        }
    };
    let counts = if args.orbits {
        counts
    } else {
        StratumCounts { orbits: None, ..counts }
    };
    insert_counts(&mut out, &counts);
    Ok(Value::Object(out))
}

fn insert_counts(out: &mut Map<String, Value>, c: &StratumCounts) {
    out.insert("total".into(), json!(c.total));
    out.insert("points".into(), counts_json(&c.points));
    if let Some(o) = &c.orbits {
        out.insert("orbits".into(), counts_json(o));
    }
}

fn insert_report(out: &mut Map<String, Value>, r: &Report) {
    out.insert("all_passed".into(), json!(r.all_passed()));
    out.insert(
        "checks".into(),
        Value::Array(
            r.checks
                .iter()
                .map(|c| json!({"name": c.name, "source": c.source, "passed": c.passed, "detail": c.detail}))
                .collect(),
        ),
    );
}
