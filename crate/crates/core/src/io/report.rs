use std::path::PathBuf;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::algebra::Scalar;
use crate::assembly::{blf_global_formal, near_positive_global, BettiVector};
use crate::complexes::{cohomology_table, fit_free_module, hilbert_function, CohomologyReport};
use crate::error::{Error, Result};
use crate::models::{model, ModelName, ModelSpec};
use crate::poisson::{
    casimir_basis, exactness_witness, intrinsic_gradient, jacobi_check, modular_field, near_positivity_sample,
    rank_at, sample_grid, wedge_power, PointEval, PoissonStructure,
};

use super::dsl::parse_structure;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    Validate,
    Casimirs,
    Cohomology,
    Modular,
    Rank,
    Assemble,
    Report,
    Models,
}

impl Operation {
    pub fn as_str(self) -> &'static str {
        match self {
            Operation::Validate => "validate",
            Operation::Casimirs => "casimirs",
            Operation::Cohomology => "cohomology",
            Operation::Modular => "modular",
            Operation::Rank => "rank",
            Operation::Assemble => "assemble",
            Operation::Report => "report",
            Operation::Models => "models",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::InvalidParameter(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    None,
    Model(ModelSpec),
    Input(PathBuf),
    Text(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AssembleKind {
    #[default]
    NearPositive,
    Blf,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct AssembleParams {
    pub kind: AssembleKind,
    pub betti: Option<[u64; 5]>,
    pub circles: u64,
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportConfig {
    pub source: Source,
    pub operation: Operation,
    pub max_degree: u32,
    pub k_range: Option<(usize, usize)>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub samples: Option<String>,
    pub representatives: bool,
    pub assemble: AssembleParams,
}

impl ReportConfig {
    pub fn new(operation: Operation, source: Source) -> Self {
        ReportConfig {
            source,
            operation,
            max_degree: 4,
            k_range: None,
            format: Format::Json,
            output: None,
            samples: None,
            representatives: false,
            assemble: AssembleParams::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutcome {
    pub exit_code: i32,
    /// Rendered report (empty when the run stopped on a usage error).
    pub output: String,
    pub diagnostics: Vec<String>,
}

enum Failure {
    Usage(String),
    NotPoisson(Value, String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// "a,b,c,d;..." of rationals, or "grid:r" for the half-integer grid in [−r/2, r/2].
pub fn parse_samples(text: &str, n: usize) -> Result<Vec<PointEval>> {
    if let Some(r) = text.trim().strip_prefix("grid:") {
        let r: i64 = r
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("bad grid radius `{r}`")))?;
        return Ok(sample_grid(n, r));
    }
    let mut out = Vec::new();
    for chunk in text.split(';').map(str::trim).filter(|c| !c.is_empty()) {
        let coords = chunk
            .split(',')
            .map(|c| {
                Scalar::from_str(c.trim()).map_err(|_| Error::InvalidParameter(format!("bad rational `{c}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != n {
            return Err(Error::CoordinateMismatch { left: n, right: coords.len() });
        }
        out.push(PointEval::new(coords));
    }
    Ok(out)
}

struct Loaded {
    structure: PoissonStructure,
    model: Option<ModelSpec>,
    label: String,
}

fn load(source: &Source) -> std::result::Result<Loaded, Failure> {
    match source {
        Source::None => Err(Failure::Usage("this operation needs --model or --input".into())),
        Source::Model(spec) => {
            let structure = match model(spec) {
                Ok(s) => s,
                Err(Error::NotPoisson { witness }) => {
                    return Err(Failure::NotPoisson(
                        json!({ "jacobi": false, "witness": witness.to_string() }),
                        "catalog model with this factor is not Poisson".into(),
                    ))
                }
                Err(e) => return Err(e.into()),
            };
            Ok(Loaded { structure, model: Some(spec.clone()), label: spec.name.to_string() })
        }
        Source::Input(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let label = path.display().to_string();
            Ok(Loaded { structure: parse_structure(&text)?.to_structure()?, model: None, label })
        }
        Source::Text(text) => Ok(Loaded {
            structure: parse_structure(text)?.to_structure()?,
            model: None,
            label: "<text>".into(),
        }),
    }
}

fn structure_json(l: &Loaded) -> Value {
    let s = &l.structure;
    json!({
        "source": l.label,
        "coordinates": s.names(),
        "dimension": s.dim(),
        "bivector": s.format_bivector(),
        "weights": s.weights().as_slice(),
        "volume_scale": s.volume().scale().to_string(),
    })
}

fn validate_json(s: &PoissonStructure) -> (bool, Value) {
    let rep = jacobi_check(s);
    let degree = s.coefficient_degree().ok().flatten();
    (
        rep.is_poisson,
        json!({
            "jacobi": rep.is_poisson,
            "witness": if rep.is_poisson { Value::Null } else { Value::String(rep.witness.format_with(s.names())) },
            "coefficient_degree": degree,
            "homogeneous": s.coefficient_degree().is_ok(),
        }),
    )
}

fn require_poisson(s: &PoissonStructure) -> std::result::Result<PoissonStructure, Failure> {
    let (ok, v) = validate_json(s);
    if !ok {
        return Err(Failure::NotPoisson(v, "input bivector fails the Jacobi identity".into()));
    }
    s.clone().validate().map_err(Failure::from)
}

fn casimirs_json(s: &PoissonStructure, max_degree: u32) -> Result<Value> {
    let mut rows = Vec::new();
    for i in 0..=max_degree {
        let basis = casimir_basis(s, i)?;
        rows.push(json!({
            "i": i,
            "dimension": basis.len(),
            "basis": basis.iter().map(|p| p.format_with(s.names())).collect::<Vec<_>>(),
        }));
    }
    Ok(json!({ "degrees": rows }))
}

fn casimir_degrees(spec: Option<&ModelSpec>) -> Option<Vec<u32>> {
    match spec.map(|s| (s.name, s.factor.is_some())) {
        Some((ModelName::BlfCircle, false)) => Some(vec![1, 2]),
        Some((ModelName::BlfPoint, false)) => Some(vec![2, 2]),
        Some((ModelName::Sl2Dual, false)) => Some(vec![2]),
        _ => None,
    }
}

fn cohomology_json(s: &PoissonStructure, report: &CohomologyReport, fit_degrees: Option<&[u32]>) -> Value {
    let table: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let mut row = json!({
                "k": e.k,
                "i": e.i,
                "dim": e.dim,
                "nullity": e.nullity,
                "incoming_rank": e.incoming_rank,
            });
            if let Some(reps) = &e.representatives {
                row["representatives"] =
                    Value::from(reps.iter().map(|r| r.format_with(s.names())).collect::<Vec<_>>());
            }
            row
        })
        .collect();
    let mut dims = Map::new();
    for k in report.k_range.0..=report.k_range.1 {
        dims.insert(format!("H{k}"), json!(report.dims(k).iter().map(|(_, d)| d).collect::<Vec<_>>()));
    }
    let mut out = json!({
        "shift": report.shift,
        "i_max": report.i_max,
        "table": table,
        "dims": dims,
        "totals": report.totals().into_iter().map(|(k, v)| (format!("H{k}"), json!(v))).collect::<Map<_, _>>(),
    });
    if let Some(deg) = fit_degrees {
        let mut fits = Map::new();
        for k in report.k_range.0..=report.k_range.1 {
            let v = match fit_free_module(&report.dims(k), deg) {
                Ok(f) => serde_json::to_value(f).expect("serializable"),
                Err(e) => json!({ "error": e.to_string() }),
            };
            fits.insert(format!("H{k}"), v);
        }
        out["free_module_fits"] = Value::Object(fits);
    }
    out
}

fn modular_json(s: &PoissonStructure) -> Result<Value> {
    let y = modular_field(s, s.volume())?;
    let dy = s.bivector().schouten(&y);
    Ok(json!({
        "modular_field": y.format_with(s.names()),
        "vanishes": y.is_zero(),
        "poisson_vector_field": dy.is_zero(),
    }))
}

fn rank_json(s: &PoissonStructure, samples: &[PointEval]) -> Result<Value> {
    let mut ranks = Vec::new();
    let mut gradients = Vec::new();
    for p in samples {
        let point: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        ranks.push(json!({ "point": point, "rank": rank_at(s, p)? }));
        if let Ok(g) = intrinsic_gradient(s, p) {
            gradients.push(json!({ "point": point, "rank": g.rank }));
        }
    }
    let mut out = json!({ "samples": ranks, "intrinsic_gradient": gradients });
    if s.dim() == 4 {
        out["near_positivity"] = serde_json::to_value(near_positivity_sample(s, samples)?).expect("serializable");
    }
    Ok(out)
}

fn reference_json(spec: &ModelSpec, i_max: u32) -> Option<Value> {
    if spec.factor.is_some() {
        return Some(json!({ "jacobi": true }));
    }
    let degrees = 0..=i_max;
    let unit = |v: usize| degrees.clone().map(|i| if i == 0 { v } else { 0 }).collect::<Vec<_>>();
    Some(match spec.name {
        ModelName::NearPositive => json!({
            "jacobi": true,
            "modular_field": "2*dx0",
            "casimirs": "none in positive degree",
            "dims": { "H0": unit(1), "H1": unit(2), "H2": unit(1), "H3": unit(0), "H4": unit(0) },
            "representatives": { "H1": ["dx0", "dx2"], "H2": ["dx0^dx2"] },
            "exactness_witness": "x0*dx0 + x1*dx1 + x2*dx2 + x3*dx3",
        }),
        ModelName::BlfCircle => {
            let h = hilbert_function(&[1, 2], i_max);
            json!({
                "jacobi": true,
                "modular_field": "0",
                "casimirs": ["theta", "-x1^2 + x2^2 + x3^2"],
                "dims": { "H0": h, "H1": h, "H2": unit(0), "H3": h, "H4": h },
                "representatives": { "H1": "Casimir * dtheta", "H3": ["dx1^dx2^dx3"], "H4": ["dtheta^dx1^dx2^dx3"] },
                "exactness_witness": "theta*dtheta + x1*dx1 + x2*dx2 + x3*dx3",
            })
        }
        ModelName::BlfPoint => {
            let h = hilbert_function(&[2, 2], i_max);
            let mut h1 = vec![0usize; i_max as usize + 1];
            for d in 1..h1.len() {
                h1[d] = h[d - 1];
            }
            json!({
                "jacobi": true,
                "modular_field": "0",
                "casimirs": ["x1^2 - x2^2 + x3^2 - x4^2", "2*x1*x2 + 2*x3*x4"],
                "dims": { "H0": h, "H1": h1 },
                "free_module_ranks": { "H0": 1, "H1": 1, "H2": 6, "H3": 13, "H4": 7 },
                "jacobian_constant": 4,
            })
        }
        _ => json!({ "jacobi": true }),
    })
}

fn assemble_json(p: &AssembleParams, max_degree: u32) -> Result<Value> {
    let table = match p.kind {
        AssembleKind::NearPositive => {
            let b = p
                .betti
                .ok_or_else(|| Error::InvalidParameter("--betti b0,b1,b2,b3,b4 is required".into()))?;
            near_positive_global(BettiVector::new(b)?, p.circles)
        }
        AssembleKind::Blf => blf_global_formal(p.circles, p.points, max_degree)?,
    };
    Ok(serde_json::to_value(table).expect("serializable"))
}

fn models_json() -> Value {
    let rows: Vec<Value> = ModelName::ALL
        .iter()
        .map(|&m| {
            let s = model(&ModelSpec::new(m)).expect("catalog default");
            json!({
                "name": m.as_str(),
                "description": m.description(),
                "takes_n": m.takes_n(),
                "takes_factor": m.takes_factor(),
                "coordinates": s.names(),
                "bivector": s.format_bivector(),
            })
        })
        .collect();
    json!({ "models": rows })
}

fn execute(config: &ReportConfig) -> std::result::Result<(Value, Value, Value), Failure> {
    let mut params = json!({ "max_degree": config.max_degree });
    if let Some((a, b)) = config.k_range {
        params["k_range"] = json!([a, b]);
    }
    if let Source::Model(spec) = &config.source {
        if let Some(n) = spec.n {
            params["n"] = json!(n);
        }
        if let Some(k) = &spec.factor {
            params["factor"] = json!(k.to_string());
        }
    }
    match config.operation {
        Operation::Models => return Ok((Value::Null, params, models_json())),
        Operation::Assemble => {
            let p = &config.assemble;
            params["kind"] = json!(match p.kind {
                AssembleKind::NearPositive => "near-positive",
                AssembleKind::Blf => "blf",
            });
            params["circles"] = json!(p.circles);
            params["points"] = json!(p.points);
            if let Some(b) = p.betti {
                params["betti"] = json!(b);
            }
            return Ok((Value::Null, params, assemble_json(p, config.max_degree)?));
        }
        _ => {}
    }
    let loaded = load(&config.source)?;
    let structure = structure_json(&loaded);
    let s = &loaded.structure;
    let k_range = config.k_range.unwrap_or((0, s.dim()));
    let mut results = match config.operation {
        Operation::Validate => {
            let (ok, v) = validate_json(s);
            if !ok {
                return Err(Failure::NotPoisson(
                    json!({ "structure": structure, "results": v }),
                    "bivector fails the Jacobi identity".into(),
                ));
            }
            v
        }
        Operation::Casimirs => casimirs_json(&require_poisson(s)?, config.max_degree)?,
        Operation::Cohomology => {
            let s = require_poisson(s)?;
            let report = cohomology_table(&s, k_range, config.max_degree, config.representatives)?;
            let fit = casimir_degrees(loaded.model.as_ref());
            cohomology_json(&s, &report, fit.as_deref())
        }
        Operation::Modular => modular_json(&require_poisson(s)?)?,
        Operation::Rank => {
            let samples = match &config.samples {
                Some(t) => parse_samples(t, s.dim())?,
                None => sample_grid(s.dim(), 1),
            };
            params["samples"] = json!(samples.len());
            rank_json(s, &samples)?
        }
        Operation::Report => {
            let s = require_poisson(s)?;
            let (_, v) = validate_json(&s);
            let mut out = json!({
                "validate": v,
                "modular": modular_json(&s)?,
                "casimirs": casimirs_json(&s, config.max_degree)?,
                "exactness_witness": exactness_witness(&s, 1)?.map(|y| y.format_with(s.names())),
                "wedge_square": wedge_power(&s, 2).format_with(s.names()),
            });
            match cohomology_table(&s, k_range, config.max_degree, config.representatives) {
                Ok(report) => {
                    let fit = casimir_degrees(loaded.model.as_ref());
                    out["cohomology"] = cohomology_json(&s, &report, fit.as_deref());
                }
                Err(e) => out["cohomology"] = json!({ "error": e.to_string() }),
            }
            out
        }
        Operation::Models | Operation::Assemble => unreachable!(),
    };
    if let Some(spec) = &loaded.model {
        if let Some(r) = reference_json(spec, config.max_degree) {
            results["reference"] = r;
        }
    }
    Ok((structure, params, results))
}

fn document(config: &ReportConfig, structure: Value, params: Value, results: Value) -> Value {
    json!({
        "structure": structure,
        "operation": config.operation.as_str(),
        "parameters": params,
        "results": results,
        "engine_version": env!("CARGO_PKG_VERSION"),
    })
}

pub fn run(config: &ReportConfig) -> RunOutcome {
    let (code, doc, mut diagnostics) = match execute(config) {
        Ok((structure, params, results)) => (0, Some(document(config, structure, params, results)), Vec::new()),
        Err(Failure::Usage(msg)) => (2, None, vec![format!("error: {msg}")]),
        Err(Failure::NotPoisson(v, msg)) => {
            let (structure, results) = match (v.get("structure"), v.get("results")) {
                (Some(s), Some(r)) => (s.clone(), r.clone()),
                _ => (Value::Null, v.clone()),
            };
            let params = json!({ "max_degree": config.max_degree });
            let witness = results.get("witness").and_then(Value::as_str).unwrap_or("").to_string();
            (
                1,
                Some(document(config, structure, params, results)),
                vec![format!("error: {msg}"), format!("witness: [pi,pi] = {witness}")],
            )
        }
    };
    let output = match doc {
        Some(d) => match config.format {
            Format::Json => serde_json::to_string_pretty(&d).expect("serializable") + "\n",
            Format::Markdown => render_markdown(&d),
        },
        None => String::new(),
    };
    if let (Some(path), false) = (&config.output, output.is_empty()) {
        if let Err(e) = std::fs::write(path, &output) {
            diagnostics.push(format!("error: cannot write {}: {e}", path.display()));
            return RunOutcome { exit_code: 2, output, diagnostics };
        }
    }
    RunOutcome { exit_code: code, output, diagnostics }
}

fn scalar_cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.replace('|', "\\|"),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            a.iter().map(scalar_cell).collect::<Vec<_>>().join(", ")
        }
        other => other.to_string().replace('|', "\\|"),
    }
}

fn is_table(a: &[Value]) -> bool {
    !a.is_empty() && a.iter().all(Value::is_object)
}

fn md_section(out: &mut String, title: &str, v: &Value, level: usize) {
    let hashes = "#".repeat(level.min(6));
    match v {
        Value::Object(map) => {
            out.push_str(&format!("{hashes} {title}\n\n"));
            let (simple, nested): (Vec<_>, Vec<_>) = map
                .iter()
                .partition(|(_, x)| !x.is_object() && !matches!(x, Value::Array(a) if is_table(a)));
            if !simple.is_empty() {
                out.push_str("| key | value |\n|---|---|\n");
                for (k, x) in simple {
                    out.push_str(&format!("| {k} | {} |\n", scalar_cell(x)));
                }
                out.push('\n');
            }
            for (k, x) in nested {
                md_section(out, k, x, level + 1);
            }
        }
        Value::Array(rows) if is_table(rows) => {
            out.push_str(&format!("{hashes} {title}\n\n"));
            let mut cols: Vec<String> = Vec::new();
            for r in rows {
                for k in r.as_object().expect("table row").keys() {
                    if !cols.contains(k) {
                        cols.push(k.clone());
                    }
                }
            }
            out.push_str(&format!("| {} |\n", cols.join(" | ")));
            out.push_str(&format!("|{}\n", "---|".repeat(cols.len())));
            for r in rows {
                let cells: Vec<String> = cols.iter().map(|c| scalar_cell(r.get(c).unwrap_or(&Value::Null))).collect();
                out.push_str(&format!("| {} |\n", cells.join(" | ")));
            }
            out.push('\n');
        }
        other => out.push_str(&format!("{hashes} {title}\n\n{}\n\n", scalar_cell(other))),
    }
}

fn render_markdown(doc: &Value) -> String {
    let mut out = format!(
        "# {} report\n\nengine version {}\n\n",
        doc["operation"].as_str().unwrap_or("poisson"),
        doc["engine_version"].as_str().unwrap_or("")
    );
    for key in ["structure", "parameters", "results"] {
        if !doc[key].is_null() {
            md_section(&mut out, key, &doc[key], 2);
        }
    }
    out
}
