//! One function per subcommand. Each validates its inputs up front (parse
//! errors), then returns the cache request and a deferred computation.

use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use kac_core::algebra::Poly;
use kac_core::asymptotics::{
    limit_series, predicted_rate, reciprocal_limit, valuation_report, witt_dim, LimitMode, LimitSpec, SeriesPrefix,
};
use kac_core::distribution::{coefficient_graph, to_csv, unimodality_check, CoeffGraph, Parity};
use kac_core::hua::{check_invariants, counts_from_a, kac_direct, kac_plethystic, Count};
use kac_core::parametric::{param_kac_capped, AffineExponent, Decomposition};
use kac_core::quiver::{DimVector, Quiver, QuiverFile};
use kac_core::KacError;

use crate::{ComputeArgs, CountsArgs, DistributionArgs, LimitArgs, ParamArgs, PathChoice, ValuationArgs, Which, WittArgs};

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Compute(KacError),
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Compute(KacError::TermExplosion { .. }) => 4,
            CliError::Compute(_) | CliError::Output(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Output(m) => write!(f, "{m}"),
            CliError::Compute(e @ KacError::TermExplosion { .. }) => {
                write!(f, "{e}; try fixing more arrows or a smaller dimension vector")
            }
            CliError::Compute(e) => write!(f, "{e}"),
        }
    }
}

impl From<KacError> for CliError {
    fn from(e: KacError) -> Self {
        CliError::Compute(e)
    }
}

pub type Deferred = Box<dyn Fn() -> Result<String, CliError>>;
pub type Prepared = (Option<Value>, Deferred);

fn load_quiver(path: &Path) -> Result<Quiver, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let file: QuiverFile =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Quiver::from_file(file).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn parse_dim(quiver: &Quiver, text: &str) -> Result<DimVector, CliError> {
    quiver.parse_dim(text).map_err(|e| CliError::Parse(format!("--dim {text}: {e}")))
}

fn parse_list(flag: &str, text: &str) -> Result<Vec<u64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|e| CliError::Parse(format!("{flag} {text}: {e}"))))
        .collect()
}

fn check_arrows(quiver: &Quiver, names: &[String]) -> Result<(), CliError> {
    for n in names {
        quiver.arrow_index(n).map_err(|e| CliError::Parse(format!("--vary {n}: {e}")))?;
    }
    Ok(())
}

fn quiver_value(q: &Quiver) -> Value {
    serde_json::to_value(q.to_file()).expect("quiver files serialize")
}

fn big(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

fn series_value(s: &SeriesPrefix) -> Value {
    Value::Array(s.coefficients.iter().map(big).collect())
}

fn series_text(s: &SeriesPrefix) -> String {
    s.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn poly_value(p: &Poly) -> Value {
    serde_json::to_value(p.to_record()).expect("records serialize")
}

fn to_json(v: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(v).expect("json values serialize"))
}

pub fn compute(a: &ComputeArgs, json: bool) -> Result<Prepared, CliError> {
    let quiver = load_quiver(&a.quiver)?;
    let d = parse_dim(&quiver, &a.dim)?;
    let path = a.path;
    let check = a.check;
    let request = json!({
        "command": "compute", "quiver": quiver_value(&quiver), "dim": d.0,
        "path": format!("{path:?}"), "check": check, "json": json,
    });
    Ok((
        Some(request),
        Box::new(move || {
            let r = match path {
                PathChoice::Moebius => kac_direct(&quiver, &d)?,
                PathChoice::Plethystic => kac_plethystic(&quiver, &d)?,
            };
            if check {
                check_invariants(&r)?;
            }
            Ok(if json {
                to_json(&json!({
                    "quiver": quiver_value(&quiver), "dim": d.0, "path": r.path,
                    "text": r.poly.to_string(), "poly": poly_value(&r.poly),
                }))
            } else {
                format!("{}\n{}\n", r.poly, serde_json::to_string(&r.poly.to_record()).expect("records serialize"))
            })
        }),
    ))
}

struct ParamInput {
    quiver: Quiver,
    d: DimVector,
    vary: Vec<String>,
    cap: usize,
}

fn param_input(a: &ParamArgs) -> Result<ParamInput, CliError> {
    let quiver = load_quiver(&a.quiver)?;
    let d = parse_dim(&quiver, &a.dim)?;
    check_arrows(&quiver, &a.vary)?;
    Ok(ParamInput { quiver, d, vary: a.vary.clone(), cap: a.term_cap })
}

impl ParamInput {
    fn request(&self, command: &str) -> Value {
        let mut vary = self.vary.clone();
        vary.sort();
        vary.dedup();
        json!({
            "command": command, "quiver": quiver_value(&self.quiver), "dim": self.d.0,
            "vary": vary, "term_cap": self.cap,
        })
    }

    fn run(&self) -> Result<Decomposition, CliError> {
        Ok(param_kac_capped(&self.quiver, &self.d, &self.vary, self.cap)?)
    }
}

pub fn param(a: &ParamArgs, json: bool) -> Result<Prepared, CliError> {
    let input = param_input(a)?;
    let mut request = input.request("param");
    request["json"] = json!(json);
    Ok((
        Some(request),
        Box::new(move || {
            let dec = input.run()?;
            Ok(if json {
                to_json(&serde_json::to_value(dec.to_record()).expect("records serialize"))
            } else {
                format!("{dec}\n")
            })
        }),
    ))
}

fn affine_value(e: &AffineExponent, names: &[String]) -> Value {
    json!({
        "constant": e.constant,
        "linear": names.iter().zip(&e.linear).map(|(n, c)| (n.clone(), json!(c))).collect::<serde_json::Map<_, _>>(),
    })
}

pub fn limit(a: &LimitArgs, json: bool, reciprocal: bool) -> Result<Prepared, CliError> {
    let input = param_input(&a.param)?;
    let mut vary = input.vary.clone();
    vary.dedup();
    // the engine orders varying arrows as the quiver declares them
    let mut ordered: Vec<String> = input
        .quiver
        .arrows()
        .iter()
        .map(|x| x.name.clone())
        .filter(|n| vary.contains(n))
        .collect();
    ordered.dedup();
    let k = ordered.len();
    let mode = match &a.direction {
        Some(ray) => {
            let ray = parse_list("--direction", ray)?;
            let base = match &a.base {
                Some(b) => parse_list("--base", b)?,
                None => vec![0; ray.len()],
            };
            if ray.len() != k || base.len() != k {
                return Err(CliError::Parse(format!(
                    "--direction/--base need {k} entries, one per varying arrow ({})",
                    ordered.join(",")
                )));
            }
            LimitMode::Direction { base, ray }
        }
        None => LimitMode::Componentwise(vec![None; k]),
    };
    let spec = LimitSpec {
        mode,
        order: a.order,
        renormalize: a.renormalize,
        assume_direction_free: a.assume_direction_free,
    };
    let mut request = input.request(if reciprocal { "reciprocal" } else { "limit" });
    request["limit"] = json!({
        "direction": a.direction, "base": a.base, "renormalize": a.renormalize,
        "assume_direction_free": a.assume_direction_free, "order": a.order,
    });
    request["json"] = json!(json);
    Ok((
        Some(request),
        Box::new(move || {
            let dec = input.run()?;
            if reciprocal {
                let s = reciprocal_limit(&dec, &spec)?;
                return Ok(if json {
                    to_json(&json!({ "varying": dec.varying, "reciprocal_limit": series_value(&s) }))
                } else {
                    format!("{}\n", series_text(&s))
                });
            }
            let s = limit_series(&dec, &spec)?;
            if !json {
                return Ok(format!("{}\n", series_text(&s)));
            }
            let params: Vec<String> = match &spec.mode {
                LimitMode::Direction { .. } => vec!["s".to_string()],
                LimitMode::Componentwise(_) => dec.varying.clone(),
            };
            let rate = match predicted_rate(&dec, &spec) {
                Ok(r) => affine_value(&r, &params),
                Err(KacError::EmptyComplement) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            Ok(to_json(&json!({
                "varying": dec.varying, "limit": series_value(&s), "predicted_rate": rate,
            })))
        }),
    ))
}

pub fn valuation(a: &ValuationArgs, json: bool) -> Result<Prepared, CliError> {
    let quiver = load_quiver(&a.quiver)?;
    let d = quiver.parse_dim(&a.dim_box).map_err(|e| CliError::Parse(format!("--dim-box {}: {e}", a.dim_box)))?;
    let n_box = a.mult_box;
    if n_box == 0 {
        return Err(CliError::Parse("--mult-box must be at least 1".into()));
    }
    let request = json!({
        "command": "valuation", "quiver": quiver_value(&quiver), "dim_box": d.0, "mult_box": n_box, "json": json,
    });
    Ok((
        Some(request),
        Box::new(move || {
            let report = valuation_report(&quiver, &d, n_box)?;
            let support = report.iter().filter(|r| r.matches_support).count();
            let all = report.iter().filter(|r| r.matches_all_imaginary).count();
            if json {
                return Ok(to_json(&json!({
                    "records": report,
                    "summary": { "instances": report.len(), "match_support": support, "match_all_imaginary": all },
                })));
            }
            let mut out = String::from("multiplicities\tdim\tactual\tpredicted(support)\tpredicted(all)\tmatch\n");
            for r in &report {
                let _ = writeln!(
                    out,
                    "{:?}\t{:?}\t{}\t{}\t{}\t{}{}",
                    r.multiplicities,
                    r.dim,
                    r.actual,
                    r.predicted_support,
                    r.predicted_all_imaginary,
                    if r.matches_support { "yes" } else { "NO" },
                    if r.conventions_differ() { "\tconventions differ" } else { "" }
                );
            }
            let _ = writeln!(
                out,
                "agreement: {support}/{} (support convention), {all}/{} (all imaginary vertices)",
                report.len(),
                report.len()
            );
            Ok(out)
        }),
    ))
}

pub fn witt(a: &WittArgs, json: bool) -> Result<Prepared, CliError> {
    let d: Vec<u32> = parse_list("--dim", &a.dim)?
        .into_iter()
        .map(|x| u32::try_from(x).map_err(|e| CliError::Parse(format!("--dim {}: {e}", a.dim))))
        .collect::<Result<_, _>>()?;
    if d.iter().all(|&x| x == 0) {
        return Err(CliError::Parse("--dim must be nonzero".into()));
    }
    let request = json!({ "command": "witt", "dim": d, "json": json });
    Ok((
        Some(request),
        Box::new(move || {
            let w = witt_dim(&d);
            Ok(if json { to_json(&json!({ "dim": d, "witt": big(&w) })) } else { format!("{w}\n") })
        }),
    ))
}

fn graph_value(g: &CoeffGraph) -> Value {
    Value::Array(
        g.points
            .iter()
            .map(|(x, y)| json!({ "x": x.to_string(), "y": y.to_string() }))
            .collect(),
    )
}

pub fn distribution(a: &DistributionArgs, json: bool) -> Result<Prepared, CliError> {
    let quiver = load_quiver(&a.quiver)?;
    let d = parse_dim(&quiver, &a.dim)?;
    let csv = a.csv.clone();
    // the CSV is a side effect, so those runs bypass the cache
    let request = csv.is_none().then(|| {
        json!({ "command": "distribution", "quiver": quiver_value(&quiver), "dim": d.0, "json": json })
    });
    Ok((
        request,
        Box::new(move || {
            let a = kac_direct(&quiver, &d)?.poly;
            let even = coefficient_graph(&a, Parity::Even)?;
            let odd = coefficient_graph(&a, Parity::Odd)?;
            let ue = unimodality_check(&a, Parity::Even)?;
            let uo = unimodality_check(&a, Parity::Odd)?;
            if let Some(path) = &csv {
                fs::write(path, to_csv(&[even.clone(), odd.clone()]))
                    .map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
            }
            if json {
                return Ok(to_json(&json!({
                    "poly": poly_value(&a),
                    "even": graph_value(&even), "odd": graph_value(&odd),
                    "unimodal": { "even": ue, "odd": uo },
                })));
            }
            let mut out = format!("A = {a}\n");
            for (g, u) in [(&even, ue), (&odd, uo)] {
                let pts: Vec<String> = g.points.iter().map(|(x, y)| format!("({x}, {y})")).collect();
                let _ = writeln!(out, "{}: {}", g.parity.name(), pts.join(" "));
                let _ = writeln!(
                    out,
                    "{} unimodal: {} (peak at index {})",
                    g.parity.name(),
                    if u.unimodal { "yes" } else { "NO - counterexample" },
                    u.peak_index
                );
            }
            Ok(out)
        }),
    ))
}

pub fn counts(a: &CountsArgs, json: bool) -> Result<Prepared, CliError> {
    let quiver = load_quiver(&a.quiver)?;
    let d = parse_dim(&quiver, &a.dim)?;
    let which = a.which;
    let request = json!({
        "command": "counts", "quiver": quiver_value(&quiver), "dim": d.0,
        "which": format!("{which:?}"), "json": json,
    });
    Ok((
        Some(request),
        Box::new(move || {
            let count = match which {
                Which::M => Count::M,
                Which::I => Count::I,
            };
            let table = counts_from_a(&quiver, &d, count)?;
            if json {
                let rows: Vec<Value> = table
                    .iter()
                    .map(|(d, p)| json!({ "dim": d.0, "text": p.to_string(), "poly": poly_value(p) }))
                    .collect();
                return Ok(to_json(&Value::Array(rows)));
            }
            let mut out = String::new();
            for (d, p) in &table {
                let _ = writeln!(out, "{d}: {p}");
            }
            Ok(out)
        }),
    ))
}
