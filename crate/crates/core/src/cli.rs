//! Command implementations behind the `liebasis` binary, and report rendering.
//!
//! JSON output is canonical: object keys sorted, floats rounded to 12
//! significant digits (eigenvalue tuples first to 1e-9), pretty-printed with a
//! trailing newline. Parsing a report and re-rendering it is byte-identical.

use std::path::PathBuf;

use serde_json::{json, Map, Value};

use crate::basis_sets::{self, enumerate_labels, BasisKind, Materializer, OperatorLabel};
use crate::cache::MatrixCache;
use crate::completeness::{completeness_report, CompletenessReport, Tolerances};
use crate::decomp::{self, IsotypicComponent};
use crate::error::{Error, Result};
use crate::lie_core::{self, build_generators, structure_constants, RepKind};
use crate::tensor_space::ProductSpace;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Markdown,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            other => Err(Error::InvalidConfig(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub rep1: RepKind,
    pub rep2: RepKind,
    pub basis: BasisKind,
    pub with_exchange: bool,
    pub tolerances: Tolerances,
    pub format: OutputFormat,
    pub cache_dir: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(n: usize, rep1: RepKind, rep2: RepKind, basis: BasisKind) -> Self {
        Self {
            n,
            rep1,
            rep2,
            basis,
            with_exchange: false,
            tolerances: Tolerances::default(),
            format: OutputFormat::Json,
            cache_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidConfig(format!("n must be at least 2, got {}", self.n)));
        }
        for rep in [self.rep1, self.rep2] {
            if rep == RepKind::Product {
                return Err(Error::InvalidConfig(
                    "factor representations must be defining, conjugate or adjoint".into(),
                ));
            }
        }
        if self.basis == BasisKind::SingleIr {
            return Err(Error::InvalidConfig("basis must be product or coupled".into()));
        }
        if self.with_exchange && self.rep1 != self.rep2 {
            return Err(Error::InvalidConfig(
                "--with-exchange requires identical factor representations".into(),
            ));
        }
        let t = &self.tolerances;
        for (name, v) in [
            ("commute_tol", t.commute_tol),
            ("cluster_tol", t.cluster_tol),
            ("scalar_tol", t.scalar_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidConfig(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Rendered command result and the process exit status it implies.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub value: Value,
    pub text: String,
    pub exit_code: i32,
}

fn round_sig(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let r = if r == 0.0 { 0.0 } else { r };
    serde_json::Number::from_f64(r).map(Value::Number).unwrap_or(Value::Null)
}

fn round_tuple_entry(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

/// Round every float to 12 significant digits, recursively.
pub fn canonicalize(v: &Value) -> Value {
    match v {
        Value::Number(num) if num.is_f64() => round_sig(num.as_f64().unwrap()),
        Value::Array(items) => Value::Array(items.iter().map(canonicalize).collect()),
        Value::Object(map) => Value::Object(map.iter().map(|(k, v)| (k.clone(), canonicalize(v))).collect::<Map<_, _>>()),
        other => other.clone(),
    }
}

pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&canonicalize(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn render(value: Value, markdown: impl FnOnce(&Value) -> String, format: OutputFormat, exit_code: i32) -> CommandOutput {
    let value = canonicalize(&value);
    let text = match format {
        OutputFormat::Json => canonical_json(&value),
        OutputFormat::Markdown => markdown(&value),
    };
    CommandOutput { value, text, exit_code }
}

fn fmt_num(v: &Value) -> String {
    match v {
        Value::Null => "n/a".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

// ---------------------------------------------------------------- counts

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsRow {
    pub n: usize,
    pub single_ir: (usize, usize),
    pub product: (usize, usize),
    pub coupled: (usize, usize),
    pub difference: (usize, usize),
}

impl CountsRow {
    pub fn matches(&self) -> bool {
        [self.single_ir, self.product, self.coupled, self.difference]
            .iter()
            .all(|(a, b)| a == b)
    }
}

/// Enumeration-derived `(enumerated, closed_form)` pairs for `n = 2..=n_max`.
pub fn counts_table(n_max: usize) -> Result<Vec<CountsRow>> {
    if n_max < 2 {
        return Err(Error::InvalidConfig(format!("--n-max must be at least 2, got {n_max}")));
    }
    (2..=n_max)
        .map(|n| {
            let single = enumerate_labels(n, BasisKind::SingleIr)?.len();
            let product = enumerate_labels(n, BasisKind::Product)?.len();
            let coupled = enumerate_labels(n, BasisKind::Coupled)?.len();
            Ok(CountsRow {
                n,
                single_ir: (single, basis_sets::count_single_ir(n)),
                product: (product, basis_sets::count_product(n)),
                coupled: (coupled, basis_sets::count_coupled(n)),
                difference: (product - coupled, basis_sets::count_difference(n)),
            })
        })
        .collect()
}

pub fn cmd_counts(n_max: usize, format: OutputFormat) -> Result<CommandOutput> {
    let rows = counts_table(n_max)?;
    let all_match = rows.iter().all(CountsRow::matches);
    let json_rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "single_ir": r.single_ir.1,
                "product": r.product.1,
                "coupled": r.coupled.1,
                "difference": r.difference.1,
                "enumerated": {
                    "single_ir": r.single_ir.0,
                    "product": r.product.0,
                    "coupled": r.coupled.0,
                    "difference": r.difference.0,
                },
                "match": r.matches(),
            })
        })
        .collect();
    let value = json!({
        "meta": { "command": "counts", "n_max": n_max },
        "rows": json_rows,
        "all_match": all_match,
    });
    let md = |v: &Value| {
        let mut s = String::from("# Operator counts\n\n");
        s.push_str("| n | single_ir | product | coupled | difference | enumerated (s/p/c/d) | match |\n");
        s.push_str("|---|---|---|---|---|---|---|\n");
        for r in v["rows"].as_array().unwrap() {
            let e = &r["enumerated"];
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} | {}/{}/{}/{} | {} |\n",
                r["n"], r["single_ir"], r["product"], r["coupled"], r["difference"],
                e["single_ir"], e["product"], e["coupled"], e["difference"], r["match"]
            ));
        }
        s
    };
    Ok(render(value, md, format, if all_match { EXIT_OK } else { EXIT_FAILURE }))
}

// ---------------------------------------------------------------- verify

struct Arena {
    basis: lie_core::GeneratorBasis,
    ps: ProductSpace,
}

fn arena(config: &RunConfig) -> Result<Arena> {
    let basis = build_generators(config.n)?;
    let sc = structure_constants(&basis);
    let rep1 = lie_core::irrep(config.rep1, &basis, &sc)?;
    let rep2 = lie_core::irrep(config.rep2, &basis, &sc)?;
    let ps = ProductSpace::new(rep1, rep2)?;
    Ok(Arena { basis, ps })
}

fn meta(command: &str, config: &RunConfig, dim: usize) -> Value {
    json!({
        "command": command,
        "n": config.n,
        "rep1": config.rep1.as_str(),
        "rep2": config.rep2.as_str(),
        "dim": dim,
    })
}

/// Build, check and analyse the declared set; returns the report and every
/// invariant that failed.
pub fn run_verify(config: &RunConfig) -> Result<(Option<CompletenessReport>, Vec<String>)> {
    config.validate()?;
    let Arena { basis, ps } = arena(config)?;
    let cache = MatrixCache::resolve(config.cache_dir.as_deref())?;
    let mat = Materializer::new(&ps, &basis, cache.as_ref());
    let labels = enumerate_labels(config.n, config.basis)?;
    let set = mat.materialize(config.basis, &labels)?;
    let extra = if config.with_exchange {
        Some((OperatorLabel::Exchange, mat.operator(&OperatorLabel::Exchange)?))
    } else {
        None
    };
    let mut failures = Vec::new();
    match completeness_report(&set, extra, &config.tolerances) {
        Ok(report) => {
            if report.actual_count != report.expected_count {
                failures.push(format!(
                    "count: {} operators, closed form gives {}",
                    report.actual_count, report.expected_count
                ));
            }
            if !report.commutation.passed() {
                failures.push(format!("commutation residual {:.3e}", report.commutation.max_residual));
            }
            Ok((Some(report), failures))
        }
        Err(e @ (Error::NotCommuting { .. } | Error::Invariant(_))) => {
            failures.push(e.to_string());
            Ok((None, failures))
        }
        Err(e) => Err(e),
    }
}

pub fn cmd_verify(config: &RunConfig) -> Result<CommandOutput> {
    let n = config.n;
    let (report, failures) = run_verify(config)?;
    let dim = match config.rep1 {
        RepKind::Adjoint => n * n - 1,
        _ => n,
    } * match config.rep2 {
        RepKind::Adjoint => n * n - 1,
        _ => n,
    };
    let mut m = meta("verify", config, dim);
    m["basis"] = json!(config.basis.as_str());
    m["with_exchange"] = json!(config.with_exchange);
    m["tolerances"] = json!({
        "commute_tol": config.tolerances.commute_tol,
        "cluster_tol": config.tolerances.cluster_tol,
        "scalar_tol": config.tolerances.scalar_tol,
    });
    m["failures"] = json!(failures);

    let value = match &report {
        Some(r) => {
            let render_label = |l: &OperatorLabel| l.render(n);
            let scalar: Vec<String> = r
                .labels
                .iter()
                .zip(&r.rank.scalar_flags)
                .filter(|(_, &s)| s)
                .map(|(l, _)| render_label(l))
                .collect();
            let items: Vec<Value> = r
                .spectrum
                .blocks
                .iter()
                .map(|b| {
                    json!({
                        "dim": b.dim,
                        "eigenvalues": b.eigenvalues.iter().map(|&x| round_tuple_entry(x)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let histogram: Vec<Value> = r
                .spectrum
                .dim_histogram()
                .into_iter()
                .map(|(d, c)| json!({ "dim": d, "count": c }))
                .collect();
            json!({
                "meta": m,
                "counts": {
                    "expected": r.expected_count,
                    "actual": r.actual_count,
                    "labels": r.labels.iter().map(render_label).collect::<Vec<_>>(),
                },
                "commutation": {
                    "max_residual": r.commutation.max_residual,
                    "tol": r.commutation.tol,
                    "passed": r.commutation.passed(),
                    "worst_pair": r.commutation.worst_pair.map(|(a, b)| vec![render_label(&a), render_label(&b)]),
                },
                "rank": {
                    "rank": r.rank.rank,
                    "nonscalar_rank": r.rank.nonscalar_rank,
                    "scalar_operators": scalar,
                },
                "blocks": {
                    "count": r.spectrum.blocks.len(),
                    "max_dim": r.max_block_dim,
                    "histogram": histogram,
                    "items": items,
                },
                "verdict": r.verdict.as_str(),
            })
        }
        None => json!({
            "meta": m,
            "counts": Value::Null,
            "commutation": Value::Null,
            "rank": Value::Null,
            "blocks": Value::Null,
            "verdict": "error",
        }),
    };
    let exit = if failures.is_empty() { EXIT_OK } else { EXIT_FAILURE };
    Ok(render(value, verify_markdown, config.format, exit))
}

fn verify_markdown(v: &Value) -> String {
    let m = &v["meta"];
    let mut s = format!(
        "# verify: su({}) {} ⊗ {} ({} basis{})\n\n",
        m["n"],
        fmt_num(&m["rep1"]),
        fmt_num(&m["rep2"]),
        fmt_num(&m["basis"]),
        if m["with_exchange"] == json!(true) { " + exchange" } else { "" }
    );
    s.push_str(&format!("**Verdict:** {}\n\n", fmt_num(&v["verdict"])));
    if !v["counts"].is_null() {
        let c = &v["counts"];
        let labels: Vec<String> = c["labels"].as_array().unwrap().iter().map(fmt_num).collect();
        s.push_str("| quantity | value |\n|---|---|\n");
        s.push_str(&format!("| product-space dim | {} |\n", m["dim"]));
        s.push_str(&format!("| operators (expected / actual) | {} / {} |\n", c["expected"], c["actual"]));
        s.push_str(&format!("| labels | {} |\n", labels.join(", ")));
        s.push_str(&format!(
            "| max commutator residual | {} (tol {}) |\n",
            fmt_num(&v["commutation"]["max_residual"]),
            fmt_num(&v["commutation"]["tol"])
        ));
        s.push_str(&format!(
            "| Gram rank (non-scalar) | {} ({}) |\n",
            v["rank"]["rank"], v["rank"]["nonscalar_rank"]
        ));
        s.push_str(&format!("| joint blocks | {} |\n", v["blocks"]["count"]));
        s.push_str(&format!("| max block dim | {} |\n\n", v["blocks"]["max_dim"]));
        s.push_str("| block dim | count |\n|---|---|\n");
        for h in v["blocks"]["histogram"].as_array().unwrap() {
            s.push_str(&format!("| {} | {} |\n", h["dim"], h["count"]));
        }
    }
    let failures = m["failures"].as_array().unwrap();
    if !failures.is_empty() {
        s.push_str("\n## Failures\n\n");
        for f in failures {
            s.push_str(&format!("- {}\n", fmt_num(f)));
        }
    }
    s
}

// ---------------------------------------------------------------- decompose

/// Components, per-component `σ` (None where the check failed), and failures.
pub type DecomposeRun = (Vec<IsotypicComponent>, Vec<Option<usize>>, Vec<String>);

/// Components plus per-component σ (when resolvable) and the failures found.
pub fn run_decompose(config: &RunConfig) -> Result<DecomposeRun> {
    if config.n < 2 {
        return Err(Error::InvalidConfig(format!("n must be at least 2, got {}", config.n)));
    }
    for rep in [config.rep1, config.rep2] {
        if rep == RepKind::Product {
            return Err(Error::InvalidConfig(
                "factor representations must be defining, conjugate or adjoint".into(),
            ));
        }
    }
    let Arena { basis, ps } = arena(config)?;
    let components = decomp::isotypic_decomposition(&ps, &basis)?;
    let mut failures = Vec::new();
    let total: usize = components.iter().map(|c| c.total_dim).sum();
    if total != ps.dim() {
        failures.push(format!("dimension not conserved: {total} vs {}", ps.dim()));
    }
    let sigmas = components
        .iter()
        .map(|c| match decomp::multiplicities(std::slice::from_ref(c)) {
            Ok(v) => Some(v[0].1),
            Err(e) => {
                failures.push(e.to_string());
                None
            }
        })
        .collect();
    Ok((components, sigmas, failures))
}

pub fn cmd_decompose(config: &RunConfig) -> Result<CommandOutput> {
    let (components, sigmas, failures) = run_decompose(config)?;
    let dim: usize = components.iter().map(|c| c.total_dim).sum();
    let mut m = meta("decompose", config, dim);
    m["failures"] = json!(failures);
    let rows: Vec<Value> = components
        .iter()
        .zip(&sigmas)
        .map(|(c, sigma)| {
            json!({
                "fingerprint": c.fingerprint.iter().map(|&x| round_tuple_entry(x)).collect::<Vec<_>>(),
                "total_dim": c.total_dim,
                "irrep_dim": c.irrep_dim,
                "multiplicity": sigma,
                "labels": c.su3_labels.map(|(p, q)| vec![p, q]),
                "identified": config.n != 3 || c.su3_labels.is_some(),
            })
        })
        .collect();
    let value = json!({
        "meta": m,
        "components": rows,
        "total_dim": dim,
    });
    let md = |v: &Value| {
        let m = &v["meta"];
        let mut s = format!(
            "# decompose: su({}) {} ⊗ {}\n\n",
            m["n"],
            fmt_num(&m["rep1"]),
            fmt_num(&m["rep2"])
        );
        s.push_str("| (p,q) | total dim | irrep dim | σ | fingerprint |\n|---|---|---|---|---|\n");
        for c in v["components"].as_array().unwrap() {
            let labels = match c["labels"].as_array() {
                Some(pq) => format!("({},{})", pq[0], pq[1]),
                None => "n/a".into(),
            };
            let fp: Vec<String> = c["fingerprint"].as_array().unwrap().iter().map(fmt_num).collect();
            s.push_str(&format!(
                "| {} | {} | {} | {} | {} |\n",
                labels,
                c["total_dim"],
                fmt_num(&c["irrep_dim"]),
                fmt_num(&c["multiplicity"]),
                fp.join(", ")
            ));
        }
        s.push_str(&format!("\nTotal dimension: {}\n", v["total_dim"]));
        s
    };
    let exit = if failures.is_empty() { EXIT_OK } else { EXIT_FAILURE };
    Ok(render(value, md, config.format, exit))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exchange_needs_identical_reps() {
        let mut c = RunConfig::new(3, RepKind::Defining, RepKind::Conjugate, BasisKind::Coupled);
        c.with_exchange = true;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        c.rep2 = RepKind::Defining;
        assert!(c.validate().is_ok());
        c.n = 1;
        assert!(c.validate().is_err());
    }

    #[test]
    fn counts_rows() {
        let rows = counts_table(4).unwrap();
        let got: Vec<_> = rows
            .iter()
            .map(|r| (r.single_ir.1, r.product.1, r.coupled.1, r.difference.1))
            .collect();
        assert_eq!(got, vec![(2, 4, 4, 0), (5, 10, 9, 1), (9, 18, 15, 3)]);
        assert!(rows.iter().all(CountsRow::matches));
        assert!(counts_table(1).is_err());
    }

    #[test]
    fn rounding_is_canonical() {
        let v = json!({"b": 1.0 / 3.0, "a": [-0.0, 2.0, 7], "c": 1e-20});
        let s = canonical_json(&v);
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
        assert!(s.contains("0.333333333333"));
        assert!(!s.contains("-0.0"));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(canonical_json(&back), s);
    }

    #[test]
    fn markdown_counts() {
        let out = cmd_counts(3, OutputFormat::Markdown).unwrap();
        assert!(out.text.contains("| 3 | 5 | 10 | 9 | 1 |"));
        assert_eq!(out.exit_code, EXIT_OK);
    }
}
