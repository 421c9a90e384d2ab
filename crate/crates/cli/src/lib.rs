//! Batch verification over (N, n) grids with JSON/CSV reports.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use qtorus::braid_image::{image_order, Mode, MAX_DIM};
use qtorus::cyclo::HalfInt;
use qtorus::fusion::{bratteli_dims, fusion_report, fusion_with_s};
use qtorus::gaussian::{braid_report, build_braid, eigenvalue_check, gauss_identities, trace_formula_check};
use qtorus::nso::{build_b, centralizer_dim, qserre_report, spectrum_check, Variant};
use qtorus::torus::{build_torus_rep, relations_report};
use qtorus::verma::{
    b2_spectrum, build_verma, default_depth, form_invariant, qserre_holds, simple_quotient_at, simple_quotient_generic,
    unitarity_check, verma_qserre_truncated, QSpec, Verma,
};
use qtorus::{CycNum, Error};

pub const PRECISION_ENV: &str = "QTORUS_PRECISION";
pub const DEFAULT_PRECISION: u32 = 12;
/// Largest N whose field Q(ζ_{8N}) the library caches.
pub const MAX_N: u32 = 128;
/// Generic-q Verma records cover 0 ≤ λ ≤ this.
const GENERIC_VERMA_TWICE_MAX: i64 = 6;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Torus,
    Qserre,
    Spectra,
    Gauss,
    Braid,
    Eigs,
    Trace,
    Verma,
    Centralizer,
    Image,
}

impl Check {
    pub const ALL: [Check; 10] = [
        Check::Torus,
        Check::Qserre,
        Check::Spectra,
        Check::Gauss,
        Check::Braid,
        Check::Eigs,
        Check::Trace,
        Check::Verma,
        Check::Centralizer,
        Check::Image,
    ];

    /// Checks whose tables `report` writes.
    pub const TABLES: [Check; 4] = [Check::Eigs, Check::Centralizer, Check::Image, Check::Verma];

    pub fn name(self) -> &'static str {
        match self {
            Check::Torus => "torus",
            Check::Qserre => "qserre",
            Check::Spectra => "spectra",
            Check::Gauss => "gauss",
            Check::Braid => "braid",
            Check::Eigs => "eigs",
            Check::Trace => "trace",
            Check::Verma => "verma",
            Check::Centralizer => "centralizer",
            Check::Image => "image",
        }
    }
}

impl FromStr for Check {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown check '{s}'")))
    }
}

/// Parses "all" or a comma-separated list of check names.
pub fn parse_checks(s: &str) -> Result<Vec<Check>, CliError> {
    if s.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out: Vec<Check> = s.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(CliError::Usage(format!("unknown format '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyConfig {
    #[serde(rename = "N_list")]
    pub n_list: Vec<u32>,
    pub n_max: usize,
    pub checks: Vec<Check>,
    pub budget: u64,
    pub precision: u32,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub format: Format,
    #[serde(skip)]
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_list: vec![3, 4, 5],
            n_max: 4,
            checks: Check::ALL.to_vec(),
            budget: qtorus::braid_image::DEFAULT_BUDGET,
            precision: DEFAULT_PRECISION,
            output_path: None,
            format: Format::Json,
            timings: false,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_list.is_empty() {
            return Err(CliError::Usage("N list is empty".into()));
        }
        if let Some(&n) = self.n_list.iter().find(|&&n| !(3..=MAX_N).contains(&n)) {
            return Err(CliError::Usage(format!("N = {n} outside 3..={MAX_N}")));
        }
        if self.n_max < 2 {
            return Err(CliError::Usage(format!("n-max must be ≥ 2, got {}", self.n_max)));
        }
        if self.budget < 1 {
            return Err(CliError::Usage("budget must be ≥ 1".into()));
        }
        if self.checks.is_empty() {
            return Err(CliError::Usage("no checks selected".into()));
        }
        if !(1..=15).contains(&self.precision) {
            return Err(CliError::Usage(format!("precision {} outside 1..=15 digits", self.precision)));
        }
        Ok(())
    }
}

/// Default precision from the environment, falling back to `DEFAULT_PRECISION`.
pub fn precision_from_env() -> Result<u32, CliError> {
    match std::env::var(PRECISION_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Usage(format!("{PRECISION_ENV}='{s}' is not an integer"))),
        Err(_) => Ok(DEFAULT_PRECISION),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Ambiguous,
    BudgetExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Ambiguous => "ambiguous",
            Status::BudgetExceeded => "budget_exceeded",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub check_id: String,
    /// Label of the statement being tested, or "plumbing".
    pub anchor: String,
    pub parameters: Value,
    pub status: Status,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: VerifyConfig,
    pub records: Vec<Record>,
}

impl Report {
    pub fn any_failed(&self) -> bool {
        self.records.iter().any(|r| r.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.any_failed())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(["check_id", "anchor", "parameters", "status", "wall_time", "payload"]).map_err(io)?;
        for r in &self.records {
            let mut flat = Vec::new();
            flatten("", &r.payload, &mut flat);
            let payload: Vec<String> = flat.into_iter().map(|(k, v)| format!("{k}={v}")).collect();
            w.write_record([
                r.check_id.clone(),
                r.anchor.clone(),
                r.parameters.to_string(),
                r.status.to_string(),
                r.wall_time.map(|t| format!("{t:.6}")).unwrap_or_default(),
                payload.join(";"),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.to_csv(),
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

struct Ctx<'a> {
    cfg: &'a VerifyConfig,
    records: Vec<Record>,
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn approx(x: &CycNum, precision: u32) -> Value {
    match x.embed(precision) {
        Ok(z) => json!([round(z.re, precision), round(z.im, precision)]),
        Err(e) => json!(e.to_string()),
    }
}

fn round(x: f64, digits: u32) -> f64 {
    let p = 10f64.powi(digits as i32);
    let r = (x * p).round() / p;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

impl Ctx<'_> {
    /// Runs one check body; library errors become records rather than crashes.
    fn record(
        &mut self,
        check_id: &str,
        anchor: &str,
        parameters: Value,
        body: impl FnOnce() -> qtorus::Result<(Status, Value)>,
    ) {
        let start = Instant::now();
        let (status, payload) = match body() {
            Ok(x) => x,
            Err(e @ Error::Bound(_)) => (Status::BudgetExceeded, json!({ "error": e.to_string() })),
            Err(e @ Error::Ambiguous(_)) => (Status::Ambiguous, json!({ "error": e.to_string() })),
            Err(e) => (Status::Fail, json!({ "error": e.to_string() })),
        };
        let wall_time = self.cfg.timings.then(|| start.elapsed().as_secs_f64());
        self.records.push(Record {
            check_id: check_id.into(),
            anchor: anchor.into(),
            parameters,
            status,
            payload,
            wall_time,
        });
    }

    fn grid(&self) -> Vec<(u32, usize)> {
        self.cfg.n_list.iter().flat_map(|&n| (2..=self.cfg.n_max).map(move |k| (n, k))).collect()
    }

    fn torus(&mut self) {
        for (n_cap, n) in self.grid() {
            self.record("torus-presentation", "qtorusrep", json!({ "N": n_cap, "n": n }), || {
                let rep = build_torus_rep(n_cap, n)?;
                let r = relations_report(&rep)?;
                Ok((status_of(r.all()), json!({ "dim": rep.dim, "relations": to_value(&r) })))
            });
        }
    }

    fn qserre(&mut self) {
        for (n_cap, n) in self.grid() {
            self.record("qtorusrep-a", "quantumSerre", json!({ "N": n_cap, "n": n }), || {
                let rep = build_torus_rep(n_cap, n)?;
                let mut ok = true;
                let mut per = Map::new();
                for v in Variant::ALL {
                    let bg = build_b(&rep, v)?;
                    let r = qserre_report(&bg.b, n_cap)?;
                    ok &= r.adjacent_ok && r.far_ok;
                    per.insert(v.name().into(), to_value(&r));
                }
                Ok((status_of(ok), Value::Object(per)))
            });
        }
    }

    fn spectra(&mut self) {
        for (n_cap, n) in self.grid() {
            self.record("qtorusrep-cd", "qtorusrep", json!({ "N": n_cap, "n": n }), || {
                let rep = build_torus_rep(n_cap, n)?;
                let mut ok = true;
                let mut per = Map::new();
                for v in Variant::ALL {
                    let r = spectrum_check(&build_b(&rep, v)?)?;
                    ok &= r.passed();
                    per.insert(v.name().into(), to_value(&r));
                }
                Ok((status_of(ok), Value::Object(per)))
            });
        }
    }

    fn gauss(&mut self) {
        for &n_cap in &self.cfg.n_list.clone() {
            self.record("gauss-normalization", "identifiedBnreps", json!({ "N": n_cap }), || {
                let r = gauss_identities(n_cap)?;
                Ok((status_of(r.passed()), to_value(&r)))
            });
        }
    }

    fn braid(&mut self) {
        for (n_cap, n) in self.grid() {
            self.record("identifiedBnreps", "identifiedBnreps", json!({ "N": n_cap, "n": n }), || {
                let rep = build_torus_rep(n_cap, n)?;
                let br = build_braid(&rep)?;
                let r = braid_report(&br)?;
                Ok((status_of(r.passed()), json!({ "parity": br.parity, "alpha": br.alpha, "report": to_value(&r) })))
            });
        }
    }

    fn eigs(&mut self) {
        let precision = self.cfg.precision;
        for &n_cap in &self.cfg.n_list.clone() {
            let (id, anchor) = if n_cap % 2 == 1 { ("Noddeigs", "Noddeigs") } else { ("Neveneigs", "Neveneigs") };
            self.record(id, anchor, json!({ "N": n_cap, "n": 2 }), || {
                let rep = build_torus_rep(n_cap, 2)?;
                let t = eigenvalue_check(&build_braid(&rep)?)?;
                let mut v = to_value(&t);
                if let Value::Object(m) = &mut v {
                    let approx_ratio = t.rows.first().map(|r| approx(&r.ratio, precision));
                    m.insert("ratio_approx".into(), json!(approx_ratio));
                }
                Ok((status_of(t.ratio_constant && t.ratio_norm_one), v))
            });
        }
    }

    fn trace(&mut self) {
        for &n_cap in self.cfg.n_list.clone().iter().filter(|&&n| n % 2 == 0) {
            self.record("traceformula", "traceformula", json!({ "N": n_cap }), || {
                let r = trace_formula_check(n_cap)?;
                Ok((status_of(r.holds), to_value(&r)))
            });
        }
    }

    fn verma(&mut self) {
        let precision = self.cfg.precision;
        for t in 0..=GENERIC_VERMA_TWICE_MAX {
            let lambda = HalfInt::halves(t);
            self.record("sothreeVerma", "sothreeVerma", json!({ "lambda": lambda, "q": "generic" }), || {
                let m = simple_quotient_generic(lambda)?;
                let Verma::Generic(d) = build_verma(lambda, default_depth(lambda), QSpec::Generic)? else {
                    unreachable!("generic spec")
                };
                let spectrum = b2_spectrum(&m)?;
                let payload = json!({
                    "dim": m.dim,
                    "b2_multiplicities": spectrum,
                    "form_invariant": form_invariant(&m)?,
                    "qserre": qserre_holds(&m)?,
                    "verma_qserre_truncated": verma_qserre_truncated(&d)?,
                    "norms": d.norms.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                });
                let ok = m.dim as i64 == t + 1
                    && spectrum.iter().all(|&k| k == 1)
                    && payload["form_invariant"] == json!(true)
                    && payload["qserre"] == json!(true)
                    && payload["verma_qserre_truncated"] == json!(true);
                Ok((status_of(ok), payload))
            });
        }
        for &ell in &self.cfg.n_list.clone() {
            for t in 0..=ell as i64 {
                let lambda = HalfInt::halves(t);
                self.record("sothreeunity", "sothreeunity", json!({ "lambda": lambda, "ell": ell }), || {
                    let u = unitarity_check(lambda, ell)?;
                    let m = simple_quotient_at(lambda, ell)?;
                    let spectrum = b2_spectrum(&m)?;
                    let fi = form_invariant(&m)?;
                    let qs = qserre_holds(&m)?;
                    let ok = u.passed() && fi && qs && spectrum.iter().all(|&k| k == 1);
                    let norms_approx: Vec<Value> = u.norms.iter().map(|x| approx(x, precision)).collect();
                    Ok((
                        status_of(ok),
                        json!({
                            "unitarity": to_value(&u),
                            "norms_approx": norms_approx,
                            "b2_multiplicities": spectrum,
                            "form_invariant": fi,
                            "qserre": qs,
                        }),
                    ))
                });
            }
        }
    }

    fn centralizer(&mut self) {
        let n_max = self.cfg.n_max;
        for &n_cap in &self.cfg.n_list.clone() {
            self.record("fusion-with-S", "fusion2", json!({ "N": n_cap }), || {
                let t = fusion_with_s(n_cap)?;
                let r = fusion_report(&t)?;
                Ok((status_of(r.passed()), json!({ "table": to_value(&t), "report": to_value(&r) })))
            });
            let bratteli = bratteli_dims(n_cap, n_max);
            for n in 2..=n_max {
                let bratteli = bratteli.clone();
                self.record("centralizercor", "centralizercor", json!({ "N": n_cap, "n": n }), || {
                    let d = bratteli?;
                    let c = centralizer_dim(n_cap, n)?;
                    let fusion = d[n - 1];
                    Ok((
                        status_of(fusion == c.dim as u128),
                        json!({ "bratteli": fusion.to_string(), "torus": to_value(&c) }),
                    ))
                });
            }
        }
    }

    fn image(&mut self) {
        let budget = self.cfg.budget;
        for (n_cap, n) in self.grid() {
            self.record("finite-image", "identifiedBnreps", json!({ "N": n_cap, "n": n, "mode": Mode::Projective }), || {
                let r = image_order(n_cap, n, Mode::Projective, budget)?;
                let status = if r.terminated { Status::Pass } else { Status::BudgetExceeded };
                Ok((status, json!({ "max_dim": MAX_DIM, "closure": to_value(&r) })))
            });
        }
    }
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<Report, CliError> {
    cfg.validate()?;
    let mut ctx = Ctx { cfg, records: Vec::new() };
    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    for c in checks {
        match c {
            Check::Torus => ctx.torus(),
            Check::Qserre => ctx.qserre(),
            Check::Spectra => ctx.spectra(),
            Check::Gauss => ctx.gauss(),
            Check::Braid => ctx.braid(),
            Check::Eigs => ctx.eigs(),
            Check::Trace => ctx.trace(),
            Check::Verma => ctx.verma(),
            Check::Centralizer => ctx.centralizer(),
            Check::Image => ctx.image(),
        }
    }
    Ok(Report { config: cfg.clone(), records: ctx.records })
}

pub fn write_output(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

/// Runs the table-producing checks among those selected and writes one file per
/// table kind into `output_path` (a directory), or everything to stdout.
pub fn run_report(cfg: &VerifyConfig) -> Result<Report, CliError> {
    let selected: Vec<Check> = Check::TABLES.into_iter().filter(|c| cfg.checks.contains(c)).collect();
    if selected.is_empty() {
        return Err(CliError::Usage("report needs at least one of eigs, centralizer, image, verma".into()));
    }
    let ext = match cfg.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let mut all = Vec::new();
    if let Some(dir) = &cfg.output_path {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    for c in selected {
        let sub = VerifyConfig { checks: vec![c], ..cfg.clone() };
        let rep = run_verify(&sub)?;
        if let Some(dir) = &cfg.output_path {
            write_output(&rep.render(cfg.format)?, Some(&dir.join(format!("{}.{ext}", c.name()))))?;
        }
        all.extend(rep.records);
    }
    let report = Report { config: cfg.clone(), records: all };
    if cfg.output_path.is_none() {
        write_output(&report.render(cfg.format)?, None)?;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_parsing() {
        assert_eq!(parse_checks("all").unwrap().len(), 10);
        assert_eq!(parse_checks("braid,qserre,braid").unwrap(), vec![Check::Qserre, Check::Braid]);
        assert!(parse_checks("nope").is_err());
    }

    #[test]
    fn empty_n_list_is_usage_error() {
        let cfg = VerifyConfig { n_list: vec![], ..Default::default() };
        assert!(matches!(run_verify(&cfg), Err(CliError::Usage(_))));
        let cfg = VerifyConfig { n_max: 1, ..Default::default() };
        assert!(matches!(run_verify(&cfg), Err(CliError::Usage(_))));
    }

    #[test]
    fn small_suite() {
        let cfg = VerifyConfig { n_list: vec![3], n_max: 3, checks: vec![Check::Qserre, Check::Braid], ..Default::default() };
        let r = run_verify(&cfg).unwrap();
        assert_eq!(r.records.len(), 4);
        assert!(r.records.iter().all(|x| x.status == Status::Pass));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn trace_record() {
        let cfg = VerifyConfig { n_list: vec![4], checks: vec![Check::Trace], ..Default::default() };
        let r = run_verify(&cfg).unwrap();
        assert_eq!(r.records.len(), 1);
        assert_eq!(r.records[0].status, Status::Pass);
        assert_eq!(r.records[0].payload["weighted_sum"], json!(4));
    }

    #[test]
    fn csv_has_one_row_per_record() {
        let cfg = VerifyConfig { n_list: vec![4, 6], checks: vec![Check::Trace, Check::Gauss], ..Default::default() };
        let r = run_verify(&cfg).unwrap();
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 1 + r.records.len());
        assert!(csv.contains("weighted_sum=4"));
    }
}
