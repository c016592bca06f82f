//! The independence criterion: disjoint pole disks, nonzero residues modulo
//! `p^2`, regular singularity and the exponent test, assembled into a
//! deterministic JSON report. Also the quotient-transfer rule.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::diffop::{builtin_operator, indicial_data_mod, indicial_poly, is_exponent, DifferentialOperator, OperatorJson};
use crate::error::{Error, Result};
use crate::modular::Modulus;
use crate::newton::{root_profile, residue_of_series_logderiv, DiskId, ResidueCertificate, DWORK_SLACK};
use crate::ratfun::{pade_reconstruct, series_matches_ratfun_mod, ModRationalFunction, RatFunJson};
use crate::series::{dwork_check, generate, load_series_file, TruncatedSeries};
use crate::valuation::Prime;

pub const SCHEMA: &str = "criterion/1";
pub const TRANSFER_SCHEMA: &str = "criterion-transfer/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const MOM_SURROGATE: &str = "indicial polynomial at 0 equals X^n";

fn default_precision() -> u32 {
    2
}

fn default_degree() -> usize {
    200
}

fn default_depth() -> u32 {
    2
}

/// Operator given by builtin id or inline coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Id(String),
    Inline(OperatorJson),
}

/// One `[[series]]` table of the TOML config.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesEntry {
    /// Builtin generator: `h`, `f`, `apery`, `bessel`.
    #[serde(default)]
    pub id: Option<String>,
    /// JSON coefficient file, relative to the config file.
    #[serde(default)]
    pub coeff_file: Option<PathBuf>,
    #[serde(default)]
    pub name: Option<String>,
    pub operator: OperatorSpec,
    pub disk: u64,
    /// Representative of the disk center used for indicial data; defaults to
    /// the symmetric representative.
    #[serde(default)]
    pub alpha: Option<i64>,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default = "default_depth")]
    pub dwork_depth: u32,
}

/// How the analytic-element membership of a ratio is supported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RatioSupport {
    /// Membership is an established result supplied as an input.
    Established,
    /// Only finite-degree rational reconstruction supports it.
    Evidence,
}

/// One `[[transfer]]` table: replace series `from` by `to` using `to / from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferEntry {
    pub from: String,
    pub to: String,
    pub dnum: usize,
    pub dden: usize,
    #[serde(default = "default_degree")]
    pub degree: usize,
    #[serde(default = "default_support")]
    pub support: RatioSupport,
}

fn default_support() -> RatioSupport {
    RatioSupport::Evidence
}

/// The TOML config `{prime, precision, series = [...], transfer = [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionConfig {
    pub prime: u64,
    #[serde(default = "default_precision")]
    pub precision: u32,
    pub series: Vec<SeriesEntry>,
    #[serde(default)]
    pub transfer: Vec<TransferEntry>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl CriterionConfig {
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self> {
        let mut cfg: CriterionConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.base_dir = base_dir.to_path_buf();
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn resolve(&self) -> Result<Vec<SeriesSpec>> {
        let p = Prime::new(self.prime)?;
        if self.precision == 0 {
            return Err(Error::Config("precision must be >= 1".into()));
        }
        self.series.iter().map(|e| SeriesSpec::resolve(e, p, self.precision, &self.base_dir)).collect()
    }
}

/// A resolved series with its operator and declared disk.
#[derive(Debug, Clone)]
pub struct SeriesSpec {
    pub name: String,
    pub generator: String,
    pub series: TruncatedSeries,
    pub operator_id: String,
    pub operator: DifferentialOperator,
    pub disk: DiskId,
    pub alpha: i64,
    pub prime: Prime,
    pub degree: usize,
    pub dwork_depth: u32,
}

/// Series bound needed for the Dwork checks at `depth` and residues at `k`.
pub fn required_bound(p: Prime, k: u32, depth: u32, degree: usize) -> usize {
    degree.max(p.pow(k.max(depth)) as usize + DWORK_SLACK)
}

impl SeriesSpec {
    fn resolve(e: &SeriesEntry, p: Prime, k: u32, base: &Path) -> Result<Self> {
        let bound = required_bound(p, k, e.dwork_depth, e.degree);
        let (generator, series) = match (&e.id, &e.coeff_file) {
            (Some(id), None) => (id.clone(), generate(id, bound, p)?),
            (None, Some(file)) => {
                let s = load_series_file(&base.join(file))?;
                (format!("file:{}", file.display()), s)
            }
            _ => return Err(Error::Config("each series needs exactly one of `id` or `coeff_file`".into())),
        };
        let (operator_id, operator) = match &e.operator {
            OperatorSpec::Id(id) => (id.clone(), builtin_operator(id, p)?),
            OperatorSpec::Inline(j) => ("inline".to_string(), j.to_operator()?),
        };
        let disk = DiskId::new(e.disk, p)?;
        let alpha = e.alpha.unwrap_or_else(|| disk.symmetric(p));
        if alpha.rem_euclid(p.get() as i64) as u64 != disk.center() {
            return Err(Error::Config(format!("alpha = {alpha} does not reduce to disk center {}", disk.center())));
        }
        let name = e.name.clone().unwrap_or_else(|| generator.clone());
        Ok(SeriesSpec {
            name,
            generator,
            series,
            operator_id,
            operator,
            disk,
            alpha,
            prime: p,
            degree: e.degree,
            dwork_depth: e.dwork_depth,
        })
    }

    /// Entry for a builtin generator with a builtin operator.
    pub fn builtin(id: &str, operator: &str, disk: u64, p: Prime) -> Result<Self> {
        let entry = SeriesEntry {
            id: Some(id.to_string()),
            coeff_file: None,
            name: None,
            operator: OperatorSpec::Id(operator.to_string()),
            disk,
            alpha: None,
            degree: default_degree(),
            dwork_depth: default_depth(),
        };
        Self::resolve(&entry, p, default_precision(), Path::new("."))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Header {
    pub tool: String,
    pub version: String,
    pub prime: u64,
    pub precision: u32,
    pub modulus: u64,
    pub degrees: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilationCheck {
    pub operator: String,
    pub window: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DworkRecord {
    pub r: u32,
    pub bound: usize,
    pub holds: bool,
}

/// Mod-p certificate of where `f'/f` has poles: `f'/f ≡ f_1'/f_1 mod p`
/// through `bound`, with the disks of the roots of `f_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PoleCertificate {
    pub holds: bool,
    pub bound: usize,
    pub approximant: RatFunJson,
    pub pole_disks: Vec<u64>,
    pub extension_roots: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndicialRecord {
    pub alpha: i64,
    pub modulus: u64,
    pub s: Vec<u64>,
    /// Coefficients of `P(X)`, ascending.
    pub poly: Vec<u64>,
    pub value_at_residue: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomRecord {
    pub holds: bool,
    pub surrogate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub name: String,
    pub generator: String,
    pub operator: String,
    pub disk: u64,
    pub alpha: i64,
    pub degree: usize,
    pub operator_integral: bool,
    pub annihilation: AnnihilationCheck,
    pub dwork: Vec<DworkRecord>,
    pub pole_certificate: Option<PoleCertificate>,
    pub residue: Option<ResidueCertificate>,
    pub residue_nonzero: bool,
    pub indicial: Option<IndicialRecord>,
    pub residue_is_exponent: Option<bool>,
    pub exponent_test: bool,
    pub mom_at_zero: Option<MomRecord>,
    pub notes: Vec<String>,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjointness {
    pub matrix: Vec<Vec<bool>>,
    pub clashes: Vec<String>,
}

impl Disjointness {
    pub fn all_disjoint(&self) -> bool {
        self.matrix.iter().flatten().all(|&b| b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Independent,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub schema: String,
    pub header: Header,
    pub series: Vec<SeriesReport>,
    pub disjointness: Disjointness,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub transfers: Vec<TransferOutcome>,
}

impl CriterionReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn series_named(&self, name: &str) -> Option<&SeriesReport> {
        self.series.iter().find(|s| s.name == name)
    }
}

/// `f'/f mod p` against `f_1'/f_1`, with the disks of the roots of `f_1`.
pub fn pole_certificate(f: &TruncatedSeries, p: Prime, bound: usize) -> Result<PoleCertificate> {
    let m = Modulus::new(p, 1)?;
    let f1 = f.truncation_poly(p.get() as usize - 1)?;
    let approx = ModRationalFunction::new(f1.derivative().reduce_mod(m)?, f1.reduce_mod(m)?)?;
    let bound = bound.min(f.bound() - 1);
    let ld = f.truncate(bound + 1)?.reduce_mod(m)?.log_derivative()?;
    let holds = series_matches_ratfun_mod(&ld, &approx, bound)?;
    let prof = root_profile(&f1, p)?;
    Ok(PoleCertificate {
        holds,
        bound,
        approximant: approx.to_json(),
        pole_disks: prof.occupied(),
        extension_roots: prof.extension,
    })
}

/// Disk names declared by distinct centers, plus the mod-p pole
/// certificates: `(i, j)` is disjoint when the centers differ and neither
/// declared disk lies among the other series' certified pole disks.
pub fn check_disk_disjointness(specs: &[SeriesSpec]) -> Result<Disjointness> {
    if let Some(first) = specs.first() {
        if specs.iter().any(|s| s.prime != first.prime) {
            return Err(Error::InvalidArgument("all series must share the prime".into()));
        }
    }
    let certs: Vec<Result<PoleCertificate>> =
        specs.iter().map(|s| pole_certificate(&s.series, s.prime, s.degree.min(s.series.bound() - 1))).collect();
    disjointness_from(specs, &certs)
}

fn disjointness_from(specs: &[SeriesSpec], certs: &[Result<PoleCertificate>]) -> Result<Disjointness> {
    let n = specs.len();
    let mut matrix = vec![vec![true; n]; n];
    let mut clashes = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (&specs[i], &specs[j]);
            let mut ok = true;
            if a.disk == b.disk {
                ok = false;
                clashes.push(format!("{} and {} share disk D_{}", a.name, b.name, a.disk.center()));
            }
            for (x, y, cy) in [(a, b, &certs[j]), (b, a, &certs[i])] {
                match cy {
                    Ok(c) if c.holds => {
                        if c.pole_disks.contains(&x.disk.center()) && x.disk != y.disk {
                            ok = false;
                            clashes.push(format!("disk D_{} of {} carries a pole of {}'/{}", x.disk.center(), x.name, y.name, y.name));
                        }
                    }
                    Ok(_) => {
                        ok = false;
                        clashes.push(format!("pole certificate of {} fails modulo {}", y.name, y.prime));
                    }
                    Err(e) => {
                        ok = false;
                        clashes.push(format!("pole certificate of {} unavailable: {e}", y.name));
                    }
                }
            }
            matrix[i][j] = ok;
            matrix[j][i] = ok;
        }
    }
    clashes.dedup();
    Ok(Disjointness { matrix, clashes })
}

fn evaluate_series(spec: &SeriesSpec, k: u32, others: &[DiskId], pole: &Result<PoleCertificate>) -> SeriesReport {
    let p = spec.prime;
    let mut failures = Vec::new();
    let mut notes = Vec::new();

    let operator_integral = spec.operator.is_integral(p);
    if !operator_integral {
        failures.push("operator coefficients exceed Gauss norm 1".to_string());
    }

    let annihilation = match spec.series.truncate(spec.degree.min(spec.series.bound())).and_then(|s| spec.operator.apply(&s)) {
        Ok(a) => AnnihilationCheck { operator: spec.operator_id.clone(), window: a.window, holds: a.vanishes() },
        Err(e) => {
            failures.push(format!("operator application failed: {e}"));
            AnnihilationCheck { operator: spec.operator_id.clone(), window: 0, holds: false }
        }
    };
    if !annihilation.holds {
        failures.push(format!("operator {} does not annihilate {}", spec.operator_id, spec.name));
    }

    let mut dwork = Vec::new();
    for r in 1..=spec.dwork_depth {
        let bound = p.pow(r) as usize + DWORK_SLACK;
        let holds = bound <= spec.series.bound() && dwork_check(&spec.series, p, r, bound).unwrap_or(false);
        if !holds {
            failures.push(format!("Dwork congruence fails at r = {r}"));
        }
        dwork.push(DworkRecord { r, bound, holds });
    }

    match pole {
        Err(e) => notes.push(format!("pole certificate unavailable: {e}")),
        Ok(c) if c.extension_roots > 0 => notes.push(format!(
            "{} pole(s) of {}'/{} reduce outside F_{p}; those disks are unsupported",
            c.extension_roots, spec.name, spec.name
        )),
        Ok(_) => {}
    }

    let residue = match residue_of_series_logderiv(&spec.series, &spec.name, p, k, spec.disk) {
        Ok(c) => Some(c),
        Err(e) => {
            failures.push(format!("residue: {e}"));
            None
        }
    };
    let residue_nonzero = residue.as_ref().is_some_and(|c| c.value != 0);
    if residue.is_some() && !residue_nonzero {
        failures.push(format!("residue vanishes modulo {}^{k}", p));
    }

    let (indicial, residue_is_exponent) = match indicial_data_mod(&spec.operator, spec.alpha, p, k) {
        Ok(data) => {
            let poly = indicial_poly(&data.s, spec.operator.order(), data.modulus).expect("order matches");
            let value = residue.as_ref().map(|c| c.value as i64);
            let at = value.map(|v| poly.eval(v));
            let is_exp = value.map(|v| is_exponent(&poly, v));
            let mut coeffs = poly.poly.coeffs().to_vec();
            coeffs.resize(spec.operator.order() + 1, 0);
            (
                Some(IndicialRecord { alpha: spec.alpha, modulus: data.modulus.value(), s: data.s, poly: coeffs, value_at_residue: at }),
                is_exp,
            )
        }
        Err(e) => {
            failures.push(format!("indicial data at {}: {e}", spec.alpha));
            (None, None)
        }
    };
    let exponent_test = residue_is_exponent == Some(false);
    if residue_is_exponent == Some(true) {
        failures.push("residue is an exponent of the reduced operator".to_string());
    }

    let mom_at_zero = match spec.operator.mom_at_zero() {
        Ok(h) => Some(MomRecord { holds: h, surrogate: MOM_SURROGATE.to_string() }),
        Err(e) => {
            notes.push(format!("MOM surrogate not evaluated: {e}"));
            None
        }
    };

    for d in others {
        if *d == spec.disk {
            continue;
        }
        let beta = d.symmetric(p);
        if indicial_data_mod(&spec.operator, beta, p, k).is_err() {
            notes.push(format!("operator {} is not certified regular singular at {beta} (informational)", spec.operator_id));
        }
    }

    let passed = failures.is_empty();
    SeriesReport {
        name: spec.name.clone(),
        generator: spec.generator.clone(),
        operator: spec.operator_id.clone(),
        disk: spec.disk.center(),
        alpha: spec.alpha,
        degree: spec.degree,
        operator_integral,
        annihilation,
        dwork,
        pole_certificate: pole.as_ref().ok().cloned(),
        residue,
        residue_nonzero,
        indicial,
        residue_is_exponent,
        exponent_test,
        mom_at_zero,
        notes,
        failures,
        passed,
    }
}

/// Runs the criterion at precision `k` (residues modulo `p^k`, operators
/// modulo `M^k`). The verdict is `independent` only when every series passes
/// and all disks are disjoint; otherwise `inconclusive`.
pub fn run_criterion(specs: &[SeriesSpec], k: u32) -> Result<CriterionReport> {
    let first = specs.first().ok_or_else(|| Error::InvalidArgument("no series given".into()))?;
    let p = first.prime;
    let certs: Vec<Result<PoleCertificate>> =
        specs.iter().map(|s| pole_certificate(&s.series, p, s.degree.min(s.series.bound() - 1))).collect();
    let disjointness = disjointness_from(specs, &certs)?;
    let disks: Vec<DiskId> = specs.iter().map(|s| s.disk).collect();
    let series: Vec<SeriesReport> =
        specs.iter().zip(&certs).map(|(s, c)| evaluate_series(s, k, &disks, c)).collect();
    let mut reasons = Vec::new();
    for s in &series {
        for f in &s.failures {
            reasons.push(format!("{}: {f}", s.name));
        }
    }
    reasons.extend(disjointness.clashes.iter().cloned());
    let verdict = if reasons.is_empty() { Verdict::Independent } else { Verdict::Inconclusive };
    Ok(CriterionReport {
        schema: SCHEMA.to_string(),
        header: Header {
            tool: "padic-indep".to_string(),
            version: VERSION.to_string(),
            prime: p.get(),
            precision: k,
            modulus: Modulus::new(p, k)?.value(),
            degrees: specs.iter().map(|s| s.degree).collect(),
        },
        series,
        disjointness,
        verdict,
        reasons,
        transfers: Vec::new(),
    })
}

/// Runs a config, including its transfers.
pub fn run_config(cfg: &CriterionConfig) -> Result<CriterionReport> {
    let specs = cfg.resolve()?;
    let mut report = run_criterion(&specs, cfg.precision)?;
    let p = Prime::new(cfg.prime)?;
    for t in &cfg.transfer {
        let outcome = (|| {
            let base = specs
                .iter()
                .find(|s| s.name == t.from)
                .ok_or_else(|| Error::Config(format!("transfer source {:?} is not a configured series", t.from)))?;
            let target = generate(&t.to, t.degree, p)?;
            let g = base.series.truncate(t.degree.min(base.series.bound()))?;
            let ev = ratio_evidence(&target, &g, p, cfg.precision, t.dnum, t.dden)?;
            quotient_transfer(&report, &t.from, &t.to, &ev, t.support)
        })();
        report.transfers.push(match outcome {
            Ok(o) => o,
            Err(e) => TransferOutcome::failed(&t.from, &t.to, e.to_string()),
        });
    }
    Ok(report)
}

/// Rational reconstruction of `f / g` modulo `p^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioEvidence {
    pub modulus: u64,
    pub bound: usize,
    pub dnum: usize,
    pub dden: usize,
    pub approximant: Option<RatFunJson>,
    pub matches: bool,
}

pub fn ratio_evidence(f: &TruncatedSeries, g: &TruncatedSeries, p: Prime, k: u32, dnum: usize, dden: usize) -> Result<RatioEvidence> {
    let m = Modulus::new(p, k)?;
    let bound = f.bound().min(g.bound());
    let fm = f.truncate(bound)?.reduce_mod(m)?;
    let gm = g.truncate(bound)?.reduce_mod(m)?;
    let ratio = fm.mul(&gm.invert()?)?;
    let rec = pade_reconstruct(&ratio, dnum, dden);
    let matches = match &rec {
        Some(r) => series_matches_ratfun_mod(&ratio, r, bound)?,
        None => false,
    };
    Ok(RatioEvidence { modulus: m.value(), bound, dnum, dden, approximant: rec.map(|r| r.to_json()), matches })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferOutcome {
    pub schema: String,
    pub from: String,
    pub to: String,
    pub status: String,
    pub verdict: Option<Verdict>,
    /// `evidence` or `established-ratio`.
    pub grade: Option<String>,
    pub support: Option<RatioSupport>,
    pub ratio: Option<RatioEvidence>,
    pub series: Vec<String>,
    pub reason: Option<String>,
}

impl TransferOutcome {
    fn failed(from: &str, to: &str, reason: String) -> Self {
        TransferOutcome {
            schema: TRANSFER_SCHEMA.to_string(),
            from: from.to_string(),
            to: to.to_string(),
            status: "error".to_string(),
            verdict: None,
            grade: None,
            support: None,
            ratio: None,
            series: Vec::new(),
            reason: Some(reason),
        }
    }
}

/// From an independent report containing `from`, derives independence with
/// `from` replaced by `to`, contingent on `to / from` being an analytic
/// element. With `Evidence` support the result is evidence-grade.
pub fn quotient_transfer(
    base: &CriterionReport,
    from: &str,
    to: &str,
    ratio: &RatioEvidence,
    support: RatioSupport,
) -> Result<TransferOutcome> {
    if base.verdict != Verdict::Independent {
        return Err(Error::Evidence("base report is not independent".into()));
    }
    if base.series_named(from).is_none() {
        return Err(Error::Evidence(format!("base report has no series {from:?}")));
    }
    if !ratio.matches {
        return Err(Error::Evidence(format!("no rational match for {to}/{from} modulo {}", ratio.modulus)));
    }
    let series = base.series.iter().map(|s| if s.name == from { to.to_string() } else { s.name.clone() }).collect();
    let grade = match support {
        RatioSupport::Evidence => "evidence",
        RatioSupport::Established => "established-ratio",
    };
    Ok(TransferOutcome {
        schema: TRANSFER_SCHEMA.to_string(),
        from: from.to_string(),
        to: to.to_string(),
        status: "derived".to_string(),
        verdict: Some(Verdict::Independent),
        grade: Some(grade.to_string()),
        support: Some(support),
        ratio: Some(ratio.clone()),
        series,
        reason: None,
    })
}

/// Checks a JSON value against the `criterion/1` layout and its internal
/// consistency rules.
pub fn validate_report(v: &Value) -> Result<()> {
    let bad = |m: &str| Err(Error::Parse(format!("report: {m}")));
    let obj = match v.as_object() {
        Some(o) => o,
        None => return bad("not an object"),
    };
    if obj.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
        return bad("schema must be \"criterion/1\"");
    }
    let header = match obj.get("header").and_then(Value::as_object) {
        Some(h) => h,
        None => return bad("missing header"),
    };
    for key in ["tool", "version"] {
        if !header.get(key).is_some_and(Value::is_string) {
            return bad(&format!("header.{key} must be a string"));
        }
    }
    for key in ["prime", "precision", "modulus"] {
        if !header.get(key).is_some_and(Value::is_u64) {
            return bad(&format!("header.{key} must be an unsigned integer"));
        }
    }
    let series = match obj.get("series").and_then(Value::as_array) {
        Some(s) if !s.is_empty() => s,
        _ => return bad("series must be a nonempty array"),
    };
    let mut all_passed = true;
    for s in series {
        for key in ["name", "generator", "operator"] {
            if !s.get(key).is_some_and(Value::is_string) {
                return bad(&format!("series.{key} must be a string"));
            }
        }
        for key in ["residue_nonzero", "exponent_test", "passed"] {
            if !s.get(key).is_some_and(Value::is_boolean) {
                return bad(&format!("series.{key} must be a boolean"));
            }
        }
        if !s.get("disk").is_some_and(Value::is_u64) {
            return bad("series.disk must be an unsigned integer");
        }
        if let Some(r) = s.get("residue").filter(|r| !r.is_null()) {
            if !r.get("value").is_some_and(Value::is_u64) || !r.get("factors").is_some_and(Value::is_array) {
                return bad("series.residue needs value and factors");
            }
        }
        all_passed &= s["passed"].as_bool() == Some(true);
    }
    let matrix = match obj.get("disjointness").and_then(|d| d.get("matrix")).and_then(Value::as_array) {
        Some(m) => m,
        None => return bad("missing disjointness.matrix"),
    };
    if matrix.len() != series.len()
        || matrix.iter().any(|row| row.as_array().is_none_or(|r| r.len() != series.len() || r.iter().any(|b| !b.is_boolean())))
    {
        return bad("disjointness.matrix must be a square boolean matrix");
    }
    let disjoint = matrix.iter().flat_map(|r| r.as_array().expect("checked")).all(|b| b.as_bool() == Some(true));
    match obj.get("verdict").and_then(Value::as_str) {
        Some("independent") => {
            if !(all_passed && disjoint) {
                return bad("independent verdict with failing checks");
            }
        }
        Some("inconclusive") => {}
        _ => return bad("verdict must be \"independent\" or \"inconclusive\""),
    }
    if !obj.get("reasons").is_some_and(Value::is_array) {
        return bad("reasons must be an array");
    }
    Ok(())
}

pub fn validate_report_str(text: &str) -> Result<()> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    validate_report(&v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn spec(id: &str, op: &str, disk: u64) -> SeriesSpec {
        SeriesSpec::builtin(id, op, disk, p3()).unwrap()
    }

    #[test]
    fn h_and_apery() {
        let specs = [spec("h", "L", 1), spec("apery", "H", 2)];
        let r = run_criterion(&specs, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Independent, "{:?}", r.reasons);
        let h = r.series_named("h").unwrap();
        assert_eq!(h.residue.as_ref().unwrap().value, 4);
        assert_eq!(h.indicial.as_ref().unwrap().value_at_residue, Some(6));
        let a = r.series_named("apery").unwrap();
        assert_eq!(a.residue.as_ref().unwrap().value, 8);
        assert_eq!(a.indicial.as_ref().unwrap().value_at_residue, Some(6));
        assert_eq!(a.indicial.as_ref().unwrap().poly, vec![0, 2, 0, 1]);
        let text = r.to_json();
        validate_report_str(&text).unwrap();
        assert_eq!(run_criterion(&specs, 2).unwrap().to_json(), text);
    }

    #[test]
    fn shared_disk_is_inconclusive() {
        let specs = [spec("h", "L", 1), spec("f", "D", 1)];
        let d = check_disk_disjointness(&specs).unwrap();
        assert!(!d.matrix[0][1]);
        let r = run_criterion(&specs, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        validate_report_str(&r.to_json()).unwrap();
    }

    #[test]
    fn single_and_subset() {
        let r = run_criterion(&[spec("h", "L", 1)], 2).unwrap();
        assert_eq!(r.verdict, Verdict::Independent);
        assert_eq!(r.disjointness.matrix, vec![vec![true]]);
        let r = run_criterion(&[spec("apery", "H", 2)], 2).unwrap();
        assert_eq!(r.verdict, Verdict::Independent);
    }

    #[test]
    fn transfer() {
        let specs = [spec("h", "L", 1), spec("apery", "H", 2)];
        let base = run_criterion(&specs, 2).unwrap();
        let ev = ratio_evidence(&crate::series::gen_f(200), &specs[0].series.truncate(200).unwrap(), p3(), 2, 8, 8).unwrap();
        assert!(ev.matches);
        let out = quotient_transfer(&base, "h", "f", &ev, RatioSupport::Evidence).unwrap();
        assert_eq!(out.verdict, Some(Verdict::Independent));
        assert_eq!(out.grade.as_deref(), Some("evidence"));
        assert_eq!(out.series, vec!["f".to_string(), "apery".to_string()]);

        let failed = RatioEvidence { matches: false, approximant: None, ..ev.clone() };
        assert!(quotient_transfer(&base, "h", "f", &failed, RatioSupport::Evidence).is_err());
        let bad = run_criterion(&[spec("h", "L", 1), spec("f", "D", 1)], 2).unwrap();
        assert!(quotient_transfer(&bad, "h", "f", &ev, RatioSupport::Evidence).is_err());
    }

    #[test]
    fn config_parsing() {
        let text = r#"
prime = 3
precision = 2

[[series]]
id = "h"
operator = "L"
disk = 1
degree = 120

[[series]]
id = "apery"
operator = "H"
disk = 2
degree = 120
"#;
        let cfg = CriterionConfig::from_toml_str(text, Path::new(".")).unwrap();
        let specs = cfg.resolve().unwrap();
        assert_eq!(specs[1].alpha, -1);
        let r = run_config(&cfg).unwrap();
        assert_eq!(r.verdict, Verdict::Independent);
        assert!(CriterionConfig::from_toml_str("prime = 3\nbogus = 1\nseries = []", Path::new(".")).is_err());
    }

    #[test]
    fn validator_rejects() {
        assert!(validate_report_str("{}").is_err());
        let r = run_criterion(&[spec("h", "L", 1)], 2).unwrap();
        let mut v: Value = serde_json::from_str(&r.to_json()).unwrap();
        v["verdict"] = Value::String("dependent".into());
        assert!(validate_report(&v).is_err());
        v["verdict"] = Value::String("independent".into());
        v["series"][0]["passed"] = Value::Bool(false);
        assert!(validate_report(&v).is_err());
    }
}
