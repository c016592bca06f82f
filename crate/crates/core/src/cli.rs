//! Command-line front end. Every verb prints a summary and can write a JSON
//! document (`--json PATH`) that passes [`crate::report::validate_document`].
//!
//! Exit codes: 0 when the check is verified or the verdict is independent,
//! 1 when it fails or is inconclusive, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bessel::{
    bessel_power_lacunarity, binomial_term_domination, exp_pth_power_convergence, hankel_nonrationality_evidence,
    reduced_bessel_power,
};
use crate::criterion::{run_config, CriterionConfig, Header, Verdict, VERSION};
use crate::diffop::{builtin_operator, indicial_data_mod, indicial_poly, is_exponent, DifferentialOperator, OperatorJson};
use crate::error::Error;
use crate::modular::Modulus;
use crate::newton::{residue_of_series_logderiv, DiskId, DWORK_SLACK};
use crate::ratfun::{pade_reconstruct, series_matches_ratfun_mod};
use crate::report::{validate_document_str, CheckReport};
use crate::serial::format_all;
use crate::series::{dwork_mismatch, generate, load_series_file, TruncatedSeries};
use crate::valuation::{bessel_coeff_pi_valuation, check_binomial_inequality, digit_sum, Prime};

pub const GENERATORS: [&str; 5] = ["h", "f", "apery", "bessel", "exp-p-power"];
pub const DEFAULT_DEGREE: usize = 200;

#[derive(Debug, Parser)]
#[command(name = "padic-indep", version, about = "Certified p-adic independence checks")]
struct Cli {
    /// Write the JSON report to PATH.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Suppress the human-readable summary.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Bessel coefficient valuations and the binomial inequality.
    VerifyValuations(ValuationArgs),
    /// Dwork congruences for r = 1..=R.
    Dwork(DworkArgs),
    /// Residue of f'/f on a disk modulo p^k.
    Residue(ResidueArgs),
    /// Indicial polynomial of an operator at a disk modulo M^k.
    Indicial(IndicialArgs),
    /// Run a TOML criterion config.
    Criterion(CriterionArgs),
    /// Lacunarity of J_0(π z)^N and related finite checks.
    Bessel(BesselArgs),
    /// Rational reconstruction of a series modulo p^k (evidence only).
    Reconstruct(ReconstructArgs),
}

#[derive(Debug, Args)]
struct SeriesArgs {
    /// Builtin generator: h, f, apery, bessel, exp-p-power.
    #[arg(long, conflicts_with = "coeff_file")]
    series: Option<String>,
    /// JSON coefficient file instead of a builtin generator.
    #[arg(long, value_name = "PATH")]
    coeff_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValuationArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Largest n checked.
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    degree: usize,
}

#[derive(Debug, Args)]
struct DworkArgs {
    #[command(flatten)]
    src: SeriesArgs,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Degree through which the congruences are checked.
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    degree: usize,
}

#[derive(Debug, Args)]
struct ResidueArgs {
    #[command(flatten)]
    src: SeriesArgs,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Disk center in 1..p-1.
    #[arg(long)]
    disk: u64,
    /// Series bound; raised to p^k + 20 when smaller.
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Debug, Args)]
struct IndicialArgs {
    /// Builtin operator: L, D, H, bessel.
    #[arg(long, conflicts_with = "operator_file")]
    operator: Option<String>,
    /// Operator JSON `{order, coeffs, form}`.
    #[arg(long, value_name = "PATH")]
    operator_file: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Disk center; alpha defaults to its symmetric representative.
    #[arg(long)]
    disk: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<i64>,
    /// Evaluate P at this value and test whether it is an exponent.
    #[arg(long, allow_hyphen_values = true)]
    value: Option<i64>,
}

#[derive(Debug, Args)]
struct CriterionArgs {
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
}

#[derive(Debug, Args)]
struct BesselArgs {
    #[arg(long, default_value_t = 3)]
    p: u64,
    /// Single power N; all of 1..=12 when omitted.
    #[arg(long)]
    power: Option<u64>,
    #[arg(long, default_value_t = 58)]
    degree: usize,
    /// Largest denominator degree tried for the reduced series.
    #[arg(long, default_value_t = 8)]
    dmax: usize,
    #[arg(long, default_value_t = 120)]
    window: usize,
}

#[derive(Debug, Args)]
struct ReconstructArgs {
    #[command(flatten)]
    src: SeriesArgs,
    /// Reconstruct series / divide instead of the series itself.
    #[arg(long)]
    divide: Option<String>,
    #[arg(long, default_value_t = 3)]
    p: u64,
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long)]
    dnum: usize,
    #[arg(long)]
    dden: usize,
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    degree: usize,
}

/// A flag value rejected after parsing.
#[derive(Debug)]
struct Usage {
    flag: &'static str,
    message: String,
}

fn usage(flag: &'static str, message: impl Into<String>) -> Usage {
    Usage { flag, message: message.into() }
}

enum Outcome {
    Check(Box<CheckReport>),
    Criterion(Box<crate::criterion::CriterionReport>),
}

fn prime(p: u64) -> Result<Prime, Usage> {
    Prime::new(p).map_err(|e| usage("--p", e.to_string()))
}

fn precision(flag: &'static str, k: u32) -> Result<u32, Usage> {
    if k == 0 || k > 12 {
        return Err(usage(flag, "must be between 1 and 12"));
    }
    Ok(k)
}

fn header(p: Prime, k: u32, degrees: Vec<usize>) -> Header {
    Header {
        tool: "padic-indep".to_string(),
        version: VERSION.to_string(),
        prime: p.get(),
        precision: k,
        modulus: p.pow(k),
        degrees,
    }
}

fn load(src: &SeriesArgs, bound: usize, p: Prime) -> Result<(String, TruncatedSeries), Usage> {
    match (&src.series, &src.coeff_file) {
        (Some(id), None) => {
            if !GENERATORS.contains(&id.as_str()) {
                return Err(usage("--series", format!("unknown generator {id:?}; expected one of {}", GENERATORS.join(", "))));
            }
            let s = generate(id, bound, p).map_err(|e| usage("--series", e.to_string()))?;
            Ok((id.clone(), s))
        }
        (None, Some(path)) => {
            let s = load_series_file(path).map_err(|e| usage("--coeff-file", e.to_string()))?;
            if s.bound() < bound {
                return Err(usage("--coeff-file", format!("file has bound {}, need {bound}", s.bound())));
            }
            Ok((path.display().to_string(), s.truncate(bound).expect("checked bound")))
        }
        _ => Err(usage("--series", "give --series or --coeff-file")),
    }
}

/// Runs the CLI on `args` (program name first), writing to the given streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let outcome = match dispatch(&cli.verb) {
        Ok(o) => o,
        Err(u) => {
            let _ = writeln!(err, "error: invalid value for {}: {}", u.flag, u.message);
            return 2;
        }
    };
    let (text, summary, ok) = match &outcome {
        Outcome::Check(r) => (r.to_json(), r.summary.clone(), r.passed()),
        Outcome::Criterion(r) => (r.to_json(), criterion_summary(r), r.verdict == Verdict::Independent),
    };
    if !cli.quiet {
        for line in &summary {
            let _ = writeln!(out, "{line}");
        }
    }
    if let Some(path) = &cli.json {
        if let Err(e) = validate_document_str(&text) {
            let _ = writeln!(err, "error: report failed validation: {e}");
            return 1;
        }
        if let Err(e) = std::fs::write(path, &text) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if ok {
        0
    } else {
        1
    }
}

/// Runs the CLI against the process streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(verb: &Verb) -> Result<Outcome, Usage> {
    match verb {
        Verb::VerifyValuations(a) => verify_valuations(a),
        Verb::Dwork(a) => dwork(a),
        Verb::Residue(a) => residue(a),
        Verb::Indicial(a) => indicial(a),
        Verb::Criterion(a) => criterion(a),
        Verb::Bessel(a) => bessel(a),
        Verb::Reconstruct(a) => reconstruct(a),
    }
    .map(|o| match o {
        Ok(r) => Outcome::Check(Box::new(r)),
        Err(r) => Outcome::Criterion(r),
    })
}

type VerbResult = Result<Result<CheckReport, Box<crate::criterion::CriterionReport>>, Usage>;

fn verify_valuations(a: &ValuationArgs) -> VerbResult {
    let p = prime(a.p)?;
    let n = a.degree as u64;
    let mut bessel_failures = Vec::new();
    for i in 0..=n {
        match bessel_coeff_pi_valuation(i, p) {
            Ok(v) if v.0 == 2 * digit_sum(i, p) as i64 => {}
            _ => bessel_failures.push(i),
        }
    }
    let mut binomial_failures = Vec::new();
    let mut pairs = 0u64;
    let mut domination_disagrees = Vec::new();
    for big in 2..=n {
        let mut all = true;
        for s in 2..=big {
            pairs += 1;
            if !check_binomial_inequality(big, s, p).unwrap_or(false) {
                binomial_failures.push([big, s]);
                all = false;
            }
        }
        if binomial_term_domination(big, p) != all {
            domination_disagrees.push(big);
        }
    }
    let passed = bessel_failures.is_empty() && binomial_failures.is_empty() && domination_disagrees.is_empty();
    let mut r = CheckReport::new("verify-valuations", header(p, 1, vec![a.degree]), passed);
    r.summary = vec![
        format!("bessel coefficient valuations = 2 s_p(n) for n <= {n}: {} failures", bessel_failures.len()),
        format!("binomial inequality over {pairs} pairs (N, s), 1 < s <= N <= {n}: {} failures", binomial_failures.len()),
        format!("Kummer-carry route agrees with factorial route: {}", domination_disagrees.is_empty()),
        status_line(passed),
    ];
    r.result = json!({
        "bessel_checked": n + 1,
        "bessel_failures": bessel_failures,
        "binomial_pairs": pairs,
        "binomial_failures": binomial_failures,
        "route_disagreements": domination_disagrees,
    });
    r.certificate = json!({
        "prime": p.get(),
        "nmax": n,
        "bessel_rule": "v_pi(pi^(2n) / (4^n n!^2)) = 2n - 2(p-1) v_p(n!) = 2 s_p(n)",
        "binomial_rule": "(p-1) v_p(C(N,s)) + 2s > (p-1) v_p(N) + 2",
    });
    Ok(Ok(r))
}

fn dwork(a: &DworkArgs) -> VerbResult {
    let p = prime(a.p)?;
    if a.r == 0 {
        return Err(usage("--r", "must be at least 1"));
    }
    let pr = p.get().checked_pow(a.r).filter(|&v| v <= 1 << 20).ok_or_else(|| usage("--r", "p^r is too large"))?;
    if (a.degree as u64) < pr {
        return Err(usage("--degree", format!("must be at least p^r = {pr}")));
    }
    let (name, f) = load(&a.src, a.degree, p)?;
    let mut levels = Vec::new();
    let mut summary = Vec::new();
    let mut passed = true;
    for r in 1..=a.r {
        let level = match dwork_mismatch(&f, p, r, a.degree) {
            Ok(m) => m,
            Err(e) => return Ok(Ok(failed_check("dwork", header(p, a.r, vec![a.degree]), e))),
        };
        passed &= level.is_none();
        summary.push(match level {
            None => format!("r = {r}: f f_{}(z^{p}) = f_{r} f(z^{p}) mod {p}^{r} through degree {}", r - 1, a.degree),
            Some(d) => format!("r = {r}: fails at degree {d}"),
        });
        levels.push(json!({"r": r, "bound": a.degree, "holds": level.is_none(), "first_mismatch": level}));
    }
    summary.push(status_line(passed));
    let truncations: Vec<Value> = (0..=a.r)
        .map(|s| {
            let d = p.pow(s) as usize - 1;
            json!({"s": s, "degree": d, "coeffs": format_all(&f.coeffs()[..=d])})
        })
        .collect();
    let mut r = CheckReport::new("dwork", header(p, a.r, vec![a.degree]), passed);
    r.summary = summary;
    r.result = json!({"series": name, "levels": levels});
    r.certificate = json!({
        "series": name,
        "prime": p.get(),
        "bound": a.degree,
        "congruence": "f(z) f_{r-1}(z^p) = f_r(z) f(z^p) mod p^r, f_s = truncation at degree p^s - 1",
        "truncations": truncations,
        "coeffs": format_all(f.coeffs()),
    });
    Ok(Ok(r))
}

fn residue(a: &ResidueArgs) -> VerbResult {
    let p = prime(a.p)?;
    let k = precision("--k", a.k)?;
    let disk = DiskId::new(a.disk, p).map_err(|e| usage("--disk", e.to_string()))?;
    let bound = a.degree.unwrap_or(0).max(p.pow(k) as usize + DWORK_SLACK);
    let (name, f) = load(&a.src, bound, p)?;
    let h = header(p, k, vec![bound]);
    let cert = match residue_of_series_logderiv(&f, &name, p, k, disk) {
        Ok(c) => c,
        Err(e) => return Ok(Ok(failed_check("residue", h, e))),
    };
    let mut r = CheckReport::new("residue", h, true);
    r.summary.push(cert.value.to_string());
    r.summary.push(format!("residue of {name}'/{name} on D_{} modulo {p}^{k}", disk.center()));
    for f in &cert.factors {
        r.summary.push(format!("  {:>12}  exponent {:+}  roots {}", f.label, f.exponent, f.roots_in_disk));
    }
    r.result = json!({"series": name, "disk": disk.center(), "value": cert.value});
    r.certificate = serde_json::to_value(&cert).expect("certificate serializes");
    Ok(Ok(r))
}

fn load_operator(a: &IndicialArgs, p: Prime) -> Result<(String, DifferentialOperator), Usage> {
    match (&a.operator, &a.operator_file) {
        (Some(id), None) => Ok((id.clone(), builtin_operator(id, p).map_err(|e| usage("--operator", e.to_string()))?)),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage("--operator-file", e.to_string()))?;
            let j: OperatorJson = serde_json::from_str(&text).map_err(|e| usage("--operator-file", e.to_string()))?;
            Ok((path.display().to_string(), j.to_operator().map_err(|e| usage("--operator-file", e.to_string()))?))
        }
        _ => Err(usage("--operator", "give --operator or --operator-file")),
    }
}

fn indicial(a: &IndicialArgs) -> VerbResult {
    let p = prime(a.p)?;
    let k = precision("--k", a.k)?;
    let (name, op) = load_operator(a, p)?;
    let alpha = match (a.alpha, a.disk) {
        (Some(al), None) => {
            if al.rem_euclid(p.get() as i64) == 0 {
                return Err(usage("--alpha", "must be a unit"));
            }
            al
        }
        (None, Some(d)) => DiskId::new(d, p).map_err(|e| usage("--disk", e.to_string()))?.symmetric(p),
        (Some(al), Some(d)) => {
            if al.rem_euclid(p.get() as i64) as u64 != d {
                return Err(usage("--alpha", format!("does not reduce to disk center {d}")));
            }
            al
        }
        (None, None) => return Err(usage("--disk", "give --disk or --alpha")),
    };
    let h = header(p, k, vec![op.order()]);
    let data = match indicial_data_mod(&op, alpha, p, k) {
        Ok(d) => d,
        Err(e) => return Ok(Ok(failed_check("indicial", h, e))),
    };
    let poly = indicial_poly(&data.s, op.order(), data.modulus).expect("order matches");
    let exponent = a.value.map(|v| is_exponent(&poly, v));
    let passed = exponent != Some(true);
    let mut r = CheckReport::new("indicial", h, passed);
    r.summary.push(format!("operator {name} at alpha = {alpha} modulo M^{k}: regular singular"));
    r.summary.push(format!("s = {:?}", data.s));
    r.summary.push(format!("P(X) = {} over Z/{}", poly.poly, data.modulus.value()));
    if let Some(v) = a.value {
        r.summary.push(format!("P({v}) = {}", poly.eval(v)));
    }
    r.summary.push(status_line(passed));
    let reduced: Vec<Value> = data
        .reduced
        .iter()
        .enumerate()
        .map(|(j, (n, d))| json!({"j": j + 1, "num": n.coeffs(), "den": d.coeffs()}))
        .collect();
    r.result = json!({
        "operator": name,
        "alpha": alpha,
        "s": data.s,
        "poly": poly.poly.coeffs(),
        "value": a.value,
        "value_at": a.value.map(|v| poly.eval(v)),
        "is_exponent": exponent,
    });
    r.certificate = json!({
        "operator": op.to_json(),
        "alpha": alpha,
        "modulus": data.modulus.value(),
        "reduced": reduced,
        "rule": "P(X) = X^(n) + sum_j s_j X^(n-j), s_j = ((z - alpha)^j b_j)(alpha)",
    });
    Ok(Ok(r))
}

fn criterion(a: &CriterionArgs) -> VerbResult {
    let cfg = CriterionConfig::load(&a.config).map_err(|e| usage("--config", e.to_string()))?;
    cfg.resolve().map_err(|e| usage("--config", e.to_string()))?;
    match run_config(&cfg) {
        Ok(r) => Ok(Err(Box::new(r))),
        Err(e) => Err(usage("--config", e.to_string())),
    }
}

fn criterion_summary(r: &crate::criterion::CriterionReport) -> Vec<String> {
    let mut out = vec![format!(
        "criterion at p = {}, precision {} (modulus {}), version {}",
        r.header.prime, r.header.precision, r.header.modulus, r.header.version
    )];
    out.push(format!("{:<10} {:>4} {:>8} {:>6} {:>6} {:>6} {:>7}", "series", "disk", "residue", "P(res)", "dwork", "annih", "passed"));
    for s in &r.series {
        out.push(format!(
            "{:<10} {:>4} {:>8} {:>6} {:>6} {:>6} {:>7}",
            s.name,
            s.disk,
            s.residue.as_ref().map_or("-".to_string(), |c| c.value.to_string()),
            s.indicial.as_ref().and_then(|i| i.value_at_residue).map_or("-".to_string(), |v| v.to_string()),
            s.dwork.iter().all(|d| d.holds),
            s.annihilation.holds,
            s.passed
        ));
    }
    for reason in &r.reasons {
        out.push(format!("reason: {reason}"));
    }
    for t in &r.transfers {
        out.push(format!(
            "transfer {} -> {}: {} ({})",
            t.from,
            t.to,
            t.status,
            t.grade.as_deref().or(t.reason.as_deref()).unwrap_or("")
        ));
    }
    out.push(format!(
        "verdict: {}",
        match r.verdict {
            Verdict::Independent => "independent",
            Verdict::Inconclusive => "inconclusive",
        }
    ));
    out
}

fn bessel(a: &BesselArgs) -> VerbResult {
    let p = prime(a.p)?;
    let powers: Vec<u64> = match a.power {
        Some(0) => return Err(usage("--power", "must be at least 1")),
        Some(n) => vec![n],
        None => (1..=12).collect(),
    };
    if a.dmax == 0 {
        return Err(usage("--dmax", "must be at least 1"));
    }
    let mut summary = Vec::new();
    let mut passed = true;
    let mut reports = Vec::new();
    for &n in &powers {
        let l = bessel_power_lacunarity(n, p, a.degree);
        let dom = n < 2 || binomial_term_domination(n, p);
        passed &= l.passes && dom;
        summary.push(format!(
            "N = {n:>3}: threshold pi^{}, survivors {:?}, lacunary {}, binomial domination {}",
            l.threshold, l.surviving_support, l.passes, dom
        ));
        reports.push(json!({"lacunarity": l, "binomial_domination": dom}));
    }
    let exp = exp_pth_power_convergence(p, a.degree as u64);
    passed &= exp.certified;
    summary.push(format!("exp(p pi z) coefficients tend to 0 through n = {}: {}", a.degree, exp.certified));
    let need = 2 * a.dmax + a.window;
    let hankel = reduced_bessel_power(1, p, need)
        .and_then(|s| hankel_nonrationality_evidence(&s, a.dmax, a.window));
    let hankel = match hankel {
        Ok(h) => h,
        Err(e) => return Ok(Ok(failed_check("bessel", header(p, 1, vec![a.degree]), e))),
    };
    passed &= hankel.no_rational_match();
    summary.push(format!(
        "reduced J_0(pi z) has no (d, d) rational match for d <= {} (evidence only): {}",
        a.dmax,
        hankel.no_rational_match()
    ));
    summary.push(status_line(passed));
    let mut r = CheckReport::new("bessel", header(p, 1, vec![a.degree, need]), passed);
    r.summary = summary;
    r.result = json!({"powers": reports, "exp_convergence": exp, "hankel": hankel});
    r.certificate = json!({
        "prime": p.get(),
        "degree": a.degree,
        "series": "J_0(pi z) = sum (-1)^m pi^(2m) z^(2m) / (4^m m!^2), pi^(p-1) = -p",
        "threshold_rule": "(p-1) v_p(N) + 3",
        "reduced_series": reduced_bessel_power(1, p, need).map(|s| s.coeffs().to_vec()).unwrap_or_default(),
    });
    Ok(Ok(r))
}

fn reconstruct(a: &ReconstructArgs) -> VerbResult {
    let p = prime(a.p)?;
    let k = precision("--k", a.k)?;
    let (name, f) = load(&a.src, a.degree, p)?;
    let m = Modulus::new(p, k).expect("valid precision");
    let h = header(p, k, vec![a.degree]);
    let target = match &a.divide {
        None => f.reduce_mod(m),
        Some(id) => {
            if !GENERATORS.contains(&id.as_str()) {
                return Err(usage("--divide", format!("unknown generator {id:?}")));
            }
            let g = generate(id, a.degree, p).map_err(|e| usage("--divide", e.to_string()))?;
            g.reduce_mod(m).and_then(|g| g.invert()).and_then(|gi| f.reduce_mod(m)?.mul(&gi))
        }
    };
    let s = match target {
        Ok(s) => s,
        Err(e) => return Ok(Ok(failed_check("reconstruct", h, e))),
    };
    if a.degree < a.dnum + a.dden + 1 {
        return Err(usage("--degree", "must be at least dnum + dden + 1"));
    }
    let label = match &a.divide {
        Some(g) => format!("{name}/{g}"),
        None => name.clone(),
    };
    let rec = pade_reconstruct(&s, a.dnum, a.dden);
    let matches = rec.as_ref().is_some_and(|r| series_matches_ratfun_mod(&s, r, s.bound()).unwrap_or(false));
    let mut r = CheckReport::new("reconstruct", h, matches);
    r.summary.push(match &rec {
        Some(f) => format!("{label} = {f} modulo {m} through degree {} (evidence only)", a.degree),
        None => format!("no ({}, {}) rational function matches {label} modulo {m} through degree {}", a.dnum, a.dden, a.degree),
    });
    r.summary.push(status_line(matches));
    r.result = json!({"series": label, "dnum": a.dnum, "dden": a.dden, "matches": matches, "grade": "evidence"});
    r.certificate = json!({
        "modulus": m.value(),
        "bound": s.bound(),
        "approximant": rec.map(|f| f.to_json()),
        "series_mod": s.coeffs(),
    });
    Ok(Ok(r))
}

fn failed_check(verb: &str, h: Header, e: Error) -> CheckReport {
    let mut r = CheckReport::new(verb, h, false);
    r.summary = vec![format!("error: {e}"), status_line(false)];
    r.result = json!({"error": e.to_string()});
    r.certificate = json!({});
    r
}

fn status_line(passed: bool) -> String {
    if passed { "status: verified" } else { "status: failed" }.to_string()
}
