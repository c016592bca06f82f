//! Replaces h by f using a rational match of f / h modulo 9. The result is
//! evidence-grade.

use padic_indep::criterion::{quotient_transfer, ratio_evidence, run_criterion, RatioSupport, SeriesSpec};
use padic_indep::series::{gen_f, gen_h};
use padic_indep::valuation::Prime;

fn main() -> padic_indep::Result<()> {
    let p = Prime::new(3)?;
    let specs = [SeriesSpec::builtin("h", "L", 1, p)?, SeriesSpec::builtin("apery", "H", 2, p)?];
    let base = run_criterion(&specs, 2)?;
    let ev = ratio_evidence(&gen_f(200), &gen_h(200), p, 2, 8, 8)?;
    println!("f/h mod 9: {}", serde_json::to_string(&ev.approximant).expect("serializes"));
    let out = quotient_transfer(&base, "h", "f", &ev, RatioSupport::Evidence)?;
    println!("{} -> {}: {:?}, grade {:?}", out.from, out.to, out.verdict, out.grade);
    Ok(())
}
