//! Runs the full criterion on h and the Apery series, then the negative
//! control with h and f on the same disk.

use std::path::Path;

use padic_indep::criterion::{run_config, CriterionConfig};

fn main() -> padic_indep::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples");
    for file in ["h_apery.toml", "h_f.toml"] {
        let report = run_config(&CriterionConfig::load(&dir.join(file))?)?;
        println!("{file}: {:?}", report.verdict);
        for s in &report.series {
            let residue = s.residue.as_ref().map(|c| c.value);
            println!("  {} on D_{}: residue {residue:?}, passed {}", s.name, s.disk, s.passed);
        }
        for r in &report.reasons {
            println!("  reason: {r}");
        }
    }
    Ok(())
}
