//! Lacunarity of J_0(π z)^N at p = 3, binomial domination, and the
//! rational-reconstruction evidence for the reduced series.

use padic_indep::bessel::{bessel_power_lacunarity, binomial_term_domination, hankel_nonrationality_evidence, reduced_bessel_power};
use padic_indep::valuation::Prime;

fn main() -> padic_indep::Result<()> {
    let p = Prime::new(3)?;
    for n in 1..=12 {
        let r = bessel_power_lacunarity(n, p, 58);
        println!(
            "N = {n:>2}: threshold {}, survivors {:?} at {:?}, passes {}, domination {}",
            r.threshold,
            r.surviving_support,
            r.survivor_valuations,
            r.passes,
            binomial_term_domination(n, p)
        );
    }
    let s = reduced_bessel_power(1, p, 136)?;
    let h = hankel_nonrationality_evidence(&s, 8, 120)?;
    println!("no rational match for d <= 8: {}", h.no_rational_match());
    Ok(())
}
