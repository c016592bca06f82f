//! Generates h and the Apery series and checks their Dwork congruences.

use padic_indep::series::{dwork_check, dwork_mismatch, gen_apery, gen_f, gen_h};
use padic_indep::valuation::Prime;

fn main() -> padic_indep::Result<()> {
    let p = Prime::new(3)?;
    let h = gen_h(60);
    let a = gen_apery(60);
    println!("h     = {} ...", h.coeffs()[..5].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    println!("apery = {} ...", a.coeffs()[..5].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    for r in 1..=3 {
        let n = p.pow(r) as usize + 20;
        let (h, a) = (gen_h(n), gen_apery(n));
        println!("r = {r}, degree {n}: h {}, apery {}", dwork_check(&h, p, r, n)?, dwork_check(&a, p, r, n)?);
    }
    println!("f first fails at degree {:?}", dwork_mismatch(&gen_f(30), p, 1, 30)?);
    Ok(())
}
