//! Logarithmic derivatives of h and the Apery series modulo 3 and 9,
//! matched against explicit rational functions through degree 200.

use padic_indep::modular::Modulus;
use padic_indep::ratfun::{series_matches_ratfun_mod, ModRationalFunction};
use padic_indep::series::{gen_apery, gen_h};
use padic_indep::valuation::Prime;

fn main() -> padic_indep::Result<()> {
    let p = Prime::new(3)?;
    let n = 200;
    let (h, a) = (gen_h(n + 1), gen_apery(n + 1));
    for k in [1, 2] {
        let m = Modulus::new(p, k)?;
        let hl = h.reduce_mod(m)?.log_derivative()?;
        let al = a.reduce_mod(m)?.log_derivative()?;
        let (rh, ra) = if k == 1 {
            (ModRationalFunction::from_i64(&[-1], &[1, -1], m)?, ModRationalFunction::from_i64(&[-1, 2], &[1, -1, 1], m)?)
        } else {
            (
                ModRationalFunction::from_i64(&[8, 8, 5], &[1, 0, 0, -1], m)?,
                ModRationalFunction::from_i64(&[5, 4, 8, 4, 5, 1], &[1, 0, 0, 0, 0, 0, -1], m)?,
            )
        };
        println!("mod {m}: h'/h = {rh}: {}", series_matches_ratfun_mod(&hl, &rh, n)?);
        println!("mod {m}: A'/A = {ra}: {}", series_matches_ratfun_mod(&al, &ra, n)?);
    }
    Ok(())
}
