//! Indicial polynomials of the hypergeometric operator at 1 and the Apery
//! operator at -1, reduced modulo M^2 at p = 3.

use padic_indep::diffop::{apery_operator, indicial_data_mod, indicial_poly, operator_l};
use padic_indep::valuation::Prime;

fn main() -> padic_indep::Result<()> {
    let p = Prime::new(3)?;
    let l = operator_l().to_ddz()?;
    for (name, op, alpha, residue) in [("L", l, 1, 4), ("H", apery_operator(), -1, 8)] {
        let data = indicial_data_mod(&op, alpha, p, 2)?;
        let poly = indicial_poly(&data.s, op.order(), data.modulus)?;
        println!("{name} at {alpha}: s = {:?}, P(X) = {}, P({residue}) = {}", data.s, poly.poly, poly.eval(residue));
    }
    match indicial_data_mod(&apery_operator(), 2, p, 2) {
        Ok(_) => println!("H at 2: regular"),
        Err(e) => println!("H at 2: {e}"),
    }
    Ok(())
}
