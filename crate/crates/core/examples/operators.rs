//! Operators in delta form and d/dz form, and their action on the
//! generated series.

use padic_indep::diffop::{apery_delta_operator, bessel_operator, operator_d, operator_l};
use padic_indep::series::{gen_apery, gen_bessel, gen_f, gen_h};
use padic_indep::valuation::Prime;

fn main() -> padic_indep::Result<()> {
    let p = Prime::new(3)?;
    let n = 100;
    let l = operator_l();
    println!("L = {:?}", l.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for (j, b) in l.to_ddz()?.coeffs().iter().enumerate() {
        println!("  b_{} = ({}) / ({})", j + 1, b.num(), b.den());
    }
    println!("L h = 0: {}", l.apply(&gen_h(n)).is_zero());
    println!("D f = 0: {}", operator_d().apply(&gen_f(n)).is_zero());
    println!("H A = 0: {}", apery_delta_operator().apply(&gen_apery(n)).is_zero());
    let j0 = gen_bessel(n, p).collapse()?;
    println!("(delta^2 - 3z^2) J_0(pi z) = 0: {}", bessel_operator(p)?.apply(&j0).is_zero());
    Ok(())
}
