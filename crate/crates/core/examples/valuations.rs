//! Digit sums, factorial valuations and the π-valuations of the Bessel
//! coefficients at p = 3.

use padic_indep::valuation::{bessel_coeff_pi_valuation, check_binomial_inequality, digit_sum, vp_binomial, vp_factorial, Prime};

fn main() -> padic_indep::Result<()> {
    let p = Prime::new(3)?;
    println!("{:>4} {:>6} {:>8} {:>10}", "n", "s_3(n)", "v_3(n!)", "v_pi(b_n)");
    for n in [1u64, 2, 3, 8, 9, 26, 27, 80, 81] {
        println!("{n:>4} {:>6} {:>8} {:>10}", digit_sum(n, p), vp_factorial(n, p), bessel_coeff_pi_valuation(n, p)?.0);
    }
    println!("v_3(C(27, 3)) = {}", vp_binomial(27, 3, p));
    let ok = (2..=300u64).all(|n| (2..=n).all(|s| check_binomial_inequality(n, s, p).unwrap_or(false)));
    println!("binomial inequality for N <= 300: {ok}");
    Ok(())
}
