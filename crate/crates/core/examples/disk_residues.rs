//! Residues of h'/h and A'/A on the disks D_1 and D_2 modulo 9, with the
//! factor lists that certify them.

use padic_indep::newton::{residue_of_series_logderiv, root_profile, DiskId};
use padic_indep::poly::QPoly;
use padic_indep::series::{gen_apery, gen_h};
use padic_indep::valuation::Prime;

fn main() -> padic_indep::Result<()> {
    let p = Prime::new(3)?;
    let g = QPoly::from_i64(&[1, -34, 1]);
    println!("1 - 34z + z^2: {:?}", root_profile(&g, p)?);
    for (name, f, disk) in [("h", gen_h(29), 1), ("apery", gen_apery(29), 2)] {
        let cert = residue_of_series_logderiv(&f, name, p, 2, DiskId::new(disk, p)?)?;
        println!("{name} on D_{disk}: residue {} mod {}", cert.value, cert.modulus);
        for f in &cert.factors {
            println!("  {:>12} exponent {:+} roots {}", f.label, f.exponent, f.roots_in_disk);
        }
        println!("  recheck: {}", cert.recheck()?);
    }
    Ok(())
}
