//! How nu0 is chosen. The conservative bound is 2d - 1; when the saturation
//! of I starts in degree i the bound drops to 2d - 1 - i, provided the
//! strand there still has Euler characteristic 0 and the same expected degree.

use segre_implicit::biparam::parse_parametrization;
use segre_implicit::zcomplex::{choose_nu0, colon_dim, strand_report, SegreIdeal};

fn main() -> segre_implicit::Result<()> {
    let p = parse_parametrization(include_str!("data/worked.ex"))?;
    let ideal = SegreIdeal::from_parametrization(&p)?;

    println!("dim (I : m^e)_nu");
    for e in 0..=4 {
        let row: Vec<usize> = (0..=2).map(|nu| colon_dim(&ideal, nu, e)).collect();
        println!("  e = {e}: {row:?}");
    }

    let choice = choose_nu0(&ideal, true);
    println!("{choice:?}");

    for nu in 0..=4 {
        let r = strand_report(&ideal, nu);
        println!("nu = {nu}: dims {:?} euler {} expected degree {}", r.dims, r.euler, r.expected_deg_d);
    }
    Ok(())
}
