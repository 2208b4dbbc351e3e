//! The Segre map itself. Its image is the quadric T1*T4 - T2*T3, recovered
//! here from all 35 maximal minors of a 4 x 7 matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segre_implicit::biparam::parse_parametrization;
use segre_implicit::matrixrep::{build_matrix, extract_gcd_of_minors, Strategy};
use segre_implicit::zcomplex::{strand_report, SegreIdeal};

fn main() -> segre_implicit::Result<()> {
    let p = parse_parametrization(include_str!("data/segre.ex"))?;
    let ideal = SegreIdeal::from_parametrization(&p)?;

    let r = strand_report(&ideal, 1);
    println!("dims {:?} euler {} expected degree {}", r.dims, r.euler, r.expected_deg_d);

    let m = build_matrix(&ideal, 1);
    print!("{}", m.to_text());

    let d = extract_gcd_of_minors(&m, Strategy::All, &mut ChaCha8Rng::seed_from_u64(0))?;
    println!("gcd of minors: {d}");
    Ok(())
}
