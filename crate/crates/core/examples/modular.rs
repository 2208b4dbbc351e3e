//! The same pipeline over GF(p): reduce the input, then work with residues.
//! Also a JSON round trip of the matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segre_implicit::biparam::parse_parametrization;
use segre_implicit::matrixrep::{build_matrix, extract_gcd_of_minors, Strategy};
use segre_implicit::zcomplex::{strand_report, SegreIdeal};

fn main() -> segre_implicit::Result<()> {
    let p = parse_parametrization(include_str!("data/worked.ex"))?.reduce_mod(32003)?;
    print!("{}", p.to_text());

    let ideal = SegreIdeal::from_parametrization(&p)?;
    let r = strand_report(&ideal, 2);
    println!("dims {:?} expected degree {}", r.dims, r.expected_deg_d);

    let m = build_matrix(&ideal, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let exact = extract_gcd_of_minors(&m, Strategy::Sampled(8), &mut rng)?;
    let interp = extract_gcd_of_minors(&m, Strategy::Interpolated(3), &mut rng)?;
    println!("D = {exact}");
    println!("symbolic and interpolated agree: {}", exact == interp);

    let json = serde_json::to_string(&m.to_json())?;
    println!("matrix JSON: {} bytes", json.len());
    Ok(())
}
