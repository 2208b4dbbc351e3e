//! Random dense bidegree (2,2) parametrizations have no base points: the
//! expected degree is 2d^2 = 8 and the saturation changes nothing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segre_implicit::biparam::Parametrization;
use segre_implicit::field::Field;
use segre_implicit::matrixrep::{build_matrix, extract_gcd_of_minors, verify_substitution, Strategy};
use segre_implicit::zcomplex::{choose_nu0, strand_report, SegreIdeal};

fn main() -> segre_implicit::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..3 {
        let p = Parametrization::random_dense((2, 2), Field::Rationals, 9, &mut rng)?;
        let ideal = SegreIdeal::from_parametrization(&p)?;
        let nu0 = choose_nu0(&ideal, true);
        let r = strand_report(&ideal, 3);
        println!("indeg(I^sat) {:?}, nu=3 dims {:?}, euler {}, expected {}", nu0.indeg_sat, r.dims, r.euler, r.expected_deg_d);

        let m = build_matrix(&ideal, nu0.chosen);
        let d = extract_gcd_of_minors(&m, Strategy::Interpolated(3), &mut rng)?;
        println!("  {} x {} matrix, D of degree {:?}, vanishes: {}", m.rows(), m.cols(), d.total_degree(), verify_substitution(&d, &p)?);
    }
    Ok(())
}
