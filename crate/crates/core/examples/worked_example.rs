//! The worked bidegree (2,2) example with base points: saturation lowers nu0
//! to 2, the matrix is 9 x 12 and the gcd of its maximal minors is the
//! degree 7 implicit equation.
//!
//! cargo run --release --example worked_example

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segre_implicit::biparam::Parametrization;
use segre_implicit::matrixrep::{
    build_matrix, extract_gcd_of_minors, interpolation_oracle, lci_diagnostic, verify_substitution, Strategy,
};
use segre_implicit::zcomplex::{choose_nu0, strand_report, SegreIdeal};

fn main() -> segre_implicit::Result<()> {
    let p = Parametrization::from_strs(
        (2, 2),
        ["u^2*t*v + s^2*t*v", "u^2*t^2 + s*u*v^2", "s^2*v^2 + s^2*t^2", "s^2*t*v"],
    )?;
    let ideal = SegreIdeal::from_parametrization(&p)?;

    let nu0 = choose_nu0(&ideal, true);
    println!("indeg(I^sat) = {:?}, nu0 = {} -> {}", nu0.indeg_sat, nu0.conservative, nu0.chosen);

    let report = strand_report(&ideal, nu0.chosen);
    println!("dims {:?}, euler {}, expected degree {}", report.dims, report.euler, report.expected_deg_d);

    let m = build_matrix(&ideal, nu0.chosen);
    println!("M is {} x {}", m.rows(), m.cols());

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let d = extract_gcd_of_minors(&m, Strategy::Sampled(8), &mut rng)?;
    println!("D = {d}");
    println!("degree {:?}, vanishes on the surface: {}", d.total_degree(), verify_substitution(&d, &p)?);

    let f = interpolation_oracle(&p, 7, &mut rng)?;
    let diag = lci_diagnostic(&d, &f)?;
    println!("D = c * F^{} * G, G constant: {}", diag.e, diag.lci);
    Ok(())
}
