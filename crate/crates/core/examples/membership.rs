//! Point membership by rank drop: M(P) loses rank exactly on the surface.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segre_implicit::biparam::parse_parametrization;
use segre_implicit::field::Field;
use segre_implicit::matrixrep::{build_matrix, interpolation_oracle, membership};
use segre_implicit::zcomplex::{choose_nu0, SegreIdeal};

fn main() -> segre_implicit::Result<()> {
    let p = parse_parametrization(include_str!("data/worked.ex"))?;
    let ideal = SegreIdeal::from_parametrization(&p)?;
    let m = build_matrix(&ideal, choose_nu0(&ideal, true).chosen);
    let k = m.rows();
    let q = Field::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    // Images of parameter points lie on the surface.
    for _ in 0..3 {
        let st = [0; 4].map(|_| q.random(&mut rng, 20));
        let image = p.eval(&st);
        let res = membership(&m, &image, k)?;
        println!("phi({}, {}, {}, {}): rank {} of {k}, on surface {}", st[0], st[1], st[2], st[3], res.rank, res.on_surface);
    }

    // Random points of P^3 are off the surface unless F happens to vanish.
    let f = interpolation_oracle(&p, 7, &mut rng)?;
    for _ in 0..3 {
        let pt = [0; 4].map(|_| q.random(&mut rng, 20));
        let res = membership(&m, &pt, k)?;
        println!("F = {} at the point: rank {} of {k}, on surface {}", f.eval(&pt), res.rank, res.on_surface);
    }
    Ok(())
}
