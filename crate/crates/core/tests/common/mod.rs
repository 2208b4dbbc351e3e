#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segre_implicit::biparam::{parse_parametrization, Parametrization};
use segre_implicit::field::Field;
use segre_implicit::tpoly::{TPoly, VarSet};

pub const WORKED: &str = include_str!("../../examples/data/worked.ex");
pub const SEGRE: &str = include_str!("../../examples/data/segre.ex");
pub const MIXED: &str = include_str!("../../examples/data/mixed23.ex");
pub const COMMON_FACTOR: &str = include_str!("../../examples/data/common_factor.ex");

pub fn worked() -> Parametrization {
    parse_parametrization(WORKED).unwrap()
}

pub fn segre() -> Parametrization {
    parse_parametrization(SEGRE).unwrap()
}

pub fn mixed() -> Parametrization {
    parse_parametrization(MIXED).unwrap()
}

/// The five seeded dense (2,2) parametrizations.
pub fn generic(i: u64) -> Parametrization {
    let mut rng = ChaCha8Rng::seed_from_u64(1000 + i);
    Parametrization::random_dense((2, 2), Field::Rationals, 9, &mut rng).unwrap()
}

pub fn tq(text: &str) -> TPoly {
    TPoly::parse(text, VarSet::T, Field::Rationals).unwrap()
}

pub fn data_path(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}
