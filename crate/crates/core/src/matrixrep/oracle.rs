//! Implicit equation by linear algebra on sampled points, independent of
//! the syzygy machinery.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;

use crate::biparam::Parametrization;
use crate::error::{Error, Result};
use crate::field::{rational_reconstruction, Field, FieldElem, ModInt};
use crate::modp::{kernel, random_word_prime, Mat, Zp};
use crate::tpoly::{Mono, TPoly, VarSet};

use super::verify_substitution;

/// Degree `n` monomials in four variables, ascending.
pub(crate) fn monomials_of_degree(n: u32) -> Vec<Mono> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                out.push(Mono([a, b, c, n - a - b - c]));
            }
        }
    }
    out.sort();
    out
}

/// Image points of the parametrization, away from base points.
struct Samples {
    field: Field,
    points: Vec<[FieldElem; 4]>,
}

impl Samples {
    fn extend_to<R: Rng + ?Sized>(&mut self, p: &Parametrization, n: usize, rng: &mut R) {
        while self.points.len() < n {
            let st: [FieldElem; 4] = std::array::from_fn(|_| self.field.random(rng, 1000));
            let img = p.eval(&st);
            if img.iter().any(|x| !x.is_zero()) {
                self.points.push(img);
            }
        }
    }
}

fn row_mod(zp: Zp, point: &[u64; 4], monos: &[Mono]) -> Vec<u64> {
    monos.iter().map(|m| (0..4).fold(1 % zp.p, |acc, i| zp.mul(acc, zp.pow(point[i], m.0[i] as u64)))).collect()
}

/// Kernel of the evaluation matrix modulo `p`, or `None` if `p` is unlucky.
fn kernel_mod(zp: Zp, points: &[[FieldElem; 4]], monos: &[Mono]) -> Option<Vec<Vec<u64>>> {
    let mut rows: Mat = Vec::with_capacity(points.len());
    for pt in points {
        let mut v = [0u64; 4];
        for i in 0..4 {
            v[i] = zp.from_elem(&pt[i])?;
        }
        rows.push(row_mod(zp, &v, monos));
    }
    Some(kernel(zp, &rows, monos.len()))
}

/// Scales so the largest monomial with a nonzero coefficient gets 1.
fn normalize(zp: Zp, v: &mut [u64]) -> Option<usize> {
    let lead = v.iter().rposition(|&c| c != 0)?;
    let inv = zp.inv(v[lead]);
    for c in v.iter_mut() {
        *c = zp.mul(*c, inv);
    }
    Some(lead)
}

/// The implicit equation `F`: the first degree `D'` for which the forms of
/// degree `D'` vanishing on `2 * C(D'+3, 3)` sampled image points span a line.
/// Over the rationals the kernel is computed modulo word-size primes and
/// lifted by rational reconstruction. Every answer is checked by substituting
/// the parametrization, which also pins the kernel over Q to dimension one.
pub fn interpolation_oracle<R: Rng + ?Sized>(p: &Parametrization, max_degree: u32, rng: &mut R) -> Result<TPoly> {
    if max_degree == 0 {
        return Err(Error::InvalidArgument("max_degree must be positive".into()));
    }
    let field = p.field();
    let mut samples = Samples { field, points: Vec::new() };
    for deg in 1..=max_degree {
        let monos = monomials_of_degree(deg);
        samples.extend_to(p, 2 * monos.len(), rng);
        let pts = &samples.points[..2 * monos.len()];
        let candidate = match field {
            Field::Prime(q) => {
                let k = kernel_mod(Zp::new(q), pts, &monos).expect("residues in the same field");
                if k.len() != 1 {
                    continue;
                }
                let terms = monos.iter().zip(&k[0]).map(|(m, &c)| (*m, FieldElem::Mod(ModInt::new(c, q))));
                TPoly::from_terms(VarSet::T, field, terms).canonical()
            }
            Field::Rationals => match lift_rational_kernel(p, pts, &monos, rng)? {
                Some(f) => f,
                None => continue,
            },
        };
        if verify_substitution(&candidate, p)? {
            return Ok(candidate);
        }
    }
    Err(Error::OracleFailed(max_degree))
}

/// `Some(F)` when the kernel is one-dimensional over the rationals.
fn lift_rational_kernel<R: Rng + ?Sized>(
    p: &Parametrization,
    pts: &[[FieldElem; 4]], monos: &[Mono], rng: &mut R) -> Result<Option<TPoly>> {
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut lead_seen: Option<usize> = None;
    let mut previous: Option<Vec<BigRational>> = None;
    let mut dims = Vec::new();
    for _ in 0..64 {
        let zp = Zp::new(random_word_prime(rng));
        let Some(mut k) = kernel_mod(zp, pts, monos) else {
            continue;
        };
        dims.push(k.len());
        // Rank over Q is at least the rank mod p, so a trivial kernel is final.
        if k.is_empty() {
            return Ok(None);
        }
        if k.len() > 1 {
            if dims.len() >= 2 && dims.iter().rev().take(2).all(|&d| d > 1) {
                return Ok(None);
            }
            continue;
        }
        let mut v = k.pop().expect("one vector");
        let lead = normalize(zp, &mut v).expect("kernel vectors are nonzero");
        match lead_seen {
            Some(l) if l > lead => continue,
            Some(l) if l < lead => {
                modulus = BigInt::one();
                acc.clear();
            }
            _ => {}
        }
        lead_seen = Some(lead);
        crt_accumulate(&mut acc, &mut modulus, &v, zp.p);
        let Some(rec) = acc.iter().map(|a| rational_reconstruction(a, &modulus)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        if previous.as_ref() == Some(&rec) {
            let terms = monos.iter().copied().zip(rec.iter().cloned().map(FieldElem::Rat));
            let f = TPoly::from_terms(VarSet::T, Field::Rationals, terms).canonical();
            if verify_substitution(&f, p)? {
                return Ok(Some(f));
            }
        }
        previous = Some(rec);
    }
    Err(Error::Interpolation("kernel reconstruction did not stabilize".into()))
}

pub(crate) fn crt_accumulate(acc: &mut Vec<BigInt>, modulus: &mut BigInt, residues: &[u64], p: u64) {
    let pb = BigInt::from(p);
    if acc.is_empty() {
        acc.extend(residues.iter().map(|&r| BigInt::from(r)));
        *modulus = pb;
        return;
    }
    let zp = Zp::new(p);
    let inv = zp.inv(zp.from_bigint(modulus));
    for (a, &r) in acc.iter_mut().zip(residues) {
        // a + m * ((r - a) / m mod p)
        let t = zp.mul(zp.sub(r, zp.from_bigint(a)), inv);
        *a += &*modulus * BigInt::from(t);
    }
    *modulus *= pb;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biparam::parse_parametrization;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(1).len(), 4);
        assert_eq!(monomials_of_degree(7).len(), 120);
    }

    #[test]
    fn segre_quadric() {
        let p = parse_parametrization("degree: 1 1\nf1: s*t\nf2: s*v\nf3: u*t\nf4: u*v\n").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = interpolation_oracle(&p, 4, &mut rng).unwrap();
        assert_eq!(f.to_string(), "T1*T4 - T2*T3");
        assert!(matches!(interpolation_oracle(&p, 0, &mut rng), Err(Error::InvalidArgument(_))));
        assert!(matches!(interpolation_oracle(&p, 1, &mut rng), Err(Error::OracleFailed(1))));
    }

    #[test]
    fn segre_quadric_mod_p() {
        let p = parse_parametrization("degree: 1 1\nfield: GF 101\nf1: s*t\nf2: s*v\nf3: u*t\nf4: u*v\n").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = interpolation_oracle(&p, 3, &mut rng).unwrap();
        assert_eq!(f, TPoly::parse("T1*T4 - T2*T3", VarSet::T, Field::Prime(101)).unwrap());
    }
}
