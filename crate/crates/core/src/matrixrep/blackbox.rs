//! gcd of maximal minors without expanding them.
//!
//! All lines through a random point `P0 = (p1, p2, p3, 1)` with direction
//! `(y1, y2, 1, 0)` are sampled on a grid. On each line a projected minor
//! `det(M R)` restricts to `det(A + lambda B) = det(A) det(I + lambda A^-1 B)`, read off a
//! characteristic polynomial; the univariate gcd, scaled to constant term 1,
//! is `D(P0 + lambda d) / D(P0)`. Its `lambda^j` coefficient is the degree-`j`
//! Taylor term of `D` at `P0`, which is interpolated over the grid and shifted
//! back. Images modulo several primes are combined and lifted to Q.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{rational_reconstruction, Field, FieldElem, ModInt};
use crate::modp::{charpoly, interpolate, inverse, mat_mul, poly_gcd, random_word_prime, trim, Mat, Zp};
use crate::tpoly::{Mono, TPoly, VarSet};

use super::oracle::crt_accumulate;
use super::RepMatrix;

const MAX_PRIMES: usize = 200;

/// gcd of the maximal minors of `m`, interpolated from `n` random
/// projections `det(M R)`.
pub fn interpolate_minor_gcd<R: Rng + ?Sized>(m: &RepMatrix, n: usize, rng: &mut R) -> Result<TPoly> {
    let (k, cols) = (m.rows(), m.cols());
    if cols < k {
        return Err(Error::TooFewColumns { rows: k, cols });
    }
    match m.field() {
        Field::Prime(q) => {
            for _ in 0..8 {
                if let Some(img) = image_mod(m, n, Zp::new(q), rng)? {
                    let terms = img.into_iter().map(|(mono, c)| (mono, FieldElem::Mod(ModInt::new(c, q))));
                    return Ok(TPoly::from_terms(VarSet::T, m.field(), terms));
                }
            }
            Err(Error::Interpolation(format!("no consistent image modulo {q}")))
        }
        Field::Rationals => lift_rational(m, n, rng),
    }
}

fn lift_rational<R: Rng + ?Sized>(m: &RepMatrix, n: usize, rng: &mut R) -> Result<TPoly> {
    let mut support: Option<Vec<Mono>> = None;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Vec<num_rational::BigRational>> = None;
    for _ in 0..MAX_PRIMES {
        let zp = Zp::new(random_word_prime(rng));
        let Some(img) = image_mod(m, n, zp, rng)? else {
            continue;
        };
        let monos: Vec<Mono> = img.keys().copied().collect();
        // Spurious common factors raise the degree; unlucky primes shrink the support.
        let rank = |a: &[Mono]| (std::cmp::Reverse(a[0].degree()), a.len());
        match &support {
            Some(s) if rank(s) > rank(&monos) => continue,
            Some(s) if s != &monos => {
                acc.clear();
                modulus = BigInt::one();
                previous = None;
            }
            _ => {}
        }
        let residues: Vec<u64> = img.values().copied().collect();
        support = Some(monos);
        crt_accumulate(&mut acc, &mut modulus, &residues, zp.p);
        let Some(rec) = acc.iter().map(|a| rational_reconstruction(a, &modulus)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        if previous.as_ref() == Some(&rec) {
            let monos = support.expect("set above");
            let terms = monos.into_iter().zip(rec.into_iter().map(FieldElem::Rat));
            return Ok(TPoly::from_terms(VarSet::T, Field::Rationals, terms));
        }
        previous = Some(rec);
    }
    Err(Error::Interpolation(format!("no stable rational lift after {MAX_PRIMES} primes")))
}

/// The four coefficient matrices of `M` reduced mod `p`.
fn coefficient_matrices(m: &RepMatrix, zp: Zp) -> Option<[Mat; 4]> {
    let mut out: [Mat; 4] = Default::default();
    for (i, mat) in out.iter_mut().enumerate() {
        *mat = m
            .entries()
            .iter()
            .map(|row| row.iter().map(|l| zp.from_elem(&l.0[i])).collect::<Option<Vec<_>>>())
            .collect::<Option<Mat>>()?;
    }
    Some(out)
}

fn combine(zp: Zp, mats: &[&Mat], coeffs: &[u64]) -> Mat {
    let (r, c) = (mats[0].len(), mats[0][0].len());
    let mut out = vec![vec![0u64; c]; r];
    for (mat, &a) in mats.iter().zip(coeffs) {
        if a == 0 {
            continue;
        }
        for (orow, mrow) in out.iter_mut().zip(mat.iter()) {
            for (o, &x) in orow.iter_mut().zip(mrow) {
                *o = zp.add(*o, zp.mul(a, x));
            }
        }
    }
    out
}

/// Per projection `R` (`cols x k`, random): `(M(P0) R)^-1 M(e_i) R`, `i = 1, 2, 3`.
/// By Cauchy-Binet `det(M R)` is a random combination of all maximal minors,
/// so two projections already share nothing but `D` for generic `R`.
struct LineFamily {
    zp: Zp,
    p0: [u64; 3],
    dirs: Vec<[Mat; 3]>,
    k: usize,
}

impl LineFamily {
    fn new<R: Rng + ?Sized>(m: &RepMatrix, count: usize, zp: Zp, coef: &[Mat; 4], rng: &mut R) -> Result<LineFamily> {
        let (k, cols) = (m.rows(), m.cols());
        let count = if cols == k { 1 } else { count.max(2) };
        for _attempt in 0..4 {
            let p0 = [zp.p; 3].map(|p| rng.gen_range(1..p));
            let a_full = combine(zp, &[&coef[0], &coef[1], &coef[2], &coef[3]], &[p0[0], p0[1], p0[2], 1]);
            let mut dirs = Vec::with_capacity(count);
            for _ in 0..4 * count {
                let r: Mat = if cols == k {
                    (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()
                } else {
                    (0..cols).map(|_| (0..k).map(|_| rng.gen_range(0..zp.p)).collect()).collect()
                };
                let Some(inv) = inverse(zp, &mat_mul(zp, &a_full, &r)) else {
                    continue;
                };
                dirs.push(std::array::from_fn(|i| mat_mul(zp, &inv, &mat_mul(zp, &coef[i], &r))));
                if dirs.len() == count {
                    return Ok(LineFamily { zp, p0, dirs, k });
                }
            }
        }
        Err(Error::AllMinorsZero)
    }

    /// `D(P0 + lambda (y1, y2, 1, 0)) / D(P0)`.
    fn restricted_gcd(&self, y1: u64, y2: u64) -> Vec<u64> {
        let zp = self.zp;
        let mut g: Vec<u64> = Vec::new();
        for [c1, c2, c3] in &self.dirs {
            let c = combine(zp, &[c1, c2, c3], &[y1, y2, 1]);
            let cp = charpoly(zp, c);
            // det(I + lambda C) = sum_j (-1)^j a_{k-j} lambda^j
            let r: Vec<u64> =
                (0..=self.k).map(|j| if j % 2 == 0 { cp[self.k - j] } else { zp.neg(cp[self.k - j]) }).collect();
            g = if g.is_empty() { trim(r) } else { poly_gcd(zp, &g, &r) };
        }
        let inv = zp.inv(g[0]);
        g.iter().map(|&x| zp.mul(x, inv)).collect()
    }

    /// Degree of the restricted gcd, median over three random lines.
    fn probe_degree<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let mut d: Vec<usize> = (0..3)
            .map(|_| self.restricted_gcd(rng.gen_range(0..self.zp.p), rng.gen_range(0..self.zp.p)).len() - 1)
            .collect();
        d.sort_unstable();
        d[1]
    }
}

/// Total degree of the gcd of the maximal minors, computed modulo a prime.
pub(crate) fn gcd_degree<R: Rng + ?Sized>(m: &RepMatrix, rng: &mut R) -> Result<usize> {
    for _ in 0..8 {
        let zp = match m.field() {
            Field::Prime(q) => Zp::new(q),
            Field::Rationals => Zp::new(random_word_prime(rng)),
        };
        if let Some(coef) = coefficient_matrices(m, zp) {
            return Ok(LineFamily::new(m, 2, zp, &coef, rng)?.probe_degree(rng));
        }
    }
    Err(Error::Interpolation("no usable prime".into()))
}

fn distinct<R: Rng + ?Sized>(zp: Zp, n: usize, rng: &mut R) -> Vec<u64> {
    let mut v: Vec<u64> = Vec::with_capacity(n);
    while v.len() < n {
        let x = rng.gen_range(0..zp.p);
        if !v.contains(&x) {
            v.push(x);
        }
    }
    v
}

fn binomials(zp: Zp, n: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..=n {
        c[i][0] = 1 % zp.p;
        for j in 1..=i {
            c[i][j] = zp.add(c[i - 1][j - 1], if j < i { c[i - 1][j] } else { 0 });
        }
    }
    c
}

/// `D mod p` with leading coefficient 1, or `None` for an unlucky prime or point.
fn image_mod<R: Rng + ?Sized>(m: &RepMatrix, n: usize, zp: Zp, rng: &mut R) -> Result<Option<BTreeMap<Mono, u64>>> {
    let Some(coef) = coefficient_matrices(m, zp) else {
        return Ok(None);
    };
    let fam = LineFamily::new(m, n, zp, &coef, rng)?;
    let delta = fam.probe_degree(rng);

    let ys1 = distinct(zp, delta + 1, rng);
    let ys2 = distinct(zp, delta + 1, rng);
    // vals[j][a][b] = coefficient of lambda^j on the line (ys1[a], ys2[b]).
    let mut vals = vec![vec![vec![0u64; delta + 1]; delta + 1]; delta + 1];
    for (a, &y1) in ys1.iter().enumerate() {
        for (b, &y2) in ys2.iter().enumerate() {
            let g = fam.restricted_gcd(y1, y2);
            if g.len() > delta + 1 {
                return Ok(None);
            }
            for (j, &c) in g.iter().enumerate() {
                vals[j][a][b] = c;
            }
        }
    }

    // Taylor terms: H_j(z1, z2, 1) = sum c[alpha][beta] z1^alpha z2^beta.
    let mut poly: HashMap<[u32; 4], u64> = HashMap::new();
    for (j, grid) in vals.iter().enumerate() {
        let in_y1: Vec<Vec<u64>> = (0..=delta)
            .map(|b| interpolate(zp, &ys1, &(0..=delta).map(|a| grid[a][b]).collect::<Vec<_>>()))
            .collect();
        for alpha in 0..=delta {
            let col: Vec<u64> = (0..=delta).map(|b| in_y1[b][alpha]).collect();
            let coeffs = interpolate(zp, &ys2, &col);
            for (beta, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if alpha + beta > j {
                    return Ok(None);
                }
                let mono = [alpha as u32, beta as u32, (j - alpha - beta) as u32, (delta - j) as u32];
                poly.insert(mono, c);
            }
        }
    }

    // z_i = x_i - p_i x4
    let binom = binomials(zp, delta);
    for (i, &pi) in fam.p0.iter().enumerate() {
        let shift = zp.neg(pi);
        let mut next: HashMap<[u32; 4], u64> = HashMap::with_capacity(poly.len());
        for (mono, c) in poly {
            let e = mono[i] as usize;
            let mut pw = 1 % zp.p;
            for kk in 0..=e {
                let t = zp.mul(c, zp.mul(binom[e][kk], pw));
                if t != 0 {
                    let mut mm = mono;
                    mm[i] -= kk as u32;
                    mm[3] += kk as u32;
                    let slot = next.entry(mm).or_insert(0);
                    *slot = zp.add(*slot, t);
                }
                pw = zp.mul(pw, shift);
            }
        }
        poly = next;
    }
    let mut img: BTreeMap<Mono, u64> = poly.into_iter().filter(|&(_, c)| c != 0).map(|(m, c)| (Mono(m), c)).collect();
    let Some((_, &lead)) = img.iter().next_back() else {
        return Ok(None);
    };
    let inv = zp.inv(lead);
    for c in img.values_mut() {
        *c = zp.mul(*c, inv);
    }
    Ok(Some(img))
}
