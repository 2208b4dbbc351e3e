//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Upper bound (exclusive) for user supplied prime moduli.
pub const MAX_MODULUS: u64 = 1 << 62;

/// The coefficient field of a computation.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Validated prime field constructor.
    pub fn prime(p: u64) -> Result<Field> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                FieldElem::Mod(ModInt { value: r, modulus: p })
            }
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> FieldElem {
        match self {
            Field::Rationals => FieldElem::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => FieldElem::Mod(ModInt::from_bigint(n, p)),
        }
    }

    /// Maps a rational into this field. Fails over GF(p) when p divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<FieldElem> {
        match self {
            Field::Rationals => Ok(FieldElem::Rat(q.clone())),
            Field::Prime(p) => {
                let den = ModInt::from_bigint(q.denom(), p);
                if den.value == 0 {
                    return Err(Error::DenominatorVanishes(p));
                }
                let num = ModInt::from_bigint(q.numer(), p);
                Ok(FieldElem::Mod(num.mul(den.inv())))
            }
        }
    }

    /// A uniformly random element drawn from a small symmetric range (rationals)
    /// or from the whole field (prime fields).
    pub fn random<R: Rng + ?Sized>(self, rng: &mut R, bound: i64) -> FieldElem {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-bound..=bound)),
            Field::Prime(p) => FieldElem::Mod(ModInt { value: rng.gen_range(0..p), modulus: p }),
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Field::Rationals)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF {p}"),
        }
    }
}

/// Residue modulo a prime below 2^62.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: u64,
    modulus: u64,
}

impl ModInt {
    pub fn new(value: u64, modulus: u64) -> Self {
        ModInt { value: value % modulus, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn from_bigint(n: &BigInt, p: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(p));
        ModInt { value: r.to_u64().expect("residue fits in u64"), modulus: p }
    }

    fn add(self, o: Self) -> Self {
        ModInt { value: add_mod(self.value, o.value, self.modulus), modulus: self.modulus }
    }

    fn sub(self, o: Self) -> Self {
        ModInt { value: sub_mod(self.value, o.value, self.modulus), modulus: self.modulus }
    }

    fn mul(self, o: Self) -> Self {
        ModInt { value: mul_mod(self.value, o.value, self.modulus), modulus: self.modulus }
    }

    fn neg(self) -> Self {
        ModInt { value: sub_mod(0, self.value, self.modulus), modulus: self.modulus }
    }

    fn inv(self) -> Self {
        assert!(self.value != 0, "inverse of zero in GF({})", self.modulus);
        ModInt { value: inv_mod(self.value, self.modulus), modulus: self.modulus }
    }
}

/// An element of [`Field`].
///
/// Rationals are always reduced with a positive denominator (maintained by
/// `num_rational`). Mixing elements of different fields in one operation is a
/// programming error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(BigRational),
    Mod(ModInt),
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rat(_) => Field::Rationals,
            FieldElem::Mod(m) => Field::Prime(m.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_zero(),
            FieldElem::Mod(m) => m.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_one(),
            FieldElem::Mod(m) => m.value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> FieldElem {
        match self {
            FieldElem::Rat(q) => {
                assert!(!q.is_zero(), "inverse of zero rational");
                FieldElem::Rat(q.recip())
            }
            FieldElem::Mod(m) => FieldElem::Mod(m.inv()),
        }
    }

    pub fn pow(&self, mut e: u32) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rat(q) => Some(q),
            FieldElem::Mod(_) => None,
        }
    }

    pub fn as_modint(&self) -> Option<ModInt> {
        match self {
            FieldElem::Rat(_) => None,
            FieldElem::Mod(m) => Some(*m),
        }
    }

    /// Sign used when printing: true when the element should be shown with a leading minus.
    pub fn is_negative(&self) -> bool {
        match self {
            FieldElem::Rat(q) => q.is_negative(),
            FieldElem::Mod(_) => false,
        }
    }

    /// Absolute value over Q; identity over GF(p).
    pub fn abs(&self) -> FieldElem {
        match self {
            FieldElem::Rat(q) => FieldElem::Rat(q.abs()),
            m => m.clone(),
        }
    }

    /// Reduction of a rational into GF(p).
    pub fn reduce_mod(&self, p: u64) -> Result<FieldElem> {
        match self {
            FieldElem::Rat(q) => Field::Prime(p).from_rational(q),
            FieldElem::Mod(m) if m.modulus == p => Ok(self.clone()),
            FieldElem::Mod(_) => Err(Error::FieldMismatch),
        }
    }

    /// Parses `int` or `int/uint` into the given field.
    pub fn parse(text: &str, field: Field) -> Result<FieldElem> {
        let q = parse_rational(text)
            .ok_or_else(|| Error::Parse { line: 0, col: 0, msg: format!("bad number `{text}`") })?;
        field.from_rational(&q)
    }

    fn check(&self, other: &FieldElem) {
        if self.field() != other.field() {
            panic!("field mismatch: {} vs {}", self.field(), other.field());
        }
    }
}

pub(crate) fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with('-') || d.starts_with('+') {
                return None;
            }
            d.parse().ok()?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rat(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Mod(m) => write!(f, "{}", m.value),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $rat:expr, $modop:ident) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.check(rhs);
                match (self, rhs) {
                    (FieldElem::Rat(a), FieldElem::Rat(b)) => FieldElem::Rat($rat(a, b)),
                    (FieldElem::Mod(a), FieldElem::Mod(b)) => FieldElem::Mod(a.$modop(*b)),
                    _ => unreachable!(),
                }
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b: &BigRational| a + b, add);
binop!(Sub, sub, |a: &BigRational, b: &BigRational| a - b, sub);
binop!(Mul, mul, |a: &BigRational, b: &BigRational| a * b, mul);

impl Div<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self * &rhs.inv()
    }
}

impl Div<FieldElem> for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        &self / &rhs
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rat(q) => FieldElem::Rat(-q),
            FieldElem::Mod(m) => FieldElem::Mod(m.neg()),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

// Raw modular helpers, shared with the modular evaluation code.

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "{a} is not invertible modulo {p}");
    t.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A random prime in `[2^61, 2^62)`.
pub fn random_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 61)..MAX_MODULUS) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// Smallest denominator rational congruent to `a` modulo `m`, if one with
/// |num|, den <= sqrt(m/2) exists.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !(&r1 - a * &t1).mod_floor(m).is_zero() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn rationals_are_reduced() {
        let q = FieldElem::parse("6/-4", Field::Rationals);
        assert!(q.is_err());
        let q = FieldElem::parse("-6/4", Field::Rationals).unwrap();
        assert_eq!(q.to_string(), "-3/2");
        let r = &q * &Field::Rationals.from_i64(2);
        assert_eq!(r.to_string(), "-3");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!((&a * &a.inv()), f.one());
        assert_eq!(f.from_i64(-1).to_string(), "6");
        let half = FieldElem::parse("1/2", f).unwrap();
        assert_eq!(half.to_string(), "4");
        assert!(FieldElem::parse("1/7", f).is_err());
    }

    #[test]
    fn modulus_validation() {
        assert!(Field::prime(12).is_err());
        assert!(Field::prime(1 << 62).is_err());
        assert!(Field::prime(2_305_843_009_213_693_951).is_ok());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(!is_prime(3_215_031_751));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let p = random_prime(&mut rng);
        assert!(p >= 1 << 61 && p < MAX_MODULUS);
    }

    #[test]
    fn reconstruct_small_fraction() {
        let p = BigInt::from(1_000_000_007u64);
        let q = BigRational::new(BigInt::from(-22), BigInt::from(7));
        let img = Field::Prime(1_000_000_007).from_rational(&q).unwrap();
        let a = BigInt::from(img.as_modint().unwrap().value());
        assert_eq!(rational_reconstruction(&a, &p), Some(q));
    }
}
