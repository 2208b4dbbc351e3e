//! The Segre quotient ring `A = K[X1..X4]/(X1*X4 - X2*X3)`.
//!
//! Elements are kept in the normal form where no monomial is divisible by
//! `X1*X4`. Inside a fixed degree, monomials are ordered lexicographically on
//! `(a, b, c)` descending, which fixes row and column orders downstream.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::biparam::BiHomPoly;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::tpoly::{Mono, TPoly, VarSet};

/// Homogeneous element of `A` of degree `n`, in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreElem {
    degree: u32,
    poly: TPoly,
}

/// Rewrites `X1^a X2^b X3^c X4^e` with `X1*X4 -> X2*X3` until normal.
pub fn reduce_mono(m: Mono) -> Mono {
    let [a, b, c, e] = m.0;
    let k = a.min(e);
    Mono([a - k, b + k, c + k, e - k])
}

pub fn is_normal(m: &Mono) -> bool {
    m.0[0] == 0 || m.0[3] == 0
}

impl SegreElem {
    pub fn zero(degree: u32, field: Field) -> Self {
        SegreElem { degree, poly: TPoly::zero(VarSet::X, field) }
    }

    /// Reduces arbitrary homogeneous terms of degree `degree` to normal form.
    pub fn from_terms(degree: u32, field: Field, terms: impl IntoIterator<Item = (Mono, FieldElem)>) -> Result<Self> {
        let mut poly = TPoly::zero(VarSet::X, field);
        for (m, c) in terms {
            if m.degree() != degree {
                return Err(Error::InvalidArgument(format!("monomial of degree {} in degree {degree}", m.degree())));
            }
            poly.add_term(reduce_mono(m), c);
        }
        Ok(SegreElem { degree, poly })
    }

    pub fn monomial(m: Mono, c: FieldElem) -> Self {
        let degree = m.degree();
        let field = c.field();
        SegreElem::from_terms(degree, field, [(m, c)]).expect("degree matches")
    }

    /// `X_i` for `i` in `0..4`.
    pub fn var(i: usize, field: Field) -> Self {
        SegreElem::monomial(Mono::var(i), field.one())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.poly.field()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &FieldElem)> {
        self.poly.terms()
    }

    pub fn coeff(&self, m: &Mono) -> FieldElem {
        self.poly.coeff(m)
    }

    pub fn as_poly(&self) -> &TPoly {
        &self.poly
    }

    pub fn add(&self, o: &SegreElem) -> Result<SegreElem> {
        if self.degree != o.degree {
            return Err(Error::InvalidArgument("adding elements of different degree".into()));
        }
        Ok(SegreElem { degree: self.degree, poly: self.poly.try_add(&o.poly)? })
    }

    pub fn scale(&self, c: &FieldElem) -> SegreElem {
        SegreElem { degree: self.degree, poly: self.poly.scale(c) }
    }

    /// Product in `A`, reduced to normal form.
    pub fn nf_mul(&self, o: &SegreElem) -> SegreElem {
        let field = self.field();
        let mut poly = TPoly::zero(VarSet::X, field);
        for (ma, ca) in self.poly.terms() {
            for (mb, cb) in o.poly.terms() {
                poly.add_term(reduce_mono(ma.mul(mb)), ca * cb);
            }
        }
        SegreElem { degree: self.degree + o.degree, poly }
    }

    /// Coordinates in [`basis`]`(degree)`.
    pub fn coords(&self) -> Vec<FieldElem> {
        let b = basis(self.degree);
        let mut v = vec![self.field().zero(); b.len()];
        for (m, c) in self.poly.terms() {
            v[b.index_of(m).expect("normal form monomial")] = c.clone();
        }
        v
    }

    pub fn from_coords(degree: u32, field: Field, coords: &[FieldElem]) -> SegreElem {
        let b = basis(degree);
        assert_eq!(coords.len(), b.len());
        let poly = TPoly::from_terms(VarSet::X, field, b.monomials().iter().copied().zip(coords.iter().cloned()));
        SegreElem { degree, poly }
    }
}

impl std::fmt::Display for SegreElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// `omega`: bi-form of bidegree `(n,n)` to its normal form in `A_n`.
///
/// `s^i u^(n-i) t^j v^(n-j) -> X1^(i+j-n+k) X2^(n-j-k) X3^(n-i-k) X4^k`
/// with `k = max(0, n-i-j)`; coefficients are carried over unchanged.
pub fn omega(f: &BiHomPoly) -> Result<SegreElem> {
    let (n1, n2) = f.bidegree();
    if n1 != n2 {
        return Err(Error::UnequalBidegree(n1, n2));
    }
    let n = n1 as i64;
    let mut poly = TPoly::zero(VarSet::X, f.field());
    for (m, c) in f.terms() {
        let (i, j) = (m.0[0] as i64, m.0[2] as i64);
        let k = (n - i - j).max(0);
        let x = Mono([(i + j - n + k) as u32, (n - j - k) as u32, (n - i - k) as u32, k as u32]);
        poly.add_term(x, c.clone());
    }
    Ok(SegreElem { degree: n1, poly })
}

/// `theta`: `X1 -> st, X2 -> sv, X3 -> ut, X4 -> uv`.
pub fn theta(x: &SegreElem) -> BiHomPoly {
    let field = x.field();
    let poly = TPoly::from_terms(
        VarSet::Param,
        field,
        x.terms().map(|(m, c)| {
            let [a, b, cc, e] = m.0;
            (Mono([a + b, cc + e, a + cc, b + e]), c.clone())
        }),
    );
    BiHomPoly::new(poly, (x.degree, x.degree)).expect("theta lands in bidegree (n,n)")
}

/// Normal-form monomials of `A_n` in canonical order, with an index.
#[derive(Debug)]
pub struct SegreBasis {
    degree: u32,
    monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl SegreBasis {
    fn build(n: u32) -> Self {
        let mut monos = Vec::with_capacity(((n + 1) * (n + 1)) as usize);
        for a in (0..=n).rev() {
            for b in (0..=n - a).rev() {
                for c in (0..=n - a - b).rev() {
                    let e = n - a - b - c;
                    if a == 0 || e == 0 {
                        monos.push(Mono([a, b, c, e]));
                    }
                }
            }
        }
        let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        SegreBasis { degree: n, monos, index }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn monomials(&self) -> &[Mono] {
        &self.monos
    }

    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Basis of `A_n`, memoized per degree.
pub fn basis(n: u32) -> Arc<SegreBasis> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<SegreBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let mut guard = cache.lock().expect("basis cache poisoned");
    guard.entry(n).or_insert_with(|| Arc::new(SegreBasis::build(n))).clone()
}

/// `dim A_n = (n+1)^2`.
pub fn dim(n: u32) -> usize {
    ((n + 1) * (n + 1)) as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tpoly::TPoly;

    fn bf(text: &str, n: u32) -> BiHomPoly {
        BiHomPoly::new(TPoly::parse(text, VarSet::Param, Field::Rationals).unwrap(), (n, n)).unwrap()
    }

    fn x(i: usize) -> SegreElem {
        SegreElem::var(i, Field::Rationals)
    }

    #[test]
    fn nf_mul_examples() {
        assert_eq!(x(0).nf_mul(&x(3)), x(1).nf_mul(&x(2)));
        assert_eq!(x(0).nf_mul(&x(3)).to_string(), "X2*X3");
        assert_eq!(x(0).nf_mul(&x(1)).to_string(), "X1*X2");
        let x1x4 = x(0).nf_mul(&x(3));
        assert_eq!(x(3).nf_mul(&x1x4).to_string(), "X2*X3*X4");
    }

    #[test]
    fn omega_examples() {
        assert_eq!(omega(&bf("s*t", 1)).unwrap().to_string(), "X1");
        let w = omega(&bf("s^2*t*v", 2)).unwrap();
        assert_eq!(w.to_string(), "X1*X2");
        assert_eq!(theta(&w), bf("s^2*t*v", 2));
        let w = omega(&bf("u^2*t*v", 2)).unwrap();
        assert_eq!(w.to_string(), "X3*X4");
        assert_eq!(theta(&w), bf("u^2*t*v", 2));
        let mixed = BiHomPoly::new(TPoly::parse("s*t^2", VarSet::Param, Field::Rationals).unwrap(), (1, 2)).unwrap();
        assert!(matches!(omega(&mixed), Err(Error::UnequalBidegree(1, 2))));
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&x(0)), bf("s*t", 1));
        assert_eq!(theta(&x(1).nf_mul(&x(2))), bf("s*u*t*v", 2));
        assert_eq!(theta(&x(1).nf_mul(&x(1))), bf("s^2*v^2", 2));
    }

    #[test]
    fn basis_examples() {
        let b1 = basis(1);
        let names: Vec<String> = b1.monomials().iter().map(|m| m.fmt_with(VarSet::X.names())).collect();
        assert_eq!(names, ["X1", "X2", "X3", "X4"]);
        assert_eq!(basis(2).len(), 9);
        assert_eq!(basis(3).len(), 16);
        assert_eq!(basis(0).monomials(), &[Mono::ONE]);
        for n in 0..=12 {
            assert_eq!(basis(n).len(), dim(n));
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let e = omega(&bf("3*s^2*t*v - u^2*t^2 + 1/2*s*u*v^2", 2)).unwrap();
        let c = e.coords();
        assert_eq!(SegreElem::from_coords(2, Field::Rationals, &c), e);
    }
}
