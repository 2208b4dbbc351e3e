//! Bi-homogeneous parametrizations `P^1 x P^1 -> P^3`.
//!
//! Input files look like
//!
//! ```text
//! # comment
//! degree: 2 2
//! field: QQ
//! f1: u^2*t*v + s^2*t*v
//! f2: u^2*t^2 + s*u*v^2
//! f3: s^2*v^2 + s^2*t^2
//! f4: s^2*t*v
//! ```
//!
//! When none of the four polynomials mentions `u` or `v`, the input is read
//! as affine in `s, t` and bi-homogenized up to the declared bidegree.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::parse::parse_poly_at;
use crate::tpoly::{Mono, TPoly, VarSet};

const S: usize = 0;
const U: usize = 1;
const T: usize = 2;
const V: usize = 3;

/// Polynomial in `s,u,t,v`, homogeneous of degree `d1` in `(s,u)` and `d2` in `(t,v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiHomPoly {
    bidegree: (u32, u32),
    poly: TPoly,
}

impl BiHomPoly {
    /// Wraps `poly`, checking bi-homogeneity of every term.
    pub fn new(poly: TPoly, bidegree: (u32, u32)) -> Result<Self> {
        if poly.vars() != VarSet::Param {
            return Err(Error::VariableMismatch);
        }
        let (d1, d2) = bidegree;
        if let Some((m, _)) = poly.terms().find(|(m, _)| m.0[S] + m.0[U] != d1 || m.0[T] + m.0[V] != d2) {
            return Err(Error::BidegreeMismatch {
                name: "polynomial".into(),
                term: m.fmt_with(VarSet::Param.names()),
                d1,
                d2,
            });
        }
        Ok(BiHomPoly { bidegree, poly })
    }

    pub fn zero(bidegree: (u32, u32), field: Field) -> Self {
        BiHomPoly { bidegree, poly: TPoly::zero(VarSet::Param, field) }
    }

    /// Coefficient of `s^i u^(d1-i) t^j v^(d2-j)`.
    pub fn coeff(&self, i: u32, j: u32) -> FieldElem {
        let (d1, d2) = self.bidegree;
        self.poly.coeff(&Mono([i, d1 - i, j, d2 - j]))
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.bidegree
    }

    pub fn as_poly(&self) -> &TPoly {
        &self.poly
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

    pub fn add(&self, o: &BiHomPoly) -> Result<BiHomPoly> {
        if self.bidegree != o.bidegree {
            return Err(Error::InvalidArgument("adding bi-forms of different bidegree".into()));
        }
        BiHomPoly::new(self.poly.try_add(&o.poly)?, self.bidegree)
    }

    pub fn mul(&self, o: &BiHomPoly) -> Result<BiHomPoly> {
        let bd = (self.bidegree.0 + o.bidegree.0, self.bidegree.1 + o.bidegree.1);
        BiHomPoly::new(self.poly.try_mul(&o.poly)?, bd)
    }

    /// `s <- s^a, u <- u^a, t <- t^b, v <- v^b`.
    pub fn substitute_powers(&self, a: u32, b: u32) -> BiHomPoly {
        let poly = TPoly::from_terms(
            VarSet::Param,
            self.field(),
            self.poly.terms().map(|(m, c)| (Mono([m.0[S] * a, m.0[U] * a, m.0[T] * b, m.0[V] * b]), c.clone())),
        );
        BiHomPoly::new(poly, (self.bidegree.0 * a, self.bidegree.1 * b)).expect("substitution keeps bi-homogeneity")
    }

    pub fn eval(&self, point: &[FieldElem; 4]) -> FieldElem {
        self.poly.eval(point)
    }
}

impl fmt::Display for BiHomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Four bi-forms of one shared bidegree, not all zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parametrization {
    f: [BiHomPoly; 4],
    field: Field,
}

impl Parametrization {
    pub fn new(f: [BiHomPoly; 4]) -> Result<Self> {
        let bd = f[0].bidegree;
        let field = f[0].field();
        if f.iter().any(|p| p.bidegree != bd) {
            return Err(Error::InvalidArgument("coordinate polynomials have different bidegrees".into()));
        }
        if f.iter().any(|p| p.field() != field) {
            return Err(Error::FieldMismatch);
        }
        if f.iter().all(BiHomPoly::is_zero) {
            return Err(Error::AllZero);
        }
        Ok(Parametrization { f, field })
    }

    /// Every coefficient drawn by [`Field::random`]; over Q from `[-bound, bound]`.
    pub fn random_dense<R: rand::Rng + ?Sized>(bidegree: (u32, u32), field: Field, bound: i64, rng: &mut R) -> Result<Self> {
        let (d1, d2) = bidegree;
        let f = std::array::from_fn(|_| {
            let mut terms = Vec::new();
            for i in 0..=d1 {
                for j in 0..=d2 {
                    terms.push((Mono([i, d1 - i, j, d2 - j]), field.random(rng, bound)));
                }
            }
            BiHomPoly { bidegree, poly: TPoly::from_terms(VarSet::Param, field, terms) }
        });
        Parametrization::new(f)
    }

    /// Builds a parametrization from polynomial text over QQ, `(d1,d2)` given.
    pub fn from_strs(bidegree: (u32, u32), polys: [&str; 4]) -> Result<Self> {
        let mut text = format!("degree: {} {}\n", bidegree.0, bidegree.1);
        for (i, p) in polys.iter().enumerate() {
            text.push_str(&format!("f{}: {p}\n", i + 1));
        }
        parse_parametrization(&text)
    }

    pub fn polys(&self) -> &[BiHomPoly; 4] {
        &self.f
    }

    pub fn bidegree(&self) -> (u32, u32) {
        self.f[0].bidegree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Image of a parameter point `(s,u,t,v)`.
    pub fn eval(&self, point: &[FieldElem; 4]) -> [FieldElem; 4] {
        std::array::from_fn(|i| self.f[i].eval(point))
    }

    /// The same parametrization with coefficients mapped into GF(p).
    pub fn reduce_mod(&self, p: u64) -> Result<Parametrization> {
        let field = Field::prime(p)?;
        let mut out = Vec::with_capacity(4);
        for g in &self.f {
            let poly = g.poly.map_coeffs(field, |c| c.reduce_mod(p))?;
            out.push(BiHomPoly { bidegree: g.bidegree, poly });
        }
        Parametrization::new(out.try_into().expect("four polynomials"))
    }

    /// Canonical text form; parses back to an equal value.
    pub fn to_text(&self) -> String {
        let (d1, d2) = self.bidegree();
        let mut out = format!("degree: {d1} {d2}\n");
        if let Field::Prime(p) = self.field {
            out.push_str(&format!("field: GF {p}\n"));
        }
        for (i, f) in self.f.iter().enumerate() {
            out.push_str(&format!("f{}: {}\n", i + 1, f));
        }
        out
    }
}

/// Reads the parametrization file format.
pub fn parse_parametrization(text: &str) -> Result<Parametrization> {
    let mut bidegree: Option<(u32, u32)> = None;
    let mut field = Field::Rationals;
    let mut raw: [Option<(String, usize, usize)>; 4] = Default::default();

    for (lineno, full) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = full.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, rest)) = line.split_once(':') else {
            return Err(Error::Parse { line: lineno, col: 1, msg: "expected `key: value`".into() });
        };
        let col = key.len() + 2;
        match key.trim() {
            "degree" => {
                let nums: Vec<&str> = rest.split_whitespace().collect();
                let parsed: Option<Vec<u32>> = nums.iter().map(|n| n.parse().ok()).collect();
                match parsed.as_deref() {
                    Some([a, b]) => bidegree = Some((*a, *b)),
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            col,
                            msg: "expected `degree: <d1> <d2>`".into(),
                        })
                    }
                }
            }
            "field" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                field = match parts.as_slice() {
                    ["QQ"] => Field::Rationals,
                    ["GF", p] => {
                        let p: u64 = p.parse().map_err(|_| Error::Parse {
                            line: lineno,
                            col,
                            msg: format!("bad modulus `{p}`"),
                        })?;
                        Field::prime(p)?
                    }
                    _ => {
                        return Err(Error::Parse {
                            line: lineno,
                            col,
                            msg: "expected `field: QQ` or `field: GF <p>`".into(),
                        })
                    }
                };
            }
            k @ ("f1" | "f2" | "f3" | "f4") => {
                let idx = (k.as_bytes()[1] - b'1') as usize;
                if raw[idx].is_some() {
                    return Err(Error::Parse { line: lineno, col: 1, msg: format!("duplicate {k}") });
                }
                raw[idx] = Some((rest.to_string(), lineno, col));
            }
            other => {
                return Err(Error::Parse { line: lineno, col: 1, msg: format!("unknown key `{other}`") });
            }
        }
    }

    let (d1, d2) = bidegree.ok_or(Error::Parse { line: 1, col: 1, msg: "missing `degree:` header".into() })?;
    let mut polys = Vec::with_capacity(4);
    for (i, r) in raw.iter().enumerate() {
        let (text, line, col) = r.as_ref().ok_or_else(|| Error::Parse {
            line: text_lines(text),
            col: 1,
            msg: format!("missing f{}", i + 1),
        })?;
        polys.push(parse_poly_at(text, VarSet::Param, field, *line, *col)?);
    }
    let affine = polys.iter().all(|p| p.degree_in(U) == 0 && p.degree_in(V) == 0);

    let mut f = Vec::with_capacity(4);
    for (i, p) in polys.into_iter().enumerate() {
        let p = if affine { bihomogenize(&p, d1, d2, i)? } else { p };
        let b = BiHomPoly::new(p, (d1, d2)).map_err(|e| match e {
            Error::BidegreeMismatch { term, d1, d2, .. } => {
                Error::BidegreeMismatch { name: format!("f{}", i + 1), term, d1, d2 }
            }
            e => e,
        })?;
        f.push(b);
    }
    Parametrization::new(f.try_into().expect("four polynomials"))
}

fn text_lines(text: &str) -> usize {
    text.lines().count().max(1)
}

fn bihomogenize(p: &TPoly, d1: u32, d2: u32, idx: usize) -> Result<TPoly> {
    let mut terms = Vec::with_capacity(p.len());
    for (m, c) in p.terms() {
        let (i, j) = (m.0[S], m.0[T]);
        if i > d1 || j > d2 {
            return Err(Error::BidegreeMismatch {
                name: format!("f{}", idx + 1),
                term: m.fmt_with(VarSet::Param.names()),
                d1,
                d2,
            });
        }
        terms.push((Mono([i, d1 - i, j, d2 - j]), c.clone()));
    }
    Ok(TPoly::from_terms(VarSet::Param, p.field(), terms))
}

/// gcd of the four coordinate polynomials, canonicalized. Constant iff the
/// base locus is finite.
pub fn gcd_of_inputs(p: &Parametrization) -> BiHomPoly {
    let mut g = TPoly::zero(VarSet::Param, p.field);
    for f in &p.f {
        g = g.mvgcd(&f.poly).expect("same ring");
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    let bd = g
        .leading_term()
        .map(|(m, _)| (m.0[S] + m.0[U], m.0[T] + m.0[V]))
        .unwrap_or((0, 0));
    BiHomPoly::new(g, bd).expect("factors of bi-forms are bi-forms")
}

/// Brings a mixed bidegree `(d1,d2)` to `(L,L)`, `L = lcm(d1,d2)`, by
/// `s,u <- s^(L/d1), u^(L/d1)` and `t,v <- t^(L/d2), v^(L/d2)`.
///
/// The determinant of the lifted problem represents the implicit equation
/// raised to an extra power `L / gcd(d1,d2)`.
pub fn lift_mixed(p: &Parametrization) -> Result<Parametrization> {
    let (d1, d2) = p.bidegree();
    if d1 == 0 || d2 == 0 {
        return Err(Error::InvalidArgument(format!("cannot lift bidegree ({d1},{d2})")));
    }
    if d1 == d2 {
        return Ok(p.clone());
    }
    let l = d1.lcm(&d2);
    let f = std::array::from_fn(|i| p.f[i].substitute_powers(l / d1, l / d2));
    Parametrization::new(f)
}

/// Extra exponent `lcm(d1,d2)/gcd(d1,d2)` that the lift introduces.
pub fn lift_exponent(bidegree: (u32, u32)) -> u32 {
    let (d1, d2) = bidegree;
    d1.lcm(&d2) / d1.gcd(&d2)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const WORKED: &str = "degree: 2 2\n\
        f1: u^2*t*v + s^2*t*v\n\
        f2: u^2*t^2 + s*u*v^2\n\
        f3: s^2*v^2 + s^2*t^2\n\
        f4: s^2*t*v\n";

    #[test]
    fn parses_worked_fragment() {
        let p = parse_parametrization(WORKED).unwrap();
        assert_eq!(p.bidegree(), (2, 2));
        let f4 = &p.polys()[3];
        assert_eq!(f4.as_poly().len(), 1);
        assert!(f4.coeff(2, 1).is_one());
    }

    #[test]
    fn segre_map() {
        let p = parse_parametrization("degree: 1 1\nf1: s*t\nf2: s*v\nf3: u*t\nf4: u*v\n").unwrap();
        assert!(p.polys()[0].coeff(1, 1).is_one());
        assert!(p.polys()[1].coeff(1, 0).is_one());
        assert!(p.polys()[2].coeff(0, 1).is_one());
        assert!(p.polys()[3].coeff(0, 0).is_one());
        assert!(gcd_of_inputs(&p).as_poly().is_constant());
    }

    #[test]
    fn affine_input_is_bihomogenized() {
        let text = "degree: 2 3\n\
            f1: (t+t^2)*(s-1)^2+(1+s*t-s^2*t)*(t-1)^2\n\
            f2: (-t-t^2)*(s-1)^2 + (-1+s*t+s^2*t)*(t-1)^2\n\
            f3: (t-t^2)*(s-1)^2 + (-1-s*t+s^2*t)*(t-1)^2\n\
            f4: (t+t^2)*(s-1)^2 + (-1-s*t-s^2*t)*(t-1)^2\n";
        let p = parse_parametrization(text).unwrap();
        assert_eq!(p.bidegree(), (2, 3));
        for f in p.polys() {
            for (m, _) in f.terms() {
                assert_eq!(m.0[S] + m.0[U], 2);
                assert_eq!(m.0[T] + m.0[V], 3);
            }
        }
        // constant term 1*(t-1)^2 -> u^2 * (t - v)^2 * v
        assert_eq!(p.polys()[0].coeff(0, 0), Field::Rationals.one());
    }

    #[test]
    fn error_paths() {
        let bad = "degree: 1 1\nf1: s*t\nf2: s*v\nf3: u*t*t\nf4: u*v\n";
        assert!(matches!(parse_parametrization(bad), Err(Error::BidegreeMismatch { .. })));
        let zero = "degree: 1 1\nf1: 0\nf2: 0\nf3: 0\nf4: 0\n";
        assert!(matches!(parse_parametrization(zero), Err(Error::AllZero)));
        let syntax = "degree: 1 1\nf1: s*t\nf2: s**v\nf3: u*t\nf4: u*v\n";
        match parse_parametrization(syntax) {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (3, 7)),
            other => panic!("{other:?}"),
        }
        let missing = "degree: 1 1\nf1: s*t\n";
        assert!(matches!(parse_parametrization(missing), Err(Error::Parse { .. })));
        let modulus = "degree: 1 1\nfield: GF 15\nf1: s*t\nf2: s*v\nf3: u*t\nf4: u*v\n";
        assert!(matches!(parse_parametrization(modulus), Err(Error::InvalidModulus(15))));
    }

    #[test]
    fn common_factor_is_found() {
        let p = Parametrization::from_strs(
            (2, 2),
            ["s*t*s*t", "s*t*s*v", "s*t*u*t", "s*t*u*v"],
        )
        .unwrap();
        assert_eq!(gcd_of_inputs(&p).to_string(), "s*t");
        let q = parse_parametrization(WORKED).unwrap();
        assert!(gcd_of_inputs(&q).as_poly().is_constant());
    }

    #[test]
    fn lifting() {
        let text = "degree: 2 3\nf1: s^2*t^3\nf2: u^2*v^3\nf3: s*u*t*v^2\nf4: u^2*t^3\n";
        let p = parse_parametrization(text).unwrap();
        let l = lift_mixed(&p).unwrap();
        assert_eq!(l.bidegree(), (6, 6));
        assert!(l.polys()[2].coeff(3, 2).is_one());
        assert_eq!(lift_exponent((2, 3)), 6);

        let q = parse_parametrization(WORKED).unwrap();
        assert_eq!(lift_mixed(&q).unwrap(), q);

        let r = Parametrization::from_strs((1, 2), ["s*t^2", "u*v^2", "s*t*v", "u*t^2"]).unwrap();
        let lr = lift_mixed(&r).unwrap();
        assert_eq!(lr.bidegree(), (2, 2));
        assert!(lr.polys()[0].coeff(2, 2).is_one());
        assert_eq!(lift_mixed(&lr).unwrap(), lr);
    }

    #[test]
    fn prime_field_header() {
        let text = "degree: 1 1\nfield: GF 101\nf1: 1/2*s*t\nf2: s*v\nf3: u*t\nf4: u*v\n";
        let p = parse_parametrization(text).unwrap();
        assert_eq!(p.field(), Field::Prime(101));
        assert_eq!(p.polys()[0].coeff(1, 1).to_string(), "51");
        assert_eq!(parse_parametrization(&p.to_text()).unwrap(), p);
    }
}
