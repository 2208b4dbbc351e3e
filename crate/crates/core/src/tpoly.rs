//! Sparse polynomials in four variables over a [`Field`].
//!
//! The same type serves the target ring `K[T1..T4]` and the parameter ring
//! `K[s,u,t,v]`; a [`VarSet`] tag keeps the two apart. Terms are kept in a
//! `BTreeMap` ordered by graded lex (`x1 > x2 > x3 > x4`), so the leading term
//! is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum VarSet {
    /// `T1, T2, T3, T4`
    T,
    /// `s, u, t, v`
    Param,
    /// `X1, X2, X3, X4`, coordinates of the Segre quadric
    X,
}

impl VarSet {
    pub fn names(self) -> [&'static str; 4] {
        match self {
            VarSet::T => ["T1", "T2", "T3", "T4"],
            VarSet::Param => ["s", "u", "t", "v"],
            VarSet::X => ["X1", "X2", "X3", "X4"],
        }
    }
}

/// Exponent vector with graded lexicographic order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u32; 4]);

impl Mono {
    pub const ONE: Mono = Mono([0; 4]);

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn var(i: usize) -> Mono {
        let mut e = [0; 4];
        e[i] = 1;
        Mono(e)
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..4).all(|i| self.0[i] <= o.0[i])
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Mono) -> Mono {
        Mono(std::array::from_fn(|i| o.0[i] - self.0[i]))
    }

    pub fn fmt_with(&self, names: [&str; 4]) -> String {
        let parts: Vec<String> = (0..4)
            .filter(|&i| self.0[i] > 0)
            .map(|i| match self.0[i] {
                1 => names[i].to_string(),
                e => format!("{}^{e}", names[i]),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TPoly {
    vars: VarSet,
    field: Field,
    terms: BTreeMap<Mono, FieldElem>,
}

impl TPoly {
    pub fn zero(vars: VarSet, field: Field) -> Self {
        TPoly { vars, field, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarSet, c: FieldElem) -> Self {
        let mut p = TPoly::zero(vars, c.field());
        if !c.is_zero() {
            p.terms.insert(Mono::ONE, c);
        }
        p
    }

    pub fn one(vars: VarSet, field: Field) -> Self {
        TPoly::constant(vars, field.one())
    }

    /// The `i`-th variable (0-based).
    pub fn var(vars: VarSet, field: Field, i: usize) -> Self {
        TPoly::monomial(vars, Mono::var(i), field.one())
    }

    pub fn monomial(vars: VarSet, m: Mono, c: FieldElem) -> Self {
        let mut p = TPoly::zero(vars, c.field());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated terms; zero sums are dropped.
    pub fn from_terms(
        vars: VarSet,
        field: Field,
        terms: impl IntoIterator<Item = (Mono, FieldElem)>,
    ) -> Self {
        let mut p = TPoly::zero(vars, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Mono, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Mono, &FieldElem)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    fn check(&self, o: &TPoly) -> Result<()> {
        if self.vars != o.vars {
            return Err(Error::VariableMismatch);
        }
        if self.field != o.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, o: &TPoly) -> Result<TPoly> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &TPoly) -> Result<TPoly> {
        self.check(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &TPoly) -> Result<TPoly> {
        self.check(o)?;
        let mut acc: std::collections::HashMap<Mono, FieldElem> =
            std::collections::HashMap::with_capacity(self.len() * o.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let prod = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(TPoly { vars: self.vars, field: self.field, terms })
    }

    pub fn pow(&self, e: u32) -> TPoly {
        let mut acc = TPoly::one(self.vars, self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &FieldElem) -> TPoly {
        if c.is_zero() {
            return TPoly::zero(self.vars, self.field);
        }
        let terms = self.terms.iter().map(|(m, a)| (*m, a * c)).collect();
        TPoly { vars: self.vars, field: self.field, terms }
    }

    pub fn mul_mono(&self, m: &Mono) -> TPoly {
        let terms = self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect();
        TPoly { vars: self.vars, field: self.field, terms }
    }

    /// Exact quotient `self / d`; fails when the remainder is nonzero.
    pub fn exact_div(&self, d: &TPoly) -> Result<TPoly> {
        self.check(d)?;
        let (lm, lc) = d.leading_term().ok_or_else(|| Error::InvalidArgument("division by zero".into()))?;
        let (lm, lc_inv) = (*lm, lc.inv());
        if d.len() == 1 {
            let mut q = TPoly::zero(self.vars, self.field);
            for (m, c) in &self.terms {
                if !lm.divides(m) {
                    return Err(Error::NotExact);
                }
                q.terms.insert(lm.quotient_of(m), c * &lc_inv);
            }
            return Ok(q);
        }
        let mut rem = self.clone();
        let mut q = TPoly::zero(self.vars, self.field);
        while let Some((rm, rc)) = rem.leading_term() {
            if !lm.divides(rm) {
                return Err(Error::NotExact);
            }
            let qm = lm.quotient_of(rm);
            let qc = rc * &lc_inv;
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), -(c * &qc));
            }
            q.terms.insert(qm, qc);
        }
        Ok(q)
    }

    pub fn divides(&self, a: &TPoly) -> bool {
        a.exact_div(self).is_ok()
    }

    /// Value at a point.
    pub fn eval(&self, point: &[FieldElem; 4]) -> FieldElem {
        let maxdeg: [u32; 4] = std::array::from_fn(|i| self.degree_in(i));
        let powers: Vec<Vec<FieldElem>> = (0..4)
            .map(|i| {
                let mut v = vec![self.field.one()];
                for k in 1..=maxdeg[i] as usize {
                    let next = &v[k - 1] * &point[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..4 {
                if m.0[i] > 0 {
                    t = &t * &powers[i][m.0[i] as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitutes polynomials (all over the same ring) for the four variables.
    pub fn compose(&self, subs: &[TPoly; 4]) -> Result<TPoly> {
        let target = subs[0].vars;
        for s in subs {
            if s.vars != target || s.field != self.field {
                return Err(Error::VariableMismatch);
            }
        }
        let maxdeg: [u32; 4] = std::array::from_fn(|i| self.degree_in(i));
        let powers: Vec<Vec<TPoly>> = (0..4)
            .map(|i| {
                let mut v = vec![TPoly::one(target, self.field)];
                for k in 1..=maxdeg[i] as usize {
                    let next = &v[k - 1] * &subs[i];
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = TPoly::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut t = TPoly::constant(target, c.clone());
            for i in 0..4 {
                if m.0[i] > 0 {
                    t = &t * &powers[i][m.0[i] as usize];
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn map_coeffs(&self, field: Field, f: impl Fn(&FieldElem) -> Result<FieldElem>) -> Result<TPoly> {
        let mut out = TPoly::zero(self.vars, field);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    /// Same terms, relabelled into another variable set.
    pub fn with_vars(&self, vars: VarSet) -> TPoly {
        TPoly { vars, field: self.field, terms: self.terms.clone() }
    }

    /// Canonical associate: leading coefficient 1 (zero stays zero).
    pub fn canonical(&self) -> TPoly {
        match self.leading_term() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv()),
            _ => self.clone(),
        }
    }

    /// Indices of variables that actually occur.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..4).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    /// Greatest common divisor, canonicalized to leading coefficient 1.
    pub fn mvgcd(&self, o: &TPoly) -> Result<TPoly> {
        self.check(o)?;
        Ok(gcd::gcd(self, o).canonical())
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub(crate) fn to_univariate(&self, var: usize) -> Vec<TPoly> {
        let deg = self.degree_in(var) as usize;
        let mut out = vec![TPoly::zero(self.vars, self.field); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut rest = *m;
            rest.0[var] = 0;
            out[k].terms.insert(rest, c.clone());
        }
        out
    }

    pub(crate) fn from_univariate(coeffs: &[TPoly], var: usize, vars: VarSet, field: Field) -> TPoly {
        let mut out = TPoly::zero(vars, field);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                let mut e = *m;
                e.0[var] += k as u32;
                out.terms.insert(e, a.clone());
            }
        }
        out
    }

    /// Parses text in the input polynomial grammar over this variable set.
    pub fn parse(text: &str, vars: VarSet, field: Field) -> Result<TPoly> {
        crate::parse::parse_poly(text, vars, field)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = self.vars.names();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *m == Mono::ONE {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", m.fmt_with(names))?;
            } else {
                write!(f, "{mag}*{}", m.fmt_with(names))?;
            }
        }
        Ok(())
    }
}

macro_rules! poly_op {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&TPoly> for &TPoly {
            type Output = TPoly;
            fn $method(self, rhs: &TPoly) -> TPoly {
                self.$try(rhs).expect("polynomials over different rings")
            }
        }
        impl $tr<TPoly> for TPoly {
            type Output = TPoly;
            fn $method(self, rhs: TPoly) -> TPoly {
                self.$try(&rhs).expect("polynomials over different rings")
            }
        }
    };
}

poly_op!(Add, add, try_add);
poly_op!(Sub, sub, try_sub);
poly_op!(Mul, mul, try_mul);

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c)).collect();
        TPoly { vars: self.vars, field: self.field, terms }
    }
}

/// `c1*T1 + c2*T2 + c3*T3 + c4*T4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm(pub [FieldElem; 4]);

impl LinearForm {
    pub fn zero(field: Field) -> Self {
        LinearForm(std::array::from_fn(|_| field.zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(FieldElem::is_zero)
    }

    pub fn eval(&self, point: &[FieldElem; 4]) -> FieldElem {
        let mut acc = &self.0[0] * &point[0];
        for i in 1..4 {
            acc = &acc + &(&self.0[i] * &point[i]);
        }
        acc
    }

    pub fn to_tpoly(&self) -> TPoly {
        let field = self.0[0].field();
        TPoly::from_terms(VarSet::T, field, (0..4).map(|i| (Mono::var(i), self.0[i].clone())))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_tpoly())
    }
}

/// Determinant of a square matrix of polynomials.
///
/// Cofactor expansion up to 4x4, fraction-free Bareiss elimination above.
pub fn polydet(m: &[Vec<TPoly>]) -> Result<TPoly> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NonSquare { rows: n, cols: row.len() });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix has no ring".into()));
    }
    let (vars, field) = (m[0][0].vars, m[0][0].field);
    if n <= 4 {
        let idx: Vec<usize> = (0..n).collect();
        return Ok(cofactor(m, 0, &idx, vars, field));
    }
    let mut a: Vec<Vec<TPoly>> = m.to_vec();
    let mut negate = false;
    let mut prev = TPoly::one(vars, field);
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(TPoly::zero(vars, field));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
            a[i][k] = TPoly::zero(vars, field);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

fn cofactor(m: &[Vec<TPoly>], row: usize, cols: &[usize], vars: VarSet, field: Field) -> TPoly {
    if cols.len() == 1 {
        return m[row][cols[0]].clone();
    }
    let mut acc = TPoly::zero(vars, field);
    for (pos, &c) in cols.iter().enumerate() {
        if m[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &m[row][c] * &cofactor(m, row + 1, &rest, vars, field);
        acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

mod gcd {
    //! Recursive multivariate gcd: content/primitive-part splitting with a
    //! subresultant pseudo-remainder sequence in one main variable.

    use super::*;

    pub(super) fn gcd(a: &TPoly, b: &TPoly) -> TPoly {
        let (vars, field) = (a.vars, a.field);
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.is_constant() || b.is_constant() {
            return TPoly::one(vars, field);
        }
        // Monomial factors are split off first: cheap and keeps the PRS small.
        let (ma, a) = split_monomial(a);
        let (mb, b) = split_monomial(b);
        let mono = Mono(std::array::from_fn(|i| ma.0[i].min(mb.0[i])));
        let mono_part = TPoly::monomial(vars, mono, field.one());

        let shared: Vec<usize> = a
            .occurring_vars()
            .into_iter()
            .filter(|v| b.occurring_vars().contains(v))
            .collect();
        let Some(&x) = shared
            .iter()
            .min_by_key(|&&v| (a.degree_in(v).max(b.degree_in(v)), std::cmp::Reverse(v)))
        else {
            return mono_part;
        };

        let ua = a.to_univariate(x);
        let ub = b.to_univariate(x);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = gcd(&ca, &cb);
        let pa: Vec<TPoly> = ua.iter().map(|p| p.exact_div(&ca).expect("content divides")).collect();
        let pb: Vec<TPoly> = ub.iter().map(|p| p.exact_div(&cb).expect("content divides")).collect();
        let g = subresultant_gcd(pa, pb);
        let g = TPoly::from_univariate(&g, x, vars, field);
        &(&c * &g) * &mono_part
    }

    fn split_monomial(a: &TPoly) -> (Mono, TPoly) {
        let m = Mono(std::array::from_fn(|i| a.terms.keys().map(|k| k.0[i]).min().unwrap_or(0)));
        if m == Mono::ONE {
            return (m, a.clone());
        }
        let terms = a.terms.iter().map(|(k, c)| (m.quotient_of(k), c.clone())).collect();
        (m, TPoly { vars: a.vars, field: a.field, terms })
    }

    /// gcd of the coefficients, canonicalized.
    pub(super) fn content(u: &[TPoly]) -> TPoly {
        let mut nonzero = u.iter().filter(|p| !p.is_zero());
        let first = nonzero.next().expect("nonzero univariate").clone();
        let mut g = first;
        // Smallest coefficients first keeps the gcd chain cheap.
        let mut rest: Vec<&TPoly> = nonzero.collect();
        rest.sort_by_key(|p| p.len());
        for p in rest {
            if g.is_constant() {
                break;
            }
            g = gcd(&g, p);
        }
        if g.is_constant() {
            TPoly::one(g.vars, g.field)
        } else {
            g.canonical()
        }
    }

    fn deg(u: &[TPoly]) -> usize {
        u.len() - 1
    }

    fn trim(mut u: Vec<TPoly>) -> Vec<TPoly> {
        while u.len() > 1 && u.last().is_some_and(TPoly::is_zero) {
            u.pop();
        }
        u
    }

    fn is_zero(u: &[TPoly]) -> bool {
        u.iter().all(TPoly::is_zero)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    fn prem(a: &[TPoly], b: &[TPoly]) -> Vec<TPoly> {
        let n = deg(b);
        let lcb = &b[n];
        let mut r = a.to_vec();
        let mut e = deg(a) as i64 - n as i64 + 1;
        while !is_zero(&r) && deg(&r) >= n {
            let dr = deg(&r);
            let t = r[dr].clone();
            let shift = dr - n;
            for (k, c) in r.iter_mut().enumerate() {
                *c = &*c * lcb;
                if k >= shift && k - shift <= n {
                    *c = &*c - &(&t * &b[k - shift]);
                }
            }
            r = trim(r);
            if r.len() == dr + 1 && !r[dr].is_zero() {
                unreachable!("leading term not cancelled");
            }
            e -= 1;
            if r.len() == 1 && r[0].is_zero() {
                break;
            }
        }
        if e > 0 {
            let f = lcb.pow(e as u32);
            for c in r.iter_mut() {
                *c = &*c * &f;
            }
        }
        r
    }

    /// Primitive gcd of two primitive univariate polynomials.
    fn subresultant_gcd(a: Vec<TPoly>, b: Vec<TPoly>) -> Vec<TPoly> {
        let (vars, field) = (a[0].vars, a[0].field);
        let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
        if deg(&b) == 0 {
            return vec![TPoly::one(vars, field)];
        }
        let mut g = TPoly::one(vars, field);
        let mut h = TPoly::one(vars, field);
        loop {
            let delta = (deg(&a) - deg(&b)) as u32;
            let r = prem(&a, &b);
            if is_zero(&r) {
                break;
            }
            if deg(&r) == 0 {
                return vec![TPoly::one(vars, field)];
            }
            let divisor = &g * &h.pow(delta);
            a = b;
            b = r.iter().map(|c| c.exact_div(&divisor).expect("subresultant division")).collect();
            g = a[deg(&a)].clone();
            h = if delta == 0 {
                h
            } else {
                g.pow(delta).exact_div(&h.pow(delta - 1)).expect("subresultant scaling")
            };
        }
        let c = content(&b);
        b.iter().map(|p| p.exact_div(&c).expect("content divides")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(text: &str) -> TPoly {
        TPoly::parse(text, VarSet::T, Field::Rationals).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(q("(T1+T2)^2"), q("T1^2 + 2*T1*T2 + T2^2"));
        let a = q("T1*T3 - 3/2*T4");
        assert!((&a * &q("0")).is_zero());
        assert_eq!(&a * &q("1"), a);
    }

    #[test]
    fn mixed_variable_sets_rejected() {
        let a = q("T1");
        let b = TPoly::parse("s", VarSet::Param, Field::Rationals).unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::VariableMismatch)));
        assert!(matches!(a.try_mul(&b), Err(Error::VariableMismatch)));
    }

    #[test]
    fn exact_division() {
        assert_eq!(q("T1^2 - T2^2").exact_div(&q("T1 - T2")).unwrap(), q("T1 + T2"));
        let a = q("T1^3*T4 + 7*T2*T3 - 1");
        assert_eq!(a.exact_div(&a).unwrap(), q("1"));
        assert!(matches!(q("T1*T4 - T2*T3").exact_div(&q("T1")), Err(Error::NotExact)));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(q("T1^2 - T2^2").mvgcd(&q("T1^2 + 2*T1*T2 + T2^2")).unwrap(), q("T1 + T2"));
        let a = q("3*T1*T4 - 3*T2*T3");
        assert_eq!(a.mvgcd(&q("0")).unwrap(), q("T1*T4 - T2*T3"));
        let f = q("T1^2*T3 - T2*T4^2 + T1*T2*T3");
        let g1 = q("T1 + 2*T2 - T4");
        let g2 = q("T3^2 - T1*T2 + 5");
        assert_eq!((&f * &g1).mvgcd(&(&f * &g2)).unwrap(), f.canonical());
        assert_eq!(q("T1*T2^2").mvgcd(&q("T2*T3")).unwrap(), q("T2"));
        assert_eq!(q("T1 + 1").mvgcd(&q("T2 + 1")).unwrap(), q("1"));
    }

    #[test]
    fn determinant_examples() {
        let m = vec![vec![q("T1"), q("T2")], vec![q("T3"), q("T4")]];
        assert_eq!(polydet(&m).unwrap(), q("T1*T4 - T2*T3"));
        for k in [3usize, 6] {
            let diag: Vec<Vec<TPoly>> = (0..k)
                .map(|i| (0..k).map(|j| if i == j { q("T1") } else { q("0") }).collect())
                .collect();
            assert_eq!(polydet(&diag).unwrap(), q("T1").pow(k as u32));
        }
        let rep: Vec<Vec<TPoly>> = (0..5)
            .map(|i| {
                let r = if i == 3 { 1 } else { i };
                (0..5).map(|j| q(&format!("{}*T1 + T{}", r + j, 1 + (r * j) % 4))).collect()
            })
            .collect();
        assert!(polydet(&rep).unwrap().is_zero());
        assert!(matches!(polydet(&[vec![q("T1"), q("T2")]]), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn evaluation_examples() {
        let f = Field::Rationals;
        let quadric = q("T1*T4 - T2*T3");
        let pt = |v: [i64; 4]| v.map(|x| f.from_i64(x));
        assert!(quadric.eval(&pt([1, 1, 1, 1])).is_zero());
        assert_eq!(quadric.eval(&pt([1, 1, 1, 2])), f.one());
        assert_eq!(q("-7/3").eval(&pt([4, 5, 6, 7])).to_string(), "-7/3");
    }

    #[test]
    fn printing_is_canonical() {
        assert_eq!(q("-T2*T3 + T4*T1").to_string(), "T1*T4 - T2*T3");
        assert_eq!(q("1/2*T1^2 - 3 + T2").to_string(), "1/2*T1^2 + T2 - 3");
        assert_eq!(q("0").to_string(), "0");
    }
}
