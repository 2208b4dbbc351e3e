//! The representation matrix `M` and what can be read off it.
//!
//! Rows of `M` are indexed by the monomial basis of `A_nu`, columns by a basis
//! of the degree-`nu` syzygies `(a1..a4)`; entry `(mu, sigma)` is the linear
//! form `sum_i coeff_mu(a_i^sigma) T_i`. (Some texts state the transposed
//! orientation, e.g. `42 x 36` where this crate has `36 x 42`.)

mod blackbox;
mod oracle;

use std::sync::Arc;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::biparam::Parametrization;
use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;
use crate::field::{Field, FieldElem};
use crate::segre::{self, SegreBasis, SegreElem};
use crate::tpoly::{polydet, LinearForm, TPoly, VarSet};
use crate::zcomplex::{syzygy_basis_matrix, SegreIdeal};

pub use blackbox::interpolate_minor_gcd;
pub use oracle::interpolation_oracle;

#[derive(Clone, Debug)]
pub struct RepMatrix {
    nu: u32,
    field: Field,
    row_basis: Arc<SegreBasis>,
    /// `4k x m`, one syzygy per column.
    syzygies: ExactMatrix,
    entries: Vec<Vec<LinearForm>>,
}

/// Assembles `M` in degree `nu`.
pub fn build_matrix(ideal: &SegreIdeal, nu: u32) -> RepMatrix {
    let syz = syzygy_basis_matrix(ideal, nu);
    RepMatrix::from_syzygies(nu, ideal.field(), syz)
}

impl RepMatrix {
    fn from_syzygies(nu: u32, field: Field, syzygies: ExactMatrix) -> Self {
        let row_basis = segre::basis(nu);
        let k = row_basis.len();
        let m = syzygies.cols();
        let entries = (0..k)
            .map(|r| {
                (0..m)
                    .map(|c| LinearForm(std::array::from_fn(|i| syzygies.get(i * k + r, c).clone())))
                    .collect()
            })
            .collect();
        RepMatrix { nu, field, row_basis, syzygies, entries }
    }

    pub fn nu(&self) -> u32 {
        self.nu
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `k = (nu+1)^2`.
    pub fn rows(&self) -> usize {
        self.row_basis.len()
    }

    pub fn cols(&self) -> usize {
        self.syzygies.cols()
    }

    pub fn row_basis(&self) -> &SegreBasis {
        &self.row_basis
    }

    pub fn entry(&self, r: usize, c: usize) -> &LinearForm {
        &self.entries[r][c]
    }

    pub fn entries(&self) -> &[Vec<LinearForm>] {
        &self.entries
    }

    /// The syzygy `(a1..a4)` behind column `c`.
    pub fn syzygy(&self, c: usize) -> [SegreElem; 4] {
        let k = self.rows();
        let col = self.syzygies.column(c);
        std::array::from_fn(|i| SegreElem::from_coords(self.nu, self.field, &col[i * k..(i + 1) * k]))
    }

    /// `sum_i a_i T_i` for column `c`, read back from the entries, as
    /// coefficients `[T1, T2, T3, T4]` over `A_nu`.
    pub fn reassemble(&self, c: usize) -> [SegreElem; 4] {
        std::array::from_fn(|i| {
            let coords: Vec<FieldElem> = (0..self.rows()).map(|r| self.entries[r][c].0[i].clone()).collect();
            SegreElem::from_coords(self.nu, self.field, &coords)
        })
    }

    /// `M` evaluated at a point of `P^3`.
    pub fn eval(&self, point: &[FieldElem; 4]) -> ExactMatrix {
        let rows = self.entries.iter().map(|row| row.iter().map(|l| l.eval(point)).collect()).collect();
        ExactMatrix::from_rows(self.field, rows).expect("rectangular")
    }

    /// The `k x k` submatrix on the given columns, as polynomials in `T`.
    pub fn submatrix(&self, cols: &[usize]) -> Vec<Vec<TPoly>> {
        self.entries.iter().map(|row| cols.iter().map(|&c| row[c].to_tpoly()).collect()).collect()
    }

    pub fn minor(&self, cols: &[usize]) -> Result<TPoly> {
        polydet(&self.submatrix(cols))
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            nu: self.nu,
            rows: self.rows(),
            cols: self.cols(),
            row_basis: self.row_basis.monomials().iter().map(|m| m.fmt_with(VarSet::X.names())).collect(),
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|l| l.0.clone().map(|c| c.to_string())).collect())
                .collect(),
        }
    }

    /// Text rendering: one row per line, entries separated by ` | `.
    pub fn to_text(&self) -> String {
        let mut out = format!("M ({} x {}), nu = {}\n", self.rows(), self.cols(), self.nu);
        for (r, row) in self.entries.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&format!(
                "{}: {}\n",
                self.row_basis.monomials()[r].fmt_with(VarSet::X.names()),
                cells.join(" | ")
            ));
        }
        out
    }
}

/// Serialized form of [`RepMatrix`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub nu: u32,
    pub rows: usize,
    pub cols: usize,
    pub row_basis: Vec<String>,
    /// `entries[r][c] = [c1, c2, c3, c4]` as `p/q` strings.
    pub entries: Vec<Vec<[String; 4]>>,
}

impl MatrixJson {
    /// Entry matrix over the given field.
    pub fn linear_forms(&self, field: Field) -> Result<Vec<Vec<LinearForm>>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| {
                        let v = cell.iter().map(|s| FieldElem::parse(s, field)).collect::<Result<Vec<_>>>()?;
                        Ok(LinearForm(v.try_into().expect("four coefficients")))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Rank test at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub on_surface: bool,
    pub rank: usize,
    pub k: usize,
}

/// `on_surface` iff the rank of `M(point)` drops below `expected_k`.
pub fn membership(m: &RepMatrix, point: &[FieldElem; 4], expected_k: usize) -> Result<Membership> {
    if point.iter().all(FieldElem::is_zero) {
        return Err(Error::ZeroPoint);
    }
    if point.iter().any(|x| x.field() != m.field) {
        return Err(Error::FieldMismatch);
    }
    let rank = m.eval(point).rank();
    Ok(Membership { on_surface: rank < expected_k, rank, k: expected_k })
}

/// How maximal minors are chosen when extracting their gcd.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Every `k`-subset of columns.
    All,
    /// Batches of `n` random nonzero minors; a fresh batch checks divisibility.
    Sampled(usize),
    /// Modular evaluation/interpolation of the gcd of `n` random minors,
    /// for matrices whose minors are too large to expand symbolically.
    Interpolated(usize),
}

impl std::str::FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unknown strategy `{s}`"));
        if s == "all" {
            return Ok(Strategy::All);
        }
        let (name, n) = s.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        match name {
            "sampled" => Ok(Strategy::Sampled(n)),
            "interp" => Ok(Strategy::Interpolated(n)),
            _ => Err(bad()),
        }
    }
}

impl std::fmt::Display for Strategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Strategy::All => write!(f, "all"),
            Strategy::Sampled(n) => write!(f, "sampled:{n}"),
            Strategy::Interpolated(n) => write!(f, "interp:{n}"),
        }
    }
}

/// Number of `k`-subsets of `m` columns, saturating.
pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub fn column_subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > m {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < m - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub(crate) fn random_subsets<R: Rng + ?Sized>(rng: &mut R, m: usize, k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..n)
        .map(|_| {
            let mut s = sample(rng, m, k).into_vec();
            s.sort_unstable();
            s
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// gcd of the maximal minors of `M`, canonicalized (leading coefficient 1).
pub fn extract_gcd_of_minors<R: Rng + ?Sized>(m: &RepMatrix, strategy: Strategy, rng: &mut R) -> Result<TPoly> {
    let (k, cols) = (m.rows(), m.cols());
    if cols < k {
        return Err(Error::TooFewColumns { rows: k, cols });
    }
    match strategy {
        Strategy::All => gcd_of(m, &column_subsets(cols, k)),
        Strategy::Sampled(n) => {
            if binomial(cols, k) <= 4 * n as u128 {
                return gcd_of(m, &column_subsets(cols, k));
            }
            // Batches of nonzero minors, until a fresh batch is divisible and the
            // degree matches the one seen modulo a prime.
            let target = blackbox::gcd_degree(m, rng)?;
            let mut g = TPoly::zero(VarSet::T, m.field);
            for _round in 0..64 {
                let batch = nonzero_minors(m, n, rng)?;
                let settled = !g.is_zero()
                    && g.total_degree() == Some(target as u32)
                    && batch.iter().all(|x| x.exact_div(&g).is_ok());
                if settled {
                    return Ok(g);
                }
                for minor in batch {
                    g = if g.is_zero() { minor.canonical() } else { g.mvgcd(&minor)? };
                }
            }
            gcd_of(m, &column_subsets(cols, k))
        }
        Strategy::Interpolated(n) => interpolate_minor_gcd(m, n, rng),
    }
}

/// `n` nonzero minors on random column sets.
fn nonzero_minors<R: Rng + ?Sized>(m: &RepMatrix, n: usize, rng: &mut R) -> Result<Vec<TPoly>> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..100 * n {
        let s = random_subsets(rng, m.cols(), m.rows(), 1).pop().expect("one subset");
        let minor = m.minor(&s)?;
        if !minor.is_zero() {
            out.push(minor);
            if out.len() == n {
                return Ok(out);
            }
        }
    }
    if out.is_empty() {
        return Err(Error::AllMinorsZero);
    }
    Ok(out)
}

fn gcd_of(m: &RepMatrix, subsets: &[Vec<usize>]) -> Result<TPoly> {
    let mut g = TPoly::zero(VarSet::T, m.field);
    for s in subsets {
        let minor = m.minor(s)?;
        if minor.is_zero() {
            continue;
        }
        g = if g.is_zero() { minor.canonical() } else { g.mvgcd(&minor)? };
        if g.is_constant() {
            break;
        }
    }
    if g.is_zero() {
        return Err(Error::AllMinorsZero);
    }
    Ok(g)
}

/// True iff `F(f1, f2, f3, f4)` expands to zero.
pub fn verify_substitution(f: &TPoly, p: &Parametrization) -> Result<bool> {
    let subs: [TPoly; 4] = std::array::from_fn(|i| p.polys()[i].as_poly().clone());
    Ok(f.compose(&subs)?.is_zero())
}

/// `D = c F^e G` with `F` not dividing `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LciDiagnostic {
    pub e: u32,
    pub g: TPoly,
    /// `G` is constant: base points are local complete intersections.
    pub lci: bool,
}

pub fn lci_diagnostic(d: &TPoly, f: &TPoly) -> Result<LciDiagnostic> {
    if f.is_constant() {
        return Err(Error::InvalidArgument("the implicit equation must be nonconstant".into()));
    }
    let mut g = d.clone();
    let mut e = 0;
    while let Ok(q) = g.exact_div(f) {
        g = q;
        e += 1;
    }
    if e == 0 {
        return Err(Error::NotDivisible);
    }
    let lci = g.is_constant();
    Ok(LciDiagnostic { e, g: g.canonical(), lci })
}

/// Everything known about the determinant `D` of the strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationReport {
    pub d: TPoly,
    pub f: Option<TPoly>,
    pub e: Option<u32>,
    pub g: Option<TPoly>,
    pub lci: Option<bool>,
}

impl EquationReport {
    pub fn new(d: TPoly) -> Self {
        EquationReport { d, f: None, e: None, g: None, lci: None }
    }

    /// Fills `F`, `e`, `G` from the irreducible equation `f`.
    pub fn with_equation(mut self, f: TPoly) -> Result<Self> {
        let diag = lci_diagnostic(&self.d, &f)?;
        self.f = Some(f);
        self.e = Some(diag.e);
        self.g = Some(diag.g);
        self.lci = Some(diag.lci);
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biparam::parse_parametrization;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn segre_param() -> Parametrization {
        parse_parametrization("degree: 1 1\nf1: s*t\nf2: s*v\nf3: u*t\nf4: u*v\n").unwrap()
    }

    fn q(text: &str) -> TPoly {
        TPoly::parse(text, VarSet::T, Field::Rationals).unwrap()
    }

    fn pt(v: [i64; 4]) -> [FieldElem; 4] {
        v.map(|x| Field::Rationals.from_i64(x))
    }

    #[test]
    fn identity_matrix_and_membership() {
        let i = SegreIdeal::from_parametrization(&segre_param()).unwrap();
        let m = build_matrix(&i, 1);
        assert_eq!((m.rows(), m.cols()), (4, 7));
        let on = membership(&m, &pt([1, 1, 1, 1]), 4).unwrap();
        assert_eq!((on.on_surface, on.rank), (true, 3));
        let off = membership(&m, &pt([1, 1, 1, 2]), 4).unwrap();
        assert_eq!((off.on_surface, off.rank), (false, 4));
        assert!(matches!(membership(&m, &pt([0, 0, 0, 0]), 4), Err(Error::ZeroPoint)));
    }

    #[test]
    fn identity_gcd_all_and_sampled_agree() {
        let i = SegreIdeal::from_parametrization(&segre_param()).unwrap();
        let m = build_matrix(&i, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let all = extract_gcd_of_minors(&m, Strategy::All, &mut rng).unwrap();
        assert_eq!(all, q("T1*T4 - T2*T3"));
        let sampled = extract_gcd_of_minors(&m, Strategy::Sampled(5), &mut rng).unwrap();
        assert_eq!(sampled, all);
    }

    #[test]
    fn substitution_check() {
        let p = segre_param();
        assert!(verify_substitution(&q("T1*T4 - T2*T3"), &p).unwrap());
        assert!(!verify_substitution(&q("T1"), &p).unwrap());
    }

    #[test]
    fn lci_examples() {
        let quadric = q("T1*T4 - T2*T3");
        let d = lci_diagnostic(&quadric.scale(&Field::Rationals.from_i64(-3)), &quadric).unwrap();
        assert_eq!((d.e, d.lci), (1, true));
        let cube = &quadric.pow(3) * &q("T1 + T2");
        let d = lci_diagnostic(&cube, &quadric).unwrap();
        assert_eq!((d.e, d.lci), (3, false));
        assert_eq!(d.g, q("T1 + T2"));
        assert!(matches!(lci_diagnostic(&q("T1 + T2"), &quadric), Err(Error::NotDivisible)));
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(column_subsets(7, 4).len(), 35);
        assert_eq!(binomial(42, 36), 5_245_786);
        assert_eq!(column_subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("all".parse::<Strategy>().unwrap(), Strategy::All);
        assert_eq!("sampled:12".parse::<Strategy>().unwrap(), Strategy::Sampled(12));
        assert_eq!("interp:3".parse::<Strategy>().unwrap(), Strategy::Interpolated(3));
        assert!("sampled:0".parse::<Strategy>().is_err());
        assert!("most".parse::<Strategy>().is_err());
    }
}
