//! Graded strands of the approximation complex of `I = (g1..g4) ⊂ A`.
//!
//! The Koszul differential on the basis `e_S` (`S` a sorted subset of
//! `{1,2,3,4}`) is `d(e_S) = sum_{j in S} (-1)^pos(j,S) g_j e_{S\j}`, where
//! `pos` is the 0-based position of `j` in `S`. `d_i` maps
//! `A(-i d)^C(4,i) -> A(-(i-1) d)^C(4,i-1)`; in internal degree `mu` its
//! source components live in `A_{mu - i d}`.

use serde::{Deserialize, Serialize};

use crate::biparam::Parametrization;
use crate::error::{Error, Result};
use crate::exactla::ExactMatrix;
use crate::field::Field;
use crate::segre::{self, basis, omega, reduce_mono, SegreElem};

/// The ideal generated by `omega(f_i)` in `A`, all of degree `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegreIdeal {
    gens: [SegreElem; 4],
    d: u32,
}

impl SegreIdeal {
    pub fn new(gens: [SegreElem; 4]) -> Result<Self> {
        let d = gens[0].degree();
        if d == 0 {
            return Err(Error::InvalidArgument("generators must have degree >= 1".into()));
        }
        if gens.iter().any(|g| g.degree() != d) {
            return Err(Error::InvalidArgument("generators of different degrees".into()));
        }
        if gens.iter().all(SegreElem::is_zero) {
            return Err(Error::AllZero);
        }
        Ok(SegreIdeal { gens, d })
    }

    /// `g_i = omega(f_i)`; the bidegree must be `(d,d)`.
    pub fn from_parametrization(p: &Parametrization) -> Result<Self> {
        let g = p.polys().iter().map(omega).collect::<Result<Vec<_>>>()?;
        SegreIdeal::new(g.try_into().expect("four generators"))
    }

    pub fn gens(&self) -> &[SegreElem; 4] {
        &self.gens
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> Field {
        self.gens[0].field()
    }
}

/// Sorted `k`-subsets of `{0,1,2,3}`, lexicographic.
pub fn subsets(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..16)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..4).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    out.sort();
    out
}

fn strand_degree(mu: u32, shift: u32) -> Option<u32> {
    mu.checked_sub(shift)
}

/// Matrix of `d_i` (`i` in `1..=4`) in internal degree `mu`.
///
/// Columns: blocks for the `i`-subsets `S` (lex order), each over the basis of
/// `A_{mu - i d}`. Rows: blocks for the `(i-1)`-subsets over `A_{mu - (i-1) d}`.
pub fn koszul_matrix(ideal: &SegreIdeal, i: usize, mu: u32) -> ExactMatrix {
    assert!((1..=4).contains(&i), "Koszul index out of range");
    let d = ideal.d;
    let field = ideal.field();
    let src_sets = subsets(i);
    let dst_sets = subsets(i - 1);
    let src_deg = strand_degree(mu, i as u32 * d);
    let dst_deg = strand_degree(mu, (i as u32 - 1) * d);
    let src_dim = src_deg.map_or(0, segre::dim);
    let dst_dim = dst_deg.map_or(0, segre::dim);
    let mut m = ExactMatrix::zeros(dst_sets.len() * dst_dim, src_sets.len() * src_dim, field);
    let (Some(sd), Some(dd)) = (src_deg, dst_deg) else {
        return m;
    };
    let src_basis = basis(sd);
    let dst_basis = basis(dd);
    for (si, s) in src_sets.iter().enumerate() {
        for (pos, &j) in s.iter().enumerate() {
            let rest: Vec<usize> = s.iter().copied().filter(|&x| x != j).collect();
            let ti = dst_sets.iter().position(|t| *t == rest).expect("face is a subset");
            let negative = pos % 2 == 1;
            for (bi, bm) in src_basis.monomials().iter().enumerate() {
                let col = si * src_dim + bi;
                for (gm, gc) in ideal.gens[j].terms() {
                    let target = reduce_mono(bm.mul(gm));
                    let row = ti * dst_dim + dst_basis.index_of(&target).expect("normal monomial");
                    let c = if negative { -gc } else { gc.clone() };
                    let v = m.get(row, col) + &c;
                    m.set(row, col, v);
                }
            }
        }
    }
    m
}

/// `dim (Z_i)_mu` with `Z_i = ker d_i`.
pub fn cycles_dim(ideal: &SegreIdeal, i: usize, mu: u32) -> usize {
    let m = koszul_matrix(ideal, i, mu);
    m.cols() - m.rank()
}

/// Basis of `{(a1..a4) in (A_nu)^4 : sum a_i g_i = 0}` as the columns of a
/// `4 dim A_nu` row matrix: rows `0..k` hold `a1`, `k..2k` hold `a2`, and so on.
pub fn syzygy_basis_matrix(ideal: &SegreIdeal, nu: u32) -> ExactMatrix {
    koszul_matrix(ideal, 1, nu + ideal.d).nullspace()
}

/// The syzygies of degree `nu` as 4-tuples of elements of `A_nu`.
pub fn syzygy_strand(ideal: &SegreIdeal, nu: u32) -> Vec<[SegreElem; 4]> {
    let n = syzygy_basis_matrix(ideal, nu);
    let k = segre::dim(nu);
    let field = ideal.field();
    (0..n.cols())
        .map(|c| {
            let col = n.column(c);
            std::array::from_fn(|i| SegreElem::from_coords(nu, field, &col[i * k..(i + 1) * k]))
        })
        .collect()
}

/// Multiplication by the monomial `w` from `A_nu` to `A_{nu + deg w}`.
fn mult_matrix(w: &crate::tpoly::Mono, nu: u32, field: Field) -> ExactMatrix {
    let src = basis(nu);
    let dst = basis(nu + w.degree());
    let mut m = ExactMatrix::zeros(dst.len(), src.len(), field);
    for (c, bm) in src.monomials().iter().enumerate() {
        let r = dst.index_of(&reduce_mono(bm.mul(w))).expect("normal monomial");
        m.set(r, c, field.one());
    }
    m
}

/// Dimension of `(I : m^e)_nu` for `m = (X1..X4)`.
pub fn colon_dim(ideal: &SegreIdeal, nu: u32, e: u32) -> usize {
    let field = ideal.field();
    let target = nu + e;
    // Linear functionals vanishing on I_{nu+e}.
    let span = koszul_matrix(ideal, 1, target);
    let ann = span.transpose().nullspace().transpose();
    if ann.rows() == 0 {
        return segre::dim(nu);
    }
    let mut v = ExactMatrix::identity(segre::dim(nu), field);
    for w in basis(e).monomials() {
        if v.cols() == 0 {
            break;
        }
        let cond = ann.mul(&mult_matrix(w, nu, field)).and_then(|c| c.mul(&v)).expect("shapes agree");
        let kernel = cond.nullspace();
        v = v.mul(&kernel).expect("shapes agree");
    }
    v.cols()
}

/// Initial degree of the saturation `I^sat`, searched in `[0, d]`.
///
/// For `e = 1, 2, ...` the dimensions of `(I : m^e)_nu`, `nu = 0..=d`, are
/// computed until two consecutive values of `e` agree or `e = e_max`.
pub fn indeg_sat(ideal: &SegreIdeal, e_max: u32) -> u32 {
    let d = ideal.d;
    let e_max = e_max.max(1);
    let mut prev: Option<Vec<usize>> = None;
    let mut dims = Vec::new();
    for e in 1..=e_max {
        dims = (0..=d).map(|nu| colon_dim(ideal, nu, e)).collect::<Vec<_>>();
        if prev.as_ref() == Some(&dims) {
            break;
        }
        prev = Some(dims.clone());
    }
    dims.iter().position(|&x| x > 0).map_or(d, |nu| nu as u32)
}

/// Default search depth for [`indeg_sat`].
pub fn default_e_max(d: u32) -> u32 {
    2 * d
}

/// `2d - 1`, or `2d - 1 - indeg(I^sat)` when `saturate` is set.
pub fn nu0(ideal: &SegreIdeal, saturate: bool) -> u32 {
    let d = ideal.d;
    if saturate {
        2 * d - 1 - indeg_sat(ideal, default_e_max(d))
    } else {
        2 * d - 1
    }
}

/// Dimensions and derived quantities of the strand `(Z.)_nu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrandReport {
    pub d: u32,
    pub nu: u32,
    /// `[dim A_nu, dim (Z1)_{nu+d}, dim (Z2)_{nu+2d}, dim (Z3)_{nu+3d}]`
    pub dims: [usize; 4],
    pub euler: i64,
    pub expected_deg_d: i64,
    pub nu0_conservative: u32,
    pub nu0_optimized: Option<u32>,
    pub indeg_sat: Option<u32>,
    pub sum_dp: Option<i64>,
}

impl StrandReport {
    /// True when `nu` is at least the bound the report knows about.
    pub fn nu_is_guaranteed(&self) -> bool {
        self.nu >= self.nu0_optimized.unwrap_or(self.nu0_conservative)
    }
}

pub fn strand_report(ideal: &SegreIdeal, nu: u32) -> StrandReport {
    let d = ideal.d;
    let dims = [
        segre::dim(nu),
        cycles_dim(ideal, 1, nu + d),
        cycles_dim(ideal, 2, nu + 2 * d),
        cycles_dim(ideal, 3, nu + 3 * d),
    ];
    let z = dims.map(|x| x as i64);
    let euler = z[0] - z[1] + z[2] - z[3];
    let expected = z[1] - 2 * z[2] + 3 * z[3];
    StrandReport {
        d,
        nu,
        dims,
        euler,
        expected_deg_d: expected,
        nu0_conservative: 2 * d - 1,
        nu0_optimized: None,
        indeg_sat: None,
        sum_dp: Some(2 * (d as i64) * (d as i64) - expected),
    }
}

/// Outcome of choosing `nu0`, with the saturation shortcut re-validated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Nu0Choice {
    pub conservative: u32,
    pub indeg_sat: Option<u32>,
    /// `2d - 1 - indeg(I^sat)` as computed, before validation.
    pub candidate: Option<u32>,
    /// The bound actually used.
    pub chosen: u32,
    /// False when the candidate failed validation and the conservative bound was kept.
    pub validated: bool,
}

/// Picks `nu0`. With `saturate`, the lowered bound is kept only if its strand
/// has Euler characteristic 0 and the same expected degree as the strand at
/// `2d - 1`.
pub fn choose_nu0(ideal: &SegreIdeal, saturate: bool) -> Nu0Choice {
    let conservative = 2 * ideal.d - 1;
    if !saturate {
        return Nu0Choice { conservative, indeg_sat: None, candidate: None, chosen: conservative, validated: true };
    }
    let indeg = indeg_sat(ideal, default_e_max(ideal.d));
    let candidate = conservative - indeg;
    if candidate == conservative {
        return Nu0Choice { conservative, indeg_sat: Some(indeg), candidate: Some(candidate), chosen: candidate, validated: true };
    }
    let low = strand_report(ideal, candidate);
    let high = strand_report(ideal, conservative);
    let ok = low.euler == 0 && high.euler == 0 && low.expected_deg_d == high.expected_deg_d;
    Nu0Choice {
        conservative,
        indeg_sat: Some(indeg),
        candidate: Some(candidate),
        chosen: if ok { candidate } else { conservative },
        validated: ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biparam::parse_parametrization;

    pub(crate) fn identity_ideal() -> SegreIdeal {
        let p = parse_parametrization("degree: 1 1\nf1: s*t\nf2: s*v\nf3: u*t\nf4: u*v\n").unwrap();
        SegreIdeal::from_parametrization(&p).unwrap()
    }

    #[test]
    fn subsets_are_lex() {
        assert_eq!(subsets(0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(4), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn identity_syzygies() {
        let i = identity_ideal();
        assert_eq!(syzygy_strand(&i, 0).len(), 0);
        let syz = syzygy_strand(&i, 1);
        assert_eq!(syz.len(), 7);
        for s in &syz {
            let mut acc = SegreElem::zero(2, i.field());
            for k in 0..4 {
                acc = acc.add(&s[k].nf_mul(&i.gens()[k])).unwrap();
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn identity_cycles() {
        let i = identity_ideal();
        assert_eq!(cycles_dim(&i, 3, 4), 1);
        assert_eq!(cycles_dim(&i, 2, 3), 4);
        assert_eq!(cycles_dim(&i, 1, 2), 7);
    }

    #[test]
    fn identity_saturation() {
        let i = identity_ideal();
        assert_eq!(indeg_sat(&i, 2), 0);
        assert_eq!(nu0(&i, true), 1);
        assert_eq!(nu0(&i, false), 1);
        let r = strand_report(&i, 1);
        assert_eq!(r.dims, [4, 7, 4, 1]);
        assert_eq!((r.euler, r.expected_deg_d, r.sum_dp), (0, 2, Some(0)));
    }

    #[test]
    fn koszul_square_is_zero() {
        let i = identity_ideal();
        for mu in 0..6 {
            for k in 2..=4 {
                let a = koszul_matrix(&i, k - 1, mu);
                let b = koszul_matrix(&i, k, mu);
                assert!(a.mul(&b).unwrap().is_zero(), "d{}*d{} at {mu}", k - 1, k);
            }
        }
    }
}

#[cfg(test)]
mod worked_tests {
    use super::*;
    use crate::biparam::parse_parametrization;

    const WORKED: &str = "degree: 2 2\nf1: u^2*t*v + s^2*t*v\nf2: u^2*t^2 + s*u*v^2\nf3: s^2*v^2 + s^2*t^2\nf4: s^2*t*v\n";

    #[test]
    fn worked_example_strands() {
        let i = SegreIdeal::from_parametrization(&parse_parametrization(WORKED).unwrap()).unwrap();
        let r = strand_report(&i, 2);
        assert_eq!(r.dims, [9, 12, 4, 1]);
        assert_eq!((r.euler, r.expected_deg_d, r.sum_dp), (0, 7, Some(1)));
        let r3 = strand_report(&i, 3);
        assert_eq!((r3.euler, r3.expected_deg_d), (0, 7));
        assert_eq!(indeg_sat(&i, 4), 1);
        assert_eq!(nu0(&i, false), 3);
        assert_eq!(nu0(&i, true), 2);
        let c = choose_nu0(&i, true);
        assert!(c.validated);
        assert_eq!(c.chosen, 2);
    }
}
