//! Dense exact linear algebra over [`Field`]: echelon forms, rank, nullspace,
//! fraction-free determinants.
//!
//! Pivots are the first nonzero entry in column order. Arithmetic is exact,
//! so no magnitude pivoting is needed and results are deterministic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<FieldElem>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, field: Field) -> Self {
        ExactMatrix { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = ExactMatrix::zeros(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged rows".into()));
        }
        if rows.iter().flatten().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(ExactMatrix { rows: r, cols: c, field, data: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        ExactMatrix::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElem::is_zero)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zeros(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != o.rows {
            return Err(Error::InvalidArgument(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = ExactMatrix::zeros(self.rows, o.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Entrywise image in GF(p).
    pub fn reduce_mod(&self, p: u64) -> Result<ExactMatrix> {
        let data = self.data.iter().map(|x| x.reduce_mod(p)).collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, field: Field::Prime(p), data })
    }

    fn row_vecs(&self) -> Vec<Vec<FieldElem>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[FieldElem]>::to_vec).collect()
    }

    /// Reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> (ExactMatrix, usize, Vec<usize>) {
        let mut a = self.row_vecs();
        clear_denominators(&mut a);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let inv = a[r][c].inv();
            for x in a[r][c..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
            let pivot_row = a[r].clone();
            for (i, row) in a.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                eliminate(row, &pivot_row, &f, c);
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        let m = ExactMatrix { rows: self.rows, cols: self.cols, field: self.field, data: a.into_iter().flatten().collect() };
        (m, rank, pivots)
    }

    /// Rank by forward elimination only.
    pub fn rank(&self) -> usize {
        let mut a = self.row_vecs();
        clear_denominators(&mut a);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (top, bottom) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let inv = pivot_row[c].inv();
            for row in bottom.iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let f = &row[c] * &inv;
                eliminate(row, pivot_row, &f, c);
            }
            r += 1;
        }
        r
    }

    /// Basis of `{x : self * x = 0}` as the columns of a `cols x (cols - rank)` matrix.
    ///
    /// Free variables are set to 1 one at a time, in increasing column order.
    pub fn nullspace(&self) -> ExactMatrix {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = ExactMatrix::zeros(self.cols, free.len(), self.field);
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, self.field.one());
            for (row, &pc) in pivots.iter().enumerate().take(rank) {
                let v = r.get(row, f);
                if !v.is_zero() {
                    out.set(pc, k, -v);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det_bareiss(&self) -> Result<FieldElem> {
        if self.rows != self.cols {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(self.field.one());
        }
        let mut a = self.row_vecs();
        let mut negate = false;
        let mut prev = self.field.one();
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = &num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if negate { -d } else { d })
    }

    /// Compares the rational rank with the rank modulo each prime.
    pub fn modular_rank_check(&self, primes: &[u64]) -> Result<bool> {
        let q = self.rank();
        for &p in primes {
            if self.reduce_mod(p)?.rank() != q {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `row -= f * pivot_row` on columns `c..`.
fn eliminate(row: &mut [FieldElem], pivot_row: &[FieldElem], f: &FieldElem, c: usize) {
    for j in c..row.len() {
        let pv = &pivot_row[j];
        if pv.is_zero() {
            continue;
        }
        row[j] = &row[j] - &(f * pv);
    }
}

/// Scales rational rows to integer rows; the row space is unchanged.
fn clear_denominators(rows: &mut [Vec<FieldElem>]) {
    for row in rows.iter_mut() {
        let mut l = BigInt::one();
        let mut all_rational = true;
        for x in row.iter() {
            match x.as_rational() {
                Some(q) => l = l.lcm(q.denom()),
                None => {
                    all_rational = false;
                    break;
                }
            }
        }
        if !all_rational || l.is_one() {
            continue;
        }
        let s = FieldElem::Rat(BigRational::from_integer(l));
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &s;
            }
        }
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rationals;

    #[test]
    fn rref_examples() {
        let (_, rank, _) = ExactMatrix::from_i64(Q, &[&[1, 2], &[2, 4]]).rref();
        assert_eq!(rank, 1);
        let id = ExactMatrix::identity(3, Q);
        let (r, rank, piv) = id.rref();
        assert_eq!((rank, piv), (3, vec![0, 1, 2]));
        assert_eq!(r, id);
        let z = ExactMatrix::zeros(2, 5, Q);
        assert_eq!(z.rref().1, 0);
        assert_eq!(z.rank(), 0);
    }

    #[test]
    fn nullspace_examples() {
        let n = ExactMatrix::from_i64(Q, &[&[1, 1]]).nullspace();
        assert_eq!(n, ExactMatrix::from_i64(Q, &[&[-1], &[1]]));
        assert_eq!(ExactMatrix::identity(4, Q).nullspace().cols(), 0);
        let m = ExactMatrix::from_i64(Q, &[&[1, 2, 3], &[2, 4, 6]]);
        let n = m.nullspace();
        assert_eq!(n.cols(), 2);
        assert!(m.mul(&n).unwrap().is_zero());
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(ExactMatrix::from_i64(Q, &[&[1, 2], &[3, 4]]).det_bareiss().unwrap(), Q.from_i64(-2));
        let sing = ExactMatrix::from_i64(Q, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert!(sing.det_bareiss().unwrap().is_zero());
        assert!(ExactMatrix::identity(6, Q).det_bareiss().unwrap().is_one());
        let rect = ExactMatrix::zeros(2, 3, Q);
        assert!(matches!(rect.det_bareiss(), Err(Error::NonSquare { rows: 2, cols: 3 })));
        let swap = ExactMatrix::from_i64(Q, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]]);
        assert_eq!(swap.det_bareiss().unwrap(), Q.from_i64(-5));
    }

    #[test]
    fn fractions_survive_clearing() {
        let half = FieldElem::parse("1/2", Q).unwrap();
        let third = FieldElem::parse("1/3", Q).unwrap();
        let m = ExactMatrix::from_rows(Q, vec![vec![half.clone(), third.clone()], vec![Q.one(), Q.from_i64(2)]]).unwrap();
        let n = m.nullspace();
        assert_eq!(n.cols(), 0);
        let (r, _, _) = m.rref();
        assert_eq!(r, ExactMatrix::identity(2, Q));
    }

    #[test]
    fn modular_rank() {
        let m = ExactMatrix::from_i64(Q, &[&[7, 0], &[0, 1]]);
        assert!(!m.modular_rank_check(&[7]).unwrap());
        assert!(m.modular_rank_check(&[5, 11, 13]).unwrap());
    }
}
