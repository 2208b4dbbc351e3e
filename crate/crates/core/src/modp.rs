//! Word-size arithmetic modulo a prime: dense matrices and univariate
//! polynomials (coefficients low to high) over `Z/p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use crate::field::{is_prime, FieldElem};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) struct Zp {
    pub p: u64,
}

impl Zp {
    pub fn new(p: u64) -> Self {
        Zp { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        if self.p < 1 << 32 {
            a * b % self.p
        } else {
            (a as u128 * b as u128 % self.p as u128) as u64
        }
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    #[cfg(test)]
    pub fn from_i64(self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().expect("reduced")
    }

    /// `None` when `p` divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Option<u64> {
        let den = self.from_bigint(q.denom());
        if den == 0 {
            return None;
        }
        Some(self.mul(self.from_bigint(q.numer()), self.inv(den)))
    }

    /// Image of a field element; residues must already live modulo `p`.
    pub fn from_elem(self, x: &FieldElem) -> Option<u64> {
        match x {
            FieldElem::Rat(q) => self.from_rational(q),
            FieldElem::Mod(m) => (m.modulus() == self.p).then_some(m.value()),
        }
    }
}

/// A random prime in `[2^30, 2^31)`; products of two residues fit in a `u64`.
pub(crate) fn random_word_prime<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

pub(crate) type Mat = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(zp: Zp, m: &mut Mat, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = zp.inv(m[r][c]);
        for x in m[r][c..].iter_mut() {
            *x = zp.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if y != 0 {
                    *x = zp.sub(*x, zp.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Kernel basis: one vector per free column, that coordinate set to 1.
pub(crate) fn kernel(zp: Zp, m: &Mat, cols: usize) -> Vec<Vec<u64>> {
    let mut w = m.clone();
    let pivots = rref(zp, &mut w, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = zp.neg(w[r][free]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
pub(crate) fn det(zp: Zp, m: &Mat) -> u64 {
    let n = m.len();
    let mut w = m.clone();
    let mut d = 1 % zp.p;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| w[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            w.swap(pr, c);
            d = zp.neg(d);
        }
        d = zp.mul(d, w[c][c]);
        let inv = zp.inv(w[c][c]);
        for i in c + 1..n {
            if w[i][c] == 0 {
                continue;
            }
            let f = zp.mul(w[i][c], inv);
            let (top, bottom) = w.split_at_mut(i);
            for (x, &y) in bottom[0][c..].iter_mut().zip(&top[c][c..]) {
                *x = zp.sub(*x, zp.mul(f, y));
            }
        }
    }
    d
}

/// Inverse of a square matrix, `None` if singular.
pub(crate) fn inverse(zp: Zp, m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut aug: Mat = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let pivots = rref(zp, &mut aug, n);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub(crate) fn mat_mul(zp: Zp, a: &Mat, b: &Mat) -> Mat {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![0u64; cols];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k]) {
                    *o = zp.add(*o, zp.mul(x, y));
                }
            }
            out
        })
        .collect()
}

/// Characteristic polynomial `det(x I - m)`, monic, via Hessenberg reduction.
pub(crate) fn charpoly(zp: Zp, mut h: Mat) -> Vec<u64> {
    let n = h.len();
    for c in 0..n.saturating_sub(2) {
        let Some(pr) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if pr != c + 1 {
            h.swap(pr, c + 1);
            for row in h.iter_mut() {
                row.swap(pr, c + 1);
            }
        }
        let inv = zp.inv(h[c + 1][c]);
        for i in c + 2..n {
            if h[i][c] == 0 {
                continue;
            }
            let f = zp.mul(h[i][c], inv);
            // row_i -= f row_{c+1}; col_{c+1} += f col_i
            let (top, bottom) = h.split_at_mut(i);
            for (x, &y) in bottom[0][c..].iter_mut().zip(&top[c + 1][c..]) {
                *x = zp.sub(*x, zp.mul(f, y));
            }
            for row in h.iter_mut() {
                let y = row[i];
                if y != 0 {
                    row[c + 1] = zp.add(row[c + 1], zp.mul(f, y));
                }
            }
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1} - sum_i h_ik prod_{j=i+1..k} h_{j,j-1} p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let mut next = vec![0u64; k + 2];
        let prev = &polys[k];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = zp.add(next[i + 1], c);
            next[i] = zp.sub(next[i], zp.mul(h[k][k], c));
        }
        let mut prod = 1 % zp.p;
        for i in (0..k).rev() {
            prod = zp.mul(prod, h[i + 1][i]);
            if prod == 0 {
                break;
            }
            let f = zp.mul(h[i][k], prod);
            if f == 0 {
                continue;
            }
            for (j, &c) in polys[i].iter().enumerate() {
                next[j] = zp.sub(next[j], zp.mul(f, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn poly_rem(zp: Zp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let lead_inv = zp.inv(*b.last().expect("nonzero divisor"));
    while r.len() >= b.len() {
        let f = zp.mul(*r.last().expect("nonempty"), lead_inv);
        let shift = r.len() - b.len();
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = zp.sub(r[shift + i], zp.mul(f, c));
        }
        r = trim(r);
    }
    r
}

/// Monic gcd; the gcd of two zero polynomials is zero.
pub(crate) fn poly_gcd(zp: Zp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(zp, &a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(&l) = a.last() {
        let inv = zp.inv(l);
        for c in a.iter_mut() {
            *c = zp.mul(*c, inv);
        }
    }
    a
}

/// Coefficients of the interpolant through `(xs[i], ys[i])`, distinct `xs`.
pub(crate) fn interpolate(zp: Zp, xs: &[u64], ys: &[u64]) -> Vec<u64> {
    let n = xs.len();
    // Newton divided differences, then expansion.
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = zp.sub(dd[i], dd[i - 1]);
            let den = zp.sub(xs[i], xs[i - j]);
            dd[i] = zp.mul(num, zp.inv(den));
        }
    }
    let mut out = vec![0u64; n];
    for i in (0..n).rev() {
        // out = out * (x - xs[i]) + dd[i]
        let mut next = vec![0u64; n];
        for k in 0..n - 1 {
            next[k + 1] = zp.add(next[k + 1], out[k]);
            next[k] = zp.sub(next[k], zp.mul(xs[i], out[k]));
        }
        next[0] = zp.add(next[0], dd[i]);
        out = next;
    }
    out
}
