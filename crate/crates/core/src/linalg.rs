//! Dense matrices over a prime field `F_p`.
//!
//! Vectors act as columns: a matrix `A` sends `v` to `A v`. Vectors of
//! `F_p^d` are encoded as integers `sum v_i p^i`, matching the element
//! indexing of [`crate::corpus::elementary_abelian`].

use crate::error::{GroupError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

pub fn inv_mod(x: u32, p: u32) -> u32 {
    // Fermat; p is prime
    pow_mod(x, p - 2, p)
}

pub fn pow_mod(b: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = (b % p) as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

impl Matrix {
    pub fn zero(p: u32, rows: usize, cols: usize) -> Matrix {
        Matrix {
            p,
            rows,
            cols,
            a: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Matrix {
        let mut m = Matrix::zero(p, n, n);
        for i in 0..n {
            m.a[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<i64>]) -> Matrix {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = Matrix::zero(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.a[i * c + j] = x.rem_euclid(p as i64) as u32;
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.a[i * self.cols + j] = v % self.p;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows);
        let p = self.p as u64;
        let mut m = Matrix::zero(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k) as u64;
                if x == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    m.a[idx] = ((m.a[idx] as u64 + x * o.get(k, j) as u64) % p) as u32;
                }
            }
        }
        m
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        let mut m = self.clone();
        for (x, y) in m.a.iter_mut().zip(&o.a) {
            *x = (*x + y) % self.p;
        }
        m
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        let mut m = self.clone();
        for (x, y) in m.a.iter_mut().zip(&o.a) {
            *x = (*x + self.p - y) % self.p;
        }
        m
    }

    pub fn scale(&self, s: u32) -> Matrix {
        let mut m = self.clone();
        for x in &mut m.a {
            *x = ((*x as u64 * s as u64) % self.p as u64) as u32;
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.a[j * self.rows + i] = self.get(i, j);
            }
        }
        m
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut r = Matrix::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        r
    }

    /// Row-reduced echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let p = self.p as u64;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.a.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), self.p) as u64;
            for j in 0..m.cols {
                let v = (m.get(r, j) as u64 * inv % p) as u32;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c) as u64;
                if f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) as u64 + p * p - f * m.get(r, j) as u64) % p;
                    m.set(i, j, v as u32);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> u32 {
        assert!(self.is_square());
        let p = self.p as u64;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| m.get(i, c) != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    m.a.swap(piv * n + j, c * n + j);
                }
                det = (p - det) % p;
            }
            let d = m.get(c, c) as u64;
            det = det * d % p;
            let inv = inv_mod(d as u32, self.p) as u64;
            for i in c + 1..n {
                let f = m.get(i, c) as u64 * inv % p;
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    let v = (m.get(i, j) as u64 + p * p - f * m.get(c, j) as u64) % p;
                    m.set(i, j, v as u32);
                }
            }
        }
        det as u32
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.rows;
        if !self.is_square() || self.det() == 0 {
            return Err(GroupError::NotInvertible(self.p));
        }
        let mut aug = Matrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let (r, _) = aug.rref();
        let mut inv = Matrix::zero(self.p, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Basis of the right nullspace `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let p = self.p;
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(i, f)) % p;
                }
                v
            })
            .collect()
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) as u64 * v[j] as u64)
                    .sum::<u64>()
                    .rem_euclid(p) as u32
            })
            .collect()
    }

    /// Block-diagonal sum of copies of `self`.
    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let p = blocks[0].p;
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Matrix::zero(p, n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.rows;
        }
        m
    }
}

pub fn encode(v: &[u32], p: u32) -> usize {
    v.iter().rev().fold(0usize, |acc, &x| acc * p as usize + x as usize)
}

pub fn decode(mut x: usize, p: u32, d: usize) -> Vec<u32> {
    let mut v = vec![0u32; d];
    for c in v.iter_mut() {
        *c = (x % p as usize) as u32;
        x /= p as usize;
    }
    v
}

/// Dimension of the commutant `{X : X A_i = A_i X for all i}`, from the
/// nullspace of the stacked linear conditions.
pub fn commutant_dim(p: u32, d: usize, mats: &[Matrix]) -> usize {
    let n = d * d;
    // unknown X[r][c] sits at column r*d + c
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for a in mats {
        for i in 0..d {
            for j in 0..d {
                // (X A)[i][j] - (A X)[i][j]
                let mut row = vec![0i64; n];
                for k in 0..d {
                    row[i * d + k] += a.get(k, j) as i64;
                    row[k * d + j] -= a.get(i, k) as i64;
                }
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        return n;
    }
    n - Matrix::from_rows(p, &rows).rank()
}

/// Same count by enumerating every `d x d` matrix; returns `None` when
/// `p^(d^2)` exceeds `limit`.
pub fn commutant_size_brute(p: u32, d: usize, mats: &[Matrix], limit: u64) -> Option<u64> {
    let total = (p as u64).checked_pow((d * d) as u32)?;
    if total > limit {
        return None;
    }
    let mut count = 0;
    for code in 0..total {
        let mut x = Matrix::zero(p, d, d);
        let mut c = code;
        for k in 0..d * d {
            x.a[k] = (c % p as u64) as u32;
            c /= p as u64;
        }
        if mats.iter().all(|a| x.mul(a) == a.mul(&x)) {
            count += 1;
        }
    }
    Some(count)
}

/// Every subspace of `F_p^d` of dimension `k`, as sorted lists of encoded
/// vectors. Enumerates reduced echelon bases directly.
pub fn all_subspaces(p: u32, d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > d {
        return out;
    }
    // choose pivot columns, then free entries right of each pivot in
    // non-pivot columns
    let mut piv = Vec::new();
    fn choose(
        start: usize,
        d: usize,
        k: usize,
        piv: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if piv.len() == k {
            f(piv);
            return;
        }
        for c in start..d {
            piv.push(c);
            choose(c + 1, d, k, piv, f);
            piv.pop();
        }
    }
    choose(0, d, k, &mut piv, &mut |pv: &[usize]| {
        let mut slots = Vec::new();
        for (r, &pc) in pv.iter().enumerate() {
            for c in pc + 1..d {
                if !pv.contains(&c) {
                    slots.push((r, c));
                }
            }
        }
        let combos = (p as usize).pow(slots.len() as u32);
        for code in 0..combos {
            let mut basis = vec![vec![0u32; d]; k];
            for (r, &pc) in pv.iter().enumerate() {
                basis[r][pc] = 1;
            }
            let mut c = code;
            for &(r, col) in &slots {
                basis[r][col] = (c % p as usize) as u32;
                c /= p as usize;
            }
            out.push(span(p, &basis));
        }
    });
    out
}

/// All vectors in the span of `basis`, encoded and sorted.
pub fn span(p: u32, basis: &[Vec<u32>]) -> Vec<usize> {
    let d = basis.first().map_or(0, |b| b.len());
    let k = basis.len();
    let total = (p as usize).pow(k as u32);
    let mut out = Vec::with_capacity(total);
    for code in 0..total {
        let mut v = vec![0u32; d];
        let mut c = code;
        for b in basis {
            let coef = (c % p as usize) as u32;
            c /= p as usize;
            for (x, &y) in v.iter_mut().zip(b) {
                *x = (*x + coef * y) % p;
            }
        }
        out.push(encode(&v, p));
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_and_inverse() {
        let a = Matrix::from_rows(7, &[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.det(), (4 - 6i64).rem_euclid(7) as u32);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), Matrix::identity(7, 2));
        let s = Matrix::from_rows(3, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(s.det(), 0);
        assert_eq!(s.inverse(), Err(GroupError::NotInvertible(3)));
    }

    #[test]
    fn subspace_counts() {
        // Gaussian binomials
        assert_eq!(all_subspaces(3, 3, 2).len(), 13);
        assert_eq!(all_subspaces(2, 4, 2).len(), 35);
        assert_eq!(all_subspaces(2, 2, 1).len(), 3);
    }

    #[test]
    fn commutant_routes_agree() {
        // order-3 element of GL(2,2): commutant is F_4
        let a = Matrix::from_rows(2, &[vec![0, 1], vec![1, 1]]);
        assert_eq!(commutant_dim(2, 2, &[a.clone()]), 2);
        assert_eq!(commutant_size_brute(2, 2, &[a], 1 << 20), Some(4));
    }

    #[test]
    fn encode_round_trip() {
        let v = vec![1, 2, 0, 1];
        assert_eq!(decode(encode(&v, 3), 3, 4), v);
    }
}
