use std::fmt;

/// Default characteristic for algebra sessions.
pub const DEFAULT_PRIME: u32 = 101;

/// Largest supported characteristic; keeps accumulated products in `u64`.
pub const MAX_PRIME: u32 = 65521;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    add_mod(a, p - b % p, p)
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (Fermat).
pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "inverse of zero mod {p}");
    pow_mod(a, p as u64 - 2, p)
}

/// Reduce a signed integer into `[0, p)`.
pub fn reduce_i64(c: i64, p: u32) -> u32 {
    c.rem_euclid(p as i64) as u32
}

/// Dense row-major matrix over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix[{}x{} mod {}]", self.rows, self.cols, self.p)?;
        for r in 0..self.rows {
            write!(f, "\n  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of a reduced row echelon computation.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// Nonzero rows of the reduced echelon form.
    pub basis: FpMatrix,
    /// Pivot column of each basis row, increasing.
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        FpMatrix { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.data[i * n + i] = 1 % p;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = v % p;
            }
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = reduce_i64(v, p);
            }
        }
        m
    }

    pub fn from_flat(rows: usize, cols: usize, p: u32, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        FpMatrix { rows, cols, p, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [u32] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows, self.p);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        assert_eq!(self.p, other.p);
        let p = self.p as u64;
        let n = other.cols;
        let mut out = FpMatrix::zeros(self.rows, n, self.p);
        let mut acc = vec![0u64; n];
        for r in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let orow = &other.data[k * n..(k + 1) * n];
                for (slot, &b) in acc.iter_mut().zip(orow) {
                    *slot += a * b as u64;
                }
                // p < 2^16 keeps 1024 accumulated products below 2^42
                if k % 1024 == 1023 {
                    acc.iter_mut().for_each(|a| *a %= p);
                }
            }
            for (c, a) in acc.iter().enumerate() {
                out.data[r * n + c] = (a % p) as u32;
            }
        }
        out
    }

    pub fn add(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| add_mod(a, b, p)).collect();
        FpMatrix { rows: self.rows, cols: self.cols, p, data }
    }

    pub fn sub(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let p = self.p;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sub_mod(a, b, p)).collect();
        FpMatrix { rows: self.rows, cols: self.cols, p, data }
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let p = self.p;
        let data = self.data.iter().map(|&a| mul_mod(a, c, p)).collect();
        FpMatrix { rows: self.rows, cols: self.cols, p, data }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &FpMatrix, c: u32) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c == 0 {
            return;
        }
        let p = self.p;
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = add_mod(*a, mul_mod(b, c, p), p);
        }
    }

    pub fn vstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix { rows: self.rows + other.rows, cols: self.cols, p: self.p, data }
    }

    pub fn hstack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut out = FpMatrix::zeros(self.rows, cols, self.p);
        for r in 0..self.rows {
            out.data[r * cols..r * cols + self.cols].copy_from_slice(self.row(r));
            out.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row(r));
        }
        out
    }

    /// Block-diagonal sum.
    pub fn block_diag(blocks: &[&FpMatrix], p: u32) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(rows, cols, p);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &FpMatrix) {
        for r in 0..b.rows {
            let dst = (r0 + r) * self.cols + c0;
            self.data[dst..dst + b.cols].copy_from_slice(b.row(r));
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut out = FpMatrix::zeros(rows, cols, self.p);
        for r in 0..rows {
            let src = (r0 + r) * self.cols + c0;
            out.data[r * cols..(r + 1) * cols].copy_from_slice(&self.data[src..src + cols]);
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(idx.len(), self.cols, self.p);
        for (i, &r) in idx.iter().enumerate() {
            out.row_mut(i).copy_from_slice(self.row(r));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.rows, idx.len(), self.p);
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.data[r * idx.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Reduced row echelon form, returning the nonzero rows and their pivots.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if pr != lead {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, lead * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(lead, c), p);
            for j in c..m.cols {
                let v = m.get(lead, j);
                m.data[lead * m.cols + j] = mul_mod(v, inv, p);
            }
            let cols = m.cols;
            let (head, tail) = m.data.split_at_mut(lead * cols);
            let (prow, rest) = tail.split_at_mut(cols);
            let eliminate = |row: &mut [u32]| {
                let f = row[c];
                if f != 0 {
                    let nf = p - f;
                    for j in c..cols {
                        if prow[j] != 0 {
                            row[j] = ((row[j] as u64 + nf as u64 * prow[j] as u64) % p as u64) as u32;
                        }
                    }
                }
            };
            head.chunks_mut(cols).for_each(eliminate);
            rest.chunks_mut(cols).for_each(eliminate);
            pivots.push(c);
            lead += 1;
        }
        m.data.truncate(lead * m.cols);
        m.rows = lead;
        Echelon { basis: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Rows spanning `{x : self * x^T = 0}`; the row count is `cols - rank`.
    pub fn kernel_basis(&self) -> FpMatrix {
        let e = self.echelon();
        let n = self.cols;
        let p = self.p;
        let mut is_pivot = vec![false; n];
        for &c in &e.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut out = FpMatrix::zeros(free.len(), n, p);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, 1);
            for (r, &pc) in e.pivots.iter().enumerate() {
                let v = e.basis.get(r, f);
                if v != 0 {
                    out.set(i, pc, neg_mod(v, p));
                }
            }
        }
        out
    }

    /// Rows spanning `{x : x * self = 0}`.
    pub fn left_kernel(&self) -> FpMatrix {
        self.transpose().kernel_basis()
    }

    /// Some `x` with `self * x = b`, if one exists.
    pub fn solve(&self, b: &FpMatrix) -> Option<FpMatrix> {
        assert_eq!(self.rows, b.rows, "incompatible right-hand side");
        let aug = self.hstack(b);
        let e = aug.echelon();
        let n = self.cols;
        if e.pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = FpMatrix::zeros(n, b.cols, self.p);
        for (r, &pc) in e.pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, e.basis.get(r, n + j));
            }
        }
        Some(x)
    }

    /// Some `x` with `x * self = b`, if one exists.
    pub fn solve_left(&self, b: &FpMatrix) -> Option<FpMatrix> {
        self.transpose().solve(&b.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&FpMatrix::identity(self.rows, self.p))?;
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn trace(&self) -> u32 {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| add_mod(acc, self.get(i, i), self.p))
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = FpMatrix::identity(self.rows, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Vector (1 x n) times matrix.
    pub fn vec_mul(v: &[u32], m: &FpMatrix) -> Vec<u32> {
        assert_eq!(v.len(), m.rows);
        let p = m.p as u64;
        let mut acc = vec![0u64; m.cols];
        for (k, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (slot, &b) in acc.iter_mut().zip(m.row(k)) {
                *slot = (*slot + a as u64 * b as u64) % p;
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }
}

/// Subspace helpers on row bases.
impl FpMatrix {
    /// Echelon basis of the row space.
    pub fn row_space(&self) -> FpMatrix {
        self.echelon().basis
    }

    /// Standard basis vectors completing the row space to the whole space,
    /// chosen at the non-pivot columns of the echelon form.
    pub fn complement_basis(&self) -> FpMatrix {
        let e = self.echelon();
        let mut is_pivot = vec![false; self.cols];
        for &c in &e.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = FpMatrix::zeros(free.len(), self.cols, self.p);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, 1);
        }
        out
    }

    /// Rows of `sub` all lie in the row space of `self`.
    pub fn contains_rows(&self, sub: &FpMatrix) -> bool {
        if sub.rows == 0 {
            return true;
        }
        self.vstack(sub).rank() == self.rank()
    }

    /// Intersection of two row spaces.
    pub fn intersect(&self, other: &FpMatrix) -> FpMatrix {
        // x*U = y*V  <=>  [x y] * [U; -V] = 0
        if self.rows == 0 || other.rows == 0 {
            return FpMatrix::zeros(0, self.cols, self.p);
        }
        let u = self.row_space();
        let v = other.row_space();
        let stacked = u.vstack(&v.scale(self.p - 1));
        let k = stacked.left_kernel();
        let coeffs = k.block(0, 0, k.rows, u.rows);
        coeffs.mul(&u).row_space()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[u32]], p: u32) -> FpMatrix {
        let cols = rows.first().map(|r| r.len()).unwrap_or(0);
        FpMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), cols, p)
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(3, 5).rank(), 3);
        assert_eq!(FpMatrix::zeros(4, 2, 5).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]], 5).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(FpMatrix::identity(2, 5).kernel_basis().rows(), 0);
        assert_eq!(FpMatrix::zeros(2, 3, 5).kernel_basis().rows(), 3);
        let a = m(&[&[1, 1, 0]], 5);
        let k = a.kernel_basis();
        assert_eq!(k.rows(), 2);
        assert!(a.mul(&k.transpose()).is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = m(&[&[3, 1], &[4, 0]], 5);
        assert_eq!(FpMatrix::identity(2, 5).solve(&b), Some(b.clone()));
        assert_eq!(FpMatrix::zeros(2, 2, 5).solve(&b), None);
        assert_eq!(m(&[&[2]], 5).solve(&m(&[&[1]], 5)), Some(m(&[&[3]], 5)));
    }

    #[test]
    fn intersection_and_complement() {
        let u = m(&[&[1, 0, 0], &[0, 1, 0]], 7);
        let v = m(&[&[0, 1, 0], &[0, 0, 1]], 7);
        let i = u.intersect(&v);
        assert_eq!(i.rows(), 1);
        assert_eq!(i.row(0), &[0, 1, 0]);
        let c = u.complement_basis();
        assert_eq!(c.rows(), 1);
        assert_eq!(c.row(0), &[0, 0, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]], 101);
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai), FpMatrix::identity(2, 101));
    }
}
