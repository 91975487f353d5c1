use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged row");
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        IntMatrix { rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Rank of the row lattice, via fraction-free (Bareiss) elimination.
    pub fn lattice_rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut prev = BigInt::from(1);
        let mut rank = 0;
        for c in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pr) = (rank..rows).find(|&r| !m[r * cols + c].is_zero()) else {
                continue;
            };
            if pr != rank {
                for j in 0..cols {
                    m.swap(pr * cols + j, rank * cols + j);
                }
            }
            let pivot = m[rank * cols + c].clone();
            for r in rank + 1..rows {
                let f = m[r * cols + c].clone();
                for j in c..cols {
                    let v = &pivot * &m[r * cols + j] - &f * &m[rank * cols + j];
                    // exact division is the Bareiss invariant
                    m[r * cols + j] = v / &prev;
                }
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Row echelon basis of the row lattice (integer row operations only),
    /// with positive pivots.
    pub fn hermite(&self) -> IntMatrix {
        let cols = self.cols;
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        let mut out: Vec<Vec<BigInt>> = Vec::new();
        for c in 0..cols {
            loop {
                let nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
                if nz.len() <= 1 {
                    break;
                }
                let k = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
                let piv = rows[k].clone();
                for &i in &nz {
                    if i == k {
                        continue;
                    }
                    let q = &rows[i][c] / &piv[c];
                    for j in c..cols {
                        let v = &rows[i][j] - &q * &piv[j];
                        rows[i][j] = v;
                    }
                }
            }
            if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
                let mut r = rows.swap_remove(i);
                if r[c].is_negative() {
                    r.iter_mut().for_each(|x| *x = -x.clone());
                }
                out.push(r);
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        }
        IntMatrix::from_rows(out, cols)
    }

    /// Whether v lies in the row lattice.
    pub fn lattice_contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.cols);
        let h = self.hermite();
        let mut v = v.to_vec();
        for r in 0..h.rows {
            let row = h.row(r);
            let c = row.iter().position(|x| !x.is_zero()).unwrap();
            if v[..c].iter().any(|x| !x.is_zero()) {
                return false;
            }
            if (&v[c] % &row[c]).is_zero() {
                let q = &v[c] / &row[c];
                for j in c..self.cols {
                    v[j] = &v[j] - &q * &row[j];
                }
            } else {
                return false;
            }
        }
        v.iter().all(|x| x.is_zero())
    }

    pub fn max_abs_bits(&self) -> u64 {
        self.data.iter().map(|x| x.abs().bits()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(IntMatrix::from_i64_rows(&[vec![1, 0], vec![0, 1]], 2).lattice_rank(), 2);
        assert_eq!(IntMatrix::from_i64_rows(&[vec![1, 1], vec![2, 2]], 2).lattice_rank(), 1);
        assert_eq!(IntMatrix::zeros(0, 3).lattice_rank(), 0);
    }

    #[test]
    fn lattice_membership() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 0], vec![0, 3], vec![4, 6]], 2);
        let h = m.hermite();
        assert_eq!(h.rows(), 2);
        let b = |x: i64, y: i64| vec![BigInt::from(x), BigInt::from(y)];
        assert!(m.lattice_contains(&b(2, 3)));
        assert!(m.lattice_contains(&b(-4, 9)));
        assert!(!m.lattice_contains(&b(1, 0)));
        assert!(!m.lattice_contains(&b(0, 1)));
        let z = IntMatrix::zeros(0, 2);
        assert!(z.lattice_contains(&b(0, 0)));
        assert!(!z.lattice_contains(&b(0, 1)));
    }

    #[test]
    fn rank_sees_past_mod_p_collapse() {
        // rank 2 over Q even though the rows agree mod 101
        let m = IntMatrix::from_i64_rows(&[vec![1, 102], vec![1, 1]], 2);
        assert_eq!(m.lattice_rank(), 2);
    }
}
