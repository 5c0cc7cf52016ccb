//! Dense square matrices over a [`FiniteField`], row-major.

use std::fmt;

use super::field::{Fe, FiniteField};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    data: Box<[Fe]>,
}

impl Matrix {
    pub fn from_entries(n: usize, entries: Vec<Fe>) -> Result<Matrix> {
        if entries.len() != n * n {
            return Err(Error::Domain(format!(
                "{} entries do not form a {n}x{n} matrix",
                entries.len()
            )));
        }
        Ok(Matrix {
            n,
            data: entries.into_boxed_slice(),
        })
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::scalar(n, 1)
    }

    pub fn scalar(n: usize, a: Fe) -> Matrix {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = a;
        }
        Matrix {
            n,
            data: data.into_boxed_slice(),
        }
    }

    pub fn diagonal(diag: &[Fe]) -> Matrix {
        let n = diag.len();
        let mut data = vec![0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            data[i * n + i] = d;
        }
        Matrix {
            n,
            data: data.into_boxed_slice(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Fe>]) -> Matrix {
        let n = cols.len();
        let mut data = vec![0; n * n];
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                data[i * n + j] = x;
            }
        }
        Matrix {
            n,
            data: data.into_boxed_slice(),
        }
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Matrix {
        let n = rows.len();
        Matrix {
            n,
            data: rows.concat().into_boxed_slice(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.n + j]
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j);
            }
        }
        Matrix {
            n,
            data: data.into_boxed_slice(),
        }
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0);
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { d } else { 0 }))
    }

    /// First nonzero entry in row-major order.
    pub fn leading_entry(&self) -> Option<Fe> {
        self.data.iter().copied().find(|&x| x != 0)
    }

    /// Permutes rows and columns: `out[i][j] = self[rows[i]][cols[j]]`.
    pub fn permuted(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = self.get(rows[i], cols[j]);
            }
        }
        Matrix {
            n,
            data: data.into_boxed_slice(),
        }
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.data.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}

impl FiniteField {
    pub fn mat_mul(&self, a: &Matrix, b: &Matrix) -> Matrix {
        let n = a.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    data[idx] = self.add(data[idx], self.mul(x, b.get(k, j)));
                }
            }
        }
        Matrix {
            n,
            data: data.into_boxed_slice(),
        }
    }

    pub fn mat_scale(&self, a: &Matrix, s: Fe) -> Matrix {
        Matrix {
            n: a.n,
            data: a.data.iter().map(|&x| self.mul(x, s)).collect(),
        }
    }

    pub fn mat_sub(&self, a: &Matrix, b: &Matrix) -> Matrix {
        Matrix {
            n: a.n,
            data: a.data.iter().zip(b.data.iter()).map(|(&x, &y)| self.sub(x, y)).collect(),
        }
    }

    /// Entrywise involution `J`.
    pub fn mat_conj(&self, a: &Matrix) -> Result<Matrix> {
        let data = a.data.iter().map(|&x| self.conj(x)).collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            n: a.n,
            data: data.into_boxed_slice(),
        })
    }

    pub fn mat_vec(&self, a: &Matrix, v: &[Fe]) -> Vec<Fe> {
        (0..a.n)
            .map(|i| (0..a.n).fold(0, |acc, j| self.add(acc, self.mul(a.get(i, j), v[j]))))
            .collect()
    }

    /// Row echelon form in place; returns the rank and the product of pivots
    /// adjusted by swap signs (the determinant when the matrix is square and
    /// full rank).
    fn eliminate(&self, rows: &mut [Vec<Fe>]) -> (usize, Fe) {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        let mut det: Fe = 1;
        for col in 0..ncols {
            let Some(pivot) = (rank..nrows).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            if pivot != rank {
                rows.swap(pivot, rank);
                det = self.neg(det);
            }
            let pv = rows[rank][col];
            det = self.mul(det, pv);
            let pinv = self.inv(pv).expect("pivot is nonzero");
            for r in rank + 1..nrows {
                let factor = self.mul(rows[r][col], pinv);
                if factor == 0 {
                    continue;
                }
                for c in col..ncols {
                    let sub = self.mul(factor, rows[rank][c]);
                    rows[r][c] = self.sub(rows[r][c], sub);
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    pub fn rank(&self, a: &Matrix) -> usize {
        let mut rows: Vec<Vec<Fe>> = (0..a.n).map(|i| a.data[i * a.n..(i + 1) * a.n].to_vec()).collect();
        self.eliminate(&mut rows).0
    }

    /// Rank of a list of vectors.
    pub fn rank_of_vectors(&self, vectors: &[Vec<Fe>]) -> usize {
        let mut rows = vectors.to_vec();
        self.eliminate(&mut rows).0
    }

    pub fn det(&self, a: &Matrix) -> Fe {
        let mut rows: Vec<Vec<Fe>> = (0..a.n).map(|i| a.data[i * a.n..(i + 1) * a.n].to_vec()).collect();
        let (rank, det) = self.eliminate(&mut rows);
        if rank < a.n {
            0
        } else {
            det
        }
    }

    /// Gauss-Jordan inverse; `None` for singular input.
    pub fn mat_inv(&self, a: &Matrix) -> Option<Matrix> {
        let n = a.n;
        let mut rows: Vec<Vec<Fe>> = (0..n)
            .map(|i| {
                let mut r = a.data[i * n..(i + 1) * n].to_vec();
                r.extend((0..n).map(|j| u8::from(i == j)));
                r
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| rows[r][col] != 0)?;
            rows.swap(pivot, col);
            let pinv = self.inv(rows[col][col])?;
            for c in 0..2 * n {
                rows[col][c] = self.mul(rows[col][c], pinv);
            }
            for r in 0..n {
                if r == col || rows[r][col] == 0 {
                    continue;
                }
                let factor = rows[r][col];
                for c in 0..2 * n {
                    let sub = self.mul(factor, rows[col][c]);
                    rows[r][c] = self.sub(rows[r][c], sub);
                }
            }
        }
        let data: Vec<Fe> = rows.iter().flat_map(|r| r[n..].iter().copied()).collect();
        Some(Matrix {
            n,
            data: data.into_boxed_slice(),
        })
    }

    /// Scales so the first nonzero entry in row-major order is 1.
    pub fn canonical_projective(&self, a: &Matrix) -> Matrix {
        match a.leading_entry() {
            Some(1) | None => a.clone(),
            Some(x) => self.mat_scale(a, self.inv(x).expect("nonzero")),
        }
    }

    /// Rank of `a*I - m` for every nonzero scalar `a`, in increasing code order.
    pub fn rank_shifted(&self, m: &Matrix) -> Vec<(Fe, usize)> {
        self.nonzero()
            .map(|a| (a, self.rank(&self.mat_sub(&Matrix::scalar(m.n, a), m))))
            .collect()
    }
}
