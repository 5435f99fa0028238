use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

type Row = BTreeMap<usize, Scalar>;

/// An exact rational matrix, stored as sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Row>,
}

/// Reduced row echelon form and its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// `A·particular = b`; the kernel vectors span the null space of `A`.
    Solved {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
    /// `y·A = 0` and `y·b ≠ 0`.
    Inconsistent { certificate: Vec<Scalar> },
}

fn axpy(target: &mut Row, factor: &Scalar, source: &Row) {
    for (&c, v) in source {
        let entry = target.entry(c).or_insert_with(Scalar::zero);
        *entry += factor * v;
        if entry.is_zero() {
            target.remove(&c);
        }
    }
}

/// Gauss-Jordan elimination with pivots restricted to columns `< limit`.
fn eliminate(rows: &mut [Row], limit: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..limit {
        if next == rows.len() {
            break;
        }
        // sparsest candidate row keeps fill-in down
        let Some(p) = (next..rows.len())
            .filter(|&r| rows[r].contains_key(&col))
            .min_by_key(|&r| rows[r].len())
        else {
            continue;
        };
        rows.swap(next, p);
        let inv = scalar::one() / &rows[next][&col];
        for v in rows[next].values_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next {
                continue;
            }
            if let Some(f) = row.get(&col).cloned() {
                axpy(row, &-f, &pivot_row);
            }
        }
        pivots.push(col);
        next += 1;
    }
    pivots
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Row::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Builds a matrix from its columns, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has {} entries, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].insert(j, v.clone());
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.data[i].get(&j).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    /// Nonzero entries of row `i` in column order.
    pub fn row_entries(&self, i: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.data[i].iter().map(|(&j, v)| (j, v))
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (&j, v) in row {
                t.data[j].insert(i, v.clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| row.iter().fold(Scalar::zero(), |acc, (&j, v)| acc + v * &x[j]))
            .collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (&k, v) in row {
                axpy(&mut out.data[i], v, &other.data[k]);
            }
        }
        Ok(out)
    }

    /// Stacks blocks with equal column counts on top of each other.
    pub fn vstack(blocks: &[RationalMatrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if let Some(b) = blocks.iter().find(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns onto {cols}",
                b.cols
            )));
        }
        Ok(Self {
            rows: blocks.iter().map(|b| b.rows).sum(),
            cols,
            data: blocks.iter().flat_map(|b| b.data.iter().cloned()).collect(),
        })
    }

    pub fn rref(&self) -> Rref {
        let mut data = self.data.clone();
        let pivots = eliminate(&mut data, self.cols);
        Rref {
            matrix: Self {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// A basis of the null space, one vector per free column in increasing
    /// column order.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&matrix.data, &pivots, self.cols)
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut data: Vec<Row> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.insert(n + i, scalar::one());
                r
            })
            .collect();
        if eliminate(&mut data, n).len() < n {
            return None;
        }
        Some(Self {
            rows: n,
            cols: n,
            data: data
                .into_iter()
                .map(|row| row.into_iter().filter(|&(j, _)| j >= n).map(|(j, v)| (j - n, v)).collect())
                .collect(),
        })
    }

    /// Exact solution of `A·x = b`. Free variables of the particular
    /// solution are zero.
    pub fn solve(&self, b: &[Scalar]) -> Result<Solution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut data: Vec<Row> = self
            .data
            .iter()
            .zip(b)
            .map(|(row, bi)| {
                let mut r = row.clone();
                if !bi.is_zero() {
                    r.insert(n, bi.clone());
                }
                r
            })
            .collect();
        let pivots = eliminate(&mut data, n);
        if data[pivots.len()..].iter().any(|row| !row.is_empty()) {
            return Ok(Solution::Inconsistent {
                certificate: self.certificate(b),
            });
        }
        let mut particular = vec![Scalar::zero(); n];
        for (k, &p) in pivots.iter().enumerate() {
            if let Some(v) = data[k].get(&n) {
                particular[p] = v.clone();
            }
        }
        let kernel = kernel_from_rref(&data, &pivots, n);
        Ok(Solution::Solved { particular, kernel })
    }

    /// Left null vector pairing nonzero with `b`; recomputed with the row
    /// operations tracked so the fast path above stays cheap.
    fn certificate(&self, b: &[Scalar]) -> Vec<Scalar> {
        let (n, m) = (self.cols, self.rows);
        let mut data: Vec<Row> = self
            .data
            .iter()
            .zip(b)
            .enumerate()
            .map(|(i, (row, bi))| {
                let mut r = row.clone();
                if !bi.is_zero() {
                    r.insert(n, bi.clone());
                }
                r.insert(n + 1 + i, scalar::one());
                r
            })
            .collect();
        let rank = eliminate(&mut data, n).len();
        let row = data[rank..]
            .iter()
            .find(|row| row.contains_key(&n))
            .expect("inconsistent system has a witness row");
        (0..m)
            .map(|i| row.get(&(n + 1 + i)).cloned().unwrap_or_else(Scalar::zero))
            .collect()
    }
}

fn kernel_from_rref(data: &[Row], pivots: &[usize], cols: usize) -> Vec<Vec<Scalar>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (k, &p) in pivots.iter().enumerate() {
                if let Some(c) = data[k].get(&f) {
                    v[p] = -c.clone();
                }
            }
            v
        })
        .collect()
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}
