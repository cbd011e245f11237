//! Exact linear algebra over `Q` and `Z`: reduced row echelon form, quotient
//! coordinates, and fraction-free rank.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Vector = Vec<BigRational>;

/// A subspace of `Q^dim` in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Rref {
    /// Row-reduce the span of `vectors` (each of length `dim`).
    pub fn new(dim: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut rows: Vec<Vector> = vectors
            .into_iter()
            .inspect(|v| assert_eq!(v.len(), dim, "vector length mismatch"))
            .filter(|v| v.iter().any(|c| !c.is_zero()))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..dim {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][col].recip();
            for c in rows[r].iter_mut() {
                *c *= &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a -= &f * b;
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Rref { dim, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not occupied by a pivot, ascending. Their unit vectors form a
    /// basis of the quotient `Q^dim / span`.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut it = self.pivots.iter().peekable();
        (0..self.dim)
            .filter(|c| {
                if it.peek() == Some(&c) {
                    it.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// Reduce `v` modulo the span: the result vanishes on pivot coordinates.
    pub fn reduce(&self, v: &[BigRational]) -> Vector {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out[p].is_zero() {
                let f = out[p].clone();
                for (a, b) in out.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        out
    }

    /// Coordinates of the class of `v` in the quotient, in the basis given by
    /// [`Rref::free_columns`].
    pub fn quotient_coords(&self, v: &[BigRational]) -> Vector {
        let r = self.reduce(v);
        self.free_columns().into_iter().map(|c| r[c].clone()).collect()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_integer(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            for j in col + 1..ncols {
                let v = (&m[r][col] * &m[i][j] - &m[i][col] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[r][col].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Rank of a rational matrix: each row is scaled to integers, then
/// [`rank_integer`].
pub fn rank(rows: &[Vector]) -> usize {
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
            row.iter().map(|c| (c * BigRational::from(l.clone())).to_integer()).collect()
        })
        .collect();
    rank_integer(&ints)
}

pub fn int(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

pub fn unit(dim: usize, k: usize) -> Vector {
    (0..dim).map(|i| if i == k { BigRational::one() } else { BigRational::zero() }).collect()
}

pub fn zeros(dim: usize) -> Vector {
    vec![BigRational::zero(); dim]
}

pub fn is_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `m * v` for a column-major matrix given as its list of columns.
pub fn apply_columns(columns: &[Vector], v: &[BigRational], out_dim: usize) -> Vector {
    let mut out = zeros(out_dim);
    for (col, c) in columns.iter().zip(v) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(col) {
            *o += c * x;
        }
    }
    out
}

pub fn max_abs(v: &[BigRational]) -> BigRational {
    v.iter().map(|c| c.abs()).max().unwrap_or_else(BigRational::zero)
}
