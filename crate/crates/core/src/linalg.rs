//! Exact integer linear algebra by fraction-free (Bareiss) elimination.
//!
//! Every intermediate is a minor of the input, so all divisions are exact.
//! Arithmetic is checked `i128`. Rank and determinant redo the elimination
//! with arbitrary precision when a product overflows; the adjugate reports
//! [`Error::Overflow`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i128]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend_from_slice(r.as_ref());
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// `A(G)`.
    pub fn adjacency(g: &Graph) -> Self {
        let n = g.order();
        let mut m = IntMatrix::zeros(n, n);
        for (u, v) in g.edges() {
            m[(u, v)] = 1;
            m[(v, u)] = 1;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Principal submatrix on the index set `idx` (in ascending order).
    pub fn principal(&self, idx: &[usize]) -> Self {
        let mut m = IntMatrix::zeros(idx.len(), idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// Append a row.
    pub fn push_row(&mut self, row: &[i128]) -> Result<()> {
        if self.rows > 0 && row.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: row.len(),
            });
        }
        self.cols = row.len();
        self.data.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = 0i128;
                for k in 0..self.cols {
                    acc = checked_add(acc, checked_mul(self[(i, k)], other[(k, j)])?)?;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[i128]) -> Result<Vec<i128>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(0i128, |acc, (&a, &b)| checked_add(acc, checked_mul(a, b)?))
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i128;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[inline]
fn checked_mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

#[inline]
fn checked_add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// `(p * x - q * y) / d`, exact by Sylvester's identity.
#[inline]
fn bareiss_step(p: i128, x: i128, q: i128, y: i128, d: i128) -> Result<i128> {
    let num = checked_mul(p, x)?
        .checked_sub(checked_mul(q, y)?)
        .ok_or(Error::Overflow)?;
    debug_assert_eq!(num % d, 0, "Bareiss division must be exact");
    Ok(num / d)
}

/// Row echelon form by Bareiss elimination with first-nonzero pivoting.
/// Returns the pivot columns and the sign of the row permutation.
fn echelon(m: &mut IntMatrix) -> Result<(Vec<usize>, i128)> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut prev = 1i128;
    let mut sign = 1i128;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| m[(i, c)] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
            sign = -sign;
        }
        let pivot = m[(r, c)];
        for i in r + 1..rows {
            let lead = m[(i, c)];
            for j in c + 1..cols {
                m[(i, j)] = bareiss_step(pivot, m[(i, j)], lead, m[(r, j)], prev)?;
            }
            m[(i, c)] = 0;
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    Ok((pivots, sign))
}

/// [`echelon`] over `BigInt`. Returns the pivot columns, the permutation
/// sign and the last pivot.
fn echelon_wide(m: &IntMatrix) -> (Vec<usize>, i128, BigInt) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::from(1);
    let mut sign = 1i128;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (pivots, sign, prev)
}

fn pivot_columns(m: &IntMatrix) -> Result<Vec<usize>> {
    let mut work = m.clone();
    match echelon(&mut work) {
        Ok((pivots, _)) => Ok(pivots),
        Err(Error::Overflow) => Ok(echelon_wide(m).0),
        Err(e) => Err(e),
    }
}

/// Rank over the rationals.
pub fn rank_exact(m: &IntMatrix) -> Result<usize> {
    Ok(pivot_columns(m)?.len())
}

/// Lexicographically first set of linearly independent columns.
pub fn column_basis(m: &IntMatrix) -> Result<Vec<usize>> {
    pivot_columns(m)
}

pub fn det_exact(m: &IntMatrix) -> Result<i128> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(1);
    }
    let mut work = m.clone();
    match echelon(&mut work) {
        Ok((pivots, _)) if pivots.len() < n => Ok(0),
        Ok((_, sign)) => Ok(sign * work[(n - 1, n - 1)]),
        Err(Error::Overflow) => {
            let (pivots, sign, last) = echelon_wide(m);
            if pivots.len() < n {
                Ok(0)
            } else {
                (last * sign).to_i128().ok_or(Error::Overflow)
            }
        }
        Err(e) => Err(e),
    }
}

/// `det(A)` and `adj(A)` for a nonsingular square `A`, so that
/// `A * adj(A) = det(A) * I`.
pub fn adjugate(m: &IntMatrix) -> Result<(i128, IntMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    // Fraction-free Gauss-Jordan on [A | I].
    let w = 2 * n;
    let mut a = IntMatrix::zeros(n, w);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = m[(i, j)];
        }
        a[(i, n + i)] = 1;
    }
    let mut prev = 1i128;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[(i, k)] != 0) else {
            return Err(Error::Singular);
        };
        if p != k {
            for j in 0..w {
                a.data.swap(p * w + j, k * w + j);
            }
        }
        let pivot = a[(k, k)];
        for i in 0..n {
            if i == k {
                continue;
            }
            let lead = a[(i, k)];
            for j in 0..w {
                if j == k {
                    continue;
                }
                a[(i, j)] = bareiss_step(pivot, a[(i, j)], lead, a[(k, j)], prev)?;
            }
            a[(i, k)] = 0;
        }
        prev = pivot;
    }
    // Every diagonal entry now equals `prev`, and the right block is prev * A^-1.
    let det = det_exact(m)?;
    let scale = if prev == det {
        1
    } else if prev == -det {
        -1
    } else {
        return Err(Error::Internal(format!(
            "Gauss-Jordan pivot {prev} disagrees with determinant {det}"
        )));
    };
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            adj[(i, j)] = scale * a[(i, n + j)];
        }
    }
    Ok((det, adj))
}

/// `(d, y)` with `d = det(A)` and `y = adj(A) b`, so `A y = d b` exactly.
pub fn adjugate_solve(m: &IntMatrix, b: &[i128]) -> Result<(i128, Vec<i128>)> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            actual: b.len(),
        });
    }
    let (det, adj) = adjugate(m)?;
    Ok((det, adj.mul_vec(b)?))
}

/// A vertex set `S` with `|S| = rank(G)` and `det A[S,S] != 0`.
///
/// For a symmetric matrix any column basis indexes a nonsingular principal
/// submatrix; the greedy basis is verified with [`det_exact`] regardless.
pub fn nonsingular_principal_core(g: &Graph) -> Result<VertexSet> {
    let a = IntMatrix::adjacency(g);
    let basis = column_basis(&a)?;
    if det_exact(&a.principal(&basis))? != 0 {
        return Ok(basis.into_iter().collect());
    }
    let n = g.order();
    let r = basis.len();
    if n < 8 {
        for mask in 0u64..(1 << n) {
            if mask.count_ones() as usize != r {
                continue;
            }
            let idx = VertexSet::from_bits(mask).to_vec();
            if det_exact(&a.principal(&idx))? != 0 {
                return Ok(VertexSet::from_bits(mask));
            }
        }
    }
    Err(Error::Internal(
        "no nonsingular principal submatrix of full rank".into(),
    ))
}

/// `rank(A(G))`.
pub fn graph_rank(g: &Graph) -> usize {
    rank_exact(&IntMatrix::adjacency(g)).expect("0/1 adjacency elimination cannot overflow")
}
