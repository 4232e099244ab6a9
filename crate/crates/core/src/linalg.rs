//! Dense exact matrices over `BigInt` and `BigRational`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Principal submatrix on the given (sorted or unsorted) index list.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Matrix::from_fn(indices.len(), indices.len(), |r, c| {
            self[(indices[r], indices[c])].clone()
        })
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }
}

impl<T: Clone + Num> Matrix<T> {
    /// `self * rhs`; panics when the inner dimensions disagree.
    pub fn mul_matrix(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                acc = acc + a.clone() * rhs[(k, c)].clone();
            }
            acc
        })
    }

    pub fn mul_vector(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn is_antisymmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            if !self[(i, i)].is_zero() {
                return false;
            }
            for j in i + 1..self.cols {
                if !(self[(i, j)].clone() + self[(j, i)].clone()).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

impl<'a, T: Clone + Num> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        self.mul_matrix(rhs)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (r, c): (usize, usize)) -> &T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        assert!(r < self.rows && c < self.cols, "matrix index out of range");
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}{}", self.rows, self.cols, self)
    }
}

impl IntMatrix {
    /// Convenience constructor from small literals. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
        .expect("ragged matrix literal")
    }

    /// Matrix whose columns are the given integer vectors.
    pub fn from_columns<C: AsRef<[i64]>>(rows: usize, columns: &[C]) -> Self {
        Matrix::from_fn(rows, columns.len(), |r, c| BigInt::from(columns[c].as_ref()[r]))
    }

    pub fn to_rational(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(to_i64).collect())
            .collect()
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && determinant(self).is_ok_and(|d| d.abs().is_one())
    }
}

impl RatMatrix {
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        IntMatrix::from_i64_rows(rows).to_rational()
    }
}

pub(crate) fn to_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Overflow)
}

/// `u * m * v = d` with `u`, `v` unimodular and `d` in Smith normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries of `d`, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Smith normal form by repeated minimal-pivot elimination.
///
/// The pivot is the nonzero entry of least absolute value in the trailing
/// submatrix, ties broken by the first such entry in row-major order.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = min_pivot(&d, t) else {
                return SmithDecomposition { u, d, v };
            };
            d.swap_rows(t, pr);
            u.swap_rows(t, pr);
            d.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut settled = true;
            for r in t + 1..rows {
                if d[(r, t)].is_zero() {
                    continue;
                }
                let q = &d[(r, t)] / &d[(t, t)];
                row_axpy(&mut d, r, t, &q);
                row_axpy(&mut u, r, t, &q);
                settled &= d[(r, t)].is_zero();
            }
            for c in t + 1..cols {
                if d[(t, c)].is_zero() {
                    continue;
                }
                let q = &d[(t, c)] / &d[(t, t)];
                col_axpy(&mut d, c, t, &q);
                col_axpy(&mut v, c, t, &q);
                settled &= d[(t, c)].is_zero();
            }
            if !settled {
                continue;
            }

            // divisibility: fold an offending row into the pivot row and retry
            let pivot = d[(t, t)].clone();
            let offending = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !d[(r, c)].is_multiple_of(&pivot)));
            match offending {
                Some(r) => {
                    row_axpy(&mut d, t, r, &BigInt::from(-1));
                    row_axpy(&mut u, t, r, &BigInt::from(-1));
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            negate_row(&mut d, t);
            negate_row(&mut u, t);
        }
    }
    SmithDecomposition { u, d, v }
}

fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let x = &d[(r, c)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((br, bc)) if d[(br, bc)].abs() <= x.abs() => {}
                _ => best = Some((r, c)),
            }
        }
    }
    best
}

// row[target] -= q * row[source]
fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for c in 0..m.cols() {
        let delta = q * &m[(source, c)];
        m[(target, c)] -= delta;
    }
}

// col[target] -= q * col[source]
fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for r in 0..m.rows() {
        let delta = q * &m[(r, source)];
        m[(r, target)] -= delta;
    }
}

fn negate_row(m: &mut IntMatrix, r: usize) {
    for c in 0..m.cols() {
        let x = -core::mem::take(&mut m[(r, c)]);
        m[(r, c)] = x;
    }
}

/// Inverse of an integer matrix with determinant ±1.
pub fn unimodular_inverse(r: &IntMatrix) -> Result<IntMatrix> {
    if !r.is_square() {
        return Err(Error::NotSquare {
            rows: r.rows(),
            cols: r.cols(),
        });
    }
    let snf = smith_normal_form(r);
    let n = r.rows();
    if (0..n).any(|i| !snf.d[(i, i)].is_one()) {
        return Err(Error::NotUnimodular);
    }
    // u r v = I  =>  r^{-1} = v u
    Ok(&snf.v * &snf.u)
}

/// Fraction-free (Bareiss) determinant.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                a[(i, j)] = num / &prev;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = m[(row, col)].recip();
        for c in col..m.cols() {
            let x = &m[(row, c)] * &inv;
            m[(row, c)] = x;
        }
        for r in 0..m.rows() {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let f = m[(r, col)].clone();
            for c in col..m.cols() {
                let delta = &f * &m[(row, c)];
                m[(r, c)] -= delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Exact rank over the rationals.
pub fn rational_rank(m: &RatMatrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right kernel `{x : m x = 0}` over the rationals.
pub fn rational_nullspace(m: &RatMatrix) -> Vec<Vec<BigRational>> {
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let free = (0..m.cols()).filter(|c| !pivots.contains(c));
    free.map(|f| {
        let mut x = vec![BigRational::zero(); m.cols()];
        x[f] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = -work[(r, f)].clone();
        }
        x
    })
    .collect()
}

/// Kernel basis of an integer matrix, each vector scaled to a primitive integer vector.
pub fn integer_nullspace(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    rational_nullspace(&m.to_rational())
        .into_iter()
        .map(|v| primitive_integer(&v))
        .collect()
}

/// Clears denominators and divides by the content.
pub(crate) fn primitive_integer(v: &[BigRational]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    make_primitive(ints)
}

pub(crate) fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x = &*x / &g;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IntMatrix) {
        let snf = smith_normal_form(m);
        assert_eq!(&(&snf.u * m) * &snf.v, snf.d);
        assert!(snf.u.is_unimodular());
        assert!(snf.v.is_unimodular());
        let factors = snf.invariant_factors();
        for w in factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        for x in &factors {
            assert!(x.is_positive());
        }
        for r in 0..snf.d.rows() {
            for c in 0..snf.d.cols() {
                if r != c || r >= factors.len() {
                    assert!(snf.d[(r, c)].is_zero(), "off-pattern entry in {:?}", snf.d);
                }
            }
        }
    }

    #[test]
    fn snf_identity_is_trivial() {
        let i = IntMatrix::identity(2);
        let snf = smith_normal_form(&i);
        assert_eq!(snf.u, i);
        assert_eq!(snf.d, i);
        assert_eq!(snf.v, i);
    }

    #[test]
    fn snf_of_diag_2_3() {
        let m = IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.d, IntMatrix::from_i64_rows(&[[1, 0], [0, 6]]));
        check_snf(&m);
    }

    #[test]
    fn snf_already_reduced() {
        let m = IntMatrix::from_i64_rows(&[[1, 0], [0, 0]]);
        assert_eq!(smith_normal_form(&m).d, m);
    }

    #[test]
    fn snf_rectangular_and_zero() {
        check_snf(&IntMatrix::from_i64_rows(&[[4, 6, 8], [6, 9, 12]]));
        check_snf(&IntMatrix::from_i64_rows(&[[0, 0], [0, 0], [0, 0]]));
        check_snf(&IntMatrix::from_i64_rows(&[[-1], [1], [2]]));
        let m = IntMatrix::from_i64_rows(&[[1, 0], [1, 2]]);
        assert_eq!(smith_normal_form(&m).invariant_factors(), vec![BigInt::from(1), BigInt::from(2)]);
    }

    #[test]
    fn unimodular_inverse_examples() {
        let i = IntMatrix::identity(3);
        assert_eq!(unimodular_inverse(&i).unwrap(), i);

        let r = IntMatrix::from_i64_rows(&[[-1, 0], [-1, 1]]);
        assert_eq!(unimodular_inverse(&r).unwrap(), r);
        assert_eq!(&r * &r, IntMatrix::identity(2));

        let r = IntMatrix::from_i64_rows(&[[1, 1], [0, 1]]);
        let s = IntMatrix::from_i64_rows(&[[1, -1], [0, 1]]);
        assert_eq!(&r * &s, IntMatrix::identity(2));
        assert_eq!(unimodular_inverse(&r).unwrap(), s);
    }

    #[test]
    fn unimodular_inverse_errors() {
        let r = IntMatrix::from_i64_rows(&[[2, 0], [0, 1]]);
        assert_eq!(unimodular_inverse(&r), Err(Error::NotUnimodular));
        let r = IntMatrix::from_i64_rows(&[[1, 0, 0]]);
        assert_eq!(
            unimodular_inverse(&r),
            Err(Error::NotSquare { rows: 1, cols: 3 })
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rational_rank(&RatMatrix::zeros(3, 3)), 0);
        assert_eq!(rational_rank(&RatMatrix::from_i64_rows(&[[0, 1], [-1, 0]])), 2);
        let a = RatMatrix::from_i64_rows(&[[0, 1, 1], [-1, 0, 0], [-1, 0, 0]]);
        assert!(a.is_antisymmetric());
        assert_eq!(rational_rank(&a), 2);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let m = IntMatrix::from_i64_rows(&[[2, -1, 3], [0, 4, 1], [5, 2, -2]]);
        // 2*(4*-2 - 1*2) - (-1)*(0*-2 - 1*5) + 3*(0*2 - 4*5)
        let expected = 2 * (-8 - 2) + (0 - 5) + 3 * (0 - 20);
        assert_eq!(determinant(&m).unwrap(), BigInt::from(expected));
        let singular = IntMatrix::from_i64_rows(&[[0, 1], [0, 2]]);
        assert!(determinant(&singular).unwrap().is_zero());
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = IntMatrix::from_i64_rows(&[[1, 2, 3], [2, 4, 6]]);
        let ker = integer_nullspace(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vector(v).iter().all(Zero::is_zero));
        }
    }
}
