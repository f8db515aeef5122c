//! Exact integer and rational linear algebra.
//!
//! Everything here works on arbitrary-precision integers ([`BigInt`]) and
//! reduced rationals ([`Rat`]); there is no floating point anywhere in the
//! crate. Matrices are small and dense, so the algorithms favour determinism
//! (fixed pivot order, canonical output) over asymptotic speed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Reduced rational number with positive denominator.
pub type Rat = BigRational;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMat = Matrix<BigInt>;
pub type RatMat = Matrix<Rat>;

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(rows: &[Vec<T>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Submatrix of the given columns, in the given order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl IntMat {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Matrix::from_rows(&rows, cols)
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(BigInt::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn to_rat(&self) -> RatMat {
        Matrix::from_fn(self.rows, self.cols, |i, j| Rat::from_integer(self.get(i, j).clone()))
    }

    /// Determinant via fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(target, j) + factor * self.get(source, j);
            self.set(target, j, v);
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, target) + factor * self.get(i, source);
            self.set(i, target, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl RatMat {
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Determinant of a square rational matrix.
    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut a = self.clone();
        let n = self.rows;
        let mut det = Rat::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Rat::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a.get(k, k).clone();
            det *= &pivot;
            for i in k + 1..n {
                let f = a.get(i, k) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = a.get(i, j) - &f * a.get(k, j);
                    a.set(i, j, v);
                }
            }
        }
        det
    }
}

/// Generic dot product.
pub fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Clone + Zero,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    assert_eq!(a.len(), b.len(), "dot product of vectors of different length");
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x * y)
}

pub fn int_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat_vec(v: &[BigInt]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Dot product of a rational and an integer vector.
pub fn dot_ri(a: &[Rat], b: &[BigInt]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * Rat::from_integer(y.clone()))
}

pub fn lcm_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, v| acc.lcm(v))
}

/// Scales a rational vector to the primitive integer vector on the same ray.
/// The zero vector maps to the zero vector.
pub fn primitive(v: &[Rat]) -> Vec<BigInt> {
    let den = lcm_all(v.iter().map(|x| x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `H = U·M`, `U` unimodular, pivots positive, entries
/// above each pivot reduced into `[0, pivot)` and zero rows at the bottom.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows());
    let rows = m.rows();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == rows {
            break;
        }
        let mut has_pivot = false;
        loop {
            let piv = (row..rows)
                .filter(|&i| !h.get(i, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(piv) = piv else { break };
            has_pivot = true;
            h.swap_rows(row, piv);
            u.swap_rows(row, piv);
            let mut clean = true;
            for i in row + 1..rows {
                if h.get(i, col).is_zero() {
                    continue;
                }
                let q = -h.get(i, col).div_floor(h.get(row, col));
                h.add_row_multiple(i, row, &q);
                u.add_row_multiple(i, row, &q);
                if !h.get(i, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if !has_pivot {
            continue;
        }
        if h.get(row, col).is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        for i in 0..row {
            let q = -h.get(i, col).div_floor(h.get(row, col));
            h.add_row_multiple(i, row, &q);
            u.add_row_multiple(i, row, &q);
        }
        row += 1;
    }
    (h, u)
}

/// Smith normal form.
///
/// Returns `(S, U, V)` with `S = U·M·V` diagonal, non-negative, and
/// `S[i][i] | S[i+1][i+1]`; `U` and `V` are unimodular.
pub fn snf(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&s, t) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -s.get(i, t).div_floor(s.get(t, t));
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -s.get(t, j).div_floor(s.get(t, t));
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                // move the smallest remainder of row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !s.get(i, t).is_zero() && s.get(i, t).abs() < s.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !s.get(t, j).is_zero() && s.get(t, j).abs() < s.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.1 == t {
                    s.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else {
                    s.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let pivot = s.get(t, t).clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    (s, u, v)
}

fn min_abs_entry(s: &IntMat, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Elementary divisors (the non-zero diagonal of the Smith form).
pub fn elementary_divisors(m: &IntMat) -> Vec<BigInt> {
    let (s, _, _) = snf(m);
    (0..s.rows().min(s.cols()))
        .map(|i| s.get(i, i).clone())
        .filter(|d| !d.is_zero())
        .collect()
}

/// Basis of the integer kernel `{x ∈ ℤⁿ : M·x = 0}` in Hermite normal form.
pub fn integer_kernel(m: &IntMat) -> Vec<Vec<BigInt>> {
    let n = m.cols();
    if m.rows() == 0 || m.is_zero_matrix() {
        return IntMat::identity(n).row_vecs();
    }
    let (h, u) = hnf(&m.transpose());
    let basis: Vec<Vec<BigInt>> = (0..n)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect();
    hnf_basis(&basis, n)
}

/// Reduces a list of integer vectors to the non-zero rows of their HNF.
pub fn hnf_basis(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (h, _) = hnf(&IntMat::from_rows(vectors, n));
    h.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect()
}

/// Basis of `span(vectors) ∩ ℤⁿ`, returned in Hermite normal form.
pub fn saturate(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let nonzero: Vec<Vec<BigInt>> =
        vectors.iter().filter(|v| v.iter().any(|x| !x.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return Vec::new();
    }
    let perp = integer_kernel(&IntMat::from_rows(&nonzero, n));
    if perp.is_empty() {
        return IntMat::identity(n).row_vecs();
    }
    integer_kernel(&IntMat::from_rows(&perp, n))
}

/// Rank of the integer vectors `rows` in `ℤⁿ` by fraction-free elimination.
pub fn int_rank(rows: &[Vec<BigInt>], n: usize) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let (pivot_row, rest) = a.split_at_mut(rank + 1);
        let pivot = &pivot_row[rank];
        for row in rest.iter_mut().filter(|row| !row[col].is_zero()) {
            let (f, g) = (pivot[col].clone(), row[col].clone());
            for j in col..n {
                row[j] = &row[j] * &f - &pivot[j] * &g;
            }
            let content = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if content > BigInt::one() {
                row.iter_mut().for_each(|x| *x /= &content);
            }
        }
        rank += 1;
    }
    rank
}

fn det_i128(m: &[Vec<i128>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].checked_mul(a[k][k])?.checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

fn minor_det(rows: &[Vec<BigInt>], skip: usize) -> BigInt {
    let small: Option<Vec<Vec<i128>>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip)
                .map(|(_, x)| i64::try_from(x).ok().map(i128::from))
                .collect()
        })
        .collect();
    if let Some(d) = small.as_deref().and_then(det_i128) {
        return BigInt::from(d);
    }
    let n = rows.len();
    let kept: Vec<Vec<BigInt>> =
        rows.iter().map(|r| r.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, x)| x.clone()).collect()).collect();
    IntMat::from_rows(&kept, n).det()
}

/// Primitive generator of the kernel of `n − 1` integer vectors in `ℤⁿ`,
/// computed from the signed maximal minors; `None` when their rank is
/// smaller than `n − 1`.
pub fn cofactor_normal(rows: &[Vec<BigInt>], n: usize) -> Option<Vec<BigInt>> {
    assert_eq!(rows.len() + 1, n, "cofactor normal needs n - 1 rows");
    let normal: Vec<BigInt> = (0..n)
        .map(|j| {
            let d = minor_det(rows, j);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    if normal.iter().all(Zero::is_zero) {
        None
    } else {
        Some(primitive_int(&normal))
    }
}

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref(m: &RatMat) -> (RatMat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols() {
        if row == a.rows() {
            break;
        }
        let Some(p) = (row..a.rows()).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        a.swap_rows(row, p);
        let inv = Rat::one() / a.get(row, col);
        for j in col..a.cols() {
            let v = a.get(row, j) * &inv;
            a.set(row, j, v);
        }
        for i in 0..a.rows() {
            if i == row || a.get(i, col).is_zero() {
                continue;
            }
            let f = a.get(i, col).clone();
            for j in col..a.cols() {
                let v = a.get(i, j) - &f * a.get(row, j);
                a.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RatMat) -> usize {
    rref(m).1.len()
}

pub fn rank_of(vectors: &[Vec<Rat>], n: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    rank(&RatMat::from_rows(vectors, n))
}

/// Basis of the rational kernel `{x ∈ ℚⁿ : M·x = 0}`.
pub fn rational_kernel(m: &RatMat) -> Vec<Vec<Rat>> {
    let n = m.cols();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rat::zero(); n];
            x[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r.get(i, f).clone();
            }
            x
        })
        .collect()
}

/// One solution of `M·x = b`, or `None` when the system is inconsistent.
///
/// Pivoting is left to right with free variables set to zero, so the
/// returned representative is deterministic.
pub fn solve_rational(m: &RatMat, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let n = m.cols();
    let aug = Matrix::from_fn(m.rows(), n + 1, |i, j| if j < n { m.get(i, j).clone() } else { b[i].clone() });
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r.get(i, n).clone();
    }
    Some(x)
}

/// Least `m ≥ 1` such that `M·w = m·b` has an integer solution `w`.
///
/// Read off the Smith form: with `S = U·M·V`, the system becomes
/// `S·y = m·(U·b)`, whose integrality conditions are `d_i | m·(U·b)_i`.
/// `None` when the system has no rational solution.
pub fn min_integral_multiplier(m: &IntMat, b: &[Rat]) -> Option<BigInt> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let (s, u, _) = snf(m);
    let ub = u.to_rat().mul_vec(b);
    let mut mult = BigInt::one();
    for (i, c) in ub.iter().enumerate() {
        let d = if i < s.cols() { s.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !c.is_zero() {
                return None;
            }
        } else {
            let q = c / Rat::from_integer(d);
            mult = mult.lcm(q.denom());
        }
    }
    Some(mult)
}

/// Greatest common divisor of a family of rationals, as a non-negative
/// rational generating the same subgroup of ℚ.
pub fn rat_gcd<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Rat {
    let values: Vec<&Rat> = values.into_iter().collect();
    let den = lcm_all(values.iter().map(|x| x.denom()));
    let g = values.iter().fold(BigInt::zero(), |acc, x| acc.gcd(&(x.numer() * (&den / x.denom()))));
    Rat::new(g, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMat {
        IntMat::from_i64(rows)
    }

    fn is_row_hnf(h: &IntMat) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            let Some(p) = (0..h.cols()).find(|&j| !h.get(i, j).is_zero()) else {
                seen_zero = true;
                continue;
            };
            if seen_zero || last_pivot.is_some_and(|lp| p <= lp) || !h.get(i, p).is_positive() {
                return false;
            }
            for k in 0..i {
                let e = h.get(k, p);
                if e.is_negative() || e >= h.get(i, p) {
                    return false;
                }
            }
            last_pivot = Some(p);
        }
        true
    }

    #[test]
    fn hnf_small_example() {
        let a = m(&[&[2, 4], &[1, 1]]);
        let (h, u) = hnf(&a);
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        assert!(is_row_hnf(&h));
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMat::identity(3);
        let (h, u) = hnf(&id);
        assert_eq!(h, id);
        assert_eq!(u, id);
        let z = IntMat::zeros(2, 3);
        let (h, u) = hnf(&z);
        assert_eq!(h, z);
        assert_eq!(u.det().abs(), BigInt::one());
    }

    /// gcd of all k×k minors, the classical characterisation of the
    /// Smith invariants.
    fn minor_gcd(a: &IntMat, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let sub = Matrix::from_fn(k, k, |i, j| a.get(rs[i], cs[j]).clone());
                g = g.gcd(&sub.det());
            }
        }
        g
    }

    #[test]
    fn snf_matches_minor_gcds() {
        let a = m(&[&[2, 0], &[0, 3]]);
        let (s, u, v) = snf(&a);
        assert_eq!(u.mul(&a).mul(&v), s);
        assert_eq!(s, m(&[&[1, 0], &[0, 6]]));
        assert_eq!(minor_gcd(&a, 1), BigInt::from(1));
        assert_eq!(minor_gcd(&a, 2) / minor_gcd(&a, 1), BigInt::from(6));
    }

    #[test]
    fn snf_trivial_cases() {
        let id = IntMat::identity(3);
        assert_eq!(snf(&id).0, id);
        let z = m(&[&[0]]);
        assert_eq!(snf(&z).0, z);
    }

    #[test]
    fn snf_rectangular_with_divisibility_fix() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let (s, u, v) = snf(&a);
        assert_eq!(u.mul(&a).mul(&v), s);
        assert_eq!(u.det().abs(), BigInt::one());
        assert_eq!(v.det().abs(), BigInt::one());
        let d: Vec<BigInt> = (0..3).map(|i| s.get(i, i).clone()).collect();
        assert_eq!(d, int_vec(&[2, 6, 12]));
    }

    #[test]
    fn saturate_examples() {
        assert_eq!(saturate(&[int_vec(&[2, 0])], 2), vec![int_vec(&[1, 0])]);
        assert!(saturate(&[], 3).is_empty());
        let sat = saturate(&[int_vec(&[1, 1, 0]), int_vec(&[0, 0, 2])], 3);
        assert_eq!(sat, vec![int_vec(&[1, 1, 0]), int_vec(&[0, 0, 1])]);
        // every small lattice point of the plane x = y is an integer
        // combination of the returned basis
        for x in -3i64..=3 {
            for z in -3i64..=3 {
                let p = int_vec(&[x, x, z]);
                let coeffs = solve_rational(
                    &IntMat::from_rows(&sat, 3).transpose().to_rat(),
                    &rat_vec(&p),
                )
                .expect("point lies in the span");
                assert!(coeffs.iter().all(|c| c.is_integer()));
            }
        }
    }

    #[test]
    fn solve_rational_examples() {
        let id = IntMat::identity(3).to_rat();
        let b = vec![rat(1, 2), rat(-3, 1), rat(0, 1)];
        assert_eq!(solve_rational(&id, &b), Some(b.clone()));
        let zero = RatMat::zeros(1, 1);
        assert_eq!(solve_rational(&zero, &[rat(1, 1)]), None);
        // cone(v01, v11, v21) of the weighted-projective worked example
        let sys = m(&[&[-2, -2, -1], &[2, 0, 1], &[0, 3, 2]]).to_rat();
        let rhs = vec![rat(1, 1), rat(-1, 1), rat(-1, 1)];
        let x = solve_rational(&sys, &rhs).unwrap();
        assert_eq!(x, vec![rat(-1, 4), rat(0, 1), rat(-1, 2)]);
        assert_eq!(sys.mul_vec(&x), rhs);
    }

    #[test]
    fn min_integral_multiplier_examples() {
        let id = IntMat::identity(3);
        let b = vec![rat(1, 4), rat(0, 1), rat(-1, 2)];
        assert_eq!(min_integral_multiplier(&id, &b), Some(BigInt::from(4)));
        let zero = IntMat::zeros(1, 2);
        assert_eq!(min_integral_multiplier(&zero, &[rat(1, 1)]), None);
        // cone(v01, v02): rows (-2,-2,-1), (-1,-1,-2), all values -1
        let sys = m(&[&[-2, -2, -1], &[-1, -1, -2]]);
        let rhs = vec![rat(-1, 1), rat(-1, 1)];
        assert_eq!(min_integral_multiplier(&sys, &rhs), Some(BigInt::from(3)));
        // brute-force confirmation: m = 1, 2 infeasible, m = 3 feasible
        let feasible = |mult: i64| {
            (-6i64..=6).any(|a| {
                (-6i64..=6).any(|b| {
                    (-6i64..=6).any(|c| -2 * a - 2 * b - c == -mult && -a - b - 2 * c == -mult)
                })
            })
        };
        assert!(!feasible(1) && !feasible(2) && feasible(3));
    }

    #[test]
    fn integer_kernel_is_saturated() {
        let a = m(&[&[2, 2, 3]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
        // (1,-1,0) and (3,0,-2) are in the lattice: check they are reachable
        for target in [int_vec(&[1, -1, 0]), int_vec(&[3, 0, -2])] {
            let coeffs = solve_rational(&IntMat::from_rows(&k, 3).transpose().to_rat(), &rat_vec(&target)).unwrap();
            assert!(coeffs.iter().all(|c| c.is_integer()));
        }
    }

    #[test]
    fn determinants_agree() {
        let a = m(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        assert_eq!(Rat::from_integer(a.det()), a.to_rat().det());
        assert_eq!(a.det(), BigInt::from(-90));
    }

    #[test]
    fn rational_gcd() {
        let g = rat_gcd(&[rat(1, 2), rat(1, 3)]);
        assert_eq!(g, rat(1, 6));
        assert_eq!(rat_gcd(&[rat(4, 1), rat(6, 1)]), rat(2, 1));
    }
}
