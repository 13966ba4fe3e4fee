//! Exact rational matrices.
//!
//! Every structure map in the crate is a [`Matrix`] over [`Rational`]. Tensor
//! products use the row-major Kronecker convention
//! `(a ⊗ b)[i·rows_b + p, j·cols_b + q] = a[i,j]·b[p,q]`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = num_rational::BigRational;

/// Default bound on the number of group elements produced by [`coinvariants`].
pub const DEFAULT_GROUP_BOUND: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("group too large: closure exceeds {0} elements")]
    GroupTooLarge(usize),
    #[error("not a group action: generator {0} is not invertible")]
    NotGroupAction(usize),
    #[error("not a group action: generators must be square of equal size")]
    BadGenerators,
    #[error("empty action: at least one generator is required")]
    EmptyAction,
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical string: `"n"` for integers, `"p/q"` or `"-p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    let bad = || LinalgError::BadRational(s.to_string());
    let t = s.trim();
    let parse_int = |x: &str| -> Result<BigInt, LinalgError> {
        if x.is_empty() || !x.trim_start_matches('-').chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        x.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            if d.starts_with('-') {
                return Err(bad());
            }
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|c| format_rational(self.get(r, c))).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Rational::one();
        }
        m
    }

    /// Matrix with every entry equal to one.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rational::one(); rows * cols] }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().map(|&x| q(x)));
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Column vector.
    pub fn column(entries: Vec<Rational>) -> Self {
        Matrix { rows: entries.len(), cols: 1, data: entries }
    }

    /// Permutation matrix sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            m.data[i * n + j] = Rational::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Rational) {
        let e = &mut self.data[r * self.cols + c];
        *e += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.data[c * self.rows + r] = self.get(r, c).clone();
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Horizontal concatenation; all blocks must share the row count `rows`.
    pub fn hstack(rows: usize, blocks: &[Matrix]) -> Matrix {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            for r in 0..rows {
                for c in 0..b.cols {
                    out.data[r * cols + off + c] = b.get(r, c).clone();
                }
            }
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must share the column count `cols`.
    pub fn vstack(cols: usize, blocks: &[Matrix]) -> Matrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Matrix { rows, cols, data }
    }

    /// Sub-block with the given row and column ranges.
    pub fn block(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Matrix {
        let mut out = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                out.data[r * cols + c] = self.get(r0 + r, c0 + c).clone();
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend(self.data[r * self.cols..(r + 1) * self.cols].iter().cloned());
        }
        Matrix { rows: rows.len(), cols: self.cols, data }
    }

    /// First entry (row-major) where the two matrices differ, or a shape note.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((usize::MAX, usize::MAX));
        }
        (0..self.data.len())
            .find(|&i| self.data[i] != other.data[i])
            .map(|i| (i / self.cols, i % self.cols))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let f = m.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let v = m.get(r, c) - &f * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = Matrix::hstack(n, &[self.clone(), Matrix::identity(n)]);
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// Solves `self · x = b` for one solution `x`, if any.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve row mismatch");
        let aug = Matrix::hstack(self.rows, &[self.clone(), b.clone()]);
        let (r, piv) = aug.rref();
        if piv.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in piv.iter().enumerate() {
            for c in 0..b.cols {
                x.set(p, c, r.get(i, self.cols + c).clone());
            }
        }
        Some(x)
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut out = Matrix::identity(self.rows);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn is_zero_one(&self) -> bool {
        self.data.iter().all(|x| x.is_zero() || x.is_one())
    }

    pub fn has_negative(&self) -> bool {
        self.data.iter().any(|x| x.is_negative())
    }
}

/// Kronecker product in the row-major block convention.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let rows = a.rows * b.rows;
    let cols = a.cols * b.cols;
    let mut out = Matrix::zeros(rows, cols);
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for p in 0..b.rows {
                for qq in 0..b.cols {
                    let y = b.get(p, qq);
                    if !y.is_zero() {
                        out.set(i * b.rows + p, j * b.cols + qq, x * y);
                    }
                }
            }
        }
    }
    out
}

/// Kronecker product of a list; the empty list gives the 1×1 identity.
pub fn kron_all(ms: &[Matrix]) -> Matrix {
    ms.iter().fold(Matrix::identity(1), |acc, m| kron(&acc, m))
}

/// Block-diagonal matrix in list order.
pub fn direct_sum(blocks: &[Matrix]) -> Matrix {
    let rows: usize = blocks.iter().map(|b| b.rows).sum();
    let cols: usize = blocks.iter().map(|b| b.cols).sum();
    let mut out = Matrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for r in 0..b.rows {
            for c in 0..b.cols {
                out.set(r0 + r, c0 + c, b.get(r, c).clone());
            }
        }
        r0 += b.rows;
        c0 += b.cols;
    }
    out
}

/// Columns of `m` at the pivot positions of its echelon reduction, left to right.
pub fn column_space_basis(m: &Matrix) -> Matrix {
    let (_, piv) = m.rref();
    m.select_columns(&piv)
}

/// Matrix permuting tensor factors: the factor in position `i` of the source
/// (with dimension `dims[i]`) lands in position `perm[i]` of the target.
pub fn factor_permutation(dims: &[usize], perm: &[usize]) -> Matrix {
    let k = dims.len();
    assert_eq!(perm.len(), k);
    let mut tdims = vec![0; k];
    for i in 0..k {
        tdims[perm[i]] = dims[i];
    }
    let total: usize = dims.iter().product();
    let mut image = vec![0; total];
    let mut idx = vec![0usize; k];
    for (src, slot) in image.iter_mut().enumerate() {
        let mut rest = src;
        for i in (0..k).rev() {
            idx[i] = rest % dims[i];
            rest /= dims[i];
        }
        let mut t = 0;
        for j in 0..k {
            let i = perm.iter().position(|&p| p == j).unwrap();
            t = t * tdims[j] + idx[i];
        }
        *slot = t;
    }
    Matrix::permutation(&image)
}

/// Averaging projector of a finite group action with a basis of its image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coinvariants {
    pub projector: Matrix,
    pub inclusion: Matrix,
    pub quotient: Matrix,
    pub group_order: usize,
}

impl Coinvariants {
    pub fn dim(&self) -> usize {
        self.inclusion.cols()
    }
}

pub fn coinvariants(generators: &[Matrix]) -> Result<Coinvariants, LinalgError> {
    coinvariants_bounded(generators, DEFAULT_GROUP_BOUND)
}

/// Group closure of the generators, then `e = (1/|G|) Σ g`.
pub fn coinvariants_bounded(generators: &[Matrix], bound: usize) -> Result<Coinvariants, LinalgError> {
    let first = generators.first().ok_or(LinalgError::EmptyAction)?;
    let n = first.rows;
    if generators.iter().any(|g| g.rows != n || g.cols != n) {
        return Err(LinalgError::BadGenerators);
    }
    for (i, g) in generators.iter().enumerate() {
        if g.rank() < n {
            return Err(LinalgError::NotGroupAction(i));
        }
    }
    let elements = group_closure(generators, bound)?;
    let order = elements.len();
    let mut sum = Matrix::zeros(n, n);
    for g in &elements {
        sum = sum.add(g);
    }
    let projector = sum.scale(&frac(1, order as i64));
    let (inclusion, quotient) = image_splitting(&projector);
    Ok(Coinvariants { projector, inclusion, quotient, group_order: order })
}

/// For an idempotent `e`, a basis `i` of its image (pivot columns) and the
/// quotient `p` with `p·i = id` and `i·p = e`.
pub fn image_splitting(e: &Matrix) -> (Matrix, Matrix) {
    let inclusion = column_space_basis(e);
    let k = inclusion.cols();
    let (_, rows) = inclusion.transpose().rref();
    let square = inclusion.select_rows(&rows);
    let inv = square.inverse().expect("pivot rows of a full-rank basis are invertible");
    let quotient = inv.mul(&e.select_rows(&rows));
    debug_assert_eq!(quotient.mul(&inclusion), Matrix::identity(k));
    (inclusion, quotient)
}

/// All elements of the group generated by invertible matrices.
pub fn group_closure(generators: &[Matrix], bound: usize) -> Result<Vec<Matrix>, LinalgError> {
    let n = generators[0].rows;
    let id = Matrix::identity(n);
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut order = vec![id.clone()];
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = g.mul(&x);
            if seen.insert(y.clone()) {
                if seen.len() > bound {
                    return Err(LinalgError::GroupTooLarge(bound));
                }
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(order)
}

/// Serialized as `{"rows": r, "cols": c, "entries": [...]}` with entries row-major
/// canonical rational strings.
impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Matrix", 3)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("cols", &self.cols)?;
        let entries: Vec<String> = self.data.iter().map(format_rational).collect();
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawMatrix::deserialize(d)?;
        let data = raw
            .entries
            .iter()
            .map(|e| parse_rational(e))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Matrix::new(raw.rows, raw.cols, data).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "1", "-3", "1/2", "-7/3"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("2/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron(&Matrix::identity(2), &Matrix::identity(3)), Matrix::identity(6));
        assert_eq!(
            kron(&Matrix::from_i64(&[&[2]]), &Matrix::identity(2)),
            Matrix::from_i64(&[&[2, 0], &[0, 2]])
        );
        assert_eq!(
            kron(&Matrix::from_i64(&[&[1, 2]]), &Matrix::from_i64(&[&[3, 4]])),
            Matrix::from_i64(&[&[3, 4, 6, 8]])
        );
        assert_eq!(
            kron(&Matrix::from_i64(&[&[1, 2]]), &Matrix::from_i64(&[&[3], &[4]])),
            Matrix::from_i64(&[&[3, 6], &[4, 8]])
        );
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&[]).shape(), (0, 0));
        assert_eq!(direct_sum(&[Matrix::identity(1), Matrix::identity(2)]), Matrix::identity(3));
        assert_eq!(
            direct_sum(&[Matrix::from_i64(&[&[1, 2]]), Matrix::from_i64(&[&[3]])]),
            Matrix::from_i64(&[&[1, 2, 0], &[0, 0, 3]])
        );
    }

    #[test]
    fn column_space_examples() {
        assert_eq!(column_space_basis(&Matrix::identity(3)), Matrix::identity(3));
        assert_eq!(column_space_basis(&Matrix::zeros(3, 2)).shape(), (3, 0));
        assert_eq!(
            column_space_basis(&Matrix::from_i64(&[&[1, 2], &[2, 4]])),
            Matrix::from_i64(&[&[1], &[2]])
        );
    }

    #[test]
    fn coinvariant_examples() {
        let c = coinvariants(&[Matrix::identity(2)]).unwrap();
        assert_eq!(c.projector, Matrix::identity(2));
        assert_eq!(c.dim(), 2);

        let swap = Matrix::permutation(&[1, 0]);
        let c = coinvariants(&[swap]).unwrap();
        let half = frac(1, 2);
        let expected = Matrix::from_rows(vec![vec![half.clone(), half.clone()], vec![half.clone(), half]]).unwrap();
        assert_eq!(c.projector, expected);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.quotient.mul(&c.inclusion), Matrix::identity(1));

        let cycle = Matrix::permutation(&[1, 2, 0]);
        assert_eq!(coinvariants(&[cycle]).unwrap().dim(), 1);
    }

    #[test]
    fn coinvariant_errors() {
        assert_eq!(
            coinvariants(&[Matrix::from_i64(&[&[1, 0], &[0, 0]])]),
            Err(LinalgError::NotGroupAction(0))
        );
        // x ↦ 2x has infinite order.
        assert_eq!(
            coinvariants_bounded(&[Matrix::from_i64(&[&[2]])], 50),
            Err(LinalgError::GroupTooLarge(50))
        );
        assert_eq!(coinvariants(&[]), Err(LinalgError::EmptyAction));
    }

    #[test]
    fn factor_permutation_swaps_tensor_factors() {
        let a = Matrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_i64(&[&[5, 6, 7], &[8, 9, 1], &[2, 3, 4]]);
        let p = factor_permutation(&[2, 3], &[1, 0]);
        let pinv = factor_permutation(&[3, 2], &[1, 0]);
        assert_eq!(p.mul(&kron(&a, &b)).mul(&pinv), kron(&b, &a));
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.mul(&m.inverse().unwrap()), Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let b = Matrix::from_i64(&[&[3], &[2]]);
        assert_eq!(m.mul(&m.solve(&b).unwrap()), b);
    }
}
