//! Dense arbitrary-precision integer matrices.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};
use crate::face::Face;

/// Row-major integer matrix with optional face labels.
///
/// Labels are either empty (an unlabeled matrix) or one per row/column.
/// Boundary matrices and Laplacians always carry labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    row_labels: Vec<Face>,
    col_labels: Vec<Face>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds an unlabeled matrix from rows; all rows must have equal
    /// length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntegerMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().cloned().map(Into::into).collect(),
            row_labels: Vec::new(),
            col_labels: Vec::new(),
        }
    }

    pub fn with_labels(mut self, row_labels: Vec<Face>, col_labels: Vec<Face>) -> Self {
        assert_eq!(row_labels.len(), self.rows);
        assert_eq!(col_labels.len(), self.cols);
        self.row_labels = row_labels;
        self.col_labels = col_labels;
        self
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row_labels(&self) -> &[Face] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Face] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t.row_labels = self.col_labels.clone();
        t.col_labels = self.row_labels.clone();
        t
    }

    /// Matrix product; labels come from the outer dimensions.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out.row_labels = self.row_labels.clone();
        out.col_labels = other.col_labels.clone();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a -= b;
        }
        out
    }

    /// The submatrix on the given row and column indices, in the given
    /// order. Labels follow when present.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        if !self.row_labels.is_empty() {
            out.row_labels = rows.iter().map(|&i| self.row_labels[i].clone()).collect();
        }
        if !self.col_labels.is_empty() {
            out.col_labels = cols.iter().map(|&j| self.col_labels[j].clone()).collect();
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.select(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.select(rows, &cols)
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_f64().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    }

    fn to_i128(&self) -> Option<Vec<Vec<i128>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i128).collect())
            .collect()
    }

    fn to_big_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        if let Some(mut a) = self.to_i128() {
            if let Some(r) = bareiss_i128(&mut a) {
                return r.0;
            }
        }
        bareiss_big(&mut self.to_big_rows()).0
    }

    /// Exact determinant; the 0×0 determinant is 1.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(domain!(
                "determinant of a non-square {}x{} matrix",
                self.rows,
                self.cols
            ));
        }
        if let Some(mut a) = self.to_i128() {
            if let Some((rank, det)) = bareiss_i128(&mut a) {
                return Ok(if rank == self.rows {
                    BigInt::from(det)
                } else {
                    BigInt::zero()
                });
            }
        }
        let (rank, det) = bareiss_big(&mut self.to_big_rows());
        Ok(if rank == self.rows { det } else { BigInt::zero() })
    }

    /// Coefficients of det(tI − M), lowest degree first, computed by the
    /// division-free Berkowitz recursion.
    pub fn charpoly(&self) -> Result<Vec<BigInt>> {
        if !self.is_square() {
            return Err(domain!("characteristic polynomial of a non-square matrix"));
        }
        let n = self.rows;
        // Highest degree first while building.
        let mut vec: Vec<BigInt> = vec![BigInt::one()];
        for i in (0..n).rev() {
            let m = n - i;
            let a = self.get(i, i);
            let r: Vec<&BigInt> = (i + 1..n).map(|j| self.get(i, j)).collect();
            let mut c: Vec<BigInt> = (i + 1..n).map(|j| self.get(j, i).clone()).collect();
            // First column of the Toeplitz factor: 1, −a, −R C, −R A C, ...
            let mut col = Vec::with_capacity(m + 1);
            col.push(BigInt::one());
            col.push(-a.clone());
            for step in 0..m.saturating_sub(1) {
                let rc: BigInt = r.iter().zip(&c).map(|(x, y)| *x * y).sum();
                col.push(-rc);
                if step + 2 < m {
                    c = (i + 1..n)
                        .map(|p| {
                            (i + 1..n)
                                .zip(&c)
                                .filter(|(_, y)| !y.is_zero())
                                .map(|(q, y)| self.get(p, q) * y)
                                .sum()
                        })
                        .collect();
                }
            }
            let mut next = vec![BigInt::zero(); m + 1];
            for (row, slot) in next.iter_mut().enumerate() {
                for (j, v) in vec.iter().enumerate() {
                    if row >= j && !v.is_zero() {
                        *slot += &col[row - j] * v;
                    }
                }
            }
            vec = next;
        }
        vec.reverse();
        Ok(vec)
    }

    /// Plain-text dump: a `rows cols` header, one line per row, then the
    /// row and column labels.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        let labels = |ls: &[Face]| {
            ls.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(s, "rows: {}", labels(&self.row_labels));
        let _ = writeln!(s, "cols: {}", labels(&self.col_labels));
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Validation(format!("matrix text: {msg}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("missing header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad("bad header"))?;
        let [rows, cols] = dims[..] else {
            return Err(bad("header needs two numbers"));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for _ in 0..rows {
            let line = lines.next().ok_or_else(|| bad("missing row"))?;
            let vals: Vec<BigInt> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("bad entry"))?;
            if vals.len() != cols {
                return Err(bad("row length"));
            }
            data.extend(vals);
        }
        let parse_labels = |line: Option<&str>, prefix: &str, n: usize| -> Result<Vec<Face>> {
            let Some(rest) = line.and_then(|l| l.strip_prefix(prefix)) else {
                return Ok(Vec::new());
            };
            let faces = rest
                .split_whitespace()
                .map(|tok| {
                    let inner = tok
                        .strip_prefix('{')
                        .and_then(|t| t.strip_suffix('}'))
                        .ok_or_else(|| bad("bad label"))?;
                    let vs = inner
                        .split(',')
                        .filter(|p| !p.is_empty())
                        .map(str::parse)
                        .collect::<std::result::Result<Vec<u32>, _>>()
                        .map_err(|_| bad("bad label vertex"))?;
                    Face::new(vs)
                })
                .collect::<Result<Vec<_>>>()?;
            if !faces.is_empty() && faces.len() != n {
                return Err(bad("label count"));
            }
            Ok(faces)
        };
        let row_labels = parse_labels(lines.next(), "rows:", rows)?;
        let col_labels = parse_labels(lines.next(), "cols:", cols)?;
        Ok(IntegerMatrix {
            rows,
            cols,
            data,
            row_labels,
            col_labels,
        })
    }
}

/// Fraction-free elimination in place. Returns (rank, det of the leading
/// pivots with row-swap sign), or `None` on i128 overflow.
fn bareiss_i128(a: &mut [Vec<i128>]) -> Option<(usize, i128)> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut sign: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = a[r][c]
                    .checked_mul(a[i][j])?
                    .checked_sub(a[i][c].checked_mul(a[r][j])?)?;
                a[i][j] = v / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    Some((r, sign * prev))
}

fn bareiss_big(a: &mut [Vec<BigInt>]) -> (usize, BigInt) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut negate = false;
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
            negate = !negate;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v.div_floor(&prev);
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, if negate { -prev } else { prev })
}
