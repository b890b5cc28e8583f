use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A dense matrix over GF(2^k) with bit-packed rows.
///
/// Entry `(i, j)` occupies bits `j*k .. j*k+k` of row `i`, read as a
/// little-endian bit stream over `ceil(cols*k/64)` words. Padding bits are
/// always zero, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

pub(crate) fn stride_for(field: Field, cols: usize) -> usize {
    (cols * field.degree() as usize).div_ceil(64)
}

#[inline]
pub(crate) fn read_entry(field: Field, row: &[u64], j: usize) -> Elem {
    let k = field.degree() as usize;
    let bit = j * k;
    let (w, off) = (bit / 64, bit % 64);
    let mask = (1u64 << k) - 1;
    let mut v = row[w] >> off;
    if off + k > 64 {
        v |= row[w + 1] << (64 - off);
    }
    Elem::from_raw((v & mask) as u8)
}

#[inline]
pub(crate) fn write_entry(field: Field, row: &mut [u64], j: usize, x: Elem) {
    let k = field.degree() as usize;
    let bit = j * k;
    let (w, off) = (bit / 64, bit % 64);
    let mask = (1u64 << k) - 1;
    let v = x.value() as u64;
    row[w] = (row[w] & !(mask << off)) | (v << off);
    if off + k > 64 {
        let spill = off + k - 64;
        let hi_mask = (1u64 << spill) - 1;
        row[w + 1] = (row[w + 1] & !hi_mask) | (v >> (64 - off));
    }
}

/// `dst += c * src` on packed rows of equal length.
#[inline]
pub(crate) fn row_axpy(field: Field, dst: &mut [u64], c: Elem, src: &[u64], cols: usize) {
    if c.is_zero() {
        return;
    }
    if c == Elem::ONE {
        for (d, s) in dst.iter_mut().zip(src) {
            *d ^= *s;
        }
    } else if field.word_aligned() {
        for (d, s) in dst.iter_mut().zip(src) {
            if *s != 0 {
                *d ^= field.scale_word(*s, c);
            }
        }
    } else {
        for j in 0..cols {
            let s = read_entry(field, src, j);
            if !s.is_zero() {
                let d = read_entry(field, dst, j);
                write_entry(field, dst, j, field.add(d, field.mul(s, c)));
            }
        }
    }
}

#[inline]
pub(crate) fn row_scale(field: Field, row: &mut [u64], c: Elem, cols: usize) {
    if c == Elem::ONE {
        return;
    }
    if field.word_aligned() {
        for w in row.iter_mut() {
            *w = field.scale_word(*w, c);
        }
    } else {
        for j in 0..cols {
            let s = read_entry(field, row, j);
            write_entry(field, row, j, field.mul(s, c));
        }
    }
}

/// Index of the first nonzero entry of a packed row, if any.
#[inline]
pub(crate) fn leading_index(field: Field, row: &[u64]) -> Option<usize> {
    let k = field.degree() as usize;
    row.iter()
        .position(|&w| w != 0)
        .map(|w| (w * 64 + row[w].trailing_zeros() as usize) / k)
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        let stride = stride_for(field, cols);
        Matrix { field, rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Elem::ONE);
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Elem,
    ) -> Matrix {
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                if !x.is_zero() {
                    m.set(i, j, x);
                }
            }
        }
        m
    }

    /// Builds a matrix from raw entry values given row by row.
    pub fn from_values(field: Field, rows: usize, cols: usize, values: &[u8]) -> Result<Matrix> {
        if values.len() != rows * cols {
            return Err(Error::Domain(format!(
                "{} values given for a {rows}x{cols} matrix",
                values.len()
            )));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for (idx, &v) in values.iter().enumerate() {
            m.set(idx / cols.max(1), idx % cols.max(1), field.elem(v)?);
        }
        Ok(m)
    }

    /// Builds a matrix from rows of entry values.
    pub fn from_rows<R: AsRef<[u8]>>(field: Field, rows: &[R]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::Domain("rows of unequal length".into()));
        }
        let flat: Vec<u8> = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Matrix::from_values(field, rows.len(), cols, &flat)
    }

    /// The permutation matrix sending basis vector `i` to basis vector `images[i]`.
    pub fn permutation(field: Field, images: &[usize]) -> Matrix {
        let n = images.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, &j) in images.iter().enumerate() {
            m.set(i, j, Elem::ONE);
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn words(&self) -> &[u64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        debug_assert!(i < self.rows && j < self.cols);
        read_entry(self.field, self.row_words(i), j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        debug_assert!(i < self.rows && j < self.cols);
        let f = self.field;
        write_entry(f, self.row_words_mut(i), j, x);
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> Matrix {
        self.select_rows(&[i])
    }

    pub fn row_values(&self, i: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(i, j).value()).collect()
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(self.field, self.rows)
    }

    pub(crate) fn push_row_words(&mut self, words: &[u64]) {
        debug_assert_eq!(words.len(), self.stride);
        self.data.extend_from_slice(words);
        self.rows += 1;
    }

    /// `row dst += c * row src`.
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, c: Elem) {
        if dst == src {
            let s = self.field.add(Elem::ONE, c);
            self.scale_row(dst, s);
            return;
        }
        let (f, cols, st) = (self.field, self.cols, self.stride);
        let (a, b) = if dst < src {
            let (lo, hi) = self.data.split_at_mut(src * st);
            (&mut lo[dst * st..(dst + 1) * st], &hi[..st])
        } else {
            let (lo, hi) = self.data.split_at_mut(dst * st);
            (&mut hi[..st], &lo[src * st..(src + 1) * st])
        };
        row_axpy(f, a, c, b, cols);
    }

    pub fn scale_row(&mut self, i: usize, c: Elem) {
        let (f, cols) = (self.field, self.cols);
        row_scale(f, self.row_words_mut(i), c, cols);
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let st = self.stride;
        for w in 0..st {
            self.data.swap(a * st + w, b * st + w);
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        assert_eq!(self.field, other.field, "field mismatch in add");
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Matrix) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= *b;
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: Elem, other: &Matrix) {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let (f, cols) = (self.field, self.cols * self.rows);
        if self.field.word_aligned() {
            row_axpy(f, &mut self.data, c, &other.data, cols);
        } else {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    let v = f.add(self.get(i, j), f.mul(c, other.get(i, j)));
                    self.set(i, j, v);
                }
            }
        }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let mut out = self.clone();
        for i in 0..out.rows {
            out.scale_row(i, c);
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        assert_eq!(self.field, other.field, "field mismatch in mul");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        let st = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * st..(i + 1) * st];
            let src_row = &self.data[i * self.stride..(i + 1) * self.stride];
            if f.degree() == 1 {
                for (w, &word) in src_row.iter().enumerate() {
                    let mut bits = word;
                    while bits != 0 {
                        let j = w * 64 + bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        for (d, s) in dst.iter_mut().zip(other.row_words(j)) {
                            *d ^= *s;
                        }
                    }
                }
            } else {
                for j in 0..self.cols {
                    let c = read_entry(f, src_row, j);
                    if !c.is_zero() {
                        row_axpy(f, dst, c, other.row_words(j), other.cols);
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
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

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.set(j, i, x);
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Elem {
        (0..self.rows.min(self.cols)).fold(Elem::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row count mismatch in hstack");
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column count mismatch in vstack");
        let mut out = self.clone();
        out.data.extend_from_slice(&other.data);
        out.rows += other.rows;
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, 0, self.cols);
        for &i in idx {
            out.push_row_words(self.row_words(i));
        }
        out
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// The block `rows r0..r1`, `cols c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    /// Block-diagonal sum of `blocks`.
    pub fn block_diagonal(field: Field, blocks: &[Matrix]) -> Matrix {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, r, c);
        let (mut i, mut j) = (0, 0);
        for b in blocks {
            out.set_block(i, j, b);
            i += b.rows;
            j += b.cols;
        }
        out
    }

    /// Entries read row by row into one `1 x rows*cols` matrix.
    pub fn flatten(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, 1, self.rows * self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.set(0, i * self.cols + j, x);
                }
            }
        }
        out
    }

    /// Inverse of [`Matrix::flatten`] applied to row `r` of `self`.
    pub fn unflatten_row(&self, r: usize, rows: usize, cols: usize) -> Matrix {
        debug_assert_eq!(self.cols, rows * cols);
        let src = self.row_words(r);
        Matrix::from_fn(self.field, rows, cols, |i, j| read_entry(self.field, src, i * cols + j))
    }

    pub fn extend_scalars(&self, dst: Field) -> Result<Matrix> {
        let src = self.field;
        let table: Vec<Elem> = src.elements().map(|x| src.embed(x, dst)).collect::<Result<_>>()?;
        Ok(Matrix::from_fn(dst, self.rows, self.cols, |i, j| table[self.get(i, j).value() as usize]))
    }

    /// Reduced row-echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        Rref { rank: pivots.len(), matrix: m, pivots }
    }

    /// Gauss-Jordan elimination choosing pivots only among the first `limit`
    /// columns. Returns the pivot columns; pivot rows come first.
    pub(crate) fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let f = self.field;
        let k = f.degree() as usize;
        let (st, cols) = (self.stride, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !read_entry(f, &self.data[i * st..(i + 1) * st], c).is_zero())
            else {
                continue;
            };
            self.swap_rows(r, p);
            let lead = self.get(r, c);
            if lead != Elem::ONE {
                self.scale_row(r, f.inv_nonzero(lead));
            }
            let start = (c * k) / 64;
            let pivot_row: Vec<u64> = self.data[r * st + start..(r + 1) * st].to_vec();
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let row = &mut self.data[i * st..(i + 1) * st];
                let a = read_entry(f, row, c);
                if !a.is_zero() {
                    if f.word_aligned() {
                        row_axpy(f, &mut row[start..], a, &pivot_row, cols);
                    } else {
                        let full = self.data[r * st..(r + 1) * st].to_vec();
                        row_axpy(f, &mut self.data[i * st..(i + 1) * st], a, &full, cols);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place(self.cols).len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = self.hstack(&Matrix::identity(self.field, n));
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(aug.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "\n  ")?;
            for j in 0..self.cols {
                write!(f, "{}", self.get(i, j).to_hex())?;
            }
        }
        Ok(())
    }
}

/// Fixture text: a header `rows cols k`, then one line of hex digits per row.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.field.degree())?;
        for i in 0..self.rows {
            let line: String = (0..self.cols).map(|j| self.get(i, j).to_hex()).collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

impl FromStr for Matrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Matrix> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix text".into()))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::Parse(format!("bad header token '{t}'"))))
            .collect::<Result<_>>()?;
        let [rows, cols, k] = nums[..] else {
            return Err(Error::Parse(format!("header needs three numbers, got '{header}'")));
        };
        let field = u8::try_from(k)
            .ok()
            .and_then(|k| Field::new(k).ok())
            .ok_or_else(|| Error::Parse(format!("unsupported field degree {k}")))?;
        if rows.saturating_mul(cols) > 1 << 26 {
            return Err(Error::Parse(format!("matrix {rows}x{cols} is too large")));
        }
        let mut m = Matrix::zeros(field, rows, cols);
        for i in 0..rows {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing row {i}")))?;
            let line = line.trim_end_matches('\r');
            if line.chars().count() != cols {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {cols}", line.chars().count())));
            }
            for (j, c) in line.chars().enumerate() {
                m.set(i, j, field.parse_elem(c)?);
            }
        }
        if lines.any(|l| !l.trim().is_empty()) {
            return Err(Error::Parse("trailing data after matrix".into()));
        }
        Ok(m)
    }
}
