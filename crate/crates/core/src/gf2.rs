//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed into 64-bit words, coordinate `i` living at bit
//! `i % 64` of word `i / 64`. Unused high bits of the last word are always
//! zero, so derived equality and hashing are bitwise.
//!
//! Subspaces are stored in reduced row-echelon form with strictly increasing
//! pivot columns, where the pivot of a row is its lowest set coordinate. Two
//! subspaces are equal exactly when their basis lists are equal.

use std::fmt;

use crate::error::{Error, Result};

/// Largest ambient dimension accepted by [`enumerate_subspaces`].
pub const ENUMERATION_GUARD: usize = 16;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `word`.
    pub fn from_word(len: usize, word: u64) -> Self {
        assert!(len <= 64, "from_word needs len <= 64, got {len}");
        let mut v = Self::zeros(len);
        if len > 0 {
            v.words[0] = word & low_mask(len);
        }
        v
    }

    /// Parses a string of `'0'`/`'1'` characters; the leftmost character is
    /// coordinate 0.
    pub fn parse01(s: &str) -> Result<Self> {
        let mut v = Self::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(Error::InvalidArgument(format!(
                        "bit string contains {other:?} at position {i}"
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn to_string01(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The low 64 coordinates as a word. Only meaningful when `len <= 64`.
    #[inline]
    pub fn to_word(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len={})",
            self.len
        );
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Lowest set coordinate.
    pub fn pivot(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    /// In-place addition. Panics on length mismatch.
    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn try_xor(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(self.xor(other))
    }

    /// Standard dot product `Σ x_i y_i` over GF(2).
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "dot of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn try_dot(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.dot(other))
    }

    /// Concatenates `self` followed by `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_string01())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string01())
    }
}

#[inline]
pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            data: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    /// Builds a matrix from rows; all rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Parses row strings; every string must have length `cols`.
    pub fn parse_rows<S: AsRef<str>>(cols: usize, rows: &[S]) -> Result<Self> {
        let data = rows
            .iter()
            .map(|s| BitVector::parse01(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(cols, data)
    }

    /// The permutation matrix sending `e_i` to `e_{perm[i]}`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (i, &p) in perm.iter().enumerate() {
            m.set(p, i, true);
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

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_data(&self) -> &[BitVector] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn row_strings(&self) -> Vec<String> {
        self.data.iter().map(BitVector::to_string01).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `self · v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// `xᵀ · self · y`.
    pub fn bilinear(&self, x: &BitVector, y: &BitVector) -> Result<bool> {
        if x.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: x.len(),
            });
        }
        let my = self.mul_vec(y)?;
        Ok(x.dot(&my))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            for k in row.ones() {
                out.data[i].xor_assign(&other.data[k]);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.xor(b))
                .collect(),
        })
    }

    /// `self + I`, for square matrices.
    pub fn plus_identity(&self) -> Self {
        assert!(self.is_square());
        let mut m = self.clone();
        for i in 0..self.rows {
            m.data[i].flip(i);
        }
        m
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && rank(self) == self.rows
    }

    /// Stacks the rows of `self` above the rows of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self {
            rows: data.len(),
            cols: self.cols,
            data,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BitMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("data", &self.row_strings())
            .finish()
    }
}

/// Reduces `rows` to reduced row-echelon form in place, dropping zero rows.
/// Returns the pivot columns, strictly increasing.
fn rref_in_place(rows: &mut Vec<BitVector>) -> Vec<usize> {
    let mut basis: Vec<BitVector> = Vec::with_capacity(rows.len());
    for mut v in rows.drain(..) {
        for b in &basis {
            let p = b.pivot().expect("basis rows are nonzero");
            if v.get(p) {
                v.xor_assign(b);
            }
        }
        if let Some(p) = v.pivot() {
            for b in basis.iter_mut() {
                if b.get(p) {
                    b.xor_assign(&v);
                }
            }
            basis.push(v);
        }
    }
    basis.sort_by_key(|b| b.pivot());
    let pivots = basis.iter().map(|b| b.pivot().unwrap()).collect();
    *rows = basis;
    pivots
}

/// Row rank over GF(2).
pub fn rank(m: &BitMatrix) -> usize {
    let mut basis: Vec<BitVector> = Vec::new();
    for row in m.row_data() {
        let mut v = row.clone();
        for b in &basis {
            let p = b.pivot().unwrap();
            if v.get(p) {
                v.xor_assign(b);
            }
        }
        if !v.is_zero() {
            basis.push(v);
        }
    }
    basis.len()
}

/// A linear subspace of `F₂^ambient_dim` in canonical RREF form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<BitVector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| BitVector::unit(ambient_dim, i))
                .collect(),
        }
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    #[inline]
    pub fn basis(&self) -> &[BitVector] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.pivot().unwrap()).collect()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` is in the
    /// subspace, and is the canonical representative of `v`'s coset otherwise.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        for b in &self.basis {
            let p = b.pivot().unwrap();
            if v.get(p) {
                v.xor_assign(b);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).is_zero()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    /// Every vector of the subspace, in the order of their coordinates on the
    /// basis read as a binary counter. Panics if `dim > 30`.
    pub fn elements(&self) -> Vec<BitVector> {
        assert!(
            self.dim() <= 30,
            "refusing to list 2^{} vectors",
            self.dim()
        );
        (0u64..1 << self.dim())
            .map(|c| {
                let mut v = BitVector::zeros(self.ambient_dim);
                for (k, b) in self.basis.iter().enumerate() {
                    if (c >> k) & 1 == 1 {
                        v.xor_assign(b);
                    }
                }
                v
            })
            .collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        subspace_span(self.ambient_dim, &all)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::LengthMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        // v ∈ self ∩ other iff v ⊥ annihilator(self) and v ⊥ annihilator(other).
        let ann_a = self.annihilator();
        let ann_b = other.annihilator();
        let mut rows = ann_a.basis.clone();
        rows.extend(ann_b.basis.iter().cloned());
        let m = BitMatrix::from_rows(self.ambient_dim, rows)?;
        Ok(kernel(&m))
    }

    /// `{ y : y·v = 0 for all v in self }` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let m = BitMatrix {
            rows: self.basis.len(),
            cols: self.ambient_dim,
            data: self.basis.clone(),
        };
        kernel(&m)
    }
}

/// Canonical span of `vectors` inside `F₂^ambient_dim`.
pub fn subspace_span(ambient_dim: usize, vectors: &[BitVector]) -> Result<Subspace> {
    for v in vectors {
        if v.len() != ambient_dim {
            return Err(Error::LengthMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
    }
    let mut rows = vectors.to_vec();
    rref_in_place(&mut rows);
    Ok(Subspace {
        ambient_dim,
        basis: rows,
    })
}

/// `{ v : m·v = 0 }`.
pub fn kernel(m: &BitMatrix) -> Subspace {
    let cols = m.cols();
    let mut rows = m.row_data().to_vec();
    let pivots = rref_in_place(&mut rows);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for f in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVector::unit(cols, f);
        for (row, &p) in rows.iter().zip(&pivots) {
            if row.get(f) {
                v.set(p, true);
            }
        }
        vectors.push(v);
    }
    subspace_span(cols, &vectors).expect("kernel vectors have the ambient length")
}

fn check_square_action(action: &[BitMatrix], dim: usize) -> Result<()> {
    for (k, g) in action.iter().enumerate() {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "action matrix {k} is {}x{}, expected {dim}x{dim}",
                g.rows(),
                g.cols()
            )));
        }
    }
    Ok(())
}

/// The fixed subspace `∩_g ker(g + I)` of the group generated by `action`,
/// acting on `F₂^dim` through column vectors.
pub fn invariants(dim: usize, action: &[BitMatrix]) -> Result<Subspace> {
    check_square_action(action, dim)?;
    let mut rows = Vec::new();
    for g in action {
        rows.extend(g.plus_identity().into_rows());
    }
    Ok(kernel(&BitMatrix::from_rows(dim, rows)?))
}

/// `dim V − dim Σ_g im(g + I)`.
pub fn coinvariants_dim(dim: usize, action: &[BitMatrix]) -> Result<usize> {
    check_square_action(action, dim)?;
    let mut rows = Vec::new();
    for g in action {
        // Column space of g + I is the row space of its transpose.
        rows.extend(g.plus_identity().transpose().into_rows());
    }
    let m = BitMatrix::from_rows(dim, rows)?;
    Ok(dim - rank(&m))
}

/// Lending cursor over the `d`-dimensional subspaces of `F₂^n`, `n <= 16`,
/// yielding each as its RREF basis packed one row per word.
///
/// Pivot sets are visited in lexicographic order; within a pivot set the free
/// entries run through a binary counter.
#[derive(Debug)]
pub struct SubspaceCursor {
    n: usize,
    d: usize,
    pivots: Vec<usize>,
    /// (row, column) of every free entry for the current pivot set, last
    /// row first, so earlier rows occupy the high counter bits.
    free: Vec<(usize, usize)>,
    /// Lowest counter bit belonging to each row.
    row_offset: Vec<usize>,
    counter: u128,
    limit: u128,
    rows: Vec<u64>,
    started: bool,
    done: bool,
}

impl SubspaceCursor {
    pub fn new(n: usize, d: usize) -> Self {
        assert!(n <= ENUMERATION_GUARD && d <= n);
        let mut c = Self {
            n,
            d,
            pivots: (0..d).collect(),
            free: Vec::new(),
            row_offset: vec![0; d],
            counter: 0,
            limit: 0,
            rows: vec![0; d],
            started: false,
            done: false,
        };
        c.load_pivots();
        c
    }

    fn load_pivots(&mut self) {
        let mut is_pivot = [false; ENUMERATION_GUARD];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        self.free.clear();
        for (r, &p) in self.pivots.iter().enumerate().rev() {
            self.row_offset[r] = self.free.len();
            for c in (p + 1..self.n).filter(|&c| !is_pivot[c]) {
                self.free.push((r, c));
            }
        }
        self.counter = 0;
        self.limit = 1u128 << self.free.len();
    }

    fn next_pivots(&mut self) -> bool {
        let (n, d) = (self.n, self.d);
        let mut i = d;
        while i > 0 {
            i -= 1;
            if self.pivots[i] < n - d + i {
                self.pivots[i] += 1;
                for j in i + 1..d {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.load_pivots();
                return true;
            }
        }
        false
    }

    /// Makes the next `advance` skip every remaining subspace whose first
    /// `row + 1` basis rows equal the current ones.
    pub fn skip_past_row(&mut self, row: usize) {
        if !self.started || self.done {
            return;
        }
        let off = self.row_offset[row];
        self.counter = (((self.counter >> off) + 1) << off) - 1;
    }

    /// Advances to the next subspace and returns its packed basis rows.
    pub fn advance(&mut self) -> Option<&[u64]> {
        if self.done {
            return None;
        }
        if self.started {
            self.counter += 1;
            if self.counter >= self.limit && !self.next_pivots() {
                self.done = true;
                return None;
            }
        }
        self.started = true;
        for (r, &p) in self.pivots.iter().enumerate() {
            self.rows[r] = 1u64 << p;
        }
        for (k, &(r, c)) in self.free.iter().enumerate() {
            if (self.counter >> k) & 1 == 1 {
                self.rows[r] |= 1u64 << c;
            }
        }
        Some(&self.rows)
    }
}

/// Iterator over every `d`-dimensional subspace of `F₂^n`, each exactly once.
#[derive(Debug)]
pub struct SubspaceIter {
    cursor: SubspaceCursor,
}

impl Iterator for SubspaceIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let n = self.cursor.n;
        let rows = self.cursor.advance()?;
        Some(Subspace {
            ambient_dim: n,
            basis: rows.iter().map(|&w| BitVector::from_word(n, w)).collect(),
        })
    }
}

/// Streams all `d`-dimensional subspaces of `F₂^n`. Requires `n <= 16`.
pub fn enumerate_subspaces(n: usize, d: usize) -> Result<SubspaceIter> {
    if n > ENUMERATION_GUARD {
        return Err(Error::guard(
            "subspace_enumeration_n",
            ENUMERATION_GUARD as u64,
            n as u64,
        ));
    }
    if d > n {
        return Err(Error::InvalidArgument(format!(
            "subspace dimension {d} exceeds ambient dimension {n}"
        )));
    }
    Ok(SubspaceIter {
        cursor: SubspaceCursor::new(n, d),
    })
}

/// Gaussian binomial coefficient `[n choose d]_2`, for `n <= 64`.
pub fn gaussian_binomial(n: usize, d: usize) -> u128 {
    if d > n {
        return 0;
    }
    // Recurrence [n, d] = [n-1, d-1] + 2^d [n-1, d].
    let mut row = vec![1u128];
    for m in 1..=n {
        let mut next = vec![1u128; m + 1];
        for k in 1..m {
            next[k] = row[k - 1] + (row[k] << k);
        }
        row = next;
    }
    row[d]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn skipping_matches_filtering() {
        // keep subspaces whose basis rows all have even weight; a failing row
        // lets the cursor skip every subspace sharing the prefix
        let even = |w: u64| w.count_ones().is_multiple_of(2);
        for (n, d) in [(5, 2), (6, 3), (6, 4), (7, 3)] {
            let full: Vec<Vec<u64>> = enumerate_subspaces(n, d)
                .unwrap()
                .map(|s| s.basis().iter().map(|v| v.to_word()).collect::<Vec<_>>())
                .filter(|rows| rows.iter().all(|&w| even(w)))
                .collect();
            let mut cursor = SubspaceCursor::new(n, d);
            let mut kept = Vec::new();
            while let Some(rows) = cursor.advance() {
                match rows.iter().position(|&w| !even(w)) {
                    None => kept.push(rows.to_vec()),
                    Some(i) => cursor.skip_past_row(i),
                }
            }
            assert_eq!(kept, full, "n={n} d={d}");
        }
    }

    fn m(rows: &[&str]) -> BitMatrix {
        BitMatrix::parse_rows(rows[0].len(), rows).unwrap()
    }

    fn v(s: &str) -> BitVector {
        BitVector::parse01(s).unwrap()
    }

    /// Naive elimination on a dense `Vec<Vec<bool>>` copy.
    fn naive_rank(m: &BitMatrix) -> usize {
        let mut a: Vec<Vec<bool>> = (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
            .collect();
        let mut r = 0;
        for c in 0..m.cols() {
            if let Some(p) = (r..a.len()).find(|&i| a[i][c]) {
                a.swap(r, p);
                for i in 0..a.len() {
                    if i != r && a[i][c] {
                        let pivot_row = a[r].clone();
                        for (x, y) in a[i].iter_mut().zip(pivot_row) {
                            *x ^= y;
                        }
                    }
                }
                r += 1;
            }
        }
        r
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&BitMatrix::identity(3)), 3);
        assert_eq!(rank(&m(&["11", "11"])), 1);
        let mut rng = crate::rng::SplitMix64::new(7);
        for _ in 0..50 {
            let mut a = BitMatrix::zeros(6, 6);
            for i in 0..6 {
                for j in 0..6 {
                    a.set(i, j, rng.next_bit());
                }
            }
            assert_eq!(rank(&a), naive_rank(&a));
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&BitMatrix::identity(3)).dim(), 0);
        assert_eq!(kernel(&BitMatrix::zeros(3, 3)), Subspace::full(3));
        let k = kernel(&m(&["11", "00"]));
        assert_eq!(k.basis(), &[v("11")]);
        // exhaustive check over all 4 vectors
        let a = m(&["11", "00"]);
        for w in 0..4u64 {
            let x = BitVector::from_word(2, w);
            assert_eq!(a.mul_vec(&x).unwrap().is_zero(), k.contains(&x));
        }
    }

    #[test]
    fn span_examples() {
        assert_eq!(
            subspace_span(2, &[v("10"), v("11")]).unwrap(),
            Subspace::full(2)
        );
        assert_eq!(subspace_span(2, &[]).unwrap(), Subspace::zero(2));
        assert_eq!(
            subspace_span(3, &[v("110"), v("011"), v("101")])
                .unwrap()
                .dim(),
            2
        );
        assert!(matches!(
            subspace_span(3, &[v("11")]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(invariants(3, &[]).unwrap().dim(), 3);
        let swap = BitMatrix::permutation(&[1, 0]);
        assert_eq!(
            invariants(2, std::slice::from_ref(&swap)).unwrap().basis(),
            &[v("11")]
        );
        let cycle = BitMatrix::permutation(&[1, 2, 0]);
        let inv = invariants(3, std::slice::from_ref(&cycle)).unwrap();
        assert_eq!(inv.basis(), &[v("111")]);
        for w in 0..8u64 {
            let x = BitVector::from_word(3, w);
            let fixed = cycle.mul_vec(&x).unwrap() == x;
            assert_eq!(fixed, inv.contains(&x));
        }
        assert!(invariants(3, &[swap]).is_err());
    }

    #[test]
    fn coinvariants_examples() {
        assert_eq!(coinvariants_dim(4, &[]).unwrap(), 4);
        let swap = BitMatrix::permutation(&[1, 0]);
        assert_eq!(coinvariants_dim(2, &[swap]).unwrap(), 1);
    }

    #[test]
    fn subspace_counts() {
        assert_eq!(enumerate_subspaces(2, 1).unwrap().count(), 3);
        assert_eq!(enumerate_subspaces(5, 4).unwrap().count(), 31);
        assert_eq!(enumerate_subspaces(4, 2).unwrap().count(), 35);
        assert!(enumerate_subspaces(17, 1).unwrap_err().is_guard());
    }

    #[test]
    fn enumerated_subspaces_are_canonical_and_distinct() {
        let all: Vec<_> = enumerate_subspaces(5, 2).unwrap().collect();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            assert_eq!(&subspace_span(5, s.basis()).unwrap(), s);
        }
    }

    #[test]
    fn intersection_and_sum() {
        let a = subspace_span(3, &[v("100"), v("010")]).unwrap();
        let b = subspace_span(3, &[v("010"), v("001")]).unwrap();
        assert_eq!(a.intersection(&b).unwrap().basis(), &[v("010")]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(3));
    }
}
