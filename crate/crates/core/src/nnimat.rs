//! Non-negative integer matrices and the Flor normal form of idempotents.
//!
//! An idempotent square matrix over the non-negative integers is, after
//! conjugation by a permutation, always of the three-block triangular shape
//!
//! ```text
//! [ 0_a  A   A*B ]
//! [ 0    1_b  B  ]
//! [ 0    0   0_c ]
//! ```
//!
//! with `A` an `a x b` block and `B` a `b x c` block. [`flor_normal_form`]
//! computes a witnessing permutation by index classification and verifies the
//! block equations exactly; [`flor_oracle`] finds one by exhaustive search and
//! exists purely as an independent cross-check.
//!
//! [`flor_normal_form`]: NniMatrix::flor_normal_form
//! [`flor_oracle`]: NniMatrix::flor_oracle

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest size accepted by the exhaustive [`NniMatrix::flor_oracle`].
pub const FLOR_ORACLE_MAX_SIZE: usize = 7;

/// Errors from exact non-negative integer matrix arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NniError {
    /// Operand shapes do not match the operation.
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    /// A checked add or multiply overflowed the machine word.
    Overflow,
    /// The operation requires a square matrix.
    NotSquare { rows: usize, cols: usize },
    /// A row of the input had the wrong width.
    RaggedRows { row: usize, expected: usize, got: usize },
}

impl fmt::Display for NniError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NniError::DimensionMismatch { left, right } => write!(
                f,
                "DimensionMismatch: cannot combine {}x{} with {}x{}",
                left.0, left.1, right.0, right.1
            ),
            NniError::Overflow => write!(f, "Overflow: entry exceeds the machine word"),
            NniError::NotSquare { rows, cols } => {
                write!(f, "NotSquare: matrix is {rows}x{cols}")
            }
            NniError::RaggedRows { row, expected, got } => write!(
                f,
                "RaggedRows: row {row} has {got} entries, expected {expected}"
            ),
        }
    }
}

impl core::error::Error for NniError {}

/// Errors from the Flor normal form computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FlorError {
    /// The input is not idempotent (`M * M != M`).
    NotIdempotent,
    /// A diagonal entry lies outside `{0, 1}`. Impossible for true
    /// idempotents; signals corrupted input from an upstream computation.
    MalformedDiagonal { index: usize, value: u64 },
    /// Index classification produced an index fitting no block class, or the
    /// conjugated matrix failed a block equation. Signals a bug.
    VerificationFailed { detail: &'static str },
    /// Exhaustive search found no witnessing permutation. Signals a bug.
    NoWitness,
    /// The matrix is too large for the exhaustive oracle.
    TooLarge { size: usize, max: usize },
    /// Underlying arithmetic failure.
    Arithmetic(NniError),
}

impl fmt::Display for FlorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlorError::NotIdempotent => write!(f, "NotIdempotent: matrix squared differs from the matrix"),
            FlorError::MalformedDiagonal { index, value } => write!(
                f,
                "MalformedDiagonal: diagonal entry {value} at index {index} is outside {{0, 1}}"
            ),
            FlorError::VerificationFailed { detail } => {
                write!(f, "VerificationFailed: {detail}")
            }
            FlorError::NoWitness => write!(f, "NoWitness: exhaustive search found no block form"),
            FlorError::TooLarge { size, max } => write!(
                f,
                "TooLarge: oracle supports up to {max}x{max}, got {size}x{size}"
            ),
            FlorError::Arithmetic(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FlorError {}

impl From<NniError> for FlorError {
    fn from(e: NniError) -> Self {
        FlorError::Arithmetic(e)
    }
}

/// A dense matrix over the non-negative integers, stored row-major.
///
/// All arithmetic is checked; overflow is an error rather than a wrap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NniMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl NniMatrix {
    /// Builds a matrix from rows, rejecting ragged input.
    pub fn from_rows(rows: Vec<Vec<u64>>) -> Result<Self, NniError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != ncols {
                return Err(NniError::RaggedRows {
                    row: i,
                    expected: ncols,
                    got: row.len(),
                });
            }
            entries.extend_from_slice(row);
        }
        Ok(NniMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// The `rows x cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        NniMatrix {
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    /// The `n x n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = NniMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix of explicit shape from an entry function. Unlike
    /// [`NniMatrix::from_rows`] this keeps the column count of empty blocks.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = NniMatrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries[r * self.cols + c] = v;
    }

    /// The rows as vectors, e.g. for serialization.
    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec())
            .collect()
    }

    /// Checked matrix product.
    pub fn multiply(&self, other: &NniMatrix) -> Result<NniMatrix, NniError> {
        if self.cols != other.rows {
            return Err(NniError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = NniMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b == 0 {
                        continue;
                    }
                    let prod = a.checked_mul(b).ok_or(NniError::Overflow)?;
                    let cur = out.get(r, c);
                    out.set(r, c, cur.checked_add(prod).ok_or(NniError::Overflow)?);
                }
            }
        }
        Ok(out)
    }

    /// Whether `M * M == M` exactly. Non-square matrices are rejected.
    pub fn is_idempotent(&self) -> Result<bool, NniError> {
        if self.rows != self.cols {
            return Err(NniError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.multiply(self)? == *self)
    }

    /// Checked trace of a square matrix.
    pub fn trace(&self) -> Result<u64, NniError> {
        if self.rows != self.cols {
            return Err(NniError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut t: u64 = 0;
        for i in 0..self.rows {
            t = t.checked_add(self.get(i, i)).ok_or(NniError::Overflow)?;
        }
        Ok(t)
    }

    /// Flor normal form of an idempotent matrix, by index classification.
    ///
    /// Indices with diagonal entry 1 form the identity block; among the
    /// remaining indices, a zero column puts an index in the leading block
    /// and a zero row in the trailing block. An index whose row *and* column
    /// are both zero is placed in the trailing block (fixed tie-break). The
    /// resulting form is verified against the block equations before being
    /// returned.
    pub fn flor_normal_form(&self) -> Result<FlorBlockForm, FlorError> {
        if !self.is_idempotent()? {
            return Err(FlorError::NotIdempotent);
        }
        let n = self.rows;
        for i in 0..n {
            let d = self.get(i, i);
            if d > 1 {
                return Err(FlorError::MalformedDiagonal { index: i, value: d });
            }
        }

        let mut a_class = Vec::new();
        let mut b_class = Vec::new();
        let mut c_class = Vec::new();
        for i in 0..n {
            if self.get(i, i) == 1 {
                b_class.push(i);
                continue;
            }
            let col_zero = (0..n).all(|r| self.get(r, i) == 0);
            let row_zero = (0..n).all(|c| self.get(i, c) == 0);
            match (col_zero, row_zero) {
                // Both zero ties to the trailing block.
                (_, true) => c_class.push(i),
                (true, false) => a_class.push(i),
                (false, false) => {
                    return Err(FlorError::VerificationFailed {
                        detail: "index with nonzero row and column but zero diagonal",
                    })
                }
            }
        }

        let mut perm = a_class.clone();
        perm.extend_from_slice(&b_class);
        perm.extend_from_slice(&c_class);
        let form = FlorBlockForm::from_classification(self, perm, a_class.len(), b_class.len(), c_class.len())?;
        form.verify(self)?;
        Ok(form)
    }

    /// Independent exhaustive-search oracle for the Flor normal form.
    ///
    /// Tries every split `a + b + c = n` in ascending `a` order and every
    /// permutation in lexicographic order, returning the first witness whose
    /// conjugate satisfies the block equations. Only sizes up to
    /// [`FLOR_ORACLE_MAX_SIZE`] are accepted. This deliberately shares no
    /// logic with [`NniMatrix::flor_normal_form`].
    pub fn flor_oracle(&self) -> Result<FlorBlockForm, FlorError> {
        let n = self.rows;
        if n > FLOR_ORACLE_MAX_SIZE {
            return Err(FlorError::TooLarge {
                size: n,
                max: FLOR_ORACLE_MAX_SIZE,
            });
        }
        if !self.is_idempotent()? {
            return Err(FlorError::NotIdempotent);
        }
        // Ascending `a` makes the first witness agree with the
        // classification path, which ties row-and-column-zero indices to the
        // trailing block.
        for a in 0..=n {
            for b in 0..=(n - a) {
                let c = n - a - b;
                let mut perm: Vec<usize> = (0..n).collect();
                loop {
                    if let Some(form) = oracle_try_witness(self, &perm, a, b, c) {
                        return Ok(form);
                    }
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
        }
        Err(FlorError::NoWitness)
    }
}

impl fmt::Display for NniMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Checks the block equations for one candidate `(perm, a, b, c)` without
/// using the classification machinery. Returns the form on success.
fn oracle_try_witness(
    m: &NniMatrix,
    perm: &[usize],
    a: usize,
    b: usize,
    c: usize,
) -> Option<FlorBlockForm> {
    let n = m.rows();
    let at = |p: usize, q: usize| m.get(perm[p], perm[q]);
    // Leading a columns and trailing c rows vanish; middle block is the identity.
    for p in 0..n {
        for q in 0..a {
            if at(p, q) != 0 {
                return None;
            }
        }
    }
    for p in (a + b)..n {
        for q in 0..n {
            if at(p, q) != 0 {
                return None;
            }
        }
    }
    for p in a..(a + b) {
        for q in a..(a + b) {
            let want = u64::from(p == q);
            if at(p, q) != want {
                return None;
            }
        }
    }
    // Top-right block must equal the product of the two off-diagonal blocks.
    for p in 0..a {
        for q in (a + b)..n {
            let mut sum: u64 = 0;
            for k in a..(a + b) {
                sum = sum.checked_add(at(p, k).checked_mul(at(k, q))?)?;
            }
            if at(p, q) != sum {
                return None;
            }
        }
    }
    let block_a = NniMatrix::from_fn(a, b, |p, q| at(p, a + q));
    let block_b = NniMatrix::from_fn(b, c, |p, q| at(a + p, a + b + q));
    Some(FlorBlockForm {
        perm: perm.to_vec(),
        a,
        b,
        c,
        block_a,
        block_b,
    })
}

/// Advances `perm` to its lexicographic successor; false once exhausted.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// The Flor normal form of an idempotent matrix: a permutation together with
/// block sizes `a`, `b`, `c` and the off-diagonal blocks `A` and `B`.
///
/// `perm[p]` is the original index sitting at block position `p`, so the
/// block-form matrix is `M[perm[p]][perm[q]]` at position `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlorBlockForm {
    perm: Vec<usize>,
    a: usize,
    b: usize,
    c: usize,
    block_a: NniMatrix,
    block_b: NniMatrix,
}

impl FlorBlockForm {
    fn from_classification(
        m: &NniMatrix,
        perm: Vec<usize>,
        a: usize,
        b: usize,
        c: usize,
    ) -> Result<Self, FlorError> {
        let at = |p: usize, q: usize| m.get(perm[p], perm[q]);
        let block_a = NniMatrix::from_fn(a, b, |p, q| at(p, a + q));
        let block_b = NniMatrix::from_fn(b, c, |p, q| at(a + p, a + b + q));
        Ok(FlorBlockForm {
            perm,
            a,
            b,
            c,
            block_a,
            block_b,
        })
    }

    /// Builds the form directly from blocks, for round-trip construction.
    pub fn from_blocks(
        perm: Vec<usize>,
        block_a: NniMatrix,
        block_b: NniMatrix,
        c: usize,
    ) -> Result<Self, NniError> {
        if block_a.cols() != block_b.rows() {
            return Err(NniError::DimensionMismatch {
                left: (block_a.rows(), block_a.cols()),
                right: (block_b.rows(), block_b.cols()),
            });
        }
        Ok(FlorBlockForm {
            perm,
            a: block_a.rows(),
            b: block_a.cols(),
            c,
            block_a,
            block_b,
        })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn block_a(&self) -> &NniMatrix {
        &self.block_a
    }

    pub fn block_b(&self) -> &NniMatrix {
        &self.block_b
    }

    /// Assembles the block matrix `[[0, A, A*B], [0, 1, B], [0, 0, 0]]`.
    pub fn assemble(&self) -> Result<NniMatrix, NniError> {
        let n = self.a + self.b + self.c;
        let ab = self.block_a.multiply(&self.block_b)?;
        let mut m = NniMatrix::zeros(n, n);
        for p in 0..self.a {
            for q in 0..self.b {
                m.set(p, self.a + q, self.block_a.get(p, q));
            }
            for q in 0..self.c {
                m.set(p, self.a + self.b + q, ab.get(p, q));
            }
        }
        for p in 0..self.b {
            m.set(self.a + p, self.a + p, 1);
            for q in 0..self.c {
                m.set(self.a + p, self.a + self.b + q, self.block_b.get(p, q));
            }
        }
        Ok(m)
    }

    /// Verifies that conjugating `m` by the stored permutation yields exactly
    /// the assembled block matrix.
    pub fn verify(&self, m: &NniMatrix) -> Result<(), FlorError> {
        let n = self.a + self.b + self.c;
        if m.rows() != n || m.cols() != n || self.perm.len() != n {
            return Err(FlorError::VerificationFailed {
                detail: "block sizes do not match the matrix",
            });
        }
        let mut seen = vec![false; n];
        for &p in &self.perm {
            if p >= n || seen[p] {
                return Err(FlorError::VerificationFailed {
                    detail: "perm is not a permutation",
                });
            }
            seen[p] = true;
        }
        let expected = self.assemble()?;
        for p in 0..n {
            for q in 0..n {
                if m.get(self.perm[p], self.perm[q]) != expected.get(p, q) {
                    return Err(FlorError::VerificationFailed {
                        detail: "conjugated matrix differs from the assembled block form",
                    });
                }
            }
        }
        Ok(())
    }

    /// Applies `perm` to build the original-order matrix from the block form:
    /// the inverse of conjugation, used to construct round-trip instances.
    pub fn scatter(&self) -> Result<NniMatrix, NniError> {
        let n = self.a + self.b + self.c;
        let block = self.assemble()?;
        let mut m = NniMatrix::zeros(n, n);
        for p in 0..n {
            for q in 0..n {
                m.set(self.perm[p], self.perm[q], block.get(p, q));
            }
        }
        Ok(m)
    }
}
