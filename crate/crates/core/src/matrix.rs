//! Sign matrices (entries in {-1, 0, +1}), the text grid format, and the
//! bordered view that surrounds a matrix with its boundary vectors.

use std::fmt;

use crate::boundary::BoundarySpec;

/// A dense matrix with entries in `{-1, 0, +1}`. Entries are immutable once
/// the matrix is built; transformations return new matrices.
///
/// Dimensions may be zero (the empty matrix arises as a degenerate block in
/// decompositions); the text grid format only covers nonempty matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

/// Rejected input while building a [`SignMatrix`] from rows of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixError {
    /// Row `row` (1-based) has a different length than the first row.
    Ragged { row: usize, expected: usize, actual: usize },
    /// Entry at 1-based (row, col) is outside {-1, 0, 1}.
    BadValue { row: usize, col: usize, value: i64 },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Ragged { row, expected, actual } => {
                write!(f, "row {row} has {actual} entries, expected {expected}")
            }
            MatrixError::BadValue { row, col, value } => {
                write!(f, "entry ({row}, {col}) is {value}, expected -1, 0, or +1")
            }
        }
    }
}

impl std::error::Error for MatrixError {}

/// Failure to parse the text grid format ('+', '-', '.' cells, one row per
/// line).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridParseError {
    Empty,
    /// Line `line` (1-based) differs in length from the first line.
    RaggedLine { line: usize, expected: usize, actual: usize },
    /// Unexpected character at 1-based (line, column).
    BadChar { line: usize, column: usize, ch: char },
}

impl fmt::Display for GridParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridParseError::Empty => write!(f, "grid is empty"),
            GridParseError::RaggedLine { line, expected, actual } => {
                write!(f, "line {line} has {actual} cells, expected {expected}")
            }
            GridParseError::BadChar { line, column, ch } => {
                write!(f, "line {line}, column {column}: {ch:?} is not '+', '-', or '.'")
            }
        }
    }
}

impl std::error::Error for GridParseError {}

impl SignMatrix {
    /// The all-zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        SignMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    /// Builds from rows of `-1`/`0`/`+1` integers. Rows must be rectangular.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(height * width);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(MatrixError::Ragged { row: i + 1, expected: width, actual: row.len() });
            }
            for (j, &value) in row.iter().enumerate() {
                match value {
                    -1 | 0 | 1 => entries.push(value as i8),
                    _ => return Err(MatrixError::BadValue { row: i + 1, col: j + 1, value }),
                }
            }
        }
        Ok(SignMatrix { rows: height, cols: width, entries })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, entries: Vec<i8>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        debug_assert!(entries.iter().all(|&e| (-1..=1).contains(&e)));
        SignMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Zero-based entry access. Panics if out of range.
    pub fn get(&self, row: usize, col: usize) -> i8 {
        assert!(row < self.rows && col < self.cols, "entry ({row}, {col}) out of range");
        self.entries[row * self.cols + col]
    }

    pub(crate) fn set(&mut self, row: usize, col: usize, value: i8) {
        debug_assert!((-1..=1).contains(&value));
        self.entries[row * self.cols + col] = value;
    }

    /// Row-major iteration over all entries.
    pub fn entries(&self) -> impl Iterator<Item = i8> + '_ {
        self.entries.iter().copied()
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().filter(|&&e| e != 0).count()
    }

    /// Sum of all entries.
    pub fn entry_sum(&self) -> i64 {
        self.entries.iter().map(|&e| i64::from(e)).sum()
    }

    pub fn reversed_rows(&self) -> SignMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in (0..self.rows).rev() {
            entries.extend_from_slice(&self.entries[i * self.cols..(i + 1) * self.cols]);
        }
        SignMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn reversed_cols(&self) -> SignMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for i in 0..self.rows {
            entries.extend(self.entries[i * self.cols..(i + 1) * self.cols].iter().rev());
        }
        SignMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn transposed(&self) -> SignMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entries[i * self.cols + j]);
            }
        }
        SignMatrix { rows: self.cols, cols: self.rows, entries }
    }

    pub fn negated(&self) -> SignMatrix {
        SignMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| -e).collect(),
        }
    }

    /// Parses the text grid format: one row per line, cells '+', '-', '.'.
    pub fn from_grid(text: &str) -> Result<Self, GridParseError> {
        let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
        if lines.is_empty() {
            return Err(GridParseError::Empty);
        }
        let width = lines[0].chars().count();
        let mut rows = Vec::with_capacity(lines.len());
        for (i, line) in lines.iter().enumerate() {
            let mut row = Vec::with_capacity(width);
            for (j, ch) in line.chars().enumerate() {
                row.push(match ch {
                    '+' => 1i64,
                    '-' => -1,
                    '.' => 0,
                    _ => return Err(GridParseError::BadChar { line: i + 1, column: j + 1, ch }),
                });
            }
            if row.len() != width {
                return Err(GridParseError::RaggedLine {
                    line: i + 1,
                    expected: width,
                    actual: row.len(),
                });
            }
            rows.push(row);
        }
        if width == 0 {
            return Err(GridParseError::Empty);
        }
        Ok(SignMatrix::from_rows(&rows).expect("grid cells are already validated"))
    }

    /// Renders the text grid format, one row per line with a trailing newline.
    pub fn to_grid(&self) -> String {
        let mut out = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.push(match self.entries[i * self.cols + j] {
                    1 => '+',
                    -1 => '-',
                    _ => '.',
                });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

impl fmt::Debug for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SignMatrix({}x{})", self.rows, self.cols)?;
        f.write_str(&self.to_grid())
    }
}

/// A matrix's shape does not agree with a boundary specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub matrix_rows: usize,
    pub matrix_cols: usize,
    pub spec_rows: usize,
    pub spec_cols: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "matrix is {}x{} but the boundary specification is {}x{}",
            self.matrix_rows, self.matrix_cols, self.spec_rows, self.spec_cols
        )
    }
}

impl std::error::Error for DimensionMismatch {}

/// A logical view of a matrix surrounded by its border vectors: an
/// (m+2) x (n+2) layout whose first/last rows hold the top/bottom borders,
/// whose first/last columns hold the left/right borders, and whose four
/// corners are zero. Nothing is materialized.
#[derive(Clone, Copy)]
pub struct BorderedMatrix<'a> {
    inner: &'a SignMatrix,
    spec: &'a BoundarySpec,
}

impl<'a> BorderedMatrix<'a> {
    pub fn new(inner: &'a SignMatrix, spec: &'a BoundarySpec) -> Result<Self, DimensionMismatch> {
        if inner.rows() != spec.rows() || inner.cols() != spec.cols() {
            return Err(DimensionMismatch {
                matrix_rows: inner.rows(),
                matrix_cols: inner.cols(),
                spec_rows: spec.rows(),
                spec_cols: spec.cols(),
            });
        }
        Ok(BorderedMatrix { inner, spec })
    }

    /// Rows of the bordered layout, `m + 2`.
    pub fn rows(&self) -> usize {
        self.inner.rows() + 2
    }

    /// Columns of the bordered layout, `n + 2`.
    pub fn cols(&self) -> usize {
        self.inner.cols() + 2
    }

    pub fn inner(&self) -> &SignMatrix {
        self.inner
    }

    pub fn spec(&self) -> &BoundarySpec {
        self.spec
    }

    /// Entry of the bordered layout. Row 0 is the top border, row m+1 the
    /// bottom border, column 0 the left border, column n+1 the right border;
    /// corners are zero. Panics if out of range.
    pub fn entry(&self, row: usize, col: usize) -> i8 {
        let (m, n) = (self.inner.rows(), self.inner.cols());
        assert!(row <= m + 1 && col <= n + 1, "bordered entry ({row}, {col}) out of range");
        let top = row == 0;
        let bottom = row == m + 1;
        let left = col == 0;
        let right = col == n + 1;
        match (top, bottom, left, right) {
            (true, _, true, _) | (true, _, _, true) | (_, true, true, _) | (_, true, _, true) => 0,
            (true, ..) => self.spec.u().get(col - 1).value(),
            (_, true, ..) => self.spec.u_prime().get(col - 1).value(),
            (_, _, true, _) => self.spec.v().get(row - 1).value(),
            (_, _, _, true) => self.spec.v_prime().get(row - 1).value(),
            _ => self.inner.get(row - 1, col - 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sign::SignVector;

    fn spec(u: &str, up: &str, v: &str, vp: &str) -> BoundarySpec {
        BoundarySpec::new(
            u.parse::<SignVector>().unwrap(),
            up.parse().unwrap(),
            v.parse().unwrap(),
            vp.parse().unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn grid_round_trip() {
        let text = "-.+.\n.+.-\n..-.\n...+\n";
        let m = SignMatrix::from_grid(text).unwrap();
        assert_eq!(m.rows(), 4);
        assert_eq!(m.cols(), 4);
        assert_eq!(m.get(0, 0), -1);
        assert_eq!(m.get(1, 3), -1);
        assert_eq!(m.to_grid(), text);
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert_eq!(SignMatrix::from_grid(""), Err(GridParseError::Empty));
        assert_eq!(SignMatrix::from_grid("\n \n"), Err(GridParseError::Empty));
        assert_eq!(
            SignMatrix::from_grid("+.\n+"),
            Err(GridParseError::RaggedLine { line: 2, expected: 2, actual: 1 })
        );
        assert_eq!(
            SignMatrix::from_grid("+x\n.."),
            Err(GridParseError::BadChar { line: 1, column: 2, ch: 'x' })
        );
    }

    #[test]
    fn from_rows_validates_entries() {
        assert!(SignMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).is_ok());
        assert_eq!(
            SignMatrix::from_rows(&[vec![0, 2]]),
            Err(MatrixError::BadValue { row: 1, col: 2, value: 2 })
        );
        assert_eq!(
            SignMatrix::from_rows(&[vec![0], vec![0, 0]]),
            Err(MatrixError::Ragged { row: 2, expected: 1, actual: 2 })
        );
    }

    #[test]
    fn reversal_and_transpose_shapes() {
        let m = SignMatrix::from_grid("+-.\n..+\n").unwrap();
        assert_eq!(m.reversed_rows().to_grid(), "..+\n+-.\n");
        assert_eq!(m.reversed_cols().to_grid(), ".-+\n+..\n");
        assert_eq!(m.transposed().to_grid(), "+.\n-.\n.+\n");
        assert_eq!(m.negated().to_grid(), "-+.\n..-\n");
        assert_eq!(m.reversed_rows().reversed_rows(), m);
        assert_eq!(m.transposed().transposed(), m);
    }

    #[test]
    fn bordered_view_maps_borders_and_corners() {
        let m = SignMatrix::from_grid("..\n..\n").unwrap();
        let s = spec("+-", "-+", "++", "--");
        let b = BorderedMatrix::new(&m, &s).unwrap();
        assert_eq!(b.rows(), 4);
        assert_eq!(b.cols(), 4);
        assert_eq!(b.entry(0, 0), 0);
        assert_eq!(b.entry(0, 3), 0);
        assert_eq!(b.entry(3, 0), 0);
        assert_eq!(b.entry(3, 3), 0);
        assert_eq!(b.entry(0, 1), 1);
        assert_eq!(b.entry(0, 2), -1);
        assert_eq!(b.entry(3, 1), -1);
        assert_eq!(b.entry(3, 2), 1);
        assert_eq!(b.entry(1, 0), 1);
        assert_eq!(b.entry(2, 0), 1);
        assert_eq!(b.entry(1, 3), -1);
        assert_eq!(b.entry(2, 3), -1);
        assert_eq!(b.entry(1, 1), 0);
    }

    #[test]
    fn bordered_view_requires_matching_shape() {
        let m = SignMatrix::zero(2, 3);
        let s = spec("+-", "-+", "++", "--");
        let err = BorderedMatrix::new(&m, &s).unwrap_err();
        assert_eq!(err.matrix_cols, 3);
        assert_eq!(err.spec_cols, 2);
    }
}
