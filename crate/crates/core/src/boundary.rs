//! Boundary specifications: the four border vectors that prescribe where an
//! alternating sign matrix's rows and columns must start and end, plus the
//! JSON document format used to exchange them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::sign::{Sign, SignVector, SignVectorError};

/// The four border vectors of an m x n problem: `u` (top) and `u_prime`
/// (bottom) have length n, `v` (left) and `v_prime` (right) have length m.
///
/// Along every column j of a solution, the nonzeros of the sequence
/// u_j, a_{1j}, ..., a_{mj}, u'_j must strictly alternate in sign, and
/// likewise along every row i for v_i, a_{i1}, ..., a_{in}, v'_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundarySpec {
    u: SignVector,
    u_prime: SignVector,
    v: SignVector,
    v_prime: SignVector,
}

/// Rejected border vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryError {
    /// `u` and `u_prime` lengths differ.
    TopBottomMismatch { u: usize, u_prime: usize },
    /// `v` and `v_prime` lengths differ.
    LeftRightMismatch { v: usize, v_prime: usize },
}

impl fmt::Display for BoundaryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryError::TopBottomMismatch { u, u_prime } => {
                write!(f, "u has length {u} but u_prime has length {u_prime}")
            }
            BoundaryError::LeftRightMismatch { v, v_prime } => {
                write!(f, "v has length {v} but v_prime has length {v_prime}")
            }
        }
    }
}

impl std::error::Error for BoundaryError {}

impl BoundarySpec {
    pub fn new(
        u: SignVector,
        u_prime: SignVector,
        v: SignVector,
        v_prime: SignVector,
    ) -> Result<Self, BoundaryError> {
        if u.len() != u_prime.len() {
            return Err(BoundaryError::TopBottomMismatch { u: u.len(), u_prime: u_prime.len() });
        }
        if v.len() != v_prime.len() {
            return Err(BoundaryError::LeftRightMismatch { v: v.len(), v_prime: v_prime.len() });
        }
        Ok(BoundarySpec { u, u_prime, v, v_prime })
    }

    /// All four borders filled with `sign`. With `Sign::Minus` and m = n this
    /// is the classical alternating sign matrix problem.
    pub fn constant(rows: usize, cols: usize, sign: Sign) -> Self {
        BoundarySpec {
            u: SignVector::repeated(cols, sign),
            u_prime: SignVector::repeated(cols, sign),
            v: SignVector::repeated(rows, sign),
            v_prime: SignVector::repeated(rows, sign),
        }
    }

    /// The classical problem: all four borders -1, square shape.
    pub fn classical(n: usize) -> Self {
        BoundarySpec::constant(n, n, Sign::Minus)
    }

    /// All four borders alternate +1, -1, +1, ... (square shape).
    pub fn alternating(n: usize) -> Self {
        let w = SignVector::alternating(n, Sign::Plus);
        BoundarySpec { u: w.clone(), u_prime: w.clone(), v: w.clone(), v_prime: w }
    }

    /// Number of rows, m.
    pub fn rows(&self) -> usize {
        self.v.len()
    }

    /// Number of columns, n.
    pub fn cols(&self) -> usize {
        self.u.len()
    }

    pub fn u(&self) -> &SignVector {
        &self.u
    }

    pub fn u_prime(&self) -> &SignVector {
        &self.u_prime
    }

    pub fn v(&self) -> &SignVector {
        &self.v
    }

    pub fn v_prime(&self) -> &SignVector {
        &self.v_prime
    }

    /// The specification solved by a solution with its rows reversed:
    /// top/bottom borders swap, left/right borders reverse.
    pub fn reversed_rows(&self) -> BoundarySpec {
        BoundarySpec {
            u: self.u_prime.clone(),
            u_prime: self.u.clone(),
            v: self.v.reversed(),
            v_prime: self.v_prime.reversed(),
        }
    }

    /// The specification solved by a solution with its columns reversed:
    /// left/right borders swap, top/bottom borders reverse.
    pub fn reversed_cols(&self) -> BoundarySpec {
        BoundarySpec {
            u: self.u.reversed(),
            u_prime: self.u_prime.reversed(),
            v: self.v_prime.clone(),
            v_prime: self.v.clone(),
        }
    }

    /// The specification solved by a transposed solution: row and column
    /// borders trade places.
    pub fn transposed(&self) -> BoundarySpec {
        BoundarySpec {
            u: self.v.clone(),
            u_prime: self.v_prime.clone(),
            v: self.u.clone(),
            v_prime: self.u_prime.clone(),
        }
    }

    /// The specification solved by a negated solution: every border sign
    /// flips.
    pub fn negated(&self) -> BoundarySpec {
        BoundarySpec {
            u: self.u.negated(),
            u_prime: self.u_prime.negated(),
            v: self.v.negated(),
            v_prime: self.v_prime.negated(),
        }
    }

    pub fn from_json_str(text: &str) -> Result<Self, SpecDocError> {
        let doc: SpecDocument = serde_json::from_str(text).map_err(SpecDocError::Json)?;
        doc.into_spec()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&SpecDocument::from_spec(self))
            .expect("spec document serialization cannot fail")
    }
}

impl fmt::Display for BoundarySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u={} u'={} v={} v'={}",
            self.u, self.u_prime, self.v, self.v_prime
        )
    }
}

/// The JSON exchange format: four arrays of `+1`/`-1` integers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecDocument {
    pub u: Vec<i64>,
    pub u_prime: Vec<i64>,
    pub v: Vec<i64>,
    pub v_prime: Vec<i64>,
}

/// Failure to read a spec document.
#[derive(Debug)]
pub enum SpecDocError {
    /// Malformed JSON; the message cites line and column.
    Json(serde_json::Error),
    /// A field holds something other than nonempty +1/-1 entries.
    Field { field: &'static str, source: SignVectorError },
    Lengths(BoundaryError),
}

impl fmt::Display for SpecDocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecDocError::Json(e) => write!(f, "malformed spec document: {e}"),
            SpecDocError::Field { field, source } => write!(f, "field {field:?}: {source}"),
            SpecDocError::Lengths(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpecDocError {}

impl SpecDocument {
    pub fn from_spec(spec: &BoundarySpec) -> Self {
        SpecDocument {
            u: spec.u().to_values(),
            u_prime: spec.u_prime().to_values(),
            v: spec.v().to_values(),
            v_prime: spec.v_prime().to_values(),
        }
    }

    pub fn into_spec(self) -> Result<BoundarySpec, SpecDocError> {
        let field = |field, values: &[i64]| {
            SignVector::from_values(values).map_err(|source| SpecDocError::Field { field, source })
        };
        let u = field("u", &self.u)?;
        let u_prime = field("u_prime", &self.u_prime)?;
        let v = field("v", &self.v)?;
        let v_prime = field("v_prime", &self.v_prime)?;
        BoundarySpec::new(u, u_prime, v, v_prime).map_err(SpecDocError::Lengths)
    }
}
