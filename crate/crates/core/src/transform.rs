//! The four symmetries of the bordered problem. Each takes a matrix together
//! with its boundary specification and returns the transformed pair; each is
//! an involution, and each preserves validity, feasibility, and solution
//! counts.

use std::fmt;
use std::str::FromStr;

use crate::boundary::BoundarySpec;
use crate::matrix::{DimensionMismatch, SignMatrix};

fn check_dims(a: &SignMatrix, spec: &BoundarySpec) -> Result<(), DimensionMismatch> {
    if a.rows() != spec.rows() || a.cols() != spec.cols() {
        return Err(DimensionMismatch {
            matrix_rows: a.rows(),
            matrix_cols: a.cols(),
            spec_rows: spec.rows(),
            spec_cols: spec.cols(),
        });
    }
    Ok(())
}

/// Reverses the row order. The top and bottom borders swap roles and the
/// left and right borders reverse.
pub fn reverse_rows(
    a: &SignMatrix,
    spec: &BoundarySpec,
) -> Result<(SignMatrix, BoundarySpec), DimensionMismatch> {
    check_dims(a, spec)?;
    Ok((a.reversed_rows(), spec.reversed_rows()))
}

/// Reverses the column order. The left and right borders swap roles and the
/// top and bottom borders reverse.
pub fn reverse_cols(
    a: &SignMatrix,
    spec: &BoundarySpec,
) -> Result<(SignMatrix, BoundarySpec), DimensionMismatch> {
    check_dims(a, spec)?;
    Ok((a.reversed_cols(), spec.reversed_cols()))
}

/// Transposes the matrix; row borders and column borders trade places.
pub fn transpose(
    a: &SignMatrix,
    spec: &BoundarySpec,
) -> Result<(SignMatrix, BoundarySpec), DimensionMismatch> {
    check_dims(a, spec)?;
    Ok((a.transposed(), spec.transposed()))
}

/// Negates every entry and every border sign.
pub fn negate(
    a: &SignMatrix,
    spec: &BoundarySpec,
) -> Result<(SignMatrix, BoundarySpec), DimensionMismatch> {
    check_dims(a, spec)?;
    Ok((a.negated(), spec.negated()))
}

/// A named symmetry, convenient for command-line selection and for sweeping
/// all four in tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformOp {
    ReverseRows,
    ReverseCols,
    Transpose,
    Negate,
}

impl TransformOp {
    pub const ALL: [TransformOp; 4] = [
        TransformOp::ReverseRows,
        TransformOp::ReverseCols,
        TransformOp::Transpose,
        TransformOp::Negate,
    ];

    pub fn apply(
        self,
        a: &SignMatrix,
        spec: &BoundarySpec,
    ) -> Result<(SignMatrix, BoundarySpec), DimensionMismatch> {
        match self {
            TransformOp::ReverseRows => reverse_rows(a, spec),
            TransformOp::ReverseCols => reverse_cols(a, spec),
            TransformOp::Transpose => transpose(a, spec),
            TransformOp::Negate => negate(a, spec),
        }
    }

    pub fn apply_spec(self, spec: &BoundarySpec) -> BoundarySpec {
        match self {
            TransformOp::ReverseRows => spec.reversed_rows(),
            TransformOp::ReverseCols => spec.reversed_cols(),
            TransformOp::Transpose => spec.transposed(),
            TransformOp::Negate => spec.negated(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TransformOp::ReverseRows => "reverse-rows",
            TransformOp::ReverseCols => "reverse-cols",
            TransformOp::Transpose => "transpose",
            TransformOp::Negate => "negate",
        }
    }
}

impl fmt::Display for TransformOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Unrecognized transform name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownTransform(pub String);

impl fmt::Display for UnknownTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown transform {:?}, expected one of reverse-rows, reverse-cols, transpose, negate",
            self.0
        )
    }
}

impl std::error::Error for UnknownTransform {}

impl FromStr for TransformOp {
    type Err = UnknownTransform;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reverse-rows" => Ok(TransformOp::ReverseRows),
            "reverse-cols" => Ok(TransformOp::ReverseCols),
            "transpose" => Ok(TransformOp::Transpose),
            "negate" => Ok(TransformOp::Negate),
            _ => Err(UnknownTransform(s.to_string())),
        }
    }
}
