//! Checking a candidate matrix against a boundary specification, and reading
//! a specification back off a matrix.
//!
//! A matrix is valid when, along every bordered row and column (border sign,
//! then the line's entries, then the closing border sign), consecutive
//! nonzeros strictly alternate. Violations cite the offending line and the
//! two equal-signed positions.

use std::fmt;

use crate::boundary::BoundarySpec;
use crate::matrix::{BorderedMatrix, DimensionMismatch, SignMatrix};
use crate::sign::{Sign, SignVector};

/// Which direction a violated line runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Column => "column",
        })
    }
}

/// Two consecutive nonzeros of equal sign along one bordered line.
///
/// `index` is the 1-based row or column number. Positions run along the
/// bordered line: 0 is the opening border, 1..=len the matrix entries, and
/// len+1 the closing border.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternationViolation {
    pub axis: Axis,
    pub index: usize,
    pub first_position: usize,
    pub second_position: usize,
    pub sign: Sign,
}

impl fmt::Display for AlternationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: consecutive {}1s at bordered positions {} and {}",
            self.axis, self.index, self.sign, self.first_position, self.second_position
        )
    }
}

fn scan_line(
    axis: Axis,
    index: usize,
    signs: impl Iterator<Item = i8>,
    out: &mut Vec<AlternationViolation>,
) {
    let mut last: Option<(usize, i8)> = None;
    for (pos, value) in signs.enumerate() {
        if value == 0 {
            continue;
        }
        if let Some((prev_pos, prev)) = last {
            if prev == value {
                out.push(AlternationViolation {
                    axis,
                    index,
                    first_position: prev_pos,
                    second_position: pos,
                    sign: Sign::from_value(value).expect("nonzero"),
                });
            }
        }
        last = Some((pos, value));
    }
}

/// Returns every alternation violation of `a` against `spec`; an empty list
/// means the matrix satisfies the specification. Row violations come first,
/// then column violations, each in ascending line order.
pub fn verify(
    a: &SignMatrix,
    spec: &BoundarySpec,
) -> Result<Vec<AlternationViolation>, DimensionMismatch> {
    let b = BorderedMatrix::new(a, spec)?;
    let (m, n) = (a.rows(), a.cols());
    let mut out = Vec::new();
    for i in 1..=m {
        scan_line(Axis::Row, i, (0..n + 2).map(|j| b.entry(i, j)), &mut out);
    }
    for j in 1..=n {
        scan_line(Axis::Column, j, (0..m + 2).map(|i| b.entry(i, j)), &mut out);
    }
    Ok(out)
}

/// True when `a` is square and valid for the all-minus specification of its
/// size: every row and column's nonzeros alternate and start and end with +1.
/// The empty matrix counts as valid.
pub fn is_classical_asm(a: &SignMatrix) -> bool {
    if a.rows() != a.cols() {
        return false;
    }
    if a.rows() == 0 {
        return true;
    }
    verify(a, &BoundarySpec::classical(a.rows()))
        .expect("square matrix matches square spec")
        .is_empty()
}

/// A line of the matrix itself (borders aside) fails to alternate, so no
/// choice of borders can make the matrix valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteriorNotAlternating {
    pub axis: Axis,
    pub index: usize,
}

impl fmt::Display for InteriorNotAlternating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} has consecutive nonzeros of equal sign; no borders can fix it",
            self.axis, self.index
        )
    }
}

impl std::error::Error for InteriorNotAlternating {}

fn line_ends(
    axis: Axis,
    index: usize,
    signs: impl Iterator<Item = i8>,
) -> Result<Option<(i8, i8)>, InteriorNotAlternating> {
    let mut first = 0i8;
    let mut last = 0i8;
    for value in signs {
        if value == 0 {
            continue;
        }
        if last == value {
            return Err(InteriorNotAlternating { axis, index });
        }
        if first == 0 {
            first = value;
        }
        last = value;
    }
    Ok(if first == 0 { None } else { Some((first, last)) })
}

/// Recovers a specification that `a` satisfies: each border sign is the
/// negation of the nearest nonzero in its line. An all-zero line leaves the
/// opening border free; it takes `zero_line_sign` and the closing border its
/// negation. The returned specification always verifies cleanly against `a`.
pub fn infer_spec(
    a: &SignMatrix,
    zero_line_sign: Sign,
) -> Result<BoundarySpec, InteriorNotAlternating> {
    assert!(a.rows() > 0 && a.cols() > 0, "cannot infer borders for an empty matrix");
    let (m, n) = (a.rows(), a.cols());
    let mut v = Vec::with_capacity(m);
    let mut v_prime = Vec::with_capacity(m);
    for i in 0..m {
        let ends = line_ends(Axis::Row, i + 1, (0..n).map(|j| a.get(i, j)))?;
        match ends {
            Some((first, last)) => {
                v.push(Sign::from_value(-first).expect("nonzero"));
                v_prime.push(Sign::from_value(-last).expect("nonzero"));
            }
            None => {
                v.push(zero_line_sign);
                v_prime.push(zero_line_sign.negated());
            }
        }
    }
    let mut u = Vec::with_capacity(n);
    let mut u_prime = Vec::with_capacity(n);
    for j in 0..n {
        let ends = line_ends(Axis::Column, j + 1, (0..m).map(|i| a.get(i, j)))?;
        match ends {
            Some((first, last)) => {
                u.push(Sign::from_value(-first).expect("nonzero"));
                u_prime.push(Sign::from_value(-last).expect("nonzero"));
            }
            None => {
                u.push(zero_line_sign);
                u_prime.push(zero_line_sign.negated());
            }
        }
    }
    Ok(BoundarySpec::new(
        SignVector::new(u).expect("n >= 1"),
        SignVector::new(u_prime).expect("n >= 1"),
        SignVector::new(v).expect("m >= 1"),
        SignVector::new(v_prime).expect("m >= 1"),
    )
    .expect("lengths match by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(u: &str, up: &str, v: &str, vp: &str) -> BoundarySpec {
        BoundarySpec::new(
            u.parse().unwrap(),
            up.parse().unwrap(),
            v.parse().unwrap(),
            vp.parse().unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn a_valid_four_by_four_passes() {
        let a = SignMatrix::from_grid("-.+.\n.+.-\n..-.\n...+\n").unwrap();
        let s = spec("+--+", "+-+-", "+-+-", "-++-");
        assert_eq!(verify(&a, &s).unwrap(), vec![]);
    }

    #[test]
    fn flipping_one_entry_breaks_row_and_column() {
        let a = SignMatrix::from_grid("+.+.\n.+.-\n..-.\n...+\n").unwrap();
        let s = spec("+--+", "+-+-", "+-+-", "-++-");
        let violations = verify(&a, &s).unwrap();
        assert_eq!(
            violations,
            vec![
                AlternationViolation {
                    axis: Axis::Row,
                    index: 1,
                    first_position: 0,
                    second_position: 1,
                    sign: Sign::Plus,
                },
                AlternationViolation {
                    axis: Axis::Row,
                    index: 1,
                    first_position: 1,
                    second_position: 3,
                    sign: Sign::Plus,
                },
                AlternationViolation {
                    axis: Axis::Column,
                    index: 1,
                    first_position: 0,
                    second_position: 1,
                    sign: Sign::Plus,
                },
                AlternationViolation {
                    axis: Axis::Column,
                    index: 1,
                    first_position: 1,
                    second_position: 5,
                    sign: Sign::Plus,
                },
            ]
        );
    }

    #[test]
    fn empty_matched_lines_are_violations() {
        let a = SignMatrix::zero(1, 1);
        let s = BoundarySpec::classical(1);
        let violations = verify(&a, &s).unwrap();
        assert_eq!(violations.len(), 2);
        assert_eq!(
            violations[0],
            AlternationViolation {
                axis: Axis::Row,
                index: 1,
                first_position: 0,
                second_position: 2,
                sign: Sign::Minus,
            }
        );
        assert_eq!(violations[1].axis, Axis::Column);
    }

    #[test]
    fn zero_matrix_is_valid_for_complementary_borders() {
        let a = SignMatrix::zero(2, 3);
        let s = spec("+-+", "-+-", "++", "--");
        assert_eq!(verify(&a, &s).unwrap(), vec![]);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a = SignMatrix::zero(2, 2);
        let s = BoundarySpec::classical(3);
        assert!(verify(&a, &s).is_err());
    }

    #[test]
    fn classical_recognizer() {
        let id = SignMatrix::from_grid("+..\n.+.\n..+\n").unwrap();
        assert!(is_classical_asm(&id));
        let diamond = SignMatrix::from_grid(".+.\n+-+\n.+.\n").unwrap();
        assert!(is_classical_asm(&diamond));
        let negated = diamond.negated();
        assert!(!is_classical_asm(&negated));
        assert!(!is_classical_asm(&SignMatrix::zero(2, 2)));
        assert!(!is_classical_asm(&SignMatrix::zero(2, 3)));
        assert!(is_classical_asm(&SignMatrix::zero(0, 0)));
    }

    #[test]
    fn inferred_borders_oppose_nearest_nonzeros() {
        let a = SignMatrix::from_grid("+.\n..\n").unwrap();
        let s = infer_spec(&a, Sign::Plus).unwrap();
        assert_eq!(s.u().to_string(), "-+");
        assert_eq!(s.u_prime().to_string(), "--");
        assert_eq!(s.v().to_string(), "-+");
        assert_eq!(s.v_prime().to_string(), "--");
        assert_eq!(verify(&a, &s).unwrap(), vec![]);

        let t = infer_spec(&a, Sign::Minus).unwrap();
        assert_eq!(t.u().to_string(), "--");
        assert_eq!(t.u_prime().to_string(), "-+");
        assert_eq!(verify(&a, &t).unwrap(), vec![]);
    }

    #[test]
    fn inference_rejects_interior_clashes() {
        let a = SignMatrix::from_grid("++\n..\n").unwrap();
        assert_eq!(
            infer_spec(&a, Sign::Plus),
            Err(InteriorNotAlternating { axis: Axis::Row, index: 1 })
        );
        let b = SignMatrix::from_grid("+.\n+.\n").unwrap();
        assert_eq!(
            infer_spec(&b, Sign::Plus),
            Err(InteriorNotAlternating { axis: Axis::Column, index: 1 })
        );
    }
}
