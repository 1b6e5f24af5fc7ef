//! Witness construction for feasible boundary specifications.
//!
//! [`build`] produces a concrete matrix for any specification that passes
//! [`check`](crate::feasibility::check), by peeling off one row at a time:
//!
//! * a matched row (equal side borders) receives an odd alternating run of
//!   nonzeros, placed into matched columns chosen greedily left to right;
//! * when only mixed rows remain but matched columns still exist, one mixed
//!   row receives an even alternating run that pairs matched columns off;
//! * rows left over once no matched columns remain stay entirely zero.
//!
//! Each placed column is finished (exactly one nonzero between two equal
//! borders of the opposite sign) and drops out of the subproblem, so the
//! output has at most one nonzero per column — or per row when the
//! transposed fallback fires. The greedy run in each step is as long as the
//! remaining matched-row budget allows; both the length and the left-to-right
//! choice are load-bearing, as shorter or shifted runs can dead-end.

use std::fmt;

use crate::boundary::BoundarySpec;
use crate::feasibility::{check, prefix_stats, FeasibilityReport};
use crate::matrix::SignMatrix;
use crate::sign::{Sign, SignVector};

/// How the builder picks which live row to peel next.
///
/// The preference list addresses rows of the problem actually being solved:
/// when the transposed fallback fires, those are the input's columns, and
/// preference entries apply where they match; working rows without a listed
/// rank come after all listed ones, smallest index first. The list itself is
/// always validated against the input's row count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOrderPolicy {
    /// Smallest qualifying row index at every step.
    FirstAvailable,
    /// A permutation of 1..=m used as a preference order.
    Explicit(Vec<usize>),
}

impl Default for RowOrderPolicy {
    fn default() -> Self {
        RowOrderPolicy::FirstAvailable
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// Row with both side borders +1; it receives -1, +1, ..., -1.
    MatchedPlusRow,
    /// Row with both side borders -1; it receives +1, -1, ..., +1.
    MatchedMinusRow,
    /// Row with opposite side borders, used to pair off matched columns.
    MixedRow,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::MatchedPlusRow => "matched-plus row",
            StepKind::MatchedMinusRow => "matched-minus row",
            StepKind::MixedRow => "mixed row",
        })
    }
}

/// Problem-level symmetries the builder applied.
///
/// `Transpose` appears at most once, first; `Negate` records an internal
/// sign normalization whose effect is already folded into the recorded
/// steps, which always show the signs actually written.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AppliedTransform {
    Transpose,
    Negate,
}

/// One row peeled off, in the orientation the problem was solved in
/// (the input's transpose when [`ConstructionTrace::transposed`] is true).
/// All indices are 1-based and keep their pre-deletion values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub kind: StepKind,
    /// 1-based index of the peeled row.
    pub row: usize,
    /// Columns receiving nonzeros, strictly increasing.
    pub sequence: Vec<usize>,
    /// (row, column, sign) for every nonzero written, in column order.
    pub placed: Vec<(usize, usize, Sign)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub transforms: Vec<AppliedTransform>,
    pub steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    /// True when the problem was solved in the transposed orientation and
    /// the result transposed back.
    pub fn transposed(&self) -> bool {
        self.transforms.contains(&AppliedTransform::Transpose)
    }
}

impl fmt::Display for ConstructionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.transforms {
            match t {
                AppliedTransform::Transpose => writeln!(f, "solving the transposed problem")?,
                AppliedTransform::Negate => writeln!(f, "sign normalization applied")?,
            }
        }
        for step in &self.steps {
            write!(f, "row {} ({}):", step.row, step.kind)?;
            for (_, col, sign) in &step.placed {
                write!(f, " {}1 at column {}", sign, col)?;
            }
            writeln!(f)?;
        }
        if self.steps.is_empty() {
            writeln!(f, "no nonzeros required")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum BuildError {
    /// The specification fails the existence conditions; no matrix exists.
    Infeasible(FeasibilityReport),
    /// An explicit row order that is not a permutation of 1..=m.
    RowOrderInvalid { rows: usize },
    /// A step the existence conditions rule out was reached; indicates a bug.
    Internal(&'static str),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Infeasible(report) => write!(f, "specification is infeasible:\n{report}"),
            BuildError::RowOrderInvalid { rows } => {
                write!(f, "row order must list each row 1..={rows} exactly once")
            }
            BuildError::Internal(what) => write!(f, "internal contradiction: {what}"),
        }
    }
}

impl std::error::Error for BuildError {}

/// The greedy alternating run over matched columns.
///
/// Scans left to right collecting columns matched (border pair equal) with
/// alternating signs, starting from `start_sign`. With
/// `require_start_at_first_matched` false the result has the odd shape
/// s0 < t1 < s1 < ... < tp < sp (ending on a `start_sign` match) with at most
/// `cap` t-positions; with it true the result instead pairs columns off,
/// s1 < t1 < ... < sp < tp with equal counts (at most `cap` pairs), and s1
/// must be the first matched column of either sign — if that column's sign
/// differs from `start_sign`, no run exists. Returned indices are 1-based.
/// Empty when no starting column qualifies.
pub fn longest_first_available_sequence(
    u: &SignVector,
    u_prime: &SignVector,
    start_sign: Sign,
    cap: usize,
    require_start_at_first_matched: bool,
) -> Vec<usize> {
    assert_eq!(u.len(), u_prime.len(), "border vectors must have equal length");
    let matched: Vec<Option<i8>> = u
        .iter()
        .zip(u_prime.iter())
        .map(|(a, b)| if a == b { Some(a.value()) } else { None })
        .collect();
    greedy_run(&matched, start_sign.value(), cap, require_start_at_first_matched)
        .into_iter()
        .map(|p| p + 1)
        .collect()
}

/// Core of [`longest_first_available_sequence`] over 0-based positions.
fn greedy_run(matched: &[Option<i8>], start_sign: i8, cap: usize, paired: bool) -> Vec<usize> {
    let mut run = Vec::new();
    let mut want = start_sign;
    let mut from = 0;
    if paired {
        match matched.iter().position(|m| m.is_some()) {
            Some(first) if matched[first] == Some(start_sign) => {
                run.push(first);
                want = -want;
                from = first + 1;
            }
            _ => return Vec::new(),
        }
    }
    for (j, &state) in matched.iter().enumerate().skip(from) {
        if state == Some(want) {
            run.push(j);
            want = -want;
        }
    }
    if paired {
        if run.len() % 2 == 1 {
            run.pop();
        }
        run.truncate((2 * cap).min(run.len()));
    } else {
        if run.len() % 2 == 0 {
            run.pop();
        }
        if run.len() > 2 * cap + 1 {
            run.truncate(2 * cap + 1);
        }
    }
    run
}

/// A live line of the shrinking subproblem: original index plus its current
/// working border pair.
struct Live {
    idx: usize,
    open: i8,
    close: i8,
}

impl Live {
    fn matched(&self) -> Option<i8> {
        if self.open == self.close {
            Some(self.open)
        } else {
            None
        }
    }
}

/// Constructs a matrix satisfying `spec`, with a trace of every step.
///
/// Fails only on infeasible specifications or an invalid explicit row order;
/// `Internal` errors are unreachable for specifications that pass the
/// existence check.
pub fn build(
    spec: &BoundarySpec,
    policy: &RowOrderPolicy,
) -> Result<(SignMatrix, ConstructionTrace), BuildError> {
    let report = check(spec);
    if !report.feasible() {
        return Err(BuildError::Infeasible(report));
    }
    let m = spec.rows();
    let rank = match policy {
        RowOrderPolicy::FirstAvailable => (0..m).collect::<Vec<_>>(),
        RowOrderPolicy::Explicit(order) => {
            let mut rank = vec![usize::MAX; m];
            if order.len() != m {
                return Err(BuildError::RowOrderInvalid { rows: m });
            }
            for (position, &row) in order.iter().enumerate() {
                if row == 0 || row > m || rank[row - 1] != usize::MAX {
                    return Err(BuildError::RowOrderInvalid { rows: m });
                }
                rank[row - 1] = position;
            }
            rank
        }
    };

    let stats = prefix_stats(spec);
    let transposed = stats.matched_plus_rows_total() > stats.matched_plus_cols_total();
    let working = if transposed { spec.transposed() } else { spec.clone() };
    // Rank lookup for a working row: listed rows keep their preference
    // position; anything else (including rows only present after the
    // transpose) comes after, in index order.
    let rank_of = |idx: usize| -> (usize, usize) {
        match rank.get(idx) {
            Some(&r) if r != usize::MAX => (0, r),
            _ => (1, idx),
        }
    };

    let (matrix, mut transforms, steps) = solve(&working, &rank_of)?;
    if transposed {
        transforms.insert(0, AppliedTransform::Transpose);
        return Ok((matrix.transposed(), ConstructionTrace { transforms, steps }));
    }
    Ok((matrix, ConstructionTrace { transforms, steps }))
}

fn solve(
    spec: &BoundarySpec,
    rank_of: &dyn Fn(usize) -> (usize, usize),
) -> Result<(SignMatrix, Vec<AppliedTransform>, Vec<TraceStep>), BuildError> {
    let (m, n) = (spec.rows(), spec.cols());
    let mut rows: Vec<Live> = (0..m)
        .map(|i| Live { idx: i, open: spec.v().get(i).value(), close: spec.v_prime().get(i).value() })
        .collect();
    let mut cols: Vec<Live> = (0..n)
        .map(|j| Live { idx: j, open: spec.u().get(j).value(), close: spec.u_prime().get(j).value() })
        .collect();
    let mut out = SignMatrix::zero(m, n);
    let mut transforms = Vec::new();
    let mut steps = Vec::new();
    // Working borders carry an overall sign flip; entries are written with
    // their true sign, working value times `flip`.
    let mut flip: i8 = 1;

    while !rows.is_empty() {
        let next_matched = rows
            .iter()
            .enumerate()
            .filter_map(|(pos, row)| row.matched().map(|sign| (pos, row.idx, sign)))
            .min_by_key(|&(_, idx, _)| rank_of(idx));

        let (row_pos, sigma, paired) = match next_matched {
            Some((pos, _, sign)) => {
                // A matched row of working sign sigma takes -sigma at
                // s-positions (sigma-matched columns) and sigma at
                // t-positions; the run length is capped by the surplus of
                // sigma-matched columns over sigma-matched rows.
                (pos, sign, false)
            }
            None => {
                let Some(first) = cols.iter().position(|col| col.matched().is_some()) else {
                    // Only mixed rows and unmatched columns remain: all zero.
                    break;
                };
                if cols[first].open == -1 {
                    flip = -flip;
                    for row in rows.iter_mut() {
                        row.open = -row.open;
                        row.close = -row.close;
                    }
                    for col in cols.iter_mut() {
                        col.open = -col.open;
                        col.close = -col.close;
                    }
                    transforms.push(AppliedTransform::Negate);
                }
                let crossing = rows
                    .iter()
                    .enumerate()
                    .filter(|(_, row)| row.open == 1 && row.close == -1)
                    .min_by_key(|&(_, row)| rank_of(row.idx))
                    .map(|(pos, _)| pos)
                    .ok_or(BuildError::Internal("no usable row for the remaining matched columns"))?;
                (crossing, 1, true)
            }
        };

        let cap = if paired {
            cols.iter().filter(|col| col.matched() == Some(1)).count()
        } else {
            let row_count = rows.iter().filter(|row| row.matched() == Some(sigma)).count();
            let col_count = cols.iter().filter(|col| col.matched() == Some(sigma)).count();
            col_count
                .checked_sub(row_count)
                .ok_or(BuildError::Internal("matched rows outnumber their columns"))?
        };
        let state: Vec<Option<i8>> = cols.iter().map(Live::matched).collect();
        let run = greedy_run(&state, sigma, cap, paired);
        if run.is_empty() {
            return Err(BuildError::Internal("no placeable run for the chosen row"));
        }

        let q = rows[row_pos].idx;
        let mut sequence = Vec::with_capacity(run.len());
        let mut placed = Vec::with_capacity(run.len());
        for (k, &pos) in run.iter().enumerate() {
            let j = cols[pos].idx;
            let working = if k % 2 == 0 { -sigma } else { sigma };
            let sign = Sign::from_value(working * flip)
                .ok_or(BuildError::Internal("zero placement"))?;
            out.set(q, j, sign.value());
            sequence.push(j + 1);
            placed.push((q + 1, j + 1, sign));
        }
        let kind = if paired {
            StepKind::MixedRow
        } else if sigma * flip == 1 {
            StepKind::MatchedPlusRow
        } else {
            StepKind::MatchedMinusRow
        };
        steps.push(TraceStep { kind, row: q + 1, sequence, placed });

        for &pos in run.iter().rev() {
            cols.remove(pos);
        }
        rows.remove(row_pos);
    }

    if cols.iter().any(|col| col.matched().is_some()) {
        return Err(BuildError::Internal("matched columns left after all rows were used"));
    }
    Ok((out, transforms, steps))
}
