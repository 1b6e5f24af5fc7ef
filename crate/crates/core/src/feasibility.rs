//! Deciding existence. A specification is feasible exactly when a balance
//! identity and two families of prefix inequalities hold; [`check`] evaluates
//! all of them and reports every violation.
//!
//! A row is *matched-plus* when both its side borders are +1, *matched-minus*
//! when both are -1, and *mixed* otherwise; columns likewise with the top and
//! bottom borders. Matched lines are the ones that force a nonzero somewhere
//! in the line, and the counts of matched prefixes are all the existence
//! question depends on.

use std::fmt;

use crate::boundary::BoundarySpec;
use crate::sign::Sign;

/// Cumulative matched-line counts and border totals for one specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixStats {
    matched_plus_rows: Vec<usize>,
    matched_minus_rows: Vec<usize>,
    matched_plus_cols: Vec<usize>,
    matched_minus_cols: Vec<usize>,
    top_plus: usize,
    top_minus: usize,
    left_plus: usize,
    left_minus: usize,
}

fn cumulative_matched(first: &crate::sign::SignVector, second: &crate::sign::SignVector, sign: Sign) -> Vec<usize> {
    let mut out = Vec::with_capacity(first.len());
    let mut count = 0;
    for i in 0..first.len() {
        if first.get(i) == sign && second.get(i) == sign {
            count += 1;
        }
        out.push(count);
    }
    out
}

impl PrefixStats {
    /// Count of matched-plus rows among the first k rows, for k = 1..=m.
    pub fn matched_plus_rows(&self) -> &[usize] {
        &self.matched_plus_rows
    }

    pub fn matched_minus_rows(&self) -> &[usize] {
        &self.matched_minus_rows
    }

    /// Count of matched-plus columns among the first l columns, for l = 1..=n.
    pub fn matched_plus_cols(&self) -> &[usize] {
        &self.matched_plus_cols
    }

    pub fn matched_minus_cols(&self) -> &[usize] {
        &self.matched_minus_cols
    }

    pub fn matched_plus_rows_total(&self) -> usize {
        *self.matched_plus_rows.last().unwrap()
    }

    pub fn matched_minus_rows_total(&self) -> usize {
        *self.matched_minus_rows.last().unwrap()
    }

    pub fn matched_plus_cols_total(&self) -> usize {
        *self.matched_plus_cols.last().unwrap()
    }

    pub fn matched_minus_cols_total(&self) -> usize {
        *self.matched_minus_cols.last().unwrap()
    }

    /// Number of +1 entries in the top border u.
    pub fn top_plus(&self) -> usize {
        self.top_plus
    }

    pub fn top_minus(&self) -> usize {
        self.top_minus
    }

    /// Number of +1 entries in the left border v.
    pub fn left_plus(&self) -> usize {
        self.left_plus
    }

    pub fn left_minus(&self) -> usize {
        self.left_minus
    }
}

/// Computes all prefix statistics in one pass over the borders.
pub fn prefix_stats(spec: &BoundarySpec) -> PrefixStats {
    PrefixStats {
        matched_plus_rows: cumulative_matched(spec.v(), spec.v_prime(), Sign::Plus),
        matched_minus_rows: cumulative_matched(spec.v(), spec.v_prime(), Sign::Minus),
        matched_plus_cols: cumulative_matched(spec.u(), spec.u_prime(), Sign::Plus),
        matched_minus_cols: cumulative_matched(spec.u(), spec.u_prime(), Sign::Minus),
        top_plus: spec.u().count(Sign::Plus),
        top_minus: spec.u().count(Sign::Minus),
        left_plus: spec.v().count(Sign::Plus),
        left_minus: spec.v().count(Sign::Minus),
    }
}

/// One failed existence condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionViolation {
    /// The matched-row imbalance must equal the matched-column imbalance:
    /// (matched-minus rows) - (matched-plus rows) =
    /// (matched-minus cols) - (matched-plus cols).
    Balance { row_diff: i64, col_diff: i64 },
    /// At row prefix k (1-based), the matched-row imbalance left the window
    /// [-(top +1 count), top -1 count].
    RowPrefix { k: usize, diff: i64, lower: i64, upper: i64 },
    /// At column prefix l (1-based), the matched-column imbalance left the
    /// window [-(left +1 count), left -1 count].
    ColPrefix { l: usize, diff: i64, lower: i64, upper: i64 },
}

impl fmt::Display for ConditionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionViolation::Balance { row_diff, col_diff } => write!(
                f,
                "balance: matched-row imbalance {row_diff} != matched-column imbalance {col_diff}"
            ),
            ConditionViolation::RowPrefix { k, diff, lower, upper } => write!(
                f,
                "row prefix k={k}: imbalance {diff} outside [{lower}, {upper}]"
            ),
            ConditionViolation::ColPrefix { l, diff, lower, upper } => write!(
                f,
                "column prefix l={l}: imbalance {diff} outside [{lower}, {upper}]"
            ),
        }
    }
}

/// The outcome of [`check`]: feasible iff no condition is violated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityReport {
    violations: Vec<ConditionViolation>,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[ConditionViolation] {
        &self.violations
    }
}

impl fmt::Display for FeasibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.feasible() {
            return write!(f, "feasible");
        }
        writeln!(f, "infeasible ({} violated conditions):", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Decides whether any matrix satisfies the specification. The conditions are
/// necessary and sufficient, so an empty violation list guarantees a solution
/// exists (and the construction module will produce one).
pub fn check(spec: &BoundarySpec) -> FeasibilityReport {
    let st = prefix_stats(spec);
    let mut violations = Vec::new();

    let row_diff = st.matched_minus_rows_total() as i64 - st.matched_plus_rows_total() as i64;
    let col_diff = st.matched_minus_cols_total() as i64 - st.matched_plus_cols_total() as i64;
    if row_diff != col_diff {
        violations.push(ConditionViolation::Balance { row_diff, col_diff });
    }

    let lower = -(st.top_plus() as i64);
    let upper = st.top_minus() as i64;
    for k in 1..=spec.rows() {
        let diff = st.matched_minus_rows()[k - 1] as i64 - st.matched_plus_rows()[k - 1] as i64;
        if diff < lower || diff > upper {
            violations.push(ConditionViolation::RowPrefix { k, diff, lower, upper });
        }
    }

    let lower = -(st.left_plus() as i64);
    let upper = st.left_minus() as i64;
    for l in 1..=spec.cols() {
        let diff = st.matched_minus_cols()[l - 1] as i64 - st.matched_plus_cols()[l - 1] as i64;
        if diff < lower || diff > upper {
            violations.push(ConditionViolation::ColPrefix { l, diff, lower, upper });
        }
    }

    FeasibilityReport { violations }
}
