//! Exhaustive enumeration and exact counting.
//!
//! The search fills cells in row-major order, trying 0, then +1, then -1 at
//! each cell, so the stream order is deterministic and identical between
//! runs. Candidates are pruned against the running alternation state of the
//! current row and of every column: a nonzero must oppose the last nonzero
//! (or border) seen in both its row and its column, the last cell of a row
//! must leave the row able to meet its closing border, and the last row does
//! the same for every column. Counting runs the same search without
//! materializing matrices.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigUint;

use crate::boundary::BoundarySpec;
use crate::matrix::SignMatrix;

/// Per-column alternation state: the last nonzero (or opening border) sign
/// seen so far in each column.
struct ColumnState {
    last_seen: Vec<i8>,
}

impl ColumnState {
    fn new(spec: &BoundarySpec) -> Self {
        ColumnState { last_seen: spec.u().iter().map(|s| s.value()).collect() }
    }
}

const CANDIDATES: [i8; 3] = [0, 1, -1];

/// Depth-first search over all matrices satisfying a specification. The
/// candidate order at every cell is 0, +1, -1.
struct SearchCore {
    rows: usize,
    cols: usize,
    u_prime: Vec<i8>,
    v: Vec<i8>,
    v_prime: Vec<i8>,
    entries: Vec<i8>,
    /// Next candidate index to try at each cell.
    cand: Vec<u8>,
    row_last: Vec<i8>,
    col_state: ColumnState,
    pos: usize,
    /// Backtracking stops here; cells before `floor` are fixed.
    floor: usize,
    emitted: bool,
    done: bool,
}

impl SearchCore {
    fn new(spec: &BoundarySpec) -> Self {
        let (rows, cols) = (spec.rows(), spec.cols());
        SearchCore {
            rows,
            cols,
            u_prime: spec.u_prime().iter().map(|s| s.value()).collect(),
            v: spec.v().iter().map(|s| s.value()).collect(),
            v_prime: spec.v_prime().iter().map(|s| s.value()).collect(),
            entries: vec![0; rows * cols],
            cand: vec![0; rows * cols],
            row_last: spec.v().iter().map(|s| s.value()).collect(),
            col_state: ColumnState::new(spec),
            pos: 0,
            floor: 0,
            emitted: false,
            done: false,
        }
    }

    /// A search with row 1 pinned to `first_row`, which must already satisfy
    /// the row's own constraints (see [`valid_first_rows`]).
    fn with_first_row(spec: &BoundarySpec, first_row: &[i8]) -> Self {
        let mut core = SearchCore::new(spec);
        debug_assert_eq!(first_row.len(), core.cols);
        for (j, &value) in first_row.iter().enumerate() {
            core.entries[j] = value;
            if value != 0 {
                core.row_last[0] = value;
                core.col_state.last_seen[j] = value;
            }
        }
        core.floor = core.cols;
        core.pos = core.cols;
        core
    }

    fn try_place(&mut self, value: i8) -> bool {
        let (i, j) = (self.pos / self.cols, self.pos % self.cols);
        let row_last = self.row_last[i];
        let col_last = self.col_state.last_seen[j];
        if value != 0 && (value != -row_last || value != -col_last) {
            return false;
        }
        let new_row = if value != 0 { value } else { row_last };
        if j == self.cols - 1 && new_row != -self.v_prime[i] {
            return false;
        }
        let new_col = if value != 0 { value } else { col_last };
        if i == self.rows - 1 && new_col != -self.u_prime[j] {
            return false;
        }
        self.entries[self.pos] = value;
        self.row_last[i] = new_row;
        self.col_state.last_seen[j] = new_col;
        true
    }

    /// Undo the cell before `pos` and step onto it. False at the floor.
    fn step_back(&mut self) -> bool {
        if self.pos == self.floor {
            return false;
        }
        self.pos -= 1;
        let value = self.entries[self.pos];
        if value != 0 {
            // Placing flipped the line states to `value`; they were the
            // negation beforehand.
            self.row_last[self.pos / self.cols] = -value;
            self.col_state.last_seen[self.pos % self.cols] = -value;
            self.entries[self.pos] = 0;
        }
        true
    }

    /// Advances to the next complete valid assignment; false when exhausted.
    fn advance(&mut self) -> bool {
        if self.done {
            return false;
        }
        let total = self.rows * self.cols;
        if self.emitted && !self.step_back() {
            self.done = true;
            return false;
        }
        loop {
            if self.pos == total {
                self.emitted = true;
                return true;
            }
            let mut advanced = false;
            while self.cand[self.pos] < 3 {
                let value = CANDIDATES[usize::from(self.cand[self.pos])];
                self.cand[self.pos] += 1;
                if self.try_place(value) {
                    self.pos += 1;
                    if self.pos < total {
                        self.cand[self.pos] = 0;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced && !self.step_back() {
                self.done = true;
                return false;
            }
        }
    }

    fn snapshot(&self) -> SignMatrix {
        SignMatrix::from_raw(self.rows, self.cols, self.entries.clone())
    }
}

/// Iterator over every matrix satisfying `spec`, in the deterministic search
/// order. An infeasible specification yields an empty stream.
pub struct Enumerator {
    core: SearchCore,
}

impl Enumerator {
    pub fn new(spec: &BoundarySpec) -> Self {
        Enumerator { core: SearchCore::new(spec) }
    }
}

impl Iterator for Enumerator {
    type Item = SignMatrix;

    fn next(&mut self) -> Option<SignMatrix> {
        if self.core.advance() {
            Some(self.core.snapshot())
        } else {
            None
        }
    }
}

/// Streams every matrix satisfying `spec`. Use `.take(n)` for a cap.
pub fn enumerate(spec: &BoundarySpec) -> Enumerator {
    Enumerator::new(spec)
}

/// Exact number of matrices satisfying `spec`. Equivalent to the stream
/// length, without materializing any matrix.
pub fn count(spec: &BoundarySpec) -> BigUint {
    let mut core = SearchCore::new(spec);
    let mut total = BigUint::from(0u32);
    while core.advance() {
        total += 1u32;
    }
    total
}

/// Every valid assignment of the first row alone: row alternation against its
/// side borders, opening column signs, and (when the matrix has one row) the
/// closing column borders. Ordered like the main search.
fn valid_first_rows(spec: &BoundarySpec) -> Vec<Vec<i8>> {
    let n = spec.cols();
    let u: Vec<i8> = spec.u().iter().map(|s| s.value()).collect();
    let u_prime: Vec<i8> = spec.u_prime().iter().map(|s| s.value()).collect();
    let left = spec.v().get(0).value();
    let right = spec.v_prime().get(0).value();
    let single_row = spec.rows() == 1;
    let mut out = Vec::new();
    let mut row = vec![0i8; n];
    fn rec(
        j: usize,
        row_last: i8,
        n: usize,
        u: &[i8],
        u_prime: &[i8],
        right: i8,
        single_row: bool,
        row: &mut Vec<i8>,
        out: &mut Vec<Vec<i8>>,
    ) {
        if j == n {
            if row_last == -right {
                out.push(row.clone());
            }
            return;
        }
        for value in CANDIDATES {
            if value != 0 && (value != -row_last || value != -u[j]) {
                continue;
            }
            let col_last = if value != 0 { value } else { u[j] };
            if single_row && col_last != -u_prime[j] {
                continue;
            }
            row[j] = value;
            rec(
                j + 1,
                if value != 0 { value } else { row_last },
                n,
                u,
                u_prime,
                right,
                single_row,
                row,
                out,
            );
            row[j] = 0;
        }
    }
    rec(0, left, n, &u, &u_prime, right, single_row, &mut row, &mut out);
    out
}

fn worker_count(requested: usize, tasks: usize) -> usize {
    requested.max(1).min(tasks.max(1))
}

/// Like [`enumerate`] collected to a vector, with the search split across
/// `workers` threads on the first row's assignments. The result order is
/// identical to the sequential stream. `workers <= 1` runs sequentially.
pub fn enumerate_parallel(spec: &BoundarySpec, workers: usize) -> Vec<SignMatrix> {
    if workers <= 1 || spec.rows() == 0 {
        return enumerate(spec).collect();
    }
    let firsts = valid_first_rows(spec);
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Vec<SignMatrix>)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..worker_count(workers, firsts.len()) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= firsts.len() {
                    break;
                }
                let mut core = SearchCore::with_first_row(spec, &firsts[k]);
                let mut found = Vec::new();
                while core.advance() {
                    found.push(core.snapshot());
                }
                results.lock().unwrap().push((k, found));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(k, _)| *k);
    results.into_iter().flat_map(|(_, found)| found).collect()
}

/// Like [`count`], split across `workers` threads on the first row's
/// assignments; subtree counts merge by exact addition.
pub fn count_parallel(spec: &BoundarySpec, workers: usize) -> BigUint {
    if workers <= 1 || spec.rows() == 0 {
        return count(spec);
    }
    let firsts = valid_first_rows(spec);
    let next = AtomicUsize::new(0);
    let total: Mutex<BigUint> = Mutex::new(BigUint::from(0u32));
    std::thread::scope(|scope| {
        for _ in 0..worker_count(workers, firsts.len()) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= firsts.len() {
                    break;
                }
                let mut core = SearchCore::with_first_row(spec, &firsts[k]);
                let mut sub = BigUint::from(0u32);
                while core.advance() {
                    sub += 1u32;
                }
                *total.lock().unwrap() += sub;
            });
        }
    });
    total.into_inner().unwrap()
}

/// Number of classical alternating sign matrices of order n, by the product
/// formula prod_{k=0}^{n-1} (3k+1)! / (n+k)!. The division is exact.
pub fn classical_count(n: usize) -> BigUint {
    let factorial = |m: usize| -> BigUint {
        let mut f = BigUint::from(1u32);
        for i in 2..=m {
            f *= i;
        }
        f
    };
    let mut numerator = BigUint::from(1u32);
    let mut denominator = BigUint::from(1u32);
    for k in 0..n {
        numerator *= factorial(3 * k + 1);
        denominator *= factorial(n + k);
    }
    debug_assert!((&numerator % &denominator) == BigUint::from(0u32));
    numerator / denominator
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::feasibility::check;
    use crate::sign::Sign;
    use crate::verify::verify;

    fn spec(u: &str, up: &str, v: &str, vp: &str) -> BoundarySpec {
        BoundarySpec::new(
            u.parse().unwrap(),
            up.parse().unwrap(),
            v.parse().unwrap(),
            vp.parse().unwrap(),
        )
        .unwrap()
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn product_formula_small_values() {
        let expected = [1u64, 1, 2, 7, 42, 429, 7436, 218348];
        for (n, &value) in expected.iter().enumerate() {
            assert_eq!(classical_count(n), big(value), "order {n}");
        }
    }

    #[test]
    fn classical_two_by_two_stream_in_search_order() {
        let found: Vec<_> = enumerate(&BoundarySpec::classical(2)).collect();
        let anti = SignMatrix::from_grid(".+\n+.\n").unwrap();
        let id = SignMatrix::from_grid("+.\n.+\n").unwrap();
        assert_eq!(found, vec![anti, id]);
    }

    #[test]
    fn complementary_spec_lists_zero_matrix_first() {
        let s = spec("+-", "-+", "++", "--");
        let first = enumerate(&s).next().unwrap();
        assert_eq!(first, SignMatrix::zero(2, 2));
    }

    #[test]
    fn infeasible_spec_yields_nothing() {
        let s = spec("++", "-+", "+-", "+-");
        assert!(!check(&s).feasible());
        assert_eq!(enumerate(&s).count(), 0);
        assert_eq!(count(&s), BigUint::from(0u32));
    }

    #[test]
    fn every_yielded_matrix_verifies() {
        let specs = [
            BoundarySpec::classical(3),
            BoundarySpec::alternating(3),
            spec("+--+", "+-+-", "+-+-", "-++-"),
        ];
        for s in specs {
            let mut yielded = 0;
            for a in enumerate(&s) {
                assert_eq!(verify(&a, &s).unwrap(), vec![]);
                yielded += 1;
            }
            assert!(yielded > 0);
            assert_eq!(count(&s), big(yielded));
        }
    }

    #[test]
    fn counts_match_the_product_formula_up_to_order_six() {
        for n in 1..=6 {
            assert_eq!(count(&BoundarySpec::classical(n)), classical_count(n), "order {n}");
        }
    }

    #[test]
    fn alternating_spec_contains_the_full_checkerboard() {
        let s = BoundarySpec::alternating(3);
        let checkerboard = SignMatrix::from_grid("-+-\n+-+\n-+-\n").unwrap();
        assert_eq!(verify(&checkerboard, &s).unwrap(), vec![]);
        assert!(enumerate(&s).any(|a| a == checkerboard));
    }

    #[test]
    fn limit_truncates_the_stream() {
        let s = BoundarySpec::classical(4);
        let capped: Vec<_> = enumerate(&s).take(5).collect();
        assert_eq!(capped.len(), 5);
        let full: Vec<_> = enumerate(&s).collect();
        assert_eq!(&full[..5], &capped[..]);
    }

    #[test]
    fn parallel_matches_sequential_exactly() {
        let specs = [
            BoundarySpec::classical(4),
            BoundarySpec::alternating(4),
            spec("+--+", "+-+-", "+-+-", "-++-"),
            spec("++", "-+", "+-", "+-"),
            spec("+", "-", "+-+", "-+-"),
        ];
        for s in specs {
            let sequential: Vec<_> = enumerate(&s).collect();
            for workers in [2, 3, 8] {
                assert_eq!(enumerate_parallel(&s, workers), sequential);
                assert_eq!(count_parallel(&s, workers), big(sequential.len() as u64));
            }
        }
    }

    #[test]
    fn single_row_matrices_are_forced_by_their_columns() {
        // With one row, each column (u_j, a_1j, u'_j) admits exactly one
        // value: 0 when u'_j = -u_j, and -u_j when u'_j = u_j. Only the row
        // line can still fail.
        let s = spec("+-+", "++-", "+", "+");
        let found: Vec<_> = enumerate(&s).collect();
        assert_eq!(found, vec![SignMatrix::from_rows(&[vec![-1, 0, 0]]).unwrap()]);
        assert_eq!(enumerate_parallel(&s, 4), found);

        let t = spec("+", "+", "+", "+");
        let forced: Vec<_> = enumerate(&t).collect();
        assert_eq!(forced, vec![SignMatrix::from_rows(&[vec![-1]]).unwrap()]);
    }

    #[test]
    fn uniform_plus_borders_mirror_classical_counts() {
        for n in 1..=4 {
            let s = BoundarySpec::constant(n, n, Sign::Plus);
            assert_eq!(count(&s), classical_count(n), "order {n}");
        }
    }
}
