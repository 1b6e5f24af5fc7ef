//! Nonzero signs and fixed-length sign vectors, the building blocks of
//! boundary specifications.

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

/// A nonzero sign: `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The numeric value, `1` or `-1`.
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn negated(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Converts `1`/`-1`; any other value is `None`.
    pub fn from_value(value: i8) -> Option<Sign> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self.negated()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A nonempty vector of signs, used for the four borders of a boundary
/// specification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignVector(Vec<Sign>);

/// Rejected input while building a [`SignVector`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignVectorError {
    Empty,
    /// A numeric entry other than `1` or `-1` (1-based position).
    BadValue { position: usize, value: i64 },
    /// A character other than `+` or `-` (1-based position).
    BadChar { position: usize, ch: char },
}

impl fmt::Display for SignVectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignVectorError::Empty => write!(f, "sign vector must be nonempty"),
            SignVectorError::BadValue { position, value } => {
                write!(f, "entry {position} is {value}, expected +1 or -1")
            }
            SignVectorError::BadChar { position, ch } => {
                write!(f, "character {position} is {ch:?}, expected '+' or '-'")
            }
        }
    }
}

impl std::error::Error for SignVectorError {}

impl SignVector {
    pub fn new(entries: Vec<Sign>) -> Result<Self, SignVectorError> {
        if entries.is_empty() {
            return Err(SignVectorError::Empty);
        }
        Ok(SignVector(entries))
    }

    /// Builds from `+1`/`-1` integers.
    pub fn from_values(values: &[i64]) -> Result<Self, SignVectorError> {
        let entries = values
            .iter()
            .enumerate()
            .map(|(i, &value)| {
                i8::try_from(value)
                    .ok()
                    .and_then(Sign::from_value)
                    .ok_or(SignVectorError::BadValue { position: i + 1, value })
            })
            .collect::<Result<Vec<_>, _>>()?;
        SignVector::new(entries)
    }

    /// A vector of `len` copies of `sign`.
    pub fn repeated(len: usize, sign: Sign) -> Self {
        assert!(len > 0, "sign vector length must be positive");
        SignVector(vec![sign; len])
    }

    /// Alternating signs starting with `first`.
    pub fn alternating(len: usize, first: Sign) -> Self {
        assert!(len > 0, "sign vector length must be positive");
        SignVector(
            (0..len)
                .map(|i| if i % 2 == 0 { first } else { first.negated() })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Zero-based access.
    pub fn get(&self, index: usize) -> Sign {
        self.0[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Sign] {
        &self.0
    }

    pub fn reversed(&self) -> SignVector {
        SignVector(self.0.iter().rev().copied().collect())
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.negated()).collect())
    }

    /// How many entries equal `sign`.
    pub fn count(&self, sign: Sign) -> usize {
        self.0.iter().filter(|&&s| s == sign).count()
    }

    pub fn to_values(&self) -> Vec<i64> {
        self.0.iter().map(|s| i64::from(s.value())).collect()
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for SignVector {
    type Err = SignVectorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let entries = s
            .chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                '+' => Ok(Sign::Plus),
                '-' => Ok(Sign::Minus),
                _ => Err(SignVectorError::BadChar { position: i + 1, ch }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        SignVector::new(entries)
    }
}
