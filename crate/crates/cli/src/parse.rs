//! Range syntax shared by several flags.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use thiserror::Error;

/// Widest level range accepted on the command line.
pub const MAX_LEVEL_SPAN: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RangeError {
    #[error("empty range")]
    Empty,
    #[error("`{0}` is not a valid number")]
    Number(String),
    #[error("range start {start} exceeds end {end}")]
    Reversed { start: String, end: String },
    #[error("range bounds must be finite")]
    NonFinite,
    #[error("level range spans more than {MAX_LEVEL_SPAN} levels")]
    TooWide,
}

/// Inclusive level selection: `3`, `0..3` or `0..=3` (both mean 0, 1, 2, 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelRange {
    pub first: usize,
    pub last: usize,
}

impl LevelRange {
    pub fn levels(&self) -> RangeInclusive<usize> {
        self.first..=self.last
    }

    pub fn len(&self) -> usize {
        self.last - self.first + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

fn split_range(s: &str) -> Option<(&str, &str)> {
    s.split_once("..=").or_else(|| s.split_once(".."))
}

fn level(s: &str) -> Result<usize, RangeError> {
    s.trim().parse().map_err(|_| RangeError::Number(s.trim().to_string()))
}

impl FromStr for LevelRange {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RangeError::Empty);
        }
        let (first, last) = match split_range(s) {
            Some((a, b)) => (level(a)?, level(b)?),
            None => {
                let n = level(s)?;
                (n, n)
            }
        };
        if first > last {
            return Err(RangeError::Reversed {
                start: first.to_string(),
                end: last.to_string(),
            });
        }
        if last - first >= MAX_LEVEL_SPAN {
            return Err(RangeError::TooWide);
        }
        Ok(Self { first, last })
    }
}

impl fmt::Display for LevelRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.first == self.last {
            write!(f, "{}", self.first)
        } else {
            write!(f, "{}..{}", self.first, self.last)
        }
    }
}

/// Closed real interval written `lo..hi` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    /// `points` evenly spaced values including both ends.
    pub fn grid(&self, points: usize) -> Vec<f64> {
        match points {
            0 => Vec::new(),
            1 => vec![self.lo],
            n => (0..n)
                .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64)
                .collect(),
        }
    }
}

fn bound(s: &str) -> Result<f64, RangeError> {
    let v: f64 = s.trim().parse().map_err(|_| RangeError::Number(s.trim().to_string()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(RangeError::NonFinite)
    }
}

impl FromStr for Interval {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(RangeError::Empty);
        }
        let (a, b) = split_range(s).ok_or(RangeError::Empty)?;
        let (lo, hi) = (bound(a)?, bound(b)?);
        if lo >= hi {
            return Err(RangeError::Reversed {
                start: a.trim().to_string(),
                end: b.trim().to_string(),
            });
        }
        Ok(Self { lo, hi })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}
