//! Non-degenerate real intervals with possibly infinite endpoints.
//!
//! The textual form is `(a,b)`, `[a,b)`, `(a,b]` or `[a,b]` with `inf` and
//! `-inf` accepted as endpoints; whitespace is ignored. The same form is used
//! for serialization.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Interval {
    lower: f64,
    upper: f64,
    lower_closed: bool,
    upper_closed: bool,
}

impl Interval {
    pub fn new(lower: f64, upper: f64, lower_closed: bool, upper_closed: bool) -> Result<Self> {
        if lower.is_nan() || upper.is_nan() {
            return Err(Error::InvalidInterval("NaN endpoint".into()));
        }
        if !(lower < upper) {
            return Err(Error::InvalidInterval(format!(
                "lower endpoint {lower} must be below upper endpoint {upper}"
            )));
        }
        if (lower.is_infinite() && lower_closed) || (upper.is_infinite() && upper_closed) {
            return Err(Error::InvalidInterval(
                "an infinite endpoint cannot be closed".into(),
            ));
        }
        if lower == f64::INFINITY || upper == f64::NEG_INFINITY {
            return Err(Error::InvalidInterval("endpoint on the wrong side".into()));
        }
        Ok(Interval {
            lower,
            upper,
            lower_closed,
            upper_closed,
        })
    }

    pub fn real_line() -> Self {
        Interval {
            lower: f64::NEG_INFINITY,
            upper: f64::INFINITY,
            lower_closed: false,
            upper_closed: false,
        }
    }

    /// `(0, inf)`
    pub fn positive_half_line() -> Self {
        Interval {
            lower: 0.0,
            upper: f64::INFINITY,
            lower_closed: false,
            upper_closed: false,
        }
    }

    pub fn open(lower: f64, upper: f64) -> Result<Self> {
        Self::new(lower, upper, false, false)
    }

    pub fn closed(lower: f64, upper: f64) -> Result<Self> {
        Self::new(lower, upper, true, true)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn is_bounded(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }

    pub fn is_real_line(&self) -> bool {
        self.lower == f64::NEG_INFINITY && self.upper == f64::INFINITY
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lower_closed {
            x >= self.lower
        } else {
            x > self.lower
        };
        let below = if self.upper_closed {
            x <= self.upper
        } else {
            x < self.upper
        };
        above && below
    }

    /// Whether `self` is contained in `other`.
    pub fn is_subset_of(&self, other: &Interval) -> bool {
        let lower_ok = self.lower > other.lower
            || (self.lower == other.lower && (other.lower_closed || !self.lower_closed));
        let upper_ok = self.upper < other.upper
            || (self.upper == other.upper && (other.upper_closed || !self.upper_closed));
        lower_ok && upper_ok
    }

    /// Whether every point lies in `(0, inf)`.
    pub fn is_positive(&self) -> bool {
        self.is_subset_of(&Self::positive_half_line())
    }

    /// Image under `log`; requires a positive interval.
    pub fn log_image(&self) -> Result<Interval> {
        if !self.is_positive() {
            return Err(Error::InvalidInterval(format!(
                "{self} is not contained in (0,inf)"
            )));
        }
        Interval::new(
            self.lower.ln(),
            self.upper.ln(),
            self.lower_closed,
            self.upper_closed,
        )
    }

    /// Image under `exp`.
    pub fn exp_image(&self) -> Result<Interval> {
        Interval::new(
            self.lower.exp(),
            self.upper.exp(),
            self.lower_closed,
            self.upper_closed,
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_closed { '[' } else { '(' };
        let close = if self.upper_closed { ']' } else { ')' };
        write!(f, "{open}{},{}{close}", self.lower, self.upper)
    }
}

fn parse_endpoint(s: &str) -> Result<f64> {
    let lowered = s.to_ascii_lowercase();
    let value = match lowered.as_str() {
        "inf" | "+inf" | "infinity" | "+infinity" => f64::INFINITY,
        "-inf" | "-infinity" => f64::NEG_INFINITY,
        _ => s
            .parse::<f64>()
            .map_err(|_| Error::InvalidInterval(format!("bad endpoint `{s}`")))?,
    };
    if value.is_nan() {
        return Err(Error::InvalidInterval("NaN endpoint".into()));
    }
    Ok(value)
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut chars = compact.chars();
        let lower_closed = match chars.next() {
            Some('[') => true,
            Some('(') => false,
            _ => {
                return Err(Error::InvalidInterval(format!(
                    "`{s}` must start with `(` or `[`"
                )))
            }
        };
        let upper_closed = match chars.next_back() {
            Some(']') => true,
            Some(')') => false,
            _ => {
                return Err(Error::InvalidInterval(format!(
                    "`{s}` must end with `)` or `]`"
                )))
            }
        };
        let body = chars.as_str();
        let (lo, hi) = body
            .split_once(',')
            .ok_or_else(|| Error::InvalidInterval(format!("`{s}` needs two endpoints")))?;
        if hi.contains(',') {
            return Err(Error::InvalidInterval(format!(
                "`{s}` has too many endpoints"
            )));
        }
        Interval::new(
            parse_endpoint(lo)?,
            parse_endpoint(hi)?,
            lower_closed,
            upper_closed,
        )
    }
}

impl From<Interval> for String {
    fn from(i: Interval) -> String {
        i.to_string()
    }
}

impl TryFrom<String> for Interval {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
