//! Exact nonnegative rationals for thresholds and density ratios.
//!
//! Comparisons cross-multiply in `u128`, so layer-boundary thresholds like
//! `(1 - delta) * n` are decided exactly, never through floating point.

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

/// A reduced nonnegative fraction with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Rational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

impl Rational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadRational(format!("{num}/0")));
        }
        let g = gcd(num, den);
        Ok(Rational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn zero() -> Self {
        Rational { num: 0, den: 1 }
    }

    pub fn one() -> Self {
        Rational { num: 1, den: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.num
    }

    pub fn denom(&self) -> u64 {
        self.den
    }

    /// Parses `"p/q"` or a bare integer `"p"`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::BadRational(text.to_string());
        match text.split_once('/') {
            Some((p, q)) => {
                let num = p.trim().parse::<u64>().map_err(|_| bad())?;
                let den = q.trim().parse::<u64>().map_err(|_| bad())?;
                Rational::new(num, den)
            }
            None => {
                let num = text.trim().parse::<u64>().map_err(|_| bad())?;
                Ok(Rational { num, den: 1 })
            }
        }
    }

    /// Exact comparison of `self` against the integer ratio `num/den`.
    pub fn cmp_ratio(&self, num: u64, den: u64) -> Ordering {
        debug_assert!(den > 0);
        (self.num as u128 * den as u128).cmp(&(num as u128 * self.den as u128))
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}
