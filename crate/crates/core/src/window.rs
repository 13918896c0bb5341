use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Inclusive index window `[lo, hi]` over which a finite-data estimate is taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub lo: usize,
    pub hi: usize,
}

impl Window {
    pub fn new(lo: usize, hi: usize) -> Self {
        Window { lo, hi }
    }

    /// The upper half of `domain_lo..=domain_hi`.
    pub fn tail(domain_lo: usize, domain_hi: usize) -> Self {
        let span = domain_hi.saturating_sub(domain_lo);
        Window {
            lo: domain_lo + span.div_ceil(2),
            hi: domain_hi,
        }
    }

    /// Tail window `[ceil(n/2), n]` over the density indices `1..=n`.
    pub fn density_tail(n: usize) -> Self {
        Window {
            lo: n.div_ceil(2).max(1),
            hi: n,
        }
    }

    pub fn len(&self) -> usize {
        if self.hi < self.lo {
            0
        } else {
            self.hi - self.lo + 1
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indices(&self) -> RangeInclusive<usize> {
        self.lo..=self.hi
    }

    /// Fails unless the window is nonempty and inside `domain_lo..=domain_hi`.
    pub fn within(self, domain_lo: usize, domain_hi: usize) -> Result<Self> {
        if self.is_empty() || self.lo < domain_lo || self.hi > domain_hi || domain_hi < domain_lo {
            return Err(Error::EmptyWindow {
                lo: self.lo,
                hi: self.hi,
                domain_lo,
                domain_hi,
            });
        }
        Ok(self)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    /// Accepts `lo:hi`.
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::parse(0, format!("window `{s}` is not lo:hi")))?;
        let lo = lo
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad window start `{lo}`")))?;
        let hi = hi
            .trim()
            .parse()
            .map_err(|_| Error::parse(0, format!("bad window end `{hi}`")))?;
        Ok(Window { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tails() {
        assert_eq!(Window::density_tail(1000), Window::new(500, 1000));
        assert_eq!(Window::density_tail(7), Window::new(4, 7));
        assert_eq!(Window::density_tail(1), Window::new(1, 1));
        assert_eq!(Window::tail(0, 9), Window::new(5, 9));
    }

    #[test]
    fn within_rejects_empty_and_outside() {
        assert!(Window::new(3, 2).within(0, 10).is_err());
        assert!(Window::new(0, 4).within(1, 10).is_err());
        assert!(Window::new(1, 11).within(1, 10).is_err());
        assert!(Window::new(1, 10).within(1, 10).is_ok());
    }

    #[test]
    fn parse() {
        assert_eq!("2:8".parse::<Window>().unwrap(), Window::new(2, 8));
        assert!("2-8".parse::<Window>().is_err());
    }
}
