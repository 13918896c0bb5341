use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::window::Window;
use crate::Rational;

use super::sequence::RationalSequence;
use super::series::extremum;

/// Finite evidence for "`lim (a_n − b_n)` equals `limsup a − limsup b`" over a
/// tail window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimsupDifferenceReport<Q = Rational> {
    pub window: Window,
    /// `a_n − b_n` at the window's last index.
    pub limit_estimate: Q,
    /// `max − min` of `a_n − b_n` over the window.
    pub oscillation: Q,
    pub tolerance: Q,
    /// Oscillation within tolerance: the finite proxy for the limit existing.
    pub limit_exists: bool,
    pub limsup_a: Q,
    pub argmax_a: usize,
    pub limsup_b: Q,
    pub argmax_b: usize,
    /// `|limit_estimate − (limsup_a − limsup_b)|`.
    pub residual: Q,
}

/// Requires `M ≥ a_n ≥ b_n ≥ L` pointwise, where `M` is `a`'s upper bound and
/// `L` is `b`'s lower bound.
pub fn check_limsup_difference<Q: ExactScalar>(
    a: &RationalSequence<Q>,
    b: &RationalSequence<Q>,
    window: Window,
    tolerance: Q,
) -> Result<LimsupDifferenceReport<Q>> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let (_, upper) = a.bounds().ok_or(Error::MissingBounds)?;
    let (lower, _) = b.bounds().ok_or(Error::MissingBounds)?;
    for n in 0..a.len() {
        let (an, bn) = (a.get(n), b.get(n));
        if an > upper {
            return Err(Error::BoundViolated {
                index: n,
                detail: format!("a_n = {an} > M = {upper}"),
            });
        }
        if bn < lower {
            return Err(Error::BoundViolated {
                index: n,
                detail: format!("b_n = {bn} < L = {lower}"),
            });
        }
        if an < bn {
            return Err(Error::DominationViolated { index: n });
        }
    }
    let window = window.within(0, a.len().saturating_sub(1))?;
    if a.is_empty() {
        return Err(Error::EmptyWindow {
            lo: window.lo,
            hi: window.hi,
            domain_lo: 0,
            domain_hi: 0,
        });
    }

    let diffs: Vec<Q> = (0..a.len())
        .map(|n| a.get(n).clone() - b.get(n).clone())
        .collect();
    let (_, d_max) = extremum(window, |n| &diffs[n], |x, y| x > y);
    let (_, d_min) = extremum(window, |n| &diffs[n], |x, y| x < y);
    let (argmax_a, limsup_a) = extremum(window, |n| a.get(n), |x, y| x > y);
    let (argmax_b, limsup_b) = extremum(window, |n| b.get(n), |x, y| x > y);
    let limit_estimate = diffs[window.hi].clone();
    let oscillation = d_max - d_min;
    let residual = (limit_estimate.clone() - (limsup_a.clone() - limsup_b.clone())).abs();
    Ok(LimsupDifferenceReport {
        window,
        limit_exists: oscillation <= tolerance,
        limit_estimate,
        oscillation,
        tolerance,
        limsup_a,
        argmax_a,
        limsup_b,
        argmax_b,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = Rational;

    fn q(s: &str) -> Q {
        Q::parse_exact(s).unwrap()
    }

    fn alternating(len: usize) -> (RationalSequence<Q>, RationalSequence<Q>) {
        let a: Vec<Q> = (0..len)
            .map(|n| if n % 2 == 0 { q("3/4") } else { q("1/4") })
            .collect();
        let b: Vec<Q> = a.iter().map(|v| v.clone() - q("1/3")).collect();
        (
            RationalSequence::with_bounds(a, q("-1"), q("1")).unwrap(),
            RationalSequence::with_bounds(b, q("-1"), q("1")).unwrap(),
        )
    }

    #[test]
    fn analytic_alternating_pair() {
        // limsup a = 3/4, limsup b = 5/12, lim(a - b) = 1/3
        let (a, b) = alternating(64);
        for hi in (2..64).step_by(2) {
            let r = check_limsup_difference(&a, &b, Window::new(0, hi), q("0")).unwrap();
            assert_eq!(r.limsup_a, q("3/4"));
            assert_eq!(r.limsup_b, q("5/12"));
            assert_eq!(r.limit_estimate, q("1/3"));
            assert_eq!(r.residual, q("0"));
            assert!(r.limit_exists);
        }
    }

    #[test]
    fn equal_constant_sequences() {
        let a = RationalSequence::with_bounds(vec![q("2/5"); 10], q("0"), q("1")).unwrap();
        let r = check_limsup_difference(&a, &a.clone(), Window::tail(0, 9), q("0")).unwrap();
        assert_eq!(r.limit_estimate, q("0"));
        assert_eq!(r.residual, q("0"));
        assert_eq!(r.limsup_a, r.limsup_b);
    }

    #[test]
    fn domination_violation() {
        let a = RationalSequence::with_bounds(vec![q("1/2"), q("1/5")], q("0"), q("1")).unwrap();
        let b = RationalSequence::with_bounds(vec![q("1/4"), q("1/3")], q("0"), q("1")).unwrap();
        let err = check_limsup_difference(&a, &b, Window::new(0, 1), q("0")).unwrap_err();
        assert_eq!(err, Error::DominationViolated { index: 1 });
    }

    #[test]
    fn missing_bounds_and_lengths() {
        let a = RationalSequence::new(vec![q("1")]);
        assert_eq!(
            check_limsup_difference(&a, &a, Window::new(0, 0), q("0")).unwrap_err(),
            Error::MissingBounds
        );
        let b = RationalSequence::new(vec![q("1"), q("1")]);
        assert!(matches!(
            check_limsup_difference(&a, &b, Window::new(0, 0), q("0")),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn oscillating_difference_is_flagged() {
        let a = RationalSequence::with_bounds(
            (0..20)
                .map(|n| if n % 2 == 0 { q("1") } else { q("1/2") })
                .collect(),
            q("0"),
            q("1"),
        )
        .unwrap();
        let b = RationalSequence::with_bounds(vec![q("1/4"); 20], q("0"), q("1")).unwrap();
        let r = check_limsup_difference(&a, &b, Window::tail(0, 19), q("1/10")).unwrap();
        assert_eq!(r.oscillation, q("1/2"));
        assert!(!r.limit_exists);
    }
}
