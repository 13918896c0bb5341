use crate::approx::SetPrefix;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;

/// The computable set `{n : ⌊(n+1)q⌋ > ⌊nq⌋}` restricted to `[0, N)`.
///
/// `|C↾n| = ⌊nq⌋`, so `|ρ_n(C) − q| < 1/n` for every `n ≥ 1`.
pub fn beatty_set<Q: ExactScalar>(q: &Q, universe: usize) -> Result<SetPrefix> {
    if !q.in_unit_interval() {
        return Err(Error::OutOfUnitInterval {
            value: q.to_string(),
        });
    }
    let floor_at = |n: usize| -> Result<usize> {
        (Q::from_count(n) * q.clone())
            .floor_count()
            .ok_or_else(|| Error::Internal(format!("floor of {n}*{q} out of range")))
    };
    let mut bits = Vec::with_capacity(universe);
    let mut prev = 0;
    for n in 0..universe {
        let next = floor_at(n + 1)?;
        bits.push(next > prev);
        prev = next;
    }
    Ok(SetPrefix::from_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(s: &str) -> Rational {
        Rational::parse_exact(s).unwrap()
    }

    #[test]
    fn half() {
        let c = beatty_set(&q("1/2"), 6).unwrap();
        assert_eq!(c.elements().collect::<Vec<_>>(), vec![1, 3, 5]);
    }

    #[test]
    fn extremes() {
        assert_eq!(beatty_set(&q("1"), 10).unwrap(), SetPrefix::full(10));
        assert_eq!(beatty_set(&q("0"), 10).unwrap(), SetPrefix::empty(10));
    }

    #[test]
    fn out_of_range() {
        assert!(beatty_set(&q("-1/3"), 4).is_err());
        assert!(beatty_set(&q("4/3"), 4).is_err());
    }

    #[test]
    fn count_is_floor() {
        let c = beatty_set(&q("3/7"), 7).unwrap();
        assert_eq!(c.count_below(7), 3);
        for n in 0..=7 {
            assert_eq!(c.count_below(n), 3 * n / 7);
        }
    }
}
