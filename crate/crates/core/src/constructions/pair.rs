use crate::approx::{ApproxTable, SetPrefix};
use crate::density::{beatty_set, Embedding};
use crate::error::{Error, Result};
use crate::reals::{limsup_estimate, LimsupReal};
use crate::scalar::ExactScalar;
use crate::Rational;

use super::cebuild::{build_ce_density, BlockSchedule};

/// c.e. sets `B ⊆ A` with `ρ(A) → a` and `ρ(B) → b` along the same prefixes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferencePair<Q = Rational> {
    /// `A = C ∪ h_{C̄}(A_1)`.
    pub outer: ApproxTable,
    /// `B = h_C(B_1)`.
    pub inner: ApproxTable,
    /// The Beatty set `C` of density `q`.
    pub base: SetPrefix,
    pub split: Q,
    /// Tail-window estimates of `limsup a` and `limsup b` used to check the split.
    pub a_estimate: Q,
    pub b_estimate: Q,
}

/// Builds the pair for `a` and `b` split at `q`, with `b < q < a` checked on
/// the tail windows of the two sequences.
///
/// `A_1` is built for `(a_n − q)/(1 − q)` inside `C̄` and `B_1` for `b_n/q`
/// inside `C`, both clamped into `[0, 1]`. Elements of `C` enter `A` at stage 1.
pub fn build_difference_pair<Q: ExactScalar>(
    a: &LimsupReal<Q>,
    b: &LimsupReal<Q>,
    q: &Q,
    universe: usize,
    schedule: &BlockSchedule,
) -> Result<DifferencePair<Q>> {
    if q <= &Q::zero() || q >= &Q::one() {
        return Err(Error::DegenerateSplit { q: q.to_string() });
    }
    for v in a.sequence().values().iter().chain(b.sequence().values()) {
        if !v.in_unit_interval() {
            return Err(Error::OutOfUnitInterval {
                value: v.to_string(),
            });
        }
    }
    let a_hat = limsup_estimate(a, a.tail_window())?.value;
    let b_hat = limsup_estimate(b, b.tail_window())?.value;
    if !(b_hat < *q && *q < a_hat) {
        return Err(Error::NoAdmissibleSplit {
            lower: b_hat.to_string(),
            q: q.to_string(),
            upper: a_hat.to_string(),
        });
    }

    let base = beatty_set(q, universe)?;
    let inside = Embedding::new(base.clone());
    let outside = Embedding::new(base.complement());
    let one_minus_q = Q::one() - q.clone();
    let a1_target = a
        .sequence()
        .values()
        .iter()
        .map(|v| ((v.clone() - q.clone()) / one_minus_q.clone()).clamp_unit());
    let b1_target = b
        .sequence()
        .values()
        .iter()
        .map(|v| (v.clone() / q.clone()).clamp_unit());
    let a1 = build_part(a1_target.collect(), schedule, outside.enumeration().len())?;
    let b1 = build_part(b1_target.collect(), schedule, inside.enumeration().len())?;

    let stages = a.len().max(b.len()) + 1;
    let mut outer_flips = vec![Vec::new(); universe];
    let mut outer_settled = vec![Some(0); universe];
    let mut inner_flips = vec![Vec::new(); universe];
    let mut inner_settled = vec![Some(0); universe];
    for x in base.elements() {
        outer_flips[x] = vec![1];
        outer_settled[x] = Some(1);
    }
    if let Some(a1) = &a1 {
        for (k, &x) in outside.enumeration().iter().enumerate() {
            outer_flips[x] = a1.flips(k).to_vec();
            outer_settled[x] = a1.settled_by(k);
        }
    }
    if let Some(b1) = &b1 {
        for (k, &x) in inside.enumeration().iter().enumerate() {
            inner_flips[x] = b1.flips(k).to_vec();
            inner_settled[x] = b1.settled_by(k);
        }
    }
    Ok(DifferencePair {
        outer: ApproxTable::from_flips(stages, outer_flips, outer_settled)?,
        inner: ApproxTable::from_flips(stages, inner_flips, inner_settled)?,
        base,
        split: q.clone(),
        a_estimate: a_hat,
        b_estimate: b_hat,
    })
}

fn build_part<Q: ExactScalar>(
    target: Vec<Q>,
    schedule: &BlockSchedule,
    universe: usize,
) -> Result<Option<ApproxTable>> {
    if universe == 0 {
        return Ok(None);
    }
    let target = LimsupReal::new(crate::density::RationalSequence::new(target))?;
    build_ce_density(&target, schedule, universe).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::classify;
    use crate::density::RationalSequence;

    fn q(s: &str) -> Rational {
        Rational::parse_exact(s).unwrap()
    }

    fn constant(v: &str) -> LimsupReal {
        LimsupReal::new(RationalSequence::constant(q(v), 20)).unwrap()
    }

    #[test]
    fn pair_is_nested_and_ce() {
        let sched = BlockSchedule::Geometric { first: 16 };
        let p = build_difference_pair(&constant("3/4"), &constant("1/4"), &q("1/2"), 4000, &sched)
            .unwrap();
        assert!(classify(&p.outer, None).computably_enumerable);
        assert!(classify(&p.inner, None).computably_enumerable);
        assert_eq!(p.inner.stagewise_subset_of(&p.outer), Ok(()));
        assert!(p.inner.final_set().is_subset_of(&p.base));
        assert!(p.base.is_subset_of(&p.outer.final_set()));
    }

    #[test]
    fn split_must_separate() {
        let sched = BlockSchedule::default();
        let err =
            build_difference_pair(&constant("1/3"), &constant("1/4"), &q("1/2"), 1000, &sched);
        assert!(matches!(err, Err(Error::NoAdmissibleSplit { .. })));
        let err = build_difference_pair(&constant("1/3"), &constant("1/4"), &q("1"), 1000, &sched);
        assert!(matches!(err, Err(Error::DegenerateSplit { .. })));
    }
}
