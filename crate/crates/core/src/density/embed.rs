use crate::approx::SetPrefix;
use crate::error::{Error, Result};
use crate::scalar::ExactScalar;
use crate::Rational;

/// The increasing enumeration `h` of a range set `R` and the counting map
/// `g(u) = least k with h(k) ≥ u`, which equals `|R↾u|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    range: SetPrefix,
    enumeration: Vec<usize>,
    counts: Vec<usize>,
}

impl Embedding {
    pub fn new(range: SetPrefix) -> Self {
        let enumeration: Vec<usize> = range.elements().collect();
        let counts = range.prefix_counts();
        Embedding {
            range,
            enumeration,
            counts,
        }
    }

    pub fn range(&self) -> &SetPrefix {
        &self.range
    }

    /// `h(k)`, if the `k`-th element of `R` lies inside the horizon.
    pub fn h(&self, k: usize) -> Option<usize> {
        self.enumeration.get(k).copied()
    }

    /// `g(u)` for `u ≤ N`.
    pub fn g(&self, u: usize) -> usize {
        self.counts[u]
    }

    pub fn enumeration(&self) -> &[usize] {
        &self.enumeration
    }

    /// `h(X)`. Fails when some `x ∈ X` has no image inside the horizon.
    pub fn image(&self, x: &SetPrefix) -> Result<SetPrefix> {
        let mut out = SetPrefix::empty(self.range.universe());
        for k in x.elements() {
            let hk = self.h(k).ok_or(Error::RangeExhausted {
                element: k,
                available: self.enumeration.len(),
            })?;
            out.set(hk, true);
        }
        Ok(out)
    }
}

/// Result of checking `ρ_u(h(X)) = ρ_{g(u)}(X) · ρ_u(R)` at every eligible `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityAudit<Q = Rational> {
    /// Number of `u` checked: `1 ≤ u ≤ N`, `1 ≤ g(u) ≤ |X's universe|`.
    pub checked: usize,
    /// `u` with `g(u) = 0`.
    pub skipped_zero: usize,
    /// `u` whose `g(u)` reaches past the known prefix of `X`.
    pub skipped_beyond: usize,
    /// `(u, lhs, rhs)` for every failure.
    pub mismatches: Vec<(usize, Q, Q)>,
}

impl<Q> IdentityAudit<Q> {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedded<Q = Rational> {
    pub embedding: Embedding,
    pub image: SetPrefix,
    pub audit: IdentityAudit<Q>,
}

/// Embeds `X` into `R` through `h` and audits the conditional-density
/// identity exactly.
pub fn embed<Q: ExactScalar>(range: &SetPrefix, x: &SetPrefix) -> Result<Embedded<Q>> {
    let embedding = Embedding::new(range.clone());
    let image = embedding.image(x)?;
    let audit = audit_identity(&embedding, x, &image);
    Ok(Embedded {
        embedding,
        image,
        audit,
    })
}

pub fn audit_identity<Q: ExactScalar>(
    embedding: &Embedding,
    x: &SetPrefix,
    image: &SetPrefix,
) -> IdentityAudit<Q> {
    let image_counts = image.prefix_counts();
    let x_counts = x.prefix_counts();
    let mut audit = IdentityAudit {
        checked: 0,
        skipped_zero: 0,
        skipped_beyond: 0,
        mismatches: Vec::new(),
    };
    for (u, &image_count) in image_counts.iter().enumerate().skip(1) {
        let gu = embedding.g(u);
        if gu == 0 {
            audit.skipped_zero += 1;
            continue;
        }
        if gu > x.universe() {
            audit.skipped_beyond += 1;
            continue;
        }
        let lhs = Q::ratio(image_count, u);
        let rhs = Q::ratio(x_counts[gu], gu) * Q::ratio(gu, u);
        audit.checked += 1;
        if lhs != rhs {
            audit.mismatches.push((u, lhs, rhs));
        }
    }
    audit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::density::prefix_density;

    type Q = Rational;

    fn q(s: &str) -> Q {
        Q::parse_exact(s).unwrap()
    }

    #[test]
    fn odds_into_evens() {
        let n = 24;
        let odds = SetPrefix::from_fn(n, |k| k % 2 == 1);
        let evens = SetPrefix::from_fn(n / 2, |k| k % 2 == 0);
        let e: Embedded<Q> = embed(&odds, &evens).unwrap();
        // h(2j) = 4j + 1
        assert_eq!(
            e.image.elements().take(3).collect::<Vec<_>>(),
            vec![1, 5, 9]
        );
        assert_eq!(prefix_density::<Q>(&e.image, 12).unwrap(), q("1/4"));
        assert!(e.audit.holds());
        assert_eq!(
            e.audit.checked + e.audit.skipped_zero + e.audit.skipped_beyond,
            n
        );
    }

    #[test]
    fn worked_point_u_six() {
        let odds = SetPrefix::from_fn(24, |k| k % 2 == 1);
        let evens = SetPrefix::from_fn(12, |k| k % 2 == 0);
        let e: Embedded<Q> = embed(&odds, &evens).unwrap();
        // g(6) = 3 since h(2) = 5 < 6 <= h(3) = 7
        assert_eq!(e.embedding.g(6), 3);
        assert_eq!(prefix_density::<Q>(&e.image, 6).unwrap(), q("1/3"));
        assert_eq!(
            prefix_density::<Q>(&evens, 3).unwrap() * prefix_density::<Q>(&odds, 6).unwrap(),
            q("1/3")
        );
    }

    #[test]
    fn full_range_is_identity() {
        let x = SetPrefix::from_fn(30, |k| k % 3 == 0 || k == 7);
        let e: Embedded<Q> = embed(&SetPrefix::full(30), &x).unwrap();
        assert_eq!(e.image, x);
        assert_eq!(e.embedding.g(17), 17);
        assert!(e.audit.holds());
    }

    #[test]
    fn range_exhausted() {
        let r = SetPrefix::from_elements(10, [2, 5]).unwrap();
        let x = SetPrefix::from_elements(5, [0, 3]).unwrap();
        assert_eq!(
            embed::<Q>(&r, &x).unwrap_err(),
            Error::RangeExhausted {
                element: 3,
                available: 2
            }
        );
    }

    #[test]
    fn g_is_least_k_with_h_k_at_least_u() {
        let r = SetPrefix::from_elements(20, [0, 3, 4, 9, 15, 19]).unwrap();
        let emb = Embedding::new(r);
        for u in 0..=20 {
            let least = (0..).find(|&k| emb.h(k).is_none_or(|hk| hk >= u)).unwrap();
            assert_eq!(emb.g(u), least, "u = {u}");
        }
    }
}
