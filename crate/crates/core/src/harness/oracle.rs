//! Brute-force recomputations straight from the definitions, used to check
//! the constructions. Nothing here shares code with the code it checks.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::approx::{ApproxTable, BoundFunction};

/// Changes of column `x` found by comparing consecutive stages.
pub fn scan_changes(t: &ApproxTable, x: usize) -> usize {
    (1..t.stages())
        .filter(|&s| t.get(x, s) != t.get(x, s - 1))
        .count()
}

/// `(μs)[f(s) > level]` by linear search below `limit`.
pub fn scan_first_exceeding(f: &BoundFunction, level: usize, limit: usize) -> Option<usize> {
    (0..limit).find(|&s| f.eval(s).is_some_and(|v| v > level))
}

/// Modulus values recomputed by scanning the table stage by stage, stopping at
/// the first level that does not fit below the stage count or runs past the
/// universe.
pub fn scan_modulus(t: &ApproxTable, f: &BoundFunction) -> Vec<usize> {
    let stages = t.stages();
    // last stage at which any of columns 0..k differs from the stage before
    let mut last_diff = vec![0usize; t.universe() + 1];
    for y in 0..t.universe() {
        let mut last = 0;
        for s in 1..stages {
            if t.get(y, s) != t.get(y, s - 1) {
                last = s;
            }
        }
        last_diff[y + 1] = last_diff[y].max(last);
    }
    let mut out: Vec<usize> = Vec::new();
    loop {
        let x = out.len();
        if x > t.universe() {
            break;
        }
        let Some(tau) = scan_first_exceeding(f, x, stages) else {
            break;
        };
        let value = match out.last() {
            None => tau,
            Some(&prev) => {
                let floor = (x as u128) * (prev as u128) + 1;
                let candidate = floor.max(last_diff[x] as u128).max(tau as u128);
                if candidate >= stages as u128 {
                    break;
                }
                candidate as usize
            }
        };
        if value >= stages {
            break;
        }
        out.push(value);
    }
    out
}

/// Membership in `{n : ⌊(n+1)p/r⌋ > ⌊np/r⌋}` by big-integer floor division.
pub fn beatty_member(p: &BigInt, r: &BigInt, n: usize) -> bool {
    let n = BigInt::from(n);
    let next = (&n + 1u32) * p;
    (next.div_floor(r)) > (n * p).div_floor(r)
}

/// `|X↾n|` of the oscillating block set `⋃_{k even}[4^k, 4^{k+1})`, summed
/// block by block.
pub fn block_count(n: usize) -> usize {
    let mut count = 0;
    let mut k = 0u32;
    while let Some(lo) = 4usize.checked_pow(k).filter(|&lo| lo < n) {
        let hi = lo.saturating_mul(4).min(n);
        if k.is_multiple_of(2) {
            count += hi - lo;
        }
        k += 1;
    }
    count
}

/// Membership of `x` in layer `A_j` at stage `s`: column `x` has changed at
/// least `j` times by stage `s`.
pub fn layer_member(t: &ApproxTable, j: usize, x: usize, s: usize) -> bool {
    (1..=s).filter(|&r| t.get(x, r) != t.get(x, r - 1)).count() >= j
}

/// `|R↾u|` by counting.
pub fn count_below(range: &crate::approx::SetPrefix, u: usize) -> usize {
    (0..u).filter(|&y| range.contains(y)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::SetPrefix;

    #[test]
    fn modulus_of_empty_table() {
        let t = ApproxTable::settled_at_one(&SetPrefix::empty(10), 100).unwrap();
        assert_eq!(
            scan_modulus(&t, &BoundFunction::identity()),
            vec![1, 2, 5, 16, 65]
        );
    }

    #[test]
    fn block_counts() {
        assert_eq!(block_count(1), 0);
        assert_eq!(block_count(4), 3);
        assert_eq!(block_count(16), 3);
        assert_eq!(block_count(20), 7);
        assert_eq!(block_count(64), 51);
    }

    #[test]
    fn beatty_half() {
        let (p, r) = (BigInt::from(1), BigInt::from(2));
        let members: Vec<usize> = (0..6).filter(|&n| beatty_member(&p, &r, n)).collect();
        assert_eq!(members, vec![1, 3, 5]);
    }
}
