use ershov_core::approx::{classify, mind_changes};
use ershov_core::constructions::{
    build_ce_density, certify_fce, decompose_nce, modulus, transfer, van_der_corput_order,
    BlockSchedule,
};
use ershov_core::density::{beatty_set, density_series, embed, RationalSequence};
use ershov_core::harness::{generate, oracle, GenKind, GeneratorSpec, SettleMode};
use ershov_core::reals::{diff_representation, LimsupReal};
use ershov_core::{ApproxTable, BoundFunction, ExactScalar, Rational, Rational64, SetPrefix};
use proptest::prelude::*;

fn table(kind: GenKind, universe: usize, stages: usize, seed: u64) -> ApproxTable {
    generate(&GeneratorSpec::new(kind, universe, stages, seed))
        .unwrap()
        .into_table(stages)
        .unwrap()
}

fn early(universe: usize, stages: usize, seed: u64) -> ApproxTable {
    let spec =
        GeneratorSpec::new(GenKind::Delta2, universe, stages, seed).settle(SettleMode::Early);
    generate(&spec).unwrap().into_table(stages).unwrap()
}

fn bits(n: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), 1..n)
}

proptest! {
    #[test]
    fn table_text_round_trip(seed in any::<u64>(), n in 1usize..40, s in 2usize..30) {
        let t = table(GenKind::Delta2, n, s, seed);
        prop_assert_eq!(ApproxTable::parse(&t.to_text()).unwrap(), t);
    }

    #[test]
    fn set_text_round_trip(b in bits(200)) {
        let x = SetPrefix::from_bits(b);
        prop_assert_eq!(SetPrefix::parse(&x.to_text()).unwrap(), x);
    }

    #[test]
    fn mind_changes_match_scan(seed in any::<u64>(), n in 1usize..30, s in 2usize..40) {
        let t = table(GenKind::Delta2, n, s, seed);
        let profile = mind_changes(&t);
        for x in 0..n {
            prop_assert_eq!(profile.counts[x], oracle::scan_changes(&t, x));
        }
    }

    #[test]
    fn density_invariants(b in bits(300)) {
        let x = SetPrefix::from_bits(b);
        let d = density_series::<Rational>(&x, "x");
        prop_assert_eq!(d.check_invariants(), Ok(()));
    }

    #[test]
    fn scalar_types_agree(b in bits(300)) {
        let x = SetPrefix::from_bits(b);
        let big = density_series::<Rational>(&x, "x");
        let small = density_series::<Rational64>(&x, "x");
        for n in 1..=x.universe() {
            prop_assert_eq!(big.rho(n).to_string(), small.rho(n).to_string());
        }
    }

    #[test]
    fn beatty_density_bound(p in 0usize..=50, r in 1usize..=50, n in 1usize..2000) {
        prop_assume!(p <= r);
        let q = Rational::ratio(p, r);
        let c = beatty_set(&q, n).unwrap();
        prop_assert_eq!(c.len(), (n * p) / r);
        for m in 1..=n {
            let gap = Rational::ratio(c.count_below(m), m) - q.clone();
            prop_assert!(gap.clone() < Rational::ratio(1, m) && -gap < Rational::ratio(1, m));
        }
    }

    #[test]
    fn conditional_density_identity(r in bits(400), seed in any::<u64>()) {
        let range = SetPrefix::from_bits(r);
        let x = SetPrefix::from_fn(range.len(), |k| (seed >> (k % 64)) & 1 == 1);
        let e = embed::<Rational>(&range, &x).unwrap();
        prop_assert!(e.audit.holds());
        prop_assert_eq!(e.image.len(), x.len());
        prop_assert!(e.image.is_subset_of(&range));
    }

    #[test]
    fn decomposition_reassembles(seed in any::<u64>(), level in 1usize..7) {
        let t = table(GenKind::Nce(level), 64, 24, seed);
        let d = decompose_nce(&t);
        prop_assert_eq!(d.reassemble(), t.final_set());
        prop_assert_eq!(d.check_nesting(), Ok(()));
        prop_assert_eq!(d.check_monotone(), Ok(()));
        for s in 0..t.stages() {
            prop_assert_eq!(d.reassemble_at(s), t.snapshot(s));
        }
        prop_assert!(diff_representation::<Rational>(&t).unwrap().holds());
    }

    #[test]
    fn vdc_is_permutation(len in 0usize..3000) {
        let mut o = van_der_corput_order(len);
        o.sort_unstable();
        prop_assert_eq!(o, (0..len).collect::<Vec<_>>());
    }

    #[test]
    fn ce_density_meets_block_targets(num in prop::collection::vec(0usize..=20, 6..12), first in 1usize..16) {
        let values: Vec<Rational> = num.iter().map(|&k| Rational::ratio(k, 20)).collect();
        let target = LimsupReal::new(RationalSequence::new(values.clone())).unwrap();
        let sched = BlockSchedule::Geometric { first };
        let universe = first * 31;
        let blocks = sched.blocks(universe).unwrap();
        prop_assume!(blocks.len() <= values.len());
        let t = build_ce_density(&target, &sched, universe).unwrap();
        prop_assert!(classify(&t, None).computably_enumerable);
        let set = t.final_set();
        for (n, block) in blocks.into_iter().enumerate() {
            let tau = values[n..].iter().max().unwrap().clone();
            let inside = block.clone().filter(|&x| set.contains(x)).count();
            prop_assert_eq!(inside, (tau * Rational::from_count(block.len())).ceil_count().unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn modulus_matches_scan(seed in any::<u64>(), universe in 2usize..12) {
        let t = early(universe, 3000, seed);
        let f = BoundFunction::identity();
        prop_assert_eq!(modulus(&t, &f).unwrap().values(), oracle::scan_modulus(&t, &f));
    }

    #[test]
    fn transfer_tracks(seed in any::<u64>()) {
        let t = early(12, 20_000, seed);
        let tr = transfer::<Rational>(&t, &BoundFunction::identity(), 20_000).unwrap();
        prop_assert!(tr.holds());
        prop_assert!(tr.tracking.len() >= 6);
    }

    #[test]
    fn certificate_agrees_with_limit(seed in any::<u64>()) {
        let t = early(12, 3000, seed);
        let f = BoundFunction::identity();
        let c = certify_fce::<Rational>(&t, &f, 3000).unwrap();
        prop_assert!(c.holds());
        let staged = c.staged_table().unwrap();
        prop_assert_eq!(staged.final_set(), c.transfer.b.clone());
        let counts = mind_changes(&staged).counts;
        for (z, k) in counts.into_iter().enumerate() {
            prop_assert!(k <= f.eval(z).unwrap());
        }
    }
}
