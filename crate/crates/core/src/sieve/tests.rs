use super::*;
use proptest::prelude::*;

fn brute_force_survivors(x: u64, n: u64, primes: &[u64], modulus: u64) -> Vec<u64> {
    // k in [1, modulus] stands for its class; k = modulus is class 0.
    let mut out: Vec<u64> = (1..=modulus)
        .filter(|&k| primes.iter().all(|&p| is_nth_power_residue(t_mod(x, k, p), p, n)))
        .map(|k| k % modulus)
        .collect();
    out.sort_unstable();
    out
}

fn apply_all(x: u64, n: u64, primes: &[u64]) -> SieveState {
    let mut s = SieveState::new(x, n).unwrap();
    for &p in primes {
        s = lift_and_filter(&s, p, u64::MAX).unwrap();
    }
    s
}

#[test]
fn first_step_for_x2_n3() {
    let s = lift_and_filter(&SieveState::new(2, 3).unwrap(), 7, 1000).unwrap();
    assert_eq!((s.modulus, s.residues.clone()), (6, vec![1, 3, 4, 5]));
    assert_eq!(s.residues, brute_force_survivors(2, 3, &[7], 6));
}

#[test]
fn second_step_for_x2_n3_matches_brute_force() {
    let s = apply_all(2, 3, &[7, 13]);
    assert_eq!(s.modulus, 12);
    assert_eq!(s.residues, brute_force_survivors(2, 3, &[7, 13], 12));
    assert!(!s.residues.contains(&1));
    assert!(s.residues.iter().all(|r| [3, 4, 9, 10].contains(r)));
}

#[test]
fn empty_input_stays_proven() {
    let s = SieveState::seeded(2, 3, 6, vec![]).unwrap();
    assert_eq!(s.status, SieveStatus::Proven);
    let t = lift_and_filter(&s, 7, 100).unwrap();
    assert!(t.residues.is_empty());
    assert_eq!(t.status, SieveStatus::Proven);
}

#[test]
fn divisor_prime_keeps_modulus() {
    let s = apply_all(3, 3, &[7]);
    // 7 - 1 = 6 divides 6; use p = 3, 2 = 3 - 1 divides 6 too
    let t = lift_and_filter(&s, 3, 100).unwrap();
    assert_eq!(t.modulus, s.modulus);
    assert!(t.residues.iter().all(|r| s.residues.contains(r)));
}

#[test]
fn cap_and_preconditions() {
    let s = SieveState::new(2, 3).unwrap();
    assert!(matches!(
        lift_and_filter(&s, 7, 5),
        Err(SieveError::ModulusCapExceeded { modulus: 1, p: 7, cap: 5 })
    ));
    assert!(matches!(lift_and_filter(&s, 9, 100), Err(SieveError::Precondition(_))));
    let s = lift_and_filter(&s, 7, 100).unwrap();
    assert!(matches!(lift_and_filter(&s, 7, 100), Err(SieveError::Precondition(_))));
    for n in [0, 1, 2, 6, 9, 15] {
        assert!(run_sieve(2, n, &SieveConfig::default()).is_err(), "n={n}");
    }
    assert!(SieveState::seeded(2, 3, 2, vec![2]).is_err());
}

#[test]
fn budget_exhaustion_is_undecided() {
    let config = SieveConfig { max_primes: 1, ..SieveConfig::default() };
    let s = run_sieve(2, 3, &config).unwrap();
    assert_eq!(s.status, SieveStatus::Undecided);
    assert_eq!(s.primes_used, vec![7]);
}

#[test]
fn skipped_primes_count_against_budget() {
    let config = SieveConfig { max_primes: 3, max_modulus: 6, ..SieveConfig::default() };
    let s = run_sieve(2, 3, &config).unwrap();
    assert_eq!(s.primes_used, vec![7]);
    assert_eq!(s.primes_skipped, vec![13, 19]);
    assert_eq!(s.status, SieveStatus::Undecided);
    s.check_invariants().unwrap();
}

#[test]
fn checkpoint_round_trip_and_rejections() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.json");
    let config = SieveConfig { max_primes: 4, ..SieveConfig::default() };
    let s = run_sieve(3, 5, &config).unwrap();
    checkpoint_save(&s, &path).unwrap();
    assert_eq!(checkpoint_load(&path).unwrap(), s);

    let text = std::fs::read_to_string(&path).unwrap();
    let bumped = text.replace("\"format_version\":1", "\"format_version\":99");
    std::fs::write(&path, bumped).unwrap();
    let e = checkpoint_load(&path).unwrap_err().to_string();
    assert!(e.contains("format version 99"), "{e}");

    std::fs::write(&path, "{\"format_version\":1,\"x\":\"2\"}").unwrap();
    assert!(checkpoint_load(&path).unwrap_err().to_string().contains("malformed"));
    std::fs::write(&path, "not json").unwrap();
    assert!(checkpoint_load(&path).unwrap_err().to_string().contains("not valid JSON"));

    let mut broken = s.clone();
    broken.residues = vec![broken.modulus];
    broken.status = SieveStatus::Running;
    checkpoint_save(&broken, &path).unwrap();
    assert!(checkpoint_load(&path).unwrap_err().to_string().contains("outside"));
}

const SMALL_PRIMES: [u64; 8] = [7, 13, 19, 31, 37, 43, 61, 67];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn order_does_not_change_result(x in 2u64..14, seed in any::<u64>()) {
        let mut shuffled = SMALL_PRIMES[..5].to_vec();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        let a = apply_all(x, 3, &SMALL_PRIMES[..5]);
        let b = apply_all(x, 3, &shuffled);
        prop_assert_eq!((a.modulus, a.residues), (b.modulus, b.residues));
    }

    #[test]
    fn residue_density_never_grows(x in 2u64..14, len in 1usize..8) {
        let mut s = SieveState::new(x, 3).unwrap();
        for &p in &SMALL_PRIMES[..len] {
            let t = lift_and_filter(&s, p, u64::MAX).unwrap();
            prop_assert!(t.residues.len() as u128 * s.modulus as u128
                <= s.residues.len() as u128 * t.modulus as u128);
            prop_assert!(t.check_invariants().is_ok());
            s = t;
        }
    }

    #[test]
    fn survivors_match_brute_force(x in 2u64..14, n in prop::sample::select(vec![3u64, 5])) {
        let primes: Vec<u64> = SMALL_PRIMES.iter().copied()
            .filter(|p| (p - 1) % (2 * n) == 0).take(2).collect();
        let s = apply_all(x, n, &primes);
        prop_assert_eq!(s.residues, brute_force_survivors(x, n, &primes, s.modulus));
    }
}
