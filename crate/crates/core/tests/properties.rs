//! Property tests over random permutations and random rational starts.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rotodo::criteria::{classify_odometer, render_json, ClassificationReport, ClassifyConfig};
use rotodo::maps::rational::{in_unit_interval, rat};
use rotodo::maps::{Permutation, Rational, RotatedOdometer, SkewState};
use rotodo::renorm::{detect_periodicity, renormalize_once};
use rotodo::sim::{run_orbit, Orbit};
use rotodo::spectral::IntPoly;

/// Non-power-of-two alphabet sizes small enough for exhaustive work.
fn small_q() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![3usize, 5, 6, 7])
}

fn permutation() -> impl Strategy<Value = Permutation> {
    small_q().prop_flat_map(|q| {
        Just((0..q).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    })
}

/// A start point `a / (q · 2^e · b)` in `[0, 1)` with odd `b`.
fn start(q: usize) -> impl Strategy<Value = Rational> {
    (0u32..12, prop::sample::select(vec![1i64, 3, 7, 11, 101]), any::<u64>()).prop_map(move |(e, b, a)| {
        let den = q as i64 * (1i64 << e) * b;
        rat((a % den as u64) as i64, den)
    })
}

fn system() -> impl Strategy<Value = (RotatedOdometer, Rational)> {
    permutation().prop_flat_map(|p| {
        let q = p.q();
        (Just(RotatedOdometer::new(p)), start(q))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn cycle_and_one_line_round_trip(p in permutation()) {
        let q = p.q();
        let cyc = p.to_cycle_string();
        let back = Permutation::parse(q, &cyc, false).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(back.to_cycle_string(), cyc);
        prop_assert_eq!(&Permutation::parse(q, &p.to_one_line(), false).unwrap(), &p);
        let arrows: Vec<String> = (0..q).map(|i| format!("{i}→{}", p.apply(i))).collect();
        prop_assert_eq!(&Permutation::parse(q, &arrows.join(","), false).unwrap(), &p);
    }

    #[test]
    fn map_stays_in_unit_interval_and_steps_by_one((f, x) in system()) {
        let mut s = SkewState::new(x, 0);
        for _ in 0..200 {
            let next = f.t_pi(&s).unwrap();
            prop_assert!(in_unit_interval(&next.x));
            prop_assert_eq!((&next.level - &s.level).abs(), BigInt::from(1));
            s = next;
        }
    }

    #[test]
    fn fast_orbit_matches_exact_map((f, x) in system()) {
        let mut orbit = Orbit::new(&f, &x).unwrap();
        let mut exact = x.clone();
        for _ in 0..300 {
            prop_assert_eq!(orbit.point(), exact.clone());
            prop_assert_eq!(orbit.psi(), rotodo::maps::psi(&exact).unwrap());
            orbit.advance().unwrap();
            exact = f.f_pi(&exact).unwrap();
        }
    }

    #[test]
    fn orbits_are_reproducible((f, x) in system()) {
        let a = run_orbit(&f, &x, 2_000).unwrap();
        let b = run_orbit(&f, &x, 2_000).unwrap();
        prop_assert_eq!(&a.displacement, &b.displacement);
        prop_assert!(a.displacement.windows(2).all(|w| (w[1] - w[0]).abs() == 1));
    }

    #[test]
    fn doubled_char_poly_adds_one_zero_root(p in permutation()) {
        let q = p.q();
        let (_, chi) = renormalize_once(&RotatedOdometer::new(p)).unwrap();
        let doubled = IntPoly::char_poly(&chi.matrix());
        let undoubled = IntPoly::char_poly(&chi.undoubled().matrix());
        let expected = if q % 2 == 1 { undoubled.mul(&IntPoly::x()) } else { undoubled };
        prop_assert_eq!(doubled, expected);
    }

    #[test]
    fn covering_columns_sum_to_return_time(p in permutation()) {
        let f = RotatedOdometer::new(p);
        let seq = detect_periodicity(&f, None).unwrap();
        let cells = seq.entries[0].1.undoubled().matrix();
        let target = BigInt::from(1u64 << f.big_n());
        for b in 0..f.q() {
            let sum: BigInt = (0..f.q()).map(|a| cells.get(a, b).clone()).sum();
            if seq.covering() {
                prop_assert_eq!(&sum, &target);
            } else {
                prop_assert!(sum <= target);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn report_json_round_trips(p in permutation()) {
        let r = classify_odometer(&RotatedOdometer::new(p), &ClassifyConfig::default()).unwrap();
        let json = render_json(&r);
        let back = ClassificationReport::from_json(&json).unwrap();
        prop_assert_eq!(&back, &r);
        prop_assert_eq!(render_json(&back), json);
    }

    #[test]
    fn weight_verdicts_are_consistent(p in permutation()) {
        let r = classify_odometer(&RotatedOdometer::new(p), &ClassifyConfig::default()).unwrap();
        prop_assert_eq!(r.coboundary, r.weights.iter().all(Zero::is_zero));
        if r.coboundary {
            prop_assert_eq!(r.gcd_d, 0);
        } else {
            prop_assert!(r.weights.iter().all(|w| w % r.gcd_d as i64 == 0));
        }
        prop_assert!(r.analysis_matrix.iter().map(|row| row[0]).all(|v| v > 0));
    }
}
