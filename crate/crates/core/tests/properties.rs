//! Property tests over the field arithmetic, the enclosure certification,
//! and the expansion invariants.

use cfladder::{cbrt_bounds, CubicNumber, Expansion, Power, Surd};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

const NONCUBES: &[u64] = &[2, 3, 4, 5, 6, 7, 9, 10, 12, 17, 25, 30, 42, 50];

fn arb_m() -> impl Strategy<Value = u64> {
    proptest::sample::select(NONCUBES)
}

fn arb_cubic(m: u64) -> impl Strategy<Value = CubicNumber> {
    (
        -1_000_000_000i64..1_000_000_000,
        -1_000_000_000i64..1_000_000_000,
        -1_000_000_000i64..1_000_000_000,
        prop_oneof![1i64..1000, -1000i64..-1],
    )
        .prop_map(move |(a, b, c, d)| CubicNumber::new(m, a, b, c, d).unwrap())
}

fn arb_pair() -> impl Strategy<Value = (CubicNumber, CubicNumber)> {
    arb_m().prop_flat_map(|m| (arb_cubic(m), arb_cubic(m)))
}

fn arb_triple() -> impl Strategy<Value = (CubicNumber, CubicNumber, CubicNumber)> {
    arb_m().prop_flat_map(|m| (arb_cubic(m), arb_cubic(m), arb_cubic(m)))
}

fn canonical_ok(x: &CubicNumber) -> bool {
    let (a, b, c, d) = x.coefficients();
    use num_integer::Integer;
    d.is_positive() && a.gcd(b).gcd(c).gcd(d).is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_roundtrip((_, x) in arb_pair().prop_filter("nonzero", |(_, x)| !x.is_zero())) {
        let inverse = x.invert().unwrap();
        prop_assert!(x.mul(&inverse).unwrap().is_one());
    }

    #[test]
    fn addition_commutes_and_associates((x, y, z) in arb_triple()) {
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        let left = x.add(&y).unwrap().add(&z).unwrap();
        let right = x.add(&y.add(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_commutes_and_associates((x, y, z) in arb_triple()) {
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes((x, y, z) in arb_triple()) {
        let left = x.mul(&y.add(&z).unwrap()).unwrap();
        let right = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn results_stay_canonical((x, y) in arb_pair()) {
        prop_assert!(canonical_ok(&x.add(&y).unwrap()));
        prop_assert!(canonical_ok(&x.mul(&y).unwrap()));
        prop_assert!(canonical_ok(&x.sub(&y).unwrap()));
        if !y.is_zero() {
            prop_assert!(canonical_ok(&y.invert().unwrap()));
        }
    }

    #[test]
    fn floor_sandwich((_, x) in arb_pair()) {
        let f = x.floor();
        prop_assert!(x.sub_int(&f).sign() >= 0);
        prop_assert!(x.sub_int(&(&f + 1)).sign() < 0);
    }

    #[test]
    fn zero_test_matches_interval_sign((x, y) in arb_pair()) {
        // x + y - y collapses to x exactly; x - x has exact sign 0.
        prop_assert_eq!(x.add(&y).unwrap().sub(&y).unwrap(), x.clone());
        prop_assert_eq!(x.sub(&x).unwrap().sign(), 0);
        prop_assert!(x.sub(&x).unwrap().is_zero());
    }

    #[test]
    fn sign_flips_under_negation((_, x) in arb_pair()) {
        prop_assert_eq!(x.sign(), -x.neg().sign());
        prop_assert!(x.abs().sign() >= 0);
    }

    #[test]
    fn cbrt_bounds_certified(m in arb_m(), bits in 1u32..400) {
        let interval = cbrt_bounds(m, bits).unwrap();
        let m_rat = BigRational::from_integer(BigInt::from(m));
        prop_assert!(interval.lo().pow(3) < m_rat);
        prop_assert!(m_rat < interval.hi().pow(3));
        let bound = BigRational::new(BigInt::one(), BigInt::one() << (bits as usize));
        prop_assert!(interval.width() <= bound);

        // Doubling the precision nests inside the old interval.
        let finer = cbrt_bounds(m, bits * 2).unwrap();
        prop_assert!(finer.lo() >= interval.lo());
        prop_assert!(finer.hi() <= interval.hi());
        let finer_bound = BigRational::new(BigInt::one(), BigInt::one() << (2 * bits as usize));
        prop_assert!(finer.width() <= finer_bound);
    }

    #[test]
    fn residual_identities_randomized(m in arb_m(), p in 1i64..2_000_000, q in 1i64..2_000_000) {
        prop_assert!(cfladder::residual_identity_check(m, &BigInt::from(p), &BigInt::from(q)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn expansion_invariants(m in arb_m(), power_two in any::<bool>(), n in 4usize..24) {
        let power = if power_two { Power::Two } else { Power::One };
        let surd = Surd::new(m, power).unwrap();
        let expansion = Expansion::compute(surd, n);

        for index in 1..=n {
            prop_assert!(expansion.quotient(index) >= &BigInt::one());
        }
        for index in 0..=n {
            prop_assert!(expansion.determinant_identity(index).unwrap());
        }
        for index in 2..=n {
            prop_assert!(expansion.complete_quotient_identity(index).unwrap());
        }
        prop_assert!(expansion.sandwich_check());
        prop_assert!(expansion.relative_error_decreasing());
        prop_assert!(expansion.monotone_growth_check());
        prop_assert!(expansion.delta_bounds_all());

        // Convergents are coprime, a consequence of the determinant identity.
        use num_integer::Integer;
        for index in 0..n {
            let (p, q) = expansion.convergent(index as isize);
            prop_assert!(p.gcd(q).is_one());
        }
    }

    #[test]
    fn histogram_total_matches_stream_length(values in proptest::collection::vec(1u64..5000, 0..200), cutoff in 1u64..200) {
        let stream: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        let h = cfladder::histogram(stream, cutoff);
        prop_assert_eq!(h.total() as usize, values.len());
        let counted: u64 = h.counts().values().sum();
        prop_assert_eq!(counted + h.tail(), h.total());
    }
}
