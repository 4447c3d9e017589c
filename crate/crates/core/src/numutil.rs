//! Shared number-theoretic helpers: Möbius function, divisor enumeration,
//! p-adic valuations, exact binomial coefficients, and the binomial/factorial
//! congruences the parity arguments lean on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Möbius function μ(n): zero when n has a squared prime factor, otherwise
/// (−1)^(number of distinct prime factors).
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "mobius(0) is undefined");
    let mut rest = n;
    let mut count = 0u32;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return 0;
            }
            count += 1;
        }
        p += 1;
    }
    if rest > 1 {
        count += 1;
    }
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Distinct prime factors of n in increasing order; empty for n = 1.
pub fn prime_factors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "prime_factors(0) is undefined");
    let mut rest = n;
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            out.push(p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

/// All positive divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors(0) is undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// p-adic valuation v_p(n): the exponent of p dividing n.
pub fn valuation(n: u64, p: u64) -> u32 {
    assert!(n >= 1, "valuation of 0 is infinite");
    assert!(p >= 2, "valuation base must be at least 2");
    let mut rest = n;
    let mut v = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        v += 1;
    }
    v
}

/// Exact binomial coefficient C(n, k); zero when k > n.
///
/// Computed multiplicatively as Π (n−k+i)/i for i = 1..k, where every
/// intermediate division is exact.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= BigInt::from(n - k + i);
        let (q, r) = num_integer::Integer::div_rem(&acc, &BigInt::from(i));
        debug_assert!(r.is_zero(), "binomial product must divide exactly");
        acc = q;
    }
    acc
}

/// Checks the prime-scaling congruence C(pa+pb, pa) ≡ C(a+b, a) (mod p).
pub fn check_binom_scaling(p: u64, a: u64, b: u64) -> bool {
    assert!(p >= 2, "modulus must be at least 2");
    let lhs = binom(p * a + p * b, p * a);
    let rhs = binom(a + b, a);
    let p = BigInt::from(p);
    (lhs - rhs) % p == BigInt::zero()
}

/// Checks that the first 2^s binomial coefficients are mod-2 periodic in the
/// top index with period 2^s: C(m + 2^s, i) ≡ C(m, i) (mod 2) for 0 ≤ i < 2^s.
pub fn check_binom_period2(m: u64, s: u32) -> bool {
    assert!(s >= 1, "period exponent must be at least 1");
    let step = 1u64 << s;
    let two = BigInt::from(2);
    (0..step).all(|i| (binom(m + step, i) - binom(m, i)) % &two == BigInt::zero())
}

pub(crate) fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// The defect D = (pR−1)!/Π(p·rᵢ)! − (1/p)·(R−1)!/Πrᵢ! where R = Σrᵢ.
///
/// For p prime this lands in Z_(p) (no p in the reduced denominator), which
/// is what makes the power-sum lifting congruence work; see
/// [`is_p_integral`] for the check.
pub fn factorial_ratio_defect(p: u64, rs: &[u64]) -> BigRational {
    assert!(p >= 2, "scaling factor must be at least 2");
    assert!(!rs.is_empty(), "need at least one multiplicity");
    assert!(rs.iter().all(|&r| r >= 1), "multiplicities must be positive");
    let total: u64 = rs.iter().sum();

    let mut scaled_den = BigInt::one();
    for &r in rs {
        scaled_den *= factorial(p * r);
    }
    let scaled = BigRational::new(factorial(p * total - 1), scaled_den);

    let mut plain_den = BigInt::from(p);
    for &r in rs {
        plain_den *= factorial(r);
    }
    let plain = BigRational::new(factorial(total - 1), plain_den);

    scaled - plain
}

/// Whether q has no p in its reduced denominator, i.e. q ∈ Z_(p).
pub fn is_p_integral(q: &BigRational, p: u64) -> bool {
    (q.denom().abs() % BigInt::from(p)) != BigInt::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(2), -1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(6), 1);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }

    #[test]
    fn mobius_divisor_sums_vanish() {
        // Σ_{d|n} μ(d) is 1 at n = 1 and 0 beyond.
        for n in 1u64..=10_000 {
            let s: i64 = divisors(n).iter().map(|&d| mobius(d) as i64).sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 }, "failed at n = {n}");
        }
    }

    #[test]
    fn prime_factors_small_values() {
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(12), vec![2, 3]);
        assert_eq!(prime_factors(30), vec![2, 3, 5]);
        assert_eq!(prime_factors(97), vec![97]);
    }

    #[test]
    fn divisors_are_sorted_and_complete() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    fn valuation_small_values() {
        assert_eq!(valuation(12, 2), 2);
        assert_eq!(valuation(12, 3), 1);
        assert_eq!(valuation(5, 3), 0);
        assert_eq!(valuation(1, 2), 0);
        assert_eq!(valuation(1024, 2), 10);
    }

    #[test]
    fn binom_small_values() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(0, 0), BigInt::from(1));
        assert_eq!(binom(3, 5), BigInt::from(0));
        assert_eq!(binom(10, 5), BigInt::from(252));
    }

    #[test]
    fn binom_rows_sum_to_powers_of_two() {
        for n in 0u64..=40 {
            let total: BigInt = (0..=n).map(|k| binom(n, k)).sum();
            assert_eq!(total, BigInt::from(2).pow(n as u32));
        }
    }

    #[test]
    fn binom_scaling_congruence_sweep() {
        assert!(check_binom_scaling(3, 2, 1));
        assert!(check_binom_scaling(5, 3, 2));
        for &p in &[2u64, 3, 5, 7, 11] {
            for a in 0..=8 {
                for b in 0..=8 {
                    assert!(check_binom_scaling(p, a, b), "failed at p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn binom_period2_congruence_sweep() {
        assert!(check_binom_period2(5, 2));
        for m in 0u64..=64 {
            for s in 1..=5 {
                assert!(check_binom_period2(m, s), "failed at m={m} s={s}");
            }
        }
    }

    #[test]
    fn factorial_defect_example() {
        // p = 3, rs = [1,1]: 5!/(3!·3!) − (1/3)·1!/(1!·1!) = 10/3 − 1/3 = 3.
        let d = factorial_ratio_defect(3, &[1, 1]);
        assert_eq!(d, BigRational::from(BigInt::from(3)));
        assert!(is_p_integral(&d, 3));
    }

    #[test]
    fn factorial_defect_is_p_integral_sweep() {
        // The defect stays p-integral for prime p across small multiplicity
        // vectors; this is the congruence behind power-sum lifting.
        let vectors: &[&[u64]] = &[
            &[1],
            &[2],
            &[3],
            &[1, 1],
            &[1, 2],
            &[2, 2],
            &[1, 1, 1],
            &[1, 1, 2],
            &[3, 1],
            &[1, 2, 3],
            &[2, 2, 2],
            &[4, 1],
        ];
        for &p in &[2u64, 3, 5, 7] {
            for rs in vectors {
                let d = factorial_ratio_defect(p, rs);
                assert!(is_p_integral(&d, p), "defect not {p}-integral for rs={rs:?}");
            }
        }
    }

    #[test]
    fn factorial_defect_needs_prime_scaling() {
        // With composite scaling the guarantee evaporates: p = 6, rs = [1,1]
        // gives 11!/(6!·6!) − 1/6 = 77 − 1/6 = 461/6, not integral at 2 or 3.
        let d = factorial_ratio_defect(6, &[1, 1]);
        assert_eq!(d, BigRational::new(BigInt::from(461), BigInt::from(6)));
        assert!(!is_p_integral(&d, 2));
        assert!(!is_p_integral(&d, 3));
    }

    proptest! {
        #[test]
        fn mobius_is_multiplicative_on_coprimes(a in 1u64..200, b in 1u64..200) {
            prop_assume!(num_integer::gcd(a, b) == 1);
            prop_assert_eq!(mobius(a * b), mobius(a) * mobius(b));
        }

        #[test]
        fn valuation_splits_products(n in 1u64..10_000, m in 1u64..10_000, pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            prop_assert_eq!(valuation(n * m, p), valuation(n, p) + valuation(m, p));
        }

        #[test]
        fn binom_pascal_rule(n in 1u64..80, k in 1u64..80) {
            prop_assume!(k <= n);
            prop_assert_eq!(binom(n, k), binom(n - 1, k - 1) + binom(n - 1, k));
        }

        #[test]
        fn divisors_multiply_back(n in 1u64..5_000) {
            for d in divisors(n) {
                prop_assert_eq!(n % d, 0);
            }
            let count = divisors(n).len();
            let brute = (1..=n).filter(|d| n % d == 0).count();
            prop_assert_eq!(count, brute);
        }
    }

    #[test]
    fn factorial_matches_iterative_product() {
        let mut acc = 1u128;
        for n in 1u64..=20 {
            acc *= n as u128;
            assert_eq!(factorial(n).to_u128(), Some(acc));
        }
    }
}
