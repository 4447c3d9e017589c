//! Power sums of the roots of a monic integer polynomial, computed two
//! independent ways.
//!
//! A [`CoeffVector`] `(a₁, …, aₙ)` stands for the polynomial
//! `Xⁿ − a₁Xⁿ⁻¹ + a₂Xⁿ⁻² − ⋯ + (−1)ⁿaₙ`, so `aᵢ` is the i-th elementary
//! symmetric function of the roots `θ₁, …, θₙ`. The k-th power sum is
//! `p_k = θ₁^k + ⋯ + θₙ^k ∈ Z`.
//!
//! [`PowerSumSeq`] evaluates `p_k` by Newton's recurrence; the standalone
//! [`power_sum_multinomial`] evaluates the same quantity from the explicit
//! multinomial expansion of `log(1 − a₁t + a₂t² − ⋯)`. The two routes share
//! no code and are checked against each other in the test suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numutil::factorial;

/// Elementary-symmetric-function coefficients `(a₁, …, aₙ)`, n ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffVector(Vec<BigInt>);

impl CoeffVector {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "coefficient vector must have n >= 1");
        CoeffVector(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Degree n of the polynomial (= number of roots with multiplicity).
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// The i-th coefficient (1-indexed); zero for i > n.
    pub fn coeff(&self, i: usize) -> BigInt {
        assert!(i >= 1, "coefficients are 1-indexed");
        self.0.get(i - 1).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    /// Coefficient vector of the product polynomial, i.e. of the disjoint
    /// union of the two root multisets. With the alternating-sign
    /// convention this is the plain convolution of `(1, a₁, …, aₙ)` with
    /// `(1, b₁, …, b_m)`.
    pub fn product(&self, other: &CoeffVector) -> CoeffVector {
        let n = self.n();
        let m = other.n();
        let mut out = vec![BigInt::zero(); n + m];
        for k in 1..=(n + m) {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                let ai = if i == 0 { BigInt::one() } else { self.coeff(i) };
                let bj = if k - i == 0 { BigInt::one() } else { other.coeff(k - i) };
                acc += ai * bj;
            }
            out[k - 1] = acc;
        }
        CoeffVector(out)
    }
}

impl std::fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Memoizing power-sum sequence for a fixed coefficient vector, driven by
/// Newton's recurrence:
///
/// * `p_k = a₁p_{k−1} − a₂p_{k−2} + ⋯ + (−1)^{k−2}a_{k−1}p₁ + (−1)^{k−1}·k·aₖ`
///   for `1 ≤ k ≤ n`,
/// * `p_k = Σ_{i=1}^{n} (−1)^{i−1} aᵢ p_{k−i}` for `k > n`,
///
/// with `p₀ = n`.
pub struct PowerSumSeq {
    a: CoeffVector,
    memo: Vec<BigInt>,
}

impl PowerSumSeq {
    pub fn new(a: CoeffVector) -> Self {
        let p0 = BigInt::from(a.n());
        PowerSumSeq { a, memo: vec![p0] }
    }

    pub fn coeffs(&self) -> &CoeffVector {
        &self.a
    }

    /// The power sum `p_k`, extending the memo table as needed.
    pub fn power_sum(&mut self, k: u64) -> BigInt {
        let k = usize::try_from(k).expect("power-sum index fits in usize");
        let n = self.a.n();
        while self.memo.len() <= k {
            let j = self.memo.len();
            let mut acc = BigInt::zero();
            for i in 1..=j.min(n) {
                let term = self.a.coeff(i) * &self.memo[j - i];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            if j <= n {
                // The i = j term uses p₀ scaled down: (−1)^{j−1}·j·a_j
                // replaces (−1)^{j−1}·a_j·p₀ in the truncated recurrence.
                let correction = self.a.coeff(j) * BigInt::from(j);
                let with_p0 = self.a.coeff(j) * BigInt::from(n);
                let adjust = correction - with_p0;
                if j % 2 == 1 {
                    acc += adjust;
                } else {
                    acc -= adjust;
                }
            }
            self.memo.push(acc);
        }
        self.memo[k].clone()
    }
}

/// Independent evaluation of the power sum `p_m` (m ≥ 1) from the
/// multinomial expansion:
///
/// `p_m = (−1)^m · m · Σ ((r₁+⋯+r_m−1)!/(r₁!⋯r_m!)) · Π (−aᵢ)^{rᵢ}`,
///
/// summed over all `(r₁, …, r_m)` with `r₁ + 2r₂ + ⋯ + m·r_m = m` and
/// `aᵢ = 0` for `i > n`. Branches whose factor `(−aᵢ)^{rᵢ}` vanishes are
/// skipped — an exact-zero-term skip, not a change of formula. Individual
/// terms are rational; the assembled sum is asserted integral.
pub fn power_sum_multinomial(a: &CoeffVector, m: u64) -> BigInt {
    assert!(m >= 1, "multinomial power sum needs m >= 1");
    let m = usize::try_from(m).expect("power-sum index fits in usize");

    // Indices that can carry a positive multiplicity without killing the term.
    let live: Vec<usize> = (1..=m.min(a.n())).filter(|&i| !a.coeff(i).is_zero()).collect();

    let mut total = BigRational::zero();
    // Backtrack over multiplicities for each live index.
    fn walk(
        a: &CoeffVector,
        live: &[usize],
        pos: usize,
        weight_left: usize,
        rs: &mut Vec<(usize, u64)>,
        total: &mut BigRational,
    ) {
        if weight_left == 0 {
            if rs.is_empty() {
                return;
            }
            let big_r: u64 = rs.iter().map(|&(_, r)| r).sum();
            let mut denom = BigInt::one();
            let mut prod = BigInt::one();
            for &(i, r) in rs.iter() {
                denom *= factorial(r);
                let neg_ai = -a.coeff(i);
                prod *= neg_ai.pow(u32::try_from(r).expect("multiplicity fits in u32"));
            }
            *total += BigRational::new(factorial(big_r - 1) * prod, denom);
            return;
        }
        if pos == live.len() {
            return;
        }
        let i = live[pos];
        let max_r = weight_left / i;
        for r in 0..=max_r {
            if r > 0 {
                rs.push((i, r as u64));
            }
            walk(a, live, pos + 1, weight_left - i * r, rs, total);
            if r > 0 {
                rs.pop();
            }
        }
    }
    let mut rs = Vec::new();
    walk(a, &live, 0, m, &mut rs, &mut total);

    let signed = if m % 2 == 0 { total } else { -total };
    let scaled = signed * BigRational::from(BigInt::from(m));
    assert!(scaled.is_integer(), "assembled multinomial power sum must be an integer");
    scaled.to_integer()
}

/// Checks the prime-power lifting congruence
/// `(−1)^{p^v} p_{p^v} ≡ (−1)^{p^{v−1}} p_{p^{v−1}} (mod p^v)` for v ≥ 1.
pub fn check_fermat_congruence(a: &CoeffVector, p: u64, v: u32) -> bool {
    assert!(p >= 2 && v >= 1, "need a prime base and v >= 1");
    let hi = p.checked_pow(v).expect("p^v fits in u64");
    let lo = p.pow(v - 1);
    let mut seq = PowerSumSeq::new(a.clone());
    let sign = |e: u64, x: BigInt| if e.is_multiple_of(2) { x } else { -x };
    let lhs = sign(hi, seq.power_sum(hi));
    let rhs = sign(lo, seq.power_sum(lo));
    ((lhs - rhs) % BigInt::from(hi)).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(a: &[i64], k: u64) -> i64 {
        use num_traits::ToPrimitive;
        let mut seq = PowerSumSeq::new(CoeffVector::from_i64(a));
        seq.power_sum(k).to_i64().unwrap()
    }

    #[test]
    fn newton_quadratic_with_complex_roots() {
        // X² − 2X + 3: p₀ = 2, p₁ = 2, p₂ = −2, p₃ = −10.
        assert_eq!(p(&[2, 3], 0), 2);
        assert_eq!(p(&[2, 3], 1), 2);
        assert_eq!(p(&[2, 3], 2), -2);
        assert_eq!(p(&[2, 3], 3), -10);
    }

    #[test]
    fn newton_single_root_gives_powers() {
        for k in 0u64..=12 {
            assert_eq!(p(&[3], k), 3i64.pow(k as u32));
        }
    }

    #[test]
    fn newton_fourth_roots_cycle() {
        // X² + 1 has roots ±i: power sums cycle 0, −2, 0, 2.
        let cycle = [0i64, -2, 0, 2];
        for k in 1u64..=16 {
            assert_eq!(p(&[0, 1], k), cycle[(k as usize - 1) % 4], "k = {k}");
        }
    }

    #[test]
    fn newton_sixth_roots_cycle() {
        // X² − X + 1 has primitive sixth roots of unity: period 6.
        let cycle = [1i64, -1, -2, -1, 1, 2];
        for k in 1u64..=24 {
            assert_eq!(p(&[1, 1], k), cycle[(k as usize - 1) % 6], "k = {k}");
        }
    }

    #[test]
    fn newton_with_zero_trailing_coefficient() {
        // X² = (X − 0)²: all positive power sums vanish.
        for k in 1u64..=8 {
            assert_eq!(p(&[0, 0], k), 0);
        }
    }

    #[test]
    fn multinomial_small_examples() {
        let a = CoeffVector::from_i64(&[3]);
        assert_eq!(power_sum_multinomial(&a, 2), BigInt::from(9));
        let a = CoeffVector::from_i64(&[2, 3]);
        assert_eq!(power_sum_multinomial(&a, 3), BigInt::from(-10));
        let a = CoeffVector::from_i64(&[0, 1]);
        assert_eq!(power_sum_multinomial(&a, 4), BigInt::from(2));
    }

    #[test]
    fn multinomial_agrees_with_newton_smoke() {
        for a1 in -3i64..=3 {
            for a2 in -3i64..=3 {
                let a = CoeffVector::from_i64(&[a1, a2]);
                let mut seq = PowerSumSeq::new(a.clone());
                for m in 1u64..=12 {
                    assert_eq!(
                        power_sum_multinomial(&a, m),
                        seq.power_sum(m),
                        "mismatch at a = ({a1},{a2}), m = {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn product_convolves_coefficients() {
        // (X² − 2X + 3)(X − 1) = X³ − 3X² + 5X − 3.
        let f = CoeffVector::from_i64(&[2, 3]);
        let g = CoeffVector::from_i64(&[1]);
        assert_eq!(f.product(&g), CoeffVector::from_i64(&[3, 5, 3]));
    }

    #[test]
    fn fermat_congruence_sweep() {
        for a1 in -4i64..=4 {
            for a2 in -4i64..=4 {
                let a = CoeffVector::from_i64(&[a1, a2]);
                for &(pr, v) in &[(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
                    assert!(
                        check_fermat_congruence(&a, pr, v),
                        "failed at a = ({a1},{a2}), p = {pr}, v = {v}"
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn power_sums_add_over_products(
            f in proptest::collection::vec(-5i64..=5, 1..=3),
            g in proptest::collection::vec(-5i64..=5, 1..=3),
            k in 0u64..=20,
        ) {
            let cf = CoeffVector::from_i64(&f);
            let cg = CoeffVector::from_i64(&g);
            let mut sf = PowerSumSeq::new(cf.clone());
            let mut sg = PowerSumSeq::new(cg.clone());
            let mut sp = PowerSumSeq::new(cf.product(&cg));
            prop_assert_eq!(sp.power_sum(k), sf.power_sum(k) + sg.power_sum(k));
        }

        #[test]
        fn multinomial_agrees_with_newton(
            coeffs in proptest::collection::vec(-4i64..=4, 1..=3),
            m in 1u64..=10,
        ) {
            let a = CoeffVector::from_i64(&coeffs);
            let mut seq = PowerSumSeq::new(a.clone());
            prop_assert_eq!(power_sum_multinomial(&a, m), seq.power_sum(m));
        }
    }
}
