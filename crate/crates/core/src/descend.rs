//! The hat operator on Z/2-valued functions and descendible periodicity.
//!
//! For `h : ℕ → Z/2` the hat is `ĥ(m) = Σ_{k=1}^{v₂(m)} h(m/2^k)` on even m
//! (the sum over the halving chain strictly below m). Periodicity of h does
//! not make ĥ periodic; the exact condition is *descendibility*: a
//! 2N-periodic h with support S₀ ⊔ S₁ in [1,N] ⊔ [N+1,2N] and
//! `T = Supp(χ̂_{S₀}) ∩ [1,2N]` is descendible 2N-periodic when for every
//! x ∈ [1,N] membership of N+x in S₁ matches the exclusive-or of `2x ∈ T`
//! and `N+x ∈ T`. Then ĥ is 2N-periodic iff h is descendible 2N-periodic,
//! and S₁ is forced by S₀, so descendible functions biject with subsets of
//! [1,N].

use num_integer::Integer;

use crate::numutil::valuation;
use crate::zetaparity::ParityFunction;

/// `ĥ(m)`: the mod-2 sum of h over the halving chain below m. Odd m have an
/// empty chain, hence hat value 0.
pub fn hat_value(h: &ParityFunction, m: u64) -> u8 {
    assert!(m >= 1, "hat is indexed from 1");
    let mut bit = 0u8;
    for k in 1..=valuation(m, 2) {
        bit ^= h.value(m >> k);
    }
    bit
}

/// Window of hat values at even arguments: `[ĥ(2), ĥ(4), …, ĥ(2·len)]`,
/// indexed by j = m/2.
pub fn hat_window(h: &ParityFunction, len: u64) -> Vec<u8> {
    (1..=len).map(|j| hat_value(h, 2 * j)).collect()
}

/// Whether ĥ is 2N-periodic on all even arguments, decided on a window:
/// checks `ĥ(2j) = ĥ(2j + 2N)` for j = 1..=window. Any window ≥ 2N is
/// conclusive, because the tail j > N of ĥ is always N-periodic in j (the
/// halving chains stabilize), so a verified window pins the whole function.
pub fn hat_is_periodic_on_window(h: &ParityFunction, n: u64, window: u64) -> bool {
    assert!(window >= 2 * n, "window must cover two periods");
    (1..=window).all(|j| hat_value(h, 2 * j) == hat_value(h, 2 * (j + n)))
}

/// The eventual variant: whether ĥ is 2N-periodic in the range ≥ 2N+1,
/// i.e. `ĥ(2j) = ĥ(2j + 2N)` for j = N+1..=window.
pub fn hat_is_eventually_periodic_on_window(h: &ParityFunction, n: u64, window: u64) -> bool {
    assert!(window >= 3 * n, "window must cover two periods past the threshold");
    (n + 1..=window).all(|j| hat_value(h, 2 * j) == hat_value(h, 2 * (j + n)))
}

/// `T = Supp(χ̂_{S₀}) ∩ [1,2N]` for S₀ ⊆ [1,N]: the even x ∈ [1,2N] whose
/// halving chain meets S₀ an odd number of times.
pub fn compute_t(s0: &[u64], n: u64) -> Vec<u64> {
    assert!(s0.iter().all(|&x| x >= 1 && x <= n), "S0 must lie in [1,N]");
    let mut t = Vec::new();
    for x in (2..=2 * n).step_by(2) {
        let hits = (1..=valuation(x, 2)).filter(|&k| s0.contains(&(x >> k))).count();
        if hits % 2 == 1 {
            t.push(x);
        }
    }
    t
}

/// The outcome of a descendibility check on a 2N-periodic function: the
/// support halves S₀, S₁, the chain-parity set T, and the verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendCert {
    pub n: u64,
    pub s0: Vec<u64>,
    pub s1: Vec<u64>,
    pub t: Vec<u64>,
    pub descendible: bool,
}

/// Checks descendibility of h as a 2N-periodic function (h must be purely
/// periodic with period dividing 2N), by the four membership conditions.
pub fn is_descendible(h: &ParityFunction, n: u64) -> DescendCert {
    assert!(n >= 1, "N must be positive");
    assert_eq!(h.preperiod_len(), 0, "descendibility needs a purely periodic function");
    assert_eq!(
        2 * n % h.period_len() as u64,
        0,
        "2N must be a period of the function"
    );
    let s0: Vec<u64> = (1..=n).filter(|&x| h.value(x) == 1).collect();
    let s1: Vec<u64> = (n + 1..=2 * n).filter(|&x| h.value(x) == 1).collect();
    let t = compute_t(&s0, n);

    let mut descendible = true;
    for x in 1..=n {
        let in_t_2x = t.contains(&(2 * x));
        let in_t_nx = t.contains(&(n + x));
        let in_s1 = s1.contains(&(n + x));
        let ok = match (in_t_2x, in_t_nx) {
            (true, true) => !in_s1,
            (true, false) => in_s1,
            (false, true) => in_s1,
            (false, false) => !in_s1,
        };
        if !ok {
            descendible = false;
        }
    }
    DescendCert { n, s0, s1, t, descendible }
}

/// Independent characterization of the same property: h is descendible
/// 2N-periodic iff for all x ∈ [1,N]
/// `χ_S(x) + χ_S(x+N) + χ_T(x) + χ_T(x+N) ≡ 0 (mod 2)`,
/// with S the full support in [1,2N].
pub fn descendible_by_balance(h: &ParityFunction, n: u64) -> bool {
    assert!(n >= 1, "N must be positive");
    assert_eq!(h.preperiod_len(), 0, "descendibility needs a purely periodic function");
    assert_eq!(2 * n % h.period_len() as u64, 0, "2N must be a period of the function");
    let s0: Vec<u64> = (1..=n).filter(|&x| h.value(x) == 1).collect();
    let t = compute_t(&s0, n);
    let chi_s = |x: u64| h.value(x);
    let chi_t = |x: u64| u8::from(t.contains(&x));
    (1..=n).all(|x| (chi_s(x) + chi_s(x + n) + chi_t(x) + chi_t(x + n)) % 2 == 0)
}

/// Builds the unique descendible 2N-periodic function with the given
/// support in [1,N]: the upper half is forced, N+x ∈ S₁ iff exactly one of
/// `2x ∈ T`, `N+x ∈ T` holds.
pub fn construct_descendible(s0: &[u64], n: u64) -> ParityFunction {
    assert!(n >= 1, "N must be positive");
    let t = compute_t(s0, n);
    let mut bits = vec![0u8; 2 * n as usize];
    for &x in s0 {
        bits[x as usize - 1] = 1;
    }
    for x in 1..=n {
        if t.contains(&(2 * x)) != t.contains(&(n + x)) {
            bits[(n + x) as usize - 1] = 1;
        }
    }
    ParityFunction::from_parts(vec![], bits)
}

/// For an eventually 2N-periodic h, the descendible 2N-periodic g that
/// agrees with h from 2N+1 on and has matching halving-chain sums
/// `Σ_{k≥0, 2^k·m ≤ 2N} h(2^k m) ≡ Σ_{k≥0, 2^k·m ≤ 2N} g(2^k m) (mod 2)`
/// for odd m ≤ 2N — if it exists. The candidate g is forced (it is the
/// periodic extension of h's tail), so this is a check, not a search.
pub fn essential_descent_witness(h: &ParityFunction, n: u64) -> Option<ParityFunction> {
    assert!(n >= 1, "N must be positive");
    if !(2 * n).is_multiple_of(h.period_len() as u64) {
        return None; // not eventually 2N-periodic at all
    }
    // g must agree with h from 2N+1 on; if h's preperiod reaches past 2N no
    // 2N-periodic function can do that.
    if h.preperiod_len() as u64 > 2 * n {
        return None;
    }
    let shift = 2 * n * (h.preperiod_len() as u64).div_ceil(2 * n);
    let bits: Vec<u8> = (1..=2 * n).map(|r| h.value(r + shift)).collect();
    let g = ParityFunction::from_parts(vec![], bits);

    if !is_descendible(&g, n).descendible {
        return None;
    }
    let chain_sum = |f: &ParityFunction, m: u64| -> u8 {
        let mut bit = 0u8;
        let mut x = m;
        while x <= 2 * n {
            bit ^= f.value(x);
            x *= 2;
        }
        bit
    };
    for m in (1..=2 * n).step_by(2) {
        if chain_sum(h, m) != chain_sum(&g, m) {
            return None;
        }
    }
    Some(g)
}

/// Whether h is essentially descendible 2N-periodic.
pub fn is_essentially_descendible(h: &ParityFunction, n: u64) -> bool {
    essential_descent_witness(h, n).is_some()
}

/// XORs descendible 2Nᵢ-periodic functions; the sum is descendible
/// 2·lcm(Nᵢ)-periodic. Inputs and output are verified, and the resulting
/// (h, N) pair is returned.
pub fn sum_descendible(items: &[(ParityFunction, u64)]) -> (ParityFunction, u64) {
    assert!(!items.is_empty(), "need at least one summand");
    let mut n_out = 1u64;
    for (h, n) in items {
        assert!(
            is_descendible(h, *n).descendible,
            "summand is not descendible 2*{n}-periodic"
        );
        n_out = n_out.lcm(n);
    }
    let mut sum = ParityFunction::zero();
    for (h, _) in items {
        sum = sum.combine(h, |a, b| a ^ b);
    }
    assert!(
        is_descendible(&sum, n_out).descendible,
        "sum of descendible functions must be descendible at the lcm period"
    );
    (sum, n_out)
}

/// Classifies all sixteen 4-periodic functions ℕ → Z/2 by whether their hat
/// is periodic. Returns the supports (as value bits at m = 1..4) of the
/// nonzero functions with periodic hat, plus whether the zero function's
/// hat is periodic (it is, trivially — reported separately since it is a
/// degenerate case). Each verdict is computed two ways: window periodicity
/// of ĥ and descendibility at some even N, and the routes must agree.
pub fn enumerate_4periodic_good() -> (Vec<[u8; 4]>, bool) {
    let mut good = Vec::new();
    let mut zero_good = false;
    for mask in 0u32..16 {
        let bits = [
            (mask & 1) as u8,
            ((mask >> 1) & 1) as u8,
            ((mask >> 2) & 1) as u8,
            ((mask >> 3) & 1) as u8,
        ];
        let h = ParityFunction::from_parts(vec![], bits.to_vec());

        // ĥ's tail is provably eventually periodic, so a bounded window
        // scan for some period ≤ 8 is conclusive for pure 4-periodic h.
        let window_good = (1..=8u64).any(|cand| {
            (1..=64u64).all(|j| hat_value(&h, 2 * j) == hat_value(&h, 2 * (j + cand)))
        });
        let descent_good = (1..=16u64)
            .filter(|k| 2 * k % h.period_len() as u64 == 0)
            .any(|k| is_descendible(&h, k).descendible);
        assert_eq!(
            window_good, descent_good,
            "hat-periodicity routes disagree for support bits {bits:?}"
        );

        if mask == 0 {
            zero_good = window_good;
        } else if window_good {
            good.push(bits);
        }
    }
    (good, zero_good)
}
