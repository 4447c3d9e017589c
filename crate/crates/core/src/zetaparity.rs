//! The integer-valued functions `F(m, a)` and `G(m, a)` attached to a
//! coefficient vector, their parities as eventually periodic functions, and
//! support sets.
//!
//! With `p_k` the k-th power sum of the roots (see [`crate::powersum`]):
//!
//! * `F(m, a) = Σ_{j|m} (−1)^j (p_j/j) Π_{p ∈ P(m/j)} (1 − 1/p)`, where
//!   `P(k)` is the set of primes dividing k. Equivalently
//!   `F(m, a) = (1/m) Σ_{j|m} (−1)^j φ(m/j) p_j`. Always an integer.
//! * `G(m, a) = (p_{2m} − p_m) / 2^{v₂(m)+1}`. Always an integer.
//!
//! Mod 2 these are tied together by `F(m, a) ≡ Σ_{k=1}^{v₂(m)} G(m/2^k, a)`
//! for even m, and `F(m, a) ≡ p_m` for odd m (the chain sum is empty and a
//! single signed power-sum term survives). The interesting parity object —
//! the one the periodicity bounds and the zeta correction series are about —
//! is the *even-argument* profile `j ↦ F(2j, a) mod 2`, eventually periodic
//! with period ≤ 2ⁿ − 1 (so 2N ≤ 2^{n+1} − 2 in the even argument 2j), and
//! purely periodic when `aₙ` is odd. `G(m, a) mod 2` is eventually periodic
//! over all of ℕ with period ≤ 2^{n+1} − 2.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::numutil::{divisors, prime_factors, valuation};
use crate::powersum::{CoeffVector, PowerSumSeq};

fn parity(x: &BigInt) -> u8 {
    u8::from(x.is_odd())
}

/// `F(m, a)` as an exact integer (m ≥ 1).
pub fn f_exact(a: &CoeffVector, m: u64) -> BigInt {
    f_exact_with(&mut PowerSumSeq::new(a.clone()), m)
}

pub(crate) fn f_exact_with(seq: &mut PowerSumSeq, m: u64) -> BigInt {
    assert!(m >= 1, "F is defined for m >= 1");
    let mut total = BigRational::zero();
    for j in divisors(m) {
        let pj = seq.power_sum(j);
        let signed = if j % 2 == 0 { pj } else { -pj };
        let mut term = BigRational::new(signed, BigInt::from(j));
        for p in prime_factors(m / j) {
            term *= BigRational::new(BigInt::from(p - 1), BigInt::from(p));
        }
        total += term;
    }
    assert!(total.is_integer(), "F(m, a) must be an integer");
    total.to_integer()
}

/// `G(m, a) = (p_{2m} − p_m) / 2^{v₂(m)+1}` as an exact integer (m ≥ 1).
pub fn g_exact(a: &CoeffVector, m: u64) -> BigInt {
    g_exact_with(&mut PowerSumSeq::new(a.clone()), m)
}

pub(crate) fn g_exact_with(seq: &mut PowerSumSeq, m: u64) -> BigInt {
    assert!(m >= 1, "G is defined for m >= 1");
    let num = seq.power_sum(2 * m) - seq.power_sum(m);
    let den = BigInt::from(2).pow(valuation(m, 2) + 1);
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "G(m, a) must be an integer");
    q
}

/// Parity of `F(m, a)` computed through the G-chain rather than from the
/// divisor sum: `Σ_{k=1}^{v₂(m)} G(m/2^k, a) mod 2` for even m, and
/// `p_m mod 2` for odd m (where the chain is empty). An independent route
/// to the same bit as `f_exact(a, m) mod 2`.
pub fn f_parity_via_g(a: &CoeffVector, m: u64) -> u8 {
    f_parity_via_g_with(&mut PowerSumSeq::new(a.clone()), m)
}

pub(crate) fn f_parity_via_g_with(seq: &mut PowerSumSeq, m: u64) -> u8 {
    assert!(m >= 1, "F is defined for m >= 1");
    let v = valuation(m, 2);
    let mut bit = 0u8;
    for k in 1..=v {
        bit ^= parity(&g_exact_with(seq, m >> k));
    }
    if v == 0 {
        bit ^= parity(&seq.power_sum(m));
    }
    bit
}

/// Closed form for the parity of `F(m, (a₁))` (single coefficient), by the
/// residue of a₁ mod 4: 0 → even everywhere; 1 → odd exactly at odd m;
/// 2 → odd exactly at m = 2; 3 → odd everywhere.
pub fn f_parity_closed_form_n1(a1: i64, m: u64) -> u8 {
    assert!(m >= 1, "F is defined for m >= 1");
    match a1.rem_euclid(4) {
        0 => 0,
        1 => u8::from(m % 2 == 1),
        2 => u8::from(m == 2),
        3 => 1,
        _ => unreachable!(),
    }
}

/// Component-wise reduction of the coefficient vector mod 4, into {0,1,2,3}.
/// F-parity (and, observably, G-parity) depend on the coefficients only
/// through this reduction.
pub fn reduce_mod4(a: &CoeffVector) -> CoeffVector {
    let four = BigInt::from(4);
    CoeffVector::new(a.coeffs().iter().map(|c| c.mod_floor(&four)).collect())
}

/// The even-argument F-parity profile: the eventually periodic function
/// `j ↦ F(2j, a) mod 2`. Its minimal period is ≤ 2ⁿ − 1, and its preperiod
/// is 0 when `aₙ` is odd.
pub fn f_parity_profile(a: &CoeffVector) -> ParityFunction {
    let bound = period_bound(a.n());
    let mut seq = PowerSumSeq::new(a.clone());
    let window = (8 * bound).max(32);
    let vals: Vec<u8> = (1..=window as u64)
        .map(|j| parity(&f_exact_with(&mut seq, 2 * j)))
        .collect();
    ParityFunction::from_window(&vals, bound)
}

/// The G-parity profile: the eventually periodic function
/// `m ↦ G(m, a) mod 2`, with minimal period ≤ 2^{n+1} − 2 and preperiod 0
/// when `aₙ` is odd.
pub fn g_parity_profile(a: &CoeffVector) -> ParityFunction {
    let bound = 2 * period_bound(a.n());
    let mut seq = PowerSumSeq::new(a.clone());
    let window = (8 * bound).max(32);
    let vals: Vec<u8> = (1..=window as u64)
        .map(|m| parity(&g_exact_with(&mut seq, m)))
        .collect();
    ParityFunction::from_window(&vals, bound)
}

/// The period bound 2ⁿ − 1 shared by the parity theorems.
pub fn period_bound(n: usize) -> usize {
    assert!(n >= 1 && n < usize::BITS as usize, "degree out of range");
    (1usize << n) - 1
}

/// Support of the even-argument F-parity, as a set of even numbers
/// (the arguments 2j at which F is odd).
pub fn f_support_set(a: &CoeffVector) -> SupportSet {
    SupportSet::from_indicator(f_parity_profile(a).stretch_double())
}

/// Support of the G-parity over all of ℕ.
pub fn g_support_set(a: &CoeffVector) -> SupportSet {
    SupportSet::from_indicator(g_parity_profile(a))
}

/// An eventually periodic function ℕ≥1 → Z/2 in canonical form: preperiod
/// bits (values at 1..=M) plus period bits (values at M+1..=M+N), with N
/// the minimal eventual period and M the minimal preperiod for that period.
/// Canonical forms are unique, so derived equality is equality of functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParityFunction {
    pre: Vec<u8>,
    per: Vec<u8>,
}

impl ParityFunction {
    /// Builds from explicit preperiod/period bit lists and normalizes.
    pub fn from_parts(pre: Vec<u8>, per: Vec<u8>) -> Self {
        assert!(!per.is_empty(), "period must be non-empty");
        assert!(
            pre.iter().chain(per.iter()).all(|&b| b <= 1),
            "bits must be 0 or 1"
        );
        let raw = |m: u64| -> u8 {
            let m = m as usize;
            if m <= pre.len() {
                pre[m - 1]
            } else {
                per[(m - pre.len() - 1) % per.len()]
            }
        };

        // Minimal eventual period divides any eventual period, so it is the
        // smallest divisor d of the given period that the cycle respects.
        let n0 = per.len();
        let d = divisors(n0 as u64)
            .into_iter()
            .map(|d| d as usize)
            .find(|&d| (d..n0).all(|i| per[i] == per[i - d]))
            .expect("n0 divides itself");

        // Minimal preperiod for period d: everything after the last m with
        // raw(m) != raw(m + d) belongs to the periodic tail.
        let mut m_min = 0usize;
        for m in (1..=pre.len()).rev() {
            if raw(m as u64) != raw(m as u64 + d as u64) {
                m_min = m;
                break;
            }
        }

        let pre_norm: Vec<u8> = (1..=m_min as u64).map(raw).collect();
        let per_norm: Vec<u8> = (m_min as u64 + 1..=(m_min + d) as u64).map(raw).collect();
        ParityFunction { pre: pre_norm, per: per_norm }
    }

    /// Extracts the canonical form from a window of values at m = 1..=len,
    /// trying periods 1..=max_period (smallest first) and preperiods small
    /// first. The found claim `f(m) = f(m+N) for m > M` is verified across
    /// the whole window, which must leave at least two periods of slack.
    ///
    /// Panics when no period ≤ max_period is certifiable — callers pass
    /// windows several times longer than the theorem-given bounds, so this
    /// signals a genuine bound violation (or an implementation bug), not a
    /// tuning problem.
    pub fn from_window(values: &[u8], max_period: usize) -> Self {
        assert!(max_period >= 1);
        assert!(
            values.len() >= 4 * max_period,
            "window too short to certify periods up to {max_period}"
        );
        // The preperiod cap leaves at least 2·max_period verified positions
        // past any candidate preperiod; a shorter tail could let a small
        // period match spuriously at the window edge.
        for n in 1..=max_period {
            for m in 0..=values.len() - 3 * max_period {
                if (m..values.len() - n).all(|i| values[i] == values[i + n]) {
                    return ParityFunction::from_parts(
                        values[..m].to_vec(),
                        values[m..m + n].to_vec(),
                    );
                }
            }
        }
        panic!("no eventual period <= {max_period} certifiable in window of {}", values.len());
    }

    /// Builds from a function by sampling a window of 8·max_period values
    /// (at least 32).
    pub fn from_fn(f: impl FnMut(u64) -> u8, max_period: usize) -> Self {
        let window = (8 * max_period).max(32);
        let vals: Vec<u8> = (1..=window as u64).map(f).collect();
        ParityFunction::from_window(&vals, max_period)
    }

    pub fn value(&self, m: u64) -> u8 {
        assert!(m >= 1, "parity functions are indexed from 1");
        let m = usize::try_from(m).expect("index fits in usize");
        if m <= self.pre.len() {
            self.pre[m - 1]
        } else {
            self.per[(m - self.pre.len() - 1) % self.per.len()]
        }
    }

    /// Minimal preperiod M.
    pub fn preperiod_len(&self) -> usize {
        self.pre.len()
    }

    /// Minimal eventual period N.
    pub fn period_len(&self) -> usize {
        self.per.len()
    }

    pub fn preperiod_bits(&self) -> &[u8] {
        &self.pre
    }

    pub fn period_bits(&self) -> &[u8] {
        &self.per
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.per == [0]
    }

    pub fn support_upto(&self, hi: u64) -> Vec<u64> {
        (1..=hi).filter(|&m| self.value(m) == 1).collect()
    }

    /// Reindexes j ↦ 2j: the function m ↦ [m even]·f(m/2).
    pub fn stretch_double(&self) -> ParityFunction {
        let m = self.pre.len();
        let n = self.per.len();
        let d = |i: u64| if i.is_multiple_of(2) { self.value(i / 2) } else { 0 };
        let pre: Vec<u8> = (1..=2 * m as u64).map(d).collect();
        let per: Vec<u8> = (2 * m as u64 + 1..=2 * (m + n) as u64).map(d).collect();
        ParityFunction::from_parts(pre, per)
    }

    /// Pointwise combination of two parity functions.
    pub fn combine(&self, other: &ParityFunction, op: impl Fn(u8, u8) -> u8) -> ParityFunction {
        let m = self.pre.len().max(other.pre.len());
        let n = self.per.len().lcm(&other.per.len());
        let f = |i: u64| {
            let b = op(self.value(i), other.value(i));
            assert!(b <= 1, "combination must return a bit");
            b
        };
        let pre: Vec<u8> = (1..=m as u64).map(f).collect();
        let per: Vec<u8> = (m as u64 + 1..=(m + n) as u64).map(f).collect();
        ParityFunction::from_parts(pre, per)
    }

    pub fn zero() -> ParityFunction {
        ParityFunction { pre: vec![], per: vec![0] }
    }
}

/// Which full column domain a support-set expression is read against;
/// only the bare `N` term (as in `N\{4}`) depends on it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// All of ℕ≥1.
    Naturals,
    /// The even numbers ≥ 2 (the domain of even-argument F-supports).
    EvenNaturals,
}

/// An eventually periodic subset of ℕ≥1, stored as its indicator
/// [`ParityFunction`]. Equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SupportSet {
    indicator: ParityFunction,
}

impl SupportSet {
    pub fn from_indicator(indicator: ParityFunction) -> Self {
        SupportSet { indicator }
    }

    pub fn empty() -> Self {
        SupportSet { indicator: ParityFunction::zero() }
    }

    pub fn from_members(members: &[u64]) -> Self {
        let hi = members.iter().copied().max().unwrap_or(0);
        let pre: Vec<u8> = (1..=hi).map(|m| u8::from(members.contains(&m))).collect();
        SupportSet { indicator: ParityFunction::from_parts(pre, vec![0]) }
    }

    /// The union of arithmetic classes {Pk + r : k ≥ k₀} over r in
    /// `residues` (each in 1..=P).
    pub fn from_classes(period: u64, residues: &[u64], k0: u64) -> Self {
        assert!(period >= 1, "class modulus must be positive");
        assert!(
            residues.iter().all(|&r| r >= 1 && r <= period),
            "residues must lie in 1..=modulus"
        );
        let offset = k0 * period;
        let pre = vec![0u8; usize::try_from(offset).expect("offset fits")];
        let per: Vec<u8> = (1..=period).map(|r| u8::from(residues.contains(&r))).collect();
        SupportSet { indicator: ParityFunction::from_parts(pre, per) }
    }

    pub fn indicator(&self) -> &ParityFunction {
        &self.indicator
    }

    pub fn contains(&self, m: u64) -> bool {
        self.indicator.value(m) == 1
    }

    pub fn is_empty(&self) -> bool {
        self.indicator.is_zero()
    }

    pub fn members_upto(&self, hi: u64) -> Vec<u64> {
        self.indicator.support_upto(hi)
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        SupportSet { indicator: self.indicator.combine(&other.indicator, |a, b| a | b) }
    }

    pub fn difference(&self, other: &SupportSet) -> SupportSet {
        SupportSet { indicator: self.indicator.combine(&other.indicator, |a, b| a & (1 - b)) }
    }

    pub fn symmetric_difference(&self, other: &SupportSet) -> SupportSet {
        SupportSet { indicator: self.indicator.combine(&other.indicator, |a, b| a ^ b) }
    }

    /// Parses an ASCII support expression. Grammar (whitespace-tolerant):
    ///
    /// * `{}` — empty set; `N` — the whole ambient domain;
    /// * `2N`, `4N`, … — multiples of the given number;
    /// * `{2,4,7}` — a finite set;
    /// * `{6k+4}` / `{6k+{2,4}}` / `{6k}`, optionally suffixed `_{k>=1}`
    ///   (default k ≥ 0) — arithmetic classes with residues in 1..=modulus;
    /// * `A U B` — union; `A \ B` — difference (binds last).
    pub fn parse(text: &str, ambient: Ambient) -> Result<SupportSet, String> {
        let text = text.trim();
        // Difference binds loosest; split on a backslash outside braces.
        if let Some(idx) = split_point(text, '\\') {
            let left = SupportSet::parse(&text[..idx], ambient)?;
            let right = SupportSet::parse(&text[idx + 1..], ambient)?;
            return Ok(left.difference(&right));
        }
        let mut parts = Vec::new();
        let mut rest = text;
        loop {
            match split_point(rest, 'U') {
                Some(idx) => {
                    parts.push(&rest[..idx]);
                    rest = &rest[idx + 1..];
                }
                None => {
                    parts.push(rest);
                    break;
                }
            }
        }
        let mut acc = SupportSet::empty();
        for part in parts {
            acc = acc.union(&parse_term(part.trim(), ambient)?);
        }
        Ok(acc)
    }

    /// Canonical rendering: a finite part below the class start, then
    /// arithmetic classes, e.g. `{2} U {2k+2}_{k>=2}`. Pure multiples
    /// collapse to `2N`, `4N`, … (minus finitely many, `2N\{4}`); the full
    /// domain renders as `N`; the empty set as `{}`.
    pub fn render(&self) -> String {
        let ind = &self.indicator;
        if ind.is_zero() {
            return "{}".to_string();
        }
        let m = ind.preperiod_len();
        let n = ind.period_len();
        let k0 = m.div_ceil(n);
        let cut = (n * k0) as u64;
        let finite: Vec<u64> = ind.support_upto(cut);
        let residues: Vec<u64> =
            (1..=n as u64).filter(|&r| ind.value(cut + r) == 1).collect();

        if residues.is_empty() {
            return render_finite(&finite);
        }

        // Multiples of n, possibly missing finitely many: nN or nN\{...}.
        if residues == [n as u64] && finite.iter().all(|&x| x % n as u64 == 0) {
            let base = if n == 1 { "N".to_string() } else { format!("{n}N") };
            let absences: Vec<u64> = (1..=k0 as u64)
                .map(|t| t * n as u64)
                .filter(|&x| ind.value(x) == 0)
                .collect();
            return if absences.is_empty() {
                base
            } else {
                format!("{base}\\{}", render_finite(&absences))
            };
        }

        // Extend the classes backward past the preperiod cut where the
        // pattern already holds, so e.g. {1,2,3,4} ∪ {2k+1}_{k≥2} reads
        // {2,4} ∪ {2k+1}_{k≥0}.
        let mut k0 = k0 as u64;
        'lower: while k0 > 0 {
            for &r in &residues {
                if ind.value((k0 - 1) * n as u64 + r) == 0 {
                    break 'lower;
                }
            }
            k0 -= 1;
        }
        let in_classes = |x: u64| {
            let r = (x - 1) % n as u64 + 1;
            residues.contains(&r) && (x - r) / n as u64 >= k0
        };
        let finite: Vec<u64> = finite.into_iter().filter(|&x| !in_classes(x)).collect();

        let class_part = if residues.len() == 1 {
            format!("{{{n}k+{}}}_{{k>={k0}}}", residues[0])
        } else {
            let rs: Vec<String> = residues.iter().map(|r| r.to_string()).collect();
            format!("{{{n}k+{{{}}}}}_{{k>={k0}}}", rs.join(","))
        };

        if finite.is_empty() {
            class_part
        } else {
            format!("{} U {}", render_finite(&finite), class_part)
        }
    }
}

impl std::fmt::Display for SupportSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_finite(members: &[u64]) -> String {
    let parts: Vec<String> = members.iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Position of the first top-level (outside any braces) occurrence of `c`.
fn split_point(text: &str, c: char) -> Option<usize> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ if ch == c && depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn parse_term(term: &str, ambient: Ambient) -> Result<SupportSet, String> {
    let term = term.trim();
    if term.is_empty() {
        return Err("empty term in support expression".to_string());
    }
    if term == "N" {
        return Ok(match ambient {
            Ambient::Naturals => SupportSet::from_classes(1, &[1], 0),
            Ambient::EvenNaturals => SupportSet::from_classes(2, &[2], 0),
        });
    }
    // kN — multiples of k.
    if let Some(multiple) = term.strip_suffix('N') {
        let k: u64 = multiple
            .parse()
            .map_err(|_| format!("bad multiple term {term:?}"))?;
        if k == 0 {
            return Err("0N is not a support term".to_string());
        }
        return Ok(SupportSet::from_classes(k, &[k], 0));
    }
    if !term.starts_with('{') {
        return Err(format!("unrecognized support term {term:?}"));
    }

    // Split off an optional `_{k>=k0}` suffix.
    let (body, k0) = match term.rfind("}_{") {
        Some(idx) => {
            let suffix = &term[idx + 3..];
            let suffix = suffix
                .strip_suffix('}')
                .ok_or_else(|| format!("unterminated class suffix in {term:?}"))?;
            let k0 = suffix
                .strip_prefix("k>=")
                .ok_or_else(|| format!("bad class suffix in {term:?}"))?
                .parse::<u64>()
                .map_err(|_| format!("bad class start in {term:?}"))?;
            (&term[..idx + 1], k0)
        }
        None => (term, 0),
    };
    let inner = body
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| format!("unbalanced braces in {term:?}"))?
        .trim();
    if inner.is_empty() {
        return Ok(SupportSet::empty());
    }

    if let Some(kpos) = inner.find("k+") {
        // Arithmetic class {Pk+r} or {Pk+{r1,...}}.
        let period: u64 = inner[..kpos]
            .trim()
            .parse()
            .map_err(|_| format!("bad class modulus in {term:?}"))?;
        let rtext = inner[kpos + 2..].trim();
        let residues = if rtext.starts_with('{') {
            let rs = rtext
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| format!("unbalanced residue braces in {term:?}"))?;
            parse_u64_list(rs)?
        } else {
            vec![rtext
                .parse::<u64>()
                .map_err(|_| format!("bad residue in {term:?}"))?]
        };
        if period == 0 || residues.iter().any(|&r| r < 1 || r > period) {
            return Err(format!("residues out of range in {term:?}"));
        }
        return Ok(SupportSet::from_classes(period, &residues, k0));
    }

    if let Some(ptext) = inner.strip_suffix('k') {
        // Bare multiple class {Pk}: the multiples of P from the k0-th one on
        // (k0 = 0 and 1 coincide, since 0 is not in the domain).
        let period: u64 = ptext
            .trim()
            .parse()
            .map_err(|_| format!("bad class modulus in {term:?}"))?;
        if period == 0 {
            return Err(format!("zero modulus in {term:?}"));
        }
        return Ok(SupportSet::from_classes(period, &[period], k0.saturating_sub(1)));
    }

    // Finite set.
    if k0 != 0 {
        return Err(format!("finite set with class suffix in {term:?}"));
    }
    let members = parse_u64_list(inner)?;
    Ok(SupportSet::from_members(&members))
}

fn parse_u64_list(text: &str) -> Result<Vec<u64>, String> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad number {:?} in support expression", s.trim()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cv(a: &[i64]) -> CoeffVector {
        CoeffVector::from_i64(a)
    }

    #[test]
    fn f_exact_small_values() {
        assert_eq!(f_exact(&cv(&[2]), 2), BigInt::from(1));
        assert_eq!(f_exact(&cv(&[2]), 4), BigInt::from(4));
        assert_eq!(f_exact(&cv(&[2]), 6), BigInt::from(10));
        assert_eq!(f_exact(&cv(&[3]), 2), BigInt::from(3));
        assert_eq!(f_exact(&cv(&[3]), 3), BigInt::from(-11));
        assert_eq!(f_exact(&cv(&[1, 0]), 1), BigInt::from(-1));
    }

    #[test]
    fn f_vanishes_for_zero_polynomial() {
        // X²: every power sum vanishes, so F does too.
        for m in 1..=20 {
            assert_eq!(f_exact(&cv(&[0, 0]), m), BigInt::zero());
        }
    }

    #[test]
    fn g_exact_small_values() {
        assert_eq!(g_exact(&cv(&[2]), 1), BigInt::from(1));
        assert_eq!(g_exact(&cv(&[2]), 2), BigInt::from(3));
        assert_eq!(g_exact(&cv(&[2]), 3), BigInt::from(28));
        // For sixth roots of unity the G-parities land on {6k+1, 6k+5}.
        let a = cv(&[1, 1]);
        let odd: Vec<u64> = (1..=24).filter(|&m| g_exact(&a, m).is_odd()).collect();
        assert_eq!(odd, vec![1, 5, 7, 11, 13, 17, 19, 23]);
    }

    #[test]
    fn f_parity_routes_agree() {
        // The divisor-sum route and the G-chain route compute the same bit,
        // odd arguments included.
        for a1 in -4i64..=4 {
            for a2 in -4i64..=4 {
                let a = cv(&[a1, a2]);
                for m in 1..=48 {
                    assert_eq!(
                        parity(&f_exact(&a, m)),
                        f_parity_via_g(&a, m),
                        "mismatch at a = ({a1},{a2}), m = {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_n1_matches_exact() {
        for a1 in -9i64..=9 {
            let a = cv(&[a1]);
            for m in 1..=32 {
                assert_eq!(
                    f_parity_closed_form_n1(a1, m),
                    parity(&f_exact(&a, m)),
                    "mismatch at a1 = {a1}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn closed_form_n1_support_elements() {
        // a ≡ 2 (mod 4): the only odd value is at m = 2.
        assert_eq!(f_parity_closed_form_n1(2, 2), 1);
        assert_eq!(f_parity_closed_form_n1(2, 4), 0);
        // a ≡ 3: odd everywhere; a ≡ 1: odd exactly at odd m.
        assert_eq!(f_parity_closed_form_n1(3, 5), 1);
        assert_eq!(f_parity_closed_form_n1(1, 5), 1);
        assert_eq!(f_parity_closed_form_n1(1, 6), 0);
        assert_eq!(f_parity_closed_form_n1(0, 7), 0);
    }

    #[test]
    fn reduce_mod4_examples() {
        assert_eq!(reduce_mod4(&cv(&[-3, 5])), cv(&[1, 1]));
        assert_eq!(reduce_mod4(&cv(&[4, 5])), cv(&[0, 1]));
        assert_eq!(reduce_mod4(&cv(&[-1, -4, 7])), cv(&[3, 0, 3]));
    }

    #[test]
    fn f_profile_fourth_roots() {
        // a = (0,1): F(2j) is odd exactly when 2j ≡ 2 (mod 4), i.e. j odd.
        let prof = f_parity_profile(&cv(&[0, 1]));
        assert_eq!(prof.preperiod_len(), 0);
        assert_eq!(prof.period_bits(), &[1, 0]);
    }

    #[test]
    fn f_profile_sixth_roots() {
        // a = (1,1): F(2j) odd iff 2j ≡ 2, 4 (mod 6) iff j ≡ 1, 2 (mod 3).
        let prof = f_parity_profile(&cv(&[1, 1]));
        assert_eq!(prof.preperiod_len(), 0);
        assert_eq!(prof.period_bits(), &[1, 1, 0]);
    }

    #[test]
    fn g_profile_even_coefficient_has_preperiod() {
        // a = (2): G odd exactly at m ∈ {1, 2}.
        let prof = g_parity_profile(&cv(&[2]));
        assert_eq!(prof.preperiod_bits(), &[1, 1]);
        assert_eq!(prof.period_bits(), &[0]);
    }

    #[test]
    fn profiles_are_pure_when_last_coefficient_is_odd() {
        for a in [&[3][..], &[1, 1], &[2, 3], &[0, 1], &[1, 2, 3], &[3, 3, 3]] {
            let a = cv(a);
            assert_eq!(f_parity_profile(&a).preperiod_len(), 0, "F profile of {a}");
            assert_eq!(g_parity_profile(&a).preperiod_len(), 0, "G profile of {a}");
        }
    }

    #[test]
    fn profile_periods_respect_bounds() {
        for a1 in 0i64..=3 {
            for a2 in 0i64..=3 {
                let a = cv(&[a1, a2]);
                assert!(f_parity_profile(&a).period_len() <= 3);
                assert!(g_parity_profile(&a).period_len() <= 6);
            }
        }
    }

    #[test]
    fn support_sets_match_tables_for_n1() {
        assert_eq!(f_support_set(&cv(&[0])).render(), "{}");
        assert_eq!(f_support_set(&cv(&[1])).render(), "{}");
        assert_eq!(f_support_set(&cv(&[2])).render(), "{2}");
        assert_eq!(f_support_set(&cv(&[3])).render(), "2N");
        assert_eq!(g_support_set(&cv(&[2])).render(), "{1,2}");
        assert_eq!(g_support_set(&cv(&[3])).render(), "{2k+1}_{k>=0}");
    }

    #[test]
    fn parity_function_normalizes() {
        // Pre bits that continue the alternation fold into the period.
        let f = ParityFunction::from_parts(vec![1, 0, 1, 0, 1], vec![0, 1, 0, 1]);
        assert_eq!(f.preperiod_len(), 0);
        assert_eq!(f.period_bits(), &[1, 0]);
        // A genuine length-1 preperiod survives.
        let g = ParityFunction::from_parts(vec![1, 1], vec![0, 1]);
        assert_eq!(g.preperiod_bits(), &[1]);
        assert_eq!(g.period_bits(), &[1, 0]);
        // A constant disguised as period 6.
        let h = ParityFunction::from_parts(vec![], vec![1; 6]);
        assert_eq!(h.period_len(), 1);
        assert_eq!(h.preperiod_len(), 0);
    }

    #[test]
    fn parity_function_from_window_finds_minimal_form() {
        // Values 1,1,0 then alternating 0,1: preperiod 3 (since f(3) = 0
        // breaks the alternation), period [0,1] phased at m = 4.
        let mut vals = vec![1, 1, 0];
        vals.extend(std::iter::repeat_n([0, 1], 20).flatten());
        let f = ParityFunction::from_window(&vals, 4);
        assert_eq!(f.preperiod_bits(), &[1, 1, 0]);
        assert_eq!(f.period_bits(), &[0, 1]);
        assert_eq!(f.value(2), 1);
        assert_eq!(f.value(4), 0);
        assert_eq!(f.value(5), 1);
    }

    #[test]
    fn stretch_double_reindexes() {
        // j ↦ [j odd] doubles to m ↦ [m ≡ 2 mod 4].
        let f = ParityFunction::from_parts(vec![], vec![1, 0]);
        let d = f.stretch_double();
        assert_eq!(d.value(2), 1);
        assert_eq!(d.value(4), 0);
        assert_eq!(d.value(6), 1);
        assert_eq!(d.value(3), 0);
        assert_eq!(d.period_len(), 4);
    }

    #[test]
    fn support_parse_and_render_basics() {
        let amb = Ambient::Naturals;
        assert!(SupportSet::parse("{}", amb).unwrap().is_empty());
        let finite = SupportSet::parse("{1,2}", amb).unwrap();
        assert_eq!(finite.members_upto(10), vec![1, 2]);
        let odds = SupportSet::parse("{2k+1}", amb).unwrap();
        assert_eq!(odds.members_upto(7), vec![1, 3, 5, 7]);
        let shifted = SupportSet::parse("{6k+{2,4}}_{k>=1}", amb).unwrap();
        assert_eq!(shifted.members_upto(17), vec![8, 10, 14, 16]);
        let evens = SupportSet::parse("2N", amb).unwrap();
        assert_eq!(evens.members_upto(6), vec![2, 4, 6]);
        assert_eq!(evens.render(), "2N");
        // Bare multiple classes, with and without a start index.
        let sixes = SupportSet::parse("{6k}_{k>=1}", amb).unwrap();
        assert_eq!(sixes, SupportSet::parse("6N", amb).unwrap());
        let late_evens = SupportSet::parse("{2k}_{k>=2}", amb).unwrap();
        assert_eq!(late_evens.members_upto(8), vec![4, 6, 8]);
    }

    #[test]
    fn support_parse_difference_respects_ambient() {
        let f_col = SupportSet::parse("N\\{4}", Ambient::EvenNaturals).unwrap();
        assert_eq!(f_col.members_upto(10), vec![2, 6, 8, 10]);
        let g_col = SupportSet::parse("N\\{4}", Ambient::Naturals).unwrap();
        assert_eq!(g_col.members_upto(6), vec![1, 2, 3, 5, 6]);
    }

    #[test]
    fn support_render_handles_exceptions() {
        // A multiples lattice minus a point keeps the difference notation.
        let s = SupportSet::parse("2N", Ambient::Naturals)
            .unwrap()
            .difference(&SupportSet::from_members(&[4]));
        assert_eq!(s.render(), "2N\\{4}");
        let back = SupportSet::parse(&s.render(), Ambient::Naturals).unwrap();
        assert_eq!(back, s);
        // Finite exceptions off the class lattice stay a leading union part.
        let t = SupportSet::from_members(&[1])
            .union(&SupportSet::parse("{4k+2}_{k>=1}", Ambient::Naturals).unwrap());
        assert_eq!(t.render(), "{1} U {4k+2}_{k>=1}");
        let back = SupportSet::parse(&t.render(), Ambient::Naturals).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn support_set_operations() {
        let odds = SupportSet::parse("{2k+1}", Ambient::Naturals).unwrap();
        let all = SupportSet::parse("N", Ambient::Naturals).unwrap();
        let evens = all.difference(&odds);
        assert_eq!(evens.render(), "2N");
        assert_eq!(odds.union(&evens), all);
        assert_eq!(odds.symmetric_difference(&all), evens);
    }

    proptest! {
        #[test]
        fn f_parity_routes_agree_on_cubics(
            coeffs in proptest::collection::vec(-4i64..=4, 3),
            m in 1u64..=24,
        ) {
            let a = cv(&coeffs);
            prop_assert_eq!(parity(&f_exact(&a, m)), f_parity_via_g(&a, m));
        }

        #[test]
        fn parity_function_roundtrips_through_window(
            pre in proptest::collection::vec(0u8..=1, 0..=4),
            per in proptest::collection::vec(0u8..=1, 1..=5),
        ) {
            let f = ParityFunction::from_parts(pre, per);
            let window: Vec<u8> = (1..=64).map(|m| f.value(m)).collect();
            let g = ParityFunction::from_window(&window, 8);
            prop_assert_eq!(f, g);
        }

        #[test]
        fn mod4_reduction_preserves_f_parity(
            coeffs in proptest::collection::vec(-8i64..=8, 1..=3),
            m in 1u64..=16,
        ) {
            let a = cv(&coeffs);
            let r = reduce_mod4(&a);
            prop_assert_eq!(parity(&f_exact(&a, m)), parity(&f_exact(&r, m)));
        }

        #[test]
        fn mod4_reduction_preserves_g_parity(
            coeffs in proptest::collection::vec(-8i64..=8, 1..=3),
            m in 1u64..=16,
        ) {
            let a = cv(&coeffs);
            let r = reduce_mod4(&a);
            prop_assert_eq!(g_exact(&a, m).is_odd(), g_exact(&r, m).is_odd());
        }
    }
}
