//! The Grothendieck–Witt ring of a finite field of odd characteristic and
//! truncated power series over it.
//!
//! For odd q, GW(F_q) ≅ Z[ε]/(ε², 2ε) with ε = ⟨u⟩ − ⟨1⟩ for a non-square u,
//! so every element is r + eε with r ∈ Z and e ∈ Z/2, and ⟨u⟩ = 1 + ε. A
//! series f ∈ t·GW(F_q)[[t]] splits as f = g + εh with g over Z and h over
//! Z/2, and the logarithmic derivative of 1/(1−f) obeys
//!
//! ```text
//! dlog 1/(1−f) = g′/(1−g) + ε·(h′ + (gh)′)/(1−g²)
//! ε·dlog 1/(1−f) = ε·g′/(1−g)
//! ```
//!
//! Consequently the ε-part of any dlog-rational series has t- and
//! t³-coefficients of equal parity (they are second and fourth power sums of
//! the same algebraic numbers), which is the obstruction test implemented
//! here.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::zetaparity::ParityFunction;

/// An element r·⟨1⟩ + e·ε of GW(F_q), q odd.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWElement {
    pub r: BigInt,
    pub e: u8,
}

impl GWElement {
    pub fn new(r: impl Into<BigInt>, e: u8) -> Self {
        GWElement { r: r.into(), e: e & 1 }
    }

    /// ⟨1⟩, the multiplicative unit.
    pub fn one() -> Self {
        GWElement::new(1, 0)
    }

    /// ε = ⟨u⟩ − ⟨1⟩.
    pub fn eps() -> Self {
        GWElement::new(0, 1)
    }

    /// ⟨u⟩ = 1 + ε, the class of a non-square.
    pub fn u_class() -> Self {
        GWElement::new(1, 1)
    }

    pub fn add(&self, other: &GWElement) -> GWElement {
        GWElement::new(&self.r + &other.r, self.e ^ other.e)
    }
}

/// Product under ε² = 0, 2ε = 0:
/// (r₁ + e₁ε)(r₂ + e₂ε) = r₁r₂ + (r₁e₂ + r₂e₁)ε.
pub fn gw_mul(x: &GWElement, y: &GWElement) -> GWElement {
    let r = &x.r * &y.r;
    let e = (u8::from(x.r.is_odd()) & y.e) ^ (u8::from(y.r.is_odd()) & x.e);
    GWElement::new(r, e)
}

// --- integer series helpers (index = power of t, truncated length) ---

fn d_int(f: &[BigInt]) -> Vec<BigInt> {
    (1..f.len()).map(|k| BigInt::from(k) * &f[k]).collect()
}

fn mul_int(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, ai) in a.iter().enumerate().take(len) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// num/(1−f) for f with zero constant term: s_k = num_k + Σ_{j≥1} f_j s_{k−j}.
fn div_by_one_minus_int(num: &[BigInt], f: &[BigInt], len: usize) -> Vec<BigInt> {
    assert!(f.is_empty() || f[0].is_zero());
    let mut s = vec![BigInt::zero(); len];
    for k in 0..len {
        let mut acc = num.get(k).cloned().unwrap_or_else(BigInt::zero);
        for j in 1..=k.min(f.len().saturating_sub(1)) {
            acc += &f[j] * &s[k - j];
        }
        s[k] = acc;
    }
    s
}

// --- mod-2 series helpers ---

fn d_f2(f: &[u8]) -> Vec<u8> {
    (1..f.len()).map(|k| (k as u8 & 1) & f[k]).collect()
}

fn mul_f2(a: &[u8], b: &[u8], len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for (i, &ai) in a.iter().enumerate().take(len) {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(len - i) {
            out[i + j] ^= bj;
        }
    }
    out
}

/// num/den over F₂[[t]] for den with constant term 1.
fn div_f2(num: &[u8], den: &[u8], len: usize) -> Vec<u8> {
    assert_eq!(den.first().copied().unwrap_or(0), 1);
    let mut s = vec![0u8; len];
    for k in 0..len {
        let mut bit = num.get(k).copied().unwrap_or(0);
        for j in 1..=k.min(den.len().saturating_sub(1)) {
            bit ^= den[j] & s[k - j];
        }
        s[k] = bit;
    }
    s
}

/// A truncated series over GW(F_q): coefficient of tᵏ is g[k] + ε·h[k] for
/// k = 0..=order. Both parts always have length order+1; ring operations
/// truncate at the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GWSeries {
    pub g: Vec<BigInt>,
    pub h: Vec<u8>,
}

impl GWSeries {
    pub fn zero(order: usize) -> Self {
        GWSeries { g: vec![BigInt::zero(); order + 1], h: vec![0; order + 1] }
    }

    pub fn from_parts(g: Vec<BigInt>, h: Vec<u8>) -> Self {
        assert_eq!(g.len(), h.len(), "integer and ε parts must share a truncation");
        assert!(!g.is_empty(), "a series carries at least the constant term");
        GWSeries { g, h: h.into_iter().map(|b| b & 1).collect() }
    }

    pub fn from_int_coeffs(g: Vec<BigInt>) -> Self {
        let h = vec![0; g.len()];
        GWSeries::from_parts(g, h)
    }

    /// Highest retained power of t.
    pub fn order(&self) -> usize {
        self.g.len() - 1
    }

    pub fn coeff(&self, k: usize) -> GWElement {
        GWElement::new(self.g[k].clone(), self.h[k])
    }

    pub fn add(&self, other: &GWSeries) -> GWSeries {
        let len = self.g.len().min(other.g.len());
        GWSeries {
            g: (0..len).map(|k| &self.g[k] + &other.g[k]).collect(),
            h: (0..len).map(|k| self.h[k] ^ other.h[k]).collect(),
        }
    }

    pub fn sub(&self, other: &GWSeries) -> GWSeries {
        let len = self.g.len().min(other.g.len());
        GWSeries {
            g: (0..len).map(|k| &self.g[k] - &other.g[k]).collect(),
            h: (0..len).map(|k| self.h[k] ^ other.h[k]).collect(),
        }
    }

    /// Truncated product: (g₁ + εh₁)(g₂ + εh₂) = g₁g₂ + ε(g₁h₂ + g₂h₁).
    pub fn mul(&self, other: &GWSeries) -> GWSeries {
        let len = self.g.len().min(other.g.len());
        let g = mul_int(&self.g, &other.g, len);
        let g1: Vec<u8> = self.g.iter().map(|c| u8::from(c.is_odd())).collect();
        let g2: Vec<u8> = other.g.iter().map(|c| u8::from(c.is_odd())).collect();
        let mut h = mul_f2(&g1, &other.h, len);
        for (bit, extra) in h.iter_mut().zip(mul_f2(&g2, &self.h, len)) {
            *bit ^= extra;
        }
        GWSeries { g, h }
    }

    /// Coefficientwise product with a ring element.
    pub fn scale(&self, c: &GWElement) -> GWSeries {
        let g: Vec<BigInt> = self.g.iter().map(|x| x * &c.r).collect();
        let h: Vec<u8> = self
            .g
            .iter()
            .zip(&self.h)
            .map(|(x, &e)| (u8::from(x.is_odd()) & c.e) ^ (u8::from(c.r.is_odd()) & e))
            .collect();
        GWSeries { g, h }
    }

    /// Formal derivative; the truncation drops by one.
    pub fn derivative(&self) -> GWSeries {
        assert!(self.order() >= 1, "cannot differentiate a constant truncation");
        GWSeries { g: d_int(&self.g), h: d_f2(&self.h) }
    }

    /// 1/(1−self) for a series with zero constant term, same truncation.
    pub fn inv_one_minus(&self) -> GWSeries {
        assert!(self.g[0].is_zero() && self.h[0] == 0, "needs zero constant term");
        let len = self.g.len();
        let mut inv = GWSeries::zero(len - 1);
        inv.g[0] = BigInt::one();
        for k in 1..len {
            let mut r = BigInt::zero();
            let mut e = 0u8;
            for j in 1..=k {
                let term = gw_mul(&self.coeff(j), &inv.coeff(k - j));
                r += term.r;
                e ^= term.e;
            }
            inv.g[k] = r;
            inv.h[k] = e;
        }
        inv
    }
}

/// dlog 1/(1−f) = f′/(1−f), truncated at order K−1 for input of order K.
///
/// Computed twice — once by direct division in GW-series arithmetic, once by
/// the split formula g′/(1−g) + ε(h′+(gh)′)/(1−g²) — and the two expansions
/// are asserted equal. Rejects a nonzero constant term.
pub fn series_dlog_inv(f: &GWSeries) -> GWSeries {
    assert!(
        f.g[0].is_zero() && f.h[0] == 0,
        "dlog 1/(1-f) needs f with zero constant term"
    );
    assert!(f.order() >= 1, "truncation too short to differentiate");
    let len = f.g.len() - 1;

    // Direct route: f′ · (1/(1−f)).
    let direct = f.derivative().mul(&f.inv_one_minus());

    // Split route: integer part over Z, ε-part over F₂.
    let ig = div_by_one_minus_int(&d_int(&f.g), &f.g, len);
    let gbits: Vec<u8> = f.g.iter().map(|c| u8::from(c.is_odd())).collect();
    let gh = mul_f2(&gbits, &f.h, len + 1);
    let mut num = d_f2(&f.h);
    num.resize(len, 0);
    for (bit, extra) in num.iter_mut().zip(d_f2(&gh)) {
        *bit ^= extra;
    }
    let mut den = mul_f2(&gbits, &gbits, len);
    den[0] ^= 1; // 1 − g², which is 1 + g² mod 2
    let ih = div_f2(&num, &den, len);

    assert_eq!(direct.g[..len], ig[..], "dlog routes disagree in the integer part");
    assert_eq!(direct.h[..len], ih[..], "dlog routes disagree in the ε part");
    GWSeries { g: ig, h: ih }
}

/// ε·dlog 1/(1−g) = ε·g′/(1−g) for an integer series g with zero constant
/// term: integer part zero, ε-part g′/(1−g) mod 2, truncated at order K−1.
pub fn eps_scaled_dlog(g: &[BigInt]) -> GWSeries {
    assert!(!g.is_empty() && g[0].is_zero(), "needs zero constant term");
    assert!(g.len() >= 2, "truncation too short to differentiate");
    let len = g.len() - 1;
    let gbits: Vec<u8> = g.iter().map(|c| u8::from(c.is_odd())).collect();
    let mut den = gbits.clone();
    den[0] ^= 1; // 1 − g mod 2
    let h = div_f2(&d_f2(&gbits), &den, len);
    GWSeries { g: vec![BigInt::zero(); len], h }
}

/// The parity obstruction to dlog rationality: in any dlog-rational series
/// the ε-coefficients of t and t³ agree mod 2, so a mismatch proves the
/// series is NOT dlog rational. Agreement decides nothing (necessary
/// condition only). Requires order ≥ 3.
pub fn dlog_rationality_obstruction(s: &GWSeries) -> bool {
    assert!(s.order() >= 3, "need the t^3 coefficient");
    s.h[1] != s.h[3]
}

/// An eventually periodic Z/2 series written as an exact rational function:
/// `P(t) + t^M·Q(t)/(1−t^N)`, with deg P < M and deg Q < N, matching a
/// parity function h via coefficient of t^{m−1} = h(m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalParityForm {
    /// Coefficients of P, one per preperiod position (index k ↔ tᵏ).
    pub poly: Vec<u8>,
    /// Coefficients of Q (index k ↔ tᵏ).
    pub num: Vec<u8>,
    /// N in the denominator 1−t^N.
    pub period: usize,
}

impl RationalParityForm {
    /// First `len` series coefficients (of t⁰..t^{len−1}).
    pub fn expand(&self, len: usize) -> Vec<u8> {
        let mut out = vec![0u8; len];
        for (k, &b) in self.poly.iter().enumerate().take(len) {
            out[k] = b;
        }
        let shift = self.poly.len();
        for (k, slot) in out.iter_mut().enumerate().skip(shift) {
            *slot = self.num[(k - shift) % self.period];
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.poly.iter().all(|&b| b == 0) && self.num.iter().all(|&b| b == 0)
    }
}

impl std::fmt::Display for RationalParityForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn monomial(k: usize) -> String {
            match k {
                0 => "1".into(),
                1 => "t".into(),
                _ => format!("t^{k}"),
            }
        }
        fn poly_string(bits: &[u8], shift: usize) -> Vec<String> {
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b == 1)
                .map(|(k, _)| monomial(k + shift))
                .collect()
        }
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces: Vec<String> = Vec::new();
        let p_terms = poly_string(&self.poly, 0);
        if !p_terms.is_empty() {
            pieces.push(p_terms.join(" + "));
        }
        let q_terms = poly_string(&self.num, self.poly.len());
        if !q_terms.is_empty() {
            let numerator = if q_terms.len() == 1 {
                q_terms[0].clone()
            } else {
                format!("({})", q_terms.join(" + "))
            };
            pieces.push(format!("{numerator}/(1 - t^{})", self.period));
        }
        write!(f, "{}", pieces.join(" + "))
    }
}

/// Writes a parity function as an exact rational function of t with
/// coefficient of t^{m−1} equal to h(m): `P(t) + t^M·Q(t)/(1−t^N)` with M, N
/// the normalized preperiod and period. The expansion is re-checked against
/// h over four periods past the preperiod.
pub fn parity_series_to_rational(h: &ParityFunction) -> RationalParityForm {
    let form = RationalParityForm {
        poly: h.preperiod_bits().to_vec(),
        num: h.period_bits().to_vec(),
        period: h.period_len(),
    };
    let window = h.preperiod_len() + 4 * h.period_len();
    let expanded = form.expand(window);
    for (k, &bit) in expanded.iter().enumerate() {
        assert_eq!(bit, h.value(k as u64 + 1), "rational form misrepresents the series");
    }
    form
}
