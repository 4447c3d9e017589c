//! Exact arithmetic for Grothendieck–Witt-ring-valued `dlog` zeta series.
//!
//! Everything here is integer/rational arithmetic with no floating point:
//!
//! * [`powersum`] — power sums of the roots of a monic integer polynomial,
//!   computed two independent ways (Newton recurrence and a multinomial sum).
//! * [`zetaparity`] — the integer-valued functions `F(m, a)` and `G(m, a)`
//!   attached to a coefficient vector, their parities as eventually periodic
//!   functions, and support-set parsing/rendering.
//! * [`descend`] — the hat operator on parity functions, descendible
//!   periodicity, and the equivalence between the two.
//! * [`gwseries`] — power series over GW(F_q) for odd q (ring `Z ⊕ (Z/2)ε`,
//!   `ε² = 0`), logarithmic derivatives, and the dlog-rationality obstruction.
//! * [`a1zeta`] — point-count models from Weil data, naive elliptic-curve
//!   counting, the GW-valued dlog zeta series, and the worked identities.
//! * [`numutil`] — shared number-theoretic helpers (Möbius, valuations,
//!   binomial congruences).

pub mod a1zeta;
pub mod descend;
pub mod gwseries;
pub mod numutil;
pub mod powersum;
pub mod zetaparity;
