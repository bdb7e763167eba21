//! Two-point algebraic-geometry codes on the Giulietti-Korchmaros (GK)
//! maximal curves.
//!
//! The crate builds everything from exact finite-field arithmetic upward:
//!
//! * [`gf`] — arithmetic in GF(p^m) with deterministic modulus selection;
//! * [`curve`] — the GK curve, its rational points, point orbits and the
//!   pole orders of the monomial functions `y^i z^j / x^k`;
//! * [`semigroup`] — one- and two-point Weierstrass semigroups, the minimal
//!   generating set of `H(P0, Pinf)` by closed form and by monomial brute
//!   force, and lub-closure membership;
//! * [`rrspace`] — Riemann-Roch spaces of two-point divisors with exact
//!   dimensions from an evaluation-rank oracle;
//! * [`codes`] — the evaluation code, its dual, the Matthews minimum-distance
//!   improvement and code shortening;
//! * [`search`] — systematic searches for codes whose certified distance
//!   beats the designed (Goppa) bound;
//! * [`verify`] — a battery of cross-checks reproducing known parameter
//!   families, used by the `gkcodes verify` subcommand and the acceptance
//!   test suite.

pub mod codes;
pub mod curve;
pub mod gf;
pub mod matrix;
pub mod rrspace;
pub mod search;
pub mod semigroup;
pub mod verify;
