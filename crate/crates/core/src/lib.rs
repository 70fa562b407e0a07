//! Exact arithmetic for the central Delannoy numbers `a(n) = P_n(3)` and
//! their 3-adic valuations `b(n) = v_3(a(n))`.
//!
//! Every quantity is computed by more than one independent route so the
//! routes can be checked against each other:
//!
//! * [`numbers`] evaluates `a(n)` by the defining binomial sum, the
//!   multinomial (Barnes) sum, the convolution sum and the three-term
//!   Legendre recurrence.
//! * [`valuation`] holds p-adic valuations, Legendre's formula and the
//!   per-term valuation `d(n, k)` of the multinomial sum.
//! * [`digit_formula`] evaluates `b(n)` from the base-3 digits of `n`, in
//!   closed form and by two digit recurrences.
//! * [`linrep`] is a small k-regular sequence engine: matrix linear
//!   representations, kernel matrices and exact rank.
//! * [`verify`] runs the cross-checks as range sweeps, in parallel when the
//!   `parallel` feature is enabled (see [`sweep`]).

pub mod digit_formula;
pub mod error;
pub mod linrep;
pub mod numbers;
pub mod sweep;
pub mod valuation;
pub mod verify;

pub use error::{Error, Result};
pub use num_bigint::{BigInt, BigUint};
