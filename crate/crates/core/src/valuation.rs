//! p-adic valuations, Legendre's formula, and the valuation `d(n, k)` of
//! the k-th term of the multinomial sum for `a(n)`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::{Error, Result};

/// A natural number or `+∞`. `+∞` is the valuation of zero and compares
/// greater than every natural. No arithmetic is defined on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtNat {
    Finite(u64),
    Infinite,
}

impl ExtNat {
    pub fn finite(self) -> Option<u64> {
        match self {
            ExtNat::Finite(v) => Some(v),
            ExtNat::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtNat::Infinite)
    }
}

impl Ord for ExtNat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtNat::Finite(a), ExtNat::Finite(b)) => a.cmp(b),
            (ExtNat::Finite(_), ExtNat::Infinite) => Ordering::Less,
            (ExtNat::Infinite, ExtNat::Finite(_)) => Ordering::Greater,
            (ExtNat::Infinite, ExtNat::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for ExtNat {
    fn from(v: u64) -> Self {
        ExtNat::Finite(v)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(v) => write!(f, "{v}"),
            ExtNat::Infinite => f.write_str("inf"),
        }
    }
}

/// `v_p(x)`: the largest `d` with `p^d | x`, or `+∞` for `x = 0`.
///
/// Strips powers `p, p^2, p^4, …` while they divide, then walks the same
/// ladder back down, so a valuation `d` costs `O(log d)` big divisions.
pub fn v_adic(x: &BigUint, p: u64) -> Result<ExtNat> {
    if p < 2 {
        return Err(Error::InvalidBase(p));
    }
    if x.is_zero() {
        return Ok(ExtNat::Infinite);
    }
    let mut rest = x.clone();
    let mut ladder = vec![BigUint::from(p)];
    let mut v = 0u64;
    loop {
        let j = ladder.len() - 1;
        let (q, r) = rest.div_rem(&ladder[j]);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1 << j;
        let next = &ladder[j] * &ladder[j];
        if next > rest {
            break;
        }
        ladder.push(next);
    }
    for j in (0..ladder.len()).rev() {
        let (q, r) = rest.div_rem(&ladder[j]);
        if r.is_zero() {
            rest = q;
            v += 1 << j;
        }
    }
    Ok(ExtNat::Finite(v))
}

/// Legendre's formula `v_p(n!) = Σ_{i≥1} ⌊n / p^i⌋`.
pub fn factorial_valuation(n: u64, p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::InvalidBase(p));
    }
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    Ok(total)
}

/// `d(n, k) = v_3(n! / ((n-2k)! k! k!) · 2^k · 3^(n-2k))` via
///
/// `d(n,k) = n - 2k + Σ_{i≥1} (⌊n/3^i⌋ - ⌊(n-2k)/3^i⌋ - 2⌊k/3^i⌋)`.
///
/// The sum runs while `3^i ≤ n`. Each summand is nonnegative.
pub fn term_valuation(n: u64, k: u64) -> Result<u64> {
    if k > n / 2 {
        return Err(Error::TermIndexOutOfRange { n, k });
    }
    let rest = n - 2 * k;
    let mut d = rest;
    let mut pw: u128 = 3;
    let n_wide = u128::from(n);
    while pw <= n_wide {
        // n = rest + k + k and ⌊x+y⌋ ≥ ⌊x⌋ + ⌊y⌋, so this never underflows.
        let summand = (n_wide / pw)
            .checked_sub(u128::from(rest) / pw + 2 * (u128::from(k) / pw))
            .expect("negative summand in d(n, k)");
        d += summand as u64;
        pw *= 3;
    }
    Ok(d)
}

/// Result of scanning `d(n, k)` over `0 ≤ k ≤ ⌊n/2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MinTermValuation {
    /// Smallest `k` attaining the minimum.
    pub argmin: u64,
    pub value: u64,
    /// Whether no other `k` attains the same value.
    pub unique: bool,
}

/// Minimum of `d(n, k)` over all terms, with its position and uniqueness.
///
/// When the minimum is unique, `v_3(a(n))` equals it.
pub fn min_term_valuation(n: u64) -> MinTermValuation {
    let mut best = MinTermValuation { argmin: 0, value: u64::MAX, unique: false };
    for k in 0..=n / 2 {
        let d = term_valuation(n, k).expect("k is in range");
        match d.cmp(&best.value) {
            Ordering::Less => best = MinTermValuation { argmin: k, value: d, unique: true },
            Ordering::Equal => best.unique = false,
            Ordering::Greater => {}
        }
    }
    best
}
