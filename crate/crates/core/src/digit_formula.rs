//! Base-3 digit machinery and the digit-level evaluators of
//! `b(n) = v_3(a(n))`.
//!
//! Everything here works for any [`Natural`], so `n` may be a `u64` or an
//! arbitrarily large [`BigUint`](num_bigint::BigUint). `m`, the index of the
//! leading ternary digit, always comes from the digit vector length.

use std::collections::HashMap;
use std::sync::RwLock;

use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive};

use crate::valuation::term_valuation;
use crate::{Error, Result};

/// Unsigned integer types the digit evaluators accept.
pub trait Natural: Integer + Clone + FromPrimitive + ToPrimitive {}

impl<T: Integer + Clone + FromPrimitive + ToPrimitive> Natural for T {}

/// Digits of `n` in the given base, least significant first; empty for 0.
pub fn radix_digits<T: Natural>(n: &T, base: u32) -> Vec<u32> {
    assert!(base >= 2, "radix must be at least 2");
    let radix = T::from_u32(base).expect("radix fits the integer type");
    let mut digits = Vec::new();
    let mut rest = n.clone();
    while !rest.is_zero() {
        let (q, d) = rest.div_rem(&radix);
        digits.push(d.to_u32().expect("digit below radix"));
        rest = q;
    }
    digits
}

/// Base-3 expansion `n = Σ n(j) 3^j`, least significant digit first.
///
/// Empty exactly when `n = 0`; otherwise the last digit is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TernaryExpansion {
    digits: Vec<u8>,
}

impl TernaryExpansion {
    pub fn from_digits(digits: Vec<u8>) -> Result<Self> {
        if let Some(bad) = digits.iter().find(|&&d| d > 2) {
            return Err(Error::InvalidDigits(format!("digit {bad} is not in {{0,1,2}}")));
        }
        if digits.last() == Some(&0) {
            return Err(Error::InvalidDigits("leading (most significant) digit is zero".into()));
        }
        Ok(TernaryExpansion { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Index `m` of the leading digit, `None` for `n = 0`.
    pub fn top_index(&self) -> Option<usize> {
        self.digits.len().checked_sub(1)
    }

    pub fn reconstruct<T: Natural>(&self) -> T {
        let three = T::from_u8(3).unwrap();
        self.digits
            .iter()
            .rev()
            .fold(T::zero(), |acc, &d| acc * three.clone() + T::from_u8(d).unwrap())
    }

    /// Digits most significant first, `"0"` for the empty expansion.
    pub fn to_msd_string(&self) -> String {
        if self.digits.is_empty() {
            return "0".to_string();
        }
        self.digits.iter().rev().map(|d| char::from(b'0' + d)).collect()
    }
}

pub fn ternary_digits<T: Natural>(n: &T) -> TernaryExpansion {
    let digits = radix_digits(n, 3).into_iter().map(|d| d as u8).collect();
    TernaryExpansion { digits }
}

/// Positions `s_1 < … < s_r` (stored zero-based as `s[0..r]`) of the
/// ternary digits equal to 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OnesProfile {
    pub r: usize,
    pub s: Vec<usize>,
}

pub fn ones_profile(e: &TernaryExpansion) -> OnesProfile {
    let s: Vec<usize> = e
        .digits
        .iter()
        .enumerate()
        .filter_map(|(j, &d)| (d == 1).then_some(j))
        .collect();
    OnesProfile { r: s.len(), s }
}

/// `Σ_{i=1}^{r} (-1)^(r-i) · (s_i + shift)` in a signed accumulator.
fn alternating_sum(s: &[usize], shift: i64) -> i64 {
    let r = s.len();
    s.iter()
        .enumerate()
        .map(|(idx, &si)| {
            let term = si as i64 + shift;
            // 1-based index i = idx + 1, so r - i = r - 1 - idx
            if (r - 1 - idx).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Closed form `b(n) = (n mod 2) + Σ_{i=1}^{r} (-1)^(r-i) s_i`.
pub fn b_closed<T: Natural>(n: &T) -> u64 {
    let profile = ones_profile(&ternary_digits(n));
    let total = i64::from(n.is_odd()) + alternating_sum(&profile.s, 0);
    assert!(total >= 0, "closed form produced a negative valuation");
    total as u64
}

/// Second closed form `b(n) = Σ_{i=1}^{r} (-1)^(r-i) (s_i + 1)`.
pub fn b_closed_alt<T: Natural>(n: &T) -> u64 {
    let profile = ones_profile(&ternary_digits(n));
    let total = alternating_sum(&profile.s, 1);
    assert!(total >= 0, "closed form produced a negative valuation");
    total as u64
}

/// `b(n)` by the two-level recurrence with base `b(0) = 0`:
///
/// * `n ≡ 0, 2 (mod 3)`: `b(n) = b(⌊n/3⌋) + (⌊n/3⌋ mod 2)`
/// * `n ≡ 1 (mod 3)`:    `b(n) = b(⌊n/9⌋) + 1`
///
/// The recursion is tail-shaped, so it is unrolled into a loop that keeps
/// the stack flat for very long inputs.
pub fn b_rec_two_level<T: Natural>(n: &T) -> u64 {
    let three = T::from_u8(3).unwrap();
    let mut rest = n.clone();
    let mut acc = 0u64;
    while !rest.is_zero() {
        let (q, d) = rest.div_rem(&three);
        if d.is_one() {
            acc += 1;
            rest = q.div_floor(&three);
        } else {
            acc += u64::from(q.is_odd());
            rest = q;
        }
    }
    acc
}

/// `b(n)` by the single-digit recurrence with base `b(0) = 0`:
///
/// * `n ≡ 0, 2 (mod 3)`: `b(n) = b(⌊n/3⌋) + (⌊n/3⌋ mod 2)`
/// * `n ≡ 1 (mod 3)`:    `b(n) = b(⌊n/3⌋) + 1 - (⌊n/3⌋ mod 2)`
pub fn b_rec_one_level<T: Natural>(n: &T) -> u64 {
    let three = T::from_u8(3).unwrap();
    let mut rest = n.clone();
    let mut acc = 0u64;
    while !rest.is_zero() {
        let (q, d) = rest.div_rem(&three);
        let q_odd = u64::from(q.is_odd());
        acc += if d.is_one() { 1 - q_odd } else { q_odd };
        rest = q;
    }
    acc
}

/// Memo table for the recurrences in sweep workloads.
///
/// Shared access is synchronized, so one cache may serve a parallel sweep.
/// Give each recurrence its own cache: a table filled by one route must not
/// answer lookups for the other.
#[derive(Debug, Default)]
pub struct MemoCache {
    table: RwLock<HashMap<u64, u64>>,
}

impl MemoCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, n: u64) -> Option<u64> {
        self.table.read().unwrap().get(&n).copied()
    }

    fn put(&self, n: u64, v: u64) {
        self.table.write().unwrap().insert(n, v);
    }
}

/// [`b_rec_two_level`] with memoization, as genuine recursion.
pub fn b_rec_two_level_memo(n: u64, cache: &MemoCache) -> u64 {
    if n == 0 {
        return 0;
    }
    if let Some(v) = cache.get(n) {
        return v;
    }
    let q = n / 3;
    let v = if n % 3 == 1 {
        b_rec_two_level_memo(n / 9, cache) + 1
    } else {
        b_rec_two_level_memo(q, cache) + q % 2
    };
    cache.put(n, v);
    v
}

/// [`b_rec_one_level`] with memoization, as genuine recursion.
pub fn b_rec_one_level_memo(n: u64, cache: &MemoCache) -> u64 {
    if n == 0 {
        return 0;
    }
    if let Some(v) = cache.get(n) {
        return v;
    }
    let q = n / 3;
    let below = b_rec_one_level_memo(q, cache);
    let v = if n % 3 == 1 { below + 1 - q % 2 } else { below + q % 2 };
    cache.put(n, v);
    v
}

/// Support of `α_1 … α_m` predicted from the ones profile alone.
///
/// `α_i = 1` exactly when `s_{r-2j-1} < i ≤ s_{r-2j}` for some `j`, with
/// `0 ≤ j < r/2` and `s_0 = -1` when `r` is even, and
/// `0 ≤ j ≤ (r-1)/2` and `s_0 = 0` when `r` is odd.
pub fn predicted_alpha_support(profile: &OnesProfile, m: usize) -> Vec<u8> {
    let r = profile.r;
    let s_at = |idx: usize| -> i64 {
        match idx {
            0 if r.is_multiple_of(2) => -1,
            0 => 0,
            _ => profile.s[idx - 1] as i64,
        }
    };
    let pairs = if r.is_multiple_of(2) { r / 2 } else { (r - 1) / 2 + 1 };
    let mut support = vec![0u8; m];
    for j in 0..pairs {
        let lo = s_at(r - 2 * j - 1);
        let hi = s_at(r - 2 * j);
        for i in (lo + 1)..=hi {
            if (1..=m as i64).contains(&i) {
                support[i as usize - 1] = 1;
            }
        }
    }
    support
}

/// `[α_1, …, α_m]` with `α_i = ⌊n/3^i⌋ - 2⌊⌊n/2⌋/3^i⌋`.
///
/// Checks that every entry is 0 or 1, that the support matches
/// [`predicted_alpha_support`], and that
/// `d(n, ⌊n/2⌋) = (n mod 2) + Σ α_i`. Any failure is reported as
/// [`Error::InvariantViolation`].
pub fn alpha_profile(n: u64) -> Result<Vec<u8>> {
    if n == 0 {
        return Err(Error::ZeroArgument("alpha_profile"));
    }
    let expansion = ternary_digits(&n);
    let m = expansion.top_index().expect("n >= 1");
    let half = n / 2;
    let mut alphas = Vec::with_capacity(m);
    let mut pw = 1u128;
    for i in 1..=m {
        pw *= 3;
        let alpha = i128::try_from(u128::from(n) / pw).unwrap()
            - 2 * i128::try_from(u128::from(half) / pw).unwrap();
        if !(0..=1).contains(&alpha) {
            return Err(Error::InvariantViolation(format!("alpha_{i}({n}) = {alpha}")));
        }
        alphas.push(alpha as u8);
    }

    let predicted = predicted_alpha_support(&ones_profile(&expansion), m);
    if predicted != alphas {
        return Err(Error::InvariantViolation(format!(
            "alpha support for n = {n} is {alphas:?}, interval structure predicts {predicted:?}"
        )));
    }

    let d = term_valuation(n, half)?;
    let rhs = n % 2 + alphas.iter().map(|&a| u64::from(a)).sum::<u64>();
    if d != rhs {
        return Err(Error::InvariantViolation(format!(
            "d({n}, {half}) = {d} but (n mod 2) + sum(alpha) = {rhs}"
        )));
    }
    Ok(alphas)
}
