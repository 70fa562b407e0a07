//! The central Delannoy numbers `a(n) = P_n(3) = Σ C(n,k) C(n+k,k)`.
//!
//! Four evaluators are provided. The three closed sums are kept free of any
//! shared cache so they stay independent of each other; each one walks its
//! own running product over `k`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
///
/// Uses the running product `C(n-k+i, i) = C(n-k+i-1, i-1) * (n-k+i) / i`,
/// where every intermediate value is itself a binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let base = n - k;
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= base + i;
        acc /= i;
    }
    acc
}

/// `a(n)` straight from the definition `Σ_{k=0}^{n} C(n,k) C(n+k,k)`.
///
/// This is the reference every other evaluator is checked against.
pub fn apery_direct(n: u64) -> BigUint {
    let mut sum = BigUint::zero();
    // c_lo = C(n, k), c_hi = C(n + k, k)
    let mut c_lo = BigUint::one();
    let mut c_hi = BigUint::one();
    for k in 0..=n {
        sum += &c_lo * &c_hi;
        if k < n {
            c_lo *= n - k;
            c_lo /= k + 1;
            c_hi *= n + k + 1;
            c_hi /= k + 1;
        }
    }
    sum
}

/// `a(n)` from the multinomial sum
/// `Σ_{k=0}^{⌊n/2⌋} n! / ((k!)^2 (n-2k)!) · 2^k · 3^(n-2k)`.
///
/// The multinomial coefficient is advanced by
/// `M(k+1) = M(k) · (n-2k)(n-2k-1) / (k+1)^2`; every division is checked
/// for exactness and a remainder is reported as [`Error::InexactDivision`].
pub fn apery_barnes(n: u64) -> Result<BigUint> {
    let half = n / 2;
    let mut sum = BigUint::zero();
    let mut multinomial = BigUint::one();
    let mut pow3 = BigUint::from(3u8).pow(n_to_u32(n)?);
    for k in 0..=half {
        sum += (&multinomial << k) * &pow3;
        if k == half {
            break;
        }
        multinomial *= n - 2 * k;
        multinomial *= n - 2 * k - 1;
        multinomial = exact_div(multinomial, k + 1, "multinomial coefficient")?;
        multinomial = exact_div(multinomial, k + 1, "multinomial coefficient")?;
        pow3 = exact_div(pow3, 9, "power of three")?;
    }
    Ok(sum)
}

/// `a(n)` as the coefficient of `x^n` in `(1+x)^n (2+x)^n`, written as the
/// convolution `Σ_{i=0}^{n} C(n,i) C(n,n-i) 2^(n-i)`.
pub fn apery_convolution(n: u64) -> BigUint {
    let mut sum = BigUint::zero();
    // left = C(n, i), right = C(n, n - i); both advanced independently
    let mut left = BigUint::one();
    let mut right = BigUint::one();
    for i in 0..=n {
        sum += (&left * &right) << (n - i);
        if i < n {
            left *= n - i;
            left /= i + 1;
            // C(n, n-i-1) = C(n, n-i) * (n-i) / (i+1)
            right *= n - i;
            right /= i + 1;
        }
    }
    sum
}

/// `[a(0), …, a(n_max)]` from the Legendre recurrence at `x = 3`:
/// `(n+1) a(n+1) = 3(2n+1) a(n) - n a(n-1)`.
pub fn apery_recurrence_range(n_max: u64) -> Result<Vec<BigUint>> {
    let len = usize::try_from(n_max)
        .ok()
        .and_then(|n| n.checked_add(1))
        .ok_or(Error::Overflow("recurrence prefix length"))?;
    let mut out = Vec::with_capacity(len);
    out.push(BigUint::one());
    if n_max == 0 {
        return Ok(out);
    }
    out.push(BigUint::from(3u8));
    for n in 1..n_max {
        let idx = n as usize;
        let next = &out[idx] * (3 * (2 * n + 1)) - &out[idx - 1] * n;
        out.push(exact_div(next, n + 1, "three-term recurrence")?);
    }
    Ok(out)
}

fn exact_div(x: BigUint, d: u64, what: &'static str) -> Result<BigUint> {
    let (q, r) = x.div_rem(&BigUint::from(d));
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision(what))
    }
}

fn n_to_u32(n: u64) -> Result<u32> {
    u32::try_from(n).map_err(|_| Error::Overflow("exponent does not fit in u32"))
}
