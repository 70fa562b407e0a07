//! Cross-method verification suites over ranges of `n`.
//!
//! Each suite compares independent routes to the same quantity at every
//! `n` in `lo..=hi` and reports the smallest disagreeing `n`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};

use crate::digit_formula::{b_closed, b_closed_alt, b_rec_one_level, b_rec_two_level};
use crate::linrep::{valuation_representation, LinearRep};
use crate::numbers::{apery_barnes, apery_convolution, apery_direct, apery_recurrence_range};
use crate::sweep::find_first;
use crate::valuation::{min_term_valuation, v_adic};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    /// direct = Barnes = convolution = recurrence for `a(n)`.
    AMethods,
    /// closed = closed-alt = two-level = one-level = linear representation.
    BMethods,
    /// Closed form against `v_3` of the directly summed `a(n)`.
    BVsOracle,
    /// `min_k d(n,k)` is attained only at `⌊n/2⌋` and equals `b(n)`.
    MinValuation,
    /// `V(3n+k) = μ(k) V(n)` for the valuation representation.
    LinrepRelation,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::AMethods,
        Suite::BMethods,
        Suite::BVsOracle,
        Suite::MinValuation,
        Suite::LinrepRelation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::AMethods => "a-methods",
            Suite::BMethods => "b-methods",
            Suite::BVsOracle => "b-vs-oracle",
            Suite::MinValuation => "min-valuation",
            Suite::LinrepRelation => "linrep-relation",
        }
    }

    /// Default upper end of the sweep, sized to the per-point cost.
    pub fn default_hi(self) -> u64 {
        match self {
            Suite::AMethods | Suite::BVsOracle => 2000,
            Suite::BMethods => 1_000_000,
            Suite::MinValuation => 1500,
            Suite::LinrepRelation => 100_000,
        }
    }

    pub fn methods(self) -> &'static [&'static str] {
        match self {
            Suite::AMethods => &["direct", "barnes", "convolution", "recurrence"],
            Suite::BMethods => &["closed", "closed-alt", "thm1", "thm3", "linrep"],
            Suite::BVsOracle => &["closed", "oracle"],
            Suite::MinValuation => &["min-term", "closed"],
            Suite::LinrepRelation => &["linrep", "closed"],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub n: u64,
    pub lhs_method: String,
    pub lhs: String,
    pub rhs_method: String,
    pub rhs: String,
}

impl Mismatch {
    fn new(n: u64, lhs_method: &str, lhs: impl ToString, rhs_method: &str, rhs: impl ToString) -> Self {
        Mismatch {
            n,
            lhs_method: lhs_method.to_string(),
            lhs: lhs.to_string(),
            rhs_method: rhs_method.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suite: Suite,
    pub lo: u64,
    pub hi: u64,
    pub methods_compared: Vec<String>,
    pub first_mismatch: Option<Mismatch>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

pub fn run_suite(suite: Suite, lo: u64, hi: u64) -> Result<VerifyReport> {
    run_suite_with(suite, lo, hi, &valuation_representation())
}

/// As [`run_suite`], with the linear representation supplied by the caller
/// (used by `b-methods` and `linrep-relation`).
pub fn run_suite_with(suite: Suite, lo: u64, hi: u64, rep: &LinearRep) -> Result<VerifyReport> {
    if lo > hi {
        return Err(Error::EmptyRange { lo, hi });
    }
    let start = Instant::now();
    let first_mismatch = match suite {
        Suite::AMethods => a_methods(lo, hi)?,
        Suite::BMethods => find_first(lo, hi, |n| b_methods_at(n, rep)),
        Suite::BVsOracle => find_first(lo, hi, b_vs_oracle_at),
        Suite::MinValuation => find_first(lo, hi, min_valuation_at),
        Suite::LinrepRelation => {
            if hi > (u64::MAX - 2) / 3 {
                return Err(Error::Overflow("3n + 2 exceeds u64"));
            }
            find_first(lo, hi, |n| linrep_relation_at(n, rep))
        }
    };
    Ok(VerifyReport {
        suite,
        lo,
        hi,
        methods_compared: suite.methods().iter().map(|m| m.to_string()).collect(),
        first_mismatch,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn a_methods(lo: u64, hi: u64) -> Result<Option<Mismatch>> {
    let prefix = apery_recurrence_range(hi)?;
    let prefix = &prefix[lo as usize..];
    Ok(find_first(lo, hi, |n| {
        let reference = apery_direct(n);
        let barnes = match apery_barnes(n) {
            Ok(v) => v,
            Err(e) => return Some(Mismatch::new(n, "direct", &reference, "barnes", e)),
        };
        let convolution = apery_convolution(n);
        let others: [(&str, &BigUint); 3] = [
            ("barnes", &barnes),
            ("convolution", &convolution),
            ("recurrence", &prefix[(n - lo) as usize]),
        ];
        let found = others.into_iter().find(|(_, v)| **v != reference);
        found.map(|(name, v)| Mismatch::new(n, "direct", &reference, name, v))
    }))
}

fn b_methods_at(n: u64, rep: &LinearRep) -> Option<Mismatch> {
    let reference = b_closed(&n);
    let linrep = rep.evaluate(&n);
    let others = [
        ("closed-alt", b_closed_alt(&n).into()),
        ("thm1", b_rec_two_level(&n).into()),
        ("thm3", b_rec_one_level(&n).into()),
        ("linrep", linrep),
    ];
    others
        .into_iter()
        .find(|(_, v)| *v != reference.into())
        .map(|(name, v)| Mismatch::new(n, "closed", reference, name, v))
}

fn b_vs_oracle_at(n: u64) -> Option<Mismatch> {
    let closed = b_closed(&n);
    let oracle = v_adic(&apery_direct(n), 3).expect("base 3 is valid");
    (oracle != closed.into()).then(|| Mismatch::new(n, "closed", closed, "oracle", oracle))
}

fn min_valuation_at(n: u64) -> Option<Mismatch> {
    let got = min_term_valuation(n);
    let expected = (n / 2, b_closed(&n), true);
    (got.argmin, got.value, got.unique).ne(&expected).then(|| {
        Mismatch::new(
            n,
            "min-term",
            format!("k={} d={} unique={}", got.argmin, got.value, got.unique),
            "closed",
            format!("k={} d={} unique={}", expected.0, expected.1, expected.2),
        )
    })
}

/// `(b(n), 1, n mod 2)` with `b` from the closed form.
fn closed_vector(n: u64) -> Vec<BigInt> {
    [b_closed(&n), 1, n % 2].into_iter().map(BigInt::from).collect()
}

fn render(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn linrep_relation_at(n: u64, rep: &LinearRep) -> Option<Mismatch> {
    let target = closed_vector(n);
    let v_n = rep.evaluate_vector(&n);
    for k in 0..3u64 {
        let m = 3 * n + k;
        let mu = rep.matrix(k as usize);
        // The matrices must carry the closed-form vector at n to the one at 3n+k.
        let image = mu.mul_vec_big(&target);
        let expected = closed_vector(m);
        if image != expected {
            return Some(Mismatch::new(
                n,
                &format!("mu({k})*V({n})"),
                render(&image),
                &format!("V({m})"),
                render(&expected),
            ));
        }
        // And the unrolled product must satisfy the same relation by itself.
        let stepped = mu.mul_vec_big(&v_n);
        let v_m = rep.evaluate_vector(&m);
        if stepped != v_m {
            return Some(Mismatch::new(
                n,
                &format!("mu({k})*linrep({n})"),
                render(&stepped),
                &format!("linrep({m})"),
                render(&v_m),
            ));
        }
    }
    (v_n != target).then(|| {
        Mismatch::new(n, &format!("linrep({n})"), render(&v_n), &format!("V({n})"), render(&target))
    })
}
