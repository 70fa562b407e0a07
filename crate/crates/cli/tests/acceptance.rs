//! Acceptance gate. One test per criterion; each prints a PASS/FAIL line.
//!
//! Run with `cargo test -p apery-cli --test acceptance -- --nocapture`.

use std::process::Command;
use std::time::{Duration, Instant};

use apery_core::digit_formula::{alpha_profile, b_closed, ones_profile, ternary_digits};
use apery_core::linrep::{integer_rank, kernel_matrix, valuation_representation};
use apery_core::sweep::find_first;
use apery_core::valuation::{term_valuation, v_adic};
use apery_core::verify::{run_suite, Suite};
use apery_core::BigUint;
use num_traits::Zero;

const A_AGREEMENT_MAX: u64 = 2000;
const A_AGREEMENT_BUDGET: Duration = Duration::from_secs(120);
const ORACLE_MAX: u64 = 2000;
const B_AGREEMENT_MAX: u64 = 1_000_000;
const B_AGREEMENT_BUDGET: Duration = Duration::from_secs(60);
const STRICT_MIN_MAX: u64 = 1500;
const ALPHA_MAX: u64 = 100_000;
const RELATION_MAX: u64 = 100_000;
const KERNEL_DEPTHS: [u32; 4] = [2, 3, 4, 5];
const KERNEL_PREFIX: usize = 200;
const KERNEL_RANK: usize = 3;
const KERNEL_BUDGET: Duration = Duration::from_secs(10);
const PARITY_MAX: u64 = 1_000_000;

fn record(id: u32, title: &str, ok: bool, detail: impl std::fmt::Display) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {title} ({detail})");
    assert!(ok, "criterion {id} failed: {title} ({detail})");
}

#[test]
fn criterion_1_a_method_agreement() {
    let start = Instant::now();
    let report = run_suite(Suite::AMethods, 0, A_AGREEMENT_MAX).unwrap();
    let elapsed = start.elapsed();
    record(
        1,
        "direct = barnes = convolution = recurrence for n <= 2000",
        report.passed() && elapsed < A_AGREEMENT_BUDGET,
        format!("mismatch={:?}, {:.1}s", report.first_mismatch, elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_2_closed_form_matches_brute_force() {
    let report = run_suite(Suite::BVsOracle, 0, ORACLE_MAX).unwrap();
    record(
        2,
        "b_closed(n) = v3(apery_direct(n)) for n <= 2000",
        report.passed(),
        format!("mismatch={:?}", report.first_mismatch),
    );
}

#[test]
fn criterion_3_five_way_b_agreement() {
    let start = Instant::now();
    let report = run_suite(Suite::BMethods, 0, B_AGREEMENT_MAX).unwrap();
    let elapsed = start.elapsed();
    record(
        3,
        "closed = closed-alt = two-level = one-level = linrep for n <= 10^6",
        report.passed() && elapsed < B_AGREEMENT_BUDGET,
        format!("mismatch={:?}, {:.1}s", report.first_mismatch, elapsed.as_secs_f64()),
    );
}

/// v3 of every multinomial term, the terms built by exact running products
/// `T(k+1) = T(k) · 2(n-2k)(n-2k-1) / (9 (k+1)^2)` from `T(0) = 3^n`.
fn term_mismatch(n: u64) -> Option<(u64, u64, u64)> {
    let mut term = BigUint::from(3u8).pow(n as u32);
    for k in 0..=n / 2 {
        let direct = v_adic(&term, 3).unwrap().finite().unwrap();
        let formula = term_valuation(n, k).unwrap();
        if direct != formula {
            return Some((k, direct, formula));
        }
        if k < n / 2 {
            let num = term * (2 * (n - 2 * k) * (n - 2 * k - 1));
            let den = BigUint::from(9 * (k + 1) * (k + 1));
            assert!((&num % &den).is_zero(), "term {} of a({n}) is not integral", k + 1);
            term = num / den;
        }
    }
    None
}

#[test]
fn criterion_4_strict_minimum_at_half() {
    let report = run_suite(Suite::MinValuation, 1, STRICT_MIN_MAX).unwrap();
    let term_failure = find_first(1, STRICT_MIN_MAX, |n| term_mismatch(n).map(|t| (n, t)));
    record(
        4,
        "min_k d(n,k) unique at k = floor(n/2), equals b(n), and d(n,k) = v3(term) for 1 <= n <= 1500",
        report.passed() && term_failure.is_none(),
        format!("min mismatch={:?}, term mismatch={:?}", report.first_mismatch, term_failure),
    );
}

#[test]
fn criterion_5_alpha_profile_identity() {
    let failure = find_first(1, ALPHA_MAX, |n| match alpha_profile(n) {
        Err(e) => Some(format!("n={n}: {e}")),
        Ok(alphas) => {
            let sum: u64 = alphas.iter().map(|&a| u64::from(a)).sum();
            let bad_entry = alphas.iter().any(|&a| a > 1);
            (bad_entry || n % 2 + sum != b_closed(&n)).then(|| format!("n={n}: alphas={alphas:?}"))
        }
    });
    record(
        5,
        "alpha_i in {0,1}, interval support, (n mod 2) + sum alpha = b(n) for 1 <= n <= 10^5",
        failure.is_none(),
        format!("failure={failure:?}"),
    );
}

#[test]
fn criterion_6_defining_relation() {
    let rep = valuation_representation();
    let fixed = rep.matrix(0).mul_vec_checked(rep.initial()).as_deref() == Some(rep.initial());
    let report = run_suite(Suite::LinrepRelation, 0, RELATION_MAX).unwrap();
    record(
        6,
        "V(3n+k) = mu(k) V(n) for n <= 10^5, k in {0,1,2}; mu(0) V(0) = V(0)",
        fixed && report.passed(),
        format!("fixed point={fixed}, mismatch={:?}", report.first_mismatch),
    );
}

#[test]
fn criterion_7_kernel_rank_stability() {
    let start = Instant::now();
    let ranks: Vec<usize> = KERNEL_DEPTHS
        .iter()
        .map(|&depth| {
            let m = kernel_matrix(|n| b_closed(&n) as i64, 3, depth, KERNEL_PREFIX).unwrap();
            integer_rank(&m)
        })
        .collect();
    let elapsed = start.elapsed();
    record(
        7,
        "kernel rank of b is 3 at depths 2..=5, prefix 200",
        ranks.iter().all(|&r| r == KERNEL_RANK) && elapsed < KERNEL_BUDGET,
        format!("ranks={ranks:?}, {:.2}s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_8_ones_parity() {
    let failure = find_first(0, PARITY_MAX, |n| {
        let r = ones_profile(&ternary_digits(&n)).r as u64;
        (r % 2 != n % 2).then_some((n, r))
    });
    record(8, "r = n (mod 2) for n <= 10^6", failure.is_none(), format!("failure={failure:?}"));
}

fn apery(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_apery")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn criterion_9_cli_contract() {
    let runs = [
        apery(&["verify", "--suite", "b-methods", "0", "100000"]),
        apery(&["verify", "--suite", "b-vs-oracle", "0", "2000"]),
        apery(&["verify", "--suite", "a-methods", "0", "0"]),
    ];
    let clean = runs.iter().all(|(code, out)| {
        let json: serde_json::Value = serde_json::from_str(out).unwrap();
        *code == 0 && json["mismatch"].is_null()
    });

    let (code, out) = apery(&["verify", "--suite", "linrep-relation", "--perturb-mu1", "0", "1000"]);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    let mutated_n = json["mismatch"]["n"].as_str().map(str::to_owned);
    // mu(1) first acts on a vector with b != 0 at n = 1
    let mutation_caught = code == 1 && mutated_n.as_deref() == Some("1");

    let unperturbed = apery(&["verify", "--suite", "linrep-relation", "0", "1000"]).0 == 0;
    record(
        9,
        "verify suites exit 0; perturbed mu(1) flips linrep-relation to exit 1 at the smallest n",
        clean && mutation_caught && unperturbed,
        format!("clean={clean}, perturbed exit={code} n={mutated_n:?}, unperturbed ok={unperturbed}"),
    );
}
