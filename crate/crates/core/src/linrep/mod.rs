//! Linear representations of k-regular sequences.
//!
//! A [`LinearRep`] over base `k` holds one square matrix per digit and an
//! initial vector `V(0)`. The vector at `n` is defined by
//! `V(k·n + d) = μ(d) · V(n)`; unrolled over the base-`k` digits
//! `d_0, d_1, …, d_m` of `n` (least significant first) this is
//! `V(n) = μ(d_0) · μ(d_1) ⋯ μ(d_m) · V(0)`.
//!
//! Evaluation runs in checked `i64` and repeats the product in [`BigInt`]
//! when a step would overflow.

mod matrix;

pub use matrix::{integer_rank, IntMatrix};

use num_bigint::BigInt;

use crate::digit_formula::{radix_digits, Natural};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRep {
    base: u32,
    dim: usize,
    matrices: Vec<IntMatrix>,
    initial: Vec<i64>,
    output_index: usize,
}

impl LinearRep {
    /// Validates shapes and the leading-zero fixed point `μ(0) · V(0) = V(0)`,
    /// which makes the value independent of padding `n` with zero digits.
    pub fn new(
        base: u32,
        matrices: Vec<IntMatrix>,
        initial: Vec<i64>,
        output_index: usize,
    ) -> Result<Self> {
        let malformed = |msg: String| Err(Error::MalformedRepresentation(msg));
        if base < 2 {
            return malformed(format!("base {base} is below 2"));
        }
        if matrices.len() != base as usize {
            return malformed(format!("{} matrices for base {base}", matrices.len()));
        }
        let dim = initial.len();
        if let Some((d, m)) =
            matrices.iter().enumerate().find(|(_, m)| m.rows() != dim || m.cols() != dim)
        {
            return malformed(format!("matrix {d} is {}x{}, expected {dim}x{dim}", m.rows(), m.cols()));
        }
        if output_index >= dim {
            return malformed(format!("output index {output_index} out of range for dimension {dim}"));
        }
        if matrices[0].mul_vec_checked(&initial).as_deref() != Some(&initial[..]) {
            return malformed("initial vector is not fixed by the zero-digit matrix".into());
        }
        Ok(LinearRep { base, dim, matrices, initial, output_index })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, digit: usize) -> &IntMatrix {
        &self.matrices[digit]
    }

    pub fn initial(&self) -> &[i64] {
        &self.initial
    }

    pub fn output_index(&self) -> usize {
        self.output_index
    }

    /// Copy with the matrix for `digit` replaced, revalidated.
    pub fn with_matrix(&self, digit: usize, m: IntMatrix) -> Result<Self> {
        let mut matrices = self.matrices.clone();
        matrices[digit] = m;
        Self::new(self.base, matrices, self.initial.clone(), self.output_index)
    }

    /// `V(n)` from an explicit digit sequence, least significant first.
    /// Trailing zero digits are allowed.
    pub fn evaluate_digits(&self, digits: &[u32]) -> Vec<BigInt> {
        match self.evaluate_digits_i64(digits) {
            Some(v) => v.into_iter().map(BigInt::from).collect(),
            None => {
                let mut v: Vec<BigInt> = self.initial.iter().map(|&x| BigInt::from(x)).collect();
                for &d in digits.iter().rev() {
                    v = self.matrices[d as usize].mul_vec_big(&v);
                }
                v
            }
        }
    }

    /// `V(n)` from digits in `i64`, `None` if any step overflows.
    pub fn evaluate_digits_i64(&self, digits: &[u32]) -> Option<Vec<i64>> {
        let mut v = self.initial.clone();
        for &d in digits.iter().rev() {
            v = self.matrices[d as usize].mul_vec_checked(&v)?;
        }
        Some(v)
    }

    pub fn evaluate_vector<T: Natural>(&self, n: &T) -> Vec<BigInt> {
        self.evaluate_digits(&radix_digits(n, self.base))
    }

    pub fn try_evaluate_vector_i64<T: Natural>(&self, n: &T) -> Option<Vec<i64>> {
        self.evaluate_digits_i64(&radix_digits(n, self.base))
    }

    /// The sequence value at `n`: coordinate `output_index` of `V(n)`.
    pub fn evaluate<T: Natural>(&self, n: &T) -> BigInt {
        self.evaluate_vector(n).swap_remove(self.output_index)
    }
}

/// The 3-dimensional base-3 representation of `b(n) = v_3(a(n))` with
/// `V(n) = (b(n), 1, n mod 2)`:
///
/// ```text
/// μ(0) = μ(2) = [1 0 1]      μ(1) = [1 1 -1]
///               [0 1 0]             [0 1  0]
///               [0 0 1]             [0 1 -1]
/// ```
///
/// and `V(0) = (0, 1, 0)`.
pub fn valuation_representation() -> LinearRep {
    let even = IntMatrix::from_rows(&[[1, 0, 1], [0, 1, 0], [0, 0, 1]]).unwrap();
    let one = IntMatrix::from_rows(&[[1, 1, -1], [0, 1, 0], [0, 1, -1]]).unwrap();
    LinearRep::new(3, vec![even.clone(), one, even], vec![0, 1, 0], 0)
        .expect("valuation representation is well formed")
}

/// Rows are the first `prefix_len` terms of the kernel sequences
/// `n ↦ u(base^e · n + a)` for `e = 0..=depth`, `0 ≤ a < base^e`, ordered
/// by `(e, a)`.
pub fn kernel_matrix<F>(seq: F, base: u64, depth: u32, prefix_len: usize) -> Result<IntMatrix>
where
    F: Fn(u64) -> i64,
{
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut data = Vec::new();
    let mut rows = 0;
    for e in 0..=depth {
        let stride = base.checked_pow(e).ok_or(Error::Overflow("kernel stride"))?;
        // largest index touched is stride * prefix_len - 1
        stride
            .checked_mul(prefix_len as u64)
            .ok_or(Error::Overflow("kernel index"))?;
        for a in 0..stride {
            data.extend((0..prefix_len as u64).map(|n| seq(stride * n + a)));
            rows += 1;
        }
    }
    IntMatrix::new(rows, prefix_len, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digit_formula::b_closed;
    use crate::numbers::apery_direct;
    use crate::valuation::v_adic;
    use proptest::prelude::*;

    fn small(v: Vec<BigInt>) -> Vec<i64> {
        v.into_iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn representation_examples() {
        let rep = valuation_representation();
        assert_eq!(rep.matrix(1).row(0), &[1, 1, -1]);
        assert_eq!(rep.matrix(0).mul_vec_checked(&[0, 1, 0]), Some(vec![0, 1, 0]));
        assert_eq!(rep.initial(), &[0, 1, 0]);
        assert_eq!((rep.base(), rep.dim(), rep.output_index()), (3, 3, 0));
    }

    #[test]
    fn evaluate_vector_examples() {
        let rep = valuation_representation();
        assert_eq!(small(rep.evaluate_vector(&0u64)), vec![0, 1, 0]);
        assert_eq!(small(rep.evaluate_vector(&7u64)), vec![1, 1, 1]);
        assert_eq!(small(rep.evaluate_vector(&10u64)), vec![2, 1, 0]);
    }

    #[test]
    fn evaluate_examples() {
        let rep = valuation_representation();
        assert_eq!(rep.evaluate(&0u64), BigInt::from(0));
        assert_eq!(rep.evaluate(&3u64), BigInt::from(2));
        assert_eq!(rep.evaluate(&8u64), BigInt::from(0));
    }

    #[test]
    fn rejects_malformed() {
        let id = IntMatrix::identity(2);
        assert!(LinearRep::new(1, vec![id.clone()], vec![1, 0], 0).is_err());
        assert!(LinearRep::new(2, vec![id.clone()], vec![1, 0], 0).is_err());
        assert!(LinearRep::new(2, vec![id.clone(), IntMatrix::identity(3)], vec![1, 0], 0).is_err());
        assert!(LinearRep::new(2, vec![id.clone(), id.clone()], vec![1, 0], 2).is_err());
        let shift = IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap();
        assert!(LinearRep::new(2, vec![shift, id.clone()], vec![1, 0], 0).is_err());
        assert!(LinearRep::new(2, vec![id.clone(), id], vec![1, 0], 0).is_ok());
    }

    #[test]
    fn escalates_past_i64() {
        // Binary counter of powers of 3: value at n = 3^(number of 1 bits).
        let id = IntMatrix::identity(1);
        let triple = IntMatrix::from_rows(&[[3]]).unwrap();
        let rep = LinearRep::new(2, vec![id, triple], vec![1], 0).unwrap();
        let n = u128::MAX;
        assert!(rep.try_evaluate_vector_i64(&n).is_none());
        assert_eq!(rep.evaluate(&n), BigInt::from(3u8).pow(128));
        assert_eq!(rep.evaluate(&0b1011u8), BigInt::from(27));
    }

    #[test]
    fn kernel_examples() {
        let b = |n: u64| b_closed(&n) as i64;
        let m = kernel_matrix(b, 3, 0, 5).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 5));
        assert_eq!(m.row(0), &[0, 1, 0, 2, 1]);

        let m = kernel_matrix(b, 3, 1, 3).unwrap();
        assert_eq!(m.rows(), 4);
        // row (1, 2) is b(3n + 2)
        assert_eq!(m.row(3), &[b(2), b(5), b(8)]);

        let ones = kernel_matrix(|_| 1, 3, 2, 4).unwrap();
        assert_eq!(ones.rows(), 13);
        assert!((0..13).all(|i| ones.row(i) == [1, 1, 1, 1]));
    }

    #[test]
    fn kernel_first_row_from_brute_force() {
        let oracle: Vec<i64> = (0..5)
            .map(|n| v_adic(&apery_direct(n), 3).unwrap().finite().unwrap() as i64)
            .collect();
        let m = kernel_matrix(|n| b_closed(&n) as i64, 3, 0, 5).unwrap();
        assert_eq!(m.row(0), &oracle[..]);
    }

    #[test]
    fn kernel_rank_of_valuation_sequence() {
        let m = kernel_matrix(|n| b_closed(&n) as i64, 3, 4, 200).unwrap();
        assert_eq!(integer_rank(&m), 3);
        let single = kernel_matrix(|n| b_closed(&n) as i64, 3, 0, 5).unwrap();
        assert_eq!(integer_rank(&single), 1);
    }

    proptest! {
        #[test]
        fn matches_closed_form(n in any::<u64>()) {
            let rep = valuation_representation();
            let v = rep.try_evaluate_vector_i64(&n).unwrap();
            prop_assert_eq!(v, vec![b_closed(&n) as i64, 1, (n % 2) as i64]);
        }

        #[test]
        fn padding_with_zero_digits_is_invisible(n in any::<u64>(), pad in 0usize..10) {
            let rep = valuation_representation();
            let mut digits = radix_digits(&n, 3);
            let plain = rep.evaluate_digits(&digits);
            digits.extend(std::iter::repeat_n(0, pad));
            prop_assert_eq!(rep.evaluate_digits(&digits), plain);
        }

        #[test]
        fn defining_relation(n in 0u64..u64::MAX / 3, k in 0u64..3) {
            let rep = valuation_representation();
            let lhs = rep.try_evaluate_vector_i64(&(3 * n + k)).unwrap();
            let rhs = rep.matrix(k as usize)
                .mul_vec_checked(&rep.try_evaluate_vector_i64(&n).unwrap())
                .unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
