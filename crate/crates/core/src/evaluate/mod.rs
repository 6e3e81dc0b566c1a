//! The polynomial `alpha` and its relatives: generalized binomials, extended
//! sums, the summation operator, finite differences, refined ASM numbers and
//! the vectors `W` and `X`.

mod alpha;
mod operator;

use std::convert::Infallible;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use alpha::{alpha, AlphaMethod, CacheMode, Evaluator, EvaluatorConfig, SizeGuard, CACHE_LIMIT_VAR};
pub use operator::{expand, sum_operator, Functional, SumRecursion};
pub(crate) use operator::ext_range;

/// Generalized binomial coefficient: `a(a-1)...(a-b+1)/b!` for `b >= 0`, zero for `b < 0`.
pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in 0..b {
        num *= a - t;
        den *= t + 1;
    }
    num / den
}

/// `sum_{i=a}^{b} f(i)` with the extended convention for `b < a`.
pub fn ext_sum(f: impl Fn(i64) -> BigInt, a: i64, b: i64) -> BigInt {
    ext_range(a, b).map(|(i, s)| f(i) * s).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Difference {
    /// `Δ g(x) = g(x + 1) - g(x)`
    Forward,
    /// `δ g(x) = g(x) - g(x - 1)`
    Backward,
}

/// The `i`-th power of a difference operator applied to `g`, evaluated at `x`.
pub fn forward_difference_power(
    g: impl Fn(i64) -> BigInt,
    i: u32,
    x: i64,
    direction: Difference,
) -> BigInt {
    match try_difference_power(|y| Ok::<_, Infallible>(g(y)), i, x, direction) {
        Ok(v) => v,
        Err(never) => match never {},
    }
}

pub(crate) fn try_difference_power<E>(
    mut g: impl FnMut(i64) -> std::result::Result<BigInt, E>,
    i: u32,
    x: i64,
    direction: Difference,
) -> std::result::Result<BigInt, E> {
    let i = i as i64;
    let mut total = BigInt::zero();
    for j in 0..=i {
        let (arg, negative) = match direction {
            Difference::Forward => (x + j, (i - j) % 2 == 1),
            Difference::Backward => (x - j, j % 2 == 1),
        };
        let term = binomial(i, j) * g(arg)?;
        if negative {
            total -= term;
        } else {
            total += term;
        }
    }
    Ok(total)
}

fn factorial(n: i64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, t| acc * t)
}

/// Number of `n x n` ASMs whose first row has its unique 1 in column `i`.
pub fn refined_asm(n: i64, i: i64) -> Result<BigInt> {
    if n < 1 || i < 1 || i > n {
        return Err(Error::invalid(format!(
            "refined ASM number needs 1 <= i <= n, got n={n}, i={i}"
        )));
    }
    let mut num = binomial(n + i - 2, n - 1) * factorial(2 * n - i - 1);
    let mut den = factorial(n - i);
    for k in 0..=n - 2 {
        num *= factorial(3 * k + 1);
        den *= factorial(n + k);
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "refined ASM product for n={n}, i={i} is not integral"
        )));
    }
    Ok(q)
}

/// Total number of `n x n` ASMs.
pub fn asm_count(n: i64) -> Result<BigInt> {
    (1..=n).map(|i| refined_asm(n, i)).sum()
}

fn check_w_range(n: i64, i: i64) -> Result<()> {
    if n < 1 || i < 1 || i > 2 * n - 1 {
        return Err(Error::invalid(format!(
            "index needs n >= 1 and 1 <= i <= 2n-1, got n={n}, i={i}"
        )));
    }
    Ok(())
}

/// `(k_1, n-1, n-1, ..., 1, 1)`, the bottom rows behind `W`.
pub(crate) fn w_row(n: i64, k1: i64) -> Vec<i64> {
    let mut row = vec![k1];
    for v in (1..n).rev() {
        row.push(v);
        row.push(v);
    }
    row
}

/// The `(i-1)`-st forward difference of `alpha(2n-1; k_1, n-1, n-1, ..., 1, 1)`
/// in `k_1`, at `k_1 = n`.
pub fn w_number(n: i64, i: i64) -> Result<BigInt> {
    Evaluator::global().w_number(n, i)
}

/// `sum_{l=1}^{min(i,n)} C(i-1, l-1) (-1)^{n+i+l-1} A(n, l)`.
pub fn x_number(n: i64, i: i64) -> Result<BigInt> {
    check_w_range(n, i)?;
    let mut total = BigInt::zero();
    for l in 1..=i.min(n) {
        let term = binomial(i - 1, l - 1) * refined_asm(n, l)?;
        if (n + i + l - 1) % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}
