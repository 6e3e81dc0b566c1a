//! The summation operator on arbitrary integer bounds.
//!
//! Each recursion is expanded into a linear functional: a finite map from
//! argument vectors `l` to integer coefficients, so that the operator applied
//! to `A` at `k` equals `sum_l coeff(l) * A(l)`. Expanding first and evaluating
//! afterwards lets repeated argument vectors be evaluated once.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Which recursion defines the operator. All three yield the same values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumRecursion {
    /// Split off the last summation variable.
    SplitLast,
    /// Sum the last variable from `k_{n-1}` and subtract the doubled diagonal term.
    PairCorrection,
    /// Split off the first summation variable.
    SplitFirst,
}

impl SumRecursion {
    pub const ALL: [SumRecursion; 3] = [
        SumRecursion::SplitLast,
        SumRecursion::PairCorrection,
        SumRecursion::SplitFirst,
    ];

    /// Smallest arity `n` for which the recursion is stated.
    pub fn min_arity(self) -> usize {
        match self {
            SumRecursion::SplitLast => 1,
            SumRecursion::PairCorrection => 3,
            SumRecursion::SplitFirst => 2,
        }
    }
}

pub type Functional = BTreeMap<Vec<i64>, i64>;

/// Terms of the extended sum `sum_{i=a}^{b}` as `(i, sign)`.
pub(crate) fn ext_range(a: i64, b: i64) -> impl Iterator<Item = (i64, i64)> {
    let (range, sign) = if a <= b {
        (a..=b, 1)
    } else {
        // b = a - 1 gives the empty range a..=a-1
        (b + 1..=a - 1, -1)
    };
    range.map(move |i| (i, sign))
}

fn add(target: &mut Functional, key: Vec<i64>, coeff: i64) {
    match target.entry(key) {
        Entry::Vacant(e) => {
            if coeff != 0 {
                e.insert(coeff);
            }
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if *e.get() == 0 {
                e.remove();
            }
        }
    }
}

/// Expands the operator at `k` (length `n >= 1`) into a functional on
/// `(n - 1)`-vectors. Below the recursion's minimal arity the shared base
/// cases are used: the identity for `n = 1` and `sum_{l=k_1}^{k_2}` for `n = 2`.
pub fn expand(k: &[i64], recursion: SumRecursion) -> Functional {
    let n = k.len();
    let mut out = Functional::new();
    if n == 1 {
        out.insert(Vec::new(), 1);
        return out;
    }
    if n < recursion.min_arity().max(2) {
        for (l, s) in ext_range(k[0], k[1]) {
            add(&mut out, vec![l], s);
        }
        return out;
    }
    match recursion {
        SumRecursion::SplitLast => {
            let head = &k[..n - 1];
            for (prefix, c) in expand(head, recursion) {
                for (l, s) in ext_range(k[n - 2] + 1, k[n - 1]) {
                    let mut key = prefix.clone();
                    key.push(l);
                    add(&mut out, key, c * s);
                }
            }
            let mut shifted = k[..n - 1].to_vec();
            shifted[n - 2] -= 1;
            for (mut prefix, c) in expand(&shifted, recursion) {
                prefix.push(k[n - 2]);
                add(&mut out, prefix, c);
            }
        }
        SumRecursion::PairCorrection => {
            for (prefix, c) in expand(&k[..n - 1], recursion) {
                for (l, s) in ext_range(k[n - 2], k[n - 1]) {
                    let mut key = prefix.clone();
                    key.push(l);
                    add(&mut out, key, c * s);
                }
            }
            for (mut prefix, c) in expand(&k[..n - 2], recursion) {
                prefix.push(k[n - 2]);
                prefix.push(k[n - 2]);
                add(&mut out, prefix, -c);
            }
        }
        SumRecursion::SplitFirst => {
            for (suffix, c) in expand(&k[1..], recursion) {
                for (l, s) in ext_range(k[0], k[1] - 1) {
                    let mut key = Vec::with_capacity(n - 1);
                    key.push(l);
                    key.extend_from_slice(&suffix);
                    add(&mut out, key, c * s);
                }
            }
            let mut raised = k[1..].to_vec();
            raised[0] += 1;
            for (suffix, c) in expand(&raised, recursion) {
                let mut key = Vec::with_capacity(n - 1);
                key.push(k[1]);
                key.extend_from_slice(&suffix);
                add(&mut out, key, c);
            }
        }
    }
    out
}

/// Applies the summation operator with upper bounds `k` to `a`.
pub fn sum_operator(
    a: &dyn Fn(&[i64]) -> BigInt,
    k: &[i64],
    recursion: SumRecursion,
) -> Result<BigInt> {
    if k.is_empty() {
        return Err(Error::invalid("the summation operator needs at least one bound"));
    }
    if k.len() < recursion.min_arity() {
        return Err(Error::invalid(format!(
            "{recursion:?} is stated for at least {} bounds, got {}",
            recursion.min_arity(),
            k.len()
        )));
    }
    Ok(expand(k, recursion)
        .into_iter()
        .map(|(l, c)| a(&l) * c)
        .sum())
}
