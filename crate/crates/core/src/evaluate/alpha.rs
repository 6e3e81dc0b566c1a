use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::operator::{expand, SumRecursion};
use super::{check_w_range, try_difference_power, w_row, Difference};
use crate::enumerate::{dmt_rows_above, mt_rows_above};
use crate::error::{Error, Result};
use crate::stats::{newcomer_count, sign_of};
use crate::triangle::{classify_row_sequence, pair_count, RowSeqClass};

/// Environment variable capping the number of entries in each shared memo table.
pub const CACHE_LIMIT_VAR: &str = "MTRI_CACHE_LIMIT";
const DEFAULT_CACHE_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlphaMethod {
    Auto,
    OperatorRecursion,
    MonotoneDP,
    SignedDmtDP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheMode {
    /// One memo table per evaluator, reused across calls.
    Shared,
    /// A fresh table for every top-level call.
    PerInvocation,
    /// No memoization.
    Disabled,
}

/// Bounds on the arguments accepted by the operator recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub max_len: usize,
    pub max_spread: i64,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard {
            max_len: 6,
            max_spread: 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvaluatorConfig {
    pub cache: CacheMode,
    pub guard: SizeGuard,
    pub cache_limit: usize,
}

impl Default for EvaluatorConfig {
    fn default() -> Self {
        let cache_limit = std::env::var(CACHE_LIMIT_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_CACHE_LIMIT);
        EvaluatorConfig {
            cache: CacheMode::Shared,
            guard: SizeGuard::default(),
            cache_limit,
        }
    }
}

#[derive(Default)]
struct Memo(Mutex<HashMap<Vec<i64>, BigInt>>);

/// Lookup context for one top-level evaluation.
struct Ctx<'a> {
    shared: Option<&'a Memo>,
    local: Option<HashMap<Vec<i64>, BigInt>>,
    limit: usize,
}

impl<'a> Ctx<'a> {
    fn new(mode: CacheMode, shared: &'a Memo, limit: usize) -> Self {
        match mode {
            CacheMode::Shared => Ctx { shared: Some(shared), local: None, limit },
            CacheMode::PerInvocation => Ctx { shared: None, local: Some(HashMap::new()), limit },
            CacheMode::Disabled => Ctx { shared: None, local: None, limit },
        }
    }

    fn get(&self, key: &[i64]) -> Option<BigInt> {
        if let Some(m) = self.shared {
            return m.0.lock().unwrap().get(key).cloned();
        }
        self.local.as_ref().and_then(|m| m.get(key).cloned())
    }

    fn put(&mut self, key: Vec<i64>, value: &BigInt) {
        if let Some(m) = self.shared {
            let mut table = m.0.lock().unwrap();
            if table.len() < self.limit {
                // a binding, once written, is never replaced
                table.entry(key).or_insert_with(|| value.clone());
            }
        } else if let Some(m) = self.local.as_mut() {
            if m.len() < self.limit {
                m.insert(key, value.clone());
            }
        }
    }
}

fn shifted(k: &[i64], by: i64) -> Vec<i64> {
    k.iter().map(|v| v - by).collect()
}

pub struct Evaluator {
    config: EvaluatorConfig,
    operator_memo: Memo,
    monotone_memo: Memo,
    dmt_memo: Memo,
}

impl Evaluator {
    pub fn new(config: EvaluatorConfig) -> Self {
        Evaluator {
            config,
            operator_memo: Memo::default(),
            monotone_memo: Memo::default(),
            dmt_memo: Memo::default(),
        }
    }

    /// Process-wide evaluator with the default configuration.
    pub fn global() -> &'static Evaluator {
        static GLOBAL: OnceLock<Evaluator> = OnceLock::new();
        GLOBAL.get_or_init(|| Evaluator::new(EvaluatorConfig::default()))
    }

    pub fn config(&self) -> &EvaluatorConfig {
        &self.config
    }

    /// Entries currently held in the shared tables.
    pub fn cached_entries(&self) -> usize {
        [&self.operator_memo, &self.monotone_memo, &self.dmt_memo]
            .iter()
            .map(|m| m.0.lock().unwrap().len())
            .sum()
    }

    pub fn alpha(&self, k: &[i64], method: AlphaMethod) -> Result<BigInt> {
        let class = classify_row_sequence(k)?;
        let method = match method {
            AlphaMethod::Auto => match class {
                RowSeqClass::StrictlyIncreasing => AlphaMethod::MonotoneDP,
                RowSeqClass::WeaklyDecreasingMult2 | RowSeqClass::HasTriple => {
                    AlphaMethod::SignedDmtDP
                }
                RowSeqClass::Other => AlphaMethod::OperatorRecursion,
            },
            m => m,
        };
        let limit = self.config.cache_limit;
        match method {
            AlphaMethod::OperatorRecursion => {
                self.check_guard(k)?;
                let mut ctx = Ctx::new(self.config.cache, &self.operator_memo, limit);
                Ok(operator_alpha(&mut ctx, k))
            }
            AlphaMethod::MonotoneDP => {
                if class != RowSeqClass::StrictlyIncreasing {
                    return Err(Error::invalid(
                        "the Monotone Triangle count needs a strictly increasing row",
                    ));
                }
                let mut ctx = Ctx::new(self.config.cache, &self.monotone_memo, limit);
                Ok(monotone_count(&mut ctx, k))
            }
            AlphaMethod::SignedDmtDP => match class {
                RowSeqClass::HasTriple => Ok(BigInt::zero()),
                _ if k.windows(2).all(|w| w[0] >= w[1]) => {
                    let mut ctx = Ctx::new(self.config.cache, &self.dmt_memo, limit);
                    Ok(signed_dmt_count(&mut ctx, k))
                }
                _ => Err(Error::invalid(
                    "the signed DMT count needs a weakly decreasing row",
                )),
            },
            AlphaMethod::Auto => unreachable!(),
        }
    }

    fn check_guard(&self, k: &[i64]) -> Result<()> {
        let guard = self.config.guard;
        let spread = k.iter().max().unwrap() - k.iter().min().unwrap();
        if k.len() > guard.max_len || spread > guard.max_spread {
            return Err(Error::ResourceLimit(format!(
                "operator recursion limited to length {} and spread {}, got length {} and spread {}",
                guard.max_len,
                guard.max_spread,
                k.len(),
                spread
            )));
        }
        Ok(())
    }

    pub fn w_number(&self, n: i64, i: i64) -> Result<BigInt> {
        check_w_range(n, i)?;
        try_difference_power(
            |k1| self.alpha(&w_row(n, k1), AlphaMethod::SignedDmtDP),
            (i - 1) as u32,
            n,
            Difference::Forward,
        )
    }
}

/// `alpha` through the operator recursion, splitting off the last variable.
fn operator_alpha(ctx: &mut Ctx<'_>, k: &[i64]) -> BigInt {
    if k.len() == 1 {
        return BigInt::one();
    }
    let key = shifted(k, k[k.len() - 1]);
    if let Some(v) = ctx.get(&key) {
        return v;
    }
    let mut total = BigInt::zero();
    for (l, c) in expand(k, SumRecursion::SplitLast) {
        total += operator_alpha(ctx, &l) * c;
    }
    ctx.put(key, &total);
    total
}

fn monotone_count(ctx: &mut Ctx<'_>, k: &[i64]) -> BigInt {
    if k.len() == 1 {
        return BigInt::one();
    }
    let key = shifted(k, k[0]);
    if let Some(v) = ctx.get(&key) {
        return v;
    }
    let mut total = BigInt::zero();
    for l in mt_rows_above(k) {
        total += monotone_count(ctx, &l);
    }
    ctx.put(key, &total);
    total
}

/// `sum over DMTs with bottom row k of (-1)^sc`, one row at a time.
fn signed_dmt_count(ctx: &mut Ctx<'_>, k: &[i64]) -> BigInt {
    if k.len() == 1 {
        return BigInt::one();
    }
    let key = shifted(k, k[k.len() - 1]);
    if let Some(v) = ctx.get(&key) {
        return v;
    }
    let mut total = BigInt::zero();
    for l in dmt_rows_above(k) {
        let sign = sign_of(pair_count(&l) + newcomer_count(k, &l));
        total += signed_dmt_count(ctx, &l) * sign;
    }
    ctx.put(key, &total);
    total
}

/// `alpha(k)` with the global evaluator.
pub fn alpha(k: &[i64], method: AlphaMethod) -> Result<BigInt> {
    Evaluator::global().alpha(k, method)
}
