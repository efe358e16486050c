//! Enumeration of effective divisors of a fixed degree (weak compositions).
//!
//! Compositions are produced in colexicographic order: the entry on vertex 0
//! varies fastest, and `a < b` when `a` is smaller at the last index where the
//! two differ. Parallel searches split the space by the chip count on vertex 0
//! and merge with the same ordering, so results never depend on scheduling.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::independence::DEFAULT_MAX_MIS_VERTICES;

/// Default per-degree cap on enumerated compositions.
pub const DEFAULT_MAX_COMPOSITIONS: u64 = 5_000_000;

/// Environment variable overriding [`DEFAULT_MAX_COMPOSITIONS`] for the CLI.
pub const MAX_COMPOSITIONS_ENV: &str = "CHIPFIRE_MAX_COMPOSITIONS";

/// Caps on the exponential searches. Exceeding one is an error, never a
/// silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Per-degree cap on enumerated divisors.
    pub max_compositions: u64,
    /// Largest graph handed to maximum-independent-set enumeration.
    pub max_mis_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_compositions: DEFAULT_MAX_COMPOSITIONS,
            max_mis_vertices: DEFAULT_MAX_MIS_VERTICES,
        }
    }
}

impl Limits {
    pub fn with_max_compositions(max_compositions: u64) -> Self {
        Self {
            max_compositions,
            ..Self::default()
        }
    }

    pub(crate) fn check(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.max_compositions as u128 {
            Err(Error::CapExceeded {
                what,
                needed,
                limit: self.max_compositions as u128,
            })
        } else {
            Ok(())
        }
    }
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc = C(n - k + i + 1, i + 1) after the update
        acc = match acc.checked_mul((n - k + i + 1) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of ways to place `total` chips on `parts` vertices.
pub fn composition_count(total: u64, parts: usize) -> u128 {
    if parts == 0 {
        return u128::from(total == 0);
    }
    binomial(total + parts as u64 - 1, parts as u64 - 1)
}

/// Colexicographic comparison of equal-length vectors.
pub fn colex_cmp(a: &[i64], b: &[i64]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Iterator over all compositions of `total` into `parts` nonnegative parts,
/// in colex order.
#[derive(Debug, Clone)]
pub struct Compositions {
    current: Option<Vec<i64>>,
}

impl Compositions {
    pub fn new(total: u64, parts: usize) -> Self {
        let current = match parts {
            0 if total == 0 => Some(Vec::new()),
            0 => None,
            _ => {
                let mut first = vec![0; parts];
                first[0] = total as i64;
                Some(first)
            }
        };
        Self { current }
    }
}

impl Iterator for Compositions {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.take()?;
        // successor: empty the lowest nonzero slot j, carry one chip to j + 1,
        // and put the rest back on slot 0
        let mut succ = out.clone();
        let lowest_nonzero = succ.iter().position(|&c| c != 0);
        if let Some(j) = lowest_nonzero {
            if j + 1 < succ.len() {
                let moved = succ[j];
                succ[j] = 0;
                succ[j + 1] += 1;
                succ[0] = moved - 1;
                self.current = Some(succ);
            }
        }
        Some(out)
    }
}

/// Colex-first composition of `total` over `parts` satisfying `pred`.
pub fn find_first<F>(total: u64, parts: usize, limits: &Limits, pred: F) -> Result<Option<Vec<i64>>>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    limits.check("composition", composition_count(total, parts))?;
    if parts <= 1 {
        return Ok(Compositions::new(total, parts).find(|c| pred(c)));
    }
    let best = (0..=total)
        .into_par_iter()
        .filter_map(|head| {
            Compositions::new(total - head, parts - 1).find_map(|tail| {
                let mut full = Vec::with_capacity(parts);
                full.push(head as i64);
                full.extend_from_slice(&tail);
                pred(&full).then_some(full)
            })
        })
        .min_by(|a, b| colex_cmp(a, b));
    Ok(best)
}

/// Every composition of `total` over `parts` satisfying `pred`, in colex order.
pub fn filter_all<F>(total: u64, parts: usize, limits: &Limits, pred: F) -> Result<Vec<Vec<i64>>>
where
    F: Fn(&[i64]) -> bool + Sync,
{
    limits.check("composition", composition_count(total, parts))?;
    if parts <= 1 {
        return Ok(Compositions::new(total, parts).filter(|c| pred(c)).collect());
    }
    let mut hits: Vec<Vec<i64>> = (0..=total)
        .into_par_iter()
        .flat_map_iter(|head| {
            let pred = &pred;
            Compositions::new(total - head, parts - 1).filter_map(move |tail| {
                let mut full = Vec::with_capacity(parts);
                full.push(head as i64);
                full.extend_from_slice(&tail);
                pred(&full).then_some(full)
            })
        })
        .collect();
    hits.sort_by(|a, b| colex_cmp(a, b));
    Ok(hits)
}
