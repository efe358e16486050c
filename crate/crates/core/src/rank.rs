//! Divisor rank by exhaustive debt placement.

use rayon::prelude::*;
use serde::Serialize;

use crate::firing::{q_reduce, CANONICAL_BASE};
use crate::compositions::{find_first, Limits};
use crate::divisor::Divisor;
use crate::error::Result;
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankResult {
    /// Exact rank when `exact`, otherwise a lower bound equal to the search cap.
    pub rank: i64,
    /// Effective divisor `E` of degree `rank + 1` such that `D − E` has no
    /// effective equivalent. Absent when the search hit `max_k`.
    pub certificate: Option<Divisor>,
    pub exact: bool,
}

/// Some divisor in the class of `d` is effective.
pub fn effective_in_class(g: &Graph, d: &Divisor) -> Result<bool> {
    if d.degree() < 0 {
        d.check_len(g.vertex_count())?;
        return Ok(false);
    }
    let (reduced, _) = q_reduce(g, d, CANONICAL_BASE)?;
    Ok(reduced[CANONICAL_BASE] >= 0)
}

/// Reduced value at `base` is at least one; equivalently `d − 𝟙_base` is
/// equivalent to an effective divisor.
fn absorbs_debt_at(g: &Graph, d: &Divisor, base: usize) -> Result<bool> {
    if d.is_effective() && d[base] >= 1 {
        // reducing an effective divisor at `base` never removes chips from it
        return Ok(true);
    }
    let (reduced, _) = q_reduce(g, d, base)?;
    Ok(reduced[base] >= 1)
}

/// Rank at least one: a single chip of debt anywhere can be cleared.
pub fn has_positive_rank(g: &Graph, d: &Divisor) -> Result<bool> {
    d.check_len(g.vertex_count())?;
    if d.degree() < 1 {
        return Ok(false);
    }
    let verdicts: Vec<Result<bool>> = (0..g.vertex_count())
        .into_par_iter()
        .map(|v| absorbs_debt_at(g, d, v))
        .collect();
    for verdict in verdicts {
        if !verdict? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of `d`, searching debt placements up to degree `max_k`.
///
/// Placements of each degree are enumerated in colex order and the first one
/// that cannot be absorbed is returned as the certificate.
pub fn rank(g: &Graph, d: &Divisor, max_k: u64, limits: &Limits) -> Result<RankResult> {
    d.check_len(g.vertex_count())?;
    if !effective_in_class(g, d)? {
        return Ok(RankResult {
            rank: -1,
            certificate: Some(Divisor::zero(g.vertex_count())),
            exact: true,
        });
    }
    for k in 1..=max_k {
        let failing = find_first(k, g.vertex_count(), limits, |placement| {
            let shifted = Divisor::new(
                d.values
                    .iter()
                    .zip(placement)
                    .map(|(a, b)| a - b)
                    .collect(),
            );
            !effective_in_class(g, &shifted).expect("lengths already validated")
        })?;
        if let Some(e) = failing {
            return Ok(RankResult {
                rank: k as i64 - 1,
                certificate: Some(Divisor::new(e)),
                exact: true,
            });
        }
    }
    Ok(RankResult {
        rank: max_k as i64,
        certificate: None,
        exact: false,
    })
}
