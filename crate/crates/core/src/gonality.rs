//! Gonality: closed forms, exhaustive search on small graphs, positive-rank
//! class enumeration and the independent-set correspondence.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::firing::{canonical_form, is_reduced_unchecked, CANONICAL_BASE};
use crate::compositions::{binomial, filter_all, find_first, Limits};
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::independence::{
    max_independent_sets, queen_alpha_formula, toroidal_alpha_formula, IndependentSet,
};
use crate::rank::has_positive_rank;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GonalityMethod {
    Formula,
    ExactSearch,
    UpperBoundOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GonalityReport {
    /// Gonality, or an upper bound when `method` is `UpperBoundOnly`.
    pub value: u64,
    /// Positive-rank divisor of degree `value`.
    pub witness: Option<Divisor>,
    pub method: GonalityMethod,
    /// Every degree below this is known to carry no positive-rank divisor.
    pub lower_bound: u64,
}

/// `𝟙_{S^c}`: one chip on every vertex outside the independent set.
pub fn indep_divisor(g: &Graph, set: &VertexSet) -> Result<Divisor> {
    let set = IndependentSet::new(g, set.clone())?;
    Ok(Divisor::indicator(&set.vertices().complement()))
}

/// `|V| − α(G)` with the divisor `𝟙_{S^c}` for the first maximum
/// independent set `S`.
pub fn gonality_upper_bound(g: &Graph, limits: &Limits) -> Result<GonalityReport> {
    let mis = max_independent_sets(g, limits.max_mis_vertices)?;
    let first = mis
        .sets
        .first()
        .ok_or_else(|| Error::Internal("graph has no independent set".into()))?;
    let witness = Divisor::indicator(&first.vertices().complement());
    if !has_positive_rank(g, &witness)? {
        return Err(Error::Internal(format!(
            "independent-set divisor {witness} lacks positive rank"
        )));
    }
    Ok(GonalityReport {
        value: (g.vertex_count() - mis.alpha) as u64,
        witness: Some(witness),
        method: GonalityMethod::UpperBoundOnly,
        lower_bound: 1,
    })
}

fn positive_rank_reduced(g: &Graph, values: &[i64]) -> bool {
    if !is_reduced_unchecked(g, values, CANONICAL_BASE) {
        return false;
    }
    has_positive_rank(g, &Divisor::new(values.to_vec())).expect("length matches graph")
}

/// Exact gonality by exhausting the reduced effective divisors of every
/// degree below the independence bound. When a degree level exceeds the
/// composition cap the upper bound is returned with the lower bound reached.
pub fn gonality_exact_small(g: &Graph, limits: &Limits) -> Result<GonalityReport> {
    let upper = gonality_upper_bound(g, limits)?;
    for degree in 1..upper.value {
        let found = match find_first(degree, g.vertex_count(), limits, |c| {
            positive_rank_reduced(g, c)
        }) {
            Ok(found) => found,
            Err(Error::CapExceeded { .. }) => {
                return Ok(GonalityReport {
                    lower_bound: degree,
                    ..upper
                })
            }
            Err(e) => return Err(e),
        };
        if let Some(values) = found {
            return Ok(GonalityReport {
                value: degree,
                witness: Some(Divisor::new(values)),
                method: GonalityMethod::ExactSearch,
                lower_bound: degree,
            });
        }
    }
    Ok(GonalityReport {
        method: GonalityMethod::ExactSearch,
        lower_bound: upper.value,
        ..upper
    })
}

/// `gon(Q_{m,n})` for either argument order: 3 on 2×2, 7 on 3×3, else `n(m−1)`
/// with `m ≥ n`.
pub fn queen_gonality_formula(m: usize, n: usize) -> Result<u64> {
    queen_alpha_formula(m, n)?;
    let (big, small) = (m.max(n), m.min(n));
    Ok(match (big, small) {
        (2, 2) => 3,
        (3, 3) => 7,
        _ => (small * (big - 1)) as u64,
    })
}

/// `gon(TQ_{m,n}) = mn − α(TQ_{m,n})`.
pub fn toroidal_gonality_formula(m: usize, n: usize) -> Result<u64> {
    Ok((m * n - toroidal_alpha_formula(m, n)?) as u64)
}

/// One representative per positive-rank divisor class of the given degree:
/// the effective divisors reduced at vertex 0 that have positive rank,
/// sorted lexicographically.
pub fn enumerate_positive_rank_classes(
    g: &Graph,
    degree: u64,
    limits: &Limits,
) -> Result<Vec<Divisor>> {
    let mut reps = filter_all(degree, g.vertex_count(), limits, |c| {
        positive_rank_reduced(g, c)
    })?;
    reps.sort();
    Ok(reps.into_iter().map(Divisor::new).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorrespondenceMode {
    /// Enumerate every positive-rank class and check the map is onto.
    Full,
    /// Only check the images are distinct and of positive rank.
    InjectivityOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub degree: u64,
    pub mode: CorrespondenceMode,
    pub alpha: usize,
    pub mis_list: Vec<IndependentSet>,
    /// `𝟙_{S^c}` reduced at vertex 0, in `mis_list` order.
    pub images: Vec<Divisor>,
    /// Enumerated positive-rank classes (full mode only).
    pub class_reps: Option<Vec<Divisor>>,
    /// `degree == |V| − α`.
    pub degree_matches: bool,
    pub injective: bool,
    pub images_positive_rank: bool,
    pub surjective: Option<bool>,
    /// Full mode: the map is a bijection onto `class_reps`. Injectivity-only
    /// mode: every check that was run passed.
    pub matched: bool,
}

/// Checks that `S ↦ [𝟙_{S^c}]` maps the maximum independent sets
/// one-to-one (and, in full mode, onto) the positive-rank classes of
/// the given degree.
pub fn verify_correspondence(
    g: &Graph,
    degree: u64,
    mode: CorrespondenceMode,
    limits: &Limits,
) -> Result<CorrespondenceReport> {
    let mis = max_independent_sets(g, limits.max_mis_vertices)?;
    let indicators: Vec<Divisor> = mis
        .sets
        .iter()
        .map(|s| Divisor::indicator(&s.vertices().complement()))
        .collect();
    let images = indicators
        .par_iter()
        .map(|d| canonical_form(g, d))
        .collect::<Result<Vec<_>>>()?;
    let positive = indicators
        .par_iter()
        .map(|d| has_positive_rank(g, d))
        .collect::<Result<Vec<_>>>()?;
    let images_positive_rank = positive.iter().all(|&p| p);

    let distinct: BTreeSet<&Divisor> = images.iter().collect();
    let injective = distinct.len() == images.len();
    let degree_matches = degree == (g.vertex_count() - mis.alpha) as u64;

    let (class_reps, surjective, matched) = match mode {
        CorrespondenceMode::Full => {
            let reps = enumerate_positive_rank_classes(g, degree, limits)?;
            let rep_set: BTreeSet<&Divisor> = reps.iter().collect();
            let surjective = rep_set.iter().all(|r| distinct.contains(*r));
            let matched = degree_matches
                && injective
                && surjective
                && distinct == rep_set
                && reps.len() == images.len();
            (Some(reps), Some(surjective), matched)
        }
        CorrespondenceMode::InjectivityOnly => {
            (None, None, degree_matches && injective && images_positive_rank)
        }
    };

    Ok(CorrespondenceReport {
        degree,
        mode,
        alpha: mis.alpha,
        mis_list: mis.sets,
        images,
        class_reps,
        degree_matches,
        injective,
        images_positive_rank,
        surjective,
        matched,
    })
}

/// Smallest row total of an effective divisor on a board.
pub fn poorest_row_chips(g: &Graph, d: &Divisor) -> Result<i64> {
    let grid = *g.grid().ok_or(Error::NotGrid)?;
    d.check_len(g.vertex_count())?;
    if !d.is_effective() {
        return Err(Error::NotEffective);
    }
    Ok(row_sums(grid.m, &d.values).into_iter().min().unwrap_or(0))
}

fn row_sums(m: usize, values: &[i64]) -> Vec<i64> {
    values.chunks(m).map(|row| row.iter().sum()).collect()
}

/// Number of effective divisors of `degree` on an `m × rows` board whose
/// every row holds at least `floor` chips.
fn count_with_row_floor(degree: u64, rows: usize, m: usize, floor: u64) -> u128 {
    let deg = degree as usize;
    let mut ways = vec![0u128; deg + 1];
    ways[0] = 1;
    for _ in 0..rows {
        let mut next = vec![0u128; deg + 1];
        for (used, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for s in floor as usize..=deg - used {
                let row = binomial((s + m - 1) as u64, (m - 1) as u64);
                next[used + s] = next[used + s].saturating_add(w.saturating_mul(row));
            }
        }
        ways = next;
    }
    ways[deg]
}

/// Row totals `(s_0, …, s_{rows-1})` with every `s_i >= floor`, summing to `degree`.
fn row_splits(degree: i64, rows: usize, floor: i64) -> Vec<Vec<i64>> {
    fn go(left: i64, rows: usize, floor: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() + 1 == rows {
            if left >= floor {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let reserve = floor * (rows - cur.len() - 1) as i64;
        for s in floor..=left - reserve {
            cur.push(s);
            go(left - s, rows, floor, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if degree >= floor * rows as i64 {
        go(degree, rows, floor, &mut Vec::new(), &mut out);
    }
    out
}

/// Calls `f` on every effective divisor with the given row totals.
fn for_each_with_row_sums(m: usize, sums: &[i64], f: &mut dyn FnMut(&[i64])) {
    fn go(m: usize, sums: &[i64], row: usize, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
        if row == sums.len() {
            f(cur);
            return;
        }
        for part in crate::compositions::Compositions::new(sums[row] as u64, m) {
            cur.extend_from_slice(&part);
            go(m, sums, row + 1, cur, f);
            cur.truncate(row * m);
        }
    }
    go(m, sums, 0, &mut Vec::with_capacity(m * sums.len()), f);
}

/// Effective divisor equivalent to `d` maximizing the chips on its poorest
/// row; ties go to the lexicographically smallest vector.
///
/// Candidates are searched level by level: first those whose every row holds
/// at least `⌊deg/n⌋` chips, then one chip fewer, and so on, so the first level
/// with an equivalent candidate gives the optimum.
pub fn row_equitable_representative(g: &Graph, d: &Divisor, limits: &Limits) -> Result<Divisor> {
    let grid = *g.grid().ok_or(Error::NotGrid)?;
    d.check_len(g.vertex_count())?;
    let target = canonical_form(g, d)?;
    if target[CANONICAL_BASE] < 0 {
        return Err(Error::NoEffectiveRepresentative);
    }
    let degree = d.degree();
    let rows = grid.n;
    for floor in (0..=degree / rows as i64).rev() {
        limits.check(
            "row-equitable candidate",
            count_with_row_floor(degree as u64, rows, grid.m, floor as u64),
        )?;
        let best = row_splits(degree, rows, floor)
            .into_par_iter()
            .filter_map(|sums| {
                let mut best: Option<Vec<i64>> = None;
                for_each_with_row_sums(grid.m, &sums, &mut |values| {
                    if best.as_deref().is_some_and(|b| b <= values) {
                        return;
                    }
                    let candidate = Divisor::new(values.to_vec());
                    if canonical_form(g, &candidate).expect("length matches") == target {
                        best = Some(values.to_vec());
                    }
                });
                best
            })
            .min();
        if let Some(values) = best {
            return Ok(Divisor::new(values));
        }
    }
    Err(Error::Internal(
        "effective class produced no effective candidate".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formulas() {
        assert_eq!(queen_gonality_formula(8, 8).unwrap(), 56);
        assert_eq!(queen_gonality_formula(3, 3).unwrap(), 7);
        assert_eq!(queen_gonality_formula(2, 2).unwrap(), 3);
        assert_eq!(queen_gonality_formula(5, 4).unwrap(), 16);
        assert_eq!(queen_gonality_formula(4, 5).unwrap(), 16);
        assert_eq!(toroidal_gonality_formula(5, 5).unwrap(), 20);
        assert_eq!(toroidal_gonality_formula(4, 4).unwrap(), 14);
        assert_eq!(toroidal_gonality_formula(4, 6).unwrap(), 22);
        assert!(queen_gonality_formula(1, 4).is_err());
    }

    #[test]
    fn square_torus_formula_matches_piecewise_list() {
        for n in 2..=12usize {
            let expected = if crate::graph::gcd(6, n) == 1 {
                n * (n - 1)
            } else if n % 3 != 0 && n % 4 != 0 {
                n * (n - 1) + 1
            } else {
                n * (n - 1) + 2
            };
            assert_eq!(toroidal_gonality_formula(n, n).unwrap(), expected as u64);
        }
    }

    #[test]
    fn indep_divisor_examples() {
        let q22 = Graph::queen(2, 2).unwrap();
        let d = indep_divisor(&q22, &VertexSet::from_vertices(4, [2])).unwrap();
        assert_eq!(d.values, vec![1, 1, 0, 1]);
        assert_eq!(d.degree(), 3);
        let q33 = Graph::queen(3, 3).unwrap();
        assert_eq!(indep_divisor(&q33, &VertexSet::new(9)).unwrap().degree(), 9);
        assert_eq!(
            indep_divisor(&q33, &VertexSet::from_vertices(9, [0, 1])).unwrap_err(),
            Error::NotIndependent(0, 1)
        );
    }

    #[test]
    fn upper_bounds() {
        let limits = Limits::default();
        assert_eq!(gonality_upper_bound(&Graph::queen(3, 3).unwrap(), &limits).unwrap().value, 7);
        assert_eq!(gonality_upper_bound(&Graph::complete(4).unwrap(), &limits).unwrap().value, 3);
        let tq55 = gonality_upper_bound(&Graph::toroidal_queen(5, 5).unwrap(), &limits).unwrap();
        assert_eq!(tq55.value, 20);
        assert_eq!(tq55.method, GonalityMethod::UpperBoundOnly);
        assert_eq!(tq55.witness.unwrap().degree(), 20);
    }

    #[test]
    fn exact_small_cases() {
        let limits = Limits::default();
        let r = gonality_exact_small(&Graph::queen(2, 2).unwrap(), &limits).unwrap();
        assert_eq!((r.value, r.method), (3, GonalityMethod::ExactSearch));
        let r = gonality_exact_small(&Graph::capped_ladder(), &limits).unwrap();
        assert_eq!((r.value, r.method), (2, GonalityMethod::ExactSearch));
        let w = r.witness.unwrap();
        assert_eq!(w.degree(), 2);
        assert!(has_positive_rank(&Graph::capped_ladder(), &w).unwrap());
    }

    #[test]
    fn exact_search_degrades_on_cap() {
        let tight = Limits::with_max_compositions(20);
        let r = gonality_exact_small(&Graph::queen(3, 3).unwrap(), &tight).unwrap();
        assert_eq!(r.method, GonalityMethod::UpperBoundOnly);
        assert_eq!(r.value, 7);
        // degree 1 on 9 vertices is 9 compositions; degree 2 is 45
        assert_eq!(r.lower_bound, 2);
    }

    #[test]
    fn class_enumeration_edge_cases() {
        let limits = Limits::default();
        assert!(enumerate_positive_rank_classes(&Graph::queen(2, 2).unwrap(), 2, &limits)
            .unwrap()
            .is_empty());
        assert!(enumerate_positive_rank_classes(&Graph::capped_ladder(), 1, &limits)
            .unwrap()
            .is_empty());
        let k4 = enumerate_positive_rank_classes(&Graph::queen(2, 2).unwrap(), 3, &limits).unwrap();
        assert_eq!(k4.len(), 4);
    }

    #[test]
    fn poorest_row() {
        let g = Graph::queen(3, 3).unwrap();
        assert_eq!(poorest_row_chips(&g, &Divisor::zero(9)).unwrap(), 0);
        assert_eq!(poorest_row_chips(&g, &Divisor::new(vec![0, 0, 0, 0, 5, 0, 0, 0, 0])).unwrap(), 0);
        assert_eq!(poorest_row_chips(&g, &Divisor::new(vec![1; 9])).unwrap(), 3);
        assert_eq!(
            poorest_row_chips(&Graph::complete(3).unwrap(), &Divisor::zero(3)).unwrap_err(),
            Error::NotGrid
        );
        assert_eq!(
            poorest_row_chips(&g, &Divisor::new(vec![-1, 0, 0, 0, 1, 0, 0, 0, 0])).unwrap_err(),
            Error::NotEffective
        );
    }

    #[test]
    fn row_floor_count_matches_enumeration() {
        for (deg, rows, m, floor) in [(6, 3, 2, 1), (9, 3, 3, 3), (7, 2, 4, 0), (5, 3, 2, 2)] {
            let mut seen = 0u128;
            for sums in row_splits(deg, rows, floor) {
                for_each_with_row_sums(m, &sums, &mut |_| seen += 1);
            }
            assert_eq!(count_with_row_floor(deg as u64, rows, m, floor as u64), seen);
        }
        assert_eq!(count_with_row_floor(7, 2, 4, 0), crate::compositions::composition_count(7, 8));
    }

    #[test]
    fn row_equitable_fixed_points() {
        let limits = Limits::default();
        let g = Graph::queen(3, 3).unwrap();
        let ones = Divisor::new(vec![1; 9]);
        assert_eq!(row_equitable_representative(&g, &ones, &limits).unwrap(), ones);
        assert_eq!(
            row_equitable_representative(&g, &Divisor::zero(9), &limits).unwrap(),
            Divisor::zero(9)
        );
        let mut neg = Divisor::zero(9);
        neg[0] = -1;
        assert_eq!(
            row_equitable_representative(&g, &neg, &limits).unwrap_err(),
            Error::NoEffectiveRepresentative
        );
    }
}
