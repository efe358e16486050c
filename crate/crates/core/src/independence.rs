//! Independent sets: exact enumeration of maximum sets and the known
//! closed forms for queen's boards.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{gcd, Graph};
use crate::vertex_set::VertexSet;

/// Default largest graph accepted by [`max_independent_sets`].
pub const DEFAULT_MAX_MIS_VERTICES: usize = 144;

/// Vertex set with no internal edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndependentSet(VertexSet);

impl IndependentSet {
    pub fn new(g: &Graph, set: VertexSet) -> Result<Self> {
        g.check_set(&set)?;
        if let Some((u, v)) = first_internal_edge(g, &set) {
            return Err(Error::NotIndependent(u, v));
        }
        Ok(Self(set))
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.to_vec()
    }
}

impl Serialize for IndependentSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.to_vec().serialize(s)
    }
}

fn first_internal_edge(g: &Graph, set: &VertexSet) -> Option<(usize, usize)> {
    set.iter().find_map(|u| {
        g.neighbor_set(u)
            .iter()
            .find(|&w| w > u && set.contains(w))
            .map(|w| (u, w))
    })
}

pub fn is_independent(g: &Graph, set: &VertexSet) -> Result<bool> {
    g.check_set(set)?;
    Ok(first_internal_edge(g, set).is_none())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MisResult {
    pub alpha: usize,
    /// Every independent set of size `alpha`, sorted by member list.
    pub sets: Vec<IndependentSet>,
}

/// Clique covers used for the branch-and-bound bound. Boards use their rows
/// and columns; other graphs get a greedy partition into cliques.
fn clique_covers(g: &Graph) -> Vec<Vec<VertexSet>> {
    if g.grid().is_some() {
        let rows = g.rows().expect("grid");
        let m = g.grid().expect("grid").m;
        let cols = (0..m).map(|j| g.column_vertices(j).expect("grid")).collect();
        return vec![rows, cols];
    }
    let count = g.vertex_count();
    let mut left = VertexSet::full(count);
    let mut cover = Vec::new();
    while let Some(v) = left.first() {
        let mut clique = VertexSet::from_vertices(count, [v]);
        let mut candidates = g.neighbor_set(v).clone();
        candidates.intersect_with(&left);
        while let Some(w) = candidates.first() {
            clique.insert(w);
            candidates.intersect_with(g.neighbor_set(w));
        }
        left.difference_with(&clique);
        cover.push(clique);
    }
    vec![cover]
}

struct Search<'a> {
    g: &'a Graph,
    covers: Vec<Vec<VertexSet>>,
    best: &'a AtomicUsize,
}

impl Search<'_> {
    fn bound(&self, candidates: &VertexSet) -> usize {
        self.covers
            .iter()
            .map(|cover| cover.iter().filter(|k| k.intersects(candidates)).count())
            .min()
            .unwrap_or(0)
    }

    /// Cover clique meeting `candidates` in the fewest vertices.
    fn branch_clique(&self, candidates: &VertexSet) -> VertexSet {
        let mut pick = None;
        let mut pick_size = usize::MAX;
        for clique in &self.covers[0] {
            let size = clique.intersection_count(candidates);
            if size > 0 && size < pick_size {
                pick_size = size;
                pick = Some(clique);
            }
        }
        let mut out = pick.expect("nonempty candidates meet the cover").clone();
        out.intersect_with(candidates);
        out
    }

    /// Branches on one clique `K`: include exactly one member of `K`, or none.
    fn branches(&self, chosen: &VertexSet, candidates: &VertexSet) -> Vec<(VertexSet, VertexSet)> {
        let clique = self.branch_clique(candidates);
        let mut out = Vec::with_capacity(clique.len() + 1);
        for v in &clique {
            let mut with = chosen.clone();
            with.insert(v);
            let mut rest = candidates.clone();
            rest.difference_with(self.g.neighbor_set(v));
            rest.remove(v);
            out.push((with, rest));
        }
        let mut rest = candidates.clone();
        rest.difference_with(&clique);
        out.push((chosen.clone(), rest));
        out
    }

    fn run(&self, chosen: VertexSet, candidates: VertexSet, found: &mut Vec<VertexSet>) {
        let size = chosen.len();
        if size + self.bound(&candidates) < self.best.load(Ordering::Relaxed) {
            return;
        }
        if candidates.is_empty() {
            self.best.fetch_max(size, Ordering::Relaxed);
            if found.first().is_some_and(|f| f.len() < size) {
                found.clear();
            }
            if found.first().is_none_or(|f| f.len() == size) {
                found.push(chosen);
            }
            return;
        }
        for (with, rest) in self.branches(&chosen, &candidates) {
            self.run(with, rest, found);
        }
    }
}

fn greedy_independent_size(g: &Graph) -> usize {
    let mut left = VertexSet::full(g.vertex_count());
    let mut size = 0;
    while let Some(v) = left.first() {
        size += 1;
        left.difference_with(g.neighbor_set(v));
        left.remove(v);
    }
    size
}

/// Independence number and all maximum independent sets, by branch and bound
/// over a clique cover. On a queen's board with `α = n` the bound forbids
/// skipping any row, so the search degenerates to one-queen-per-row
/// backtracking.
pub fn max_independent_sets(g: &Graph, max_vertices: usize) -> Result<MisResult> {
    let count = g.vertex_count();
    if count > max_vertices {
        return Err(Error::CapExceeded {
            what: "independent-set vertex",
            needed: count as u128,
            limit: max_vertices as u128,
        });
    }
    let best = AtomicUsize::new(greedy_independent_size(g));
    let search = Search {
        g,
        covers: clique_covers(g),
        best: &best,
    };
    let roots = search.branches(&VertexSet::new(count), &VertexSet::full(count));
    let mut all: Vec<VertexSet> = roots
        .into_par_iter()
        .flat_map_iter(|(chosen, candidates)| {
            let mut found = Vec::new();
            search.run(chosen, candidates, &mut found);
            found
        })
        .collect();
    let alpha = all.iter().map(VertexSet::len).max().unwrap_or(0);
    all.retain(|s| s.len() == alpha);
    let mut sets: Vec<IndependentSet> = all.into_iter().map(IndependentSet).collect();
    sets.sort_by_key(|s| s.to_vec());
    Ok(MisResult { alpha, sets })
}

fn check_board(m: usize, n: usize) -> Result<()> {
    if m < 2 || n < 2 {
        Err(Error::BoardTooSmall { m, n })
    } else {
        Ok(())
    }
}

/// `α(Q_{m,n})`: 1 on the 2×2 board, 2 on the 3×3 board, `min(m, n)` otherwise.
pub fn queen_alpha_formula(m: usize, n: usize) -> Result<usize> {
    check_board(m, n)?;
    Ok(match (m.max(n), m.min(n)) {
        (2, 2) => 1,
        (3, 3) => 2,
        (_, small) => small,
    })
}

/// `α(TQ_{m,n})`. Square boards use the first matching case of
/// `gcd(6,n) = 1 → n`, `3∤n and 4∤n → n−1`, otherwise `n−2`;
/// non-square boards give `gcd(m, n)`.
pub fn toroidal_alpha_formula(m: usize, n: usize) -> Result<usize> {
    check_board(m, n)?;
    if m != n {
        return Ok(gcd(m, n));
    }
    Ok(if gcd(6, n) == 1 {
        n
    } else if !n.is_multiple_of(3) && !n.is_multiple_of(4) {
        n - 1
    } else {
        n - 2
    })
}
