//! Set-firing, Dhar's burning algorithm and q-reduction.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write;

use serde::Serialize;

use crate::divisor::{Divisor, FiringScript};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Canonical base vertex for class comparisons.
pub const CANONICAL_BASE: usize = 0;

/// Outcome of one run of the burning algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BurnReport {
    pub base: usize,
    /// Vertices in the order they caught fire; starts with the base vertex.
    pub burned_order: Vec<usize>,
    pub unburned: VertexSet,
}

impl BurnReport {
    /// Whole graph burned, i.e. the input was reduced at the base vertex.
    pub fn fully_burned(&self) -> bool {
        self.unburned.is_empty()
    }

    /// One burned vertex id per line, then `UNBURNED: <ids>`.
    pub fn trace(&self) -> String {
        let mut out = String::new();
        for v in &self.burned_order {
            writeln!(out, "{v}").unwrap();
        }
        let rest: Vec<String> = self.unburned.iter().map(|v| v.to_string()).collect();
        if rest.is_empty() {
            out.push_str("UNBURNED:\n");
        } else {
            writeln!(out, "UNBURNED: {}", rest.join(" ")).unwrap();
        }
        out
    }
}

#[derive(Serialize)]
struct BurnJson<'a> {
    base: usize,
    burned_order: &'a [usize],
    unburned: Vec<usize>,
}

impl Serialize for BurnReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BurnJson {
            base: self.base,
            burned_order: &self.burned_order,
            unburned: self.unburned.to_vec(),
        }
        .serialize(s)
    }
}

fn check_divisor(g: &Graph, d: &Divisor) -> Result<()> {
    d.check_len(g.vertex_count())
}

/// Fires every vertex of `set` once: each member sends one chip along every
/// edge leaving the set. No legality requirement.
pub fn fire_set(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<Divisor> {
    check_divisor(g, d)?;
    g.check_set(set)?;
    let mut out = d.clone();
    fire_in_place(g, &mut out.values, set, 1);
    Ok(out)
}

/// Fires `set` `times` times (negative = reverse firing).
pub(crate) fn fire_in_place(g: &Graph, values: &mut [i64], set: &VertexSet, times: i64) {
    for u in set {
        for &w in g.neighbors(u) {
            if !set.contains(w) {
                values[u] -= times;
                values[w] += times;
            }
        }
    }
}

/// `D − Lσ`.
pub fn apply_script(g: &Graph, d: &Divisor, script: &FiringScript) -> Result<Divisor> {
    check_divisor(g, d)?;
    if script.fires.len() != g.vertex_count() {
        return Err(Error::LengthMismatch {
            expected: g.vertex_count(),
            got: script.fires.len(),
        });
    }
    let mut out = d.clone();
    for (u, &s) in script.fires.iter().enumerate() {
        for &w in g.neighbors(u) {
            out.values[u] -= s;
            out.values[w] += s;
        }
    }
    Ok(out)
}

/// Every member of `set` starts and ends the firing out of debt.
pub fn is_legal_firing(g: &Graph, d: &Divisor, set: &VertexSet) -> Result<bool> {
    check_divisor(g, d)?;
    g.check_set(set)?;
    Ok(set.iter().all(|v| {
        let out = (g.neighbors(v).len() - g.neighbor_set(v).intersection_count(set)) as i64;
        d[v] >= 0 && d[v] - out >= 0
    }))
}

/// Dhar's burning algorithm from `base`. Requires `d(v) >= 0` for `v != base`.
///
/// The fire starts at `base` and crosses every edge incident to a burning
/// vertex; any other vertex catches fire once strictly more than `d(v)` of its
/// edges burn. Burning vertices are processed smallest id first.
pub fn dhar_burn(g: &Graph, d: &Divisor, base: usize) -> Result<BurnReport> {
    check_divisor(g, d)?;
    g.check_vertex(base)?;
    if let Some((v, &value)) = d
        .values
        .iter()
        .enumerate()
        .find(|&(v, &c)| v != base && c < 0)
    {
        return Err(Error::DebtAwayFromBase { vertex: v, value });
    }
    Ok(burn(g, &d.values, base))
}

pub(crate) fn burn(g: &Graph, values: &[i64], base: usize) -> BurnReport {
    let count = g.vertex_count();
    let mut burned = VertexSet::new(count);
    let mut burning_edges = vec![0i64; count];
    let mut order = Vec::with_capacity(count);
    let mut queue = BinaryHeap::new();

    burned.insert(base);
    order.push(base);
    queue.push(Reverse(base));
    while let Some(Reverse(u)) = queue.pop() {
        for &w in g.neighbors(u) {
            if burned.contains(w) {
                continue;
            }
            burning_edges[w] += 1;
            if burning_edges[w] > values[w] {
                burned.insert(w);
                order.push(w);
                queue.push(Reverse(w));
            }
        }
    }
    BurnReport {
        base,
        burned_order: order,
        unburned: burned.complement(),
    }
}

/// Fast check that `values` is reduced at `base` (assumes no debt off `base`).
pub(crate) fn is_reduced_unchecked(g: &Graph, values: &[i64], base: usize) -> bool {
    burn(g, values, base).fully_burned()
}

/// The unique divisor equivalent to `d` that is reduced at `base`, together
/// with a normalized firing script `σ` such that `reduced = d − Lσ`.
///
/// Debt away from `base` is cleared first by firing distance balls around
/// `base` from the outside in; then the unburned set left by Dhar's algorithm
/// is fired until the whole graph burns.
pub fn q_reduce(g: &Graph, d: &Divisor, base: usize) -> Result<(Divisor, FiringScript)> {
    check_divisor(g, d)?;
    g.check_vertex(base)?;
    let count = g.vertex_count();
    let mut values = d.values.clone();
    let mut script = FiringScript::zero(count);

    let dist = g.distances_from(base);
    let eccentricity = dist.iter().copied().max().unwrap_or(0);
    // Stage 1: after firing ball B_k, shell k + 1 is out of debt, and firing
    // smaller balls never touches it again.
    for k in (0..eccentricity).rev() {
        let ball = VertexSet::from_vertices(count, (0..count).filter(|&v| dist[v] <= k));
        let mut times = 0i64;
        for v in (0..count).filter(|&v| dist[v] == k + 1 && values[v] < 0) {
            let inward = g.neighbor_set(v).intersection_count(&ball) as i64;
            times = times.max((-values[v] + inward - 1) / inward);
        }
        if times > 0 {
            fire_in_place(g, &mut values, &ball, times);
            script.add_set(&ball, times);
        }
    }

    // Stage 2: fire the unburned set as often as it stays legal, then re-burn.
    loop {
        let report = burn(g, &values, base);
        if report.fully_burned() {
            break;
        }
        let unburned = report.unburned;
        let times = unburned
            .iter()
            .filter_map(|v| {
                let out = (g.neighbors(v).len() - g.neighbor_set(v).intersection_count(&unburned))
                    as i64;
                (out > 0).then(|| values[v] / out)
            })
            .min()
            .unwrap_or(0);
        if times < 1 {
            return Err(Error::Internal(format!(
                "unburned set {unburned:?} is not a legal firing"
            )));
        }
        fire_in_place(g, &mut values, &unburned, times);
        script.add_set(&unburned, times);
    }

    script.normalize();
    Ok((Divisor::new(values), script))
}

/// Reduced form only, at the canonical base.
pub fn canonical_form(g: &Graph, d: &Divisor) -> Result<Divisor> {
    q_reduce(g, d, CANONICAL_BASE).map(|(r, _)| r)
}

/// `d1 ~ d2`: equal degree and identical reduced forms at the canonical base.
pub fn equivalent(g: &Graph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    check_divisor(g, d1)?;
    check_divisor(g, d2)?;
    if d1.degree() != d2.degree() {
        return Ok(false);
    }
    Ok(canonical_form(g, d1)? == canonical_form(g, d2)?)
}
