//! Browser demo. Three operations on a small board: list its maximum
//! independent sets, burn a divisor from a base vertex, and reduce it.
//!
//! The `*_json` functions are plain Rust so they can be tested natively; the
//! exported wrappers only convert errors into JS exceptions.

use chipfire::{
    dhar_burn, has_positive_rank, max_independent_sets, q_reduce, queen_gonality_formula,
    toroidal_gonality_formula, Divisor, Graph,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest side length the page offers; bigger tori make the set search slow.
pub const MAX_SIDE: usize = 8;
/// Independent sets shipped to the page at most.
const MAX_SETS_SHOWN: usize = 500;

fn board(m: usize, n: usize, toroidal: bool) -> Result<Graph, String> {
    if m > MAX_SIDE || n > MAX_SIDE {
        return Err(format!("board sides are limited to {MAX_SIDE}"));
    }
    let g = if toroidal {
        Graph::toroidal_queen(m, n)
    } else {
        Graph::queen(m, n)
    };
    g.map_err(|e| e.to_string())
}

fn divisor(g: &Graph, text: &str) -> Result<Divisor, String> {
    let d = Divisor::parse(text).map_err(|e| e.to_string())?;
    if d.len() != g.vertex_count() {
        return Err(format!("expected {} entries, got {}", g.vertex_count(), d.len()));
    }
    Ok(d)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Summary {
    m: usize,
    n: usize,
    toroidal: bool,
    vertex_count: usize,
    edge_count: usize,
    edges: Vec<[usize; 2]>,
    alpha: usize,
    set_count: usize,
    sets: Vec<Vec<usize>>,
    gonality: u64,
}

/// Board summary with its maximum independent sets.
pub fn board_json(m: usize, n: usize, toroidal: bool) -> Result<String, String> {
    let g = board(m, n, toroidal)?;
    let mis = max_independent_sets(&g, g.vertex_count()).map_err(|e| e.to_string())?;
    let gonality = if toroidal {
        toroidal_gonality_formula(m, n)
    } else {
        queen_gonality_formula(m, n)
    }
    .map_err(|e| e.to_string())?;
    to_json(&Summary {
        m,
        n,
        toroidal,
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        edges: g.edges().map(|(u, v)| [u, v]).collect(),
        alpha: mis.alpha,
        set_count: mis.sets.len(),
        sets: mis.sets.iter().take(MAX_SETS_SHOWN).map(|s| s.to_vec()).collect(),
        gonality,
    })
}

#[derive(Serialize)]
struct Burn {
    burned_order: Vec<usize>,
    unburned: Vec<usize>,
}

/// Burning order from `q` and the vertices left standing.
pub fn burn_json(m: usize, n: usize, toroidal: bool, chips: &str, q: usize) -> Result<String, String> {
    let g = board(m, n, toroidal)?;
    let d = divisor(&g, chips)?;
    let report = dhar_burn(&g, &d, q).map_err(|e| e.to_string())?;
    to_json(&Burn {
        burned_order: report.burned_order,
        unburned: report.unburned.to_vec(),
    })
}

#[derive(Serialize)]
struct Reduced {
    values: Vec<i64>,
    fires: Vec<i64>,
    positive_rank: bool,
}

/// The `q`-reduced divisor, its firing script and whether the class has positive rank.
pub fn reduce_json(m: usize, n: usize, toroidal: bool, chips: &str, q: usize) -> Result<String, String> {
    let g = board(m, n, toroidal)?;
    let d = divisor(&g, chips)?;
    let (reduced, script) = q_reduce(&g, &d, q).map_err(|e| e.to_string())?;
    let positive_rank = has_positive_rank(&g, &d).map_err(|e| e.to_string())?;
    to_json(&Reduced {
        values: reduced.values,
        fires: script.fires,
        positive_rank,
    })
}

fn js(result: Result<String, String>) -> Result<String, JsValue> {
    result.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = boardInfo)]
pub fn board_info(m: usize, n: usize, toroidal: bool) -> Result<String, JsValue> {
    js(board_json(m, n, toroidal))
}

#[wasm_bindgen]
pub fn burn(m: usize, n: usize, toroidal: bool, chips: &str, q: usize) -> Result<String, JsValue> {
    js(burn_json(m, n, toroidal, chips, q))
}

#[wasm_bindgen]
pub fn reduce(m: usize, n: usize, toroidal: bool, chips: &str, q: usize) -> Result<String, JsValue> {
    js(reduce_json(m, n, toroidal, chips, q))
}
