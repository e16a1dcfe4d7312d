//! Browser bindings: the circuit array, a single grid reduction, and the
//! leftmost diagonal with its approximations. Every function returns a JSON
//! string; fractions stay exact as `"p/q"` strings.

use circarray::array::{build_array, leftmost_diagonal};
use circarray::grid::{is_boundary, Grid, Side};
use circarray::reduction::reduce_k;
use circarray::sequence::{asymptotics_table, ASYMPTOTIC_HEADER};
use circarray::Rational;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

pub const MAX_COLS: usize = 10;
pub const MAX_GRID: usize = 24;
pub const MAX_DIAGONAL: usize = 60;

fn bounded(name: &str, v: usize, lo: usize, hi: usize) -> Result<usize, String> {
    if (lo..=hi).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{name} must be between {lo} and {hi}, got {v}"))
    }
}

/// Columns `1..=cols` as `{"cols": n, "columns": [[{"i", "value"}...]...]}`.
pub fn array_json(cols: usize) -> Result<String, String> {
    let cols = bounded("cols", cols, 1, MAX_COLS)?;
    let a = build_array(cols).map_err(|e| e.to_string())?;
    let columns: Vec<Value> = (1..=cols)
        .map(|j| {
            let col = a.column(j).unwrap_or_default();
            Value::Array(
                col.iter()
                    .map(|e| json!({"i": e.i, "value": e.value.to_string()}))
                    .collect(),
            )
        })
        .collect();
    Ok(json!({"cols": cols, "columns": columns}).to_string())
}

/// The `n`-grid with the given boundary and interior labels, reduced
/// `steps` times, as a list of triangles.
pub fn reduce_json(n: usize, steps: usize, boundary: &str, interior: &str) -> Result<String, String> {
    let n = bounded("n", n, 1, MAX_GRID)?;
    let steps = bounded("steps", steps, 0, n - 1)?;
    let parse = |s: &str| match s.trim().parse::<Rational>() {
        Ok(r) if r.is_positive() => Ok(r),
        _ => Err(format!("`{s}` is not a positive fraction")),
    };
    let (b, i) = (parse(boundary)?, parse(interior)?);
    let g = Grid::from_fn(n, |e| {
        if is_boundary(&e, n) == Ok(true) {
            b.clone()
        } else {
            i.clone()
        }
    })
    .map_err(|e| e.to_string())?;
    let g = reduce_k(&g, steps).map_err(|e| e.to_string())?;
    let triangles: Vec<Value> = (1..=g.m())
        .flat_map(|r| (1..=r).map(move |d| (r, d)))
        .map(|(r, d)| {
            let [l, rr, base] = [Side::L, Side::R, Side::B].map(|s| g.label(r, d, s).to_string());
            json!({"row": r, "diag": d, "L": l, "R": rr, "B": base})
        })
        .collect();
    Ok(json!({"m": g.m(), "reductions": g.reductions(), "triangles": triangles}).to_string())
}

/// `L_1..L_max_s` as fractions, plus the approximation table rows.
pub fn diagonal_json(max_s: usize) -> Result<String, String> {
    let max_s = bounded("max_s", max_s, 1, MAX_DIAGONAL)?;
    let diag = leftmost_diagonal(max_s).map_err(|e| e.to_string())?;
    let s_values: Vec<usize> = (1..=max_s).collect();
    let rows = asymptotics_table(&diag, &s_values).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| json!({"fraction": r.l.to_string(), "cells": r.cells().to_vec()}))
        .collect();
    Ok(json!({"header": ASYMPTOTIC_HEADER, "rows": rows}).to_string())
}

#[wasm_bindgen(js_name = circuitArray)]
pub fn circuit_array(cols: usize) -> Result<String, JsValue> {
    array_json(cols).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = reduceGrid)]
pub fn reduce_grid(n: usize, steps: usize, boundary: &str, interior: &str) -> Result<String, JsValue> {
    reduce_json(n, steps, boundary, interior).map_err(JsValue::from)
}

#[wasm_bindgen(js_name = leftDiagonal)]
pub fn left_diagonal(max_s: usize) -> Result<String, JsValue> {
    diagonal_json(max_s).map_err(JsValue::from)
}
