//! Browser bindings: a thin layer over `capelli` returning rendered text.
//!
//! The plain functions return `Result<String, String>` so they can be tested
//! on the host; the `wasm_bindgen` exports forward to them.

use capelli::capelli::{column_capelli, quantum_immanant, schur_element};
use capelli::combinatorics::Partition;
use capelli::ugl::UglElement;
use wasm_bindgen::prelude::*;

/// Upper bound on `n` and on the weight accepted from the page.
pub const MAX_SIZE: usize = 4;

fn check_size(what: &str, v: usize) -> Result<(), String> {
    if v == 0 || v > MAX_SIZE {
        return Err(format!("{what} must be between 1 and {MAX_SIZE}"));
    }
    Ok(())
}

fn parse_indices(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad index {t:?}")))
        .collect()
}

/// Quantum immanant of `shape` in `U(gl(n))`, or its Schur element.
pub fn quantum_immanant_text(shape: &str, n: usize, schur: bool) -> Result<String, String> {
    check_size("n", n)?;
    let shape = Partition::parse(shape).map_err(|e| e.to_string())?;
    check_size("weight", shape.weight())?;
    let x = if schur {
        schur_element(&shape, n)
    } else {
        quantum_immanant(&shape, n)
    };
    x.map(|x| x.to_text()).map_err(|e| e.to_string())
}

/// Column Capelli bitableau `[rows|cols]` in `U(gl(n))`.
pub fn column_capelli_text(rows: &str, cols: &str, n: usize) -> Result<String, String> {
    check_size("n", n)?;
    let (rows, cols) = (parse_indices(rows)?, parse_indices(cols)?);
    check_size("depth", rows.len().max(1))?;
    column_capelli(&rows, &cols, n)
        .map(|x| x.to_text())
        .map_err(|e| e.to_string())
}

/// Normal form of a text element and whether it is central.
pub fn centrality_text(element: &str, n: usize) -> Result<String, String> {
    check_size("n", n)?;
    let x = UglElement::parse_text(element, n).map_err(|e| e.to_string())?;
    Ok(match x.first_noncommuting_generator() {
        None => format!("{x}\ncentral"),
        Some((i, j)) => {
            let c = x.ad(i, j).map_err(|e| e.to_string())?;
            format!("{x}\nnot central: [e[{i},{j}], x] = {c}")
        }
    })
}

#[wasm_bindgen(js_name = quantumImmanant)]
pub fn quantum_immanant_js(shape: &str, n: usize, schur: bool) -> Result<String, JsError> {
    quantum_immanant_text(shape, n, schur).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = columnCapelli)]
pub fn column_capelli_js(rows: &str, cols: &str, n: usize) -> Result<String, JsError> {
    column_capelli_text(rows, cols, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = centrality)]
pub fn centrality_js(element: &str, n: usize) -> Result<String, JsError> {
    centrality_text(element, n).map_err(|e| JsError::new(&e))
}
