use std::fmt::Write;

use bup4_core::classify::ExpressionTable;
use bup4_core::{ExponentTuple, Hit, SearchReport};

/// Left-aligned columns separated by two spaces; the last column is not padded.
fn columns(rows: &[Vec<String>]) -> String {
    let n = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..n).map(|i| rows.iter().filter_map(|r| r.get(i)).map(|c| c.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (i, cell) in row.iter().enumerate() {
            if i + 1 == row.len() {
                line += cell;
            } else {
                let _ = write!(line, "{cell:<w$}  ", w = widths[i]);
            }
        }
        out += line.trim_end();
        out.push('\n');
    }
    out
}

fn bound_text(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn hit_rows(hits: &[Hit]) -> Vec<Vec<String>> {
    let mut rows = vec![vec!["exponents".to_string(), "degree".to_string(), "polynomial".to_string()]];
    for h in hits {
        let exps = h.exps.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        rows.push(vec![format!("({exps})"), h.degree.to_string(), h.factored_text()]);
    }
    rows
}

pub fn search_table(r: &SearchReport) -> String {
    let bounds = r.bounds.iter().map(|(k, v)| format!("{k}={}", bound_text(v))).collect::<Vec<_>>().join(" ");
    let mut out = columns(&[
        vec!["search".into(), r.search.clone()],
        vec!["bounds".into(), bounds],
        vec!["candidates".into(), r.candidates.to_string()],
        vec!["hits".into(), r.hits.len().to_string()],
    ]);
    if !r.hits.is_empty() {
        out.push('\n');
        out += &columns(&hit_rows(&r.hits));
    }
    if !r.decomposable.is_empty() {
        let _ = write!(out, "\ndecomposable  {}\n", r.decomposable.len());
        out += &columns(&hit_rows(&r.decomposable));
    }
    out
}

pub fn tables_text(sporadic: &[ExponentTuple], tables: &[ExpressionTable]) -> String {
    let mut out = String::from("sporadic splitting bi-unitary perfect tuples (a >= b)\n");
    let rows: Vec<Vec<String>> = ["a", "b", "c", "d"]
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let mut row = vec![name.to_string()];
            row.extend(sporadic.iter().map(|t| t.0[i].to_string()));
            row
        })
        .collect();
    out += &columns(&rows);
    out += "\nbase: P = x, Q = P+1, R = P^3+P+1, S = P^3+P^2+1\n";
    for t in tables {
        let _ = write!(out, "\n{}\n", t.title);
        let mut rows = vec![vec!["exponent".into(), "shape".into(), "computed".into(), "predicted".into()]];
        for r in &t.rows {
            rows.push(vec![r.exponent.to_string(), r.pattern.clone(), r.computed.clone(), r.predicted.clone()]);
        }
        out += &columns(&rows);
    }
    out
}
