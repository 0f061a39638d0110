//! Rendering: carry matrices in the signed table layout, JSON values with
//! rationals as `num/den` strings, and CSV rows.

use carrykit_core::carries::{digit_base, signed_residue, CarryTable};
use carrykit_core::{CosetSystem, Rational, RepSet};
use serde_json::{json, Value};

/// Rationals serialize as strings to preserve exactness.
pub fn rational_json(r: Rational) -> Value {
    Value::String(r.to_string())
}

/// Carry value rendered for a digit system: 0, b, -b, 2b, ... For other
/// systems the raw element id is shown.
fn carry_label(base: Option<usize>, modulus: usize, value: usize) -> String {
    match base {
        Some(b) => {
            let s = signed_residue(modulus, value);
            let multiple = s / b as i64;
            match multiple {
                0 => "0".to_string(),
                1 => "b".to_string(),
                -1 => "-b".to_string(),
                k => format!("{k}b"),
            }
        }
        None => value.to_string(),
    }
}

fn rep_label(base: Option<usize>, modulus: usize, rep: usize) -> String {
    match base {
        Some(_) => signed_residue(modulus, rep).to_string(),
        None => rep.to_string(),
    }
}

/// Display order of coset indices: by signed representative value for digit
/// systems (the table layout of balanced digits), by coset id otherwise.
fn display_order(system: &CosetSystem, reps: &RepSet) -> Vec<usize> {
    let base = digit_base(system);
    let m = system.group().order();
    let mut order: Vec<usize> = (0..system.index()).collect();
    if base.is_some() {
        order.sort_by_key(|&i| signed_residue(m, reps.reps()[i]));
    }
    order
}

/// ASCII carry matrix in the table layout: row and column headers are the
/// representatives, entries are signed carry multiples.
pub fn render_matrix(system: &CosetSystem, reps: &RepSet, table: &CarryTable) -> String {
    let base = digit_base(system);
    let m = system.group().order();
    let order = display_order(system, reps);

    let headers: Vec<String> = order
        .iter()
        .map(|&i| rep_label(base, m, reps.reps()[i]))
        .collect();
    let cells: Vec<Vec<String>> = order
        .iter()
        .map(|&i| {
            order
                .iter()
                .map(|&j| carry_label(base, m, table.entry(i, j)))
                .collect()
        })
        .collect();
    let width = headers
        .iter()
        .chain(cells.iter().flatten())
        .map(|s| s.len())
        .max()
        .unwrap_or(1);

    let mut out = String::new();
    out.push_str(&" ".repeat(width + 1));
    out.push('|');
    for h in &headers {
        out.push_str(&format!(" {h:>width$}"));
    }
    out.push('\n');
    out.push_str(&"-".repeat(width + 1));
    out.push('+');
    out.push_str(&"-".repeat((width + 1) * headers.len()));
    out.push('\n');
    for (r, row) in cells.iter().enumerate() {
        out.push_str(&format!("{:>width$} |", headers[r]));
        for cell in row {
            out.push_str(&format!(" {cell:>width$}"));
        }
        out.push('\n');
    }
    let k = system.index();
    out.push_str(&format!(
        "\nnontrivial carries: {} / {}\n",
        table.nontrivial_count(),
        k * k
    ));
    let distinct: Vec<String> = table
        .distinct_values()
        .iter()
        .map(|&v| match base {
            Some(_) => format!("{} ({})", v, carry_label(base, m, v)),
            None => v.to_string(),
        })
        .collect();
    out.push_str(&format!("distinct carries: {}\n", distinct.join(", ")));
    out.push_str(&format!("score C(X) = {}\n", table.score()));
    out
}

/// Matrix as machine-readable JSON.
pub fn matrix_json(system: &CosetSystem, reps: &RepSet, table: &CarryTable) -> Value {
    let k = system.index();
    let entries: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).map(|j| table.entry(i, j)).collect())
        .collect();
    json!({
        "group": system.group().label(),
        "index": k,
        "subgroup_order": system.subgroup_order(),
        "reps": reps.reps(),
        "entries": entries,
        "nontrivial": table.nontrivial_count(),
        "distinct": table.distinct_values(),
        "score": rational_json(table.score()),
    })
}

/// Matrix as CSV: header row of representatives, then one row per
/// representative with the carry entries.
pub fn matrix_csv(system: &CosetSystem, reps: &RepSet, table: &CarryTable) -> String {
    let k = system.index();
    let mut out = String::from("rep");
    for j in 0..k {
        out.push_str(&format!(",{}", reps.reps()[j]));
    }
    out.push('\n');
    for i in 0..k {
        out.push_str(&reps.reps()[i].to_string());
        for j in 0..k {
            out.push_str(&format!(",{}", table.entry(i, j)));
        }
        out.push('\n');
    }
    out.push_str(&format!(
        "score,{}\ndistinct,{}\n",
        table.score(),
        table
            .distinct_values()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    ));
    out
}
