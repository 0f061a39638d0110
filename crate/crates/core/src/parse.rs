//! Text specs for groups, subgroups, and representative sets, plus the
//! whitespace-separated integer file formats.
//!
//! Grammar:
//! - group:     `Z/9`, `Z/5xZ/5` (left-associated products), `table:PATH`
//! - subgroup:  `mult:5` (cyclic subgroup generated by 5), `0,3,6`,
//!   `file:PATH`
//! - reps:      `standard:10`, `balanced:5`, `0,1,8`, `file:PATH`
//!
//! Cayley-table files hold the order n on the first line, then n rows of n
//! whitespace-separated element ids. Set files are whitespace-separated
//! integers.

use crate::carries;
use crate::group::{CosetSystem, Elem, FiniteGroup, RepSet};
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "invalid spec `{}` at position {}: {}",
            self.input, self.pos, self.msg
        )
    }
}

impl std::error::Error for ParseError {}

fn err<T>(input: &str, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        input: input.to_string(),
        pos,
        msg: msg.into(),
    })
}

fn parse_usize(input: &str, pos: usize, text: &str) -> Result<usize, ParseError> {
    text.parse::<usize>().map_err(|_| ParseError {
        input: input.to_string(),
        pos,
        msg: format!("expected a nonnegative integer, found `{text}`"),
    })
}

/// Parses `Z/9`, `Z/5xZ/5`, or `table:PATH`.
pub fn parse_group(spec: &str) -> Result<FiniteGroup, ParseError> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("table:") {
        let rows = read_table_file(Path::new(path)).map_err(|e| ParseError {
            input: spec.to_string(),
            pos: 6,
            msg: e,
        })?;
        return FiniteGroup::from_table(&rows).map_err(|e| ParseError {
            input: spec.to_string(),
            pos: 6,
            msg: e.to_string(),
        });
    }
    let mut group: Option<FiniteGroup> = None;
    let mut offset = 0;
    for part in spec.split('x') {
        let factor = parse_cyclic(spec, offset, part)?;
        group = Some(match group {
            None => factor,
            Some(g) => FiniteGroup::product(g, factor),
        });
        offset += part.len() + 1;
    }
    group.ok_or(ParseError {
        input: spec.to_string(),
        pos: 0,
        msg: "empty group spec".into(),
    })
}

fn parse_cyclic(input: &str, pos: usize, part: &str) -> Result<FiniteGroup, ParseError> {
    let Some(rest) = part.strip_prefix("Z/") else {
        return err(input, pos, format!("expected `Z/<m>`, found `{part}`"));
    };
    let m = parse_usize(input, pos + 2, rest)?;
    FiniteGroup::cyclic(m).map_err(|e| ParseError {
        input: input.to_string(),
        pos: pos + 2,
        msg: e.to_string(),
    })
}

/// Resolves a subgroup spec to an element list: `mult:b`, a comma list, or
/// `file:PATH`.
pub fn resolve_subgroup(group: &FiniteGroup, spec: &str) -> Result<Vec<Elem>, ParseError> {
    let spec = spec.trim();
    if let Some(gen) = spec.strip_prefix("mult:") {
        let b = parse_usize(spec, 5, gen)?;
        let Some(m) = group.cyclic_modulus() else {
            return err(spec, 0, "mult: requires a cyclic group");
        };
        if b == 0 || b > m {
            return err(spec, 5, format!("generator {b} is out of range for Z/{m}"));
        }
        let mut elems = Vec::new();
        let mut x = 0;
        loop {
            elems.push(x);
            x = (x + b) % m;
            if x == 0 {
                break;
            }
        }
        elems.sort_unstable();
        return Ok(elems);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        return read_elem_file(spec, Path::new(path));
    }
    parse_elem_list(spec)
}

/// Resolves a representative spec against a validated system: `standard:b`,
/// `balanced:b`, a comma list, or `file:PATH`.
pub fn resolve_reps(system: &CosetSystem, spec: &str) -> Result<RepSet, ParseError> {
    let spec = spec.trim();
    let named =
        |reps: Result<RepSet, carries::CarriesError>, b: usize| -> Result<RepSet, ParseError> {
            match carries::digit_base(system) {
                Some(base) if base == b => reps.map_err(|e| ParseError {
                    input: spec.to_string(),
                    pos: 0,
                    msg: e.to_string(),
                }),
                Some(base) => err(spec, 0, format!("system has base {base}, spec names {b}")),
                None => err(spec, 0, "named digit sets need a b(Z/b^2) system"),
            }
        };
    if let Some(b) = spec.strip_prefix("standard:") {
        let b = parse_usize(spec, 9, b)?;
        return named(carries::standard_reps(system), b);
    }
    if let Some(b) = spec.strip_prefix("balanced:") {
        let b = parse_usize(spec, 9, b)?;
        return named(carries::balanced_reps(system), b);
    }
    let elems = if let Some(path) = spec.strip_prefix("file:") {
        read_elem_file(spec, Path::new(path))?
    } else {
        parse_elem_list(spec)?
    };
    // accept representatives in any order; store by coset id
    let mut by_coset = vec![None; system.index()];
    for &e in &elems {
        if e >= system.group().order() {
            return err(spec, 0, format!("element {e} is out of range"));
        }
        let c = system.coset_of(e);
        if by_coset[c].replace(e).is_some() {
            return err(spec, 0, format!("two representatives for coset {c}"));
        }
    }
    let reps: Option<Vec<Elem>> = by_coset.into_iter().collect();
    match reps {
        Some(reps) => RepSet::new(system, reps).map_err(|e| ParseError {
            input: spec.to_string(),
            pos: 0,
            msg: e.to_string(),
        }),
        None => err(spec, 0, "some coset has no representative"),
    }
}

fn parse_elem_list(spec: &str) -> Result<Vec<Elem>, ParseError> {
    let mut elems = Vec::new();
    let mut pos = 0;
    for part in spec.split(',') {
        let trimmed = part.trim();
        if trimmed.is_empty() {
            return err(spec, pos, "empty entry in element list");
        }
        elems.push(parse_usize(spec, pos, trimmed)?);
        pos += part.len() + 1;
    }
    Ok(elems)
}

fn read_elem_file(spec: &str, path: &Path) -> Result<Vec<Elem>, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        input: spec.to_string(),
        pos: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })?;
    text.split_whitespace()
        .map(|tok| parse_usize(spec, 0, tok))
        .collect()
}

/// Whitespace-separated signed integers, for the integer-model inputs.
pub fn read_int_file(path: &Path) -> Result<Vec<i64>, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        input: path.display().to_string(),
        pos: 0,
        msg: format!("cannot read file: {e}"),
    })?;
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<i64>().map_err(|_| ParseError {
                input: path.display().to_string(),
                pos: 0,
                msg: format!("expected an integer, found `{tok}`"),
            })
        })
        .collect()
}

fn read_table_file(path: &Path) -> Result<Vec<Vec<usize>>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or("table file is empty")?
        .parse()
        .map_err(|_| "first token must be the order n".to_string())?;
    let mut rows = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = Vec::with_capacity(n);
        for c in 0..n {
            let tok = tokens
                .next()
                .ok_or(format!("table ends early at row {r}, column {c}"))?;
            row.push(
                tok.parse::<usize>()
                    .map_err(|_| format!("bad entry `{tok}` at row {r}, column {c}"))?,
            );
        }
        rows.push(row);
    }
    if tokens.next().is_some() {
        return Err("trailing tokens after the table".into());
    }
    Ok(rows)
}
