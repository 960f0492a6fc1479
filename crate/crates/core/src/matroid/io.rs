//! Bases file format.
//!
//! ```text
//! # U_{1,2}
//! ground 2
//! 0
//! 1
//! ```
//!
//! One basis per line as ascending element ids; `-` is the empty set.

use std::fmt::Write as _;

use super::{Mask, SetSystem};
use crate::graph::{data_lines, parse_usize, ParseError};

pub fn read_bases<M: Mask>(text: &str) -> Result<SetSystem<M>, ParseError> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| ParseError::new(0, "missing `ground <m>` header"))?;
    let ground = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["ground", m] => parse_usize(hl, m)?,
        _ => return Err(ParseError::new(hl, "expected `ground <m>`")),
    };
    if ground > M::WIDTH {
        return Err(ParseError::new(hl, format!("ground size {ground} exceeds mask width {}", M::WIDTH)));
    }
    let mut bases = Vec::new();
    let mut line_of = Vec::new();
    for (ln, l) in lines {
        let mut mask = M::zero();
        if l != "-" {
            let mut prev = None;
            for tok in l.split_whitespace() {
                let e = parse_usize(ln, tok)?;
                if e >= ground {
                    return Err(ParseError::new(ln, format!("element {e} outside ground set of size {ground}")));
                }
                if prev.is_some_and(|p| p >= e) {
                    return Err(ParseError::new(ln, "elements must be strictly ascending"));
                }
                prev = Some(e);
                mask = mask | M::bit(e);
            }
        }
        bases.push(mask);
        line_of.push(ln);
    }
    SetSystem::new(ground, bases).map_err(|e| {
        let line = match e {
            super::SetSystemError::Duplicate { index, .. } => line_of[index],
            _ => hl,
        };
        ParseError::new(line, e.to_string())
    })
}

pub fn write_bases<M: Mask>(ss: &SetSystem<M>) -> String {
    let mut out = String::new();
    writeln!(out, "ground {}", ss.ground()).unwrap();
    for b in ss.bases() {
        if b.is_zero() {
            out.push_str("-\n");
        } else {
            let items: Vec<String> = b.elements().map(|e| e.to_string()).collect();
            writeln!(out, "{}", items.join(" ")).unwrap();
        }
    }
    out
}
