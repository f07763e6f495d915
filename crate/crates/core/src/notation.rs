//! Cycle notation: the textual form of permutations used by the CLI, group
//! specifications, and JSON certificates.
//!
//! Grammar: `expression := "()" | cycle+` with `cycle := "(" int (ws int)+ ")"`.
//! Integers are 1-based decimal. Adjacent cycles need not be disjoint; they
//! are composed right factor first, so `"(1 2)(2 3)"` parses to `(1 2 3)`.

use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NotationError {
    #[error("malformed cycle expression at byte {0}: {1}")]
    Malformed(usize, String),
    #[error("point {point} exceeds degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated within a cycle")]
    RepeatedPoint(usize),
    #[error("a cycle needs at least two points")]
    ShortCycle,
}

/// Renders the canonical cycle expression of a permutation.
///
/// Smallest point leads each cycle, cycles are sorted by leading point,
/// fixed points are omitted, and the identity renders as `"()"`.
pub fn format_cycles(p: &Permutation) -> String {
    let decomposition = p.cycle_decomposition();
    if decomposition.cycles.is_empty() {
        return "()".to_string();
    }
    let mut out = String::new();
    for cycle in &decomposition.cycles {
        out.push('(');
        for (k, pt) in cycle.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(&pt.to_string());
        }
        out.push(')');
    }
    out
}

/// Parses a cycle expression into a permutation of the given degree.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, NotationError> {
    let cycles = parse_cycle_lists(text)?;
    if cycles.is_empty() {
        return Ok(Permutation::identity(degree));
    }
    let mut product = Permutation::identity(degree);
    // Left-to-right text order means the leftmost cycle is applied last,
    // matching the fixed composition convention.
    for cycle in &cycles {
        if let Some(&pt) = cycle.iter().find(|&&pt| pt > degree) {
            return Err(NotationError::PointOutOfRange { point: pt, degree });
        }
        let single = Permutation::from_disjoint_cycles(degree, std::slice::from_ref(cycle))
            .expect("points are distinct and in range");
        product = product.compose(&single);
    }
    Ok(product)
}

/// Tokenizes an expression into raw cycles (lists of 1-based points) without
/// degree checks. `"()"` returns the empty list.
pub(crate) fn parse_cycle_lists(text: &str) -> Result<Vec<Vec<usize>>, NotationError> {
    let bytes = text.as_bytes();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut pos = 0;
    let mut saw_empty = false;
    while pos < bytes.len() {
        let c = bytes[pos] as char;
        if c.is_whitespace() {
            pos += 1;
            continue;
        }
        if c != '(' {
            return Err(NotationError::Malformed(pos, format!("expected '(', found {c:?}")));
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            while pos < bytes.len() && (bytes[pos] as char).is_whitespace() {
                pos += 1;
            }
            match bytes.get(pos) {
                None => return Err(NotationError::Malformed(pos, "unclosed cycle".into())),
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(b'0'..=b'9') => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let pt: usize = text[start..pos].parse().map_err(|_| {
                        NotationError::Malformed(start, "integer too large".into())
                    })?;
                    if pt == 0 {
                        return Err(NotationError::Malformed(start, "points are 1-based".into()));
                    }
                    if cycle.contains(&pt) {
                        return Err(NotationError::RepeatedPoint(pt));
                    }
                    cycle.push(pt);
                }
                Some(&other) => {
                    return Err(NotationError::Malformed(
                        pos,
                        format!("unexpected character {:?}", other as char),
                    ));
                }
            }
        }
        if cycle.is_empty() {
            saw_empty = true;
        } else if cycle.len() == 1 {
            return Err(NotationError::ShortCycle);
        } else {
            cycles.push(cycle);
        }
    }
    if saw_empty && !cycles.is_empty() {
        return Err(NotationError::Malformed(0, "\"()\" cannot be mixed with cycles".into()));
    }
    if !saw_empty && cycles.is_empty() {
        return Err(NotationError::Malformed(0, "empty expression".into()));
    }
    Ok(cycles)
}
