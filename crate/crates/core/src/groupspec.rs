//! The textual group-specification grammar shared by the CLI and reports:
//! `"S:n"`, `"A:n"`, or `"gens:n:<cycle-expr>;<cycle-expr>;..."`.

use thiserror::Error;

use crate::group::{GroupError, PermGroup};
use crate::notation::{parse_cycles, NotationError};
use crate::perm::Permutation;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpecError {
    #[error("malformed group spec {0:?}: expected \"S:n\", \"A:n\", or \"gens:n:<cycles>;...\"")]
    Malformed(String),
    #[error("bad degree in group spec: {0:?}")]
    BadDegree(String),
    #[error(transparent)]
    Notation(#[from] NotationError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Generated {
        degree: usize,
        generators: Vec<Permutation>,
    },
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("S:") {
            return Ok(GroupSpec::Symmetric(parse_degree(rest)?));
        }
        if let Some(rest) = text.strip_prefix("A:") {
            return Ok(GroupSpec::Alternating(parse_degree(rest)?));
        }
        if let Some(rest) = text.strip_prefix("gens:") {
            let (degree_text, gens_text) = rest
                .split_once(':')
                .ok_or_else(|| SpecError::Malformed(text.to_string()))?;
            let degree = parse_degree(degree_text)?;
            let generators = parse_generator_list(gens_text, degree)?;
            return Ok(GroupSpec::Generated { degree, generators });
        }
        Err(SpecError::Malformed(text.to_string()))
    }

    pub fn degree(&self) -> usize {
        match self {
            GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) => *n,
            GroupSpec::Generated { degree, .. } => *degree,
        }
    }

    pub fn realize(&self) -> Result<PermGroup, GroupError> {
        match self {
            GroupSpec::Symmetric(n) => PermGroup::symmetric(*n),
            GroupSpec::Alternating(n) => PermGroup::alternating(*n),
            GroupSpec::Generated { degree, generators } => {
                PermGroup::closure(*degree, generators.clone())
            }
        }
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupSpec::Symmetric(n) => write!(f, "S:{n}"),
            GroupSpec::Alternating(n) => write!(f, "A:{n}"),
            GroupSpec::Generated { degree, generators } => {
                let gens: Vec<String> = generators.iter().map(|p| p.to_string()).collect();
                write!(f, "gens:{degree}:{}", gens.join(";"))
            }
        }
    }
}

fn parse_degree(text: &str) -> Result<usize, SpecError> {
    let n: usize = text
        .trim()
        .parse()
        .map_err(|_| SpecError::BadDegree(text.to_string()))?;
    if n == 0 {
        return Err(SpecError::BadDegree(text.to_string()));
    }
    Ok(n)
}

/// Parses a `;`-separated list of cycle expressions. An empty list denotes
/// the trivial (empty) generating set.
pub fn parse_generator_list(text: &str, degree: usize) -> Result<Vec<Permutation>, NotationError> {
    text.split(';')
        .map(str::trim)
        .filter(|part| !part.is_empty())
        .map(|part| parse_cycles(part, degree))
        .collect()
}
