//! Value-semantic permutations on `{1, ..., n}`.
//!
//! Points are 1-based at every public interface; storage is 0-based and never
//! leaks. The composition convention is fixed once for the whole crate:
//! `(p * q)(i) = p(q(i))`, i.e. `q` is applied first.

use std::fmt;

use thiserror::Error;

/// Hard cap on the degree of a permutation. Desk-scale work never needs more,
/// and it keeps the packed `u8` image representation valid.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("degree must be between 1 and {MAX_DEGREE}, got {0}")]
    BadDegree(usize),
    #[error("images do not form a bijection of {{1..{degree}}}: {detail}")]
    NotBijection { degree: usize, detail: String },
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated within a cycle")]
    RepeatedPoint(usize),
    #[error("operation requires an involution, got an element of order {0}")]
    NotInvolution(u64),
}

/// A bijection of `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    /// `images[i]` is the 0-based image of the 0-based point `i`.
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(
            (1..=MAX_DEGREE).contains(&degree),
            "degree must be between 1 and {MAX_DEGREE}"
        );
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    /// Builds a permutation from its 1-based image sequence.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let degree = images.len();
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::BadDegree(degree));
        }
        let mut seen = vec![false; degree];
        let mut packed = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img > degree {
                return Err(PermError::NotBijection {
                    degree,
                    detail: format!("image {img} out of range"),
                });
            }
            if seen[img - 1] {
                return Err(PermError::NotBijection {
                    degree,
                    detail: format!("image {img} repeated"),
                });
            }
            seen[img - 1] = true;
            packed.push((img - 1) as u8);
        }
        Ok(Permutation { images: packed })
    }

    /// Builds a permutation from pairwise-disjoint cycles of 1-based points.
    pub fn from_disjoint_cycles(
        degree: usize,
        cycles: &[Vec<usize>],
    ) -> Result<Self, PermError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(PermError::BadDegree(degree));
        }
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(PermError::PointOutOfRange { point: pt, degree });
                }
                if seen[pt - 1] {
                    return Err(PermError::RepeatedPoint(pt));
                }
                seen[pt - 1] = true;
                let next = cycle[(k + 1) % cycle.len()];
                if next == 0 || next > degree {
                    return Err(PermError::PointOutOfRange { point: next, degree });
                }
                images[pt - 1] = (next - 1) as u8;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn image(&self, point: usize) -> usize {
        assert!(
            point >= 1 && point <= self.degree(),
            "point {point} out of range 1..={}",
            self.degree()
        );
        self.images[point - 1] as usize + 1
    }

    /// The 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i as u8 == img)
    }

    /// `(self * other)(i) = self(other(i))`; `other` is applied first.
    ///
    /// Panics if the degrees differ.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "cannot compose permutations of different degrees"
        );
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u8; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img as usize] = i as u8;
        }
        Permutation { images }
    }

    /// `self * x * self⁻¹`: relabels every point of `x`'s cycles by `self`.
    ///
    /// Panics if the degrees differ.
    pub fn conjugate(&self, x: &Permutation) -> Permutation {
        self.compose(x).compose(&self.inverse())
    }

    /// The points moved by the permutation, ascending and 1-based.
    pub fn support(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &img)| i as u8 != img)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Nontrivial cycles in canonical form: each cycle starts at its smallest
    /// point, cycles sorted by leading point, fixed points omitted.
    pub fn cycle_decomposition(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut pt = start;
            while !seen[pt] {
                seen[pt] = true;
                cycle.push(pt + 1);
                pt = self.images[pt] as usize;
            }
            cycles.push(cycle);
        }
        CycleDecomposition { degree: n, cycles }
    }

    pub fn order(&self) -> u64 {
        self.cycle_decomposition()
            .cycles
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self
            .cycle_decomposition()
            .cycles
            .iter()
            .map(|c| c.len() - 1)
            .sum();
        if transpositions % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn cycle_type(&self) -> CycleType {
        self.cycle_decomposition().cycle_type()
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    /// Number of disjoint transpositions of an involution (0 for the identity).
    pub fn transposition_count(&self) -> Result<usize, PermError> {
        if self.is_identity() {
            return Ok(0);
        }
        if !self.is_involution() {
            return Err(PermError::NotInvolution(self.order()));
        }
        Ok(self.cycle_decomposition().cycles.len())
    }

    /// Whether the permutation is a square in the full symmetric group of its
    /// degree: for every even length, the number of cycles of that length is
    /// even. Fast per-element alternative to enumerating all squares.
    pub fn is_square_in_symmetric(&self) -> bool {
        let mut count_by_len = [0usize; MAX_DEGREE + 1];
        for cycle in &self.cycle_decomposition().cycles {
            count_by_len[cycle.len()] += 1;
        }
        count_by_len
            .iter()
            .enumerate()
            .all(|(len, &count)| len % 2 != 0 || count % 2 == 0)
    }
}

/// Structural commutation test for two involutions.
///
/// `x` and `y` commute exactly when every transposition of `y` is either a
/// transposition of `x`, disjoint from the support of `x`, or part of a pair
/// of `y`-transpositions that rewires two full transpositions of `x`
/// (`(a b)(c d)` in `x` against `(a c)(b d)` or `(a d)(b c)` in `y`).
/// Returns an error if either input is not an involution.
pub fn involutions_commute_structural(
    x: &Permutation,
    y: &Permutation,
) -> Result<bool, PermError> {
    for p in [x, y] {
        if !p.is_involution() {
            return Err(PermError::NotInvolution(p.order()));
        }
    }
    assert_eq!(x.degree(), y.degree(), "degree mismatch");
    for cycle in &y.cycle_decomposition().cycles {
        let (a, b) = (cycle[0], cycle[1]);
        let in_x = |pt: usize| x.image(pt) != pt;
        match (in_x(a), in_x(b)) {
            (false, false) => continue,          // disjoint from Δ(x)
            (true, true) => {
                if x.image(a) == b {
                    continue;                    // shared transposition
                }
                // Crosses two transpositions of x; its mate must close the
                // rewiring of the remaining two points.
                if y.image(x.image(a)) != x.image(b) {
                    return Ok(false);
                }
            }
            _ => return Ok(false),               // one endpoint in Δ(x)
        }
    }
    Ok(true)
}

/// Parity of a permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Canonical decomposition into disjoint nontrivial cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub degree: usize,
    /// 1-based points; smallest point first in each cycle; cycles sorted by
    /// leading point; every cycle has length ≥ 2.
    pub cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_disjoint_cycles(self.degree, &self.cycles)
            .expect("canonical decomposition is always valid")
    }

    pub fn cycle_type(&self) -> CycleType {
        let moved: usize = self.cycles.iter().map(Vec::len).sum();
        let mut parts: Vec<usize> = self.cycles.iter().map(Vec::len).collect();
        parts.extend(std::iter::repeat(1).take(self.degree - moved));
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }
}

/// Multiset of cycle lengths (including fixed points), sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleType {
    pub parts: Vec<usize>,
}

impl CycleType {
    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.parts
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    /// Canonical cycle expression, e.g. `(1 2)(3 4 5)`; the identity is `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::format_cycles(self))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.degree())
    }
}
