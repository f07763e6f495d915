//! Explicitly enumerated finite permutation groups.
//!
//! Elements are kept in a sorted vector (lexicographic on image sequences),
//! so every element has a stable index and index sets are meaningful across
//! runs. Multiplication/inverse tables and conjugacy-class data are built
//! lazily behind `OnceLock`s; a group is immutable once constructed and safe
//! to share across threads.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::classes::ClassData;
use crate::perm::{Permutation, MAX_DEGREE};

/// Default cap on the order of a generated group (10!).
pub const DEFAULT_ORDER_CAP: usize = 3_628_800;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("degree {0} out of range 1..={MAX_DEGREE}")]
    BadDegree(usize),
    #[error("generated group exceeds the order cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element {element} is not a member of the group")]
    NotMember { element: String },
    #[error("the given elements do not form a subgroup of the ambient group")]
    NotSubgroup,
    #[error("group order {order} exceeds the enumeration cap {cap}")]
    EnumerationCapExceeded { order: usize, cap: usize },
    #[error("degree {degree} outside the supported range {min}..={max}")]
    DegreeOutOfRange { degree: usize, min: usize, max: usize },
}

struct Tables {
    /// `mul[a * m + b]` = index of `elements[a] ∘ elements[b]`.
    mul: Vec<u16>,
    inv: Vec<u16>,
}

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    /// Sorted ascending; index 0 is always the identity.
    elements: Vec<Permutation>,
    tables: OnceLock<Tables>,
    pub(crate) class_data: OnceLock<ClassData>,
    squares: OnceLock<BitSet>,
}

impl PermGroup {
    fn from_parts(degree: usize, generators: Vec<Permutation>, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        debug_assert!(elements[0].is_identity());
        PermGroup {
            degree,
            generators,
            elements,
            tables: OnceLock::new(),
            class_data: OnceLock::new(),
            squares: OnceLock::new(),
        }
    }

    /// Closes a generating set under composition (default order cap).
    pub fn closure(degree: usize, generators: Vec<Permutation>) -> Result<Self, GroupError> {
        Self::closure_with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn closure_with_cap(
        degree: usize,
        generators: Vec<Permutation>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(GroupError::BadDegree(degree));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    got: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let next = g.compose(s);
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(GroupError::OrderCapExceeded { cap });
                    }
                    queue.push_back(next);
                }
            }
        }
        Ok(Self::from_parts(degree, generators, seen.into_iter().collect()))
    }

    /// The full symmetric group, generated by adjacent transpositions.
    pub fn symmetric(n: usize) -> Result<Self, GroupError> {
        let generators = (1..n)
            .map(|i| Permutation::from_disjoint_cycles(n, &[vec![i, i + 1]]).unwrap())
            .collect();
        Self::closure(n, generators)
    }

    /// The alternating group, generated by 3-cycles.
    pub fn alternating(n: usize) -> Result<Self, GroupError> {
        let generators = (3..=n)
            .map(|k| Permutation::from_disjoint_cycles(n, &[vec![1, 2, k]]).unwrap())
            .collect();
        Self::closure(n, generators)
    }

    /// Closes generators inside this group; errors if any generator is not a
    /// member.
    pub fn subgroup(&self, generators: &[Permutation]) -> Result<Self, GroupError> {
        for g in generators {
            if g.degree() != self.degree {
                return Err(GroupError::DegreeMismatch {
                    expected: self.degree,
                    got: g.degree(),
                });
            }
            if !self.contains(g) {
                return Err(GroupError::NotMember {
                    element: g.to_string(),
                });
            }
        }
        Self::closure_with_cap(self.degree, generators.to_vec(), self.order())
    }

    /// Whether the given elements form a subgroup of this group.
    pub fn is_subgroup(&self, elements: &[Permutation]) -> bool {
        let set: HashSet<&Permutation> = elements.iter().collect();
        if !set.contains(&Permutation::identity(self.degree)) {
            return false;
        }
        for p in &set {
            if p.degree() != self.degree || !self.contains(p) {
                return false;
            }
            if !set.contains(&p.inverse()) {
                return false;
            }
            for q in &set {
                if !set.contains(&p.compose(q)) {
                    return false;
                }
            }
        }
        true
    }

    /// Rebuilds a subgroup object from element indices of this group,
    /// computing a small generating set greedily.
    pub(crate) fn subgroup_from_indices(&self, members: &BitSet) -> PermGroup {
        let mut generators: Vec<usize> = Vec::new();
        let mut closed = BitSet::new(self.order());
        closed.insert(self.identity_index());
        for e in members.iter() {
            if !closed.contains(e) {
                generators.push(e);
                closed = self.close_indices(&generators);
            }
        }
        debug_assert_eq!(&closed, members);
        let elements = members.iter().map(|i| self.elements[i].clone()).collect();
        let generators = generators.iter().map(|&i| self.elements[i].clone()).collect();
        PermGroup::from_parts(self.degree, generators, elements)
    }

    /// Builds a subgroup object from member indices and a generating set
    /// already known to close to exactly those members.
    pub(crate) fn subgroup_with_generators(
        &self,
        members: &BitSet,
        generator_indices: &[usize],
    ) -> PermGroup {
        debug_assert_eq!(&self.close_indices(generator_indices), members);
        let elements = members.iter().map(|i| self.elements[i].clone()).collect();
        let generators = generator_indices
            .iter()
            .map(|&i| self.elements[i].clone())
            .collect();
        PermGroup::from_parts(self.degree, generators, elements)
    }

    /// Closure of a set of element indices under the group product.
    pub(crate) fn close_indices(&self, seed: &[usize]) -> BitSet {
        let m = self.order();
        let mut bits = BitSet::new(m);
        bits.insert(self.identity_index());
        let mut queue: Vec<usize> = vec![self.identity_index()];
        while let Some(a) = queue.pop() {
            for &s in seed {
                let t = self.mul_index(a, s);
                if !bits.contains(t) {
                    bits.insert(t);
                    queue.push(t);
                }
            }
        }
        bits
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// Index 0 by construction: the identity is lexicographically least.
    pub fn identity_index(&self) -> usize {
        0
    }

    fn tables(&self) -> &Tables {
        self.tables.get_or_init(|| {
            let m = self.order();
            assert!(m <= u16::MAX as usize, "group too large for index tables");
            let mut mul = vec![0u16; m * m];
            for a in 0..m {
                for b in 0..m {
                    let product = self.elements[a].compose(&self.elements[b]);
                    mul[a * m + b] = self.index_of(&product).expect("closed under product") as u16;
                }
            }
            let inv = (0..m)
                .map(|a| self.index_of(&self.elements[a].inverse()).expect("closed under inverse") as u16)
                .collect();
            Tables { mul, inv }
        })
    }

    /// Index of `elements[a] ∘ elements[b]` (the group product `ab`).
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let t = self.tables();
        t.mul[a * self.order() + b] as usize
    }

    pub fn inv_index(&self, a: usize) -> usize {
        self.tables().inv[a] as usize
    }

    /// Index of the conjugate `c a c⁻¹`.
    pub fn conj_index(&self, c: usize, a: usize) -> usize {
        self.mul_index(self.mul_index(c, a), self.inv_index(c))
    }

    /// Indices of a subgroup's elements within this group, or an error if it
    /// is not contained.
    pub fn member_indices(&self, subgroup: &PermGroup) -> Result<BitSet, GroupError> {
        if subgroup.degree != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                got: subgroup.degree,
            });
        }
        let mut bits = BitSet::new(self.order());
        for p in &subgroup.elements {
            match self.index_of(p) {
                Some(i) => bits.insert(i),
                None => return Err(GroupError::NotSubgroup),
            }
        }
        Ok(bits)
    }

    /// Deterministic identity of the group as a set: the sorted member cycle
    /// expressions joined with `|`.
    pub fn fingerprint(&self) -> String {
        let mut exprs: Vec<String> = self.elements.iter().map(|p| p.to_string()).collect();
        exprs.sort_unstable();
        exprs.join("|")
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PermGroup(degree={}, order={})", self.degree, self.order())
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        // Lazy caches are rebuilt on demand in the clone.
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            tables: OnceLock::new(),
            class_data: OnceLock::new(),
            squares: OnceLock::new(),
        }
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

pub(crate) fn squares_cache(g: &PermGroup) -> &BitSet {
    g.squares.get_or_init(|| {
        let m = g.order();
        let mut bits = BitSet::new(m);
        for a in 0..m {
            bits.insert(g.mul_index(a, a));
        }
        bits
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_cycles;

    fn perm(degree: usize, text: &str) -> Permutation {
        parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn closure_generates_expected_orders() {
        let g = PermGroup::closure(5, vec![perm(5, "(1 2)"), perm(5, "(1 2 3 4 5)")]).unwrap();
        assert_eq!(g.order(), 120);
        let a4 = PermGroup::closure(4, vec![perm(4, "(1 2 3)"), perm(4, "(2 3 4)")]).unwrap();
        assert_eq!(a4.order(), 12);
        let trivial = PermGroup::closure(3, vec![]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert!(trivial.element(0).is_identity());
    }

    #[test]
    fn closure_respects_cap() {
        assert_eq!(
            PermGroup::closure_with_cap(5, vec![perm(5, "(1 2)"), perm(5, "(1 2 3 4 5)")], 60),
            Err(GroupError::OrderCapExceeded { cap: 60 })
        );
    }

    #[test]
    fn named_groups() {
        assert_eq!(PermGroup::symmetric(4).unwrap().order(), 24);
        assert_eq!(PermGroup::alternating(5).unwrap().order(), 60);
        let a3 = PermGroup::alternating(3).unwrap();
        let members: Vec<String> = a3.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(members, vec!["()", "(1 2 3)", "(1 3 2)"]);
    }

    #[test]
    fn subgroup_closure_and_errors() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let klein = s4
            .subgroup(&[perm(4, "(1 2)(3 4)"), perm(4, "(1 3)(2 4)")])
            .unwrap();
        assert_eq!(klein.order(), 4);
        let s5 = PermGroup::symmetric(5).unwrap();
        assert_eq!(s5.subgroup(&[perm(5, "(1 2 3 4 5)")]).unwrap().order(), 5);
        let s3 = PermGroup::symmetric(3).unwrap();
        assert!(matches!(
            s3.subgroup(&[perm(4, "(1 2 3 4)")]),
            Err(GroupError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn is_subgroup_checks_closure() {
        let s3 = PermGroup::symmetric(3).unwrap();
        assert!(s3.is_subgroup(&[
            Permutation::identity(3),
            perm(3, "(1 2 3)"),
            perm(3, "(1 3 2)")
        ]));
        assert!(!s3.is_subgroup(&[Permutation::identity(3), perm(3, "(1 2 3)")]));
        assert!(!s3.is_subgroup(&[perm(3, "(1 2)")]));
    }

    #[test]
    fn closure_is_idempotent() {
        let d4 = PermGroup::closure(4, vec![perm(4, "(1 2 3 4)"), perm(4, "(1 3)")]).unwrap();
        let again = PermGroup::closure(4, d4.elements().to_vec()).unwrap();
        assert_eq!(d4, again);
    }

    #[test]
    fn element_order_is_deterministic_and_identity_first() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let images: Vec<Vec<usize>> = s3.elements().iter().map(|p| p.images()).collect();
        let mut sorted = images.clone();
        sorted.sort();
        assert_eq!(images, sorted);
        assert!(s3.element(0).is_identity());
    }

    #[test]
    fn index_tables_match_direct_products() {
        let s4 = PermGroup::symmetric(4).unwrap();
        for a in 0..s4.order() {
            assert_eq!(
                s4.element(s4.inv_index(a)),
                &s4.element(a).inverse()
            );
            for b in [0usize, 3, 11, 23] {
                let expected = s4.element(a).compose(s4.element(b));
                assert_eq!(s4.element(s4.mul_index(a, b)), &expected);
            }
        }
    }

    #[test]
    fn fingerprint_is_sorted_expressions() {
        let a3 = PermGroup::alternating(3).unwrap();
        assert_eq!(a3.fingerprint(), "()|(1 2 3)|(1 3 2)");
    }
}
