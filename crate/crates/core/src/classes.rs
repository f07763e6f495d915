//! Conjugacy classes, square sets, normal subsets, and involution profiles.

use std::collections::BTreeMap;

use crate::bitset::BitSet;
use crate::group::{squares_cache, GroupError, PermGroup};
use crate::perm::Permutation;

/// A conjugation orbit inside a fixed group, stored as an element-index set.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// The minimal member under the group's element order.
    pub representative: Permutation,
    pub members: BitSet,
    /// Whether the members are squares in the ambient group. Squareness is a
    /// class function; this is asserted when classes are built.
    pub is_square_class: bool,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

pub(crate) struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<u32>,
}

fn class_data(g: &PermGroup) -> &ClassData {
    g.class_data.get_or_init(|| {
        let m = g.order();
        let squares = squares_cache(g);
        let generator_indices: Vec<usize> = g
            .generators()
            .iter()
            .map(|p| g.index_of(p).expect("generators are members"))
            .collect();
        let mut class_of = vec![u32::MAX; m];
        let mut classes = Vec::new();
        for start in 0..m {
            if class_of[start] != u32::MAX {
                continue;
            }
            let class_idx = classes.len() as u32;
            let mut members = BitSet::new(m);
            members.insert(start);
            class_of[start] = class_idx;
            let mut queue = vec![start];
            while let Some(a) = queue.pop() {
                for &c in &generator_indices {
                    let b = g.conj_index(c, a);
                    if class_of[b] == u32::MAX {
                        class_of[b] = class_idx;
                        members.insert(b);
                        queue.push(b);
                    }
                }
            }
            let is_square_class = squares.contains(start);
            assert!(
                members.iter().all(|e| squares.contains(e) == is_square_class),
                "squareness must be constant on a conjugacy class"
            );
            classes.push(ConjugacyClass {
                representative: g.element(start).clone(),
                members,
                is_square_class,
            });
        }
        ClassData { classes, class_of }
    })
}

impl PermGroup {
    /// Conjugacy classes in order of their minimal members; the identity
    /// class comes first.
    pub fn conjugacy_classes(&self) -> &[ConjugacyClass] {
        &class_data(self).classes
    }

    /// Index (into `conjugacy_classes`) of the class of `elements()[index]`.
    pub fn class_index_of(&self, element_index: usize) -> usize {
        class_data(self).class_of[element_index] as usize
    }

    pub fn class_of(&self, p: &Permutation) -> Result<&ConjugacyClass, GroupError> {
        let idx = self.index_of(p).ok_or_else(|| GroupError::NotMember {
            element: p.to_string(),
        })?;
        Ok(&self.conjugacy_classes()[self.class_index_of(idx)])
    }

    /// Element indices of `{g² : g ∈ G}`.
    pub fn squares(&self) -> &BitSet {
        squares_cache(self)
    }

    pub fn squares_elements(&self) -> Vec<Permutation> {
        self.squares().iter().map(|i| self.element(i).clone()).collect()
    }

    /// Whether the index set contains no square of the group.
    pub fn is_square_free(&self, subset: &BitSet) -> bool {
        subset.is_disjoint(self.squares())
    }

    /// Whether the index set is closed under conjugation, i.e. a union of
    /// conjugacy classes.
    pub fn is_normal_subset(&self, subset: &BitSet) -> bool {
        subset
            .iter()
            .all(|e| self.conjugacy_classes()[self.class_index_of(e)].members.is_subset_of(subset))
    }

    /// Involutions of the group, bucketed by transposition count.
    pub fn involution_profile(&self) -> InvolutionProfile {
        let m = self.order();
        let mut involutions = BitSet::new(m);
        let mut by_count: BTreeMap<usize, BitSet> = BTreeMap::new();
        for (i, p) in self.elements().iter().enumerate() {
            if p.is_involution() {
                involutions.insert(i);
                let k = p.transposition_count().expect("involution");
                by_count.entry(k).or_insert_with(|| BitSet::new(m)).insert(i);
            }
        }
        let i_min = by_count.keys().next().copied();
        InvolutionProfile {
            involutions,
            by_count,
            i_min,
        }
    }
}

/// The involutions of a subgroup indexed over that subgroup's own elements.
#[derive(Clone, Debug)]
pub struct InvolutionProfile {
    pub involutions: BitSet,
    /// Transposition count k ↦ involutions with exactly k transpositions.
    pub by_count: BTreeMap<usize, BitSet>,
    /// Least k ≥ 1 with an involution of k transpositions; `None` when the
    /// group has odd order (no involutions).
    pub i_min: Option<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_cycles;

    fn perm(degree: usize, text: &str) -> Permutation {
        parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn symmetric_4_classes() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let mut sizes: Vec<usize> = s4.conjugacy_classes().iter().map(|c| c.size()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        let total: usize = sizes.iter().sum();
        assert_eq!(total, 24);
        // Class sizes divide the group order.
        assert!(sizes.iter().all(|s| 24 % s == 0));
    }

    #[test]
    fn three_cycles_split_in_alternating_4() {
        let a4 = PermGroup::alternating(4).unwrap();
        let class = a4.class_of(&perm(4, "(1 2 3)")).unwrap();
        assert_eq!(class.size(), 4);
    }

    #[test]
    fn identity_class_is_singleton() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let class = s4.class_of(&Permutation::identity(4)).unwrap();
        assert_eq!(class.size(), 1);
        assert!(class.representative.is_identity());
    }

    #[test]
    fn class_of_rejects_non_members() {
        let a4 = PermGroup::alternating(4).unwrap();
        assert!(matches!(
            a4.class_of(&perm(4, "(1 2)")),
            Err(GroupError::NotMember { .. })
        ));
    }

    #[test]
    fn squares_of_small_symmetric_groups() {
        let s5 = PermGroup::symmetric(5).unwrap();
        let a5 = PermGroup::alternating(5).unwrap();
        let squares: Vec<&Permutation> =
            s5.squares().iter().map(|i| s5.element(i)).collect();
        assert_eq!(squares.len(), 60);
        assert!(squares.iter().all(|p| a5.contains(p)));
    }

    #[test]
    fn squares_of_symmetric_6_are_a_proper_nonsubgroup_subset() {
        let s6 = PermGroup::symmetric(6).unwrap();
        let a6 = PermGroup::alternating(6).unwrap();
        let squares = s6.squares_elements();
        assert!(squares.len() < 360);
        assert!(squares.iter().all(|p| a6.contains(p)));
        assert!(!s6.is_subgroup(&squares));
        assert!(!s6.squares().contains(s6.index_of(&perm(6, "(1 2)(3 4 5 6)")).unwrap()));
    }

    #[test]
    fn single_nonidentity_element_is_not_normal() {
        let s3 = PermGroup::symmetric(3).unwrap();
        for i in 1..s3.order() {
            let single = BitSet::from_indices(s3.order(), [i]);
            assert!(!s3.is_normal_subset(&single));
        }
        assert!(s3.is_normal_subset(&BitSet::new(s3.order())));
    }

    #[test]
    fn class_members_agree_on_invariants() {
        for g in [
            PermGroup::symmetric(4).unwrap(),
            PermGroup::alternating(5).unwrap(),
            PermGroup::symmetric(5).unwrap(),
        ] {
            for class in g.conjugacy_classes() {
                let rep = &class.representative;
                for e in class.members.iter() {
                    let p = g.element(e);
                    assert_eq!(p.order(), rep.order());
                    assert_eq!(p.parity(), rep.parity());
                    assert_eq!(p.cycle_type(), rep.cycle_type());
                    assert_eq!(g.squares().contains(e), class.is_square_class);
                }
            }
        }
    }

    #[test]
    fn cycle_type_square_criterion_matches_brute_force() {
        // Independent oracle: the per-element cycle-type test must agree
        // with the enumerated square set of the full symmetric group, for
        // every element. Below degree 6 the squares are exactly the even
        // elements; at degree 6 they form a proper subset.
        for n in 3..=6usize {
            let s_n = PermGroup::symmetric(n).unwrap();
            for (i, p) in s_n.elements().iter().enumerate() {
                assert_eq!(
                    p.is_square_in_symmetric(),
                    s_n.squares().contains(i),
                    "degree {n}, element {p}"
                );
            }
            let criterion_count = s_n
                .elements()
                .iter()
                .filter(|p| p.is_square_in_symmetric())
                .count();
            match n {
                3..=5 => assert_eq!(criterion_count, s_n.order() / 2),
                _ => assert!(criterion_count < s_n.order() / 2),
            }
        }
    }

    #[test]
    fn involution_profiles() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let single = s4.subgroup(&[perm(4, "(1 2)")]).unwrap();
        assert_eq!(single.involution_profile().i_min, Some(1));

        let klein = s4
            .subgroup(&[perm(4, "(1 2)(3 4)"), perm(4, "(1 3)(2 4)")])
            .unwrap();
        let profile = klein.involution_profile();
        assert_eq!(profile.i_min, Some(2));
        assert_eq!(profile.by_count[&2].len(), 3);

        let odd = s4.subgroup(&[perm(4, "(1 2 3)")]).unwrap();
        let profile = odd.involution_profile();
        assert_eq!(profile.i_min, None);
        assert!(profile.involutions.is_empty());
    }
}
