//! Subgroup-lattice enumeration and normal subgroups.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::group::{GroupError, PermGroup};

/// Default cap on the ambient order for subgroup enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 1000;

/// All subgroups of `g`, or one representative per conjugacy class of
/// subgroups when `up_to_conjugacy` is set (the representative with the
/// minimal element-index fingerprint).
///
/// Deterministic: results are sorted by (order, element indices). Always
/// includes the trivial subgroup and `g` itself.
pub fn enumerate_subgroups(
    g: &PermGroup,
    up_to_conjugacy: bool,
) -> Result<Vec<PermGroup>, GroupError> {
    enumerate_subgroups_with_cap(g, up_to_conjugacy, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_subgroups_with_cap(
    g: &PermGroup,
    up_to_conjugacy: bool,
    cap: usize,
) -> Result<Vec<PermGroup>, GroupError> {
    let m = g.order();
    if m > cap {
        return Err(GroupError::EnumerationCapExceeded { order: m, cap });
    }

    let mut known: HashSet<BitSet> = HashSet::new();
    let mut found: Vec<(BitSet, Vec<usize>)> = Vec::new();
    let mut admit = |bits: BitSet, gens: Vec<usize>, found: &mut Vec<(BitSet, Vec<usize>)>| {
        let (bits, gens) = if up_to_conjugacy {
            minimal_conjugate(g, bits, gens)
        } else {
            (bits, gens)
        };
        if known.insert(bits.clone()) {
            found.push((bits, gens));
        }
    };

    // Seed with every cyclic subgroup, then repeatedly adjoin one element to
    // each known subgroup until no new subgroup appears. A new generator only
    // matters up to its coset, so extensions walk coset representatives.
    for e in 0..m {
        admit(g.close_indices(&[e]), vec![e], &mut found);
    }
    let mut next = 0;
    while next < found.len() {
        let (bits, gens) = found[next].clone();
        next += 1;
        if bits.len() == m {
            continue;
        }
        let mut covered = bits.clone();
        for x in 0..m {
            if covered.contains(x) {
                continue;
            }
            for h in bits.iter() {
                covered.insert(g.mul_index(h, x));
            }
            let mut extended = gens.clone();
            extended.push(x);
            admit(g.close_indices(&extended), extended, &mut found);
        }
    }

    found.sort_unstable_by(|a, b| {
        (a.0.len(), a.0.to_vec()).cmp(&(b.0.len(), b.0.to_vec()))
    });
    Ok(found
        .into_iter()
        .map(|(bits, gens)| g.subgroup_with_generators(&bits, &gens))
        .collect())
}

/// Replaces a subgroup by its conjugate with the lexicographically minimal
/// sorted index set, rewriting the generators by the same conjugator.
fn minimal_conjugate(g: &PermGroup, bits: BitSet, gens: Vec<usize>) -> (BitSet, Vec<usize>) {
    let m = g.order();
    let mut best: Vec<usize> = bits.to_vec();
    let mut best_conjugator = None;
    let mut mapped = Vec::with_capacity(best.len());
    for c in 1..m {
        mapped.clear();
        mapped.extend(bits.iter().map(|e| g.conj_index(c, e)));
        mapped.sort_unstable();
        if mapped < best {
            std::mem::swap(&mut best, &mut mapped);
            best_conjugator = Some(c);
        }
    }
    match best_conjugator {
        None => (bits, gens),
        Some(c) => (
            BitSet::from_indices(m, best.iter().copied()),
            gens.iter().map(|&e| g.conj_index(c, e)).collect(),
        ),
    }
}

/// All normal subgroups of `g`, sorted by (order, element indices).
///
/// A normal subgroup is exactly a subgroup that is a union of conjugacy
/// classes, and the subgroup generated by a union of classes is itself
/// normal. The lattice is therefore walked by repeatedly adjoining one
/// class to each normal subgroup found so far.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>, GroupError> {
    normal_subgroups_with_cap(g, DEFAULT_ENUMERATION_CAP)
}

pub fn normal_subgroups_with_cap(g: &PermGroup, cap: usize) -> Result<Vec<PermGroup>, GroupError> {
    let m = g.order();
    if m > cap {
        return Err(GroupError::EnumerationCapExceeded { order: m, cap });
    }
    let mut known: HashSet<BitSet> = HashSet::new();
    let mut found: Vec<BitSet> = Vec::new();
    let trivial = BitSet::from_indices(m, [g.identity_index()]);
    known.insert(trivial.clone());
    found.push(trivial);
    let mut next = 0;
    while next < found.len() {
        let base = found[next].clone();
        next += 1;
        for class in g.conjugacy_classes() {
            if class.members.is_subset_of(&base) {
                continue;
            }
            let mut seed = base.clone();
            seed.union_with(&class.members);
            let generated = g.close_indices(&seed.to_vec());
            if known.insert(generated.clone()) {
                found.push(generated);
            }
        }
    }
    found.sort_unstable_by(|a, b| (a.len(), a.to_vec()).cmp(&(b.len(), b.to_vec())));
    Ok(found.iter().map(|bits| g.subgroup_from_indices(bits)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_cycles;
    use crate::perm::Permutation;

    fn perm(degree: usize, text: &str) -> Permutation {
        parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn symmetric_3_has_exactly_six_subgroups() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let subs = enumerate_subgroups(&s3, false).unwrap();
        let mut orders: Vec<usize> = subs.iter().map(|h| h.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn lagrange_holds_for_every_enumerated_subgroup() {
        for g in [
            PermGroup::symmetric(4).unwrap(),
            PermGroup::alternating(5).unwrap(),
            PermGroup::symmetric(5).unwrap(),
        ] {
            for h in enumerate_subgroups(&g, false).unwrap() {
                assert_eq!(g.order() % h.order(), 0);
            }
        }
    }

    #[test]
    fn subgroup_list_is_closed_under_conjugation() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let subs = enumerate_subgroups(&s4, false).unwrap();
        let sets: HashSet<BitSet> = subs
            .iter()
            .map(|h| s4.member_indices(h).unwrap())
            .collect();
        for bits in &sets {
            for c in 0..s4.order() {
                let conjugated =
                    BitSet::from_indices(s4.order(), bits.iter().map(|e| s4.conj_index(c, e)));
                assert!(sets.contains(&conjugated));
            }
        }
    }

    #[test]
    fn known_subgroup_counts() {
        let s4 = PermGroup::symmetric(4).unwrap();
        assert_eq!(enumerate_subgroups(&s4, false).unwrap().len(), 30);
        assert_eq!(enumerate_subgroups(&s4, true).unwrap().len(), 11);
        let a4 = PermGroup::alternating(4).unwrap();
        assert_eq!(enumerate_subgroups(&a4, false).unwrap().len(), 10);
        assert_eq!(enumerate_subgroups(&a4, true).unwrap().len(), 5);
    }

    #[test]
    fn enumeration_respects_cap() {
        let s5 = PermGroup::symmetric(5).unwrap();
        assert!(matches!(
            enumerate_subgroups_with_cap(&s5, false, 100),
            Err(GroupError::EnumerationCapExceeded { order: 120, cap: 100 })
        ));
    }

    #[test]
    fn conjugacy_representatives_have_minimal_fingerprints() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let all = enumerate_subgroups(&s4, false).unwrap();
        let reps = enumerate_subgroups(&s4, true).unwrap();
        for rep in &reps {
            let bits = s4.member_indices(rep).unwrap();
            for c in 0..s4.order() {
                let mut conjugated: Vec<usize> =
                    bits.iter().map(|e| s4.conj_index(c, e)).collect();
                conjugated.sort_unstable();
                assert!(bits.to_vec() <= conjugated);
            }
        }
        // Every subgroup is conjugate to exactly one representative.
        for h in &all {
            let bits = s4.member_indices(h).unwrap();
            let canonical = (0..s4.order())
                .map(|c| {
                    let mut v: Vec<usize> = bits.iter().map(|e| s4.conj_index(c, e)).collect();
                    v.sort_unstable();
                    v
                })
                .min()
                .unwrap();
            assert_eq!(
                reps.iter()
                    .filter(|r| s4.member_indices(r).unwrap().to_vec() == canonical)
                    .count(),
                1
            );
        }
    }

    #[test]
    fn normal_subgroups_of_small_groups() {
        let a4 = PermGroup::alternating(4).unwrap();
        let normals = normal_subgroups(&a4).unwrap();
        let orders: Vec<usize> = normals.iter().map(|h| h.order()).collect();
        assert_eq!(orders, vec![1, 4, 12]);
        let klein = &normals[1];
        assert!(klein.contains(&perm(4, "(1 2)(3 4)")));

        let s4 = PermGroup::symmetric(4).unwrap();
        let orders: Vec<usize> = normal_subgroups(&s4)
            .unwrap()
            .iter()
            .map(|h| h.order())
            .collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn normal_subgroups_match_filtered_enumeration() {
        for g in [PermGroup::symmetric(4).unwrap(), PermGroup::alternating(5).unwrap()] {
            let via_classes: Vec<String> = normal_subgroups(&g)
                .unwrap()
                .iter()
                .map(|h| h.fingerprint())
                .collect();
            let mut via_filter: Vec<(usize, String)> = enumerate_subgroups(&g, false)
                .unwrap()
                .iter()
                .filter(|h| {
                    let bits = g.member_indices(h).unwrap();
                    (0..g.order())
                        .all(|c| bits.iter().all(|e| bits.contains(g.conj_index(c, e))))
                })
                .map(|h| (h.order(), h.fingerprint()))
                .collect();
            via_filter.sort();
            let via_filter: Vec<String> = via_filter.into_iter().map(|(_, f)| f).collect();
            assert_eq!(via_classes, via_filter);
        }
    }
}
