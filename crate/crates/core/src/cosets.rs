//! Coset tables: the partition of a group by a subgroup, left or right.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::group::{GroupError, PermGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CosetSide {
    Left,
    Right,
}

/// The coset partition of an ambient group by a subgroup. All indices refer
/// to the ambient group's element list; coset 0 is the subgroup itself and
/// cosets are ordered by their minimal members.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub side: CosetSide,
    /// Ascending element indices per coset.
    pub cosets: Vec<Vec<usize>>,
    /// Element index → coset index.
    pub coset_of: Vec<usize>,
    pub index: usize,
    pub subgroup_order: usize,
}

impl CosetTable {
    /// Minimal member of each coset, in coset order. A transversal of the
    /// partition.
    pub fn minimal_transversal(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    pub fn coset_members(&self, coset: usize) -> &[usize] {
        &self.cosets[coset]
    }
}

/// Builds the coset table of `subgroup` in `ambient`.
///
/// Right cosets are `Hx = {hx : h ∈ H}`, left cosets `xH`. Errors if the
/// subgroup is not contained in the ambient group.
pub fn coset_table(
    ambient: &PermGroup,
    subgroup: &PermGroup,
    side: CosetSide,
) -> Result<CosetTable, GroupError> {
    let h_bits = ambient.member_indices(subgroup)?;
    Ok(coset_table_of_indices(ambient, &h_bits, side))
}

pub(crate) fn coset_table_of_indices(
    ambient: &PermGroup,
    h_bits: &BitSet,
    side: CosetSide,
) -> CosetTable {
    let m = ambient.order();
    let h_indices: Vec<usize> = h_bits.iter().collect();
    let mut coset_of = vec![usize::MAX; m];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..m {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let coset_idx = cosets.len();
        let mut members: Vec<usize> = h_indices
            .iter()
            .map(|&h| match side {
                CosetSide::Right => ambient.mul_index(h, x),
                CosetSide::Left => ambient.mul_index(x, h),
            })
            .collect();
        members.sort_unstable();
        debug_assert_eq!(members[0], x, "cosets are discovered at their minima");
        for &e in &members {
            debug_assert_eq!(coset_of[e], usize::MAX, "cosets partition the group");
            coset_of[e] = coset_idx;
        }
        cosets.push(members);
    }
    let index = cosets.len();
    debug_assert_eq!(index * h_indices.len(), m);
    CosetTable {
        side,
        cosets,
        coset_of,
        index,
        subgroup_order: h_indices.len(),
    }
}
