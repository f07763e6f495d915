//! Perfect codes of finite permutation groups in Cayley sum graphs.
//!
//! The crate decides, with certificates, whether a subgroup `H` of a finite
//! permutation group `G` is a perfect code of some Cayley sum graph of `G`
//! (a *subgroup perfect code*), and runs exhaustive verification sweeps over
//! the symmetric and alternating families at small degree. The layers:
//!
//! - [`perm`]/[`notation`]: permutations on `{1..n}` with canonical cycle
//!   notation.
//! - [`group`]/[`classes`]/[`cosets`]/[`subgroups`]: explicitly enumerated
//!   groups, conjugacy classes, square sets, coset tables, and the subgroup
//!   lattice.
//! - [`graph`]: Cayley sum graphs and the graph-level perfect-code oracle.
//! - [`code`]: the equivalent perfect-code criteria, the exact decision
//!   procedure (exact cover over usable conjugacy classes), and coset
//!   obstructions.
//! - [`verify`]: family-wide sweeps and preliminary structure checks with
//!   deterministic reports.

pub mod bitset;
pub mod classes;
pub mod code;
pub mod cosets;
pub mod graph;
pub mod group;
pub mod groupspec;
pub mod notation;
pub mod perm;
pub mod subgroups;
pub mod verify;

pub use bitset::BitSet;
pub use classes::{ConjugacyClass, InvolutionProfile};
pub use code::{
    criterion_graph, criterion_index, criterion_transversal, decide_subgroup_perfect_code,
    find_coset_obstruction, usable_classes, CosetObstruction, PerfectCodeCertificate, Verdict,
};
pub use cosets::{coset_table, CosetSide, CosetTable};
pub use graph::{CayleySumGraph, GraphBuildError};
pub use group::{GroupError, PermGroup, DEFAULT_ORDER_CAP};
pub use groupspec::{parse_generator_list, GroupSpec, SpecError};
pub use notation::{format_cycles, parse_cycles, NotationError};
pub use perm::{
    involutions_commute_structural, CycleDecomposition, CycleType, Parity, PermError, Permutation,
};
pub use subgroups::{
    enumerate_subgroups, enumerate_subgroups_with_cap, normal_subgroups,
    normal_subgroups_with_cap, DEFAULT_ENUMERATION_CAP,
};
pub use verify::{
    classify, verify_family, verify_preliminaries, CaseTag, Family, FamilyReport, PrelimReport,
    SubgroupCase, SubgroupRow, SweepOptions,
};
