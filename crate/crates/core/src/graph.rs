//! Cayley sum graphs and the graph-level perfect-code oracle.
//!
//! The graph on a group `G` with connection set `S` joins `x` and `y` exactly
//! when the product `xy` lies in `S`. For the graph to be simple, `S` must be
//! a normal subset (adjacency symmetric) containing no squares (no loops);
//! `build` validates both and materializes the dense adjacency matrix, since
//! the verification sweeps query it heavily.

use thiserror::Error;

use crate::bitset::BitSet;
use crate::group::PermGroup;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphBuildError {
    #[error("connection set index {0} out of range for the group")]
    IndexOutOfRange(usize),
    #[error("connection set is not normal: contains {element} but not its conjugate {missing}")]
    NotNormal { element: String, missing: String },
    #[error("connection set is not square-free: {element} = ({root})²")]
    NotSquareFree { element: String, root: String },
}

pub struct CayleySumGraph<'g> {
    group: &'g PermGroup,
    connection: BitSet,
    adjacency: Vec<BitSet>,
}

impl<'g> CayleySumGraph<'g> {
    /// Builds the graph, validating that the connection set is a square-free
    /// normal subset.
    pub fn build(group: &'g PermGroup, connection: &BitSet) -> Result<Self, GraphBuildError> {
        let m = group.order();
        if let Some(bad) = connection.iter().find(|&s| s >= m) {
            return Err(GraphBuildError::IndexOutOfRange(bad));
        }
        for s in connection.iter() {
            for c in 0..m {
                let conjugated = group.conj_index(c, s);
                if !connection.contains(conjugated) {
                    return Err(GraphBuildError::NotNormal {
                        element: group.element(s).to_string(),
                        missing: group.element(conjugated).to_string(),
                    });
                }
            }
            if group.squares().contains(s) {
                let root = (0..m)
                    .find(|&r| group.mul_index(r, r) == s)
                    .expect("square has a root");
                return Err(GraphBuildError::NotSquareFree {
                    element: group.element(s).to_string(),
                    root: group.element(root).to_string(),
                });
            }
        }

        let mut adjacency = vec![BitSet::new(m); m];
        for x in 0..m {
            for y in 0..m {
                if connection.contains(group.mul_index(x, y)) {
                    adjacency[x].insert(y);
                }
            }
        }
        let size = connection.len();
        for x in 0..m {
            assert!(!adjacency[x].contains(x), "square-free sets give no loops");
            assert_eq!(adjacency[x].len(), size, "graph must be |S|-regular");
            for y in adjacency[x].iter() {
                assert!(adjacency[y].contains(x), "normal sets give symmetric adjacency");
            }
        }
        Ok(CayleySumGraph {
            group,
            connection: connection.clone(),
            adjacency,
        })
    }

    pub fn group(&self) -> &PermGroup {
        self.group
    }

    pub fn connection(&self) -> &BitSet {
        &self.connection
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, vertex: usize) -> &BitSet {
        &self.adjacency[vertex]
    }

    /// Whether `code` is an independent set such that every outside vertex
    /// has exactly one neighbor inside it.
    pub fn is_perfect_code(&self, code: &BitSet) -> bool {
        for v in 0..self.vertex_count() {
            let required = if code.contains(v) { 0 } else { 1 };
            if self.adjacency[v].intersection_count(code) != required {
                return false;
            }
        }
        true
    }

    /// Renders the graph as undirected DOT text with vertices labeled by
    /// cycle expressions; highlighted vertices are filled. Output is sorted,
    /// hence stable across runs.
    pub fn export_dot(&self, highlight: &BitSet) -> String {
        let mut out = String::from("graph cayley_sum {\n");
        for v in 0..self.vertex_count() {
            let label = self.group.element(v).to_string();
            if highlight.contains(v) {
                out.push_str(&format!(
                    "  v{v} [label=\"{label}\", style=filled, fillcolor=lightgoldenrod];\n"
                ));
            } else {
                out.push_str(&format!("  v{v} [label=\"{label}\"];\n"));
            }
        }
        for v in 0..self.vertex_count() {
            for u in self.adjacency[v].iter() {
                if v < u {
                    out.push_str(&format!("  v{v} -- v{u};\n"));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_cycles;

    fn c4() -> PermGroup {
        PermGroup::closure(4, vec![parse_cycles("(1 2 3 4)", 4).unwrap()]).unwrap()
    }

    fn bits_of(g: &PermGroup, exprs: &[&str]) -> BitSet {
        BitSet::from_indices(
            g.order(),
            exprs.iter().map(|e| {
                g.index_of(&parse_cycles(e, g.degree()).unwrap()).unwrap()
            }),
        )
    }

    #[test]
    fn four_cycle_connection_gives_two_disjoint_edges() {
        let g = c4();
        let s = bits_of(&g, &["(1 2 3 4)"]);
        let graph = CayleySumGraph::build(&g, &s).unwrap();
        assert_eq!(graph.vertex_count(), 4);
        let edge_count: usize = (0..4).map(|v| graph.neighbors(v).len()).sum::<usize>() / 2;
        assert_eq!(edge_count, 2);
        // Each vertex has degree |S| = 1: a perfect matching.
        assert!((0..4).all(|v| graph.neighbors(v).len() == 1));
    }

    #[test]
    fn empty_connection_set_gives_edgeless_graph() {
        let g = PermGroup::symmetric(3).unwrap();
        let graph = CayleySumGraph::build(&g, &BitSet::new(g.order())).unwrap();
        assert!((0..6).all(|v| graph.neighbors(v).is_empty()));
    }

    #[test]
    fn transpositions_of_symmetric_3_give_cubic_graph() {
        let g = PermGroup::symmetric(3).unwrap();
        let s = bits_of(&g, &["(1 2)", "(1 3)", "(2 3)"]);
        let graph = CayleySumGraph::build(&g, &s).unwrap();
        assert_eq!(graph.vertex_count(), 6);
        assert!((0..6).all(|v| graph.neighbors(v).len() == 3));
    }

    #[test]
    fn build_rejects_invalid_connection_sets() {
        let g = PermGroup::symmetric(3).unwrap();
        // A single transposition is not normal in S_3.
        let s = bits_of(&g, &["(1 2)"]);
        assert!(matches!(
            CayleySumGraph::build(&g, &s),
            Err(GraphBuildError::NotNormal { .. })
        ));
        // The 3-cycle class is normal but consists of squares.
        let s = bits_of(&g, &["(1 2 3)", "(1 3 2)"]);
        assert!(matches!(
            CayleySumGraph::build(&g, &s),
            Err(GraphBuildError::NotSquareFree { .. })
        ));
    }

    #[test]
    fn perfect_code_examples() {
        let g = c4();
        let s = bits_of(&g, &["(1 2 3 4)"]);
        let graph = CayleySumGraph::build(&g, &s).unwrap();
        let code = bits_of(&g, &["()", "(1 3)(2 4)"]);
        assert!(graph.is_perfect_code(&code));
        let just_identity = bits_of(&g, &["()"]);
        assert!(!graph.is_perfect_code(&just_identity));

        // Edgeless graph: the full vertex set is (vacuously) perfect.
        let s3 = PermGroup::symmetric(3).unwrap();
        let edgeless = CayleySumGraph::build(&s3, &BitSet::new(6)).unwrap();
        let all = BitSet::from_indices(6, 0..6);
        assert!(edgeless.is_perfect_code(&all));
        assert!(!edgeless.is_perfect_code(&bits_of(&s3, &["()"])));
    }

    #[test]
    fn perfect_code_size_law() {
        let g = c4();
        let s = bits_of(&g, &["(1 2 3 4)"]);
        let graph = CayleySumGraph::build(&g, &s).unwrap();
        let code = bits_of(&g, &["()", "(1 3)(2 4)"]);
        assert!(graph.is_perfect_code(&code));
        assert_eq!(code.len() * (s.len() + 1), g.order());
    }

    #[test]
    fn dot_export_is_stable_and_counts_edges() {
        let g = c4();
        let s = bits_of(&g, &["(1 2 3 4)"]);
        let graph = CayleySumGraph::build(&g, &s).unwrap();
        let highlight = bits_of(&g, &["()", "(1 3)(2 4)"]);
        let dot = graph.export_dot(&highlight);
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert_eq!(dot.matches("label=").count(), 4);
        assert_eq!(dot.matches("style=filled").count(), 2);
        assert_eq!(dot, graph.export_dot(&highlight));

        let c2 = PermGroup::closure(2, vec![parse_cycles("(1 2)", 2).unwrap()]).unwrap();
        let empty = CayleySumGraph::build(&c2, &BitSet::new(2)).unwrap();
        let dot = empty.export_dot(&BitSet::new(2));
        assert_eq!(dot.matches("label=").count(), 2);
        assert_eq!(dot.matches(" -- ").count(), 0);
    }

    #[test]
    fn perfect_code_predicate_is_conjugation_invariant() {
        // Conjugating both the code and the connection set by any group
        // element relabels the graph, so the predicate must not change.
        let g = PermGroup::symmetric(3).unwrap();
        let m = g.order();
        let transpositions = bits_of(&g, &["(1 2)", "(1 3)", "(2 3)"]);
        let codes = [
            bits_of(&g, &["()"]),
            bits_of(&g, &["()", "(1 2 3)"]),
            bits_of(&g, &["(1 2)", "(1 2 3)"]),
            BitSet::from_indices(m, 0..m),
        ];
        let graph = CayleySumGraph::build(&g, &transpositions).unwrap();
        for c in 0..m {
            let conj = |set: &BitSet| {
                BitSet::from_indices(m, set.iter().map(|e| g.conj_index(c, e)))
            };
            let relabeled = CayleySumGraph::build(&g, &conj(&transpositions)).unwrap();
            for code in &codes {
                assert_eq!(
                    graph.is_perfect_code(code),
                    relabeled.is_perfect_code(&conj(code))
                );
            }
        }
    }

    #[test]
    fn identity_is_never_a_valid_connection_element() {
        let g = PermGroup::symmetric(3).unwrap();
        let s = BitSet::from_indices(g.order(), [g.identity_index()]);
        assert!(matches!(
            CayleySumGraph::build(&g, &s),
            Err(GraphBuildError::NotSquareFree { .. })
        ));
    }
}
