//! Dense undirected simple graphs with stable vertex labels.
//!
//! Every vertex carries the identifier it had in the graph it was read or
//! generated from. Induced subgraphs keep those identifiers, so cliques found
//! several induced-subgraph levels deep are reported in original labels.
//! Vertices are always stored in ascending label order.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Original vertex identifier.
pub type Label = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("unknown vertex label {0}")]
    UnknownLabel(Label),
    #[error("duplicate vertex label {0}")]
    DuplicateLabel(Label),
    #[error("self-loop on vertex {0}")]
    SelfLoop(Label),
    #[error("vertices {0} and {1} are not adjacent")]
    NotAClique(Label, Label),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Undirected simple graph stored as a dense symmetric boolean matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Label>,
    /// Row-major `n * n` adjacency, symmetric with a false diagonal.
    adj: Vec<bool>,
}

impl Graph {
    /// `n` isolated vertices labelled `1..=n`.
    pub fn empty(n: usize) -> Self {
        Self {
            labels: (1..=n as Label).collect(),
            adj: vec![false; n * n],
        }
    }

    /// Isolated vertices with the given labels (sorted on entry).
    pub fn with_labels<I: IntoIterator<Item = Label>>(labels: I) -> Result<Self, GraphError> {
        let mut labels: Vec<Label> = labels.into_iter().collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateLabel(w[0]));
        }
        let n = labels.len();
        Ok(Self {
            labels,
            adj: vec![false; n * n],
        })
    }

    /// Graph on labels `1..=n` with the given edges (by label).
    pub fn from_edges(n: usize, edges: &[(Label, Label)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.set_edge(i, j);
            }
        }
        g
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..n {
            g.set_edge(i - 1, i);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.set_edge(0, n - 1);
        }
        g
    }

    /// Star with hub `1` and leaves `2..=leaves + 1`.
    pub fn star(leaves: usize) -> Self {
        let mut g = Self::empty(leaves + 1);
        for i in 1..=leaves {
            g.set_edge(0, i);
        }
        g
    }

    /// Adds the edge `a - b`. Adding an existing edge is a no-op.
    pub fn add_edge(&mut self, a: Label, b: Label) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        let i = self.require(a)?;
        let j = self.require(b)?;
        self.set_edge(i, j);
        Ok(())
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize) {
        debug_assert_ne!(i, j);
        let n = self.n();
        self.adj[i * n + j] = true;
        self.adj[j * n + i] = true;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    #[inline]
    pub fn label(&self, i: usize) -> Label {
        self.labels[i]
    }

    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub fn contains(&self, label: Label) -> bool {
        self.index_of(label).is_some()
    }

    fn require(&self, label: Label) -> Result<usize, GraphError> {
        self.index_of(label).ok_or(GraphError::UnknownLabel(label))
    }

    /// Adjacency by position.
    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n() + j]
    }

    /// Adjacency by label; unknown labels are never adjacent.
    pub fn adjacent(&self, a: Label, b: Label) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.has_edge(i, j),
            _ => false,
        }
    }

    /// Positions adjacent to position `i`, ascending.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n();
        self.adj[i * n..(i + 1) * n]
            .iter()
            .enumerate()
            .filter_map(|(j, &e)| e.then_some(j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&e| e).count() / 2
    }

    /// Edges by label with `a < b`, in row-major order.
    pub fn edges(&self) -> Vec<(Label, Label)> {
        let n = self.n();
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..n {
            for j in (i + 1)..n {
                if self.has_edge(i, j) {
                    out.push((self.labels[i], self.labels[j]));
                }
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count() == n * n.saturating_sub(1) / 2
    }

    /// True when the vertex at position `i` is adjacent to every other vertex.
    pub fn is_center_at(&self, i: usize) -> bool {
        self.degree(i) + 1 == self.n()
    }

    pub fn is_center(&self, label: Label) -> bool {
        self.index_of(label).is_some_and(|i| self.is_center_at(i))
    }

    /// Induced subgraph on the given positions (order and duplicates ignored).
    pub fn induced(&self, positions: &[usize]) -> Graph {
        let mut keep = positions.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let m = keep.len();
        let mut adj = vec![false; m * m];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                adj[a * m + b] = self.has_edge(i, j);
            }
        }
        Graph {
            labels: keep.iter().map(|&i| self.labels[i]).collect(),
            adj,
        }
    }

    pub fn induced_by_labels(&self, labels: &[Label]) -> Result<Graph, GraphError> {
        let positions = labels
            .iter()
            .map(|&l| self.require(l))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.induced(&positions))
    }

    /// Induced subgraph on `{v} ∪ N(v)`, by position.
    pub fn center_subgraph_at(&self, i: usize) -> Graph {
        let mut keep: Vec<usize> = self.neighbors(i).collect();
        keep.push(i);
        self.induced(&keep)
    }

    /// The center subgraph of `v`: `v` together with all of its neighbours.
    pub fn center_subgraph(&self, v: Label) -> Result<Graph, GraphError> {
        Ok(self.center_subgraph_at(self.require(v)?))
    }

    pub fn delete_at(&self, i: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n()).filter(|&k| k != i).collect();
        self.induced(&keep)
    }

    /// Induced subgraph on `V \ {v}`.
    pub fn delete_vertex(&self, v: Label) -> Result<Graph, GraphError> {
        Ok(self.delete_at(self.require(v)?))
    }

    /// First non-adjacent pair in `members`, scanning pairs in input order.
    /// Repeated labels are ignored.
    pub fn clique_violation(&self, members: &[Label]) -> Result<Option<(Label, Label)>, GraphError> {
        let positions = members
            .iter()
            .map(|&l| self.require(l))
            .collect::<Result<Vec<_>, _>>()?;
        for (a, &i) in positions.iter().enumerate() {
            for &j in &positions[a + 1..] {
                if i != j && !self.has_edge(i, j) {
                    return Ok(Some((self.labels[i], self.labels[j])));
                }
            }
        }
        Ok(None)
    }

    /// True iff every pair of `members` is adjacent. Sets containing a label
    /// outside the graph are not cliques of it.
    pub fn is_clique(&self, members: &[Label]) -> bool {
        matches!(self.clique_violation(members), Ok(None))
    }

    /// Connected components as ascending position lists, ordered by their
    /// smallest position.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Procedure that produced a clique.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Procedure {
    PickMax,
    DeleteMin,
    Vfsa,
    AlgorithmA,
    AlgorithmB,
    AlgorithmC,
    Oracle,
    Planted,
}

impl Procedure {
    pub fn as_str(self) -> &'static str {
        match self {
            Procedure::PickMax => "pickmax",
            Procedure::DeleteMin => "deletemin",
            Procedure::Vfsa => "vfsa",
            Procedure::AlgorithmA => "a",
            Procedure::AlgorithmB => "b",
            Procedure::AlgorithmC => "c",
            Procedure::Oracle => "oracle",
            Procedure::Planted => "planted",
        }
    }
}

impl fmt::Display for Procedure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A vertex set certified pairwise adjacent in the graph it came from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Clique {
    members: Vec<Label>,
    source: Procedure,
}

impl Clique {
    /// Checks every pair of `members` against `g`. Members are sorted and
    /// deduplicated.
    pub fn certify(g: &Graph, mut members: Vec<Label>, source: Procedure) -> Result<Self, GraphError> {
        members.sort_unstable();
        members.dedup();
        if let Some((a, b)) = g.clique_violation(&members)? {
            return Err(GraphError::NotAClique(a, b));
        }
        Ok(Self { members, source })
    }

    pub fn members(&self) -> &[Label] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn source(&self) -> Procedure {
        self.source
    }

    pub fn with_source(mut self, source: Procedure) -> Self {
        self.source = source;
        self
    }
}

impl fmt::Display for Clique {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|l| l.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_is_its_own_center_subgraph() {
        let k4 = Graph::complete(4);
        for &v in k4.labels() {
            assert_eq!(k4.center_subgraph(v).unwrap(), k4);
        }
    }

    #[test]
    fn delete_from_k5_gives_k4() {
        let k5 = Graph::complete(5);
        for &v in k5.labels() {
            let g = k5.delete_vertex(v).unwrap();
            assert_eq!(g.n(), 4);
            assert!(g.is_complete());
            assert!(!g.contains(v));
        }
    }

    #[test]
    fn delete_middle_of_path() {
        let p3 = Graph::path(3);
        let g = p3.delete_vertex(2).unwrap();
        assert_eq!(g.labels(), &[1, 3]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn unknown_label_is_reported() {
        let g = Graph::complete(3);
        assert!(matches!(g.center_subgraph(9), Err(GraphError::UnknownLabel(9))));
        assert!(matches!(g.delete_vertex(0), Err(GraphError::UnknownLabel(0))));
    }

    #[test]
    fn self_loops_and_duplicate_labels_rejected() {
        let mut g = Graph::empty(3);
        assert!(matches!(g.add_edge(2, 2), Err(GraphError::SelfLoop(2))));
        assert!(matches!(Graph::with_labels([4, 1, 4]), Err(GraphError::DuplicateLabel(4))));
    }

    #[test]
    fn duplicate_edges_are_idempotent() {
        let g = Graph::from_edges(3, &[(1, 2), (2, 1), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn trivial_sets_are_cliques() {
        let g = Graph::path(4);
        assert!(g.is_clique(&[]));
        assert!(g.is_clique(&[3]));
        assert!(g.is_clique(&[2, 3]));
        assert!(!g.is_clique(&[1, 3]));
        assert!(!g.is_clique(&[1, 99]));
    }

    #[test]
    fn certify_rejects_non_cliques() {
        let g = Graph::cycle(5);
        assert!(Clique::certify(&g, vec![1, 2], Procedure::Oracle).is_ok());
        assert!(matches!(
            Clique::certify(&g, vec![1, 2, 3], Procedure::Oracle),
            Err(GraphError::NotAClique(1, 3))
        ));
    }

    #[test]
    fn induced_subgraph_keeps_labels() {
        let g = Graph::cycle(6);
        let h = g.induced_by_labels(&[6, 1, 2]).unwrap();
        assert_eq!(h.labels(), &[1, 2, 6]);
        assert_eq!(h.edges(), vec![(1, 2), (1, 6)]);
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = Graph::from_edges(5, &[(1, 2), (4, 5)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!g.is_connected());
    }
}
