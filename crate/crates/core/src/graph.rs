//! Undirected multigraphs with dart (directed edge) indexing.
//!
//! Every normal edge and every whole-loop contributes two darts that are
//! each other's reverse. The p-th such edge owns darts `2p` and `2p + 1`, so
//! reversal is `index ^ 1`. Half-loops contribute a single self-inverse dart;
//! those darts are appended after all paired darts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::GraphError;

/// Vertex identifier, 0-based.
pub type VertexId = usize;

/// Dart identifier, an index into the dart table.
pub type DartId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Normal,
    WholeLoop,
    HalfLoop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub a: VertexId,
    pub b: VertexId,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn normal(a: VertexId, b: VertexId) -> Self {
        Edge {
            a,
            b,
            kind: EdgeKind::Normal,
        }
    }

    pub fn whole_loop(v: VertexId) -> Self {
        Edge {
            a: v,
            b: v,
            kind: EdgeKind::WholeLoop,
        }
    }

    pub fn half_loop(v: VertexId) -> Self {
        Edge {
            a: v,
            b: v,
            kind: EdgeKind::HalfLoop,
        }
    }
}

/// A directed orientation of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub index: DartId,
    pub tail: VertexId,
    pub head: VertexId,
    pub reverse: DartId,
    /// Index of the undirected edge in [`Graph::edges`].
    pub edge: usize,
}

/// Outcome of the NB-irreducibility test, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Irreducibility {
    Ok,
    NotConnected,
    MinDegreeBelow2,
    IsCycle,
}

impl Irreducibility {
    pub fn is_ok(self) -> bool {
        self == Irreducibility::Ok
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Irreducibility::Ok => "ok",
            Irreducibility::NotConnected => "not_connected",
            Irreducibility::MinDegreeBelow2 => "min_degree_below_2",
            Irreducibility::IsCycle => "is_cycle",
        }
    }
}

impl fmt::Display for Irreducibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Immutable multigraph with a materialized dart table and successor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<Edge>,
    darts: Vec<Dart>,
    degrees: Vec<usize>,
    /// Darts leaving each vertex, ascending by index.
    out_darts: Vec<Vec<DartId>>,
    /// CSR layout of the transition relation.
    succ_offsets: Vec<usize>,
    succ: Vec<DartId>,
}

impl Graph {
    /// Builds a graph, validating endpoints and loop kinds.
    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        for (i, e) in edges.iter().enumerate() {
            for v in [e.a, e.b] {
                if v >= vertex_count {
                    return Err(GraphError::EndpointOutOfRange {
                        edge: i,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            match e.kind {
                EdgeKind::Normal if e.a == e.b => return Err(GraphError::NormalSelfPair { edge: i, vertex: e.a }),
                EdgeKind::WholeLoop | EdgeKind::HalfLoop if e.a != e.b => {
                    return Err(GraphError::LoopOnDistinctEndpoints {
                        edge: i,
                        a: e.a,
                        b: e.b,
                    })
                }
                _ => {}
            }
        }

        let paired = edges.iter().filter(|e| e.kind != EdgeKind::HalfLoop).count();
        let mut darts = Vec::with_capacity(2 * paired + (edges.len() - paired));
        for (i, e) in edges.iter().enumerate() {
            if e.kind == EdgeKind::HalfLoop {
                continue;
            }
            let d = darts.len();
            darts.push(Dart {
                index: d,
                tail: e.a,
                head: e.b,
                reverse: d + 1,
                edge: i,
            });
            darts.push(Dart {
                index: d + 1,
                tail: e.b,
                head: e.a,
                reverse: d,
                edge: i,
            });
        }
        for (i, e) in edges.iter().enumerate() {
            if e.kind == EdgeKind::HalfLoop {
                let d = darts.len();
                darts.push(Dart {
                    index: d,
                    tail: e.a,
                    head: e.a,
                    reverse: d,
                    edge: i,
                });
            }
        }

        let mut degrees = vec![0; vertex_count];
        let mut out_darts = vec![Vec::new(); vertex_count];
        for d in &darts {
            degrees[d.tail] += 1;
            out_darts[d.tail].push(d.index);
        }

        let mut succ_offsets = Vec::with_capacity(darts.len() + 1);
        let mut succ = Vec::new();
        succ_offsets.push(0);
        for d in &darts {
            succ.extend(out_darts[d.head].iter().copied().filter(|&f| f != d.reverse));
            succ_offsets.push(succ.len());
        }

        Ok(Graph {
            vertex_count,
            edges,
            darts,
            degrees,
            out_darts,
            succ_offsets,
            succ,
        })
    }

    /// Convenience constructor from `(a, b, kind)` triples.
    pub fn from_triples(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, EdgeKind)>,
    ) -> Result<Self, GraphError> {
        Self::new(
            vertex_count,
            edges.into_iter().map(|(a, b, kind)| Edge { a, b, kind }).collect(),
        )
    }

    /// Simple graph from vertex pairs; `(v, v)` becomes a whole-loop.
    pub fn from_pairs(
        vertex_count: usize,
        pairs: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        Self::new(
            vertex_count,
            pairs
                .into_iter()
                .map(|(a, b)| {
                    if a == b {
                        Edge::whole_loop(a)
                    } else {
                        Edge::normal(a, b)
                    }
                })
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        self.darts.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, d: DartId) -> &Dart {
        &self.darts[d]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn out_darts(&self, v: VertexId) -> &[DartId] {
        &self.out_darts[v]
    }

    pub fn reverse(&self, d: DartId) -> DartId {
        self.darts[d].reverse
    }

    /// `deg(head(d)) - 1`.
    pub fn outdeg(&self, d: DartId) -> usize {
        self.degrees[self.darts[d].head].saturating_sub(1)
    }

    /// `deg(tail(d)) - 1`.
    pub fn indeg(&self, d: DartId) -> usize {
        self.degrees[self.darts[d].tail].saturating_sub(1)
    }

    /// Darts `f` with `tail(f) = head(d)` and `f != reverse(d)`, ascending.
    pub fn dart_transitions(&self, d: DartId) -> &[DartId] {
        &self.succ[self.succ_offsets[d]..self.succ_offsets[d + 1]]
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Number of vertices reachable from vertex 0 equals the vertex count.
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return false;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &d in &self.out_darts[v] {
                let w = self.darts[d].head;
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.vertex_count
    }

    /// Connected, minimum degree at least two, maximum degree above two.
    pub fn nb_irreducibility(&self) -> Irreducibility {
        if !self.is_connected() {
            Irreducibility::NotConnected
        } else if self.min_degree() < 2 {
            Irreducibility::MinDegreeBelow2
        } else if self.max_degree() <= 2 {
            Irreducibility::IsCycle
        } else {
            Irreducibility::Ok
        }
    }

    pub fn is_nb_irreducible(&self) -> bool {
        self.nb_irreducibility().is_ok()
    }

    /// Degree histogram as ascending `(degree, count)` pairs.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        for &d in &self.degrees {
            *hist.entry(d).or_insert(0usize) += 1;
        }
        hist.into_iter().collect()
    }

    /// Serializes to the line-oriented `nbgraph` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("nbgraph {}\n", self.vertex_count);
        for e in &self.edges {
            match e.kind {
                EdgeKind::HalfLoop => out.push_str(&format!("hl {}\n", e.a)),
                _ => out.push_str(&format!("e {} {}\n", e.a, e.b)),
            }
        }
        out
    }

    /// Parses the `nbgraph` text format. `e a a` denotes a whole-loop.
    pub fn parse_text(text: &str) -> Result<Self, GraphError> {
        let mut vertex_count = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| GraphError::Parse {
                line: lineno + 1,
                message,
            };
            let mut tokens = line.split_whitespace();
            let tag = tokens.next().unwrap_or_default();
            let mut num = |what: &str| -> Result<usize, GraphError> {
                let tok = tokens.next().ok_or_else(|| err(format!("missing {what}")))?;
                tok.parse().map_err(|_| err(format!("invalid {what} `{tok}`")))
            };
            match (tag, vertex_count) {
                ("nbgraph", None) => vertex_count = Some(num("vertex count")?),
                ("nbgraph", Some(_)) => return Err(err("duplicate `nbgraph` header".into())),
                (_, None) => return Err(err(format!("expected `nbgraph <n>` header, found `{tag}`"))),
                ("e", Some(n)) => {
                    let a = num("endpoint")?;
                    let b = num("endpoint")?;
                    for v in [a, b] {
                        if v >= n {
                            return Err(err(format!("vertex {v} out of range for {n} vertices")));
                        }
                    }
                    edges.push(if a == b {
                        Edge::whole_loop(a)
                    } else {
                        Edge::normal(a, b)
                    });
                }
                ("hl", Some(n)) => {
                    let a = num("vertex")?;
                    if a >= n {
                        return Err(err(format!("vertex {a} out of range for {n} vertices")));
                    }
                    edges.push(Edge::half_loop(a));
                }
                (other, Some(_)) => return Err(err(format!("unknown record `{other}`"))),
            }
            if tokens.next().is_some() {
                return Err(err("trailing tokens".into()));
            }
        }
        let n = vertex_count.ok_or(GraphError::Parse {
            line: 0,
            message: "missing `nbgraph` header".into(),
        })?;
        Graph::new(n, edges)
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4_minus_edge() -> Graph {
        // u1=0, u2=1, v1=2, v2=3
        Graph::from_pairs(4, [(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]).unwrap()
    }

    #[test]
    fn k4_minus_edge_counts() {
        let g = k4_minus_edge();
        assert_eq!(g.dart_count(), 10);
        assert_eq!(g.degrees(), &[3, 3, 2, 2]);
    }

    #[test]
    fn single_half_loop() {
        let g = Graph::new(1, vec![Edge::half_loop(0)]).unwrap();
        assert_eq!(g.dart_count(), 1);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.reverse(0), 0);
        assert!(g.dart_transitions(0).is_empty());
    }

    #[test]
    fn triangle() {
        let g = Graph::from_pairs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.dart_count(), 6);
        assert!(g.degrees().iter().all(|&d| d == 2));
        for d in 0..6 {
            assert_eq!(g.dart_transitions(d).len(), 1);
        }
        assert_eq!(g.nb_irreducibility(), Irreducibility::IsCycle);
    }

    #[test]
    fn k4_minus_edge_transitions() {
        let g = k4_minus_edge();
        let succ: Vec<_> = g
            .dart_transitions(0)
            .iter()
            .map(|&f| (g.dart(f).tail, g.dart(f).head))
            .collect();
        assert_eq!(succ, vec![(1, 2), (1, 3)]);
        assert_eq!(g.nb_irreducibility(), Irreducibility::Ok);
    }

    #[test]
    fn irreducibility_priority() {
        let c5 = Graph::from_pairs(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(c5.nb_irreducibility(), Irreducibility::IsCycle);
        let two_triangles = Graph::from_pairs(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(two_triangles.nb_irreducibility(), Irreducibility::NotConnected);
        let path = Graph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.nb_irreducibility(), Irreducibility::MinDegreeBelow2);
        let empty = Graph::new(0, vec![]).unwrap();
        assert_eq!(empty.nb_irreducibility(), Irreducibility::NotConnected);
    }

    #[test]
    fn parallel_copy_of_reverse_is_a_successor() {
        // Two parallel edges between 0 and 1 plus a triangle hanging off 1.
        let g = Graph::from_pairs(3, [(0, 1), (0, 1), (1, 2), (1, 2)]).unwrap();
        // dart 0 = 0->1, dart 2 = 0->1 (parallel), dart 3 = 1->0
        assert!(g.dart_transitions(0).contains(&3));
        assert!(!g.dart_transitions(0).contains(&1));
    }

    #[test]
    fn whole_loop_darts_continue_around() {
        let g = Graph::new(2, vec![Edge::whole_loop(0), Edge::normal(0, 1), Edge::whole_loop(1)]).unwrap();
        assert_eq!(g.degree(0), 3);
        // dart 0 traverses the loop at 0; it may go round again but not reverse.
        assert_eq!(g.dart_transitions(0), &[0, 2]);
    }

    #[test]
    fn half_loops_are_appended() {
        let g = Graph::new(2, vec![Edge::half_loop(0), Edge::normal(0, 1), Edge::half_loop(1)]).unwrap();
        assert_eq!(g.dart_count(), 4);
        assert_eq!(g.dart(0).edge, 1);
        assert_eq!(g.dart(2).edge, 0);
        assert_eq!(g.dart(3).edge, 2);
        assert_eq!(g.reverse(2), 2);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Graph::new(2, vec![Edge::normal(0, 2)]),
            Err(GraphError::EndpointOutOfRange { .. })
        ));
        assert!(matches!(
            Graph::new(
                2,
                vec![Edge {
                    a: 0,
                    b: 1,
                    kind: EdgeKind::HalfLoop
                }]
            ),
            Err(GraphError::LoopOnDistinctEndpoints { .. })
        ));
        assert!(matches!(
            Graph::new(
                2,
                vec![Edge {
                    a: 0,
                    b: 1,
                    kind: EdgeKind::WholeLoop
                }]
            ),
            Err(GraphError::LoopOnDistinctEndpoints { .. })
        ));
        assert!(matches!(
            Graph::new(2, vec![Edge::normal(1, 1)]),
            Err(GraphError::NormalSelfPair { .. })
        ));
    }

    #[test]
    fn text_format() {
        let text = "# K4 minus an edge\nnbgraph 4\ne 0 1\ne 0 2\n\ne 2 1\ne 0 3\ne 3 1\n";
        let g: Graph = text.parse().unwrap();
        assert_eq!(g, k4_minus_edge());
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);

        let loops = Graph::parse_text("nbgraph 2\ne 0 0\nhl 1\ne 0 1\n").unwrap();
        assert_eq!(loops.edges()[0].kind, EdgeKind::WholeLoop);
        assert_eq!(loops.edges()[1].kind, EdgeKind::HalfLoop);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let cases = [
            ("e 0 1\n", 1),
            ("nbgraph 2\ne 0 5\n", 2),
            ("nbgraph 2\n# c\nx 1\n", 3),
            ("nbgraph 2\ne 0\n", 2),
            ("nbgraph 2\nhl a\n", 2),
            ("nbgraph 2\ne 0 1 1\n", 2),
        ];
        for (text, line) in cases {
            match Graph::parse_text(text) {
                Err(GraphError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
