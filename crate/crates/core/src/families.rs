//! Graph generators.
//!
//! Labeling is canonical: for wheels the hub is vertex 0, the junctions are
//! `1..=n`, and subdivision vertices follow in edge order (cycle edges
//! `v_i v_{i+1}` first, then spokes `v_0 v_i`). [`subdivide`] keeps the
//! original vertices and appends the new ones edge by edge.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeKind, Graph, VertexId};

/// Parameters of a generated family member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySpec {
    Wheel { n: usize, l1: usize, l2: usize },
    Hk { k: u32 },
    K4MinusEdge,
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
}

impl FamilySpec {
    pub fn build(self) -> Result<Graph> {
        match self {
            FamilySpec::Wheel { n, l1, l2 } => wheel(n, l1, l2),
            FamilySpec::Hk { k } => hk(k),
            FamilySpec::K4MinusEdge => Ok(k4_minus_edge()),
            FamilySpec::Complete { n } => complete(n),
            FamilySpec::CompleteBipartite { a, b } => complete_bipartite(a, b),
        }
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Appends a path of `len` edges from `a` to `b`, allocating `len - 1` fresh
/// vertices starting at `*next`.
fn push_path(edges: &mut Vec<Edge>, next: &mut usize, a: VertexId, b: VertexId, len: usize) {
    let mut prev = a;
    for _ in 1..len {
        edges.push(Edge::normal(prev, *next));
        prev = *next;
        *next += 1;
    }
    edges.push(if prev == b {
        Edge::whole_loop(b)
    } else {
        Edge::normal(prev, b)
    });
}

/// `W_{n,l1,l2}`: the wheel `W_n` with every cycle edge replaced by a path of
/// length `l1` and every spoke by a path of length `l2`.
pub fn wheel(n: usize, l1: usize, l2: usize) -> Result<Graph> {
    if n < 3 || l1 < 1 || l2 < 1 {
        return Err(invalid(format!(
            "wheel requires n >= 3, l1 >= 1, l2 >= 1 (got {n}, {l1}, {l2})"
        )));
    }
    let mut edges = Vec::with_capacity(n * (l1 + l2));
    let mut next = n + 1;
    for i in 1..=n {
        let j = if i == n { 1 } else { i + 1 };
        push_path(&mut edges, &mut next, i, j, l1);
    }
    for i in 1..=n {
        push_path(&mut edges, &mut next, 0, i, l2);
    }
    Ok(Graph::new(next, edges)?)
}

/// `H_k = W_{2^k + 1, l1, l2}` with `(l1, l2) = (2, k + 1)` for even `k` and
/// `(1, (k + 1) / 2)` for odd `k`. Coprimality of `l1, l2` is not enforced.
pub fn hk(k: u32) -> Result<Graph> {
    if k < 1 {
        return Err(invalid("H_k requires k >= 1"));
    }
    if k > 20 {
        log::warn!("H_{k} has about 2^{k} vertices");
    }
    if k >= usize::BITS - 1 {
        return Err(invalid(format!("H_{k} is too large to represent")));
    }
    let n = (1usize << k) + 1;
    let k = k as usize;
    if k.is_multiple_of(2) {
        wheel(n, 2, k + 1)
    } else {
        wheel(n, 1, k.div_ceil(2))
    }
}

/// Replaces every edge by a path of `m` edges. Half-loops are rejected.
pub fn subdivide(g: &Graph, m: usize) -> Result<Graph> {
    if m < 1 {
        return Err(invalid("subdivision length must be at least 1"));
    }
    if g.edges().iter().any(|e| e.kind == EdgeKind::HalfLoop) {
        return Err(invalid("cannot subdivide a graph with half-loops"));
    }
    let mut edges = Vec::with_capacity(g.edge_count() * m);
    let mut next = g.vertex_count();
    for e in g.edges() {
        push_path(&mut edges, &mut next, e.a, e.b, m);
    }
    Ok(Graph::new(next, edges)?)
}

/// `K_4` minus an edge: `u1 = 0`, `u2 = 1` (degree 3), `v1 = 2`, `v2 = 3`
/// (degree 2), edges `u1u2, u1v1, v1u2, u1v2, v2u2`.
pub fn k4_minus_edge() -> Graph {
    Graph::from_pairs(4, [(0, 1), (0, 2), (2, 1), (0, 3), (3, 1)]).expect("static graph")
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid("complete graph requires n >= 3"));
    }
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Ok(Graph::from_pairs(n, pairs)?)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a < 2 || b < 2 {
        return Err(invalid("complete bipartite graph requires a, b >= 2"));
    }
    let pairs = (0..a).flat_map(|x| (0..b).map(move |y| (x, a + y)));
    Ok(Graph::from_pairs(a + b, pairs)?)
}

/// Whether the wheel criterion `(2*2)^(1/l1) = (2(n-1))^(1/l2)` holds, i.e.
/// `4^l2 = (2(n-1))^l1`, compared in big integers.
pub fn wheel_criterion(n: usize, l1: usize, l2: usize) -> bool {
    use num_bigint::BigUint;
    BigUint::from(4u32).pow(l2 as u32) == BigUint::from(2 * (n as u64 - 1)).pow(l1 as u32)
}

/// Random connected multigraph on `n` vertices, possibly with parallel
/// edges, whole-loops and half-loops, and with minimum degree at least two.
///
/// A random spanning tree is extended with `extra` random edges, then every
/// vertex of degree below two receives further edges.
pub fn random_multigraph<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize, loops: bool) -> Graph {
    assert!(n >= 1);
    let mut edges = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        edges.push(Edge::normal(parent, order[i]));
    }
    let random_edge = |rng: &mut R| -> Edge {
        let a = rng.random_range(0..n);
        if loops && rng.random_bool(0.15) {
            return if rng.random_bool(0.5) {
                Edge::whole_loop(a)
            } else {
                Edge::half_loop(a)
            };
        }
        let mut b = rng.random_range(0..n);
        while n > 1 && b == a {
            b = rng.random_range(0..n);
        }
        if a == b {
            Edge::whole_loop(a)
        } else {
            Edge::normal(a, b)
        }
    };
    for _ in 0..extra {
        edges.push(random_edge(rng));
    }
    loop {
        let g = Graph::new(n, edges.clone()).expect("generated endpoints are in range");
        let Some(v) = (0..n).find(|&v| g.degree(v) < 2) else {
            return g;
        };
        let mut b = rng.random_range(0..n);
        if n > 1 {
            while b == v {
                b = rng.random_range(0..n);
            }
            edges.push(Edge::normal(v, b));
        } else if loops && rng.random_bool(0.5) {
            edges.push(Edge::half_loop(v));
        } else {
            edges.push(Edge::whole_loop(v));
        }
    }
}

/// Random NB-irreducible multigraph with `3..=max_n` vertices.
pub fn random_nb_irreducible<R: Rng + ?Sized>(rng: &mut R, max_n: usize, loops: bool) -> Graph {
    loop {
        let n = rng.random_range(3..=max_n.max(3));
        let extra = rng.random_range(1..=n);
        let g = random_multigraph(rng, n, extra, loops);
        if g.is_nb_irreducible() {
            return g;
        }
    }
}

/// Random `d`-regular multigraph by the configuration model: stubs are
/// paired uniformly; a stub left over (odd total) becomes a half-loop, and
/// with `half_loops` each stub is also occasionally closed on itself.
pub fn random_regular<R: Rng + ?Sized>(rng: &mut R, n: usize, d: usize, half_loops: bool) -> Graph {
    loop {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        stubs.shuffle(rng);
        let mut edges = Vec::new();
        while let Some(a) = stubs.pop() {
            if stubs.is_empty() || (half_loops && rng.random_bool(0.1)) {
                edges.push(Edge::half_loop(a));
                continue;
            }
            let b = stubs.pop().unwrap();
            edges.push(if a == b {
                Edge::whole_loop(a)
            } else {
                Edge::normal(a, b)
            });
        }
        let g = Graph::new(n, edges).expect("configuration model endpoints are in range");
        if g.is_nb_irreducible() {
            return g;
        }
    }
}

/// Random connected bipartite `(d1, d2)`-biregular multigraph with `n1`
/// vertices on the degree-`d1` side; requires `n1 * d1` divisible by `d2`.
pub fn random_biregular<R: Rng + ?Sized>(rng: &mut R, n1: usize, d1: usize, d2: usize) -> Option<Graph> {
    if !(n1 * d1).is_multiple_of(d2) {
        return None;
    }
    let n2 = n1 * d1 / d2;
    for _ in 0..1000 {
        let left: Vec<usize> = (0..n1).flat_map(|v| std::iter::repeat_n(v, d1)).collect();
        let mut right: Vec<usize> = (0..n2).flat_map(|v| std::iter::repeat_n(n1 + v, d2)).collect();
        right.shuffle(rng);
        let g = Graph::from_pairs(n1 + n2, left.into_iter().zip(right)).expect("in range");
        if g.is_nb_irreducible() {
            return Some(g);
        }
    }
    None
}

/// Whether every vertex has the same degree, or the graph is bipartite with
/// each side regular.
pub fn is_regular_or_biregular(g: &Graph) -> bool {
    let degs = g.degrees();
    if degs.iter().all(|&d| d == degs[0]) {
        return true;
    }
    let n = g.vertex_count();
    let mut side = vec![usize::MAX; n];
    for s in 0..n {
        if side[s] != usize::MAX {
            continue;
        }
        side[s] = 0;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &d in g.out_darts(v) {
                let w = g.dart(d).head;
                if side[w] == usize::MAX {
                    side[w] = 1 - side[v];
                    stack.push(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
    }
    let side_degree = |k: usize| (0..n).filter(|&v| side[v] == k).map(|v| degs[v]).collect::<Vec<_>>();
    [0, 1].iter().all(|&k| side_degree(k).windows(2).all(|w| w[0] == w[1]))
}
