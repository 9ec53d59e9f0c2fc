//! Exact test for `rho(G) = Lambda(G)`.
//!
//! Two independent checkers decide the question:
//!
//! * the **suspended path condition**: `outdeg(P) * indeg(P) = Lambda^(2|P|)`
//!   for every suspended path `P`;
//! * the **cycle condition**: the product of out-degrees along every
//!   non-backtracking cycle `C` equals `Lambda^|C|`. It is decided by
//!   searching for a potential `phi` on darts with
//!   `phi(f) * outdeg(e) = phi(e) * Lambda` on every transition `e -> f`.
//!
//! Both run in [`ExactValue`] arithmetic. When a condition holds the verdict
//! carries a potential certificate; when it fails it carries a violating
//! suspended path or non-backtracking cycle.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{require_irreducible, Error, Result};
use crate::exact::{ExactValue, Exponent};
use crate::graph::{DartId, Edge, Graph, Irreducibility};
use crate::operator::{self, PerronEstimate, DEFAULT_REL_TOL};

/// `Lambda` exactly, plus its floating-point value.
pub fn lambda_value(g: &Graph) -> Result<(ExactValue, f64)> {
    if g.dart_count() == 0 {
        return Err(Error::NotIrreducible(Irreducibility::NotConnected));
    }
    if g.min_degree() < 2 {
        return Err(Error::NotIrreducible(Irreducibility::MinDegreeBelow2));
    }
    let lambda = exact_lambda(g);
    let approx = lambda.to_f64();
    Ok((lambda, approx))
}

fn exact_lambda(g: &Graph) -> ExactValue {
    let product: ExactValue = (0..g.dart_count())
        .map(|e| ExactValue::from_int(g.outdeg(e) as u64))
        .product();
    product.pow(Exponent::new(1, g.dart_count() as i64))
}

/// A maximal run of darts whose interior vertices all have degree two.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuspendedPath {
    pub darts: Vec<DartId>,
    /// `indeg` of the first dart.
    pub indeg: usize,
    /// `outdeg` of the last dart.
    pub outdeg: usize,
    /// `(outdeg * indeg)^(1 / (2 len))`.
    #[serde(skip)]
    pub g_value: ExactValue,
}

impl SuspendedPath {
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn leading_dart(&self) -> DartId {
        self.darts[0]
    }

    /// Whether `outdeg * indeg = Lambda^(2 len)`.
    pub fn satisfies(&self, lambda: &ExactValue) -> bool {
        ExactValue::from_int((self.outdeg * self.indeg) as u64) == lambda.powi(2 * self.len() as i64)
    }
}

/// Partition of all darts into suspended paths, ordered by smallest dart.
pub fn suspended_path_decomposition(g: &Graph) -> Result<Vec<SuspendedPath>> {
    require_irreducible(g)?;
    decompose(g)
}

fn decompose(g: &Graph) -> Result<Vec<SuspendedPath>> {
    let n = g.dart_count();
    let mut owner = vec![usize::MAX; n];
    let mut paths = Vec::new();
    for start in 0..n {
        if g.indeg(start) <= 1 {
            continue;
        }
        let mut darts = vec![start];
        let mut d = start;
        while g.outdeg(d) == 1 {
            d = g.dart_transitions(d)[0];
            darts.push(d);
            if darts.len() > n {
                return Err(Error::Inconsistent("suspended path does not terminate".into()));
            }
        }
        for &x in &darts {
            if owner[x] != usize::MAX {
                return Err(Error::Inconsistent(format!("dart {x} lies on two suspended paths")));
            }
            owner[x] = paths.len();
        }
        let indeg = g.indeg(start);
        let outdeg = g.outdeg(d);
        let g_value = ExactValue::from_int((indeg * outdeg) as u64).pow(Exponent::new(1, 2 * darts.len() as i64));
        paths.push(SuspendedPath {
            darts,
            indeg,
            outdeg,
            g_value,
        });
    }
    if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::Inconsistent(format!(
            "dart {x} is not covered by a suspended path"
        )));
    }
    paths.sort_by_key(|p| *p.darts.iter().min().unwrap());
    Ok(paths)
}

/// Certificate or counterexample attached to a [`ConditionVerdict`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `phi` per dart with `phi(f) * outdeg(e) = phi(e) * Lambda` for all
    /// `e -> f`; in additive form `lambda = -log Lambda`.
    Potential { phi: Vec<ExactValue> },
    /// A suspended path with `outdeg * indeg != Lambda^(2 len)`.
    Path(SuspendedPath),
    /// A non-backtracking cycle (cyclic dart sequence) whose out-degree
    /// product differs from `Lambda^len`.
    Cycle(Vec<DartId>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionVerdict {
    pub holds: bool,
    pub lambda: ExactValue,
    pub witness: Witness,
}

impl ConditionVerdict {
    /// Re-checks the witness against `g` from scratch.
    pub fn witness_is_valid(&self, g: &Graph) -> bool {
        match (&self.witness, self.holds) {
            (Witness::Potential { phi }, true) => verify_potential(g, phi, &self.lambda),
            (Witness::Path(p), false) => is_suspended_path(g, &p.darts) && !p.satisfies(&self.lambda),
            (Witness::Cycle(c), false) => {
                is_nb_cycle(g, c) && cycle_outdeg_product(g, c) != self.lambda.powi(c.len() as i64)
            }
            _ => false,
        }
    }
}

/// Checks `phi(f) * outdeg(e) = phi(e) * Lambda` on every transition.
pub fn verify_potential(g: &Graph, phi: &[ExactValue], lambda: &ExactValue) -> bool {
    phi.len() == g.dart_count()
        && (0..g.dart_count()).all(|e| {
            let rhs = &phi[e] * lambda;
            g.dart_transitions(e)
                .iter()
                .all(|&f| phi[f].clone() * ExactValue::from_int(g.outdeg(e) as u64) == rhs)
        })
}

/// Whether `darts` is a cyclic non-backtracking sequence.
pub fn is_nb_cycle(g: &Graph, darts: &[DartId]) -> bool {
    !darts.is_empty()
        && darts.iter().all(|&d| d < g.dart_count())
        && (0..darts.len()).all(|i| g.dart_transitions(darts[i]).contains(&darts[(i + 1) % darts.len()]))
}

fn is_suspended_path(g: &Graph, darts: &[DartId]) -> bool {
    let Some((&first, &last)) = darts.first().zip(darts.last()) else {
        return false;
    };
    darts.windows(2).all(|w| g.dart_transitions(w[0]).contains(&w[1]))
        && g.indeg(first) > 1
        && g.outdeg(last) > 1
        && darts[..darts.len() - 1].iter().all(|&d| g.outdeg(d) == 1)
        && darts[1..].iter().all(|&d| g.indeg(d) == 1)
}

pub fn cycle_outdeg_product(g: &Graph, darts: &[DartId]) -> ExactValue {
    darts
        .iter()
        .map(|&d| ExactValue::from_int(g.outdeg(d) as u64))
        .product()
}

/// Decides the suspended path condition. On success the certificate is the
/// closed-form potential `phi(e_i) = Lambda^i / sqrt(indeg(P))` for the
/// `i`-th dart of each path `P`.
pub fn check_suspended_path_condition(g: &Graph) -> Result<ConditionVerdict> {
    let paths = suspended_path_decomposition(g)?;
    let lambda = exact_lambda(g);
    if let Some(bad) = paths.iter().find(|p| !p.satisfies(&lambda)) {
        return Ok(ConditionVerdict {
            holds: false,
            lambda,
            witness: Witness::Path(bad.clone()),
        });
    }
    let mut phi = vec![ExactValue::one(); g.dart_count()];
    for p in &paths {
        let base = ExactValue::from_int(p.indeg as u64).pow(Exponent::new(-1, 2));
        for (i, &d) in p.darts.iter().enumerate() {
            phi[d] = &base * &lambda.powi(i as i64);
        }
    }
    Ok(ConditionVerdict {
        holds: true,
        lambda,
        witness: Witness::Potential { phi },
    })
}

/// Decides the cycle condition by propagating a potential along a BFS tree
/// of the dart transition digraph and checking every non-tree transition.
/// An inconsistency is turned into an explicit violating cycle.
pub fn check_cycle_condition(g: &Graph) -> Result<ConditionVerdict> {
    require_irreducible(g)?;
    let n = g.dart_count();
    let lambda = exact_lambda(g);
    // phi(f) = phi(e) * step[e] for e -> f.
    let step: Vec<ExactValue> = (0..n)
        .map(|e| &lambda / &ExactValue::from_int(g.outdeg(e) as u64))
        .collect();

    let root = 0;
    let mut parent = vec![usize::MAX; n];
    let mut phi: Vec<Option<ExactValue>> = vec![None; n];
    phi[root] = Some(ExactValue::one());
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(e) = queue.pop_front() {
        let next = phi[e].as_ref().unwrap() * &step[e];
        for &f in g.dart_transitions(e) {
            if phi[f].is_none() {
                phi[f] = Some(next.clone());
                parent[f] = e;
                queue.push_back(f);
            }
        }
    }
    let phi: Vec<ExactValue> = phi
        .into_iter()
        .map(|p| p.ok_or_else(|| Error::Inconsistent("transition digraph is not strongly connected".into())))
        .collect::<Result<_>>()?;

    for e in 0..n {
        let expected = &phi[e] * &step[e];
        for &f in g.dart_transitions(e) {
            if phi[f] != expected {
                let cycle = violating_cycle(g, &parent, root, e, f, &lambda)?;
                return Ok(ConditionVerdict {
                    holds: false,
                    lambda,
                    witness: Witness::Cycle(cycle),
                });
            }
        }
    }
    Ok(ConditionVerdict {
        holds: true,
        lambda,
        witness: Witness::Potential { phi },
    })
}

/// Builds the two closed walks `tree(r..e) + (f..r)` and `tree(r..f) + (f..r)`
/// whose weights differ by the inconsistency at `e -> f`, then splits the
/// offending one into dart-simple cycles and returns a violating one.
fn violating_cycle(
    g: &Graph,
    parent: &[usize],
    root: DartId,
    e: DartId,
    f: DartId,
    lambda: &ExactValue,
) -> Result<Vec<DartId>> {
    let tree_path = |mut d: DartId| {
        let mut path = vec![d];
        while d != root {
            d = parent[d];
            path.push(d);
        }
        path.reverse();
        path
    };
    let back = shortest_path_to(g, f, root);
    // back = [f, ..., x] with x -> root.
    let mut walk_a = tree_path(e);
    walk_a.extend_from_slice(&back);
    let mut walk_b = tree_path(f);
    walk_b.extend_from_slice(back.get(1..).unwrap_or(&[]));

    let violates = |c: &[DartId]| cycle_outdeg_product(g, c) != lambda.powi(c.len() as i64);
    for walk in [walk_a, walk_b] {
        if walk.is_empty() || !is_nb_cycle(g, &walk) {
            continue;
        }
        if let Some(c) = split_closed_walk(&walk).into_iter().find(|c| violates(c)) {
            return Ok(c);
        }
    }
    Err(Error::Inconsistent(
        "potential inconsistency did not yield a violating cycle".into(),
    ))
}

/// Shortest transition path `[from, ..., x]` with `x -> to`; empty when
/// `from == to`.
fn shortest_path_to(g: &Graph, from: DartId, to: DartId) -> Vec<DartId> {
    if from == to {
        return Vec::new();
    }
    let n = g.dart_count();
    let mut pred: Vec<Vec<DartId>> = vec![Vec::new(); n];
    for e in 0..n {
        for &f in g.dart_transitions(e) {
            pred[f].push(e);
        }
    }
    // next_hop[x] = successor of x on a shortest path to `to`.
    let mut next_hop = vec![usize::MAX; n];
    next_hop[to] = to;
    let mut queue = VecDeque::from([to]);
    while let Some(x) = queue.pop_front() {
        for &p in &pred[x] {
            if next_hop[p] == usize::MAX {
                next_hop[p] = x;
                queue.push_back(p);
            }
        }
    }
    let mut path = vec![from];
    let mut d = from;
    while next_hop[d] != to {
        d = next_hop[d];
        path.push(d);
    }
    path
}

/// Splits a closed walk into dart-simple cycles.
fn split_closed_walk(walk: &[DartId]) -> Vec<Vec<DartId>> {
    let mut cycles = Vec::new();
    let mut stack: Vec<DartId> = Vec::new();
    for &d in walk {
        if let Some(i) = stack.iter().position(|&x| x == d) {
            cycles.push(stack.split_off(i));
        }
        stack.push(d);
    }
    if !stack.is_empty() {
        cycles.push(stack);
    }
    cycles
}

/// Real-valued function on darts, constant on suspended paths.
#[derive(Debug, Clone, PartialEq)]
pub struct PathFunctionOnDarts {
    pub values: Vec<f64>,
}

impl PathFunctionOnDarts {
    /// `f(e) = log2 g(P)` for the suspended path `P` containing `e`.
    pub fn log2_g(g: &Graph) -> Result<Self> {
        let mut values = vec![0.0; g.dart_count()];
        for p in suspended_path_decomposition(g)? {
            let v = p.g_value.log2();
            for &d in &p.darts {
                values[d] = v;
            }
        }
        Ok(PathFunctionOnDarts { values })
    }

    pub fn constant(g: &Graph, c: f64) -> Self {
        PathFunctionOnDarts {
            values: vec![c; g.dart_count()],
        }
    }

    pub fn mean_over(&self, darts: &[DartId]) -> f64 {
        darts.iter().map(|&d| self.values[d]).sum::<f64>() / darts.len() as f64
    }

    /// Mean under the uniform stationary distribution.
    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// Cycle returned by [`find_improving_cycle`].
#[derive(Debug, Clone, PartialEq)]
pub struct ImprovingCycle {
    pub darts: Vec<DartId>,
    pub mean: f64,
    /// Number of suspended paths peeled off.
    pub peels: usize,
    /// Set when a peeling step could not keep the conditional mean
    /// non-decreasing and the cycle came from a maximum-mean-cycle search.
    pub fallback: bool,
}

/// Tolerance used when comparing conditional means.
const MEAN_EPS: f64 = 1e-12;

/// Subgraph induced by a set of original edges, with the dart map back.
struct Subgraph {
    graph: Graph,
    /// Subgraph dart -> original dart.
    to_orig: Vec<DartId>,
    edges: Vec<usize>,
}

impl Subgraph {
    fn new(g: &Graph, edges: &[usize], edge_darts: &[Vec<DartId>]) -> Self {
        let mut vmap = vec![usize::MAX; g.vertex_count()];
        let mut count = 0;
        let mut sub_edges = Vec::with_capacity(edges.len());
        for &i in edges {
            let e = g.edges()[i];
            for v in [e.a, e.b] {
                if vmap[v] == usize::MAX {
                    vmap[v] = count;
                    count += 1;
                }
            }
            sub_edges.push(Edge {
                a: vmap[e.a],
                b: vmap[e.b],
                kind: e.kind,
            });
        }
        let graph = Graph::new(count, sub_edges).expect("subgraph of a valid graph is valid");
        let mut to_orig = vec![0; graph.dart_count()];
        let mut sub_edge_darts = vec![Vec::new(); edges.len()];
        for d in graph.darts() {
            sub_edge_darts[d.edge].push(d.index);
        }
        for (k, &i) in edges.iter().enumerate() {
            for (&s, &o) in sub_edge_darts[k].iter().zip(&edge_darts[i]) {
                to_orig[s] = o;
            }
        }
        Subgraph {
            graph,
            to_orig,
            edges: edges.to_vec(),
        }
    }
}

fn edge_darts(g: &Graph) -> Vec<Vec<DartId>> {
    let mut out = vec![Vec::new(); g.edge_count()];
    for d in g.darts() {
        out[d.edge].push(d.index);
    }
    out
}

fn darts_of_edges(edges: &[usize], edge_darts: &[Vec<DartId>]) -> Vec<DartId> {
    edges.iter().flat_map(|&i| edge_darts[i].iter().copied()).collect()
}

/// Drops edges hanging off vertices of degree below two, repeatedly.
fn prune_dangling(g: &Graph, edges: &mut Vec<usize>) {
    loop {
        let mut degree = vec![0usize; g.vertex_count()];
        for &i in edges.iter() {
            let e = g.edges()[i];
            match e.kind {
                crate::graph::EdgeKind::Normal => {
                    degree[e.a] += 1;
                    degree[e.b] += 1;
                }
                crate::graph::EdgeKind::WholeLoop => degree[e.a] += 2,
                crate::graph::EdgeKind::HalfLoop => degree[e.a] += 1,
            }
        }
        let before = edges.len();
        edges.retain(|&i| {
            let e = g.edges()[i];
            degree[e.a] >= 2 && degree[e.b] >= 2
        });
        if edges.len() == before {
            return;
        }
    }
}

/// Connected components of an edge set, each as a sorted edge list.
fn edge_components(g: &Graph, edges: &[usize]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &i in edges {
        let e = g.edges()[i];
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &i in edges {
        let r = find(&mut parent, g.edges()[i].a);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Finds a non-backtracking cycle whose mean of `f` is at least the
/// stationary mean of `f`, strictly above it when some suspended path has a
/// strictly smaller mean.
///
/// Peeling: while the current edge set is not a cycle, remove the first
/// suspended path (by leading dart) whose edges have conditional mean at
/// most the current mean, drop dangling edges, and keep the component with
/// the largest conditional mean (ties to the smallest dart).
pub fn find_improving_cycle(g: &Graph, f: &PathFunctionOnDarts) -> Result<ImprovingCycle> {
    require_irreducible(g)?;
    if f.values.len() != g.dart_count() {
        return Err(Error::InvalidParameter(
            "dart function length does not match dart count".into(),
        ));
    }
    let edge_darts = edge_darts(g);
    let mut edges: Vec<usize> = (0..g.edge_count()).collect();
    let mut peels = 0;
    loop {
        let sub = Subgraph::new(g, &edges, &edge_darts);
        let current = f.mean_over(&sub.to_orig);
        if sub.graph.max_degree() <= 2 {
            let darts = best_orientation(&sub, f);
            let mean = f.mean_over(&darts);
            if mean + MEAN_EPS < current {
                break;
            }
            return Ok(ImprovingCycle {
                darts,
                mean,
                peels,
                fallback: false,
            });
        }

        let paths = decompose(&sub.graph)?;
        let mut candidates: Vec<(DartId, Vec<usize>)> = paths
            .iter()
            .map(|p| {
                let mut es: Vec<usize> = p.darts.iter().map(|&d| sub.edges[sub.graph.dart(d).edge]).collect();
                es.sort_unstable();
                es.dedup();
                (sub.to_orig[p.leading_dart()], es)
            })
            .collect();
        candidates.sort_by_key(|c| c.0);
        let Some((_, removed)) = candidates
            .into_iter()
            .find(|(_, es)| f.mean_over(&darts_of_edges(es, &edge_darts)) <= current + MEAN_EPS)
        else {
            return Err(Error::Inconsistent("no suspended path at or below the mean".into()));
        };
        peels += 1;

        let mut rest: Vec<usize> = edges.iter().copied().filter(|i| !removed.contains(i)).collect();
        prune_dangling(g, &mut rest);
        let best = edge_components(g, &rest)
            .into_iter()
            .map(|c| {
                let darts = darts_of_edges(&c, &edge_darts);
                let mean = f.mean_over(&darts);
                let first = *darts.iter().min().unwrap();
                (c, mean, first)
            })
            .reduce(|a, b| {
                if b.1 > a.1 + MEAN_EPS || (b.1 >= a.1 - MEAN_EPS && b.2 < a.2) {
                    b
                } else {
                    a
                }
            });
        match best {
            Some((c, mean, _)) if mean + MEAN_EPS >= current => edges = c,
            _ => break,
        }
    }
    let (darts, mean) = max_mean_cycle(g, f);
    Ok(ImprovingCycle {
        darts,
        mean,
        peels,
        fallback: true,
    })
}

/// The cycle of a max-degree-two component, in whichever direction of
/// traversal has the larger mean.
fn best_orientation(sub: &Subgraph, f: &PathFunctionOnDarts) -> Vec<DartId> {
    let g = &sub.graph;
    let trace = |start: DartId| {
        let mut cyc = vec![start];
        let mut d = g.dart_transitions(start)[0];
        while d != start {
            cyc.push(d);
            d = g.dart_transitions(d)[0];
        }
        cyc.into_iter().map(|d| sub.to_orig[d]).collect::<Vec<_>>()
    };
    let forward = trace(0);
    let backward = trace(g.reverse(0));
    if f.mean_over(&backward) > f.mean_over(&forward) + MEAN_EPS {
        backward
    } else {
        forward
    }
}

/// Karp's maximum mean cycle on the dart transition digraph, with the
/// weight of `e -> f` equal to `f(e)`.
fn max_mean_cycle(g: &Graph, f: &PathFunctionOnDarts) -> (Vec<DartId>, f64) {
    let n = g.dart_count();
    let mut best = vec![vec![f64::NEG_INFINITY; n]; n + 1];
    let mut pred = vec![vec![usize::MAX; n]; n + 1];
    best[0].iter_mut().for_each(|v| *v = 0.0);
    for k in 1..=n {
        for e in 0..n {
            if best[k - 1][e] == f64::NEG_INFINITY {
                continue;
            }
            let w = best[k - 1][e] + f.values[e];
            for &x in g.dart_transitions(e) {
                if w > best[k][x] {
                    best[k][x] = w;
                    pred[k][x] = e;
                }
            }
        }
    }
    let mut target = 0;
    let mut target_val = f64::NEG_INFINITY;
    let last = &best[n];
    for (v, &top) in last.iter().enumerate() {
        if top == f64::NEG_INFINITY {
            continue;
        }
        let worst = (0..n)
            .filter(|&k| best[k][v] > f64::NEG_INFINITY)
            .map(|k| (top - best[k][v]) / (n - k) as f64)
            .fold(f64::INFINITY, f64::min);
        if worst > target_val {
            target_val = worst;
            target = v;
        }
    }
    // Walk back along the optimal n-step walk into `target`; it repeats a dart.
    let mut walk = vec![target];
    let mut d = target;
    for k in (1..=n).rev() {
        d = pred[k][d];
        walk.push(d);
    }
    walk.reverse();
    let cycles = split_closed_walk_open(&walk);
    cycles
        .into_iter()
        .map(|c| {
            let m = f.mean_over(&c);
            (c, m)
        })
        .fold((Vec::new(), f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
}

/// Cycles inside an open walk (segments between repeated darts).
fn split_closed_walk_open(walk: &[DartId]) -> Vec<Vec<DartId>> {
    let mut cycles = Vec::new();
    let mut stack: Vec<DartId> = Vec::new();
    for &d in walk {
        if let Some(i) = stack.iter().position(|&x| x == d) {
            cycles.push(stack.split_off(i));
        }
        stack.push(d);
    }
    cycles
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Equal,
    Strict,
}

/// Combined answer to "is rho = Lambda?".
#[derive(Debug, Clone, PartialEq)]
pub struct RhoLambdaVerdict {
    pub verdict: Verdict,
    pub lambda: ExactValue,
    pub lambda_f64: f64,
    pub rho: PerronEstimate,
    /// `rho - Lambda`.
    pub gap: f64,
    pub path_condition: ConditionVerdict,
    pub cycle_condition: ConditionVerdict,
}

/// Runs both exact checkers (which must agree) and the numeric Perron value.
pub fn verdict_rho_equals_lambda(g: &Graph) -> Result<RhoLambdaVerdict> {
    verdict_with_tol(g, DEFAULT_REL_TOL)
}

pub fn verdict_with_tol(g: &Graph, rel_tol: f64) -> Result<RhoLambdaVerdict> {
    let path_condition = check_suspended_path_condition(g)?;
    let cycle_condition = check_cycle_condition(g)?;
    if path_condition.holds != cycle_condition.holds {
        return Err(Error::Inconsistent(format!(
            "suspended path condition = {}, cycle condition = {}",
            path_condition.holds, cycle_condition.holds
        )));
    }
    let (lambda, lambda_f64) = lambda_value(g)?;
    let rho = operator::rho(g, rel_tol)?;
    let verdict = if path_condition.holds {
        Verdict::Equal
    } else {
        Verdict::Strict
    };
    Ok(RhoLambdaVerdict {
        verdict,
        gap: rho.value - lambda_f64,
        lambda,
        lambda_f64,
        rho,
        path_condition,
        cycle_condition,
    })
}

#[derive(Serialize)]
struct LambdaJson {
    float: f64,
    exact: Vec<[i64; 3]>,
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    #[serde(rename = "type")]
    kind: &'static str,
    darts: Vec<DartId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    potential: Option<Vec<Vec<[i64; 3]>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<&'a SuspendedPath>,
}

impl Serialize for ConditionVerdict {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Json<'a> {
            holds: bool,
            lambda: LambdaJson,
            witness: WitnessJson<'a>,
        }
        let witness = match &self.witness {
            Witness::Potential { phi } => WitnessJson {
                kind: "potential",
                darts: (0..phi.len()).collect(),
                potential: Some(phi.iter().map(ExactValue::to_triples).collect()),
                path: None,
            },
            Witness::Path(p) => WitnessJson {
                kind: "path",
                darts: p.darts.clone(),
                potential: None,
                path: Some(p),
            },
            Witness::Cycle(c) => WitnessJson {
                kind: "cycle",
                darts: c.clone(),
                potential: None,
                path: None,
            },
        };
        Json {
            holds: self.holds,
            lambda: LambdaJson {
                float: self.lambda.to_f64(),
                exact: self.lambda.to_triples(),
            },
            witness,
        }
        .serialize(serializer)
    }
}
