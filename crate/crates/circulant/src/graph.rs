//! Circulant power graphs `C_n^k`, canonical edges, weightings and the
//! closed-form strength formulas.
//!
//! Vertices are `0..n`, and `{a, b}` is an edge exactly when the circular
//! distance between `a` and `b` is at most `k`. Every undirected edge has a
//! unique canonical form `(u, d)` with `1 <= d <= k` and `b = u + d (mod n)`,
//! so the graph has exactly `n * k` edges and is `2k`-regular.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Whether a weighting labels edges only or both edges and vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    S,
    Tvs,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::S => write!(f, "s"),
            Mode::Tvs => write!(f, "tvs"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "s" => Ok(Mode::S),
            "tvs" => Ok(Mode::Tvs),
            other => Err(format!("unknown mode '{other}' (expected 's' or 'tvs')")),
        }
    }
}

pub(crate) fn ceil_div(a: u64, b: u64) -> u64 {
    (a + b - 1) / b
}

/// The graph `C_n^k`: vertices `0..n`, edges between vertices at circular
/// distance `1..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CirculantPowerGraph {
    n: usize,
    k: usize,
}

/// Canonical form of an undirected edge: base vertex `u` and offset `d`,
/// `1 <= d <= k`, the other endpoint being `(u + d) mod n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalEdge {
    pub u: usize,
    pub d: usize,
}

impl CirculantPowerGraph {
    /// Builds `C_n^k`. Requires `k >= 1` and `n >= 2k + 1` so that no offset
    /// can wrap onto another and create a multi-edge.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::Domain(format!("k must be at least 1, got {k}")));
        }
        if n < 2 * k + 1 {
            return Err(Error::Domain(format!(
                "n must be at least 2k+1 = {} to avoid multi-edges, got n = {n}",
                2 * k + 1
            )));
        }
        Ok(CirculantPowerGraph { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Every vertex has degree `2k`.
    pub fn degree(&self) -> usize {
        2 * self.k
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.k
    }

    pub fn canonical_edges(&self) -> impl Iterator<Item = CanonicalEdge> + '_ {
        (0..self.n).flat_map(move |u| (1..=self.k).map(move |d| CanonicalEdge { u, d }))
    }

    /// Dense index of a canonical edge, `u * k + (d - 1)`.
    pub fn edge_index(&self, e: CanonicalEdge) -> usize {
        debug_assert!(e.u < self.n && e.d >= 1 && e.d <= self.k);
        e.u * self.k + (e.d - 1)
    }

    pub fn edge_endpoints(&self, e: CanonicalEdge) -> (usize, usize) {
        (e.u, (e.u + e.d) % self.n)
    }

    pub fn circular_distance(&self, a: usize, b: usize) -> usize {
        let fwd = (b + self.n - a) % self.n;
        fwd.min(self.n - fwd)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        a != b && self.circular_distance(a, b) <= self.k
    }

    /// Canonical form of the edge `{a, b}`, if it is an edge.
    pub fn canonicalize(&self, a: usize, b: usize) -> Option<CanonicalEdge> {
        if a == b || a >= self.n || b >= self.n {
            return None;
        }
        let fwd = (b + self.n - a) % self.n;
        if (1..=self.k).contains(&fwd) {
            return Some(CanonicalEdge { u: a, d: fwd });
        }
        let bwd = self.n - fwd;
        if (1..=self.k).contains(&bwd) {
            return Some(CanonicalEdge { u: b, d: bwd });
        }
        None
    }

    /// The `2k` canonical edges incident to `v`.
    pub fn incident_edges(&self, v: usize) -> Vec<CanonicalEdge> {
        let mut out = Vec::with_capacity(2 * self.k);
        for d in 1..=self.k {
            out.push(CanonicalEdge { u: v, d });
            out.push(CanonicalEdge {
                u: (v + self.n - d) % self.n,
                d,
            });
        }
        out
    }
}

/// Positive integer weights on every edge of a circulant power graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    graph: CirculantPowerGraph,
    weights: Vec<u64>,
}

impl EdgeWeighting {
    /// Wraps a dense weight vector indexed by [`CirculantPowerGraph::edge_index`].
    pub fn new(graph: CirculantPowerGraph, weights: Vec<u64>) -> Result<Self> {
        if weights.len() != graph.edge_count() {
            return Err(Error::Domain(format!(
                "expected {} edge weights, got {}",
                graph.edge_count(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::Domain(format!(
                "edge weights must be positive (index {i} is zero)"
            )));
        }
        Ok(EdgeWeighting { graph, weights })
    }

    pub fn uniform(graph: CirculantPowerGraph, w: u64) -> Result<Self> {
        Self::new(graph, vec![w; graph.edge_count()])
    }

    pub fn graph(&self) -> &CirculantPowerGraph {
        &self.graph
    }

    pub fn weight(&self, e: CanonicalEdge) -> u64 {
        self.weights[self.graph.edge_index(e)]
    }

    pub fn set_weight(&mut self, e: CanonicalEdge, w: u64) {
        let i = self.graph.edge_index(e);
        self.weights[i] = w;
    }

    pub fn max_label(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }
}

/// Edge weights plus a positive weight on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalWeighting {
    edges: EdgeWeighting,
    vertex_weights: Vec<u64>,
}

impl TotalWeighting {
    pub fn new(edges: EdgeWeighting, vertex_weights: Vec<u64>) -> Result<Self> {
        if vertex_weights.len() != edges.graph().n() {
            return Err(Error::Domain(format!(
                "expected {} vertex weights, got {}",
                edges.graph().n(),
                vertex_weights.len()
            )));
        }
        if let Some(v) = vertex_weights.iter().position(|&w| w == 0) {
            return Err(Error::Domain(format!(
                "vertex weights must be positive (vertex {v} is zero)"
            )));
        }
        Ok(TotalWeighting {
            edges,
            vertex_weights,
        })
    }

    pub fn graph(&self) -> &CirculantPowerGraph {
        self.edges.graph()
    }

    pub fn edges(&self) -> &EdgeWeighting {
        &self.edges
    }

    pub fn vertex_weight(&self, v: usize) -> u64 {
        self.vertex_weights[v]
    }

    pub fn vertex_weights(&self) -> &[u64] {
        &self.vertex_weights
    }

    pub fn max_label(&self) -> u64 {
        self.edges
            .max_label()
            .max(self.vertex_weights.iter().copied().max().unwrap_or(0))
    }
}

/// Either kind of weighting, as produced by the builders and consumed by the
/// verifier and the serialization layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Weighting {
    Edge(EdgeWeighting),
    Total(TotalWeighting),
}

impl Weighting {
    pub fn graph(&self) -> &CirculantPowerGraph {
        match self {
            Weighting::Edge(w) => w.graph(),
            Weighting::Total(w) => w.graph(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Weighting::Edge(_) => Mode::S,
            Weighting::Total(_) => Mode::Tvs,
        }
    }

    pub fn max_label(&self) -> u64 {
        match self {
            Weighting::Edge(w) => w.max_label(),
            Weighting::Total(w) => w.max_label(),
        }
    }
}

/// Weighted degrees of every vertex, in vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedDegreeProfile {
    pub mode: Mode,
    pub values: Vec<u64>,
}

impl WeightedDegreeProfile {
    pub fn is_distinct(&self) -> bool {
        let mut sorted = self.values.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// Sum of incident edge weights per vertex, plus the vertex's own weight in
/// total mode.
pub fn weighted_degrees(w: &Weighting) -> WeightedDegreeProfile {
    let g = w.graph();
    let mut values = vec![0u64; g.n()];
    let edges = match w {
        Weighting::Edge(ew) => ew,
        Weighting::Total(tw) => tw.edges(),
    };
    for e in g.canonical_edges() {
        let (a, b) = g.edge_endpoints(e);
        let wt = edges.weight(e);
        values[a] += wt;
        values[b] += wt;
    }
    if let Weighting::Total(tw) = w {
        for (v, val) in values.iter_mut().enumerate() {
            *val += tw.vertex_weight(v);
        }
    }
    WeightedDegreeProfile {
        mode: w.mode(),
        values,
    }
}

fn check_formula_domain(n: usize, k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("k must be at least 2, got {k}")));
    }
    if n < 2 * k + 1 {
        return Err(Error::Domain(format!(
            "n must be at least 2k+1 = {}, got {n}",
            2 * k + 1
        )));
    }
    Ok(())
}

/// Total vertex irregularity strength of `C_n^k`: `ceil((n + 2k) / (2k + 1))`.
pub fn tvs_formula(n: usize, k: usize) -> Result<u64> {
    check_formula_domain(n, k)?;
    Ok(ceil_div((n + 2 * k) as u64, (2 * k + 1) as u64))
}

/// Irregularity strength of `C_n^k`: `ceil((n + 2k - 1) / 2k)`, plus one in
/// the exception cases reported by [`is_s_exception`].
pub fn s_formula(n: usize, k: usize) -> Result<u64> {
    check_formula_domain(n, k)?;
    let base = ceil_div((n + 2 * k - 1) as u64, (2 * k) as u64);
    Ok(if is_s_exception(n, k) { base + 1 } else { base })
}

/// True when the edge-only strength exceeds the generic ceiling by one:
/// either `n mod 4k = 2k+1` with `k` odd, or `n = 2k+1`.
pub fn is_s_exception(n: usize, k: usize) -> bool {
    n == 2 * k + 1 || (n % (4 * k) == 2 * k + 1 && k % 2 == 1)
}

/// Integer lower bound for the irregularity strength of a `d`-regular graph
/// on `n` vertices. The underlying bound is the rational `(n + d - 1) / d`;
/// the ceiling is a valid bound for the integer strength.
pub fn lower_bound_s_regular(n: usize, d: usize) -> u64 {
    ceil_div((n + d - 1) as u64, d as u64)
}

/// Lower bound for the total vertex irregularity strength of a `d`-regular
/// graph on `n` vertices: `ceil((n + d) / (d + 1))`.
pub fn lower_bound_tvs_regular(n: usize, d: usize) -> u64 {
    ceil_div((n + d) as u64, (d + 1) as u64)
}

/// Parity obstruction: for `n = 4kt + 2k + 1` (`t >= 1`) with `k` odd, labels
/// `1..=ceil((n+2k-1)/2k)` force the weighted degrees to fill the interval
/// `[2k, 2k*s]` exactly, whose total `k(2t+3)(4kt+2k+1)` is odd — impossible,
/// since the sum of weighted degrees is twice the sum of edge weights.
pub fn parity_obstruction(n: usize, k: usize) -> bool {
    if k < 2 || k % 2 == 0 || n <= 2 * k + 1 {
        return false;
    }
    if (n - 2 * k - 1) % (4 * k) != 0 {
        return false;
    }
    let t = (n - 2 * k - 1) / (4 * k);
    if t < 1 {
        return false;
    }
    let s = ceil_div((n + 2 * k - 1) as u64, (2 * k) as u64);
    // The degree interval [2k, 2k*s] must have exactly n members.
    let interval = 2 * (k as u64) * s - 2 * (k as u64) + 1;
    if interval != n as u64 {
        return false;
    }
    parity_obstruction_total(n, k, t) % 2 == 1
}

/// The forced degree total `k(2t+3)(4kt+2k+1)` used by the parity argument.
pub fn parity_obstruction_total(n: usize, k: usize, t: usize) -> u64 {
    debug_assert_eq!(4 * k * t + 2 * k + 1, n);
    (k as u64) * (2 * t as u64 + 3) * (n as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn build_k5() {
        // (5,2) is complete: 10 edges, every pair adjacent.
        let g = CirculantPowerGraph::new(5, 2).unwrap();
        assert_eq!(g.edge_count(), 10);
        for a in 0..5 {
            for b in 0..5 {
                if a != b {
                    assert!(g.adjacent(a, b));
                }
            }
        }
    }

    #[test]
    fn build_triangle() {
        let g = CirculantPowerGraph::new(3, 1).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn build_22_2() {
        let g = CirculantPowerGraph::new(22, 2).unwrap();
        assert_eq!(g.edge_count(), 44);
        let nbrs: Vec<usize> = (0..22).filter(|&v| g.adjacent(0, v)).collect();
        assert_eq!(nbrs, vec![1, 2, 20, 21]);
    }

    #[test]
    fn rejects_small_n() {
        assert!(CirculantPowerGraph::new(4, 2).is_err());
        assert!(CirculantPowerGraph::new(2, 1).is_err());
    }

    #[test]
    fn canonicalize_roundtrip() {
        let g = CirculantPowerGraph::new(9, 3).unwrap();
        for e in g.canonical_edges() {
            let (a, b) = g.edge_endpoints(e);
            assert_eq!(g.canonicalize(a, b), Some(e));
            assert_eq!(g.canonicalize(b, a), Some(e));
        }
        assert_eq!(g.canonicalize(0, 4), None);
    }

    #[test]
    fn all_one_profiles() {
        let g = CirculantPowerGraph::new(7, 2).unwrap();
        let ew = EdgeWeighting::uniform(g, 1).unwrap();
        let p = weighted_degrees(&Weighting::Edge(ew.clone()));
        assert!(p.values.iter().all(|&v| v == 4));
        let tw = TotalWeighting::new(ew, vec![1; 7]).unwrap();
        let p = weighted_degrees(&Weighting::Total(tw));
        assert!(p.values.iter().all(|&v| v == 5));
    }

    #[test]
    fn complete_scheme_profile() {
        // On C_5^2 = K_5: edges weighted 2 when the endpoint labels sum to at
        // least n, vertices weighted 2 on the upper half. Total degrees n+i.
        let g = CirculantPowerGraph::new(5, 2).unwrap();
        let mut weights = vec![0u64; g.edge_count()];
        for e in g.canonical_edges() {
            let (a, b) = g.edge_endpoints(e);
            weights[g.edge_index(e)] = if a + b >= 5 { 2 } else { 1 };
        }
        let ew = EdgeWeighting::new(g, weights).unwrap();
        let vw: Vec<u64> = (0..5).map(|i| if 2 * i < 5 { 1 } else { 2 }).collect();
        let tw = TotalWeighting::new(ew, vw).unwrap();
        let p = weighted_degrees(&Weighting::Total(tw));
        assert_eq!(p.values, vec![5, 6, 7, 8, 9]);
    }

    #[test]
    fn tvs_formula_values() {
        assert_eq!(tvs_formula(22, 2).unwrap(), 6);
        assert_eq!(tvs_formula(5, 2).unwrap(), 2);
        assert_eq!(tvs_formula(12, 3).unwrap(), 3);
        assert!(tvs_formula(4, 2).is_err());
        assert!(tvs_formula(10, 1).is_err());
    }

    #[test]
    fn s_formula_values() {
        assert_eq!(s_formula(19, 3).unwrap(), 5);
        assert_eq!(s_formula(5, 2).unwrap(), 3);
        assert_eq!(s_formula(12, 3).unwrap(), 3);
    }

    #[test]
    fn s_exception_cases() {
        assert!(is_s_exception(19, 3));
        assert!(!is_s_exception(22, 2));
        // 21 mod 8 = 5 = 2k+1 but k is even.
        assert!(!is_s_exception(21, 2));
        for k in 2..=12 {
            assert!(is_s_exception(2 * k + 1, k));
        }
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound_s_regular(5, 4), 2);
        assert_eq!(lower_bound_s_regular(19, 6), 4);
        assert_eq!(lower_bound_tvs_regular(22, 4), 6);
        assert_eq!(lower_bound_tvs_regular(5, 4), 2);
        assert_eq!(lower_bound_tvs_regular(100, 4), 21);
    }

    #[test]
    fn tvs_formula_meets_regular_bound() {
        for k in 2..=8 {
            for n in (2 * k + 1)..=200 {
                assert_eq!(
                    tvs_formula(n, k).unwrap(),
                    lower_bound_tvs_regular(n, 2 * k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn parity_obstruction_cases() {
        assert!(parity_obstruction(19, 3));
        assert_eq!(parity_obstruction_total(19, 3, 1), 285);
        assert!(parity_obstruction(31, 3));
        assert_eq!(parity_obstruction_total(31, 3, 2), 651);
        assert!(!parity_obstruction(21, 2));
        assert!(!parity_obstruction(7, 3)); // n = 2k+1 is not covered
    }

    #[test]
    fn parity_obstruction_implies_exception() {
        for k in 2..=9 {
            for n in (2 * k + 1)..=400 {
                if parity_obstruction(n, k) {
                    assert!(is_s_exception(n, k), "n={n} k={k}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn edge_count_and_regularity(k in 1usize..=8, extra in 0usize..=179) {
            let n = 2 * k + 1 + extra;
            let g = CirculantPowerGraph::new(n, k).unwrap();
            prop_assert_eq!(g.edge_count(), n * k);
            for v in 0..n {
                prop_assert_eq!(g.incident_edges(v).len(), 2 * k);
            }
        }

        #[test]
        fn degree_sum_identity(k in 1usize..=5, extra in 0usize..=40, seed in any::<u64>()) {
            let n = 2 * k + 1 + extra;
            let g = CirculantPowerGraph::new(n, k).unwrap();
            // Small deterministic pseudo-random weights from the seed.
            let mut state = seed | 1;
            let mut next = move || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (state >> 33) % 9 + 1
            };
            let weights: Vec<u64> = (0..g.edge_count()).map(|_| next()).collect();
            let ew = EdgeWeighting::new(g, weights).unwrap();
            let edge_total = ew.total();
            let p = weighted_degrees(&Weighting::Edge(ew.clone()));
            prop_assert_eq!(p.values.iter().sum::<u64>(), 2 * edge_total);
            let vw: Vec<u64> = (0..n).map(|_| next()).collect();
            let vertex_total: u64 = vw.iter().sum();
            let tw = TotalWeighting::new(ew, vw).unwrap();
            let p = weighted_degrees(&Weighting::Total(tw));
            prop_assert_eq!(p.values.iter().sum::<u64>(), 2 * edge_total + vertex_total);
        }
    }
}
