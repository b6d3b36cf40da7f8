//! Segment gadgets used to tile circulant power graphs.
//!
//! A segment is a path-of-cliques graph on consecutively indexed vertices
//! with edges between vertices at index distance at most `k`, together with
//! a preload `l(v)` standing in for the weight that cross-segment edges will
//! eventually contribute. Three kinds exist:
//!
//! * `Single` — `2k+1` vertices `v_0..=v_2k`, target `wd(v_i) + l(v_i) = 2i`
//! * `Reduced` — `2k` vertices `v_1..=v_2k`, same target
//! * `Double` — `4k+2` vertices `v_0..=v_{4k+1}`, target `2 * floor(i/2)`
//!
//! `forward_fill` produces `{0,1,2}` edge weights realizing the targets; the
//! weight-1 subgraph is kept Eulerian so that half-weights can later be
//! alternated along closed walks.

use std::collections::{BTreeMap, BTreeSet};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SegmentKind {
    Single,
    Reduced,
    Double,
}

impl SegmentKind {
    pub fn vertex_count(self, k: usize) -> usize {
        match self {
            SegmentKind::Single => 2 * k + 1,
            SegmentKind::Reduced => 2 * k,
            SegmentKind::Double => 4 * k + 2,
        }
    }

    pub fn first_index(self) -> usize {
        match self {
            SegmentKind::Reduced => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub kind: SegmentKind,
    pub k: usize,
}

impl Segment {
    pub fn new(kind: SegmentKind, k: usize) -> Result<Self> {
        let min_k = match kind {
            SegmentKind::Double => 2,
            _ => 1,
        };
        if k < min_k {
            return Err(Error::Domain(format!(
                "{kind:?} segment requires k >= {min_k}, got {k}"
            )));
        }
        Ok(Segment { kind, k })
    }

    pub fn first_index(&self) -> usize {
        self.kind.first_index()
    }

    pub fn last_index(&self) -> usize {
        match self.kind {
            SegmentKind::Single => 2 * self.k,
            SegmentKind::Reduced => 2 * self.k,
            SegmentKind::Double => 4 * self.k + 1,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.kind.vertex_count(self.k)
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= self.first_index() && i <= self.last_index()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        a != b && self.contains(a) && self.contains(b) && b - a <= self.k
    }

    /// All edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in self.first_index()..self.last_index() {
            for j in i + 1..=(i + self.k).min(self.last_index()) {
                out.push((i, j));
            }
        }
        out
    }

    /// Preload: even values on the tail vertices, standing in for the weight
    /// of cross-segment edges.
    pub fn preload(&self, i: usize) -> u64 {
        debug_assert!(self.contains(i));
        match self.kind {
            SegmentKind::Single | SegmentKind::Reduced => {
                if i <= self.k {
                    0
                } else {
                    2 * (i - self.k) as u64
                }
            }
            SegmentKind::Double => {
                let cut = 3 * self.k + 1;
                if i <= cut {
                    0
                } else {
                    2 * (i - cut) as u64
                }
            }
        }
    }

    /// Target for `wd(v_i) + l(v_i)`.
    pub fn target(&self, i: usize) -> u64 {
        debug_assert!(self.contains(i));
        match self.kind {
            SegmentKind::Single | SegmentKind::Reduced => 2 * i as u64,
            SegmentKind::Double => 2 * (i / 2) as u64,
        }
    }
}

/// A `{0,1,2}` edge weighting of a segment satisfying the target identity.
#[derive(Debug, Clone)]
pub struct SegmentLabelling {
    pub segment: Segment,
    weights: BTreeMap<(usize, usize), u8>,
}

impl SegmentLabelling {
    pub fn weight(&self, i: usize, j: usize) -> u8 {
        let key = if i < j { (i, j) } else { (j, i) };
        *self.weights.get(&key).expect("not a segment edge")
    }

    pub fn weights(&self) -> &BTreeMap<(usize, usize), u8> {
        &self.weights
    }

    /// Sum of incident edge weights of `v_i` (preload not included).
    pub fn wd(&self, i: usize) -> u64 {
        self.weights
            .iter()
            .filter(|(&(a, b), _)| a == i || b == i)
            .map(|(_, &w)| w as u64)
            .sum()
    }

    /// Number of incident weight-1 edges.
    pub fn one_degree(&self, i: usize) -> usize {
        self.weights
            .iter()
            .filter(|(&(a, b), &w)| w == 1 && (a == i || b == i))
            .count()
    }

    pub fn one_edges(&self) -> Vec<(usize, usize)> {
        self.weights
            .iter()
            .filter(|(_, &w)| w == 1)
            .map(|(&e, _)| e)
            .collect()
    }

    fn check_targets(&self) -> Result<()> {
        let seg = self.segment;
        for i in seg.first_index()..=seg.last_index() {
            let got = self.wd(i) + seg.preload(i);
            if got != seg.target(i) {
                return Err(Error::Construction(format!(
                    "{:?} k={}: vertex {i} has wd+l = {got}, target {}",
                    seg.kind,
                    seg.k,
                    seg.target(i)
                )));
            }
        }
        Ok(())
    }
}

/// Processes vertices in increasing index order. For each vertex the deficit
/// `p = target - backward sum - preload` is spread over its `m` forward edges
/// as nondecreasing `{0,1,2}` labels: `m-p` zeros then `p` ones when
/// `p <= m`, else `2m-p` ones then `p-m` twos. `p = 0` is allowed; anything
/// outside `0..=2m` is an internal inconsistency.
pub fn forward_fill(segment: Segment) -> Result<SegmentLabelling> {
    let mut weights: BTreeMap<(usize, usize), u8> = BTreeMap::new();
    let lo = segment.first_index();
    let hi = segment.last_index();
    for i in lo..=hi {
        let backward: u64 = (lo..i)
            .filter(|&j| segment.has_edge(j, i))
            .map(|j| *weights.get(&(j, i)).expect("backward edge unassigned") as u64)
            .sum();
        let need = segment.target(i);
        let supplied = backward + segment.preload(i);
        if supplied > need {
            return Err(Error::Construction(format!(
                "fill {:?} k={}: vertex {i} oversupplied ({supplied} > {need})",
                segment.kind, segment.k
            )));
        }
        let p = (need - supplied) as usize;
        let forward: Vec<usize> = (i + 1..=(i + segment.k).min(hi)).collect();
        let m = forward.len();
        if p > 2 * m {
            return Err(Error::Construction(format!(
                "fill {:?} k={}: vertex {i} deficit {p} exceeds capacity {}",
                segment.kind,
                segment.k,
                2 * m
            )));
        }
        for (idx, &j) in forward.iter().enumerate() {
            let w = if p <= m {
                if idx < m - p {
                    0
                } else {
                    1
                }
            } else if idx < 2 * m - p {
                1
            } else {
                2
            };
            weights.insert((i, j), w);
        }
    }
    let lab = SegmentLabelling { segment, weights };
    lab.check_targets()?;
    Ok(lab)
}

/// Labels a `Double` segment. Even `k` is a plain forward fill. For odd `k`
/// a `Double` of parameter `k-1` is embedded on `v_4..=v_{4k-3}` and filled,
/// the uncovered offset-`k` chords `(v_i, v_{i+k})` for `4 <= i <= 3k+1` get
/// weight 2, and a fixed set of zero edges is raised to 1 to restore the
/// target at `v_2..=v_{k+3}` while keeping the weight-1 subgraph Eulerian.
pub fn double_fill(k: usize) -> Result<SegmentLabelling> {
    let segment = Segment::new(SegmentKind::Double, k)?;
    if k % 2 == 0 {
        return forward_fill(segment);
    }
    let inner = forward_fill(Segment::new(SegmentKind::Double, k - 1)?)?;
    let mut weights: BTreeMap<(usize, usize), u8> = BTreeMap::new();
    for (&(a, b), &w) in inner.weights() {
        weights.insert((a + 4, b + 4), w);
    }
    for i in 4..=3 * k + 1 {
        let j = i + k;
        debug_assert!(segment.has_edge(i, j));
        let prev = weights.insert((i, j), 2);
        if prev.is_some() {
            return Err(Error::Construction(format!(
                "double fill k={k}: chord ({i},{j}) already labelled"
            )));
        }
    }
    let mut flips: Vec<(usize, usize)> = Vec::new();
    if k >= 5 {
        for i in 6..=k + 2 {
            flips.push((i, i + 1));
        }
        flips.push((6, k + 3));
        flips.extend([(2, 3), (3, 4), (4, 5), (2, 5)]);
    } else {
        // k = 3
        flips.extend([(2, 3), (3, 6), (5, 6), (4, 5), (2, 4)]);
    }
    for (a, b) in flips {
        match weights.get(&(a, b)) {
            None => {
                weights.insert((a, b), 1);
            }
            Some(0) => {
                weights.insert((a, b), 1);
            }
            Some(w) => {
                return Err(Error::Construction(format!(
                    "double fill k={k}: edge ({a},{b}) expected 0 before flip, found {w}"
                )));
            }
        }
    }
    for (a, b) in segment.edges() {
        weights.entry((a, b)).or_insert(0);
    }
    let lab = SegmentLabelling { segment, weights };
    lab.check_targets()?;
    Ok(lab)
}

/// Fill dispatch by kind.
pub fn fill(kind: SegmentKind, k: usize) -> Result<SegmentLabelling> {
    match kind {
        SegmentKind::Double => double_fill(k),
        _ => forward_fill(Segment::new(kind, k)?),
    }
}

/// Closed walks covering every weight-1 edge exactly once, one per connected
/// component of the weight-1 subgraph.
#[derive(Debug, Clone)]
pub struct EulerOnesStructure {
    /// Each walk is a closed vertex sequence (`first == last`); consecutive
    /// pairs are the covered edges.
    pub walks: Vec<Vec<usize>>,
}

impl EulerOnesStructure {
    pub fn component_count(&self) -> usize {
        self.walks.len()
    }

    pub fn covered_vertices(&self) -> BTreeSet<usize> {
        self.walks.iter().flatten().copied().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.walks.iter().map(|w| w.len().saturating_sub(1)).sum()
    }
}

/// Extracts closed walks over an edge list in which every vertex has even
/// degree. Walks start at the lowest-index vertex of their component and
/// prefer the lowest-index unused neighbor, so the output is deterministic.
pub fn euler_circuits(edges: &[(usize, usize)]) -> Result<EulerOnesStructure> {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    }
    for (&v, nbrs) in &adj {
        if nbrs.len() % 2 != 0 {
            return Err(Error::Construction(format!(
                "vertex {v} has odd degree {} in the weight-1 subgraph",
                nbrs.len()
            )));
        }
    }
    let mut walks = Vec::new();
    let mut remaining: BTreeSet<usize> = adj.keys().copied().collect();
    while let Some(&start) = remaining.iter().next() {
        let mut stack = vec![start];
        let mut circuit = Vec::new();
        while let Some(&v) = stack.last() {
            let next = adj.get(&v).and_then(|s| s.iter().next().copied());
            match next {
                Some(u) => {
                    adj.get_mut(&v).unwrap().remove(&u);
                    adj.get_mut(&u).unwrap().remove(&v);
                    stack.push(u);
                }
                None => {
                    circuit.push(stack.pop().unwrap());
                }
            }
        }
        circuit.reverse();
        for v in &circuit {
            remaining.remove(v);
        }
        // Isolated vertices (already fully consumed) produce length-1 walks;
        // only genuine circuits carry edges.
        if circuit.len() > 1 {
            walks.push(circuit);
        }
    }
    Ok(EulerOnesStructure { walks })
}

/// Closed walks over the weight-1 edges of a segment labelling.
pub fn euler_ones(lab: &SegmentLabelling) -> Result<EulerOnesStructure> {
    euler_circuits(&lab.one_edges())
}

/// A spanning cycle of the `Reduced` segment whose edges all carry fill
/// weight 1 or 2; degenerates to the single edge `(v_1, v_2)` when `k = 1`.
#[derive(Debug, Clone)]
pub struct HamiltonCycleF {
    pub edges: Vec<(usize, usize)>,
    pub degenerate: bool,
    k: usize,
}

impl HamiltonCycleF {
    /// Cycle traversal starting at `v_1`, moving first to its lowest-index
    /// neighbor. `None` when degenerate.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        if self.degenerate {
            return None;
        }
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for &(a, b) in &self.edges {
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
        let start = 1;
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = *adj[&start].iter().next().unwrap();
        while cur != start {
            order.push(cur);
            let next = *adj[&cur].iter().find(|&&v| v != prev).unwrap();
            prev = cur;
            cur = next;
        }
        debug_assert_eq!(order.len(), 2 * self.k);
        Some(order)
    }
}

/// Builds the explicit spanning cycle of `Reduced` with parameter `k`.
pub fn hamilton_cycle(k: usize) -> Result<HamiltonCycleF> {
    if k == 0 {
        return Err(Error::Domain("hamilton cycle requires k >= 1".into()));
    }
    if k == 1 {
        return Ok(HamiltonCycleF {
            edges: vec![(1, 2)],
            degenerate: true,
            k,
        });
    }
    let edges: Vec<(usize, usize)> = match k {
        2 => vec![(1, 3), (3, 4), (4, 2), (2, 1)],
        3 => vec![(1, 3), (3, 2), (2, 5), (5, 6), (6, 4), (4, 1)],
        _ => {
            let mut e = Vec::new();
            for i in 1..=k / 2 {
                e.push((i, k - i + 1));
            }
            for i in 1..=(k + 1) / 2 {
                e.push((i, k - i + 2));
            }
            for i in k + 2..=(3 * k + 1) / 2 - 1 {
                e.push((i, 3 * k - i));
            }
            for i in k + 2..=(3 * k) / 2 - 1 {
                e.push((i, 3 * k - i - 1));
            }
            e.push((k / 2 + 1, (3 * k) / 2));
            e.push((k + 1, 2 * k));
            e.push((2 * k - 1, 2 * k));
            e.push((2 * k - 2, 2 * k - 1));
            e
        }
    };
    let cycle = HamiltonCycleF {
        edges,
        degenerate: false,
        k,
    };
    validate_hamilton(&cycle, k)?;
    Ok(cycle)
}

fn validate_hamilton(cycle: &HamiltonCycleF, k: usize) -> Result<()> {
    let n = 2 * k;
    if cycle.edges.len() != n {
        return Err(Error::Construction(format!(
            "hamilton cycle k={k}: expected {n} edges, got {}",
            cycle.edges.len()
        )));
    }
    let seg = Segment::new(SegmentKind::Reduced, k)?;
    let mut deg = vec![0usize; n + 1];
    for &(a, b) in &cycle.edges {
        if !seg.has_edge(a, b) {
            return Err(Error::Construction(format!(
                "hamilton cycle k={k}: ({a},{b}) is not a segment edge"
            )));
        }
        deg[a] += 1;
        deg[b] += 1;
    }
    if deg[1..].iter().any(|&d| d != 2) {
        return Err(Error::Construction(format!(
            "hamilton cycle k={k}: not 2-regular"
        )));
    }
    let order = cycle.cycle_order().expect("non-degenerate");
    if order.len() != n {
        return Err(Error::Construction(format!(
            "hamilton cycle k={k}: disconnected"
        )));
    }
    Ok(())
}

/// A `{-1, 0, +1}` edge adjustment of a `Single` or `Reduced` segment whose
/// weighted degrees are the consecutive run `0..|V|` for even `k` and
/// `{-1} ∪ 1..|V|` for odd `k`.
#[derive(Debug, Clone)]
pub struct DeltaLabelling {
    pub segment: Segment,
    deltas: BTreeMap<(usize, usize), i8>,
}

impl DeltaLabelling {
    pub fn delta(&self, i: usize, j: usize) -> i8 {
        let key = if i < j { (i, j) } else { (j, i) };
        self.deltas.get(&key).copied().unwrap_or(0)
    }

    pub fn deltas(&self) -> &BTreeMap<(usize, usize), i8> {
        &self.deltas
    }

    pub fn wd(&self, i: usize) -> i64 {
        self.deltas
            .iter()
            .filter(|(&(a, b), _)| a == i || b == i)
            .map(|(_, &d)| d as i64)
            .sum()
    }
}

/// Builds the delta labelling: `+1` on every forward edge leaving a source
/// with index at most `k`; `-1` on every second path edge `(v_i, v_{i+1})`
/// for `i = k+1, k+3, ...` up to `2*floor(k/2)+k-3`, on `(v_{2k-1}, v_{2k})`,
/// and on `(v_{2k-2}, v_{2k})` when `k` is odd.
pub fn delta_labelling(kind: SegmentKind, k: usize) -> Result<DeltaLabelling> {
    if kind == SegmentKind::Double {
        return Err(Error::Domain("delta labelling applies to Single/Reduced".into()));
    }
    if k < 2 {
        return Err(Error::Domain("delta labelling requires k >= 2".into()));
    }
    let segment = Segment::new(kind, k)?;
    let mut deltas: BTreeMap<(usize, usize), i8> = BTreeMap::new();
    for (a, b) in segment.edges() {
        if a <= k {
            deltas.insert((a, b), 1);
        }
    }
    let upper = 2 * (k / 2) + k - 3;
    let mut i = k + 1;
    while i <= upper {
        set_delta(&mut deltas, segment, i, i + 1, -1)?;
        i += 2;
    }
    set_delta(&mut deltas, segment, 2 * k - 1, 2 * k, -1)?;
    if k % 2 == 1 {
        set_delta(&mut deltas, segment, 2 * k - 2, 2 * k, -1)?;
    }
    Ok(DeltaLabelling { segment, deltas })
}

fn set_delta(
    deltas: &mut BTreeMap<(usize, usize), i8>,
    segment: Segment,
    a: usize,
    b: usize,
    d: i8,
) -> Result<()> {
    if !segment.has_edge(a, b) {
        return Err(Error::Construction(format!(
            "delta labelling: ({a},{b}) is not a segment edge"
        )));
    }
    if deltas.insert((a, b), d).is_some() {
        return Err(Error::Construction(format!(
            "delta labelling: ({a},{b}) assigned twice"
        )));
    }
    Ok(())
}

/// The searched last-block labelling used when the `Double` parameter would
/// drop below 2: a `Single` segment of parameter `g2`, a bridging vertex, and
/// a six-vertex double-style stub, laid out on consecutive positions. All
/// internal edges (pairs at distance <= k within the block) are weighted in
/// `{0,1,2}` so that every block degree is even, no even value occurs more
/// than three times, and the weight-1 subgraph has all degrees even.
#[derive(Debug, Clone)]
pub struct BlockLabelling {
    pub size: usize,
    pub bridge_pos: usize,
    weights: BTreeMap<(usize, usize), u8>,
    pub wd: Vec<u64>,
}

impl BlockLabelling {
    pub fn weights(&self) -> &BTreeMap<(usize, usize), u8> {
        &self.weights
    }

    pub fn one_edges(&self) -> Vec<(usize, usize)> {
        self.weights
            .iter()
            .filter(|(_, &w)| w == 1)
            .map(|(&e, _)| e)
            .collect()
    }
}

/// Deterministic bounded search for the block labelling: depth-first over
/// the block's edges in lexicographic order trying weights `0 < 1 < 2`,
/// pruning on parity, value multiplicity and the Eulerian condition as each
/// position closes. Returns the lexicographically first solution.
pub fn special_block_search(k: usize, g2: usize) -> Result<BlockLabelling> {
    let size = (2 * g2 + 1) + 1 + 6;
    let bridge_pos = 2 * g2 + 1;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for a in 0..size {
        for b in a + 1..(a + k + 1).min(size) {
            edges.push((a, b));
        }
    }
    // last_edge[v]: position in `edges` after which v is closed.
    let mut last_edge = vec![0usize; size];
    for (idx, &(a, b)) in edges.iter().enumerate() {
        last_edge[a] = idx;
        last_edge[b] = idx;
    }
    let mut assign = vec![0u8; edges.len()];
    let mut wd = vec![0u64; size];
    let mut ones = vec![0usize; size];
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();

    fn rec(
        idx: usize,
        edges: &[(usize, usize)],
        last_edge: &[usize],
        assign: &mut Vec<u8>,
        wd: &mut Vec<u64>,
        ones: &mut Vec<usize>,
        counts: &mut BTreeMap<u64, usize>,
    ) -> bool {
        if idx == edges.len() {
            return true;
        }
        let (a, b) = edges[idx];
        for w in 0u8..=2 {
            assign[idx] = w;
            wd[a] += w as u64;
            wd[b] += w as u64;
            if w == 1 {
                ones[a] += 1;
                ones[b] += 1;
            }
            let mut ok = true;
            let mut closed = Vec::new();
            for &v in [a, b].iter() {
                if last_edge[v] == idx {
                    if wd[v] % 2 != 0 || ones[v] % 2 != 0 {
                        ok = false;
                        break;
                    }
                    let c = counts.entry(wd[v]).or_insert(0);
                    *c += 1;
                    closed.push(v);
                    if *c > 3 {
                        ok = false;
                        break;
                    }
                }
            }
            if ok
                && rec(idx + 1, edges, last_edge, assign, wd, ones, counts)
            {
                return true;
            }
            for &v in &closed {
                let c = counts.get_mut(&wd[v]).unwrap();
                *c -= 1;
                if *c == 0 {
                    counts.remove(&wd[v]);
                }
            }
            wd[a] -= w as u64;
            wd[b] -= w as u64;
            if w == 1 {
                ones[a] -= 1;
                ones[b] -= 1;
            }
        }
        false
    }

    if !rec(0, &edges, &last_edge, &mut assign, &mut wd, &mut ones, &mut counts) {
        return Err(Error::SearchFailed(format!(
            "no block labelling for k={k}, g2={g2}"
        )));
    }
    let mut weights = BTreeMap::new();
    for (idx, &(a, b)) in edges.iter().enumerate() {
        weights.insert((a, b), assign[idx]);
    }
    let mut final_wd = vec![0u64; size];
    for (&(a, b), &w) in &weights {
        final_wd[a] += w as u64;
        final_wd[b] += w as u64;
    }
    Ok(BlockLabelling {
        size,
        bridge_pos,
        weights,
        wd: final_wd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_k2_shape() {
        let seg = Segment::new(SegmentKind::Single, 2).unwrap();
        assert_eq!(seg.vertex_count(), 5);
        assert_eq!(
            seg.edges(),
            vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
        );
        let preload: Vec<u64> = (0..=4).map(|i| seg.preload(i)).collect();
        assert_eq!(preload, vec![0, 0, 0, 2, 4]);
    }

    #[test]
    fn reduced_k1_shape() {
        let seg = Segment::new(SegmentKind::Reduced, 1).unwrap();
        assert_eq!(seg.vertex_count(), 2);
        assert_eq!(seg.edges(), vec![(1, 2)]);
    }

    #[test]
    fn double_k2_shape() {
        let seg = Segment::new(SegmentKind::Double, 2).unwrap();
        assert_eq!(seg.vertex_count(), 10);
        assert_eq!(seg.edges().len(), 17);
        assert_eq!(seg.preload(8), 2);
        assert_eq!(seg.preload(9), 4);
        assert!((0..=7).all(|i| seg.preload(i) == 0));
    }

    #[test]
    fn double_requires_k2() {
        assert!(Segment::new(SegmentKind::Double, 1).is_err());
    }

    #[test]
    fn fill_single_k2_exact() {
        let lab = forward_fill(Segment::new(SegmentKind::Single, 2).unwrap()).unwrap();
        assert_eq!(lab.weight(0, 1), 0);
        assert_eq!(lab.weight(0, 2), 0);
        assert_eq!(lab.weight(1, 2), 1);
        assert_eq!(lab.weight(1, 3), 1);
        assert_eq!(lab.weight(2, 3), 1);
        assert_eq!(lab.weight(2, 4), 2);
        assert_eq!(lab.weight(3, 4), 2);
        let profile: Vec<u64> = (0..=4).map(|i| lab.wd(i) + lab.segment.preload(i)).collect();
        assert_eq!(profile, vec![0, 2, 4, 6, 8]);
    }

    #[test]
    fn fill_reduced_k2_exact() {
        let lab = forward_fill(Segment::new(SegmentKind::Reduced, 2).unwrap()).unwrap();
        assert_eq!(lab.weight(1, 2), 1);
        assert_eq!(lab.weight(1, 3), 1);
        assert_eq!(lab.weight(2, 3), 1);
        assert_eq!(lab.weight(2, 4), 2);
        assert_eq!(lab.weight(3, 4), 2);
    }

    #[test]
    fn fill_targets_hold() {
        for k in 1..=10 {
            fill(SegmentKind::Single, k).unwrap();
            fill(SegmentKind::Reduced, k).unwrap();
        }
        for k in 2..=10 {
            fill(SegmentKind::Double, k).unwrap();
        }
    }

    #[test]
    fn double_k3_one_subgraph() {
        let lab = double_fill(3).unwrap();
        let mut ones = lab.one_edges();
        ones.sort_unstable();
        assert_eq!(
            ones,
            vec![
                (2, 3),
                (2, 4),
                (3, 6),
                (4, 5),
                (5, 6),
                (6, 7),
                (6, 8),
                (7, 9),
                (8, 9),
                (9, 10),
                (9, 11),
                (10, 11)
            ]
        );
        let euler = euler_ones(&lab).unwrap();
        assert_eq!(euler.component_count(), 1);
    }

    #[test]
    fn double_k5_two_components() {
        let lab = double_fill(5).unwrap();
        let euler = euler_ones(&lab).unwrap();
        assert_eq!(euler.component_count(), 2);
        let small: BTreeSet<usize> = [2, 3, 4, 5].into_iter().collect();
        assert!(euler
            .walks
            .iter()
            .any(|w| w.iter().copied().collect::<BTreeSet<_>>() == small));
    }

    #[test]
    fn euler_single_k2() {
        let lab = forward_fill(Segment::new(SegmentKind::Single, 2).unwrap()).unwrap();
        let euler = euler_ones(&lab).unwrap();
        assert_eq!(euler.component_count(), 1);
        let covered = euler.covered_vertices();
        assert_eq!(covered, [1, 2, 3].into_iter().collect());
    }

    #[test]
    fn euler_empty() {
        let e = euler_circuits(&[]).unwrap();
        assert_eq!(e.component_count(), 0);
    }

    #[test]
    fn euler_exclusions_double() {
        for k in 2..=10 {
            let lab = double_fill(k).unwrap();
            let euler = euler_ones(&lab).unwrap();
            assert!(euler.component_count() <= 2, "k={k}");
            let covered = euler.covered_vertices();
            let excluded = [0, 1, 4 * k, 4 * k + 1];
            for v in excluded {
                assert!(!covered.contains(&v), "k={k} v={v}");
            }
            let expected: BTreeSet<usize> = (2..4 * k).collect();
            assert_eq!(covered, expected, "k={k}");
        }
    }

    #[test]
    fn hamilton_small() {
        let f = hamilton_cycle(1).unwrap();
        assert!(f.degenerate);
        assert_eq!(f.edges, vec![(1, 2)]);
        let f = hamilton_cycle(2).unwrap();
        let set: BTreeSet<(usize, usize)> = f
            .edges
            .iter()
            .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        assert_eq!(set, [(1, 2), (1, 3), (2, 4), (3, 4)].into_iter().collect());
        let f = hamilton_cycle(3).unwrap();
        let set: BTreeSet<(usize, usize)> = f
            .edges
            .iter()
            .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        assert_eq!(
            set,
            [(1, 3), (2, 3), (2, 5), (5, 6), (4, 6), (1, 4)]
                .into_iter()
                .collect()
        );
    }

    #[test]
    fn hamilton_edges_carry_fill_weight_1_or_2() {
        for k in 1..=10 {
            let f = hamilton_cycle(k).unwrap();
            let lab = fill(SegmentKind::Reduced, k).unwrap();
            for &(a, b) in &f.edges {
                let w = lab.weight(a, b);
                assert!(w == 1 || w == 2, "k={k} edge ({a},{b}) has weight {w}");
            }
        }
    }

    #[test]
    fn delta_examples() {
        let d = delta_labelling(SegmentKind::Single, 2).unwrap();
        let wd: Vec<i64> = (0..=4).map(|i| d.wd(i)).collect();
        assert_eq!(wd, vec![2, 3, 4, 1, 0]);
        let d = delta_labelling(SegmentKind::Single, 3).unwrap();
        let wd: Vec<i64> = (0..=6).map(|i| d.wd(i)).collect();
        assert_eq!(wd, vec![3, 4, 5, 6, 2, 1, -1]);
        let d = delta_labelling(SegmentKind::Reduced, 5).unwrap();
        let wd: Vec<i64> = (1..=10).map(|i| d.wd(i)).collect();
        assert_eq!(wd, vec![5, 6, 7, 8, 9, 4, 3, 2, 1, -1]);
    }

    #[test]
    fn delta_degree_sets() {
        for k in 2..=10 {
            for kind in [SegmentKind::Single, SegmentKind::Reduced] {
                let seg = Segment::new(kind, k).unwrap();
                let d = delta_labelling(kind, k).unwrap();
                let mut got: Vec<i64> = (seg.first_index()..=seg.last_index())
                    .map(|i| d.wd(i))
                    .collect();
                got.sort_unstable();
                let v = seg.vertex_count() as i64;
                let mut expect: Vec<i64> = if k % 2 == 0 {
                    (0..v).collect()
                } else {
                    std::iter::once(-1).chain(1..v).collect()
                };
                expect.sort_unstable();
                assert_eq!(got, expect, "kind={kind:?} k={k}");
            }
        }
    }

    #[test]
    fn block_search_k2() {
        let block = special_block_search(2, 2).unwrap();
        assert_eq!(block.size, 12);
        // Every degree even, multiplicity at most 3, Eulerian ones.
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for &v in &block.wd {
            assert_eq!(v % 2, 0);
            *counts.entry(v).or_insert(0) += 1;
        }
        assert!(counts.values().all(|&c| c <= 3));
        euler_circuits(&block.one_edges()).unwrap();
        // Some weight-2 edge must exist (at least one block degree is >= 6).
        assert!(block.weights().values().any(|&w| w == 2));
    }
}
