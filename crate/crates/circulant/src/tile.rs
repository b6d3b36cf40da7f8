//! Shared tiling machinery for the weighting builders: placing segments on
//! consecutive arcs of the cycle, writing cross-boundary weights, and the
//! staircase patch that restores preloads around the last block.

use crate::graph::CirculantPowerGraph;
use crate::segments::{SegmentKind, SegmentLabelling};
use crate::{Error, Result};

/// One segment placed on consecutive global positions. Ascending placements
/// put the lowest local index first; descending ones reverse the order so
/// that neighbouring segments meet either high-end to high-end or low-end to
/// low-end.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Placement {
    pub kind: SegmentKind,
    pub param: usize,
    pub ascending: bool,
    pub start: usize,
}

impl Placement {
    pub fn len(&self) -> usize {
        self.kind.vertex_count(self.param)
    }

    pub fn end(&self) -> usize {
        self.start + self.len() - 1
    }

    pub fn first_local(&self) -> usize {
        self.kind.first_index()
    }

    pub fn last_local(&self) -> usize {
        self.first_local() + self.len() - 1
    }

    pub fn global_of(&self, local: usize) -> usize {
        debug_assert!(local >= self.first_local() && local <= self.last_local());
        if self.ascending {
            self.start + (local - self.first_local())
        } else {
            self.start + (self.last_local() - local)
        }
    }

    /// Global position of the vertex at distance `delta` from this
    /// placement's high-index end.
    pub fn high_end_global(&self, delta: usize) -> usize {
        self.global_of(self.last_local() - delta)
    }
}

/// Scratch `{0,1,2}` weights indexed by canonical edge, with double-write
/// detection.
pub(crate) struct StarWeights<'g> {
    g: &'g CirculantPowerGraph,
    slots: Vec<Option<u8>>,
}

impl<'g> StarWeights<'g> {
    pub fn new(g: &'g CirculantPowerGraph) -> Self {
        StarWeights {
            g,
            slots: vec![None; g.edge_count()],
        }
    }

    pub fn set(&mut self, a: usize, b: usize, w: u8) -> Result<()> {
        let e = self.g.canonicalize(a, b).ok_or_else(|| {
            Error::Construction(format!("({a},{b}) is not an edge of C_{}^{}", self.g.n(), self.g.k()))
        })?;
        let slot = &mut self.slots[self.g.edge_index(e)];
        match slot {
            Some(prev) if *prev != w => Err(Error::Construction(format!(
                "edge ({a},{b}) written twice: {prev} then {w}"
            ))),
            _ => {
                *slot = Some(w);
                Ok(())
            }
        }
    }

    /// Unwritten edges become 0.
    pub fn finish(self) -> Vec<u8> {
        self.slots.into_iter().map(|s| s.unwrap_or(0)).collect()
    }
}

/// Copies a segment labelling onto the graph through a placement.
pub(crate) fn write_segment(
    w: &mut StarWeights,
    pl: &Placement,
    lab: &SegmentLabelling,
) -> Result<()> {
    debug_assert_eq!(lab.segment.kind, pl.kind);
    debug_assert_eq!(lab.segment.k, pl.param);
    for (&(i, j), &wt) in lab.weights() {
        w.set(pl.global_of(i), pl.global_of(j), wt)?;
    }
    Ok(())
}

/// Writes `weight` on every edge joining two adjacent placements across the
/// boundary after global position `left_end` (no intervening vertex).
pub(crate) fn write_full_boundary(
    w: &mut StarWeights,
    k: usize,
    left_end: usize,
    weight: u8,
) -> Result<()> {
    for a in 0..k {
        for b in 0..k - a {
            w.set(left_end - a, left_end + 1 + b, weight)?;
        }
    }
    Ok(())
}

/// The cross-edge plan around the last block: a staircase of weight-2 edges
/// between the two final segments (pairs of boundary distances `(da, db)`
/// with `da + db <= cutoff`), plus optional bridge-vertex fans to each side.
///
/// `bump_a` / `bump_d` list the boundary-distance ranges whose vertices end
/// up two above their preload; everything else is restored exactly.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PatchPlan {
    pub cutoff: i64,
    pub bridge_to_a: Option<usize>,
    pub bridge_to_d: Option<usize>,
    pub bump_a: Option<usize>,
    pub bump_d: Option<usize>,
}

/// Patch between two segments of the same family (`Single`/`Single` or
/// `Reduced`/`Reduced`) with high-side parameters `h` (first) and `g`
/// (second), `h ∈ {g, g+1}`.
pub(crate) fn patch_plan_equal(h: usize, g: usize, bridge: bool) -> Result<PatchPlan> {
    if h != g && h != g + 1 {
        return Err(Error::Construction(format!(
            "patch expects h in {{g, g+1}}, got h={h}, g={g}"
        )));
    }
    Ok(if !bridge {
        PatchPlan {
            cutoff: h as i64 - 1,
            bridge_to_a: None,
            bridge_to_d: None,
            bump_a: None,
            bump_d: if h == g + 1 { Some(g) } else { None },
        }
    } else if h == g + 1 {
        PatchPlan {
            cutoff: h as i64 - 2,
            bridge_to_a: Some(h - 1),
            bridge_to_d: Some(g),
            bump_a: None,
            bump_d: Some(g),
        }
    } else {
        PatchPlan {
            cutoff: h as i64 - 1,
            bridge_to_a: Some(h),
            bridge_to_d: Some(g),
            bump_a: Some(h),
            bump_d: Some(g),
        }
    })
}

/// Patch between a `Single` segment of parameter `g2` and a `Double` segment
/// of parameter `g1` (`g2 ∈ {g1-1, g1, g1+1}`).
pub(crate) fn patch_plan_mixed(g2: usize, g1: usize, bridge: bool) -> Result<PatchPlan> {
    let h = g2.max(g1);
    if g2 + 1 < g1 || g1 + 1 < g2 {
        return Err(Error::Construction(format!(
            "patch expects |g2 - g1| <= 1, got g2={g2}, g1={g1}"
        )));
    }
    Ok(if !bridge {
        PatchPlan {
            cutoff: h as i64 - 1,
            bridge_to_a: None,
            bridge_to_d: None,
            bump_a: if g2 < g1 { Some(g2) } else { None },
            bump_d: if g1 < g2 { Some(g1) } else { None },
        }
    } else if g2 == g1 {
        PatchPlan {
            cutoff: h as i64 - 1,
            bridge_to_a: Some(h),
            bridge_to_d: Some(g1),
            bump_a: Some(g2),
            bump_d: Some(g1),
        }
    } else if g2 == g1 + 1 {
        PatchPlan {
            cutoff: h as i64 - 2,
            bridge_to_a: Some(h - 1),
            bridge_to_d: Some(g1),
            bump_a: None,
            bump_d: Some(g1),
        }
    } else {
        // g2 == g1 - 1
        PatchPlan {
            cutoff: h as i64 - 2,
            bridge_to_a: Some(g2),
            bridge_to_d: Some(h - 1),
            bump_a: Some(g2),
            bump_d: None,
        }
    })
}

/// Writes the weight-2 patch edges. `a` is the segment whose high end sits
/// just before the gap, `d` the one whose high end sits just after it;
/// `bridge` is the global position of the extra vertex, when present.
pub(crate) fn apply_patch(
    w: &mut StarWeights,
    plan: &PatchPlan,
    a: &Placement,
    d: &Placement,
    bridge: Option<usize>,
) -> Result<()> {
    if plan.cutoff >= 0 {
        let cutoff = plan.cutoff as usize;
        for da in 0..=cutoff {
            for db in 0..=cutoff - da {
                w.set(a.high_end_global(da), d.high_end_global(db), 2)?;
            }
        }
    }
    if let Some(max_da) = plan.bridge_to_a {
        let v = bridge.ok_or_else(|| Error::Construction("patch needs a bridge vertex".into()))?;
        for da in 0..=max_da {
            w.set(v, a.high_end_global(da), 2)?;
        }
    }
    if let Some(max_db) = plan.bridge_to_d {
        let v = bridge.ok_or_else(|| Error::Construction("patch needs a bridge vertex".into()))?;
        for db in 0..=max_db {
            w.set(v, d.high_end_global(db), 2)?;
        }
    }
    Ok(())
}

/// Expected `wd*` for every vertex of a patched placement: the segment target
/// plus 2 on the bumped high-side vertices.
pub(crate) fn expected_star(pl: &Placement, bump_max_delta: Option<usize>) -> Vec<(usize, u64)> {
    let seg = crate::segments::Segment {
        kind: pl.kind,
        k: pl.param,
    };
    (pl.first_local()..=pl.last_local())
        .map(|local| {
            let delta = pl.last_local() - local;
            let mut t = seg.target(local);
            if let Some(maxd) = bump_max_delta {
                if delta <= maxd {
                    t += 2;
                }
            }
            (pl.global_of(local), t)
        })
        .collect()
}

/// Recomputes `wd*` from scratch for every vertex.
pub(crate) fn star_degrees(g: &CirculantPowerGraph, wstar: &[u8]) -> Vec<u64> {
    let mut wd = vec![0u64; g.n()];
    for e in g.canonical_edges() {
        let (a, b) = g.edge_endpoints(e);
        let w = wstar[g.edge_index(e)] as u64;
        wd[a] += w;
        wd[b] += w;
    }
    wd
}
