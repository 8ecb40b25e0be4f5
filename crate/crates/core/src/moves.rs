//! Elementary moves on link diagrams and the discriminant events they cross.
//!
//! Every move except `setHeight` keeps the link inside one chamber of the
//! complement of the discriminant. In checked mode this is verified twice:
//! the region swept by the moving strand must avoid the other component
//! wherever the two could collide in the thickened surface, and the
//! chart-independent crossing structure must be unchanged (up to one
//! cancelling pair for the Reidemeister II moves). A `setHeight` that pushes
//! a segment through exactly one crossing strand is a discriminant event.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{
    crossings, scan, translates_meeting, validate, Component, Crossing, CrossingSignature, CrossingSite,
    DiagramError, LinkDiagram, Strand, Surface,
};
use crate::geometry::{on_segment, rat, BBox, ConvexRegion, Point};
use crate::group::{pair_canonical, GroupElement, PairClass};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "camelCase", rename_all_fields = "camelCase")]
pub enum Move {
    /// Moves vertex `vertex` to `to`.
    JiggleVertex { component: Strand, vertex: usize, to: Point },
    /// Inserts a vertex at `at`, a point interior to segment `segment`.
    Subdivide { component: Strand, segment: usize, at: Point },
    /// Removes a vertex lying between two collinear segments of equal height.
    MergeCollinear { component: Strand, vertex: usize },
    /// Moves the basepoint vertex one step along the curve.
    SlidePeriod { component: Strand, forward: bool },
    /// Splits segment `segment` at a new vertex `tip`, pulling it across
    /// at most one strand of the other component.
    R2Insert { component: Strand, segment: usize, tip: Point },
    /// Removes vertex `vertex`, straightening its two segments.
    R2Delete { component: Strand, vertex: usize },
    SetHeight { component: Strand, segment: usize, height: i64 },
}

impl Move {
    pub fn component(&self) -> Strand {
        match self {
            Move::JiggleVertex { component, .. }
            | Move::Subdivide { component, .. }
            | Move::MergeCollinear { component, .. }
            | Move::SlidePeriod { component, .. }
            | Move::R2Insert { component, .. }
            | Move::R2Delete { component, .. }
            | Move::SetHeight { component, .. } => *component,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ApplyMode {
    #[default]
    Checked,
    /// Skips the homotopy checks; the result must still be generic.
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error("{what} index {index} out of range for {component} ({len} available)")]
    BadIndex { component: Strand, what: &'static str, index: usize, len: usize },
    #[error("point is not interior to segment {segment} of {component}")]
    NotOnSegment { component: Strand, segment: usize },
    #[error("vertex {vertex} of {component} is not between collinear segments")]
    NotCollinear { component: Strand, vertex: usize },
    #[error("segments around vertex {vertex} of {component} have different heights")]
    HeightMismatch { component: Strand, vertex: usize },
    #[error("{component} needs at least {needed} vertices for this move")]
    TooFewVertices { component: Strand, needed: usize },
    #[error("vertex 0 of {component} is the basepoint; slide the period first")]
    Basepoint { component: Strand },
    #[error("not a link homotopy: {0}")]
    NotAHomotopy(String),
    #[error("move changes the crossing structure")]
    CrossingStructureChanged,
    #[error("multi-crossing height change: segment {segment} of {component} passes {count} strands")]
    MultiCrossingHeightChange { component: Strand, segment: usize, count: usize },
}

/// A crossing of the discriminant caused by a `setHeight` move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DiscriminantEvent {
    pub move_index: usize,
    pub site: CrossingSite,
    /// The diagram at the moment the two strands meet.
    pub snapshot: LinkDiagram,
    /// Base-chart sign of the crossing right after the move.
    pub sign: i8,
    pub over_after: Strand,
    pub raw_alpha: GroupElement,
    pub raw_beta: GroupElement,
    pub code: PairClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveScript {
    pub initial: LinkDiagram,
    pub moves: Vec<Move>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("move {index}: {error}")]
pub struct ScriptError {
    pub index: usize,
    pub error: MoveError,
}

fn check_index(which: Strand, what: &'static str, index: usize, len: usize) -> Result<(), MoveError> {
    if index >= len {
        return Err(MoveError::BadIndex { component: which, what, index, len });
    }
    Ok(())
}

/// Cover point before vertex `i` along the curve.
fn prev_point(comp: &Component, surface: Surface, i: usize) -> Result<Point, MoveError> {
    if i > 0 {
        return Ok(comp.vertices[i - 1].clone());
    }
    let back = surface.deck(&comp.closure.inverse())?;
    Ok(back.apply(comp.vertices.last().expect("nonempty")))
}

/// Cover point after vertex `i` along the curve.
fn next_point(comp: &Component, surface: Surface, i: usize) -> Result<Point, MoveError> {
    if i + 1 < comp.len() {
        return Ok(comp.vertices[i + 1].clone());
    }
    Ok(surface.deck(&comp.closure)?.apply(&comp.vertices[0]))
}

/// A region swept by a strand at a fixed height.
struct Sweep {
    region: ConvexRegion,
    height: i64,
}

/// Verifies that sweeping `moving` through the given regions, and moving a
/// vertex along `connector` (whose vertical edge spans `[lo, hi]`), does not
/// pass through the other component in the thickened surface.
fn check_sweep(
    d: &LinkDiagram,
    moving: Strand,
    sweeps: &[Sweep],
    connector: Option<(&Point, &Point, i64, i64)>,
) -> Result<(), MoveError> {
    let other = d.component(moving.other());
    let period = other.period(d.surface)?;
    let pbox = BBox::of(&period).expect("nonempty");
    for sweep in sweeps {
        let rbox = sweep.region.bbox().expect("nonempty region");
        for g in translates_meeting(d.surface, &pbox, &rbox) {
            let deck = d.surface.deck(&g)?;
            let q: Vec<Point> = period.iter().map(|p| deck.apply(p)).collect();
            if q.iter().any(|v| sweep.region.contains(v)) {
                return Err(MoveError::NotAHomotopy(format!(
                    "swept region contains a vertex of {}",
                    moving.other()
                )));
            }
            for (j, w) in q.windows(2).enumerate() {
                if other.heights[j] == sweep.height && sweep.region.meets_segment(&w[0], &w[1]) {
                    return Err(MoveError::NotAHomotopy(format!(
                        "strand sweeps through segment {j} of {} at equal height",
                        moving.other()
                    )));
                }
            }
        }
    }
    if let Some((from, to, lo, hi)) = connector {
        let path = ConvexRegion::hull(&[from.clone(), to.clone()]);
        let cbox = path.bbox().expect("nonempty");
        for g in translates_meeting(d.surface, &pbox, &cbox) {
            let deck = d.surface.deck(&g)?;
            let q: Vec<Point> = period.iter().map(|p| deck.apply(p)).collect();
            for (j, w) in q.windows(2).enumerate() {
                let h = other.heights[j];
                if lo <= h && h <= hi && path.meets_segment(&w[0], &w[1]) {
                    return Err(MoveError::NotAHomotopy(format!(
                        "vertical edge of the moving vertex passes segment {j} of {}",
                        moving.other()
                    )));
                }
            }
        }
    }
    Ok(())
}

fn signatures(xs: &[Crossing]) -> Vec<CrossingSignature> {
    let mut sigs: Vec<_> = xs.iter().map(|c| c.signature()).collect();
    sigs.sort();
    sigs
}

/// Removes every element of `small` from `big` (both sorted); `None` unless
/// `small` is a sub-multiset.
fn multiset_difference(big: &[CrossingSignature], small: &[CrossingSignature]) -> Option<Vec<CrossingSignature>> {
    let mut rest = big.to_vec();
    for s in small {
        let pos = rest.iter().position(|x| x == s)?;
        rest.remove(pos);
    }
    Some(rest)
}

fn is_cancelling_pair(extra: &[CrossingSignature]) -> bool {
    match extra {
        [] => true,
        [p, q] => p.code == q.code && p.over == q.over && p.sign.map(|s| -s) == q.sign,
        _ => false,
    }
}

fn set_height_flips(d: &LinkDiagram, xs: &[Crossing], which: Strand, segment: usize, height: i64) -> Vec<(CrossingSite, i64)> {
    let old = d.component(which).heights[segment];
    let (lo, hi) = if old < height { (old, height) } else { (height, old) };
    let mut flips = Vec::new();
    for raw in xs {
        let (mine, partner) = match which {
            Strand::One => (raw.site.segment1, d.comp2.heights[raw.site.segment2]),
            Strand::Two => (raw.site.segment2, d.comp1.heights[raw.site.segment1]),
        };
        if mine == segment && lo < partner && partner < hi {
            flips.push((raw.site.clone(), partner));
        }
    }
    flips
}

/// Applies one move. Returns the new diagram and, for a `setHeight` that
/// crosses the discriminant, the event (with `move_index` 0).
pub fn apply_move(
    d: &LinkDiagram,
    m: &Move,
    mode: ApplyMode,
) -> Result<(LinkDiagram, Option<DiscriminantEvent>), MoveError> {
    let before = crossings(d)?;
    let surface = d.surface;
    let which = m.component();
    let comp = d.component(which);
    let n = comp.len();
    let checked = mode == ApplyMode::Checked;
    let mut out = d.clone();
    let mut pair_allowed = false;
    let mut event = None;
    match m {
        Move::JiggleVertex { vertex, to, .. } => {
            check_index(which, "vertex", *vertex, n)?;
            if n < 2 {
                return Err(MoveError::TooFewVertices { component: which, needed: 2 });
            }
            let old = &comp.vertices[*vertex];
            let prev = prev_point(comp, surface, *vertex)?;
            let next = next_point(comp, surface, *vertex)?;
            if checked {
                let h_prev = comp.heights[(vertex + n - 1) % n];
                let h_next = comp.heights[*vertex];
                let sweeps = [
                    Sweep { region: ConvexRegion::hull(&[prev, old.clone(), to.clone()]), height: h_prev },
                    Sweep { region: ConvexRegion::hull(&[old.clone(), to.clone(), next]), height: h_next },
                ];
                let connector =
                    (h_prev != h_next).then(|| (old, to, h_prev.min(h_next), h_prev.max(h_next)));
                check_sweep(d, which, &sweeps, connector)?;
            }
            out.component_mut(which).vertices[*vertex] = to.clone();
        }
        Move::Subdivide { segment, at, .. } => {
            check_index(which, "segment", *segment, n)?;
            let a = &comp.vertices[*segment];
            let b = next_point(comp, surface, *segment)?;
            if !on_segment(at, a, &b) || at == a || *at == b {
                return Err(MoveError::NotOnSegment { component: which, segment: *segment });
            }
            let c = out.component_mut(which);
            c.vertices.insert(segment + 1, at.clone());
            c.heights.insert(segment + 1, c.heights[*segment]);
        }
        Move::MergeCollinear { vertex, .. } | Move::R2Delete { vertex, .. } => {
            check_index(which, "vertex", *vertex, n)?;
            if *vertex == 0 {
                return Err(MoveError::Basepoint { component: which });
            }
            if comp.heights[vertex - 1] != comp.heights[*vertex] {
                return Err(MoveError::HeightMismatch { component: which, vertex: *vertex });
            }
            let prev = &comp.vertices[vertex - 1];
            let v = &comp.vertices[*vertex];
            let next = next_point(comp, surface, *vertex)?;
            if let Move::MergeCollinear { .. } = m {
                if !on_segment(v, prev, &next) {
                    return Err(MoveError::NotCollinear { component: which, vertex: *vertex });
                }
            } else {
                pair_allowed = true;
                if checked {
                    let region = ConvexRegion::hull(&[prev.clone(), v.clone(), next]);
                    check_sweep(d, which, &[Sweep { region, height: comp.heights[*vertex] }], None)?;
                }
            }
            let c = out.component_mut(which);
            c.vertices.remove(*vertex);
            c.heights.remove(*vertex);
        }
        Move::SlidePeriod { forward, .. } => {
            let c = out.component_mut(which);
            if *forward {
                let end = surface.deck(&c.closure)?.apply(&c.vertices[0]);
                c.vertices.remove(0);
                c.vertices.push(end);
                c.heights.rotate_left(1);
            } else {
                let start = surface.deck(&c.closure.inverse())?.apply(c.vertices.last().expect("nonempty"));
                c.vertices.pop();
                c.vertices.insert(0, start);
                c.heights.rotate_right(1);
            }
        }
        Move::R2Insert { segment, tip, .. } => {
            check_index(which, "segment", *segment, n)?;
            pair_allowed = true;
            let a = &comp.vertices[*segment];
            let b = next_point(comp, surface, *segment)?;
            if checked {
                let region = ConvexRegion::hull(&[a.clone(), b, tip.clone()]);
                check_sweep(d, which, &[Sweep { region, height: comp.heights[*segment] }], None)?;
            }
            let c = out.component_mut(which);
            c.vertices.insert(segment + 1, tip.clone());
            c.heights.insert(segment + 1, c.heights[*segment]);
        }
        Move::SetHeight { segment, height, .. } => {
            check_index(which, "segment", *segment, n)?;
            let flips = set_height_flips(d, &before, which, *segment, *height);
            if flips.len() > 1 {
                return Err(MoveError::MultiCrossingHeightChange {
                    component: which,
                    segment: *segment,
                    count: flips.len(),
                });
            }
            out.component_mut(which).heights[*segment] = *height;
            if let Some((site, partner)) = flips.into_iter().next() {
                let mut snapshot = d.clone();
                snapshot.component_mut(which).heights[*segment] = partner;
                let xs = crossings(&out)?;
                let after = xs.iter().find(|c| c.site == site).cloned().expect("crossing survives a height change");
                event = Some(DiscriminantEvent {
                    move_index: 0,
                    code: pair_canonical(&after.raw_alpha, &after.raw_beta)?,
                    site,
                    snapshot,
                    sign: after.sign,
                    over_after: after.over,
                    raw_alpha: after.raw_alpha,
                    raw_beta: after.raw_beta,
                });
            }
        }
    }
    let after = match event {
        Some(_) => return Ok((out, event)),
        None => signatures(&crossings(&out)?),
    };
    if checked && !matches!(m, Move::SetHeight { .. }) {
        let before = signatures(&before);
        let ok = if before == after {
            true
        } else if !pair_allowed {
            false
        } else {
            let (big, small) = if after.len() > before.len() { (&after, &before) } else { (&before, &after) };
            multiset_difference(big, small).is_some_and(|extra| is_cancelling_pair(&extra))
        };
        if !ok {
            return Err(MoveError::CrossingStructureChanged);
        }
    }
    Ok((out, event))
}

/// Runs a script, returning the final diagram and its events.
pub fn run_script(script: &MoveScript, mode: ApplyMode) -> Result<(LinkDiagram, Vec<DiscriminantEvent>), ScriptError> {
    validate(&script.initial).map_err(|e| ScriptError { index: 0, error: e.into() })?;
    let mut d = script.initial.clone();
    let mut events = Vec::new();
    for (index, m) in script.moves.iter().enumerate() {
        let (next, event) = apply_move(&d, m, mode).map_err(|error| ScriptError { index, error })?;
        if let Some(mut e) = event {
            e.move_index = index;
            events.push(e);
        }
        d = next;
    }
    Ok((d, events))
}

pub fn events(script: &MoveScript) -> Result<Vec<DiscriminantEvent>, ScriptError> {
    run_script(script, ApplyMode::Checked).map(|(_, e)| e)
}

/// The move undoing `m` when applied to `before`.
pub fn inverse_move(before: &LinkDiagram, m: &Move) -> Result<Move, MoveError> {
    apply_move(before, m, ApplyMode::Unchecked)?;
    let comp = before.component(m.component());
    Ok(match m.clone() {
        Move::JiggleVertex { component, vertex, .. } => {
            Move::JiggleVertex { component, vertex, to: comp.vertices[vertex].clone() }
        }
        Move::Subdivide { component, segment, .. } => Move::MergeCollinear { component, vertex: segment + 1 },
        Move::MergeCollinear { component, vertex } => {
            Move::Subdivide { component, segment: vertex - 1, at: comp.vertices[vertex].clone() }
        }
        Move::SlidePeriod { component, forward } => Move::SlidePeriod { component, forward: !forward },
        Move::R2Insert { component, segment, .. } => Move::R2Delete { component, vertex: segment + 1 },
        Move::R2Delete { component, vertex } => {
            Move::R2Insert { component, segment: vertex - 1, tip: comp.vertices[vertex].clone() }
        }
        Move::SetHeight { component, segment, .. } => {
            Move::SetHeight { component, segment, height: comp.heights[segment] }
        }
    })
}

/// The script running from the final diagram back to the initial one.
pub fn reverse_script(script: &MoveScript) -> Result<MoveScript, ScriptError> {
    let mut d = script.initial.clone();
    let mut inverses = Vec::with_capacity(script.moves.len());
    for (index, m) in script.moves.iter().enumerate() {
        let wrap = |error| ScriptError { index, error };
        inverses.push(inverse_move(&d, m).map_err(wrap)?);
        d = apply_move(&d, m, ApplyMode::Checked).map_err(wrap)?.0;
    }
    inverses.reverse();
    Ok(MoveScript { initial: d, moves: inverses })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzConfig {
    /// Whether `setHeight` moves may cross the discriminant.
    pub events: bool,
    /// Vertex count beyond which no vertices are added.
    pub max_vertices: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { events: false, max_vertices: 16 }
    }
}

fn nudge(rng: &mut ChaCha8Rng, p: &Point, scale: i64) -> Point {
    let dx = rat(rng.gen_range(-scale..=scale), 256);
    let dy = rat(rng.gen_range(-scale..=scale), 256);
    Point::new(&p.x + dx, &p.y + dy)
}

/// A point pushed off the middle of `[a, b]` perpendicularly.
fn bulge(rng: &mut ChaCha8Rng, a: &Point, b: &Point) -> Point {
    let mid = a.lerp(b, &rat(1, 2));
    let dir = b.sub(a);
    let mut k = rng.gen_range(1..=6);
    if rng.gen_bool(0.5) {
        k = -k;
    }
    let perp = Point::new(-dir.y.clone(), dir.x.clone()).scale(&rat(k, 16));
    mid.add(&perp)
}

fn random_candidate(d: &LinkDiagram, rng: &mut ChaCha8Rng, config: &FuzzConfig) -> Result<Move, MoveError> {
    let component = if rng.gen_bool(0.5) { Strand::One } else { Strand::Two };
    let comp = d.component(component);
    let n = comp.len();
    let grow = n < config.max_vertices;
    let pick = if config.events && rng.gen_bool(0.4) { 6 } else { rng.gen_range(0..7) };
    let m = match pick {
        0 => {
            let vertex = rng.gen_range(0..n);
            Move::JiggleVertex { component, vertex, to: nudge(rng, &comp.vertices[vertex], 12) }
        }
        1 if grow => {
            let segment = rng.gen_range(0..n);
            let b = next_point(comp, d.surface, segment)?;
            let at = comp.vertices[segment].lerp(&b, &rat(rng.gen_range(1..8), 8));
            Move::Subdivide { component, segment, at }
        }
        2 if n > 1 => Move::MergeCollinear { component, vertex: rng.gen_range(1..n) },
        4 if grow => {
            let segment = rng.gen_range(0..n);
            let b = next_point(comp, d.surface, segment)?;
            Move::R2Insert { component, segment, tip: bulge(rng, &comp.vertices[segment], &b) }
        }
        5 if n > 1 => Move::R2Delete { component, vertex: rng.gen_range(1..n) },
        6 => Move::SetHeight { component, segment: rng.gen_range(0..n), height: rng.gen_range(-3..=3) },
        _ => Move::SlidePeriod { component, forward: rng.gen_bool(0.5) },
    };
    Ok(m)
}

/// A deterministic checked script of exactly `len` moves starting at
/// `initial`. Candidates that fail the checks are redrawn; after a run of
/// failures a period slide, which always applies, is used instead.
pub fn random_script_with(
    initial: &LinkDiagram,
    len: usize,
    seed: u64,
    config: FuzzConfig,
) -> Result<MoveScript, MoveError> {
    validate(initial)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut d = initial.clone();
    let mut moves = Vec::with_capacity(len);
    while moves.len() < len {
        let mut chosen = None;
        for _ in 0..40 {
            let m = random_candidate(&d, &mut rng, &config)?;
            match apply_move(&d, &m, ApplyMode::Checked) {
                Ok((next, event)) if config.events || event.is_none() => {
                    chosen = Some((m, next));
                    break;
                }
                _ => {}
            }
        }
        let (m, next) = match chosen {
            Some(c) => c,
            None => {
                let m = Move::SlidePeriod { component: Strand::One, forward: rng.gen_bool(0.5) };
                let next = apply_move(&d, &m, ApplyMode::Checked)?.0;
                (m, next)
            }
        };
        moves.push(m);
        d = next;
    }
    Ok(MoveScript { initial: initial.clone(), moves })
}

/// `random_script_with` using the default configuration (no events).
pub fn random_script(initial: &LinkDiagram, len: usize, seed: u64) -> Result<MoveScript, MoveError> {
    random_script_with(initial, len, seed, FuzzConfig::default())
}

const DIRECTIONS: [(i64, i64); 8] = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)];

fn star_polygon(rng: &mut ChaCha8Rng, center: &Point, radii: std::ops::RangeInclusive<i64>, height: i64) -> Component {
    let mut vertices = Vec::new();
    for (x, y) in DIRECTIONS {
        if vertices.len() < 3 || rng.gen_bool(0.6) {
            let r = rat(rng.gen_range(radii.clone()), 16);
            vertices.push(Point::new(&center.x + &r * rat(x, 1), &center.y + &r * rat(y, 1)));
        }
    }
    Component { heights: vec![height; vertices.len()], vertices, closure: GroupElement::klein(0, 0) }
}

/// A split diagram of two contractible star polygons with at least two
/// crossings, subdivided so every comp1 segment carries at most one.
pub fn random_contractible_split(surface: Surface, seed: u64) -> LinkDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let identity = surface.group().identity();
    loop {
        let c1 = Point::new(rat(rng.gen_range(1..17), 17), rat(rng.gen_range(1..17), 17));
        let c2 = nudge(&mut rng, &c1, 96);
        let mut comp1 = star_polygon(&mut rng, &c1, 4..=14, -1);
        let mut comp2 = star_polygon(&mut rng, &c2, 2..=9, 1);
        comp1.closure = identity;
        comp2.closure = identity;
        let d = LinkDiagram { surface, comp1, comp2 };
        let Ok(d) = crate::diagram::perturb(&d, rng.gen(), 16) else { continue };
        let raw = scan(&d, false).expect("generic");
        if raw.len() < 2 {
            continue;
        }
        return separate_crossings(&d, &raw);
    }
}

fn step(d: &mut LinkDiagram, moves: &mut Vec<Move>, m: Move) -> Result<(), MoveError> {
    *d = apply_move(d, &m, ApplyMode::Checked)?.0;
    moves.push(m);
    Ok(())
}

fn separate_crossings(d: &LinkDiagram, raw: &[crate::diagram::RawCrossing]) -> LinkDiagram {
    let mut out = d.clone();
    let period = d.comp1.period(d.surface).expect("valid");
    let mut vertices = Vec::new();
    let mut heights = Vec::new();
    for i in 0..d.comp1.len() {
        vertices.push(period[i].clone());
        heights.push(d.comp1.heights[i]);
        let mut ts: Vec<_> = raw.iter().filter(|r| r.site.segment1 == i).map(|r| r.t.clone()).collect();
        ts.sort();
        for w in ts.windows(2) {
            let mid = (&w[0] + &w[1]) * rat(1, 2);
            vertices.push(period[i].lerp(&period[i + 1], &mid));
            heights.push(d.comp1.heights[i]);
        }
    }
    out.comp1.vertices = vertices;
    out.comp1.heights = heights;
    out
}

/// Two checked scripts from the same split diagram to the same final
/// diagram, crossing the discriminant in different orders. The second one
/// also opens and closes excursions (Reidemeister II pairs and period
/// slides on comp2, flips of other comp1 segments) in last-in-first-out
/// order.
pub fn random_flip_paths(surface: Surface, seed: u64) -> Result<(MoveScript, MoveScript), MoveError> {
    let initial = random_contractible_split(surface, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let crossed: Vec<usize> = {
        let mut segs: Vec<usize> = scan(&initial, false)?.iter().map(|r| r.site.segment1).collect();
        segs.sort();
        segs.dedup();
        segs
    };
    let mut chosen: Vec<usize> = crossed.iter().copied().filter(|_| rng.gen_bool(0.7)).collect();
    if chosen.is_empty() {
        chosen.push(crossed[rng.gen_range(0..crossed.len())]);
    }
    let flip = |segment: usize, height: i64| Move::SetHeight { component: Strand::One, segment, height };

    let mut first = chosen.clone();
    first.shuffle(&mut rng);
    let script1 = MoveScript { initial: initial.clone(), moves: first.iter().map(|&s| flip(s, 2)).collect() };

    let mut remaining = chosen.clone();
    remaining.shuffle(&mut rng);
    remaining.reverse();
    let mut d = initial.clone();
    let mut moves = Vec::new();
    let mut stack: Vec<Move> = Vec::new();
    let mut budget = 6;
    while !remaining.is_empty() || !stack.is_empty() {
        let roll: f64 = rng.gen();
        if !remaining.is_empty() && (roll < 0.4 || (stack.is_empty() && budget == 0)) {
            let m = flip(*remaining.last().expect("nonempty"), 2);
            match apply_move(&d, &m, ApplyMode::Checked) {
                Ok((next, _)) => {
                    d = next;
                    moves.push(m);
                    remaining.pop();
                }
                Err(_) => {
                    let close = stack.pop().expect("base state flips cleanly");
                    step(&mut d, &mut moves, close)?;
                }
            }
        } else if budget > 0 && stack.len() < 3 && roll < 0.75 {
            budget -= 1;
            let (open, close) = match rng.gen_range(0..3) {
                0 => {
                    let n = d.comp2.len();
                    let segment = rng.gen_range(0..n);
                    let b = next_point(&d.comp2, d.surface, segment)?;
                    let tip = bulge(&mut rng, &d.comp2.vertices[segment], &b);
                    (
                        Move::R2Insert { component: Strand::Two, segment, tip },
                        Move::R2Delete { component: Strand::Two, vertex: segment + 1 },
                    )
                }
                1 => {
                    let forward = rng.gen_bool(0.5);
                    (
                        Move::SlidePeriod { component: Strand::Two, forward },
                        Move::SlidePeriod { component: Strand::Two, forward: !forward },
                    )
                }
                _ => {
                    let segment = rng.gen_range(0..d.comp1.len());
                    if chosen.contains(&segment) || d.comp1.heights[segment] != -1 {
                        continue;
                    }
                    (flip(segment, 2), flip(segment, -1))
                }
            };
            if let Ok((next, _)) = apply_move(&d, &open, ApplyMode::Checked) {
                d = next;
                moves.push(open);
                stack.push(close);
            }
        } else if let Some(close) = stack.pop() {
            step(&mut d, &mut moves, close)?;
        }
    }
    Ok((script1, MoveScript { initial, moves }))
}
