//! Link diagrams on the Klein bottle and the torus, drawn in the universal
//! cover.
//!
//! The fundamental domain is the unit square `[0,1)^2` with basepoint at the
//! origin. For the Klein bottle the deck group is generated by
//! `A(x, y) = (1 - x, y + 1)` and `B(x, y) = (x + 1, y)`, and `a^r b^s` acts
//! as `A^r` after `B^s`. For the torus both generators are translations.
//!
//! A component is one period of a lifted closed curve: its vertices, the
//! deck element `h` with the implicit last vertex `h(v0)`, and one integer
//! height per segment. Segment `i` runs from vertex `i` to vertex `i + 1`
//! (the last one ends at `h(v0)`).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::geometry::{cross, int, intersect, on_segment, rat, sign_of, BBox, Contact, Point, Rational};
use crate::group::{canonical_form, pair_canonical, GroupElement, GroupId, PairClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Surface {
    Klein,
    Torus,
}

impl Surface {
    pub fn group(self) -> GroupId {
        match self {
            Surface::Klein => GroupId::Klein,
            Surface::Torus => GroupId::Torus,
        }
    }

    /// The elements `a` and `b`.
    pub fn generators(self) -> [GroupElement; 2] {
        match self {
            Surface::Klein => [GroupElement::klein(1, 0), GroupElement::klein(0, 1)],
            Surface::Torus => [GroupElement::torus(1, 0), GroupElement::torus(0, 1)],
        }
    }

    fn element(self, r: i64, s: i64) -> GroupElement {
        match self {
            Surface::Klein => GroupElement::klein(r, s),
            Surface::Torus => GroupElement::torus(r, s),
        }
    }

    pub fn deck(self, g: &GroupElement) -> Result<Deck, DiagramError> {
        match (self, *g) {
            (Surface::Klein, GroupElement::Klein { r, s }) => {
                let flip = r.is_odd();
                let tx = if flip { 1 - s } else { s };
                Ok(Deck { flip, tx: BigInt::from(tx), ty: BigInt::from(r) })
            }
            (Surface::Torus, GroupElement::Torus { r, s }) => {
                Ok(Deck { flip: false, tx: BigInt::from(s), ty: BigInt::from(r) })
            }
            _ => Err(DiagramError::WrongGroup { expected: self.group(), found: g.group() }),
        }
    }

    /// Splits a cover point as `g(base)` with `base` in `[0,1)^2`.
    pub fn locate(self, p: &Point) -> (GroupElement, Point) {
        let r = p.y.floor();
        let base_y = &p.y - &r;
        let r = r.to_integer().to_i64().expect("coordinate fits i64");
        let flip = self == Surface::Klein && r.is_odd();
        let (s, base_x) = if flip {
            let mirrored = Rational::one() - &p.x;
            let s = mirrored.floor();
            (s.to_integer(), mirrored - s)
        } else {
            let s = p.x.floor();
            (s.to_integer(), &p.x - s)
        };
        let s = s.to_i64().expect("coordinate fits i64");
        (self.element(r, s), Point::new(base_x, base_y))
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Surface::Klein => "klein",
            Surface::Torus => "torus",
        })
    }
}

/// A deck transformation `(x, y) -> (+-x + tx, y + ty)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deck {
    pub flip: bool,
    pub tx: BigInt,
    pub ty: BigInt,
}

impl Deck {
    pub fn apply(&self, p: &Point) -> Point {
        let tx = Rational::from_integer(self.tx.clone());
        let ty = Rational::from_integer(self.ty.clone());
        let x = if self.flip { tx - &p.x } else { &p.x + tx };
        Point::new(x, &p.y + ty)
    }

    /// The linear part, applied to a direction vector.
    pub fn linear(&self, v: &Point) -> Point {
        if self.flip {
            Point::new(-v.x.clone(), v.y.clone())
        } else {
            v.clone()
        }
    }
}

pub fn deck_apply(g: &GroupElement, p: &Point, surface: Surface) -> Result<Point, DiagramError> {
    Ok(surface.deck(g)?.apply(p))
}

/// One of the two link components.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strand {
    One,
    Two,
}

impl Strand {
    pub fn other(self) -> Strand {
        match self {
            Strand::One => Strand::Two,
            Strand::Two => Strand::One,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Strand::One => 1,
            Strand::Two => 2,
        }
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "comp{}", self.index())
    }
}

impl Serialize for Strand {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(self.index())
    }
}

impl<'de> Deserialize<'de> for Strand {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match u8::deserialize(d)? {
            1 => Ok(Strand::One),
            2 => Ok(Strand::Two),
            n => Err(serde::de::Error::custom(format!("component must be 1 or 2, got {n}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub vertices: Vec<Point>,
    pub closure: GroupElement,
    pub heights: Vec<i64>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The `n + 1` cover points of one period, ending at `h(v0)`.
    pub fn period(&self, surface: Surface) -> Result<Vec<Point>, DiagramError> {
        let deck = surface.deck(&self.closure)?;
        let mut pts = self.vertices.clone();
        if let Some(first) = self.vertices.first() {
            pts.push(deck.apply(first));
        }
        Ok(pts)
    }

    pub fn translated(&self, g: &GroupElement, surface: Surface) -> Result<Component, DiagramError> {
        let deck = surface.deck(g)?;
        Ok(Component {
            vertices: self.vertices.iter().map(|v| deck.apply(v)).collect(),
            closure: g.mul(&self.closure)?.mul(&g.inverse())?,
            heights: self.heights.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDiagram {
    pub surface: Surface,
    pub comp1: Component,
    pub comp2: Component,
}

impl LinkDiagram {
    pub fn component(&self, which: Strand) -> &Component {
        match which {
            Strand::One => &self.comp1,
            Strand::Two => &self.comp2,
        }
    }

    pub fn component_mut(&mut self, which: Strand) -> &mut Component {
        match which {
            Strand::One => &mut self.comp1,
            Strand::Two => &mut self.comp2,
        }
    }

    /// The same link with the two components exchanged.
    pub fn swapped(&self) -> LinkDiagram {
        LinkDiagram { surface: self.surface, comp1: self.comp2.clone(), comp2: self.comp1.clone() }
    }
}

/// Identifies a crossing: segment of comp1, segment of comp2, and the deck
/// element carrying comp2's period onto the crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrossingSite {
    pub segment1: usize,
    pub segment2: usize,
    pub translate: GroupElement,
}

impl fmt::Display for CrossingSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "segment {} of comp1 x segment {} of {}.comp2", self.segment1, self.segment2, self.translate)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Degeneracy {
    EmptyComponent { component: Strand },
    RepeatedVertex { component: Strand, index: usize },
    HeightCount { component: Strand, expected: usize, found: usize },
    /// Segments touching at a vertex or overlapping collinearly.
    Contact { site: CrossingSite },
    TriplePoint { site: CrossingSite },
    OnDomainBoundary { site: CrossingSite },
    EqualHeights { site: CrossingSite },
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degeneracy::EmptyComponent { component } => write!(f, "{component} has no vertices"),
            Degeneracy::RepeatedVertex { component, index } => {
                write!(f, "{component} repeats vertex {index}")
            }
            Degeneracy::HeightCount { component, expected, found } => {
                write!(f, "{component} has {found} heights for {expected} segments")
            }
            Degeneracy::Contact { site } => write!(f, "non-transverse contact: {site}"),
            Degeneracy::TriplePoint { site } => write!(f, "triple point: {site}"),
            Degeneracy::OnDomainBoundary { site } => {
                write!(f, "crossing on the fundamental domain boundary: {site}")
            }
            Degeneracy::EqualHeights { site } => write!(f, "equal heights at crossing: {site}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyReport {
    pub issues: Vec<Degeneracy>,
}

impl fmt::Display for DegeneracyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degenerate diagram")?;
        for (i, issue) in self.issues.iter().enumerate() {
            write!(f, "{}{issue}", if i == 0 { ": " } else { "; " })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{0}")]
    Degenerate(DegeneracyReport),
    #[error("expected an element of the {expected} group, found {found}")]
    WrongGroup { expected: GroupId, found: GroupId },
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
}

/// An inter-component crossing of a generic diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Crossing {
    /// Representative in the base domain `[0,1)^2`.
    pub point: Point,
    /// `+1` iff (over direction, under direction) is positively oriented in
    /// the base-domain chart.
    pub sign: i8,
    pub over: Strand,
    pub code: PairClass,
    pub raw_alpha: GroupElement,
    pub raw_beta: GroupElement,
    pub site: CrossingSite,
    /// The deck element moving the crossing into the base domain.
    pub chart: GroupElement,
}

/// Chart-independent summary of a crossing, used to compare crossing
/// structures before and after a move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingSignature {
    pub code: PairClass,
    pub over: Strand,
    /// Sign transported to the canonical code; `None` on torsion classes.
    pub sign: Option<i8>,
}

impl Crossing {
    /// The sign measured in the chart of the universal cover.
    pub fn cover_sign(&self) -> i8 {
        self.sign * self.chart.orientation_character()
    }

    pub fn signature(&self) -> CrossingSignature {
        let (code, conj) = canonical_form(&self.raw_alpha, &self.raw_beta).expect("same group");
        CrossingSignature {
            code,
            over: self.over,
            sign: code.coorientable.then(|| self.sign * conj.orientation_character()),
        }
    }
}

/// A crossing found while scanning; `over` is `None` when heights agree.
#[derive(Clone, Debug)]
pub(crate) struct RawCrossing {
    pub site: CrossingSite,
    pub point: Point,
    pub chart: GroupElement,
    /// Orientation of (comp1 direction, comp2 direction) in the base chart.
    pub frame: i8,
    pub over: Option<Strand>,
    pub raw_alpha: GroupElement,
    pub raw_beta: GroupElement,
    /// Position along the comp1 segment.
    pub t: Rational,
}

impl RawCrossing {
    pub fn sign_with(&self, over: Strand) -> i8 {
        match over {
            Strand::One => self.frame,
            Strand::Two => -self.frame,
        }
    }

    fn into_crossing(self) -> Crossing {
        let over = self.over.expect("generic crossing");
        Crossing {
            sign: self.sign_with(over),
            code: pair_canonical(&self.raw_alpha, &self.raw_beta).expect("same group"),
            point: self.point,
            over,
            raw_alpha: self.raw_alpha,
            raw_beta: self.raw_beta,
            site: self.site,
            chart: self.chart,
        }
    }
}

fn floor_i64(q: &Rational) -> i64 {
    q.floor().to_integer().to_i64().expect("coordinate fits i64")
}

fn ceil_i64(q: &Rational) -> i64 {
    q.ceil().to_integer().to_i64().expect("coordinate fits i64")
}

/// Deck elements `g` with `g(moving) ∩ target ≠ ∅`.
pub(crate) fn translates_meeting(surface: Surface, moving: &BBox, target: &BBox) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let r_lo = ceil_i64(&(&target.min.y - &moving.max.y));
    let r_hi = floor_i64(&(&target.max.y - &moving.min.y));
    for r in r_lo..=r_hi {
        let flip = surface == Surface::Klein && r.is_odd();
        let (tx_lo, tx_hi) = if flip {
            (ceil_i64(&(&target.min.x + &moving.min.x)), floor_i64(&(&target.max.x + &moving.max.x)))
        } else {
            (ceil_i64(&(&target.min.x - &moving.max.x)), floor_i64(&(&target.max.x - &moving.min.x)))
        };
        for tx in tx_lo..=tx_hi {
            let s = if flip { 1 - tx } else { tx };
            out.push(surface.element(r, s));
        }
    }
    out
}

fn structural_issues(d: &LinkDiagram) -> Result<Vec<Degeneracy>, DiagramError> {
    let mut issues = Vec::new();
    for which in [Strand::One, Strand::Two] {
        let comp = d.component(which);
        if comp.closure.group() != d.surface.group() {
            return Err(DiagramError::WrongGroup {
                expected: d.surface.group(),
                found: comp.closure.group(),
            });
        }
        if comp.is_empty() {
            issues.push(Degeneracy::EmptyComponent { component: which });
            continue;
        }
        if comp.heights.len() != comp.len() {
            issues.push(Degeneracy::HeightCount {
                component: which,
                expected: comp.len(),
                found: comp.heights.len(),
            });
        }
        let pts = comp.period(d.surface)?;
        for i in 0..comp.len() {
            if pts[i] == pts[i + 1] {
                issues.push(Degeneracy::RepeatedVertex { component: which, index: i });
            }
        }
    }
    Ok(issues)
}

/// Enumerates every quotient crossing between the two components once.
///
/// comp1 contributes its single period; comp2 contributes every translate of
/// its period whose bounding box meets comp1's.
pub(crate) fn scan(d: &LinkDiagram, allow_singular: bool) -> Result<Vec<RawCrossing>, DiagramError> {
    let mut issues = structural_issues(d)?;
    if !issues.is_empty() {
        return Err(DiagramError::Degenerate(DegeneracyReport { issues }));
    }
    let surface = d.surface;
    let p1 = d.comp1.period(surface)?;
    let p2 = d.comp2.period(surface)?;
    let bb1 = BBox::of(&p1).expect("nonempty");
    let bb2 = BBox::of(&p2).expect("nonempty");
    let h1 = d.comp1.closure;
    let h2 = d.comp2.closure;
    let seg_boxes1: Vec<BBox> =
        (0..d.comp1.len()).map(|i| BBox::of([&p1[i], &p1[i + 1]]).expect("two points")).collect();
    let mut found = Vec::new();
    for g in translates_meeting(surface, &bb2, &bb1) {
        let deck = surface.deck(&g)?;
        let q: Vec<Point> = p2.iter().map(|p| deck.apply(p)).collect();
        let seg_boxes2: Vec<BBox> =
            (0..d.comp2.len()).map(|j| BBox::of([&q[j], &q[j + 1]]).expect("two points")).collect();
        let qbox = BBox::of(&q).expect("nonempty");
        let beta_g = g.mul(&h2)?.mul(&g.inverse())?;
        for i in 0..d.comp1.len() {
            let seg_box1 = &seg_boxes1[i];
            if !seg_box1.meets(&qbox) {
                continue;
            }
            for j in 0..d.comp2.len() {
                if !seg_box1.meets(&seg_boxes2[j]) {
                    continue;
                }
                let site = CrossingSite { segment1: i, segment2: j, translate: g };
                match intersect(&p1[i], &p1[i + 1], &q[j], &q[j + 1]) {
                    Contact::None => {}
                    Contact::Degenerate => issues.push(Degeneracy::Contact { site }),
                    Contact::Proper { point, t, .. } => {
                        let (located, base) = surface.locate(&point);
                        let k = located.inverse();
                        if base.x.is_zero() || base.y.is_zero() {
                            issues.push(Degeneracy::OnDomainBoundary { site: site.clone() });
                        }
                        let d1 = p1[i + 1].sub(&p1[i]);
                        let d2 = q[j + 1].sub(&q[j]);
                        let frame = sign_of(&cross(&d1, &d2)) * k.orientation_character();
                        let over = match d.comp1.heights[i].cmp(&d.comp2.heights[j]) {
                            Ordering::Greater => Some(Strand::One),
                            Ordering::Less => Some(Strand::Two),
                            Ordering::Equal => {
                                if !allow_singular {
                                    issues.push(Degeneracy::EqualHeights { site: site.clone() });
                                }
                                None
                            }
                        };
                        found.push((
                            point.clone(),
                            RawCrossing {
                                site,
                                point: base,
                                chart: k,
                                frame,
                                over,
                                raw_alpha: k.mul(&h1)?.mul(&k.inverse())?,
                                raw_beta: k.mul(&beta_g)?.mul(&k.inverse())?,
                                t,
                            },
                        ));
                    }
                }
            }
        }
    }
    if issues.is_empty() {
        for (cover_point, raw) in &found {
            if segments_through(surface, &[&p1, &p2], cover_point)? != 2 {
                issues.push(Degeneracy::TriplePoint { site: raw.site.clone() });
            }
        }
    }
    if !issues.is_empty() {
        return Err(DiagramError::Degenerate(DegeneracyReport { issues }));
    }
    Ok(found.into_iter().map(|(_, raw)| raw).collect())
}

/// Number of segments of all translates of the given periods through `p`.
fn segments_through(surface: Surface, periods: &[&Vec<Point>], p: &Point) -> Result<usize, DiagramError> {
    let target = BBox { min: p.clone(), max: p.clone() };
    let mut count = 0;
    for period in periods {
        let bb = BBox::of(period.iter()).expect("nonempty");
        for g in translates_meeting(surface, &bb, &target) {
            let deck = surface.deck(&g)?;
            let q: Vec<Point> = period.iter().map(|v| deck.apply(v)).collect();
            count += q
                .windows(2)
                .filter(|w| BBox::of([&w[0], &w[1]]).expect("two points").meets(&target))
                .filter(|w| on_segment(p, &w[0], &w[1]))
                .count();
        }
    }
    Ok(count)
}

pub fn validate(d: &LinkDiagram) -> Result<(), DiagramError> {
    scan(d, false).map(|_| ())
}

pub fn crossings(d: &LinkDiagram) -> Result<Vec<Crossing>, DiagramError> {
    Ok(scan(d, false)?.into_iter().map(RawCrossing::into_crossing).collect())
}

/// The closure deck element of a component (its based class).
pub fn component_class(d: &LinkDiagram, which: Strand) -> GroupElement {
    d.component(which).closure
}

fn small_loop(center: &Point) -> Vec<Point> {
    let delta = rat(1, 20);
    vec![
        Point::new(&center.x - &delta, &center.y - &delta),
        Point::new(&center.x + &delta, &center.y - &delta),
        Point::new(center.x.clone(), &center.y + &delta),
    ]
}

/// A loop in the given class near `anchor`. With `bend`, a non-trivial loop
/// gets a kinked second vertex so that a proper power of a class does not
/// retrace its own translates.
fn split_component(
    surface: Surface,
    anchor: &Point,
    class: &GroupElement,
    height: i64,
    bend: bool,
) -> Result<Component, DiagramError> {
    let vertices = if class.is_identity() {
        small_loop(anchor)
    } else if bend {
        let end = surface.deck(class)?.apply(anchor);
        let dir = end.sub(anchor);
        let size = dir.x.abs() + dir.y.abs();
        let kink = Point::new(-dir.y.clone(), dir.x.clone()).scale(&(Rational::one() / (size * int(8))));
        vec![anchor.clone(), anchor.lerp(&end, &rat(1, 2)).add(&kink)]
    } else {
        vec![anchor.clone()]
    };
    Ok(Component { heights: vec![height; vertices.len()], vertices, closure: *class })
}

/// A split diagram in the given classes: comp1 at height -1 everywhere and
/// comp2 at height +1.
pub fn make_split(
    surface: Surface,
    class1: &GroupElement,
    class2: &GroupElement,
) -> Result<LinkDiagram, DiagramError> {
    for class in [class1, class2] {
        if class.group() != surface.group() {
            return Err(DiagramError::WrongGroup { expected: surface.group(), found: class.group() });
        }
    }
    let build = |bend: bool| -> Result<LinkDiagram, DiagramError> {
        Ok(LinkDiagram {
            surface,
            comp1: split_component(surface, &Point::from_ratios((1, 2), (1, 7)), class1, -1, bend)?,
            comp2: split_component(surface, &Point::from_ratios((2, 7), (2, 5)), class2, 1, bend)?,
        })
    };
    let straight = build(false)?;
    match validate(&straight) {
        Ok(()) => Ok(straight),
        Err(DiagramError::Degenerate(_)) => perturb(&straight, 0, 16).or_else(|_| perturb(&build(true)?, 0, 64)),
        Err(e) => Err(e),
    }
}

/// Deterministically nudges every vertex by a small rational until the
/// diagram is generic, trying `attempts` candidates derived from `seed`.
pub fn perturb(d: &LinkDiagram, seed: u64, attempts: usize) -> Result<LinkDiagram, DiagramError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = validate(d).err();
    if last.is_none() {
        return Ok(d.clone());
    }
    for _ in 0..attempts {
        let mut cand = d.clone();
        for which in [Strand::One, Strand::Two] {
            for v in &mut cand.component_mut(which).vertices {
                let dx = rat(rng.gen_range(-8..=8), 1009 * 16);
                let dy = rat(rng.gen_range(-8..=8), 1013 * 16);
                *v = Point::new(&v.x + dx, &v.y + dy);
            }
        }
        match validate(&cand) {
            Ok(()) => return Ok(cand),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one failure"))
}
