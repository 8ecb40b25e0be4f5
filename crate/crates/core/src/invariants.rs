//! The degree-one linking number, the applicability checker and the
//! degree-two invariant of links with contractible components.
//!
//! Sign convention: a crossing is positive when (over direction, under
//! direction) is a positive frame, and every invariant vanishes on the split
//! link with comp1 entirely below comp2.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{crossings, scan, validate, CrossingSite, DiagramError, LinkDiagram, Strand, Surface};
use crate::group::{GroupElement, GroupError, GroupId};
use crate::linking::LinkingValue;
use crate::moves::{events, MoveScript, ScriptError};

pub const CONVENTION: &str = "right-handed-crossing, split-normalized";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Script(#[from] ScriptError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("not a singular snapshot: {0}")]
    NotSingular(String),
    #[error("components not contractible")]
    NotContractible,
    #[error("unsupported group: {0}")]
    UnsupportedGroup(GroupId),
    #[error("initial diagram is not split: {0} crossings have comp1 over")]
    NotSplit(usize),
}

/// Sum of signed codes over the crossings where comp1 passes over comp2.
pub fn lk1(d: &LinkDiagram) -> Result<LinkingValue, InvariantError> {
    let mut total = LinkingValue::zero(d.surface.group());
    for c in crossings(d)? {
        if c.over == Strand::One {
            total = total.add(&LinkingValue::singleton(&c.raw_alpha, &c.raw_beta, i64::from(c.sign))?)?;
        }
    }
    Ok(total)
}

/// Sum of the jumps of `lk1` over the discriminant events of a script.
pub fn lk1_via_path(s: &MoveScript) -> Result<LinkingValue, InvariantError> {
    let mut total = LinkingValue::zero(s.initial.surface.group());
    for e in events(s)? {
        total = total.add(&LinkingValue::singleton(&e.raw_alpha, &e.raw_beta, i64::from(e.sign))?)?;
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ManifoldDescriptor {
    pub name: String,
    pub is_thickened_surface: bool,
    pub pi2_trivial: bool,
    pub orientable: bool,
    pub group: GroupId,
}

impl ManifoldDescriptor {
    pub fn klein_thickened() -> Self {
        Self::new("klein x R", true, true, false, GroupId::Klein)
    }

    pub fn torus_thickened() -> Self {
        Self::new("torus x R", true, true, true, GroupId::Torus)
    }

    pub fn s2_times_s1() -> Self {
        Self::new("S2 x S1", false, false, true, GroupId::Z)
    }

    pub fn projective_plane_thickened() -> Self {
        Self::new("RP2 x R", true, false, false, GroupId::Z2)
    }

    pub fn presets() -> Vec<(&'static str, ManifoldDescriptor)> {
        vec![
            ("klein", Self::klein_thickened()),
            ("torus", Self::torus_thickened()),
            ("s2xs1", Self::s2_times_s1()),
            ("rp2", Self::projective_plane_thickened()),
        ]
    }

    pub fn preset(key: &str) -> Option<ManifoldDescriptor> {
        Self::presets().into_iter().find(|(k, _)| *k == key).map(|(_, m)| m)
    }

    fn new(name: &str, thick: bool, pi2: bool, orientable: bool, group: GroupId) -> Self {
        ManifoldDescriptor { name: name.into(), is_thickened_surface: thick, pi2_trivial: pi2, orientable, group }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum GuaranteeReason {
    /// Loops in the space of non-discriminant links generate the relevant
    /// homology of a thickened surface.
    ThickenedSurface,
    /// One component is contractible and the second homotopy group vanishes.
    ContractibleComponent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Applicability {
    Guaranteed { reason: GuaranteeReason },
    NotGuaranteed { explanation: String },
}

/// Whether the degree-one value is a link-homotopy invariant for links with
/// components in the given free classes.
pub fn applicability(
    m: &ManifoldDescriptor,
    class1: &GroupElement,
    class2: &GroupElement,
) -> Result<Applicability, GroupError> {
    for class in [class1, class2] {
        if class.group() != m.group {
            return Err(GroupError::Mismatch(m.group, class.group()));
        }
    }
    if m.is_thickened_surface {
        return Ok(Applicability::Guaranteed { reason: GuaranteeReason::ThickenedSurface });
    }
    let contractible = class1.is_identity() || class2.is_identity();
    if m.pi2_trivial && contractible {
        return Ok(Applicability::Guaranteed { reason: GuaranteeReason::ContractibleComponent });
    }
    let explanation = if !m.pi2_trivial {
        format!(
            "{} has nontrivial second homotopy group and is not a thickened surface; \
             spheres can carry the link across the discriminant along a loop",
            m.name
        )
    } else {
        format!("{} is not a thickened surface and neither component is contractible", m.name)
    };
    Ok(Applicability::NotGuaranteed { explanation })
}

fn b_class() -> GroupElement {
    GroupElement::klein(0, 1)
}

/// Coefficient of the singular snapshot `d` at the crossing `site`: the
/// signed count of the other comp1-over crossings whose connecting loop is
/// freely homotopic to `b`.
///
/// Signs of the other crossings are taken in the chart of the cover and
/// transported to the chart of the singular crossing, so that the product
/// with the base-chart sign of the event does not depend on charts.
pub fn nu(d: &LinkDiagram, site: &CrossingSite) -> Result<i64, InvariantError> {
    if d.surface != Surface::Klein {
        return Err(InvariantError::UnsupportedGroup(d.surface.group()));
    }
    if !d.comp1.closure.is_identity() || !d.comp2.closure.is_identity() {
        return Err(InvariantError::NotContractible);
    }
    let raw = scan(d, true)?;
    let singular: Vec<_> = raw.iter().filter(|r| r.over.is_none()).collect();
    let p = match singular.as_slice() {
        [p] if &p.site == site => *p,
        [p] => return Err(InvariantError::NotSingular(format!("heights meet at {}, not at {site}", p.site))),
        [] => return Err(InvariantError::NotSingular("no crossing with equal heights".into())),
        many => return Err(InvariantError::NotSingular(format!("{} crossings with equal heights", many.len()))),
    };
    let back = p.site.translate.inverse();
    let mut total = 0i64;
    for q in raw.iter().filter(|q| q.over == Some(Strand::One)) {
        let loop_class = q.site.translate.mul(&back)?.free_class_canonical();
        if loop_class == b_class() {
            total += i64::from(q.sign_with(Strand::One) * q.chart.orientation_character());
        }
    }
    Ok(total * i64::from(p.chart.orientation_character()))
}

/// The degree-two invariant of the final link of a script starting at a
/// split link with contractible components on the Klein bottle.
pub fn i2(s: &MoveScript) -> Result<i64, InvariantError> {
    let d = &s.initial;
    if d.surface != Surface::Klein {
        return Err(InvariantError::UnsupportedGroup(d.surface.group()));
    }
    if !d.comp1.closure.is_identity() || !d.comp2.closure.is_identity() {
        return Err(InvariantError::NotContractible);
    }
    validate(d)?;
    let over = crossings(d)?.iter().filter(|c| c.over == Strand::One).count();
    if over > 0 {
        return Err(InvariantError::NotSplit(over));
    }
    i2_path_sum(s)
}

/// `sum of sign * nu` over the events of any script with contractible
/// components; the difference of the degree-two invariant between its ends.
pub fn i2_path_sum(s: &MoveScript) -> Result<i64, InvariantError> {
    let mut total = 0;
    for e in events(s)? {
        total += i64::from(e.sign) * nu(&e.snapshot, &e.site)?;
    }
    Ok(total)
}
