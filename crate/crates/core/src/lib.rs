//! Homotopy invariants of two-component links in thickened surfaces.

pub mod diagram;
pub mod geometry;
pub mod group;
pub mod invariants;
pub mod linking;
pub mod moves;
pub mod resolution;

pub use diagram::{Crossing, CrossingSite, LinkDiagram, Strand, Surface};
pub use group::{GroupElement, GroupId, PairClass};
pub use linking::LinkingValue;
