//! Configurations of points on the two source circles: complexity,
//! subordination and the two-level Hausdorff distance.
//!
//! Angles are fractions of a full turn. Within one circle the distance is
//! angular, at most a half turn; points of different circles are a fixed two
//! turns apart.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{int, rat, rational_string, Rational};
use crate::diagram::Strand;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SourcePoint {
    pub circle: Strand,
    #[serde(with = "rational_string")]
    pub angle: Rational,
}

impl SourcePoint {
    pub fn new(circle: Strand, angle: Rational) -> Self {
        SourcePoint { circle, angle }
    }
}

impl fmt::Display for SourcePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.circle.index(), self.angle)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("part sizes must be at least 2, got {0}")]
    PartTooSmall(u64),
    #[error("a configuration needs at least one set")]
    Empty,
    #[error("set {0} has fewer than two points")]
    SmallSet(usize),
    #[error("set {0} does not meet both circles")]
    OneCircle(usize),
    #[error("sets are not disjoint: {0} appears twice")]
    NotDisjoint(SourcePoint),
    #[error("angle {0} outside [0, 1)")]
    AngleRange(Rational),
}

/// Sum of `j - 1` over the parts.
pub fn complexity(parts: &[u64]) -> Result<u64, ConfigError> {
    parts.iter().try_fold(0, |acc, &j| if j < 2 { Err(ConfigError::PartTooSmall(j)) } else { Ok(acc + j - 1) })
}

/// An unordered collection of disjoint point sets, each meeting both
/// circles. Stored sorted, so equality is equality of collections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<SourcePoint>>", into = "Vec<Vec<SourcePoint>>")]
pub struct Configuration {
    sets: Vec<BTreeSet<SourcePoint>>,
}

impl Configuration {
    pub fn new(sets: Vec<Vec<SourcePoint>>) -> Result<Self, ConfigError> {
        if sets.is_empty() {
            return Err(ConfigError::Empty);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(sets.len());
        for (i, set) in sets.into_iter().enumerate() {
            let mut s = BTreeSet::new();
            for p in set {
                if p.angle < int(0) || p.angle >= int(1) {
                    return Err(ConfigError::AngleRange(p.angle));
                }
                if !seen.insert(p.clone()) {
                    return Err(ConfigError::NotDisjoint(p));
                }
                s.insert(p);
            }
            if s.len() < 2 {
                return Err(ConfigError::SmallSet(i));
            }
            if !(s.iter().any(|p| p.circle == Strand::One) && s.iter().any(|p| p.circle == Strand::Two)) {
                return Err(ConfigError::OneCircle(i));
            }
            out.push(s);
        }
        out.sort();
        Ok(Configuration { sets: out })
    }

    pub fn sets(&self) -> &[BTreeSet<SourcePoint>] {
        &self.sets
    }

    /// Cardinalities of the sets, largest first.
    pub fn profile(&self) -> Vec<u64> {
        let mut p: Vec<u64> = self.sets.iter().map(|s| s.len() as u64).collect();
        p.sort_unstable_by(|a, b| b.cmp(a));
        p
    }

    pub fn complexity(&self) -> u64 {
        complexity(&self.profile()).expect("sets have at least two points")
    }
}

impl TryFrom<Vec<Vec<SourcePoint>>> for Configuration {
    type Error = ConfigError;

    fn try_from(sets: Vec<Vec<SourcePoint>>) -> Result<Self, ConfigError> {
        Configuration::new(sets)
    }
}

impl From<Configuration> for Vec<Vec<SourcePoint>> {
    fn from(c: Configuration) -> Self {
        c.sets.into_iter().map(|s| s.into_iter().collect()).collect()
    }
}

/// Whether every set of `c1` lies inside some set of `c2`.
pub fn subordinate(c1: &Configuration, c2: &Configuration) -> bool {
    c1.sets.iter().all(|a| c2.sets.iter().any(|b| a.is_subset(b)))
}

/// Distance between points of different circles.
pub fn cross_circle_distance() -> Rational {
    int(2)
}

pub fn point_distance(x: &SourcePoint, y: &SourcePoint) -> Rational {
    if x.circle != y.circle {
        return cross_circle_distance();
    }
    let gap = if x.angle > y.angle { &x.angle - &y.angle } else { &y.angle - &x.angle };
    let around = int(1) - &gap;
    gap.min(around)
}

/// `max_i min_j f(i, j) + max_j min_i f(i, j)` over nonempty index ranges.
fn two_sided<F: Fn(usize, usize) -> Rational>(n: usize, m: usize, f: F) -> Rational {
    let table: Vec<Vec<Rational>> = (0..n).map(|i| (0..m).map(|j| f(i, j)).collect()).collect();
    let rows = (0..n).map(|i| table[i].iter().min().expect("nonempty").clone()).max().expect("nonempty");
    let cols = (0..m).map(|j| (0..n).map(|i| &table[i][j]).min().expect("nonempty").clone()).max().expect("nonempty");
    rows + cols
}

/// Hausdorff-style distance between two point sets.
pub fn set_distance(a: &BTreeSet<SourcePoint>, b: &BTreeSet<SourcePoint>) -> Rational {
    let a: Vec<_> = a.iter().collect();
    let b: Vec<_> = b.iter().collect();
    two_sided(a.len(), b.len(), |i, j| point_distance(a[i], b[j]))
}

pub fn config_distance(c1: &Configuration, c2: &Configuration) -> Rational {
    two_sided(c1.sets.len(), c2.sets.len(), |i, j| set_distance(&c1.sets[i], &c2.sets[j]))
}

/// All part profiles (parts at least 2, largest first) of complexity at
/// most `p`, excluding the empty profile.
pub fn profiles(p: u64) -> Vec<Vec<u64>> {
    fn extend(budget: u64, max_part: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        for j in (2..=max_part.min(budget + 1)).rev() {
            prefix.push(j);
            out.push(prefix.clone());
            extend(budget - (j - 1), j, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(p, p + 1, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| (complexity(a).unwrap(), a).cmp(&(complexity(b).unwrap(), b)));
    out
}

/// Half a turn, the largest distance between points of one circle.
pub fn half_turn() -> Rational {
    rat(1, 2)
}
