//! Fundamental groups of the supported surfaces, in normal form.
//!
//! Every element is stored as a tuple of integer exponents, so equality is
//! structural. The Klein bottle group is presented as `<a, b | a = bab>` and
//! an element `a^r b^s` is stored as `(r, s)`. Multiplying out the relation
//! gives `b^s a^r' = a^r' b^(s (-1)^r')`, hence
//!
//! ```text
//! (r, s) * (r', s') = (r + r', s (-1)^r' + s')
//! ```
//!
//! The orientation character of the thickened Klein bottle is `(-1)^r`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Which group an element belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupId {
    Trivial,
    /// The annulus (or the circle factor of `S^2 x S^1`).
    Z,
    /// The projective plane.
    Z2,
    /// `Z x Z`, the torus.
    Torus,
    Klein,
}

impl GroupId {
    pub fn identity(self) -> GroupElement {
        match self {
            GroupId::Trivial => GroupElement::Trivial,
            GroupId::Z => GroupElement::Z { n: 0 },
            GroupId::Z2 => GroupElement::Z2 { bit: false },
            GroupId::Torus => GroupElement::Torus { r: 0, s: 0 },
            GroupId::Klein => GroupElement::Klein { r: 0, s: 0 },
        }
    }

    /// Whether the thickening `surface x R` is orientable.
    pub fn orientable(self) -> bool {
        !matches!(self, GroupId::Klein | GroupId::Z2)
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupId::Trivial => "trivial",
            GroupId::Z => "z",
            GroupId::Z2 => "z2",
            GroupId::Torus => "torus",
            GroupId::Klein => "klein",
        }
    }

    /// Parses a word such as `a^2b^-1`, `ab`, `B` (inverse of `b`) or `1`.
    ///
    /// Letters are `a`/`b` for the torus and Klein groups and `t` for the
    /// cyclic ones; an upper-case letter is the inverse generator.
    pub fn parse_word(self, word: &str) -> Result<GroupElement, WordError> {
        let mut acc = self.identity();
        let chars: Vec<char> = word.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.is_empty() || chars == ['1'] {
            return Ok(acc);
        }
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let base = self
                .generator(c.to_ascii_lowercase())
                .ok_or_else(|| WordError::UnknownLetter { letter: c, group: self })?;
            let mut exp: i64 = if c.is_ascii_uppercase() { -1 } else { 1 };
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let start = i;
                if i < chars.len() && chars[i] == '-' {
                    i += 1;
                }
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n: i64 = text.parse().map_err(|_| WordError::BadExponent(text.clone()))?;
                exp *= n;
            }
            acc = acc.mul(&base.pow(exp))?;
        }
        Ok(acc)
    }

    fn generator(self, letter: char) -> Option<GroupElement> {
        match (self, letter) {
            (GroupId::Klein, 'a') => Some(GroupElement::Klein { r: 1, s: 0 }),
            (GroupId::Klein, 'b') => Some(GroupElement::Klein { r: 0, s: 1 }),
            (GroupId::Torus, 'a') => Some(GroupElement::Torus { r: 1, s: 0 }),
            (GroupId::Torus, 'b') => Some(GroupElement::Torus { r: 0, s: 1 }),
            (GroupId::Z, 't') => Some(GroupElement::Z { n: 1 }),
            (GroupId::Z2, 't') => Some(GroupElement::Z2 { bit: true }),
            _ => None,
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupId {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "trivial" => Ok(GroupId::Trivial),
            "z" => Ok(GroupId::Z),
            "z2" => Ok(GroupId::Z2),
            "torus" => Ok(GroupId::Torus),
            "klein" => Ok(GroupId::Klein),
            other => Err(WordError::UnknownGroup(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group mismatch: {0} vs {1}")]
    Mismatch(GroupId, GroupId),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("letter '{letter}' is not a generator of the {group} group")]
    UnknownLetter { letter: char, group: GroupId },
    #[error("bad exponent '{0}'")]
    BadExponent(String),
    #[error("unknown group '{0}'")]
    UnknownGroup(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A group element in normal form.
///
/// The derived ordering compares the exponents lexicographically (`r`, then
/// `s`), which is the order used to pick canonical pair representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "group", rename_all = "lowercase")]
pub enum GroupElement {
    Trivial,
    Z { n: i64 },
    Z2 {
        #[serde(with = "bit_serde")]
        bit: bool,
    },
    Torus { r: i64, s: i64 },
    /// `a^r b^s`.
    Klein { r: i64, s: i64 },
}

mod bit_serde {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(bit: &bool, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u8(u8::from(*bit))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<bool, D::Error> {
        match u8::deserialize(d)? {
            0 => Ok(false),
            1 => Ok(true),
            n => Err(de::Error::custom(format!("bit must be 0 or 1, got {n}"))),
        }
    }
}

fn parity_sign(n: i64) -> i64 {
    if n.is_odd() {
        -1
    } else {
        1
    }
}

impl GroupElement {
    pub const fn klein(r: i64, s: i64) -> Self {
        GroupElement::Klein { r, s }
    }

    pub const fn torus(r: i64, s: i64) -> Self {
        GroupElement::Torus { r, s }
    }

    pub fn group(&self) -> GroupId {
        match self {
            GroupElement::Trivial => GroupId::Trivial,
            GroupElement::Z { .. } => GroupId::Z,
            GroupElement::Z2 { .. } => GroupId::Z2,
            GroupElement::Torus { .. } => GroupId::Torus,
            GroupElement::Klein { .. } => GroupId::Klein,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.group().identity()
    }

    fn same_group(&self, other: &Self) -> Result<(), GroupError> {
        if self.group() == other.group() {
            Ok(())
        } else {
            Err(GroupError::Mismatch(self.group(), other.group()))
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.same_group(other)?;
        Ok(match (*self, *other) {
            (GroupElement::Trivial, GroupElement::Trivial) => GroupElement::Trivial,
            (GroupElement::Z { n }, GroupElement::Z { n: m }) => GroupElement::Z { n: n + m },
            (GroupElement::Z2 { bit }, GroupElement::Z2 { bit: other }) => {
                GroupElement::Z2 { bit: bit ^ other }
            }
            (GroupElement::Torus { r, s }, GroupElement::Torus { r: r2, s: s2 }) => {
                GroupElement::Torus { r: r + r2, s: s + s2 }
            }
            (GroupElement::Klein { r, s }, GroupElement::Klein { r: r2, s: s2 }) => {
                GroupElement::Klein { r: r + r2, s: s * parity_sign(r2) + s2 }
            }
            _ => unreachable!("group checked above"),
        })
    }

    pub fn inverse(&self) -> Self {
        match *self {
            GroupElement::Trivial => GroupElement::Trivial,
            GroupElement::Z { n } => GroupElement::Z { n: -n },
            GroupElement::Z2 { bit } => GroupElement::Z2 { bit },
            GroupElement::Torus { r, s } => GroupElement::Torus { r: -r, s: -s },
            GroupElement::Klein { r, s } => GroupElement::Klein { r: -r, s: -s * parity_sign(r) },
        }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut acc = self.group().identity();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base).expect("same group");
        }
        acc
    }

    /// `+1` if the element preserves the orientation of the thickened surface.
    pub fn orientation_character(&self) -> i8 {
        match *self {
            GroupElement::Klein { r, .. } => parity_sign(r) as i8,
            GroupElement::Z2 { bit: true } => -1,
            _ => 1,
        }
    }

    pub fn reverses_orientation(&self) -> bool {
        self.orientation_character() < 0
    }

    pub fn commutes(&self, other: &Self) -> Result<bool, GroupError> {
        Ok(self.mul(other)? == other.mul(self)?)
    }

    /// `c^-1 g c`.
    pub fn conjugate(&self, c: &Self) -> Result<Self, GroupError> {
        c.inverse().mul(self)?.mul(c)
    }

    /// Canonical representative of the conjugacy class.
    ///
    /// For the Klein group, conjugating `(r, s)` by `(u, v)` gives
    /// `(r, s (-1)^u + v (1 - (-1)^r))`: with `r` even only the sign of `s`
    /// can change, with `r` odd only the parity of `s` survives.
    pub fn free_class_canonical(&self) -> Self {
        match *self {
            GroupElement::Klein { r, s } if r.is_even() => GroupElement::Klein { r, s: s.abs() },
            GroupElement::Klein { r, s } => GroupElement::Klein { r, s: s.mod_floor(&2) },
            other => other,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn letter(f: &mut fmt::Formatter<'_>, name: char, exp: i64) -> fmt::Result {
            match exp {
                0 => Ok(()),
                1 => write!(f, "{name}"),
                e => write!(f, "{name}^{e}"),
            }
        }
        if self.is_identity() {
            return f.write_str("1");
        }
        match *self {
            GroupElement::Z { n } => letter(f, 't', n),
            GroupElement::Z2 { .. } => f.write_str("t"),
            GroupElement::Torus { r, s } | GroupElement::Klein { r, s } => {
                letter(f, 'a', r)?;
                letter(f, 'b', s)
            }
            GroupElement::Trivial => unreachable!(),
        }
    }
}

/// An ordered pair of group elements modulo simultaneous conjugation.
///
/// This is the code of a component of the discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairClass {
    pub alpha: GroupElement,
    pub beta: GroupElement,
    pub coorientable: bool,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.alpha, self.beta)
    }
}

/// Canonical representative of the pair's orbit together with a conjugator
/// `c` such that the representative is `(c^-1 alpha c, c^-1 beta c)`.
pub fn canonical_form(
    alpha: &GroupElement,
    beta: &GroupElement,
) -> Result<(PairClass, GroupElement), GroupError> {
    alpha.same_group(beta)?;
    let coorientable = coorientable(alpha, beta)?;
    let (alpha_c, beta_c, conj) = match (*alpha, *beta) {
        (GroupElement::Klein { r: r1, s: s1 }, GroupElement::Klein { r: r2, s: s2 }) => {
            // Conjugation only sees u mod 2 and v; for each parity of u there
            // is exactly one v putting the first odd-r coordinate's s in {0, 1}.
            let pivot = if r1.is_odd() {
                Some(s1)
            } else if r2.is_odd() {
                Some(s2)
            } else {
                None
            };
            let mut best: Option<(GroupElement, GroupElement, GroupElement)> = None;
            for u in 0..2 {
                let v = match pivot {
                    Some(s) => -Integer::div_floor(&(s * parity_sign(u)), &2),
                    None => 0,
                };
                let c = GroupElement::klein(u, v);
                let cand = (alpha.conjugate(&c)?, beta.conjugate(&c)?, c);
                if best.as_ref().map_or(true, |b| (cand.0, cand.1) < (b.0, b.1)) {
                    best = Some(cand);
                }
            }
            best.expect("two candidates")
        }
        // the remaining groups are abelian
        _ => (*alpha, *beta, alpha.group().identity()),
    };
    Ok((PairClass { alpha: alpha_c, beta: beta_c, coorientable }, conj))
}

pub fn pair_canonical(alpha: &GroupElement, beta: &GroupElement) -> Result<PairClass, GroupError> {
    canonical_form(alpha, beta).map(|(class, _)| class)
}

/// An orientation-reversing element commuting with both entries, if any.
///
/// Its existence is exactly the failure of coorientability. For the Klein
/// group, `c = (u, v)` with `u` odd commutes with `(r, s)` iff `s = 0` when
/// `r` is even, or `v = s` when `r` is odd.
pub fn reversing_commutant(
    alpha: &GroupElement,
    beta: &GroupElement,
) -> Result<Option<GroupElement>, GroupError> {
    alpha.same_group(beta)?;
    Ok(match (*alpha, *beta) {
        (GroupElement::Klein { r: r1, s: s1 }, GroupElement::Klein { r: r2, s: s2 }) => {
            let constraint = |r: i64, s: i64| -> Option<Option<i64>> {
                if r.is_even() {
                    // any v works when s = 0, none otherwise
                    (s == 0).then_some(None)
                } else {
                    Some(Some(s))
                }
            };
            match (constraint(r1, s1), constraint(r2, s2)) {
                (Some(v1), Some(v2)) => match (v1, v2) {
                    (Some(a), Some(b)) if a != b => None,
                    (v1, v2) => Some(GroupElement::klein(1, v1.or(v2).unwrap_or(0))),
                },
                _ => None,
            }
        }
        (GroupElement::Z2 { .. }, _) => Some(GroupElement::Z2 { bit: true }),
        _ => None,
    })
}

pub fn coorientable(alpha: &GroupElement, beta: &GroupElement) -> Result<bool, GroupError> {
    reversing_commutant(alpha, beta).map(|w| w.is_none())
}

/// Exhaustive search for an orientation-reversing element commuting with both
/// entries among `|u|, |v| <= bound`.
///
/// The commutation constraints are linear in `(u, v)` (they force `v = s` for
/// odd-`r` entries), so any bound at least as large as the `|s|` values
/// involved decides the question exactly.
pub fn coorientable_bruteforce(
    alpha: &GroupElement,
    beta: &GroupElement,
    bound: i64,
) -> Result<bool, GroupError> {
    alpha.same_group(beta)?;
    let candidates: Vec<GroupElement> = match alpha.group() {
        GroupId::Trivial => vec![GroupElement::Trivial],
        GroupId::Z => (-bound..=bound).map(|n| GroupElement::Z { n }).collect(),
        GroupId::Z2 => vec![GroupElement::Z2 { bit: false }, GroupElement::Z2 { bit: true }],
        GroupId::Torus => grid(bound).map(|(u, v)| GroupElement::torus(u, v)).collect(),
        GroupId::Klein => grid(bound).map(|(u, v)| GroupElement::klein(u, v)).collect(),
    };
    for c in candidates {
        if c.reverses_orientation() && c.commutes(alpha)? && c.commutes(beta)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn grid(bound: i64) -> impl Iterator<Item = (i64, i64)> {
    (-bound..=bound).flat_map(move |u| (-bound..=bound).map(move |v| (u, v)))
}
