//! The value group of degree-one invariants.
//!
//! A value is a finite formal sum of pair classes. Conjugating a pair by an
//! orientation-reversing loop negates its coefficient, so each term is stored
//! on the canonical representative with the coefficient multiplied by the
//! orientation character of the conjugator that reached it. Classes that are
//! fixed by such a loop become 2-torsion and keep only a bit.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{canonical_form, GroupElement, GroupError, GroupId, PairClass};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingValue {
    group: GroupId,
    terms: BTreeMap<PairClass, i64>,
}

impl LinkingValue {
    pub fn zero(group: GroupId) -> Self {
        LinkingValue { group, terms: BTreeMap::new() }
    }

    pub fn singleton(
        alpha: &GroupElement,
        beta: &GroupElement,
        coeff: i64,
    ) -> Result<Self, GroupError> {
        let (class, conj) = canonical_form(alpha, beta)?;
        let mut value = LinkingValue::zero(alpha.group());
        value.insert(class, coeff * i64::from(conj.orientation_character()));
        Ok(value)
    }

    fn insert(&mut self, class: PairClass, coeff: i64) {
        let entry = self.terms.entry(class).or_insert(0);
        *entry += coeff;
        if !class.coorientable {
            *entry = entry.rem_euclid(2);
        }
        if *entry == 0 {
            self.terms.remove(&class);
        }
    }

    pub fn group(&self) -> GroupId {
        self.group
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient on a canonical class (a bit for torsion classes).
    pub fn coefficient(&self, class: &PairClass) -> i64 {
        self.terms.get(class).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PairClass, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        if self.group != other.group {
            return Err(GroupError::Mismatch(self.group, other.group));
        }
        let mut out = self.clone();
        for (class, coeff) in &other.terms {
            out.insert(*class, *coeff);
        }
        Ok(out)
    }

    pub fn scale(&self, n: i64) -> Self {
        let mut out = LinkingValue::zero(self.group);
        for (class, coeff) in &self.terms {
            out.insert(*class, coeff * n);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GroupError> {
        self.add(&other.neg())
    }
}

impl fmt::Display for LinkingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (class, coeff)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if class.coorientable {
                write!(f, "{coeff:+}*{class}")?;
            } else {
                write!(f, "{class} (mod 2)")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    alpha: GroupElement,
    beta: GroupElement,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    pair: PairJson,
    coeff: i64,
    torsion: bool,
}

#[derive(Serialize, Deserialize)]
struct ValueJson {
    group: GroupId,
    terms: Vec<TermJson>,
}

impl Serialize for LinkingValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ValueJson {
            group: self.group,
            terms: self
                .terms
                .iter()
                .map(|(class, coeff)| TermJson {
                    pair: PairJson { alpha: class.alpha, beta: class.beta },
                    coeff: *coeff,
                    torsion: !class.coorientable,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LinkingValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = ValueJson::deserialize(d)?;
        let mut value = LinkingValue::zero(raw.group);
        for term in raw.terms {
            let part = LinkingValue::singleton(&term.pair.alpha, &term.pair.beta, term.coeff)
                .map_err(D::Error::custom)?;
            let class = crate::group::pair_canonical(&term.pair.alpha, &term.pair.beta)
                .map_err(D::Error::custom)?;
            if class.coorientable == term.torsion {
                return Err(D::Error::custom(format!("torsion flag wrong for {class}")));
            }
            value = value.add(&part).map_err(D::Error::custom)?;
        }
        Ok(value)
    }
}
