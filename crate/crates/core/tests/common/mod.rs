//! Brute-force oracles shared by the integration tests. None of this is used
//! by the library itself.
#![allow(dead_code)]

use std::collections::BTreeMap;

use linkhom::diagram::{LinkDiagram, Strand};
use linkhom::geometry::{Point, Rational};
use linkhom::group::GroupElement;
use linkhom::linking::LinkingValue;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Letter {
    A,
    AInv,
    B,
    BInv,
}

pub type Word = Vec<Letter>;

pub fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(
        prop_oneof![Just(Letter::A), Just(Letter::AInv), Just(Letter::B), Just(Letter::BInv)],
        0..=max_len,
    )
}

pub fn parse_word(text: &str) -> Word {
    text.chars()
        .map(|c| match c {
            'a' => Letter::A,
            'A' => Letter::AInv,
            'b' => Letter::B,
            'B' => Letter::BInv,
            _ => panic!("bad letter {c}"),
        })
        .collect()
}

/// `(x, y) -> (sx * x + tx, y + ty)` with `sx = +-1`, exact integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub sx: i64,
    pub tx: i64,
    pub ty: i64,
}

impl Affine {
    pub const ID: Affine = Affine { sx: 1, tx: 0, ty: 0 };

    /// `self` after `other`.
    pub fn compose(&self, other: &Affine) -> Affine {
        Affine { sx: self.sx * other.sx, tx: self.sx * other.tx + self.tx, ty: other.ty + self.ty }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let sx = Rational::from_integer(self.sx.into());
        Point::new(sx * &p.x + Rational::from_integer(self.tx.into()), &p.y + Rational::from_integer(self.ty.into()))
    }

    fn letter(l: Letter) -> Affine {
        match l {
            Letter::A => Affine { sx: -1, tx: 1, ty: 1 },
            Letter::AInv => Affine { sx: -1, tx: 1, ty: -1 },
            Letter::B => Affine { sx: 1, tx: 1, ty: 0 },
            Letter::BInv => Affine { sx: 1, tx: -1, ty: 0 },
        }
    }
}

/// The word acts as the composition of its letters, leftmost outermost.
pub fn eval_word_affine(w: &[Letter]) -> Affine {
    w.iter().fold(Affine::ID, |acc, &l| acc.compose(&Affine::letter(l)))
}

/// The affine map of the normal form `a^r b^s`.
pub fn affine_of(g: &GroupElement) -> Affine {
    let GroupElement::Klein { r, s } = *g else { panic!("klein only") };
    let a = if r >= 0 { Letter::A } else { Letter::AInv };
    let b = if s >= 0 { Letter::B } else { Letter::BInv };
    let mut w = vec![a; r.unsigned_abs() as usize];
    w.extend(std::iter::repeat(b).take(s.unsigned_abs() as usize));
    eval_word_affine(&w)
}

fn inverse_letter(l: Letter) -> Letter {
    match l {
        Letter::A => Letter::AInv,
        Letter::AInv => Letter::A,
        Letter::B => Letter::BInv,
        Letter::BInv => Letter::B,
    }
}

/// Rewrites with `b a -> a b^-1` (and its three variants) plus free
/// cancellation until the word reads `a^r b^s`.
pub fn rewrite_normal_form(w: &[Letter]) -> GroupElement {
    let mut w: Vec<Letter> = w.to_vec();
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < w.len() {
            let (x, y) = (w[i], w[i + 1]);
            if inverse_letter(x) == y {
                w.drain(i..i + 2);
                changed = true;
                continue;
            }
            let is_b = matches!(x, Letter::B | Letter::BInv);
            let is_a = matches!(y, Letter::A | Letter::AInv);
            if is_b && is_a {
                w[i] = y;
                w[i + 1] = inverse_letter(x);
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
    let mut r = 0;
    let mut s = 0;
    for l in w {
        match l {
            Letter::A => r += 1,
            Letter::AInv => r -= 1,
            Letter::B => s += 1,
            Letter::BInv => s -= 1,
        }
    }
    GroupElement::klein(r, s)
}

pub fn letter_product(w: &[Letter]) -> GroupElement {
    w.iter().fold(GroupElement::klein(0, 0), |acc, &l| {
        let g = match l {
            Letter::A => GroupElement::klein(1, 0),
            Letter::AInv => GroupElement::klein(-1, 0),
            Letter::B => GroupElement::klein(0, 1),
            Letter::BInv => GroupElement::klein(0, -1),
        };
        acc.mul(&g).unwrap()
    })
}

/// Conjugation by `c` computed through affine maps: `c^-1 g c`.
fn conj_affine(g: &GroupElement, c: &GroupElement) -> GroupElement {
    c.inverse().mul(g).unwrap().mul(c).unwrap()
}

/// Smallest pair in the orbit under conjugators `(u, v)`, `|v| <= bound`,
/// together with the orientation character of a conjugator reaching it.
///
/// Orbits of pairs with an odd-`r` entry are infinite and unbounded below,
/// so only orbit points whose first odd-`r` entry has `s` in `{0, 1}` compete.
pub fn orbit_min(alpha: &GroupElement, beta: &GroupElement, bound: i64) -> ((GroupElement, GroupElement), i8) {
    let mut best: Option<((GroupElement, GroupElement), i8)> = None;
    for u in 0..2 {
        for v in -bound..=bound {
            let c = GroupElement::klein(u, v);
            let cand = (conj_affine(alpha, &c), conj_affine(beta, &c));
            let pivot = [cand.0, cand.1].into_iter().find_map(|g| match g {
                GroupElement::Klein { r, s } if r % 2 != 0 => Some(s),
                _ => None,
            });
            if pivot.is_some_and(|s| s != 0 && s != 1) {
                continue;
            }
            if best.as_ref().map_or(true, |(b, _)| cand < *b) {
                best = Some((cand, c.orientation_character()));
            }
        }
    }
    best.unwrap()
}

/// Whether some orientation-reversing element in the orbit search window
/// fixes the pair.
pub fn orbit_torsion(alpha: &GroupElement, beta: &GroupElement, bound: i64) -> bool {
    (-bound..=bound).any(|v| {
        let c = GroupElement::klein(1, v);
        conj_affine(alpha, &c) == *alpha && conj_affine(beta, &c) == *beta
    })
}

/// A linking value as a plain map from orbit minima to coefficients.
pub type BruteValue = BTreeMap<(GroupElement, GroupElement), i64>;

pub fn brute_add(v: &mut BruteValue, alpha: &GroupElement, beta: &GroupElement, coeff: i64, bound: i64) {
    let (key, w) = orbit_min(alpha, beta, bound);
    let torsion = orbit_torsion(alpha, beta, bound);
    let e = v.entry(key).or_insert(0);
    *e += coeff * i64::from(w);
    if torsion {
        *e = e.rem_euclid(2);
    }
    if *e == 0 {
        v.remove(&key);
    }
}

pub fn to_brute(v: &LinkingValue) -> BruteValue {
    v.terms().map(|(c, n)| ((c.alpha, c.beta), n)).collect()
}

fn cross(u: &Point, v: &Point) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

fn between_open(t: &Rational) -> bool {
    t.is_positive() && *t < Rational::one()
}

/// Degree-one value computed without charts: every crossing of comp1's
/// period with a translate `g` of comp2's period in a square window of deck
/// elements, signed in the cover and coded by `(h1, g h2 g^-1)`.
pub fn lk1_in_cover(d: &LinkDiagram, window: i64) -> BruteValue {
    let h1 = d.comp1.closure;
    let h2 = d.comp2.closure;
    let close = |c: &linkhom::diagram::Component, h: &GroupElement| {
        let mut pts = c.vertices.clone();
        pts.push(affine_of(h).apply(&c.vertices[0]));
        pts
    };
    let p1 = close(&d.comp1, &h1);
    let p2 = close(&d.comp2, &h2);
    let mut value = BruteValue::new();
    for r in -window..=window {
        for s in -window..=window {
            let g = GroupElement::klein(r, s);
            let map = affine_of(&g);
            let q: Vec<Point> = p2.iter().map(|p| map.apply(p)).collect();
            let beta = g.mul(&h2).unwrap().mul(&g.inverse()).unwrap();
            for i in 0..d.comp1.len() {
                for j in 0..d.comp2.len() {
                    let d1 = p1[i + 1].sub(&p1[i]);
                    let d2 = q[j + 1].sub(&q[j]);
                    let den = cross(&d1, &d2);
                    if den.is_zero() {
                        continue;
                    }
                    let w = q[j].sub(&p1[i]);
                    let t = cross(&w, &d2) / &den;
                    let u = cross(&w, &d1) / &den;
                    if !(between_open(&t) && between_open(&u)) {
                        continue;
                    }
                    let comp1_over = d.comp1.heights[i] > d.comp2.heights[j];
                    if !comp1_over {
                        continue;
                    }
                    let sign = if den.is_positive() { 1 } else { -1 };
                    brute_add(&mut value, &h1, &beta, sign, 40);
                }
            }
        }
    }
    value
}

/// Crossing count of comp1 over comp2 in the brute window; used to check
/// that the window is large enough.
pub fn over_count(d: &LinkDiagram) -> usize {
    linkhom::diagram::crossings(d).unwrap().iter().filter(|c| c.over == Strand::One).count()
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_diagram(name: &str) -> LinkDiagram {
    serde_json::from_str(&fixture(name)).unwrap()
}

pub fn fixture_script(name: &str) -> linkhom::moves::MoveScript {
    serde_json::from_str(&fixture(name)).unwrap()
}

/// Seed diagrams for the fuzz suites: split links in assorted classes and
/// their perturbations with some crossings flipped.
pub fn seed_diagrams(count: usize) -> Vec<LinkDiagram> {
    use linkhom::diagram::{make_split, Surface};
    let classes = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (0, 2), (-1, 1), (3, 0)];
    (0..count)
        .map(|i| {
            let (r1, s1) = classes[i % classes.len()];
            let (r2, s2) = classes[(i * 3 + 1) % classes.len()];
            if i % 4 == 3 {
                linkhom::moves::random_contractible_split(Surface::Klein, i as u64)
            } else {
                make_split(Surface::Klein, &GroupElement::klein(r1, s1), &GroupElement::klein(r2, s2)).unwrap()
            }
        })
        .collect()
}
