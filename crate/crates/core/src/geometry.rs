//! Exact planar geometry over big rationals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p`, rejecting zero denominators and stray characters.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let bad = || format!("malformed rational '{text}' (expected \"p/q\" or \"p\")");
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let ok = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !ok(num) || !ok(den) || den.starts_with('-') {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(format!("zero denominator in '{text}'"));
    }
    Ok(Rational::new(num, den))
}

pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(de::Error::custom)
    }
}

/// A point of the universal cover (the plane).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64)) -> Self {
        Point { x: rat(x.0, x.1), y: rat(y.0, y.1) }
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point { x: &self.x - &other.x, y: &self.y - &other.y }
    }

    pub fn add(&self, other: &Point) -> Point {
        Point { x: &self.x + &other.x, y: &self.y + &other.y }
    }

    pub fn scale(&self, t: &Rational) -> Point {
        Point { x: &self.x * t, y: &self.y * t }
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Rational) -> Point {
        self.add(&other.sub(self).scale(t))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        Ok(Point {
            x: parse_rational(&x).map_err(de::Error::custom)?,
            y: parse_rational(&y).map_err(de::Error::custom)?,
        })
    }
}

pub fn cross(u: &Point, v: &Point) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

/// Sign of the turn `a -> b -> c`.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&b.sub(a), &c.sub(a)).cmp(&Rational::zero())
}

pub fn sign_of(q: &Rational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal
        && p.x >= a.x.clone().min(b.x.clone())
        && p.x <= a.x.clone().max(b.x.clone())
        && p.y >= a.y.clone().min(b.y.clone())
        && p.y <= a.y.clone().max(b.y.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contact {
    None,
    /// A transverse crossing interior to both segments at parameters `t`, `u`.
    Proper { point: Point, t: Rational, u: Rational },
    /// Touching at an endpoint or overlapping collinearly.
    Degenerate,
}

/// Intersection of the closed segments `[p0, p1]` and `[q0, q1]`.
pub fn intersect(p0: &Point, p1: &Point, q0: &Point, q1: &Point) -> Contact {
    let d1 = p1.sub(p0);
    let d2 = q1.sub(q0);
    let denom = cross(&d1, &d2);
    let w = q0.sub(p0);
    if denom.is_zero() {
        if !cross(&w, &d1).is_zero() {
            return Contact::None;
        }
        let touching = on_segment(q0, p0, p1)
            || on_segment(q1, p0, p1)
            || on_segment(p0, q0, q1)
            || on_segment(p1, q0, q1);
        return if touching { Contact::Degenerate } else { Contact::None };
    }
    let t = cross(&w, &d2) / &denom;
    let u = cross(&w, &d1) / &denom;
    let zero = Rational::zero();
    let one = Rational::one();
    if t < zero || t > one || u < zero || u > one {
        return Contact::None;
    }
    if t.is_zero() || t == one || u.is_zero() || u == one {
        return Contact::Degenerate;
    }
    Contact::Proper { point: p0.lerp(p1, &t), t, u }
}

/// Closed axis-aligned box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BBox {
    pub min: Point,
    pub max: Point,
}

impl BBox {
    pub fn of<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<BBox> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut bb = BBox { min: first.clone(), max: first.clone() };
        for p in it {
            if p.x < bb.min.x {
                bb.min.x = p.x.clone();
            }
            if p.y < bb.min.y {
                bb.min.y = p.y.clone();
            }
            if p.x > bb.max.x {
                bb.max.x = p.x.clone();
            }
            if p.y > bb.max.y {
                bb.max.y = p.y.clone();
            }
        }
        Some(bb)
    }

    pub fn meets(&self, other: &BBox) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }

    pub fn union(&self, other: &BBox) -> BBox {
        BBox::of([&self.min, &self.max, &other.min, &other.max]).expect("nonempty")
    }
}

/// Closed convex hull of a finite point set (possibly a segment or a point).
#[derive(Clone, Debug)]
pub struct ConvexRegion {
    hull: Vec<Point>,
}

impl ConvexRegion {
    pub fn hull(points: &[Point]) -> Self {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return ConvexRegion { hull: pts };
        }
        let mut lower: Vec<Point> = Vec::new();
        for p in &pts {
            while lower.len() >= 2
                && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Ordering::Greater
            {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Point> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2
                && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Ordering::Greater
            {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        ConvexRegion { hull: lower }
    }

    pub fn bbox(&self) -> Option<BBox> {
        BBox::of(&self.hull)
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self.hull.len() {
            0 => false,
            1 => &self.hull[0] == p,
            2 => on_segment(p, &self.hull[0], &self.hull[1]),
            n => (0..n).all(|i| orient(&self.hull[i], &self.hull[(i + 1) % n], p) != Ordering::Less),
        }
    }

    /// Whether the closed segment `[a, b]` meets the region.
    pub fn meets_segment(&self, a: &Point, b: &Point) -> bool {
        if self.contains(a) || self.contains(b) {
            return true;
        }
        let n = self.hull.len();
        match n {
            0 => false,
            1 => on_segment(&self.hull[0], a, b),
            _ => (0..n).any(|i| {
                let e0 = &self.hull[i];
                let e1 = &self.hull[(i + 1) % n];
                intersect(e0, e1, a, b) != Contact::None
            }),
        }
    }
}
