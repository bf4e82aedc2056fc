//! Elements of a path algebra with exact rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::path::Path;
use crate::quiver::{ArrowId, GradedQuiver, Vertex};

pub type Coeff = BigRational;

pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Coeff {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^k` as a coefficient.
pub fn sign(k: i64) -> Coeff {
    if k.rem_euclid(2) == 0 {
        Coeff::one()
    } else {
        -Coeff::one()
    }
}

/// A finite linear combination of paths. Zero coefficients are never stored
/// and iteration follows the canonical path order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Path, Coeff>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_path(p: Path) -> Self {
        Element::term(p, Coeff::one())
    }

    pub fn term(p: Path, c: Coeff) -> Self {
        let mut e = Element::zero();
        e.add_term(p, c);
        e
    }

    pub fn arrow(q: &GradedQuiver, a: ArrowId) -> Self {
        Element::from_path(Path::arrow(q, a))
    }

    pub fn idempotent(v: Vertex) -> Self {
        Element::from_path(Path::idempotent(v))
    }

    /// The unit `Σ_j e_j` of the path algebra of `q`.
    pub fn unit(q: &GradedQuiver) -> Self {
        q.vertices().iter().map(|&v| Element::idempotent(v)).fold(Element::zero(), |a, b| &a + &b)
    }

    pub fn add_term(&mut self, p: Path, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (p, x) in &other.terms {
            self.add_term(p.clone(), x * c);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Coeff)> {
        self.terms.iter()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.terms.keys()
    }

    pub fn coeff(&self, p: &Path) -> Coeff {
        self.terms.get(p).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn scale(&self, c: &Coeff) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element { terms: self.terms.iter().map(|(p, x)| (p.clone(), x * c)).collect() }
    }

    /// Keeps only the terms whose path satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Path) -> bool) -> Element {
        Element { terms: self.terms.iter().filter(|(p, _)| keep(p)).map(|(p, c)| (p.clone(), c.clone())).collect() }
    }

    /// Rewrites every path through `f`; terms mapped to `None` are dropped.
    pub fn map_paths(&self, mut f: impl FnMut(&Path) -> Option<Path>) -> Element {
        let mut out = Element::zero();
        for (p, c) in &self.terms {
            if let Some(np) = f(p) {
                out.add_term(np, c.clone());
            }
        }
        out
    }

    /// Bilinear extension of concatenation. Mismatched endpoints give zero.
    pub fn multiply(&self, other: &Element) -> Element {
        let mut out = Element::zero();
        for (p, a) in &self.terms {
            for (r, b) in &other.terms {
                if let Some(pr) = p.concat(r) {
                    out.add_term(pr, a * b);
                }
            }
        }
        out
    }

    /// Drops every path of Adams degree greater than `n`.
    pub fn truncate_adams(&self, q: &GradedQuiver, n: u32) -> Element {
        self.filter(|p| p.adeg(q) <= n)
    }

    /// The common homological degree of all terms, `None` for zero.
    pub fn hdeg(&self, q: &GradedQuiver) -> Result<Option<i32>> {
        let mut found: Option<i32> = None;
        for p in self.terms.keys() {
            let h = p.hdeg(q);
            match found {
                None => found = Some(h),
                Some(f) if f != h => return Err(Error::Inhomogeneous(f, h)),
                _ => {}
            }
        }
        Ok(found)
    }

    pub fn adeg_homogeneous(&self, q: &GradedQuiver) -> Option<u32> {
        let mut it = self.terms.keys().map(|p| p.adeg(q));
        let first = it.next()?;
        it.all(|a| a == first).then_some(first)
    }

    /// Whether every term runs from one common source to one common target.
    pub fn component(&self) -> Option<(Vertex, Vertex)> {
        let mut it = self.terms.keys().map(|p| (p.start(), p.end()));
        let first = it.next()?;
        it.all(|e| e == first).then_some(first)
    }

    pub fn display(&self, q: &GradedQuiver) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let neg = c < &Coeff::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                s.push_str(&format!("{}*", mag));
            }
            s.push_str(&p.display(q));
        }
        s
    }
}

/// `uv - (-1)^{hu·hv} vu`, after checking that `u` and `v` sit in the
/// stated homological degrees.
pub fn graded_commutator(q: &GradedQuiver, u: &Element, v: &Element, hu: i32, hv: i32) -> Result<Element> {
    for (x, h) in [(u, hu), (v, hv)] {
        if let Some(found) = x.hdeg(q)? {
            if found != h {
                return Err(Error::DegreeMismatch { expected: h, found });
            }
        }
    }
    let uv = u.multiply(v);
    let vu = v.multiply(u);
    Ok(&uv - &vu.scale(&sign(hu as i64 * hv as i64)))
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (p, c) in &rhs.terms {
            out.add_term(p.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element { terms: self.terms.iter().map(|(p, c)| (p.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Element {
    type Output = Element;
    fn mul(self, rhs: &Element) -> Element {
        self.multiply(rhs)
    }
}

impl FromIterator<(Path, Coeff)> for Element {
    fn from_iter<I: IntoIterator<Item = (Path, Coeff)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (p, c) in iter {
            e.add_term(p, c);
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Arrow;

    fn two_vertex() -> GradedQuiver {
        GradedQuiver::new(vec![1, 2], vec![Arrow::new("x", 1, 2, 0, 1)]).unwrap()
    }

    fn free3() -> GradedQuiver {
        GradedQuiver::new(
            vec![0],
            vec![Arrow::new("x1", 0, 0, 0, 1), Arrow::new("x2", 0, 0, 0, 1), Arrow::new("x3", 0, 0, 0, 1)],
        )
        .unwrap()
    }

    fn word(q: &GradedQuiver, ids: &[&str]) -> Element {
        let arrows = ids.iter().map(|s| q.lookup(s).unwrap()).collect();
        Element::from_path(Path::from_arrows(q, 0, arrows).unwrap())
    }

    #[test]
    fn idempotents_act_locally() {
        let q = two_vertex();
        let x = Element::arrow(&q, ArrowId(0));
        assert_eq!(Element::idempotent(1).multiply(&x), x);
        assert!(x.multiply(&Element::idempotent(1)).is_zero());
        assert_eq!(x.multiply(&Element::idempotent(2)), x);
    }

    #[test]
    fn bilinear_product() {
        let q = free3();
        let lhs = (&word(&q, &["x1"]) + &word(&q, &["x2"])).multiply(&word(&q, &["x3"]));
        let rhs = &word(&q, &["x1", "x3"]) + &word(&q, &["x2", "x3"]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_signs() {
        let q = GradedQuiver::new(
            vec![0],
            vec![Arrow::new("x1", 0, 0, 0, 1), Arrow::new("x2", 0, 0, 0, 1), Arrow::new("y", 0, 0, -1, 2), Arrow::new("z", 0, 0, -1, 2)],
        )
        .unwrap();
        let c = graded_commutator(&q, &word(&q, &["x1"]), &word(&q, &["x2"]), 0, 0).unwrap();
        assert_eq!(c, &word(&q, &["x1", "x2"]) - &word(&q, &["x2", "x1"]));
        let c = graded_commutator(&q, &word(&q, &["y"]), &word(&q, &["z"]), -1, -1).unwrap();
        assert_eq!(c, &word(&q, &["y", "z"]) + &word(&q, &["z", "y"]));
        let x = word(&q, &["x1"]);
        assert!(graded_commutator(&q, &x, &x, 0, 0).unwrap().is_zero());
        assert!(matches!(
            graded_commutator(&q, &word(&q, &["y"]), &x, 0, 0),
            Err(Error::DegreeMismatch { .. })
        ));
        let mixed = &x + &word(&q, &["y"]);
        assert!(matches!(graded_commutator(&q, &mixed, &x, 0, 0), Err(Error::Inhomogeneous(..))));
    }

    #[test]
    fn truncation() {
        let q = free3();
        let e = Element::idempotent(0);
        assert_eq!(e.truncate_adams(&q, 0), e);
        let u = &word(&q, &["x1"]) + &word(&q, &["x1", "x2", "x3"]);
        assert_eq!(u.truncate_adams(&q, 2), word(&q, &["x1"]));
        assert!(Element::zero().truncate_adams(&q, 5).is_zero());
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = free3();
        let x = word(&q, &["x1"]);
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).len(), 0);
    }
}
