//! Algebras presented as `kQ / (relators)`.

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::io::{element_from_repr, element_to_repr, TermRepr};
use crate::quiver::GradedQuiver;

/// A path algebra of a quiver whose arrows sit in homological degree 0,
/// modulo the two-sided ideal generated by component-pure, Adams-homogeneous
/// relators. A relator may be an idempotent `e_v`, which kills the vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedAlgebra {
    quiver: GradedQuiver,
    relators: Vec<Element>,
}

impl PresentedAlgebra {
    pub fn new(quiver: GradedQuiver, relators: Vec<Element>) -> Result<Self> {
        if let Some(a) = quiver.arrows().iter().find(|a| a.hdeg != 0) {
            return Err(Error::InvalidPresentation(format!("generator `{}` has nonzero hdeg", a.id)));
        }
        let mut kept = Vec::with_capacity(relators.len());
        for (i, r) in relators.into_iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            if r.component().is_none() {
                return Err(Error::InvalidPresentation(format!("relator #{i} mixes endpoints")));
            }
            if r.adeg_homogeneous(&quiver).is_none() {
                return Err(Error::InvalidPresentation(format!("relator #{i} is not Adams-homogeneous")));
            }
            kept.push(r);
        }
        Ok(PresentedAlgebra { quiver, relators: kept })
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn relators(&self) -> &[Element] {
        &self.relators
    }

    /// The same algebra with one more relator.
    pub fn with_relator(&self, r: Element) -> Result<Self> {
        let mut rel = self.relators.clone();
        rel.push(r);
        PresentedAlgebra::new(self.quiver.clone(), rel)
    }

    /// The same algebra with relator `i` removed.
    pub fn without_relator(&self, i: usize) -> Self {
        let mut rel = self.relators.clone();
        rel.remove(i);
        PresentedAlgebra { quiver: self.quiver.clone(), relators: rel }
    }
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    quiver: GradedQuiver,
    relators: Vec<Vec<TermRepr>>,
}

impl Serialize for PresentedAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationRepr {
            quiver: self.quiver.clone(),
            relators: self.relators.iter().map(|r| element_to_repr(&self.quiver, r)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PresentedAlgebra {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PresentationRepr::deserialize(d)?;
        let relators = r
            .relators
            .iter()
            .map(|t| element_from_repr(&r.quiver, t))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        PresentedAlgebra::new(r.quiver, relators).map_err(D::Error::custom)
    }
}

/// `T_l V / (R)` with `V` spanned by the arrows (all in bidegree (0, 1)) and
/// `R` spanned by relators that are combinations of length-two paths sharing
/// source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticPresentation {
    inner: PresentedAlgebra,
}

impl QuadraticPresentation {
    pub fn new(quiver: GradedQuiver, relators: Vec<Element>) -> Result<Self> {
        if let Some(a) = quiver.arrows().iter().find(|a| a.hdeg != 0 || a.adeg != 1) {
            return Err(Error::InvalidPresentation(format!("arrow `{}` is not in bidegree (0, 1)", a.id)));
        }
        for (i, r) in relators.iter().enumerate() {
            if r.paths().any(|p| p.len() != 2) {
                return Err(Error::InvalidPresentation(format!("relator #{i} is not quadratic")));
            }
        }
        Ok(QuadraticPresentation { inner: PresentedAlgebra::new(quiver, relators)? })
    }

    pub fn quiver(&self) -> &GradedQuiver {
        self.inner.quiver()
    }

    pub fn relators(&self) -> &[Element] {
        self.inner.relators()
    }

    pub fn as_presented(&self) -> &PresentedAlgebra {
        &self.inner
    }
}

impl From<QuadraticPresentation> for PresentedAlgebra {
    fn from(p: QuadraticPresentation) -> Self {
        p.inner
    }
}

/// `k[x_1, …, x_n]` as a one-vertex quadratic presentation with arrows
/// `x1 … xn` and relators `x_i x_j - x_j x_i` for `i < j`.
pub fn polynomial_presentation(n: usize) -> QuadraticPresentation {
    use crate::path::Path;
    use crate::quiver::{Arrow, ArrowId};
    let arrows = (1..=n).map(|i| Arrow::new(format!("x{i}"), 0, 0, 0, 1)).collect();
    let q = GradedQuiver::new(vec![0], arrows).expect("valid quiver");
    let w = |a: usize, b: usize| {
        Element::from_path(Path::from_arrows(&q, 0, vec![ArrowId(a as u32), ArrowId(b as u32)]).unwrap())
    };
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rel.push(&w(i, j) - &w(j, i));
        }
    }
    QuadraticPresentation::new(q, rel).expect("valid presentation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::path::Path;
    use crate::quiver::{Arrow, ArrowId};

    #[test]
    fn validation() {
        let q = GradedQuiver::new(vec![0, 1], vec![Arrow::new("a", 0, 1, 0, 1), Arrow::new("b", 0, 1, 0, 2)]).unwrap();
        let a = Element::arrow(&q, ArrowId(0));
        let b = Element::arrow(&q, ArrowId(1));
        assert!(PresentedAlgebra::new(q.clone(), vec![&a + &b]).is_err());
        assert!(PresentedAlgebra::new(q.clone(), vec![&a + &Element::idempotent(0)]).is_err());
        assert!(PresentedAlgebra::new(q.clone(), vec![a.clone(), Element::idempotent(1)]).is_ok());
        assert!(QuadraticPresentation::new(q.clone(), vec![]).is_err());
        let q1 = GradedQuiver::new(vec![0], vec![Arrow::new("x", 0, 0, 0, 1)]).unwrap();
        assert!(QuadraticPresentation::new(q1.clone(), vec![Element::arrow(&q1, ArrowId(0))]).is_err());
        let xx = Element::from_path(Path::from_arrows(&q1, 0, vec![ArrowId(0), ArrowId(0)]).unwrap());
        assert!(QuadraticPresentation::new(q1, vec![xx]).is_ok());
    }

    #[test]
    fn json_round_trip() {
        let p = polynomial_presentation(2);
        let s = serde_json::to_string(p.as_presented()).unwrap();
        let back: PresentedAlgebra = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, p.as_presented());
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
