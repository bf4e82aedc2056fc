//! JSON forms of elements, differentials and superpotentials. Coefficients
//! are written as exact rational strings (`"3"`, `"-1/2"`).

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::element::{Coeff, Element};
use crate::error::{Error, Result};
use crate::path::Path;
use crate::quiver::{GradedQuiver, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub path: Vec<String>,
    pub start: Vertex,
    pub coeff: String,
}

pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let t = s.trim();
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(Error::Parse(format!("coefficient `{s}` is not a rational p/q")));
    }
    let c = Coeff::from_str(t).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    Ok(c)
}

pub fn element_to_repr(q: &GradedQuiver, e: &Element) -> Vec<TermRepr> {
    e.terms()
        .map(|(p, c)| TermRepr {
            path: p.arrows().iter().map(|&a| q.arrow(a).id.clone()).collect(),
            start: p.start(),
            coeff: c.to_string(),
        })
        .collect()
}

pub fn element_from_repr(q: &GradedQuiver, terms: &[TermRepr]) -> Result<Element> {
    let mut e = Element::zero();
    for t in terms {
        if !q.has_vertex(t.start) {
            return Err(Error::UnknownVertex(t.start));
        }
        let arrows = t.path.iter().map(|s| q.lookup(s)).collect::<Result<Vec<_>>>()?;
        let p = Path::from_arrows(q, t.start, arrows)
            .ok_or_else(|| Error::Parse(format!("path {:?} is not composable", t.path)))?;
        e.add_term(p, parse_coeff(&t.coeff)?);
    }
    Ok(e)
}

pub fn element_to_json(q: &GradedQuiver, e: &Element) -> serde_json::Value {
    serde_json::to_value(element_to_repr(q, e)).expect("term list serializes")
}

/// One cycle of a superpotential as read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRepr {
    pub coeff: String,
    pub cycle: Vec<String>,
}

pub type DifferentialRepr = BTreeMap<String, Vec<TermRepr>>;
