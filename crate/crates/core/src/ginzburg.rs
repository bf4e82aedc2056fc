//! Quivers with superpotential and their Ginzburg DG algebras.

use std::collections::BTreeMap;

use crate::dg::Differential;
use crate::element::{Coeff, Element};
use crate::error::{Error, Result};
use crate::io::{parse_coeff, CycleRepr};
use crate::koszul::{MinimalModel, Provenance};
use crate::path::Path;
use crate::presentation::PresentedAlgebra;
use crate::quiver::{Arrow, ArrowId, GradedQuiver, Vertex};

/// A linear combination of cycles in a quiver whose arrows all sit in
/// homological degree 0. Each cycle is stored as its lexicographically least
/// rotation, so equal potentials compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superpotential {
    quiver: GradedQuiver,
    terms: Element,
    weight: Option<u32>,
}

fn least_rotation(arrows: &[ArrowId]) -> usize {
    (0..arrows.len())
        .min_by(|&i, &j| {
            let a = arrows[i..].iter().chain(&arrows[..i]);
            let b = arrows[j..].iter().chain(&arrows[..j]);
            a.cmp(b)
        })
        .unwrap_or(0)
}

fn rotate(q: &GradedQuiver, arrows: &[ArrowId], k: usize) -> Path {
    let rotated: Vec<ArrowId> = arrows[k..].iter().chain(&arrows[..k]).copied().collect();
    let start = q.arrow(rotated[0]).source;
    Path::from_arrows(q, start, rotated).expect("rotation of a cycle is a cycle")
}

impl Superpotential {
    pub fn new(quiver: GradedQuiver, cycles: Vec<(Coeff, Vec<ArrowId>)>) -> Result<Self> {
        if let Some(a) = quiver.arrows().iter().find(|a| a.hdeg != 0) {
            return Err(Error::InvalidPotential(format!("arrow `{}` has nonzero hdeg", a.id)));
        }
        let mut terms = Element::zero();
        for (c, arrows) in cycles {
            if arrows.is_empty() {
                return Err(Error::InvalidPotential("empty cycle".into()));
            }
            let start = quiver.arrow(arrows[0]).source;
            let p = Path::from_arrows(&quiver, start, arrows.clone())
                .ok_or_else(|| Error::InvalidPotential("cycle is not composable".into()))?;
            if p.end() != p.start() {
                return Err(Error::InvalidPotential(format!("path {} is not a cycle", p.display(&quiver))));
            }
            terms.add_term(rotate(&quiver, &arrows, least_rotation(&arrows)), c);
        }
        let weight = terms.adeg_homogeneous(&quiver);
        Ok(Superpotential { quiver, terms, weight })
    }

    pub fn zero(quiver: GradedQuiver) -> Result<Self> {
        Superpotential::new(quiver, Vec::new())
    }

    pub fn from_repr(quiver: GradedQuiver, cycles: &[CycleRepr]) -> Result<Self> {
        let parsed = cycles
            .iter()
            .map(|c| {
                let arrows = c.cycle.iter().map(|s| quiver.lookup(s)).collect::<Result<Vec<_>>>()?;
                Ok((parse_coeff(&c.coeff)?, arrows))
            })
            .collect::<Result<Vec<_>>>()?;
        Superpotential::new(quiver, parsed)
    }

    pub fn to_repr(&self) -> Vec<CycleRepr> {
        self.terms
            .terms()
            .map(|(p, c)| CycleRepr {
                coeff: c.to_string(),
                cycle: p.arrows().iter().map(|&a| self.quiver.arrow(a).id.clone()).collect(),
            })
            .collect()
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn terms(&self) -> &Element {
        &self.terms
    }

    /// Common Adams degree of the cycles, if there is one. A restriction
    /// keeps the weight of the potential it came from.
    pub fn weight(&self) -> Option<u32> {
        self.weight
    }
}

/// `∂w/∂a`: for every occurrence `p = u a v` of `a` in a cycle of `w`, the
/// path `v u`, weighted by the cycle's coefficient.
pub fn cyclic_derivative(w: &Superpotential, a: ArrowId) -> Element {
    let q = &w.quiver;
    let mut out = Element::zero();
    for (p, c) in w.terms.terms() {
        let arrows = p.arrows();
        for (i, &b) in arrows.iter().enumerate() {
            if b != a {
                continue;
            }
            let rest: Vec<ArrowId> = arrows[i + 1..].iter().chain(&arrows[..i]).copied().collect();
            let path = Path::from_arrows(q, q.arrow(a).target, rest).expect("rest of a cycle composes");
            out.add_term(path, c.clone());
        }
    }
    out
}

/// `Σ_a [∂w/∂a, a]`, which vanishes for every potential.
pub fn cyclic_identity(w: &Superpotential) -> Element {
    let q = &w.quiver;
    let mut out = Element::zero();
    for a in q.arrow_ids() {
        let da = cyclic_derivative(w, a);
        let x = Element::arrow(q, a);
        out = &out + &(&da.multiply(&x) - &x.multiply(&da));
    }
    out
}

/// `kQ / ⟨∂w/∂a : a ∈ Q_1⟩`.
pub fn jacobian_presentation(w: &Superpotential) -> Result<PresentedAlgebra> {
    let relators = w.quiver.arrow_ids().map(|a| cyclic_derivative(w, a)).collect();
    PresentedAlgebra::new(w.quiver.clone(), relators)
}

/// Removes `v`, its arrows and every cycle through `v`.
pub fn restrict_potential(w: &Superpotential, v: Vertex) -> Result<Superpotential> {
    let q = &w.quiver;
    if !q.has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    let keep: Vec<Vertex> = q.vertices().iter().copied().filter(|&x| x != v).collect();
    let (sub, map) = q.subquiver(&keep, |_| true);
    let terms = w.terms.map_paths(|p| {
        if p.touches(q, v) {
            return None;
        }
        let arrows: Vec<ArrowId> = p.arrows().iter().map(|a| map[a.index()].expect("kept")).collect();
        Path::from_arrows(&sub, p.start(), arrows)
    });
    Ok(Superpotential { quiver: sub, terms, weight: w.weight })
}

/// The Ginzburg algebra `Γ(Q, w)`: arrows `a` (hdeg 0), reversed arrows
/// `a*` (hdeg -1), a loop `c_i` (hdeg -2) at every vertex, with
/// `da = 0`, `d a* = ∂w/∂a`, `d c_i = e_i (Σ_a [a*, a]) e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinzburgModel {
    differential: Differential,
    adams_graded: bool,
    loops: BTreeMap<Vertex, ArrowId>,
}

impl GinzburgModel {
    pub fn differential(&self) -> &Differential {
        &self.differential
    }

    pub fn quiver(&self) -> &GradedQuiver {
        self.differential.quiver()
    }

    /// Whether `d` preserves the Adams grading. False only for potentials
    /// that are not homogeneous.
    pub fn adams_graded(&self) -> bool {
        self.adams_graded
    }

    /// The loop `c_v`.
    pub fn loop_at(&self, v: Vertex) -> ArrowId {
        self.loops[&v]
    }

    /// `c = Σ_i c_i`.
    pub fn c(&self) -> Element {
        self.loops.values().fold(Element::zero(), |acc, &a| &acc + &Element::arrow(self.quiver(), a))
    }

    pub fn to_model(&self) -> MinimalModel {
        MinimalModel { differential: self.differential.clone(), provenance: Provenance::Ginzburg, truncated: false }
    }
}

pub fn star_id(id: &str) -> String {
    format!("{id}*")
}

pub fn loop_id(v: Vertex) -> String {
    format!("c{v}")
}

/// Adams degree `W` for `c`: the weight of a homogeneous potential, or one
/// more than the largest arrow degree for the zero potential. `None` when no
/// choice makes `d` homogeneous with every `a*` of positive degree.
fn adams_scheme(w: &Superpotential) -> Option<u32> {
    let max = w.quiver.max_adeg().max(1);
    match w.weight {
        Some(big) if big > max => Some(big),
        Some(_) => None,
        None if w.terms.is_zero() => Some(max + 1),
        None => None,
    }
}

pub fn ginzburg_model(w: &Superpotential) -> Result<GinzburgModel> {
    let q = &w.quiver;
    let scheme = adams_scheme(w);
    let mut arrows: Vec<Arrow> = q.arrows().to_vec();
    for a in q.arrows() {
        let adeg = scheme.map(|big| big - a.adeg).unwrap_or(a.adeg);
        arrows.push(Arrow::new(star_id(&a.id), a.target, a.source, -1, adeg).with_label(format!("{}*", a.label)));
    }
    let mut loops = BTreeMap::new();
    for &v in q.vertices() {
        loops.insert(v, ArrowId(arrows.len() as u32));
        arrows.push(Arrow::new(loop_id(v), v, v, -2, scheme.unwrap_or(2)).with_label(format!("c_{v}")));
    }
    let big = GradedQuiver::new(q.vertices().to_vec(), arrows)
        .map_err(|e| Error::InvalidPotential(format!("cannot build the Ginzburg quiver: {e}")))?;

    let n = q.num_arrows();
    let star = |a: ArrowId| ArrowId((n + a.index()) as u32);
    let lift = |p: &Path| Path::from_arrows(&big, p.start(), p.arrows().to_vec()).expect("same arrows");
    let mut images = vec![Element::zero(); big.num_arrows()];
    for a in q.arrow_ids() {
        images[star(a).index()] = cyclic_derivative(w, a).map_paths(|p| Some(lift(p)));
    }
    for a in q.arrow_ids() {
        let x = Element::arrow(&big, a);
        let xs = Element::arrow(&big, star(a));
        let t = q.arrow(a).target;
        let s = q.arrow(a).source;
        let ci = loops[&t].index();
        images[ci] = &images[ci] + &xs.multiply(&x);
        let ci = loops[&s].index();
        images[ci] = &images[ci] - &x.multiply(&xs);
    }
    let differential = Differential::new(big, images)?;
    Ok(GinzburgModel { differential, adams_graded: scheme.is_some(), loops })
}
