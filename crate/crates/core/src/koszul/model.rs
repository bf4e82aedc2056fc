use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::dg::{check_d_squared, check_grading, Differential};
use crate::element::{sign, Coeff, Element};
use crate::error::{Error, Result};
use crate::io::DifferentialRepr;
use crate::path::Path;
use crate::presentation::QuadraticPresentation;
use crate::quiver::{Arrow, ArrowId, GradedQuiver, Vertex};

use super::jn::compute_jn_by_endpoints;
use super::mckay::McKayData;
use super::subsets::{label, nonempty_subsets, proper_splits, shuffle_sign, size, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    General,
    Polynomial,
    Mckay,
    Ginzburg,
}

/// A DG path algebra `(kQ̃, d)` with `d` minimal, together with how it was
/// built. `truncated` marks models whose generators were only produced up
/// to a bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalModel {
    pub differential: Differential,
    pub provenance: Provenance,
    pub truncated: bool,
}

impl MinimalModel {
    pub fn quiver(&self) -> &GradedQuiver {
        self.differential.quiver()
    }

    /// Number of generators per (source, target, hdeg, adeg).
    pub fn generator_table(&self) -> BTreeMap<(Vertex, Vertex, i32, u32), usize> {
        generator_table(self.quiver())
    }
}

pub fn generator_table(q: &GradedQuiver) -> BTreeMap<(Vertex, Vertex, i32, u32), usize> {
    let mut t = BTreeMap::new();
    for a in q.arrows() {
        *t.entry((a.source, a.target, a.hdeg, a.adeg)).or_insert(0) += 1;
    }
    t
}

/// On-disk form of any model: `{provenance, truncated, quiver, differential}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModelFile {
    pub provenance: Provenance,
    #[serde(default)]
    pub truncated: bool,
    pub quiver: GradedQuiver,
    pub differential: DifferentialRepr,
}

impl From<&MinimalModel> for ModelFile {
    fn from(m: &MinimalModel) -> Self {
        ModelFile {
            provenance: m.provenance,
            truncated: m.truncated,
            quiver: m.quiver().clone(),
            differential: m.differential.to_repr(),
        }
    }
}

impl TryFrom<ModelFile> for MinimalModel {
    type Error = Error;

    fn try_from(f: ModelFile) -> Result<Self> {
        let differential = Differential::from_repr(f.quiver, &f.differential)?;
        Ok(MinimalModel { differential, provenance: f.provenance, truncated: f.truncated })
    }
}

fn word(q: &GradedQuiver, arrows: &[ArrowId]) -> Element {
    let start = q.arrow(arrows[0]).source;
    Element::from_path(Path::from_arrows(q, start, arrows.to_vec()).expect("composable by construction"))
}

/// Per `n`: the `J_n` basis vectors with their generator, by endpoints.
type Layer = BTreeMap<(Vertex, Vertex), Vec<(Element, ArrowId)>>;

/// The minimal model built from `J_1, …, J_nmax` of a quadratic
/// presentation. A basis element `a ∈ J_n` becomes a generator of bidegree
/// `(1-n, n)` and
///
/// ```text
/// d a = Σ_{i=1}^{n-1} (-1)^{i-1} δ_{i,n-i}(a)
/// ```
///
/// where `δ_{i,n-i}(a)` is `a` rewritten in the basis `J_i ⊗ J_{n-i}`.
/// Generators for `J_1` keep the ids of the presentation's arrows.
pub fn minimal_model_general(p: &QuadraticPresentation, nmax: usize) -> Result<MinimalModel> {
    if nmax < 2 {
        return Err(Error::InvalidPresentation("nmax must be at least 2".into()));
    }
    let base = p.quiver();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut layers: Vec<Layer> = vec![BTreeMap::new()];
    for n in 1..=nmax {
        let mut layer = BTreeMap::new();
        for ((s, t), basis) in compute_jn_by_endpoints(p, n) {
            let mut entries = Vec::with_capacity(basis.len());
            for (k, v) in basis.into_iter().enumerate() {
                let id = ArrowId(arrows.len() as u32);
                let arrow = if n == 1 {
                    let orig = v.paths().next().expect("nonzero basis vector").arrows()[0];
                    base.arrow(orig).clone()
                } else {
                    Arrow::new(format!("j{n}.{s}.{t}.{k}"), s, t, 1 - n as i32, n as u32)
                        .with_label(format!("J{n}[{s}->{t}]#{k}"))
                };
                arrows.push(arrow);
                entries.push((v, id));
            }
            layer.insert((s, t), entries);
        }
        layers.push(layer);
    }
    let q = GradedQuiver::new(base.vertices().to_vec(), arrows)?;

    let mut images = vec![Element::zero(); q.num_arrows()];
    for n in 2..=nmax {
        for ((s, t), entries) in &layers[n] {
            for (a, gen) in entries {
                let mut image = Element::zero();
                let mut rebuilt = Element::zero();
                for i in 1..n {
                    let sgn = sign(i as i64 - 1);
                    for ((ls, lm), lefts) in layers[i].range((*s, Vertex::MIN)..=(*s, Vertex::MAX)) {
                        debug_assert_eq!(ls, s);
                        let Some(rights) = layers[n - i].get(&(*lm, *t)) else { continue };
                        for (u, ux) in lefts {
                            let pu = u.paths().next().expect("nonzero");
                            for (v, vx) in rights {
                                let pv = v.paths().next().expect("nonzero");
                                let c = a.coeff(&pu.concat(pv).expect("composable"));
                                if c.is_zero() {
                                    continue;
                                }
                                rebuilt.add_scaled(&u.multiply(v), &c);
                                image.add_scaled(&word(&q, &[*ux, *vx]), &(&c * &sgn));
                            }
                        }
                    }
                    if rebuilt != *a {
                        return Err(Error::Decomposition(format!(
                            "J_{n} basis vector for {s}->{t} is not in J_{i} ⊗ J_{}",
                            n - i
                        )));
                    }
                    rebuilt = Element::zero();
                }
                images[gen.index()] = image;
            }
        }
    }
    let differential = Differential::new(q, images)?;
    Ok(MinimalModel { differential, provenance: crate::koszul::Provenance::General, truncated: true })
}

/// Builds the generators `x_{j,S}` of a crossed-product model on `m`
/// vertices with per-variable vertex shifts `weights`, and the differential
///
/// ```text
/// d x_{j,S} = Σ_{S = A ⊔ B, A,B ≠ ∅} (-1)^{|A|-1} ε_{A,B} x_{j,A} · x_{j+d(A),B}
/// ```
fn shifted_model(m: u32, weights: &[u32], id: impl Fn(u32, Subset, u32) -> String, lbl: impl Fn(u32, Subset, u32) -> String) -> Differential {
    let n = weights.len();
    let subsets = nonempty_subsets(n);
    let shift = |s: Subset| -> u32 {
        super::subsets::elements(s).iter().map(|&i| weights[i - 1]).sum::<u32>() % m
    };
    let mut arrows = Vec::new();
    let mut index: BTreeMap<(u32, Subset), ArrowId> = BTreeMap::new();
    for j in 0..m {
        for &s in &subsets {
            let t = (j + shift(s)) % m;
            index.insert((j, s), ArrowId(arrows.len() as u32));
            arrows.push(Arrow::new(id(j, s, t), j, t, 1 - size(s) as i32, size(s) as u32).with_label(lbl(j, s, t)));
        }
    }
    let q = GradedQuiver::new((0..m).collect(), arrows).expect("valid quiver");
    let mut images = Vec::with_capacity(q.num_arrows());
    for j in 0..m {
        for &s in &subsets {
            let mut e = Element::zero();
            for (a, b) in proper_splits(s) {
                let c: Coeff = sign(size(a) as i64 - 1) * Coeff::from_integer(shuffle_sign(a, b).into());
                let left = index[&(j, a)];
                let right = index[&((j + shift(a)) % m, b)];
                e.add_scaled(&word(&q, &[left, right]), &c);
            }
            images.push(e);
        }
    }
    Differential::new(q, images).expect("images reference existing arrows")
}

/// The minimal model of `k[x_1, …, x_n]`: one vertex, a generator `x_S` of
/// bidegree `(1-|S|, |S|)` for each nonempty `S ⊆ [n]`.
pub fn polynomial_model(n: usize) -> MinimalModel {
    assert!((1..=super::subsets::MAX_VARIABLES).contains(&n), "n must be in 1..=20");
    let differential = shifted_model(
        1,
        &vec![0; n],
        |_, s, _| format!("x{}", label(s, n)),
        |_, s, _| format!("x_{{{}}}", label(s, n)),
    );
    MinimalModel { differential, provenance: Provenance::Polynomial, truncated: false }
}

/// Arrow id of `x_{j,S,t}` in a McKay model.
pub fn mckay_arrow_id(j: u32, s: Subset, t: u32, n: usize) -> String {
    format!("x{j}:{}:{t}", label(s, n))
}

/// The McKay-quiver model of `k[x_1..x_n] # ℤ/m`: vertices `0..m`, arrows
/// `x_{j,S,j+d(S)}` for every vertex and nonempty `S`.
pub fn mckay_model(data: &McKayData) -> MinimalModel {
    let n = data.weights().len();
    let differential = shifted_model(
        data.m(),
        data.weights(),
        |j, s, t| mckay_arrow_id(j, s, t, n),
        |j, s, t| format!("x_{{{j},{},{t}}}", label(s, n)),
    );
    MinimalModel { differential, provenance: Provenance::Mckay, truncated: false }
}

/// Quotient by the two-sided ideal of `e_v`: removes `v`, its arrows, and
/// every differential term through `v`. The result is checked for
/// `d² = 0` and the grading conditions.
pub fn delete_vertex(model: &MinimalModel, v: Vertex) -> Result<MinimalModel> {
    let q = model.quiver();
    if !q.has_vertex(v) {
        return Err(Error::UnknownVertex(v));
    }
    let keep: Vec<Vertex> = q.vertices().iter().copied().filter(|&x| x != v).collect();
    let (differential, _) = model.differential.restrict(&keep, |_| true);
    let n = differential.quiver().max_adeg().max(1);
    let dsq = check_d_squared(&differential, n)?;
    if !dsq.passed() {
        return Err(Error::InvalidDifferential(format!("d² ≠ 0 after deleting vertex {v}: {:?}", dsq.witness)));
    }
    if model.provenance != Provenance::Ginzburg && !check_grading(&differential).passed() {
        return Err(Error::InvalidDifferential(format!("grading broken after deleting vertex {v}")));
    }
    Ok(MinimalModel { differential, provenance: model.provenance, truncated: model.truncated })
}
