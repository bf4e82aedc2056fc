//! The ascending/descending split of a deleted McKay model when the weights
//! sum to `m`, the algebra `C` cut out by the ascending degree-0 arrows, the
//! bimodule `Ω̃` of the ascending part, and the pairing element `ω`.
//!
//! Vertices of the deleted model are `1..m`. An arrow `x_{j,S,t}` is
//! ascending when `t > j` as integers, descending otherwise (loops
//! included). Writing `P̃` for the ascending subquiver and `D` for the
//! bimodule generated by the descending arrows, `kQ̃⁰ = T_{kP̃} D`.
//!
//! `Ω̃` is realized inside the path algebra of `Q̃⁰` with extra arrows
//! `x̃_{j,S,j+d(S)}` (one per ascending arrow, plus a degree-0 loop
//! `x̃_{j,∅,j}` at each vertex) of bidegree `(-|S|, |S|+1)` and
//!
//! ```text
//! d x̃_{j,S} = Σ_{S=A⊔B, B≠∅} (-1)^{|A|} ε_{A,B} x̃_{j,A} · x_{j+d(A),B}
//!           - Σ_{S=A⊔B, A≠∅} ε_{A,B} x_{j,A} · x̃_{j+d(A),B}
//! ```
//!
//! Elements of `Ω̃ ⊗_{kP̃ᵉ} D` are then cycles containing one `x̃` and one
//! descending arrow, taken modulo graded rotation of ascending prefixes.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::dg::{check_d_squared, Differential};
use crate::element::{int, sign, Coeff, Element};
use crate::error::{Error, Result};
use crate::homology::{cohomology_dims, compare_h0, identity_map, truncated_dims, Limits};
use crate::io::element_to_json;
use crate::koszul::subsets::{all_splits, full, label, nonempty_subsets, shuffle_sign, singleton, size, Subset};
use crate::koszul::{generator_table, mckay_arrow_id, minimal_model_general, McKayData, MinimalModel};
use crate::path::Path;
use crate::presentation::QuadraticPresentation;
use crate::quiver::{Arrow, ArrowId, GradedQuiver, Vertex};
use crate::report::{CheckReport, ReportSet, Status};

/// Recorded in every full report.
pub const CERTIFICATION_NOTE: &str = "the quasi-isomorphism (kQ̃⁰, d) ≅ T_C(Θ_C[n-1]) and the identification Θ = Ω̃* are certified only through their finite ingredients: split closure, the Koszul/minimal-model check for C, and degree, closedness and non-degeneracy of ω";

fn refuse_unless_minimal(data: &McKayData) -> Result<()> {
    if !data.sum_equals_m() {
        return Err(Error::Hypothesis(format!(
            "condition sum(weights) = m fails: {} != {}",
            data.weights().iter().sum::<u32>(),
            data.m()
        )));
    }
    if data.weights().contains(&0) {
        return Err(Error::Hypothesis("weights must be positive".into()));
    }
    Ok(())
}

/// Where an arrow of the deleted model comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowInfo {
    pub source: Vertex,
    pub subset: Subset,
    pub target: Vertex,
    pub ascending: bool,
}

/// A deleted McKay model with its arrows sorted into ascending and
/// descending ones.
#[derive(Clone, Debug)]
pub struct SplitModel {
    data: McKayData,
    model: MinimalModel,
    info: Vec<ArrowInfo>,
    closure: CheckReport,
}

/// Classifies the arrows of `model`, the McKay model of `data` with vertex
/// 0 deleted, and checks that `kP̃` and `D` are closed under `d`: images of
/// ascending arrows use ascending arrows only, and every term in the image
/// of a descending arrow has exactly one descending factor.
pub fn split(model: &MinimalModel, data: &McKayData) -> Result<SplitModel> {
    let q = model.quiver();
    let m = data.m();
    let n = data.n();
    let expected: Vec<Vertex> = (1..m).collect();
    if q.vertices() != expected.as_slice() {
        return Err(Error::InvalidMcKay(format!("expected vertices 1..{m} after deleting vertex 0")));
    }
    let mut info: Vec<Option<ArrowInfo>> = vec![None; q.num_arrows()];
    for j in 1..m {
        for s in nonempty_subsets(n) {
            let t = data.target(j, s);
            if t == 0 {
                continue;
            }
            let a = q.lookup(&mckay_arrow_id(j, s, t, n))?;
            info[a.index()] = Some(ArrowInfo { source: j, subset: s, target: t, ascending: t > j });
        }
    }
    let info: Vec<ArrowInfo> = info
        .into_iter()
        .enumerate()
        .map(|(i, x)| x.ok_or_else(|| Error::InvalidMcKay(format!("arrow `{}` is not a McKay arrow", q.arrows()[i].id))))
        .collect::<Result<_>>()?;

    let mut witness = None;
    'outer: for a in q.arrow_ids() {
        let allowed = if info[a.index()].ascending { 0 } else { 1 };
        for p in model.differential.image(a).paths() {
            let k = p.arrows().iter().filter(|b| !info[b.index()].ascending).count();
            if k != allowed {
                witness = Some(json!({
                    "arrow": q.arrow(a).id,
                    "term": p.display(q),
                    "descending_factors": k,
                    "expected": allowed,
                }));
                break 'outer;
            }
        }
    }
    let closure = CheckReport::from_result("split_closure", witness);
    Ok(SplitModel { data: data.clone(), model: model.clone(), info, closure })
}

impl SplitModel {
    pub fn data(&self) -> &McKayData {
        &self.data
    }

    pub fn model(&self) -> &MinimalModel {
        &self.model
    }

    pub fn quiver(&self) -> &GradedQuiver {
        self.model.quiver()
    }

    pub fn info(&self, a: ArrowId) -> ArrowInfo {
        self.info[a.index()]
    }

    pub fn ascending(&self) -> Vec<ArrowId> {
        self.quiver().arrow_ids().filter(|a| self.info[a.index()].ascending).collect()
    }

    /// Generators of the bimodule `D`.
    pub fn descending(&self) -> Vec<ArrowId> {
        self.quiver().arrow_ids().filter(|a| !self.info[a.index()].ascending).collect()
    }

    pub fn closure(&self) -> &CheckReport {
        &self.closure
    }

    fn require_closure(&self) -> Result<()> {
        if self.closure.passed() {
            Ok(())
        } else {
            Err(Error::Hypothesis("the ascending part is not closed under d".into()))
        }
    }

    /// `(kP̃, d)`: the ascending arrows with the restricted differential.
    pub fn ascending_part(&self) -> Result<Differential> {
        self.require_closure()?;
        let ids: BTreeSet<&str> = self.ascending().into_iter().map(|a| self.quiver().arrow(a).id.as_str()).collect();
        let (d, dropped) = self.model.differential.restrict(self.quiver().vertices(), |a| ids.contains(a.id.as_str()));
        debug_assert_eq!(dropped, 0);
        Ok(d)
    }
}

/// The path algebra of the ascending degree-0 arrows `x_{j,i,j+a_i}` modulo
/// `x_{j,k} x_{j+a_k,l} = x_{j,l} x_{j+a_l,k}`. Arrow ids agree with the
/// model's.
pub fn build_c(split: &SplitModel) -> Result<QuadraticPresentation> {
    split.require_closure()?;
    let data = split.data();
    let (m, n) = (data.m(), data.n());
    let a = data.weights();
    let mut arrows = Vec::new();
    let mut index: BTreeMap<(Vertex, usize), ArrowId> = BTreeMap::new();
    for j in 1..m {
        for i in 1..=n {
            let t = j + a[i - 1];
            if t > j && t < m {
                index.insert((j, i), ArrowId(arrows.len() as u32));
                let s = singleton(i);
                arrows.push(
                    Arrow::new(mckay_arrow_id(j, s, t, n), j, t, 0, 1).with_label(format!("x_{{{j},{},{t}}}", label(s, n))),
                );
            }
        }
    }
    let q = GradedQuiver::new((1..m).collect(), arrows)?;
    let mut relators = Vec::new();
    for j in 1..m {
        for k in 1..=n {
            for l in k + 1..=n {
                if j + a[k - 1] + a[l - 1] >= m {
                    continue;
                }
                let word = |x: usize, y: usize| -> Element {
                    let first = index[&(j, x)];
                    let second = index[&(j + a[x - 1], y)];
                    Element::from_path(Path::from_arrows(&q, j, vec![first, second]).expect("composable"))
                };
                relators.push(&word(k, l) - &word(l, k));
            }
        }
    }
    QuadraticPresentation::new(q, relators)
}

/// Checks at Adams degree `<= nadams` that `kP̃ → C` is a quasi-isomorphism
/// (no cohomology below degree 0, `H⁰` with the dimensions of `C`, and the
/// induced map on `H⁰` an isomorphism), and that the generators of `kP̃`
/// have the bidegrees of the `J_n` spaces of `C`.
pub fn check_c_koszul_and_model(split: &SplitModel, nadams: u32, limits: &Limits) -> Result<ReportSet> {
    let d = split.ascending_part()?;
    let c = build_c(split)?;
    let hmin = -(nadams as i32);

    let table = cohomology_dims(&d, hmin, nadams, limits)?;
    let negative = table.entries.iter().find(|e| e.h < 0 && e.dim > 0).map(|e| {
        json!({ "h": e.h, "adeg": e.a, "source": e.source, "target": e.target, "dim": e.dim })
    });
    let negative = CheckReport::from_result("negative_cohomology_vanishes", negative)
        .with_note(format!("window {hmin} <= h < 0, Adams degree <= {nadams}"));

    let h0 = table.degree_table(0);
    let mut cdims = truncated_dims(c.as_presented(), nadams, limits)?;
    cdims.retain(|_, v| *v > 0);
    let mismatch = h0.keys().chain(cdims.keys()).find_map(|k| {
        let (l, r) = (h0.get(k).copied().unwrap_or(0), cdims.get(k).copied().unwrap_or(0));
        (l != r).then(|| json!({ "source": k.0, "target": k.1, "adeg": k.2, "h0": l, "c": r }))
    });
    let dims = CheckReport::from_result("h0_dims_match_c", mismatch);

    let iso = compare_h0(&d, c.as_presented(), &identity_map(&d), nadams, limits)?;

    let nmax = split.data().n() + 1;
    let general = minimal_model_general(&c, nmax.max(2))?;
    let ours = generator_table(d.quiver());
    let theirs = general.generator_table();
    let gen_mismatch = ours.keys().chain(theirs.keys()).find_map(|k| {
        let (l, r) = (ours.get(k).copied().unwrap_or(0), theirs.get(k).copied().unwrap_or(0));
        (l != r).then(|| json!({ "source": k.0, "target": k.1, "hdeg": k.2, "adeg": k.3, "ascending": l, "jn": r }))
    });
    let generators = CheckReport::from_result("generators_match_jn", gen_mismatch)
        .with_note(format!("J_n of C computed for n <= {}", nmax.max(2)));

    Ok(ReportSet::new("koszul_truncated", vec![negative, dims, iso, generators]))
}

/// `Ω̃_{kP̃/l⁰}` embedded in the path algebra of `Q̃⁰` with the `x̃`
/// generators adjoined.
#[derive(Clone, Debug)]
pub struct OmegaTilde {
    differential: Differential,
    tilde: BTreeMap<(Vertex, Subset), ArrowId>,
    base_arrows: usize,
}

pub fn tilde_id(j: Vertex, s: Subset, t: Vertex, n: usize) -> String {
    format!("x~{j}:{}:{t}", label(s, n))
}

impl OmegaTilde {
    pub fn differential(&self) -> &Differential {
        &self.differential
    }

    pub fn quiver(&self) -> &GradedQuiver {
        self.differential.quiver()
    }

    /// The generator `x̃_{j,S}`, if it exists.
    pub fn generator(&self, j: Vertex, s: Subset) -> Option<ArrowId> {
        self.tilde.get(&(j, s)).copied()
    }

    pub fn generators(&self) -> impl Iterator<Item = ArrowId> + '_ {
        self.tilde.values().copied()
    }

    pub fn is_tilde(&self, a: ArrowId) -> bool {
        a.index() >= self.base_arrows
    }

    /// `d² = 0` on the `x̃` generators (and on the arrows of `Q̃⁰`).
    pub fn check_d_squared(&self) -> Result<CheckReport> {
        let q = self.quiver();
        check_d_squared(&self.differential, q.max_adeg())
    }
}

pub fn build_omega_tilde(split: &SplitModel) -> Result<OmegaTilde> {
    split.require_closure()?;
    let data = split.data();
    let (m, n) = (data.m(), data.n());
    let base = split.quiver();
    let mut arrows: Vec<Arrow> = base.arrows().to_vec();
    let base_arrows = arrows.len();
    // x̃_{j,S} for S = ∅ and for every ascending x_{j,S}
    let mut tilde: BTreeMap<(Vertex, Subset), ArrowId> = BTreeMap::new();
    let mut model_arrow: BTreeMap<(Vertex, Subset), ArrowId> = BTreeMap::new();
    for a in base.arrow_ids() {
        let i = split.info(a);
        model_arrow.insert((i.source, i.subset), a);
    }
    for j in 1..m {
        let mut subsets = vec![0];
        subsets.extend(nonempty_subsets(n).into_iter().filter(|&s| s != full(n)));
        for s in subsets {
            let t = j + data.shift(s);
            if t >= m {
                continue;
            }
            tilde.insert((j, s), ArrowId(arrows.len() as u32));
            arrows.push(
                Arrow::new(tilde_id(j, s, t, n), j, t, -(size(s) as i32), size(s) as u32 + 1)
                    .with_label(format!("x̃_{{{j},{},{t}}}", label(s, n))),
            );
        }
    }
    let q = GradedQuiver::new(base.vertices().to_vec(), arrows)?;
    let mut images: Vec<Element> = split.model().differential.images().to_vec();
    let word = |x: ArrowId, y: ArrowId, start: Vertex| -> Element {
        Element::from_path(Path::from_arrows(&q, start, vec![x, y]).expect("composable"))
    };
    let mut order: Vec<(ArrowId, Vertex, Subset)> = tilde.iter().map(|(&(j, s), &x)| (x, j, s)).collect();
    order.sort();
    for (_, j, s) in order {
        let mut e = Element::zero();
        for (a, b) in all_splits(s) {
            let mid = j + data.shift(a);
            let eps = shuffle_sign(a, b);
            if b != 0 {
                let c: Coeff = sign(size(a) as i64) * int(eps);
                e.add_scaled(&word(tilde[&(j, a)], model_arrow[&(mid, b)], j), &c);
            }
            if a != 0 {
                e.add_scaled(&word(model_arrow[&(j, a)], tilde[&(mid, b)], j), &int(-eps));
            }
        }
        images.push(e);
    }
    let differential = Differential::new(q, images)?;
    Ok(OmegaTilde { differential, tilde, base_arrows })
}

/// One term `sign · x̃_{j,S} ⊗ x_{j+d(S),Sᶜ,j}` of `ω`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaTerm {
    pub sign: i8,
    pub left: String,
    pub right: String,
}

/// `ω = Σ_{S⊊[n], j ≤ j+d(S)} (-1)^{|S|-1} ε_{S,Sᶜ} x̃_{j,S} ⊗ x_{j+d(S),Sᶜ,j}`
/// as an element of the path algebra of the augmented quiver.
pub fn omega(split: &SplitModel, tilde: &OmegaTilde) -> Result<(Element, Vec<OmegaTerm>)> {
    let data = split.data();
    let n = data.n();
    let base = split.quiver();
    let q = tilde.quiver();
    let mut element = Element::zero();
    let mut terms = Vec::new();
    for (&(j, s), &x) in &tilde.tilde {
        let sc = full(n) ^ s;
        let t = q.arrow(x).target;
        let right_id = mckay_arrow_id(t, sc, data.target(t, sc), n);
        let y = base
            .find(&right_id)
            .ok_or_else(|| Error::Hypothesis(format!("no descending partner `{right_id}` for `{}`", q.arrow(x).id)))?;
        let path = Path::from_arrows(q, j, vec![x, y])
            .filter(|p| p.end() == j)
            .ok_or_else(|| Error::Hypothesis(format!("`{}` ⊗ `{right_id}` is not a cycle at {j}", q.arrow(x).id)))?;
        let sgn = if (size(s) as i64 - 1).rem_euclid(2) == 0 { 1 } else { -1 } * shuffle_sign(s, sc);
        element.add_term(path, int(sgn));
        terms.push(OmegaTerm { sign: sgn as i8, left: q.arrow(x).id.clone(), right: right_id });
    }
    Ok((element, terms))
}

/// Rewrites every cycle so that its single `x̃` factor comes first, using
/// `u · v ≡ (-1)^{|u||v|} v · u` for `u` in `kP̃`.
pub fn cyclic_normal_form(tilde: &OmegaTilde, e: &Element) -> Result<Element> {
    let q = tilde.quiver();
    let mut out = Element::zero();
    for (p, c) in e.terms() {
        let positions: Vec<usize> =
            p.arrows().iter().enumerate().filter(|(_, a)| tilde.is_tilde(**a)).map(|(i, _)| i).collect();
        if positions.len() != 1 || p.start() != p.end() {
            return Err(Error::InvalidDifferential(format!(
                "term {} is not a cycle with one x̃ factor",
                p.display(q)
            )));
        }
        let k = positions[0];
        let hu: i64 = p.arrows()[..k].iter().map(|a| q.arrow(*a).hdeg as i64).sum();
        let hv: i64 = p.arrows()[k..].iter().map(|a| q.arrow(*a).hdeg as i64).sum();
        let rotated: Vec<ArrowId> = p.arrows()[k..].iter().chain(&p.arrows()[..k]).copied().collect();
        let start = q.arrow(rotated[0]).source;
        let r = Path::from_arrows(q, start, rotated).expect("rotation of a cycle");
        out.add_term(r, c * &sign(hu * hv));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaReport {
    pub status: Status,
    /// `-n + 1`.
    pub expected_degree: i32,
    pub terms: Vec<OmegaTerm>,
    pub d_squared: CheckReport,
    pub degree: CheckReport,
    pub closed: CheckReport,
    pub nondegenerate: CheckReport,
}

impl OmegaReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Builds `ω` and checks `|ω| = -n+1`, `dω = 0` in `Ω̃ ⊗_{kP̃ᵉ} D`, and
/// that `ω` pairs the `x̃` generators bijectively with the descending
/// arrows, with coefficients `±1`.
pub fn build_and_check_omega(split: &SplitModel) -> Result<OmegaReport> {
    refuse_unless_minimal(split.data())?;
    let tilde = build_omega_tilde(split)?;
    let q = tilde.quiver();
    let n = split.data().n();
    let expected = 1 - n as i32;
    let (w, terms) = omega(split, &tilde)?;

    let bad_degree = w.paths().find(|p| p.hdeg(q) != expected).map(|p| json!({ "term": p.display(q), "hdeg": p.hdeg(q) }));
    let degree = CheckReport::from_result("omega_degree", bad_degree).with_note(format!("|ω| = {expected}"));

    let dw = cyclic_normal_form(&tilde, &tilde.differential().apply_unchecked(&w))?;
    let closed = CheckReport::from_result("omega_closed", (!dw.is_zero()).then(|| element_to_json(q, &dw)))
        .with_note("dω reduced modulo graded rotation of kP̃ factors");

    let mut left: BTreeMap<ArrowId, Vec<(ArrowId, Coeff)>> = BTreeMap::new();
    let mut right: BTreeMap<ArrowId, usize> = BTreeMap::new();
    for (p, c) in w.terms() {
        let [x, y] = p.arrows() else {
            return Err(Error::InvalidDifferential(format!("ω term {} is not x̃ ⊗ x", p.display(q))));
        };
        left.entry(*x).or_default().push((*y, c.clone()));
        *right.entry(*y).or_insert(0) += 1;
    }
    let unit = |c: &Coeff| *c == int(1) || *c == int(-1);
    let mut problem = None;
    for x in tilde.generators() {
        match left.get(&x).map(Vec::as_slice) {
            Some([(_, c)]) if unit(c) => {}
            other => {
                problem = Some(json!({ "generator": q.arrow(x).id, "partners": other.map_or(0, |v| v.len()) }));
                break;
            }
        }
    }
    if problem.is_none() {
        for y in split.descending() {
            let k = right.get(&y).copied().unwrap_or(0);
            if k != 1 {
                problem = Some(json!({ "descending": q.arrow(y).id, "partners": k }));
                break;
            }
        }
    }
    let nondegenerate = CheckReport::from_result("omega_nondegenerate", problem).with_note(format!(
        "{} x̃ generators, {} descending arrows",
        tilde.generators().count(),
        split.descending().len()
    ));

    let d_squared = tilde.check_d_squared()?;
    let ok = [&d_squared, &degree, &closed, &nondegenerate].iter().all(|r| r.passed());
    Ok(OmegaReport {
        status: if ok { Status::Pass } else { Status::Fail },
        expected_degree: expected,
        terms,
        d_squared,
        degree,
        closed,
        nondegenerate,
    })
}

/// Everything checked by `cy-check`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyReport {
    pub m: u32,
    pub weights: Vec<u32>,
    pub status: Status,
    pub closure: CheckReport,
    pub koszul_truncated: ReportSet,
    pub omega: OmegaReport,
    pub notes: Vec<String>,
}

impl CyReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Builds the deleted McKay model of `data` and runs every check above.
pub fn cy_check(data: &McKayData, nadams: u32, limits: &Limits) -> Result<CyReport> {
    refuse_unless_minimal(data)?;
    let model = crate::koszul::delete_vertex(&crate::koszul::mckay_model(data), 0)?;
    let s = split(&model, data)?;
    if !s.closure().passed() {
        return Err(Error::Hypothesis(format!("split closure fails: {:?}", s.closure().witness)));
    }
    let koszul_truncated = check_c_koszul_and_model(&s, nadams, limits)?;
    let omega = build_and_check_omega(&s)?;
    let ok = koszul_truncated.passed() && omega.passed();
    Ok(CyReport {
        m: data.m(),
        weights: data.weights().to_vec(),
        status: if ok { Status::Pass } else { Status::Fail },
        closure: s.closure().clone(),
        koszul_truncated,
        omega,
        notes: vec![CERTIFICATION_NOTE.to_string()],
    })
}
