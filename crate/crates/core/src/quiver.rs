//! Graded quivers: vertices plus arrows tagged with a homological degree
//! (`hdeg <= 0`) and an Adams degree (`adeg >= 1`).

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Index of an arrow inside its [`GradedQuiver`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArrowId(pub u32);

impl ArrowId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: Vertex,
    pub target: Vertex,
    pub hdeg: i32,
    pub adeg: u32,
    /// Display name; defaults to the id when absent from the input.
    #[serde(default)]
    pub label: String,
}

impl Arrow {
    pub fn new(id: impl Into<String>, source: Vertex, target: Vertex, hdeg: i32, adeg: u32) -> Self {
        let id = id.into();
        Arrow { label: id.clone(), id, source, target, hdeg, adeg }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct QuiverRepr {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

/// A finite graded quiver. Immutable once built.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "QuiverRepr", into = "QuiverRepr")]
pub struct GradedQuiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
    by_id: HashMap<String, ArrowId>,
}

impl PartialEq for GradedQuiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for GradedQuiver {}

impl TryFrom<QuiverRepr> for GradedQuiver {
    type Error = Error;

    fn try_from(mut r: QuiverRepr) -> Result<Self> {
        for a in r.arrows.iter_mut().filter(|a| a.label.is_empty()) {
            a.label = a.id.clone();
        }
        GradedQuiver::new(r.vertices, r.arrows)
    }
}

impl From<GradedQuiver> for QuiverRepr {
    fn from(q: GradedQuiver) -> Self {
        QuiverRepr { vertices: q.vertices, arrows: q.arrows }
    }
}

impl GradedQuiver {
    pub fn new(vertices: Vec<Vertex>, arrows: Vec<Arrow>) -> Result<Self> {
        let vset: BTreeSet<Vertex> = vertices.iter().copied().collect();
        if vset.len() != vertices.len() {
            return Err(Error::InvalidQuiver("duplicate vertex".into()));
        }
        let mut by_id = HashMap::with_capacity(arrows.len());
        for (i, a) in arrows.iter().enumerate() {
            if !vset.contains(&a.source) || !vset.contains(&a.target) {
                return Err(Error::InvalidQuiver(format!(
                    "arrow `{}` references a missing vertex",
                    a.id
                )));
            }
            if a.hdeg > 0 {
                return Err(Error::InvalidQuiver(format!("arrow `{}` has hdeg {} > 0", a.id, a.hdeg)));
            }
            if a.adeg == 0 {
                return Err(Error::InvalidQuiver(format!("arrow `{}` has adeg 0", a.id)));
            }
            if by_id.insert(a.id.clone(), ArrowId(i as u32)).is_some() {
                return Err(Error::InvalidQuiver(format!("duplicate arrow id `{}`", a.id)));
            }
        }
        Ok(GradedQuiver { vertices, arrows, by_id })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.index()]
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len() as u32).map(ArrowId)
    }

    pub fn find(&self, id: &str) -> Option<ArrowId> {
        self.by_id.get(id).copied()
    }

    pub fn lookup(&self, id: &str) -> Result<ArrowId> {
        self.find(id).ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    /// Arrows leaving `v`, in arrow order.
    pub fn arrows_from(&self, v: Vertex) -> Vec<ArrowId> {
        self.arrow_ids().filter(|&a| self.arrow(a).source == v).collect()
    }

    pub fn max_adeg(&self) -> u32 {
        self.arrows.iter().map(|a| a.adeg).max().unwrap_or(0)
    }

    /// Keeps the listed vertices and the arrows selected by `keep`, both of
    /// whose endpoints survive. Returns the subquiver together with the map
    /// from old arrow ids to new ones.
    pub fn subquiver(
        &self,
        vertices: &[Vertex],
        mut keep: impl FnMut(&Arrow) -> bool,
    ) -> (GradedQuiver, Vec<Option<ArrowId>>) {
        let vset: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let mut map = vec![None; self.arrows.len()];
        let mut arrows = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if vset.contains(&a.source) && vset.contains(&a.target) && keep(a) {
                map[i] = Some(ArrowId(arrows.len() as u32));
                arrows.push(a.clone());
            }
        }
        let verts = self.vertices.iter().copied().filter(|v| vset.contains(v)).collect();
        let q = GradedQuiver::new(verts, arrows).expect("subquiver of a valid quiver is valid");
        (q, map)
    }
}
