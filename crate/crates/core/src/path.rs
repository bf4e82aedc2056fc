use std::cmp::Ordering;

use crate::quiver::{ArrowId, GradedQuiver, Vertex};

/// A composable sequence of arrows, read left to right. The empty sequence
/// is the idempotent at `start`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    start: Vertex,
    end: Vertex,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn idempotent(v: Vertex) -> Self {
        Path { start: v, end: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &GradedQuiver, a: ArrowId) -> Self {
        let ar = q.arrow(a);
        Path { start: ar.source, end: ar.target, arrows: vec![a] }
    }

    /// Builds a path, checking composability. Returns `None` if two
    /// consecutive arrows do not compose or the first arrow does not leave
    /// `start`.
    pub fn from_arrows(q: &GradedQuiver, start: Vertex, arrows: Vec<ArrowId>) -> Option<Self> {
        let mut at = start;
        for &a in &arrows {
            let ar = q.arrow(a);
            if ar.source != at {
                return None;
            }
            at = ar.target;
        }
        Some(Path { start, end: at, arrows })
    }

    /// Trusted constructor; the caller guarantees composability.
    pub(crate) fn from_parts(start: Vertex, end: Vertex, arrows: Vec<ArrowId>) -> Self {
        Path { start, end, arrows }
    }

    pub fn start(&self) -> Vertex {
        self.start
    }

    pub fn end(&self) -> Vertex {
        self.end
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn hdeg(&self, q: &GradedQuiver) -> i32 {
        self.arrows.iter().map(|&a| q.arrow(a).hdeg).sum()
    }

    pub fn adeg(&self, q: &GradedQuiver) -> u32 {
        self.arrows.iter().map(|&a| q.arrow(a).adeg).sum()
    }

    /// Concatenation `self · other`, or `None` when the endpoints disagree.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.end != other.start {
            return None;
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Some(Path { start: self.start, end: other.end, arrows })
    }

    /// Whether the path visits `v`, including at its endpoints.
    pub fn touches(&self, q: &GradedQuiver, v: Vertex) -> bool {
        self.start == v || self.arrows.iter().any(|&a| q.arrow(a).target == v)
    }

    /// Sub-path of arrows `[from, to)`.
    pub fn slice(&self, q: &GradedQuiver, from: usize, to: usize) -> Path {
        let start = if from == 0 { self.start } else { q.arrow(self.arrows[from - 1]).target };
        let end = if to == 0 { self.start } else { q.arrow(self.arrows[to - 1]).target };
        Path { start, end, arrows: self.arrows[from..to].to_vec() }
    }

    pub fn display(&self, q: &GradedQuiver) -> String {
        if self.arrows.is_empty() {
            return format!("e{}", self.start);
        }
        self.arrows.iter().map(|&a| q.arrow(a).label.as_str()).collect::<Vec<_>>().join("·")
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then(self.start.cmp(&other.start))
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then(self.end.cmp(&other.end))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All paths with exactly `len` arrows, in canonical order.
pub fn paths_of_length(q: &GradedQuiver, len: usize) -> Vec<Path> {
    let mut layer: Vec<Path> = q.vertices().iter().map(|&v| Path::idempotent(v)).collect();
    let outgoing: std::collections::HashMap<Vertex, Vec<ArrowId>> =
        q.vertices().iter().map(|&v| (v, q.arrows_from(v))).collect();
    for _ in 0..len {
        let mut next = Vec::new();
        for p in &layer {
            for &a in &outgoing[&p.end] {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path { start: p.start, end: q.arrow(a).target, arrows });
            }
        }
        layer = next;
    }
    layer.sort();
    layer
}

/// All paths of Adams degree at most `max_adeg` and homological degree at
/// least `min_hdeg`, in canonical order. Stops with `Err(count)` as soon as
/// more than `cap` paths have been produced.
pub fn paths_bounded(q: &GradedQuiver, max_adeg: u32, min_hdeg: i32, cap: usize) -> Result<Vec<Path>, usize> {
    let outgoing: std::collections::HashMap<Vertex, Vec<ArrowId>> =
        q.vertices().iter().map(|&v| (v, q.arrows_from(v))).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Path, u32, i32)> = q.vertices().iter().map(|&v| (Path::idempotent(v), 0, 0)).collect();
    while let Some((p, a, h)) = stack.pop() {
        for &b in &outgoing[&p.end] {
            let ar = q.arrow(b);
            let (na, nh) = (a + ar.adeg, h + ar.hdeg);
            if na <= max_adeg && nh >= min_hdeg {
                let mut arrows = p.arrows.clone();
                arrows.push(b);
                stack.push((Path { start: p.start, end: ar.target, arrows }, na, nh));
            }
        }
        out.push(p);
        if out.len() > cap {
            return Err(out.len());
        }
    }
    out.sort();
    Ok(out)
}
