//! Decorated plumbing graphs.
//!
//! A graph is a loop-free multigraph whose vertices carry a genus, an Euler
//! weight (self-intersection number) and optionally a symplectic area. Edges
//! are stored as a multiset of unordered vertex pairs so that one copy of a
//! repeated edge can be blown up on its own.

mod iso;

pub use iso::isomorphic;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::exact::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `(genus, euler)` plus optional area.
///
/// A negative genus `-n` stands for a non-orientable base with `n`
/// cross-caps; only RP²-absorption produces one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexDecoration {
    pub genus: i64,
    pub euler: i64,
    pub area: Option<Rational>,
}

impl VertexDecoration {
    pub fn new(genus: i64, euler: i64) -> Self {
        VertexDecoration {
            genus,
            euler,
            area: None,
        }
    }

    pub fn sphere(euler: i64) -> Self {
        Self::new(0, euler)
    }

    pub fn with_area(mut self, area: Rational) -> Self {
        self.area = Some(area);
        self
    }

    pub fn is_sphere(&self) -> bool {
        self.genus == 0
    }

    pub fn is_orientable(&self) -> bool {
        self.genus >= 0
    }
}

/// Unordered vertex pair with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    lo: VertexId,
    hi: VertexId,
}

impl EdgeKey {
    /// `None` for a loop.
    pub fn new(a: VertexId, b: VertexId) -> Option<Self> {
        match a.cmp(&b) {
            core::cmp::Ordering::Less => Some(EdgeKey { lo: a, hi: b }),
            core::cmp::Ordering::Greater => Some(EdgeKey { lo: b, hi: a }),
            core::cmp::Ordering::Equal => None,
        }
    }

    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.lo, self.hi)
    }

    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        if v == self.lo {
            Some(self.hi)
        } else if v == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    Loop(VertexId),
    DuplicateVertex(VertexId),
    MissingVertex(VertexId),
    MissingEdge(VertexId, VertexId),
    NonPositiveArea(VertexId),
    NonOrientable(VertexId),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::Loop(v) => write!(f, "loop at vertex {v}"),
            GraphError::DuplicateVertex(v) => write!(f, "duplicate vertex id {v}"),
            GraphError::MissingVertex(v) => write!(f, "no vertex with id {v}"),
            GraphError::MissingEdge(a, b) => write!(f, "no edge between {a} and {b}"),
            GraphError::NonPositiveArea(v) => write!(f, "vertex {v} has non-positive area"),
            GraphError::NonOrientable(v) => write!(f, "vertex {v} has non-orientable genus"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DecoratedGraph {
    vertices: BTreeMap<VertexId, VertexDecoration>,
    edges: BTreeMap<EdgeKey, usize>,
}

impl DecoratedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on spheres `1..=n` with the given Euler weights joined in a path.
    pub fn sphere_path(eulers: &[i64]) -> Self {
        let mut g = Self::new();
        let mut prev = None;
        for (i, &e) in eulers.iter().enumerate() {
            let id = VertexId(i as u32 + 1);
            g.add_vertex(id, VertexDecoration::sphere(e)).unwrap();
            if let Some(p) = prev {
                g.add_edge(p, id).unwrap();
            }
            prev = Some(id);
        }
        g
    }

    pub fn add_vertex(&mut self, id: VertexId, deco: VertexDecoration) -> Result<(), GraphError> {
        if self.vertices.contains_key(&id) {
            return Err(GraphError::DuplicateVertex(id));
        }
        self.vertices.insert(id, deco);
        Ok(())
    }

    /// Adds one copy of the edge `{a, b}`.
    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        let key = EdgeKey::new(a, b).ok_or(GraphError::Loop(a))?;
        for v in [a, b] {
            if !self.vertices.contains_key(&v) {
                return Err(GraphError::MissingVertex(v));
            }
        }
        *self.edges.entry(key).or_insert(0) += 1;
        Ok(())
    }

    /// Removes one copy of the edge `{a, b}`.
    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) -> Result<(), GraphError> {
        let key = EdgeKey::new(a, b).ok_or(GraphError::Loop(a))?;
        match self.edges.get_mut(&key) {
            Some(n) if *n > 1 => *n -= 1,
            Some(_) => {
                self.edges.remove(&key);
            }
            None => return Err(GraphError::MissingEdge(a, b)),
        }
        Ok(())
    }

    /// Removes a vertex with all incident edges and returns its decoration.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<VertexDecoration, GraphError> {
        let deco = self.vertices.remove(&v).ok_or(GraphError::MissingVertex(v))?;
        self.edges.retain(|k, _| k.lo != v && k.hi != v);
        Ok(deco)
    }

    pub fn vertex(&self, v: VertexId) -> Option<&VertexDecoration> {
        self.vertices.get(&v)
    }

    pub fn vertex_mut(&mut self, v: VertexId) -> Option<&mut VertexDecoration> {
        self.vertices.get_mut(&v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &VertexDecoration)> + '_ {
        self.vertices.iter().map(|(&id, d)| (id, d))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    /// Distinct edges with multiplicity, in ascending key order.
    pub fn edges(&self) -> impl Iterator<Item = (EdgeKey, usize)> + '_ {
        self.edges.iter().map(|(&k, &n)| (k, n))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        EdgeKey::new(a, b)
            .and_then(|k| self.edges.get(&k).copied())
            .unwrap_or(0)
    }

    /// Neighbours of `v` with edge multiplicities, ascending by id.
    pub fn neighbors(&self, v: VertexId) -> Vec<(VertexId, usize)> {
        self.edges
            .iter()
            .filter_map(|(k, &n)| k.other(v).map(|w| (w, n)))
            .collect()
    }

    /// Neighbours listed once per incident edge, ascending.
    pub fn incident(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        for (w, n) in self.neighbors(v) {
            out.extend(core::iter::repeat_n(w, n));
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbors(v).iter().map(|&(_, n)| n).sum()
    }

    pub fn max_id(&self) -> Option<VertexId> {
        self.vertices.keys().next_back().copied()
    }

    /// Id for the next new vertex: one past the current maximum (1 when empty).
    pub fn fresh_id(&self) -> VertexId {
        VertexId(self.max_id().map_or(1, |v| v.0 + 1))
    }

    /// Connected components, each sorted, ordered by their smallest id.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut adj: BTreeMap<VertexId, Vec<VertexId>> = self.vertices.keys().map(|&v| (v, Vec::new())).collect();
        for k in self.edges.keys() {
            adj.get_mut(&k.lo).unwrap().push(k.hi);
            adj.get_mut(&k.hi).unwrap().push(k.lo);
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in self.vertices.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = alloc::vec![start];
            let mut stack = alloc::vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[&v] {
                    if seen.insert(w) {
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on `keep`.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> DecoratedGraph {
        DecoratedGraph {
            vertices: self
                .vertices
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, d)| (v, d.clone()))
                .collect(),
            edges: self
                .edges
                .iter()
                .filter(|(k, _)| keep.contains(&k.lo) && keep.contains(&k.hi))
                .map(|(&k, &n)| (k, n))
                .collect(),
        }
    }

    pub fn total_abs_euler(&self) -> u64 {
        self.vertices.values().map(|d| d.euler.unsigned_abs()).sum()
    }

    pub fn is_orientable(&self) -> bool {
        self.vertices.values().all(VertexDecoration::is_orientable)
    }

    pub fn has_all_areas(&self) -> bool {
        self.vertices.values().all(|d| d.area.is_some())
    }

    /// Drops every area annotation.
    pub fn without_areas(&self) -> DecoratedGraph {
        let mut g = self.clone();
        for d in g.vertices.values_mut() {
            d.area = None;
        }
        g
    }

    /// Checks the SNC⁺ input conditions: orientable genera and positive areas.
    pub fn validate_snc_plus(&self) -> Result<(), GraphError> {
        for (&v, d) in &self.vertices {
            if d.genus < 0 {
                return Err(GraphError::NonOrientable(v));
            }
            if let Some(a) = &d.area {
                if !a.is_positive() {
                    return Err(GraphError::NonPositiveArea(v));
                }
            }
        }
        Ok(())
    }

    /// 64-bit FNV-1a digest of the full graph (ids, decorations, areas,
    /// edges). Stable across runs and platforms.
    pub fn digest(&self) -> u64 {
        let mut h = Fnv::new();
        for (v, d) in &self.vertices {
            h.write(b"v");
            h.write(&v.0.to_le_bytes());
            h.write(&d.genus.to_le_bytes());
            h.write(&d.euler.to_le_bytes());
            if let Some(a) = &d.area {
                h.write(b"a");
                h.write(&a.numer().to_signed_bytes_le());
                h.write(b"/");
                h.write(&a.denom().to_signed_bytes_le());
            }
        }
        for (k, n) in &self.edges {
            h.write(b"e");
            h.write(&k.lo.0.to_le_bytes());
            h.write(&k.hi.0.to_le_bytes());
            h.write(&(*n as u64).to_le_bytes());
        }
        h.finish()
    }
}

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= u64::from(b);
            self.0 = self.0.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }

    fn finish(&self) -> u64 {
        self.0
    }
}
