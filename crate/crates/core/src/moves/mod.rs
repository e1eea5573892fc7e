//! Graph moves of the plumbing calculus.
//!
//! Every move is a pure rewrite: it checks its own applicability and either
//! returns a new graph or a [`MoveError`]. The primitive moves are the ±1
//! blow-ups/blow-downs, 0-chain absorption and RP²-absorption; 0-curve
//! transfer, sliding and chain replacement are derived moves realised as
//! sequences of −1 blow-ups and blow-downs.
//!
//! New vertices always receive [`DecoratedGraph::fresh_id`], so replaying a
//! move sequence reproduces ids exactly.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use crate::exact::{ratio, Rational};
use crate::graph::{DecoratedGraph, GraphError, VertexDecoration, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    BlowUpInterior,
    BlowUpExterior,
    BlowDownMinusOne,
    BlowDownPlusOne,
    ZeroChainAbsorb,
    Rp2Absorb,
    ZeroTransfer,
    Slide,
    ChainReplace,
}

impl MoveKind {
    pub const ALL: [MoveKind; 9] = [
        MoveKind::BlowUpInterior,
        MoveKind::BlowUpExterior,
        MoveKind::BlowDownMinusOne,
        MoveKind::BlowDownPlusOne,
        MoveKind::ZeroChainAbsorb,
        MoveKind::Rp2Absorb,
        MoveKind::ZeroTransfer,
        MoveKind::Slide,
        MoveKind::ChainReplace,
    ];

    /// Whether the move preserves the contact structure on the boundary.
    /// Only −1 blow-ups/blow-downs and the moves built from them do.
    pub fn contact_safe(self) -> bool {
        matches!(
            self,
            MoveKind::BlowUpInterior
                | MoveKind::BlowUpExterior
                | MoveKind::BlowDownMinusOne
                | MoveKind::ZeroTransfer
                | MoveKind::Slide
                | MoveKind::ChainReplace
        )
    }

    pub fn is_derived(self) -> bool {
        matches!(self, MoveKind::ZeroTransfer | MoveKind::Slide | MoveKind::ChainReplace)
    }

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::BlowUpInterior => "blow-up-interior",
            MoveKind::BlowUpExterior => "blow-up-exterior",
            MoveKind::BlowDownMinusOne => "blow-down-minus-one",
            MoveKind::BlowDownPlusOne => "blow-down-plus-one",
            MoveKind::ZeroChainAbsorb => "zero-chain-absorb",
            MoveKind::Rp2Absorb => "rp2-absorb",
            MoveKind::ZeroTransfer => "zero-transfer",
            MoveKind::Slide => "slide",
            MoveKind::ChainReplace => "chain-replace",
        }
    }

    pub fn from_name(s: &str) -> Option<MoveKind> {
        MoveKind::ALL.iter().copied().find(|k| k.name() == s)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One side of a 0-curve transfer: a neighbouring vertex, or nothing at all
/// when the 0-curve ends its chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransferEnd {
    Vertex(VertexId),
    Nowhere,
}

impl fmt::Display for TransferEnd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransferEnd::Vertex(v) => write!(f, "{v}"),
            TransferEnd::Nowhere => f.write_str("nowhere"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlideDirection {
    Left,
    Right,
}

/// Area given to the exceptional sphere of a blow-up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BlowUpWeight {
    /// This fraction of the smallest area among the blown-up vertices.
    Fraction(Rational),
    Fixed(Rational),
}

impl Default for BlowUpWeight {
    fn default() -> Self {
        BlowUpWeight::Fraction(ratio(1, 1000))
    }
}

impl BlowUpWeight {
    /// `None` unless every incident vertex carries an area.
    fn epsilon(&self, incident: &[Option<&Rational>]) -> Option<Rational> {
        let mut min: Option<&Rational> = None;
        for a in incident {
            let a = (*a)?;
            if min.is_none_or(|m| a < m) {
                min = Some(a);
            }
        }
        let min = min?;
        Some(match self {
            BlowUpWeight::Fraction(f) => f * min,
            BlowUpWeight::Fixed(e) => e.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveError {
    Site(GraphError),
    NotApplicable {
        kind: MoveKind,
        reason: &'static str,
    },
    /// The rewrite would put a loop on a vertex, leaving the SNC⁺ world.
    WouldCreateLoop {
        kind: MoveKind,
        at: VertexId,
    },
    AreaExhausted(VertexId),
}

impl From<GraphError> for MoveError {
    fn from(e: GraphError) -> Self {
        MoveError::Site(e)
    }
}

impl fmt::Display for MoveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveError::Site(e) => write!(f, "bad site: {e}"),
            MoveError::NotApplicable { kind, reason } => write!(f, "{kind} not applicable: {reason}"),
            MoveError::WouldCreateLoop { kind, at } => {
                write!(f, "{kind} would create a loop at vertex {at}")
            }
            MoveError::AreaExhausted(v) => write!(f, "blow-up exhausts the area of vertex {v}"),
        }
    }
}

fn not_applicable(kind: MoveKind, reason: &'static str) -> MoveError {
    MoveError::NotApplicable { kind, reason }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    BlowUpInterior {
        a: VertexId,
        b: VertexId,
    },
    BlowUpExterior {
        v: VertexId,
    },
    BlowDownMinusOne {
        v: VertexId,
    },
    BlowDownPlusOne {
        v: VertexId,
    },
    ZeroChainAbsorb {
        v: VertexId,
    },
    Rp2Absorb {
        center: VertexId,
    },
    ZeroTransfer {
        zero: VertexId,
        from: TransferEnd,
        to: TransferEnd,
        amount: i64,
    },
    Slide {
        left: VertexId,
        right: VertexId,
        direction: SlideDirection,
    },
    ChainReplace {
        v: VertexId,
    },
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ ", self.kind())?;
        match self {
            Move::BlowUpInterior { a, b } => write!(f, "{a}-{b}"),
            Move::BlowUpExterior { v }
            | Move::BlowDownMinusOne { v }
            | Move::BlowDownPlusOne { v }
            | Move::ZeroChainAbsorb { v }
            | Move::ChainReplace { v } => write!(f, "{v}"),
            Move::Rp2Absorb { center } => write!(f, "{center}"),
            Move::ZeroTransfer { zero, from, to, amount } => write!(f, "{zero} from {from} to {to} amount {amount}"),
            Move::Slide { left, right, direction } => {
                let d = match direction {
                    SlideDirection::Left => "left",
                    SlideDirection::Right => "right",
                };
                write!(f, "{left}-{right} {d}")
            }
        }
    }
}

/// Result of running a move: the new graph, the primitive moves it unfolds
/// into (the move itself when primitive), and the vertices it created.
#[derive(Debug, Clone)]
pub struct Applied {
    pub graph: DecoratedGraph,
    pub primitives: Vec<Move>,
    pub created: Vec<VertexId>,
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::BlowUpInterior { .. } => MoveKind::BlowUpInterior,
            Move::BlowUpExterior { .. } => MoveKind::BlowUpExterior,
            Move::BlowDownMinusOne { .. } => MoveKind::BlowDownMinusOne,
            Move::BlowDownPlusOne { .. } => MoveKind::BlowDownPlusOne,
            Move::ZeroChainAbsorb { .. } => MoveKind::ZeroChainAbsorb,
            Move::Rp2Absorb { .. } => MoveKind::Rp2Absorb,
            Move::ZeroTransfer { .. } => MoveKind::ZeroTransfer,
            Move::Slide { .. } => MoveKind::Slide,
            Move::ChainReplace { .. } => MoveKind::ChainReplace,
        }
    }

    pub fn apply(&self, g: &DecoratedGraph) -> Result<DecoratedGraph, MoveError> {
        self.run(g, &BlowUpWeight::default()).map(|a| a.graph)
    }

    pub fn apply_with(&self, g: &DecoratedGraph, weight: &BlowUpWeight) -> Result<DecoratedGraph, MoveError> {
        self.run(g, weight).map(|a| a.graph)
    }

    pub fn run(&self, g: &DecoratedGraph, weight: &BlowUpWeight) -> Result<Applied, MoveError> {
        let primitive = |graph: DecoratedGraph, created: Option<VertexId>| Applied {
            graph,
            primitives: alloc::vec![self.clone()],
            created: created.into_iter().collect(),
        };
        match *self {
            Move::BlowUpInterior { a, b } => {
                let fresh = g.fresh_id();
                Ok(primitive(blow_up_interior_with(g, a, b, weight)?, Some(fresh)))
            }
            Move::BlowUpExterior { v } => {
                let fresh = g.fresh_id();
                Ok(primitive(blow_up_exterior_with(g, v, weight)?, Some(fresh)))
            }
            Move::BlowDownMinusOne { v } => Ok(primitive(blow_down(g, v, -1)?, None)),
            Move::BlowDownPlusOne { v } => Ok(primitive(blow_down(g, v, 1)?, None)),
            Move::ZeroChainAbsorb { v } => Ok(primitive(zero_chain_absorb(g, v)?, None)),
            Move::Rp2Absorb { center } => Ok(primitive(rp2_absorb(g, center)?, None)),
            Move::ZeroTransfer { zero, from, to, amount } => {
                let steps = transfer_steps(g, zero, from, to, amount)?;
                Self::unfold(g, weight, steps)
            }
            Move::Slide { left, right, direction } => {
                let transfer = slide_transfer(g, left, right, direction)?;
                let Move::ZeroTransfer { zero, from, to, amount } = transfer else {
                    unreachable!()
                };
                let steps = transfer_steps(g, zero, from, to, amount)?;
                Self::unfold(g, weight, steps)
            }
            Move::ChainReplace { v } => {
                let steps = chain_replace_steps(g, v)?;
                Self::unfold(g, weight, steps)
            }
        }
    }

    /// Runs a generator of primitive steps; each step may depend on the
    /// vertex created by the previous one.
    fn unfold(g: &DecoratedGraph, weight: &BlowUpWeight, steps: Vec<Step>) -> Result<Applied, MoveError> {
        let mut graph = g.clone();
        let mut primitives = Vec::new();
        let mut created: Vec<VertexId> = Vec::new();
        for step in steps {
            let mv = step.resolve(&created);
            let out = mv.run(&graph, weight)?;
            graph = out.graph;
            primitives.push(mv);
            created.extend(out.created);
        }
        Ok(Applied {
            graph,
            primitives,
            created,
        })
    }
}

/// A primitive step whose site may refer to a vertex created by an earlier
/// step of the same unfolding.
#[derive(Debug, Clone, Copy)]
enum Step {
    UpInterior(Slot, Slot),
    UpExterior(Slot),
    DownMinusOne(Slot),
}

#[derive(Debug, Clone, Copy)]
enum Slot {
    Id(VertexId),
    /// The `n`-th vertex created so far.
    Created(usize),
}

impl Slot {
    fn get(self, created: &[VertexId]) -> VertexId {
        match self {
            Slot::Id(v) => v,
            Slot::Created(n) => created[n],
        }
    }
}

impl Step {
    fn resolve(self, created: &[VertexId]) -> Move {
        match self {
            Step::DownMinusOne(s) => Move::BlowDownMinusOne { v: s.get(created) },
            Step::UpInterior(a, b) => Move::BlowUpInterior {
                a: a.get(created),
                b: b.get(created),
            },
            Step::UpExterior(s) => Move::BlowUpExterior { v: s.get(created) },
        }
    }
}

fn deco(g: &DecoratedGraph, v: VertexId) -> Result<&VertexDecoration, MoveError> {
    g.vertex(v).ok_or(MoveError::Site(GraphError::MissingVertex(v)))
}

fn take_area(g: &mut DecoratedGraph, v: VertexId, eps: &Option<Rational>) -> Result<(), MoveError> {
    if let Some(e) = eps {
        let d = g.vertex_mut(v).unwrap();
        if let Some(a) = d.area.as_mut() {
            *a -= e;
            if !a.is_positive() {
                return Err(MoveError::AreaExhausted(v));
            }
        }
    }
    Ok(())
}

pub fn blow_up_interior(g: &DecoratedGraph, a: VertexId, b: VertexId) -> Result<DecoratedGraph, MoveError> {
    blow_up_interior_with(g, a, b, &BlowUpWeight::default())
}

/// Blows up one copy of the edge `{a, b}`: the edge is replaced by a new
/// (0, −1) sphere adjacent to both ends, whose weights drop by one.
pub fn blow_up_interior_with(
    g: &DecoratedGraph,
    a: VertexId,
    b: VertexId,
    weight: &BlowUpWeight,
) -> Result<DecoratedGraph, MoveError> {
    let kind = MoveKind::BlowUpInterior;
    if a == b {
        return Err(not_applicable(kind, "edge ends coincide"));
    }
    let (da, db) = (deco(g, a)?, deco(g, b)?);
    if g.multiplicity(a, b) == 0 {
        return Err(MoveError::Site(GraphError::MissingEdge(a, b)));
    }
    let eps = weight.epsilon(&[da.area.as_ref(), db.area.as_ref()]);
    let mut out = g.clone();
    let u = out.fresh_id();
    out.remove_edge(a, b)?;
    let mut new = VertexDecoration::sphere(-1);
    new.area = eps.clone();
    out.add_vertex(u, new)?;
    out.add_edge(u, a)?;
    out.add_edge(u, b)?;
    for v in [a, b] {
        out.vertex_mut(v).unwrap().euler -= 1;
        take_area(&mut out, v, &eps)?;
    }
    Ok(out)
}

pub fn blow_up_exterior(g: &DecoratedGraph, v: VertexId) -> Result<DecoratedGraph, MoveError> {
    blow_up_exterior_with(g, v, &BlowUpWeight::default())
}

/// Attaches a new (0, −1) leaf to `v` and lowers its weight by one.
pub fn blow_up_exterior_with(
    g: &DecoratedGraph,
    v: VertexId,
    weight: &BlowUpWeight,
) -> Result<DecoratedGraph, MoveError> {
    let dv = deco(g, v)?;
    let eps = weight.epsilon(&[dv.area.as_ref()]);
    let mut out = g.clone();
    let u = out.fresh_id();
    let mut new = VertexDecoration::sphere(-1);
    new.area = eps.clone();
    out.add_vertex(u, new)?;
    out.add_edge(u, v)?;
    out.vertex_mut(v).unwrap().euler -= 1;
    take_area(&mut out, v, &eps)?;
    Ok(out)
}

pub fn blow_down_minus_one(g: &DecoratedGraph, v: VertexId) -> Result<DecoratedGraph, MoveError> {
    blow_down(g, v, -1)
}

/// Topological only: changes the contact structure.
pub fn blow_down_plus_one(g: &DecoratedGraph, v: VertexId) -> Result<DecoratedGraph, MoveError> {
    blow_down(g, v, 1)
}

fn blow_down(g: &DecoratedGraph, v: VertexId, sign: i64) -> Result<DecoratedGraph, MoveError> {
    let kind = if sign < 0 {
        MoveKind::BlowDownMinusOne
    } else {
        MoveKind::BlowDownPlusOne
    };
    let d = deco(g, v)?;
    if d.genus != 0 {
        return Err(not_applicable(kind, "vertex is not a sphere"));
    }
    if d.euler != sign {
        return Err(not_applicable(kind, "wrong self-intersection"));
    }
    let nbrs = g.incident(v);
    if nbrs.len() > 2 {
        return Err(not_applicable(kind, "degree above 2"));
    }
    if nbrs.len() == 2 && nbrs[0] == nbrs[1] {
        return Err(MoveError::WouldCreateLoop { kind, at: nbrs[0] });
    }
    let area = d.area.clone();
    let mut out = g.clone();
    out.remove_vertex(v)?;
    for &w in &nbrs {
        let dw = out.vertex_mut(w).unwrap();
        dw.euler -= sign;
        if let (Some(aw), Some(av)) = (dw.area.as_mut(), area.as_ref()) {
            *aw += av;
        }
    }
    if let [x, y] = nbrs[..] {
        out.add_edge(x, y)?;
    }
    Ok(out)
}

/// Genus of the connected sum of two bases in the signed encoding
/// (negative = number of cross-caps).
fn genus_sum(a: i64, b: i64) -> i64 {
    match (a >= 0, b >= 0) {
        (true, true) => a + b,
        (false, false) => a + b,
        (true, false) => b - 2 * a,
        (false, true) => a - 2 * b,
    }
}

/// Topological only. Removes a degree-2 (0, 0) sphere and merges its two
/// neighbours into the lower-id one: genera add, weights add, edges are
/// inherited.
pub fn zero_chain_absorb(g: &DecoratedGraph, v: VertexId) -> Result<DecoratedGraph, MoveError> {
    let kind = MoveKind::ZeroChainAbsorb;
    let d = deco(g, v)?;
    if d.genus != 0 || d.euler != 0 {
        return Err(not_applicable(kind, "vertex is not a 0-sphere"));
    }
    let nbrs = g.incident(v);
    if nbrs.len() != 2 {
        return Err(not_applicable(kind, "degree is not 2"));
    }
    let (x, y) = (nbrs[0], nbrs[1]);
    if x == y || g.multiplicity(x, y) > 0 {
        return Err(MoveError::WouldCreateLoop { kind, at: x });
    }
    let mut out = g.clone();
    out.remove_vertex(v)?;
    let dy = out.vertex(y).unwrap().clone();
    let y_edges = out.incident(y);
    out.remove_vertex(y)?;
    {
        let dx = out.vertex_mut(x).unwrap();
        dx.genus = genus_sum(dx.genus, dy.genus);
        dx.euler += dy.euler;
        dx.area = match (dx.area.take(), dy.area) {
            (Some(p), Some(q)) => Some(p + q),
            _ => None,
        };
    }
    for w in y_edges {
        out.add_edge(x, w)?;
    }
    Ok(out)
}

/// Topological only. A genus-0 centre of weight (δ₁+δ₂)/2 carrying two
/// sphere leaves of weights 2δ₁, 2δ₂ (δᵢ = ±1) and one further edge to `x`
/// is deleted together with its leaves; `x` gains a cross-cap.
pub fn rp2_absorb(g: &DecoratedGraph, center: VertexId) -> Result<DecoratedGraph, MoveError> {
    let kind = MoveKind::Rp2Absorb;
    let (leaves, x) = rp2_pattern(g, center).ok_or(not_applicable(kind, "no RP² pattern at vertex"))?;
    let mut out = g.clone();
    out.remove_vertex(center)?;
    for l in leaves {
        out.remove_vertex(l)?;
    }
    let dx = out.vertex_mut(x).unwrap();
    dx.genus = if dx.genus >= 0 {
        -(2 * dx.genus + 1)
    } else {
        dx.genus - 1
    };
    Ok(out)
}

/// Matches the RP²-absorption / Klein-piece pattern at `center`, returning
/// the two leaves and the remaining neighbour.
pub fn rp2_pattern(g: &DecoratedGraph, center: VertexId) -> Option<([VertexId; 2], VertexId)> {
    let d = g.vertex(center)?;
    if d.genus != 0 {
        return None;
    }
    let nbrs = g.incident(center);
    if nbrs.len() != 3 {
        return None;
    }
    let is_leaf = |w: VertexId| {
        let dw = g.vertex(w).unwrap();
        dw.genus == 0 && g.degree(w) == 1 && (dw.euler == 2 || dw.euler == -2)
    };
    for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
        let (l1, l2, x) = (nbrs[i], nbrs[j], nbrs[k]);
        if l1 == l2 || x == l1 || x == l2 || !is_leaf(l1) || !is_leaf(l2) {
            continue;
        }
        let delta_sum = g.vertex(l1).unwrap().euler / 2 + g.vertex(l2).unwrap().euler / 2;
        if 2 * d.euler == delta_sum {
            return Some(([l1, l2], x));
        }
    }
    None
}

fn check_transfer(g: &DecoratedGraph, zero: VertexId, from: TransferEnd, to: TransferEnd) -> Result<(), MoveError> {
    let kind = MoveKind::ZeroTransfer;
    let d = deco(g, zero)?;
    if d.genus != 0 || d.euler != 0 {
        return Err(not_applicable(kind, "pivot is not a 0-sphere"));
    }
    let nbrs = g.incident(zero);
    let mut ends: Vec<VertexId> = [from, to]
        .iter()
        .filter_map(|e| match e {
            TransferEnd::Vertex(v) => Some(*v),
            TransferEnd::Nowhere => None,
        })
        .collect();
    ends.sort();
    if ends.is_empty() {
        return Err(not_applicable(kind, "transfer needs at least one neighbour"));
    }
    if ends.len() == 2 && ends[0] == ends[1] {
        return Err(not_applicable(kind, "source and target coincide"));
    }
    if nbrs != ends {
        return Err(not_applicable(kind, "ends are not the neighbours of the 0-sphere"));
    }
    Ok(())
}

fn transfer_steps(
    g: &DecoratedGraph,
    zero: VertexId,
    from: TransferEnd,
    to: TransferEnd,
    amount: i64,
) -> Result<Vec<Step>, MoveError> {
    check_transfer(g, zero, from, to)?;
    let (src, _dst) = if amount >= 0 { (from, to) } else { (to, from) };
    let mut steps = Vec::new();
    let mut pivot = Slot::Id(zero);
    for unit in 0..amount.unsigned_abs() as usize {
        match src {
            TransferEnd::Vertex(s) => steps.push(Step::UpInterior(Slot::Id(s), pivot)),
            TransferEnd::Nowhere => steps.push(Step::UpExterior(pivot)),
        }
        steps.push(Step::DownMinusOne(pivot));
        // the blow-up of this unit created the next 0-sphere
        pivot = Slot::Created(unit);
    }
    Ok(steps)
}

/// 0-curve transfer: moves `amount` units of weight from `from` to `to`
/// across the 0-sphere `zero` (negative amounts move the other way).
/// Either end may be [`TransferEnd::Nowhere`] when the 0-sphere is a leaf.
///
/// Each unit is one −1 blow-up next to the 0-sphere and one blow-down of the
/// old 0-sphere, so the 0-sphere's id is replaced by a fresh one whenever
/// `amount != 0`.
pub fn zero_transfer(
    g: &DecoratedGraph,
    zero: VertexId,
    from: TransferEnd,
    to: TransferEnd,
    amount: i64,
) -> Result<DecoratedGraph, MoveError> {
    Move::ZeroTransfer { zero, from, to, amount }.apply(g)
}

fn slide_transfer(
    g: &DecoratedGraph,
    left: VertexId,
    right: VertexId,
    direction: SlideDirection,
) -> Result<Move, MoveError> {
    let kind = MoveKind::Slide;
    for z in [left, right] {
        let d = deco(g, z)?;
        if d.genus != 0 || d.euler != 0 {
            return Err(not_applicable(kind, "slide needs two 0-spheres"));
        }
    }
    if g.multiplicity(left, right) != 1 {
        return Err(not_applicable(kind, "0-spheres are not adjacent"));
    }
    let (pivot, target) = match direction {
        SlideDirection::Left => (left, right),
        SlideDirection::Right => (right, left),
    };
    let nbrs = g.incident(pivot);
    if nbrs.len() != 2 {
        return Err(not_applicable(kind, "pivot 0-sphere must have degree 2"));
    }
    let source = if nbrs[0] == target { nbrs[1] } else { nbrs[0] };
    if source == target {
        return Err(not_applicable(kind, "pivot neighbours coincide"));
    }
    let amount = g.vertex(source).unwrap().euler;
    Ok(Move::ZeroTransfer {
        zero: pivot,
        from: TransferEnd::Vertex(source),
        to: TransferEnd::Vertex(target),
        amount,
    })
}

/// Sliding: `(A, 0, 0, B)` becomes `(0, 0, A, B)` (left) or `(A, B, 0, 0)`
/// (right) by transferring all of `A` (resp. `B`) across the near 0-sphere.
/// `left` and `right` name the two adjacent 0-spheres; only the pivot
/// (the one next to the moving weight) needs degree 2.
pub fn slide(
    g: &DecoratedGraph,
    left: VertexId,
    right: VertexId,
    direction: SlideDirection,
) -> Result<DecoratedGraph, MoveError> {
    Move::Slide { left, right, direction }.apply(g)
}

fn chain_replace_steps(g: &DecoratedGraph, v: VertexId) -> Result<Vec<Step>, MoveError> {
    let kind = MoveKind::ChainReplace;
    let d = deco(g, v)?;
    if d.genus != 0 || d.euler != 1 {
        return Err(not_applicable(kind, "vertex is not a +1 sphere"));
    }
    let nbrs = g.incident(v);
    if nbrs.len() != 2 {
        return Err(not_applicable(kind, "degree is not 2"));
    }
    Ok(alloc::vec![
        Step::UpInterior(Slot::Id(nbrs[0]), Slot::Id(v)),
        Step::UpInterior(Slot::Id(v), Slot::Id(nbrs[1])),
        Step::DownMinusOne(Slot::Id(v)),
    ])
}

/// Chain replacement: `(A, +1, B)` becomes `(A−1, 0, 0, B−1)` via a blow-up
/// on each side of the +1 sphere followed by blowing it down.
pub fn chain_replace(g: &DecoratedGraph, v: VertexId) -> Result<DecoratedGraph, MoveError> {
    Move::ChainReplace { v }.apply(g)
}

/// Audit entry: the move and digests of the graph before and after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    pub mv: Move,
    pub before: u64,
    pub after: u64,
}

impl MoveRecord {
    pub fn kind(&self) -> MoveKind {
        self.mv.kind()
    }

    /// Re-applies the move to `g`, checking both digests.
    pub fn replay(&self, g: &DecoratedGraph) -> Result<DecoratedGraph, ReplayError> {
        if g.digest() != self.before {
            return Err(ReplayError::BeforeMismatch);
        }
        let out = self.mv.apply(g).map_err(ReplayError::Move)?;
        if out.digest() != self.after {
            return Err(ReplayError::AfterMismatch);
        }
        Ok(out)
    }
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "move {}", self.mv)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReplayError {
    BeforeMismatch,
    AfterMismatch,
    Move(MoveError),
}

/// Replays a trace from `start`, returning the final graph.
pub fn replay(start: &DecoratedGraph, trace: &[MoveRecord]) -> Result<DecoratedGraph, ReplayError> {
    let mut g = start.clone();
    for r in trace {
        g = r.replay(&g)?;
    }
    Ok(g)
}
