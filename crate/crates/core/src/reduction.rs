//! Reduction drivers: the contact chain reduction (blow-ups and −1
//! blow-downs only) and the greedy topological reduction, with the
//! normal-form predicates and the obstruction test built on them.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::chains::{chain_vertices, is_contact_normal_chain, maximal_chains, ChainView};
use crate::graph::{isomorphic, DecoratedGraph, VertexId};
use crate::moves::{
    blow_down_minus_one, blow_down_plus_one, rp2_absorb, rp2_pattern, zero_chain_absorb, BlowUpWeight, Move,
    MoveRecord, SlideDirection, TransferEnd,
};

/// Budget of primitive moves a reduction may spend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fuel {
    max_moves: u64,
}

impl Fuel {
    /// `None` for a zero budget.
    pub fn new(max_moves: u64) -> Option<Fuel> {
        (max_moves > 0).then_some(Fuel { max_moves })
    }

    /// 10·(V + Σ|euler|)², at least 1.
    pub fn default_for(g: &DecoratedGraph) -> Fuel {
        let size = g.vertex_count() as u64 + g.total_abs_euler();
        Fuel {
            max_moves: size.saturating_mul(size).saturating_mul(10).max(1),
        }
    }

    pub fn max_moves(self) -> u64 {
        self.max_moves
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionMode {
    Contact,
    Topological,
}

impl ReductionMode {
    pub fn name(self) -> &'static str {
        match self {
            ReductionMode::Contact => "contact",
            ReductionMode::Topological => "topological",
        }
    }
}

impl fmt::Display for ReductionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub input: DecoratedGraph,
    pub output: DecoratedGraph,
    /// Primitive moves only, in order.
    pub trace: Vec<MoveRecord>,
    pub mode: ReductionMode,
    pub fuel_used: u64,
    pub normal_form_attained: bool,
    pub fuel_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionError {
    NonOrientable(VertexId),
}

impl fmt::Display for ReductionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionError::NonOrientable(v) => write!(f, "vertex {v} has a non-orientable base"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    /// One of the reductions ran out of fuel.
    Indeterminate {
        contact_exhausted: bool,
        topological_exhausted: bool,
    },
    NonOrientable(VertexId),
}

impl fmt::Display for ObstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObstructionError::Indeterminate {
                contact_exhausted,
                topological_exhausted,
            } => write!(
                f,
                "indeterminate: fuel exhausted (contact={contact_exhausted}, topological={topological_exhausted})"
            ),
            ObstructionError::NonOrientable(v) => write!(f, "vertex {v} has a non-orientable base"),
        }
    }
}

enum Halt {
    Fuel,
    /// The move did not apply.
    Move,
}

/// Applies moves one primitive at a time, recording each.
struct Driver {
    g: DecoratedGraph,
    trace: Vec<MoveRecord>,
    used: u64,
    max: u64,
}

impl Driver {
    fn new(g: &DecoratedGraph, fuel: Fuel) -> Driver {
        Driver {
            g: g.clone(),
            trace: Vec::new(),
            used: 0,
            max: fuel.max_moves,
        }
    }

    /// Runs `mv` (all or nothing) and returns the vertices it created.
    fn exec(&mut self, mv: Move) -> Result<Vec<VertexId>, Halt> {
        let weight = BlowUpWeight::default();
        let applied = mv.run(&self.g, &weight).map_err(|_| Halt::Move)?;
        if self.used + applied.primitives.len() as u64 > self.max {
            return Err(Halt::Fuel);
        }
        let mut created = Vec::new();
        for p in applied.primitives {
            let step = p.run(&self.g, &weight).map_err(|_| Halt::Move)?;
            let before = self.g.digest();
            self.g = step.graph;
            self.trace.push(MoveRecord {
                mv: p,
                before,
                after: self.g.digest(),
            });
            self.used += 1;
            created.extend(step.created);
        }
        Ok(created)
    }

    fn euler(&self, v: VertexId) -> i64 {
        self.g.vertex(v).expect("chain vertex").euler
    }

    fn into_report(
        self,
        input: &DecoratedGraph,
        mode: ReductionMode,
        attained: bool,
        exhausted: bool,
    ) -> ReductionReport {
        ReductionReport {
            input: input.clone(),
            output: self.g,
            trace: self.trace,
            mode,
            fuel_used: self.used,
            normal_form_attained: attained,
            fuel_exhausted: exhausted,
        }
    }
}

/// A chain being worked on, with the off-chain vertex at each end.
struct Walk {
    seq: Vec<VertexId>,
    left: Option<VertexId>,
    right: Option<VertexId>,
}

impl Walk {
    fn left_of(&self, i: usize) -> Option<VertexId> {
        if i > 0 {
            Some(self.seq[i - 1])
        } else {
            self.left
        }
    }

    fn right_of(&self, i: usize) -> Option<VertexId> {
        self.seq.get(i + 1).copied().or(self.right)
    }
}

fn end(v: Option<VertexId>) -> TransferEnd {
    v.map_or(TransferEnd::Nowhere, TransferEnd::Vertex)
}

fn leading_zeros(e: &[i64]) -> usize {
    e.iter().take_while(|&&x| x == 0).count()
}

enum ChainOutcome {
    Done,
    Stuck,
}

/// Contact normal in its canonical orientation, or in either one when the
/// orientation is ambiguous.
fn chain_contact_normal(c: &ChainView) -> bool {
    c.is_contact_normal() || (c.is_ambiguous() && c.reversed().is_contact_normal())
}

impl Driver {
    fn reduce_chain(&mut self, mut w: Walk) -> Result<ChainOutcome, Halt> {
        loop {
            if w.seq.is_empty() {
                return Ok(ChainOutcome::Done);
            }
            let mut e: Vec<i64> = w.seq.iter().map(|&v| self.euler(v)).collect();
            if w.left == w.right {
                let mut r = e.clone();
                r.reverse();
                if leading_zeros(&r) > leading_zeros(&e) {
                    w.seq.reverse();
                    e = r;
                }
            }
            let m: Vec<i64> = e.iter().map(|x| -x).collect();
            if is_contact_normal_chain(&m) {
                return Ok(ChainOutcome::Done);
            }

            // leftmost −1 that can be blown down
            let mut blown = false;
            for i in 0..e.len() {
                if e[i] != -1 {
                    continue;
                }
                match self.exec(Move::BlowDownMinusOne { v: w.seq[i] }) {
                    Ok(_) => {
                        w.seq.remove(i);
                        blown = true;
                        break;
                    }
                    Err(Halt::Move) => continue,
                    Err(halt) => return Err(halt),
                }
            }
            if blown {
                continue;
            }

            // a 0 past the leading block: push its left neighbour across,
            //    then slide the new 0-0 pair to the block
            let lead = leading_zeros(&e);
            if let Some(i) = (lead..e.len()).find(|&i| e[i] == 0) {
                let created = self.exec(Move::ZeroTransfer {
                    zero: w.seq[i],
                    from: TransferEnd::Vertex(w.seq[i - 1]),
                    to: end(w.right_of(i)),
                    amount: e[i - 1],
                })?;
                if let Some(&z) = created.last() {
                    w.seq[i] = z;
                }
                self.slide_left(&mut w, i - 1, lead)?;
                continue;
            }

            // the first positive weight
            let Some(p) = e.iter().position(|&x| x > 0) else {
                return Ok(ChainOutcome::Stuck);
            };
            let k = e[p];
            if p == lead && lead % 2 == 1 {
                // carry k out through the zeros on the left
                for q in (0..lead).rev().step_by(2) {
                    self.transfer_left(&mut w, q, k)?;
                }
            } else if p == lead && lead >= 2 {
                // carry 2 out of the zero next to k; one zero fewer in front
                for q in (0..lead - 1).rev().step_by(2) {
                    self.transfer_left(&mut w, q, 2)?;
                }
            } else {
                self.replace_positive(&mut w, p, k, lead)?;
            }
        }
    }

    /// Transfers `amount` from the right neighbour of the 0 at `q` to its
    /// left side.
    fn transfer_left(&mut self, w: &mut Walk, q: usize, amount: i64) -> Result<(), Halt> {
        let created = self.exec(Move::ZeroTransfer {
            zero: w.seq[q],
            from: TransferEnd::Vertex(w.seq[q + 1]),
            to: end(w.left_of(q)),
            amount,
        })?;
        if let Some(&z) = created.last() {
            w.seq[q] = z;
        }
        Ok(())
    }

    /// Moves the 0-0 pair at `(j, j+1)` left until it starts at `lead`.
    fn slide_left(&mut self, w: &mut Walk, mut j: usize, lead: usize) -> Result<(), Halt> {
        while j > lead {
            let created = self.exec(Move::Slide {
                left: w.seq[j],
                right: w.seq[j + 1],
                direction: SlideDirection::Left,
            })?;
            if let Some(&z) = created.last() {
                w.seq[j] = z;
            }
            j -= 1;
        }
        Ok(())
    }

    /// Blows up the k-sphere at `p` on its left until it is +1, turns the
    /// +1 into a 0-0 pair and slides the pair to the leading block.
    fn replace_positive(&mut self, w: &mut Walk, mut p: usize, k: i64, lead: usize) -> Result<(), Halt> {
        for _ in 1..k {
            let v = w.seq[p];
            let created = match w.left_of(p) {
                Some(a) => self.exec(Move::BlowUpInterior { a, b: v })?,
                None => self.exec(Move::BlowUpExterior { v })?,
            };
            w.seq.insert(p, created[0]);
            p += 1;
        }
        let v = w.seq[p];
        match (w.left_of(p), w.right_of(p)) {
            (Some(a), Some(_)) => {
                let first = self.g.incident(v)[0];
                let created = self.exec(Move::ChainReplace { v })?;
                let (l, r) = if first == a {
                    (created[0], created[1])
                } else {
                    (created[1], created[0])
                };
                w.seq.splice(p..=p, [l, r]);
            }
            (a, b) => {
                // a chain end: an exterior blow-up supplies the missing side
                let u = self.exec(Move::BlowUpExterior { v })?[0];
                let created = self.exec(Move::ZeroTransfer {
                    zero: v,
                    from: end(a.or(b)),
                    to: TransferEnd::Vertex(u),
                    amount: 1,
                })?;
                let z = *created.last().expect("unit transfer creates a vertex");
                if a.is_none() && b.is_some() {
                    w.seq.splice(p..=p, [u, z]);
                } else {
                    w.seq.splice(p..=p, [z, u]);
                }
            }
        }
        self.slide_left(w, p, lead)
    }
}

/// Contact chain reduction: every maximal chain (ascending by minimal vertex
/// id) is brought to a block of leading 0-spheres followed by weights ≤ −2,
/// using only blow-ups and −1 blow-downs.
pub fn contact_reduce(g: &DecoratedGraph, fuel: Fuel) -> Result<ReductionReport, ReductionError> {
    if let Some((v, _)) = g.vertices().find(|(_, d)| !d.is_orientable()) {
        return Err(ReductionError::NonOrientable(v));
    }
    let mut d = Driver::new(g, fuel);
    let mut stuck: BTreeSet<BTreeSet<VertexId>> = BTreeSet::new();
    let mut exhausted = false;
    loop {
        // Klein-bottle pieces are contact normal as they stand
        let klein = klein_vertices(&d.g);
        let next = maximal_chains(&d.g).into_iter().find(|c| {
            !chain_contact_normal(c)
                && !c.vertices.iter().all(|v| klein.contains(v))
                && !stuck.contains(&c.vertices.iter().copied().collect::<BTreeSet<_>>())
        });
        let Some(c) = next else { break };
        let walk = Walk {
            seq: c.vertices.clone(),
            left: c.left_node,
            right: c.right_node,
        };
        match d.reduce_chain(walk) {
            Ok(ChainOutcome::Done) => {}
            Ok(ChainOutcome::Stuck) | Err(Halt::Move) => {
                // re-read the chain: it may have changed before getting stuck
                let here = maximal_chains(&d.g)
                    .into_iter()
                    .find(|x| !chain_contact_normal(x) && x.vertices.iter().any(|v| c.vertices.contains(v)))
                    .map_or(c.vertices.iter().copied().collect(), |x| {
                        x.vertices.into_iter().collect()
                    });
                if !stuck.insert(here) {
                    break;
                }
            }
            Err(Halt::Fuel) => {
                exhausted = true;
                break;
            }
        }
    }
    let attained = !exhausted && is_contact_normal(&d.g);
    Ok(d.into_report(g, ReductionMode::Contact, attained, exhausted))
}

/// The topological move applicable at `v` in priority order, if any. An
/// isolated +1 sphere is left alone.
fn topological_move_at(g: &DecoratedGraph, v: VertexId, skip_rp2: bool) -> Option<Move> {
    if blow_down_minus_one(g, v).is_ok() {
        return Some(Move::BlowDownMinusOne { v });
    }
    if g.degree(v) > 0 && blow_down_plus_one(g, v).is_ok() {
        return Some(Move::BlowDownPlusOne { v });
    }
    if zero_chain_absorb(g, v).is_ok() {
        return Some(Move::ZeroChainAbsorb { v });
    }
    if !skip_rp2 && rp2_absorb(g, v).is_ok() {
        return Some(Move::Rp2Absorb { center: v });
    }
    None
}

/// Greedy fixpoint of −1 / +1 blow-downs, 0-chain absorption and
/// RP²-absorption: moves in that priority, vertices ascending.
pub fn topological_reduce(g: &DecoratedGraph, fuel: Fuel) -> ReductionReport {
    type Probe = fn(&DecoratedGraph, VertexId) -> Option<Move>;
    let probes: [Probe; 4] = [
        |g, v| {
            blow_down_minus_one(g, v)
                .is_ok()
                .then_some(Move::BlowDownMinusOne { v })
        },
        |g, v| (g.degree(v) > 0 && blow_down_plus_one(g, v).is_ok()).then_some(Move::BlowDownPlusOne { v }),
        |g, v| zero_chain_absorb(g, v).is_ok().then_some(Move::ZeroChainAbsorb { v }),
        |g, v| rp2_absorb(g, v).is_ok().then_some(Move::Rp2Absorb { center: v }),
    ];
    let mut d = Driver::new(g, fuel);
    let mut exhausted = false;
    'outer: loop {
        for probe in probes {
            let ids: Vec<VertexId> = d.g.vertex_ids().collect();
            for v in ids {
                if let Some(mv) = probe(&d.g, v) {
                    match d.exec(mv) {
                        Ok(_) => continue 'outer,
                        Err(Halt::Fuel) => {
                            exhausted = true;
                            break 'outer;
                        }
                        Err(Halt::Move) => unreachable!("probed move applies"),
                    }
                }
            }
        }
        break;
    }
    d.into_report(g, ReductionMode::Topological, !exhausted, exhausted)
}

/// Components of the allowed shape: a sphere path ending in a −1 centre
/// that carries two −2 leaves.
fn permitted_components(g: &DecoratedGraph) -> BTreeSet<VertexId> {
    let eligible = chain_vertices(g);
    let mut out = BTreeSet::new();
    for comp in g.components() {
        let set: BTreeSet<VertexId> = comp.iter().copied().collect();
        let edges = g.induced(&set).edge_count();
        let shaped = comp.iter().any(|&c| {
            is_fork(g, c) && edges + 1 == comp.len() && comp.iter().all(|&v| v == c || eligible.contains(&v))
        });
        if shaped {
            out.extend(comp);
        }
    }
    out
}

/// A −1 sphere of degree 3 with two −2 sphere leaves.
fn is_fork(g: &DecoratedGraph, c: VertexId) -> bool {
    match rp2_pattern(g, c) {
        Some((leaves, _)) => {
            g.vertex(c).unwrap().euler == -1 && leaves.iter().all(|&l| g.vertex(l).unwrap().euler == -2)
        }
        None => false,
    }
}

/// Every vertex is a degree-2 sphere: a circular chain.
fn is_circular(g: &DecoratedGraph, comp: &[VertexId]) -> bool {
    comp.iter()
        .all(|&v| g.vertex(v).unwrap().genus == 0 && g.degree(v) == 2)
}

/// Topological normal form for the implemented move set: no move applies
/// (an isolated +1 sphere counts as reduced; RP²-absorption is allowed in
/// the permitted component), chain weights are ≤ −2, the (−1; −2, −2) fork
/// only occurs in the permitted component, and no component is a cycle of
/// −2 spheres.
pub fn is_tpc_normal(g: &DecoratedGraph) -> bool {
    let permitted = permitted_components(g);
    for v in g.vertex_ids() {
        if topological_move_at(g, v, permitted.contains(&v)).is_some() {
            return false;
        }
        if is_fork(g, v) && !permitted.contains(&v) {
            return false;
        }
    }
    if !maximal_chains(g).iter().all(|c| c.components.iter().all(|&m| m >= 2)) {
        return false;
    }
    !g.components()
        .iter()
        .any(|comp| is_circular(g, comp) && comp.iter().all(|&v| g.vertex(v).unwrap().euler == -2))
}

/// Centres and leaves of Klein-bottle pieces.
fn klein_vertices(g: &DecoratedGraph) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::new();
    for v in g.vertex_ids() {
        if let Some((leaves, _)) = rp2_pattern(g, v) {
            out.insert(v);
            out.extend(leaves);
        }
    }
    out
}

/// Topological normal form up to the contact exceptions: chains may begin
/// with a block of 0-spheres and Klein-bottle pieces are allowed. Circular
/// components of spheres are out of scope and ignored.
pub fn is_contact_normal(g: &DecoratedGraph) -> bool {
    let mut exempt = klein_vertices(g);
    for comp in g.components() {
        if is_circular(g, &comp) {
            exempt.extend(comp);
        }
    }
    let permitted = permitted_components(g);
    for c in maximal_chains(g) {
        if c.vertices.iter().all(|v| exempt.contains(v)) {
            continue;
        }
        let c = if c.is_contact_normal() {
            c
        } else if c.is_ambiguous() && c.reversed().is_contact_normal() {
            c.reversed()
        } else {
            return false;
        };
        let lead = c.components.iter().take_while(|&&m| m == 0).count();
        exempt.extend(&c.vertices[..lead]);
    }
    g.vertex_ids().filter(|v| !exempt.contains(v)).all(|v| {
        topological_move_at(g, v, permitted.contains(&v)).is_none() && (!is_fork(g, v) || permitted.contains(&v))
    })
}

/// Whether the contact and topological reductions of `g` differ (as
/// decorated graphs, areas ignored).
pub fn obstructed(g: &DecoratedGraph, fuel: Fuel) -> Result<bool, ObstructionError> {
    let contact =
        contact_reduce(g, fuel).map_err(|ReductionError::NonOrientable(v)| ObstructionError::NonOrientable(v))?;
    let top = topological_reduce(g, fuel);
    if contact.fuel_exhausted || top.fuel_exhausted {
        return Err(ObstructionError::Indeterminate {
            contact_exhausted: contact.fuel_exhausted,
            topological_exhausted: top.fuel_exhausted,
        });
    }
    Ok(!isomorphic(&contact.output, &top.output))
}
