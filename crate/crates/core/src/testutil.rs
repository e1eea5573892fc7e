//! Proptest strategies shared by the unit tests.

use alloc::vec;
use alloc::vec::Vec;

use proptest::prelude::*;

use crate::exact::int;
use crate::graph::{DecoratedGraph, VertexDecoration, VertexId};
use crate::moves::{Move, SlideDirection, TransferEnd};

/// Loop-free multigraphs with up to `max_n` vertices, mostly spheres, eulers
/// in [−5, 5], optionally carrying integer areas.
pub fn arb_graph(max_n: usize, with_areas: bool) -> impl Strategy<Value = DecoratedGraph> {
    (1..=max_n)
        .prop_flat_map(move |n| {
            (
                proptest::collection::vec((0u8..10, 0i64..=2, -5i64..=5, 1i64..=50), n),
                proptest::collection::vec((0..n, 0..n), 0..=n + 2),
            )
        })
        .prop_map(move |(decos, edges)| {
            let mut g = DecoratedGraph::new();
            for (i, &(sphere, genus, euler, area)) in decos.iter().enumerate() {
                let genus = if sphere < 7 { 0 } else { genus };
                let mut d = VertexDecoration::new(genus, euler);
                if with_areas {
                    d.area = Some(int(area));
                }
                g.add_vertex(VertexId(i as u32 + 1), d).unwrap();
            }
            for (a, b) in edges {
                if a != b {
                    g.add_edge(VertexId(a as u32 + 1), VertexId(b as u32 + 1)).unwrap();
                }
            }
            g
        })
}

pub fn eulers(g: &DecoratedGraph) -> Vec<i64> {
    g.vertices().map(|(_, d)| d.euler).collect()
}

/// Every site at which some move applies, with a few transfer amounts.
pub fn candidate_moves(g: &DecoratedGraph) -> Vec<Move> {
    let mut out = Vec::new();
    for (k, _) in g.edges() {
        let (a, b) = k.ends();
        out.push(Move::BlowUpInterior { a, b });
    }
    for x in g.vertex_ids() {
        out.push(Move::BlowUpExterior { v: x });
        out.push(Move::BlowDownMinusOne { v: x });
        out.push(Move::BlowDownPlusOne { v: x });
        out.push(Move::ZeroChainAbsorb { v: x });
        out.push(Move::Rp2Absorb { center: x });
        out.push(Move::ChainReplace { v: x });
        let nbrs = g.incident(x);
        let ends: Vec<(TransferEnd, TransferEnd)> = match nbrs[..] {
            [a] => vec![
                (TransferEnd::Vertex(a), TransferEnd::Nowhere),
                (TransferEnd::Nowhere, TransferEnd::Vertex(a)),
            ],
            [a, b] => vec![
                (TransferEnd::Vertex(a), TransferEnd::Vertex(b)),
                (TransferEnd::Vertex(b), TransferEnd::Vertex(a)),
            ],
            _ => vec![],
        };
        for (from, to) in ends {
            for amount in [-2, 1, 3] {
                out.push(Move::ZeroTransfer {
                    zero: x,
                    from,
                    to,
                    amount,
                });
            }
        }
        for (w, _) in g.neighbors(x) {
            for direction in [SlideDirection::Left, SlideDirection::Right] {
                out.push(Move::Slide {
                    left: x,
                    right: w,
                    direction,
                });
            }
        }
    }
    out
}

/// Forests of spheres and surfaces; extra edges only join positive-genus
/// vertices, so every cycle passes through a non-chain vertex.
pub fn arb_tree_graph(max_n: usize) -> impl Strategy<Value = DecoratedGraph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec((0u8..10, 1i64..=2, -5i64..=5, any::<prop::sample::Index>()), n),
                proptest::collection::vec((any::<prop::sample::Index>(), any::<prop::sample::Index>()), 0..=3),
            )
        })
        .prop_map(|(decos, extra)| {
            let mut g = DecoratedGraph::new();
            for (i, &(sphere, genus, euler, parent)) in decos.iter().enumerate() {
                let genus = if sphere < 7 { 0 } else { genus };
                let id = VertexId(i as u32 + 1);
                g.add_vertex(id, VertexDecoration::new(genus, euler)).unwrap();
                // roughly one vertex in five starts a new tree
                if i > 0 && parent.index(5) > 0 {
                    g.add_edge(VertexId(parent.index(i) as u32 + 1), id).unwrap();
                }
            }
            let surfaces: Vec<VertexId> = g.vertices().filter(|(_, d)| d.genus > 0).map(|(v, _)| v).collect();
            if !surfaces.is_empty() {
                for (a, b) in extra {
                    let (a, b) = (a.get(&surfaces), b.get(&surfaces));
                    if a != b {
                        g.add_edge(*a, *b).unwrap();
                    }
                }
            }
            g
        })
}
