//! Seeded random graph corpora for the test suites. Everything is drawn
//! from a ChaCha8 stream, so a seed pins down the corpus exactly.

use plumbing_core::exact::int;
use plumbing_core::graph::{DecoratedGraph, VertexDecoration, VertexId};
use plumbing_core::moves::{Move, SlideDirection, TransferEnd};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn decoration(rng: &mut ChaCha8Rng) -> VertexDecoration {
    // sphere-heavy: seven in ten vertices are spheres
    let genus = if rng.gen_bool(0.7) { 0 } else { rng.gen_range(1..=3) };
    VertexDecoration::new(genus, rng.gen_range(-5..=5))
}

/// Up to `max_n` vertices, eulers in [−5, 5], genera in [0, 3], up to
/// `n + 2` random edges (parallel edges allowed, loops never).
pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> DecoratedGraph {
    let n = rng.gen_range(1..=max_n);
    let mut g = DecoratedGraph::new();
    for i in 0..n {
        g.add_vertex(VertexId(i as u32 + 1), decoration(rng)).unwrap();
    }
    for _ in 0..rng.gen_range(0..=n + 2) {
        let a = rng.gen_range(1..=n as u32);
        let b = rng.gen_range(1..=n as u32);
        if a != b {
            g.add_edge(VertexId(a), VertexId(b)).unwrap();
        }
    }
    g
}

/// A forest (about one vertex in five starts a new tree) plus up to three
/// extra edges between positive-genus vertices, so every cycle runs
/// through a surface and chains never close up.
pub fn tree_like_graph(rng: &mut ChaCha8Rng, max_n: usize) -> DecoratedGraph {
    let n = rng.gen_range(1..=max_n);
    let mut g = DecoratedGraph::new();
    for i in 0..n {
        let id = VertexId(i as u32 + 1);
        g.add_vertex(id, decoration(rng)).unwrap();
        if i > 0 && rng.gen_range(0..5) > 0 {
            g.add_edge(VertexId(rng.gen_range(1..=i as u32)), id).unwrap();
        }
    }
    let surfaces: Vec<VertexId> = g.vertices().filter(|(_, d)| d.genus > 0).map(|(v, _)| v).collect();
    if surfaces.len() >= 2 {
        for _ in 0..rng.gen_range(0..=3) {
            let a = surfaces[rng.gen_range(0..surfaces.len())];
            let b = surfaces[rng.gen_range(0..surfaces.len())];
            if a != b {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Integer areas in [1, 50] on every vertex.
pub fn with_areas(rng: &mut ChaCha8Rng, mut g: DecoratedGraph) -> DecoratedGraph {
    let ids: Vec<VertexId> = g.vertex_ids().collect();
    for v in ids {
        g.vertex_mut(v).unwrap().area = Some(int(rng.gen_range(1..=50)));
    }
    g
}

pub fn corpus(
    seed: u64,
    count: usize,
    mut generate: impl FnMut(&mut ChaCha8Rng) -> DecoratedGraph,
) -> Vec<DecoratedGraph> {
    let mut r = rng(seed);
    (0..count).map(|_| generate(&mut r)).collect()
}

/// Every site of `g` at which a move might be tried: all edges and
/// vertices, transfers of −2, 1 and 3 in both directions, slides towards
/// every neighbour. Most candidates are not applicable.
pub fn move_sites(g: &DecoratedGraph) -> Vec<Move> {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_are_reproducible() {
        let a = corpus(7, 20, |r| random_graph(r, 12));
        let b = corpus(7, 20, |r| random_graph(r, 12));
        assert_eq!(a, b);
        assert_ne!(a, corpus(8, 20, |r| random_graph(r, 12)));
    }

    #[test]
    fn tree_like_cycles_pass_through_surfaces() {
        for g in corpus(1, 200, |r| tree_like_graph(r, 12)) {
            let surface = |v: VertexId| g.vertex(v).unwrap().genus > 0;
            let mut h = g.clone();
            for (k, n) in g.edges() {
                let (a, b) = k.ends();
                if surface(a) && surface(b) {
                    for _ in 0..n {
                        h.remove_edge(a, b).unwrap();
                    }
                }
            }
            // what is left is a forest
            assert_eq!(h.edge_count() + h.components().len(), h.vertex_count());
        }
    }
}
