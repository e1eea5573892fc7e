//! Maximal chains of spheres, negative continued fractions and lens spaces.
//!
//! A chain component `m` stands for euler weight `-m`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::{int, Rational};
use crate::graph::{DecoratedGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainView {
    pub vertices: Vec<VertexId>,
    pub components: Vec<i64>,
    /// The first vertex has no neighbour outside the chain.
    pub exterior_left: bool,
    pub exterior_right: bool,
    /// Off-chain neighbour of each end, if any.
    pub left_node: Option<VertexId>,
    pub right_node: Option<VertexId>,
}

impl ChainView {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The chain is a whole connected component.
    pub fn is_standalone(&self) -> bool {
        self.exterior_left && self.exterior_right
    }

    /// Both orientations are equally canonical: the chain is standalone, or
    /// both of its ends attach to the same vertex.
    pub fn is_ambiguous(&self) -> bool {
        self.left_node == self.right_node
    }

    pub fn reversed(&self) -> ChainView {
        let mut vertices = self.vertices.clone();
        let mut components = self.components.clone();
        vertices.reverse();
        components.reverse();
        ChainView {
            vertices,
            components,
            exterior_left: self.exterior_right,
            exterior_right: self.exterior_left,
            left_node: self.right_node,
            right_node: self.left_node,
        }
    }

    pub fn is_contact_normal(&self) -> bool {
        is_contact_normal_chain(&self.components)
    }

    pub fn is_normal(&self) -> bool {
        is_normal_chain(&self.components)
    }

    pub fn min_vertex(&self) -> VertexId {
        *self.vertices.iter().min().expect("chains are non-empty")
    }
}

/// Vertices eligible for chains: spheres of degree at most 2.
pub fn chain_vertices(g: &DecoratedGraph) -> BTreeSet<VertexId> {
    g.vertices()
        .filter(|(v, d)| d.genus == 0 && g.degree(*v) <= 2)
        .map(|(v, _)| v)
        .collect()
}

/// All maximal chains, ordered by their smallest vertex id.
///
/// Exterior chains (one free end) run from the attached end to the
/// outermost vertex. Chains attached at both ends start at the end attached
/// to the lower id; standalone chains, and chains whose ends attach to the
/// same vertex, start at the lower end-vertex id. Circular configurations of
/// chain vertices are not chains and are skipped.
pub fn maximal_chains(g: &DecoratedGraph) -> Vec<ChainView> {
    let eligible = chain_vertices(g);
    let sub = g.induced(&eligible);
    let mut out = Vec::new();
    for comp in sub.components() {
        let ends: Vec<VertexId> = comp.iter().copied().filter(|&v| sub.degree(v) <= 1).collect();
        let Some(&start) = ends.first() else {
            // every vertex has two chain edges: a cycle
            continue;
        };
        let mut vertices = alloc::vec![start];
        let mut prev: Option<VertexId> = None;
        let mut cur = start;
        loop {
            let next = sub.incident(cur).into_iter().find(|&w| Some(w) != prev);
            match next {
                Some(w) => {
                    prev = Some(cur);
                    cur = w;
                    vertices.push(w);
                }
                None => break,
            }
        }
        out.push(orient(g, &sub, vertices));
    }
    out.sort_by_key(ChainView::min_vertex);
    out
}

fn orient(g: &DecoratedGraph, sub: &DecoratedGraph, vertices: Vec<VertexId>) -> ChainView {
    let first = vertices[0];
    let last = *vertices.last().unwrap();
    let outside = |v: VertexId| -> Vec<VertexId> {
        let mut ext = g.incident(v);
        for w in sub.incident(v) {
            let i = ext.iter().position(|&x| x == w).unwrap();
            ext.remove(i);
        }
        ext
    };
    let (left_node, right_node) = if first == last {
        let ext = outside(first);
        (ext.first().copied(), ext.get(1).copied())
    } else {
        (outside(first).first().copied(), outside(last).first().copied())
    };
    let components = vertices.iter().map(|&v| -g.vertex(v).unwrap().euler).collect();
    let view = ChainView {
        vertices,
        components,
        exterior_left: left_node.is_none(),
        exterior_right: right_node.is_none(),
        left_node,
        right_node,
    };
    let flip = match (view.left_node, view.right_node) {
        (None, Some(_)) => true,
        (Some(_), None) => false,
        (Some(a), Some(b)) if a != b => b < a,
        _ => last < first,
    };
    if flip {
        view.reversed()
    } else {
        view
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainError {
    Empty,
    /// A zero denominator turned up while evaluating the continued fraction.
    UndefinedFraction,
    /// The last component is 0 or 1.
    DegenerateEnd,
    NotStandalone,
    /// Normal chains exist only for rationals above 1.
    OutOfDomain,
    Overflow,
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChainError::Empty => "empty chain",
            ChainError::UndefinedFraction => "undefined continued fraction",
            ChainError::DegenerateEnd => "last chain component must not be 0 or 1",
            ChainError::NotStandalone => "chain is not a whole component",
            ChainError::OutOfDomain => "normal chains need a rational greater than 1",
            ChainError::Overflow => "chain component does not fit in 64 bits",
        })
    }
}

/// `[m1, ..., ml] = m1 - 1/(m2 - 1/(... - 1/ml))`, evaluated from the back.
pub fn cf_value(components: &[i64]) -> Result<Rational, ChainError> {
    let (&last, rest) = components.split_last().ok_or(ChainError::Empty)?;
    let mut x = int(last);
    for &m in rest.iter().rev() {
        if x.is_zero() {
            return Err(ChainError::UndefinedFraction);
        }
        x = int(m) - x.recip();
    }
    Ok(x)
}

/// `L(p, q)` with `0 < q < p` and `gcd(p, q) = 1`; `L(0, 1)` and `L(1, 0)`
/// mark `S¹×S²` and `S³`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LensInvariant {
    pub p: BigInt,
    pub q: BigInt,
}

impl LensInvariant {
    /// `L(p, q) ≅ L(p, q')` when `q' = q` or `q q' ≡ 1 (mod p)`.
    pub fn equivalent(&self, other: &LensInvariant) -> bool {
        if self.p != other.p {
            return false;
        }
        if self.q == other.q || self.p <= BigInt::one() {
            return true;
        }
        ((&self.q * &other.q) - BigInt::one()).mod_floor(&self.p).is_zero()
    }
}

impl fmt::Display for LensInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// Lens space bounded by a standalone chain, from `-p/q = [m1, ..., ml]`.
pub fn lens_of_chain(c: &ChainView) -> Result<LensInvariant, ChainError> {
    if !c.is_standalone() {
        return Err(ChainError::NotStandalone);
    }
    lens_of_components(&c.components)
}

/// [`lens_of_chain`] on bare components.
pub fn lens_of_components(components: &[i64]) -> Result<LensInvariant, ChainError> {
    let &last = components.last().ok_or(ChainError::Empty)?;
    if last == 0 || last == 1 {
        return Err(ChainError::DegenerateEnd);
    }
    let v = cf_value(components)?;
    let (a, b) = (v.numer().clone(), v.denom().clone());
    if a.is_zero() {
        return Ok(LensInvariant {
            p: BigInt::zero(),
            q: BigInt::one(),
        });
    }
    let p = a.abs();
    if p.is_one() {
        return Ok(LensInvariant { p, q: BigInt::zero() });
    }
    let q = if a.is_positive() { -b } else { b };
    Ok(LensInvariant { q: q.mod_floor(&p), p })
}

/// The unique chain with every component ≥ 2 whose value is `r`.
pub fn normal_chain_of_rational(r: &Rational) -> Result<Vec<i64>, ChainError> {
    if *r <= int(1) {
        return Err(ChainError::OutOfDomain);
    }
    let mut out = Vec::new();
    let mut x = r.clone();
    loop {
        let m = x.ceil();
        out.push(m.to_integer().to_i64().ok_or(ChainError::Overflow)?);
        if x.is_integer() {
            return Ok(out);
        }
        x = (m - x).recip();
    }
}

/// A leading block of zeros followed only by components ≥ 2.
pub fn is_contact_normal_chain(components: &[i64]) -> bool {
    let lead = components.iter().take_while(|&&m| m == 0).count();
    components[lead..].iter().all(|&m| m >= 2)
}

/// `m1 ∈ {0} ∪ [2, ∞)` and `mi ≥ 2` for `i > 1`.
pub fn is_normal_chain(components: &[i64]) -> bool {
    match components.split_first() {
        None => true,
        Some((&first, rest)) => (first == 0 || first >= 2) && rest.iter().all(|&m| m >= 2),
    }
}

/// Chains by their vertex set, for lookups.
pub fn chain_index(chains: &[ChainView]) -> BTreeMap<VertexId, usize> {
    chains
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.vertices.iter().map(move |&v| (v, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::graph::VertexDecoration;
    use crate::moves::{blow_up_exterior, blow_up_interior};
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn kt() -> DecoratedGraph {
        let mut g = DecoratedGraph::new();
        g.add_vertex(v(1), VertexDecoration::new(1, 0)).unwrap();
        g.add_vertex(v(2), VertexDecoration::new(1, 0)).unwrap();
        g.add_edge(v(1), v(2)).unwrap();
        g
    }

    #[test]
    fn kt_has_no_chains() {
        assert!(maximal_chains(&kt()).is_empty());
    }

    #[test]
    fn standalone_path() {
        let cs = maximal_chains(&DecoratedGraph::sphere_path(&[-2, -3, -2]));
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].components, vec![2, 3, 2]);
        assert_eq!(cs[0].vertices, vec![v(1), v(2), v(3)]);
        assert!(cs[0].is_standalone() && cs[0].is_ambiguous());
    }

    #[test]
    fn star_legs_end_at_leaves() {
        // centre 1 = (1,-1); legs 1-2-3 and 1-5-4
        let mut g = DecoratedGraph::new();
        g.add_vertex(v(1), VertexDecoration::new(1, -1)).unwrap();
        for (i, e) in [(2, -2), (3, -3), (4, -4), (5, -5)] {
            g.add_vertex(v(i), VertexDecoration::sphere(e)).unwrap();
        }
        for (a, b) in [(1, 2), (2, 3), (1, 5), (5, 4)] {
            g.add_edge(v(a), v(b)).unwrap();
        }
        let cs = maximal_chains(&g);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].vertices, vec![v(2), v(3)]);
        assert_eq!(cs[1].vertices, vec![v(5), v(4)]);
        assert_eq!(cs[1].components, vec![5, 4]);
        for c in &cs {
            assert_eq!(c.left_node, Some(v(1)));
            assert!(!c.exterior_left && c.exterior_right);
        }
    }

    #[test]
    fn interior_chain_starts_at_lower_attachment() {
        // 9 - 4 - 3 - 2 (genus 1 at both ends)
        let mut g = DecoratedGraph::new();
        g.add_vertex(v(9), VertexDecoration::new(1, 0)).unwrap();
        g.add_vertex(v(2), VertexDecoration::new(2, 0)).unwrap();
        g.add_vertex(v(4), VertexDecoration::sphere(-4)).unwrap();
        g.add_vertex(v(3), VertexDecoration::sphere(-3)).unwrap();
        for (a, b) in [(9, 4), (4, 3), (3, 2)] {
            g.add_edge(v(a), v(b)).unwrap();
        }
        let cs = maximal_chains(&g);
        assert_eq!(cs[0].vertices, vec![v(3), v(4)]);
        assert_eq!((cs[0].left_node, cs[0].right_node), (Some(v(2)), Some(v(9))));
    }

    #[test]
    fn cycles_are_skipped() {
        let mut c = DecoratedGraph::sphere_path(&[-2, -2, -2, -2]);
        c.add_edge(v(4), v(1)).unwrap();
        assert!(maximal_chains(&c).is_empty());
        let mut two = DecoratedGraph::sphere_path(&[-2, -2]);
        two.add_edge(v(1), v(2)).unwrap();
        assert!(maximal_chains(&two).is_empty());
    }

    #[test]
    fn branch_vertices_cut_chains() {
        // sphere of degree 3 is not a chain vertex
        let mut g = DecoratedGraph::sphere_path(&[-2, -1, -2]);
        g.add_vertex(v(4), VertexDecoration::sphere(-2)).unwrap();
        g.add_edge(v(2), v(4)).unwrap();
        let cs = maximal_chains(&g);
        assert_eq!(
            cs.iter().map(|c| c.vertices.clone()).collect::<Vec<_>>(),
            vec![vec![v(1)], vec![v(3)], vec![v(4)]]
        );
    }

    #[test]
    fn cf_examples() {
        assert_eq!(cf_value(&[2]), Ok(int(2)));
        assert_eq!(cf_value(&[2, 2]), Ok(ratio(3, 2)));
        assert_eq!(cf_value(&[3, 2, 2]), Ok(ratio(7, 3)));
        assert_eq!(cf_value(&[1, 0]), Err(ChainError::UndefinedFraction));
        assert_eq!(cf_value(&[]), Err(ChainError::Empty));
    }

    #[test]
    fn lens_examples() {
        let lens = |ms: &[i64]| lens_of_components(ms).unwrap().to_string();
        assert_eq!(lens(&[2]), "L(2,1)");
        assert_eq!(lens(&[2, 2]), "L(3,1)");
        assert_eq!(lens(&[3, 2]), "L(5,3)");
        assert_eq!(lens(&[2, 3]), "L(5,2)");
        assert_eq!(lens(&[-1]), "L(1,0)");
        assert_eq!(lens(&[2, 1, 2]), "L(0,1)");
        assert_eq!(lens_of_components(&[2, 1]), Err(ChainError::DegenerateEnd));
        assert_eq!(lens_of_components(&[2, 0]), Err(ChainError::DegenerateEnd));
    }

    #[test]
    fn lens_needs_whole_component() {
        let mut g = DecoratedGraph::sphere_path(&[-2, -2]);
        g.add_vertex(v(3), VertexDecoration::new(1, 0)).unwrap();
        g.add_edge(v(2), v(3)).unwrap();
        let c = &maximal_chains(&g)[0];
        assert_eq!(lens_of_chain(c), Err(ChainError::NotStandalone));
    }

    #[test]
    fn normal_chain_examples() {
        assert_eq!(normal_chain_of_rational(&int(2)), Ok(vec![2]));
        assert_eq!(normal_chain_of_rational(&ratio(3, 2)), Ok(vec![2, 2]));
        assert_eq!(normal_chain_of_rational(&ratio(7, 3)), Ok(vec![3, 2, 2]));
        assert_eq!(normal_chain_of_rational(&int(1)), Err(ChainError::OutOfDomain));
        assert_eq!(normal_chain_of_rational(&ratio(1, 2)), Err(ChainError::OutOfDomain));
    }

    #[test]
    fn normality_predicates() {
        assert!(is_contact_normal_chain(&[0, 0, 3, 2]));
        assert!(!is_contact_normal_chain(&[2, 0, 2]));
        assert!(is_contact_normal_chain(&[]));
        assert!(is_normal_chain(&[0, 2, 2]));
        assert!(!is_normal_chain(&[2, 1]));
        assert!(is_normal_chain(&[3]));
        assert!(!is_normal_chain(&[0, 0, 2]));
    }

    /// Ratio of continuants, built left to right.
    fn continuant_value(ms: &[i64]) -> Option<Rational> {
        let cont = |ms: &[i64]| {
            let (mut a, mut b) = (BigInt::one(), BigInt::zero());
            for &m in ms {
                let next = BigInt::from(m) * &a - &b;
                b = a;
                a = next;
            }
            a
        };
        let den = cont(&ms[1..]);
        if den.is_zero() {
            return None;
        }
        Some(Rational::new(cont(ms), den))
    }

    proptest! {
        #[test]
        fn round_trip(ms in proptest::collection::vec(2i64..=9, 1..=8)) {
            let r = cf_value(&ms).unwrap();
            prop_assert!(r > int(1));
            prop_assert_eq!(normal_chain_of_rational(&r).unwrap(), ms);
        }

        #[test]
        fn backward_matches_continuants(ms in proptest::collection::vec(-4i64..=6, 1..=7)) {
            if let Ok(x) = cf_value(&ms) {
                prop_assert_eq!(Some(x), continuant_value(&ms));
            }
        }

        #[test]
        fn chains_are_symmetric(ms in proptest::collection::vec(2i64..=9, 1..=8)) {
            let mut rev = ms.clone();
            rev.reverse();
            let a = lens_of_components(&ms).unwrap();
            let b = lens_of_components(&rev).unwrap();
            prop_assert!(a.equivalent(&b) && b.equivalent(&a));
            prop_assert!(a.q > BigInt::zero() && a.q < a.p);
            prop_assert!(a.p.gcd(&a.q).is_one());
        }

        #[test]
        fn blow_ups_keep_the_lens_space(ws in proptest::collection::vec(-6i64..=4, 1..=6)) {
            let g = DecoratedGraph::sphere_path(&ws);
            let Ok(before) = lens_of_chain(&maximal_chains(&g)[0]) else { return Ok(()) };
            let n = ws.len() as u32;
            let mut variants = vec![blow_up_exterior(&g, v(1)).unwrap(), blow_up_exterior(&g, v(n)).unwrap()];
            for i in 1..n {
                variants.push(blow_up_interior(&g, v(i), v(i + 1)).unwrap());
            }
            for h in variants {
                let cs = maximal_chains(&h);
                prop_assert_eq!(cs.len(), 1);
                let c = &cs[0];
                for cand in [c.clone(), c.reversed()] {
                    if let Ok(after) = lens_of_chain(&cand) {
                        prop_assert!(after.equivalent(&before), "{} vs {}", after, before);
                    }
                }
            }
        }

        #[test]
        fn every_chain_vertex_is_covered_once(g in crate::testutil::arb_graph(12, false)) {
            let cs = maximal_chains(&g);
            let mut seen = BTreeSet::new();
            for c in &cs {
                prop_assert_eq!(c.components.len(), c.vertices.len());
                for w in c.vertices.windows(2) {
                    prop_assert!(g.multiplicity(w[0], w[1]) == 1);
                }
                for &x in &c.vertices {
                    prop_assert!(seen.insert(x));
                    prop_assert!(g.vertex(x).unwrap().genus == 0 && g.degree(x) <= 2);
                }
            }
        }
    }
}
