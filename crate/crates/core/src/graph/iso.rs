use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::DecoratedGraph;

/// Dense view: decoration keys and a multiplicity matrix indexed 0..n.
struct Dense {
    deco: Vec<(i64, i64)>,
    mult: Vec<Vec<usize>>,
}

impl Dense {
    fn new(g: &DecoratedGraph) -> Self {
        let ids: Vec<_> = g.vertex_ids().collect();
        let index: BTreeMap<_, _> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut mult = alloc::vec![alloc::vec![0usize; n]; n];
        for (k, m) in g.edges() {
            let (a, b) = k.ends();
            let (i, j) = (index[&a], index[&b]);
            mult[i][j] = m;
            mult[j][i] = m;
        }
        let deco = g.vertices().map(|(_, d)| (d.genus, d.euler)).collect();
        Dense { deco, mult }
    }

    fn len(&self) -> usize {
        self.deco.len()
    }
}

/// Colour refinement run on both graphs with a shared palette, so equal
/// colours mean equal refined signatures.
fn refine(a: &Dense, b: &Dense) -> (Vec<usize>, Vec<usize>) {
    type Sig = (usize, Vec<(usize, usize)>);
    let initial = |d: &Dense, i: usize| {
        let degree: usize = d.mult[i].iter().sum();
        (degree, d.deco[i].0, d.deco[i].1)
    };
    let mut palette: BTreeMap<(usize, i64, i64), usize> = BTreeMap::new();
    for i in 0..a.len() {
        let k = palette.len();
        palette.entry(initial(a, i)).or_insert(k);
    }
    for i in 0..b.len() {
        let k = palette.len();
        palette.entry(initial(b, i)).or_insert(k);
    }
    let mut ca: Vec<usize> = (0..a.len()).map(|i| palette[&initial(a, i)]).collect();
    let mut cb: Vec<usize> = (0..b.len()).map(|i| palette[&initial(b, i)]).collect();
    let mut classes = palette.len();

    loop {
        let sig = |d: &Dense, c: &[usize], i: usize| -> Sig {
            let mut nb: Vec<(usize, usize)> = (0..d.len())
                .filter(|&j| d.mult[i][j] > 0)
                .map(|j| (c[j], d.mult[i][j]))
                .collect();
            nb.sort_unstable();
            (c[i], nb)
        };
        let sa: Vec<Sig> = (0..a.len()).map(|i| sig(a, &ca, i)).collect();
        let sb: Vec<Sig> = (0..b.len()).map(|i| sig(b, &cb, i)).collect();
        let mut pal: BTreeMap<&Sig, usize> = BTreeMap::new();
        for s in sa.iter().chain(sb.iter()) {
            let k = pal.len();
            pal.entry(s).or_insert(k);
        }
        let next = pal.len();
        ca = sa.iter().map(|s| pal[s]).collect();
        cb = sb.iter().map(|s| pal[s]).collect();
        if next == classes {
            return (ca, cb);
        }
        classes = next;
    }
}

/// Decoration- and multiplicity-preserving isomorphism test. Areas are not
/// compared.
pub fn isomorphic(a: &DecoratedGraph, b: &DecoratedGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let da = Dense::new(a);
    let db = Dense::new(b);
    let (ca, cb) = refine(&da, &db);

    let mut hist_a = ca.clone();
    let mut hist_b = cb.clone();
    hist_a.sort_unstable();
    hist_b.sort_unstable();
    if hist_a != hist_b {
        return false;
    }

    let mut class_size: BTreeMap<usize, usize> = BTreeMap::new();
    for &c in &ca {
        *class_size.entry(c).or_insert(0) += 1;
    }
    // smallest classes first, then prefer vertices adjacent to already placed ones
    let mut order: Vec<usize> = Vec::with_capacity(da.len());
    let mut placed = alloc::vec![false; da.len()];
    while order.len() < da.len() {
        let next = (0..da.len())
            .filter(|&i| !placed[i])
            .min_by_key(|&i| {
                let linked = order.iter().any(|&j| da.mult[i][j] > 0);
                (!linked, class_size[&ca[i]], i)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    let mut map = alloc::vec![usize::MAX; da.len()];
    let mut used = alloc::vec![false; db.len()];
    extend(&da, &db, &ca, &cb, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Dense,
    b: &Dense,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..b.len() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| a.mult[v][u] == b.mult[w][map[u]]);
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
