//! Automorphism groups by individualization and refinement.
//!
//! The search walks the leftmost path of the search tree first. On the way
//! back up, at every level it determines the orbit of the individualized
//! vertex under the pointwise stabilizer of the earlier individualized
//! vertices, by looking for a leaf equivalent to the leftmost one below every
//! candidate image. The group order is the product of those orbit lengths.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{bits, UnionFind};

/// Exact automorphism data for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutResult {
    pub order: BigUint,
    /// Vertex orbits, each sorted, ordered by smallest element.
    pub orbits: Vec<Vec<usize>>,
    /// Automorphisms found during the search; `perm[v]` is the image of `v`.
    /// They generate the full group but need not be a minimal generating set.
    pub generators: Vec<Vec<usize>>,
}

impl AutResult {
    /// The orbit containing `v`.
    pub fn orbit_of(&self, v: usize) -> &[usize] {
        self.orbits.iter().find(|o| o.binary_search(&v).is_ok()).map(Vec::as_slice).unwrap_or(&[])
    }
}

type Cells = Vec<Vec<usize>>;

/// Refines an ordered partition until every cell is equitable with respect
/// to every other cell. Fragments of a split cell are ordered by ascending
/// neighbor count, so the result commutes with relabeling.
pub(crate) fn refine(g: &Graph, cells: &mut Cells) {
    'outer: loop {
        for s in 0..cells.len() {
            let splitter = cells[s].iter().fold(0u64, |m, &v| m | 1 << v);
            for x in 0..cells.len() {
                if cells[x].len() < 2 {
                    continue;
                }
                let count = |v: usize| (g.row(v) & splitter).count_ones();
                let first = count(cells[x][0]);
                if cells[x].iter().all(|&v| count(v) == first) {
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> = cells[x].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut fragments: Cells = Vec::new();
                let mut last = None;
                for (c, v) in keyed {
                    if last != Some(c) {
                        fragments.push(Vec::new());
                        last = Some(c);
                    }
                    fragments.last_mut().unwrap().push(v);
                }
                cells.splice(x..=x, fragments);
                continue 'outer;
            }
        }
        return;
    }
}

/// First cell of maximum size among the non-singleton cells.
fn target_cell(cells: &Cells) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (i, c) in cells.iter().enumerate() {
        if c.len() > 1 && best.is_none_or(|b| c.len() > cells[b].len()) {
            best = Some(i);
        }
    }
    best
}

fn individualize(cells: &Cells, t: usize, v: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..t]);
    out.push(alloc::vec![v]);
    out.push(cells[t].iter().copied().filter(|&w| w != v).collect());
    out.extend_from_slice(&cells[t + 1..]);
    out
}

fn shape(cells: &Cells) -> Vec<usize> {
    cells.iter().map(Vec::len).collect()
}

fn leaf(cells: &Cells) -> Vec<usize> {
    cells.iter().map(|c| c[0]).collect()
}

fn unit_partition(n: usize) -> Cells {
    alloc::vec![(0..n).collect()]
}

pub(crate) fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    (0..g.n()).all(|u| {
        let image = bits(g.row(u)).fold(0u64, |acc, w| acc | 1 << perm[w]);
        image == g.row(perm[u])
    })
}

/// Permutation sending `from[i]` to `to[i]`.
fn mapping(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut perm = alloc::vec![0; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        perm[a] = b;
    }
    perm
}

struct Search<'g> {
    g: &'g Graph,
    shapes: Vec<Vec<usize>>,
    first_leaf: Vec<usize>,
    /// Generators tagged with the depth of the node at which they were found;
    /// a generator found at depth `d` fixes the first `d` individualized vertices.
    generators: Vec<(usize, Vec<usize>)>,
}

impl Search<'_> {
    fn first_path(&mut self, depth: usize, mut cells: Cells) -> BigUint {
        refine(self.g, &mut cells);
        self.shapes.push(shape(&cells));
        let Some(t) = target_cell(&cells) else {
            self.first_leaf = leaf(&cells);
            return BigUint::one();
        };
        let v = *cells[t].iter().min().unwrap();
        let below = self.first_path(depth + 1, individualize(&cells, t, v));

        let mut orbits = UnionFind::new(self.g.n());
        for (_, perm) in self.generators.iter().filter(|(d, _)| *d >= depth) {
            for (a, &b) in perm.iter().enumerate() {
                orbits.union(a, b);
            }
        }
        let mut candidates = cells[t].clone();
        candidates.sort_unstable();
        for &w in &candidates {
            if orbits.find(w) == orbits.find(v) {
                continue;
            }
            if let Some(perm) = self.equivalent_leaf(depth + 1, individualize(&cells, t, w)) {
                for (a, &b) in perm.iter().enumerate() {
                    orbits.union(a, b);
                }
                self.generators.push((depth, perm));
            }
        }
        let orbit_len = candidates.iter().filter(|&&w| orbits.find(w) == orbits.find(v)).count();
        below * BigUint::from(orbit_len)
    }

    /// Searches the subtree rooted at `cells` for a leaf whose correspondence
    /// with the first leaf is an automorphism.
    fn equivalent_leaf(&self, depth: usize, mut cells: Cells) -> Option<Vec<usize>> {
        refine(self.g, &mut cells);
        if self.shapes.get(depth).is_none_or(|s| *s != shape(&cells)) {
            return None;
        }
        let Some(t) = target_cell(&cells) else {
            let perm = mapping(&self.first_leaf, &leaf(&cells));
            return is_automorphism(self.g, &perm).then_some(perm);
        };
        let mut candidates = cells[t].clone();
        candidates.sort_unstable();
        candidates.into_iter().find_map(|w| self.equivalent_leaf(depth + 1, individualize(&cells, t, w)))
    }
}

/// Exact automorphism group order, vertex orbits and a generating set.
pub fn aut_order(g: &Graph) -> AutResult {
    let mut search = Search { g, shapes: Vec::new(), first_leaf: Vec::new(), generators: Vec::new() };
    let order = search.first_path(0, unit_partition(g.n()));
    let generators: Vec<Vec<usize>> = search.generators.into_iter().map(|(_, p)| p).collect();

    let mut uf = UnionFind::new(g.n());
    for perm in &generators {
        for (a, &b) in perm.iter().enumerate() {
            uf.union(a, b);
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = alloc::vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(v);
    }
    AutResult { order, orbits, generators }
}

/// Length of the orbit of `v` under the full automorphism group.
pub fn orbit_size(g: &Graph, v: usize) -> Result<usize> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    Ok(aut_order(g).orbit_of(v).len())
}

/// Largest graph the brute-force oracle accepts.
pub const NAIVE_LIMIT: usize = 8;

/// Counts automorphisms by checking every one of the `n!` permutations.
pub fn aut_order_naive(g: &Graph) -> Result<BigUint> {
    let n = g.n();
    if n > NAIVE_LIMIT {
        return Err(Error::SizeLimit { what: "brute-force automorphism count", n, limit: NAIVE_LIMIT });
    }
    let mut count: u64 = 0;
    for_each_permutation(n, |perm| {
        if is_automorphism(g, perm) {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub(crate) fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = alloc::vec![0usize; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn leaf_rows(g: &Graph, order: &[usize]) -> Vec<u64> {
    let mut pos = alloc::vec![0usize; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    order.iter().map(|&v| bits(g.row(v)).fold(0u64, |acc, w| acc | 1 << pos[w])).collect()
}

struct Canon<'g> {
    g: &'g Graph,
    best: Option<(Vec<u64>, Vec<usize>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl Canon<'_> {
    fn visit(&mut self, prefix: &mut Vec<usize>, mut cells: Cells) {
        refine(self.g, &mut cells);
        let Some(t) = target_cell(&cells) else {
            let order = leaf(&cells);
            let rows = leaf_rows(self.g, &order);
            match &self.best {
                Some((best_rows, best_order)) if *best_rows == rows => {
                    self.automorphisms.push(mapping(best_order, &order));
                }
                Some((best_rows, _)) if *best_rows <= rows => {}
                _ => self.best = Some((rows, order)),
            }
            return;
        };
        let mut candidates = cells[t].clone();
        candidates.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for w in candidates {
            // Skip children equivalent to an explored one under automorphisms
            // fixing the current prefix pointwise.
            let mut uf = UnionFind::new(self.g.n());
            for perm in &self.automorphisms {
                if prefix.iter().all(|&p| perm[p] == p) {
                    for (a, &b) in perm.iter().enumerate() {
                        uf.union(a, b);
                    }
                }
            }
            if explored.iter().any(|&u| uf.find(u) == uf.find(w)) {
                continue;
            }
            explored.push(w);
            prefix.push(w);
            self.visit(prefix, individualize(&cells, t, w));
            prefix.pop();
        }
    }
}

/// A canonical relabeling: isomorphic graphs map to identical graphs.
pub fn canonical_form(g: &Graph) -> Graph {
    let mut canon = Canon { g, best: None, automorphisms: Vec::new() };
    canon.visit(&mut Vec::new(), unit_partition(g.n()));
    let (rows, _) = canon.best.expect("search tree has at least one leaf");
    Graph::from_rows_unchecked(rows)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn order(g: &Graph) -> u64 {
        u64::try_from(&aut_order(g).order).unwrap()
    }

    #[test]
    fn complete_graph() {
        let k4 = Family::Complete(4).build().unwrap();
        let r = aut_order(&k4);
        assert_eq!(r.order, BigUint::from(24u32));
        assert_eq!(r.orbits, [[0, 1, 2, 3]]);
        assert!(r.generators.iter().all(|p| is_automorphism(&k4, p)));
    }

    #[test]
    fn complete_bipartite() {
        let g = Family::CompleteBipartite(2, 3).build().unwrap();
        let r = aut_order(&g);
        assert_eq!(r.order, BigUint::from(12u32));
        let mut sizes: Vec<usize> = r.orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [2, 3]);
    }

    #[test]
    fn cycle_is_dihedral() {
        let c5 = Family::Cycle(5).build().unwrap();
        let r = aut_order(&c5);
        assert_eq!(r.order, BigUint::from(10u32));
        assert_eq!(r.orbits.len(), 1);
        assert_eq!(aut_order_naive(&c5).unwrap(), r.order);
    }

    #[test]
    fn large_symmetric_groups_stay_exact() {
        let k12 = Family::Complete(12).build().unwrap();
        assert_eq!(aut_order(&k12).order, crate::math::factorial(12));
        let e20 = Graph::empty(20).unwrap();
        assert_eq!(aut_order(&e20).order, crate::math::factorial(20));
        assert_eq!(order(&Family::Petersen.build().unwrap()), 120);
        // K_{4,4}: 2 (4!)^2
        assert_eq!(order(&Family::CompleteBipartite(4, 4).build().unwrap()), 1152);
    }

    #[test]
    fn naive_oracle() {
        assert_eq!(aut_order_naive(&Family::Path(3).build().unwrap()).unwrap(), BigUint::from(2u32));
        let k33 = Family::CompleteBipartite(3, 3).build().unwrap();
        assert_eq!(aut_order_naive(&k33).unwrap(), BigUint::from(72u32));
        assert_eq!(aut_order_naive(&Graph::empty(1).unwrap()).unwrap(), BigUint::one());
        assert!(aut_order_naive(&Graph::empty(9).unwrap()).is_err());
    }

    #[test]
    fn orbit_sizes() {
        let k4 = Family::Complete(4).build().unwrap();
        assert!((0..4).all(|v| orbit_size(&k4, v).unwrap() == 4));
        let k23 = Family::CompleteBipartite(2, 3).build().unwrap();
        assert_eq!(orbit_size(&k23, 0).unwrap(), 2);
        assert_eq!(orbit_size(&k23, 4).unwrap(), 3);
        let p4 = Family::Path(4).build().unwrap();
        assert_eq!(orbit_size(&p4, 0).unwrap(), 2);
        assert!(orbit_size(&p4, 4).is_err());
    }

    #[test]
    fn rigid_graph_has_trivial_group() {
        // smallest asymmetric graphs have 6 vertices
        let g = Graph::from_edges(6, [(0, 2), (1, 2), (1, 3), (1, 4), (2, 4), (3, 5)]).unwrap();
        assert_eq!(aut_order_naive(&g).unwrap(), BigUint::one());
        let r = aut_order(&g);
        assert_eq!(r.order, BigUint::one());
        assert!(r.orbits.iter().all(|o| o.len() == 1));
    }

    #[test]
    fn canonical_form_identifies_relabelings() {
        let p = Family::Petersen.build().unwrap();
        let q = p.relabel(&[3, 7, 1, 9, 0, 2, 8, 4, 6, 5]).unwrap();
        assert_eq!(canonical_form(&p), canonical_form(&q));
        assert!(are_isomorphic(&p, &q));
        let c6 = Family::Cycle(6).build().unwrap();
        let two_triangles = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&c6, &two_triangles));
    }

    #[test]
    fn heap_enumerates_all_permutations() {
        let mut seen = std::collections::BTreeSet::new();
        for_each_permutation(5, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 120);
    }
}
