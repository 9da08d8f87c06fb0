//! Spanning trees of a host graph and the counting estimates built on them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{bits, factorial, UnionFind};

/// A spanning tree on the vertex set of some host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    tree: Graph,
    edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    /// Validates `edges` as a spanning tree of `host`.
    pub fn new(host: &Graph, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = host.n();
        if edges.len() + 1 != n {
            return Err(Error::NotATree("a spanning tree has exactly n - 1 edges"));
        }
        let mut uf = UnionFind::new(n);
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if !host.has_edge(u, v) {
                return Err(Error::NotASubgraph(u, v));
            }
            if !uf.union(u, v) {
                return Err(Error::NotATree("edge set contains a cycle"));
            }
        }
        Self::from_valid_edges(n, edges)
    }

    /// Interprets a graph that is itself a tree.
    pub fn from_tree_graph(tree: &Graph) -> Result<Self> {
        Self::new(tree, tree.edges().collect())
    }

    fn from_valid_edges(n: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        let tree = Graph::from_edges(n, edges.iter().copied())?;
        Ok(SpanningTree { tree, edges })
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    /// Edges with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn as_graph(&self) -> &Graph {
        &self.tree
    }

    pub fn degree(&self, v: usize) -> usize {
        self.tree.degree(v)
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }
}

/// How the greedy construction picks the next leaf to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// The lowest-indexed eligible leaf.
    #[default]
    LowestIndex,
    /// Search every sequence of eligible leaves and keep the one with the
    /// smallest product of `(d_T(v_i) - 1)!` over the expanded leaves.
    MinimizeProduct,
    /// Same search, keeping the largest product.
    MaximizeProduct,
}

/// A greedy spanning tree together with its construction sequence.
///
/// Step 0 adds every host edge at `v_0`. Step `i >= 1` expands a leaf `v_i`
/// of the current tree by every host edge from `v_i` to a vertex outside the
/// tree. The construction stops when no leaf has such an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyTree {
    pub tree: SpanningTree,
    /// `v_0, v_1, ..., v_s`.
    pub sequence: Vec<usize>,
    /// Edges added at each step, parallel to `sequence`.
    pub step_edges: Vec<Vec<(usize, usize)>>,
}

impl GreedyTree {
    pub fn root(&self) -> usize {
        self.sequence[0]
    }

    /// `prod_{i >= 1} (d_T(v_i) - 1)!`, the number of children added at each
    /// expansion step, factorial-multiplied.
    pub fn expansion_product(&self) -> BigUint {
        self.step_edges[1..].iter().map(|s| factorial(s.len())).product()
    }

    /// Checks the structural invariants of the construction against `host`.
    pub fn check(&self, host: &Graph) -> core::result::Result<(), &'static str> {
        let n = host.n();
        let v0 = self.root();
        if self.sequence.len() != self.step_edges.len() {
            return Err("sequence and steps differ in length");
        }
        let star: u64 = self.step_edges[0].iter().fold(0, |m, &(_, w)| m | 1 << w);
        if self.step_edges[0].iter().any(|&(u, _)| u != v0) || star != host.row(v0) {
            return Err("first step is not the full star at v_0");
        }
        let mut in_tree = star | 1 << v0;
        let mut tree_degree = alloc::vec![0usize; n];
        for &(u, w) in &self.step_edges[0] {
            tree_degree[u] += 1;
            tree_degree[w] += 1;
        }
        for (&vi, step) in self.sequence.iter().zip(&self.step_edges).skip(1) {
            if in_tree >> vi & 1 == 0 || tree_degree[vi] != 1 || vi == v0 {
                return Err("expanded vertex is not a leaf of the current tree");
            }
            if step.is_empty() {
                return Err("expanded leaf added no edge");
            }
            let mut added = 0u64;
            for &(u, w) in step {
                if u != vi || !host.has_edge(u, w) || in_tree >> w & 1 == 1 || added >> w & 1 == 1 {
                    return Err("step edge does not join v_i to a new vertex");
                }
                added |= 1 << w;
            }
            if added != host.row(vi) & !in_tree {
                return Err("step did not add every edge from v_i to a new vertex");
            }
            in_tree |= added;
            tree_degree[vi] += step.len();
            for &(_, w) in step {
                tree_degree[w] += 1;
            }
        }
        for v in bits(in_tree) {
            if tree_degree[v] == 1 && host.row(v) & !in_tree != 0 {
                return Err("construction stopped while a leaf still reaches a new vertex");
            }
        }
        if in_tree != host.vertex_mask() {
            return Err("greedy tree does not span the host");
        }
        let expected: Vec<(usize, usize)> = {
            let mut all: Vec<(usize, usize)> =
                self.step_edges.iter().flatten().map(|&(u, w)| (u.min(w), u.max(w))).collect();
            all.sort_unstable();
            all
        };
        if expected != self.tree.edges() {
            return Err("tree edges differ from the union of the steps");
        }
        Ok(())
    }
}

struct Frontier<'g> {
    g: &'g Graph,
    v0: usize,
}

impl Frontier<'_> {
    /// Leaves with at least one host edge leaving the tree.
    fn eligible(&self, in_tree: u64, expanded: u64) -> u64 {
        let mut out = 0;
        for v in bits(in_tree & !expanded & !(1 << self.v0)) {
            if self.g.row(v) & !in_tree != 0 {
                out |= 1 << v;
            }
        }
        out
    }

    /// Best (or worst) achievable product from this state, with the leaf to
    /// pick next. Memoized on `(in_tree, expanded)`.
    fn optimize(
        &self,
        in_tree: u64,
        expanded: u64,
        maximize: bool,
        memo: &mut BTreeMap<(u64, u64), (BigUint, Option<usize>)>,
    ) -> BigUint {
        if let Some((value, _)) = memo.get(&(in_tree, expanded)) {
            return value.clone();
        }
        let mut best: Option<(BigUint, usize)> = None;
        for v in bits(self.eligible(in_tree, expanded)) {
            let new = self.g.row(v) & !in_tree;
            let value =
                factorial(new.count_ones() as usize) * self.optimize(in_tree | new, expanded | 1 << v, maximize, memo);
            let better = match &best {
                None => true,
                Some((b, _)) => (maximize && value > *b) || (!maximize && value < *b),
            };
            if better {
                best = Some((value, v));
            }
        }
        let entry = match best {
            Some((value, v)) => (value, Some(v)),
            None => (BigUint::one(), None),
        };
        memo.insert((in_tree, expanded), entry.clone());
        entry.0
    }
}

/// Runs the greedy construction from `v0`.
pub fn greedy_spanning_tree(g: &Graph, v0: usize, tie_break: TieBreak) -> Result<GreedyTree> {
    let n = g.n();
    if v0 >= n {
        return Err(Error::VertexOutOfRange { vertex: v0, n });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let frontier = Frontier { g, v0 };
    let mut memo = BTreeMap::new();

    let mut sequence = alloc::vec![v0];
    let mut step_edges = alloc::vec![bits(g.row(v0)).map(|w| (v0, w)).collect::<Vec<_>>()];
    let mut in_tree = g.row(v0) | 1 << v0;
    let mut expanded = 0u64;
    loop {
        let next = match tie_break {
            TieBreak::LowestIndex => {
                let e = frontier.eligible(in_tree, expanded);
                (e != 0).then(|| e.trailing_zeros() as usize)
            }
            TieBreak::MinimizeProduct | TieBreak::MaximizeProduct => {
                let maximize = tie_break == TieBreak::MaximizeProduct;
                frontier.optimize(in_tree, expanded, maximize, &mut memo);
                memo[&(in_tree, expanded)].1
            }
        };
        let Some(v) = next else { break };
        let new = g.row(v) & !in_tree;
        sequence.push(v);
        step_edges.push(bits(new).map(|w| (v, w)).collect());
        in_tree |= new;
        expanded |= 1 << v;
    }
    if in_tree != g.vertex_mask() {
        return Err(Error::Internal("greedy construction halted before spanning a connected host"));
    }
    let tree = SpanningTree::from_valid_edges(n, step_edges.iter().flatten().copied().collect())?;
    Ok(GreedyTree { tree, sequence, step_edges })
}

/// Breadth-first spanning tree, neighbors visited in increasing order.
pub fn bfs_tree(g: &Graph, root: usize) -> Result<SpanningTree> {
    check_root(g, root)?;
    let mut seen = 1u64 << root;
    let mut queue = alloc::collections::VecDeque::from([root]);
    let mut edges = Vec::with_capacity(g.n() - 1);
    while let Some(u) = queue.pop_front() {
        for w in bits(g.row(u) & !seen) {
            seen |= 1 << w;
            edges.push((u, w));
            queue.push_back(w);
        }
    }
    SpanningTree::from_valid_edges(g.n(), edges)
}

/// Depth-first spanning tree, always descending to the lowest unvisited neighbor.
pub fn dfs_tree(g: &Graph, root: usize) -> Result<SpanningTree> {
    check_root(g, root)?;
    let mut seen = 1u64 << root;
    let mut stack = alloc::vec![root];
    let mut edges = Vec::with_capacity(g.n() - 1);
    while let Some(&u) = stack.last() {
        let open = g.row(u) & !seen;
        if open == 0 {
            stack.pop();
            continue;
        }
        let w = open.trailing_zeros() as usize;
        seen |= 1 << w;
        edges.push((u, w));
        stack.push(w);
    }
    SpanningTree::from_valid_edges(g.n(), edges)
}

fn check_root(g: &Graph, root: usize) -> Result<()> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// AHU code of the subtree at `v` hanging from `parent`, together with the
/// automorphism count of that rooted subtree.
fn rooted_code(t: &Graph, v: usize, parent: Option<usize>) -> (Vec<u8>, BigUint) {
    let mut children: Vec<(Vec<u8>, BigUint)> =
        t.neighbors(v).filter(|&w| Some(w) != parent).map(|w| rooted_code(t, w, Some(v))).collect();
    children.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    let mut code = alloc::vec![b'('];
    let mut count = BigUint::one();
    let mut i = 0;
    while i < children.len() {
        let mut j = i;
        while j < children.len() && children[j].0 == children[i].0 {
            count *= &children[j].1;
            code.extend_from_slice(&children[j].0);
            j += 1;
        }
        count *= factorial(j - i);
        i = j;
    }
    code.push(b')');
    (code, count)
}

/// Centroid vertices: one, or two adjacent ones.
fn centroids(t: &Graph) -> Vec<usize> {
    let n = t.n();
    // subtree sizes with the tree rooted at 0
    let mut order = alloc::vec![0usize];
    let mut parent = alloc::vec![usize::MAX; n];
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for w in t.neighbors(u) {
            if w != parent[u] {
                parent[w] = u;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut size = alloc::vec![1usize; n];
    for &u in order.iter().rev().take(n - 1) {
        size[parent[u]] += size[u];
    }
    (0..n)
        .filter(|&v| {
            let heaviest =
                t.neighbors(v).map(|w| if w == parent[v] { n - size[v] } else { size[w] }).max().unwrap_or(0);
            2 * heaviest <= n
        })
        .collect()
}

/// Exact automorphism count of a tree, via canonical codes rooted at the centroid.
pub fn tree_aut_exact(t: &SpanningTree) -> BigUint {
    let g = t.as_graph();
    if g.n() == 1 {
        return BigUint::one();
    }
    match centroids(g)[..] {
        [c] => rooted_code(g, c, None).1,
        [a, b] => {
            let (code_a, aut_a) = rooted_code(g, a, Some(b));
            let (code_b, aut_b) = rooted_code(g, b, Some(a));
            let swap = if code_a == code_b { 2u32 } else { 1 };
            aut_a * aut_b * BigUint::from(swap)
        }
        _ => unreachable!("a tree has one or two centroids"),
    }
}

/// `Delta_T * prod_v (d_T(v) - 1)!`, an upper bound on the automorphism
/// count of a tree with at least three vertices.
///
/// The single-edge tree is refused: it has 2 automorphisms but the product
/// evaluates to 1.
pub fn tree_aut_upper(t: &SpanningTree) -> Result<BigUint> {
    if t.n() < 3 {
        return Err(Error::SizeLimit { what: "tree automorphism estimate (needs n >= 3)", n: t.n(), limit: 3 });
    }
    let product: BigUint = (0..t.n()).map(|v| factorial(t.degree(v) - 1)).product();
    Ok(product * BigUint::from(t.max_degree()))
}

/// `prod_v d_G(v) / Delta_G`, an upper bound on the number of copies of any
/// spanning tree in a connected graph.
pub fn embedding_upper_fs(g: &Graph) -> Result<BigRational> {
    if g.n() < 2 {
        return Err(Error::SizeLimit { what: "spanning tree copy estimate (needs n >= 2)", n: g.n(), limit: 2 });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let stats = g.degree_stats();
    let product: BigUint = stats.degrees.iter().map(|&d| BigUint::from(d)).product();
    Ok(BigRational::new(product.into(), BigUint::from(stats.delta_max).into()))
}

/// All spanning trees found by [`all_spanning_trees`].
#[derive(Debug, Clone)]
pub struct SpanningTreeList {
    pub trees: Vec<SpanningTree>,
    /// True when enumeration stopped at the cap.
    pub truncated: bool,
}

/// Largest graph [`all_spanning_trees`] enumerates without a cap.
pub const SPANNING_ENUM_LIMIT: usize = 7;

/// Every spanning tree, by enumerating `(n-1)`-edge subsets in lexicographic
/// order and keeping the acyclic ones.
pub fn all_spanning_trees(g: &Graph, cap: Option<usize>) -> Result<SpanningTreeList> {
    let n = g.n();
    if cap.is_none() && n > SPANNING_ENUM_LIMIT {
        return Err(Error::SizeLimit { what: "uncapped spanning tree enumeration", n, limit: SPANNING_ENUM_LIMIT });
    }
    if !g.is_connected() {
        return Ok(SpanningTreeList { trees: Vec::new(), truncated: false });
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let k = n - 1;
    let mut trees = Vec::new();
    let mut truncated = false;
    let mut idx: Vec<usize> = (0..k).collect();
    'combos: loop {
        if cap.is_some_and(|c| trees.len() >= c) {
            truncated = true;
            break;
        }
        let mut uf = UnionFind::new(n);
        if idx.iter().all(|&i| uf.union(edges[i].0, edges[i].1)) {
            trees.push(SpanningTree::from_valid_edges(n, idx.iter().map(|&i| edges[i]).collect())?);
        }
        // next k-combination of 0..edges.len()
        let m = edges.len();
        let mut i = k;
        loop {
            if i == 0 {
                break 'combos;
            }
            i -= 1;
            if idx[i] < m - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
    Ok(SpanningTreeList { trees, truncated })
}
