//! Simple undirected graphs stored as adjacency bitrows.

use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::math::bits;

/// Largest supported vertex count: one `u64` adjacency row per vertex.
pub const MAX_VERTICES: usize = 64;

/// An immutable simple undirected graph on the vertices `0..n`.
///
/// Row `v` has bit `u` set iff `{u, v}` is an edge. Rows are symmetric and the
/// diagonal is always clear.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
    edges: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, rows: alloc::vec![0; n], edges: 0 })
    }

    /// Builds a graph from an edge list. Repeated edges are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_order(n)?;
        let mut rows = alloc::vec![0u64; n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    /// Builds a graph from raw adjacency rows, validating symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let valid = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for (v, &row) in rows.iter().enumerate() {
            if row & !valid != 0 {
                return Err(Error::VertexOutOfRange { vertex: 63 - row.leading_zeros() as usize, n });
            }
            if row >> v & 1 == 1 {
                return Err(Error::Loop(v));
            }
            for u in bits(row) {
                if rows[u] >> v & 1 == 0 {
                    return Err(Error::Internal("adjacency rows are not symmetric"));
                }
            }
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        let twice: u32 = rows.iter().map(|r| r.count_ones()).sum();
        Graph { n: rows.len(), rows, edges: twice as usize / 2 }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Bitmask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.rows[v])
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.rows[u] >> u >> 1).map(move |k| (u, u + 1 + k)))
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        DegreeStats {
            delta_max: degrees.iter().copied().max().unwrap_or(0),
            delta_min: degrees.iter().copied().min().unwrap_or(0),
            d_avg: Ratio::new(2 * self.edges, self.n),
            degrees,
        }
    }

    /// Vertices reachable from `start`, as a bitmask.
    pub fn component_of(&self, start: usize) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertex_mask()
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let rows = (0..self.n).map(|v| all & !self.rows[v] & !(1 << v)).collect();
        Self::from_rows_unchecked(rows)
    }

    /// The image of this graph under `perm`: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch(perm.len(), self.n));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::Internal("relabeling is not a permutation"));
            }
            seen |= 1 << p;
        }
        let mut rows = alloc::vec![0u64; self.n];
        for (u, &pu) in perm.iter().enumerate() {
            rows[pu] = bits(self.rows[u]).fold(0, |acc, w| acc | 1 << perm[w]);
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    /// The square: `u ~ v` iff their distance in `self` is 1 or 2.
    pub fn square(&self) -> Graph {
        let rows = (0..self.n)
            .map(|v| {
                let two = bits(self.rows[v]).fold(self.rows[v], |acc, w| acc | self.rows[w]);
                two & !(1 << v)
            })
            .collect();
        Self::from_rows_unchecked(rows)
    }

    /// True iff every edge of `self` is an edge of `host` (same vertex set).
    pub fn is_spanning_subgraph_of(&self, host: &Graph) -> bool {
        self.n == host.n && self.rows.iter().zip(&host.rows).all(|(a, b)| a & !b == 0)
    }

    /// Named families used throughout tests and examples.
    pub fn named(family: Family) -> Result<Graph> {
        family.build()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::NoVertices)
    } else if n > MAX_VERTICES {
        Err(Error::TooManyVertices { n, cap: MAX_VERTICES })
    } else {
        Ok(())
    }
}

/// Degree sequence and extremal/average degrees of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeStats {
    pub degrees: Vec<usize>,
    pub delta_max: usize,
    pub delta_min: usize,
    /// Average degree `2e/n`, kept exact.
    pub d_avg: Ratio<usize>,
}

/// Graph families with a canonical labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Cycle `0-1-...-(n-1)-0`, `n >= 3`.
    Cycle(usize),
    Path(usize),
    /// `K_{1,m}`: centre 0 and leaves `1..=m`.
    Star(usize),
    /// Outer 5-cycle `0..5`, spokes `i - i+5`, inner pentagram on `5..10`.
    Petersen,
}

impl Family {
    pub fn build(self) -> Result<Graph> {
        match self {
            Family::Complete(n) => {
                check_order(n)?;
                Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            }
            Family::CompleteBipartite(p, q) => {
                if p == 0 || q == 0 {
                    return Err(Error::BadFamily {
                        family: "complete_bipartite",
                        detail: "both sides need at least one vertex",
                    });
                }
                check_order(p + q)?;
                Graph::from_edges(p + q, (0..p).flat_map(|u| (p..p + q).map(move |v| (u, v))))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::BadFamily {
                        family: "cycle",
                        detail: "a simple cycle needs at least 3 vertices",
                    });
                }
                check_order(n)?;
                Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
            }
            Family::Path(n) => {
                check_order(n)?;
                Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
            }
            Family::Star(m) => {
                if m == 0 {
                    return Err(Error::BadFamily { family: "star", detail: "a star needs at least one leaf" });
                }
                check_order(m + 1)?;
                Graph::from_edges(m + 1, (1..=m).map(|v| (0, v)))
            }
            Family::Petersen => {
                Graph::from_edges(10, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)]))
            }
        }
    }
}
