//! Brute-force embedding counts for spanning subgraphs.
//!
//! `labeled` and `copies` are computed along unrelated routes (vertex
//! bijections versus edge subsets plus isomorphism tests), so the identity
//! `labeled = copies * aut(F)` is a genuine cross-check.

use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::aut::{aut_order, aut_order_naive, canonical_form};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count the brute-force counters accept.
pub const EMBEDDING_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingCount {
    /// `|F -> G|`: bijections mapping every edge of F onto an edge of G.
    pub labeled: BigUint,
    /// `s(F -> G)`: edge subsets of G forming a graph isomorphic to F.
    pub copies: BigUint,
    pub aut_f: BigUint,
}

fn check_sizes(f: &Graph, g: &Graph) -> Result<()> {
    if f.n() != g.n() {
        return Err(Error::SizeMismatch(f.n(), g.n()));
    }
    if g.n() > EMBEDDING_LIMIT {
        return Err(Error::SizeLimit { what: "brute-force embedding count", n: g.n(), limit: EMBEDDING_LIMIT });
    }
    Ok(())
}

/// `|F -> G|` by extending partial bijections vertex by vertex.
pub fn count_labeled(f: &Graph, g: &Graph) -> Result<BigUint> {
    check_sizes(f, g)?;
    fn extend(f: &Graph, g: &Graph, image: &mut Vec<usize>, used: u64) -> u64 {
        let u = image.len();
        if u == f.n() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.n() {
            if used >> x & 1 == 1 {
                continue;
            }
            // edges of F from u back to already-placed vertices must land on edges of G
            let back = f.row(u) & ((1u64 << u) - 1);
            if crate::math::bits(back).all(|w| g.has_edge(x, image[w])) {
                image.push(x);
                total += extend(f, g, image, used | 1 << x);
                image.pop();
            }
        }
        total
    }
    Ok(BigUint::from(extend(f, g, &mut Vec::with_capacity(f.n()), 0)))
}

/// `s(F -> G)` by testing every `e(F)`-edge subset of G for isomorphism with F.
pub fn count_copies(f: &Graph, g: &Graph) -> Result<BigUint> {
    check_sizes(f, g)?;
    let n = g.n();
    let k = f.edge_count();
    let host: Vec<(usize, usize)> = g.edges().collect();
    if k > host.len() {
        return Ok(BigUint::default());
    }
    let mut f_degrees: Vec<usize> = (0..n).map(|v| f.degree(v)).collect();
    f_degrees.sort_unstable();
    let f_canon = canonical_form(f);

    let mut count: u64 = 0;
    let mut idx: Vec<usize> = (0..k).collect();
    let m = host.len();
    loop {
        let mut degrees = alloc::vec![0usize; n];
        for &i in &idx {
            degrees[host[i].0] += 1;
            degrees[host[i].1] += 1;
        }
        degrees.sort_unstable();
        if degrees == f_degrees {
            let sub = Graph::from_edges(n, idx.iter().map(|&i| host[i]))?;
            if canonical_form(&sub) == f_canon {
                count += 1;
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(BigUint::from(count));
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
}

/// Labeled count, copy count and `aut(F)`, each computed independently.
pub fn count_embeddings(f: &Graph, g: &Graph) -> Result<EmbeddingCount> {
    Ok(EmbeddingCount { labeled: count_labeled(f, g)?, copies: count_copies(f, g)?, aut_f: aut_order_naive(f)? })
}

/// Both sides of `aut(G) <= |F -> G|` for a spanning subgraph F of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphBoundCheck {
    pub aut_g: BigUint,
    pub labeled: BigUint,
    pub holds: bool,
}

impl SubgraphBoundCheck {
    pub fn is_tight(&self) -> bool {
        self.aut_g == self.labeled
    }
}

pub fn verify_theorem1(g: &Graph, f: &Graph) -> Result<SubgraphBoundCheck> {
    check_sizes(f, g)?;
    if let Some((u, v)) = f.edges().find(|&(u, v)| !g.has_edge(u, v)) {
        return Err(Error::NotASubgraph(u, v));
    }
    let aut_g = aut_order(g).order;
    let labeled = count_labeled(f, g)?;
    Ok(SubgraphBoundCheck { holds: aut_g <= labeled, aut_g, labeled })
}
