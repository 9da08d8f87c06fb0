//! Isomorph-free enumeration of small graphs.
//!
//! Graphs on `k + 1` vertices are produced from every graph on `k` vertices
//! by adding a vertex with each possible neighborhood, then deduplicated by
//! canonical form. Every graph arises this way (delete its last vertex), so
//! each level is complete.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::aut::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order [`all_graphs`] will enumerate.
pub const CORPUS_LIMIT: usize = 9;

/// One representative per isomorphism class of graphs on `n` vertices, in
/// canonical form, sorted by adjacency rows.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Err(Error::NoVertices);
    }
    if n > CORPUS_LIMIT {
        return Err(Error::SizeLimit { what: "exhaustive graph enumeration", n, limit: CORPUS_LIMIT });
    }
    let mut level: Vec<Graph> = alloc::vec![Graph::empty(1)?];
    for k in 1..n {
        let mut next: BTreeSet<Graph> = BTreeSet::new();
        for g in &level {
            for nbhd in 0u64..1 << k {
                let mut rows = g.rows().to_vec();
                for (v, row) in rows.iter_mut().enumerate() {
                    *row |= (nbhd >> v & 1) << k;
                }
                rows.push(nbhd);
                next.insert(canonical_form(&Graph::from_rows_unchecked(rows)));
            }
        }
        level = next.into_iter().collect();
    }
    Ok(level)
}

/// The connected graphs among [`all_graphs`].
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?.into_iter().filter(Graph::is_connected).collect())
}

/// Connected graphs for every order `1..=nmax`, smallest first.
pub fn connected_graphs_up_to(nmax: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}
