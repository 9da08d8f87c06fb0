//! Structural parameters: path covers, Hamiltonian paths, induced stars.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::bits;

/// Largest vertex count for the exponential subset DPs in this module.
pub const STRUCTURE_LIMIT: usize = 20;

fn check_limit(g: &Graph, what: &'static str) -> Result<()> {
    if g.n() > STRUCTURE_LIMIT {
        Err(Error::SizeLimit { what, n: g.n(), limit: STRUCTURE_LIMIT })
    } else {
        Ok(())
    }
}

/// Minimum number of vertex-disjoint paths covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCoverResult {
    pub p: usize,
    /// `p` paths, each a vertex sequence; single vertices are trivial paths.
    pub witness: Vec<Vec<usize>>,
}

impl PathCoverResult {
    /// Checks the witness against `g`: disjoint, uses host edges, covers all.
    pub fn validate(&self, g: &Graph) -> bool {
        let mut covered = 0u64;
        for path in &self.witness {
            if path.is_empty() || path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
            for &v in path {
                if v >= g.n() || covered >> v & 1 == 1 {
                    return false;
                }
                covered |= 1 << v;
            }
        }
        self.witness.len() == self.p && covered == g.vertex_mask()
    }
}

/// Exact path covering number with a witness.
///
/// `best[mask][v]` is the fewest paths covering exactly `mask` when the last
/// path ends at `v`. A state either extends its last path along an edge or
/// opens a new path at any uncovered vertex.
pub fn path_cover_number(g: &Graph) -> Result<PathCoverResult> {
    check_limit(g, "path cover DP")?;
    let n = g.n();
    const NONE: u8 = u8::MAX;
    let full = (1usize << n) - 1;
    let mut best = alloc::vec![NONE; (full + 1) * n];
    let at = |mask: usize, v: usize| mask * n + v;
    for v in 0..n {
        best[at(1 << v, v)] = 1;
    }
    for mask in 1..=full {
        let mut min_here = NONE;
        for v in bits(mask as u64) {
            min_here = min_here.min(best[at(mask, v)]);
        }
        if min_here == NONE {
            continue;
        }
        let open = !(mask as u64) & full as u64;
        for v in bits(mask as u64) {
            let k = best[at(mask, v)];
            if k == NONE {
                continue;
            }
            for u in bits(g.row(v) & open) {
                let slot = &mut best[at(mask | 1 << u, u)];
                *slot = (*slot).min(k);
            }
        }
        for u in bits(open) {
            let slot = &mut best[at(mask | 1 << u, u)];
            *slot = (*slot).min(min_here + 1);
        }
    }
    let (mut end, p) = (0..n).map(|v| (v, best[at(full, v)])).min_by_key(|&(_, k)| k).unwrap();

    // Walk the DP backwards to recover the paths.
    let mut witness: Vec<Vec<usize>> = Vec::new();
    let mut current = alloc::vec![end];
    let mut mask = full;
    let mut k = p;
    while mask != 1 << end {
        let rest = mask & !(1 << end);
        let extend = bits(g.row(end) & rest as u64).find(|&v| best[at(rest, v)] == k);
        if let Some(v) = extend {
            current.push(v);
            end = v;
        } else {
            let v = bits(rest as u64)
                .find(|&v| best[at(rest, v)] == k - 1)
                .ok_or(Error::Internal("path cover DP has no predecessor"))?;
            witness.push(core::mem::take(&mut current));
            current.push(v);
            end = v;
            k -= 1;
        }
        mask = rest;
    }
    witness.push(current);
    witness.reverse();
    for path in witness.iter_mut() {
        path.reverse();
    }
    Ok(PathCoverResult { p: p as usize, witness })
}

pub fn has_hamiltonian_path(g: &Graph) -> Result<bool> {
    Ok(path_cover_number(g)?.p == 1)
}

/// The least `m >= 2` such that the graph has no induced `K_{1,m}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarFreeParam {
    pub m_min: usize,
    /// A vertex and an independent set of size `m_min - 1` among its
    /// neighbors, i.e. an induced `K_{1,m_min-1}`. Absent when `m_min - 1`
    /// exceeds every neighborhood's independence number (edgeless graphs).
    pub witness: Option<(usize, Vec<usize>)>,
}

/// Largest independent subset of `candidates`, by branching on the lowest vertex.
fn max_independent(g: &Graph, candidates: u64) -> u64 {
    if candidates == 0 {
        return 0;
    }
    let v = candidates.trailing_zeros() as usize;
    let rest = candidates & !(1 << v);
    let with = max_independent(g, rest & !g.row(v)) | 1 << v;
    if g.row(v) & rest == 0 {
        return with;
    }
    let without = max_independent(g, rest);
    if without.count_ones() > with.count_ones() {
        without
    } else {
        with
    }
}

pub fn star_free_parameter(g: &Graph) -> Result<StarFreeParam> {
    check_limit(g, "star-free parameter")?;
    let mut best: Option<(usize, u64)> = None;
    for v in 0..g.n() {
        let set = max_independent(g, g.row(v));
        if best.is_none_or(|(_, b)| set.count_ones() > b.count_ones()) {
            best = Some((v, set));
        }
    }
    let (v, set) = best.expect("graph has a vertex");
    let alpha = set.count_ones() as usize;
    let m_min = (alpha + 1).max(2);
    let witness = (alpha >= 1).then(|| (v, bits(set).collect()));
    Ok(StarFreeParam { m_min, witness })
}

/// Whether `g` contains an induced `K_{1,m}`, by direct search over centres
/// and `m`-subsets of their neighborhoods.
pub fn has_induced_star(g: &Graph, m: usize) -> bool {
    fn pick(g: &Graph, pool: u64, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if (pool.count_ones() as usize) < need {
            return false;
        }
        let v = pool.trailing_zeros() as usize;
        let rest = pool & !(1 << v);
        pick(g, rest & !g.row(v), need - 1) || pick(g, rest, need)
    }
    (0..g.n()).any(|c| pick(g, g.row(c), m))
}
