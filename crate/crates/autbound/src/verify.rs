//! Verification suites over the exhaustive small-graph corpus.
//!
//! Each suite checks one family of properties and reports how many checks it
//! made, how many failed, and the smallest failing graph (fewest vertices,
//! then fewest edges, then graph6 order).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use autbound_core::aut::{aut_order, aut_order_naive, canonical_form, orbit_size};
use autbound_core::bounds::{eval_eq1, LOG2_SLACK};
use autbound_core::corpus::connected_graphs;
use autbound_core::embeddings::{count_embeddings, verify_theorem1, EmbeddingCount};
use autbound_core::trees::{
    all_spanning_trees, embedding_upper_fs, greedy_spanning_tree, tree_aut_exact, tree_aut_upper,
};
use autbound_core::{compose_report, BoundId, CorollaryMode, Family, Graph, ReportOptions, SpanningTree, TieBreak};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::formats::write_graph6;

/// Connected graph counts for `n = 1..=7`.
pub const CONNECTED_COUNTS: [usize; 7] = [1, 1, 2, 6, 21, 112, 853];

/// Largest order the exhaustive suites accept.
pub const MAX_NMAX: usize = 7;

/// Largest order for the per-spanning-tree suites.
const TREE_SUITE_NMAX: usize = 6;

const RANDOM_GRAPHS_PER_ORDER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Soundness,
    Exactness,
    Oracle,
    Embeddings,
    Estimates,
    Greedy,
    Orbits,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Soundness,
        Suite::Exactness,
        Suite::Oracle,
        Suite::Embeddings,
        Suite::Estimates,
        Suite::Greedy,
        Suite::Orbits,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Soundness => "soundness",
            Suite::Exactness => "exactness",
            Suite::Oracle => "oracle",
            Suite::Embeddings => "embeddings",
            Suite::Estimates => "estimates",
            Suite::Greedy => "greedy",
            Suite::Orbits => "orbits",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unknown suite `{0}`")]
pub struct UnknownSuite(pub String);

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.as_str() == s.trim()).ok_or_else(|| UnknownSuite(s.into()))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("--nmax must be between 1 and {MAX_NMAX}, got {0}")]
    Nmax(usize),
    #[error(transparent)]
    Core(#[from] autbound_core::Error),
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub nmax: usize,
    pub suites: Vec<Suite>,
    /// Graphs to sweep instead of the generated corpus. Disconnected graphs
    /// and graphs above `nmax` are dropped.
    pub corpus: Option<Vec<Graph>>,
    pub seed: u64,
    /// Halves every bound before comparing it, so that sound bounds fail.
    /// Exists to prove the suites can fail.
    #[doc(hidden)]
    pub halve_bounds: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { nmax: MAX_NMAX, suites: Suite::ALL.to_vec(), corpus: None, seed: 0x5eed, halve_bounds: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub graph6: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: u64,
    pub failures: u64,
    pub counterexample: Option<Counterexample>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusCount {
    pub n: usize,
    pub found: usize,
    pub expected: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub counts: Vec<CorpusCount>,
    pub suites: Vec<SuiteOutcome>,
}

impl VerifyReport {
    pub fn corpus_ok(&self) -> bool {
        self.counts.iter().all(|c| c.expected.is_none_or(|e| e == c.found))
    }

    pub fn passed(&self) -> bool {
        self.corpus_ok() && self.suites.iter().all(SuiteOutcome::passed)
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteOutcome> {
        self.suites.iter().find(|s| s.suite == suite)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.counts {
            let _ = write!(out, "{} connected graphs at n={}", c.found, c.n);
            match c.expected {
                Some(e) if e != c.found => {
                    let _ = writeln!(out, " (MISMATCH: expected {e})");
                }
                _ => out.push('\n'),
            }
        }
        for s in &self.suites {
            if s.passed() {
                let _ = writeln!(out, "{}: PASS ({} checks)", s.suite, s.checks);
            } else {
                let _ = writeln!(out, "{}: FAIL ({} of {} checks failed)", s.suite, s.failures, s.checks);
                if let Some(c) = &s.counterexample {
                    let _ = writeln!(out, "  counterexample: {}  {}", c.graph6, c.message);
                }
            }
        }
        let _ = writeln!(out, "verify: {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Outcome of the checks on one graph.
#[derive(Default)]
struct Tally {
    checks: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(message());
        }
    }

    fn error(&mut self, e: impl fmt::Display) {
        self.checks += 1;
        self.failures.push(format!("error: {e}"));
    }
}

/// Runs `f` on every graph in parallel and folds the results in input order.
fn sweep<F>(suite: Suite, graphs: &[Graph], f: F) -> SuiteOutcome
where
    F: Fn(&Graph, &mut Tally) + Sync,
{
    let tallies: Vec<Tally> = graphs
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            f(g, &mut t);
            t
        })
        .collect();
    let mut outcome = SuiteOutcome { suite, checks: 0, failures: 0, counterexample: None };
    let mut worst: Option<(usize, usize, String, String)> = None;
    for (g, t) in graphs.iter().zip(tallies) {
        outcome.checks += t.checks;
        outcome.failures += t.failures.len() as u64;
        if let Some(message) = t.failures.into_iter().next() {
            let key = (g.n(), g.edge_count(), write_graph6(g), message);
            if worst.as_ref().is_none_or(|w| (key.0, key.1, &key.2) < (w.0, w.1, &w.2)) {
                worst = Some(key);
            }
        }
    }
    outcome.counterexample = worst.map(|(_, _, graph6, message)| Counterexample { graph6, message });
    outcome
}

fn int(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i)
}

pub fn run(options: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    if !(1..=MAX_NMAX).contains(&options.nmax) {
        return Err(VerifyError::Nmax(options.nmax));
    }
    let nmax = options.nmax;
    let mut by_order: Vec<Vec<Graph>> = vec![Vec::new(); nmax + 1];
    let counts = match &options.corpus {
        None => {
            for (n, slot) in by_order.iter_mut().enumerate().skip(1) {
                *slot = connected_graphs(n)?;
            }
            (1..=nmax)
                .map(|n| CorpusCount { n, found: by_order[n].len(), expected: Some(CONNECTED_COUNTS[n - 1]) })
                .collect()
        }
        Some(graphs) => {
            for g in graphs.iter().filter(|g| g.n() <= nmax && g.is_connected()) {
                by_order[g.n()].push(g.clone());
            }
            (1..=nmax).map(|n| CorpusCount { n, found: by_order[n].len(), expected: None }).collect()
        }
    };
    let upto = |k: usize| -> Vec<Graph> { by_order.iter().take(k.min(nmax) + 1).flatten().cloned().collect() };
    let all = upto(nmax);
    let small = upto(TREE_SUITE_NMAX);

    let mut suites: Vec<Suite> = options.suites.clone();
    suites.sort_unstable();
    suites.dedup();
    let outcomes = suites
        .into_iter()
        .map(|suite| match suite {
            Suite::Soundness => soundness(&all, options.halve_bounds),
            Suite::Exactness => exactness(options.halve_bounds),
            Suite::Oracle => oracle(&small, options.seed),
            Suite::Embeddings => embeddings(&small, options.halve_bounds),
            Suite::Estimates => estimates(&small, options.halve_bounds),
            Suite::Greedy => greedy(&all),
            Suite::Orbits => orbits(&all),
        })
        .collect();
    Ok(VerifyReport { counts, suites: outcomes })
}

fn soundness(graphs: &[Graph], halve: bool) -> SuiteOutcome {
    // Squares of corpus graphs belong to the special class; eq5 is asserted for them.
    let squares: BTreeSet<Graph> = graphs.iter().map(|g| canonical_form(&g.square())).collect();
    let half = BigRational::new(1.into(), 2.into());
    sweep(Suite::Soundness, graphs, |g, t| {
        let class5 = squares.contains(&canonical_form(g));
        for exhaustive in [false, true] {
            let opts = ReportOptions {
                graph_id: write_graph6(g),
                bounds: None,
                exact_aut: true,
                exhaustive_start: exhaustive,
                class5_asserted: class5,
                corollary_modes: vec![CorollaryMode::Corrected, CorollaryMode::Verbatim],
            };
            let report = match compose_report(g, &opts) {
                Ok(r) => r,
                Err(e) => return t.error(e),
            };
            let aut = report.aut_exact().expect("oracle requested").clone();
            for (b, gap) in report.bounds.iter().zip(&report.gaps) {
                let Some(m) = b.magnitude() else { continue };
                let m = if halve { m.clone().scaled(half.clone()) } else { m.clone() };
                let gap = gap.map(|x| if halve { x - 1.0 } else { x }).unwrap_or(0.0);
                let below = m.cmp_integer(&aut) == Ordering::Less || gap < -LOG2_SLACK;
                t.check(!below, || {
                    let mode = if exhaustive { "exhaustive start" } else { "default start" };
                    format!("{} = 2^{:.6} < aut = {aut} ({mode})", b.label(), m.log2())
                });
            }
        }
    })
}

fn exactness(halve: bool) -> SuiteOutcome {
    let mut cases: Vec<(Graph, BoundId, BigUint)> = Vec::new();
    for n in 3..=7 {
        let g = Family::Complete(n).build().expect("valid family");
        cases.push((g.clone(), BoundId::Thm3Orbit, factorial(n)));
        cases.push((g, BoundId::Eq1NashWilliams, factorial(n)));
    }
    for m in 2..=4 {
        let g = Family::CompleteBipartite(m, m).build().expect("valid family");
        cases.push((g, BoundId::Thm3Orbit, BigUint::from(2u32) * factorial(m) * factorial(m)));
    }
    for q in 2..=5 {
        for p in 1..q {
            let g = Family::CompleteBipartite(p, q).build().expect("valid family");
            cases.push((g, BoundId::Thm3Orbit, factorial(p) * factorial(q)));
        }
    }
    let mut graphs: Vec<Graph> = Vec::new();
    for (g, _, _) in &cases {
        if !graphs.contains(g) {
            graphs.push(g.clone());
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    let index: BTreeMap<(Graph, BoundId), BigUint> = cases.into_iter().map(|(g, id, v)| ((g, id), v)).collect();
    sweep(Suite::Exactness, &graphs, |g, t| {
        for ((h, id), expected) in index.range((g.clone(), BoundId::Thm1Tree)..) {
            if h != g {
                break;
            }
            let value = if *id == BoundId::Eq1NashWilliams {
                eval_eq1(&g.degree_stats(), g.n())
            } else {
                let opts = ReportOptions { bounds: Some(vec![*id]), exhaustive_start: true, ..Default::default() };
                match compose_report(g, &opts) {
                    Ok(mut r) => r.bounds.remove(0),
                    Err(e) => return t.error(e),
                }
            };
            let exact = value.exact_value().map(|v| if halve { v * &half } else { v.clone() });
            let aut = aut_order(g).order;
            t.check(exact.as_ref() == Some(&int(expected)) && &aut == expected, || {
                let shown = exact.map_or("none".into(), |v| v.to_string());
                format!("{id} = {shown}, expected {expected} (aut = {aut})")
            });
        }
    })
}

fn random_graph(n: usize, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).filter(|_| rng.random_bool(0.5)).collect();
    Graph::from_edges(n, edges).expect("edges in range")
}

fn oracle(graphs: &[Graph], seed: u64) -> SuiteOutcome {
    let mut all = graphs.to_vec();
    for n in [7, 8] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        all.extend((0..RANDOM_GRAPHS_PER_ORDER).map(|_| random_graph(n, &mut rng)));
    }
    sweep(Suite::Oracle, &all, |g, t| match aut_order_naive(g) {
        Ok(naive) => {
            let fast = aut_order(g);
            t.check(fast.order == naive, || format!("refinement gives {}, brute force gives {naive}", fast.order));
            let sizes: usize = fast.orbits.iter().map(Vec::len).sum();
            t.check(sizes == g.n(), || format!("orbits cover {sizes} of {} vertices", g.n()));
        }
        Err(e) => t.error(e),
    })
}

/// Spanning trees of `g` grouped by isomorphism type, with one labeled
/// representative per type.
struct TreeClass {
    rep: SpanningTree,
    members: u64,
    counts: EmbeddingCount,
}

fn tree_classes(g: &Graph) -> autbound_core::Result<Vec<TreeClass>> {
    let list = all_spanning_trees(g, None)?;
    let mut classes: BTreeMap<Graph, (SpanningTree, u64)> = BTreeMap::new();
    for t in list.trees {
        classes.entry(canonical_form(t.as_graph())).or_insert((t, 0)).1 += 1;
    }
    classes
        .into_values()
        .map(|(rep, members)| {
            let counts = count_embeddings(rep.as_graph(), g)?;
            Ok(TreeClass { rep, members, counts })
        })
        .collect()
}

fn embeddings(graphs: &[Graph], halve: bool) -> SuiteOutcome {
    sweep(Suite::Embeddings, graphs, |g, t| {
        let classes = match tree_classes(g) {
            Ok(c) => c,
            Err(e) => return t.error(e),
        };
        for class in classes {
            let c = &class.counts;
            t.check(&c.copies * &c.aut_f == c.labeled, || {
                format!("labeled {} != copies {} * aut(T) {}", c.labeled, c.copies, c.aut_f)
            });
            let check = match verify_theorem1(g, class.rep.as_graph()) {
                Ok(chk) => chk,
                Err(e) => return t.error(e),
            };
            t.check(check.labeled == c.labeled, || {
                format!("labeled count {} disagrees with {}", check.labeled, c.labeled)
            });
            let labeled = if halve { int(&check.labeled) / BigInt::from(2) } else { int(&check.labeled) };
            for _ in 0..class.members {
                t.check(int(&check.aut_g) <= labeled, || {
                    format!("aut = {} > |T -> G| = {labeled} for tree {:?}", check.aut_g, class.rep.edges())
                });
            }
        }
    })
}

fn estimates(graphs: &[Graph], halve: bool) -> SuiteOutcome {
    let scale = |x: BigRational| if halve { x / BigInt::from(2) } else { x };
    sweep(Suite::Estimates, graphs, |g, t| {
        if g.n() < 2 {
            return;
        }
        let classes = match tree_classes(g) {
            Ok(c) => c,
            Err(e) => return t.error(e),
        };
        let fs = match embedding_upper_fs(g) {
            Ok(fs) => scale(fs),
            Err(e) => return t.error(e),
        };
        for class in classes {
            let exact = tree_aut_exact(&class.rep);
            t.check(exact == class.counts.aut_f, || {
                format!("tree automorphisms {exact} disagree with brute force {}", class.counts.aut_f)
            });
            let fa = if g.n() >= 3 {
                match tree_aut_upper(&class.rep) {
                    Ok(fa) => Some(scale(int(&fa))),
                    Err(e) => return t.error(e),
                }
            } else {
                None
            };
            for _ in 0..class.members {
                t.check(int(&class.counts.copies) <= fs, || {
                    format!("s(T -> G) = {} > {fs} for tree {:?}", class.counts.copies, class.rep.edges())
                });
                if let Some(fa) = &fa {
                    t.check(int(&exact) <= *fa, || format!("aut(T) = {exact} > {fa} for tree {:?}", class.rep.edges()));
                }
            }
        }
    })
}

fn greedy(graphs: &[Graph]) -> SuiteOutcome {
    sweep(Suite::Greedy, graphs, |g, t| {
        for v0 in 0..g.n() {
            for tie in [TieBreak::LowestIndex, TieBreak::MinimizeProduct, TieBreak::MaximizeProduct] {
                let gt = match greedy_spanning_tree(g, v0, tie) {
                    Ok(gt) => gt,
                    Err(e) => return t.error(e),
                };
                let invariants = gt.check(g);
                t.check(invariants.is_ok(), || format!("start {v0}, {tie:?}: {}", invariants.unwrap_err()));
                let sum: usize = gt.sequence.iter().skip(1).map(|&v| gt.tree.degree(v).saturating_sub(1)).sum();
                let total = 1 + g.degree(v0) + sum;
                t.check(total == g.n(), || format!("start {v0}, {tie:?}: degree sum gives {total}, n = {}", g.n()));
            }
        }
    })
}

fn orbits(graphs: &[Graph]) -> SuiteOutcome {
    sweep(Suite::Orbits, graphs, |g, t| {
        let a = aut_order(g);
        for v in 0..g.n() {
            match orbit_size(g, v) {
                Ok(k) => {
                    t.check(&a.order % BigUint::from(k) == BigUint::from(0u32), || {
                        format!("orbit of {v} has size {k}, which does not divide {}", a.order)
                    });
                    t.check(a.orbit_of(v).len() == k, || format!("orbit of {v} reported with two sizes"));
                    let orbit = a.orbit_of(v);
                    let closed = a.generators.iter().all(|p| orbit.binary_search(&p[v]).is_ok());
                    t.check(closed, || format!("orbit of {v} is not closed under the generators"));
                }
                Err(e) => t.error(e),
            }
        }
    })
}
