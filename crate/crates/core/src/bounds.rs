//! Evaluation of every automorphism-order bound, with applicability gates,
//! and assembly of per-graph reports.
//!
//! Values are [`Magnitude`]s, so rational bounds stay exact and bounds with
//! irrational factors can still be compared exactly against the true order.
//! `log2` values are `f64` and only used for display and gap reporting.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};

use crate::aut::{aut_order, AutResult};
use crate::embeddings::{count_labeled, EMBEDDING_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{DegreeStats, Graph};
use crate::magnitude::Magnitude;
use crate::math::{factorial, log2_biguint};
use crate::structure::{has_induced_star, path_cover_number, star_free_parameter, STRUCTURE_LIMIT};
use crate::trees::{
    bfs_tree, dfs_tree, embedding_upper_fs, greedy_spanning_tree, tree_aut_upper, GreedyTree, SpanningTree, TieBreak,
};

/// Slack allowed when comparing `log2` values.
pub const LOG2_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundId {
    Thm1Tree,
    Eq1NashWilliams,
    Eq2TreeProduct,
    Eq3PathCover,
    Eq4DegreeExponent,
    Eq5SpecialClass,
    Eq6StarFree,
    Eq7Hamiltonian,
    Eq8HamPathEdges,
    Thm3Orbit,
    Thm3Plain,
    Corollary,
}

impl BoundId {
    pub const ALL: [BoundId; 12] = [
        BoundId::Thm1Tree,
        BoundId::Eq1NashWilliams,
        BoundId::Eq2TreeProduct,
        BoundId::Eq3PathCover,
        BoundId::Eq4DegreeExponent,
        BoundId::Eq5SpecialClass,
        BoundId::Eq6StarFree,
        BoundId::Eq7Hamiltonian,
        BoundId::Eq8HamPathEdges,
        BoundId::Thm3Orbit,
        BoundId::Thm3Plain,
        BoundId::Corollary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::Thm1Tree => "thm1_tree",
            BoundId::Eq1NashWilliams => "eq1_nashwilliams",
            BoundId::Eq2TreeProduct => "eq2_tree_product",
            BoundId::Eq3PathCover => "eq3_pathcover",
            BoundId::Eq4DegreeExponent => "eq4_degree_exponent",
            BoundId::Eq5SpecialClass => "eq5_special_class",
            BoundId::Eq6StarFree => "eq6_starfree",
            BoundId::Eq7Hamiltonian => "eq7_hamiltonian",
            BoundId::Eq8HamPathEdges => "eq8_hampath_edges",
            BoundId::Thm3Orbit => "thm3_orbit",
            BoundId::Thm3Plain => "thm3_plain",
            BoundId::Corollary => "corollary",
        }
    }

    /// Short alias accepted on the command line (`eq1`, `thm3`, ...).
    pub fn alias(self) -> &'static str {
        match self {
            BoundId::Thm1Tree => "thm1",
            BoundId::Eq1NashWilliams => "eq1",
            BoundId::Eq2TreeProduct => "eq2",
            BoundId::Eq3PathCover => "eq3",
            BoundId::Eq4DegreeExponent => "eq4",
            BoundId::Eq5SpecialClass => "eq5",
            BoundId::Eq6StarFree => "eq6",
            BoundId::Eq7Hamiltonian => "eq7",
            BoundId::Eq8HamPathEdges => "eq8",
            BoundId::Thm3Orbit => "thm3",
            BoundId::Thm3Plain => "thm3_plain",
            BoundId::Corollary => "corollary",
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown bound id `{0}`")]
pub struct UnknownBoundId(pub String);

impl FromStr for BoundId {
    type Err = UnknownBoundId;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        BoundId::ALL.into_iter().find(|id| id.as_str() == s || id.alias() == s).ok_or_else(|| UnknownBoundId(s.into()))
    }
}

/// Which definition of `alpha` the corollary uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CorollaryMode {
    /// `alpha = n - Delta - 1 - r (Delta - 1)`, the remainder left after the
    /// `r` full factorial blocks.
    Corrected,
    /// `alpha = n - r (Delta - 1)`, taken literally.
    Verbatim,
}

impl CorollaryMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CorollaryMode::Corrected => "corrected",
            CorollaryMode::Verbatim => "verbatim",
        }
    }
}

/// Why a bound was not evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason {
    Disconnected,
    TooFewVertices { need: usize },
    DegreeGate { delta_min: usize, delta_max: usize },
    ClassNotAsserted,
    NoHamiltonianPath,
    StarParameterBelowThree { m: usize },
    ContainsInducedStar { m: usize },
    SizeLimit { limit: usize },
    OrbitUnavailable,
    TreeNotSpanning,
}

impl Reason {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Reason::Disconnected => "disconnected",
            Reason::TooFewVertices { .. } => "too_few_vertices",
            Reason::DegreeGate { .. } => "degree_gate",
            Reason::ClassNotAsserted => "class_not_asserted",
            Reason::NoHamiltonianPath => "no_hamiltonian_path",
            Reason::StarParameterBelowThree { .. } => "star_parameter_below_three",
            Reason::ContainsInducedStar { .. } => "contains_induced_star",
            Reason::SizeLimit { .. } => "size_limit",
            Reason::OrbitUnavailable => "orbit_unavailable",
            Reason::TreeNotSpanning => "tree_not_spanning",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reason::Disconnected => f.write_str("disconnected"),
            Reason::TooFewVertices { need } => write!(f, "needs at least {need} vertices"),
            Reason::DegreeGate { delta_min, delta_max } => {
                write!(f, "needs min degree >= 2 and max degree >= 3 (have {delta_min}, {delta_max})")
            }
            Reason::ClassNotAsserted => f.write_str("graph not asserted to be a square or 3-connected planar"),
            Reason::NoHamiltonianPath => f.write_str("no hamiltonian path"),
            Reason::StarParameterBelowThree { m } => write!(f, "star parameter m = {m} < 3"),
            Reason::ContainsInducedStar { m } => write!(f, "graph contains an induced K_1,{m}"),
            Reason::SizeLimit { limit } => write!(f, "structural parameter needs n <= {limit}"),
            Reason::OrbitUnavailable => f.write_str("orbit length needs the automorphism oracle"),
            Reason::TreeNotSpanning => f.write_str("tree does not span the graph"),
        }
    }
}

/// Where a spanning tree came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeKind {
    Bfs,
    Dfs,
    Greedy,
    Given,
}

impl TreeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TreeKind::Bfs => "bfs",
            TreeKind::Dfs => "dfs",
            TreeKind::Greedy => "greedy",
            TreeKind::Given => "given",
        }
    }
}

/// Parameters a bound was evaluated with. Unused fields stay `None`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BoundContext {
    pub tree_kind: Option<TreeKind>,
    pub tree_root: Option<usize>,
    pub tree_max_degree: Option<usize>,
    pub tree_edges: Option<Vec<(usize, usize)>>,
    pub v0: Option<usize>,
    pub sequence: Option<Vec<usize>>,
    pub n1: Option<usize>,
    pub p: Option<usize>,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub alpha: Option<usize>,
    pub exponent: Option<Ratio<i64>>,
    pub mode: Option<CorollaryMode>,
    pub class_asserted: Option<bool>,
    /// `exact` when the embedding count was enumerated, `estimate` otherwise.
    pub method: Option<&'static str>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluated {
    pub magnitude: Magnitude,
    pub exact: Option<BigRational>,
    pub log2: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Value(Evaluated),
    Inapplicable(Reason),
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundValue {
    pub id: BoundId,
    pub outcome: Outcome,
    pub context: BoundContext,
}

impl BoundValue {
    fn value(id: BoundId, magnitude: Magnitude, context: BoundContext) -> Self {
        let exact = magnitude.exact();
        let log2 = magnitude.log2();
        BoundValue { id, outcome: Outcome::Value(Evaluated { magnitude, exact, log2 }), context }
    }

    fn inapplicable(id: BoundId, reason: Reason) -> Self {
        BoundValue { id, outcome: Outcome::Inapplicable(reason), context: BoundContext::default() }
    }

    fn with_context(mut self, context: BoundContext) -> Self {
        self.context = context;
        self
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self.outcome, Outcome::Value(_))
    }

    pub fn evaluated(&self) -> Option<&Evaluated> {
        match &self.outcome {
            Outcome::Value(v) => Some(v),
            Outcome::Inapplicable(_) => None,
        }
    }

    pub fn magnitude(&self) -> Option<&Magnitude> {
        self.evaluated().map(|v| &v.magnitude)
    }

    pub fn exact_value(&self) -> Option<&BigRational> {
        self.evaluated().and_then(|v| v.exact.as_ref())
    }

    pub fn log2_value(&self) -> Option<f64> {
        self.evaluated().map(|v| v.log2)
    }

    pub fn reason(&self) -> Option<&Reason> {
        match &self.outcome {
            Outcome::Inapplicable(r) => Some(r),
            Outcome::Value(_) => None,
        }
    }

    /// Exact comparison of the bound with an automorphism group order.
    /// `None` when the bound is inapplicable.
    pub fn compare(&self, aut: &BigUint) -> Option<Ordering> {
        self.magnitude().map(|m| m.cmp_integer(aut))
    }

    /// Label used in reports: the id, plus the mode for the corollary.
    pub fn label(&self) -> String {
        match self.context.mode {
            Some(mode) => alloc::format!("{}_{}", self.id, mode.as_str()),
            None => self.id.as_str().into(),
        }
    }
}

fn int(x: impl Into<BigUint>) -> BigRational {
    BigRational::from_integer(BigInt::from(x.into()))
}

fn frac(a: usize, b: usize) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn ratio(a: i64, b: i64) -> Ratio<i64> {
    Ratio::new(a, b)
}

/// `(2e/n)^n`, the average degree to the n-th power.
fn avg_degree_power(g: &Graph) -> Magnitude {
    Magnitude::one().times(frac(2 * g.edge_count(), g.n()), ratio(g.n() as i64, 1))
}

/// `n * Delta! * (Delta - 1)^(n - Delta - 1)`.
pub fn eval_eq1(stats: &DegreeStats, n: usize) -> BoundValue {
    let id = BoundId::Eq1NashWilliams;
    let delta = stats.delta_max;
    if delta == 0 {
        return BoundValue::inapplicable(id, Reason::TooFewVertices { need: 2 });
    }
    let exponent = (n - delta - 1) as i64;
    let m = Magnitude::integer(factorial(delta) * BigUint::from(n)).times_int(delta - 1, ratio(exponent, 1));
    BoundValue::value(id, m, BoundContext::default())
}

/// `(Delta_T / Delta_G) * (2e/n)^n * prod_v (d_T(v) - 1)!`.
///
/// Gated to `n >= 3`: on the single edge the tree estimate it rests on
/// undercounts the two automorphisms.
pub fn eval_eq2(g: &Graph, t: &SpanningTree) -> BoundValue {
    let id = BoundId::Eq2TreeProduct;
    if t.n() != g.n() || !t.as_graph().is_spanning_subgraph_of(g) {
        return BoundValue::inapplicable(id, Reason::TreeNotSpanning);
    }
    if g.n() < 3 {
        return BoundValue::inapplicable(id, Reason::TooFewVertices { need: 3 });
    }
    let product: BigUint = t.degrees().iter().map(|&d| factorial(d - 1)).product();
    let delta_g = g.degree_stats().delta_max;
    let m = avg_degree_power(g).scaled(frac(t.max_degree(), delta_g)).scaled(int(product));
    BoundValue::value(id, m, tree_context(TreeKind::Given, None, t))
}

fn tree_context(kind: TreeKind, root: Option<usize>, t: &SpanningTree) -> BoundContext {
    BoundContext {
        tree_kind: Some(kind),
        tree_root: root,
        tree_max_degree: Some(t.max_degree()),
        tree_edges: Some(t.edges().to_vec()),
        ..BoundContext::default()
    }
}

/// `2p * n^(2p) * (2^(7/8) * 6^(1/24))^(e - n)`.
pub fn eval_eq3(g: &Graph, p: usize) -> BoundValue {
    pathcover_bound(BoundId::Eq3PathCover, g, p)
}

fn pathcover_bound(id: BoundId, g: &Graph, p: usize) -> BoundValue {
    let n = g.n();
    let excess = g.edge_count() as i64 - n as i64;
    let m = Magnitude::integer(2 * p as u64)
        .times_int(n, ratio(2 * p as i64, 1))
        .times_int(2u32, ratio(7 * excess, 8))
        .times_int(6u32, ratio(excess, 24));
    BoundValue::value(id, m, BoundContext { p: Some(p), ..BoundContext::default() })
}

/// `(2e/n)^n * ((Delta - 1)!)^((e - n + 3 - 2 delta) / ((delta - 1)(Delta - 2)))`,
/// for `delta >= 2` and `Delta >= 3`.
pub fn eval_eq4(g: &Graph, stats: &DegreeStats) -> BoundValue {
    let id = BoundId::Eq4DegreeExponent;
    let (lo, hi) = (stats.delta_min, stats.delta_max);
    if lo < 2 || hi < 3 {
        return BoundValue::inapplicable(id, Reason::DegreeGate { delta_min: lo, delta_max: hi });
    }
    let numer = g.edge_count() as i64 - g.n() as i64 + 3 - 2 * lo as i64;
    let exponent = ratio(numer, ((lo - 1) * (hi - 2)) as i64);
    let m = avg_degree_power(g).times(int(factorial(hi - 1)), exponent);
    BoundValue::value(id, m, BoundContext { exponent: Some(exponent), ..BoundContext::default() })
}

/// `3 * 2^((n-2)/2) * (2e/n)^n / Delta`, for graphs asserted to be squares
/// or 3-connected planar.
pub fn eval_eq5(g: &Graph, class_asserted: bool) -> BoundValue {
    let id = BoundId::Eq5SpecialClass;
    if !class_asserted {
        return BoundValue::inapplicable(id, Reason::ClassNotAsserted);
    }
    if g.n() < 2 {
        return BoundValue::inapplicable(id, Reason::TooFewVertices { need: 2 });
    }
    let delta = g.degree_stats().delta_max;
    let exponent = ratio(g.n() as i64 - 2, 2);
    let m = avg_degree_power(g).scaled(frac(3, delta)).times_int(2u32, exponent);
    BoundValue::value(
        id,
        m,
        BoundContext { class_asserted: Some(true), exponent: Some(exponent), ..BoundContext::default() },
    )
}

/// `(m-1)! * ((m-2)!)^(n/(m-2)) * (2e/n)^n / Delta` for `K_{1,m}`-free graphs, `m >= 3`.
///
/// When the graph is small enough to search, `m` is checked against it.
pub fn eval_eq6(g: &Graph, m: usize) -> BoundValue {
    let id = BoundId::Eq6StarFree;
    if m < 3 {
        return BoundValue::inapplicable(id, Reason::StarParameterBelowThree { m });
    }
    if g.n() < 2 {
        return BoundValue::inapplicable(id, Reason::TooFewVertices { need: 2 });
    }
    if g.n() <= STRUCTURE_LIMIT && has_induced_star(g, m) {
        return BoundValue::inapplicable(id, Reason::ContainsInducedStar { m });
    }
    let delta = g.degree_stats().delta_max;
    let exponent = ratio(g.n() as i64, m as i64 - 2);
    let mag = avg_degree_power(g)
        .scaled(BigRational::new(BigInt::from(factorial(m - 1)), BigInt::from(delta)))
        .times(int(factorial(m - 2)), exponent);
    BoundValue::value(id, mag, BoundContext { m: Some(m), exponent: Some(exponent), ..BoundContext::default() })
}

/// `n * (e / (n - 1))^(n - 1)` for graphs with a Hamiltonian path.
pub fn eval_eq7(g: &Graph, ham: bool) -> BoundValue {
    let id = BoundId::Eq7Hamiltonian;
    if !ham {
        return BoundValue::inapplicable(id, Reason::NoHamiltonianPath);
    }
    let n = g.n();
    if n < 2 {
        return BoundValue::inapplicable(id, Reason::TooFewVertices { need: 2 });
    }
    let m = Magnitude::integer(n).times(frac(g.edge_count(), n - 1), ratio(n as i64 - 1, 1));
    BoundValue::value(id, m, BoundContext::default())
}

/// The path-cover bound with `p = 1`, for graphs with a Hamiltonian path.
pub fn eval_eq8(g: &Graph, ham: bool) -> BoundValue {
    let id = BoundId::Eq8HamPathEdges;
    if !ham {
        return BoundValue::inapplicable(id, Reason::NoHamiltonianPath);
    }
    pathcover_bound(id, g, 1)
}

/// `n1 * d(v_0)! * prod_{i >= 1} (d_T(v_i) - 1)!` for a greedy tree. With
/// `n1 = None` the orbit length is replaced by `n`.
pub fn eval_thm3(g: &Graph, gt: &GreedyTree, n1: Option<usize>) -> BoundValue {
    let (id, multiplier) = match n1 {
        Some(k) => (BoundId::Thm3Orbit, k),
        None => (BoundId::Thm3Plain, g.n()),
    };
    let v0 = gt.root();
    let value = BigUint::from(multiplier) * factorial(g.degree(v0)) * gt.expansion_product();
    let context = BoundContext {
        tree_kind: Some(TreeKind::Greedy),
        tree_root: Some(v0),
        tree_max_degree: Some(gt.tree.max_degree()),
        tree_edges: Some(gt.tree.edges().to_vec()),
        v0: Some(v0),
        sequence: Some(gt.sequence.clone()),
        n1,
        ..BoundContext::default()
    };
    BoundValue::value(id, Magnitude::integer(value), context)
}

/// Like [`eval_thm3`], but rejects an orbit length that disagrees with the oracle.
pub fn eval_thm3_checked(g: &Graph, gt: &GreedyTree, n1: usize, aut: &AutResult) -> Result<BoundValue> {
    let actual = aut.orbit_of(gt.root()).len();
    if actual != n1 {
        return Err(Error::OrbitMismatch { vertex: gt.root(), given: n1, actual });
    }
    Ok(eval_thm3(g, gt, Some(n1)))
}

/// `n * alpha! * Delta! * ((Delta - 1)!)^r` with `r = floor((n - Delta - 1) / (Delta - 1))`.
pub fn eval_corollary(stats: &DegreeStats, n: usize, mode: CorollaryMode) -> Result<BoundValue> {
    let id = BoundId::Corollary;
    let delta = stats.delta_max;
    if delta < 2 {
        return Ok(BoundValue::inapplicable(id, Reason::DegreeGate { delta_min: stats.delta_min, delta_max: delta })
            .with_context(BoundContext { mode: Some(mode), ..BoundContext::default() }));
    }
    let r = (n - delta - 1) / (delta - 1);
    let alpha = match mode {
        CorollaryMode::Verbatim => n - r * (delta - 1),
        CorollaryMode::Corrected => (n - delta - 1)
            .checked_sub(r * (delta - 1))
            .ok_or(Error::Internal("negative alpha in corrected corollary"))?,
    };
    let value = BigUint::from(n) * factorial(alpha) * factorial(delta) * num_traits::pow(factorial(delta - 1), r);
    let context = BoundContext { r: Some(r), alpha: Some(alpha), mode: Some(mode), ..BoundContext::default() };
    Ok(BoundValue::value(id, Magnitude::integer(value), context))
}

/// `|T -> G|` for a spanning tree: enumerated exactly for small graphs,
/// otherwise estimated by the copy bound times the tree automorphism bound.
pub fn eval_thm1_tree(g: &Graph, t: &SpanningTree) -> Result<BoundValue> {
    let id = BoundId::Thm1Tree;
    if t.n() != g.n() || !t.as_graph().is_spanning_subgraph_of(g) {
        return Ok(BoundValue::inapplicable(id, Reason::TreeNotSpanning));
    }
    let mut context = tree_context(TreeKind::Given, None, t);
    let magnitude = if g.n() <= EMBEDDING_LIMIT {
        context.method = Some("exact");
        Magnitude::integer(count_labeled(t.as_graph(), g)?)
    } else {
        context.method = Some("estimate");
        Magnitude::rational(embedding_upper_fs(g)?).scaled(int(tree_aut_upper(t)?))
    };
    Ok(BoundValue::value(id, magnitude, context))
}

/// Options for [`compose_report`].
#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub graph_id: String,
    /// Restrict to these bounds; `None` evaluates all of them.
    pub bounds: Option<Vec<BoundId>>,
    /// Run the automorphism oracle; without it gaps and the orbit bound are omitted.
    pub exact_aut: bool,
    /// Try every start vertex and every eligible leaf order for the greedy
    /// tree, and every root for the BFS/DFS trees.
    pub exhaustive_start: bool,
    pub class5_asserted: bool,
    pub corollary_modes: Vec<CorollaryMode>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            graph_id: String::new(),
            bounds: None,
            exact_aut: true,
            exhaustive_start: false,
            class5_asserted: false,
            corollary_modes: alloc::vec![CorollaryMode::Corrected],
        }
    }
}

/// Every requested bound for one graph, with the exact order when computed.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub graph_id: String,
    pub n: usize,
    pub e: usize,
    pub connected: bool,
    pub aut: Option<AutResult>,
    pub bounds: Vec<BoundValue>,
    /// `log2(bound) - log2(aut)`, parallel to `bounds`.
    pub gaps: Vec<Option<f64>>,
    pub note: Option<String>,
}

impl BoundReport {
    pub fn aut_exact(&self) -> Option<&BigUint> {
        self.aut.as_ref().map(|a| &a.order)
    }

    /// Applicable bounds that fall below the exact order, either exactly or
    /// by more than [`LOG2_SLACK`] in `log2`.
    pub fn violations(&self) -> Vec<&BoundValue> {
        let Some(aut) = self.aut_exact() else { return Vec::new() };
        self.bounds
            .iter()
            .zip(&self.gaps)
            .filter(|(b, gap)| b.compare(aut) == Some(Ordering::Less) || gap.is_some_and(|g| g < -LOG2_SLACK))
            .map(|(b, _)| b)
            .collect()
    }

    pub fn get(&self, id: BoundId) -> Option<&BoundValue> {
        self.bounds.iter().find(|b| b.id == id)
    }
}

struct Candidate {
    kind: TreeKind,
    root: usize,
    tree: SpanningTree,
}

fn candidate_trees(g: &Graph, exhaustive: bool) -> Result<Vec<Candidate>> {
    let roots = if exhaustive { 0..g.n() } else { 0..1 };
    let mut out = Vec::new();
    for root in roots {
        out.push(Candidate { kind: TreeKind::Bfs, root, tree: bfs_tree(g, root)? });
        out.push(Candidate { kind: TreeKind::Dfs, root, tree: dfs_tree(g, root)? });
        let greedy = greedy_spanning_tree(g, root, TieBreak::LowestIndex)?;
        out.push(Candidate { kind: TreeKind::Greedy, root, tree: greedy.tree });
    }
    Ok(out)
}

/// Keeps the applicable value with the smallest magnitude; ties go to the earlier one.
fn smallest(values: impl IntoIterator<Item = BoundValue>) -> Option<BoundValue> {
    let mut best: Option<BoundValue> = None;
    for v in values {
        let better = match (&best, v.magnitude()) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(b), Some(m)) => b.magnitude().is_none_or(|bm| m.cmp_magnitude(bm) == Ordering::Less),
        };
        if better {
            best = Some(v);
        }
    }
    best
}

/// The greedy tree with the smallest orbit-product bound, over the allowed start vertices.
fn best_thm3(g: &Graph, exhaustive: bool, n1: Option<&dyn Fn(usize) -> usize>) -> Result<BoundValue> {
    let (roots, tie) = if exhaustive { (0..g.n(), TieBreak::MinimizeProduct) } else { (0..1, TieBreak::LowestIndex) };
    let mut values = Vec::new();
    for v0 in roots {
        let gt = greedy_spanning_tree(g, v0, tie)?;
        values.push(eval_thm3(g, &gt, n1.map(|f| f(v0))));
    }
    Ok(smallest(values).expect("at least one start vertex"))
}

/// Evaluates the requested bounds for `g`.
pub fn compose_report(g: &Graph, options: &ReportOptions) -> Result<BoundReport> {
    let wanted = |id: BoundId| options.bounds.as_ref().is_none_or(|b| b.contains(&id));
    let aut = options.exact_aut.then(|| aut_order(g));
    let connected = g.is_connected();
    let mut bounds: Vec<BoundValue> = Vec::new();
    let mut note = None;

    let mut modes = options.corollary_modes.clone();
    modes.sort_unstable();
    modes.dedup();

    if !connected {
        note = Some("graph is disconnected; every bound assumes a connected graph".into());
        for id in BoundId::ALL.into_iter().filter(|&id| wanted(id)) {
            if id == BoundId::Corollary {
                for &mode in &modes {
                    bounds.push(
                        BoundValue::inapplicable(id, Reason::Disconnected)
                            .with_context(BoundContext { mode: Some(mode), ..BoundContext::default() }),
                    );
                }
            } else {
                bounds.push(BoundValue::inapplicable(id, Reason::Disconnected));
            }
        }
    } else {
        let stats = g.degree_stats();
        let small = g.n() <= STRUCTURE_LIMIT;
        let size_gate = |id| BoundValue::inapplicable(id, Reason::SizeLimit { limit: STRUCTURE_LIMIT });
        let needs_trees = wanted(BoundId::Thm1Tree) || wanted(BoundId::Eq2TreeProduct);
        let candidates = if needs_trees { candidate_trees(g, options.exhaustive_start)? } else { Vec::new() };
        let with_tree = |mut v: BoundValue, c: &Candidate| {
            if v.is_applicable() {
                v.context.tree_kind = Some(c.kind);
                v.context.tree_root = Some(c.root);
            }
            v
        };
        let cover = if small
            && [BoundId::Eq3PathCover, BoundId::Eq7Hamiltonian, BoundId::Eq8HamPathEdges].into_iter().any(wanted)
        {
            Some(path_cover_number(g)?.p)
        } else {
            None
        };

        for id in BoundId::ALL.into_iter().filter(|&id| wanted(id)) {
            match id {
                BoundId::Thm1Tree => {
                    let mut values = Vec::new();
                    for c in &candidates {
                        values.push(with_tree(eval_thm1_tree(g, &c.tree)?, c));
                    }
                    bounds.push(smallest(values).expect("candidate trees"));
                }
                BoundId::Eq1NashWilliams => bounds.push(eval_eq1(&stats, g.n())),
                BoundId::Eq2TreeProduct => {
                    let values = candidates.iter().map(|c| with_tree(eval_eq2(g, &c.tree), c));
                    bounds.push(smallest(values).expect("candidate trees"));
                }
                BoundId::Eq3PathCover => bounds.push(match cover {
                    Some(p) => eval_eq3(g, p),
                    None => size_gate(id),
                }),
                BoundId::Eq4DegreeExponent => bounds.push(eval_eq4(g, &stats)),
                BoundId::Eq5SpecialClass => bounds.push(eval_eq5(g, options.class5_asserted)),
                BoundId::Eq6StarFree => {
                    bounds.push(if small { eval_eq6(g, star_free_parameter(g)?.m_min.max(3)) } else { size_gate(id) })
                }
                BoundId::Eq7Hamiltonian => bounds.push(match cover {
                    Some(p) => eval_eq7(g, p == 1),
                    None => size_gate(id),
                }),
                BoundId::Eq8HamPathEdges => bounds.push(match cover {
                    Some(p) => eval_eq8(g, p == 1),
                    None => size_gate(id),
                }),
                BoundId::Thm3Orbit => bounds.push(match &aut {
                    Some(a) => {
                        let orbit = |v: usize| a.orbit_of(v).len();
                        best_thm3(g, options.exhaustive_start, Some(&orbit))?
                    }
                    None => BoundValue::inapplicable(id, Reason::OrbitUnavailable),
                }),
                BoundId::Thm3Plain => bounds.push(best_thm3(g, options.exhaustive_start, None)?),
                BoundId::Corollary => {
                    for &mode in &modes {
                        bounds.push(eval_corollary(&stats, g.n(), mode)?);
                    }
                }
            }
        }
    }

    let aut_log2 = aut.as_ref().map(|a| log2_biguint(&a.order));
    let gaps = bounds.iter().map(|b| Some(b.log2_value()? - aut_log2?)).collect();
    Ok(BoundReport {
        graph_id: options.graph_id.clone(),
        n: g.n(),
        e: g.edge_count(),
        connected,
        aut,
        bounds,
        gaps,
        note,
    })
}

/// `log2` of a positive rational.
pub fn log2_rational(x: &BigRational) -> f64 {
    log2_biguint(x.numer().magnitude()) - log2_biguint(x.denom().magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn graph(f: Family) -> Graph {
        f.build().unwrap()
    }

    fn exact_int(b: &BoundValue) -> i64 {
        let e = b.exact_value().expect("exact value");
        assert!(e.is_integer(), "{e}");
        i64::try_from(e.to_integer()).unwrap()
    }

    fn approx(b: &BoundValue) -> f64 {
        libm::exp2(b.log2_value().unwrap())
    }

    #[test]
    fn eq1_examples() {
        let k4 = graph(Family::Complete(4));
        assert_eq!(exact_int(&eval_eq1(&k4.degree_stats(), 4)), 24);
        let c4 = graph(Family::Cycle(4));
        assert_eq!(exact_int(&eval_eq1(&c4.degree_stats(), 4)), 8);
        let p = graph(Family::Petersen);
        assert_eq!(exact_int(&eval_eq1(&p.degree_stats(), 10)), 3840);
        let k2 = graph(Family::Complete(2));
        assert_eq!(exact_int(&eval_eq1(&k2.degree_stats(), 2)), 2);
        assert!(!eval_eq1(&Graph::empty(1).unwrap().degree_stats(), 1).is_applicable());
    }

    #[test]
    fn eq2_examples() {
        let k4 = graph(Family::Complete(4));
        let star = bfs_tree(&k4, 0).unwrap();
        assert_eq!(exact_int(&eval_eq2(&k4, &star)), 162);
        let c4 = graph(Family::Cycle(4));
        assert_eq!(exact_int(&eval_eq2(&c4, &dfs_tree(&c4, 0).unwrap())), 16);
        let p3 = graph(Family::Path(3));
        let b = eval_eq2(&p3, &SpanningTree::from_tree_graph(&p3).unwrap());
        assert_eq!(b.exact_value().unwrap(), &BigRational::new(64.into(), 27.into()));
        let k2 = graph(Family::Complete(2));
        let b = eval_eq2(&k2, &SpanningTree::from_tree_graph(&k2).unwrap());
        assert_eq!(b.reason(), Some(&Reason::TooFewVertices { need: 3 }));
    }

    #[test]
    fn eq3_examples() {
        let c4 = graph(Family::Cycle(4));
        let b = eval_eq3(&c4, 1);
        assert_eq!(exact_int(&b), 32);
        assert!((b.log2_value().unwrap() - 5.0).abs() < 1e-12);
        let c = 7.0 / 8.0 + libm::log2(6.0) / 24.0;
        let k4 = eval_eq3(&graph(Family::Complete(4)), 1);
        assert!(k4.exact_value().is_none());
        assert!((k4.log2_value().unwrap() - (5.0 + 2.0 * c)).abs() < 1e-12);
        assert!((k4.log2_value().unwrap() - 6.965).abs() < 1e-3);
        let claw = eval_eq3(&graph(Family::Star(3)), 2);
        assert!((claw.log2_value().unwrap() - (libm::log2(4.0 * 256.0) - c)).abs() < 1e-12);
        assert!((claw.log2_value().unwrap() - 9.017).abs() < 1e-3);
    }

    #[test]
    fn eq4_examples() {
        let p = graph(Family::Petersen);
        let b = eval_eq4(&p, &p.degree_stats());
        assert_eq!(b.context.exponent, Some(ratio(1, 1)));
        assert_eq!(exact_int(&b), 118098);
        let k4 = graph(Family::Complete(4));
        let b = eval_eq4(&k4, &k4.degree_stats());
        assert_eq!(b.context.exponent, Some(ratio(-1, 2)));
        assert!((approx(&b) - 81.0 / libm::sqrt(2.0)).abs() < 1e-9);
        let c4 = graph(Family::Cycle(4));
        assert_eq!(eval_eq4(&c4, &c4.degree_stats()).reason().unwrap().code(), "degree_gate");
    }

    #[test]
    fn eq5_examples() {
        let k4 = graph(Family::Complete(4));
        assert_eq!(exact_int(&eval_eq5(&k4, true)), 162);
        assert!(!eval_eq5(&graph(Family::Cycle(4)), false).is_applicable());
        let q3 = Graph::from_edges(8, (0..8).flat_map(|v| [0, 1, 2].map(|b| (v, v ^ (1 << b)))).filter(|(u, v)| u < v))
            .unwrap();
        assert_eq!(exact_int(&eval_eq5(&q3, true)), 52488);
        assert!(eval_eq5(&graph(Family::Complete(5)), true).exact_value().is_none());
    }

    #[test]
    fn eq6_examples() {
        let k4 = graph(Family::Complete(4));
        assert_eq!(exact_int(&eval_eq6(&k4, 3)), 54);
        let p4 = graph(Family::Path(4));
        assert!((approx(&eval_eq6(&p4, 3)) - 2.0 * 81.0 / 16.0 / 2.0).abs() < 1e-9);
        let claw = graph(Family::Star(3));
        assert!((approx(&eval_eq6(&claw, 4)) - 40.5).abs() < 1e-9);
        assert_eq!(eval_eq6(&claw, 3).reason(), Some(&Reason::ContainsInducedStar { m: 3 }));
        assert!(!eval_eq6(&k4, 2).is_applicable());
    }

    #[test]
    fn eq7_and_eq8_examples() {
        let c4 = graph(Family::Cycle(4));
        assert_eq!(eval_eq7(&c4, true).exact_value().unwrap(), &BigRational::new(256.into(), 27.into()));
        assert_eq!(exact_int(&eval_eq7(&graph(Family::Complete(4)), true)), 32);
        assert_eq!(exact_int(&eval_eq7(&graph(Family::Path(4)), true)), 4);
        assert!(!eval_eq7(&c4, false).is_applicable());
        assert_eq!(exact_int(&eval_eq8(&c4, true)), 32);
        assert_eq!(exact_int(&eval_eq8(&graph(Family::Cycle(5)), true)), 50);
        let k4 = graph(Family::Complete(4));
        assert!((approx(&eval_eq8(&k4, true)) - 125.0).abs() < 0.1);
        assert_eq!(
            eval_eq8(&k4, true).log2_value().unwrap().to_bits(),
            eval_eq3(&k4, 1).log2_value().unwrap().to_bits()
        );
    }

    #[test]
    fn thm3_examples() {
        let k4 = graph(Family::Complete(4));
        let gt = greedy_spanning_tree(&k4, 0, TieBreak::LowestIndex).unwrap();
        assert_eq!(exact_int(&eval_thm3(&k4, &gt, Some(4))), 24);
        let k23 = graph(Family::CompleteBipartite(2, 3));
        let gt = greedy_spanning_tree(&k23, 0, TieBreak::LowestIndex).unwrap();
        assert_eq!(exact_int(&eval_thm3(&k23, &gt, Some(2))), 12);
        let p4 = graph(Family::Path(4));
        let gt = greedy_spanning_tree(&p4, 0, TieBreak::LowestIndex).unwrap();
        assert_eq!(exact_int(&eval_thm3(&p4, &gt, Some(2))), 2);
        let plain = eval_thm3(&p4, &gt, None);
        assert_eq!((plain.id, exact_int(&plain)), (BoundId::Thm3Plain, 4));

        let aut = aut_order(&p4);
        assert!(eval_thm3_checked(&p4, &gt, 2, &aut).is_ok());
        assert_eq!(eval_thm3_checked(&p4, &gt, 4, &aut), Err(Error::OrbitMismatch { vertex: 0, given: 4, actual: 2 }));
    }

    #[test]
    fn corollary_examples() {
        let k4 = graph(Family::Complete(4)).degree_stats();
        let b = eval_corollary(&k4, 4, CorollaryMode::Corrected).unwrap();
        assert_eq!((b.context.r, b.context.alpha, exact_int(&b)), (Some(0), Some(0), 24));
        let b = eval_corollary(&k4, 4, CorollaryMode::Verbatim).unwrap();
        assert_eq!((b.context.alpha, exact_int(&b)), (Some(4), 576));
        let c6 = graph(Family::Cycle(6)).degree_stats();
        let b = eval_corollary(&c6, 6, CorollaryMode::Corrected).unwrap();
        assert_eq!((b.context.r, b.context.alpha, exact_int(&b)), (Some(3), Some(0), 12));
        let k2 = graph(Family::Complete(2)).degree_stats();
        assert!(!eval_corollary(&k2, 2, CorollaryMode::Corrected).unwrap().is_applicable());
    }

    #[test]
    fn thm1_examples() {
        let k4 = graph(Family::Complete(4));
        assert_eq!(exact_int(&eval_thm1_tree(&k4, &bfs_tree(&k4, 0).unwrap()).unwrap()), 24);
        let c4 = graph(Family::Cycle(4));
        assert_eq!(exact_int(&eval_thm1_tree(&c4, &dfs_tree(&c4, 0).unwrap()).unwrap()), 8);
        let c5 = graph(Family::Cycle(5));
        assert_eq!(exact_int(&eval_thm1_tree(&c5, &dfs_tree(&c5, 0).unwrap()).unwrap()), 10);
        let p = graph(Family::Petersen);
        let b = eval_thm1_tree(&p, &bfs_tree(&p, 0).unwrap()).unwrap();
        assert_eq!(b.context.method, Some("estimate"));
        assert_eq!(b.compare(&BigUint::from(120u32)), Some(Ordering::Greater));
    }

    #[test]
    fn report_on_complete_graph() {
        let k4 = graph(Family::Complete(4));
        let r = compose_report(&k4, &ReportOptions::default()).unwrap();
        assert_eq!(r.bounds.len(), 12);
        assert!(r.violations().is_empty());
        let tight: Vec<BoundId> = r
            .bounds
            .iter()
            .zip(&r.gaps)
            .filter(|(_, g)| g.is_some_and(|g| g.abs() < 1e-12))
            .map(|(b, _)| b.id)
            .collect();
        for id in [BoundId::Eq1NashWilliams, BoundId::Thm3Orbit, BoundId::Corollary, BoundId::Thm1Tree] {
            assert!(tight.contains(&id), "{id} not tight: {tight:?}");
        }
        let min_gap = r.gaps.iter().flatten().fold(f64::INFINITY, |a, &b| a.min(b));
        assert!(min_gap.abs() < 1e-12);
    }

    #[test]
    fn report_gates_on_claw() {
        let claw = graph(Family::Star(3));
        let r = compose_report(&claw, &ReportOptions::default()).unwrap();
        assert_eq!(r.get(BoundId::Eq7Hamiltonian).unwrap().reason(), Some(&Reason::NoHamiltonianPath));
        assert_eq!(r.get(BoundId::Eq8HamPathEdges).unwrap().reason(), Some(&Reason::NoHamiltonianPath));
        assert_eq!(r.get(BoundId::Eq4DegreeExponent).unwrap().reason().unwrap().code(), "degree_gate");
        assert!(r.violations().is_empty());
    }

    #[test]
    fn report_on_disconnected_graph() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let r = compose_report(&g, &ReportOptions::default()).unwrap();
        assert!(r.note.is_some());
        assert_eq!(r.aut_exact(), Some(&BigUint::from(8u32)));
        assert!(r.bounds.iter().all(|b| b.reason() == Some(&Reason::Disconnected)));
        assert_eq!(r.bounds.len(), 12);
    }

    #[test]
    fn report_filters_and_modes() {
        let k4 = graph(Family::Complete(4));
        let opts = ReportOptions {
            bounds: Some(alloc::vec![BoundId::Eq1NashWilliams, BoundId::Corollary]),
            corollary_modes: alloc::vec![CorollaryMode::Verbatim, CorollaryMode::Corrected],
            ..ReportOptions::default()
        };
        let r = compose_report(&k4, &opts).unwrap();
        let labels: Vec<String> = r.bounds.iter().map(BoundValue::label).collect();
        assert_eq!(labels, ["eq1_nashwilliams", "corollary_corrected", "corollary_verbatim"]);

        let no_aut = ReportOptions { exact_aut: false, ..ReportOptions::default() };
        let r = compose_report(&k4, &no_aut).unwrap();
        assert!(r.aut.is_none() && r.gaps.iter().all(Option::is_none));
        assert_eq!(r.get(BoundId::Thm3Orbit).unwrap().reason(), Some(&Reason::OrbitUnavailable));
    }

    #[test]
    fn bound_id_parsing() {
        assert_eq!("eq1".parse::<BoundId>(), Ok(BoundId::Eq1NashWilliams));
        assert_eq!("thm3".parse::<BoundId>(), Ok(BoundId::Thm3Orbit));
        assert_eq!("eq6_starfree".parse::<BoundId>(), Ok(BoundId::Eq6StarFree));
        assert!("eq9".parse::<BoundId>().is_err());
    }
}
