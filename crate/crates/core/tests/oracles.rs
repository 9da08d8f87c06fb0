//! Cross-checks of the exact algorithms against independent brute-force oracles.

use autbound_core::aut::{are_isomorphic, aut_order, aut_order_naive, canonical_form};
use autbound_core::corpus::{all_graphs, connected_graphs};
use autbound_core::embeddings::{count_copies, count_labeled};
use autbound_core::structure::{has_hamiltonian_path, has_induced_star, path_cover_number, star_free_parameter};
use autbound_core::trees::{all_spanning_trees, greedy_spanning_tree, tree_aut_exact, tree_aut_upper};
use autbound_core::{Graph, SpanningTree, TieBreak};
use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

/// Spanning tree count by the Matrix-Tree theorem: any cofactor of the
/// Laplacian, evaluated with fraction-free Bareiss elimination.
fn matrix_tree_count(g: &Graph) -> BigInt {
    let n = g.n();
    if n == 1 {
        return BigInt::from(1);
    }
    let m = n - 1;
    let mut a: Vec<Vec<BigInt>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    if i == j {
                        BigInt::from(g.degree(i))
                    } else if g.has_edge(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::from(0)
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = BigInt::from(1);
    let mut sign = 1;
    for k in 0..m {
        if a[k][k] == BigInt::from(0) {
            let Some(p) = (k + 1..m).find(|&r| a[r][k] != BigInt::from(0)) else {
                return BigInt::from(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    prev * sign
}

fn random_graph(n: usize, bits: u64) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> i & 1 == 1 {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// All labeled trees on `n` vertices, via Prüfer sequences.
fn prufer_trees(n: usize) -> Vec<Graph> {
    if n <= 2 {
        return vec![Graph::from_edges(n, (1..n).map(|v| (0, v))).unwrap()];
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    (0..total)
        .map(|mut code| {
            let seq: Vec<usize> = (0..len)
                .map(|_| {
                    let d = code % n;
                    code /= n;
                    d
                })
                .collect();
            prufer_decode(n, &seq)
        })
        .collect()
}

fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).unwrap()
}

#[test]
fn corpus_counts_match_known_sequences() {
    let counts: Vec<usize> = (1..=7).map(|n| connected_graphs(n).unwrap().len()).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
    assert_eq!(all_graphs(6).unwrap().len(), 156);
}

#[test]
fn corpus_has_no_isomorphic_duplicates() {
    let graphs = connected_graphs(6).unwrap();
    for g in &graphs {
        assert_eq!(&canonical_form(g), g);
    }
    let mut sorted = graphs.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), graphs.len());
}

#[test]
fn aut_order_matches_naive_on_all_graphs_up_to_six() {
    for n in 1..=6 {
        for g in all_graphs(n).unwrap() {
            let r = aut_order(&g);
            assert_eq!(r.order, aut_order_naive(&g).unwrap(), "{g:?}");
            assert_eq!(r.orbits.iter().map(Vec::len).sum::<usize>(), n);
            for orbit in &r.orbits {
                assert_eq!(&r.order % BigUint::from(orbit.len()), BigUint::from(0u32));
            }
        }
    }
}

#[test]
fn spanning_tree_counts_match_matrix_tree_theorem() {
    for n in 1..=6 {
        for g in connected_graphs(n).unwrap() {
            let trees = all_spanning_trees(&g, None).unwrap();
            assert!(!trees.truncated);
            assert_eq!(BigInt::from(trees.trees.len()), matrix_tree_count(&g), "{g:?}");
        }
    }
    let k7 = Graph::named(autbound_core::Family::Complete(7)).unwrap();
    assert_eq!(all_spanning_trees(&k7, None).unwrap().trees.len(), 16807);
}

#[test]
fn tree_automorphisms_match_naive_on_all_labeled_trees() {
    for n in 1..=7 {
        for t in prufer_trees(n) {
            let tree = SpanningTree::from_tree_graph(&t).unwrap();
            let exact = tree_aut_exact(&tree);
            assert_eq!(exact, aut_order_naive(&t).unwrap(), "{t:?}");
            if n >= 3 {
                assert!(exact <= tree_aut_upper(&tree).unwrap());
            }
        }
    }
    // a sample at n = 8
    for code in (0..8usize.pow(6)).step_by(997) {
        let seq: Vec<usize> = (0..6).map(|i| code / 8usize.pow(i) % 8).collect();
        let t = prufer_decode(8, &seq);
        let tree = SpanningTree::from_tree_graph(&t).unwrap();
        assert_eq!(tree_aut_exact(&tree), aut_order_naive(&t).unwrap(), "{t:?}");
    }
}

#[test]
fn single_edge_tree_breaks_the_product_estimate() {
    let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
    let t = SpanningTree::from_tree_graph(&k2).unwrap();
    // Delta_T * prod (d_T - 1)! = 1 * 0! * 0! = 1, yet aut = 2.
    assert_eq!(tree_aut_exact(&t), BigUint::from(2u32));
    assert!(tree_aut_upper(&t).is_err());
}

/// Minimum path cover by trying every vertex order and every cut pattern.
fn brute_path_cover(g: &Graph) -> usize {
    let n = g.n();
    let mut best = n;
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |order| {
        // consecutive vertices stay in one path iff adjacent
        let breaks = order.windows(2).filter(|w| !g.has_edge(w[0], w[1])).count();
        best = best.min(breaks + 1);
    });
    best
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

#[test]
fn path_cover_matches_brute_force() {
    for n in 1..=6 {
        for g in all_graphs(n).unwrap() {
            let r = path_cover_number(&g).unwrap();
            assert!(r.validate(&g), "{g:?} {r:?}");
            assert_eq!(r.p, brute_path_cover(&g), "{g:?}");
        }
    }
}

#[test]
fn hamiltonian_path_agrees_with_cover_number_on_seven_vertices() {
    for g in connected_graphs(7).unwrap() {
        let r = path_cover_number(&g).unwrap();
        assert!(r.validate(&g));
        assert_eq!(has_hamiltonian_path(&g).unwrap(), r.p == 1);
    }
}

#[test]
fn star_free_parameter_matches_induced_star_search() {
    for n in 1..=7 {
        for g in all_graphs(n).unwrap() {
            let s = star_free_parameter(&g).unwrap();
            for m in s.m_min..=n {
                assert!(!has_induced_star(&g, m), "{g:?} has K_1,{m}");
            }
            if s.m_min > 2 {
                assert!(has_induced_star(&g, s.m_min - 1), "{g:?}");
            }
            if let Some((v, set)) = &s.witness {
                assert_eq!(set.len(), s.m_min - 1);
                assert!(set.iter().all(|&u| g.has_edge(*v, u)));
                assert!(set.iter().all(|&a| set.iter().all(|&b| !g.has_edge(a, b))));
            }
        }
    }
}

#[test]
fn greedy_invariants_on_all_connected_graphs() {
    for n in 1..=7 {
        for g in connected_graphs(n).unwrap() {
            for v0 in 0..n {
                for tb in [TieBreak::LowestIndex, TieBreak::MinimizeProduct, TieBreak::MaximizeProduct] {
                    let gt = greedy_spanning_tree(&g, v0, tb).unwrap();
                    gt.check(&g).unwrap_or_else(|e| panic!("{g:?} from {v0}: {e}"));
                    let sum: usize = gt.sequence[1..].iter().map(|&v| gt.tree.degree(v) - 1).sum();
                    assert_eq!(1 + g.degree(v0) + sum, n);
                }
            }
        }
    }
}

#[test]
fn labeled_copies_identity_on_small_pairs() {
    for g in connected_graphs(5).unwrap() {
        for f in all_graphs(5).unwrap() {
            if f.edge_count() > g.edge_count() {
                continue;
            }
            let labeled = count_labeled(&f, &g).unwrap();
            let copies = count_copies(&f, &g).unwrap();
            assert_eq!(labeled, copies * aut_order_naive(&f).unwrap(), "{f:?} in {g:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn aut_order_matches_naive_on_random_graphs(n in 7usize..=8, bits: u64) {
        let g = random_graph(n, bits);
        prop_assert_eq!(aut_order(&g).order, aut_order_naive(&g).unwrap());
    }

    #[test]
    fn aut_order_is_relabeling_invariant(n in 2usize..=11, bits: u64, perm in Just((0..11).collect::<Vec<usize>>()).prop_shuffle()) {
        let g = random_graph(n, bits);
        let p: Vec<usize> = perm.iter().copied().filter(|&x| x < n).collect();
        let h = g.relabel(&p).unwrap();
        let (a, b) = (aut_order(&g), aut_order(&h));
        prop_assert_eq!(&a.order, &b.order);
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        for (v, &pv) in p.iter().enumerate() {
            prop_assert_eq!(a.orbit_of(v).len(), b.orbit_of(pv).len());
        }
    }

    #[test]
    fn complement_has_the_same_group(n in 1usize..=7, bits: u64) {
        let g = random_graph(n, bits);
        prop_assert_eq!(aut_order(&g).order, aut_order(&g.complement()).order);
    }

    #[test]
    fn degree_sum_is_twice_the_edge_count(n in 1usize..=11, bits: u64) {
        let g = random_graph(n, bits);
        let s = g.degree_stats();
        prop_assert_eq!(s.degrees.iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert!(num_rational::Ratio::from_integer(s.delta_min) <= s.d_avg);
        prop_assert!(s.d_avg <= num_rational::Ratio::from_integer(s.delta_max));
    }
}
