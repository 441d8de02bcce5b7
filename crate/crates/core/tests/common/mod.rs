#![allow(dead_code)]

use std::collections::BTreeMap;

use llskit::dual_graph::{DualGraph, Edge, Mark, Vertex};
use llskit::multidegree::Multidegree;
use num_bigint::BigUint;
use rand::Rng;

/// Standard Young tableaux of a rows x cols rectangle by the hook length
/// formula, computed with plain factorials.
pub fn hook_length(rows: usize, cols: usize) -> BigUint {
    let n = rows * cols;
    let mut num = BigUint::from(1u32);
    for k in 1..=n {
        num *= BigUint::from(k);
    }
    let mut den = BigUint::from(1u32);
    for i in 0..rows {
        for j in 0..cols {
            den *= BigUint::from((rows - 1 - i) + (cols - 1 - j) + 1);
        }
    }
    num / den
}

pub fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Labeled trees on `k` vertices as edge lists, via Prüfer sequences.
pub fn labeled_trees(k: usize) -> Vec<Vec<(usize, usize)>> {
    if k == 1 {
        return vec![Vec::new()];
    }
    if k == 2 {
        return vec![vec![(0, 1)]];
    }
    let mut out = Vec::new();
    let total = k.pow((k - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::new();
        let mut c = code;
        for _ in 0..k - 2 {
            seq.push(c % k);
            c /= k;
        }
        out.push(prufer_decode(&seq, k));
    }
    out
}

fn prufer_decode(seq: &[usize], k: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; k];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..k).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..k).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

pub fn random_tree_edges(rng: &mut impl Rng, n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (rng.gen_range(0..v), v)).collect()
}

/// Rational components `c0..` joined by `skeleton`, with elliptic tail `t{i}`
/// attached to `c{owner[i]}`.
pub fn rational_tree_with_tails(
    k: usize,
    skeleton: &[(usize, usize)],
    owner: &[usize],
) -> DualGraph {
    let mut vertices: Vec<Vertex> = (0..k)
        .map(|i| Vertex {
            id: format!("c{i}"),
            genus: 0,
        })
        .collect();
    let mut edges: Vec<Edge> = skeleton
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| Edge {
            id: format!("s{i}"),
            ends: [format!("c{a}"), format!("c{b}")],
        })
        .collect();
    let mut marks = Vec::new();
    for (i, &o) in owner.iter().enumerate() {
        vertices.push(Vertex {
            id: format!("t{i}"),
            genus: 1,
        });
        edges.push(Edge {
            id: format!("e{i}"),
            ends: [format!("c{o}"), format!("t{i}")],
        });
        marks.push(Mark {
            vertex: format!("t{i}"),
            label: format!("P{i}"),
        });
    }
    DualGraph::new(vertices, edges, marks).expect("well formed")
}

/// Plain path or random tree on `n` genus-0 vertices `v0..`.
pub fn plain_tree(edges: &[(usize, usize)], n: usize) -> DualGraph {
    let vertices: Vec<(String, u32)> = (0..n).map(|i| (format!("v{i}"), 0)).collect();
    let vs: Vec<(&str, u32)> = vertices.iter().map(|(s, g)| (s.as_str(), *g)).collect();
    let es: Vec<(String, String, String)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (format!("e{i}"), format!("v{a}"), format!("v{b}")))
        .collect();
    let es: Vec<(&str, &str, &str)> = es
        .iter()
        .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
        .collect();
    DualGraph::from_parts(&vs, &es).expect("well formed")
}

/// Random canonical-side values on every edge.
pub fn random_multidegree(rng: &mut impl Rng, g: &DualGraph, d: i64, bound: i64) -> Multidegree {
    let values: BTreeMap<String, i64> = g
        .edges()
        .iter()
        .map(|e| (e.id.clone(), rng.gen_range(-bound..=bound)))
        .collect();
    Multidegree::from_canonical(g, d, &values).expect("valid multidegree")
}
