//! Instance generators and brute-force oracles shared by the integration
//! tests. None of the oracles call into the library's search code.

#![allow(dead_code)]

use eppa_core::structures::BinaryStructure;
use eppa_core::{ColoredDigraph, Digraph, Graph, PartialPermorphism};
use rand::rngs::SmallRng;
use rand::seq::SliceRandom;
use rand::Rng;

/// Whether `vs` (sorted) is a clique of `s`.
pub fn is_clique<S: BinaryStructure + ?Sized>(s: &S, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, x)| vs[i + 1..].iter().all(|y| s.holds(*x, *y)))
}

/// Plain recursive scan over increasing vertex lists.
pub fn has_clique<S: BinaryStructure + ?Sized>(s: &S, m: usize) -> bool {
    fn go<S: BinaryStructure + ?Sized>(s: &S, m: usize, start: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == m {
            return true;
        }
        for v in start..s.len() {
            if cur.iter().all(|u| s.holds(*u, v)) {
                cur.push(v);
                if go(s, m, v + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    go(s, m, 0, &mut Vec::new())
}

/// Whether some `k` vertices of a digraph span a tournament.
pub fn has_tournament_of_size<S: BinaryStructure + ?Sized>(s: &S, k: usize) -> bool {
    fn go<S: BinaryStructure + ?Sized>(s: &S, k: usize, start: usize, cur: &mut Vec<usize>) -> bool {
        if cur.len() == k {
            return true;
        }
        for v in start..s.len() {
            if cur.iter().all(|u| s.holds(*u, v) != s.holds(v, *u)) {
                cur.push(v);
                if go(s, k, v + 1, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    go(s, k, 0, &mut Vec::new())
}

pub fn random_graph(rng: &mut SmallRng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rng.gen_bool(p) {
                edges.push((x, y));
            }
        }
    }
    Graph::numbered(n, edges)
}

pub fn random_digraph(rng: &mut SmallRng, n: usize) -> Digraph {
    let mut arcs = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            match rng.gen_range(0..3) {
                1 => arcs.push((x, y)),
                2 => arcs.push((y, x)),
                _ => {}
            }
        }
    }
    Digraph::numbered(n, arcs)
}

/// A random `K_m`-free graph on at most `max_n` vertices.
pub fn random_clique_free(rng: &mut SmallRng, max_n: usize, m: usize) -> Graph {
    loop {
        let n = rng.gen_range(1..=max_n);
        let g = random_graph(rng, n, 0.5);
        if !has_clique(&g, m) {
            return g;
        }
    }
}

/// A random partial isomorphism with domain size at most `max_dom`,
/// found by rejection.
pub fn random_partial_iso<S: BinaryStructure + ?Sized>(rng: &mut SmallRng, s: &S, max_dom: usize) -> PartialPermorphism {
    let n = s.len();
    loop {
        let k = rng.gen_range(0..=max_dom.min(n));
        let mut pts: Vec<usize> = (0..n).collect();
        pts.shuffle(rng);
        let dom = pts[..k].to_vec();
        pts.shuffle(rng);
        let ran = pts[..k].to_vec();
        let preserves = dom
            .iter()
            .zip(&ran)
            .all(|(a, b)| dom.iter().zip(&ran).all(|(c, d)| s.holds(*a, *c) == s.holds(*b, *d)));
        if preserves {
            return PartialPermorphism::isomorphism(n, dom.into_iter().zip(ran)).unwrap();
        }
    }
}

/// Every automorphism of a small structure, by trying all permutations.
pub fn automorphisms<S: BinaryStructure + ?Sized>(s: &S) -> Vec<Vec<usize>> {
    let n = s.len();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        if (0..n).all(|x| (0..n).all(|y| s.holds(x, y) == s.holds(p[x], p[y]))) {
            out.push(p.to_vec());
        }
    });
    out
}

pub fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

pub fn uncolored_digraph(d: Digraph) -> ColoredDigraph {
    ColoredDigraph::uncolored(d)
}
