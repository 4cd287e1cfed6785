//! Forbidden-pattern searches, realisability predicates, and checkers for
//! link types and weak homomorphisms of general relational structures.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use crate::bits;
use crate::structures::{
    BinaryStructure, ColorId, ColorSet, ColoredDigraph, ColoredGraph, CriticalColoringSet,
    CriticalTuples, ForbiddenTournament, RelationalStructure, Tournament,
};

/// The class a construction must stay inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FreenessConstraint {
    /// No `m` pairwise adjacent vertices sharing a critical colouring.
    CliqueFree { m: usize, critical: CriticalColoringSet },
    /// No embedding of `T_j` whose colour sets form a tuple of `U_j`.
    TournamentFree(Vec<ForbiddenTournament>),
    /// No weak homomorphism from any listed structure.
    WeakHomFree(Vec<RelationalStructure>),
}

impl FreenessConstraint {
    pub fn clique(m: usize) -> Self {
        FreenessConstraint::CliqueFree {
            m,
            critical: CriticalColoringSet::plain(),
        }
    }
}

/// Vertices of a forbidden copy, with the critical colouring it matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<usize>,
    pub coloring: WitnessColoring,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessColoring {
    /// One colour per palette, carried by every vertex of a clique.
    Colors(Vec<ColorId>),
    /// The colour sets of the embedded tournament, in tournament order.
    Sets(Vec<ColorSet>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakHomWitness {
    /// Index of the pattern in the family.
    pub pattern: usize,
    /// Image of each pattern element.
    pub map: Vec<usize>,
}

/// Outcome of a search run under an effort budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    NotFound,
    Exhausted,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }
}

struct Budget(Option<u64>);

impl Budget {
    fn tick(&mut self) -> bool {
        match &mut self.0 {
            None => true,
            Some(0) => false,
            Some(n) => {
                *n -= 1;
                true
            }
        }
    }
}

fn tuple_inside(tuple: &[ColorId], colors: &ColorSet) -> bool {
    tuple.iter().all(|c| colors.contains(*c))
}

struct CliqueSearch<'a, S: ?Sized> {
    g: &'a S,
    m: usize,
    allowed: Option<&'a [bool]>,
    budget: Budget,
    stack: Vec<usize>,
    exhausted: bool,
}

impl<S: BinaryStructure + ?Sized> CliqueSearch<'_, S> {
    fn allowed(&self, v: usize) -> bool {
        self.allowed.is_none_or(|a| a[v])
    }

    fn extend(&mut self, tuples: &[&Vec<ColorId>]) -> Option<Vec<ColorId>> {
        if self.stack.len() == self.m {
            return tuples.first().map(|t| (*t).clone());
        }
        if !self.budget.tick() {
            self.exhausted = true;
            return None;
        }
        let candidates: Vec<usize> = match self.stack.first() {
            None => (0..self.g.len()).collect(),
            Some(&first) => {
                let last = *self.stack.last().unwrap();
                self.g
                    .out_neighbors(first)
                    .iter()
                    .copied()
                    .filter(|v| *v > last && self.stack[1..].iter().all(|u| self.g.holds(*u, *v)))
                    .collect()
            }
        };
        for v in candidates {
            if !self.allowed(v) {
                continue;
            }
            let colors = self.g.colors(v);
            let kept: Vec<&Vec<ColorId>> = tuples.iter().copied().filter(|t| tuple_inside(t, colors)).collect();
            if kept.is_empty() {
                continue;
            }
            self.stack.push(v);
            if let Some(t) = self.extend(&kept) {
                return Some(t);
            }
            self.stack.pop();
            if self.exhausted {
                return None;
            }
        }
        None
    }
}

fn clique_search<S: BinaryStructure + ?Sized>(
    g: &S,
    m: usize,
    tuples: &[&Vec<ColorId>],
    allowed: Option<&[bool]>,
    budget: Option<u64>,
) -> Search<Witness> {
    if tuples.is_empty() {
        return Search::NotFound;
    }
    let mut s = CliqueSearch {
        g,
        m,
        allowed,
        budget: Budget(budget),
        stack: Vec::new(),
        exhausted: false,
    };
    match s.extend(tuples) {
        Some(t) => Search::Found(Witness {
            vertices: s.stack,
            coloring: WitnessColoring::Colors(t),
        }),
        None if s.exhausted => Search::Exhausted,
        None => Search::NotFound,
    }
}

/// First (lexicographically) set of `m` pairwise adjacent vertices that all
/// carry every colour of some critical colouring.
///
/// With no palettes and `critical = {()}` this is plain `K_m` detection.
pub fn find_critical_clique<S: BinaryStructure + ?Sized>(
    g: &S,
    m: usize,
    critical: &CriticalColoringSet,
) -> Option<Witness> {
    critical_clique_search(g, m, critical, None).found()
}

/// [`find_critical_clique`] that gives up after `budget` search nodes.
pub fn critical_clique_search<S: BinaryStructure + ?Sized>(
    g: &S,
    m: usize,
    critical: &CriticalColoringSet,
    budget: Option<u64>,
) -> Search<Witness> {
    let tuples: Vec<&Vec<ColorId>> = critical.iter().collect();
    clique_search(g, m, &tuples, None, budget)
}

/// Per-palette colour counts `d_j` every realisable colour set must match.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CardinalityLedger {
    pub degrees: Vec<usize>,
    pub palettes: Vec<Range<u32>>,
}

impl CardinalityLedger {
    /// Reads the constants off a graph; `None` if some palette is not uniform.
    pub fn of_graph(g: &ColoredGraph) -> Option<Self> {
        let degrees = (0..g.palette_count())
            .map(|j| g.uniform_degree(j))
            .collect::<Option<Vec<_>>>()?;
        Some(CardinalityLedger {
            degrees,
            palettes: g.palettes().iter().map(|p| p.range()).collect(),
        })
    }

    pub fn admits(&self, u0: &ColorSet) -> bool {
        self.degrees
            .iter()
            .zip(&self.palettes)
            .all(|(d, r)| u0.count_in(r.clone()) == *d)
    }

    pub fn with_palette(&self, range: Range<u32>, degree: usize) -> Self {
        let mut out = self.clone();
        out.degrees.push(degree);
        out.palettes.push(range);
        out
    }
}

/// Whether a point with neighbours exactly `a0` inside `a` and colours `u0`
/// can be added without creating a critical clique of size `m + 1`: no `m`
/// vertices of `a0` form a clique critically coloured by a tuple lying in
/// `u0`.
pub fn is_realisable_graph(
    a: &ColoredGraph,
    a0: &[usize],
    u0: &ColorSet,
    m: usize,
    critical: &CriticalColoringSet,
    ledger: Option<&CardinalityLedger>,
) -> bool {
    if ledger.is_some_and(|l| !l.admits(u0)) {
        return false;
    }
    let tuples: Vec<&Vec<ColorId>> = critical.iter().filter(|t| tuple_inside(t, u0)).collect();
    let mut allowed = vec![false; a.len()];
    for v in a0 {
        allowed[*v] = true;
    }
    matches!(clique_search(a, m, &tuples, Some(&allowed), None), Search::NotFound)
}

/// Precomputed form of [`is_realisable_graph`] for all subsets of a small
/// vertex set at once.
#[derive(Clone, Debug)]
pub struct GraphRealisability {
    cliques: Vec<(u64, Vec<Vec<ColorId>>)>,
    ledger: Option<CardinalityLedger>,
}

impl GraphRealisability {
    /// `a` must have fewer than 64 vertices.
    pub fn new(a: &ColoredGraph, m: usize, critical: &CriticalColoringSet, ledger: Option<CardinalityLedger>) -> Self {
        assert!(a.len() < 64, "realisability tables need fewer than 64 points");
        let mut cliques = Vec::new();
        for mask in bits::masks_of_size(a.len(), m) {
            let vs: Vec<usize> = bits::members(mask).collect();
            let is_clique = vs
                .iter()
                .enumerate()
                .all(|(i, x)| vs[i + 1..].iter().all(|y| a.holds(*x, *y)));
            if !is_clique {
                continue;
            }
            let tuples: Vec<Vec<ColorId>> = critical
                .iter()
                .filter(|t| vs.iter().all(|v| tuple_inside(t, a.colors(*v))))
                .cloned()
                .collect();
            if !tuples.is_empty() {
                cliques.push((mask, tuples));
            }
        }
        GraphRealisability { cliques, ledger }
    }

    pub fn is_realisable(&self, a0: u64, u0: &ColorSet) -> bool {
        if self.ledger.as_ref().is_some_and(|l| !l.admits(u0)) {
            return false;
        }
        !self
            .cliques
            .iter()
            .any(|(mask, tuples)| mask & !a0 == 0 && tuples.iter().any(|t| tuple_inside(t, u0)))
    }
}

struct Embedder<'a, S: ?Sized> {
    host: &'a S,
    pattern: &'a Tournament,
    slots: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
    budget: Budget,
    exhausted: bool,
}

impl<S: BinaryStructure + ?Sized> Embedder<'_, S> {
    /// Calls `accept` on every embedding; stops when it returns true.
    fn run(&mut self, k: usize, accept: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == self.pattern.len() {
            return accept(&self.image);
        }
        if !self.budget.tick() {
            self.exhausted = true;
            return false;
        }
        let candidates = core::mem::take(&mut self.slots[k]);
        let mut done = false;
        for &v in &candidates {
            if self.used[v] {
                continue;
            }
            let fits = (0..k).all(|i| {
                let u = self.image[i];
                self.host.holds(u, v) == self.pattern.beats(i, k) && self.host.holds(v, u) == self.pattern.beats(k, i)
            });
            if !fits {
                continue;
            }
            self.image.push(v);
            self.used[v] = true;
            done = self.run(k + 1, accept);
            self.used[v] = false;
            self.image.pop();
            if done || self.exhausted {
                break;
            }
        }
        self.slots[k] = candidates;
        done
    }
}

fn tournament_search<S: BinaryStructure + ?Sized>(
    host: &S,
    t: &Tournament,
    critical: &CriticalTuples,
    budget: Option<u64>,
) -> Search<Witness> {
    if t.is_empty() || host.len() < t.len() {
        return Search::NotFound;
    }
    let all: Vec<usize> = (0..host.len()).collect();
    let mut found = None;
    let mut exhausted = false;
    for first in 0..host.len() {
        // Every later vertex is an out- or in-neighbour of the first image.
        let mut slots = vec![Vec::new(); t.len()];
        slots[0] = all.clone();
        for (k, slot) in slots.iter_mut().enumerate().skip(1) {
            *slot = if t.beats(0, k) {
                host.out_neighbors(first).to_vec()
            } else {
                host.in_neighbors(first).to_vec()
            };
        }
        slots[0] = vec![first];
        let mut e = Embedder {
            host,
            pattern: t,
            slots,
            image: Vec::new(),
            used: vec![false; host.len()],
            budget: Budget(budget),
            exhausted: false,
        };
        let mut accept = |image: &[usize]| {
            let sets: Vec<ColorSet> = image.iter().map(|v| host.colors(*v).clone()).collect();
            if critical.contains(&sets) {
                found = Some(Witness {
                    vertices: image.to_vec(),
                    coloring: WitnessColoring::Sets(sets),
                });
                true
            } else {
                false
            }
        };
        if e.run(0, &mut accept) {
            break;
        }
        if e.exhausted {
            exhausted = true;
            break;
        }
    }
    match found {
        Some(w) => Search::Found(w),
        None if exhausted => Search::Exhausted,
        None => Search::NotFound,
    }
}

/// First embedding `s` of `t` (ordered by the image of the first vertex,
/// then lexicographically) with `(U(s_1), …, U(s_l))` critical.
pub fn find_critical_tournament_copy<S: BinaryStructure + ?Sized>(
    a: &S,
    t: &Tournament,
    critical: &CriticalTuples,
) -> Option<Witness> {
    tournament_search(a, t, critical, None).found()
}

/// [`find_critical_tournament_copy`] under a node budget.
pub fn critical_tournament_search<S: BinaryStructure + ?Sized>(
    a: &S,
    t: &Tournament,
    critical: &CriticalTuples,
    budget: Option<u64>,
) -> Search<Witness> {
    tournament_search(a, t, critical, budget)
}

/// Every embedding of `T − t_1` into `a` that sends out-neighbours of `t_1`
/// into `plus` and in-neighbours into `minus`, as images of `t_2, …`.
fn signed_embeddings(a: &ColoredDigraph, t: &Tournament, plus: &[usize], minus: &[usize]) -> Vec<Vec<usize>> {
    let rest = t.without_first();
    let slots: Vec<Vec<usize>> = (1..t.len())
        .map(|k| if t.beats(0, k) { plus.to_vec() } else { minus.to_vec() })
        .collect();
    let mut e = Embedder {
        host: a,
        pattern: &rest,
        slots,
        image: Vec::new(),
        used: vec![false; a.len()],
        budget: Budget(None),
        exhausted: false,
    };
    let mut out = Vec::new();
    e.run(0, &mut |image| {
        out.push(image.to_vec());
        false
    });
    out
}

/// Whether a new point with out-neighbours `plus`, in-neighbours `minus`
/// (inside `a`) and colours `u0` avoids completing a critical copy of any
/// forbidden tournament with more than one vertex, in the role of its first
/// vertex.
pub fn is_realisable_digraph(
    a: &ColoredDigraph,
    plus: &[usize],
    minus: &[usize],
    u0: &ColorSet,
    forbidden: &[ForbiddenTournament],
) -> bool {
    forbidden.iter().filter(|f| f.tournament.len() > 1).all(|f| {
        signed_embeddings(a, &f.tournament, plus, minus).iter().all(|image| {
            let mut tuple = vec![u0.clone()];
            tuple.extend(image.iter().map(|v| a.colors(*v).clone()));
            !f.critical.contains(&tuple)
        })
    })
}

/// Precomputed form of [`is_realisable_digraph`] over a small digraph.
#[derive(Clone, Debug)]
pub struct DigraphRealisability {
    /// `(tournament index, out-mask, in-mask, colour sets of t_2, …)`.
    embeddings: Vec<(usize, u64, u64, Vec<ColorSet>)>,
    critical: Vec<CriticalTuples>,
}

impl DigraphRealisability {
    pub fn new(a: &ColoredDigraph, forbidden: &[ForbiddenTournament]) -> Self {
        assert!(a.len() < 64, "realisability tables need fewer than 64 points");
        let all: Vec<usize> = (0..a.len()).collect();
        let mut embeddings = Vec::new();
        for (j, f) in forbidden.iter().enumerate() {
            if f.tournament.len() <= 1 {
                continue;
            }
            for image in signed_embeddings(a, &f.tournament, &all, &all) {
                let mut plus = 0u64;
                let mut minus = 0u64;
                for (k, v) in image.iter().enumerate() {
                    if f.tournament.beats(0, k + 1) {
                        plus |= 1 << v;
                    } else {
                        minus |= 1 << v;
                    }
                }
                let sets = image.iter().map(|v| a.colors(*v).clone()).collect();
                embeddings.push((j, plus, minus, sets));
            }
        }
        DigraphRealisability {
            embeddings,
            critical: forbidden.iter().map(|f| f.critical.clone()).collect(),
        }
    }

    pub fn is_realisable(&self, plus: u64, minus: u64, u0: &ColorSet) -> bool {
        let mut tuple = Vec::new();
        for (j, p, m, sets) in &self.embeddings {
            if p & !plus != 0 || m & !minus != 0 {
                continue;
            }
            tuple.clear();
            tuple.push(u0.clone());
            tuple.extend(sets.iter().cloned());
            if self.critical[*j].contains(&tuple) {
                return false;
            }
        }
        true
    }
}

/// A single point, or a structure covered by the entries of one held tuple.
pub fn is_link_structure(l: &RelationalStructure) -> bool {
    if l.len() == 1 {
        return true;
    }
    if l.is_empty() {
        return false;
    }
    (0..l.signature().len()).any(|s| {
        l.relation(s).iter().any(|t| {
            let entries: BTreeSet<usize> = t.iter().copied().collect();
            entries.len() == l.len()
        })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    heap_permute(n, &mut cur, &mut out);
    out
}

fn heap_permute(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k <= 1 {
        out.push(cur.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, cur, out);
        if k.is_multiple_of(2) {
            cur.swap(i, k - 1);
        } else {
            cur.swap(0, k - 1);
        }
    }
}

type CanonicalForm = (usize, Vec<Vec<Vec<usize>>>);

/// Isomorphism invariant: least relabelled relation list over all orderings.
fn canonical_form(s: &RelationalStructure) -> CanonicalForm {
    let mut best: Option<Vec<Vec<Vec<usize>>>> = None;
    for perm in permutations(s.len()) {
        let form: Vec<Vec<Vec<usize>>> = (0..s.signature().len())
            .map(|r| {
                let mut ts: Vec<Vec<usize>> = s.relation(r).iter().map(|t| t.iter().map(|v| perm[*v]).collect()).collect();
                ts.sort();
                ts
            })
            .collect();
        if best.as_ref().is_none_or(|b| form < *b) {
            best = Some(form);
        }
    }
    (s.len(), best.unwrap_or_default())
}

/// Isomorphism types of link structures embedding into `a`. Every embedded
/// link structure is the substructure induced on a point or on the entries
/// of a held tuple, so those are the only candidates.
fn link_types(a: &RelationalStructure) -> BTreeSet<CanonicalForm> {
    let mut supports: BTreeSet<Vec<usize>> = (0..a.len()).map(|v| vec![v]).collect();
    for s in 0..a.signature().len() {
        for t in a.relation(s) {
            let entries: BTreeSet<usize> = t.iter().copied().collect();
            supports.insert(entries.into_iter().collect());
        }
    }
    supports.iter().map(|sup| canonical_form(&a.induced(sup))).collect()
}

/// Whether exactly the same link structures embed into `a` and `b`.
///
/// Structures over different signatures never share a link type.
pub fn same_link_type(a: &RelationalStructure, b: &RelationalStructure) -> bool {
    a.signature() == b.signature() && link_types(a) == link_types(b)
}

/// Whether `rho` sends every held tuple of `t` to a held tuple of `a`.
pub fn is_weak_homomorphism(rho: &[usize], t: &RelationalStructure, a: &RelationalStructure) -> bool {
    if rho.len() != t.len() || rho.iter().any(|v| *v >= a.len()) || t.signature() != a.signature() {
        return false;
    }
    (0..t.signature().len()).all(|s| {
        t.relation(s).iter().all(|tuple| {
            let img: Vec<usize> = tuple.iter().map(|v| rho[*v]).collect();
            a.holds(s, &img)
        })
    })
}

fn weak_hom_from(t: &RelationalStructure, a: &RelationalStructure) -> Option<Vec<usize>> {
    // Tuples become checkable once their largest entry is assigned.
    let mut due: Vec<Vec<(usize, &Vec<usize>)>> = vec![Vec::new(); t.len()];
    for s in 0..t.signature().len() {
        for tuple in t.relation(s) {
            if let Some(last) = tuple.iter().max() {
                due[*last].push((s, tuple));
            }
        }
    }
    let mut rho = Vec::with_capacity(t.len());
    fn go(k: usize, rho: &mut Vec<usize>, due: &[Vec<(usize, &Vec<usize>)>], a: &RelationalStructure) -> bool {
        if k == due.len() {
            return true;
        }
        for v in 0..a.len() {
            rho.push(v);
            let ok = due[k].iter().all(|(s, tuple)| {
                let img: Vec<usize> = tuple.iter().map(|x| rho[*x]).collect();
                a.holds(*s, &img)
            });
            if ok && go(k + 1, rho, due, a) {
                return true;
            }
            rho.pop();
        }
        false
    }
    go(0, &mut rho, &due, a).then_some(rho)
}

/// First pattern of `family` admitting a weak homomorphism into `a`.
pub fn weakhom_free(a: &RelationalStructure, family: &[RelationalStructure]) -> Option<WeakHomWitness> {
    family.iter().enumerate().find_map(|(i, t)| {
        if t.signature() != a.signature() {
            return None;
        }
        weak_hom_from(t, a).map(|map| WeakHomWitness { pattern: i, map })
    })
}

/// Re-checks a witness against the constraint it claims to violate.
pub fn witness_holds<S: BinaryStructure + ?Sized>(s: &S, constraint: &FreenessConstraint, w: &Witness) -> bool {
    let distinct = w.vertices.iter().collect::<BTreeSet<_>>().len() == w.vertices.len();
    if !distinct || w.vertices.iter().any(|v| *v >= s.len()) {
        return false;
    }
    match (constraint, &w.coloring) {
        (FreenessConstraint::CliqueFree { m, critical }, WitnessColoring::Colors(t)) => {
            w.vertices.len() == *m
                && critical.contains(t)
                && w.vertices.iter().all(|v| tuple_inside(t, s.colors(*v)))
                && w.vertices.iter().all(|x| w.vertices.iter().all(|y| x == y || s.holds(*x, *y)))
        }
        (FreenessConstraint::TournamentFree(family), WitnessColoring::Sets(sets)) => family.iter().any(|f| {
            f.tournament.len() == w.vertices.len()
                && f.critical.contains(sets)
                && w.vertices.iter().zip(sets).all(|(v, set)| s.colors(*v) == set)
                && (0..w.vertices.len()).all(|i| {
                    (0..w.vertices.len())
                        .all(|k| i == k || s.holds(w.vertices[i], w.vertices[k]) == f.tournament.beats(i, k))
                })
        }),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{Digraph, Graph};
    use alloc::string::String;
    use proptest::prelude::*;

    fn plain(g: Graph) -> ColoredGraph {
        ColoredGraph::uncolored(g)
    }

    fn cycle(n: usize) -> Graph {
        Graph::numbered(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn triangle_witness() {
        let k3 = plain(Graph::numbered(3, [(0, 1), (1, 2), (0, 2)]));
        let w = find_critical_clique(&k3, 3, &CriticalColoringSet::plain()).unwrap();
        assert_eq!(w.vertices, vec![0, 1, 2]);
        assert!(witness_holds(&k3, &FreenessConstraint::clique(3), &w));
    }

    #[test]
    fn five_cycle_has_no_triangle() {
        assert!(find_critical_clique(&plain(cycle(5)), 3, &CriticalColoringSet::plain()).is_none());
    }

    #[test]
    fn coloured_single_vertex_is_a_critical_k1() {
        let g = ColoredGraph::new(
            Graph::numbered(1, []),
            vec![vec![String::from("V")]],
            vec![ColorSet::new([ColorId(0)])],
        )
        .unwrap();
        let uc = CriticalColoringSet::new(1, [vec![ColorId(0)]]).unwrap();
        assert_eq!(find_critical_clique(&g, 1, &uc).unwrap().vertices, vec![0]);
    }

    #[test]
    fn realisability_examples() {
        let g = ColoredGraph::new(
            Graph::numbered(2, [(0, 1)]),
            vec![vec![String::from("V"), String::from("W")]],
            vec![ColorSet::new([ColorId(0)]), ColorSet::new([ColorId(0)])],
        )
        .unwrap();
        let empty = CriticalColoringSet::new(1, []).unwrap();
        assert!(is_realisable_graph(&g, &[], &ColorSet::new([ColorId(1)]), 2, &empty, None));
        let uc = CriticalColoringSet::new(1, [vec![ColorId(0)]]).unwrap();
        let u0 = ColorSet::new([ColorId(0), ColorId(1)]);
        assert!(!is_realisable_graph(&g, &[0, 1], &u0, 2, &uc, None));
        assert!(is_realisable_graph(&g, &[0], &u0, 2, &uc, None));
        assert!(is_realisable_graph(&g, &[0, 1], &ColorSet::new([ColorId(1)]), 2, &uc, None));
        let table = GraphRealisability::new(&g, 2, &uc, None);
        assert!(!table.is_realisable(0b11, &u0));
        assert!(table.is_realisable(0b01, &u0));
    }

    #[test]
    fn tournament_copies() {
        let cyc = ColoredDigraph::uncolored(Digraph::numbered(3, [(0, 1), (1, 2), (2, 0)]));
        let t = Tournament::cyclic3();
        assert!(find_critical_tournament_copy(&cyc, &t, &CriticalTuples::All).is_some());
        let trans = ColoredDigraph::uncolored(Digraph::numbered(3, [(0, 1), (1, 2), (0, 2)]));
        assert!(find_critical_tournament_copy(&trans, &t, &CriticalTuples::All).is_none());
        let arc = ColoredDigraph::uncolored(Digraph::numbered(2, [(0, 1)]));
        assert!(find_critical_tournament_copy(&arc, &t, &CriticalTuples::All).is_none());
    }

    #[test]
    fn digraph_realisability() {
        let arc = ColoredDigraph::uncolored(Digraph::numbered(2, [(0, 1)]));
        let f = vec![ForbiddenTournament::plain(Tournament::cyclic3())];
        let none = ColorSet::empty();
        assert!(is_realisable_digraph(&arc, &[], &[], &none, &f));
        // t1 -> t2 -> t3 -> t1: t2 is an out-neighbour, t3 an in-neighbour,
        // and the arc must run t2 -> t3.
        assert!(!is_realisable_digraph(&arc, &[0], &[1], &none, &f));
        assert!(is_realisable_digraph(&arc, &[1], &[0], &none, &f));
        for a0 in [&[0usize][..], &[1]] {
            assert!(is_realisable_digraph(&arc, a0, &[], &none, &f));
            assert!(is_realisable_digraph(&arc, &[], a0, &none, &f));
        }
        let table = DigraphRealisability::new(&arc, &f);
        assert!(!table.is_realisable(0b01, 0b10, &none));
        assert!(table.is_realisable(0b10, 0b01, &none));
    }

    #[test]
    fn link_structures() {
        let one = RelationalStructure::from_graph(&Graph::numbered(1, []));
        assert!(is_link_structure(&one));
        let edge = RelationalStructure::from_graph(&Graph::numbered(2, [(0, 1)]));
        assert!(is_link_structure(&edge));
        let two = RelationalStructure::from_graph(&Graph::numbered(2, []));
        assert!(!is_link_structure(&two));
        assert!(same_link_type(&edge, &edge));
        assert!(!same_link_type(&edge, &two));
        let path = RelationalStructure::from_graph(&Graph::numbered(3, [(0, 1), (1, 2)]));
        assert!(same_link_type(&edge, &path));
    }

    #[test]
    fn weak_homomorphisms() {
        let k2 = RelationalStructure::complete_graph(2);
        let point = RelationalStructure::from_graph(&Graph::numbered(1, []));
        assert!(!is_weak_homomorphism(&[0, 0], &k2, &point));
        assert!(is_weak_homomorphism(&[0, 1], &k2, &k2));
        assert!(weakhom_free(&k2, &[]).is_none());
        let k3 = RelationalStructure::complete_graph(3);
        assert!(weakhom_free(&k3, &[k3.clone()]).is_some());
    }

    fn graph_strategy(max: usize) -> impl Strategy<Value = Graph> {
        (1..=max).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if bits[k] {
                            edges.push((a, b));
                        }
                        k += 1;
                    }
                }
                Graph::numbered(n, edges)
            })
        })
    }

    proptest! {
        #[test]
        fn clique_search_agrees_with_subset_scan(g in graph_strategy(6), m in 1usize..5) {
            let brute = bits::masks_of_size(g.len(), m).into_iter().any(|mask| {
                let vs: Vec<usize> = bits::members(mask).collect();
                vs.iter().all(|x| vs.iter().all(|y| x == y || g.adjacent(*x, *y)))
            });
            let found = find_critical_clique(&plain(g), m, &CriticalColoringSet::plain());
            prop_assert_eq!(brute, found.is_some());
        }

        #[test]
        fn weak_hom_from_clique_is_an_embedding(g in graph_strategy(6), m in 2usize..5) {
            let rs = RelationalStructure::from_graph(&g);
            let w = weakhom_free(&rs, &[RelationalStructure::complete_graph(m)]);
            prop_assert_eq!(w.is_some(), find_critical_clique(&plain(g.clone()), m, &CriticalColoringSet::plain()).is_some());
            if let Some(w) = w {
                let distinct: BTreeSet<usize> = w.map.iter().copied().collect();
                prop_assert_eq!(distinct.len(), m);
            }
        }

        #[test]
        fn realisability_is_monotone(g in graph_strategy(5), a0 in 0u64..32, b0 in 0u64..32) {
            let n = g.len();
            let a0 = a0 & ((1 << n) - 1);
            let sub = a0 & b0;
            let cg = plain(g);
            let table = GraphRealisability::new(&cg, 2, &CriticalColoringSet::plain(), None);
            if table.is_realisable(a0, &ColorSet::empty()) {
                prop_assert!(table.is_realisable(sub, &ColorSet::empty()));
            }
            let vs: Vec<usize> = bits::members(a0).collect();
            prop_assert_eq!(
                table.is_realisable(a0, &ColorSet::empty()),
                is_realisable_graph(&cg, &vs, &ColorSet::empty(), 2, &CriticalColoringSet::plain(), None)
            );
        }
    }
}
