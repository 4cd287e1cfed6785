//! Coloured graphs and digraphs, colour permutations, permorphisms and the
//! forbidden-pattern specifications the constructions consume.
//!
//! Vertices are addressed by dense indices `0..len`; every carrier also keeps
//! an ordered list of [`VertexId`] names for input and output. Colours are
//! dense [`ColorId`]s into a per-structure colour universe. Palettes occupy
//! contiguous colour ranges, so appending a palette never renumbers existing
//! colours and forgetting the trailing palettes is a plain truncation.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::freeness::{self, FreenessConstraint};

/// Opaque, ordered vertex name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub String);

impl VertexId {
    pub fn new(name: impl Into<String>) -> Self {
        VertexId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(String::from(s))
    }
}

/// Dense colour index into a structure's colour universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub u32);

impl ColorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Sorted, duplicate-free set of colours.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSet(Vec<ColorId>);

static EMPTY_COLORS: ColorSet = ColorSet(Vec::new());

impl ColorSet {
    pub fn new(colors: impl IntoIterator<Item = ColorId>) -> Self {
        let mut v: Vec<ColorId> = colors.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ColorSet(v)
    }

    pub fn empty() -> Self {
        ColorSet(Vec::new())
    }

    pub fn contains(&self, c: ColorId) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ColorId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[ColorId] {
        &self.0
    }

    pub fn image(&self, chi: &ColorPermutation) -> ColorSet {
        ColorSet::new(self.0.iter().map(|c| chi.apply(*c)))
    }

    /// Colours with index below `universe`.
    pub fn restrict(&self, universe: u32) -> ColorSet {
        ColorSet(self.0.iter().copied().filter(|c| c.0 < universe).collect())
    }

    pub fn intersect(&self, other: &ColorSet) -> ColorSet {
        ColorSet(self.0.iter().copied().filter(|c| other.contains(*c)).collect())
    }

    pub fn is_subset(&self, other: &ColorSet) -> bool {
        self.0.iter().all(|c| other.contains(*c))
    }

    pub fn count_in(&self, range: core::ops::Range<u32>) -> usize {
        self.0.iter().filter(|c| range.contains(&c.0)).count()
    }
}

impl FromIterator<ColorId> for ColorSet {
    fn from_iter<I: IntoIterator<Item = ColorId>>(iter: I) -> Self {
        ColorSet::new(iter)
    }
}

/// Bijection of a colour universe. The edge relation is never permuted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorPermutation {
    map: Vec<ColorId>,
}

impl ColorPermutation {
    pub fn new(map: Vec<ColorId>) -> Result<Self, StructureError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for c in &map {
            let i = c.index();
            if i >= n || seen[i] {
                return Err(StructureError::NotABijection);
            }
            seen[i] = true;
        }
        Ok(ColorPermutation { map })
    }

    pub fn identity(n: usize) -> Self {
        ColorPermutation {
            map: (0..n as u32).map(ColorId).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, c: ColorId) -> ColorId {
        self.map[c.index()]
    }

    pub fn as_slice(&self) -> &[ColorId] {
        &self.map
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, c)| c.index() == i)
    }

    /// `self` first, then `then`.
    pub fn then(&self, then: &ColorPermutation) -> ColorPermutation {
        ColorPermutation {
            map: self.map.iter().map(|c| then.apply(*c)).collect(),
        }
    }

    pub fn inverse(&self) -> ColorPermutation {
        let mut inv = vec![ColorId(0); self.map.len()];
        for (i, c) in self.map.iter().enumerate() {
            inv[c.index()] = ColorId(i as u32);
        }
        ColorPermutation { map: inv }
    }

    /// Appends the action on a block of new colours `len..len + tail.len()`;
    /// `tail[k]` is the offset (within the block) of the image of new colour `k`.
    pub fn extended(&self, tail: &[usize]) -> ColorPermutation {
        let base = self.map.len() as u32;
        let mut map = self.map.clone();
        map.extend(tail.iter().map(|t| ColorId(base + *t as u32)));
        ColorPermutation { map }
    }

    /// Action on the first `n` colours; they must form an invariant block.
    pub fn truncated(&self, n: usize) -> ColorPermutation {
        ColorPermutation {
            map: self.map[..n].to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("duplicate vertex name {0}")]
    DuplicateVertex(VertexId),
    #[error("duplicate colour name {0}")]
    DuplicateColor(String),
    #[error("colour index {0} out of range")]
    ColorOutOfRange(u32),
    #[error("colour map is not a bijection")]
    NotABijection,
    #[error("partial map is not injective")]
    NotInjective,
    #[error("not a tournament: {0}")]
    NotATournament(String),
    #[error("tuple arity does not match: {0}")]
    ArityMismatch(String),
}

/// Read access shared by graphs and digraphs, coloured or not.
///
/// For graphs the relation is symmetric and the in- and out-neighbour lists
/// coincide.
pub trait BinaryStructure {
    fn len(&self) -> usize;
    fn name(&self, v: usize) -> &VertexId;
    fn holds(&self, a: usize, b: usize) -> bool;
    fn out_neighbors(&self, a: usize) -> &[usize];
    fn in_neighbors(&self, a: usize) -> &[usize];
    fn colors(&self, a: usize) -> &ColorSet;
    fn color_count(&self) -> usize;
    fn is_symmetric(&self) -> bool;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every ordered pair `(a, b)` with `aRb`.
    fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|a| self.out_neighbors(a).iter().map(move |b| (a, *b)))
            .collect()
    }

    fn names(&self) -> Vec<VertexId> {
        (0..self.len()).map(|v| self.name(v).clone()).collect()
    }
}

fn check_names(names: &[VertexId]) -> Result<(), StructureError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(StructureError::DuplicateVertex(n.clone()));
        }
    }
    Ok(())
}

fn insert_sorted(list: &mut Vec<usize>, v: usize) {
    if let Err(pos) = list.binary_search(&v) {
        list.insert(pos, v);
    }
}

/// Finite graph. Edges are stored in both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    names: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from names and undirected edges. Self-loops are stored
    /// and reported by [`Graph::violations`].
    pub fn new(
        names: Vec<VertexId>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, StructureError> {
        check_names(&names)?;
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(StructureError::VertexOutOfRange(v));
                }
            }
            insert_sorted(&mut adj[a], b);
            insert_sorted(&mut adj[b], a);
        }
        Ok(Graph { names, adj })
    }

    /// Graph on vertices named `0..n`.
    pub fn numbered(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let names = (0..n).map(|i| VertexId(format!("{i}"))).collect();
        Graph::new(names, edges).expect("numbered vertices are distinct")
    }

    pub fn empty() -> Self {
        Graph {
            names: Vec::new(),
            adj: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[VertexId] {
        &self.names
    }

    pub fn index_of(&self, name: &VertexId) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    /// Edges `(a, b)` with `a <= b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (a, ns) in self.adj.iter().enumerate() {
            out.extend(ns.iter().filter(|b| **b >= a).map(|b| (a, *b)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub(crate) fn push_vertex(&mut self, name: VertexId, neighbors: &[usize]) -> usize {
        let v = self.names.len();
        self.names.push(name);
        self.adj.push(Vec::new());
        for &b in neighbors {
            insert_sorted(&mut self.adj[v], b);
            insert_sorted(&mut self.adj[b], v);
        }
        v
    }

    pub fn violations(&self) -> Vec<Violation> {
        (0..self.len())
            .filter(|v| self.adjacent(*v, *v))
            .map(|v| Violation::SelfLoop(self.names[v].clone()))
            .collect()
    }
}

impl BinaryStructure for Graph {
    fn len(&self) -> usize {
        self.names.len()
    }
    fn name(&self, v: usize) -> &VertexId {
        &self.names[v]
    }
    fn holds(&self, a: usize, b: usize) -> bool {
        self.adjacent(a, b)
    }
    fn out_neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }
    fn in_neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }
    fn colors(&self, _a: usize) -> &ColorSet {
        &EMPTY_COLORS
    }
    fn color_count(&self) -> usize {
        0
    }
    fn is_symmetric(&self) -> bool {
        true
    }
}

/// Finite digraph; `out[a]` lists `b` with `aRb`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    names: Vec<VertexId>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(
        names: Vec<VertexId>,
        arcs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, StructureError> {
        check_names(&names)?;
        let n = names.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (a, b) in arcs {
            for v in [a, b] {
                if v >= n {
                    return Err(StructureError::VertexOutOfRange(v));
                }
            }
            insert_sorted(&mut out[a], b);
            insert_sorted(&mut inc[b], a);
        }
        Ok(Digraph { names, out, inc })
    }

    pub fn numbered(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let names = (0..n).map(|i| VertexId(format!("{i}"))).collect();
        Digraph::new(names, arcs).expect("numbered vertices are distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[VertexId] {
        &self.names
    }

    pub fn index_of(&self, name: &VertexId) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.out[a].binary_search(&b).is_ok()
    }

    pub fn out_neighbors(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    pub fn in_neighbors(&self, a: usize) -> &[usize] {
        &self.inc[a]
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for (a, ns) in self.out.iter().enumerate() {
            v.extend(ns.iter().map(|b| (a, *b)));
        }
        v
    }

    pub(crate) fn push_vertex(&mut self, name: VertexId, out: &[usize], inc: &[usize]) -> usize {
        let v = self.names.len();
        self.names.push(name);
        self.out.push(Vec::new());
        self.inc.push(Vec::new());
        for &b in out {
            insert_sorted(&mut self.out[v], b);
            insert_sorted(&mut self.inc[b], v);
        }
        for &b in inc {
            insert_sorted(&mut self.out[b], v);
            insert_sorted(&mut self.inc[v], b);
        }
        v
    }

    /// Induced subdigraph on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Digraph {
        let names = vertices.iter().map(|v| self.names[*v].clone()).collect();
        let mut arcs = Vec::new();
        for (i, a) in vertices.iter().enumerate() {
            for (j, b) in vertices.iter().enumerate() {
                if self.has_arc(*a, *b) {
                    arcs.push((i, j));
                }
            }
        }
        Digraph::new(names, arcs).expect("induced names are distinct")
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        for a in 0..self.len() {
            if self.has_arc(a, a) {
                v.push(Violation::SelfLoop(self.names[a].clone()));
            }
            for &b in &self.out[a] {
                if a < b && self.has_arc(b, a) {
                    v.push(Violation::Antisymmetry(
                        self.names[a].clone(),
                        self.names[b].clone(),
                    ));
                }
            }
        }
        v
    }
}

impl BinaryStructure for Digraph {
    fn len(&self) -> usize {
        self.names.len()
    }
    fn name(&self, v: usize) -> &VertexId {
        &self.names[v]
    }
    fn holds(&self, a: usize, b: usize) -> bool {
        self.has_arc(a, b)
    }
    fn out_neighbors(&self, a: usize) -> &[usize] {
        &self.out[a]
    }
    fn in_neighbors(&self, a: usize) -> &[usize] {
        &self.inc[a]
    }
    fn colors(&self, _a: usize) -> &ColorSet {
        &EMPTY_COLORS
    }
    fn color_count(&self) -> usize {
        0
    }
    fn is_symmetric(&self) -> bool {
        false
    }
}

/// A block of colours, numbered `1..=r` in the order palettes were declared.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Palette {
    pub index: usize,
    pub colors: Vec<ColorId>,
}

impl Palette {
    pub fn range(&self) -> core::ops::Range<u32> {
        match (self.colors.first(), self.colors.last()) {
            (Some(a), Some(b)) => a.0..b.0 + 1,
            _ => 0..0,
        }
    }
}

/// Graph whose vertices carry colours from a list of disjoint palettes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredGraph {
    graph: Graph,
    palettes: Vec<Palette>,
    color_names: Vec<String>,
    coloring: Vec<ColorSet>,
}

fn check_color_names(names: &[String]) -> Result<(), StructureError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(StructureError::DuplicateColor(n.clone()));
        }
    }
    Ok(())
}

fn check_coloring(n: usize, universe: usize, coloring: &[ColorSet]) -> Result<(), StructureError> {
    if coloring.len() != n {
        return Err(StructureError::VertexOutOfRange(coloring.len()));
    }
    for set in coloring {
        if let Some(c) = set.iter().find(|c| c.index() >= universe) {
            return Err(StructureError::ColorOutOfRange(c.0));
        }
    }
    Ok(())
}

impl ColoredGraph {
    /// `palettes[j]` lists the colour names of palette `j + 1`; colour ids
    /// are assigned consecutively across palettes.
    pub fn new(
        graph: Graph,
        palettes: Vec<Vec<String>>,
        coloring: Vec<ColorSet>,
    ) -> Result<Self, StructureError> {
        let mut color_names = Vec::new();
        let mut pals = Vec::new();
        for (j, names) in palettes.into_iter().enumerate() {
            let start = color_names.len() as u32;
            let colors = (0..names.len() as u32).map(|k| ColorId(start + k)).collect();
            color_names.extend(names);
            pals.push(Palette { index: j + 1, colors });
        }
        check_color_names(&color_names)?;
        check_coloring(graph.len(), color_names.len(), &coloring)?;
        Ok(ColoredGraph {
            graph,
            palettes: pals,
            color_names,
            coloring,
        })
    }

    pub fn uncolored(graph: Graph) -> Self {
        let coloring = vec![ColorSet::empty(); graph.len()];
        ColoredGraph {
            graph,
            palettes: Vec::new(),
            color_names: Vec::new(),
            coloring,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn palettes(&self) -> &[Palette] {
        &self.palettes
    }

    pub fn palette_count(&self) -> usize {
        self.palettes.len()
    }

    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    pub fn color_id(&self, name: &str) -> Option<ColorId> {
        self.color_names
            .iter()
            .position(|n| n == name)
            .map(|i| ColorId(i as u32))
    }

    /// Zero-based palette position of a colour.
    pub fn palette_of(&self, c: ColorId) -> Option<usize> {
        self.palettes.iter().position(|p| p.range().contains(&c.0))
    }

    pub fn coloring(&self) -> &[ColorSet] {
        &self.coloring
    }

    pub fn colors_in_palette(&self, v: usize, palette: usize) -> ColorSet {
        let range = self.palettes[palette].range();
        self.coloring[v].iter().filter(|c| range.contains(&c.0)).collect()
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub(crate) fn from_parts(
        graph: Graph,
        palettes: Vec<Palette>,
        color_names: Vec<String>,
        coloring: Vec<ColorSet>,
    ) -> Self {
        ColoredGraph {
            graph,
            palettes,
            color_names,
            coloring,
        }
    }

    pub(crate) fn push_vertex(&mut self, name: VertexId, neighbors: &[usize], colors: ColorSet) {
        self.graph.push_vertex(name, neighbors);
        self.coloring.push(colors);
    }

    /// Appends a palette with the given colour names and per-vertex
    /// membership of the new colours (offsets into the new block).
    pub(crate) fn with_palette(&self, names: Vec<String>, members: &[Vec<usize>]) -> ColoredGraph {
        let start = self.color_names.len() as u32;
        let mut out = self.clone();
        out.palettes.push(Palette {
            index: self.palettes.len() + 1,
            colors: (0..names.len() as u32).map(|k| ColorId(start + k)).collect(),
        });
        out.color_names.extend(names);
        for (v, extra) in members.iter().enumerate() {
            let mut set = out.coloring[v].0.clone();
            set.extend(extra.iter().map(|k| ColorId(start + *k as u32)));
            out.coloring[v] = ColorSet::new(set);
        }
        out
    }

    /// Keeps the first `palettes` palettes and drops every later colour.
    pub fn forget_palettes(&self, palettes: usize) -> ColoredGraph {
        let universe = self
            .palettes
            .get(palettes)
            .and_then(|p| p.colors.first())
            .map(|c| c.0)
            .unwrap_or(self.color_names.len() as u32);
        ColoredGraph {
            graph: self.graph.clone(),
            palettes: self.palettes[..palettes.min(self.palettes.len())].to_vec(),
            color_names: self.color_names[..universe as usize].to_vec(),
            coloring: self.coloring.iter().map(|s| s.restrict(universe)).collect(),
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        self.graph.violations()
    }

    /// Whether `chi` maps every palette onto itself.
    pub fn preserves_palettes(&self, chi: &ColorPermutation) -> bool {
        chi.len() == self.color_names.len()
            && self.palettes.iter().all(|p| {
                let r = p.range();
                p.colors.iter().all(|c| r.contains(&chi.apply(*c).0))
            })
    }

    /// The common palette cardinality `d_j`, if every vertex has the same
    /// number of colours from palette `j`.
    pub fn uniform_degree(&self, palette: usize) -> Option<usize> {
        let range = self.palettes[palette].range();
        let mut counts = self.coloring.iter().map(|s| s.count_in(range.clone()));
        match counts.next() {
            None => Some(0),
            Some(first) => counts.all(|c| c == first).then_some(first),
        }
    }
}

impl BinaryStructure for ColoredGraph {
    fn len(&self) -> usize {
        self.graph.len()
    }
    fn name(&self, v: usize) -> &VertexId {
        &self.graph.names[v]
    }
    fn holds(&self, a: usize, b: usize) -> bool {
        self.graph.adjacent(a, b)
    }
    fn out_neighbors(&self, a: usize) -> &[usize] {
        &self.graph.adj[a]
    }
    fn in_neighbors(&self, a: usize) -> &[usize] {
        &self.graph.adj[a]
    }
    fn colors(&self, a: usize) -> &ColorSet {
        &self.coloring[a]
    }
    fn color_count(&self) -> usize {
        self.color_names.len()
    }
    fn is_symmetric(&self) -> bool {
        true
    }
}

/// Digraph with colours from a single finite set; a vertex may carry any
/// number of colours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDigraph {
    digraph: Digraph,
    color_names: Vec<String>,
    coloring: Vec<ColorSet>,
}

impl ColoredDigraph {
    pub fn new(
        digraph: Digraph,
        color_names: Vec<String>,
        coloring: Vec<ColorSet>,
    ) -> Result<Self, StructureError> {
        check_color_names(&color_names)?;
        check_coloring(digraph.len(), color_names.len(), &coloring)?;
        Ok(ColoredDigraph {
            digraph,
            color_names,
            coloring,
        })
    }

    pub fn uncolored(digraph: Digraph) -> Self {
        let coloring = vec![ColorSet::empty(); digraph.len()];
        ColoredDigraph {
            digraph,
            color_names: Vec::new(),
            coloring,
        }
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    pub fn color_id(&self, name: &str) -> Option<ColorId> {
        self.color_names
            .iter()
            .position(|n| n == name)
            .map(|i| ColorId(i as u32))
    }

    pub fn coloring(&self) -> &[ColorSet] {
        &self.coloring
    }

    pub fn len(&self) -> usize {
        self.digraph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digraph.is_empty()
    }

    pub(crate) fn from_parts(digraph: Digraph, color_names: Vec<String>, coloring: Vec<ColorSet>) -> Self {
        ColoredDigraph {
            digraph,
            color_names,
            coloring,
        }
    }

    pub(crate) fn push_vertex(&mut self, name: VertexId, out: &[usize], inc: &[usize], colors: ColorSet) {
        self.digraph.push_vertex(name, out, inc);
        self.coloring.push(colors);
    }

    pub(crate) fn with_colors(&self, names: Vec<String>, members: &[Vec<usize>]) -> ColoredDigraph {
        let start = self.color_names.len() as u32;
        let mut out = self.clone();
        out.color_names.extend(names);
        for (v, extra) in members.iter().enumerate() {
            let mut set = out.coloring[v].0.clone();
            set.extend(extra.iter().map(|k| ColorId(start + *k as u32)));
            out.coloring[v] = ColorSet::new(set);
        }
        out
    }

    /// Keeps colours with index below `universe`.
    pub fn forget_colors(&self, universe: usize) -> ColoredDigraph {
        ColoredDigraph {
            digraph: self.digraph.clone(),
            color_names: self.color_names[..universe].to_vec(),
            coloring: self
                .coloring
                .iter()
                .map(|s| s.restrict(universe as u32))
                .collect(),
        }
    }

    pub fn violations(&self) -> Vec<Violation> {
        self.digraph.violations()
    }
}

impl BinaryStructure for ColoredDigraph {
    fn len(&self) -> usize {
        self.digraph.len()
    }
    fn name(&self, v: usize) -> &VertexId {
        &self.digraph.names[v]
    }
    fn holds(&self, a: usize, b: usize) -> bool {
        self.digraph.has_arc(a, b)
    }
    fn out_neighbors(&self, a: usize) -> &[usize] {
        &self.digraph.out[a]
    }
    fn in_neighbors(&self, a: usize) -> &[usize] {
        &self.digraph.inc[a]
    }
    fn colors(&self, a: usize) -> &ColorSet {
        &self.coloring[a]
    }
    fn color_count(&self) -> usize {
        self.color_names.len()
    }
    fn is_symmetric(&self) -> bool {
        false
    }
}

/// Partial injective vertex map `p` paired with a colour permutation `χ`.
///
/// `p` is a `χ`-permorphism of a structure when it preserves the relation in
/// both directions on its domain and `U(a^p) = U(a)^χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPermorphism {
    image: Vec<Option<usize>>,
    chi: ColorPermutation,
}

impl PartialPermorphism {
    pub fn new(
        len: usize,
        pairs: impl IntoIterator<Item = (usize, usize)>,
        chi: ColorPermutation,
    ) -> Result<Self, StructureError> {
        let mut image = vec![None; len];
        let mut hit = vec![false; len];
        for (a, b) in pairs {
            for v in [a, b] {
                if v >= len {
                    return Err(StructureError::VertexOutOfRange(v));
                }
            }
            if image[a].is_some() || hit[b] {
                return Err(StructureError::NotInjective);
            }
            image[a] = Some(b);
            hit[b] = true;
        }
        Ok(PartialPermorphism { image, chi })
    }

    /// A partial isomorphism of an uncoloured structure.
    pub fn isomorphism(len: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, StructureError> {
        PartialPermorphism::new(len, pairs, ColorPermutation::identity(0))
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.iter().all(Option::is_none)
    }

    pub fn get(&self, a: usize) -> Option<usize> {
        self.image.get(a).copied().flatten()
    }

    pub fn image(&self) -> &[Option<usize>] {
        &self.image
    }

    pub fn chi(&self) -> &ColorPermutation {
        &self.chi
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.image
            .iter()
            .enumerate()
            .filter_map(|(a, b)| b.map(|b| (a, b)))
    }

    pub fn domain(&self) -> Vec<usize> {
        self.pairs().map(|(a, _)| a).collect()
    }

    pub fn range(&self) -> Vec<usize> {
        let mut r: Vec<usize> = self.pairs().map(|(_, b)| b).collect();
        r.sort_unstable();
        r
    }

    pub fn is_total(&self) -> bool {
        self.image.iter().all(Option::is_some)
    }

    pub(crate) fn with_chi(&self, chi: ColorPermutation) -> PartialPermorphism {
        PartialPermorphism {
            image: self.image.clone(),
            chi,
        }
    }

    /// Every way in which `self` fails to be a `χ`-permorphism of `s`.
    pub fn violations_on<S: BinaryStructure + ?Sized>(&self, s: &S, which: usize) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.image.len() != s.len() {
            out.push(Violation::MapShape {
                map: which,
                detail: format!("map is over {} points, structure has {}", self.image.len(), s.len()),
            });
            return out;
        }
        if self.chi.len() != s.color_count() {
            out.push(Violation::MapShape {
                map: which,
                detail: format!(
                    "colour permutation has {} entries, structure has {} colours",
                    self.chi.len(),
                    s.color_count()
                ),
            });
            return out;
        }
        let pairs: Vec<(usize, usize)> = self.pairs().collect();
        for &(a, pa) in &pairs {
            for &(b, pb) in &pairs {
                if s.holds(a, b) != s.holds(pa, pb) {
                    out.push(Violation::NotPermorphism {
                        map: which,
                        detail: format!("relation between {} and {} not preserved", s.name(a), s.name(b)),
                    });
                }
            }
            if s.colors(pa) != &s.colors(a).image(&self.chi) {
                out.push(Violation::NotPermorphism {
                    map: which,
                    detail: format!("colours of {} not carried to {}", s.name(a), s.name(pa)),
                });
            }
        }
        out
    }
}

/// The critical colourings `U_c ⊆ U^1 × … × U^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalColoringSet {
    arity: usize,
    tuples: BTreeSet<Vec<ColorId>>,
}

impl CriticalColoringSet {
    pub fn new(arity: usize, tuples: impl IntoIterator<Item = Vec<ColorId>>) -> Result<Self, StructureError> {
        let tuples: BTreeSet<Vec<ColorId>> = tuples.into_iter().collect();
        if let Some(t) = tuples.iter().find(|t| t.len() != arity) {
            return Err(StructureError::ArityMismatch(format!(
                "critical colouring of length {} for {} palettes",
                t.len(),
                arity
            )));
        }
        Ok(CriticalColoringSet { arity, tuples })
    }

    /// `{()}`: with no palettes, critical-clique freeness is plain freeness.
    pub fn plain() -> Self {
        CriticalColoringSet {
            arity: 0,
            tuples: BTreeSet::from([Vec::new()]),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, tuple: &[ColorId]) -> bool {
        self.tuples.contains(tuple)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<ColorId>> {
        self.tuples.iter()
    }

    pub fn image(&self, chi: &ColorPermutation) -> CriticalColoringSet {
        CriticalColoringSet {
            arity: self.arity,
            tuples: self
                .tuples
                .iter()
                .map(|t| t.iter().map(|c| chi.apply(*c)).collect())
                .collect(),
        }
    }

    pub fn is_invariant(&self, chi: &ColorPermutation) -> bool {
        self.tuples
            .iter()
            .all(|t| self.tuples.contains(&t.iter().map(|c| chi.apply(*c)).collect::<Vec<_>>()))
    }
}

/// Designated colour `U_a^j` per vertex and palette: the colour in palette
/// `j` carried exactly by the neighbours of `a`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DesignatedColors {
    table: Vec<Vec<ColorId>>,
}

impl DesignatedColors {
    /// `table[a][j]` is the designated colour of vertex `a` in palette `j + 1`.
    pub fn new(table: Vec<Vec<ColorId>>) -> Self {
        DesignatedColors { table }
    }

    pub fn none(len: usize) -> Self {
        DesignatedColors {
            table: vec![Vec::new(); len],
        }
    }

    pub fn get(&self, a: usize, palette: usize) -> Option<ColorId> {
        self.table.get(a).and_then(|row| row.get(palette)).copied()
    }

    pub fn row(&self, a: usize) -> &[ColorId] {
        self.table.get(a).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub(crate) fn with_column(&self, column: impl IntoIterator<Item = ColorId>) -> DesignatedColors {
        let mut table = self.table.clone();
        for (row, c) in table.iter_mut().zip(column) {
            row.push(c);
        }
        DesignatedColors { table }
    }

    pub fn violations(&self, g: &ColoredGraph, maps: &[PartialPermorphism]) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.table.len() != g.len() {
            out.push(Violation::Designated(format!(
                "table has {} rows for {} vertices",
                self.table.len(),
                g.len()
            )));
            return out;
        }
        for a in 0..g.len() {
            if self.table[a].len() != g.palette_count() {
                out.push(Violation::Designated(format!(
                    "vertex {} needs one designated colour per palette",
                    g.name(a)
                )));
                continue;
            }
            for (j, c) in self.table[a].iter().enumerate() {
                if g.palette_of(*c) != Some(j) {
                    out.push(Violation::Designated(format!(
                        "designated colour of {} for palette {} lies outside it",
                        g.name(a),
                        j + 1
                    )));
                    continue;
                }
                for b in 0..g.len() {
                    if g.colors(b).contains(*c) != g.holds(a, b) {
                        out.push(Violation::Designated(format!(
                            "membership of {} in the designated colour of {} (palette {}) disagrees with adjacency",
                            g.name(b),
                            g.name(a),
                            j + 1
                        )));
                    }
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for (i, p) in maps.iter().enumerate() {
            if p.chi().len() != g.color_count() {
                continue;
            }
            for (a, pa) in p.pairs() {
                for j in 0..g.palette_count() {
                    if p.chi().apply(self.table[a][j]) != self.table[pa][j] {
                        out.push(Violation::Designated(format!(
                            "map {} does not carry the designated colour of {} to that of {}",
                            i,
                            g.name(a),
                            g.name(pa)
                        )));
                    }
                }
            }
        }
        out
    }
}

/// Digraph with exactly one arc between any two distinct vertices. Vertex
/// order matters: vertex 0 plays the role of `t_1` in the constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tournament(Digraph);

impl Tournament {
    pub fn new(digraph: Digraph) -> Result<Self, StructureError> {
        let n = digraph.len();
        for a in 0..n {
            if digraph.has_arc(a, a) {
                return Err(StructureError::NotATournament(format!("loop at {}", digraph.names[a])));
            }
            for b in a + 1..n {
                if digraph.has_arc(a, b) == digraph.has_arc(b, a) {
                    return Err(StructureError::NotATournament(format!(
                        "pair {} {} needs exactly one arc",
                        digraph.names[a], digraph.names[b]
                    )));
                }
            }
        }
        Ok(Tournament(digraph))
    }

    /// Tournament on `0..n` whose arc `a→b` (for `a < b`) is reversed when
    /// bit `k` of `code` is set, pairs enumerated lexicographically.
    pub fn from_code(n: usize, code: u64) -> Tournament {
        let mut arcs = Vec::new();
        let mut k = 0;
        for a in 0..n {
            for b in a + 1..n {
                if code >> k & 1 == 0 {
                    arcs.push((a, b));
                } else {
                    arcs.push((b, a));
                }
                k += 1;
            }
        }
        Tournament(Digraph::numbered(n, arcs))
    }

    pub fn cyclic3() -> Tournament {
        Tournament(Digraph::numbered(3, [(0, 1), (1, 2), (2, 0)]))
    }

    pub fn transitive(n: usize) -> Tournament {
        Tournament::from_code(n, 0)
    }

    pub fn digraph(&self) -> &Digraph {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn beats(&self, a: usize, b: usize) -> bool {
        self.0.has_arc(a, b)
    }

    /// The tournament without its first vertex.
    pub fn without_first(&self) -> Tournament {
        let rest: Vec<usize> = (1..self.len()).collect();
        Tournament(self.0.induced(&rest))
    }
}

/// Set of critical tuples `U_j ⊆ Pot(U)^{l_j}` for one forbidden tournament.
///
/// Membership is by exact colour sets. Sets built during the construction
/// are represented by their defining predicate rather than enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriticalTuples {
    /// Every tuple is critical: plain tournament freeness.
    All,
    Explicit(BTreeSet<Vec<ColorSet>>),
    /// `(V_1, …)` is critical iff `(V_1 ∩ U, …)` is critical for `inner`,
    /// where `U` is the colours below `universe`.
    Projected { inner: Box<CriticalTuples>, universe: u32 },
    Lifted(Box<LiftedTuples>),
}

/// Critical tuples for a tournament with its first vertex removed, after
/// adding the in/out marker colours of the scaffolding points.
///
/// `(V_2, …, V_l)` is critical iff some anchor `c` has its marker for every
/// position `l` in `V_l` and `(U(c), V_2 ∩ U, …, V_l ∩ U)` is critical for
/// `inner`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedTuples {
    pub inner: CriticalTuples,
    pub universe: u32,
    pub anchors: Vec<Anchor>,
    by_first_marker: BTreeMap<ColorId, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Anchor {
    pub colors: ColorSet,
    pub markers: Vec<ColorId>,
}

impl LiftedTuples {
    pub fn new(inner: CriticalTuples, universe: u32, anchors: Vec<Anchor>) -> Self {
        let by_first_marker = anchors
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.markers.first().map(|m| (*m, i)))
            .collect();
        LiftedTuples {
            inner,
            universe,
            anchors,
            by_first_marker,
        }
    }

    fn anchor_matches(&self, anchor: &Anchor, tuple: &[ColorSet]) -> bool {
        if anchor.markers.len() != tuple.len() {
            return false;
        }
        if !anchor.markers.iter().zip(tuple).all(|(m, v)| v.contains(*m)) {
            return false;
        }
        let mut projected = Vec::with_capacity(tuple.len() + 1);
        projected.push(anchor.colors.clone());
        projected.extend(tuple.iter().map(|v| v.restrict(self.universe)));
        self.inner.contains(&projected)
    }
}

impl CriticalTuples {
    pub fn explicit(tuples: impl IntoIterator<Item = Vec<ColorSet>>) -> Self {
        CriticalTuples::Explicit(tuples.into_iter().collect())
    }

    pub fn contains(&self, tuple: &[ColorSet]) -> bool {
        match self {
            CriticalTuples::All => true,
            CriticalTuples::Explicit(set) => set.contains(tuple),
            CriticalTuples::Projected { inner, universe } => {
                let p: Vec<ColorSet> = tuple.iter().map(|v| v.restrict(*universe)).collect();
                inner.contains(&p)
            }
            CriticalTuples::Lifted(l) => match tuple.first() {
                None => l.anchors.iter().any(|a| l.anchor_matches(a, tuple)),
                Some(first) => first
                    .iter()
                    .filter_map(|c| l.by_first_marker.get(&c))
                    .any(|i| l.anchor_matches(&l.anchors[*i], tuple)),
            },
        }
    }

    /// χ-invariance of an explicit set: closed under coordinatewise,
    /// elementwise images. Derived sets are invariant by construction.
    pub fn is_invariant(&self, chi: &ColorPermutation) -> bool {
        match self {
            CriticalTuples::Explicit(set) => set.iter().all(|t| {
                let img: Vec<ColorSet> = t.iter().map(|v| v.image(chi)).collect();
                set.contains(&img)
            }),
            _ => true,
        }
    }

    pub fn tuple_lengths_match(&self, len: usize) -> bool {
        match self {
            CriticalTuples::Explicit(set) => set.iter().all(|t| t.len() == len),
            _ => true,
        }
    }

    /// Largest colour index mentioned by an explicit set.
    pub(crate) fn max_color(&self) -> Option<ColorId> {
        match self {
            CriticalTuples::Explicit(set) => set.iter().flatten().flat_map(|s| s.iter()).max(),
            _ => None,
        }
    }
}

/// One forbidden tournament `T_j` with its critical tuples `U_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenTournament {
    pub tournament: Tournament,
    pub critical: CriticalTuples,
}

impl ForbiddenTournament {
    pub fn plain(tournament: Tournament) -> Self {
        ForbiddenTournament {
            tournament,
            critical: CriticalTuples::All,
        }
    }
}

/// Finite structure over a relational signature of arbitrary arities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationalStructure {
    signature: Vec<(String, usize)>,
    names: Vec<VertexId>,
    relations: Vec<BTreeSet<Vec<usize>>>,
}

impl RelationalStructure {
    pub fn new(
        signature: Vec<(String, usize)>,
        names: Vec<VertexId>,
        relations: Vec<BTreeSet<Vec<usize>>>,
    ) -> Result<Self, StructureError> {
        check_names(&names)?;
        if relations.len() != signature.len() {
            return Err(StructureError::ArityMismatch(format!(
                "{} relations for {} symbols",
                relations.len(),
                signature.len()
            )));
        }
        for ((sym, arity), tuples) in signature.iter().zip(&relations) {
            for t in tuples {
                if t.len() != *arity {
                    return Err(StructureError::ArityMismatch(format!(
                        "{sym} has arity {arity}, tuple has length {}",
                        t.len()
                    )));
                }
                if let Some(v) = t.iter().find(|v| **v >= names.len()) {
                    return Err(StructureError::VertexOutOfRange(*v));
                }
            }
        }
        Ok(RelationalStructure {
            signature,
            names,
            relations,
        })
    }

    /// A graph as a structure with one symmetric irreflexive binary relation.
    pub fn from_graph(g: &Graph) -> Self {
        let edges: BTreeSet<Vec<usize>> = (0..g.len())
            .flat_map(|a| g.neighbors(a).iter().map(move |b| vec![a, *b]))
            .collect();
        RelationalStructure {
            signature: vec![(String::from("R"), 2)],
            names: g.names().to_vec(),
            relations: vec![edges],
        }
    }

    pub fn from_digraph(d: &Digraph) -> Self {
        let arcs = d.arcs().into_iter().map(|(a, b)| vec![a, b]).collect();
        RelationalStructure {
            signature: vec![(String::from("R"), 2)],
            names: d.names().to_vec(),
            relations: vec![arcs],
        }
    }

    pub fn complete_graph(m: usize) -> Self {
        let edges = (0..m)
            .flat_map(|a| (0..m).filter(move |b| *b != a).map(move |b| (a, b)));
        Self::from_graph(&Graph::numbered(m, edges))
    }

    pub fn signature(&self) -> &[(String, usize)] {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[VertexId] {
        &self.names
    }

    pub fn relation(&self, symbol: usize) -> &BTreeSet<Vec<usize>> {
        &self.relations[symbol]
    }

    pub fn holds(&self, symbol: usize, tuple: &[usize]) -> bool {
        self.relations[symbol].contains(tuple)
    }

    pub fn max_arity(&self) -> usize {
        self.signature.iter().map(|(_, a)| *a).max().unwrap_or(0)
    }

    /// Induced substructure on `vertices`, in the given order.
    pub fn induced(&self, vertices: &[usize]) -> RelationalStructure {
        let pos: BTreeMap<usize, usize> = vertices.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let relations = self
            .relations
            .iter()
            .map(|tuples| {
                tuples
                    .iter()
                    .filter_map(|t| t.iter().map(|v| pos.get(v).copied()).collect::<Option<Vec<_>>>())
                    .collect()
            })
            .collect();
        RelationalStructure {
            signature: self.signature.clone(),
            names: vertices.iter().map(|v| self.names[*v].clone()).collect(),
            relations,
        }
    }
}

/// A single violated hypothesis, reported by [`validate_instance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SelfLoop(VertexId),
    Antisymmetry(VertexId, VertexId),
    MapShape { map: usize, detail: String },
    NotPermorphism { map: usize, detail: String },
    ChiNotPalettePreserving { map: usize },
    CriticalNotInvariant { map: usize, detail: String },
    CriticalMalformed(String),
    NotFree { constraint: String, witness: Vec<VertexId> },
    MalformedTournament { index: usize, detail: String },
    Designated(String),
    InvalidCliqueSize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfLoop(v) => write!(f, "irreflexivity: loop at {v}"),
            Violation::Antisymmetry(a, b) => write!(f, "antisymmetry: arcs {a}->{b} and {b}->{a}"),
            Violation::MapShape { map, detail } => write!(f, "map {map}: {detail}"),
            Violation::NotPermorphism { map, detail } => write!(f, "map {map} is not a permorphism: {detail}"),
            Violation::ChiNotPalettePreserving { map } => {
                write!(f, "map {map}: colour permutation does not preserve palettes")
            }
            Violation::CriticalNotInvariant { map, detail } => {
                write!(f, "critical set not invariant under map {map}: {detail}")
            }
            Violation::CriticalMalformed(d) => write!(f, "critical set malformed: {d}"),
            Violation::NotFree { constraint, witness } => {
                write!(f, "A not {constraint}-free: witness")?;
                for v in witness {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
            Violation::MalformedTournament { index, detail } => write!(f, "forbidden tournament {index}: {detail}"),
            Violation::Designated(d) => write!(f, "designated colours: {d}"),
            Violation::InvalidCliqueSize => write!(f, "clique size must be at least 1"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_admissible(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "admissible");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The input handed to [`validate_instance`].
#[derive(Clone, Copy, Debug)]
pub enum InstanceRef<'a> {
    Graph {
        graph: &'a ColoredGraph,
        designated: Option<&'a DesignatedColors>,
    },
    Digraph(&'a ColoredDigraph),
}

/// Checks every hypothesis the constructions rely on.
pub fn validate_instance(
    instance: InstanceRef<'_>,
    maps: &[PartialPermorphism],
    constraint: &FreenessConstraint,
) -> ValidationReport {
    let mut violations = Vec::new();
    match instance {
        InstanceRef::Graph { graph, designated } => {
            violations.extend(graph.violations());
            for (i, p) in maps.iter().enumerate() {
                let shape = p.violations_on(graph, i);
                let bad_shape = !shape.is_empty();
                violations.extend(shape);
                if !bad_shape && !graph.preserves_palettes(p.chi()) {
                    violations.push(Violation::ChiNotPalettePreserving { map: i });
                }
            }
            if let Some(d) = designated {
                violations.extend(d.violations(graph, maps));
            } else if graph.palette_count() > 0 {
                violations.push(Violation::Designated(String::from(
                    "coloured input needs designated colours",
                )));
            }
            match constraint {
                FreenessConstraint::CliqueFree { m, critical } => {
                    if *m == 0 {
                        violations.push(Violation::InvalidCliqueSize);
                    }
                    if critical.arity() != graph.palette_count() {
                        violations.push(Violation::CriticalMalformed(format!(
                            "tuples of length {} for {} palettes",
                            critical.arity(),
                            graph.palette_count()
                        )));
                    } else {
                        for t in critical.iter() {
                            for (j, c) in t.iter().enumerate() {
                                if graph.palette_of(*c) != Some(j) {
                                    violations.push(Violation::CriticalMalformed(format!(
                                        "colour {} is not in palette {}",
                                        c.0,
                                        j + 1
                                    )));
                                }
                            }
                        }
                        for (i, p) in maps.iter().enumerate() {
                            if p.chi().len() == graph.color_count() && !critical.is_invariant(p.chi()) {
                                violations.push(Violation::CriticalNotInvariant {
                                    map: i,
                                    detail: String::from("some critical colouring leaves the set"),
                                });
                            }
                        }
                        if *m > 0 && violations.is_empty() {
                            if let Some(w) = freeness::find_critical_clique(graph, *m, critical) {
                                violations.push(Violation::NotFree {
                                    constraint: format!("U_c-K_{m}"),
                                    witness: w.vertices.iter().map(|v| graph.name(*v).clone()).collect(),
                                });
                            }
                        }
                    }
                }
                FreenessConstraint::WeakHomFree(family) => {
                    let rs = RelationalStructure::from_graph(graph.graph());
                    if let Some(w) = freeness::weakhom_free(&rs, family) {
                        violations.push(Violation::NotFree {
                            constraint: format!("weak-hom pattern {}", w.pattern),
                            witness: w.map.iter().map(|v| graph.name(*v).clone()).collect(),
                        });
                    }
                }
                FreenessConstraint::TournamentFree(_) => {
                    violations.push(Violation::CriticalMalformed(String::from(
                        "tournament constraints apply to digraphs",
                    )));
                }
            }
        }
        InstanceRef::Digraph(d) => {
            violations.extend(d.violations());
            for (i, p) in maps.iter().enumerate() {
                violations.extend(p.violations_on(d, i));
            }
            match constraint {
                FreenessConstraint::TournamentFree(family) => {
                    for (j, f) in family.iter().enumerate() {
                        if let Err(e) = Tournament::new(f.tournament.digraph().clone()) {
                            violations.push(Violation::MalformedTournament {
                                index: j,
                                detail: format!("{e}"),
                            });
                            continue;
                        }
                        if !f.critical.tuple_lengths_match(f.tournament.len()) {
                            violations.push(Violation::MalformedTournament {
                                index: j,
                                detail: String::from("critical tuple length differs from tournament size"),
                            });
                        }
                        if f.critical.max_color().is_some_and(|c| c.index() >= d.color_count()) {
                            violations.push(Violation::MalformedTournament {
                                index: j,
                                detail: String::from("critical tuple mentions an unknown colour"),
                            });
                            continue;
                        }
                        for (i, p) in maps.iter().enumerate() {
                            if p.chi().len() == d.color_count() && !f.critical.is_invariant(p.chi()) {
                                violations.push(Violation::CriticalNotInvariant {
                                    map: i,
                                    detail: format!("tuples of tournament {j}"),
                                });
                            }
                        }
                    }
                    if violations.is_empty() {
                        for (j, f) in family.iter().enumerate() {
                            if let Some(w) = freeness::find_critical_tournament_copy(d, &f.tournament, &f.critical) {
                                violations.push(Violation::NotFree {
                                    constraint: format!("U_{j}-T_{j}"),
                                    witness: w.vertices.iter().map(|v| d.name(*v).clone()).collect(),
                                });
                            }
                        }
                    }
                }
                FreenessConstraint::WeakHomFree(family) => {
                    let rs = RelationalStructure::from_digraph(d.digraph());
                    if let Some(w) = freeness::weakhom_free(&rs, family) {
                        violations.push(Violation::NotFree {
                            constraint: format!("weak-hom pattern {}", w.pattern),
                            witness: w.map.iter().map(|v| d.name(*v).clone()).collect(),
                        });
                    }
                }
                FreenessConstraint::CliqueFree { .. } => {
                    violations.push(Violation::CriticalMalformed(String::from(
                        "clique constraints apply to graphs",
                    )));
                }
            }
        }
    }
    ValidationReport { violations }
}
