//! Type realizing steps: extend `A` to a scaffolding structure `C` in which
//! every admissible type over `A` is realized a controlled number of times,
//! then extend each partial map to a bijection `h_i` of `C`.
//!
//! Types over `A` are encoded as `u64` neighbourhood masks, so `A` must have
//! fewer than 64 points.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bits;
use crate::freeness::{CardinalityLedger, DigraphRealisability, GraphRealisability};
use crate::structures::{
    BinaryStructure, ColorPermutation, ColorSet, ColoredDigraph, ColoredGraph, CriticalColoringSet, Digraph,
    ForbiddenTournament, Graph, PartialPermorphism, VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("class sizes differ for map {map}: {detail}")]
    ClassSizeMismatch { map: usize, detail: String },
    #[error("level {level}: scaffolding reached {size} points, cap is {cap}")]
    StructureTooLarge { level: usize, size: usize, cap: usize },
    #[error("level {level}: {count} colour sets in scope, cap is {cap}")]
    ScopeTooLarge { level: usize, count: usize, cap: usize },
    #[error("type tables need fewer than 64 base points, got {0}")]
    TooManyPoints(usize),
    #[error("audit failed: {0}")]
    AuditFailed(String),
}

/// Naming and size limits for one construction level.
#[derive(Clone, Debug)]
pub struct RealizeOptions {
    pub level: usize,
    pub cap_structure: usize,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions {
            level: 1,
            cap_structure: 100_000,
        }
    }
}

/// A scaffolding structure `C ⊇ A` with its counting constants.
#[derive(Clone, Debug)]
pub struct TypeRealization<S> {
    pub carrier: S,
    /// `A` occupies indices `0..base_len` of the carrier.
    pub base_len: usize,
    /// `[c_0]` for exact-type realizations, `[c_0, …, c_|A|]` otherwise.
    pub constants: Vec<usize>,
}

/// Total bijections `h_i` of the carrier, one per partial map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryExtension {
    pub h: Vec<Vec<usize>>,
    /// Number of matched class pairs whose sizes were compared.
    pub classes_checked: usize,
}

/// Which colour sets the coloured type realizations range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ColorScope {
    /// Closure of the colour sets occurring on `A` under the maps' colour
    /// permutations.
    #[default]
    Orbit,
    /// Every subset of the colour universe.
    Full,
}

/// The colour sets a realization enumerates, sorted.
pub fn color_scope(
    scope: ColorScope,
    initial: impl IntoIterator<Item = ColorSet>,
    chis: &[&ColorPermutation],
    universe: usize,
    cap: usize,
    level: usize,
) -> Result<Vec<ColorSet>, TypeError> {
    match scope {
        ColorScope::Full => {
            if universe >= 63 || (1usize << universe) > cap {
                return Err(TypeError::ScopeTooLarge {
                    level,
                    count: if universe >= 63 { usize::MAX } else { 1 << universe },
                    cap,
                });
            }
            Ok((0..1u64 << universe)
                .map(|m| bits::members(m).map(|c| crate::structures::ColorId(c as u32)).collect())
                .collect::<BTreeSet<ColorSet>>()
                .into_iter()
                .collect())
        }
        ColorScope::Orbit => {
            let mut seen: BTreeSet<ColorSet> = BTreeSet::new();
            let mut queue: Vec<ColorSet> = initial.into_iter().collect();
            while let Some(s) = queue.pop() {
                if !seen.insert(s.clone()) {
                    continue;
                }
                if seen.len() > cap {
                    return Err(TypeError::ScopeTooLarge {
                        level,
                        count: seen.len(),
                        cap,
                    });
                }
                for chi in chis {
                    let img = s.image(chi);
                    if !seen.contains(&img) {
                        queue.push(img);
                    }
                }
            }
            Ok(seen.into_iter().collect())
        }
    }
}

/// Fresh deterministic names `t<level>_<counter>` avoiding existing ones.
pub(crate) struct Namer {
    level: usize,
    counter: usize,
    taken: BTreeSet<VertexId>,
}

impl Namer {
    pub(crate) fn new(level: usize, taken: &[VertexId]) -> Self {
        Namer {
            level,
            counter: 0,
            taken: taken.iter().cloned().collect(),
        }
    }

    pub(crate) fn next(&mut self) -> VertexId {
        loop {
            let name = VertexId(format!("t{}_{}", self.level, self.counter));
            self.counter += 1;
            if self.taken.insert(name.clone()) {
                return name;
            }
        }
    }
}

fn check_base(n: usize) -> Result<(), TypeError> {
    if n >= 64 {
        Err(TypeError::TooManyPoints(n))
    } else {
        Ok(())
    }
}

fn neighbour_mask<S: BinaryStructure + ?Sized>(s: &S, c: usize, base: usize) -> u64 {
    bits::mask_of(s.out_neighbors(c).iter().copied().filter(|v| *v < base))
}

fn in_mask<S: BinaryStructure + ?Sized>(s: &S, c: usize, base: usize) -> u64 {
    bits::mask_of(s.in_neighbors(c).iter().copied().filter(|v| *v < base))
}

fn check_size(size: usize, opts: &RealizeOptions) -> Result<(), TypeError> {
    if size > opts.cap_structure {
        Err(TypeError::StructureTooLarge {
            level: opts.level,
            size,
            cap: opts.cap_structure,
        })
    } else {
        Ok(())
    }
}

/// Adds points so that every subset of `A` is the exact neighbourhood of the
/// same number `c_0` of points; `c_0` is the largest such count in `A`.
/// New points are uncoloured and adjacent only to points of `A`.
pub fn realize_types_base(a: &Graph, opts: &RealizeOptions) -> Result<TypeRealization<Graph>, TypeError> {
    let n = a.len();
    check_base(n)?;
    let mut counts = vec![0usize; 1 << n];
    for v in 0..n {
        counts[neighbour_mask(a, v, n) as usize] += 1;
    }
    let c0 = counts.iter().copied().max().unwrap_or(0);
    let total = c0 << n;
    check_size(total, opts)?;
    let mut carrier = a.clone();
    let mut namer = Namer::new(opts.level, a.names());
    for (mask, count) in counts.iter().enumerate() {
        let nbrs: Vec<usize> = bits::members(mask as u64).collect();
        for _ in *count..c0 {
            carrier.push_vertex(namer.next(), &nbrs);
        }
    }
    let tr = TypeRealization {
        carrier,
        base_len: n,
        constants: vec![c0],
    };
    audit_exact_counts(&tr.carrier, n, c0, false)?;
    Ok(tr)
}

/// Digraph analogue of [`realize_types_base`] over exact pairs of
/// out- and in-neighbourhoods.
pub fn realize_types_digraph_base(a: &Digraph, opts: &RealizeOptions) -> Result<TypeRealization<Digraph>, TypeError> {
    let n = a.len();
    check_base(n)?;
    let mut counts: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for v in 0..n {
        *counts.entry((neighbour_mask(a, v, n), in_mask(a, v, n))).or_default() += 1;
    }
    let c0 = counts.values().copied().max().unwrap_or(0);
    let pairs = disjoint_pairs(n);
    check_size(c0.saturating_mul(pairs.len()), opts)?;
    let mut carrier = a.clone();
    let mut namer = Namer::new(opts.level, a.names());
    for (p, m) in pairs {
        let have = counts.get(&(p, m)).copied().unwrap_or(0);
        let out: Vec<usize> = bits::members(p).collect();
        let inc: Vec<usize> = bits::members(m).collect();
        for _ in have..c0 {
            carrier.push_vertex(namer.next(), &out, &inc);
        }
    }
    let tr = TypeRealization {
        carrier,
        base_len: n,
        constants: vec![c0],
    };
    audit_exact_counts(&tr.carrier, n, c0, true)?;
    Ok(tr)
}

fn audit_exact_counts<S: BinaryStructure>(c: &S, n: usize, c0: usize, directed: bool) -> Result<(), TypeError> {
    let mut counts: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for v in 0..c.len() {
        let m = if directed { in_mask(c, v, n) } else { 0 };
        *counts.entry((neighbour_mask(c, v, n), m)).or_default() += 1;
    }
    let expected = if directed { disjoint_pairs(n).len() } else { 1 << n };
    if c0 > 0 && (counts.len() != expected || counts.values().any(|k| *k != c0)) {
        return Err(TypeError::AuditFailed(String::from("exact neighbourhood classes are not uniform")));
    }
    Ok(())
}

/// All disjoint `(P, M)` pairs of subsets of `0..n`, ordered by
/// `|P ∪ M|`, then union, then `P`.
pub(crate) fn disjoint_pairs(n: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for s in 0..=n {
        out.extend(disjoint_pairs_of_size(n, s));
    }
    out
}

fn disjoint_pairs_of_size(n: usize, s: usize) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for union in bits::masks_of_size(n, s) {
        // Every submask of `union`, increasing.
        let mut sub = 0u64;
        loop {
            out.push((sub, union & !sub));
            if sub == union {
                break;
            }
            sub = (sub.wrapping_sub(union)) & union;
        }
    }
    out
}

/// Superset counts of one colour set's points, keyed by exact type.
#[derive(Default)]
struct TypeCounts(BTreeMap<(u64, u64), usize>);

impl TypeCounts {
    fn add(&mut self, key: (u64, u64), k: usize) {
        *self.0.entry(key).or_default() += k;
    }

    fn at_least(&self, p: u64, m: u64) -> usize {
        self.0
            .iter()
            .filter(|((kp, km), _)| p & !kp == 0 && m & !km == 0)
            .map(|(_, k)| *k)
            .sum()
    }
}

/// Points to add: type `(P, M)` (with `M = 0` for graphs), colour-set index,
/// multiplicity.
type Plan = Vec<((u64, u64), usize, usize)>;

/// Stage-by-stage construction `C_T ⊆ … ⊆ C_0`, shared by graphs and
/// digraphs. Returns the plan and the constants `c_0..=c_T`.
fn staged_plan(
    n: usize,
    base_types: &[((u64, u64), usize)],
    scope_len: usize,
    types_of_size: impl Fn(usize) -> Vec<(u64, u64)>,
    realisable: impl Fn((u64, u64), usize) -> bool,
    opts: &RealizeOptions,
) -> Result<(Plan, Vec<usize>), TypeError> {
    let mut counts: Vec<TypeCounts> = (0..scope_len).map(|_| TypeCounts::default()).collect();
    for (key, u) in base_types {
        counts[*u].add(*key, 1);
    }
    let mut constants = vec![0usize; n + 1];
    let mut plan = Vec::new();
    let mut added = 0usize;
    for t in (1..=n).rev() {
        let s = t - 1;
        let mut row = Vec::new();
        for key in types_of_size(s) {
            for u in 0..scope_len {
                if realisable(key, u) {
                    row.push((key, u, counts[u].at_least(key.0, key.1)));
                }
            }
        }
        let cs = row.iter().map(|r| r.2).max().unwrap_or(0);
        constants[s] = cs;
        for (key, u, have) in row {
            if cs > have {
                counts[u].add(key, cs - have);
                plan.push((key, u, cs - have));
                added += cs - have;
                check_size(n + added, opts)?;
            }
        }
    }
    Ok((plan, constants))
}

/// Inductive type realization for coloured graphs.
///
/// `a` must be `U_c`-`K_{m+1}`-free. A pair `(A_0, U_0)` is realisable when
/// no `m` vertices of `A_0` form a clique coloured by a critical colouring
/// inside `U_0` (and, with a ledger, `U_0` has the prescribed palette
/// counts). The result satisfies, for every `A_0 ⊆ A` and `U_0` in `scope`,
/// `|{c : N_A(c) ⊇ A_0, U(c) = U_0}| = c_|A_0|` if realisable and `0`
/// otherwise. New points have all their neighbours in `A`.
pub fn realize_types_inductive(
    a: &ColoredGraph,
    m: usize,
    critical: &CriticalColoringSet,
    scope: &[ColorSet],
    ledger: Option<CardinalityLedger>,
    opts: &RealizeOptions,
) -> Result<TypeRealization<ColoredGraph>, TypeError> {
    let n = a.len();
    check_base(n)?;
    let oracle = GraphRealisability::new(a, m, critical, ledger);
    let index = scope_index(scope);
    let mut base_types = Vec::with_capacity(n);
    for v in 0..n {
        let u = *index
            .get(a.colors(v))
            .ok_or_else(|| TypeError::AuditFailed(format!("colours of {} outside the scope", a.name(v))))?;
        base_types.push(((neighbour_mask(a, v, n), 0), u));
    }
    let (plan, constants) = staged_plan(
        n,
        &base_types,
        scope.len(),
        |s| bits::masks_of_size(n, s).into_iter().map(|x| (x, 0)).collect(),
        |(p, _), u| oracle.is_realisable(p, &scope[u]),
        opts,
    )?;
    let mut carrier = a.clone();
    let mut namer = Namer::new(opts.level, a.graph().names());
    for ((p, _), u, k) in plan {
        let nbrs: Vec<usize> = bits::members(p).collect();
        for _ in 0..k {
            carrier.push_vertex(namer.next(), &nbrs, scope[u].clone());
        }
    }
    let tr = TypeRealization {
        carrier,
        base_len: n,
        constants,
    };
    audit_superset_counts(&tr, scope, |(p, _), u| oracle.is_realisable(p, &scope[u]), false)?;
    Ok(tr)
}

/// Type realization for coloured digraphs over disjoint pairs of out- and
/// in-neighbourhoods, guarding every forbidden tournament with more than one
/// vertex.
pub fn realize_types_digraph(
    a: &ColoredDigraph,
    forbidden: &[ForbiddenTournament],
    scope: &[ColorSet],
    opts: &RealizeOptions,
) -> Result<TypeRealization<ColoredDigraph>, TypeError> {
    let n = a.len();
    check_base(n)?;
    let oracle = DigraphRealisability::new(a, forbidden);
    let index = scope_index(scope);
    let mut base_types = Vec::with_capacity(n);
    for v in 0..n {
        let u = *index
            .get(a.colors(v))
            .ok_or_else(|| TypeError::AuditFailed(format!("colours of {} outside the scope", a.name(v))))?;
        base_types.push(((neighbour_mask(a, v, n), in_mask(a, v, n)), u));
    }
    let (plan, constants) = staged_plan(
        n,
        &base_types,
        scope.len(),
        |s| disjoint_pairs_of_size(n, s),
        |(p, m), u| oracle.is_realisable(p, m, &scope[u]),
        opts,
    )?;
    let mut carrier = a.clone();
    let mut namer = Namer::new(opts.level, a.digraph().names());
    for ((p, m), u, k) in plan {
        let out: Vec<usize> = bits::members(p).collect();
        let inc: Vec<usize> = bits::members(m).collect();
        for _ in 0..k {
            carrier.push_vertex(namer.next(), &out, &inc, scope[u].clone());
        }
    }
    let tr = TypeRealization {
        carrier,
        base_len: n,
        constants,
    };
    audit_superset_counts(&tr, scope, |(p, m), u| oracle.is_realisable(p, m, &scope[u]), true)?;
    Ok(tr)
}

fn scope_index(scope: &[ColorSet]) -> BTreeMap<&ColorSet, usize> {
    scope.iter().enumerate().map(|(i, s)| (s, i)).collect()
}

/// Recounts every type class of the finished carrier against the constants.
fn audit_superset_counts<S: BinaryStructure>(
    tr: &TypeRealization<S>,
    scope: &[ColorSet],
    realisable: impl Fn((u64, u64), usize) -> bool,
    directed: bool,
) -> Result<(), TypeError> {
    let n = tr.base_len;
    let index = scope_index(scope);
    let mut counts: Vec<TypeCounts> = (0..scope.len()).map(|_| TypeCounts::default()).collect();
    for v in 0..tr.carrier.len() {
        let u = *index
            .get(tr.carrier.colors(v))
            .ok_or_else(|| TypeError::AuditFailed(String::from("carrier point coloured outside the scope")))?;
        let key = (
            neighbour_mask(&tr.carrier, v, n),
            if directed { in_mask(&tr.carrier, v, n) } else { 0 },
        );
        counts[u].add(key, 1);
    }
    let keys: Vec<(u64, u64)> = if directed {
        disjoint_pairs(n)
    } else {
        (0..1u64 << n).map(|x| (x, 0)).collect()
    };
    for key in keys {
        let size = bits::popcount(key.0 | key.1);
        for (u, cnt) in counts.iter().enumerate() {
            let want = if realisable(key, u) { tr.constants[size] } else { 0 };
            let got = cnt.at_least(key.0, key.1);
            if got != want {
                return Err(TypeError::AuditFailed(format!(
                    "type {:#b}/{:#b} with colour set {} counted {got}, expected {want}",
                    key.0, key.1, u
                )));
            }
        }
    }
    Ok(())
}

/// Class key of a carrier point relative to a map's domain or range,
/// translated back to domain coordinates.
type ClassKey = (u64, u64, Option<ColorSet>);

/// Extends every `p_i` to a bijection `h_i` of the carrier mapping the class
/// of points with given neighbours in `D_i` (and given colours, when
/// `colored`) onto the corresponding class over `R_i`.
///
/// Within each class, pairs forced by `p_i` come first; then each unmatched
/// point is sent to the start of its own `h_i`-chain when that start lies in
/// the same target class, closing the chain into a cycle; the rest are paired
/// in index order.
pub fn extend_to_symmetries<S: BinaryStructure>(
    c: &S,
    base_len: usize,
    maps: &[PartialPermorphism],
    colored: bool,
) -> Result<SymmetryExtension, TypeError> {
    let n = base_len;
    check_base(n)?;
    let directed = !c.is_symmetric();
    let mut h = Vec::with_capacity(maps.len());
    let mut classes_checked = 0;
    for (i, p) in maps.iter().enumerate() {
        let mut inv = vec![None; n];
        for (x, y) in p.pairs() {
            inv[y] = Some(x);
        }
        let dom = bits::mask_of(p.pairs().map(|(x, _)| x));
        let ran = bits::mask_of(p.pairs().map(|(_, y)| y));
        let back = |mask: u64| bits::map_mask(mask & ran, &inv).expect("range points have preimages");
        let chi_inv = p.chi().inverse();
        let mut left = Vec::with_capacity(c.len());
        let mut right = Vec::with_capacity(c.len());
        for v in 0..c.len() {
            let out = neighbour_mask(c, v, n);
            let inc = if directed { in_mask(c, v, n) } else { 0 };
            let col = colored.then(|| c.colors(v).clone());
            left.push((out & dom, inc & dom, col.clone()));
            right.push((back(out), back(inc), col.map(|s| s.image(&chi_inv))));
        }
        let (perm, checked) = match_classes(&left, &right, p, i)?;
        classes_checked += checked;
        audit_extension(c, p, &perm, colored, i)?;
        h.push(perm);
    }
    Ok(SymmetryExtension { h, classes_checked })
}

/// [`extend_to_symmetries`] for the uncoloured base scaffolding.
pub fn extend_to_symmetries_base(tr: &TypeRealization<Graph>, maps: &[PartialPermorphism]) -> Result<SymmetryExtension, TypeError> {
    extend_to_symmetries(&tr.carrier, tr.base_len, maps, false)
}

/// [`extend_to_symmetries`] with colour equivariance.
pub fn extend_to_symmetries_colored(
    tr: &TypeRealization<ColoredGraph>,
    maps: &[PartialPermorphism],
) -> Result<SymmetryExtension, TypeError> {
    extend_to_symmetries(&tr.carrier, tr.base_len, maps, true)
}

fn match_classes(
    left: &[ClassKey],
    right: &[ClassKey],
    p: &PartialPermorphism,
    which: usize,
) -> Result<(Vec<usize>, usize), TypeError> {
    let len = left.len();
    let mut h: Vec<Option<usize>> = vec![None; len];
    let mut pre: Vec<Option<usize>> = vec![None; len];
    for (a, b) in p.pairs() {
        if left[a] != right[b] {
            return Err(TypeError::ClassSizeMismatch {
                map: which,
                detail: format!("forced pair {a} -> {b} crosses classes"),
            });
        }
        h[a] = Some(b);
        pre[b] = Some(a);
    }
    let mut sources: BTreeMap<&ClassKey, Vec<usize>> = BTreeMap::new();
    let mut targets: BTreeMap<&ClassKey, BTreeSet<usize>> = BTreeMap::new();
    for v in 0..len {
        if h[v].is_none() {
            sources.entry(&left[v]).or_default().push(v);
        }
        if pre[v].is_none() {
            targets.entry(&right[v]).or_default().insert(v);
        }
    }
    let mut class_sizes: BTreeMap<&ClassKey, (usize, usize)> = BTreeMap::new();
    for v in 0..len {
        class_sizes.entry(&left[v]).or_default().0 += 1;
        class_sizes.entry(&right[v]).or_default().1 += 1;
    }
    for (key, (l, r)) in &class_sizes {
        if l != r {
            return Err(TypeError::ClassSizeMismatch {
                map: which,
                detail: format!("class {:#b}/{:#b} has {l} sources and {r} targets", key.0, key.1),
            });
        }
    }
    for (key, src) in sources {
        let tgt = targets.get_mut(key).expect("equal class sizes");
        let mut rest = Vec::new();
        for x in src {
            let mut start = x;
            while let Some(y) = pre[start] {
                start = y;
            }
            if tgt.remove(&start) {
                h[x] = Some(start);
                pre[start] = Some(x);
            } else {
                rest.push(x);
            }
        }
        for (x, y) in rest.into_iter().zip(core::mem::take(tgt)) {
            h[x] = Some(y);
            pre[y] = Some(x);
        }
    }
    let perm = h.into_iter().map(|x| x.expect("every point matched")).collect();
    Ok((perm, class_sizes.len()))
}

fn audit_extension<S: BinaryStructure>(
    c: &S,
    p: &PartialPermorphism,
    h: &[usize],
    colored: bool,
    which: usize,
) -> Result<(), TypeError> {
    let fail = |d: String| Err(TypeError::AuditFailed(format!("h_{which}: {d}")));
    let mut seen = vec![false; h.len()];
    for &y in h {
        if seen[y] {
            return fail(String::from("not a bijection"));
        }
        seen[y] = true;
    }
    for (a, pa) in p.pairs() {
        if h[a] != pa {
            return fail(format!("does not extend the map at {a}"));
        }
        for b in 0..c.len() {
            if c.holds(a, b) != c.holds(pa, h[b]) || c.holds(b, a) != c.holds(h[b], pa) {
                return fail(format!("relation of {a} and {b} not transported"));
            }
        }
    }
    if colored {
        for b in 0..c.len() {
            if c.colors(h[b]) != &c.colors(b).image(p.chi()) {
                return fail(format!("colours of {b} not transported"));
            }
        }
    }
    Ok(())
}
