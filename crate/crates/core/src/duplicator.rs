//! The duplicator step: the group `Γ` generated by the pairs `γ_i = (χ_i, h_i)`,
//! the quotient `B = A × Γ / ≡`, and the automorphisms `f_i` read off it.
//!
//! Group elements act on the right: `(g·g')` applies `g` first. An element is
//! stored as one permutation table over the colour universe followed by the
//! points of `C`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::structures::{
    BinaryStructure, ColorId, ColorPermutation, ColorSet, ColoredDigraph, ColoredGraph, DesignatedColors, Digraph,
    Graph, PartialPermorphism, VertexId,
};
use crate::typerealize::Namer;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DuplicatorError {
    #[error("level {level}: group exceeds {cap} elements")]
    GroupTooLarge { level: usize, cap: usize },
    #[error("level {level}: quotient would have more than {cap} points")]
    StructureTooLarge { level: usize, cap: usize },
    #[error("basic fact {fact} violated: {detail}")]
    FactViolation { fact: u8, detail: String },
    #[error("generators disagree in shape: {0}")]
    BadGenerators(String),
}

/// A pair `(χ, h)`: a colour permutation with a bijection of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub chi: ColorPermutation,
    pub h: Vec<usize>,
}

impl GroupElement {
    pub fn identity(colors: usize, points: usize) -> Self {
        GroupElement {
            chi: ColorPermutation::identity(colors),
            h: (0..points).collect(),
        }
    }
}

/// Limits for one duplicator step.
#[derive(Clone, Debug)]
pub struct DuplicatorOptions {
    pub level: usize,
    pub cap_group: usize,
    pub cap_structure: usize,
    /// Upper bound on `|Γ| · (|U| + |C|)`, the size of the element tables.
    pub max_table_entries: usize,
    /// Random pairs used for the homomorphism spot check.
    pub homomorphism_samples: usize,
    pub seed: u64,
}

impl Default for DuplicatorOptions {
    fn default() -> Self {
        DuplicatorOptions {
            level: 1,
            cap_group: 100_000,
            cap_structure: 100_000,
            max_table_entries: 60_000_000,
            homomorphism_samples: 100,
            seed: 0x5eed,
        }
    }
}

fn fingerprint(table: &[u32]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for x in table {
        h ^= u64::from(*x);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// The finite group `⟨γ_1, …, γ_n⟩`, enumerated explicitly. Element 0 is the
/// identity and element `i + 1` is not necessarily `γ_i` (use
/// [`DuplicatorGroup::generator`]).
#[derive(Clone, Debug)]
pub struct DuplicatorGroup {
    colors: usize,
    points: usize,
    table: Vec<u32>,
    index: BTreeMap<u64, Vec<u32>>,
    generators: Vec<u32>,
    /// `right[g * n + i]` is the index of `g · γ_i`.
    right: Vec<u32>,
}

impl DuplicatorGroup {
    fn width(&self) -> usize {
        self.colors + self.points
    }

    pub fn len(&self) -> usize {
        match self.width() {
            0 => 1,
            w => self.table.len() / w,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// Index of `γ_i`.
    pub fn generator(&self, i: usize) -> usize {
        self.generators[i] as usize
    }

    fn row(&self, g: usize) -> &[u32] {
        let w = self.width();
        &self.table[g * w..(g + 1) * w]
    }

    pub fn apply_chi(&self, g: usize, c: ColorId) -> ColorId {
        ColorId(self.row(g)[c.index()])
    }

    pub fn apply_h(&self, g: usize, x: usize) -> usize {
        self.row(g)[self.colors + x] as usize - self.colors
    }

    pub fn element(&self, g: usize) -> GroupElement {
        let row = self.row(g);
        GroupElement {
            chi: ColorPermutation::new(row[..self.colors].iter().map(|c| ColorId(*c)).collect())
                .expect("group rows are permutations"),
            h: row[self.colors..].iter().map(|x| *x as usize - self.colors).collect(),
        }
    }

    pub fn color_image(&self, g: usize, s: &ColorSet) -> ColorSet {
        s.iter().map(|c| self.apply_chi(g, c)).collect()
    }

    fn lookup(&self, row: &[u32]) -> Option<usize> {
        let w = self.width();
        self.index
            .get(&fingerprint(row))?
            .iter()
            .map(|g| *g as usize)
            .find(|g| &self.table[g * w..(g + 1) * w] == row)
    }

    /// Index of `g · h` (apply `g`, then `h`).
    pub fn mul(&self, g: usize, h: usize) -> usize {
        let (a, b) = (self.row(g), self.row(h));
        let prod: Vec<u32> = a.iter().map(|x| b[*x as usize]).collect();
        self.lookup(&prod).expect("group is closed")
    }

    pub fn inverse(&self, g: usize) -> usize {
        let a = self.row(g);
        let mut inv = vec![0u32; a.len()];
        for (i, x) in a.iter().enumerate() {
            inv[*x as usize] = i as u32;
        }
        self.lookup(&inv).expect("group is closed")
    }

    /// Index of `g · γ_i`.
    pub fn right_gen(&self, g: usize, i: usize) -> usize {
        self.right[g * self.generators.len() + i] as usize
    }
}

/// Closes the generators under composition.
pub fn generate_group(
    generators: &[GroupElement],
    colors: usize,
    points: usize,
    opts: &DuplicatorOptions,
) -> Result<DuplicatorGroup, DuplicatorError> {
    let w = colors + points;
    let mut gens: Vec<Vec<u32>> = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        if g.chi.len() != colors || g.h.len() != points {
            return Err(DuplicatorError::BadGenerators(format!("generator {i} has the wrong size")));
        }
        let mut row: Vec<u32> = g.chi.as_slice().iter().map(|c| c.0).collect();
        row.extend(g.h.iter().map(|x| (x + colors) as u32));
        let mut seen = vec![false; w];
        for x in &row {
            if seen[*x as usize] {
                return Err(DuplicatorError::BadGenerators(format!("generator {i} is not a bijection")));
            }
            seen[*x as usize] = true;
        }
        gens.push(row);
    }
    let too_large = || DuplicatorError::GroupTooLarge {
        level: opts.level,
        cap: opts.cap_group,
    };
    let mut group = DuplicatorGroup {
        colors,
        points,
        table: Vec::new(),
        index: BTreeMap::new(),
        generators: Vec::new(),
        right: Vec::new(),
    };
    let identity: Vec<u32> = (0..w as u32).collect();
    group.index.entry(fingerprint(&identity)).or_default().push(0);
    group.table.extend_from_slice(&identity);
    let n = gens.len();
    let mut g = 0usize;
    let mut prod = vec![0u32; w];
    // Breadth-first over right multiplication by generators.
    while g * w.max(1) < group.table.len() || (w == 0 && g == 0) {
        for s in &gens {
            {
                let row = &group.table[g * w..(g + 1) * w];
                for (k, x) in row.iter().enumerate() {
                    prod[k] = s[*x as usize];
                }
            }
            let idx = match group.lookup(&prod) {
                Some(i) => i,
                None => {
                    let i = group.table.len() / w.max(1);
                    if i >= opts.cap_group || (i + 1) * w > opts.max_table_entries {
                        return Err(too_large());
                    }
                    group.index.entry(fingerprint(&prod)).or_default().push(i as u32);
                    group.table.extend_from_slice(&prod);
                    i
                }
            };
            group.right.push(idx as u32);
        }
        g += 1;
        if w == 0 {
            break;
        }
    }
    if group.len() > opts.cap_group {
        return Err(too_large());
    }
    debug_assert_eq!(group.right.len(), group.len() * n);
    group.generators = (0..n).map(|i| group.right[i]).collect();
    Ok(group)
}

/// Structures the quotient can be assembled into.
pub trait QuotientCarrier: BinaryStructure + Sized {
    fn assemble(&self, names: Vec<VertexId>, arcs: Vec<(usize, usize)>, coloring: Vec<ColorSet>) -> Self;
}

impl QuotientCarrier for ColoredGraph {
    fn assemble(&self, names: Vec<VertexId>, arcs: Vec<(usize, usize)>, coloring: Vec<ColorSet>) -> Self {
        let graph = Graph::new(names, arcs).expect("quotient names are distinct");
        ColoredGraph::from_parts(graph, self.palettes().to_vec(), self.color_names().to_vec(), coloring)
    }
}

impl QuotientCarrier for ColoredDigraph {
    fn assemble(&self, names: Vec<VertexId>, arcs: Vec<(usize, usize)>, coloring: Vec<ColorSet>) -> Self {
        let digraph = Digraph::new(names, arcs).expect("quotient names are distinct");
        ColoredDigraph::from_parts(digraph, self.color_names().to_vec(), coloring)
    }
}

/// Counts of individual checks performed for each basic fact.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactAudit {
    pub checked: [usize; 5],
    pub homomorphism_pairs: usize,
}

/// `B = A × Γ / ≡` with `A` embedded as classes `0..|A|`.
#[derive(Clone, Debug)]
pub struct QuotientStructure<S> {
    pub structure: S,
    /// Class of `(a, g)`, at `g * |A| + a`.
    pub class_of: Vec<u32>,
    /// Lexicographically least `(a, g)` of every class.
    pub representatives: Vec<(usize, usize)>,
    /// `f_i` as maps on classes, one per generator.
    pub automorphisms: Vec<Vec<usize>>,
    pub audit: FactAudit,
    embedded: usize,
}

impl<S> QuotientStructure<S> {
    pub fn class(&self, a: usize, g: usize) -> usize {
        let n = self.embedded_len();
        self.class_of[g * n + a] as usize
    }

    /// Number of points of `A`.
    pub fn embedded_len(&self) -> usize {
        self.embedded
    }
}

struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
    }
}

fn violation<T>(fact: u8, detail: String) -> Result<T, DuplicatorError> {
    Err(DuplicatorError::FactViolation { fact, detail })
}

/// Builds the quotient, asserting the basic facts on the way.
///
/// `c` is the scaffolding on which the `h` parts act (with `A` as its first
/// `|A|` points); `designated`, when present, is checked for transport.
pub fn build_quotient<S: QuotientCarrier, C: BinaryStructure + ?Sized>(
    a: &S,
    c: &C,
    maps: &[PartialPermorphism],
    gamma: &DuplicatorGroup,
    designated: Option<&DesignatedColors>,
    opts: &DuplicatorOptions,
) -> Result<QuotientStructure<S>, DuplicatorError> {
    let n = a.len();
    let order = gamma.len();
    let nodes = n * order;
    if maps.len() != gamma.generator_count() {
        return Err(DuplicatorError::BadGenerators(String::from("one generator per map is required")));
    }
    // E = {((p_i(a), γ), (a, γ_i γ))}
    let left_gen: Vec<Vec<usize>> = (0..maps.len())
        .map(|i| (0..order).map(|g| gamma.mul(gamma.generator(i), g)).collect())
        .collect();
    let mut uf = UnionFind::new(nodes);
    for (i, p) in maps.iter().enumerate() {
        for (x, px) in p.pairs() {
            for g in 0..order {
                uf.union(g * n + px, left_gen[i][g] * n + x);
            }
        }
    }
    // Class ids: embedded A first, then by least (vertex, element).
    let mut id_of_root = vec![u32::MAX; nodes];
    let mut representatives: Vec<(usize, usize)> = Vec::new();
    for x in 0..n {
        let r = uf.find(x);
        if id_of_root[r] != u32::MAX {
            return violation(1, format!("points {} and {} of A are identified", representatives[id_of_root[r] as usize].0, x));
        }
        id_of_root[r] = representatives.len() as u32;
        representatives.push((x, 0));
    }
    for x in 0..n {
        for g in 1..order {
            let r = uf.find(g * n + x);
            if id_of_root[r] == u32::MAX {
                id_of_root[r] = representatives.len() as u32;
                representatives.push((x, g));
                if representatives.len() > opts.cap_structure {
                    return Err(DuplicatorError::StructureTooLarge {
                        level: opts.level,
                        cap: opts.cap_structure,
                    });
                }
            }
        }
    }
    let class_of: Vec<u32> = (0..nodes).map(|v| id_of_root[uf.find(v)]).collect();
    let classes = representatives.len();
    let mut audit = FactAudit::default();

    // Fact 1: a^h and U(a)^χ depend only on the class.
    let mut h_of = vec![usize::MAX; classes];
    let mut colors: Vec<Option<ColorSet>> = vec![None; classes];
    for g in 0..order {
        for x in 0..n {
            let k = class_of[g * n + x] as usize;
            let hx = gamma.apply_h(g, x);
            let ux = gamma.color_image(g, a.colors(x));
            if h_of[k] == usize::MAX {
                h_of[k] = hx;
            } else if h_of[k] != hx {
                return violation(1, format!("class {k}: a^h differs between representatives"));
            }
            match &colors[k] {
                None => colors[k] = Some(ux),
                Some(u) if *u != ux => return violation(1, format!("class {k}: U(a)^χ differs")),
                _ => {}
            }
            audit.checked[0] += 1;
        }
    }

    // Fact 3: image of the C-neighbourhood and designated colours transport.
    let mut nbr_image: Vec<Option<(Vec<usize>, Vec<usize>)>> = vec![None; classes];
    let mut designated_image: Vec<Option<Vec<ColorId>>> = vec![None; classes];
    for g in 0..order {
        for x in 0..n {
            let k = class_of[g * n + x] as usize;
            let mut out: Vec<usize> = c.out_neighbors(x).iter().map(|y| gamma.apply_h(g, *y)).collect();
            let mut inc: Vec<usize> = c.in_neighbors(x).iter().map(|y| gamma.apply_h(g, *y)).collect();
            out.sort_unstable();
            inc.sort_unstable();
            match &nbr_image[k] {
                None => nbr_image[k] = Some((out, inc)),
                Some(prev) if prev.0 != out || prev.1 != inc => {
                    return violation(3, format!("class {k}: C-neighbourhood images differ"));
                }
                _ => {}
            }
            if let Some(d) = designated {
                let img: Vec<ColorId> = d.row(x).iter().map(|u| gamma.apply_chi(g, *u)).collect();
                match &designated_image[k] {
                    None => designated_image[k] = Some(img),
                    Some(prev) if *prev != img => {
                        return violation(3, format!("class {k}: designated colour images differ"));
                    }
                    _ => {}
                }
            }
            audit.checked[2] += 1;
        }
    }
    drop(nbr_image);

    // Relation on classes, sheet by sheet.
    let mut arcs = Vec::new();
    for g in 0..order {
        for (x, y) in a.arcs() {
            arcs.push((class_of[g * n + x] as usize, class_of[g * n + y] as usize));
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    let mut namer = Namer::new(opts.level, &a.names());
    let names: Vec<VertexId> = (0..classes)
        .map(|k| if k < n { a.name(k).clone() } else { namer.next() })
        .collect();
    let coloring: Vec<ColorSet> = colors.into_iter().map(|c| c.expect("every class has a member")).collect();
    let structure = a.assemble(names, arcs, coloring);

    // Facts 2 and 4: within every sheet the relation is that of A.
    for g in 0..order {
        for x in 0..n {
            for y in 0..n {
                let (kx, ky) = (class_of[g * n + x] as usize, class_of[g * n + y] as usize);
                if structure.holds(kx, ky) != a.holds(x, y) {
                    return violation(4, format!("sheet {g}: relation of {x} and {y} not reproduced"));
                }
                audit.checked[1] += 1;
                audit.checked[3] += 1;
            }
        }
    }
    // Fact 5: (a, (χ, h))/≡ ∈ V^χ iff a ∈ V.
    for g in 0..order {
        for x in 0..n {
            let k = class_of[g * n + x] as usize;
            if structure.colors(k) != &gamma.color_image(g, a.colors(x)) {
                return violation(5, format!("class {k}: colours are not U(a)^χ"));
            }
            audit.checked[4] += 1;
        }
    }

    let automorphisms = quotient_automorphisms_raw(&class_of, n, gamma)?;
    let mut q = QuotientStructure {
        structure,
        class_of,
        representatives,
        automorphisms,
        audit,
        embedded: n,
    };
    q.audit.homomorphism_pairs = homomorphism_spot_check(&q, n, gamma, opts)?;
    Ok(q)
}

fn quotient_automorphisms_raw(class_of: &[u32], n: usize, gamma: &DuplicatorGroup) -> Result<Vec<Vec<usize>>, DuplicatorError> {
    let classes = class_of.iter().map(|k| *k as usize + 1).max().unwrap_or(0);
    let mut out = Vec::with_capacity(gamma.generator_count());
    for i in 0..gamma.generator_count() {
        let mut f = vec![usize::MAX; classes];
        for g in 0..gamma.len() {
            let gi = gamma.right_gen(g, i);
            for x in 0..n {
                let k = class_of[g * n + x] as usize;
                let target = class_of[gi * n + x] as usize;
                if f[k] == usize::MAX {
                    f[k] = target;
                } else if f[k] != target {
                    return violation(1, format!("f_{i} is not well defined on class {k}"));
                }
            }
        }
        out.push(f);
    }
    Ok(out)
}

/// `f_i` for every generator: `((a, γ)/≡)^{f_i} = (a, γ γ_i)/≡`.
pub fn quotient_automorphisms<S>(q: &QuotientStructure<S>, gamma: &DuplicatorGroup) -> Vec<Vec<usize>> {
    let n = q.class_of.len() / gamma.len();
    quotient_automorphisms_raw(&q.class_of, n, gamma).expect("checked during construction")
}

/// Checks `f_{γγ'} = f_γ ∘ f_{γ'}` on random pairs; returns the number of
/// pairs checked.
fn homomorphism_spot_check<S>(
    q: &QuotientStructure<S>,
    n: usize,
    gamma: &DuplicatorGroup,
    opts: &DuplicatorOptions,
) -> Result<usize, DuplicatorError> {
    let order = gamma.len();
    let classes = q.representatives.len();
    let mut rng = SmallRng::seed_from_u64(opts.seed ^ opts.level as u64);
    let f_of = |g: usize, k: usize| -> usize {
        let (x, h) = q.representatives[k];
        q.class_of[gamma.mul(h, g) * n + x] as usize
    };
    let sample_classes = classes.min(32);
    for _ in 0..opts.homomorphism_samples {
        let g = rng.gen_range(0..order);
        let h = rng.gen_range(0..order);
        let gh = gamma.mul(g, h);
        for _ in 0..sample_classes {
            let k = rng.gen_range(0..classes);
            if f_of(gh, k) != f_of(h, f_of(g, k)) {
                return violation(1, format!("f_(g h) differs from f_g then f_h on class {k}"));
            }
        }
    }
    Ok(opts.homomorphism_samples)
}

/// A shortest word `(generator, inverted)` whose action moves `b` into the
/// embedded copy of `A` (classes `0..embedded`).
pub fn orbit_witness(b: usize, automorphisms: &[Vec<usize>], embedded: usize) -> Option<Vec<(usize, bool)>> {
    if b < embedded {
        return Some(Vec::new());
    }
    let len = automorphisms.first().map_or(0, Vec::len);
    let inverses: Vec<Vec<usize>> = automorphisms
        .iter()
        .map(|f| {
            let mut inv = vec![0; f.len()];
            for (x, y) in f.iter().enumerate() {
                inv[*y] = x;
            }
            inv
        })
        .collect();
    let mut prev: Vec<Option<(usize, usize, bool)>> = vec![None; len];
    let mut seen = vec![false; len];
    seen[b] = true;
    let mut queue = alloc::collections::VecDeque::from([b]);
    while let Some(x) = queue.pop_front() {
        for (i, (f, finv)) in automorphisms.iter().zip(&inverses).enumerate() {
            for (y, inv) in [(f[x], false), (finv[x], true)] {
                if seen[y] {
                    continue;
                }
                seen[y] = true;
                prev[y] = Some((x, i, inv));
                if y < embedded {
                    let mut word = Vec::new();
                    let mut cur = y;
                    while let Some((p, i, inv)) = prev[cur] {
                        word.push((i, inv));
                        cur = p;
                    }
                    word.reverse();
                    return Some(word);
                }
                queue.push_back(y);
            }
        }
    }
    None
}
