//! Independent certification of extensions, plus an exhaustive search for
//! small extensions used as a cross-check.
//!
//! Nothing here depends on the construction modules; every check is a
//! direct reading of the definition.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::freeness::{self, FreenessConstraint};
use crate::structures::{
    BinaryStructure, ColorId, ColorPermutation, ColorSet, ColoredDigraph, ColoredGraph, DesignatedColors, Digraph,
    Graph, PartialPermorphism, RelationalStructure, VertexId,
};

/// One named check with a counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateReport {
    pub checks: Vec<Check>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &'static str, result: Result<(), String>) {
        self.checks.push(Check {
            name,
            passed: result.is_ok(),
            counterexample: result.err(),
        });
    }
}

impl fmt::Display for CertificateReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.counterexample {
                write!(f, " ({w})")?;
            }
        }
        Ok(())
    }
}

/// The check names, in report order.
pub const CHECK_NAMES: [&str; 7] = [
    "induced-substructure",
    "extension",
    "bijectivity",
    "automorphism",
    "freeness",
    "orbit-condition",
    "neighborhood-color-condition",
];

/// Certifies that `b` with the total maps `automorphisms` is an extension of
/// `a` with the partial maps `maps` satisfying `constraint` and the side
/// conditions.
///
/// Points of `a` are located in `b` by name. For graphs the side condition
/// uses `designated` (vacuous without it); for digraphs every admissible
/// in- and out-neighbour colour assignment is enumerated.
pub fn verify_extension<S: BinaryStructure + ?Sized>(
    a: &S,
    b: &S,
    automorphisms: &[PartialPermorphism],
    maps: &[PartialPermorphism],
    constraint: &FreenessConstraint,
    designated: Option<&DesignatedColors>,
) -> CertificateReport {
    let mut report = CertificateReport::default();
    let embed = locate(a, b);
    report.record(CHECK_NAMES[0], embed.as_ref().map_err(Clone::clone).and_then(|e| check_induced(a, b, e)));
    let embed = embed.unwrap_or_default();
    let have_embedding = embed.len() == a.len();
    report.record(
        CHECK_NAMES[1],
        if have_embedding {
            check_extends(automorphisms, maps, &embed, b.len())
        } else {
            Err(String::from("A does not embed"))
        },
    );
    let bij = check_bijective(automorphisms, b.len());
    let bij_ok = bij.is_ok();
    report.record(CHECK_NAMES[2], bij);
    report.record(
        CHECK_NAMES[3],
        if bij_ok {
            check_automorphisms(b, automorphisms)
        } else {
            Err(String::from("some map is not a bijection"))
        },
    );
    report.record(CHECK_NAMES[4], check_free(b, constraint));
    report.record(
        CHECK_NAMES[5],
        if bij_ok && have_embedding {
            check_orbits(b, automorphisms, &embed)
        } else {
            Err(String::from("needs bijections and an embedding"))
        },
    );
    report.record(
        CHECK_NAMES[6],
        if !have_embedding {
            Err(String::from("A does not embed"))
        } else if b.is_symmetric() {
            check_designated(a, b, &embed, designated)
        } else {
            check_digraph_side_conditions(a, b, &embed, maps)
        },
    );
    report
}

fn locate<S: BinaryStructure + ?Sized>(a: &S, b: &S) -> Result<Vec<usize>, String> {
    let index: BTreeMap<&VertexId, usize> = (0..b.len()).map(|v| (b.name(v), v)).collect();
    (0..a.len())
        .map(|x| index.get(a.name(x)).copied().ok_or_else(|| format!("{} missing from B", a.name(x))))
        .collect()
}

fn check_induced<S: BinaryStructure + ?Sized>(a: &S, b: &S, embed: &[usize]) -> Result<(), String> {
    if a.color_count() != b.color_count() {
        return Err(format!("colour universes differ: {} vs {}", a.color_count(), b.color_count()));
    }
    for x in 0..a.len() {
        if a.colors(x) != b.colors(embed[x]) {
            return Err(format!("colours of {} changed", a.name(x)));
        }
        for y in 0..a.len() {
            if a.holds(x, y) != b.holds(embed[x], embed[y]) {
                return Err(format!("relation between {} and {} changed", a.name(x), a.name(y)));
            }
        }
    }
    Ok(())
}

fn check_extends(autos: &[PartialPermorphism], maps: &[PartialPermorphism], embed: &[usize], len: usize) -> Result<(), String> {
    if autos.len() != maps.len() {
        return Err(format!("{} automorphisms for {} maps", autos.len(), maps.len()));
    }
    for (i, (f, p)) in autos.iter().zip(maps).enumerate() {
        if f.len() != len || !f.is_total() {
            return Err(format!("f_{i} is not total on B"));
        }
        if f.chi() != p.chi() {
            return Err(format!("f_{i} uses a different colour permutation"));
        }
        for (x, px) in p.pairs() {
            if f.get(embed[x]) != Some(embed[px]) {
                return Err(format!("f_{i} does not extend p_{i} at point {x}"));
            }
        }
    }
    Ok(())
}

fn check_bijective(autos: &[PartialPermorphism], len: usize) -> Result<(), String> {
    for (i, f) in autos.iter().enumerate() {
        if f.len() != len || !f.is_total() {
            return Err(format!("f_{i} is not total"));
        }
        let mut hit = vec![false; len];
        for (_, y) in f.pairs() {
            if hit[y] {
                return Err(format!("f_{i} hits point {y} twice"));
            }
            hit[y] = true;
        }
    }
    Ok(())
}

/// Arcs go to arcs and there are as many arcs as before, so non-arcs go to
/// non-arcs: this is the all-pairs condition for a bijection.
fn check_automorphisms<S: BinaryStructure + ?Sized>(b: &S, autos: &[PartialPermorphism]) -> Result<(), String> {
    let arcs = b.arcs();
    for (i, f) in autos.iter().enumerate() {
        if f.chi().len() != b.color_count() {
            return Err(format!("f_{i}: colour permutation has the wrong size"));
        }
        let img = |x: usize| f.get(x).expect("total");
        for &(x, y) in &arcs {
            if !b.holds(img(x), img(y)) {
                return Err(format!("f_{i} breaks the relation between {} and {}", b.name(x), b.name(y)));
            }
        }
        for x in 0..b.len() {
            if b.colors(img(x)) != &b.colors(x).image(f.chi()) {
                return Err(format!("f_{i} does not carry the colours of {}", b.name(x)));
            }
        }
    }
    Ok(())
}

fn check_free<S: BinaryStructure + ?Sized>(b: &S, constraint: &FreenessConstraint) -> Result<(), String> {
    let names = |vs: &[usize]| vs.iter().map(|v| b.name(*v).as_str()).collect::<Vec<_>>().join(" ");
    match constraint {
        FreenessConstraint::CliqueFree { m, critical } => match freeness::find_critical_clique(b, *m, critical) {
            Some(w) => Err(format!("critical clique {}", names(&w.vertices))),
            None => Ok(()),
        },
        FreenessConstraint::TournamentFree(family) => {
            for (j, f) in family.iter().enumerate() {
                if let Some(w) = freeness::find_critical_tournament_copy(b, &f.tournament, &f.critical) {
                    return Err(format!("copy of tournament {j} on {}", names(&w.vertices)));
                }
            }
            Ok(())
        }
        FreenessConstraint::WeakHomFree(family) => {
            let arcs = b.arcs().into_iter().map(|(x, y)| vec![x, y]).collect();
            let rs = RelationalStructure::new(
                vec![(String::from("R"), 2)],
                (0..b.len()).map(|v| b.name(v).clone()).collect(),
                vec![arcs],
            )
            .map_err(|e| format!("{e}"))?;
            match freeness::weakhom_free(&rs, family) {
                Some(w) => Err(format!("weak homomorphism from pattern {} onto {}", w.pattern, names(&w.map))),
                None => Ok(()),
            }
        }
    }
}

/// Backwards search from `A` under the maps and their inverses.
fn check_orbits<S: BinaryStructure + ?Sized>(b: &S, autos: &[PartialPermorphism], embed: &[usize]) -> Result<(), String> {
    let n = b.len();
    let mut inverses = Vec::with_capacity(autos.len());
    for f in autos {
        let mut inv = vec![0; n];
        for (x, y) in f.pairs() {
            inv[y] = x;
        }
        inverses.push(inv);
    }
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = embed.iter().copied().collect();
    for &x in embed {
        seen[x] = true;
    }
    while let Some(x) = queue.pop_front() {
        for (f, inv) in autos.iter().zip(&inverses) {
            for y in [f.get(x).expect("total"), inv[x]] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(x) => Err(format!("{} cannot be moved into A", b.name(x))),
        None => Ok(()),
    }
}

fn check_designated<S: BinaryStructure + ?Sized>(
    a: &S,
    b: &S,
    embed: &[usize],
    designated: Option<&DesignatedColors>,
) -> Result<(), String> {
    let Some(d) = designated else { return Ok(()) };
    for x in 0..a.len() {
        let ex = embed[x];
        for &y in b.out_neighbors(ex) {
            for c in d.row(x) {
                if !b.colors(y).contains(*c) {
                    return Err(format!("{} is adjacent to {} but lacks its designated colour", b.name(y), a.name(x)));
                }
            }
        }
    }
    Ok(())
}

/// Every colour that some admissible assignment `a ↦ U_a` can give to each
/// point, for the in-neighbour variant (`inward`) or the out-neighbour one.
///
/// An assignment is admissible when `U_a ∩ A` is exactly the in- (out-)
/// neighbourhood of `a` and `U_{a^p} = U_a^χ` for every map. Points linked
/// by the maps constrain each other, so each linked component is solved by
/// fixing the colour of one point and propagating.
pub fn admissible_assignments<S: BinaryStructure + ?Sized>(
    a: &S,
    maps: &[PartialPermorphism],
    inward: bool,
) -> Vec<Vec<ColorId>> {
    let n = a.len();
    let k = a.color_count();
    let fits = |x: usize, c: ColorId| {
        (0..n).all(|y| {
            let related = if inward { a.holds(y, x) } else { a.holds(x, y) };
            a.colors(y).contains(c) == related
        })
    };
    let mut links: Vec<Vec<(usize, ColorPermutation)>> = vec![Vec::new(); n];
    for p in maps {
        let inv = p.chi().inverse();
        for (x, y) in p.pairs() {
            links[x].push((y, p.chi().clone()));
            links[y].push((x, inv.clone()));
        }
    }
    let mut options: Vec<Vec<ColorId>> = vec![Vec::new(); n];
    let mut done = vec![false; n];
    for root in 0..n {
        if done[root] {
            continue;
        }
        let mut component = Vec::new();
        for c in (0..k as u32).map(ColorId) {
            let mut value: BTreeMap<usize, ColorId> = BTreeMap::from([(root, c)]);
            let mut queue = VecDeque::from([root]);
            let mut ok = fits(root, c);
            while ok {
                let Some(x) = queue.pop_front() else { break };
                for (y, chi) in &links[x] {
                    let v = chi.apply(value[&x]);
                    match value.get(y) {
                        Some(w) if *w != v => ok = false,
                        Some(_) => {}
                        None => {
                            if !fits(*y, v) {
                                ok = false;
                            }
                            value.insert(*y, v);
                            queue.push_back(*y);
                        }
                    }
                }
            }
            if ok {
                for (x, v) in &value {
                    if !options[*x].contains(v) {
                        options[*x].push(*v);
                    }
                }
            }
            if component.is_empty() {
                // The component does not depend on the colour tried.
                let mut seen = BTreeMap::from([(root, ())]);
                let mut q = VecDeque::from([root]);
                while let Some(x) = q.pop_front() {
                    for (y, _) in &links[x] {
                        if seen.insert(*y, ()).is_none() {
                            q.push_back(*y);
                        }
                    }
                }
                component = seen.into_keys().collect();
            }
        }
        if k == 0 {
            component.push(root);
        }
        for x in component {
            done[x] = true;
        }
    }
    for o in &mut options {
        o.sort_unstable();
    }
    options
}

fn check_digraph_side_conditions<S: BinaryStructure + ?Sized>(
    a: &S,
    b: &S,
    embed: &[usize],
    maps: &[PartialPermorphism],
) -> Result<(), String> {
    for inward in [true, false] {
        let options = admissible_assignments(a, maps, inward);
        for x in 0..a.len() {
            let ex = embed[x];
            let related = if inward { b.in_neighbors(ex) } else { b.out_neighbors(ex) };
            for c in &options[x] {
                if let Some(y) = related.iter().find(|y| !b.colors(**y).contains(*c)) {
                    return Err(format!(
                        "{} is an {}-neighbour of {} but lacks an admissible colour",
                        b.name(*y),
                        if inward { "in" } else { "out" },
                        a.name(x)
                    ));
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
}

/// Input to [`brute_force_extension`].
#[derive(Clone, Copy, Debug)]
pub enum OracleInstance<'a> {
    Graph(&'a ColoredGraph),
    Digraph(&'a ColoredDigraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleStructure {
    Graph(ColoredGraph),
    Digraph(ColoredDigraph),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub structure: OracleStructure,
    pub automorphisms: Vec<PartialPermorphism>,
}

/// Outcome of the oracle; `NoneWithinCap` proves nothing beyond the cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    Found(OracleResult),
    NoneWithinCap,
}

struct OracleSearch {
    budget: u64,
    left: u64,
}

impl OracleSearch {
    fn tick(&mut self) -> Result<(), OracleError> {
        if self.left == 0 {
            return Err(OracleError::BudgetExhausted(self.budget));
        }
        self.left -= 1;
        Ok(())
    }
}

/// Exhaustive search for an extension with at most `size_cap` points.
///
/// Candidates are ordered by size, then by the lexicographic order of the
/// relation on pairs involving new points (then colour sets of new points);
/// automorphisms are found by backtracking.
pub fn brute_force_extension(
    a: OracleInstance<'_>,
    maps: &[PartialPermorphism],
    constraint: &FreenessConstraint,
    size_cap: usize,
    budget: u64,
) -> Result<OracleOutcome, OracleError> {
    let mut search = OracleSearch { budget, left: budget };
    let (base_len, directed, colors) = match a {
        OracleInstance::Graph(g) => (g.len(), false, g.color_count()),
        OracleInstance::Digraph(d) => (d.len(), true, d.color_count()),
    };
    for size in base_len..=size_cap {
        let new = size - base_len;
        let pairs: Vec<(usize, usize)> = (0..size)
            .flat_map(|y| (0..y).map(move |x| (x, y)))
            .filter(|(_, y)| *y >= base_len)
            .collect();
        let states: u64 = if directed { 3 } else { 2 };
        let relation_count = states.checked_pow(pairs.len() as u32).ok_or(OracleError::BudgetExhausted(budget))?;
        let color_choices: u64 = 1u64.checked_shl(colors as u32).ok_or(OracleError::BudgetExhausted(budget))?;
        let coloring_count = color_choices.checked_pow(new as u32).ok_or(OracleError::BudgetExhausted(budget))?;
        for code in 0..relation_count {
            for coloring_code in 0..coloring_count {
                search.tick()?;
                let mut arcs = Vec::new();
                let mut rest = code;
                // Most significant pair first gives lexicographic order.
                let mut digits = vec![0u64; pairs.len()];
                for d in digits.iter_mut().rev() {
                    *d = rest % states;
                    rest /= states;
                }
                for (&(x, y), d) in pairs.iter().zip(&digits) {
                    match d {
                        1 => arcs.push((x, y)),
                        2 => arcs.push((y, x)),
                        _ => {}
                    }
                }
                let mut new_colors = Vec::with_capacity(new);
                let mut rest = coloring_code;
                for _ in 0..new {
                    let bits = rest % color_choices;
                    rest /= color_choices;
                    new_colors.push(ColorSet::new((0..colors as u32).filter(|c| bits >> c & 1 == 1).map(ColorId)));
                }
                let candidate = assemble(a, size, &arcs, new_colors);
                let free = match &candidate {
                    OracleStructure::Graph(g) => check_free(g, constraint).is_ok(),
                    OracleStructure::Digraph(d) => check_free(d, constraint).is_ok(),
                };
                if !free {
                    continue;
                }
                let mut autos = Vec::with_capacity(maps.len());
                for p in maps {
                    let found = match &candidate {
                        OracleStructure::Graph(g) => extend_map(g, p, &mut search)?,
                        OracleStructure::Digraph(d) => extend_map(d, p, &mut search)?,
                    };
                    match found {
                        Some(f) => autos.push(f),
                        None => break,
                    }
                }
                if autos.len() == maps.len() {
                    return Ok(OracleOutcome::Found(OracleResult {
                        structure: candidate,
                        automorphisms: autos,
                    }));
                }
            }
        }
    }
    Ok(OracleOutcome::NoneWithinCap)
}

fn fresh_names(taken: &[VertexId], count: usize) -> Vec<VertexId> {
    let mut out = Vec::with_capacity(count);
    let mut k = 0;
    while out.len() < count {
        let name = VertexId(format!("x{k}"));
        k += 1;
        if !taken.contains(&name) {
            out.push(name);
        }
    }
    out
}

fn assemble(a: OracleInstance<'_>, size: usize, arcs: &[(usize, usize)], new_colors: Vec<ColorSet>) -> OracleStructure {
    match a {
        OracleInstance::Graph(g) => {
            let mut names = g.graph().names().to_vec();
            names.extend(fresh_names(&names, size - g.len()));
            let mut edges = g.graph().edges();
            edges.extend_from_slice(arcs);
            let graph = Graph::new(names, edges).expect("fresh names");
            let palettes = g
                .palettes()
                .iter()
                .map(|p| p.colors.iter().map(|c| g.color_names()[c.index()].clone()).collect())
                .collect();
            let mut coloring = g.coloring().to_vec();
            coloring.extend(new_colors);
            OracleStructure::Graph(ColoredGraph::new(graph, palettes, coloring).expect("colours in range"))
        }
        OracleInstance::Digraph(d) => {
            let mut names = d.digraph().names().to_vec();
            names.extend(fresh_names(&names, size - d.len()));
            let mut all = d.digraph().arcs();
            all.extend_from_slice(arcs);
            let digraph = Digraph::new(names, all).expect("fresh names");
            let mut coloring = d.coloring().to_vec();
            coloring.extend(new_colors);
            OracleStructure::Digraph(
                ColoredDigraph::new(digraph, d.color_names().to_vec(), coloring).expect("colours in range"),
            )
        }
    }
}

/// Backtracking search for a total `χ`-permorphism of `b` extending `p`
/// (whose points are the first points of `b`).
fn extend_map<S: BinaryStructure>(
    b: &S,
    p: &PartialPermorphism,
    search: &mut OracleSearch,
) -> Result<Option<PartialPermorphism>, OracleError> {
    let n = b.len();
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for (x, y) in p.pairs() {
        image[x] = Some(y);
        used[y] = true;
    }
    let order: Vec<usize> = (0..n).filter(|x| image[*x].is_none()).collect();
    let consistent = |image: &[Option<usize>], x: usize, y: usize| -> bool {
        if b.colors(y) != &b.colors(x).image(p.chi()) {
            return false;
        }
        (0..n).all(|z| match image[z] {
            Some(w) => b.holds(x, z) == b.holds(y, w) && b.holds(z, x) == b.holds(w, y),
            None => true,
        }) && b.holds(x, x) == b.holds(y, y)
    };
    // The fixed part must already be a permorphism of b.
    for (x, y) in p.pairs() {
        if !consistent(&image, x, y) {
            return Ok(None);
        }
    }
    fn go<S: BinaryStructure>(
        k: usize,
        order: &[usize],
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        consistent: &dyn Fn(&[Option<usize>], usize, usize) -> bool,
        search: &mut OracleSearch,
        b: &S,
    ) -> Result<bool, OracleError> {
        if k == order.len() {
            return Ok(true);
        }
        search.tick()?;
        let x = order[k];
        for y in 0..b.len() {
            if used[y] || !consistent(image, x, y) {
                continue;
            }
            image[x] = Some(y);
            used[y] = true;
            if go(k + 1, order, image, used, consistent, search, b)? {
                return Ok(true);
            }
            image[x] = None;
            used[y] = false;
        }
        Ok(false)
    }
    if go(0, &order, &mut image, &mut used, &consistent, search, b)? {
        let pairs = image.iter().enumerate().map(|(x, y)| (x, y.expect("total")));
        Ok(Some(PartialPermorphism::new(n, pairs, p.chi().clone()).expect("bijection")))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::{ForbiddenTournament, Tournament};

    fn edge() -> ColoredGraph {
        ColoredGraph::uncolored(Graph::numbered(2, [(0, 1)]))
    }

    fn swap() -> PartialPermorphism {
        PartialPermorphism::isomorphism(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn hand_built_edge_certifies() {
        let a = edge();
        let f = PartialPermorphism::isomorphism(2, [(0, 1), (1, 0)]).unwrap();
        let r = verify_extension(&a, &a, &[f], &[swap()], &FreenessConstraint::clique(3), None);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn tampering_is_caught() {
        let a = edge();
        let b = ColoredGraph::uncolored(Graph::numbered(2, []));
        let f = PartialPermorphism::isomorphism(2, [(0, 1), (1, 0)]).unwrap();
        let r = verify_extension(&a, &b, &[f], &[swap()], &FreenessConstraint::clique(3), None);
        assert!(!r.passed());
        let identity = PartialPermorphism::isomorphism(2, [(0, 0), (1, 1)]).unwrap();
        let r = verify_extension(&a, &a, &[identity], &[swap()], &FreenessConstraint::clique(3), None);
        assert_eq!(r.failures().next().unwrap().name, "extension");
    }

    #[test]
    fn oracle_finds_the_edge_swap() {
        let a = edge();
        let out = brute_force_extension(OracleInstance::Graph(&a), &[swap()], &FreenessConstraint::clique(3), 2, 10_000).unwrap();
        let OracleOutcome::Found(r) = out else { panic!("expected a witness") };
        let OracleStructure::Graph(b) = &r.structure else { panic!() };
        assert_eq!(b.len(), 2);
        assert_eq!(r.automorphisms[0].get(1), Some(0));
    }

    #[test]
    fn oracle_reports_none_within_cap_for_the_path() {
        let a = ColoredGraph::uncolored(Graph::numbered(3, [(0, 1), (1, 2)]));
        let p = PartialPermorphism::isomorphism(3, [(0, 1), (1, 2)]).unwrap();
        let c = FreenessConstraint::clique(3);
        let out = brute_force_extension(OracleInstance::Graph(&a), &[p.clone()], &c, 3, 100_000).unwrap();
        assert_eq!(out, OracleOutcome::NoneWithinCap);
        let out = brute_force_extension(OracleInstance::Graph(&a), &[p.clone()], &c, 4, 100_000).unwrap();
        let OracleOutcome::Found(r) = out else { panic!("a 4-cycle works") };
        let OracleStructure::Graph(b) = &r.structure else { panic!() };
        assert_eq!(b.graph().edge_count(), 4);
        assert!(verify_extension(&a, b, &r.automorphisms, &[p], &c, None).passed());
    }

    #[test]
    fn oracle_budget_is_reported() {
        let a = ColoredGraph::uncolored(Graph::numbered(3, [(0, 1), (1, 2)]));
        let p = PartialPermorphism::isomorphism(3, [(0, 1), (1, 2)]).unwrap();
        let out = brute_force_extension(OracleInstance::Graph(&a), &[p], &FreenessConstraint::clique(3), 5, 10);
        assert_eq!(out, Err(OracleError::BudgetExhausted(10)));
    }

    #[test]
    fn directed_four_cycle_for_an_arc() {
        let a = ColoredDigraph::uncolored(Digraph::numbered(2, [(0, 1)]));
        let p = PartialPermorphism::isomorphism(2, [(0, 1)]).unwrap();
        let c = FreenessConstraint::TournamentFree(vec![
            ForbiddenTournament::plain(Tournament::transitive(3)),
            ForbiddenTournament::plain(Tournament::cyclic3()),
        ]);
        let out = brute_force_extension(OracleInstance::Digraph(&a), &[p.clone()], &c, 4, 1_000_000).unwrap();
        let OracleOutcome::Found(r) = out else { panic!("expected a witness") };
        let OracleStructure::Digraph(b) = &r.structure else { panic!() };
        assert_eq!(b.len(), 4);
        assert!(verify_extension(&a, b, &r.automorphisms, &[p], &c, None).passed());
    }

    #[test]
    fn admissible_assignments_follow_the_maps() {
        // arc 0 -> 1 coloured so that colour k is carried exactly by the
        // in-neighbours of point k
        let d = Digraph::numbered(2, [(0, 1)]);
        let a = ColoredDigraph::new(
            d,
            vec![String::from("in0"), String::from("in1")],
            vec![ColorSet::new([ColorId(1)]), ColorSet::empty()],
        )
        .unwrap();
        let opts = admissible_assignments(&a, &[], true);
        assert_eq!(opts[0], vec![ColorId(0)]);
        assert_eq!(opts[1], vec![ColorId(1)]);
        let chi = ColorPermutation::new(vec![ColorId(1), ColorId(0)]).unwrap();
        let p = PartialPermorphism::new(2, [(0, 1)], chi).unwrap();
        let opts = admissible_assignments(&a, &[p], true);
        // U_1 must be the image of U_0 = in0, which is in1: still admissible
        assert_eq!(opts[1], vec![ColorId(1)]);
    }
}
