//! JSON instance and result files.
//!
//! Vertices and colours are referred to by name everywhere. Errors carry the
//! file name and either a line/column (syntax) or a field path (content).

use std::collections::{BTreeMap, HashMap};

use eppa_core::freeness::FreenessConstraint;
use eppa_core::pipeline::LevelKind;
use eppa_core::structures::BinaryStructure;
use eppa_core::{
    reduce_family, CertificateReport, ColorId, ColorPermutation, ColorSet, ColoredDigraph, ColoredGraph,
    CriticalColoringSet, CriticalTuples, DesignatedColors, Digraph, FamilySpec, ForbiddenTournament, Graph,
    LevelStats, PartialPermorphism, Tournament, VertexId,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const INSTANCE_FORMAT: &str = "eppa-instance/1";
pub const RESULT_FORMAT: &str = "eppa-result/1";

#[derive(Debug, Error)]
#[error("{file}: {at}: {msg}")]
pub struct FormatError {
    pub file: String,
    pub at: String,
    pub msg: String,
}

fn err(file: &str, at: impl Into<String>, msg: impl Into<String>) -> FormatError {
    FormatError {
        file: file.to_string(),
        at: at.into(),
        msg: msg.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Graph,
    Digraph,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    format: String,
    kind: Kind,
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
    #[serde(default)]
    arcs: Vec<[String; 2]>,
    #[serde(default)]
    palettes: Vec<Vec<String>>,
    #[serde(default)]
    colors: Vec<String>,
    #[serde(default)]
    coloring: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    designated: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    partial_maps: Vec<RawMap>,
    constraint: RawConstraint,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMap {
    pub map: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub chi: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawConstraint {
    CliqueFree {
        m: usize,
        /// One colour name per palette in every tuple; all tuples if absent.
        #[serde(default)]
        critical: Option<Vec<Vec<String>>>,
    },
    ForbiddenTournaments(Vec<RawTournament>),
    AllTournamentsMinSize(usize),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTournament {
    vertices: Vec<String>,
    arcs: Vec<[String; 2]>,
    /// Tuples of colour sets, one set per vertex; every tuple if absent.
    #[serde(default)]
    critical: Option<Vec<Vec<Vec<String>>>>,
}

/// A parsed, structurally well-formed input. Admissibility (freeness,
/// map conditions) is left to the pipeline.
#[derive(Debug)]
pub enum Instance {
    Graph {
        a: ColoredGraph,
        maps: Vec<PartialPermorphism>,
        m: usize,
        critical: CriticalColoringSet,
        designated: DesignatedColors,
    },
    Digraph {
        a: ColoredDigraph,
        maps: Vec<PartialPermorphism>,
        forbidden: Vec<ForbiddenTournament>,
    },
}

impl Instance {
    pub fn maps(&self) -> &[PartialPermorphism] {
        match self {
            Instance::Graph { maps, .. } | Instance::Digraph { maps, .. } => maps,
        }
    }

    pub fn constraint(&self) -> FreenessConstraint {
        match self {
            Instance::Graph { m, critical, .. } => FreenessConstraint::CliqueFree {
                m: *m,
                critical: critical.clone(),
            },
            Instance::Digraph { forbidden, .. } => FreenessConstraint::TournamentFree(forbidden.clone()),
        }
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(file: &str, text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        // serde_json appends " at line L column C"; keep the message short
        let msg = msg.split(" at line ").next().unwrap_or(&msg).to_string();
        err(file, format!("line {}, column {}", e.line(), e.column()), msg)
    })
}

fn check_format(file: &str, found: &str, expected: &str) -> Result<(), FormatError> {
    if found != expected {
        return Err(err(file, "format", format!("expected \"{expected}\", found \"{found}\"")));
    }
    Ok(())
}

/// Name lookup for vertices or colours.
struct Names<'a> {
    file: &'a str,
    what: &'static str,
    index: HashMap<&'a str, usize>,
}

impl<'a> Names<'a> {
    fn new(file: &'a str, what: &'static str, names: impl IntoIterator<Item = &'a str>, at: &str) -> Result<Self, FormatError> {
        let mut index = HashMap::new();
        for (i, n) in names.into_iter().enumerate() {
            if index.insert(n, i).is_some() {
                return Err(err(file, at, format!("duplicate {} \"{n}\"", what)));
            }
        }
        Ok(Names { file, what, index })
    }

    fn get(&self, name: &str, at: impl Into<String>) -> Result<usize, FormatError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| err(self.file, at, format!("unknown {} \"{name}\"", self.what)))
    }

    fn len(&self) -> usize {
        self.index.len()
    }
}

fn pairs(names: &Names, list: &[[String; 2]], field: &str) -> Result<Vec<(usize, usize)>, FormatError> {
    list.iter()
        .enumerate()
        .map(|(i, [x, y])| Ok((names.get(x, format!("{field}[{i}][0]"))?, names.get(y, format!("{field}[{i}][1]"))?)))
        .collect()
}

fn coloring(
    vertices: &Names,
    colors: &Names,
    raw: &BTreeMap<String, Vec<String>>,
) -> Result<Vec<ColorSet>, FormatError> {
    let mut out = vec![ColorSet::empty(); vertices.len()];
    for (v, list) in raw {
        let x = vertices.get(v, format!("coloring.{v}"))?;
        out[x] = list
            .iter()
            .enumerate()
            .map(|(i, c)| colors.get(c, format!("coloring.{v}[{i}]")).map(|c| ColorId(c as u32)))
            .collect::<Result<ColorSet, _>>()?;
    }
    Ok(out)
}

fn chi(colors: &Names, raw: &BTreeMap<String, String>, at: &str) -> Result<ColorPermutation, FormatError> {
    let mut map: Vec<ColorId> = (0..colors.len() as u32).map(ColorId).collect();
    for (x, y) in raw {
        let i = colors.get(x, format!("{at}.chi.{x}"))?;
        map[i] = ColorId(colors.get(y, format!("{at}.chi.{x}"))? as u32);
    }
    ColorPermutation::new(map).map_err(|e| err(colors.file, format!("{at}.chi"), e.to_string()))
}

fn maps(vertices: &Names, colors: &Names, raw: &[RawMap], field: &str) -> Result<Vec<PartialPermorphism>, FormatError> {
    raw.iter()
        .enumerate()
        .map(|(i, p)| {
            let at = format!("{field}[{i}]");
            let pairs = pairs(vertices, &p.map, &format!("{at}.map"))?;
            let chi = chi(colors, &p.chi, &at)?;
            PartialPermorphism::new(vertices.len(), pairs, chi).map_err(|e| err(vertices.file, format!("{at}.map"), e.to_string()))
        })
        .collect()
}

fn structure_error(file: &str, at: &str, e: impl std::fmt::Display) -> FormatError {
    err(file, at, e.to_string())
}

fn vertex_ids(raw: &[String]) -> Vec<VertexId> {
    raw.iter().map(|v| VertexId::new(v.as_str())).collect()
}

/// Rejects the relation field that does not belong to `kind`.
fn check_relation_fields(file: &str, kind: Kind, edges: usize, arcs: usize, palettes: usize, colors: usize) -> Result<(), FormatError> {
    match kind {
        Kind::Graph if arcs > 0 => Err(err(file, "arcs", "graphs list \"edges\"")),
        Kind::Graph if colors > 0 => Err(err(file, "colors", "graphs list colours in \"palettes\"")),
        Kind::Digraph if edges > 0 => Err(err(file, "edges", "digraphs list \"arcs\"")),
        Kind::Digraph if palettes > 0 => Err(err(file, "palettes", "digraphs list colours in \"colors\"")),
        _ => Ok(()),
    }
}

pub fn parse_instance(file: &str, text: &str) -> Result<Instance, FormatError> {
    let raw: RawInstance = parse_json(file, text)?;
    check_format(file, &raw.format, INSTANCE_FORMAT)?;
    check_relation_fields(file, raw.kind, raw.edges.len(), raw.arcs.len(), raw.palettes.len(), raw.colors.len())?;
    let vertices = Names::new(file, "vertex", raw.vertices.iter().map(String::as_str), "vertices")?;
    match raw.kind {
        Kind::Graph => parse_graph_instance(file, &raw, &vertices),
        Kind::Digraph => parse_digraph_instance(file, &raw, &vertices),
    }
}

fn parse_graph_instance(file: &str, raw: &RawInstance, vertices: &Names) -> Result<Instance, FormatError> {
    let (m, critical) = match &raw.constraint {
        RawConstraint::CliqueFree { m, critical } => (*m, critical),
        _ => return Err(err(file, "constraint", "graphs take a \"clique_free\" constraint")),
    };
    let colors = Names::new(file, "colour", raw.palettes.iter().flatten().map(String::as_str), "palettes")?;
    let edges = pairs(vertices, &raw.edges, "edges")?;
    let g = Graph::new(vertex_ids(&raw.vertices), edges).map_err(|e| structure_error(file, "edges", e))?;
    let col = coloring(vertices, &colors, &raw.coloring)?;
    let a = ColoredGraph::new(g, raw.palettes.clone(), col).map_err(|e| structure_error(file, "coloring", e))?;
    let maps = maps(vertices, &colors, &raw.partial_maps, "partial_maps")?;

    let k = raw.palettes.len();
    let critical = if k == 0 {
        if critical.as_ref().is_some_and(|c| c.iter().any(|t| !t.is_empty())) {
            return Err(err(file, "constraint.clique_free.critical", "no palettes to draw colours from"));
        }
        CriticalColoringSet::plain()
    } else {
        let tuples: Vec<Vec<ColorId>> = match critical {
            Some(list) => list
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    t.iter()
                        .enumerate()
                        .map(|(j, c)| colors.get(c, format!("constraint.clique_free.critical[{i}][{j}]")).map(|c| ColorId(c as u32)))
                        .collect()
                })
                .collect::<Result<_, _>>()?,
            None => every_tuple(&a),
        };
        CriticalColoringSet::new(k, tuples).map_err(|e| structure_error(file, "constraint.clique_free.critical", e))?
    };

    let designated = if k == 0 {
        if !raw.designated.is_empty() {
            return Err(err(file, "designated", "no palettes to designate colours from"));
        }
        DesignatedColors::none(vertices.len())
    } else {
        let mut table = vec![Vec::new(); vertices.len()];
        for (v, list) in &raw.designated {
            let x = vertices.get(v, format!("designated.{v}"))?;
            table[x] = list
                .iter()
                .enumerate()
                .map(|(j, c)| colors.get(c, format!("designated.{v}[{j}]")).map(|c| ColorId(c as u32)))
                .collect::<Result<_, _>>()?;
        }
        for (x, row) in table.iter().enumerate() {
            if row.len() != k {
                return Err(err(
                    file,
                    format!("designated.{}", raw.vertices[x]),
                    format!("needs one colour per palette ({k}), found {}", row.len()),
                ));
            }
        }
        DesignatedColors::new(table)
    };
    Ok(Instance::Graph {
        a,
        maps,
        m,
        critical,
        designated,
    })
}

/// One colour from each palette, in every combination.
fn every_tuple(a: &ColoredGraph) -> Vec<Vec<ColorId>> {
    let mut out = vec![Vec::new()];
    for p in a.palettes() {
        out = out
            .into_iter()
            .flat_map(|t| {
                p.range().map(move |c| {
                    let mut t = t.clone();
                    t.push(ColorId(c));
                    t
                })
            })
            .collect();
    }
    out
}

fn parse_digraph_instance(file: &str, raw: &RawInstance, vertices: &Names) -> Result<Instance, FormatError> {
    if !raw.designated.is_empty() {
        return Err(err(file, "designated", "digraph instances have no designated colours"));
    }
    let colors = Names::new(file, "colour", raw.colors.iter().map(String::as_str), "colors")?;
    let arcs = pairs(vertices, &raw.arcs, "arcs")?;
    let d = Digraph::new(vertex_ids(&raw.vertices), arcs).map_err(|e| structure_error(file, "arcs", e))?;
    let col = coloring(vertices, &colors, &raw.coloring)?;
    let a = ColoredDigraph::new(d, raw.colors.clone(), col).map_err(|e| structure_error(file, "coloring", e))?;
    let maps = maps(vertices, &colors, &raw.partial_maps, "partial_maps")?;
    let forbidden = match &raw.constraint {
        RawConstraint::ForbiddenTournaments(list) => list
            .iter()
            .enumerate()
            .map(|(i, t)| tournament(file, &colors, t, &format!("constraint.forbidden_tournaments[{i}]")))
            .collect::<Result<_, _>>()?,
        RawConstraint::AllTournamentsMinSize(s) => reduce_family(&FamilySpec::AllFromSize(*s), a.len())
            .map_err(|e| err(file, "constraint.all_tournaments_min_size", e.to_string()))?
            .into_iter()
            .map(ForbiddenTournament::plain)
            .collect(),
        RawConstraint::CliqueFree { .. } => return Err(err(file, "constraint", "digraphs take a tournament constraint")),
    };
    Ok(Instance::Digraph { a, maps, forbidden })
}

fn tournament(file: &str, colors: &Names, raw: &RawTournament, at: &str) -> Result<ForbiddenTournament, FormatError> {
    let names = Names::new(file, "vertex", raw.vertices.iter().map(String::as_str), &format!("{at}.vertices"))?;
    let arcs = pairs(&names, &raw.arcs, &format!("{at}.arcs"))?;
    let d = Digraph::new(vertex_ids(&raw.vertices), arcs).map_err(|e| structure_error(file, at, e))?;
    let t = Tournament::new(d).map_err(|e| structure_error(file, at, e))?;
    let critical = match &raw.critical {
        None => CriticalTuples::All,
        Some(list) => {
            let mut tuples = Vec::new();
            for (i, tuple) in list.iter().enumerate() {
                if tuple.len() != t.len() {
                    return Err(err(
                        file,
                        format!("{at}.critical[{i}]"),
                        format!("needs one colour set per vertex ({}), found {}", t.len(), tuple.len()),
                    ));
                }
                let sets = tuple
                    .iter()
                    .enumerate()
                    .map(|(j, set)| {
                        set.iter()
                            .map(|c| colors.get(c, format!("{at}.critical[{i}][{j}]")).map(|c| ColorId(c as u32)))
                            .collect::<Result<ColorSet, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                tuples.push(sets);
            }
            CriticalTuples::explicit(tuples)
        }
    };
    Ok(ForbiddenTournament { tournament: t, critical })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FactsRecord {
    pub checked: [usize; 5],
    pub homomorphism_pairs: usize,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StatsRecord {
    pub level: usize,
    pub kind: String,
    pub bound: usize,
    pub base_len: usize,
    pub color_count: usize,
    pub scope_len: usize,
    pub carrier_len: usize,
    pub constants: Vec<usize>,
    pub classes_checked: usize,
    pub new_colors: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facts: Option<FactsRecord>,
}

impl From<&LevelStats> for StatsRecord {
    fn from(s: &LevelStats) -> Self {
        StatsRecord {
            level: s.level,
            kind: match s.kind {
                LevelKind::Inductive => "inductive",
                LevelKind::Base => "base",
            }
            .to_string(),
            bound: s.bound,
            base_len: s.base_len,
            color_count: s.color_count,
            scope_len: s.scope_len,
            carrier_len: s.carrier_len,
            constants: s.constants.clone(),
            classes_checked: s.classes_checked,
            new_colors: s.new_colors,
            group_order: s.group_order,
            quotient_len: s.quotient_len,
            facts: s.facts.as_ref().map(|f| FactsRecord {
                checked: f.checked,
                homomorphism_pairs: f.homomorphism_pairs,
            }),
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OracleRecord {
    pub size_cap: usize,
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultFile {
    pub format: String,
    pub kind: Kind,
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arcs: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub palettes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub colors: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub coloring: BTreeMap<String, Vec<String>>,
    pub automorphisms: Vec<RawMap>,
    #[serde(default)]
    pub certificate: Vec<CheckRecord>,
    #[serde(default)]
    pub stats: Vec<StatsRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
}

fn name_pairs<S: BinaryStructure + ?Sized>(s: &S, list: &[(usize, usize)]) -> Vec<[String; 2]> {
    list.iter().map(|(x, y)| [s.name(*x).0.clone(), s.name(*y).0.clone()]).collect()
}

fn coloring_record<S: BinaryStructure + ?Sized>(s: &S, names: &[String]) -> BTreeMap<String, Vec<String>> {
    (0..s.len())
        .filter(|v| !s.colors(*v).is_empty())
        .map(|v| (s.name(v).0.clone(), s.colors(v).iter().map(|c| names[c.index()].clone()).collect()))
        .collect()
}

fn map_record<S: BinaryStructure + ?Sized>(s: &S, f: &PartialPermorphism, names: &[String]) -> RawMap {
    RawMap {
        map: name_pairs(s, &f.pairs().collect::<Vec<_>>()),
        chi: (0..names.len())
            .map(|c| (names[c].clone(), names[f.chi().apply(ColorId(c as u32)).index()].clone()))
            .collect(),
    }
}

pub fn certificate_records(report: &CertificateReport) -> Vec<CheckRecord> {
    report
        .checks
        .iter()
        .map(|c| CheckRecord {
            check: c.name.to_string(),
            passed: c.passed,
            witness: c.counterexample.clone(),
        })
        .collect()
}

pub fn graph_result(b: &ColoredGraph, automorphisms: &[PartialPermorphism]) -> ResultFile {
    let names = b.color_names();
    let palettes = b
        .palettes()
        .iter()
        .map(|p| p.range().map(|c| names[c as usize].clone()).collect())
        .collect();
    ResultFile {
        format: RESULT_FORMAT.to_string(),
        kind: Kind::Graph,
        vertices: b.names().into_iter().map(|v| v.0).collect(),
        edges: name_pairs(b, &b.graph().edges()),
        arcs: Vec::new(),
        palettes,
        colors: Vec::new(),
        coloring: coloring_record(b, names),
        automorphisms: automorphisms.iter().map(|f| map_record(b, f, names)).collect(),
        certificate: Vec::new(),
        stats: Vec::new(),
        oracle: None,
    }
}

pub fn digraph_result(b: &ColoredDigraph, automorphisms: &[PartialPermorphism]) -> ResultFile {
    let names = b.color_names();
    ResultFile {
        format: RESULT_FORMAT.to_string(),
        kind: Kind::Digraph,
        vertices: b.names().into_iter().map(|v| v.0).collect(),
        edges: Vec::new(),
        arcs: name_pairs(b, &b.digraph().arcs()),
        palettes: Vec::new(),
        colors: names.to_vec(),
        coloring: coloring_record(b, names),
        automorphisms: automorphisms.iter().map(|f| map_record(b, f, names)).collect(),
        certificate: Vec::new(),
        stats: Vec::new(),
        oracle: None,
    }
}

pub fn write_result(r: &ResultFile) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("result records serialize");
    s.push('\n');
    s
}

/// The structure and maps of a result file.
#[derive(Debug)]
pub enum ParsedResult {
    Graph(ColoredGraph, Vec<PartialPermorphism>),
    Digraph(ColoredDigraph, Vec<PartialPermorphism>),
}

pub fn parse_result(file: &str, text: &str) -> Result<ParsedResult, FormatError> {
    let raw: ResultFile = parse_json(file, text)?;
    check_format(file, &raw.format, RESULT_FORMAT)?;
    check_relation_fields(file, raw.kind, raw.edges.len(), raw.arcs.len(), raw.palettes.len(), raw.colors.len())?;
    let vertices = Names::new(file, "vertex", raw.vertices.iter().map(String::as_str), "vertices")?;
    match raw.kind {
        Kind::Graph => {
            let colors = Names::new(file, "colour", raw.palettes.iter().flatten().map(String::as_str), "palettes")?;
            let edges = pairs(&vertices, &raw.edges, "edges")?;
            let g = Graph::new(vertex_ids(&raw.vertices), edges).map_err(|e| structure_error(file, "edges", e))?;
            let col = coloring(&vertices, &colors, &raw.coloring)?;
            let b = ColoredGraph::new(g, raw.palettes.clone(), col).map_err(|e| structure_error(file, "coloring", e))?;
            let autos = maps(&vertices, &colors, &raw.automorphisms, "automorphisms")?;
            Ok(ParsedResult::Graph(b, autos))
        }
        Kind::Digraph => {
            let colors = Names::new(file, "colour", raw.colors.iter().map(String::as_str), "colors")?;
            let arcs = pairs(&vertices, &raw.arcs, "arcs")?;
            let d = Digraph::new(vertex_ids(&raw.vertices), arcs).map_err(|e| structure_error(file, "arcs", e))?;
            let col = coloring(&vertices, &colors, &raw.coloring)?;
            let b = ColoredDigraph::new(d, raw.colors.clone(), col).map_err(|e| structure_error(file, "coloring", e))?;
            let autos = maps(&vertices, &colors, &raw.automorphisms, "automorphisms")?;
            Ok(ParsedResult::Digraph(b, autos))
        }
    }
}

/// Plain DOT dump of the relation.
pub fn dot<S: BinaryStructure + ?Sized>(s: &S) -> String {
    let (head, sep) = if s.is_symmetric() { ("graph", "--") } else { ("digraph", "->") };
    let mut out = format!("{head} B {{\n");
    for v in 0..s.len() {
        out.push_str(&format!("  {:?};\n", s.name(v).0));
    }
    for (x, y) in s.arcs() {
        if s.is_symmetric() && x > y {
            continue;
        }
        out.push_str(&format!("  {:?} {sep} {:?};\n", s.name(x).0, s.name(y).0));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EDGE: &str = r#"{
  "format": "eppa-instance/1",
  "kind": "graph",
  "vertices": ["a", "b"],
  "edges": [["a", "b"]],
  "partial_maps": [{"map": [["a", "b"]]}],
  "constraint": {"clique_free": {"m": 3}}
}"#;

    #[test]
    fn edge_instance_parses() {
        let inst = parse_instance("edge.json", EDGE).unwrap();
        match inst {
            Instance::Graph { a, maps, m, .. } => {
                assert_eq!(a.len(), 2);
                assert!(a.holds(0, 1));
                assert_eq!(maps[0].get(0), Some(1));
                assert_eq!(m, 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_errors_are_positioned() {
        let e = parse_instance("x.json", "{\n  \"format\": ,\n}").unwrap_err();
        assert_eq!(e.at, "line 2, column 13");
    }

    #[test]
    fn unknown_vertices_name_the_field() {
        let text = EDGE.replace("[[\"a\", \"b\"]]}", "[[\"a\", \"z\"]]}");
        let e = parse_instance("edge.json", &text).unwrap_err();
        assert_eq!(e.at, "partial_maps[0].map[0][1]");
        assert!(e.msg.contains("\"z\""));
    }

    #[test]
    fn wrong_version_is_rejected() {
        let text = EDGE.replace("eppa-instance/1", "eppa-instance/2");
        assert_eq!(parse_instance("edge.json", &text).unwrap_err().at, "format");
    }

    #[test]
    fn coloured_graph_defaults_to_every_tuple() {
        let text = r#"{
  "format": "eppa-instance/1", "kind": "graph",
  "vertices": ["a", "b"], "edges": [["a", "b"]],
  "palettes": [["u0", "u1"], ["w"]],
  "coloring": {"a": ["u1"], "b": ["u0"]},
  "designated": {"a": ["u0", "w"], "b": ["u1", "w"]},
  "constraint": {"clique_free": {"m": 3}}
}"#;
        match parse_instance("c.json", text).unwrap() {
            Instance::Graph { critical, designated, .. } => {
                assert_eq!(critical.len(), 2);
                assert_eq!(designated.row(1), [ColorId(1), ColorId(2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn result_round_trip() {
        let g = ColoredGraph::uncolored(Graph::numbered(3, [(0, 1), (1, 2)]));
        let f = PartialPermorphism::isomorphism(3, [(0, 2), (1, 1), (2, 0)]).unwrap();
        let text = write_result(&graph_result(&g, std::slice::from_ref(&f)));
        match parse_result("r.json", &text).unwrap() {
            ParsedResult::Graph(b, autos) => {
                assert_eq!(b.graph().edges(), g.graph().edges());
                assert_eq!(autos, [f]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn dot_lists_each_edge_once() {
        let g = Graph::numbered(2, [(0, 1)]);
        assert_eq!(dot(&g), "graph B {\n  \"0\";\n  \"1\";\n  \"0\" -- \"1\";\n}\n");
    }
}
