//! Digraphs omitting coloured tournaments: the recursion on the largest
//! forbidden tournament.
//!
//! A level with a tournament of more than one vertex builds scaffolding over
//! disjoint out/in-neighbourhood pairs, adds marker colours `U_c^+` (points
//! `c` sends an arc to) and `U_c^-` (points sending an arc to `c`) for every
//! scaffolding point `c`, and replaces each `T_j` by `T_j` minus its first
//! vertex with lifted critical tuples. Once every tournament has at most one
//! vertex the duplicator runs on exact-neighbourhood scaffolding.
//!
//! The base level needs no colour equivariance: the colours of new points
//! come from `A` only, through `U(a)^χ`.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use super::graph::generators;
use super::{classify, fresh_color_names, total_maps, ExtensionResult, LevelKind, LevelStats, PipelineConfig, PipelineError};
use crate::duplicator::{build_quotient, generate_group};
use crate::freeness::FreenessConstraint;
use crate::structures::{
    validate_instance, Anchor, BinaryStructure, ColorId, ColoredDigraph, CriticalTuples, ForbiddenTournament,
    InstanceRef, LiftedTuples, PartialPermorphism,
};
use crate::typerealize::{
    color_scope, extend_to_symmetries, realize_types_digraph, realize_types_digraph_base, SymmetryExtension,
    TypeRealization,
};
use crate::verify::verify_extension;

/// Extends partial permorphisms of a digraph omitting every critical copy of
/// the forbidden tournaments. In the result, for every admissible choice of
/// in-neighbour colours `U_a` (`b ∈ U_a` iff `b → a` inside `A`, compatible
/// with the maps), every in-neighbour of `a` in `B` carries `U_a`; likewise
/// for out-neighbours.
pub fn extend_digraph(
    a: &ColoredDigraph,
    maps: &[PartialPermorphism],
    forbidden: &[ForbiddenTournament],
    config: &PipelineConfig,
) -> Result<ExtensionResult<ColoredDigraph>, PipelineError> {
    let constraint = FreenessConstraint::TournamentFree(forbidden.to_vec());
    classify(validate_instance(InstanceRef::Digraph(a), maps, &constraint))?;
    let mut stats = Vec::new();
    let level = Level {
        index: 1,
        a: a.clone(),
        maps: maps.to_vec(),
        forbidden: forbidden.to_vec(),
    };
    let (b, tables) = run(level, config, &mut stats)?;
    let automorphisms = total_maps(tables, maps);
    let certificate = verify_extension(a, &b, &automorphisms, maps, &constraint, None);
    Ok(ExtensionResult {
        structure: b,
        automorphisms,
        certificate,
        stats,
    })
}

struct Level {
    index: usize,
    a: ColoredDigraph,
    maps: Vec<PartialPermorphism>,
    forbidden: Vec<ForbiddenTournament>,
}

impl Level {
    fn bound(&self) -> usize {
        self.forbidden.iter().map(|f| f.tournament.len()).max().unwrap_or(0)
    }
}

fn run(level: Level, config: &PipelineConfig, stats: &mut Vec<LevelStats>) -> Result<(ColoredDigraph, Vec<Vec<usize>>), PipelineError> {
    let out = if level.bound() <= 1 {
        base(&level, config, stats)?
    } else {
        inductive(&level, config, stats)?
    };
    if config.verify_levels {
        let autos = total_maps(out.1.clone(), &level.maps);
        let constraint = FreenessConstraint::TournamentFree(level.forbidden.clone());
        let report = verify_extension(&level.a, &out.0, &autos, &level.maps, &constraint, None);
        if !report.passed() {
            return Err(PipelineError::LevelCertificate {
                level: level.index,
                report,
            });
        }
    }
    Ok(out)
}

fn base(level: &Level, config: &PipelineConfig, stats: &mut Vec<LevelStats>) -> Result<(ColoredDigraph, Vec<Vec<usize>>), PipelineError> {
    let a = &level.a;
    let tr = realize_types_digraph_base(a.digraph(), &config.realize(level.index))?;
    let ext = extend_to_symmetries(&tr.carrier, tr.base_len, &level.maps, false)?;
    let gens = generators(&level.maps, &ext);
    let dopts = config.duplicate(level.index);
    let gamma = generate_group(&gens, a.color_count(), tr.carrier.len(), &dopts)?;
    let q = build_quotient(a, &tr.carrier, &level.maps, &gamma, None, &dopts)?;
    stats.push(LevelStats {
        level: level.index,
        kind: LevelKind::Base,
        bound: level.bound(),
        base_len: a.len(),
        color_count: a.color_count(),
        scope_len: 0,
        carrier_len: tr.carrier.len(),
        constants: tr.constants.clone(),
        classes_checked: ext.classes_checked,
        new_colors: 0,
        group_order: Some(gamma.len()),
        quotient_len: Some(q.structure.len()),
        facts: Some(q.audit.clone()),
    });
    Ok((q.structure, q.automorphisms))
}

fn inductive(level: &Level, config: &PipelineConfig, stats: &mut Vec<LevelStats>) -> Result<(ColoredDigraph, Vec<Vec<usize>>), PipelineError> {
    let a = &level.a;
    let chis: Vec<_> = level.maps.iter().map(PartialPermorphism::chi).collect();
    let scope = color_scope(
        config.color_scope,
        a.coloring().iter().cloned(),
        &chis,
        a.color_count(),
        config.cap_structure,
        level.index,
    )?;
    let tr = realize_types_digraph(a, &level.forbidden, &scope, &config.realize(level.index))?;
    let ext = extend_to_symmetries(&tr.carrier, tr.base_len, &level.maps, true)?;
    let next = lift_colors(level, &tr, &ext);
    stats.push(LevelStats {
        level: level.index,
        kind: LevelKind::Inductive,
        bound: level.bound(),
        base_len: a.len(),
        color_count: a.color_count(),
        scope_len: scope.len(),
        carrier_len: tr.carrier.len(),
        constants: tr.constants.clone(),
        classes_checked: ext.classes_checked,
        new_colors: 2 * tr.carrier.len(),
        group_order: None,
        quotient_len: None,
        facts: None,
    });
    let report = validate_instance(
        InstanceRef::Digraph(&next.a),
        &next.maps,
        &FreenessConstraint::TournamentFree(next.forbidden.clone()),
    );
    if !report.is_admissible() {
        return Err(PipelineError::Bookkeeping {
            level: level.index,
            report,
        });
    }
    let universe = a.color_count();
    let (b, tables) = run(next, config, stats)?;
    Ok((b.forget_colors(universe), tables))
}

/// Adds `U_c^+` (ids `K + c`) and `U_c^-` (ids `K + |C| + c`) and lifts the
/// forbidden family.
fn lift_colors(level: &Level, tr: &TypeRealization<ColoredDigraph>, ext: &SymmetryExtension) -> Level {
    let a = &level.a;
    let c = &tr.carrier;
    let k = a.color_count() as u32;
    let nc = c.len();
    let plus = |d: usize| ColorId(k + d as u32);
    let minus = |d: usize| ColorId(k + (nc + d) as u32);
    let labels = (0..nc)
        .map(|d| format!("+{}", c.name(d)))
        .chain((0..nc).map(|d| format!("-{}", c.name(d))));
    let names = fresh_color_names(a.color_names(), &format!("L{}", level.index), labels);
    let members: Vec<Vec<usize>> = (0..a.len())
        .map(|v| {
            let mut m: Vec<usize> = c.in_neighbors(v).to_vec();
            m.extend(c.out_neighbors(v).iter().map(|d| nc + d));
            m
        })
        .collect();
    let lifted = a.with_colors(names, &members);
    let maps = level
        .maps
        .iter()
        .zip(&ext.h)
        .map(|(p, h)| {
            let tail: Vec<usize> = h.iter().copied().chain(h.iter().map(|x| nc + x)).collect();
            p.with_chi(p.chi().extended(&tail))
        })
        .collect();
    let forbidden = level
        .forbidden
        .iter()
        .map(|f| {
            let t = &f.tournament;
            if t.len() <= 1 {
                return ForbiddenTournament {
                    tournament: t.clone(),
                    critical: CriticalTuples::Projected {
                        inner: Box::new(f.critical.clone()),
                        universe: k,
                    },
                };
            }
            let anchors = (0..nc)
                .map(|d| Anchor {
                    colors: c.colors(d).clone(),
                    markers: (1..t.len()).map(|l| if t.beats(0, l) { plus(d) } else { minus(d) }).collect(),
                })
                .collect();
            ForbiddenTournament {
                tournament: t.without_first(),
                critical: CriticalTuples::Lifted(Box::new(LiftedTuples::new(f.critical.clone(), k, anchors))),
            }
        })
        .collect();
    Level {
        index: level.index + 1,
        a: lifted,
        maps,
        forbidden,
    }
}
