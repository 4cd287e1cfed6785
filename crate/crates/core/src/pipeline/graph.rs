//! Clique-free graphs: the recursion on the clique size.
//!
//! The public `m` is the clique size to forbid. A level with `m > 1` builds
//! the scaffolding for `(m − 1)`-cliques, records the scaffolding
//! neighbourhoods as a new palette on `A`, recurses with `m − 1` and forgets
//! the palette again. The level `m = 1` runs the duplicator directly.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{classify, fresh_color_names, total_maps, ExtensionResult, LevelKind, LevelStats, PipelineConfig, PipelineError};
use crate::duplicator::{build_quotient, generate_group, GroupElement};
use crate::freeness::{CardinalityLedger, FreenessConstraint};
use crate::structures::{
    validate_instance, BinaryStructure, ColorId, ColoredGraph, CriticalColoringSet, DesignatedColors, Graph,
    InstanceRef, PartialPermorphism,
};
use crate::typerealize::{
    color_scope, extend_to_symmetries_base, extend_to_symmetries_colored, realize_types_base, realize_types_inductive,
    SymmetryExtension, TypeRealization,
};
use crate::verify::verify_extension;

/// Extends partial isomorphisms of a `K_m`-free graph to automorphisms of a
/// finite `K_m`-free supergraph.
pub fn extend_graph(
    a: &Graph,
    maps: &[PartialPermorphism],
    m: usize,
    config: &PipelineConfig,
) -> Result<ExtensionResult<ColoredGraph>, PipelineError> {
    let colored = ColoredGraph::uncolored(a.clone());
    extend_colored(
        &colored,
        maps,
        m,
        &CriticalColoringSet::plain(),
        &DesignatedColors::none(a.len()),
        config,
    )
}

/// Extends partial permorphisms of a `U_c`-`K_m`-free coloured graph. The
/// result also satisfies: every neighbour in `B` of a point `a ∈ A` carries
/// all designated colours of `a`, and every point of `B` is moved into `A`
/// by the group generated by the extensions.
pub fn extend_colored(
    a: &ColoredGraph,
    maps: &[PartialPermorphism],
    m: usize,
    critical: &CriticalColoringSet,
    designated: &DesignatedColors,
    config: &PipelineConfig,
) -> Result<ExtensionResult<ColoredGraph>, PipelineError> {
    let constraint = FreenessConstraint::CliqueFree {
        m,
        critical: critical.clone(),
    };
    let designated_opt = (a.palette_count() > 0).then_some(designated);
    classify(validate_instance(
        InstanceRef::Graph {
            graph: a,
            designated: designated_opt,
        },
        maps,
        &constraint,
    ))?;
    let ledger = if config.strict_ledger {
        check_pair_coverage(a.len(), maps)?;
        Some(CardinalityLedger::of_graph(a).ok_or_else(|| PipelineError::Ledger(String::from("palette cardinalities are not uniform")))?)
    } else {
        None
    };
    let mut stats = Vec::new();
    let level = Level {
        index: 1,
        a: a.clone(),
        maps: maps.to_vec(),
        m,
        critical: critical.clone(),
        designated: designated.clone(),
        ledger,
    };
    let (b, tables) = run(level, config, &mut stats)?;
    let automorphisms = total_maps(tables, maps);
    let certificate = verify_extension(a, &b, &automorphisms, maps, &constraint, designated_opt);
    Ok(ExtensionResult {
        structure: b,
        automorphisms,
        certificate,
        stats,
    })
}

fn check_pair_coverage(n: usize, maps: &[PartialPermorphism]) -> Result<(), PipelineError> {
    for x in 0..n {
        for y in 0..n {
            if x != y && !maps.iter().any(|p| p.get(x) == Some(y)) {
                return Err(PipelineError::Ledger(format!("no map sends point {x} to point {y}")));
            }
        }
    }
    Ok(())
}

struct Level {
    index: usize,
    a: ColoredGraph,
    maps: Vec<PartialPermorphism>,
    m: usize,
    critical: CriticalColoringSet,
    designated: DesignatedColors,
    ledger: Option<CardinalityLedger>,
}

fn run(level: Level, config: &PipelineConfig, stats: &mut Vec<LevelStats>) -> Result<(ColoredGraph, Vec<Vec<usize>>), PipelineError> {
    let out = if level.m <= 1 {
        base(&level, config, stats)?
    } else {
        inductive(&level, config, stats)?
    };
    if config.verify_levels {
        let autos = total_maps(out.1.clone(), &level.maps);
        let constraint = FreenessConstraint::CliqueFree {
            m: level.m,
            critical: level.critical.clone(),
        };
        let designated = (level.a.palette_count() > 0).then_some(&level.designated);
        let report = verify_extension(&level.a, &out.0, &autos, &level.maps, &constraint, designated);
        if !report.passed() {
            return Err(PipelineError::LevelCertificate {
                level: level.index,
                report,
            });
        }
    }
    Ok(out)
}

fn base(level: &Level, config: &PipelineConfig, stats: &mut Vec<LevelStats>) -> Result<(ColoredGraph, Vec<Vec<usize>>), PipelineError> {
    let a = &level.a;
    let tr = realize_types_base(a.graph(), &config.realize(level.index))?;
    let ext = extend_to_symmetries_base(&tr, &level.maps)?;
    let gens = generators(&level.maps, &ext);
    let dopts = config.duplicate(level.index);
    let gamma = generate_group(&gens, a.color_count(), tr.carrier.len(), &dopts)?;
    let q = build_quotient(a, &tr.carrier, &level.maps, &gamma, Some(&level.designated), &dopts)?;
    stats.push(LevelStats {
        level: level.index,
        kind: LevelKind::Base,
        bound: level.m,
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

pub(super) fn generators(maps: &[PartialPermorphism], ext: &SymmetryExtension) -> Vec<GroupElement> {
    maps.iter()
        .zip(&ext.h)
        .map(|(p, h)| GroupElement {
            chi: p.chi().clone(),
            h: h.clone(),
        })
        .collect()
}

fn inductive(level: &Level, config: &PipelineConfig, stats: &mut Vec<LevelStats>) -> Result<(ColoredGraph, Vec<Vec<usize>>), PipelineError> {
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
    let tr = realize_types_inductive(
        a,
        level.m - 1,
        &level.critical,
        &scope,
        level.ledger.clone(),
        &config.realize(level.index),
    )?;
    let ext = extend_to_symmetries_colored(&tr, &level.maps)?;
    let next = lift_colors(level, &tr, &ext)?;
    stats.push(LevelStats {
        level: level.index,
        kind: LevelKind::Inductive,
        bound: level.m,
        base_len: a.len(),
        color_count: a.color_count(),
        scope_len: scope.len(),
        carrier_len: tr.carrier.len(),
        constants: tr.constants.clone(),
        classes_checked: ext.classes_checked,
        new_colors: tr.carrier.len(),
        group_order: None,
        quotient_len: None,
        facts: None,
    });
    let report = validate_instance(
        InstanceRef::Graph {
            graph: &next.a,
            designated: Some(&next.designated),
        },
        &next.maps,
        &FreenessConstraint::CliqueFree {
            m: next.m,
            critical: next.critical.clone(),
        },
    );
    if !report.is_admissible() {
        return Err(PipelineError::Bookkeeping {
            level: level.index,
            report,
        });
    }
    let palettes = a.palette_count();
    let (b, tables) = run(next, config, stats)?;
    Ok((b.forget_palettes(palettes), tables))
}

/// Records the scaffolding as a new palette `{U_d : d ∈ C}` on `A`, with
/// `a ∈ U_d` iff `d` and `a` are adjacent in `C`.
fn lift_colors(level: &Level, tr: &TypeRealization<ColoredGraph>, ext: &SymmetryExtension) -> Result<Level, PipelineError> {
    let a = &level.a;
    let c = &tr.carrier;
    let k = a.color_count() as u32;
    let names = fresh_color_names(
        a.color_names(),
        &format!("L{}:", level.index),
        (0..c.len()).map(|d| String::from(c.name(d).as_str())),
    );
    let members: Vec<Vec<usize>> = (0..a.len()).map(|v| c.out_neighbors(v).to_vec()).collect();
    let lifted = a.with_palette(names, &members);
    let maps = level
        .maps
        .iter()
        .zip(&ext.h)
        .map(|(p, h)| p.with_chi(p.chi().extended(h)))
        .collect();
    let mut tuples = Vec::new();
    for d in 0..c.len() {
        let colors = c.colors(d);
        for t in level.critical.iter() {
            if t.iter().all(|x| colors.contains(*x)) {
                let mut t = t.clone();
                t.push(ColorId(k + d as u32));
                tuples.push(t);
            }
        }
    }
    let critical = CriticalColoringSet::new(level.critical.arity() + 1, tuples).expect("tuples have the new arity");
    let designated = level.designated.with_column((0..a.len()).map(|x| ColorId(k + x as u32)));
    let ledger = match &level.ledger {
        None => None,
        Some(l) => {
            let j = lifted.palette_count() - 1;
            let degree = lifted
                .uniform_degree(j)
                .ok_or_else(|| PipelineError::Ledger(format!("level {}: new palette is not uniform", level.index)))?;
            Some(l.with_palette(lifted.palettes()[j].range(), degree))
        }
    };
    Ok(Level {
        index: level.index + 1,
        a: lifted,
        maps,
        m: level.m - 1,
        critical,
        designated,
        ledger,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap() -> PartialPermorphism {
        PartialPermorphism::isomorphism(2, [(0, 1)]).unwrap()
    }

    #[test]
    fn edge_with_half_swap() {
        let a = Graph::numbered(2, [(0, 1)]);
        let config = PipelineConfig {
            verify_levels: true,
            ..PipelineConfig::default()
        };
        let r = extend_graph(&a, &[swap()], 3, &config).unwrap();
        assert!(r.certificate.passed(), "{}", r.certificate);
        assert_eq!(r.automorphisms[0].get(0), Some(1));
        assert_eq!(r.stats.len(), 3);
    }

    #[test]
    fn triangle_is_rejected() {
        let a = Graph::numbered(3, [(0, 1), (1, 2), (0, 2)]);
        let err = extend_graph(&a, &[], 3, &PipelineConfig::default()).unwrap_err();
        assert!(matches!(err, PipelineError::NotFree(_)));
    }

    #[test]
    fn total_maps_collapse() {
        let a = Graph::numbered(3, [(0, 1), (1, 2)]);
        let flip = PartialPermorphism::isomorphism(3, [(0, 2), (1, 1), (2, 0)]).unwrap();
        let r = extend_graph(&a, &[flip.clone()], 3, &PipelineConfig::default()).unwrap();
        assert_eq!(r.structure.len(), 3);
        assert_eq!(r.automorphisms[0].image(), flip.image());
    }

    #[test]
    fn path_shift() {
        let a = Graph::numbered(3, [(0, 1), (1, 2)]);
        let p = PartialPermorphism::isomorphism(3, [(0, 1), (1, 2)]).unwrap();
        let config = PipelineConfig {
            verify_levels: true,
            ..PipelineConfig::default()
        };
        let r = extend_graph(&a, &[p], 3, &config).unwrap();
        assert!(r.certificate.passed(), "{}", r.certificate);
    }
}
