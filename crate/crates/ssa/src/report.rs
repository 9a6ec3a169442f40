//! JSON reports, all tagged with `"schema": "ssa-report/1"` and a `kind`.

use serde_json::{json, Value};
use ssa_core::analysis::{
    BoundKind, Depth, ExpansionRule, NucleusReport, NucleusStatus, RecurrenceReport,
    RecurrenceStatus,
};
use ssa_core::schreier::{EdgeImage, LevelMap, MapKind, SchreierLevel, TilePartition};
use ssa_core::{Automaton, Group, LabeledGraph};

use crate::json::AutomatonDoc;

pub const SCHEMA: &str = "ssa-report/1";

/// Wraps `fields` (an object) with the schema tag and `kind`.
pub fn tagged(kind: &str, fields: Value) -> Value {
    let mut object = match fields {
        Value::Object(map) => map,
        other => {
            let mut map = serde_json::Map::new();
            map.insert("value".into(), other);
            map
        }
    };
    object.insert("schema".into(), json!(SCHEMA));
    object.insert("kind".into(), json!(kind));
    Value::Object(object)
}

pub fn automaton(a: &Automaton) -> Value {
    serde_json::to_value(AutomatonDoc::from_automaton(a)).expect("documents serialize")
}

pub fn graph(g: &LabeledGraph) -> Value {
    json!({
        "vertices": g.vertices(),
        "edges": g.keyed_edges()
            .map(|(s, t, l)| json!({"source": s, "target": t, "label": l}))
            .collect::<Vec<_>>(),
    })
}

pub fn nucleus(r: &NucleusReport) -> Value {
    let status = match r.status {
        NucleusStatus::Contracting => "contracting",
        NucleusStatus::ExceededBound => "exceeded_bound",
    };
    let witness = r.witness.as_ref().map(|w| {
        let bound = match w.bound {
            BoundKind::MaxElements => "max_elements",
            BoundKind::MaxLength => "max_len",
            BoundKind::EqualityPairs => "equality_pairs",
        };
        json!({
            "bound": bound,
            "candidate": w.candidate_text,
            "self_restricting": w.self_restricting.iter()
                .map(|(g, a)| json!({"element": g, "letter": a}))
                .collect::<Vec<_>>(),
            "members_seen": w.members_seen,
            "description": w.description(),
        })
    });
    tagged(
        "nucleus",
        json!({
            "status": status,
            "bounds": {"max_elements": r.max_elements, "max_len": r.max_len},
            "nucleus": r.nucleus.iter()
                .map(|e| json!({"text": e.text, "name": e.name}))
                .collect::<Vec<_>>(),
            "nuclear_automaton": r.nuclear_automaton.as_ref().map(automaton),
            "witness": witness,
        }),
    )
}

pub fn recurrence(group: &Group, r: &RecurrenceReport) -> Value {
    let status = match r.status {
        RecurrenceStatus::Verified => "verified",
        RecurrenceStatus::Unknown => "unknown",
    };
    let a = group.automaton();
    let per_letter: Vec<Value> = r
        .per_letter
        .iter()
        .map(|l| {
            json!({
                "letter": a.letter_name(l.letter),
                "orbit": l.orbit.iter().map(|&x| a.letter_name(x)).collect::<Vec<_>>(),
                "transversal": l.transversal.iter()
                    .map(|(x, w)| json!({"letter": a.letter_name(*x), "word": group.format(w)}))
                    .collect::<Vec<_>>(),
                "schreier_generators": l.schreier_generators.iter()
                    .map(|w| group.format(w)).collect::<Vec<_>>(),
                "restrictions": l.restrictions.iter()
                    .map(|w| group.format(w)).collect::<Vec<_>>(),
                "found": l.found.iter()
                    .map(|(q, w)| json!({
                        "generator": a.state_name(*q),
                        "product": w.as_ref().map(|w| group.format(w)),
                    }))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    tagged(
        "recurrence",
        json!({"status": status, "search_len": r.search_len, "per_letter": per_letter}),
    )
}

pub fn expansion_rule(rule: Option<&ExpansionRule>) -> Value {
    let Some(rule) = rule else {
        return tagged("expansion_rule", json!({"present": false}));
    };
    let a = &rule.automaton;
    let names = |w: &[usize]| w.iter().map(|&q| a.state_name(q)).collect::<Vec<_>>();
    tagged(
        "expansion_rule",
        json!({
            "present": true,
            "identity_adjoined": rule.identity_adjoined,
            "states": (0..a.state_count()).map(|q| json!({
                "state": a.state_name(q),
                "e": a.letter_name(rule.e[q]),
                "v": a.state_name(rule.v[q]),
            })).collect::<Vec<_>>(),
            "words": (0..a.alphabet_size()).flat_map(|x| (0..a.alphabet_size()).map(move |y| (x, y)))
                .map(|(x, y)| json!({
                    "from": a.letter_name(x),
                    "to": a.letter_name(y),
                    "word": names(rule.word(x, y)),
                }))
                .collect::<Vec<_>>(),
        }),
    )
}

pub fn depth(word: &str, d: Depth) -> Value {
    match d {
        Depth::Finite(n) => tagged("restriction_depth", json!({"word": word, "depth": n})),
        Depth::Unbounded(cap) => tagged(
            "restriction_depth",
            json!({"word": word, "depth": null, "unbounded_after": cap}),
        ),
    }
}

pub fn schreier(a: &Automaton, level: &SchreierLevel) -> Value {
    let mut fields = graph(&level.graph);
    fields["level"] = json!(level.level);
    fields["generators"] = json!(level
        .generators
        .iter()
        .map(|&q| a.state_name(q))
        .collect::<Vec<_>>());
    tagged("schreier", fields)
}

pub fn level_map(map: &LevelMap) -> Value {
    let kind = match map.kind {
        MapKind::Covering => "covering",
        MapKind::Projection => "projection",
    };
    let up = &map.upper.graph;
    let down = &map.lower.graph;
    let vertices: Vec<Value> = map
        .vertex_map
        .iter()
        .enumerate()
        .map(|(i, &v)| json!({"from": up.vertices()[i], "to": down.vertices()[v]}))
        .collect();
    let edges: Vec<Value> = up
        .edges()
        .iter()
        .zip(&map.edge_map)
        .map(|(e, image)| {
            let source = &up.vertices()[e.source];
            match *image {
                EdgeImage::Edge(f) => {
                    let f = &down.edges()[f];
                    json!({
                        "source": source,
                        "label": e.label,
                        "image": {"source": down.vertices()[f.source], "label": f.label},
                    })
                }
                EdgeImage::Vertex(v) => json!({
                    "source": source,
                    "label": e.label,
                    "image": {"vertex": down.vertices()[v]},
                }),
            }
        })
        .collect();
    tagged(
        kind,
        json!({
            "upper_level": map.upper.level,
            "lower_level": map.lower.level,
            "vertex_map": vertices,
            "edge_map": edges,
            "is_morphism": map.is_morphism(),
            "fiber_sizes": map.fiber_sizes(),
            "unique_lifts": map.has_unique_lifts(),
        }),
    )
}

pub fn tile_partition(p: &TilePartition) -> Value {
    let g = &p.schreier.graph;
    let key = |v: usize| g.vertices()[v].as_str();
    let classes: Vec<Value> = p
        .classes
        .iter()
        .zip(&p.components)
        .map(|((suffix, members), parts)| {
            json!({
                "suffix": suffix,
                "vertices": members.iter().map(|&v| key(v)).collect::<Vec<_>>(),
                "components": parts.iter()
                    .map(|c| c.iter().map(|&v| key(v)).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
                "connected": parts.len() == 1,
            })
        })
        .collect();
    let critical: Vec<Value> = p
        .critical_edges
        .iter()
        .map(|&i| {
            let e = &g.edges()[i];
            json!({"source": key(e.source), "target": key(e.target), "label": e.label})
        })
        .collect();
    tagged(
        "tile_partition",
        json!({
            "ambient_level": p.ambient_level,
            "tile_level": p.tile_level,
            "classes": classes,
            "critical_edges": critical,
        }),
    )
}
