//! JSON documents for the command-line front end.
//!
//! Objects are `serde_json` maps, which keep keys sorted. Rationals are
//! always emitted as `"p/q"` strings (`"p"` for integers), never floats.

use serde_json::{json, Map, Value};

use crate::arith::{codim_bound, fmt_rational, genus_bound_embedding, moduli_dim, ModuliSetup, Rational, Weight};
use crate::chambers::{Chamber, ChamberDecomposition, FlipPath, SignVector};
use crate::picard::{Cone, ContractionDescriptor, DivisorClass};
use crate::vanishing::{AcmVerdict, Cell, CoverageRow, CoverageTable, EmbedCoverage, VanishingRegion};
use crate::walls::{FirstWall, Triple, Wall};

pub fn rational(q: &Rational) -> Value {
    Value::String(fmt_rational(q))
}

pub fn weight(a: &Weight) -> Value {
    Value::Array(a.coords().iter().map(rational).collect())
}

pub fn triple(t: &Triple) -> Value {
    json!([t.s, t.e, t.n])
}

pub fn cell(c: Cell) -> Value {
    json!([c.i, c.j])
}

pub fn cells(cs: &[Cell]) -> Value {
    Value::Array(cs.iter().map(|c| cell(*c)).collect())
}

pub fn class(c: &DivisorClass) -> Value {
    Value::Array(c.coords().into_iter().map(rational).collect())
}

fn to_value<T: serde::Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

/// Pretty-printed with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn setup(s: &ModuliSetup) -> Value {
    json!({
        "rank": s.rank(),
        "degree": s.degree(),
        "genus": s.genus(),
        "points": s.points(),
        "mult": s.mult(),
        "ell": s.ell(),
        "e": s.e(),
    })
}

pub fn info(s: &ModuliSetup, det_exponent: i64) -> Value {
    json!({
        "setup": setup(s),
        "dim": moduli_dim(s, false),
        "dim_fixed_determinant": moduli_dim(s, true),
        "base_dim": s.base_dim(),
        "codim_bound": codim_bound(s.rank(), s.genus()),
        "genus_bound_embedding": genus_bound_embedding(s.rank()),
        "det_dual_theta_exponent": det_exponent,
    })
}

fn coord_names(k: usize) -> &'static [&'static str] {
    if k == 1 {
        &["a"]
    } else {
        &["a_x", "a_y"]
    }
}

pub fn wall(w: &Wall, k: usize) -> Value {
    let h = w.hyperplane();
    let mut m = Map::new();
    m.insert("triple".into(), triple(w.canonical()));
    m.insert("label".into(), json!(w.canonical().label()));
    m.insert("equation".into(), json!(h.equation(coord_names(k))));
    m.insert("coeffs".into(), json!(h.coeffs));
    m.insert("constant".into(), json!(h.constant));
    m.insert("slope_kind".into(), to_value(w.slope_kind()));
    m.insert("multiple".into(), json!(w.is_multiple()));
    m.insert("multiplicity_kind".into(), to_value(w.classification().multiplicity_kind));
    m.insert("generators".into(), Value::Array(w.generators().iter().map(triple).collect()));
    m.insert("coprime_test".into(), json!(w.passes_coprime_test()));
    if let Some(v) = w.value() {
        m.insert("value".into(), rational(&v));
    }
    if let Some([(x1, y1), (x2, y2)]) = h.clip_to_square() {
        m.insert("segment".into(), json!([[rational(&x1), rational(&y1)], [rational(&x2), rational(&y2)]]));
    }
    Value::Object(m)
}

pub fn walls(s: &ModuliSetup, ws: &[Wall]) -> Value {
    json!({
        "setup": setup(s),
        "count": ws.len(),
        "walls": ws.iter().map(|w| wall(w, s.k())).collect::<Vec<_>>(),
    })
}

pub fn first_wall(fw: &FirstWall) -> Value {
    json!({
        "value": rational(&fw.value),
        "destabilizer_rank_unit": fw.destabilizer_rank_unit,
        "destabilizer_degree_unit": fw.destabilizer_degree_unit,
        "hecke_boundary": fw.hecke_boundary,
    })
}

pub fn signs(v: &SignVector) -> Value {
    json!(v.to_string())
}

fn chamber(c: &Chamber, dec: &ChamberDecomposition) -> Value {
    json!({
        "id": c.id,
        "signs": signs(&c.signs),
        "sample": weight(&c.sample),
        "closure_vertices": dec.closure_vertices(c.id).iter().map(weight).collect::<Vec<_>>(),
    })
}

pub fn chambers(dec: &ChamberDecomposition) -> Value {
    json!({
        "setup": setup(&dec.setup),
        "walls": dec.walls.iter().map(|w| w.canonical().label()).collect::<Vec<_>>(),
        "chambers": dec.chambers.iter().map(|c| chamber(c, dec)).collect::<Vec<_>>(),
        "adjacency": dec.adjacency.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "vertices": dec.vertices.iter().map(weight).collect::<Vec<_>>(),
        "edges": dec.edge_count,
        "euler_characteristic": dec.euler_characteristic(),
    })
}

pub fn located(a: &Weight, v: &SignVector, chamber: Option<usize>) -> Value {
    json!({ "weight": weight(a), "signs": signs(v), "generic": v.is_generic(), "chamber": chamber })
}

pub fn path(p: &FlipPath, start: &SignVector, end: &SignVector) -> Value {
    let crossings: Vec<Value> = p
        .crossings
        .iter()
        .map(|c| {
            json!({
                "wall": c.wall,
                "triple": triple(&c.triple),
                "label": c.triple.label(),
                "t": rational(&c.t),
                "point": weight(&c.point),
            })
        })
        .collect();
    json!({
        "start": weight(&p.start),
        "end": weight(&p.end),
        "start_signs": signs(start),
        "end_signs": signs(end),
        "crossings": crossings,
    })
}

pub fn cone(c: &Cone) -> Value {
    let mut m = Map::new();
    m.insert("rays".into(), Value::Array(c.rays().iter().map(class).collect()));
    if let Some(l) = c.label() {
        m.insert("label".into(), json!(l));
    }
    Value::Object(m)
}

pub fn contraction(c: &ContractionDescriptor) -> Value {
    json!({
        "edge": c.edge.name(),
        "kind": to_value(c.kind),
        "target": {
            "label": c.target.to_string(),
            "rank": c.target.rank,
            "determinant_twist": c.target.determinant_twist,
            "twist_point": c.target.twist_point,
            "points": c.target.points,
            "mult": c.target.mult,
        },
    })
}

pub fn region(r: &VanishingRegion) -> Value {
    let constraints: Vec<Value> = r
        .constraints
        .iter()
        .map(|c| json!({ "var": to_value(c.var), "rel": to_value(c.rel), "bound": rational(&c.bound) }))
        .collect();
    json!({ "name": r.name.as_str(), "predicate": r.describe(), "constraints": constraints })
}

pub fn coverage_row(row: &CoverageRow) -> Value {
    json!({
        "cell": cell(row.cell),
        "covered_by": row.covered_by.iter().map(|n| n.as_str()).collect::<Vec<_>>(),
        "via": row.via.map(cell),
    })
}

pub fn coverage(t: &CoverageTable, full: bool) -> Value {
    let mut m = Map::new();
    m.insert("r".into(), json!(t.r));
    m.insert("d".into(), json!(t.d));
    m.insert("g".into(), json!(t.g));
    m.insert("n".into(), json!(t.n));
    m.insert("ell".into(), json!(t.ell));
    m.insert("dual_ell".into(), json!(t.dual_ell));
    m.insert(
        "window".into(),
        json!({
            "direct": [-1, t.j_max],
            "serre": [-3 - t.dual_j_max, -2],
            "note": "coverage is constant in j beyond each window edge",
        }),
    );
    m.insert("uncovered".into(), cells(&t.uncovered()));
    m.insert("uncovered_serre".into(), cells(&t.uncovered_serre()));
    if full {
        m.insert("rows".into(), Value::Array(t.rows.iter().map(coverage_row).collect()));
        m.insert("serre_rows".into(), Value::Array(t.serre_rows.iter().map(coverage_row).collect()));
    }
    Value::Object(m)
}

pub fn acm(v: &AcmVerdict, t: &CoverageTable) -> Value {
    let gap = match v {
        AcmVerdict::Acm => Vec::new(),
        AcmVerdict::Gap(c) => c.clone(),
    };
    json!({
        "verdict": if v.is_acm() { "acm" } else { "gap" },
        "cells": cells(&gap),
        "direct_cells": cells(&t.uncovered()),
        "serre_cells": cells(&t.uncovered_serre()),
    })
}

pub fn embed(e: &EmbedCoverage) -> Value {
    json!({
        "r": e.r,
        "d": e.d,
        "g": e.g,
        "n": e.n,
        "fully_faithful": e.fully_faithful,
        "uncovered": e.uncovered,
        "ranges": {
            "below_codimension": format!("i < {}", (e.r - 1) * (e.g - 1)),
            "at_least_rank_squared": format!("i >= {}", e.r * e.r),
        },
        "assumptions": e.assumptions,
    })
}
