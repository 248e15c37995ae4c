use std::fs;
use std::path::Path;

use gqw_core::classical::{build_grid, build_symplectic};
use gqw_core::feasibility::{feasibility_report, plane_report, FeasibilityQuery, ParameterValue, ParameterVerdict};
use gqw_core::incidence::{parse_incidence, serialize_incidence, validate_gq, Element, IncidenceStructure};
use gqw_core::par::Execution;
use gqw_core::substructures::{
    automorphism_group_with, is_indiscernible, map_tuple, search_substructures, stabilizer, ElementSet, GroupOptions,
    IndiscernibilityOptions, OrderedLineFamily, SearchKind, SearchMode, SearchStatus, StabilizerMode,
};
use serde_json::json;

use crate::output::{Report, UsageError};

pub fn load(path: &Path) -> Result<IncidenceStructure, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    parse_incidence(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

pub fn build_w(r: &mut Report, q: u32) -> Result<(), UsageError> {
    emit_structure(r, &format!("W({q})"), &build_symplectic(q)?);
    Ok(())
}

pub fn build_grid_cmd(r: &mut Report, m: usize, n: usize) -> Result<(), UsageError> {
    emit_structure(r, &format!("grid({m},{n})"), &build_grid(m, n)?);
    Ok(())
}

fn emit_structure(r: &mut Report, name: &str, g: &IncidenceStructure) {
    let doc = serialize_incidence(g);
    r.text(doc.trim_end());
    r.record(json!({
        "kind": "incidence",
        "name": name,
        "points": g.point_count(),
        "lines": g.line_count(),
        "document": doc,
    }));
}

pub fn check(r: &mut Report, g: &IncidenceStructure) {
    let report = validate_gq(g);
    let verdict = if report.passed() { "pass" } else { "fail" };
    let order = report.order.map(|o| o.to_string());
    let witness = report.witness.as_ref().map(ToString::to_string);
    let a = report.axioms;
    r.text(format!("verdict: {verdict}"));
    r.text(format!("points: {}", g.point_count()));
    r.text(format!("lines: {}", g.line_count()));
    r.text(format!("order: {}", order.as_deref().unwrap_or("none")));
    r.text(format!(
        "axioms: no-digon={} no-triangle={} pairs-in-quadrangle={} elements-in-quadrangle={} pentagon={} uniform={}",
        a.no_digon, a.no_triangle, a.pairs_in_quadrangle, a.singletons_in_quadrangle, a.pentagon, a.uniform
    ));
    if let Some(w) = &witness {
        r.text(format!("witness: {w}"));
    }
    r.record(json!({
        "kind": "check",
        "verdict": verdict,
        "points": g.point_count(),
        "lines": g.line_count(),
        "order": order,
        "witness": witness,
    }));
    if !report.passed() {
        r.fail();
    }
}

pub fn perp(r: &mut Report, g: &IncidenceStructure, points: &[usize]) -> Result<(), UsageError> {
    let trace = g.perp(points)?;
    let span = g.span(points)?;
    let join = |v: &[usize]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
    r.text(format!("perp: {}", join(&trace)));
    r.text(format!("span: {}", join(&span)));
    r.record(json!({"kind": "perp", "members": trace, "count": trace.len()}));
    r.record(json!({"kind": "span", "members": span, "count": span.len()}));
    Ok(())
}

pub fn search(r: &mut Report, g: &IncidenceStructure, kind: SearchKind, mode: SearchMode, limit: Option<u64>) {
    let outcome = search_substructures(g, kind, mode, limit);
    for s in &outcome.solutions {
        let members: Vec<String> = s.iter().map(ToString::to_string).collect();
        r.text(format!("{kind}: {}", members.join(" ")));
        r.record(json!({"kind": kind.to_string(), "members": s, "count": s.len()}));
    }
    let status = match outcome.status {
        SearchStatus::Complete => "complete",
        SearchStatus::LimitExceeded => "limit-exceeded",
    };
    r.text(format!("count: {} ({status})", outcome.count));
    r.record(json!({"kind": format!("{kind}-search"), "count": outcome.count, "status": status}));
    if !outcome.found() {
        r.fail();
    }
}

fn parse_index_list(text: &str) -> Result<Vec<usize>, UsageError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| UsageError(format!("expected a comma-separated index list, got {text:?}")))
        })
        .collect()
}

pub fn parse_points(text: &str) -> Result<Vec<usize>, UsageError> {
    parse_index_list(text)
}

/// `p3,L0,...`: points prefixed `p`, lines prefixed `L`.
fn parse_elements(text: &str) -> Result<Vec<Element>, UsageError> {
    text.split(',')
        .map(|t| {
            let t = t.trim();
            let bad = || UsageError(format!("expected elements like p3 or L0, got {t:?}"));
            let (ctor, rest): (fn(usize) -> Element, &str) = if let Some(rest) = t.strip_prefix('p') {
                (Element::Point, rest)
            } else if let Some(rest) = t.strip_prefix('L') {
                (Element::Line, rest)
            } else {
                return Err(bad());
            };
            rest.parse().map(ctor).map_err(|_| bad())
        })
        .collect()
}

fn check_elements(g: &IncidenceStructure, es: &[Element]) -> Result<(), UsageError> {
    for e in es {
        let ok = match *e {
            Element::Point(p) => p < g.point_count(),
            Element::Line(l) => l < g.line_count(),
        };
        if !ok {
            return Err(UsageError(format!("element {e} out of range")));
        }
    }
    Ok(())
}

pub struct AutoArgs<'a> {
    pub max_points: usize,
    pub stabilize: Option<&'a str>,
    pub setwise: bool,
    pub map: Option<(&'a str, &'a str)>,
    pub indiscernible: Option<(&'a str, usize)>,
    pub allow_intersecting: bool,
}

pub fn auto(r: &mut Report, g: &IncidenceStructure, args: AutoArgs<'_>) -> Result<(), UsageError> {
    let opts = GroupOptions {
        max_points: args.max_points,
        ..GroupOptions::default()
    };
    let group = automorphism_group_with(g, opts)?;
    group.verify_closure(Execution::default())?;
    r.text(format!("group order: {}", group.order()));
    r.record(json!({"kind": "group", "count": group.order()}));

    if let Some(list) = args.stabilize {
        let es = parse_elements(list)?;
        check_elements(g, &es)?;
        let set = if es.iter().all(|e| matches!(e, Element::Point(_))) {
            ElementSet::Points(es.iter().map(|e| index(*e)).collect())
        } else if es.iter().all(|e| matches!(e, Element::Line(_))) {
            ElementSet::Lines(es.iter().map(|e| index(*e)).collect())
        } else {
            return Err(UsageError("--stabilize-set must list only points or only lines".into()));
        };
        let mode = if args.setwise {
            StabilizerMode::Setwise
        } else {
            StabilizerMode::Pointwise
        };
        let sub = stabilizer(&group, &set, mode);
        let label = if args.setwise { "setwise" } else { "pointwise" };
        r.text(format!("{label} stabilizer order: {}", sub.order()));
        r.record(json!({"kind": "stabilizer", "mode": label, "members": es.iter().map(ToString::to_string).collect::<Vec<_>>(), "count": sub.order()}));
    }

    if let Some((a, b)) = args.map {
        let (a, b) = (parse_elements(a)?, parse_elements(b)?);
        check_elements(g, &a)?;
        check_elements(g, &b)?;
        match map_tuple(&group, &a, &b)? {
            Some(alpha) => {
                r.text(format!("mapping automorphism: {alpha}"));
                r.record(json!({
                    "kind": "map-tuple",
                    "members": {"points": alpha.point_perm(), "lines": alpha.line_perm()},
                    "count": 1,
                }));
            }
            None => {
                r.text("no automorphism maps the first tuple onto the second");
                r.record(json!({"kind": "map-tuple", "members": null, "count": 0}));
                r.fail();
            }
        }
    }

    if let Some((lines, n)) = args.indiscernible {
        let fam = OrderedLineFamily::new(g, parse_index_list(lines)?)?;
        let opts = IndiscernibilityOptions {
            require_skew: !args.allow_intersecting,
            ..IndiscernibilityOptions::default()
        };
        let v = is_indiscernible(g, &group, &fam, n, opts)?;
        r.text(format!(
            "indiscernible (n = {n}): {} over {} tuples",
            if v.passed { "pass" } else { "fail" },
            v.tuples
        ));
        if let Some((x, y)) = &v.counterexample {
            r.text(format!("counterexample: {x:?} vs {y:?}"));
        }
        r.record(json!({
            "kind": "indiscernible",
            "members": fam.lines(),
            "count": v.tuples,
            "verdict": if v.passed { "pass" } else { "fail" },
            "witness": v.counterexample,
        }));
        if !v.passed {
            r.fail();
        }
    }
    Ok(())
}

fn index(e: Element) -> usize {
    match e {
        Element::Point(i) | Element::Line(i) => i,
    }
}

pub fn parse_parameter(text: &str) -> Result<ParameterValue, String> {
    match text {
        "omega" | "inf" | "infinite" => Ok(ParameterValue::CountablyInfinite),
        _ => text
            .parse()
            .map(ParameterValue::Finite)
            .map_err(|_| format!("expected a positive integer or 'omega', got {text:?}")),
    }
}

pub fn feasibility(r: &mut Report, n: u32, s: ParameterValue, t: ParameterValue) {
    emit_verdict(
        r,
        &format!("n={n} s={s} t={t}"),
        &feasibility_report(&FeasibilityQuery { n, s, t }),
    );
}

pub fn plane(r: &mut Report, m: u64) {
    emit_verdict(r, &format!("plane order {m}"), &plane_report(m));
}

fn emit_verdict(r: &mut Report, label: &str, v: &ParameterVerdict) {
    r.text(format!("parameters: {label}"));
    r.text(v.render_table().trim_end());
    for t in &v.tests {
        r.record(json!({
            "kind": "feasibility-test",
            "name": t.name,
            "result": t.outcome.label(),
            "citation": t.citation,
            "witness": t.outcome.detail(),
        }));
    }
    r.record(json!({"kind": "feasibility", "parameters": label, "verdict": v.overall.to_string()}));
    if v.tests.iter().any(|t| t.outcome.is_fail()) {
        r.fail();
    }
}
