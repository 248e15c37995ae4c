use std::fs;
use std::path::Path;

use gqw_core::order::verify_automorphism;
use gqw_core::order::{
    alpha_backforth, alpha_boxes, alpha_infinite_class, alpha_move_interior, asymp_classes, image_presentation,
    parse_rational, select_case, sim_classes, sim_classes_of_complement, Bound, Case, ClassKind, ConstructionError,
    Contract, OrderAutomorphism, Presentation, SimDecomposition, VerificationReport,
};
use gqw_core::Rational;
use serde_json::json;

use crate::output::{Report, UsageError};

pub fn parse_set(text: &str) -> Result<Presentation, UsageError> {
    text.parse().map_err(|e| UsageError(format!("--set: {e}")))
}

pub fn parse_q(text: &str) -> Result<Rational, String> {
    parse_rational(text.trim()).ok_or_else(|| format!("expected a rational like 3/2, got {text:?}"))
}

fn parse_bound(text: &str) -> Result<Bound, UsageError> {
    match text.trim() {
        "-inf" => Ok(Bound::NegInf),
        "+inf" | "inf" => Ok(Bound::PosInf),
        t => parse_q(t).map(Bound::Finite).map_err(UsageError),
    }
}

fn emit_sim(r: &mut Report, label: &str, d: &SimDecomposition) {
    r.text(format!("{label} ∼ classes: {}", d.classes.len()));
    for (i, c) in d.classes.iter().enumerate() {
        let members = c.members.as_ref().map(ToString::to_string);
        r.text(format!(
            "  [{i}] {} from {} to {}{}",
            c.kind,
            c.lo,
            c.hi,
            members.as_ref().map(|m| format!(": {m}")).unwrap_or_default()
        ));
        r.record(json!({
            "kind": format!("{label}-class"),
            "index": i,
            "class": c.kind.to_string(),
            "lo": c.lo.to_string(),
            "hi": c.hi.to_string(),
            "members": members,
        }));
    }
}

pub fn classes(r: &mut Report, sv: &Presentation) {
    r.text(format!("set: {sv}"));
    emit_sim(r, "set", &sim_classes(sv));
    emit_sim(r, "complement", &sim_classes_of_complement(sv));
    let asymp = asymp_classes(sv);
    r.text(format!("≍ classes: {}", asymp.classes.len()));
    for c in &asymp.classes {
        r.text(format!("  {c}"));
        r.record(json!({"kind": "asymp-class", "members": c.to_string()}));
    }
    for v in &asymp.violations {
        r.text(format!(
            "transitivity violation: {} ≍ {} ≍ {}",
            v.left, v.shared, v.right
        ));
        r.record(json!({
            "kind": "transitivity-violation",
            "witness": [v.left.to_string(), v.shared.to_string(), v.right.to_string()],
        }));
    }
}

pub fn case(r: &mut Report, sv: &Presentation) {
    match select_case(sv) {
        Ok(sel) => {
            let window = sel.narrowed_interval.as_ref().map(|(a, b)| format!("({a}, {b})"));
            r.text(format!("case: {}", sel.case));
            if let Some(w) = &window {
                r.text(format!("window: {w}"));
            }
            for n in &sel.notes {
                r.text(format!("note: {n}"));
            }
            r.record(json!({
                "kind": "case",
                "case": sel.case.to_string(),
                "window": window,
                "witness": sel.shared_endpoints.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "notes": sel.notes,
            }));
        }
        Err(e) => {
            r.text(format!("no case: {e}"));
            r.record(json!({"kind": "case", "case": null, "witness": e.to_string()}));
            r.fail();
        }
    }
}

pub enum AlphaRequest {
    GrowAt(Rational),
    Move(Rational),
    Boxes(String),
}

pub fn alpha(r: &mut Report, sv: &Presentation, req: AlphaRequest) -> Result<(), UsageError> {
    let built: Result<(String, OrderAutomorphism, Vec<Contract>), ConstructionError> = match &req {
        AlphaRequest::GrowAt(w) => grow(sv, w),
        AlphaRequest::Move(x) => {
            alpha_move_interior(sv, x).map(|a| ("move-interior".into(), a, vec![Contract::FixesAllBut(x.clone())]))
        }
        AlphaRequest::Boxes(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            let [q, qp, a, ap] = parts[..] else {
                return Err(UsageError(format!("--boxes expects q,q',a,a', got {text:?}")));
            };
            let (q, ap) = (parse_bound(q)?, parse_bound(ap)?);
            let (qp, a) = (parse_q(qp).map_err(UsageError)?, parse_q(a).map_err(UsageError)?);
            alpha_boxes(sv, &q, &qp, &a, &ap).map(|b| {
                r.text(format!("c = {}, d = {}", b.c, b.d));
                r.text(format!(
                    "image {} (grows: {}), preimage {} (grows: {})",
                    b.growth.image, b.growth.image_grows, b.growth.preimage, b.growth.preimage_grows
                ));
                r.record(json!({
                    "kind": "boxes-growth",
                    "image": b.growth.image.to_string(),
                    "image_grows": b.growth.image_grows,
                    "preimage": b.growth.preimage.to_string(),
                    "preimage_grows": b.growth.preimage_grows,
                }));
                let contract = Contract::BoxesBullets {
                    q,
                    q_prime: qp,
                    a,
                    a_prime: ap,
                };
                ("boxes".into(), b.alpha, vec![contract])
            })
        }
    };
    match built {
        Ok((construction, alpha, contracts)) => {
            r.text(format!("construction: {construction}"));
            r.text(alpha.to_string());
            r.record(json!({"kind": "automorphism", "construction": construction, "members": alpha.to_string()}));
            for contract in &contracts {
                let report = verify_automorphism(&alpha, sv, contract);
                emit_verification(r, contract, &report);
            }
        }
        Err(e) => {
            r.text(format!("construction failed: {e}"));
            r.record(json!({"kind": "automorphism", "members": null, "witness": e.to_string()}));
            r.fail();
        }
    }
    Ok(())
}

type Built = (String, OrderAutomorphism, Vec<Contract>);

/// Infinite discrete classes grow in a gap; other cases go through the
/// back-and-forth pairing.
fn grow(sv: &Presentation, w: &Rational) -> Result<Built, ConstructionError> {
    let sel = select_case(sv)?;
    if sel.case == Case::InfiniteNonSingleton {
        let wb = Bound::Finite(w.clone());
        let index = sel
            .classes
            .classes
            .iter()
            .position(|c| c.kind == ClassKind::InfiniteDiscrete && c.lo < wb && wb < c.hi)
            .ok_or_else(|| ConstructionError::NotInGap(w.clone()))?;
        let alpha = alpha_infinite_class(sv, index, w)?;
        return Ok((
            "infinite-class".into(),
            alpha,
            vec![Contract::StrictGrowth, Contract::GrowsBy(w.clone())],
        ));
    }
    let alpha = alpha_backforth(sv, w)?;
    Ok(("back-and-forth".into(), alpha, vec![Contract::GrowsBy(w.clone())]))
}

fn emit_verification(r: &mut Report, contract: &Contract, report: &VerificationReport) {
    r.text(format!("contract: {contract}"));
    r.text(report.to_string().trim_end());
    r.record(json!({
        "kind": "verification",
        "contract": contract.to_string(),
        "verdict": if report.passed { "pass" } else { "fail" },
        "count": report.checks.len(),
        "witness": report.counterexample,
    }));
    if !report.passed {
        r.fail();
    }
}

pub fn image(r: &mut Report, sv: &Presentation, auto: &Path) -> Result<(), UsageError> {
    let text = fs::read_to_string(auto).map_err(|e| UsageError(format!("{}: {e}", auto.display())))?;
    let alpha: OrderAutomorphism = text
        .parse()
        .map_err(|e| UsageError(format!("{}: {e}", auto.display())))?;
    match image_presentation(&alpha, sv) {
        Ok(img) => {
            r.text(format!("image: {img}"));
            r.text(format!("contains set: {}", sv.is_subset_of(&img)));
            r.record(json!({"kind": "image", "members": img.to_string(), "contains_set": sv.is_subset_of(&img)}));
        }
        Err(e) => {
            r.text(format!("image failed: {e}"));
            r.record(json!({"kind": "image", "members": null, "witness": e.to_string()}));
            r.fail();
        }
    }
    Ok(())
}
