//! End-to-end acceptance checks. Each test prints one `criterion N: PASS`
//! or `criterion N: FAIL` line (run with `--nocapture` to see them).

use std::collections::BTreeSet;
use std::process::{Command, Output};
use std::str::FromStr;
use std::time::{Duration, Instant};

use gqw_core::classical::{build_grid, build_symplectic, grid_columns, grid_rows};
use gqw_core::feasibility::{
    feasibility_report, is_sum_of_two_squares, plane_report, sum_of_two_squares, FeasibilityQuery, Outcome, Overall,
    ParameterVerdict,
};
use gqw_core::incidence::{parse_incidence, validate_gq, GqOrder, IncidenceStructure};
use gqw_core::order::{
    alpha_backforth, alpha_boxes, alpha_infinite_class, alpha_move_interior, image_presentation, select_case,
    verify_automorphism, Bound, Case, ClassKind, Contract, OrderAutomorphism, Presentation, VerificationReport,
};
use gqw_core::substructures::{
    automorphism_group, classify_substructure, is_indiscernible, ovoid_projection_profile, search_substructures,
    IndiscernibilityOptions, OrderedLineFamily, SearchKind, SearchMode, SearchStatus, SubstructureKind,
};
use gqw_core::Rational;

fn gqw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gqw"))
        .args(args)
        .output()
        .expect("gqw runs")
}

fn q(text: &str) -> Rational {
    Rational::from_str(text).expect("rational")
}

fn set(text: &str) -> Presentation {
    text.parse().expect("presentation")
}

/// Prints the criterion line and fails the test with the collected problems.
fn report(n: &str, what: &str, problems: Vec<String>) {
    if problems.is_empty() {
        println!("criterion {n}: PASS ({what})");
    } else {
        println!("criterion {n}: FAIL ({what}): {}", problems.join("; "));
        panic!("criterion {n} failed: {}", problems.join("; "));
    }
}

fn within(problems: &mut Vec<String>, start: Instant, budget: Duration) {
    let spent = start.elapsed();
    if spent > budget {
        problems.push(format!("took {spent:?}, budget {budget:?}"));
    }
}

/// Axioms straight from the definition: pairs of points share at most one
/// line, every point off a line is collinear with exactly one of its points,
/// and the structure is thick.
fn brute_force_gq(g: &IncidenceStructure) -> bool {
    let n = g.point_count();
    let on = |l: &Vec<usize>, p: usize| l.contains(&p);
    let collinear = |a: usize, b: usize| g.lines().iter().any(|l| on(l, a) && on(l, b));
    let thick =
        g.lines().iter().all(|l| l.len() >= 3) && (0..n).all(|p| g.lines().iter().filter(|l| on(l, p)).count() >= 3);
    let one_line = (0..n).all(|a| (a + 1..n).all(|b| g.lines().iter().filter(|l| on(l, a) && on(l, b)).count() <= 1));
    let antiflags = g.lines().iter().all(|l| {
        (0..n)
            .filter(|&p| !on(l, p))
            .all(|p| l.iter().filter(|&&x| collinear(p, x)).count() == 1)
    });
    thick && one_line && antiflags
}

#[test]
fn criterion_1_w2_build_and_check() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let built = gqw(&["build", "w", "--q", "2"]);
    let text = String::from_utf8(built.stdout).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w2.txt");
    std::fs::write(&path, &text).unwrap();
    let checked = gqw(&["check", path.to_str().unwrap()]);
    let out = String::from_utf8(checked.stdout).unwrap();
    if checked.status.code() != Some(0) || !out.contains("verdict: pass") || !out.contains("order: (2,2)") {
        problems.push(format!("check output: {out}"));
    }
    within(&mut problems, start, Duration::from_secs(1));
    let g = parse_incidence(&text).unwrap();
    if (g.point_count(), g.line_count()) != (15, 15) {
        problems.push(format!("{} points, {} lines", g.point_count(), g.line_count()));
    }
    if validate_gq(&g).order != Some(GqOrder::finite(2, 2)) {
        problems.push("library order is not (2,2)".into());
    }
    if !brute_force_gq(&g) {
        problems.push("brute-force axiom check rejects W(2)".into());
    }
    report("1", "W(2) is a GQ of order (2,2) with 15 points and 15 lines", problems);
}

#[test]
fn criterion_2_w3_ovoids_and_spreads() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let g = build_symplectic(3).unwrap();
    let r = validate_gq(&g);
    if r.order != Some(GqOrder::finite(3, 3)) || g.point_count() != 40 || g.line_count() != 40 {
        problems.push(format!(
            "order {:?}, {} points, {} lines",
            r.order,
            g.point_count(),
            g.line_count()
        ));
    }
    let ovoids = search_substructures(&g, SearchKind::Ovoid, SearchMode::Count, None);
    if ovoids.count != 0 || ovoids.status != SearchStatus::Complete {
        problems.push(format!("ovoid search: {} ({:?})", ovoids.count, ovoids.status));
    }
    let spreads = search_substructures(&g, SearchKind::Spread, SearchMode::First, None);
    match spreads.solutions.first() {
        Some(s) if s.len() == 10 => {
            // Ten pairwise skew lines covering all forty points.
            let covered: BTreeSet<usize> = s.iter().flat_map(|&l| g.line(l).iter().copied()).collect();
            if covered.len() != 40 {
                problems.push(format!("spread covers {} points", covered.len()));
            }
        }
        other => problems.push(format!("spread search returned {other:?}")),
    }
    within(&mut problems, start, Duration::from_secs(300));
    report("2", "W(3) has order (3,3), no ovoid, and a spread of size 10", problems);
}

#[test]
fn criterion_3_w2_ovoid_census() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let g = build_symplectic(2).unwrap();
    let found = search_substructures(&g, SearchKind::Ovoid, SearchMode::All, None);
    let found: BTreeSet<Vec<usize>> = found.solutions.into_iter().collect();
    if found.len() != 6 {
        problems.push(format!("{} ovoids", found.len()));
    }
    for o in &found {
        let hits_once = g
            .lines()
            .iter()
            .all(|l| l.iter().filter(|p| o.contains(p)).count() == 1);
        if o.len() != 5 || !hits_once {
            problems.push(format!("{o:?} is not an ovoid of size 5"));
        }
        if !classify_substructure(&g, SubstructureKind::Ovoid, o).is_ok_and(|v| v.valid) {
            problems.push(format!("{o:?} not classified as an ovoid"));
        }
    }
    // Naive filter: every 5-subset of pairwise non-collinear points.
    let mut naive = BTreeSet::new();
    let n = g.point_count();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    for e in d + 1..n {
                        let s = [a, b, c, d, e];
                        let cap = (0..5).all(|i| (i + 1..5).all(|j| !g.collinear(s[i], s[j])));
                        if cap {
                            naive.insert(s.to_vec());
                        }
                    }
                }
            }
        }
    }
    if naive != found {
        problems.push(format!("naive filter finds {} sets", naive.len()));
    }
    within(&mut problems, start, Duration::from_secs(10));
    report("3", "W(2) has exactly 6 ovoids of size 5", problems);
}

fn outcome<'a>(v: &'a ParameterVerdict, name: &str) -> &'a Outcome {
    &v.tests.iter().find(|t| t.name == name).expect("test present").outcome
}

#[test]
fn criterion_4_feasibility_table() {
    let mut problems = Vec::new();
    let mut expect = |label: &str, ok: bool| {
        if !ok {
            problems.push(label.to_string());
        }
    };
    let pentagon = feasibility_report(&FeasibilityQuery::finite(5, 2, 2));
    expect(
        "n=5 thick is infeasible",
        pentagon.overall == Overall::Infeasible && outcome(&pentagon, "feit-higman").is_fail(),
    );
    let oct24 = feasibility_report(&FeasibilityQuery::finite(8, 2, 4));
    expect("n=8 (2,4): 2st = 16 passes", oct24.overall == Overall::FeasibleSoFar);
    let oct44 = feasibility_report(&FeasibilityQuery::finite(8, 4, 4));
    expect(
        "n=8 (4,4): 2st = 32 fails",
        oct44.overall == Overall::Infeasible && outcome(&oct44, "feit-higman").detail().contains("32"),
    );
    let quad = feasibility_report(&FeasibilityQuery::finite(4, 2, 5));
    expect(
        "n=4 (2,5) fails Higman",
        quad.overall == Overall::Infeasible
            && outcome(&quad, "higman").is_fail()
            && !outcome(&quad, "feit-higman").is_fail(),
    );
    let hex = feasibility_report(&FeasibilityQuery::finite(6, 2, 9));
    expect(
        "n=6 (2,9) fails Haemers-Roos",
        hex.overall == Overall::Infeasible
            && outcome(&hex, "haemers-roos").is_fail()
            && !outcome(&hex, "feit-higman").is_fail(),
    );
    // t^3 <= s^9: 729 > 512.
    expect("9^3 > 2^9", 9u64.pow(3) > 2u64.pow(9));
    let plane = plane_report(6);
    expect(
        "plane order 6 fails Bruck-Ryser",
        plane.overall == Overall::Infeasible && outcome(&plane, "bruck-ryser").is_fail(),
    );
    expect(
        "plane order 5 = 1 + 4 passes",
        plane_report(5).overall == Overall::FeasibleSoFar,
    );
    report(
        "4",
        "feasibility verdicts for n = 4, 5, 6, 8 and plane order 6",
        problems,
    );
}

#[test]
fn criterion_5_ovoid_profile_on_w2() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let g = build_symplectic(2).unwrap();
    let ovoids = search_substructures(&g, SearchKind::Ovoid, SearchMode::All, None).solutions;
    let mut pairs = 0;
    for o in &ovoids {
        for &x in o {
            for &y in o.iter().filter(|&&y| y > x) {
                pairs += 1;
                let p = ovoid_projection_profile(&g, o, x, y).unwrap();
                // Independent trace: points collinear with both x and y.
                let trace: Vec<usize> = (0..g.point_count())
                    .filter(|&z| z != x && z != y && g.collinear(z, x) && g.collinear(z, y))
                    .collect();
                if p.trace.len() != 3 || p.trace != trace {
                    problems.push(format!("trace of {x},{y} is {:?}", p.trace));
                }
                let covered = o
                    .iter()
                    .filter(|&&u| u != x && u != y)
                    .all(|&u| trace.iter().any(|&z| g.collinear(u, z)));
                if !p.all_covered() || !covered {
                    problems.push(format!("ovoid {o:?} uncovered for {x},{y}"));
                }
            }
        }
    }
    if pairs != 60 {
        problems.push(format!("{pairs} pairs checked"));
    }
    within(&mut problems, start, Duration::from_secs(5));
    report(
        "5",
        "every ovoid pair of W(2) has a trace of 3 covering the ovoid",
        problems,
    );
}

#[test]
fn criterion_6_indiscernible_grid_rows() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let g = build_grid(3, 5).unwrap();
    let group = automorphism_group(&g).unwrap();
    if group.order() != 720 {
        problems.push(format!("group order {}", group.order()));
    }
    let rows = OrderedLineFamily::new(&g, grid_rows(&g, 3, 5)).unwrap();
    for n in 1..=3 {
        let v = is_indiscernible(&g, &group, &rows, n, IndiscernibilityOptions::default()).unwrap();
        if !v.passed {
            problems.push(format!("rows fail at n = {n}: {:?}", v.counterexample));
        }
    }
    let mixed = OrderedLineFamily::new(&g, vec![grid_rows(&g, 3, 5)[0], grid_columns(&g, 3, 5)[0]]).unwrap();
    let lax = IndiscernibilityOptions {
        require_skew: false,
        ..Default::default()
    };
    let v = is_indiscernible(&g, &group, &mixed, 1, lax).unwrap();
    match &v.counterexample {
        Some((a, b)) if !v.passed => println!("mixed family counterexample: {a:?} vs {b:?}"),
        _ => problems.push("mixed row/column family passes at n = 1".into()),
    }
    within(&mut problems, start, Duration::from_secs(30));
    report(
        "6",
        "grid(3,5) rows indiscernible for n = 1..3, mixed family not",
        problems,
    );
}

/// Sampled monotonicity and inverse round trips are part of every report;
/// this also checks the image exactly against the expected set.
fn check_construction(
    problems: &mut Vec<String>,
    label: &str,
    alpha: &OrderAutomorphism,
    sv: &Presentation,
    contract: &Contract,
    expected_image: Option<&Presentation>,
) {
    let v: VerificationReport = verify_automorphism(alpha, sv, contract);
    if !v.passed {
        problems.push(format!("{label}: {}", v.counterexample.unwrap_or_default()));
    }
    for name in ["sampled monotonicity", "inverse round trip"] {
        if !v.checks.iter().any(|c| c.name == name && c.passed) {
            problems.push(format!("{label}: no passing {name} check"));
        }
    }
    if let Some(want) = expected_image {
        let got = image_presentation(alpha, sv).unwrap();
        if &got != want {
            problems.push(format!("{label}: image {got}, expected {want}"));
        }
    }
}

#[test]
fn criterion_7_order_engine_suite() {
    let start = Instant::now();
    let mut problems = Vec::new();
    let mut case_is = |p: &Presentation, want: Case| match select_case(p) {
        Ok(sel) if sel.case == want => {}
        other => problems.push(format!("{p}: case {:?}", other.map(|s| s.case))),
    };

    let dense = set("iv(0,1,o,o) U iv(2,3,o,o)");
    case_is(&dense, Case::OnlySingletons);

    let seq = set("seq(0,1,inc,excl)");
    case_is(&seq, Case::InfiniteNonSingleton);

    let three = set("pt(0) U pt(1) U pt(2)");
    case_is(&three, Case::FiniteNonSingletonGe3);

    let boxes = set("iv(-2,-1,o,o) U pt(1) U pt(3) U iv(4,5,o,o)");
    case_is(&boxes, Case::AllSize2WithHatNonSingletons);

    let sel = select_case(&seq).unwrap();
    let w = q("5/8");
    let index = sel
        .classes
        .classes
        .iter()
        .position(|c| c.kind == ClassKind::InfiniteDiscrete)
        .expect("infinite class");
    match alpha_infinite_class(&seq, index, &w) {
        Ok(alpha) => check_construction(&mut problems, "sequence", &alpha, &seq, &Contract::StrictGrowth, None),
        Err(e) => problems.push(format!("sequence: {e}")),
    }

    match alpha_move_interior(&three, &q("1")) {
        Ok(alpha) => {
            check_construction(
                &mut problems,
                "three-point",
                &alpha,
                &three,
                &Contract::FixesAllBut(q("1")),
                None,
            );
            // Orbit of 1 under ten iterates, strictly increasing and inside (0, 2).
            let mut x = q("1");
            for _ in 0..10 {
                let y = alpha.apply(&x);
                if !(y > x && y < q("2")) {
                    problems.push(format!("three-point: orbit step {x} -> {y}"));
                }
                x = y;
            }
        }
        Err(e) => problems.push(format!("three-point: {e}")),
    }

    let (lo, lo_p, a, a_p) = (Bound::Finite(q("-1/2")), q("0"), q("1"), Bound::Finite(q("3")));
    let bullets = Contract::BoxesBullets {
        q: lo.clone(),
        q_prime: lo_p.clone(),
        a: a.clone(),
        a_prime: a_p.clone(),
    };
    match alpha_boxes(&boxes, &lo, &lo_p, &a, &a_p) {
        Ok(b) => check_construction(&mut problems, "boxes", &b.alpha, &boxes, &bullets, None),
        Err(e) => problems.push(format!("boxes: {e}")),
    }
    let example = set("pt(-1) U pt(1) U iv(3,4,c,c)");
    match alpha_boxes(&example, &lo, &lo_p, &a, &a_p) {
        Ok(b) => check_construction(&mut problems, "boxes example", &b.alpha, &example, &bullets, None),
        Err(e) => problems.push(format!("boxes example: {e}")),
    }

    within(&mut problems, start, Duration::from_secs(10));
    report("7", "cases, sequence, three-point and boxes constructions", problems);
}

/// The dense-two-intervals construction must grow the set by exactly one
/// point. Any order automorphism maps the two open components of the set
/// onto open convex pieces of the image, so an isolated extra point cannot
/// appear; the construction reports the obstruction and this check fails.
#[test]
fn criterion_7_dense_two_intervals_grows_by_point() {
    let mut problems = Vec::new();
    let dense = set("iv(0,1,o,o) U iv(2,3,o,o)");
    let r = q("3/2");
    let want = dense.with_point(r.clone()).unwrap();
    match alpha_backforth(&dense, &r) {
        Ok(alpha) => check_construction(
            &mut problems,
            "dense-two-intervals",
            &alpha,
            &dense,
            &Contract::GrowsBy(r.clone()),
            Some(&want),
        ),
        Err(e) => problems.push(format!("dense-two-intervals grows-by {{{r}}}: {e}")),
    }
    report("7", "dense-two-intervals grows by {3/2}", problems);
}

#[test]
fn criterion_8_sum_of_two_squares() {
    let start = Instant::now();
    let mut problems = Vec::new();
    const N: u64 = 1_000_000;
    let mut representable = vec![false; N as usize + 1];
    let mut a = 0u64;
    while a * a <= N {
        let mut b = a;
        while a * a + b * b <= N {
            representable[(a * a + b * b) as usize] = true;
            b += 1;
        }
        a += 1;
    }
    let disagree: Vec<u64> = (0..=N)
        .filter(|&m| is_sum_of_two_squares(m) != representable[m as usize])
        .take(5)
        .collect();
    if !disagree.is_empty() {
        problems.push(format!("criterion disagrees at {disagree:?}"));
    }
    for m in (0..=N).step_by(97) {
        match sum_of_two_squares(m) {
            Some((a, b)) if a * a + b * b == m => {}
            None if !representable[m as usize] => {}
            other => problems.push(format!("{m}: {other:?}")),
        }
    }
    within(&mut problems, start, Duration::from_secs(60));
    report(
        "8",
        "two-squares criterion matches exhaustive search for m <= 10^6",
        problems,
    );
}

#[test]
fn criterion_9_property_spot_checks() {
    let mut problems = Vec::new();

    for g in [
        build_symplectic(2).unwrap(),
        build_symplectic(3).unwrap(),
        build_grid(3, 4).unwrap(),
    ] {
        let dd = g.dual().and_then(|d| d.dual()).unwrap();
        // The double dual lists point j as the j-th line of the dual, which
        // is the set of lines of g through point j.
        let same = (0..g.point_count()).all(|p| g.lines_through(p).len() == dd.lines_through(p).len())
            && dd.line_count() == g.line_count()
            && dd.point_count() == g.point_count();
        if !same {
            problems.push(format!("double dual of a {}-point structure differs", g.point_count()));
        }
    }

    let w2 = build_symplectic(2).unwrap();
    for a in 0..15 {
        for b in a..15 {
            let xs = if a == b { vec![a] } else { vec![a, b] };
            let p: BTreeSet<usize> = w2.perp(&xs).unwrap().into_iter().collect();
            let span = w2.span(&xs).unwrap();
            let p_span: BTreeSet<usize> = w2.perp(&span).unwrap().into_iter().collect();
            if !xs.iter().all(|x| span.contains(x)) || w2.span(&span).unwrap() != span || p_span != p {
                problems.push(format!("Galois identities fail at {xs:?}"));
            }
        }
    }

    for text in [
        "pt(1/2)",
        "iv(-inf,0,o,c) U pt(3)",
        "seq(0,1,inc,excl) U seq(1,2,dec,incl)",
        "iv(-2,-1,o,o) U pt(1) U pt(3) U iv(4,5,o,o)",
    ] {
        let p = set(text);
        if set(&p.to_string()) != p {
            problems.push(format!("round trip of {text} gives {p}"));
        }
    }

    let dir = tempfile::tempdir().unwrap();
    let w3 = dir.path().join("w3.txt");
    std::fs::write(&w3, gqw(&["build", "w", "--q", "3"]).stdout).unwrap();
    let w3 = w3.to_str().unwrap();
    let rows: [(&[&str], i32); 8] = [
        (&["check", w3], 0),
        (&["search", w3, "--kind", "ovoid", "--mode", "count"], 1),
        (
            &[
                "search",
                w3,
                "--kind",
                "spread",
                "--mode",
                "first",
                "--emit",
                "json-lines",
            ],
            0,
        ),
        (&["feasibility", "--plane-order", "6"], 1),
        (&["order", "case", "--set", "iv(0,1,o,o"], 2),
        (&["order", "alpha", "--set", "pt(0) U pt(1) U pt(2)", "--move", "1"], 0),
        (
            &["order", "classes", "--set", "seq(0,1,inc,excl) U seq(1,2,dec,excl)"],
            0,
        ),
        (&["frobnicate"], 2),
    ];
    for (args, code) in rows {
        let first = gqw(args);
        let second = gqw(args);
        if first.stdout != second.stdout {
            problems.push(format!("{args:?} is not byte-deterministic"));
        }
        if first.status.code() != Some(code) {
            problems.push(format!("{args:?} exits {:?}, expected {code}", first.status.code()));
        }
    }
    report(
        "9",
        "dual, Galois, round-trip, determinism and exit-code spot checks",
        problems,
    );
}
