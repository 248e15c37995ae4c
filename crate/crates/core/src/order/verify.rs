//! Independent checks of a constructed automorphism against its contract.

use std::fmt;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::automorphism::OrderAutomorphism;
use super::image::image_presentation;
use super::presentation::{Atom, Bound, Presentation};
use crate::par::{self, Execution};
use crate::Rational;

/// Random rationals drawn per verification.
pub const SAMPLE_COUNT: usize = 1000;

const SEED: u64 = 0x5eed_0a7e;
const ORBIT_LENGTH: usize = 10;

/// What the automorphism is claimed to do to the set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contract {
    /// `α(SV) = SV ∪ {r}` exactly.
    GrowsBy(Rational),
    /// `SV ⊊ α(SV)`.
    StrictGrowth,
    /// Fixes `SV ∖ {r}` pointwise and drifts `r` monotonically.
    FixesAllBut(Rational),
    /// The two-box conditions for `q < q' < a < a'`.
    BoxesBullets {
        q: Bound,
        q_prime: Rational,
        a: Rational,
        a_prime: Bound,
    },
}

impl fmt::Display for Contract {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contract::GrowsBy(r) => write!(f, "grows-by {{{r}}}"),
            Contract::StrictGrowth => f.write_str("strict-growth"),
            Contract::FixesAllBut(r) => write!(f, "fixes-all-but {{{r}}}"),
            Contract::BoxesBullets { q, q_prime, a, a_prime } => {
                write!(f, "boxes ({q}, {q_prime}) ({a}, {a_prime})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
    /// Detail of the first failing check.
    pub counterexample: Option<String>,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verification: {}", if self.passed { "pass" } else { "fail" })?;
        for c in &self.checks {
            writeln!(
                f,
                "  [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        if let Some(ce) = &self.counterexample {
            writeln!(f, "  counterexample: {ce}")?;
        }
        Ok(())
    }
}

struct Checks(Vec<CheckOutcome>);

impl Checks {
    fn push(&mut self, name: &str, result: Result<String, String>) {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.0.push(CheckOutcome {
            name: name.into(),
            passed,
            detail,
        });
    }
}

pub fn verify_automorphism(alpha: &OrderAutomorphism, sv: &Presentation, contract: &Contract) -> VerificationReport {
    verify_automorphism_with(alpha, sv, contract, Execution::default())
}

/// As [`verify_automorphism`]; the report does not depend on `exec`.
pub fn verify_automorphism_with(
    alpha: &OrderAutomorphism,
    sv: &Presentation,
    contract: &Contract,
    exec: Execution,
) -> VerificationReport {
    let mut checks = Checks(Vec::new());
    let anchors = alpha.anchors();

    let monotone = anchors
        .windows(2)
        .find(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1)
        .map(|w| format!("anchors {}->{} and {}->{}", w[0].0, w[0].1, w[1].0, w[1].1));
    checks.push(
        "anchors strictly increasing",
        monotone.map_or_else(|| Ok(format!("{} anchors", anchors.len())), Err),
    );
    let fixed_ends = match (anchors.first(), anchors.last()) {
        (Some((a, b)), _) if a != b => Err(format!("first anchor {a}->{b}")),
        (_, Some((a, b))) if a != b => Err(format!("last anchor {a}->{b}")),
        _ => Ok("boundary anchors fixed".into()),
    };
    checks.push("boundary anchors fixed", fixed_ends);

    sampled_checks(alpha, exec, &mut checks);

    match image_presentation(alpha, sv) {
        Ok(image) => contract_checks(alpha, sv, &image, contract, &mut checks),
        Err(e) => checks.push("image", Err(e.to_string())),
    }

    let counterexample = checks
        .0
        .iter()
        .find(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail));
    VerificationReport {
        passed: counterexample.is_none(),
        checks: checks.0,
        counterexample,
    }
}

fn sample_points(alpha: &OrderAutomorphism) -> Vec<Rational> {
    let (lo, hi) = match alpha.support() {
        Some((a, b)) => {
            let pad = b - a + Rational::one();
            (a - &pad, b + &pad)
        }
        None => (Rational::from_integer((-8).into()), Rational::from_integer(8.into())),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut xs: Vec<Rational> = (0..SAMPLE_COUNT)
        .map(|_| {
            let den: i64 = rng.gen_range(1..=1024);
            let num: i64 = rng.gen_range(0..=den);
            &lo + (&hi - &lo) * Rational::new(num.into(), den.into())
        })
        .collect();
    xs.extend(alpha.anchors().iter().map(|a| a.0.clone()));
    xs.sort();
    xs.dedup();
    xs
}

fn sampled_checks(alpha: &OrderAutomorphism, exec: Execution, checks: &mut Checks) {
    let xs = sample_points(alpha);
    let ys = par::map_slice(exec, &xs, |x| alpha.apply(x));
    let back = par::map_slice(exec, &ys, |y| alpha.apply_inverse(y));

    let increasing = (1..xs.len())
        .find(|&i| ys[i - 1] >= ys[i])
        .map(|i| format!("{} < {} but α gives {} >= {}", xs[i - 1], xs[i], ys[i - 1], ys[i]));
    checks.push(
        "sampled monotonicity",
        increasing.map_or_else(|| Ok(format!("{} sorted samples", xs.len())), Err),
    );

    let round_trip = (0..xs.len())
        .find(|&i| back[i] != xs[i])
        .map(|i| format!("α⁻¹(α({})) = {}", xs[i], back[i]));
    checks.push(
        "inverse round trip",
        round_trip.map_or_else(|| Ok("exact on all samples".into()), Err),
    );

    let outside = match alpha.support() {
        None => (0..xs.len()).find(|&i| ys[i] != xs[i]),
        Some((a, b)) => (0..xs.len()).find(|&i| (&xs[i] < a || &xs[i] > b) && ys[i] != xs[i]),
    }
    .map(|i| format!("α({}) = {} outside the support", xs[i], ys[i]));
    checks.push(
        "identity outside support",
        outside.map_or_else(|| Ok("holds on all samples".into()), Err),
    );
}

/// Whether α is the identity on `[lo, hi]` (ends may be infinite).
fn fixes_segment(alpha: &OrderAutomorphism, lo: &Bound, hi: &Bound) -> bool {
    let fixed_end = |b: &Bound| b.finite().is_none_or(|x| &alpha.apply(x) == x);
    fixed_end(lo)
        && fixed_end(hi)
        && alpha.anchors().iter().all(|(x, y)| {
            let xb = Bound::Finite(x.clone());
            !(lo < &xb && &xb < hi) || x == y
        })
}

fn fixes_atom(alpha: &OrderAutomorphism, atom: &Atom) -> bool {
    match atom {
        Atom::Point(x) => &alpha.apply(x) == x,
        Atom::Interval { lo, hi, .. } => fixes_segment(alpha, lo, hi),
        Atom::Seq(s) => fixes_segment(alpha, &Bound::Finite(s.lo.clone()), &Bound::Finite(s.hi.clone())),
    }
}

fn contract_checks(
    alpha: &OrderAutomorphism,
    sv: &Presentation,
    image: &Presentation,
    contract: &Contract,
    checks: &mut Checks,
) {
    match contract {
        Contract::GrowsBy(r) => {
            let result = match sv.with_point(r.clone()) {
                Ok(target) if &target == image => Ok(format!("α(SV) = {image}")),
                Ok(target) => Err(format!("α(SV) = {image}, expected {target}")),
                Err(e) => Err(e.to_string()),
            };
            checks.push("image equals SV ∪ {r}", result);
        }
        Contract::StrictGrowth => {
            let result = if sv.is_strict_subset_of(image) {
                Ok(format!("SV ⊊ α(SV) = {image}"))
            } else {
                Err(format!("α(SV) = {image} does not strictly contain SV"))
            };
            checks.push("strict growth", result);
        }
        Contract::FixesAllBut(r) => {
            let moved: Vec<String> = sv
                .atoms()
                .iter()
                .filter(|a| !(matches!(a, Atom::Point(x) if x == r)) && !fixes_atom(alpha, a))
                .map(ToString::to_string)
                .collect();
            checks.push(
                "fixes SV ∖ {r} pointwise",
                if !sv.contains(r) {
                    Err(format!("{r} is not in SV"))
                } else if moved.is_empty() {
                    Ok("every other atom fixed".into())
                } else {
                    Err(format!("moves {}", moved.join(", ")))
                },
            );
            let mut orbit = vec![r.clone()];
            for _ in 0..ORBIT_LENGTH {
                let next = alpha.apply(orbit.last().expect("non-empty"));
                orbit.push(next);
            }
            let up = orbit.windows(2).all(|w| w[0] < w[1]);
            let down = orbit.windows(2).all(|w| w[0] > w[1]);
            let shown: Vec<String> = orbit.iter().take(4).map(ToString::to_string).collect();
            checks.push(
                "orbit strictly monotone",
                if up || down {
                    Ok(format!("{}, ... ({} iterates)", shown.join(", "), ORBIT_LENGTH))
                } else {
                    Err(format!("orbit {} is not strictly monotone", shown.join(", ")))
                },
            );
        }
        Contract::BoxesBullets { q, q_prime, a, a_prime } => {
            let fixed = |b: &Bound| b.finite().is_none_or(|x| &alpha.apply(x) == x);
            checks.push(
                "α(q) = q and α(a') = a'",
                if fixed(q) && fixed(a_prime) {
                    Ok("both fixed".into())
                } else {
                    Err(format!("α moves {q} or {a_prime}"))
                },
            );
            let outside = alpha.anchors().iter().find(|(x, y)| {
                let xb = Bound::Finite(x.clone());
                (&xb < q || &xb > a_prime) && x != y
            });
            checks.push(
                "identity outside [q, a']",
                match outside {
                    None => Ok("no anchor moves outside".into()),
                    Some((x, y)) => Err(format!("{x}->{y}")),
                },
            );
            let c = alpha.apply(q_prime);
            let d = alpha.apply(a);
            let cb = Bound::Finite(c.clone());
            checks.push(
                "α(q') ∈ (a, a')",
                if a < &c && &cb < a_prime {
                    Ok(format!("α({q_prime}) = {c}"))
                } else {
                    Err(format!("α({q_prime}) = {c} not in ({a}, {a_prime})"))
                },
            );
            checks.push(
                "α(q') < α(a) < a'",
                if c < d && &Bound::Finite(d.clone()) < a_prime {
                    Ok(format!("{c} < {d} < {a_prime}"))
                } else {
                    Err(format!("{c}, {d}, {a_prime} out of order"))
                },
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{alpha_boxes, alpha_infinite_class, alpha_move_interior, parse_rational};

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn p(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn mover_fixes_all_but_r() {
        let sv = p("pt(0) U pt(1) U pt(2)");
        let a = alpha_move_interior(&sv, &q("1")).unwrap();
        let report = verify_automorphism(&a, &sv, &Contract::FixesAllBut(q("1")));
        assert!(report.passed, "{report}");
        let report = verify_automorphism(&a, &sv, &Contract::FixesAllBut(q("0")));
        assert!(!report.passed);
        let report = verify_automorphism(&a, &sv, &Contract::StrictGrowth);
        assert!(!report.passed);
    }

    #[test]
    fn sequence_growth() {
        let sv = p("seq(0,1,inc,excl)");
        let a = alpha_infinite_class(&sv, 0, &q("5/8")).unwrap();
        assert!(verify_automorphism(&a, &sv, &Contract::StrictGrowth).passed);
        assert!(verify_automorphism(&a, &sv, &Contract::GrowsBy(q("5/8"))).passed);
        assert!(!verify_automorphism(&a, &sv, &Contract::GrowsBy(q("9/16"))).passed);
    }

    #[test]
    fn boxes_bullets() {
        let sv = p("pt(-1) U pt(1) U iv(3,4,c,c)");
        let (qq, qp, aa, ap) = (Bound::Finite(q("-1/2")), q("0"), q("1"), Bound::Finite(q("3")));
        let b = alpha_boxes(&sv, &qq, &qp, &aa, &ap).unwrap();
        let contract = Contract::BoxesBullets {
            q: qq,
            q_prime: qp,
            a: aa,
            a_prime: ap,
        };
        let report = verify_automorphism(&b.alpha, &sv, &contract);
        assert!(report.passed, "{report}");
    }

    #[test]
    fn corrupted_table_fails_with_witness() {
        let a = OrderAutomorphism::from_raw_anchors(vec![
            (q("0"), q("0")),
            (q("1"), q("3")),
            (q("2"), q("2")),
            (q("3"), q("3")),
        ]);
        let report = verify_automorphism(&a, &p("pt(1)"), &Contract::StrictGrowth);
        assert!(!report.passed);
        let first = &report.checks[0];
        assert!(!first.passed);
        assert_eq!(first.detail, "anchors 1->3 and 2->2");
        assert!(report.counterexample.unwrap().contains("1->3"));
    }

    #[test]
    fn report_independent_of_execution() {
        let sv = p("pt(0) U pt(1) U pt(2)");
        let a = alpha_move_interior(&sv, &q("1")).unwrap();
        let c = Contract::FixesAllBut(q("1"));
        assert_eq!(
            verify_automorphism_with(&a, &sv, &c, Execution::Sequential),
            verify_automorphism_with(&a, &sv, &c, Execution::Parallel)
        );
    }
}
