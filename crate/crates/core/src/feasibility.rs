//! Classical necessary conditions on the parameters of thick generalized
//! polygons and projective planes.
//!
//! Passing every test never proves existence, so a clean verdict is
//! reported as "feasible so far". Only the explicitly stated conditions are
//! implemented; the further divisibility conditions of Feit and Higman are
//! out of scope.

use std::fmt;

use num_integer::Roots;

pub use crate::incidence::ParameterValue;

pub const FEIT_HIGMAN: &str = "Feit & Higman (1964)";
pub const HIGMAN: &str = "Higman (1975)";
pub const HAEMERS_ROOS: &str = "Haemers & Roos (1981)";
pub const BRUCK_RYSER: &str = "Bruck & Ryser (1949)";

/// Gonality and the two parameters of a hypothetical generalized polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FeasibilityQuery {
    pub n: u32,
    pub s: ParameterValue,
    pub t: ParameterValue,
}

impl FeasibilityQuery {
    pub fn finite(n: u32, s: u64, t: u64) -> Self {
        Self {
            n,
            s: ParameterValue::Finite(s),
            t: ParameterValue::Finite(t),
        }
    }

    fn thick_finite(&self) -> Result<(u64, u64), Outcome> {
        match (self.s, self.t) {
            (ParameterValue::Finite(s), ParameterValue::Finite(t)) if s >= 2 && t >= 2 => Ok((s, t)),
            (ParameterValue::Finite(_), ParameterValue::Finite(_)) => {
                Err(Outcome::NotApplicable("parameters are not thick (s, t >= 2)".into()))
            }
            _ => Err(Outcome::NotApplicable("infinite parameter".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
    NotApplicable(String),
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail(_) => "fail",
            Outcome::NotApplicable(_) => "n/a",
        }
    }

    pub fn detail(&self) -> &str {
        match self {
            Outcome::Pass => "",
            Outcome::Fail(d) | Outcome::NotApplicable(d) => d,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestEntry {
    pub name: &'static str,
    pub outcome: Outcome,
    pub citation: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    FeasibleSoFar,
    Infeasible,
}

impl fmt::Display for Overall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Overall::FeasibleSoFar => "feasible-so-far",
            Overall::Infeasible => "infeasible",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParameterVerdict {
    pub overall: Overall,
    pub tests: Vec<TestEntry>,
}

impl ParameterVerdict {
    fn from_tests(tests: Vec<TestEntry>) -> Self {
        let overall = if tests.iter().any(|t| t.outcome.is_fail()) {
            Overall::Infeasible
        } else {
            Overall::FeasibleSoFar
        };
        Self { overall, tests }
    }

    /// Plain-text table: test, verdict, citation, detail.
    pub fn render_table(&self) -> String {
        let mut out = format!("{:<16} {:<6} {:<24} detail\n", "test", "result", "citation");
        for t in &self.tests {
            out.push_str(&format!(
                "{:<16} {:<6} {:<24} {}",
                t.name,
                t.outcome.label(),
                t.citation,
                t.outcome.detail()
            ));
            let trimmed = out.trim_end().len();
            out.truncate(trimmed);
            out.push('\n');
        }
        out.push_str(&format!("overall: {}\n", self.overall));
        out
    }
}

/// Gonality restriction (n in {3, 4, 6, 8}) and, for octagons, `2st` must
/// be a perfect square.
pub fn feit_higman(q: &FeasibilityQuery) -> Outcome {
    let (s, t) = match q.thick_finite() {
        Ok(p) => p,
        Err(na) => return na,
    };
    if ![3, 4, 6, 8].contains(&q.n) {
        return Outcome::Fail(format!("no thick finite generalized {}-gon exists", q.n));
    }
    if q.n == 8 {
        let v = 2 * s * t;
        let r = v.sqrt();
        if r * r != v {
            return Outcome::Fail(format!("2st = {v} is not a perfect square"));
        }
    }
    Outcome::Pass
}

/// `s <= t^2` and `t <= s^2`, for quadrangles and octagons.
pub fn higman_inequality(q: &FeasibilityQuery) -> Outcome {
    if q.n != 4 && q.n != 8 {
        return Outcome::NotApplicable(format!("only for n = 4, 8 (n = {})", q.n));
    }
    bounded_by_power(q, 2)
}

/// `s <= t^3` and `t <= s^3`, for hexagons.
pub fn haemers_roos(q: &FeasibilityQuery) -> Outcome {
    if q.n != 6 {
        return Outcome::NotApplicable(format!("only for n = 6 (n = {})", q.n));
    }
    bounded_by_power(q, 3)
}

fn bounded_by_power(q: &FeasibilityQuery, k: u32) -> Outcome {
    let (s, t) = match q.thick_finite() {
        Ok(p) => p,
        Err(na) => return na,
    };
    let pow = |x: u64| (x as u128).pow(k);
    if (s as u128) > pow(t) {
        Outcome::Fail(format!("s = {s} > t^{k} = {}", pow(t)))
    } else if (t as u128) > pow(s) {
        Outcome::Fail(format!("t = {t} > s^{k} = {}", pow(s)))
    } else {
        Outcome::Pass
    }
}

/// A projective plane of order m with m = 1, 2 (mod 4) needs m to be a sum
/// of two squares.
pub fn bruck_ryser(m: u64) -> Outcome {
    if m < 2 {
        return Outcome::NotApplicable(format!("order {m} < 2"));
    }
    if m % 4 != 1 && m % 4 != 2 {
        return Outcome::Pass;
    }
    match sum_of_two_squares(m) {
        Some(_) => Outcome::Pass,
        None => Outcome::Fail(format!("{m} = {} (mod 4) is not a sum of two squares", m % 4)),
    }
}

/// Decides representability by factorization: every prime `3 (mod 4)` must
/// divide `m` to an even power.
pub fn is_sum_of_two_squares(m: u64) -> bool {
    if m == 0 {
        return true;
    }
    let mut rest = m;
    while rest.is_multiple_of(2) {
        rest /= 2;
    }
    let mut p = 3u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if p % 4 == 3 && e % 2 == 1 {
                return false;
            }
        }
        p += 2;
    }
    rest % 4 != 3
}

/// `(a, b)` with `a <= b` and `a^2 + b^2 = m`, smallest `a` first.
pub fn sum_of_two_squares(m: u64) -> Option<(u64, u64)> {
    if !is_sum_of_two_squares(m) {
        return None;
    }
    (0..=(m / 2).sqrt()).find_map(|a| {
        let rest = m - a * a;
        let b = rest.sqrt();
        (b * b == rest && a <= b).then_some((a, b))
    })
}

/// Every applicable test; projective planes (n = 3, s = t) also get the
/// Bruck-Ryser test.
pub fn feasibility_report(q: &FeasibilityQuery) -> ParameterVerdict {
    let mut tests = vec![
        TestEntry {
            name: "feit-higman",
            outcome: feit_higman(q),
            citation: FEIT_HIGMAN,
        },
        TestEntry {
            name: "higman",
            outcome: higman_inequality(q),
            citation: HIGMAN,
        },
        TestEntry {
            name: "haemers-roos",
            outcome: haemers_roos(q),
            citation: HAEMERS_ROOS,
        },
    ];
    if let (3, ParameterValue::Finite(s), ParameterValue::Finite(t)) = (q.n, q.s, q.t) {
        if s == t {
            tests.push(TestEntry {
                name: "bruck-ryser",
                outcome: bruck_ryser(s),
                citation: BRUCK_RYSER,
            });
        }
    }
    ParameterVerdict::from_tests(tests)
}

/// Report for a projective plane of order m.
pub fn plane_report(m: u64) -> ParameterVerdict {
    feasibility_report(&FeasibilityQuery::finite(3, m, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gonality_restriction() {
        assert!(feit_higman(&FeasibilityQuery::finite(5, 2, 2)).is_fail());
        assert!(feit_higman(&FeasibilityQuery::finite(7, 3, 3)).is_fail());
        assert_eq!(feit_higman(&FeasibilityQuery::finite(4, 2, 2)), Outcome::Pass);
    }

    #[test]
    fn octagon_square_condition() {
        assert_eq!(feit_higman(&FeasibilityQuery::finite(8, 2, 4)), Outcome::Pass);
        assert!(feit_higman(&FeasibilityQuery::finite(8, 4, 4)).is_fail());
    }

    #[test]
    fn higman_bounds() {
        assert!(higman_inequality(&FeasibilityQuery::finite(4, 2, 5)).is_fail());
        assert_eq!(higman_inequality(&FeasibilityQuery::finite(4, 2, 2)), Outcome::Pass);
        assert_eq!(higman_inequality(&FeasibilityQuery::finite(4, 4, 16)), Outcome::Pass);
        assert!(matches!(
            higman_inequality(&FeasibilityQuery::finite(6, 2, 2)),
            Outcome::NotApplicable(_)
        ));
    }

    #[test]
    fn haemers_roos_bounds() {
        assert!(haemers_roos(&FeasibilityQuery::finite(6, 2, 9)).is_fail());
        assert_eq!(haemers_roos(&FeasibilityQuery::finite(6, 3, 3)), Outcome::Pass);
        assert_eq!(haemers_roos(&FeasibilityQuery::finite(6, 8, 2)), Outcome::Pass);
    }

    #[test]
    fn plane_orders() {
        assert!(bruck_ryser(6).is_fail());
        assert_eq!(bruck_ryser(4), Outcome::Pass);
        assert_eq!(bruck_ryser(10), Outcome::Pass);
        assert_eq!(plane_report(6).overall, Overall::Infeasible);
        assert_eq!(plane_report(5).overall, Overall::FeasibleSoFar);
    }

    #[test]
    fn two_squares_examples() {
        assert_eq!(sum_of_two_squares(0), Some((0, 0)));
        assert_eq!(sum_of_two_squares(5), Some((1, 2)));
        assert_eq!(sum_of_two_squares(21), None);
        assert_eq!(sum_of_two_squares(10), Some((1, 3)));
        assert_eq!(sum_of_two_squares(9), Some((0, 3)));
        assert_eq!(sum_of_two_squares(2), Some((1, 1)));
    }

    #[test]
    fn infinite_parameters_are_not_applicable() {
        let q = FeasibilityQuery {
            n: 4,
            s: ParameterValue::CountablyInfinite,
            t: ParameterValue::Finite(3),
        };
        let r = feasibility_report(&q);
        assert_eq!(r.overall, Overall::FeasibleSoFar);
        assert!(r.tests.iter().all(|t| matches!(t.outcome, Outcome::NotApplicable(_))));
    }

    #[test]
    fn seven_gon_is_infeasible() {
        for (s, t) in [(2, 2), (3, 5), (7, 7)] {
            assert_eq!(
                feasibility_report(&FeasibilityQuery::finite(7, s, t)).overall,
                Overall::Infeasible
            );
        }
    }

    #[test]
    fn table_lists_every_test_with_citation() {
        let r = feasibility_report(&FeasibilityQuery::finite(8, 2, 4));
        let table = r.render_table();
        assert!(table.contains(FEIT_HIGMAN));
        assert!(table.contains("overall: feasible-so-far"));
        assert!(table.lines().all(|l| l == l.trim_end()));
    }
}
