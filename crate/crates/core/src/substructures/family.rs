//! Ovoid and spread verification, and exact-cover backtracking search.
//!
//! An ovoid is a set of points meeting every line exactly once, a spread a
//! set of lines covering every point exactly once. Both are exact covers:
//! of lines by points, and of points by lines.

use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::incidence::IncidenceStructure;
use crate::par::{self, Execution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubstructureKind {
    Ovoid,
    PartialOvoid,
    Spread,
    PartialSpread,
}

impl SubstructureKind {
    fn on_points(self) -> bool {
        matches!(self, SubstructureKind::Ovoid | SubstructureKind::PartialOvoid)
    }
}

impl fmt::Display for SubstructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubstructureKind::Ovoid => "ovoid",
            SubstructureKind::PartialOvoid => "partial-ovoid",
            SubstructureKind::Spread => "spread",
            SubstructureKind::PartialSpread => "partial-spread",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubstructureWitness {
    Repeated(usize),
    CollinearPoints { a: usize, b: usize, line: usize },
    IntersectingLines { a: usize, b: usize, point: usize },
    UncoveredLine(usize),
    UncoveredPoint(usize),
}

impl fmt::Display for SubstructureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubstructureWitness::Repeated(x) => write!(f, "member {x} listed twice"),
            SubstructureWitness::CollinearPoints { a, b, line } => {
                write!(f, "points {a} and {b} are collinear on line {line}")
            }
            SubstructureWitness::IntersectingLines { a, b, point } => {
                write!(f, "lines {a} and {b} meet in point {point}")
            }
            SubstructureWitness::UncoveredLine(l) => write!(f, "line {l} misses the set"),
            SubstructureWitness::UncoveredPoint(p) => write!(f, "point {p} is on no member line"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstructureVerdict {
    pub kind: SubstructureKind,
    pub valid: bool,
    pub witness: Option<SubstructureWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstructureError {
    #[error("{what} index {index} out of range")]
    OutOfRange { what: &'static str, index: usize },
}

pub fn classify_substructure(
    g: &IncidenceStructure,
    kind: SubstructureKind,
    members: &[usize],
) -> Result<SubstructureVerdict, SubstructureError> {
    let (what, range) = if kind.on_points() {
        ("point", g.point_count())
    } else {
        ("line", g.line_count())
    };
    if let Some(&i) = members.iter().find(|&&i| i >= range) {
        return Err(SubstructureError::OutOfRange { what, index: i });
    }
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    let witness = first_witness(g, kind, &sorted);
    Ok(SubstructureVerdict {
        kind,
        valid: witness.is_none(),
        witness,
    })
}

fn first_witness(g: &IncidenceStructure, kind: SubstructureKind, m: &[usize]) -> Option<SubstructureWitness> {
    if let Some(w) = m.windows(2).find(|w| w[0] == w[1]) {
        return Some(SubstructureWitness::Repeated(w[0]));
    }
    if kind.on_points() {
        for (i, &a) in m.iter().enumerate() {
            for &b in &m[i + 1..] {
                if let Some(line) = g.line_through(a, b) {
                    return Some(SubstructureWitness::CollinearPoints { a, b, line });
                }
            }
        }
        if kind == SubstructureKind::Ovoid {
            let mut hit = FixedBitSet::with_capacity(g.line_count());
            m.iter()
                .for_each(|&p| g.lines_through(p).iter().for_each(|&l| hit.insert(l)));
            if let Some(l) = (0..g.line_count()).find(|&l| !hit.contains(l)) {
                return Some(SubstructureWitness::UncoveredLine(l));
            }
        }
    } else {
        for (i, &a) in m.iter().enumerate() {
            for &b in &m[i + 1..] {
                if let Some(point) = g.lines_meet(a, b) {
                    return Some(SubstructureWitness::IntersectingLines { a, b, point });
                }
            }
        }
        if kind == SubstructureKind::Spread {
            let mut hit = FixedBitSet::with_capacity(g.point_count());
            m.iter().for_each(|&l| g.line(l).iter().for_each(|&p| hit.insert(p)));
            if let Some(p) = (0..g.point_count()).find(|&p| !hit.contains(p)) {
                return Some(SubstructureWitness::UncoveredPoint(p));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchKind {
    Ovoid,
    Spread,
}

impl fmt::Display for SearchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchKind::Ovoid => "ovoid",
            SearchKind::Spread => "spread",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SearchMode {
    First,
    All,
    Count,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchStatus {
    /// The search space was exhausted (or `first` found its solution).
    Complete,
    /// More solutions exist than the limit allowed.
    LimitExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub kind: SearchKind,
    pub mode: SearchMode,
    /// Member lists, each ascending; the list itself is sorted.
    pub solutions: Vec<Vec<usize>>,
    pub count: u64,
    pub status: SearchStatus,
}

impl SearchOutcome {
    pub fn found(&self) -> bool {
        self.count > 0
    }
}

pub fn search_substructures(
    g: &IncidenceStructure,
    kind: SearchKind,
    mode: SearchMode,
    limit: Option<u64>,
) -> SearchOutcome {
    search_substructures_with(g, kind, mode, limit, Execution::default())
}

/// Backtracking over uncovered items, branching on the item with the fewest
/// live options (ties to the lowest index) and on its options in ascending
/// order. The root branches run independently under
/// [`Execution::Parallel`]; results are merged in branch order.
pub fn search_substructures_with(
    g: &IncidenceStructure,
    kind: SearchKind,
    mode: SearchMode,
    limit: Option<u64>,
    exec: Execution,
) -> SearchOutcome {
    let cover = ExactCover::new(g, kind);
    let cap = match mode {
        SearchMode::First => 1,
        _ => limit.map_or(u64::MAX, |l| l.saturating_add(1)),
    };
    let root = cover.root();

    let (solutions, count) = match cover.pivot(&root) {
        None => {
            // Nothing to cover: the empty family is the unique solution.
            let done = root.covered.count_ones(..) == cover.items;
            (if done { vec![Vec::new()] } else { Vec::new() }, done as u64)
        }
        Some(branches) if mode == SearchMode::First => {
            let first = par::find_map_first(exec, 0..branches.len(), |i| {
                let mut sink = Sink::new(1, true);
                cover.descend(&root, branches[i], &mut sink);
                sink.solutions.pop()
            });
            let n = first.is_some() as u64;
            (first.into_iter().collect(), n)
        }
        Some(branches) => {
            let keep = mode == SearchMode::All;
            let parts = par::map_slice(exec, &branches, |&opt| {
                let mut sink = Sink::new(cap, keep);
                cover.descend(&root, opt, &mut sink);
                sink
            });
            let mut solutions = Vec::new();
            let mut count = 0u64;
            for part in parts {
                count = count.saturating_add(part.count);
                solutions.extend(part.solutions);
            }
            (solutions, count)
        }
    };

    let (mut solutions, count, status) = match (mode, limit) {
        (SearchMode::First, _) | (_, None) => (solutions, count, SearchStatus::Complete),
        (_, Some(l)) if count > l => {
            let mut s = solutions;
            s.truncate(l as usize);
            (s, l, SearchStatus::LimitExceeded)
        }
        _ => (solutions, count, SearchStatus::Complete),
    };
    solutions.sort();
    SearchOutcome {
        kind,
        mode,
        solutions,
        count,
        status,
    }
}

struct Sink {
    cap: u64,
    keep: bool,
    count: u64,
    solutions: Vec<Vec<usize>>,
}

impl Sink {
    fn new(cap: u64, keep: bool) -> Self {
        Self {
            cap,
            keep,
            count: 0,
            solutions: Vec::new(),
        }
    }

    fn full(&self) -> bool {
        self.count >= self.cap
    }

    fn emit(&mut self, chosen: &[usize]) {
        self.count += 1;
        if self.keep {
            let mut s = chosen.to_vec();
            s.sort_unstable();
            self.solutions.push(s);
        }
    }
}

struct ExactCover {
    items: usize,
    /// Items covered by each option.
    option_items: Vec<FixedBitSet>,
    /// Options covering each item, ascending.
    item_options: Vec<Vec<usize>>,
    /// Options sharing an item with each option (itself included).
    conflicts: Vec<FixedBitSet>,
}

#[derive(Clone)]
struct State {
    covered: FixedBitSet,
    live: FixedBitSet,
    chosen: Vec<usize>,
}

impl ExactCover {
    fn new(g: &IncidenceStructure, kind: SearchKind) -> Self {
        let (items, item_options): (usize, Vec<Vec<usize>>) = match kind {
            SearchKind::Ovoid => (
                g.line_count(),
                (0..g.line_count()).map(|l| g.line(l).to_vec()).collect(),
            ),
            SearchKind::Spread => (
                g.point_count(),
                (0..g.point_count()).map(|p| g.lines_through(p).to_vec()).collect(),
            ),
        };
        let options = match kind {
            SearchKind::Ovoid => g.point_count(),
            SearchKind::Spread => g.line_count(),
        };
        let mut option_items = vec![FixedBitSet::with_capacity(items); options];
        for (item, opts) in item_options.iter().enumerate() {
            for &o in opts {
                option_items[o].insert(item);
            }
        }
        let conflicts = (0..options)
            .map(|o| {
                let mut c = FixedBitSet::with_capacity(options);
                for item in option_items[o].ones() {
                    item_options[item].iter().for_each(|&x| c.insert(x));
                }
                c.insert(o);
                c
            })
            .collect();
        Self {
            items,
            option_items,
            item_options,
            conflicts,
        }
    }

    fn root(&self) -> State {
        let mut live = FixedBitSet::with_capacity(self.option_items.len());
        live.insert_range(..);
        State {
            covered: FixedBitSet::with_capacity(self.items),
            live,
            chosen: Vec::new(),
        }
    }

    /// Options for the most constrained uncovered item; `None` when every
    /// item is covered. An empty list means a dead end.
    fn pivot(&self, s: &State) -> Option<Vec<usize>> {
        let mut best: Option<(usize, usize)> = None;
        for item in 0..self.items {
            if s.covered.contains(item) {
                continue;
            }
            let n = self.item_options[item].iter().filter(|&&o| s.live.contains(o)).count();
            if best.is_none_or(|(_, b)| n < b) {
                best = Some((item, n));
                if n == 0 {
                    break;
                }
            }
        }
        best.map(|(item, _)| {
            self.item_options[item]
                .iter()
                .copied()
                .filter(|&o| s.live.contains(o))
                .collect()
        })
    }

    fn descend(&self, s: &State, opt: usize, sink: &mut Sink) {
        let mut next = s.clone();
        next.covered.union_with(&self.option_items[opt]);
        next.live.difference_with(&self.conflicts[opt]);
        next.chosen.push(opt);
        self.solve(&next, sink);
    }

    fn solve(&self, s: &State, sink: &mut Sink) {
        if sink.full() {
            return;
        }
        match self.pivot(s) {
            None => sink.emit(&s.chosen),
            Some(opts) => {
                for o in opts {
                    self.descend(s, o, sink);
                    if sink.full() {
                        return;
                    }
                }
            }
        }
    }
}
