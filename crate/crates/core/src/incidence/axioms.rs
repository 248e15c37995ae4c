//! The three quadrangle axioms, decided on the bipartite incidence graph.
//!
//! An ordinary k-gon is an induced cycle of length 2k in the incidence
//! graph (points and lines alternate, no extra incidences among the cycle's
//! elements). Axiom (i) forbids induced 4- and 6-cycles, axiom (ii) asks for
//! an induced 8-cycle through every pair of elements, axiom (iii) asks for
//! an induced 10-cycle somewhere.

use std::fmt;
use std::ops::Deref;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use super::{Element, IncidenceStructure};
use crate::par::{self, Execution};

/// A parameter of a polygon: a positive integer or countably infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParameterValue {
    Finite(u64),
    CountablyInfinite,
}

impl ParameterValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            ParameterValue::Finite(v) => Some(v),
            ParameterValue::CountablyInfinite => None,
        }
    }
}

impl fmt::Display for ParameterValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParameterValue::Finite(v) => write!(f, "{v}"),
            ParameterValue::CountablyInfinite => f.write_str("omega"),
        }
    }
}

/// `s + 1` points per line, `t + 1` lines per point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GqOrder {
    pub s: ParameterValue,
    pub t: ParameterValue,
}

impl GqOrder {
    pub fn finite(s: u64, t: u64) -> Self {
        Self {
            s: ParameterValue::Finite(s),
            t: ParameterValue::Finite(t),
        }
    }
}

impl fmt::Display for GqOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.s, self.t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Why a structure is not a generalized quadrangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GqWitness {
    /// Induced 4-cycle: two points on two common lines.
    Digon(Vec<Element>),
    /// Induced 6-cycle.
    Triangle(Vec<Element>),
    /// Two distinct elements lying in no ordinary quadrangle.
    NoQuadrangle(Element, Element),
    /// The search for an ordinary pentagon was exhaustive and found none.
    NoPentagon,
    /// Line sizes or point degrees are not constant.
    NonUniform {
        line_sizes: Vec<usize>,
        point_degrees: Vec<usize>,
    },
}

impl fmt::Display for GqWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycle = |f: &mut fmt::Formatter<'_>, name: &str, c: &[Element]| {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "{name} {}", parts.join("-"))
        };
        match self {
            GqWitness::Digon(c) => cycle(f, "digon", c),
            GqWitness::Triangle(c) => cycle(f, "triangle", c),
            GqWitness::NoQuadrangle(a, b) => write!(f, "no ordinary quadrangle through {a} and {b}"),
            GqWitness::NoPentagon => f.write_str("no ordinary pentagon"),
            GqWitness::NonUniform {
                line_sizes,
                point_degrees,
            } => write!(
                f,
                "non-constant order: line sizes {line_sizes:?}, point degrees {point_degrees:?}"
            ),
        }
    }
}

/// Per-axiom outcome. Axiom (ii) is reported under both readings: distinct
/// pairs, and single elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomSummary {
    pub no_digon: bool,
    pub no_triangle: bool,
    pub pairs_in_quadrangle: bool,
    pub singletons_in_quadrangle: bool,
    pub pentagon: bool,
    pub uniform: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GqReport {
    pub verdict: Verdict,
    pub order: Option<GqOrder>,
    pub witness: Option<GqWitness>,
    pub axioms: AxiomSummary,
}

impl GqReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Debug, Clone, Error)]
#[error("not a generalized quadrangle: {}", .0.witness.as_ref().map(ToString::to_string).unwrap_or_default())]
pub struct NotAQuadrangle(pub Box<GqReport>);

/// An incidence structure that passed [`validate_gq`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedQuadrangle {
    structure: IncidenceStructure,
    order: GqOrder,
}

impl GeneralizedQuadrangle {
    pub fn new(structure: IncidenceStructure) -> Result<Self, NotAQuadrangle> {
        let report = validate_gq(&structure);
        match report.order {
            Some(order) if report.passed() => Ok(Self { structure, order }),
            _ => Err(NotAQuadrangle(Box::new(report))),
        }
    }

    pub fn order(&self) -> GqOrder {
        self.order
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn into_structure(self) -> IncidenceStructure {
        self.structure
    }
}

impl Deref for GeneralizedQuadrangle {
    type Target = IncidenceStructure;

    fn deref(&self) -> &IncidenceStructure {
        &self.structure
    }
}

/// Order of a structure that validates as a quadrangle.
pub fn order_of(g: &IncidenceStructure) -> Result<GqOrder, NotAQuadrangle> {
    let report = validate_gq(g);
    match report.order {
        Some(order) if report.passed() => Ok(order),
        _ => Err(NotAQuadrangle(Box::new(report))),
    }
}

pub fn validate_gq(g: &IncidenceStructure) -> GqReport {
    validate_gq_with(g, Execution::default())
}

pub fn validate_gq_with(g: &IncidenceStructure, exec: Execution) -> GqReport {
    let graph = IncidenceGraph::new(g);
    let n = graph.vertex_count();

    let digon = graph.first_induced_cycle(4, exec);
    let triangle = graph.first_induced_cycle(6, exec);

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let missing_pair = par::find_map_first(exec, 0..pairs.len(), |i| {
        let (a, b) = pairs[i];
        graph.induced_cycle_through(a, Some(b), 8).is_none().then_some((a, b))
    });
    let singletons_ok = par::all(exec, 0..n, |v| graph.induced_cycle_through(v, None, 8).is_some());
    let pentagon = graph.first_induced_cycle(10, exec);

    let line_sizes = distinct(g.lines().iter().map(Vec::len));
    let point_degrees = distinct((0..g.point_count()).map(|p| g.lines_through(p).len()));
    let uniform = line_sizes.len() == 1 && point_degrees.len() == 1;
    let order = uniform.then(|| {
        GqOrder::finite(
            (line_sizes[0] as u64).saturating_sub(1),
            (point_degrees[0] as u64).saturating_sub(1),
        )
    });

    let axioms = AxiomSummary {
        no_digon: digon.is_none(),
        no_triangle: triangle.is_none(),
        pairs_in_quadrangle: missing_pair.is_none(),
        singletons_in_quadrangle: singletons_ok,
        pentagon: pentagon.is_some(),
        uniform,
    };

    let witness = if let Some(c) = digon {
        Some(GqWitness::Digon(graph.elements(&c)))
    } else if let Some(c) = triangle {
        Some(GqWitness::Triangle(graph.elements(&c)))
    } else if let Some((a, b)) = missing_pair {
        Some(GqWitness::NoQuadrangle(graph.element(a), graph.element(b)))
    } else if pentagon.is_none() {
        Some(GqWitness::NoPentagon)
    } else if !uniform {
        Some(GqWitness::NonUniform {
            line_sizes,
            point_degrees,
        })
    } else {
        None
    };

    match witness {
        Some(w) => GqReport {
            verdict: Verdict::Fail,
            order: None,
            witness: Some(w),
            axioms,
        },
        None => GqReport {
            verdict: Verdict::Pass,
            order,
            witness: None,
            axioms,
        },
    }
}

fn distinct(values: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = values.collect();
    v.sort_unstable();
    v.dedup();
    v
}

const UNREACHABLE: u8 = u8::MAX;

/// Bipartite incidence graph: vertices `0..P` are points, `P..P+L` lines.
pub(crate) struct IncidenceGraph {
    pub(crate) points: usize,
    pub(crate) adj: Vec<Vec<usize>>,
    pub(crate) adj_bits: Vec<FixedBitSet>,
    dist: Vec<Vec<u8>>,
}

impl IncidenceGraph {
    pub(crate) fn new(g: &IncidenceStructure) -> Self {
        let points = g.point_count();
        let n = points + g.line_count();
        let mut adj = vec![Vec::new(); n];
        for (li, line) in g.lines().iter().enumerate() {
            for &p in line {
                adj[p].push(points + li);
                adj[points + li].push(p);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        let adj_bits = adj
            .iter()
            .map(|nbrs| {
                let mut b = FixedBitSet::with_capacity(n);
                nbrs.iter().for_each(|&v| b.insert(v));
                b
            })
            .collect();
        let dist = (0..n).map(|s| bfs(&adj, s)).collect();
        Self {
            points,
            adj,
            adj_bits,
            dist,
        }
    }

    pub(crate) fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub(crate) fn element(&self, v: usize) -> Element {
        if v < self.points {
            Element::Point(v)
        } else {
            Element::Line(v - self.points)
        }
    }

    fn elements(&self, cycle: &[usize]) -> Vec<Element> {
        cycle.iter().map(|&v| self.element(v)).collect()
    }

    /// Lowest-start induced cycle of the given length, searching starts in
    /// ascending order and restricting each search to larger vertices.
    fn first_induced_cycle(&self, len: usize, exec: Execution) -> Option<Vec<usize>> {
        par::find_map_first(exec, 0..self.vertex_count(), |start| {
            let mut s = CycleSearch::new(self, start, None, len, start);
            s.run().then_some(s.path)
        })
    }

    /// An induced cycle of length `len` through `start` (and `must`, if
    /// given).
    pub(crate) fn induced_cycle_through(&self, start: usize, must: Option<usize>, len: usize) -> Option<Vec<usize>> {
        let mut s = CycleSearch::new(self, start, must, len, 0);
        s.run().then_some(s.path)
    }
}

fn bfs(adj: &[Vec<usize>], s: usize) -> Vec<u8> {
    let mut dist = vec![UNREACHABLE; adj.len()];
    dist[s] = 0;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if dist[w] == UNREACHABLE {
                dist[w] = dist[v].saturating_add(1).min(UNREACHABLE - 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

struct CycleSearch<'a> {
    graph: &'a IncidenceGraph,
    start: usize,
    must: Option<usize>,
    len: usize,
    min_vertex: usize,
    path: Vec<usize>,
    on_path: FixedBitSet,
}

impl<'a> CycleSearch<'a> {
    fn new(graph: &'a IncidenceGraph, start: usize, must: Option<usize>, len: usize, min_vertex: usize) -> Self {
        let mut on_path = FixedBitSet::with_capacity(graph.vertex_count());
        on_path.insert(start);
        Self {
            graph,
            start,
            must,
            len,
            min_vertex,
            path: vec![start],
            on_path,
        }
    }

    fn run(&mut self) -> bool {
        if self.must == Some(self.start) {
            self.must = None;
        }
        self.extend()
    }

    fn extend(&mut self) -> bool {
        let g = self.graph;
        let last = *self.path.last().expect("path never empty");
        let k = self.path.len() + 1;
        let closing = k == self.len;
        let budget = (self.len + 1 - k) as u8;
        for &w in &g.adj[last] {
            if w < self.min_vertex || self.on_path.contains(w) {
                continue;
            }
            if g.dist[w][self.start] > budget {
                continue;
            }
            if let Some(m) = self.must {
                if !self.on_path.contains(m) && w != m {
                    let via = g.dist[w][m] as u16 + g.dist[m][self.start] as u16;
                    if via > budget as u16 {
                        continue;
                    }
                }
            }
            let touching = g.adj_bits[w].intersection_count(&self.on_path);
            if closing {
                let closes = g.adj_bits[w].contains(self.start);
                if !closes || touching != 2 {
                    continue;
                }
                if let Some(m) = self.must {
                    if !self.on_path.contains(m) && w != m {
                        continue;
                    }
                }
                self.path.push(w);
                return true;
            }
            if touching != 1 {
                continue;
            }
            self.path.push(w);
            self.on_path.insert(w);
            if self.extend() {
                return true;
            }
            self.on_path.set(w, false);
            self.path.pop();
        }
        false
    }
}
