//! Automorphism groups of small incidence structures by backtracking on
//! the incidence graph.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::incidence::{Element, IncidenceGraph, IncidenceStructure};
use crate::par::{self, Execution};

/// A collineation: a point permutation and a line permutation preserving
/// incidence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteAutomorphism {
    point_perm: Vec<usize>,
    line_perm: Vec<usize>,
}

impl FiniteAutomorphism {
    pub fn identity(points: usize, lines: usize) -> Self {
        Self {
            point_perm: (0..points).collect(),
            line_perm: (0..lines).collect(),
        }
    }

    /// Builds an automorphism after checking both permutations and incidence.
    pub fn new(g: &IncidenceStructure, point_perm: Vec<usize>, line_perm: Vec<usize>) -> Option<Self> {
        let a = Self { point_perm, line_perm };
        (is_permutation(&a.point_perm, g.point_count())
            && is_permutation(&a.line_perm, g.line_count())
            && a.preserves_incidence(g))
        .then_some(a)
    }

    pub fn point_perm(&self) -> &[usize] {
        &self.point_perm
    }

    pub fn line_perm(&self) -> &[usize] {
        &self.line_perm
    }

    pub fn apply(&self, e: Element) -> Element {
        match e {
            Element::Point(p) => Element::Point(self.point_perm[p]),
            Element::Line(l) => Element::Line(self.line_perm[l]),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.point_perm.iter().enumerate().all(|(i, &x)| i == x)
            && self.line_perm.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            point_perm: self.point_perm.iter().map(|&p| other.point_perm[p]).collect(),
            line_perm: self.line_perm.iter().map(|&l| other.line_perm[l]).collect(),
        }
    }

    pub fn inverse(&self) -> Self {
        fn inv(p: &[usize]) -> Vec<usize> {
            let mut out = vec![0; p.len()];
            p.iter().enumerate().for_each(|(i, &x)| out[x] = i);
            out
        }
        Self {
            point_perm: inv(&self.point_perm),
            line_perm: inv(&self.line_perm),
        }
    }

    pub fn preserves_incidence(&self, g: &IncidenceStructure) -> bool {
        g.lines().iter().enumerate().all(|(l, pts)| {
            let image = self.line_perm[l];
            pts.iter().all(|&p| g.is_incident(self.point_perm[p], image))
        })
    }
}

impl fmt::Display for FiniteAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(
            f,
            "points [{}] lines [{}]",
            join(&self.point_perm),
            join(&self.line_perm)
        )
    }
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    if p.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    p.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("structure has {points} points, above the cap of {max}")]
    TooLarge { points: usize, max: usize },
    #[error("more than {max} automorphisms")]
    TooManyElements { max: usize },
    #[error("element set is not closed: {0}")]
    NotClosed(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupOptions {
    pub max_points: usize,
    pub max_elements: usize,
    pub exec: Execution,
}

impl Default for GroupOptions {
    fn default() -> Self {
        Self {
            max_points: 60,
            max_elements: 100_000,
            exec: Execution::default(),
        }
    }
}

/// A complete, sorted list of group elements. The identity sorts first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    points: usize,
    lines: usize,
    elements: Vec<FiniteAutomorphism>,
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[FiniteAutomorphism] {
        &self.elements
    }

    pub fn contains(&self, a: &FiniteAutomorphism) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    pub fn identity(&self) -> FiniteAutomorphism {
        FiniteAutomorphism::identity(self.points, self.lines)
    }

    /// Checks identity, inverses and every pairwise product.
    pub fn verify_closure(&self, exec: Execution) -> Result<(), GroupError> {
        if !self.contains(&self.identity()) {
            return Err(GroupError::NotClosed("identity missing".into()));
        }
        let n = self.elements.len();
        let bad = par::find_map_first(exec, 0..n, |i| {
            let a = &self.elements[i];
            if !self.contains(&a.inverse()) {
                return Some(format!("inverse of element {i} missing"));
            }
            (0..n)
                .find(|&j| !self.contains(&a.then(&self.elements[j])))
                .map(|j| format!("product of elements {i} and {j} missing"))
        });
        bad.map_or(Ok(()), |m| Err(GroupError::NotClosed(m)))
    }

    /// Orbit of an element, ascending.
    pub fn orbit(&self, e: Element) -> Vec<Element> {
        let mut o: Vec<Element> = self.elements.iter().map(|a| a.apply(e)).collect();
        o.sort();
        o.dedup();
        o
    }

    fn filtered(&self, keep: impl Fn(&FiniteAutomorphism) -> bool) -> Self {
        Self {
            points: self.points,
            lines: self.lines,
            elements: self.elements.iter().filter(|a| keep(a)).cloned().collect(),
        }
    }
}

pub fn automorphism_group(g: &IncidenceStructure) -> Result<AutomorphismGroup, GroupError> {
    automorphism_group_with(g, GroupOptions::default())
}

/// Enumerates every incidence-preserving pair of permutations.
///
/// Vertices of the incidence graph are assigned in BFS order. A vertex with
/// an already placed BFS parent may only go to a neighbour of the parent's
/// image; candidates must share the (kind, degree, neighbour degrees)
/// invariant and agree on adjacency with every placed vertex.
pub fn automorphism_group_with(g: &IncidenceStructure, opts: GroupOptions) -> Result<AutomorphismGroup, GroupError> {
    if g.point_count() > opts.max_points {
        return Err(GroupError::TooLarge {
            points: g.point_count(),
            max: opts.max_points,
        });
    }
    let search = Search::new(g);
    let elements = if search.order.is_empty() {
        vec![FiniteAutomorphism::identity(0, 0)]
    } else {
        let root = search.order[0];
        let roots: Vec<usize> = search.candidates(&vec![None; search.n], &vec![false; search.n], 0);
        let parts = par::map_slice(opts.exec, &roots, |&img| {
            let mut image = vec![None; search.n];
            let mut used = vec![false; search.n];
            image[root] = Some(img);
            used[img] = true;
            let mut out = Vec::new();
            let ok = search.extend(1, &mut image, &mut used, &mut out, opts.max_elements);
            (ok, out)
        });
        let mut all = Vec::new();
        for (ok, out) in parts {
            if !ok || all.len() + out.len() > opts.max_elements {
                return Err(GroupError::TooManyElements { max: opts.max_elements });
            }
            all.extend(out);
        }
        all
    };
    let mut elements: Vec<FiniteAutomorphism> = elements;
    elements.sort();
    debug_assert!(elements.iter().all(|a| a.preserves_incidence(g)));
    Ok(AutomorphismGroup {
        points: g.point_count(),
        lines: g.line_count(),
        elements,
    })
}

struct Search {
    n: usize,
    points: usize,
    graph: IncidenceGraph,
    class: Vec<usize>,
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
}

impl Search {
    fn new(g: &IncidenceStructure) -> Self {
        let graph = IncidenceGraph::new(g);
        let n = graph.vertex_count();
        let points = graph.points;

        let mut ids: BTreeMap<(bool, usize, Vec<usize>), usize> = BTreeMap::new();
        let class = (0..n)
            .map(|v| {
                let mut nd: Vec<usize> = graph.adj[v].iter().map(|&w| graph.adj[w].len()).collect();
                nd.sort_unstable();
                let key = (v < points, graph.adj[v].len(), nd);
                let next = ids.len();
                *ids.entry(key).or_insert(next)
            })
            .collect();

        let mut order = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in &graph.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(v);
                        queue.push_back(w);
                    }
                }
            }
        }
        Self {
            n,
            points,
            graph,
            class,
            order,
            parent,
        }
    }

    fn candidates(&self, image: &[Option<usize>], used: &[bool], depth: usize) -> Vec<usize> {
        let v = self.order[depth];
        let pool: Box<dyn Iterator<Item = usize>> = match self.parent[v] {
            Some(p) => Box::new(self.graph.adj[image[p].expect("parent placed first")].iter().copied()),
            None => Box::new(0..self.n),
        };
        pool.filter(|&w| !used[w] && self.class[w] == self.class[v] && self.consistent(v, w, image, used))
            .collect()
    }

    fn consistent(&self, v: usize, w: usize, image: &[Option<usize>], used: &[bool]) -> bool {
        let mut placed = 0;
        for &u in &self.graph.adj[v] {
            if let Some(iu) = image[u] {
                if !self.graph.adj_bits[w].contains(iu) {
                    return false;
                }
                placed += 1;
            }
        }
        // Injectivity makes equal counts equivalent to "non-edges map to
        // non-edges".
        let hit = self.graph.adj[w].iter().filter(|&&x| used[x]).count();
        hit == placed
    }

    /// Returns false once `cap` is exceeded.
    fn extend(
        &self,
        depth: usize,
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<FiniteAutomorphism>,
        cap: usize,
    ) -> bool {
        if depth == self.n {
            if out.len() >= cap {
                return false;
            }
            let img: Vec<usize> = image.iter().map(|x| x.expect("complete")).collect();
            out.push(FiniteAutomorphism {
                point_perm: img[..self.points].to_vec(),
                line_perm: img[self.points..].iter().map(|&x| x - self.points).collect(),
            });
            return true;
        }
        let v = self.order[depth];
        for w in self.candidates(image, used, depth) {
            image[v] = Some(w);
            used[w] = true;
            let ok = self.extend(depth + 1, image, used, out, cap);
            image[v] = None;
            used[w] = false;
            if !ok {
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementSet {
    Points(Vec<usize>),
    Lines(Vec<usize>),
}

impl ElementSet {
    fn elements(&self) -> Vec<Element> {
        match self {
            ElementSet::Points(v) => v.iter().map(|&p| Element::Point(p)).collect(),
            ElementSet::Lines(v) => v.iter().map(|&l| Element::Line(l)).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilizerMode {
    Pointwise,
    Setwise,
}

/// The subgroup fixing `fix` elementwise or as a set.
pub fn stabilizer(group: &AutomorphismGroup, fix: &ElementSet, mode: StabilizerMode) -> AutomorphismGroup {
    let members = fix.elements();
    let sub = group.filtered(|a| match mode {
        StabilizerMode::Pointwise => members.iter().all(|&e| a.apply(e) == e),
        StabilizerMode::Setwise => members.iter().all(|&e| members.contains(&a.apply(e))),
    });
    debug_assert!(sub.verify_closure(Execution::Sequential).is_ok());
    sub
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TupleError {
    #[error("tuples have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("position {0} pairs a point with a line")]
    KindMismatch(usize),
}

/// The first group element (in sorted order) with `α(a_i) = b_i` for all i.
pub fn map_tuple(
    group: &AutomorphismGroup,
    a: &[Element],
    b: &[Element],
) -> Result<Option<FiniteAutomorphism>, TupleError> {
    if a.len() != b.len() {
        return Err(TupleError::LengthMismatch(a.len(), b.len()));
    }
    let same_kind = |x: &Element, y: &Element| {
        matches!(
            (x, y),
            (Element::Point(_), Element::Point(_)) | (Element::Line(_), Element::Line(_))
        )
    };
    if let Some(i) = a.iter().zip(b).position(|(x, y)| !same_kind(x, y)) {
        return Err(TupleError::KindMismatch(i));
    }
    Ok(group
        .elements
        .iter()
        .find(|g| a.iter().zip(b).all(|(&x, &y)| g.apply(x) == y))
        .cloned())
}
