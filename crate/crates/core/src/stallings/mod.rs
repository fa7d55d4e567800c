//! Stallings X-digraphs: folding, cores, membership, types, products and
//! isomorphism.
//!
//! Only positive edges are stored. An inverse letter traverses a positive
//! edge backwards.

mod fold;
mod iso;
mod ops;
mod text;

pub use fold::{build_subgroup, core, fold};
pub use iso::{based_isomorphic, digraph_isomorphic};
pub use ops::{
    conjugate_subgroups, find_cycle, has_cycle, intersect, product, spanning_tree_basis,
    spanning_tree_words, type_graph, CycleWitness, Product,
};

use crate::error::{Error, Result};
use crate::words::{CyclicWord, Letter, Word};

/// A positive edge. Field order gives the serialization order
/// `(from, label, to)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub from: usize,
    pub label: usize,
    pub to: usize,
}

impl Edge {
    pub fn new(from: usize, to: usize, label: usize) -> Self {
        Edge { from, label, to }
    }
}

/// Finite digraph with edges labelled by generator indices and an optional
/// base vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XDigraph {
    rank: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    base: Option<usize>,
}

impl XDigraph {
    pub fn new(rank: usize, vertex_count: usize, edges: Vec<Edge>, base: Option<usize>) -> Result<Self> {
        for e in &edges {
            for v in [e.from, e.to] {
                if v >= vertex_count {
                    return Err(Error::VertexOutOfRange { vertex: v, count: vertex_count });
                }
            }
            if e.label >= rank {
                return Err(Error::AlphabetMismatch { generator: e.label, rank });
            }
        }
        if let Some(b) = base {
            if b >= vertex_count {
                return Err(Error::VertexOutOfRange { vertex: b, count: vertex_count });
            }
        }
        Ok(XDigraph { rank, vertex_count, edges, base })
    }

    /// A single vertex, based, with no edges.
    pub fn point(rank: usize) -> Self {
        XDigraph { rank, vertex_count: 1, edges: Vec::new(), base: Some(0) }
    }

    /// Wedge of subdivided loops at vertex 0, one loop per nontrivial word.
    pub fn wedge_of_loops(rank: usize, words: &[Word]) -> Result<Self> {
        let mut edges = Vec::new();
        let mut count = 1;
        for w in words {
            let letters = w.letters();
            if letters.is_empty() {
                continue;
            }
            let mut cur = 0;
            for (i, &l) in letters.iter().enumerate() {
                if l.generator() >= rank {
                    return Err(Error::AlphabetMismatch { generator: l.generator(), rank });
                }
                let next = if i + 1 == letters.len() {
                    0
                } else {
                    count += 1;
                    count - 1
                };
                edges.push(if l.is_inverse() {
                    Edge::new(next, cur, l.generator())
                } else {
                    Edge::new(cur, next, l.generator())
                });
                cur = next;
            }
        }
        Ok(XDigraph { rank, vertex_count: count, edges, base: Some(0) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn base(&self) -> Option<usize> {
        self.base
    }

    pub fn with_base(&self, base: usize) -> Result<Self> {
        XDigraph::new(self.rank, self.vertex_count, self.edges.clone(), Some(base))
    }

    /// Degree in the graph with inverse edges added; a loop counts twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for e in &self.edges {
            deg[e.from] += 1;
            deg[e.to] += 1;
        }
        deg
    }

    /// For each vertex, its incident edges as `(letter read, other end, edge index)`,
    /// sorted by letter then edge index. Loops appear once in each direction.
    pub fn incidences(&self) -> Vec<Vec<(Letter, usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.from].push((Letter::pos(e.label), e.to, i));
            inc[e.to].push((Letter::neg(e.label), e.from, i));
        }
        for list in &mut inc {
            list.sort_unstable_by_key(|&(l, _, i)| (l, i));
        }
        inc
    }

    pub fn is_folded(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|e| seen.insert((e.from, e.label, true)) && seen.insert((e.to, e.label, false)))
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut uf = crate::union_find::UnionFind::new(self.vertex_count);
        let mut parts = self.vertex_count;
        for e in &self.edges {
            if uf.union(e.from, e.to) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Rank of the fundamental group: `|E| - |V| + 1` for a connected graph.
    pub fn cyclomatic_number(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.vertex_count)
    }

    /// Restricts to the given vertices (in increasing index order), keeping
    /// edges with both ends kept. The base is dropped if removed.
    pub(crate) fn induced(&self, keep: &[bool]) -> XDigraph {
        let mut index = vec![usize::MAX; self.vertex_count];
        let mut count = 0;
        for v in 0..self.vertex_count {
            if keep[v] {
                index[v] = count;
                count += 1;
            }
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| keep[e.from] && keep[e.to])
            .map(|e| Edge::new(index[e.from], index[e.to], e.label))
            .collect();
        edges.sort_unstable();
        let base = self.base.filter(|&b| keep[b]).map(|b| index[b]);
        XDigraph { rank: self.rank, vertex_count: count, edges, base }
    }

    /// Renumbers vertices breadth-first from the base, visiting neighbours in
    /// letter order. For folded connected graphs the result depends only on
    /// the based isomorphism class.
    pub(crate) fn canonical_from_base(&self) -> XDigraph {
        let Some(base) = self.base else {
            return self.clone();
        };
        let inc = self.incidences();
        let mut order = vec![usize::MAX; self.vertex_count];
        let mut queue = std::collections::VecDeque::from([base]);
        order[base] = 0;
        let mut next = 1;
        while let Some(u) = queue.pop_front() {
            for &(_, w, _) in &inc[u] {
                if order[w] == usize::MAX {
                    order[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
        // unreachable vertices keep their relative order after the reached ones
        for v in 0..self.vertex_count {
            if order[v] == usize::MAX {
                order[v] = next;
                next += 1;
            }
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| Edge::new(order[e.from], order[e.to], e.label))
            .collect();
        edges.sort_unstable();
        XDigraph { rank: self.rank, vertex_count: self.vertex_count, edges, base: Some(0) }
    }
}

/// Transition table of a folded graph, one slot per vertex and letter.
#[derive(Clone, Debug)]
pub(crate) struct Transitions {
    width: usize,
    table: Vec<usize>,
}

const NONE: usize = usize::MAX;

fn letter_slot(l: Letter) -> usize {
    2 * l.generator() + usize::from(l.is_inverse())
}

impl Transitions {
    pub(crate) fn new(g: &XDigraph) -> Self {
        debug_assert!(g.is_folded());
        let width = 2 * g.rank;
        let mut table = vec![NONE; width * g.vertex_count];
        for e in &g.edges {
            table[e.from * width + 2 * e.label] = e.to;
            table[e.to * width + 2 * e.label + 1] = e.from;
        }
        Transitions { width, table }
    }

    pub(crate) fn step(&self, v: usize, l: Letter) -> Option<usize> {
        if l.generator() * 2 >= self.width {
            return None;
        }
        match self.table[v * self.width + letter_slot(l)] {
            NONE => None,
            u => Some(u),
        }
    }

    pub(crate) fn trace(&self, start: usize, letters: &[Letter]) -> Option<usize> {
        letters.iter().try_fold(start, |v, &l| self.step(v, l))
    }
}

/// A finitely generated subgroup, held as its folded core graph with the
/// base at vertex 0 and vertices numbered canonically.
#[derive(Clone, Debug)]
pub struct Subgroup {
    graph: XDigraph,
    transitions: Transitions,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.graph.hash(state)
    }
}

impl Subgroup {
    /// Folds `g`, takes its core at the base (vertex 0 if unset) and
    /// renumbers canonically.
    pub fn from_graph(g: &XDigraph) -> Self {
        let base = g.base.unwrap_or(0);
        let g = if g.vertex_count == 0 {
            XDigraph::point(g.rank)
        } else {
            g.with_base(base).expect("base in range")
        };
        let folded = fold(&g);
        let cored = core(&folded, folded.base.expect("fold keeps the base")).expect("base in range");
        Self::from_folded_core(cored)
    }

    pub(crate) fn from_folded_core(g: XDigraph) -> Self {
        let graph = g.canonical_from_base();
        let transitions = Transitions::new(&graph);
        Subgroup { graph, transitions }
    }

    pub fn trivial(rank: usize) -> Self {
        Self::from_folded_core(XDigraph::point(rank))
    }

    pub fn graph(&self) -> &XDigraph {
        &self.graph
    }

    pub fn base(&self) -> usize {
        0
    }

    pub fn alphabet_rank(&self) -> usize {
        self.graph.rank
    }

    /// Rank of the subgroup as a free group.
    pub fn rank(&self) -> usize {
        self.graph.cyclomatic_number()
    }

    pub fn is_trivial(&self) -> bool {
        self.graph.edges.is_empty()
    }


    /// Membership by reading `w` from the base.
    pub fn contains(&self, w: &Word) -> Result<bool> {
        for l in w.letters() {
            if l.generator() >= self.graph.rank {
                return Err(Error::AlphabetMismatch { generator: l.generator(), rank: self.graph.rank });
            }
        }
        Ok(self.transitions.trace(0, w.letters()) == Some(0))
    }

    /// True if some conjugate of the class `w` lies in the subgroup, i.e. the
    /// cyclic word labels a closed path at some vertex.
    pub fn contains_conjugate_of(&self, w: &CyclicWord) -> bool {
        (0..self.graph.vertex_count).any(|v| self.transitions.trace(v, w.letters()) == Some(v))
    }

    /// Some `x` with `x·w·x⁻¹` in the subgroup: the label of a shortest path
    /// from the base to a vertex where `w` reads a closed path.
    pub fn conjugator_into(&self, w: &Word) -> Option<Word> {
        let n = self.graph.vertex_count;
        let inc = self.graph.incidences();
        let mut path: Vec<Option<Vec<Letter>>> = vec![None; n];
        path[0] = Some(Vec::new());
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            if self.transitions.trace(v, w.letters()) == Some(v) {
                return path[v].take().map(Word::from);
            }
            for &(l, u, _) in &inc[v] {
                if path[u].is_none() {
                    let mut p = path[v].clone().expect("visited");
                    p.push(l);
                    path[u] = Some(p);
                    queue.push_back(u);
                }
            }
        }
        None
    }
}
