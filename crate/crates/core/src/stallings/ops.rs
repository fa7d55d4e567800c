use std::collections::{HashMap, VecDeque};

use super::{core, digraph_isomorphic, Edge, Subgroup, XDigraph};
use crate::error::{Error, Result};
use crate::words::{free_reduce, CyclicWord, Letter, Word};

/// Type of a core graph: the graph with the hanging path at the base removed.
///
/// Peels degree-one vertices without protecting the base. The returned base
/// is where the hanging path met the rest of the graph (or the old base if
/// nothing was removed).
pub fn type_graph(h: &Subgroup) -> XDigraph {
    let g = h.graph();
    let mut deg = g.degrees();
    let mut base = h.base();
    if deg[base] != 1 {
        return g.clone();
    }
    let inc = g.incidences();
    let mut alive = vec![true; g.vertex_count];
    let mut alive_edge = vec![true; g.edges.len()];
    let mut queue: VecDeque<usize> = (0..g.vertex_count).filter(|&v| deg[v] == 1).collect();
    while let Some(u) = queue.pop_front() {
        if !alive[u] || deg[u] != 1 {
            continue;
        }
        let &(_, w, ei) = inc[u]
            .iter()
            .find(|&&(_, _, ei)| alive_edge[ei])
            .expect("degree one vertex has a live edge");
        alive_edge[ei] = false;
        alive[u] = false;
        deg[u] = 0;
        deg[w] -= 1;
        if base == u {
            base = w;
        }
        if deg[w] == 1 {
            queue.push_back(w);
        }
    }
    let mut t = XDigraph { base: Some(base), ..g.clone() };
    t.edges = g
        .edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| alive_edge[i])
        .map(|(_, e)| *e)
        .collect();
    t.induced(&alive)
}

/// Product graph together with the vertex pair behind each product vertex.
#[derive(Clone, Debug)]
pub struct Product {
    pub graph: XDigraph,
    pub pairs: Vec<(usize, usize)>,
}

impl Product {
    pub fn index_of(&self, pair: (usize, usize)) -> Option<usize> {
        self.pairs.iter().position(|&p| p == pair)
    }
}

/// Label-matched product. Only vertex pairs touched by a product edge are
/// materialized, plus the pair of bases when both graphs are based; that
/// pair becomes vertex 0 and the base of the product.
pub fn product(g: &XDigraph, h: &XDigraph) -> Result<Product> {
    if g.rank != h.rank {
        return Err(Error::AlphabetMismatch { generator: g.rank.max(h.rank) - 1, rank: g.rank.min(h.rank) });
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut intern = |p: (usize, usize), pairs: &mut Vec<(usize, usize)>| {
        *index.entry(p).or_insert_with(|| {
            pairs.push(p);
            pairs.len() - 1
        })
    };
    let base = match (g.base, h.base) {
        (Some(a), Some(b)) => Some(intern((a, b), &mut pairs)),
        _ => None,
    };
    let mut by_label: Vec<Vec<&Edge>> = vec![Vec::new(); h.rank];
    for f in &h.edges {
        by_label[f.label].push(f);
    }
    let mut edges = Vec::new();
    for e in &g.edges {
        for f in &by_label[e.label] {
            let from = intern((e.from, f.from), &mut pairs);
            let to = intern((e.to, f.to), &mut pairs);
            edges.push(Edge::new(from, to, e.label));
        }
    }
    edges.sort_unstable();
    let graph = XDigraph { rank: g.rank, vertex_count: pairs.len(), edges, base };
    Ok(Product { graph, pairs })
}

/// `H ∩ K` as the core of the product at the pair of bases.
pub fn intersect(h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    let p = product(h.graph(), k.graph())?;
    let c = core(&p.graph, 0)?;
    Ok(Subgroup::from_folded_core(c))
}

/// Conjugacy of subgroups: their types are isomorphic.
pub fn conjugate_subgroups(h: &Subgroup, k: &Subgroup) -> bool {
    digraph_isomorphic(&type_graph(h), &type_graph(k))
}

struct Forest {
    /// Label of the tree path from the component root, per vertex.
    paths: Vec<Vec<Letter>>,
    root: Vec<usize>,
    tree_edge: Vec<bool>,
}

/// Breadth-first spanning forest. Roots are taken in the order given, then
/// remaining vertices by index; neighbours are scanned in letter order.
fn bfs_forest(g: &XDigraph, roots: impl IntoIterator<Item = usize>) -> Forest {
    let inc = g.incidences();
    let n = g.vertex_count;
    let mut paths = vec![Vec::new(); n];
    let mut root = vec![usize::MAX; n];
    let mut tree_edge = vec![false; g.edges.len()];
    let starts: Vec<usize> = roots.into_iter().chain(0..n).collect();
    for r in starts {
        if root[r] != usize::MAX {
            continue;
        }
        root[r] = r;
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            for &(l, w, ei) in &inc[u] {
                if root[w] == usize::MAX {
                    root[w] = r;
                    tree_edge[ei] = true;
                    let mut p = paths[u].clone();
                    p.push(l);
                    paths[w] = p;
                    queue.push_back(w);
                }
            }
        }
    }
    Forest { paths, root, tree_edge }
}

fn closed_word(forest: &Forest, e: &Edge) -> Word {
    let there = forest.paths[e.from].iter().copied();
    let back = forest.paths[e.to].iter().rev().map(|l| l.inv());
    free_reduce(there.chain(std::iter::once(Letter::pos(e.label))).chain(back))
}

/// Free basis read off the breadth-first spanning tree from the base (vertex
/// 0 if unbased): one word per positive non-tree edge, in edge order.
/// Only the component of the base contributes.
pub fn spanning_tree_words(g: &XDigraph) -> Vec<Word> {
    if g.vertex_count == 0 {
        return Vec::new();
    }
    let base = g.base.unwrap_or(0);
    let forest = bfs_forest(g, [base]);
    g.edges
        .iter()
        .enumerate()
        .filter(|&(i, e)| !forest.tree_edge[i] && forest.root[e.from] == base)
        .map(|(_, e)| closed_word(&forest, e))
        .collect()
}

pub fn spanning_tree_basis(h: &Subgroup) -> Vec<Word> {
    spanning_tree_words(h.graph())
}

/// True iff some component has at least as many edges as vertices.
pub fn has_cycle(g: &XDigraph) -> bool {
    let mut uf = crate::union_find::UnionFind::new(g.vertex_count);
    // a union that fails closes a cycle
    g.edges.iter().any(|e| !uf.union(e.from, e.to))
}

/// A closed reduced path found in a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleWitness {
    /// Vertex the closed path starts and ends at.
    pub root: usize,
    /// Label of the path read from `root`.
    pub label: Word,
}

impl CycleWitness {
    pub fn cyclic(&self) -> CyclicWord {
        CyclicWord::from_word(&self.label)
    }
}

/// Goes once around the fundamental cycle of the first non-tree edge of a
/// breadth-first spanning forest. The graph should be folded so that the
/// label is nontrivial.
pub fn find_cycle(g: &XDigraph) -> Option<CycleWitness> {
    let forest = bfs_forest(g, g.base);
    g.edges
        .iter()
        .enumerate()
        .find(|&(i, _)| !forest.tree_edge[i])
        .map(|(_, e)| CycleWitness { root: forest.root[e.from], label: closed_word(&forest, e) })
}
