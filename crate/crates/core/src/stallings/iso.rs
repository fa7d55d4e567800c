use std::collections::VecDeque;

use super::XDigraph;
use crate::words::Letter;

/// Label-preserving isomorphism of two digraphs, bases ignored.
///
/// The first vertex of `g` is matched against each vertex of `h` in index
/// order and the match is propagated along edges. On folded connected graphs
/// each seed determines the whole map; otherwise the search backtracks.
pub fn digraph_isomorphic(g: &XDigraph, h: &XDigraph) -> bool {
    if !same_shape(g, h) {
        return false;
    }
    if g.vertex_count == 0 {
        return true;
    }
    let m = Matcher::new(g, h);
    (0..h.vertex_count).any(|seed| m.search_from(0, seed))
}

/// Isomorphism sending base to base.
pub fn based_isomorphic(g: &XDigraph, h: &XDigraph) -> bool {
    match (g.base, h.base) {
        (Some(a), Some(b)) => same_shape(g, h) && Matcher::new(g, h).search_from(a, b),
        (None, None) => digraph_isomorphic(g, h),
        _ => false,
    }
}

fn same_shape(g: &XDigraph, h: &XDigraph) -> bool {
    if g.rank != h.rank || g.vertex_count != h.vertex_count || g.edges.len() != h.edges.len() {
        return false;
    }
    let mut lg: Vec<usize> = g.edges.iter().map(|e| e.label).collect();
    let mut lh: Vec<usize> = h.edges.iter().map(|e| e.label).collect();
    lg.sort_unstable();
    lh.sort_unstable();
    lg == lh
}

struct Matcher<'a> {
    g: &'a XDigraph,
    h: &'a XDigraph,
    g_inc: Vec<Vec<(Letter, usize, usize)>>,
    h_inc: Vec<Vec<(Letter, usize, usize)>>,
    /// Neighbourhood signature per vertex: sorted letters of incident edges.
    g_sig: Vec<Vec<Letter>>,
    h_sig: Vec<Vec<Letter>>,
}

impl<'a> Matcher<'a> {
    fn new(g: &'a XDigraph, h: &'a XDigraph) -> Self {
        let g_inc = g.incidences();
        let h_inc = h.incidences();
        let sig = |inc: &Vec<Vec<(Letter, usize, usize)>>| {
            inc.iter().map(|l| l.iter().map(|&(x, _, _)| x).collect()).collect()
        };
        Matcher { g_sig: sig(&g_inc), h_sig: sig(&h_inc), g_inc, h_inc, g, h }
    }

    fn search_from(&self, g_start: usize, h_start: usize) -> bool {
        // g vertices in breadth-first order, other components appended
        let n = self.g.vertex_count;
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in std::iter::once(g_start).chain(0..n) {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &(_, w, _) in &self.g_inc[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if !self.compatible(g_start, h_start, &map) {
            return false;
        }
        map[g_start] = h_start;
        used[h_start] = true;
        self.extend(&order, 1, &mut map, &mut used)
    }

    fn extend(&self, order: &[usize], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == order.len() {
            return true;
        }
        let x = order[depth];
        // an edge to an already mapped vertex narrows the candidates
        let anchored = self.g_inc[x].iter().find(|&&(_, w, _)| map[w] != usize::MAX);
        let candidates: Vec<usize> = match anchored {
            Some(&(l, w, _)) => self.h_inc[map[w]]
                .iter()
                .filter(|&&(l2, _, _)| l2 == l.inv())
                .map(|&(_, y, _)| y)
                .collect(),
            None => (0..self.h.vertex_count).collect(),
        };
        let mut tried = Vec::new();
        for y in candidates {
            if used[y] || tried.contains(&y) || !self.compatible(x, y, map) {
                continue;
            }
            tried.push(y);
            map[x] = y;
            used[y] = true;
            if self.extend(order, depth + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    /// Same neighbourhood signature, and the same number of edges of each
    /// label towards every already mapped vertex (including loops).
    fn compatible(&self, x: usize, y: usize, map: &[usize]) -> bool {
        if self.g_sig[x] != self.h_sig[y] {
            return false;
        }
        let mut want: Vec<(Letter, usize)> = self.g_inc[x]
            .iter()
            .filter_map(|&(l, w, _)| {
                if w == x {
                    Some((l, y))
                } else if map[w] != usize::MAX {
                    Some((l, map[w]))
                } else {
                    None
                }
            })
            .collect();
        let mapped_image = |z: usize| z == y || map.contains(&z);
        let mut have: Vec<(Letter, usize)> = self.h_inc[y]
            .iter()
            .filter(|&&(_, z, _)| mapped_image(z))
            .map(|&(l, z, _)| (l, z))
            .collect();
        want.sort_unstable();
        have.sort_unstable();
        want == have
    }
}
