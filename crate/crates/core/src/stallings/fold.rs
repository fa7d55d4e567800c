use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use super::{Edge, Subgroup, XDigraph};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;
use crate::words::Word;

/// Stallings folding: merges the ends of same-labelled edge pairs sharing an
/// origin or a terminus until none remain. Vertices are renumbered by first
/// appearance of their class; duplicate edges collapse.
pub fn fold(g: &XDigraph) -> XDigraph {
    let n = g.vertex_count;
    let mut uf = UnionFind::new(n);
    loop {
        let mut changed = false;
        let mut out: HashMap<(usize, usize), usize> = HashMap::new();
        let mut inc: HashMap<(usize, usize), usize> = HashMap::new();
        for e in &g.edges {
            let (f, t) = (uf.find(e.from), uf.find(e.to));
            match out.entry((f, e.label)) {
                Entry::Occupied(o) => changed |= uf.union(*o.get(), t),
                Entry::Vacant(v) => {
                    v.insert(t);
                }
            }
            let (f, t) = (uf.find(e.from), uf.find(e.to));
            match inc.entry((t, e.label)) {
                Entry::Occupied(o) => changed |= uf.union(*o.get(), f),
                Entry::Vacant(v) => {
                    v.insert(f);
                }
            }
        }
        if !changed {
            break;
        }
    }

    let mut index = vec![usize::MAX; n];
    let mut class_index = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        let r = uf.find(v);
        if class_index[r] == usize::MAX {
            class_index[r] = count;
            count += 1;
        }
        index[v] = class_index[r];
    }
    let mut edges: Vec<Edge> = g
        .edges
        .iter()
        .map(|e| Edge::new(index[e.from], index[e.to], e.label))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    XDigraph {
        rank: g.rank,
        vertex_count: count,
        edges,
        base: g.base.map(|b| index[b]),
    }
}

/// Core of `g` at `v`: peel non-base vertices of degree at most one, then keep
/// the component of `v`. The result is based at `v`.
pub fn core(g: &XDigraph, v: usize) -> Result<XDigraph> {
    if v >= g.vertex_count {
        return Err(Error::VertexOutOfRange { vertex: v, count: g.vertex_count });
    }
    let mut deg = g.degrees();
    let inc = g.incidences();
    let mut alive_edge = vec![true; g.edges.len()];
    let mut alive = vec![true; g.vertex_count];
    let mut queue: VecDeque<usize> = (0..g.vertex_count).filter(|&u| u != v && deg[u] <= 1).collect();
    while let Some(u) = queue.pop_front() {
        if !alive[u] {
            continue;
        }
        alive[u] = false;
        for &(_, w, ei) in &inc[u] {
            if alive_edge[ei] {
                alive_edge[ei] = false;
                deg[u] -= 1;
                if w != u {
                    deg[w] -= 1;
                    if w != v && alive[w] && deg[w] == 1 {
                        queue.push_back(w);
                    }
                }
            }
        }
    }

    // component of v among surviving edges
    let mut keep = vec![false; g.vertex_count];
    keep[v] = true;
    let mut stack = vec![v];
    while let Some(u) = stack.pop() {
        for &(_, w, ei) in &inc[u] {
            if alive_edge[ei] && !keep[w] {
                keep[w] = true;
                stack.push(w);
            }
        }
    }
    let based = XDigraph { base: Some(v), ..g.clone() };
    Ok(based.induced(&keep))
}

/// The folded core graph of `⟨generators⟩`: wedge of loops, fold, core.
pub fn build_subgroup(generators: &[Word], rank: usize) -> Result<Subgroup> {
    let wedge = XDigraph::wedge_of_loops(rank, generators)?;
    Ok(Subgroup::from_graph(&wedge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::based_isomorphic;
    use crate::words::Alphabet;
    use proptest::prelude::*;

    fn alpha(n: usize) -> Alphabet {
        Alphabet::of_rank(n).unwrap()
    }

    fn sub(a: &Alphabet, gens: &[&str]) -> Subgroup {
        let words: Vec<Word> = gens.iter().map(|s| a.parse_word(s).unwrap()).collect();
        build_subgroup(&words, a.rank()).unwrap()
    }

    #[test]
    fn cyclic_subgroup_is_a_loop() {
        let a = alpha(2);
        let h = sub(&a, &["a"]);
        assert_eq!(h.graph().vertex_count(), 1);
        assert_eq!(h.graph().edges(), &[Edge::new(0, 0, 0)]);
    }

    #[test]
    fn trivial_subgroup_is_a_point() {
        let h = build_subgroup(&[], 2).unwrap();
        assert_eq!(h.graph().vertex_count(), 1);
        assert!(h.graph().edges().is_empty());
        let h = build_subgroup(&[Word::identity()], 2).unwrap();
        assert!(h.is_trivial());
    }

    #[test]
    fn conjugated_generator_has_a_tail() {
        let a = alpha(2);
        let h = sub(&a, &["baB"]);
        assert_eq!(h.graph().vertex_count(), 2);
        assert_eq!(h.graph().edges(), &[Edge::new(0, 1, 1), Edge::new(1, 1, 0)]);
        assert!(h.contains(&a.parse_word("baB").unwrap()).unwrap());
        assert!(h.contains(&a.parse_word("baaB").unwrap()).unwrap());
        assert!(!h.contains(&a.parse_word("a").unwrap()).unwrap());
    }

    #[test]
    fn single_fold_step() {
        let g = XDigraph::new(1, 3, vec![Edge::new(0, 1, 0), Edge::new(0, 2, 0)], Some(0)).unwrap();
        let f = fold(&g);
        assert_eq!(f.vertex_count(), 2);
        assert_eq!(f.edges(), &[Edge::new(0, 1, 0)]);
    }

    #[test]
    fn folded_graph_is_a_fixpoint() {
        let a = alpha(2);
        let h = sub(&a, &["abA", "bb"]);
        let again = fold(h.graph());
        assert_eq!(&again, h.graph());
    }

    #[test]
    fn duplicate_generator_folds_away() {
        let a = alpha(2);
        let ab = a.parse_word("ab").unwrap();
        let f = fold(&XDigraph::wedge_of_loops(2, &[ab.clone(), ab.clone()]).unwrap());
        let once = sub(&a, &["ab"]);
        assert!(based_isomorphic(&f, once.graph()));
    }

    #[test]
    fn core_examples() {
        let point = XDigraph::point(2);
        assert_eq!(core(&point, 0).unwrap(), point);

        let dangling = XDigraph::new(2, 2, vec![Edge::new(0, 0, 0), Edge::new(0, 1, 1)], Some(0)).unwrap();
        let c = core(&dangling, 0).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edges(), &[Edge::new(0, 0, 0)]);

        let tail = XDigraph::new(2, 2, vec![Edge::new(0, 1, 1), Edge::new(1, 1, 0)], Some(0)).unwrap();
        assert_eq!(core(&tail, 0).unwrap(), tail);

        assert!(core(&point, 4).is_err());
    }

    #[test]
    fn core_drops_other_components() {
        let g = XDigraph::new(1, 3, vec![Edge::new(0, 0, 0), Edge::new(1, 2, 0), Edge::new(2, 1, 0)], Some(0)).unwrap();
        let c = core(&g, 0).unwrap();
        assert_eq!(c.vertex_count(), 1);
    }

    fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..rank, any::<bool>()), 0..=max_len).prop_map(|v| {
            Word::from(v.into_iter().map(|(g, i)| crate::words::Letter::new(g, i)).collect::<Vec<_>>())
        })
    }

    proptest! {
        #[test]
        fn generators_are_members(gens in prop::collection::vec(word_strategy(3, 6), 0..4)) {
            let h = build_subgroup(&gens, 3).unwrap();
            for g in &gens {
                prop_assert!(h.contains(g).unwrap());
            }
            prop_assert!(h.graph().is_folded());
        }

        #[test]
        fn fold_is_confluent(gens in prop::collection::vec(word_strategy(2, 6), 1..4), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let wedge = XDigraph::wedge_of_loops(2, &gens).unwrap();
            // permute vertex labels and edge order, which changes the merge order
            let mut perm: Vec<usize> = (0..wedge.vertex_count()).collect();
            perm.shuffle(&mut rng);
            let mut edges: Vec<Edge> = wedge.edges().iter().map(|e| Edge::new(perm[e.from], perm[e.to], e.label)).collect();
            edges.shuffle(&mut rng);
            let shuffled = XDigraph::new(2, wedge.vertex_count(), edges, Some(perm[0])).unwrap();
            let f1 = fold(&wedge);
            let f2 = fold(&shuffled);
            prop_assert!(based_isomorphic(&f1, &f2));
        }

        #[test]
        fn cyclically_reduced_member_forces_base_degree_two(gens in prop::collection::vec(word_strategy(2, 5), 1..3)) {
            let h = build_subgroup(&gens, 2).unwrap();
            let deg = h.graph().degrees()[0];
            for g in &gens {
                if !g.is_empty() && g.is_cyclically_reduced() {
                    prop_assert!(deg >= 2);
                }
            }
        }
    }
}
