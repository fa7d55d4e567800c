//! Elementary Nielsen moves and decomposition of a basis into them.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::stallings::build_subgroup;
use crate::words::{Letter, Word};

/// Positional move on an ordered basis `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NielsenMove {
    /// `T[i] ← T[i]⁻¹`
    Invert(usize),
    /// `T[i] ← T[i]·T[j]`, `i ≠ j`
    RightMultiply(usize, usize),
}

impl NielsenMove {
    pub fn right_multiply(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::Malformed("right multiplication needs two distinct generators".into()));
        }
        Ok(NielsenMove::RightMultiply(i, j))
    }

    fn apply(self, t: &mut [Word]) {
        match self {
            NielsenMove::Invert(i) => t[i] = t[i].inverse(),
            NielsenMove::RightMultiply(i, j) => t[i] = t[i].concat(&t[j]),
        }
    }

    fn unapply(self, t: &mut [Word]) {
        match self {
            NielsenMove::Invert(i) => t[i] = t[i].inverse(),
            NielsenMove::RightMultiply(i, j) => t[i] = t[i].concat(&t[j].inverse()),
        }
    }

    fn all(rank: usize) -> Vec<NielsenMove> {
        let mut out: Vec<NielsenMove> = (0..rank).map(NielsenMove::Invert).collect();
        for i in 0..rank {
            for j in (0..rank).filter(|&j| j != i) {
                out.push(NielsenMove::RightMultiply(i, j));
            }
        }
        out
    }
}

fn standard_basis(rank: usize) -> Vec<Word> {
    (0..rank).map(Word::generator).collect()
}

/// The tuple obtained by applying `moves` in order to the standard basis;
/// entry `i` is the image of generator `i` under `ν₁∘…∘ν_m`.
pub fn apply_moves(moves: &[NielsenMove], rank: usize) -> Vec<Word> {
    let mut t = standard_basis(rank);
    for m in moves {
        m.apply(&mut t);
    }
    t
}

/// Images of the generators under the inverse of `ν₁∘…∘ν_m`.
pub fn inverse_images(moves: &[NielsenMove], rank: usize) -> Vec<Word> {
    let mut t = standard_basis(rank);
    for m in moves.iter().rev() {
        m.unapply(&mut t);
    }
    t
}

/// Moves on the target tuple driving it back to `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Raw {
    Inv(usize),
    /// `T[i] ← T[i]·T[j]⁻¹`
    RmulInv(usize, usize),
}

struct Reducer {
    t: Vec<Word>,
    raw: Vec<Raw>,
}

impl Reducer {
    fn inv(&mut self, i: usize) {
        self.t[i] = self.t[i].inverse();
        self.raw.push(Raw::Inv(i));
    }

    fn rmul_inv(&mut self, i: usize, j: usize) {
        self.t[i] = self.t[i].concat(&self.t[j].inverse());
        self.raw.push(Raw::RmulInv(i, j));
    }

    /// `T[i] ← T[i]·T[j]^e`
    fn right_mul(&mut self, i: usize, j: usize, e: i8) {
        if e < 0 {
            self.rmul_inv(i, j);
        } else {
            self.inv(j);
            self.rmul_inv(i, j);
            self.inv(j);
        }
    }

    /// `T[i] ← T[j]^e·T[i]`
    fn left_mul(&mut self, i: usize, j: usize, e: i8) {
        self.inv(i);
        self.right_mul(i, j, -e);
        self.inv(i);
    }

    fn product(&self, i: usize, j: usize, e: i8, left: bool) -> Word {
        let tj = if e < 0 { self.t[j].inverse() } else { self.t[j].clone() };
        if left {
            tj.concat(&self.t[i])
        } else {
            self.t[i].concat(&tj)
        }
    }

    fn total(t: &[Word]) -> usize {
        t.iter().map(Word::len).sum()
    }

    /// One length-decreasing pair move, scanning `(i, j, side, sign)` in order.
    fn shorten(&mut self) -> bool {
        let n = self.t.len();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                for left in [false, true] {
                    for e in [1i8, -1] {
                        if self.product(i, j, e, left).len() < self.t[i].len() {
                            if left {
                                self.left_mul(i, j, e);
                            } else {
                                self.right_mul(i, j, e);
                            }
                            return true;
                        }
                    }
                }
            }
        }
        false
    }

    /// Breadth-first search over length-preserving pair moves for a tuple
    /// admitting a shortening move; replays the path when found.
    fn escape_plateau(&mut self) -> bool {
        type Step = (usize, usize, bool, i8);
        let n = self.t.len();
        let len = Self::total(&self.t);
        let mut parent: HashMap<Vec<Word>, Option<(Vec<Word>, Step)>> = HashMap::new();
        parent.insert(self.t.clone(), None);
        let mut queue = VecDeque::from([self.t.clone()]);
        while let Some(t) = queue.pop_front() {
            let probe = Reducer { t: t.clone(), raw: Vec::new() };
            let mut found = None;
            'scan: for i in 0..n {
                for j in (0..n).filter(|&j| j != i) {
                    for left in [false, true] {
                        for e in [1i8, -1] {
                            let p = probe.product(i, j, e, left);
                            if p.len() < t[i].len() {
                                found = Some(());
                                break 'scan;
                            }
                            if p.len() == t[i].len() {
                                let mut next = t.clone();
                                next[i] = p;
                                debug_assert_eq!(Self::total(&next), len);
                                if !parent.contains_key(&next) {
                                    parent.insert(next.clone(), Some((t.clone(), (i, j, left, e))));
                                    queue.push_back(next);
                                }
                            }
                        }
                    }
                }
            }
            if found.is_some() {
                let mut path = Vec::new();
                let mut cur = t;
                while let Some(Some((prev, step))) = parent.get(&cur) {
                    path.push(*step);
                    cur = prev.clone();
                }
                for (i, j, left, e) in path.into_iter().rev() {
                    if left {
                        self.left_mul(i, j, e);
                    } else {
                        self.right_mul(i, j, e);
                    }
                }
                return true;
            }
        }
        false
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.right_mul(i, j, 1);
        self.right_mul(j, i, -1);
        self.left_mul(i, j, 1);
        self.inv(j);
    }
}

fn check_basis(target: &[Word], rank: usize) -> Result<()> {
    if target.len() != rank {
        return Err(Error::TupleLength(target.len(), rank));
    }
    if target.iter().any(Word::is_empty) {
        return Err(Error::NotABasis("trivial entry".into()));
    }
    let h = build_subgroup(target, rank)?;
    let g = h.graph();
    if g.vertex_count() != 1 || g.edges().len() != rank {
        return Err(Error::NotABasis("the words do not generate the free group".into()));
    }
    Ok(())
}

fn greedy(target: &[Word]) -> Result<Vec<NielsenMove>> {
    let rank = target.len();
    let mut r = Reducer { t: target.to_vec(), raw: Vec::new() };
    while r.t.iter().any(|w| w.len() > 1) {
        if !r.shorten() && !r.escape_plateau() {
            return Err(Error::NotABasis("Nielsen reduction stalled".into()));
        }
    }
    for i in 0..rank {
        if r.t[i].letters()[0].is_inverse() {
            r.inv(i);
        }
    }
    for i in 0..rank {
        let at = (i..rank).find(|&k| r.t[k].letters()[0] == Letter::pos(i)).expect("letters form a permutation");
        if at != i {
            r.swap(i, at);
        }
    }
    let mut moves: Vec<NielsenMove> = Vec::with_capacity(r.raw.len());
    for raw in r.raw.into_iter().rev() {
        let m = match raw {
            Raw::Inv(i) => NielsenMove::Invert(i),
            Raw::RmulInv(i, j) => NielsenMove::RightMultiply(i, j),
        };
        if m.is_invert() && moves.last() == Some(&m) {
            moves.pop();
        } else {
            moves.push(m);
        }
    }
    Ok(moves)
}

impl NielsenMove {
    fn is_invert(&self) -> bool {
        matches!(self, NielsenMove::Invert(_))
    }
}

const SEARCH_DEPTH: usize = 10;
const SEARCH_STATES: usize = 200_000;

/// Bidirectional breadth-first search for a sequence of at most `max_len`
/// moves taking `X` to `target`.
fn shortest(target: &[Word], max_len: usize) -> Option<Vec<NielsenMove>> {
    let rank = target.len();
    let moves = NielsenMove::all(rank);
    let start = standard_basis(rank);
    if start == target {
        return Some(Vec::new());
    }
    let mut fwd: HashMap<Vec<Word>, Option<(Vec<Word>, NielsenMove)>> = HashMap::from([(start.clone(), None)]);
    let mut bwd: HashMap<Vec<Word>, Option<(Vec<Word>, NielsenMove)>> = HashMap::from([(target.to_vec(), None)]);
    let mut fwd_layer = vec![start];
    let mut bwd_layer = vec![target.to_vec()];
    let (mut fwd_depth, mut bwd_depth) = (0, 0);
    while fwd_depth + bwd_depth < max_len && fwd.len() + bwd.len() < SEARCH_STATES {
        let forward = fwd_layer.len() <= bwd_layer.len();
        let (seen, other, layer) = if forward {
            (&mut fwd, &bwd, &mut fwd_layer)
        } else {
            (&mut bwd, &fwd, &mut bwd_layer)
        };
        let mut next_layer = Vec::new();
        let mut meet = None;
        'expand: for t in layer.iter() {
            for &m in &moves {
                let mut next = t.clone();
                if forward {
                    m.apply(&mut next);
                } else {
                    m.unapply(&mut next);
                }
                if seen.contains_key(&next) {
                    continue;
                }
                seen.insert(next.clone(), Some((t.clone(), m)));
                if other.contains_key(&next) {
                    meet = Some(next);
                    break 'expand;
                }
                next_layer.push(next);
            }
        }
        if let Some(mid) = meet {
            let mut head = Vec::new();
            let mut cur = mid.clone();
            while let Some(Some((prev, m))) = fwd.get(&cur) {
                head.push(*m);
                cur = prev.clone();
            }
            head.reverse();
            let mut cur = mid;
            while let Some(Some((prev, m))) = bwd.get(&cur) {
                head.push(*m);
                cur = prev.clone();
            }
            return Some(head);
        }
        if next_layer.is_empty() {
            return None;
        }
        *layer = next_layer;
        if forward {
            fwd_depth += 1;
        } else {
            bwd_depth += 1;
        }
    }
    None
}

/// Moves `ν₁,…,ν_m` such that applying them in order to `X` yields `target`.
///
/// Nielsen reduction gives a decomposition for any basis; a bounded
/// bidirectional search then replaces it with a shorter one when one exists
/// within reach.
pub fn nielsen_decompose(target: &[Word], rank: usize) -> Result<Vec<NielsenMove>> {
    let reduced = nielsen_reduce(target, rank)?;
    if reduced.len() <= 1 {
        return Ok(reduced);
    }
    match shortest(target, (reduced.len() - 1).min(SEARCH_DEPTH)) {
        Some(better) if better.len() < reduced.len() => Ok(better),
        _ => Ok(reduced),
    }
}

/// Decomposition read off Nielsen reduction alone, without the search for
/// a shorter one.
pub fn nielsen_reduce(target: &[Word], rank: usize) -> Result<Vec<NielsenMove>> {
    check_basis(target, rank)?;
    let reduced = greedy(target)?;
    debug_assert_eq!(apply_moves(&reduced, rank), target);
    Ok(reduced)
}
