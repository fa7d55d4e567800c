//! Free splittings and the distance-two questions of the ellipticity graph:
//! splitting vs splitting, word vs word, primitive elements in intersections
//! of free factors, and the Nielsen bound between splittings.

use std::fmt;

use crate::error::{Error, Result};
use crate::stallings::{build_subgroup, find_cycle, has_cycle, intersect, product, spanning_tree_basis, type_graph, Subgroup};
use crate::whitehead::{classify_pair, inverse_images, minimize_tuple, nielsen_decompose, nielsen_reduce, NielsenMove, WordTuple};
use crate::words::{Alphabet, CyclicWord, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    A,
    B,
}

impl Factor {
    pub const BOTH: [Factor; 2] = [Factor::A, Factor::B];
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::A => "A",
            Factor::B => "B",
        })
    }
}

/// A verified free splitting `F = A ∗ B` with given bases of the factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSplitting {
    rank: usize,
    basis_a: Vec<Word>,
    basis_b: Vec<Word>,
    a: Subgroup,
    b: Subgroup,
}

/// Checks that `⟨basis_a⟩ ∗ ⟨basis_b⟩` is a proper free splitting of the
/// free group of the given rank: together the words generate, the factor
/// ranks add up, and the lists are bases of their factors.
pub fn verify_splitting(basis_a: &[Word], basis_b: &[Word], rank: usize) -> Result<FreeSplitting> {
    if basis_a.is_empty() || basis_b.is_empty() {
        return Err(Error::ImproperSplitting);
    }
    let all: Vec<Word> = basis_a.iter().chain(basis_b).cloned().collect();
    let whole = build_subgroup(&all, rank)?;
    if whole.graph().vertex_count() != 1 || whole.graph().edges().len() != rank {
        return Err(Error::DoesNotGenerate);
    }
    let a = build_subgroup(basis_a, rank)?;
    let b = build_subgroup(basis_b, rank)?;
    if a.rank() + b.rank() != rank || all.len() != rank {
        return Err(Error::RankMismatch { rank_a: a.rank(), rank_b: b.rank(), listed: all.len(), rank });
    }
    if a.is_trivial() || b.is_trivial() {
        return Err(Error::ImproperSplitting);
    }
    Ok(FreeSplitting { rank, basis_a: basis_a.to_vec(), basis_b: basis_b.to_vec(), a, b })
}

impl FreeSplitting {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self, f: Factor) -> &[Word] {
        match f {
            Factor::A => &self.basis_a,
            Factor::B => &self.basis_b,
        }
    }

    pub fn factor(&self, f: Factor) -> &Subgroup {
        match f {
            Factor::A => &self.a,
            Factor::B => &self.b,
        }
    }

    /// Basis of `F` adapted to the splitting: `basis_a` then `basis_b`.
    pub fn full_basis(&self) -> Vec<Word> {
        self.basis_a.iter().chain(&self.basis_b).cloned().collect()
    }

    /// Image under the endomorphism sending generator `i` to `images[i]`,
    /// re-verified.
    pub fn map(&self, images: &[Word]) -> Result<FreeSplitting> {
        let sub = |ws: &[Word]| -> Vec<Word> { ws.iter().map(|w| w.substitute(images)).collect() };
        verify_splitting(&sub(&self.basis_a), &sub(&self.basis_b), self.rank)
    }

    /// `xAx⁻¹ ∗ xBx⁻¹`.
    pub fn conjugate(&self, x: &Word) -> FreeSplitting {
        let conj = |ws: &[Word]| -> Vec<Word> { ws.iter().map(|w| w.conjugate_by(x)).collect() };
        verify_splitting(&conj(&self.basis_a), &conj(&self.basis_b), self.rank).expect("conjugate of a splitting")
    }

    /// Whether the class `w` is conjugate into a factor.
    pub fn is_elliptic(&self, w: &CyclicWord) -> bool {
        self.elliptic_factor(w).is_some()
    }

    /// The first factor the class `w` is conjugate into, decided by a cycle
    /// in the product of type graphs of `⟨w⟩` and the factor.
    pub fn elliptic_factor(&self, w: &CyclicWord) -> Option<Factor> {
        if w.is_empty() {
            return Some(Factor::A);
        }
        let cyclic = build_subgroup(&[w.as_word()], self.rank).ok()?;
        let tw = type_graph(&cyclic);
        Factor::BOTH.into_iter().find(|&f| {
            let p = product(&tw, &type_graph(self.factor(f))).expect("same rank");
            has_cycle(&p.graph)
        })
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let list = |ws: &[Word]| ws.iter().map(|w| alphabet.format(w.letters())).collect::<Vec<_>>().join(" ");
        format!("split {} | {}", list(&self.basis_a), list(&self.basis_b))
    }

    /// Reads `[split] <words...> | <words...>`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<FreeSplitting> {
        let body = text.trim();
        let body = body.strip_prefix("split").filter(|r| r.is_empty() || r.starts_with(char::is_whitespace)).unwrap_or(body);
        let (left, right) = body
            .split_once('|')
            .ok_or_else(|| Error::Malformed(format!("expected '<words> | <words>', got '{}'", text.trim())))?;
        if right.contains('|') {
            return Err(Error::Malformed(format!("more than one '|' in '{}'", text.trim())));
        }
        let words = |s: &str| s.split_whitespace().map(|t| alphabet.parse_word(t)).collect::<Result<Vec<_>>>();
        verify_splitting(&words(left)?, &words(right)?, alphabet.rank())
    }
}

/// Decision with a witness when the answer is yes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticityAnswer<W> {
    pub witness: Option<W>,
}

impl<W> EllipticityAnswer<W> {
    pub fn is_yes(&self) -> bool {
        self.witness.is_some()
    }
}

/// A nontrivial element elliptic in two splittings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonElement {
    /// Label of the cycle found in the product of type graphs.
    pub word: Word,
    pub first: Factor,
    pub second: Factor,
    /// `x` with `x·word·x⁻¹` in the factor of the first splitting.
    pub first_conjugator: Word,
    /// `y` with `y·word·y⁻¹` in the factor of the second splitting.
    pub second_conjugator: Word,
}

impl CommonElement {
    pub fn cyclic(&self) -> CyclicWord {
        CyclicWord::from_word(&self.word)
    }
}

/// Whether some nontrivial element is elliptic in both splittings, by
/// looking for a cycle in the product of the factors' type graphs for
/// the pairs `(A,C)`, `(A,D)`, `(B,C)`, `(B,D)` in that order.
pub fn splittings_distance_two(s1: &FreeSplitting, s2: &FreeSplitting) -> Result<EllipticityAnswer<CommonElement>> {
    if s1.rank != s2.rank {
        return Err(Error::AlphabetMismatch { generator: s1.rank.max(s2.rank) - 1, rank: s1.rank.min(s2.rank) });
    }
    for first in Factor::BOTH {
        let h = s1.factor(first);
        let th = type_graph(h);
        for second in Factor::BOTH {
            let k = s2.factor(second);
            let p = product(&th, &type_graph(k))?;
            if let Some(c) = find_cycle(&p.graph) {
                let first_conjugator = h.conjugator_into(&c.label).expect("cycle projects into the type");
                let second_conjugator = k.conjugator_into(&c.label).expect("cycle projects into the type");
                let witness = CommonElement { word: c.label, first, second, first_conjugator, second_conjugator };
                return Ok(EllipticityAnswer { witness: Some(witness) });
            }
        }
    }
    Ok(EllipticityAnswer { witness: None })
}

/// Whether `v` and `w` are both elliptic in some proper free splitting.
///
/// Minimizes the pair under Whitehead automorphisms and classifies the
/// minimal pair. A witness splitting is built on the letters of the minimal
/// pair and pulled back through the descent.
pub fn words_distance_two(v: &CyclicWord, w: &CyclicWord, rank: usize) -> Result<EllipticityAnswer<FreeSplitting>> {
    if v.is_empty() || w.is_empty() {
        return Err(Error::TrivialWord);
    }
    for l in v.letters().iter().chain(w.letters()) {
        if l.generator() >= rank {
            return Err(Error::AlphabetMismatch { generator: l.generator(), rank });
        }
    }
    let (min, descent) = minimize_tuple(&WordTuple::new(vec![v.clone(), w.clone()]), rank);
    let (v1, w1) = (&min.entries()[0], &min.entries()[1]);
    let class = classify_pair(v1, w1, rank);
    if !class.is_good() {
        return Ok(EllipticityAnswer { witness: None });
    }
    let x1 = if class.is_frugal() {
        v1.letter_support().union(&w1.letter_support()).copied().collect()
    } else {
        v1.letter_support()
    };
    let (mut basis_a, mut basis_b): (Vec<Word>, Vec<Word>) =
        (0..rank).map(Word::generator).partition(|g| x1.contains(&g.letters()[0].generator()));
    for tau in descent.iter().rev() {
        let inv = tau.inverse();
        basis_a = basis_a.iter().map(|u| inv.apply_word(u)).collect();
        basis_b = basis_b.iter().map(|u| inv.apply_word(u)).collect();
    }
    let s = verify_splitting(&basis_a, &basis_b, rank)?;
    Ok(EllipticityAnswer { witness: Some(s) })
}

/// Change of basis `ψ: X → basis(s)` and its inverse, as images of generators.
struct Rebase {
    forward: Vec<Word>,
    backward: Vec<Word>,
}

impl Rebase {
    fn new(s: &FreeSplitting) -> Result<Rebase> {
        let forward = s.full_basis();
        let moves = nielsen_reduce(&forward, s.rank)?;
        Ok(Rebase { forward, backward: inverse_images(&moves, s.rank) })
    }

    fn pull(&self, w: &Word) -> Word {
        w.substitute(&self.backward)
    }

    fn push(&self, w: &Word) -> Word {
        w.substitute(&self.forward)
    }
}

/// A primitive element of `F` in `H ∩ K`, where `H` is a factor of `s1` and
/// `K` a factor of `s2`.
pub fn primitive_in_intersection(s1: &FreeSplitting, f1: Factor, s2: &FreeSplitting, f2: Factor) -> Result<Word> {
    if s1.rank != s2.rank {
        return Err(Error::AlphabetMismatch { generator: s1.rank.max(s2.rank) - 1, rank: s1.rank.min(s2.rank) });
    }
    let psi = Rebase::new(s1)?;
    let pull_all = |ws: &[Word]| -> Vec<Word> { ws.iter().map(|w| psi.pull(w)).collect() };
    let h = build_subgroup(&pull_all(s1.basis(f1)), s1.rank)?;
    let k = build_subgroup(&pull_all(s2.basis(f2)), s1.rank)?;
    let meet = intersect(&h, &k)?;
    let first = spanning_tree_basis(&meet).into_iter().next().ok_or(Error::TrivialIntersection)?;
    Ok(psi.push(&first))
}

/// Elementary moves taking the basis of `s1` to the basis of `s2`, written
/// in the coordinates of `s1`'s basis.
pub fn nielsen_moves(s1: &FreeSplitting, s2: &FreeSplitting) -> Result<Vec<NielsenMove>> {
    if s1.rank != s2.rank {
        return Err(Error::AlphabetMismatch { generator: s1.rank.max(s2.rank) - 1, rank: s1.rank.min(s2.rank) });
    }
    if s1.rank < 2 {
        return Err(Error::RankTooSmall(s1.rank));
    }
    let psi = Rebase::new(s1)?;
    let y: Vec<Word> = s2.full_basis().iter().map(|w| psi.pull(w)).collect();
    nielsen_decompose(&y, s1.rank)
}

/// Upper bound `2m` on the distance between two splittings in the
/// ellipticity graph, `m` the length of a Nielsen decomposition.
pub fn nielsen_bound(s1: &FreeSplitting, s2: &FreeSplitting) -> Result<usize> {
    Ok(2 * nielsen_moves(s1, s2)?.len())
}
