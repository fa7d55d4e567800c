//! Whitehead automorphisms acting on cyclic words and tuples of cyclic
//! words: descent to minimal length, equal-length orbits, orbit equality,
//! primitivity, and the frugal/disjoint classification of pairs.

mod nielsen;
mod text;

pub use nielsen::{apply_moves, inverse_images, nielsen_decompose, nielsen_reduce, NielsenMove};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::words::{free_reduce, CyclicWord, Letter, Word};

/// What a multiplier automorphism does to one generator `x`, for multiplier `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Action {
    /// `x ↦ x`
    Keep,
    /// `x ↦ x·a`
    Right,
    /// `x ↦ a⁻¹·x`
    Left,
    /// `x ↦ a⁻¹·x·a`
    Conj,
}

impl Action {
    const ALL: [Action; 4] = [Action::Keep, Action::Right, Action::Left, Action::Conj];
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WhiteheadAut {
    /// Signed permutation: the image letter of each generator.
    Relabel(Vec<Letter>),
    /// Multiplier type. `actions[gen(mult)]` is always `Keep`.
    Multiplier { mult: Letter, actions: Vec<Action> },
}

impl WhiteheadAut {
    pub fn relabel(images: Vec<Letter>) -> Result<Self> {
        let rank = images.len();
        let mut seen = vec![false; rank];
        for l in &images {
            if l.generator() >= rank {
                return Err(Error::AlphabetMismatch { generator: l.generator(), rank });
            }
            if std::mem::replace(&mut seen[l.generator()], true) {
                return Err(Error::Malformed("relabeling is not a bijection".into()));
            }
        }
        Ok(WhiteheadAut::Relabel(images))
    }

    pub fn multiplier(mult: Letter, actions: Vec<Action>) -> Result<Self> {
        let rank = actions.len();
        if mult.generator() >= rank {
            return Err(Error::AlphabetMismatch { generator: mult.generator(), rank });
        }
        if actions[mult.generator()] != Action::Keep {
            return Err(Error::Malformed("the multiplier's own generator must be kept".into()));
        }
        Ok(WhiteheadAut::Multiplier { mult, actions })
    }

    pub fn rank(&self) -> usize {
        match self {
            WhiteheadAut::Relabel(images) => images.len(),
            WhiteheadAut::Multiplier { actions, .. } => actions.len(),
        }
    }

    pub fn identity(rank: usize) -> Self {
        WhiteheadAut::Relabel((0..rank).map(Letter::pos).collect())
    }

    pub fn multiplier_letter(&self) -> Option<Letter> {
        match self {
            WhiteheadAut::Multiplier { mult, .. } => Some(*mult),
            WhiteheadAut::Relabel(_) => None,
        }
    }

    /// Image of a single generator as a (reduced) word.
    pub fn image_of_generator(&self, g: usize) -> Word {
        let x = Letter::pos(g);
        match self {
            WhiteheadAut::Relabel(images) => Word::letter(images[g]),
            WhiteheadAut::Multiplier { mult, actions } => {
                let a = *mult;
                let letters = match actions[g] {
                    Action::Keep => vec![x],
                    Action::Right => vec![x, a],
                    Action::Left => vec![a.inv(), x],
                    Action::Conj => vec![a.inv(), x, a],
                };
                free_reduce(letters)
            }
        }
    }

    pub fn images(&self) -> Vec<Word> {
        (0..self.rank()).map(|g| self.image_of_generator(g)).collect()
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        w.substitute(&self.images())
    }

    /// Image of a conjugacy class, cyclically reduced and canonically rotated.
    pub fn apply_cyclic(&self, w: &CyclicWord) -> CyclicWord {
        CyclicWord::from_word(&w.as_word().substitute(&self.images()))
    }

    pub fn apply_tuple(&self, t: &WordTuple) -> WordTuple {
        let images = self.images();
        WordTuple(t.0.iter().map(|w| CyclicWord::from_word(&w.as_word().substitute(&images))).collect())
    }

    pub fn inverse(&self) -> WhiteheadAut {
        match self {
            WhiteheadAut::Relabel(images) => {
                let mut inv = vec![Letter::pos(0); images.len()];
                for (g, l) in images.iter().enumerate() {
                    inv[l.generator()] = Letter::new(g, l.is_inverse());
                }
                WhiteheadAut::Relabel(inv)
            }
            WhiteheadAut::Multiplier { mult, actions } => {
                WhiteheadAut::Multiplier { mult: mult.inv(), actions: actions.clone() }
            }
        }
    }
}

/// All non-identity multiplier automorphisms: multipliers in letter order,
/// action tables in base-4 counting order (first other generator is the
/// least significant digit).
pub fn enumerate_whitehead(rank: usize) -> Vec<WhiteheadAut> {
    if rank > 5 {
        log::warn!("enumerating Whitehead automorphisms in rank {rank}: 2n·4^(n-1) grows quickly");
    }
    let mut out = Vec::new();
    if rank < 2 {
        return out;
    }
    let tables = 4usize.pow((rank - 1) as u32);
    for g in 0..rank {
        for mult in [Letter::pos(g), Letter::neg(g)] {
            for code in 1..tables {
                let mut actions = vec![Action::Keep; rank];
                let mut c = code;
                for (x, slot) in actions.iter_mut().enumerate() {
                    if x == g {
                        continue;
                    }
                    *slot = Action::ALL[c % 4];
                    c /= 4;
                }
                out.push(WhiteheadAut::Multiplier { mult, actions });
            }
        }
    }
    out
}

/// All `n!·2ⁿ` signed permutations, identity first.
pub fn enumerate_relabelings(rank: usize) -> Vec<WhiteheadAut> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    permutations(&mut (0..rank).collect::<Vec<_>>(), 0, &mut perms);
    perms.sort();
    let mut out = Vec::with_capacity(perms.len() << rank);
    for p in &perms {
        for signs in 0u64..(1u64 << rank) {
            out.push(WhiteheadAut::Relabel(
                p.iter().enumerate().map(|(i, &g)| Letter::new(g, signs >> i & 1 == 1)).collect(),
            ));
        }
    }
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// Ordered tuple of cyclic words acted on diagonally.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordTuple(pub Vec<CyclicWord>);

impl WordTuple {
    pub fn new(entries: Vec<CyclicWord>) -> Self {
        WordTuple(entries)
    }

    pub fn entries(&self) -> &[CyclicWord] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_len(&self) -> usize {
        self.0.iter().map(CyclicWord::len).sum()
    }
}

/// First-improvement descent over the multiplier automorphisms until no
/// single one shortens the tuple. Returns the minimal tuple and the
/// automorphisms applied, in order.
pub fn minimize_tuple(ws: &WordTuple, rank: usize) -> (WordTuple, Vec<WhiteheadAut>) {
    let auts = enumerate_whitehead(rank);
    let images: Vec<Vec<Word>> = auts.iter().map(WhiteheadAut::images).collect();
    let mut cur = ws.clone();
    let mut descent = Vec::new();
    'outer: loop {
        let len = cur.total_len();
        for (tau, imgs) in auts.iter().zip(&images) {
            let next = WordTuple(cur.0.iter().map(|w| CyclicWord::from_word(&w.as_word().substitute(imgs))).collect());
            if next.total_len() < len {
                cur = next;
                descent.push(tau.clone());
                continue 'outer;
            }
        }
        return (cur, descent);
    }
}

/// Breadth-first closure of `min` under every Whitehead automorphism
/// (multipliers and relabelings) that preserves total length, in discovery
/// order.
pub fn equal_length_orbit(min: &WordTuple, rank: usize) -> IndexSet<WordTuple> {
    let auts: Vec<Vec<Word>> = enumerate_whitehead(rank)
        .into_iter()
        .chain(enumerate_relabelings(rank))
        .map(|t| t.images())
        .collect();
    let len = min.total_len();
    let mut seen = IndexSet::new();
    seen.insert(min.clone());
    let mut queue = VecDeque::from([min.clone()]);
    while let Some(t) = queue.pop_front() {
        for imgs in &auts {
            let next = WordTuple(t.0.iter().map(|w| CyclicWord::from_word(&w.as_word().substitute(imgs))).collect());
            if next.total_len() == len && seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Whether some automorphism carries `u` to `v` entrywise.
pub fn same_orbit(u: &WordTuple, v: &WordTuple, rank: usize) -> Result<bool> {
    if u.len() != v.len() {
        return Err(Error::TupleLength(u.len(), v.len()));
    }
    let (mu, _) = minimize_tuple(u, rank);
    let (mv, _) = minimize_tuple(v, rank);
    if mu.total_len() != mv.total_len() {
        return Ok(false);
    }
    Ok(equal_length_orbit(&mu, rank).contains(&mv))
}

/// An element is primitive iff its conjugacy class descends to length one.
pub fn is_primitive(w: &Word, rank: usize) -> Result<bool> {
    if w.is_empty() {
        return Err(Error::TrivialWord);
    }
    let (min, _) = minimize_tuple(&WordTuple(vec![CyclicWord::from_word(w)]), rank);
    Ok(min.total_len() == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairClass {
    Frugal,
    Disjoint,
    Both,
    Neither,
}

impl PairClass {
    pub fn is_good(self) -> bool {
        self != PairClass::Neither
    }

    pub fn is_frugal(self) -> bool {
        matches!(self, PairClass::Frugal | PairClass::Both)
    }

    pub fn is_disjoint(self) -> bool {
        matches!(self, PairClass::Disjoint | PairClass::Both)
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::Frugal => "frugal",
            PairClass::Disjoint => "disjoint",
            PairClass::Both => "both",
            PairClass::Neither => "neither",
        })
    }
}

/// Frugal: together the words miss a generator. Disjoint: they share none.
pub fn classify_pair(v: &CyclicWord, w: &CyclicWord, rank: usize) -> PairClass {
    let lv = v.letter_support();
    let lw = w.letter_support();
    let frugal = lv.union(&lw).count() != rank;
    let disjoint = lv.intersection(&lw).next().is_none();
    match (frugal, disjoint) {
        (true, true) => PairClass::Both,
        (true, false) => PairClass::Frugal,
        (false, true) => PairClass::Disjoint,
        (false, false) => PairClass::Neither,
    }
}

/// Generators occurring in a cyclic word, with their inverses.
pub fn signed_support(w: &CyclicWord) -> BTreeSet<Letter> {
    w.letter_support()
        .into_iter()
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Alphabet;
    use proptest::prelude::*;

    fn cw(a: &Alphabet, s: &str) -> CyclicWord {
        a.parse_cyclic(s).unwrap()
    }

    fn tuple(a: &Alphabet, ws: &[&str]) -> WordTuple {
        WordTuple(ws.iter().map(|s| cw(a, s)).collect())
    }

    #[test]
    fn apply_examples() {
        let a = Alphabet::of_rank(2).unwrap();
        let swap = WhiteheadAut::relabel(vec![Letter::pos(1), Letter::pos(0)]).unwrap();
        assert_eq!(swap.apply_cyclic(&cw(&a, "aB")), cw(&a, "bA"));

        let right_b = WhiteheadAut::multiplier(Letter::pos(1), vec![Action::Right, Action::Keep]).unwrap();
        assert_eq!(right_b.apply_cyclic(&cw(&a, "a")), cw(&a, "ab"));

        let right_binv = WhiteheadAut::multiplier(Letter::neg(1), vec![Action::Right, Action::Keep]).unwrap();
        assert_eq!(right_binv.apply_cyclic(&cw(&a, "ab")), cw(&a, "a"));
    }

    #[test]
    fn multiplier_rejects_acting_on_itself() {
        assert!(WhiteheadAut::multiplier(Letter::pos(0), vec![Action::Right, Action::Keep]).is_err());
        assert!(WhiteheadAut::relabel(vec![Letter::pos(0), Letter::neg(0)]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert!(enumerate_whitehead(1).is_empty());
        let two = enumerate_whitehead(2);
        assert_eq!(two.len(), 12);
        let distinct: std::collections::HashSet<Vec<Word>> = two.iter().map(WhiteheadAut::images).collect();
        assert_eq!(distinct.len(), 12);
        assert_eq!(enumerate_whitehead(3).len(), 6 * 15);
        assert_eq!(enumerate_relabelings(2).len(), 8);
        assert_eq!(enumerate_relabelings(3).len(), 48);
        assert_eq!(enumerate_relabelings(2)[0], WhiteheadAut::identity(2));
    }

    #[test]
    fn enumeration_order() {
        let auts = enumerate_whitehead(3);
        assert_eq!(auts[0].multiplier_letter(), Some(Letter::pos(0)));
        assert_eq!(
            auts[0],
            WhiteheadAut::Multiplier { mult: Letter::pos(0), actions: vec![Action::Keep, Action::Right, Action::Keep] }
        );
        assert_eq!(auts[15].multiplier_letter(), Some(Letter::neg(0)));
        assert_eq!(auts[30].multiplier_letter(), Some(Letter::pos(1)));
    }

    #[test]
    fn minimize_examples() {
        let a = Alphabet::of_rank(2).unwrap();
        let (min, descent) = minimize_tuple(&tuple(&a, &["a", "b"]), 2);
        assert_eq!(min, tuple(&a, &["a", "b"]));
        assert!(descent.is_empty());

        let (min, descent) = minimize_tuple(&tuple(&a, &["ab"]), 2);
        assert_eq!(min.total_len(), 1);
        assert_eq!(descent.len(), 1);

        let (min, descent) = minimize_tuple(&tuple(&a, &["abAB"]), 2);
        assert_eq!(min.total_len(), 4);
        assert!(descent.is_empty());
    }

    #[test]
    fn commutator_has_no_shortening_automorphism() {
        // oracle: every multiplier automorphism and relabeling of F(a,b)
        let a = Alphabet::of_rank(2).unwrap();
        let c = cw(&a, "abAB");
        for t in enumerate_whitehead(2).iter().chain(enumerate_relabelings(2).iter()) {
            assert!(t.apply_cyclic(&c).len() >= 4);
        }
        let ab = cw(&a, "ab");
        assert!(enumerate_whitehead(2).iter().any(|t| t.apply_cyclic(&ab).len() == 1));
    }

    #[test]
    fn orbit_examples() {
        let a = Alphabet::of_rank(2).unwrap();
        let orbit = equal_length_orbit(&tuple(&a, &["a"]), 2);
        let got: BTreeSet<WordTuple> = orbit.into_iter().collect();
        let want: BTreeSet<WordTuple> = ["a", "A", "b", "B"].iter().map(|s| tuple(&a, &[s])).collect();
        assert_eq!(got, want);

        let comm = tuple(&a, &["abAB"]);
        assert!(equal_length_orbit(&comm, 2).contains(&comm));

        let pair = equal_length_orbit(&tuple(&a, &["a", "b"]), 2);
        assert!(pair.contains(&tuple(&a, &["b", "a"])));
        assert_eq!(pair.get_index(0), Some(&tuple(&a, &["a", "b"])));
    }

    #[test]
    fn same_orbit_examples() {
        let a = Alphabet::of_rank(2).unwrap();
        assert!(same_orbit(&tuple(&a, &["ab"]), &tuple(&a, &["a"]), 2).unwrap());
        assert!(!same_orbit(&tuple(&a, &["abAB"]), &tuple(&a, &["a"]), 2).unwrap());
        assert!(same_orbit(&tuple(&a, &["a"]), &tuple(&a, &["a"]), 2).unwrap());
        assert!(matches!(
            same_orbit(&tuple(&a, &["a"]), &tuple(&a, &["a", "b"]), 2),
            Err(Error::TupleLength(1, 2))
        ));
        // commutator classes are mapped to each other or inverted, never to a square
        assert!(same_orbit(&tuple(&a, &["abAB"]), &tuple(&a, &["baBA"]), 2).unwrap());
        assert!(!same_orbit(&tuple(&a, &["aabb"]), &tuple(&a, &["abAB"]), 2).unwrap());
    }

    #[test]
    fn primitivity_examples() {
        let a = Alphabet::of_rank(2).unwrap();
        let w = |s: &str| a.parse_word(s).unwrap();
        assert!(is_primitive(&w("a"), 2).unwrap());
        assert!(!is_primitive(&w("abAB"), 2).unwrap());
        // {a, aab} is a basis, so aab is primitive
        assert!(is_primitive(&w("aab"), 2).unwrap());
        assert!(!is_primitive(&w("aa"), 2).unwrap());
        assert!(!is_primitive(&w("aabb"), 2).unwrap());
        assert!(matches!(is_primitive(&Word::identity(), 2), Err(Error::TrivialWord)));
    }

    #[test]
    fn classify_examples() {
        let a = Alphabet::of_rank(2).unwrap();
        assert_eq!(classify_pair(&cw(&a, "a"), &cw(&a, "b"), 2), PairClass::Disjoint);
        assert_eq!(classify_pair(&cw(&a, "a"), &cw(&a, "a"), 2), PairClass::Frugal);
        assert_eq!(classify_pair(&cw(&a, "ab"), &cw(&a, "a"), 2), PairClass::Neither);
        let a3 = Alphabet::of_rank(3).unwrap();
        assert_eq!(classify_pair(&cw(&a3, "a"), &cw(&a3, "b"), 3), PairClass::Both);
        assert!(!PairClass::Neither.is_good());
    }

    fn cyclic_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = CyclicWord> {
        prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
            .prop_map(|v| CyclicWord::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
            .prop_map(|v| free_reduce(v.into_iter().map(|(g, i)| Letter::new(g, i))))
    }

    proptest! {
        #[test]
        fn descent_strictly_shortens(ws in prop::collection::vec(cyclic_strategy(3, 8), 1..3)) {
            let start = WordTuple(ws);
            let (min, descent) = minimize_tuple(&start, 3);
            let mut cur = start.clone();
            for t in &descent {
                let next = t.apply_tuple(&cur);
                prop_assert!(next.total_len() < cur.total_len());
                cur = next;
            }
            prop_assert_eq!(cur, min);
        }

        #[test]
        fn same_orbit_is_symmetric_and_invariant(
            ws in prop::collection::vec(cyclic_strategy(2, 6), 1..3),
            pick in 0usize..20,
            other in prop::collection::vec(cyclic_strategy(2, 6), 1..3),
        ) {
            let u = WordTuple(ws);
            prop_assert!(same_orbit(&u, &u, 2).unwrap());
            let all: Vec<WhiteheadAut> = enumerate_whitehead(2).into_iter().chain(enumerate_relabelings(2)).collect();
            let moved = all[pick % all.len()].apply_tuple(&u);
            prop_assert!(same_orbit(&u, &moved, 2).unwrap());
            prop_assert!(same_orbit(&moved, &u, 2).unwrap());
            if other.len() == u.len() {
                let v = WordTuple(other);
                prop_assert_eq!(same_orbit(&u, &v, 2).unwrap(), same_orbit(&v, &u, 2).unwrap());
            }
        }
    }

    #[test]
    fn inverse_undoes_every_generated_automorphism() {
        let all: Vec<WhiteheadAut> = enumerate_whitehead(2).into_iter().chain(enumerate_relabelings(2)).collect();
        let words = crate::words::tests_support::all_reduced(2, 4);
        for t in &all {
            let inv = t.inverse();
            for w in &words {
                assert_eq!(&inv.apply_word(&t.apply_word(w)), w);
                assert_eq!(&t.apply_word(&inv.apply_word(w)), w);
            }
        }
    }

    #[test]
    fn badmult_dichotomy_rank_three() {
        let auts = enumerate_whitehead(3);
        for w in crate::words::tests_support::all_cyclic(3, 4) {
            let support = signed_support(&w);
            for t in &auts {
                let image = t.apply_cyclic(&w);
                if !support.contains(&t.multiplier_letter().unwrap()) {
                    assert!(image == w || image.len() > w.len());
                }
                if image.len() <= w.len() {
                    assert!(image.letter_support().is_subset(&w.letter_support()));
                }
            }
        }
    }

    #[test]
    fn good_minimal_pairs_stay_good_across_equal_length_moves() {
        for rank in [2usize, 3] {
            let words = crate::words::tests_support::all_cyclic(rank, if rank == 2 { 4 } else { 3 });
            let auts: Vec<WhiteheadAut> = enumerate_whitehead(rank).into_iter().chain(enumerate_relabelings(rank)).collect();
            for v in words.iter().filter(|w| !w.is_empty()) {
                for w in words.iter().filter(|w| !w.is_empty()) {
                    let pair = WordTuple(vec![v.clone(), w.clone()]);
                    if !classify_pair(v, w, rank).is_good() || minimize_tuple(&pair, rank).0.total_len() != pair.total_len() {
                        continue;
                    }
                    for t in &auts {
                        let img = t.apply_tuple(&pair);
                        if img.total_len() == pair.total_len() {
                            assert!(classify_pair(&img.0[0], &img.0[1], rank).is_good());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn random_word_images_are_automorphic() {
        // applying then inverting on random longer words
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        let all = enumerate_whitehead(3);
        runner
            .run(&(word_strategy(3, 12), 0..all.len()), |(w, i)| {
                prop_assert_eq!(all[i].inverse().apply_word(&all[i].apply_word(&w)), w);
                Ok(())
            })
            .unwrap();
    }
}
