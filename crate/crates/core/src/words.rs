//! Letters, freely reduced words and cyclic words over a finite alphabet.
//!
//! Text format: one ASCII character per generator, lowercase for the
//! generator and uppercase for its inverse. The empty word is written `1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Ordered set of generator names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    /// Alphabet from explicit generator characters. Each must be an ASCII
    /// lowercase letter, since the uppercase form denotes the inverse.
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::Alphabet("alphabet must have at least one generator".into()));
        }
        let mut seen = BTreeSet::new();
        for &c in &symbols {
            if !c.is_ascii_lowercase() {
                return Err(Error::Alphabet(format!("generator '{c}' is not a lowercase ASCII letter")));
            }
            if !seen.insert(c) {
                return Err(Error::Alphabet(format!("duplicate generator '{c}'")));
            }
        }
        Ok(Alphabet { symbols })
    }

    /// The standard alphabet `a, b, c, ...` of the given rank (1..=26).
    pub fn of_rank(rank: usize) -> Result<Self> {
        if rank == 0 || rank > 26 {
            return Err(Error::Alphabet(format!("rank must be between 1 and 26, got {rank}")));
        }
        Alphabet::new((b'a'..b'a' + rank as u8).map(char::from))
    }

    pub fn rank(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, generator: usize) -> char {
        self.symbols[generator]
    }

    /// Generator index of a lowercase symbol.
    pub fn index_of(&self, symbol: char) -> Option<usize> {
        self.symbols.iter().position(|&c| c == symbol)
    }

    pub fn parse_letter(&self, c: char) -> Result<Letter> {
        if c.is_ascii_lowercase() {
            if let Some(g) = self.index_of(c) {
                return Ok(Letter::pos(g));
            }
        } else if c.is_ascii_uppercase() {
            if let Some(g) = self.index_of(c.to_ascii_lowercase()) {
                return Ok(Letter::neg(g));
            }
        }
        Err(Error::UnknownSymbol(c))
    }

    pub fn letter_char(&self, l: Letter) -> char {
        let c = self.symbols[l.generator()];
        if l.is_inverse() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    /// All letters in the total order used for tie-breaking: `a < A < b < B < ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.rank()).flat_map(|g| [Letter::pos(g), Letter::neg(g)])
    }

    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|l| l.generator() >= self.rank()) {
            Some(l) => Err(Error::AlphabetMismatch {
                generator: l.generator(),
                rank: self.rank(),
            }),
            None => Ok(()),
        }
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        Ok(free_reduce(self.parse_letters(text)?))
    }

    pub fn parse_cyclic(&self, text: &str) -> Result<CyclicWord> {
        Ok(CyclicWord::from_letters(self.parse_letters(text)?))
    }

    fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Malformed("empty token; write the identity as '1'".into()));
        }
        if text == "1" {
            return Ok(Vec::new());
        }
        text.chars().map(|c| self.parse_letter(c)).collect()
    }

    /// Renders letters, writing `1` for the empty sequence.
    pub fn format(&self, letters: &[Letter]) -> String {
        if letters.is_empty() {
            return "1".to_string();
        }
        letters.iter().map(|&l| self.letter_char(l)).collect()
    }
}

/// A generator or its formal inverse. Ordered by `(generator, sign)` with the
/// positive letter first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    generator: u32,
    inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter {
            generator: generator as u32,
            inverse,
        }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn generator(self) -> usize {
        self.generator as usize
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word, i.e. an element of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

/// Freely reduces a letter sequence with a single stack pass.
pub fn free_reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut out: Vec<Letter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::pos(g)])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        free_reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// `x · self · x⁻¹`
    pub fn conjugate_by(&self, x: &Word) -> Word {
        x.concat(self).concat(&x.inverse())
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        free_reduce((0..k.unsigned_abs()).flat_map(|_| base.0.iter().copied()))
    }

    /// Image under the endomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        free_reduce(self.0.iter().flat_map(|l| {
            let img = images[l.generator()].letters();
            let (fwd, bwd) = if l.is_inverse() { (None, Some(img)) } else { (Some(img), None) };
            fwd.into_iter()
                .flatten()
                .copied()
                .chain(bwd.into_iter().flat_map(|s| s.iter().rev().map(|x| x.inv())))
        }))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.0.first(), self.0.last()) {
            (Some(&f), Some(&l)) => self.0.len() == 1 || f != l.inv(),
            _ => true,
        }
    }

    /// Splits the word as `conjugator · core · conjugator⁻¹` with the core
    /// in canonical rotation and the shortest possible conjugator.
    pub fn cyclic_reduce(&self) -> (CyclicWord, Word) {
        let n = self.0.len();
        let mut strip = 0;
        while strip * 2 + 1 < n && self.0[strip] == self.0[n - 1 - strip].inv() {
            strip += 1;
        }
        let prefix = &self.0[..strip];
        let middle = &self.0[strip..n - strip];
        let k = middle.len();
        if k == 0 {
            return (CyclicWord(Vec::new()), Word::identity());
        }
        let start = least_rotation(middle);
        let canonical: Vec<Letter> = rotate(middle, start);
        let period = (1..=k)
            .find(|&d| k.is_multiple_of(d) && (0..k).all(|i| middle[i] == middle[(i + d) % k]))
            .unwrap_or(k);
        // With middle = p·q and canonical = q·p, both prefix·p and
        // prefix·q⁻¹ conjugate canonical back to self. Every shift by a
        // multiple of the period is also admissible.
        let mut best: Option<Word> = None;
        let mut shift = start % period;
        while shift < k {
            let (p, q) = middle.split_at(shift);
            let via_p = free_reduce(prefix.iter().chain(p.iter()).copied());
            let via_q = free_reduce(prefix.iter().copied().chain(q.iter().rev().map(|l| l.inv())));
            for cand in [via_p, via_q] {
                let better = match &best {
                    None => true,
                    Some(b) => (cand.len(), &cand) < (b.len(), b),
                };
                if better {
                    best = Some(cand);
                }
            }
            shift += period;
        }
        (CyclicWord(canonical), best.unwrap_or_default())
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        free_reduce(letters)
    }
}

fn rotate(s: &[Letter], start: usize) -> Vec<Letter> {
    s[start..].iter().chain(s[..start].iter()).copied().collect()
}

/// Start index of the lexicographically least rotation (two-pointer scan).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = &s[(i + k) % n];
        let b = &s[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

/// A cyclically reduced word stored in its least rotation, so that equality
/// of conjugacy classes is structural equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicWord(Vec<Letter>);

impl CyclicWord {
    /// The conjugacy class of the free reduction of `letters`.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        free_reduce(letters).cyclic_reduce().0
    }

    pub fn from_word(w: &Word) -> Self {
        w.cyclic_reduce().0
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The stored rotation read as an element of the free group.
    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }

    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::from_letters(self.0.iter().rev().map(|l| l.inv()))
    }

    /// Generators occurring in the word with either sign.
    pub fn letter_support(&self) -> BTreeSet<usize> {
        letter_support(&self.0)
    }
}

pub fn letter_support(letters: &[Letter]) -> BTreeSet<usize> {
    letters.iter().map(|l| l.generator()).collect()
}

/// Display helper binding a value to an alphabet.
pub struct Show<'a, T: ?Sized>(pub &'a Alphabet, pub &'a T);

impl fmt::Display for Show<'_, Word> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1.letters()))
    }
}

impl fmt::Display for Show<'_, CyclicWord> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.format(self.1.letters()))
    }
}


#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    /// Every reduced word of length at most `max_len`.
    pub fn all_reduced(rank: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::identity()];
        let mut frontier = vec![Word::identity()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for g in 0..rank {
                    for l in [Letter::pos(g), Letter::neg(g)] {
                        if w.0.last() == Some(&l.inv()) {
                            continue;
                        }
                        let mut v = w.0.clone();
                        v.push(l);
                        next.push(Word(v));
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Every conjugacy class with cyclically reduced length at most `max_len`.
    pub fn all_cyclic(rank: usize, max_len: usize) -> Vec<CyclicWord> {
        let set: BTreeSet<CyclicWord> = all_reduced(rank, max_len).iter().map(CyclicWord::from_word).collect();
        set.into_iter().collect()
    }
}
