//! Text forms:
//!
//! ```text
//! perm a->b b->A
//! mult B a:right c:conj
//! inv a
//! rmul a b
//! ```

use super::{Action, NielsenMove, WhiteheadAut};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter};

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::Keep => "keep",
            Action::Right => "right",
            Action::Left => "left",
            Action::Conj => "conj",
        }
    }

    fn parse(s: &str) -> Option<Action> {
        Action::ALL.into_iter().find(|a| a.name() == s)
    }
}

fn generator(alphabet: &Alphabet, s: &str) -> Result<usize> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => alphabet.index_of(c).ok_or(Error::UnknownSymbol(c)),
        _ => Err(Error::Malformed(format!("expected a generator, got '{s}'"))),
    }
}

fn letter(alphabet: &Alphabet, s: &str) -> Result<Letter> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => alphabet.parse_letter(c),
        _ => Err(Error::Malformed(format!("expected a letter, got '{s}'"))),
    }
}

impl WhiteheadAut {
    /// Lists only generators that move (`perm`) or are not kept (`mult`).
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        match self {
            WhiteheadAut::Relabel(images) => {
                let mut out = String::from("perm");
                for (g, l) in images.iter().enumerate() {
                    if *l != Letter::pos(g) {
                        out.push_str(&format!(" {}->{}", alphabet.symbol(g), alphabet.letter_char(*l)));
                    }
                }
                out
            }
            WhiteheadAut::Multiplier { mult, actions } => {
                let mut out = format!("mult {}", alphabet.letter_char(*mult));
                for (g, a) in actions.iter().enumerate() {
                    if *a != Action::Keep {
                        out.push_str(&format!(" {}:{}", alphabet.symbol(g), a.name()));
                    }
                }
                out
            }
        }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<WhiteheadAut> {
        let rank = alphabet.rank();
        let mut fields = text.split_whitespace();
        let bad = |what: &str| Error::Malformed(format!("{what} in '{}'", text.trim()));
        match fields.next() {
            Some("perm") => {
                let mut images: Vec<Letter> = (0..rank).map(Letter::pos).collect();
                let mut given = vec![false; rank];
                for f in fields {
                    let (from, to) = f.split_once("->").ok_or_else(|| bad("expected x->y"))?;
                    let g = generator(alphabet, from)?;
                    if std::mem::replace(&mut given[g], true) {
                        return Err(bad("repeated generator"));
                    }
                    images[g] = letter(alphabet, to)?;
                }
                WhiteheadAut::relabel(images)
            }
            Some("mult") => {
                let mult = letter(alphabet, fields.next().ok_or_else(|| bad("missing multiplier"))?)?;
                let mut actions = vec![Action::Keep; rank];
                for f in fields {
                    let (g, a) = f.split_once(':').ok_or_else(|| bad("expected x:action"))?;
                    actions[generator(alphabet, g)?] = Action::parse(a).ok_or_else(|| bad("unknown action"))?;
                }
                WhiteheadAut::multiplier(mult, actions)
            }
            _ => Err(bad("expected 'perm' or 'mult'")),
        }
    }
}

impl NielsenMove {
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        match *self {
            NielsenMove::Invert(i) => format!("inv {}", alphabet.symbol(i)),
            NielsenMove::RightMultiply(i, j) => format!("rmul {} {}", alphabet.symbol(i), alphabet.symbol(j)),
        }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<NielsenMove> {
        let fields: Vec<&str> = text.split_whitespace().collect();
        match fields.as_slice() {
            ["inv", x] => Ok(NielsenMove::Invert(generator(alphabet, x)?)),
            ["rmul", x, y] => NielsenMove::right_multiply(generator(alphabet, x)?, generator(alphabet, y)?),
            _ => Err(Error::Malformed(format!("expected 'inv x' or 'rmul x y', got '{}'", text.trim()))),
        }
    }
}
