//! Line-oriented graph format:
//!
//! ```text
//! v <count>
//! base <idx>
//! e <from> <to> <gen-char>
//! ```
//!
//! Edges are written sorted by `(from, gen, to)`; `base` is omitted for
//! unbased graphs. Blank lines and `#` comments are ignored when reading.

use std::fmt::Write;

use super::{Edge, XDigraph};
use crate::error::{Error, Result};
use crate::words::Alphabet;

impl XDigraph {
    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        let mut out = String::new();
        writeln!(out, "v {}", self.vertex_count).unwrap();
        if let Some(b) = self.base {
            writeln!(out, "base {b}").unwrap();
        }
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        for e in edges {
            writeln!(out, "e {} {} {}", e.from, e.to, alphabet.symbol(e.label)).unwrap();
        }
        out
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut out = String::from("digraph G {\n");
        for v in 0..self.vertex_count {
            let shape = if Some(v) == self.base { "doublecircle" } else { "circle" };
            writeln!(out, "  {v} [shape={shape}];").unwrap();
        }
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        for e in edges {
            writeln!(out, "  {} -> {} [label=\"{}\"];", e.from, e.to, alphabet.symbol(e.label)).unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<XDigraph> {
        let mut count = None;
        let mut base = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Malformed(format!("line {}: '{}'", lineno + 1, raw.trim()));
            let fields: Vec<&str> = line.split_whitespace().collect();
            let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
            match fields.as_slice() {
                ["v", n] if count.is_none() => count = Some(num(n)?),
                ["base", b] if base.is_none() => base = Some(num(b)?),
                ["e", from, to, label] => {
                    let mut chars = label.chars();
                    let (Some(c), None) = (chars.next(), chars.next()) else {
                        return Err(bad());
                    };
                    let g = alphabet.index_of(c).ok_or(Error::UnknownSymbol(c))?;
                    edges.push(Edge::new(num(from)?, num(to)?, g));
                }
                _ => return Err(bad()),
            }
        }
        let count = count.ok_or_else(|| Error::Malformed("missing 'v <count>' line".into()))?;
        XDigraph::new(alphabet.rank(), count, edges, base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stallings::build_subgroup;

    #[test]
    fn golden_serialization() {
        let a = Alphabet::of_rank(2).unwrap();
        let h = build_subgroup(&[a.parse_word("baB").unwrap()], 2).unwrap();
        assert_eq!(h.graph().to_text(&a), "v 2\nbase 0\ne 0 1 b\ne 1 1 a\n");
    }

    #[test]
    fn parse_round_trip() {
        let a = Alphabet::of_rank(3).unwrap();
        let h = build_subgroup(&[a.parse_word("abC").unwrap(), a.parse_word("cca").unwrap()], 3).unwrap();
        let text = h.graph().to_text(&a);
        assert_eq!(&XDigraph::parse(&text, &a).unwrap(), h.graph());
    }

    #[test]
    fn parse_errors() {
        let a = Alphabet::of_rank(2).unwrap();
        assert!(XDigraph::parse("e 0 0 a\n", &a).is_err());
        assert!(XDigraph::parse("v 1\ne 0 0 z\n", &a).is_err());
        assert!(XDigraph::parse("v 1\ne 0 3 a\n", &a).is_err());
        assert!(XDigraph::parse("v 1\nwhat\n", &a).is_err());
        let g = XDigraph::parse("# comment\nv 1\n\ne 0 0 b\n", &a).unwrap();
        assert_eq!(g.base(), None);
        assert_eq!(g.edges().len(), 1);
    }

    #[test]
    fn dot_marks_base() {
        let a = Alphabet::of_rank(1).unwrap();
        let g = XDigraph::new(1, 1, vec![Edge::new(0, 0, 0)], Some(0)).unwrap();
        assert_eq!(g.to_dot(&a), "digraph G {\n  0 [shape=doublecircle];\n  0 -> 0 [label=\"a\"];\n}\n");
    }
}
