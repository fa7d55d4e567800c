//! Command-line front end. [`run`] does all the work and returns the exit
//! code with captured output, so it can be tested without a process.
//!
//! Exit codes: 0 on success or a "yes"/`true` answer, 1 on a "no"/`false`
//! answer, 2 on usage, parse or domain errors.

use std::fmt::Write;

use clap::{Args, Parser, Subcommand};

use crate::ellipticity::{
    nielsen_moves, primitive_in_intersection, splittings_distance_two, words_distance_two, Factor, FreeSplitting,
};
use crate::error::{Error, Result};
use crate::stallings::{
    based_isomorphic, build_subgroup, conjugate_subgroups, digraph_isomorphic, intersect, spanning_tree_basis,
    type_graph, Subgroup, XDigraph,
};
use crate::whitehead::{classify_pair, equal_length_orbit, is_primitive, minimize_tuple, WordTuple};
use crate::words::{Alphabet, Show, Word};

#[derive(Parser, Debug)]
#[command(name = "freegroup", version, about = "Stallings graphs, Whitehead automorphisms and ellipticity in free groups")]
struct Cli {
    #[command(flatten)]
    alphabet: AlphabetArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct AlphabetArgs {
    /// Rank n; generators are a, b, c, ...
    #[arg(short = 'n', long = "rank", global = true, conflicts_with = "alphabet")]
    rank: Option<usize>,
    /// Explicit lowercase generator symbols, e.g. "xyz"
    #[arg(long, global = true)]
    alphabet: Option<String>,
}

impl AlphabetArgs {
    fn build(&self) -> Result<Alphabet> {
        match (&self.alphabet, self.rank) {
            (Some(s), _) => Alphabet::new(s.chars()),
            (None, Some(n)) => Alphabet::of_rank(n),
            (None, None) => Err(Error::Alphabet("give the alphabet with -n <rank> or --alphabet <chars>".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Free reduction of a word. Prints the word ("1" if trivial).
    Reduce { word: String },
    /// Cyclic reduction. Prints `core=<cyclic word> conjugator=<word>`.
    Cyclic { word: String },
    /// Stallings graph of the subgroup generated by the words.
    Graph {
        gens: Vec<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Membership of `-w <word>` in the subgroup generated by the words.
    /// Prints `true` or `false`.
    Member {
        gens: Vec<String>,
        #[arg(short = 'w', long = "word", required = true)]
        word: String,
    },
    /// Free basis of the subgroup read off a spanning tree, one word per line.
    Basis { gens: Vec<String> },
    /// Type graph (core with the hanging path at the base removed).
    Type {
        gens: Vec<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Intersection of `<gens> | <gens>`: its graph, or a basis with --basis.
    Intersect {
        gens: Vec<String>,
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Whether `<gens> | <gens>` are conjugate subgroups. Prints `true` or `false`.
    Conjugate { gens: Vec<String> },
    /// Isomorphism of two graph files ("-" reads stdin). Prints `true` or `false`.
    Iso {
        first: String,
        second: String,
        /// Require base vertices to correspond.
        #[arg(long)]
        based: bool,
    },
    /// Whitehead minimization of a tuple of cyclic words. Prints `min <words>`
    /// then one `step <automorphism>` line per descent step.
    Wmin {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Equal-length orbit of the minimized tuple, one tuple per line in
    /// discovery order.
    Orbit {
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Whether the word is primitive. Prints `true` or `false`.
    Primitive { word: String },
    /// Class of a pair of cyclic words: `frugal`, `disjoint`, `both` or
    /// `neither` (exit 1).
    Good { v: String, w: String },
    /// Whether two splittings, each given as one argument "a b | c", share a
    /// nontrivial elliptic element. Prints `yes witness=<cyclic word>` or `no`.
    #[command(name = "dist2-split")]
    Dist2Split { s1: String, s2: String },
    /// Whether two words are elliptic in a common splitting. Prints
    /// `yes witness=split ... | ...` or `no`.
    #[command(name = "dist2-word")]
    Dist2Word { v: String, w: String },
    /// Primitive element of F in the intersection of factor F1 of S1 and
    /// factor F2 of S2 (factors named A or B).
    #[command(name = "prim-intersect")]
    PrimIntersect { s1: String, f1: String, s2: String, f2: String },
    /// Nielsen bound 2m between two splittings; --moves also lists the m moves.
    #[command(name = "nielsen-bound")]
    NielsenBound {
        s1: String,
        s2: String,
        #[arg(long)]
        moves: bool,
    },
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line. `argv[0]` is the program name.
pub fn run<I, T>(argv: I, stdin: &str) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, stdin, &mut out) {
        Ok(answer) => Outcome { code: if answer { 0 } else { 1 }, stdout: out, stderr: String::new() },
        Err(e) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn words(alphabet: &Alphabet, items: &[String]) -> Result<Vec<Word>> {
    items.iter().map(|s| alphabet.parse_word(s)).collect()
}

fn subgroup(alphabet: &Alphabet, items: &[String]) -> Result<Subgroup> {
    build_subgroup(&words(alphabet, items)?, alphabet.rank())
}

fn two_subgroups(alphabet: &Alphabet, items: &[String]) -> Result<(Subgroup, Subgroup)> {
    let bars: Vec<usize> = items.iter().enumerate().filter(|(_, s)| s.as_str() == "|").map(|(i, _)| i).collect();
    let [bar] = bars.as_slice() else {
        return Err(Error::Malformed("expected '<words> | <words>' with a single '|' argument".into()));
    };
    Ok((subgroup(alphabet, &items[..*bar])?, subgroup(alphabet, &items[bar + 1..])?))
}

fn factor(s: &str) -> Result<Factor> {
    match s {
        "A" | "a" => Ok(Factor::A),
        "B" | "b" => Ok(Factor::B),
        _ => Err(Error::Malformed(format!("expected factor A or B, got '{s}'"))),
    }
}

fn graph_out(out: &mut String, g: &XDigraph, alphabet: &Alphabet, dot: bool) {
    out.push_str(&g.to_text(alphabet));
    if dot {
        out.push_str(&g.to_dot(alphabet));
    }
}

fn tuple_line(alphabet: &Alphabet, t: &WordTuple) -> String {
    t.entries().iter().map(|w| Show(alphabet, w).to_string()).collect::<Vec<_>>().join(" ")
}

fn read_graph(path: &str, stdin: &str, alphabet: &Alphabet) -> Result<XDigraph> {
    let text = if path == "-" {
        stdin.to_string()
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{path}: {e}")))?
    };
    XDigraph::parse(&text, alphabet)
}

fn bool_line(out: &mut String, b: bool) -> bool {
    writeln!(out, "{b}").unwrap();
    b
}

/// Writes the answer to `out` and returns whether it is affirmative.
fn execute(cli: &Cli, stdin: &str, out: &mut String) -> Result<bool> {
    let a = cli.alphabet.build()?;
    let a = &a;
    match &cli.command {
        Command::Reduce { word } => {
            writeln!(out, "{}", Show(a, &a.parse_word(word)?)).unwrap();
        }
        Command::Cyclic { word } => {
            let (core, conj) = a.parse_word(word)?.cyclic_reduce();
            writeln!(out, "core={} conjugator={}", Show(a, &core), Show(a, &conj)).unwrap();
        }
        Command::Graph { gens, dot } => graph_out(out, subgroup(a, gens)?.graph(), a, *dot),
        Command::Member { gens, word } => {
            let h = subgroup(a, gens)?;
            return Ok(bool_line(out, h.contains(&a.parse_word(word)?)?));
        }
        Command::Basis { gens } => {
            for w in spanning_tree_basis(&subgroup(a, gens)?) {
                writeln!(out, "{}", Show(a, &w)).unwrap();
            }
        }
        Command::Type { gens, dot } => graph_out(out, &type_graph(&subgroup(a, gens)?), a, *dot),
        Command::Intersect { gens, basis, dot } => {
            let (h, k) = two_subgroups(a, gens)?;
            let meet = intersect(&h, &k)?;
            if *basis {
                for w in spanning_tree_basis(&meet) {
                    writeln!(out, "{}", Show(a, &w)).unwrap();
                }
            } else {
                graph_out(out, meet.graph(), a, *dot);
            }
        }
        Command::Conjugate { gens } => {
            let (h, k) = two_subgroups(a, gens)?;
            return Ok(bool_line(out, conjugate_subgroups(&h, &k)));
        }
        Command::Iso { first, second, based } => {
            if first == "-" && second == "-" {
                return Err(Error::Malformed("only one graph can come from stdin".into()));
            }
            let g = read_graph(first, stdin, a)?;
            let h = read_graph(second, stdin, a)?;
            let iso = if *based { based_isomorphic(&g, &h) } else { digraph_isomorphic(&g, &h) };
            return Ok(bool_line(out, iso));
        }
        Command::Wmin { words } => {
            let t = WordTuple::new(words.iter().map(|s| a.parse_cyclic(s)).collect::<Result<_>>()?);
            let (min, descent) = minimize_tuple(&t, a.rank());
            writeln!(out, "min {}", tuple_line(a, &min)).unwrap();
            for tau in &descent {
                writeln!(out, "step {}", tau.to_text(a)).unwrap();
            }
        }
        Command::Orbit { words } => {
            let t = WordTuple::new(words.iter().map(|s| a.parse_cyclic(s)).collect::<Result<_>>()?);
            let (min, _) = minimize_tuple(&t, a.rank());
            for member in equal_length_orbit(&min, a.rank()) {
                writeln!(out, "{}", tuple_line(a, &member)).unwrap();
            }
        }
        Command::Primitive { word } => {
            return Ok(bool_line(out, is_primitive(&a.parse_word(word)?, a.rank())?));
        }
        Command::Good { v, w } => {
            let class = classify_pair(&a.parse_cyclic(v)?, &a.parse_cyclic(w)?, a.rank());
            writeln!(out, "{class}").unwrap();
            return Ok(class.is_good());
        }
        Command::Dist2Split { s1, s2 } => {
            let ans = splittings_distance_two(&FreeSplitting::parse(s1, a)?, &FreeSplitting::parse(s2, a)?)?;
            match &ans.witness {
                Some(c) => writeln!(out, "yes witness={}", Show(a, &c.cyclic())).unwrap(),
                None => writeln!(out, "no").unwrap(),
            }
            return Ok(ans.is_yes());
        }
        Command::Dist2Word { v, w } => {
            let ans = words_distance_two(&a.parse_cyclic(v)?, &a.parse_cyclic(w)?, a.rank())?;
            match &ans.witness {
                Some(s) => writeln!(out, "yes witness={}", s.to_text(a)).unwrap(),
                None => writeln!(out, "no").unwrap(),
            }
            return Ok(ans.is_yes());
        }
        Command::PrimIntersect { s1, f1, s2, f2 } => {
            let (s1, s2) = (FreeSplitting::parse(s1, a)?, FreeSplitting::parse(s2, a)?);
            let p = primitive_in_intersection(&s1, factor(f1)?, &s2, factor(f2)?)?;
            writeln!(out, "{}", Show(a, &p)).unwrap();
        }
        Command::NielsenBound { s1, s2, moves } => {
            let m = nielsen_moves(&FreeSplitting::parse(s1, a)?, &FreeSplitting::parse(s2, a)?)?;
            writeln!(out, "{}", 2 * m.len()).unwrap();
            if *moves {
                for mv in &m {
                    writeln!(out, "{}", mv.to_text(a)).unwrap();
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &str) -> Outcome {
        run(std::iter::once("freegroup").chain(args.split_whitespace()), "")
    }

    #[test]
    fn reduce_and_exit_codes() {
        assert_eq!(cli("reduce -n 2 aA"), Outcome { code: 0, stdout: "1\n".into(), stderr: String::new() });
        assert_eq!(cli("reduce -n 2 abBA").stdout, "1\n");
        assert_eq!(cli("reduce --alphabet xy xyY").stdout, "x\n");
        assert_eq!(cli("reduce -n 2 abz").code, 2);
        assert_eq!(cli("reduce abz").code, 2);
        assert_eq!(cli("frobnicate -n 2").code, 2);
        assert_eq!(cli("--help").code, 0);
    }

    #[test]
    fn member_false_exits_one() {
        let o = cli("member -n 2 baB -w a");
        assert_eq!((o.code, o.stdout.as_str()), (1, "false\n"));
        assert_eq!(cli("member -n 2 baB -w baaB").stdout, "true\n");
    }

    #[test]
    fn bars_are_required() {
        assert_eq!(cli("intersect -n 2 a b").code, 2);
        assert_eq!(cli("conjugate -n 2 a | | b").code, 2);
    }

    #[test]
    fn iso_from_stdin() {
        let o = run(["freegroup", "iso", "-n", "1", "-", "/nonexistent"], "v 1\ne 0 0 a\n");
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("/nonexistent"));
    }
}
