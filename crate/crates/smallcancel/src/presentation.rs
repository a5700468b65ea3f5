//! Finite presentations: parsing, JSON (de)serialization, validation, and
//! cached root decompositions of the relators.

use crate::words::{
    cyclic_reduce, free_reduce, letter_display, root_decompose, rotate, CyclicWord, Letter, Word,
};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use thiserror::Error;

/// A finite presentation `<x_1..x_n | R_1..R_m>` with cyclically reduced,
/// canonicalized relators and cached root decompositions `R_i = s_i^{k_i}`.
///
/// The root `s_i` is aligned with the canonical linearization of `R_i`:
/// `roots[i].0` equals the first `|s_i|` letters of `relators[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr", into = "PresentationRepr")]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<CyclicWord>,
    roots: Vec<(Word, u32)>,
}

#[derive(Serialize, Deserialize)]
struct PresentationRepr {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl TryFrom<PresentationRepr> for Presentation {
    type Error = ParseError;
    fn try_from(r: PresentationRepr) -> Result<Self, ParseError> {
        Presentation::new(r.generators, r.relators)
    }
}

impl From<Presentation> for PresentationRepr {
    fn from(p: Presentation) -> Self {
        PresentationRepr {
            generators: p.generators,
            relators: p.relators.into_iter().map(Word::from).collect(),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator name `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("relator {index} is trivial after reduction")]
    TrivialRelator { index: usize },
    #[error("generator index {index} out of range (have {count} generators)")]
    GeneratorIndexOutOfRange { index: u16, count: usize },
}

impl Presentation {
    /// Build a presentation from generator names and raw relator words.
    /// Relators are cyclically reduced and canonicalized; the empty word
    /// (after reduction) is rejected.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, ParseError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !seen.insert(g.clone()) {
                return Err(ParseError::DuplicateGenerator(g.clone()));
            }
        }
        let mut cyclic = Vec::with_capacity(relators.len());
        for (index, raw) in relators.iter().enumerate() {
            for l in raw.letters() {
                if (l.gen as usize) >= generators.len() {
                    return Err(ParseError::GeneratorIndexOutOfRange {
                        index: l.gen,
                        count: generators.len(),
                    });
                }
            }
            let (_, core) = cyclic_reduce(raw);
            let c = CyclicWord::new(core)
                .map_err(|_| ParseError::TrivialRelator { index })?;
            cyclic.push(c);
        }
        let roots = cyclic.iter().map(root_decompose).collect();
        Ok(Presentation {
            generators,
            relators: cyclic,
            roots,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_names(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[CyclicWord] {
        &self.relators
    }

    /// Root decompositions aligned with the relators: `relators[i]` is
    /// `roots()[i].0` repeated `roots()[i].1` times, starting at letter 0.
    pub fn roots(&self) -> &[(Word, u32)] {
        &self.roots
    }

    /// Length of the longest relator.
    pub fn max_relator_len(&self) -> usize {
        self.relators.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    /// Render in the text grammar.
    pub fn display(&self) -> String {
        let gens = self.generators.join(", ");
        let rels = self
            .relators
            .iter()
            .map(|r| {
                r.letters()
                    .iter()
                    .map(|&l| letter_display(l, &self.generators).replace("^-1", "^-1"))
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect::<Vec<_>>()
            .join(", ");
        format!("<{gens} | {rels}>")
    }
}

/// One well-formedness or hypothesis finding from [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    /// Relator `second` is a cyclic permutation of relator `first` or of
    /// its inverse. A well-formedness violation.
    DuplicateRelator {
        first: usize,
        second: usize,
        inverted: bool,
    },
    /// The generator occurs fewer than twice in the multiset of letters
    /// of all roots. Not a violation; it disables the W/V-mode solver
    /// bounds.
    SingleOccurrenceGenerator { generator: usize, occurrences: usize },
}

/// Result of [`validate`]: `ok` reflects well-formedness only; the
/// single-occurrence-generator findings are advisory flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Finding>,
}

impl ValidationReport {
    /// True when every generator occurs at least twice among the letters
    /// of the roots (hypothesis for the cell-condition solver bounds).
    pub fn roots_cover_generators(&self) -> bool {
        !self
            .violations
            .iter()
            .any(|f| matches!(f, Finding::SingleOccurrenceGenerator { .. }))
    }
}

/// Check well-formedness (no relator a cyclic permutation of another or
/// of another's inverse) and flag generators occurring fewer than twice
/// among the root letters.
pub fn validate(p: &Presentation) -> ValidationReport {
    let mut violations = Vec::new();
    for j in 0..p.relators.len() {
        for i in 0..j {
            if p.relators[i] == p.relators[j] {
                violations.push(Finding::DuplicateRelator {
                    first: i,
                    second: j,
                    inverted: false,
                });
            } else if p.relators[i].inverse() == p.relators[j] {
                violations.push(Finding::DuplicateRelator {
                    first: i,
                    second: j,
                    inverted: true,
                });
            }
        }
    }
    let ok = violations.is_empty();
    let mut counts = vec![0usize; p.generator_count()];
    for (root, _) in &p.roots {
        for l in root.letters() {
            counts[l.gen as usize] += 1;
        }
    }
    for (generator, &occurrences) in counts.iter().enumerate() {
        if occurrences < 2 {
            violations.push(Finding::SingleOccurrenceGenerator {
                generator,
                occurrences,
            });
        }
    }
    ValidationReport { ok, violations }
}

/// Parse the text grammar
/// `<g1,g2,... | w1, w2, ...>` where each word is `term(*term)*`, a term
/// is `name` or `name^int`, and an entry may be an equation `w = w'`
/// (sugar for `w * w'^-1`). Whitespace is insignificant.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    Parser::new(text).parse()
}

/// Parse a single word in the same grammar over the generators of `p`
/// (the result is freely reduced).
pub fn parse_word(p: &Presentation, text: &str) -> Result<Word, ParseError> {
    let mut parser = Parser::new(text);
    let gens: Vec<String> = p.generator_names().to_vec();
    let w = parser.word(&gens)?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(ParseError::Syntax {
            pos: parser.pos,
            msg: "trailing input after word".into(),
        });
    }
    Ok(crate::words::free_reduce(&w))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected `{}`", c as char))
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
        {
            self.pos += 1;
        }
        if self.pos == start || self.bytes[start].is_ascii_digit() {
            return self.err("expected identifier");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii")
            .to_string())
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii");
        s.parse().or_else(|_| self.err("expected integer"))
    }

    fn word(&mut self, gens: &[String]) -> Result<Word, ParseError> {
        let mut letters = Vec::new();
        loop {
            let name = self.ident()?;
            let gen = gens
                .iter()
                .position(|g| *g == name)
                .ok_or(ParseError::UnknownGenerator(name))? as u16;
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.integer()?
            } else {
                1
            };
            let letter = Letter::new(gen, exp < 0);
            for _ in 0..exp.unsigned_abs() {
                letters.push(letter);
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(Word(letters))
    }

    fn parse(&mut self) -> Result<Presentation, ParseError> {
        self.expect(b'<')?;
        let mut gens = vec![self.ident()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            gens.push(self.ident()?);
        }
        let mut relators = Vec::new();
        if self.peek() == Some(b'|') {
            self.pos += 1;
            loop {
                let lhs = self.word(&gens)?;
                let rel = if self.peek() == Some(b'=') {
                    self.pos += 1;
                    let rhs = self.word(&gens)?;
                    free_reduce(&lhs.concat(&rhs.inverse()))
                } else {
                    lhs
                };
                relators.push(rel);
                if self.peek() == Some(b',') {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(b'>')?;
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return self.err("trailing input");
        }
        Presentation::new(gens, relators)
    }
}

/// The presentations used repeatedly in tests and documentation.
pub mod samples {
    use super::{parse_presentation, Presentation};

    /// `<x, y, z | z^n = y, y x = x y>`.
    pub fn p_n(n: u32) -> Presentation {
        parse_presentation(&format!("<x,y,z | z^{n} = y, y*x = x*y>")).expect("valid")
    }

    /// `<x, y | y^2 x = x y^2>`.
    pub fn y2x() -> Presentation {
        parse_presentation("<x,y | y^2*x = x*y^2>").expect("valid")
    }

    /// `<a, b, c, d | [a,b][c,d]>` (genus-2 surface group).
    pub fn surface_genus2() -> Presentation {
        parse_presentation("<a,b,c,d | a*b*a^-1*b^-1*c*d*c^-1*d^-1>").expect("valid")
    }
}

/// Check whether `w` is a rotation of relator `i` or of its inverse;
/// returns `(orientation, rotation)` where for orientation `+1`,
/// `w = rotate(R_i, rotation)`, and for `-1`, `w = rotate(R_i, rotation)
/// inverted` — i.e. `w.inverse() = rotate(R_i, rotation)`.
pub fn match_relator_rotation(p: &Presentation, i: usize, w: &Word) -> Option<(i8, usize)> {
    let r = p.relators()[i].word();
    if w.len() != r.len() {
        return None;
    }
    for rot in 0..r.len() {
        if *w == rotate(r, rot) {
            return Some((1, rot));
        }
    }
    let wi = w.inverse();
    for rot in 0..r.len() {
        if wi == rotate(r, rot) {
            return Some((-1, rot));
        }
    }
    None
}
