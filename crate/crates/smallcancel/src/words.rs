//! Letters, free words, free reduction, cyclic words, and root
//! decomposition.
//!
//! A letter is a generator index together with an inversion flag. Words
//! are vectors of letters; free reduction cancels adjacent inverse pairs.
//! A [`CyclicWord`] stores a cyclically reduced word in a canonical
//! rotation so that equal cyclic words compare equal.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One letter of a word: a generator (0-based index) or its inverse.
///
/// Serialized as `{"gen": <index>, "sign": 1 | -1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "LetterRepr", into = "LetterRepr")]
pub struct Letter {
    pub gen: u16,
    pub inv: bool,
}

#[derive(Serialize, Deserialize)]
struct LetterRepr {
    gen: u16,
    sign: i8,
}

impl From<LetterRepr> for Letter {
    fn from(r: LetterRepr) -> Self {
        Letter {
            gen: r.gen,
            inv: r.sign < 0,
        }
    }
}

impl From<Letter> for LetterRepr {
    fn from(l: Letter) -> Self {
        LetterRepr {
            gen: l.gen,
            sign: if l.inv { -1 } else { 1 },
        }
    }
}

impl Letter {
    pub fn new(gen: u16, inv: bool) -> Self {
        Letter { gen, inv }
    }

    /// The inverse letter.
    pub fn inverse(self) -> Self {
        Letter {
            gen: self.gen,
            inv: !self.inv,
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.gen, if self.inv { "-" } else { "+" })
    }
}

/// Render a letter using generator names: `x` or `x^-1`.
pub fn letter_display(l: Letter, names: &[String]) -> String {
    let name = names
        .get(l.gen as usize)
        .cloned()
        .unwrap_or_else(|| format!("g{}", l.gen));
    if l.inv {
        format!("{name}^-1")
    } else {
        name
    }
}

/// A (not necessarily reduced) word in the free group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// The formal inverse (reverse and invert every letter).
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Concatenation (no reduction).
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Is the word freely reduced (no adjacent inverse pair)?
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inverse())
    }

    /// Is the word cyclically reduced (freely reduced and first/last
    /// letters are not inverse)?
    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_reduced()
            && (self.len() < 2 || self.0[0] != self.0[self.len() - 1].inverse())
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&l| letter_display(l, names))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Freely reduce a word by cancelling adjacent inverse pairs until none
/// remain. The result is the unique reduced representative.
pub fn free_reduce(word: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in &word.0 {
        if stack.last().is_some_and(|&top| top == l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}

/// Cyclically reduce a freely reduced word: repeatedly strip matching
/// first/last inverse pairs. Returns `(conjugator, core)` with
/// `word = conjugator * core * conjugator^-1` in the free group.
pub fn cyclic_reduce(word: &Word) -> (Word, Word) {
    let reduced = free_reduce(word);
    let mut lo = 0usize;
    let mut hi = reduced.len();
    while hi - lo >= 2 && reduced.0[lo] == reduced.0[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    (
        Word(reduced.0[..lo].to_vec()),
        Word(reduced.0[lo..hi].to_vec()),
    )
}

/// A nonempty cyclically reduced word stored in its canonical
/// (lexicographically least) rotation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Word", into = "Word")]
pub struct CyclicWord(Word);

impl CyclicWord {
    /// Canonicalize a cyclically reduced word. Errors if the word is
    /// empty or not cyclically reduced.
    pub fn new(word: Word) -> Result<Self, String> {
        if word.is_empty() {
            return Err("cyclic word must be nonempty".into());
        }
        if !word.is_cyclically_reduced() {
            return Err("word is not cyclically reduced".into());
        }
        let n = word.len();
        let best = (0..n)
            .map(|r| rotate(&word, r))
            .min()
            .expect("nonempty");
        Ok(CyclicWord(best))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The canonical linearization.
    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn letters(&self) -> &[Letter] {
        self.0.letters()
    }

    /// Letter at cyclic position `i` (taken mod the length).
    pub fn at(&self, i: usize) -> Letter {
        self.0 .0[i % self.len()]
    }

    /// All rotations, as plain words.
    pub fn rotations(&self) -> Vec<Word> {
        (0..self.len()).map(|r| rotate(&self.0, r)).collect()
    }

    /// The inverse cyclic word (canonicalized).
    pub fn inverse(&self) -> CyclicWord {
        CyclicWord::new(self.0.inverse()).expect("inverse of cyclically reduced is too")
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclic{:?}", self.0)
    }
}

impl TryFrom<Word> for CyclicWord {
    type Error = String;
    fn try_from(w: Word) -> Result<Self, String> {
        CyclicWord::new(w)
    }
}

impl From<CyclicWord> for Word {
    fn from(c: CyclicWord) -> Word {
        c.0
    }
}

/// Rotate left by `r`: `rotate(abc, 1) = bca`.
pub fn rotate(word: &Word, r: usize) -> Word {
    if word.is_empty() {
        return word.clone();
    }
    let n = word.len();
    let r = r % n;
    let mut v = word.0[r..].to_vec();
    v.extend_from_slice(&word.0[..r]);
    Word(v)
}

/// Decompose a cyclically reduced word as `root^exponent` with the
/// exponent maximal. The root is aligned with the word: the word equals
/// the root repeated, starting at position 0.
pub fn root_decompose(word: &CyclicWord) -> (Word, u32) {
    let n = word.len();
    let letters = word.letters();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        if (0..n).all(|i| letters[i] == letters[i % d]) {
            return (Word(letters[..d].to_vec()), (n / d) as u32);
        }
    }
    unreachable!("d = n always matches");
}
