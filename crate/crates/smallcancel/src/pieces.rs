//! Pieces of a presentation and piece decompositions of relators.
//!
//! A piece is a word occurring as a common prefix of two distinct
//! elements of the symmetrized set: the set of all cyclic permutations of
//! all relators and their inverses. Because permutations of a proper
//! power `R = s^k` that differ by a multiple of `|s|` are the same word,
//! the set representation identifies them automatically, so occurrences
//! related by relator periodicity count once.
//!
//! The piece set is automatically closed under subwords (a common prefix
//! of two elements has all its prefixes in common, and any subword of a
//! piece is a prefix of suitable permutations) and inverses.

use crate::presentation::Presentation;
use crate::words::{rotate, Word};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};

/// The piece inventory of a presentation.
#[derive(Clone, Debug)]
pub struct PieceTable {
    /// Symmetrized set: all distinct cyclic permutations of all
    /// `R_i^{±1}`, sorted.
    pub symmetrized: Vec<Word>,
    /// All pieces (closed under subwords and inverses).
    pub pieces: HashSet<Word>,
    /// Length of a longest piece; 0 if there are none.
    pub max_len: usize,
}

impl PieceTable {
    pub fn is_piece(&self, w: &Word) -> bool {
        self.pieces.contains(w)
    }

    /// For relator `i` of `p`: the length of the longest piece starting
    /// at each cyclic position (0 where even the single letter is not a
    /// piece).
    pub fn relator_piece_spans(&self, p: &Presentation, i: usize) -> Vec<usize> {
        let r = p.relators()[i].word();
        let n = r.len();
        (0..n)
            .map(|start| {
                (1..=self.max_len.min(n))
                    .take_while(|&len| self.is_piece(&cyclic_slice(r, start, len)))
                    .count()
            })
            .collect()
    }
}

/// Cyclic subword of `w` of length `len` starting at `start`.
pub fn cyclic_slice(w: &Word, start: usize, len: usize) -> Word {
    let n = w.len();
    Word((0..len).map(|t| w.letters()[(start + t) % n]).collect())
}

/// Compute the symmetrized set of a presentation.
pub fn symmetrized_set(p: &Presentation) -> Vec<Word> {
    let mut set = BTreeSet::new();
    for r in p.relators() {
        for w in [r.word().clone(), r.word().inverse()] {
            for rot in 0..w.len() {
                set.insert(rotate(&w, rot));
            }
        }
    }
    set.into_iter().collect()
}

/// Compute all pieces. Since the symmetrized elements are sorted, a word
/// is a prefix of two distinct elements iff it is a common prefix of two
/// adjacent ones, so the union of adjacent common prefixes is the piece
/// set.
pub fn compute_pieces(p: &Presentation) -> PieceTable {
    let symmetrized = symmetrized_set(p);
    let mut pieces = HashSet::new();
    for pair in symmetrized.windows(2) {
        let m = common_prefix_len(&pair[0], &pair[1]);
        for len in 1..=m {
            pieces.insert(Word(pair[0].letters()[..len].to_vec()));
        }
    }
    let max_len = pieces.iter().map(|w| w.len()).max().unwrap_or(0);
    PieceTable {
        symmetrized,
        pieces,
        max_len,
    }
}

fn common_prefix_len(a: &Word, b: &Word) -> usize {
    a.letters()
        .iter()
        .zip(b.letters())
        .take_while(|(x, y)| x == y)
        .count()
}

/// Minimum `d` such that relator `i` factors cyclically into `d` pieces;
/// `None` if it is not a product of pieces.
pub fn min_piece_decomposition(p: &Presentation, table: &PieceTable, i: usize) -> Option<usize> {
    let r = p.relators()[i].word();
    let n = r.len();
    if table.max_len == 0 {
        return None;
    }
    // Try every cyclic starting breakpoint; from there a linear
    // shortest-cover dynamic program.
    let mut best: Option<usize> = None;
    for start in 0..n {
        let linear = rotate(r, start);
        if let Some(d) = min_factors_capped(&linear, table, n, n) {
            best = Some(best.map_or(d, |b: usize| b.min(d)));
        }
    }
    best
}

/// Minimum number of factors in a factorization of the (linear) word
/// into pieces, where the first factor has length ≤ `first_cap` and the
/// last factor has length ≤ `last_cap` (a single factor must satisfy
/// both). `None` if no such factorization exists; `Some(0)` for the
/// empty word.
pub fn min_factors_capped(
    word: &Word,
    table: &PieceTable,
    first_cap: usize,
    last_cap: usize,
) -> Option<usize> {
    let n = word.len();
    if n == 0 {
        return Some(0);
    }
    let maxp = table.max_len;
    // dp[j] = min factors covering word[0..j]; the factor starting at 0
    // respects first_cap.
    let mut dp: Vec<Option<usize>> = vec![None; n + 1];
    dp[0] = Some(0);
    for j in 1..=n {
        let lo = j.saturating_sub(maxp);
        for i in lo..j {
            let Some(di) = dp[i] else { continue };
            let len = j - i;
            if i == 0 && len > first_cap {
                continue;
            }
            if j == n && len > last_cap {
                continue;
            }
            if !table.is_piece(&Word(word.letters()[i..j].to_vec())) {
                continue;
            }
            if dp[j].is_none_or(|cur| di + 1 < cur) {
                dp[j] = Some(di + 1);
            }
        }
    }
    dp[n]
}

/// A cyclic factorization of relator `relator` into pieces: factor `t`
/// runs from `breakpoints[t]` to `breakpoints[t+1]` (cyclically).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Decomposition {
    pub relator: usize,
    pub breakpoints: Vec<usize>,
}

impl Decomposition {
    /// The factor words, in breakpoint order.
    pub fn factors(&self, p: &Presentation) -> Vec<Word> {
        let r = p.relators()[self.relator].word();
        let n = r.len();
        let d = self.breakpoints.len();
        (0..d)
            .map(|t| {
                let a = self.breakpoints[t];
                let b = self.breakpoints[(t + 1) % d];
                let len = (b + n - a) % n;
                let len = if len == 0 { n } else { len };
                cyclic_slice(r, a, len)
            })
            .collect()
    }
}

/// All cyclic factorizations of relator `i` into exactly `d` pieces, up
/// to the rotation symmetry of the relator's root (shifting every
/// breakpoint by a multiple of the root length).
pub fn enumerate_decompositions(
    p: &Presentation,
    table: &PieceTable,
    i: usize,
    d: usize,
) -> Vec<Decomposition> {
    let r = p.relators()[i].word();
    let n = r.len();
    let root_len = p.roots()[i].0.len();
    let k = n / root_len;
    if d == 0 || d > n || table.max_len == 0 {
        return Vec::new();
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    // Fix the first breakpoint within one root period; every class has a
    // representative there.
    for b0 in 0..root_len.min(n) {
        let mut bps = vec![b0];
        search_decomp(r, table, n, d, b0, &mut bps, &mut found, root_len, k);
    }
    found
        .into_iter()
        .map(|breakpoints| Decomposition {
            relator: i,
            breakpoints,
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn search_decomp(
    r: &Word,
    table: &PieceTable,
    n: usize,
    d: usize,
    b0: usize,
    bps: &mut Vec<usize>,
    found: &mut BTreeSet<Vec<usize>>,
    root_len: usize,
    k: usize,
) {
    let consumed = bps.last().unwrap() - b0;
    let remaining = n - consumed;
    let factors_left = d - (bps.len() - 1);
    if factors_left == 0 {
        if remaining == 0 {
            let set: Vec<usize> = bps[..d].iter().map(|&b| b % n).collect();
            found.insert(canonical_breakpoints(&set, n, root_len, k));
        }
        return;
    }
    // Each remaining factor is a piece of length ≥ 1 and ≤ max_len.
    if remaining < factors_left || remaining > factors_left * table.max_len {
        return;
    }
    let last = *bps.last().unwrap();
    for len in 1..=table.max_len.min(remaining) {
        if table.is_piece(&cyclic_slice(r, last % n, len)) {
            bps.push(last + len);
            search_decomp(r, table, n, d, b0, bps, found, root_len, k);
            bps.pop();
        }
    }
}

fn canonical_breakpoints(bps: &[usize], n: usize, root_len: usize, k: usize) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for m in 0..k {
        let mut shifted: Vec<usize> = bps.iter().map(|&b| (b + m * root_len) % n).collect();
        shifted.sort_unstable();
        if best.as_ref().is_none_or(|b| shifted < *b) {
            best = Some(shifted);
        }
    }
    best.expect("k >= 1")
}
