//! Decision procedures: exact area and conjugator-length budgets for
//! certified presentations, bounded breadth-first word-problem search,
//! and bounded conjugacy search, all with replayable witnesses.

use crate::conditions::{check_condition, Condition};
use crate::presentation::{Finding, Presentation};
use crate::words::{free_reduce, rotate, Letter, Word};
use crate::Rational;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("condition {0:?} is not certified for this presentation")]
    NotCertified(Condition),
    #[error("input word is not freely reduced")]
    NotFreelyReduced,
    #[error("input words must be freely reduced and not both empty")]
    BadConjugacyInput,
    #[error("conjugator-length bounds require the vertex conditions W* or W")]
    NoConjugacyBound,
    #[error("generator {0} occurs fewer than twice in the roots; the W-mode conjugacy bound does not apply")]
    SingleOccurrenceGenerator(String),
}

/// User caps. `None` means "use the theoretical budget".
/// Caps may only lower the theoretical values.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Caps {
    pub max_area: Option<u64>,
    pub max_intermediate_length: Option<usize>,
    pub max_conj_length: Option<usize>,
}

/// One rewriting step: insert the cell word
/// `rotate(R_relator, rotation)` (inverted when `orientation = -1`)
/// at `position`, then freely reduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub position: usize,
    pub relator: usize,
    pub rotation: usize,
    pub orientation: i8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Trivial { witness: Vec<Step> },
    NonTrivial { reason: String },
    Conjugate { conjugator: Word, witness: Vec<Step> },
    NotConjugate { reason: String },
    Inconclusive { cap: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub states_expanded: u64,
    /// Name of the user cap that truncated the search, if any.
    pub cap_hit: Option<String>,
}

// 40 significant digits; the true values lie strictly between each
// truncation and the truncation plus one last-place unit.
const PI_TRUNC: &str = "3.141592653589793238462643383279502884197";
const SQRT3_TRUNC: &str = "1.732050807568877293527446341505872366942";

fn decimal_interval(s: &str) -> (Rational, Rational) {
    let (int_part, frac_part) = s.split_once('.').expect("decimal point");
    let digits: String = format!("{int_part}{frac_part}");
    let num: BigInt = digits.parse().expect("digits");
    let den = BigInt::from(10u8).pow(frac_part.len() as u32);
    let lo = Rational::new(num.clone(), den.clone());
    let hi = Rational::new(num + BigInt::one(), den);
    (lo, hi)
}

/// `floor(c · l² / (√3 π))`, evaluated with rigorous rational interval
/// bounds for the constants. The upper end of the interval is used
/// when the interval straddles an integer (it never does at 40 digits
/// for desk-scale `l`), so the result is always a valid budget.
fn floor_quadratic(c: u64, l: u64) -> BigUint {
    let (pi_lo, pi_hi) = decimal_interval(PI_TRUNC);
    let (s3_lo, s3_hi) = decimal_interval(SQRT3_TRUNC);
    let num = Rational::from(BigInt::from(c) * BigInt::from(l) * BigInt::from(l));
    let lo = num.clone() / (pi_hi * s3_hi);
    let hi = num / (pi_lo * s3_lo);
    let floor_hi = hi.floor().to_integer();
    debug_assert_eq!(lo.floor().to_integer(), floor_hi);
    floor_hi.to_biguint().expect("non-negative")
}

/// Maximal area of a reduced diagram with boundary length `l` over a
/// presentation certified for `cond` (disk case, χ = 1):
/// `⌊l²/(√3π)⌋` for W*, `⌊800·l²/(√3π)⌋` for W, `3611·l − 2` for V*
/// and `2709·l` for V.
pub fn area_bound(p: &Presentation, cond: Condition, l: u64) -> Result<BigUint, SolverError> {
    if !check_condition(p, cond).is_certified() {
        return Err(SolverError::NotCertified(cond));
    }
    if l == 0 {
        return Ok(BigUint::zero());
    }
    Ok(match cond {
        Condition::WStar => floor_quadratic(1, l),
        Condition::W => floor_quadratic(800, l),
        // From F + 2χ ≤ (4·903 − 1)·l with χ = 1.
        Condition::VStar => BigUint::from(3611u64) * l - 2u8,
        // F ≤ 3·903·l.
        Condition::V => BigUint::from(2709u64) * l,
    })
}

/// Conjugator-length bound `N + 2·max(|u|, |v|)` where `N` counts all
/// words (including the empty one) of length at most `L` over the
/// `2n`-letter alphabet: `L = 3·p·max(|u|, |v|)` for W* (`p` = maximal
/// piece length) and `L = 31·r·(|u| + |v|)` for W (`r` = maximal
/// relator length). In W mode every generator must occur at least
/// twice in the roots.
pub fn conj_length_bound(
    p: &Presentation,
    cond: Condition,
    len_u: u64,
    len_v: u64,
) -> Result<BigUint, SolverError> {
    if cond != Condition::WStar && cond != Condition::W {
        return Err(SolverError::NoConjugacyBound);
    }
    if !check_condition(p, cond).is_certified() {
        return Err(SolverError::NotCertified(cond));
    }
    let max = len_u.max(len_v);
    let l_cap: u64 = match cond {
        Condition::WStar => {
            let table = crate::pieces::compute_pieces(p);
            3 * table.max_len as u64 * max
        }
        Condition::W => {
            for f in crate::presentation::validate(p).violations {
                if let Finding::SingleOccurrenceGenerator { generator, .. } = f {
                    return Err(SolverError::SingleOccurrenceGenerator(
                        p.generator_names()[generator].clone(),
                    ));
                }
            }
            31 * p.max_relator_len() as u64 * (len_u + len_v)
        }
        _ => unreachable!(),
    };
    Ok(word_count(p.generator_count(), l_cap) + BigUint::from(2 * max))
}

/// Number of words of length at most `max_len` over the `2n`-letter
/// alphabet of a presentation with `n_generators` generators,
/// including the empty word: `Σ_{i=0}^{L} (2n)^i`.
pub fn word_count(n_generators: usize, max_len: u64) -> BigUint {
    let alphabet = BigUint::from(2 * n_generators as u64);
    let mut n = BigUint::one(); // the empty word
    let mut power = BigUint::one();
    for _ in 0..max_len {
        power *= &alphabet;
        n += &power;
    }
    n
}

/// Exponent-sum vector of a word.
fn exponent_vector(p: &Presentation, w: &Word) -> Vec<i128> {
    let mut v = vec![0i128; p.generator_count()];
    for &l in w.letters() {
        v[l.gen as usize] += if l.inv { -1 } else { 1 };
    }
    v
}

/// Membership of `target` in the integer lattice spanned by `basis`
/// (column vectors), via integer elimination (Hermite-style column
/// reduction with back-substitution).
fn lattice_member(basis: &[Vec<i128>], target: &[i128]) -> bool {
    let n = target.len();
    let mut cols: Vec<Vec<i128>> = basis.to_vec();
    let mut t = target.to_vec();
    let mut row = 0;
    let mut col_start = 0;
    while row < n && col_start < cols.len() {
        // Reduce entries of this row across active columns to a single
        // gcd pivot by repeated column subtraction.
        loop {
            let mut nonzero: Vec<usize> = (col_start..cols.len())
                .filter(|&c| cols[c][row] != 0)
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&c| cols[c][row].unsigned_abs());
            let (small, other) = (nonzero[0], nonzero[1]);
            let q = cols[other][row] / cols[small][row];
            for r in 0..n {
                let delta = q * cols[small][r];
                cols[other][r] -= delta;
            }
        }
        let pivot = (col_start..cols.len()).find(|&c| cols[c][row] != 0);
        match pivot {
            Some(c) => {
                cols.swap(col_start, c);
                let g = cols[col_start][row];
                if t[row] % g != 0 {
                    return false;
                }
                let q = t[row] / g;
                for r in 0..n {
                    t[r] -= q * cols[col_start][r];
                }
                col_start += 1;
            }
            None => {
                if t[row] != 0 {
                    return false;
                }
            }
        }
        row += 1;
    }
    t[row..].iter().all(|&x| x == 0) && t[..row].iter().all(|&x| x == 0)
}

fn relator_lattice(p: &Presentation) -> Vec<Vec<i128>> {
    p.relators()
        .iter()
        .map(|r| exponent_vector(p, &r.word()))
        .collect()
}

/// True iff `w` maps to 0 in the abelianization `ℤⁿ / ⟨relator
/// exponent vectors⟩` — a necessary condition for triviality.
pub fn abelianization_trivial(p: &Presentation, w: &Word) -> bool {
    lattice_member(&relator_lattice(p), &exponent_vector(p, w))
}

/// All cell words `rotate(R_i^{±1}, rot)` with bookkeeping.
fn cell_words(p: &Presentation) -> Vec<(Step, Word)> {
    let mut out = Vec::new();
    for (i, r) in p.relators().iter().enumerate() {
        let w = r.word();
        for rot in 0..w.len() {
            for &orientation in &[1i8, -1] {
                let mut c = rotate(&w, rot);
                if orientation == -1 {
                    c = c.inverse();
                }
                out.push((
                    Step {
                        position: 0,
                        relator: i,
                        rotation: rot,
                        orientation,
                    },
                    c,
                ));
            }
        }
    }
    out
}

fn apply_step_word(w: &Word, position: usize, cell: &Word) -> Option<Word> {
    if position > w.len() {
        return None;
    }
    let mut letters = Vec::with_capacity(w.len() + cell.len());
    letters.extend_from_slice(&w.letters()[..position]);
    letters.extend_from_slice(cell.letters());
    letters.extend_from_slice(&w.letters()[position..]);
    Some(free_reduce(&Word(letters)))
}

/// Replay a witness from `start`: each step inserts its cell word and
/// freely reduces; accepted iff the final word is empty.
pub fn verify_witness(p: &Presentation, start: &Word, witness: &[Step]) -> bool {
    let mut w = free_reduce(start);
    for s in witness {
        if s.relator >= p.relators().len() {
            return false;
        }
        let r = p.relators()[s.relator].word();
        if s.rotation >= r.len() || (s.orientation != 1 && s.orientation != -1) {
            return false;
        }
        let mut cell = rotate(&r, s.rotation);
        if s.orientation == -1 {
            cell = cell.inverse();
        }
        match apply_step_word(&w, s.position, &cell) {
            Some(next) => w = next,
            None => return false,
        }
    }
    w.is_empty()
}

fn big_min(theoretical: &BigUint, user: Option<u64>) -> (u64, bool) {
    // Effective cap and whether the user cap is the binding one.
    let th = theoretical.to_u64().unwrap_or(u64::MAX);
    match user {
        Some(u) if u < th => (u, true),
        _ => (th, false),
    }
}

/// Bounded breadth-first search for the word problem. `Trivial`
/// verdicts carry a replayable witness; `NonTrivial` is only emitted
/// when the full theoretical budget was explored or the abelianization
/// filter applies; user caps yield `Inconclusive`.
pub fn solve_word(
    p: &Presentation,
    w: &Word,
    cond: Condition,
    caps: &Caps,
) -> Result<SolveReport, SolverError> {
    if !check_condition(p, cond).is_certified() {
        return Err(SolverError::NotCertified(cond));
    }
    if !w.is_reduced() {
        return Err(SolverError::NotFreelyReduced);
    }
    if w.is_empty() {
        return Ok(SolveReport {
            verdict: Verdict::Trivial { witness: vec![] },
            states_expanded: 0,
            cap_hit: None,
        });
    }
    if !abelianization_trivial(p, w) {
        return Ok(SolveReport {
            verdict: Verdict::NonTrivial {
                reason: "nonzero image in the abelianization".into(),
            },
            states_expanded: 0,
            cap_hit: None,
        });
    }
    let theoretical_area = area_bound(p, cond, w.len() as u64)?;
    let (max_area, area_by_user) = big_min(&theoretical_area, caps.max_area);
    let r = p.max_relator_len();
    let theoretical_len = (w.len() as u128).saturating_add(
        (theoretical_area.to_u128().unwrap_or(u128::MAX)).saturating_mul(r as u128),
    );
    let (max_len, len_by_user) = match caps.max_intermediate_length {
        Some(u) if (u as u128) < theoretical_len => (u, true),
        _ => (theoretical_len.min(usize::MAX as u128) as usize, false),
    };
    let cells = cell_words(p);
    let mut visited: HashMap<Word, usize> = HashMap::new();
    let mut parents: Vec<(usize, Step)> = Vec::new();
    let mut info: Vec<(Word, u64)> = Vec::new(); // word, depth
    let mut queue = VecDeque::new();
    visited.insert(w.clone(), 0);
    info.push((w.clone(), 0));
    parents.push((usize::MAX, Step { position: 0, relator: 0, rotation: 0, orientation: 1 }));
    queue.push_back(0usize);
    let mut expanded: u64 = 0;
    let mut truncated = false;
    while let Some(id) = queue.pop_front() {
        let (cur, depth) = info[id].clone();
        if depth >= max_area {
            truncated = true;
            continue;
        }
        expanded += 1;
        for pos in 0..=cur.len() {
            for (step0, cell) in &cells {
                let next = apply_step_word(&cur, pos, cell).expect("position in range");
                if next.len() > max_len {
                    truncated = truncated || len_by_user;
                    continue;
                }
                if visited.contains_key(&next) {
                    continue;
                }
                let step = Step {
                    position: pos,
                    ..*step0
                };
                let nid = info.len();
                visited.insert(next.clone(), nid);
                info.push((next.clone(), depth + 1));
                parents.push((id, step));
                if next.is_empty() {
                    // Reconstruct the witness.
                    let mut steps = Vec::new();
                    let mut at = nid;
                    while at != 0 {
                        let (par, s) = parents[at];
                        steps.push(s);
                        at = par;
                    }
                    steps.reverse();
                    debug_assert!(verify_witness(p, w, &steps));
                    return Ok(SolveReport {
                        verdict: Verdict::Trivial { witness: steps },
                        states_expanded: expanded,
                        cap_hit: None,
                    });
                }
                queue.push_back(nid);
            }
        }
    }
    if truncated && (area_by_user || len_by_user) {
        let cap = if area_by_user {
            "max_area"
        } else {
            "max_intermediate_length"
        };
        Ok(SolveReport {
            verdict: Verdict::Inconclusive { cap: cap.into() },
            states_expanded: expanded,
            cap_hit: Some(cap.into()),
        })
    } else {
        Ok(SolveReport {
            verdict: Verdict::NonTrivial {
                reason: "search space exhausted within the theoretical budget".into(),
            },
            states_expanded: expanded,
            cap_hit: None,
        })
    }
}

/// Freely reduced words of the given length in canonical order.
fn reduced_words_of_length(p: &Presentation, len: usize) -> Vec<Word> {
    let mut alphabet = Vec::new();
    for g in 0..p.generator_count() as u16 {
        alphabet.push(Letter::new(g, false));
        alphabet.push(Letter::new(g, true));
    }
    alphabet.sort();
    let mut out: Vec<Word> = vec![Word(vec![])];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            for &l in &alphabet {
                if w.letters().last() == Some(&l.inverse()) {
                    continue;
                }
                let mut v = w.letters().to_vec();
                v.push(l);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}

/// Bounded conjugacy search: iterative deepening over candidate
/// conjugators `w`, testing triviality of `u·w·v^{-1}·w^{-1}`.
pub fn solve_conjugacy(
    p: &Presentation,
    u: &Word,
    v: &Word,
    cond: Condition,
    caps: &Caps,
) -> Result<SolveReport, SolverError> {
    if !check_condition(p, cond).is_certified() {
        return Err(SolverError::NotCertified(cond));
    }
    if !u.is_reduced() || !v.is_reduced() || (u.is_empty() && v.is_empty()) {
        return Err(SolverError::BadConjugacyInput);
    }
    if u == v {
        return Ok(SolveReport {
            verdict: Verdict::Conjugate {
                conjugator: Word(vec![]),
                witness: vec![],
            },
            states_expanded: 0,
            cap_hit: None,
        });
    }
    // Conjugation preserves the image in the abelianization.
    let basis = relator_lattice(p);
    let eu = exponent_vector(p, u);
    let ev = exponent_vector(p, v);
    let diff: Vec<i128> = eu.iter().zip(&ev).map(|(a, b)| a - b).collect();
    if !lattice_member(&basis, &diff) {
        return Ok(SolveReport {
            verdict: Verdict::NotConjugate {
                reason: "distinct images in the abelianization".into(),
            },
            states_expanded: 0,
            cap_hit: None,
        });
    }
    let theoretical =
        conj_length_bound(p, cond, u.len() as u64, v.len() as u64).unwrap_or_else(|_| {
            // Cell conditions have no published conjugator bound; any
            // exhaustion is then only ever Inconclusive.
            BigUint::from(u64::MAX)
        });
    let has_theoretical_bound = matches!(cond, Condition::WStar | Condition::W);
    let (max_conj, conj_by_user) = match caps.max_conj_length {
        Some(c) if BigUint::from(c as u64) < theoretical => (c, true),
        _ => (theoretical.to_usize().unwrap_or(usize::MAX), false),
    };
    let mut expanded: u64 = 0;
    let mut any_inconclusive = false;
    for len in 0..=max_conj {
        for w in reduced_words_of_length(p, len) {
            let test = free_reduce(&u.concat(&w).concat(&v.inverse()).concat(&w.inverse()));
            let rep = solve_word(p, &test, cond, caps)?;
            expanded += rep.states_expanded + 1;
            match rep.verdict {
                Verdict::Trivial { witness } => {
                    return Ok(SolveReport {
                        verdict: Verdict::Conjugate {
                            conjugator: w,
                            witness,
                        },
                        states_expanded: expanded,
                        cap_hit: None,
                    });
                }
                Verdict::Inconclusive { .. } => any_inconclusive = true,
                _ => {}
            }
        }
    }
    if conj_by_user || any_inconclusive || !has_theoretical_bound {
        Ok(SolveReport {
            verdict: Verdict::Inconclusive {
                cap: if conj_by_user {
                    "max_conj_length".into()
                } else {
                    "inner word search capped".into()
                },
            },
            states_expanded: expanded,
            cap_hit: Some("max_conj_length".into()),
        })
    } else {
        Ok(SolveReport {
            verdict: Verdict::NotConjugate {
                reason: "every conjugator up to the theoretical bound was refuted".into(),
            },
            states_expanded: expanded,
            cap_hit: None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::samples;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(p: &Presentation, s: &str) -> Word {
        let names = p.generator_names();
        Word(
            s.chars()
                .map(|c| {
                    let lower = c.to_ascii_lowercase().to_string();
                    let gen = names.iter().position(|n| *n == lower).unwrap() as u16;
                    Letter::new(gen, c.is_ascii_uppercase())
                })
                .collect(),
        )
    }

    #[test]
    fn area_bound_exact_values() {
        let p2 = samples::p_n(2);
        assert_eq!(area_bound(&p2, Condition::WStar, 6).unwrap(), 6u8.into());
        assert_eq!(area_bound(&p2, Condition::WStar, 0).unwrap(), 0u8.into());
        let surf = samples::surface_genus2();
        assert_eq!(
            area_bound(&surf, Condition::W, 4).unwrap(),
            2352u32.into()
        );
        assert_eq!(
            area_bound(&surf, Condition::W, 10).unwrap(),
            14702u32.into()
        );
        assert_eq!(
            area_bound(&surf, Condition::VStar, 10).unwrap(),
            36108u32.into()
        );
        assert_eq!(
            area_bound(&surf, Condition::V, 10).unwrap(),
            27090u32.into()
        );
        // Refused condition -> error.
        let y2x = samples::y2x();
        assert_eq!(
            area_bound(&y2x, Condition::WStar, 4),
            Err(SolverError::NotCertified(Condition::WStar))
        );
    }

    #[test]
    fn conj_length_bound_values() {
        // P_2: two-generator alphabet size 6 (3 generators), maximal
        // piece length 1, so L = 3·max and N = Σ_{i≤L} 6^i.
        let p2 = samples::p_n(2);
        let b = conj_length_bound(&p2, Condition::WStar, 1, 1).unwrap();
        assert_eq!(b, BigUint::from(1u32 + 6 + 36 + 216 + 2));
        // Always at least 2·max.
        for (lu, lv) in [(0u64, 0), (5, 2), (1, 9)] {
            let b = conj_length_bound(&p2, Condition::WStar, lu, lv).unwrap();
            assert!(b >= BigUint::from(2 * lu.max(lv)));
        }
        // Cell conditions have no conjugator bound.
        assert_eq!(
            conj_length_bound(&p2, Condition::V, 1, 1),
            Err(SolverError::NoConjugacyBound)
        );
    }

    #[test]
    fn lattice_membership() {
        // Lattice of P_2 relators: spanned by (0, -1, 2) and 0.
        let basis = vec![vec![0, -1, 2], vec![0, 0, 0]];
        assert!(lattice_member(&basis, &[0, 0, 0]));
        assert!(lattice_member(&basis, &[0, -3, 6]));
        assert!(!lattice_member(&basis, &[1, 0, 0]));
        assert!(!lattice_member(&basis, &[0, 1, 1]));
        // Randomized: integer combinations are always members.
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let b1: Vec<i128> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
            let b2: Vec<i128> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
            let (a, b) = (rng.gen_range(-5i128..=5), rng.gen_range(-5i128..=5));
            let target: Vec<i128> = (0..3).map(|r| a * b1[r] + b * b2[r]).collect();
            assert!(lattice_member(&[b1, b2], &target));
        }
    }

    #[test]
    fn word_solver_trivial_cases() {
        let p2 = samples::p_n(2);
        let caps = Caps {
            max_area: Some(3),
            max_intermediate_length: Some(6),
            max_conj_length: None,
        };
        // A relator itself: one step.
        let rep = solve_word(&p2, &w(&p2, "zzY"), Condition::WStar, &caps).unwrap();
        match &rep.verdict {
            Verdict::Trivial { witness } => {
                assert_eq!(witness.len(), 1);
                assert!(verify_witness(&p2, &w(&p2, "zzY"), witness));
            }
            other => panic!("expected Trivial, got {other:?}"),
        }
        let rep = solve_word(&p2, &w(&p2, "yxYX"), Condition::WStar, &caps).unwrap();
        assert!(matches!(&rep.verdict, Verdict::Trivial { witness } if witness.len() == 1));
        // z²xz⁻²x⁻¹ = (z² y⁻¹)-substitutions plus the commutator.
        let word = w(&p2, "zzxZZX");
        let rep = solve_word(&p2, &word, Condition::WStar, &caps).unwrap();
        match &rep.verdict {
            Verdict::Trivial { witness } => {
                assert!(witness.len() <= 3, "witness too long: {witness:?}");
                assert!(verify_witness(&p2, &word, witness));
                // Respect the theoretical area budget for l = 6.
                assert!(
                    BigUint::from(witness.len() as u64)
                        <= area_bound(&p2, Condition::WStar, 6).unwrap()
                );
            }
            other => panic!("expected Trivial, got {other:?}"),
        }
    }

    #[test]
    fn word_solver_nontrivial_and_errors() {
        let p2 = samples::p_n(2);
        let caps = Caps::default();
        let rep = solve_word(&p2, &w(&p2, "x"), Condition::WStar, &caps).unwrap();
        assert!(matches!(rep.verdict, Verdict::NonTrivial { .. }));
        assert_eq!(
            solve_word(&p2, &w(&p2, "xX"), Condition::WStar, &caps),
            Err(SolverError::NotFreelyReduced)
        );
        let y2x = samples::y2x();
        assert_eq!(
            solve_word(&y2x, &w(&y2x, "x"), Condition::WStar, &caps),
            Err(SolverError::NotCertified(Condition::WStar))
        );
        // Empty word is trivially trivial.
        let rep = solve_word(&p2, &Word(vec![]), Condition::WStar, &caps).unwrap();
        assert!(matches!(rep.verdict, Verdict::Trivial { witness } if witness.is_empty()));
    }

    #[test]
    fn witness_tampering_rejected() {
        let p2 = samples::p_n(2);
        let caps = Caps {
            max_area: Some(2),
            max_intermediate_length: Some(6),
            max_conj_length: None,
        };
        let word = w(&p2, "zzY");
        let rep = solve_word(&p2, &word, Condition::WStar, &caps).unwrap();
        let Verdict::Trivial { witness } = rep.verdict else {
            panic!("expected Trivial");
        };
        let mut bad = witness.clone();
        bad[0].rotation = (bad[0].rotation + 1) % 3;
        assert!(!verify_witness(&p2, &word, &bad));
        assert!(!verify_witness(&p2, &word, &[]));
        let mut oob = witness.clone();
        oob[0].relator = 99;
        assert!(!verify_witness(&p2, &word, &oob));
    }

    #[test]
    fn abelianization_filter_never_lets_nonzero_words_through() {
        let p2 = samples::p_n(2);
        let caps = Caps {
            max_area: Some(1),
            max_intermediate_length: Some(8),
            max_conj_length: None,
        };
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let mut checked = 0;
        while checked < 1000 {
            let len = rng.gen_range(1..=8);
            let mut letters: Vec<Letter> = Vec::new();
            for _ in 0..len {
                loop {
                    let l = Letter::new(rng.gen_range(0..3), rng.gen_bool(0.5));
                    if letters.last() != Some(&l.inverse()) {
                        letters.push(l);
                        break;
                    }
                }
            }
            let word = Word(letters);
            if abelianization_trivial(&p2, &word) {
                continue; // only words with nonzero image count
            }
            checked += 1;
            let rep = solve_word(&p2, &word, Condition::WStar, &caps).unwrap();
            assert!(
                matches!(rep.verdict, Verdict::NonTrivial { .. }),
                "word {word:?} not refuted"
            );
        }
    }

    #[test]
    fn cap_monotonicity() {
        let p2 = samples::p_n(2);
        // An abelianization-trivial but group-nontrivial word.
        let word = w(&p2, "zxZX");
        let tight = Caps {
            max_area: Some(1),
            max_intermediate_length: Some(5),
            max_conj_length: None,
        };
        let looser = Caps {
            max_area: Some(2),
            max_intermediate_length: Some(8),
            max_conj_length: None,
        };
        let r1 = solve_word(&p2, &word, Condition::WStar, &tight).unwrap();
        let r2 = solve_word(&p2, &word, Condition::WStar, &looser).unwrap();
        // Raising caps may only resolve Inconclusive, never flip a
        // definite verdict.
        match (&r1.verdict, &r2.verdict) {
            (Verdict::Trivial { .. }, Verdict::Trivial { .. }) => {}
            (Verdict::NonTrivial { .. }, Verdict::NonTrivial { .. }) => {}
            (Verdict::Inconclusive { .. }, _) => {}
            (a, b) => panic!("cap increase flipped {a:?} to {b:?}"),
        }
    }

    #[test]
    fn conjugacy_solver() {
        let p2 = samples::p_n(2);
        let caps = Caps {
            max_area: Some(2),
            max_intermediate_length: Some(8),
            max_conj_length: Some(2),
        };
        // u = z x z^{-1} is conjugate to x via z.
        let u = w(&p2, "zxZ");
        let v = w(&p2, "x");
        let rep = solve_conjugacy(&p2, &u, &v, Condition::WStar, &caps).unwrap();
        match &rep.verdict {
            Verdict::Conjugate { conjugator, .. } => {
                assert_eq!(*conjugator, w(&p2, "z"));
            }
            other => panic!("expected Conjugate(z), got {other:?}"),
        }
        // Distinct abelianization images: definitely not conjugate.
        let rep =
            solve_conjugacy(&p2, &w(&p2, "x"), &w(&p2, "z"), Condition::WStar, &caps).unwrap();
        assert!(matches!(rep.verdict, Verdict::NotConjugate { .. }));
        // Identical words: identity conjugator.
        let rep =
            solve_conjugacy(&p2, &w(&p2, "xyz"), &w(&p2, "xyz"), Condition::WStar, &caps)
                .unwrap();
        assert!(
            matches!(rep.verdict, Verdict::Conjugate { conjugator, .. } if conjugator.is_empty())
        );
    }

    #[test]
    fn solver_determinism() {
        let p2 = samples::p_n(2);
        let caps = Caps {
            max_area: Some(3),
            max_intermediate_length: Some(6),
            max_conj_length: None,
        };
        let word = w(&p2, "zzxZZX");
        let a = solve_word(&p2, &word, Condition::WStar, &caps).unwrap();
        let b = solve_word(&p2, &word, Condition::WStar, &caps).unwrap();
        assert_eq!(a, b);
    }
}
