//! Reduced words in the free group on `n` generators and their evaluation.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mobius::{ExtendedMobiusMap, IsometryClass};

/// Default cap on the number of words in a single layer.
pub const DEFAULT_WORD_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordsError {
    #[error("rank {rank} depth {depth} needs {count} words, above the cap of {cap}")]
    DepthOverflow {
        rank: usize,
        depth: usize,
        count: String,
        cap: u64,
    },
    #[error("word is not reduced: letters {0} and {1} cancel")]
    NotReduced(Letter, Letter),
    #[error("letter {letter} refers to a generator outside rank {rank}")]
    LetterOutOfRange { letter: Letter, rank: usize },
    #[error("rank and depth must be at least 1")]
    EmptyRequest,
    #[error("cannot parse word {0:?}")]
    Parse(String),
}

/// A generator (`inverse == false`) or its inverse. Generators are 0-based
/// internally and printed 1-based as `+k` / `-k`.
///
/// The canonical order is `+1 < −1 < +2 < −2 < …`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn positive(generator: usize) -> Self {
        Self {
            generator,
            inverse: false,
        }
    }

    pub fn negative(generator: usize) -> Self {
        Self {
            generator,
            inverse: true,
        }
    }

    pub fn inverse(self) -> Self {
        Self {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    /// All `2n` letters in canonical order.
    pub fn alphabet(rank: usize) -> Vec<Letter> {
        (0..rank)
            .flat_map(|k| [Letter::positive(k), Letter::negative(k)])
            .collect()
    }

    /// Position in the canonical alphabet.
    pub fn index(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }

    pub fn from_index(index: usize) -> Self {
        Self {
            generator: index / 2,
            inverse: index % 2 == 1,
        }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index().cmp(&other.index())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.inverse { '-' } else { '+' };
        write!(f, "{sign}{}", self.generator + 1)
    }
}

/// A reduced word. Construction rejects adjacent cancelling letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordsError> {
        if let Some(pair) = letters.windows(2).find(|p| p[0].cancels(p[1])) {
            return Err(WordsError::NotReduced(pair[0], pair[1]));
        }
        Ok(Self { letters })
    }

    /// Builds a word from signed 1-based indices, e.g. `[1, -2]`.
    pub fn from_signed(indices: &[i32]) -> Result<Self, WordsError> {
        let letters = indices
            .iter()
            .map(|&i| match i.cmp(&0) {
                Ordering::Greater => Ok(Letter::positive(i as usize - 1)),
                Ordering::Less => Ok(Letter::negative((-i) as usize - 1)),
                Ordering::Equal => Err(WordsError::Parse(format!("{indices:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(letters)
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// True when the first and last letters do not cancel.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.first(), self.last()) {
            (Some(f), Some(l)) => !f.cancels(l),
            _ => true,
        }
    }

    /// Word with `letter` appended; `None` when it would cancel.
    pub fn extended(&self, letter: Letter) -> Option<Word> {
        if self.last().is_some_and(|l| l.cancels(letter)) {
            return None;
        }
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.extend_from_slice(&self.letters);
        letters.push(letter);
        Some(Word { letters })
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word {
            letters: self.letters[..len].to_vec(),
        }
    }

    /// Free-group product, cancelling at the junction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last().is_some_and(|last| last.cancels(l)) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "e" {
            return Ok(Word::empty());
        }
        let bad = || WordsError::Parse(s.to_string());
        let mut letters = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let inverse = match rest.as_bytes()[0] {
                b'+' => false,
                b'-' => true,
                _ => return Err(bad()),
            };
            rest = &rest[1..];
            let end = rest
                .find(|c: char| !c.is_ascii_digit())
                .unwrap_or(rest.len());
            let k: usize = rest[..end].parse().map_err(|_| bad())?;
            if k == 0 {
                return Err(bad());
            }
            letters.push(Letter {
                generator: k - 1,
                inverse,
            });
            rest = &rest[end..];
        }
        Word::new(letters)
    }
}

impl TryFrom<String> for Word {
    type Error = WordsError;

    fn try_from(value: String) -> Result<Self, Self::Error> {
        value.parse()
    }
}

impl From<Word> for String {
    fn from(value: Word) -> Self {
        value.to_string()
    }
}

/// Anything that supplies `n` generator maps.
pub trait GeneratorSet {
    fn rank(&self) -> usize;

    fn generator(&self, index: usize) -> &ExtendedMobiusMap;

    fn letter_map(&self, letter: Letter) -> ExtendedMobiusMap {
        let g = self.generator(letter.generator);
        if letter.inverse {
            g.inverse()
        } else {
            *g
        }
    }
}

/// Explicit generator list with no configuration attached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RawGenerators {
    generators: Vec<ExtendedMobiusMap>,
}

impl RawGenerators {
    pub fn new(generators: Vec<ExtendedMobiusMap>) -> Self {
        Self { generators }
    }

    pub fn from_coefficients(records: &[[f64; 4]]) -> Result<Self, crate::mobius::MobiusError> {
        let generators = records
            .iter()
            .map(|&[a, b, c, d]| ExtendedMobiusMap::new(a, b, c, d))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { generators })
    }

    pub fn generators(&self) -> &[ExtendedMobiusMap] {
        &self.generators
    }
}

impl GeneratorSet for RawGenerators {
    fn rank(&self) -> usize {
        self.generators.len()
    }

    fn generator(&self, index: usize) -> &ExtendedMobiusMap {
        &self.generators[index]
    }
}

/// Number of reduced words of length exactly `depth`, or `None` on overflow.
pub fn layer_size(rank: usize, depth: usize) -> Option<u64> {
    if rank == 0 || depth == 0 {
        return Some(u64::from(depth == 0));
    }
    let base = 2 * rank as u64;
    (1..depth).try_fold(base, |acc, _| acc.checked_mul(base - 1))
}

pub(crate) fn check_cap(rank: usize, depth: usize, cap: u64) -> Result<(), WordsError> {
    match layer_size(rank, depth) {
        Some(n) if n <= cap => Ok(()),
        other => Err(WordsError::DepthOverflow {
            rank,
            depth,
            count: other.map_or_else(|| "more than 2^64".to_string(), |n| n.to_string()),
            cap,
        }),
    }
}

/// All reduced words of one length, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordLayer {
    pub depth: usize,
    pub words: Vec<Word>,
}

/// Enumerates every reduced word of length `depth` over `rank` generators.
pub fn enumerate(rank: usize, depth: usize, cap: u64) -> Result<WordLayer, WordsError> {
    if rank == 0 || depth == 0 {
        return Err(WordsError::EmptyRequest);
    }
    check_cap(rank, depth, cap)?;
    let alphabet = Letter::alphabet(rank);
    let mut words = vec![Word::empty()];
    for _ in 0..depth {
        words = words
            .iter()
            .flat_map(|w| alphabet.iter().filter_map(move |&l| w.extended(l)))
            .collect();
    }
    Ok(WordLayer { depth, words })
}

/// Left-to-right composition `g_{ℓ1} ∘ g_{ℓ2} ∘ … ∘ g_{ℓk}`.
pub fn evaluate<G: GeneratorSet + ?Sized>(word: &Word, group: &G) -> ExtendedMobiusMap {
    word.letters()
        .iter()
        .fold(ExtendedMobiusMap::identity(), |acc, &l| {
            acc.compose(&group.letter_map(l))
        })
}

/// Walks every reduced word of length `1..=max_depth` in canonical order
/// (shorter words first), handing each word and its evaluation to `visit`.
/// Stops early when `visit` returns `false`.
pub fn for_each_word<G, F>(
    group: &G,
    max_depth: usize,
    cap: u64,
    mut visit: F,
) -> Result<(), WordsError>
where
    G: GeneratorSet + ?Sized,
    F: FnMut(&Word, &ExtendedMobiusMap) -> bool,
{
    let rank = group.rank();
    if rank == 0 || max_depth == 0 {
        return Err(WordsError::EmptyRequest);
    }
    check_cap(rank, max_depth, cap)?;
    let alphabet: Vec<(Letter, ExtendedMobiusMap)> = Letter::alphabet(rank)
        .into_iter()
        .map(|l| (l, group.letter_map(l)))
        .collect();
    let mut layer = vec![(Word::empty(), ExtendedMobiusMap::identity())];
    for _ in 0..max_depth {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for (w, m) in &layer {
            for (l, g) in &alphabet {
                if let Some(child) = w.extended(*l) {
                    let value = m.compose(g);
                    if !visit(&child, &value) {
                        return Ok(());
                    }
                    next.push((child, value));
                }
            }
        }
        layer = next;
    }
    Ok(())
}

/// Outcome of classifying every word up to a given length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperbolicSample {
    pub depth: usize,
    pub words_checked: u64,
    pub all_hyperbolic: bool,
    pub first_offending: Option<OffendingWord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OffendingWord {
    pub word: Word,
    pub class: IsometryClass,
}

/// Checks that every reduced word of length `1..=depth` is hyperbolic.
pub fn purely_hyperbolic_sample<G: GeneratorSet + ?Sized>(
    group: &G,
    depth: usize,
    cap: u64,
    eps: f64,
) -> Result<HyperbolicSample, WordsError> {
    let mut words_checked = 0;
    let mut first_offending = None;
    for_each_word(group, depth, cap, |w, m| {
        words_checked += 1;
        let class = m.classify(eps);
        if class != IsometryClass::Hyperbolic {
            first_offending = Some(OffendingWord {
                word: w.clone(),
                class,
            });
            return false;
        }
        true
    })?;
    Ok(HyperbolicSample {
        depth,
        words_checked,
        all_hyperbolic: first_offending.is_none(),
        first_offending,
    })
}

/// First nonempty reduced word of length `≤ depth` that evaluates to the
/// identity (up to sign) within `eps`, if any.
pub fn freeness_sample<G: GeneratorSet + ?Sized>(
    group: &G,
    depth: usize,
    cap: u64,
    eps: f64,
) -> Result<Option<Word>, WordsError> {
    let mut hit = None;
    for_each_word(group, depth, cap, |w, m| {
        if m.is_identity(eps) {
            hit = Some(w.clone());
            return false;
        }
        true
    })?;
    Ok(hit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate(2, 1, DEFAULT_WORD_CAP).unwrap().words.len(), 4);
        assert_eq!(enumerate(2, 3, DEFAULT_WORD_CAP).unwrap().words.len(), 36);
        let rank_one = enumerate(1, 5, DEFAULT_WORD_CAP).unwrap();
        let names: Vec<String> = rank_one.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(names, ["+1+1+1+1+1", "-1-1-1-1-1"]);
    }

    #[test]
    fn enumeration_is_canonical() {
        let layer = enumerate(2, 2, DEFAULT_WORD_CAP).unwrap();
        let names: Vec<String> = layer.words.iter().map(|w| w.to_string()).collect();
        assert_eq!(
            names,
            [
                "+1+1", "+1+2", "+1-2", "-1-1", "-1+2", "-1-2", "+2+1", "+2-1", "+2+2", "-2+1",
                "-2-1", "-2-2"
            ]
        );
        let mut sorted = layer.words.clone();
        sorted.sort();
        assert_eq!(sorted, layer.words);
    }

    #[test]
    fn depth_overflow() {
        // 4·3^11 = 708 588 fits, 4·3^12 = 2 125 764 does not.
        let err = enumerate(2, 13, DEFAULT_WORD_CAP).unwrap_err();
        assert!(matches!(err, WordsError::DepthOverflow { .. }));
        assert_eq!(layer_size(2, 12), Some(708_588));
        assert!(check_cap(2, 12, DEFAULT_WORD_CAP).is_ok());
        assert!(check_cap(10, 200, DEFAULT_WORD_CAP).is_err());
    }

    #[test]
    fn non_reduced_word_rejected() {
        assert!(matches!(
            Word::from_signed(&[1, -1]),
            Err(WordsError::NotReduced(_, _))
        ));
        assert!("+1-1".parse::<Word>().is_err());
        assert!("+0".parse::<Word>().is_err());
        assert!("x".parse::<Word>().is_err());
    }

    #[test]
    fn word_text_round_trip() {
        let w = Word::from_signed(&[1, -2, 12]).unwrap();
        assert_eq!(w.to_string(), "+1-2+12");
        assert_eq!("+1-2+12".parse::<Word>().unwrap(), w);
        assert_eq!("e".parse::<Word>().unwrap(), Word::empty());
    }

    #[test]
    fn empty_word_evaluates_to_identity() {
        let gens = RawGenerators::from_coefficients(&[[5.0, 16.0, 1.0, 5.0]]).unwrap();
        assert!(evaluate(&Word::empty(), &gens).is_identity(0.0));
    }

    #[test]
    fn square_of_worked_generator() {
        let gens = RawGenerators::from_coefficients(&[[5.0, 16.0, 1.0, 5.0]]).unwrap();
        let sq = evaluate(&Word::from_signed(&[1, 1]).unwrap(), &gens);
        assert_eq!(sq.classify(1e-9), IsometryClass::Hyperbolic);
        // Matrix square of (5,16,1,5)/3 is (41,160,10,41)/9, trace 82/9.
        assert!((sq.trace() - 82.0 / 9.0).abs() < 1e-12);
        let len = sq.axis(1e-9).unwrap().translation_length;
        assert!((len - 4.0 * 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn gamma_two_fails_at_first_word() {
        let gens = RawGenerators::from_coefficients(&[[1.0, 2.0, 0.0, 1.0], [1.0, 0.0, 2.0, 1.0]])
            .unwrap();
        let sample = purely_hyperbolic_sample(&gens, 1, DEFAULT_WORD_CAP, 1e-9).unwrap();
        assert!(!sample.all_hyperbolic);
        let off = sample.first_offending.unwrap();
        assert_eq!(off.word.to_string(), "+1");
        assert_eq!(off.class, IsometryClass::Parabolic);
    }

    #[test]
    fn concat_cancels_at_junction() {
        let a = Word::from_signed(&[1, 2]).unwrap();
        let b = Word::from_signed(&[-2, 1]).unwrap();
        assert_eq!(a.concat(&b), Word::from_signed(&[1, 1]).unwrap());
        assert_eq!(a.concat(&a.inverse()), Word::empty());
    }

    #[test]
    fn layer_size_formula() {
        assert_eq!(layer_size(3, 1), Some(6));
        assert_eq!(layer_size(3, 4), Some(6 * 125));
        assert_eq!(layer_size(1, 50), Some(2));
        assert_eq!(layer_size(100, 100), None);
    }
}
