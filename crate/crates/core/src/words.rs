//! Words over the alphabet `{1..p}` standing for commuting partial-derivative
//! operators, and the admissible full operator sets built from them.
//!
//! A word `"112"` denotes `∂³/∂z₁²∂z₂`. Since partials commute, a word is
//! stored as its sorted multiset of letters; the empty word is the identity.
//! Subword closure on words is the divisibility order on the corresponding
//! monomials, so full sets are exactly the finite down-sets of that order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("letter {letter} outside alphabet 1..={p}")]
    LetterOutOfRange { letter: u16, p: usize },
    #[error("invalid word literal {0:?}")]
    BadLiteral(String),
    #[error("operator set has {got} words, expected n+1 = {expected}")]
    Cardinality { got: usize, expected: usize },
    #[error("operator set contains duplicate word {0}")]
    Duplicate(Word),
    #[error("operator set is missing the empty word")]
    MissingIdentity,
    #[error("operator set is not admissible")]
    NotAdmissible,
    #[error("operator set is not closed under subwords")]
    NotFull,
    #[error("enumeration of p={p}, n={n} exceeds budget (p <= {max_p}, n <= {max_n})")]
    BudgetExceeded { p: usize, n: usize, max_p: usize, max_n: usize },
}

/// A derivative word in canonical (sorted) form.
///
/// Ordering is by `(order, letters)`, which is the canonical row order used
/// everywhere a set of words is laid out as matrix rows.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    letters: Vec<u16>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word from letters in any order.
    pub fn new(mut letters: Vec<u16>) -> Self {
        letters.sort_unstable();
        Word { letters }
    }

    pub fn single(letter: u16) -> Self {
        Word { letters: vec![letter] }
    }

    /// Builds the word of the multi-index `alpha = (α₁,…,α_p)`.
    pub fn from_multi_index(alpha: &[u32]) -> Self {
        let mut letters = Vec::new();
        for (i, &a) in alpha.iter().enumerate() {
            letters.extend(std::iter::repeat_n(i as u16 + 1, a as usize));
        }
        Word { letters }
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn order(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Multi-index `α` of length `p`.
    pub fn multi_index(&self, p: usize) -> Vec<u32> {
        let mut alpha = vec![0u32; p];
        for &l in &self.letters {
            alpha[l as usize - 1] += 1;
        }
        alpha
    }

    pub fn max_letter(&self) -> u16 {
        self.letters.last().copied().unwrap_or(0)
    }

    pub fn validate(&self, p: usize) -> Result<(), WordError> {
        match self.letters.iter().find(|&&l| l == 0 || l as usize > p) {
            Some(&letter) => Err(WordError::LetterOutOfRange { letter, p }),
            None => Ok(()),
        }
    }

    /// Whether `self` is a sub-multiset of `other`.
    pub fn is_subword_of(&self, other: &Word) -> bool {
        let mut it = other.letters.iter().peekable();
        'outer: for l in &self.letters {
            while let Some(&o) = it.next() {
                if o == *l {
                    continue 'outer;
                }
                if o > *l {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Words obtained by appending one letter from `1..=p`.
    pub fn extensions(&self, p: usize) -> impl Iterator<Item = Word> + '_ {
        (1..=p as u16).map(move |l| {
            let mut letters = self.letters.clone();
            letters.push(l);
            Word::new(letters)
        })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.order(), &self.letters).cmp(&(other.order(), &other.letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        // letters above 9 need a separator to stay unambiguous
        let wide = self.letters.iter().any(|&l| l > 9);
        for (i, l) in self.letters.iter().enumerate() {
            if wide && i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl std::str::FromStr for Word {
    type Err = WordError;

    /// Accepts `""`, `"ε"`, `"e"`, digit strings like `"112"`, or comma
    /// separated letters like `"1,10"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Word::empty());
        }
        let bad = || WordError::BadLiteral(s.to_string());
        let letters: Vec<u16> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u16>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u16).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        if letters.contains(&0) {
            return Err(bad());
        }
        Ok(Word::new(letters))
    }
}

impl TryFrom<String> for Word {
    type Error = WordError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        if w.is_empty() {
            String::new()
        } else {
            w.to_string()
        }
    }
}

/// All distinct sub-multisets of `w`, including `ε` and `w` itself.
pub fn subwords(w: &Word) -> BTreeSet<Word> {
    // run-length encode, then take every choice of count per distinct letter
    let mut runs: Vec<(u16, usize)> = Vec::new();
    for &l in w.letters() {
        match runs.last_mut() {
            Some((last, c)) if *last == l => *c += 1,
            _ => runs.push((l, 1)),
        }
    }
    let mut out = BTreeSet::new();
    let mut counts = vec![0usize; runs.len()];
    loop {
        let mut letters = Vec::new();
        for (&(l, _), &c) in runs.iter().zip(&counts) {
            letters.extend(std::iter::repeat_n(l, c));
        }
        out.insert(Word { letters });
        // odometer increment
        let mut i = 0;
        loop {
            if i == runs.len() {
                return out;
            }
            if counts[i] < runs[i].1 {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
    }
}

/// True iff `words` is closed under taking subwords.
pub fn is_full_set<'a, I>(words: I) -> bool
where
    I: IntoIterator<Item = &'a Word>,
{
    let set: BTreeSet<&Word> = words.into_iter().collect();
    // closure under dropping a single letter implies closure under all subwords
    set.iter().all(|w| {
        (0..w.order()).all(|i| {
            let mut letters = w.letters().to_vec();
            letters.remove(i);
            set.contains(&Word { letters })
        })
    })
}

/// True iff the sorted orders `o_0 ≤ … ≤ o_n` satisfy `o_s ≤ s`.
///
/// `n` is the declared target dimension; the set must have exactly `n+1`
/// words.
pub fn is_admissible<'a, I>(words: I, n: usize) -> Result<bool, WordError>
where
    I: IntoIterator<Item = &'a Word>,
{
    let mut orders: Vec<usize> = words.into_iter().map(Word::order).collect();
    if orders.len() != n + 1 {
        return Err(WordError::Cardinality { got: orders.len(), expected: n + 1 });
    }
    orders.sort_unstable();
    Ok(orders.iter().enumerate().all(|(s, &o)| o <= s))
}

/// A set of `n+1` distinct words over `{1..p}` containing `ε`, stored in
/// canonical `(order, letters)` order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OperatorSet {
    p: usize,
    words: Vec<Word>,
}

impl OperatorSet {
    /// Validates cardinality-independent invariants: letters in range,
    /// distinct words, identity present.
    pub fn new(p: usize, words: impl IntoIterator<Item = Word>) -> Result<Self, WordError> {
        let mut ws: Vec<Word> = words.into_iter().collect();
        ws.sort();
        for w in &ws {
            w.validate(p)?;
        }
        if let Some(pair) = ws.windows(2).find(|pair| pair[0] == pair[1]) {
            return Err(WordError::Duplicate(pair[0].clone()));
        }
        if ws.first().is_none_or(|w| !w.is_empty()) {
            return Err(WordError::MissingIdentity);
        }
        Ok(OperatorSet { p, words: ws })
    }

    /// Like [`OperatorSet::new`] but also requires admissibility and fullness.
    pub fn admissible_full(
        p: usize,
        words: impl IntoIterator<Item = Word>,
    ) -> Result<Self, WordError> {
        let s = Self::new(p, words)?;
        if !s.is_admissible() {
            return Err(WordError::NotAdmissible);
        }
        if !s.is_full() {
            return Err(WordError::NotFull);
        }
        Ok(s)
    }

    /// Parses a list of word literals, e.g. `["", "1", "11"]`.
    pub fn parse(p: usize, literals: &[&str]) -> Result<Self, WordError> {
        let words = literals.iter().map(|s| s.parse()).collect::<Result<Vec<Word>, _>>()?;
        Self::new(p, words)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    /// Target dimension `n = |S| - 1`.
    pub fn n(&self) -> usize {
        self.words.len() - 1
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn max_order(&self) -> usize {
        self.words.last().map_or(0, Word::order)
    }

    pub fn is_full(&self) -> bool {
        is_full_set(&self.words)
    }

    pub fn is_admissible(&self) -> bool {
        // sorted canonically, so the order sequence is already nondecreasing
        self.words.iter().enumerate().all(|(s, w)| w.order() <= s)
    }

    pub fn order_one_count(&self) -> usize {
        self.words.iter().filter(|w| w.order() == 1).count()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }
}

impl fmt::Display for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for OperatorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OperatorSet(p={}, {self})", self.p)
    }
}

/// Hard limits on `(p, n)` for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    pub max_p: usize,
    pub max_n: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_p: 4, max_n: 8 }
    }
}

impl EnumerationBudget {
    fn check(&self, p: usize, n: usize) -> Result<(), WordError> {
        if p > self.max_p || n > self.max_n {
            return Err(WordError::BudgetExceeded { p, n, max_p: self.max_p, max_n: self.max_n });
        }
        Ok(())
    }
}

/// Every admissible full set of `n+1` words over `{1..p}`, optionally
/// restricted to words of order at most `max_order`, in canonical order.
pub fn enumerate_admissible_full_sets(
    p: usize,
    n: usize,
    max_order: Option<usize>,
) -> Result<Vec<OperatorSet>, WordError> {
    enumerate_with_budget(p, n, max_order, EnumerationBudget::default())
}

pub fn enumerate_with_budget(
    p: usize,
    n: usize,
    max_order: Option<usize>,
    budget: EnumerationBudget,
) -> Result<Vec<OperatorSet>, WordError> {
    assert!(p >= 1, "alphabet must be nonempty");
    budget.check(p, n)?;
    let cap = max_order.unwrap_or(usize::MAX);

    // grow down-sets one word at a time; a word may be added once all of its
    // one-letter deletions are present
    let mut found: BTreeSet<Vec<Word>> = BTreeSet::new();
    let mut layer: BTreeSet<Vec<Word>> = BTreeSet::new();
    layer.insert(vec![Word::empty()]);
    for _ in 0..n {
        let mut next = BTreeSet::new();
        for set in &layer {
            let members: BTreeSet<&Word> = set.iter().collect();
            let mut candidates: BTreeSet<Word> = BTreeSet::new();
            for w in set {
                for ext in w.extensions(p) {
                    if ext.order() <= cap && !members.contains(&ext) {
                        candidates.insert(ext);
                    }
                }
            }
            for c in candidates {
                let addable = (0..c.order()).all(|i| {
                    let mut letters = c.letters().to_vec();
                    letters.remove(i);
                    members.contains(&Word { letters })
                });
                if addable {
                    let mut grown = set.clone();
                    grown.push(c);
                    grown.sort();
                    next.insert(grown);
                }
            }
        }
        layer = next;
    }
    found.extend(layer);

    Ok(found
        .into_iter()
        .map(|words| OperatorSet { p, words })
        .filter(|s| s.is_admissible())
        .collect())
}

/// Sets from [`enumerate_admissible_full_sets`] that contain all `p`
/// single-letter words.
pub fn witness_candidates(p: usize, n: usize) -> Result<Vec<OperatorSet>, WordError> {
    let max_order = (n + 1).saturating_sub(p).max(1);
    Ok(enumerate_admissible_full_sets(p, n, Some(max_order))?
        .into_iter()
        .filter(|s| s.order_one_count() == p)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn set(ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn subwords_examples() {
        assert_eq!(subwords(&Word::empty()), [Word::empty()].into());
        assert_eq!(subwords(&w("12")), set(&["", "1", "2", "12"]).into_iter().collect());
        assert_eq!(subwords(&w("11")), set(&["", "1", "11"]).into_iter().collect());
    }

    #[test]
    fn canonical_form_sorts_letters() {
        assert_eq!(w("21"), w("12"));
        assert_eq!(Word::from_multi_index(&[2, 1]), w("112"));
        assert_eq!(w("112").multi_index(3), vec![2, 1, 0]);
        assert_eq!(w("1,10").to_string(), "1,10");
    }

    #[test]
    fn full_set_examples() {
        assert!(is_full_set(&set(&["", "1", "11"])));
        assert!(!is_full_set(&set(&["", "1", "12"])));
        assert!(is_full_set(&set(&["", "1", "2"])));
    }

    #[test]
    fn admissible_examples() {
        assert!(is_admissible(&set(&["", "1", "11"]), 2).unwrap());
        assert!(!is_admissible(&set(&["", "11", "111"]), 2).unwrap());
        assert!(is_admissible(&set(&["", "1", "2", "12"]), 3).unwrap());
        assert_eq!(
            is_admissible(&set(&["", "1"]), 2),
            Err(WordError::Cardinality { got: 2, expected: 3 })
        );
    }

    #[test]
    fn enumeration_examples() {
        let one = enumerate_admissible_full_sets(1, 2, None).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].words(), set(&["", "1", "11"]).as_slice());

        let p2n1 = enumerate_admissible_full_sets(2, 1, None).unwrap();
        let got: Vec<_> = p2n1.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, ["{ε, 1}", "{ε, 2}"]);

        let p2n2 = enumerate_admissible_full_sets(2, 2, None).unwrap();
        let got: Vec<_> = p2n2.iter().map(|s| s.to_string()).collect();
        assert_eq!(got, ["{ε, 1, 2}", "{ε, 1, 11}", "{ε, 2, 22}"]);
    }

    #[test]
    fn enumeration_respects_budget() {
        assert!(matches!(
            enumerate_admissible_full_sets(5, 2, None),
            Err(WordError::BudgetExceeded { .. })
        ));
        let big = EnumerationBudget { max_p: 6, max_n: 3 };
        assert!(enumerate_with_budget(5, 2, None, big).is_ok());
    }

    #[test]
    fn operator_set_validation() {
        assert_eq!(OperatorSet::parse(2, &["1", "2"]), Err(WordError::MissingIdentity));
        assert!(matches!(OperatorSet::parse(2, &["", "3"]), Err(WordError::LetterOutOfRange { .. })));
        assert!(matches!(OperatorSet::parse(2, &["", "1", "1"]), Err(WordError::Duplicate(_))));
        let s = OperatorSet::parse(2, &["12", "", "1"]).unwrap();
        assert_eq!(s.to_string(), "{ε, 1, 12}");
        assert!(!s.is_full());
        assert_eq!(
            OperatorSet::admissible_full(2, set(&["", "1", "12"])),
            Err(WordError::NotFull)
        );
    }

    #[test]
    fn word_serde_round_trip() {
        let s = OperatorSet::parse(2, &["", "1", "12"]).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"p":2,"words":["","1","12"]}"#);
        let back: OperatorSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
