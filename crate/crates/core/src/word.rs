//! k-ary words, the adjacent-sum connector statistics, and the exhaustive
//! enumeration oracle for their distributions.

use std::fmt;
use std::thread;

use num_bigint::BigInt;

use crate::algebra::QPolynomial;
use crate::error::{Error, Result};

/// Default limit on the number of words a single enumeration may visit.
pub const DEFAULT_ENUM_CAP: u64 = 100_000_000;

/// A word over the alphabet `{1, ..., k}`. Letters are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u32>,
    k: u32,
}

impl Word {
    pub fn new(letters: Vec<u32>, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        if let Some((position, &letter)) = letters.iter().enumerate().find(|(_, &l)| l == 0 || l > k) {
            return Err(Error::LetterOutOfRange { position: position + 1, letter: letter.into(), k });
        }
        Ok(Word { letters, k })
    }

    /// Parses either a comma-separated list (`10,3,7`) or, when every letter
    /// is a single digit, a bare digit string (`143114`). Positions in errors
    /// are 1-based letter positions.
    pub fn parse(input: &str, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyAlphabet);
        }
        let trimmed = input.trim();
        let mut letters = Vec::new();
        if trimmed.contains(',') {
            for (i, part) in trimmed.split(',').enumerate() {
                let part = part.trim();
                let letter: u64 = part.parse().map_err(|_| Error::WordParse {
                    position: i + 1,
                    reason: format!("{part:?} is not a positive integer"),
                })?;
                if letter == 0 || letter > u64::from(k) {
                    return Err(Error::LetterOutOfRange { position: i + 1, letter, k });
                }
                letters.push(letter as u32);
            }
        } else {
            for (i, ch) in trimmed.chars().enumerate() {
                let digit = ch.to_digit(10).ok_or_else(|| Error::WordParse {
                    position: i + 1,
                    reason: format!("{ch:?} is not a digit"),
                })?;
                if digit == 0 || digit > k {
                    return Err(Error::LetterOutOfRange { position: i + 1, letter: digit.into(), k });
                }
                letters.push(digit);
            }
        }
        Word::new(letters, k)
    }

    pub fn empty(k: u32) -> Result<Self> {
        Word::new(Vec::new(), k)
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn reversed(&self) -> Word {
        Word { letters: self.letters.iter().rev().copied().collect(), k: self.k }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k <= 9 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConnectorKind {
    /// Adjacent pair whose letters sum to exactly the threshold.
    SumEquals,
    /// Adjacent pair whose letters sum to more than the threshold.
    SumGreater,
}

/// A statistic counting adjacent pairs by the sum of their letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConnectorStat {
    kind: ConnectorKind,
    threshold: u32,
}

impl ConnectorStat {
    pub fn new(kind: ConnectorKind, threshold: u32) -> Result<Self> {
        if threshold == 0 {
            return Err(Error::ZeroThreshold);
        }
        Ok(ConnectorStat { kind, threshold })
    }

    /// k-connectors: pairs summing to `k`.
    pub fn kcon(k: u32) -> Self {
        Self::new(ConnectorKind::SumEquals, k).expect("k >= 1")
    }

    /// gk-connectors: pairs summing to more than `k`.
    pub fn gkcon(k: u32) -> Self {
        Self::new(ConnectorKind::SumGreater, k).expect("k >= 1")
    }

    pub fn kind(&self) -> ConnectorKind {
        self.kind
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    #[inline]
    pub fn matches(&self, left: u32, right: u32) -> bool {
        let sum = u64::from(left) + u64::from(right);
        let t = u64::from(self.threshold);
        match self.kind {
            ConnectorKind::SumEquals => sum == t,
            ConnectorKind::SumGreater => sum > t,
        }
    }

    /// Number of adjacent positions where the pair satisfies the statistic.
    pub fn count_pairs(&self, letters: &[u32]) -> usize {
        letters.windows(2).filter(|w| self.matches(w[0], w[1])).count()
    }
}

pub fn stat_count(w: &Word, s: ConnectorStat) -> usize {
    s.count_pairs(&w.letters)
}

/// Checks `k^n` against `cap` and returns the word count.
pub fn checked_word_count(n: usize, k: u32, cap: u64) -> Result<u64> {
    let too_large = Error::EnumerationTooLarge { n, k, cap };
    let exp = u32::try_from(n).map_err(|_| too_large.clone())?;
    match u64::from(k).checked_pow(exp) {
        Some(c) if c <= cap => Ok(c),
        _ => Err(too_large),
    }
}

/// Lexicographic enumeration of `{1..k}^n`.
#[derive(Debug, Clone)]
pub struct WordIter {
    current: Option<Vec<u32>>,
    k: u32,
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let letters = self.current.as_mut()?;
        let out = Word { letters: letters.clone(), k: self.k };
        if !advance(letters, self.k) {
            self.current = None;
        }
        Some(out)
    }
}

/// Odometer step in lexicographic order; false once the last word is passed.
fn advance(letters: &mut [u32], k: u32) -> bool {
    for slot in letters.iter_mut().rev() {
        if *slot < k {
            *slot += 1;
            return true;
        }
        *slot = 1;
    }
    false
}

pub fn enumerate_words(n: usize, k: u32) -> Result<WordIter> {
    enumerate_words_capped(n, k, DEFAULT_ENUM_CAP)
}

pub fn enumerate_words_capped(n: usize, k: u32, cap: u64) -> Result<WordIter> {
    if k == 0 {
        return Err(Error::EmptyAlphabet);
    }
    checked_word_count(n, k, cap)?;
    Ok(WordIter { current: Some(vec![1; n]), k })
}

pub fn brute_distribution(n: usize, k: u32, s: ConnectorStat) -> Result<QPolynomial> {
    brute_distribution_capped(n, k, s, DEFAULT_ENUM_CAP)
}

/// `sum over w in [k]^n of q^{stat(w)}`, by visiting every word.
///
/// Large ranges are split by first letter across threads; per-letter
/// histograms are summed in letter order, so the result does not depend on
/// scheduling.
pub fn brute_distribution_capped(n: usize, k: u32, s: ConnectorStat, cap: u64) -> Result<QPolynomial> {
    if k == 0 {
        return Err(Error::EmptyAlphabet);
    }
    let total = checked_word_count(n, k, cap)?;
    if n == 0 {
        return Ok(QPolynomial::one());
    }
    let histogram = if total >= 1 << 16 && k > 1 {
        let parts: Vec<Vec<u64>> = thread::scope(|scope| {
            let handles: Vec<_> = (1..=k).map(|first| scope.spawn(move || histogram_with_prefix(n, k, s, first))).collect();
            handles.into_iter().map(|h| h.join().expect("enumeration worker panicked")).collect()
        });
        let mut merged = vec![0u64; n];
        for part in parts {
            for (m, c) in merged.iter_mut().zip(part) {
                *m += c;
            }
        }
        merged
    } else {
        let mut merged = vec![0u64; n];
        for first in 1..=k {
            for (m, c) in merged.iter_mut().zip(histogram_with_prefix(n, k, s, first)) {
                *m += c;
            }
        }
        merged
    };
    Ok(QPolynomial::from_coeffs(histogram.into_iter().map(BigInt::from).collect()))
}

/// Histogram of statistic values over words of length `n >= 1` starting with `first`.
fn histogram_with_prefix(n: usize, k: u32, s: ConnectorStat, first: u32) -> Vec<u64> {
    let mut hist = vec![0u64; n];
    let mut letters = vec![1u32; n];
    letters[0] = first;
    loop {
        hist[s.count_pairs(&letters)] += 1;
        if !advance(&mut letters[1..], k) {
            break;
        }
    }
    hist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, k: u32) -> Word {
        Word::parse(s, k).unwrap()
    }

    #[test]
    fn worked_example_counts() {
        let word = w("143114", 4);
        assert_eq!(stat_count(&word, ConnectorStat::kcon(4)), 1);
        assert_eq!(stat_count(&word, ConnectorStat::gkcon(4)), 3);
    }

    #[test]
    fn empty_and_single_letter_words() {
        let e = Word::empty(3).unwrap();
        assert_eq!(stat_count(&e, ConnectorStat::kcon(3)), 0);
        assert_eq!(stat_count(&e, ConnectorStat::gkcon(3)), 0);
        assert_eq!(stat_count(&w("2", 3), ConnectorStat::gkcon(3)), 0);
    }

    #[test]
    fn all_ones_over_two_letters() {
        assert_eq!(stat_count(&w("111", 2), ConnectorStat::kcon(2)), 2);
    }

    #[test]
    fn comma_form_for_large_letters() {
        let word = w("10,3", 12);
        assert_eq!(word.letters(), &[10, 3]);
        assert_eq!(stat_count(&word, ConnectorStat::kcon(12)), 0);
        assert_eq!(stat_count(&word, ConnectorStat::gkcon(12)), 1);
        assert_eq!(word.to_string(), "10,3");
    }

    #[test]
    fn rejects_out_of_range_letters() {
        assert_eq!(Word::parse("125", 4), Err(Error::LetterOutOfRange { position: 3, letter: 5, k: 4 }));
        assert_eq!(Word::parse("1,0", 4), Err(Error::LetterOutOfRange { position: 2, letter: 0, k: 4 }));
        assert!(matches!(Word::parse("1a", 4), Err(Error::WordParse { position: 2, .. })));
        assert!(matches!(Word::parse("1,,2", 4), Err(Error::WordParse { position: 2, .. })));
        assert!(Word::new(vec![1, 9], 3).is_err());
        assert_eq!(Word::new(vec![], 0), Err(Error::EmptyAlphabet));
        assert_eq!(ConnectorStat::new(ConnectorKind::SumEquals, 0), Err(Error::ZeroThreshold));
    }

    #[test]
    fn enumeration_order_and_size() {
        let words: Vec<String> = enumerate_words(2, 2).unwrap().map(|w| w.to_string()).collect();
        assert_eq!(words, ["11", "12", "21", "22"]);
        let empty: Vec<Word> = enumerate_words(0, 5).unwrap().collect();
        assert_eq!(empty.len(), 1);
        assert!(empty[0].is_empty());
        let all: Vec<Word> = enumerate_words(3, 3).unwrap().collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0].to_string(), "111");
        assert_eq!(all[26].to_string(), "333");
    }

    #[test]
    fn enumeration_cap() {
        assert!(matches!(enumerate_words_capped(5, 10, 99_999), Err(Error::EnumerationTooLarge { .. })));
        assert!(enumerate_words_capped(5, 10, 100_000).is_ok());
        assert!(matches!(
            brute_distribution(40, 3, ConnectorStat::kcon(3)),
            Err(Error::EnumerationTooLarge { n: 40, k: 3, .. })
        ));
        assert!(matches!(enumerate_words(usize::MAX, 2), Err(Error::EnumerationTooLarge { .. })));
    }

    #[test]
    fn brute_small_cases() {
        assert_eq!(brute_distribution(3, 2, ConnectorStat::kcon(2)).unwrap(), QPolynomial::from_i64s(&[5, 2, 1]));
        assert_eq!(brute_distribution(2, 2, ConnectorStat::gkcon(2)).unwrap(), QPolynomial::from_i64s(&[1, 3]));
        assert_eq!(brute_distribution(0, 4, ConnectorStat::gkcon(4)).unwrap(), QPolynomial::one());
    }

    #[test]
    fn single_letter_alphabet() {
        for n in 0..6 {
            assert_eq!(brute_distribution(n, 1, ConnectorStat::kcon(1)).unwrap(), QPolynomial::one());
            let expected = if n == 0 { QPolynomial::one() } else { QPolynomial::monomial(1, n - 1) };
            assert_eq!(brute_distribution(n, 1, ConnectorStat::gkcon(1)).unwrap(), expected);
        }
    }

    #[test]
    fn threaded_matches_iterator_oracle() {
        // 4^8 = 65536 takes the threaded path.
        let s = ConnectorStat::gkcon(4);
        let threaded = brute_distribution(8, 4, s).unwrap();
        let mut hist = vec![0i64; 8];
        for word in enumerate_words(8, 4).unwrap() {
            hist[stat_count(&word, s)] += 1;
        }
        assert_eq!(threaded, QPolynomial::from_i64s(&hist));
    }
}
