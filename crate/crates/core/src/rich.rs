//! Richness testing, palindromic defect, and UPS-factorization.
//!
//! A word of length n is rich when it has n+1 distinct palindromic factors
//! (the empty word included), the maximum possible. Rich words factor
//! uniquely as w = w_p ... w_1 where each w_i is the longest palindromic
//! suffix of w_p ... w_i and occurs there exactly once; repeatedly
//! stripping the longest palindromic suffix realizes that factorization.

use serde::Serialize;

use crate::eertree::Eertree;
use crate::words::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RichError {
    #[error("word is not rich (defect {defect}); UPS-factorization requires richness")]
    NotRich { defect: usize },
}

/// The unioccurrent-palindromic-suffix factorization of a rich word.
///
/// `parts` is ordered left to right: `parts[0]` is the leftmost palindrome
/// and `parts[p-1]` the final stripped suffix. The empty word factorizes
/// into zero parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpsFactorization {
    parts: Vec<Word>,
}

impl UpsFactorization {
    pub fn parts(&self) -> &[Word] {
        &self.parts
    }

    /// Number of palindrome parts, p.
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Concatenation of the parts.
    pub fn concatenated(&self) -> Word {
        let letters: Vec<Letter> =
            self.parts.iter().flat_map(|p| p.letters().iter().copied()).collect();
        Word::from_raw(letters)
    }
}

fn fresh_tree_for(w: &Word) -> Eertree {
    let q = w.letters().iter().copied().max().map_or(2, |m| m + 1).max(2);
    Eertree::new(&Alphabet::new(q).expect("letter indices stay within 0..36"))
}

/// True iff `w` has |w|+1 distinct palindromic factors, counting the empty
/// word. Computed incrementally: `w` is rich iff every eertree append
/// reports a newly created palindrome.
pub fn is_rich(w: &Word) -> bool {
    let mut tree = fresh_tree_for(w);
    w.letters().iter().all(|&x| {
        tree.append(x).expect("letters validated by construction").created_new
    })
}

/// Palindromic defect: |w|+1 minus the number of distinct palindromic
/// factors including the empty word. Zero iff `w` is rich.
pub fn defect(w: &Word) -> usize {
    let mut tree = fresh_tree_for(w);
    for &x in w.letters() {
        tree.append(x).expect("letters validated by construction");
    }
    w.len() - tree.distinct_palindromes()
}

/// Longest palindromic suffix length of a non-empty letter slice, via a
/// throwaway eertree over the slice.
fn lps_len(letters: &[Letter]) -> usize {
    let q = letters.iter().copied().max().unwrap_or(0).max(1) + 1;
    let mut tree = Eertree::new(&Alphabet::new(q.max(2)).expect("letter indices stay within 0..36"));
    for &x in letters {
        tree.append(x).expect("letters validated by construction");
    }
    tree.longest_palindromic_suffix_length().expect("slice is non-empty")
}

/// Greedy longest-palindromic-suffix stripping applied to any word.
///
/// For rich input this is the UPS-factorization; for non-rich input the
/// parts are still non-empty palindromes concatenating to `w`, but
/// distinctness and unioccurrence are not guaranteed.
pub fn greedy_palindromic_suffix_factorization(w: &Word) -> Vec<Word> {
    let mut parts = Vec::new();
    let mut remaining = w.letters();
    while !remaining.is_empty() {
        let take = lps_len(remaining);
        let split = remaining.len() - take;
        parts.push(Word::from_raw(remaining[split..].to_vec()));
        remaining = &remaining[..split];
    }
    parts.reverse();
    parts
}

/// UPS-factorization of a rich word.
///
/// Errors with the defect value on non-rich input. The empty word returns
/// p = 0 (a convention: the iteration below it never runs, and it keeps
/// counting consistent with R_0 = 1).
pub fn ups_factorize(w: &Word) -> Result<UpsFactorization, RichError> {
    let d = defect(w);
    if d != 0 {
        return Err(RichError::NotRich { defect: d });
    }
    Ok(UpsFactorization { parts: greedy_palindromic_suffix_factorization(w) })
}

/// The number of palindromes p in the UPS-factorization of a rich word.
pub fn ups_part_count(w: &Word) -> Result<usize, RichError> {
    ups_factorize(w).map(|f| f.part_count())
}

/// Serializable factorization report (the JSON interchange record).
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationRecord {
    pub word: String,
    pub rich: bool,
    pub defect: usize,
    pub p: usize,
    pub parts: Vec<String>,
    pub n: usize,
}

impl FactorizationRecord {
    pub fn new(w: &Word, parts: &[Word]) -> Self {
        FactorizationRecord {
            word: w.to_string(),
            rich: is_rich(w),
            defect: defect(w),
            p: parts.len(),
            parts: parts.iter().map(Word::to_string).collect(),
            n: w.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{
        count_occurrences, longest_palindromic_suffix_bruteforce,
        palindromic_factor_set_bruteforce,
    };

    fn w(text: &str, q: u8) -> Word {
        Word::parse(text, &Alphabet::new(q).unwrap()).unwrap()
    }

    fn binary_words(n: usize) -> impl Iterator<Item = Word> {
        (0u32..1 << n).map(move |code| {
            Word::from_raw((0..n).map(|i| ((code >> i) & 1) as Letter).collect())
        })
    }

    #[test]
    fn richness_examples() {
        assert!(is_rich(&w("abaab", 2)));
        assert!(!is_rich(&w("abcabc", 3)));
        assert!(is_rich(&Word::empty()));
    }

    #[test]
    fn defect_examples() {
        assert_eq!(defect(&w("abaab", 2)), 0);
        assert_eq!(defect(&w("abcabc", 3)), 3);
        assert_eq!(defect(&w("a", 2)), 0);
    }

    #[test]
    fn factorize_examples() {
        let f = ups_factorize(&w("abaab", 2)).unwrap();
        assert_eq!(f.parts(), &[w("a", 2), w("baab", 2)]);
        assert_eq!(f.part_count(), 2);

        let f = ups_factorize(&w("aaaa", 2)).unwrap();
        assert_eq!(f.parts(), &[w("aaaa", 2)]);

        let f = ups_factorize(&w("abc", 3)).unwrap();
        assert_eq!(f.parts(), &[w("a", 3), w("b", 3), w("c", 3)]);
        assert_eq!(ups_part_count(&w("abc", 3)).unwrap(), 3);
    }

    #[test]
    fn factorize_rejects_non_rich() {
        assert_eq!(ups_factorize(&w("abcabc", 3)), Err(RichError::NotRich { defect: 3 }));
    }

    #[test]
    fn empty_word_is_rich_with_zero_parts() {
        let f = ups_factorize(&Word::empty()).unwrap();
        assert_eq!(f.part_count(), 0);
        assert!(f.parts().is_empty());
    }

    #[test]
    fn greedy_factorization_on_non_rich_input() {
        let parts = greedy_palindromic_suffix_factorization(&w("abcabc", 3));
        let glued: Vec<Letter> =
            parts.iter().flat_map(|p| p.letters().iter().copied()).collect();
        assert_eq!(glued, w("abcabc", 3).letters());
        assert!(parts.iter().all(|p| p.is_palindrome() && !p.is_empty()));
    }

    #[test]
    fn richness_matches_bruteforce_binary_up_to_10() {
        for n in 0usize..=10 {
            for word in binary_words(n) {
                let brute = palindromic_factor_set_bruteforce(&word).unwrap().len() == n + 1;
                assert_eq!(is_rich(&word), brute, "word {word}");
                assert_eq!(defect(&word), n + 1 - palindromic_factor_set_bruteforce(&word).unwrap().len());
            }
        }
    }

    #[test]
    fn reversal_closure_binary_up_to_14() {
        for n in 0usize..=14 {
            for code in 0u32..1 << n {
                let letters: Vec<Letter> = (0..n).map(|i| ((code >> i) & 1) as Letter).collect();
                let word = Word::from_raw(letters);
                assert_eq!(is_rich(&word), is_rich(&word.reversed()));
            }
        }
    }

    #[test]
    fn factor_closure_of_rich_binary_words() {
        for n in 0usize..=12 {
            for word in binary_words(n).filter(is_rich) {
                for start in 0..=n {
                    for end in start..=n {
                        assert!(is_rich(&word.factor(start, end)), "factor of rich {word}");
                    }
                }
            }
        }
    }

    #[test]
    fn ups_invariants_exhaustive_binary_up_to_12() {
        // Concatenation identity, palindromic parts, pairwise distinctness,
        // the longest-palindromic-suffix property, and unioccurrence.
        for n in 1usize..=12 {
            for word in binary_words(n).filter(is_rich) {
                let f = ups_factorize(&word).unwrap();
                assert_eq!(f.concatenated(), word);
                assert!(f.part_count() >= 1 && f.part_count() <= n);
                let mut seen = std::collections::BTreeSet::new();
                let mut prefix_end = 0usize;
                for part in f.parts() {
                    assert!(part.is_palindrome() && !part.is_empty());
                    assert!(seen.insert(part.clone()), "duplicate part in {word}");
                    prefix_end += part.len();
                    let prefix = word.factor(0, prefix_end);
                    let lps = longest_palindromic_suffix_bruteforce(&prefix).unwrap();
                    assert_eq!(part, &lps, "part is not the lps of its prefix in {word}");
                    assert_eq!(
                        count_occurrences(&prefix, part),
                        1,
                        "part not unioccurrent in its prefix of {word}"
                    );
                }
                // The final part is also unioccurrent in the whole word.
                assert_eq!(count_occurrences(&word, f.parts().last().unwrap()), 1);
            }
        }
    }

    #[test]
    fn record_serialization_shape() {
        let word = w("abaab", 2);
        let f = ups_factorize(&word).unwrap();
        let record = FactorizationRecord::new(&word, f.parts());
        let json = serde_json::to_value(&record).unwrap();
        assert_eq!(json["word"], "abaab");
        assert_eq!(json["rich"], true);
        assert_eq!(json["defect"], 0);
        assert_eq!(json["p"], 2);
        assert_eq!(json["parts"], serde_json::json!(["a", "baab"]));
        assert_eq!(json["n"], 5);
    }
}
