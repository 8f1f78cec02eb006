//! Alphabet and word primitives, plus deliberately naive brute-force
//! oracles used as ground truth by the test suites.
//!
//! The oracles enumerate substrings and check palindromicity directly so
//! they cannot share a bug with the eertree-based fast paths.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;

/// Letter of a word, stored as a small index into the alphabet.
pub type Letter = u8;

/// Largest supported alphabet; rendering maps indices to `a`-`z` then `0`-`9`.
pub const MAX_ALPHABET: u8 = 36;

/// Longest input accepted by the O(n^3) brute-force factor-set oracle.
pub const ORACLE_MAX_LEN: usize = 30;

const RENDER: &[u8; 36] = b"abcdefghijklmnopqrstuvwxyz0123456789";

/// Errors from word construction and the brute-force oracles.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("alphabet size {0} out of range (2..=36)")]
    AlphabetSize(u8),
    #[error("letter index {letter} out of range for alphabet of size {size}")]
    LetterOutOfRange { letter: Letter, size: u8 },
    #[error("character {0:?} is not a letter of the declared alphabet")]
    BadChar(char),
    #[error("input of length {len} exceeds the brute-force oracle guard ({max})")]
    InputTooLarge { len: usize, max: usize },
    #[error("operation requires a non-empty word")]
    EmptyWord,
}

/// A finite alphabet of `q` letters, 2 <= q <= 36.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub fn new(size: u8) -> Result<Self, WordError> {
        if (2..=MAX_ALPHABET).contains(&size) {
            Ok(Alphabet { size })
        } else {
            Err(WordError::AlphabetSize(size))
        }
    }

    pub fn size(&self) -> u8 {
        self.size
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter < self.size
    }

    /// All letters of the alphabet in index order.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.size
    }

    pub fn letter_to_char(letter: Letter) -> char {
        RENDER[letter as usize] as char
    }

    pub fn char_to_letter(&self, c: char) -> Result<Letter, WordError> {
        let idx = match c {
            'a'..='z' => c as u8 - b'a',
            '0'..='9' => 26 + (c as u8 - b'0'),
            _ => return Err(WordError::BadChar(c)),
        };
        if idx < self.size {
            Ok(idx)
        } else {
            Err(WordError::BadChar(c))
        }
    }
}

/// A finite word: a sequence of letter indices.
///
/// `Word` itself does not remember the alphabet it was parsed over; validity
/// against a given alphabet is enforced at construction (`parse`,
/// `from_letters`) and again wherever an alphabet is supplied.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    /// Builds a word after checking every letter against the alphabet.
    pub fn from_letters(letters: Vec<Letter>, alphabet: &Alphabet) -> Result<Self, WordError> {
        match letters.iter().find(|&&x| !alphabet.contains(x)) {
            Some(&letter) => Err(WordError::LetterOutOfRange { letter, size: alphabet.size() }),
            None => Ok(Word { letters }),
        }
    }

    /// Internal constructor for letters already known to be in range.
    pub(crate) fn from_raw(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&x| x < MAX_ALPHABET));
        Word { letters }
    }

    /// Parses the ASCII text format (`a`-`z` then `0`-`9`), rejecting
    /// characters outside the declared alphabet.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self, WordError> {
        let letters = text
            .chars()
            .map(|c| alphabet.char_to_letter(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word { letters })
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome_slice(&self.letters)
    }

    /// Letters in reverse order; an involution.
    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word { letters }
    }

    /// Contiguous substring `[start, end)` as a new word.
    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word { letters: self.letters[start..end].to_vec() }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.letters {
            write!(f, "{}", Alphabet::letter_to_char(x))?;
        }
        Ok(())
    }
}

pub(crate) fn is_palindrome_slice(letters: &[Letter]) -> bool {
    let n = letters.len();
    (0..n / 2).all(|i| letters[i] == letters[n - 1 - i])
}

/// All distinct palindromic factors of `w`, including the empty word.
///
/// Naive substring enumeration; guarded to |w| <= 30 because it is the
/// ground-truth oracle, not a production path.
pub fn palindromic_factor_set_bruteforce(w: &Word) -> Result<BTreeSet<Word>, WordError> {
    if w.len() > ORACLE_MAX_LEN {
        return Err(WordError::InputTooLarge { len: w.len(), max: ORACLE_MAX_LEN });
    }
    let mut set = BTreeSet::new();
    set.insert(Word::empty());
    for start in 0..w.len() {
        for end in start + 1..=w.len() {
            if is_palindrome_slice(&w.letters()[start..end]) {
                set.insert(w.factor(start, end));
            }
        }
    }
    Ok(set)
}

/// The longest suffix of `w` that is a palindrome; defined for non-empty `w`
/// (a single letter is always a palindrome).
pub fn longest_palindromic_suffix_bruteforce(w: &Word) -> Result<Word, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    for start in 0..w.len() {
        if is_palindrome_slice(&w.letters()[start..]) {
            return Ok(w.factor(start, w.len()));
        }
    }
    unreachable!("the final letter alone is a palindrome")
}

/// Number of palindromes of length `i` over `q` letters: q^ceil(i/2).
/// The first half of a palindrome determines the second.
pub fn count_palindromes_of_length(i: u64, q: u8) -> BigUint {
    debug_assert!(i >= 1 && q >= 2);
    let half = i.div_ceil(2);
    BigUint::from(q).pow(u32::try_from(half).expect("length fits u32"))
}

/// Occurrences of `pattern` as a factor of `haystack`, counted naively.
pub fn count_occurrences(haystack: &Word, pattern: &Word) -> usize {
    let (h, p) = (haystack.letters(), pattern.letters());
    if p.is_empty() || p.len() > h.len() {
        return if p.is_empty() { h.len() + 1 } else { 0 };
    }
    (0..=h.len() - p.len()).filter(|&i| &h[i..i + p.len()] == p).count()
}
