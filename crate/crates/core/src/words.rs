//! Words and word lists in a free group of rank `n`.
//!
//! Two text encodings are accepted. The compact one writes generators as
//! lowercase letters and inverses as uppercase (`abAB`), which covers rank up
//! to 26. The explicit one writes `a<i>` for the `i`-th generator and
//! `a<i>^-1` for its inverse, so any rank can be spelled out. Both forms may
//! be mixed, and any atom or parenthesised group may carry an integer power:
//! `(ab^-1)^3`, `b^2`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unknown symbol {symbol:?} at offset {offset}")]
    UnknownSymbol { symbol: char, offset: usize },
    #[error("generator {generator} exceeds rank {rank}")]
    OutOfRank { generator: usize, rank: usize },
    #[error("word {index} is trivial up to conjugacy")]
    Trivial { index: usize },
    #[error("word {index} is not cyclically reduced")]
    NotCyclicallyReduced { index: usize },
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A generator `a_i` or its inverse. `generator` is zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, false)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }

    /// Explicit token form, `a3` or `a3^-1` (one-based index).
    pub fn explicit(self) -> String {
        if self.inverse {
            format!("a{}^-1", self.generator + 1)
        } else {
            format!("a{}", self.generator + 1)
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generator < 26 {
            let c = (b'a' + self.generator as u8) as char;
            if self.inverse {
                write!(f, "{}", c.to_ascii_uppercase())
            } else {
                write!(f, "{c}")
            }
        } else {
            f.write_str(&self.explicit())
        }
    }
}

/// A word together with its index in the enclosing list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<Letter>,
    index: usize,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word { letters, index: 0 }
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.index = index;
        self
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
            index: self.index,
        }
    }

    /// `x_{i+1} != x_i^{-1}` for every i, indices taken cyclically.
    pub fn is_cyclically_reduced(&self) -> bool {
        let n = self.letters.len();
        n > 0 && (0..n).all(|i| self.letters[(i + 1) % n] != self.letters[i].inv())
    }

    /// Compact encoding when every generator fits in a letter, explicit tokens otherwise.
    pub fn render(&self) -> String {
        render_letters(&self.letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn render_letters(letters: &[Letter]) -> String {
    if letters.iter().all(|l| l.generator < 26) {
        letters.iter().map(|l| l.to_string()).collect()
    } else {
        letters
            .iter()
            .map(|l| l.explicit())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Parse a generator expression without any reduction.
pub fn parse_word(text: &str, rank: usize) -> Result<Word, WordError> {
    if rank == 0 {
        return Err(WordError::ZeroRank);
    }
    let chars: Vec<char> = text.chars().collect();
    let mut parser = Parser {
        chars: &chars,
        pos: 0,
        rank,
    };
    let letters = parser.expr(0)?;
    if parser.pos < chars.len() {
        return Err(WordError::UnknownSymbol {
            symbol: chars[parser.pos],
            offset: parser.pos,
        });
    }
    if letters.is_empty() {
        return Err(WordError::Empty);
    }
    Ok(Word::new(letters))
}

struct Parser<'a> {
    chars: &'a [char],
    pos: usize,
    rank: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self, depth: usize) -> Result<Vec<Letter>, WordError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' {
                if depth == 0 {
                    return Err(WordError::UnknownSymbol {
                        symbol: c,
                        offset: self.pos,
                    });
                }
                break;
            }
            let atom = self.atom(depth)?;
            let power = self.power()?;
            expand_power(&atom, power, &mut out);
        }
        Ok(out)
    }

    fn atom(&mut self, depth: usize) -> Result<Vec<Letter>, WordError> {
        let start = self.pos;
        let c = self.chars[self.pos];
        self.pos += 1;
        if c == '(' {
            let inner = self.expr(depth + 1)?;
            if self.peek() != Some(')') {
                return Err(WordError::UnknownSymbol {
                    symbol: '(',
                    offset: start,
                });
            }
            self.pos += 1;
            return Ok(inner);
        }
        if c == 'a' && self.chars.get(self.pos).is_some_and(|d| d.is_ascii_digit()) {
            let digits_start = self.pos;
            while self.chars.get(self.pos).is_some_and(|d| d.is_ascii_digit()) {
                self.pos += 1;
            }
            let digits: String = self.chars[digits_start..self.pos].iter().collect();
            let index: usize = digits.parse().map_err(|_| WordError::UnknownSymbol {
                symbol: c,
                offset: start,
            })?;
            if index == 0 {
                return Err(WordError::UnknownSymbol {
                    symbol: '0',
                    offset: digits_start,
                });
            }
            if index > self.rank {
                return Err(WordError::OutOfRank {
                    generator: index,
                    rank: self.rank,
                });
            }
            return Ok(vec![Letter::pos(index - 1)]);
        }
        if c.is_ascii_alphabetic() {
            let generator = (c.to_ascii_lowercase() as u8 - b'a') as usize;
            if generator >= self.rank {
                return Err(WordError::OutOfRank {
                    generator: generator + 1,
                    rank: self.rank,
                });
            }
            return Ok(vec![Letter::new(generator, c.is_ascii_uppercase())]);
        }
        Err(WordError::UnknownSymbol {
            symbol: c,
            offset: start,
        })
    }

    fn power(&mut self) -> Result<i64, WordError> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        let caret = self.pos;
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|d| d.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| WordError::UnknownSymbol {
            symbol: '^',
            offset: caret,
        })
    }
}

fn expand_power(atom: &[Letter], power: i64, out: &mut Vec<Letter>) {
    let base: Vec<Letter> = if power < 0 {
        atom.iter().rev().map(|l| l.inv()).collect()
    } else {
        atom.to_vec()
    };
    for _ in 0..power.unsigned_abs() {
        out.extend_from_slice(&base);
    }
}

/// Free and cyclic reduction; the result represents the same conjugacy class.
pub fn cyclic_reduce(word: &Word) -> Result<Word, WordError> {
    let mut stack: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word.letters() {
        if stack.last() == Some(&l.inv()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    let (mut lo, mut hi) = (0usize, stack.len());
    while hi - lo >= 2 && stack[hi - 1] == stack[lo].inv() {
        lo += 1;
        hi -= 1;
    }
    if lo == hi {
        return Err(WordError::Trivial { index: word.index });
    }
    Ok(Word {
        letters: stack[lo..hi].to_vec(),
        index: word.index,
    })
}

/// A length-2 cyclic subword `x_i x_{i+1}` tagged with its (zero-based) position `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Subword {
    pub first: Letter,
    pub second: Letter,
    pub position: usize,
}

pub fn length2_cyclic_subwords(word: &Word) -> Vec<Subword> {
    let n = word.len();
    (0..n)
        .map(|i| Subword {
            first: word.letters[i],
            second: word.letters[(i + 1) % n],
            position: i,
        })
        .collect()
}

/// Ordered list of cyclically reduced words over `rank` generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordList {
    rank: usize,
    words: Vec<Word>,
}

impl WordList {
    /// Validates rank bounds and cyclic reduction; reindexes words by position.
    pub fn new(rank: usize, words: Vec<Word>) -> Result<Self, WordError> {
        if rank == 0 {
            return Err(WordError::ZeroRank);
        }
        let mut out = Vec::with_capacity(words.len());
        for (index, w) in words.into_iter().enumerate() {
            if let Some(l) = w.letters().iter().find(|l| l.generator >= rank) {
                return Err(WordError::OutOfRank {
                    generator: l.generator + 1,
                    rank,
                });
            }
            if !w.is_cyclically_reduced() {
                return Err(WordError::NotCyclicallyReduced { index });
            }
            out.push(w.with_index(index));
        }
        Ok(WordList { rank, words: out })
    }

    /// Parse each text and cyclically reduce it.
    pub fn from_texts<S: AsRef<str>>(rank: usize, texts: &[S]) -> Result<Self, WordError> {
        let mut words = Vec::new();
        for (index, t) in texts.iter().enumerate() {
            let w = parse_word(t.as_ref(), rank)?.with_index(index);
            words.push(cyclic_reduce(&w)?);
        }
        WordList::new(rank, words)
    }

    /// File form: `rank <n>` on the first line, then one word per line; `#` starts a comment.
    pub fn parse_file(text: &str) -> Result<Self, WordError> {
        let mut rank = None;
        let mut words = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match rank {
                None => {
                    let mut parts = line.split_whitespace();
                    let n = match (parts.next(), parts.next(), parts.next()) {
                        (Some("rank"), Some(n), None) => n.parse::<usize>().ok(),
                        _ => None,
                    };
                    match n {
                        Some(n) if n > 0 => rank = Some(n),
                        Some(_) => return Err(WordError::ZeroRank),
                        None => {
                            return Err(WordError::Syntax {
                                line: lineno + 1,
                                message: "expected `rank <n>`".into(),
                            })
                        }
                    }
                }
                Some(n) => {
                    let index = words.len();
                    let w = parse_word(line, n).map_err(|e| WordError::Syntax {
                        line: lineno + 1,
                        message: e.to_string(),
                    })?;
                    words.push(cyclic_reduce(&w.with_index(index))?);
                }
            }
        }
        let rank = rank.ok_or(WordError::Syntax {
            line: 1,
            message: "missing `rank <n>` header".into(),
        })?;
        WordList::new(rank, words)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn total_length(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    pub fn to_file_string(&self) -> String {
        let mut s = format!("rank {}\n", self.rank);
        for w in &self.words {
            s.push_str(&w.render());
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityProfile {
    /// Occurrences of each generator, both signs combined.
    pub counts: Vec<usize>,
    /// Common count when every generator occurs equally often.
    pub k: Option<usize>,
}

pub fn regularity_profile(list: &WordList) -> RegularityProfile {
    let mut counts = vec![0; list.rank()];
    for w in list.words() {
        for l in w.letters() {
            counts[l.generator] += 1;
        }
    }
    let k = counts
        .first()
        .copied()
        .filter(|&k0| counts.iter().all(|&c| c == k0));
    RegularityProfile { counts, k }
}

/// If `word` is `(c)^p` for a cyclic conjugate `c` of `base`, returns `p`.
pub fn power_of_conjugate(word: &[Letter], base: &[Letter]) -> Option<usize> {
    let (n, b) = (word.len(), base.len());
    if b == 0 || n == 0 || n % b != 0 {
        return None;
    }
    (0..b)
        .find(|&shift| (0..n).all(|i| word[i] == base[(i + shift) % b]))
        .map(|_| n / b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, rank: usize) -> Word {
        parse_word(text, rank).unwrap()
    }

    #[test]
    fn parse_compact_and_explicit() {
        assert_eq!(
            w("abAB", 2).letters(),
            &[Letter::pos(0), Letter::pos(1), Letter::neg(0), Letter::neg(1)]
        );
        assert_eq!(w("a", 1).letters(), &[Letter::pos(0)]);
        assert_eq!(w("a1 a2^-1", 2).letters(), &[Letter::pos(0), Letter::neg(1)]);
        assert_eq!(w("a30^-1", 30).letters(), &[Letter::neg(29)]);
    }

    #[test]
    fn parse_powers() {
        assert_eq!(w("a(aB)^3b^-2", 2), w("aaBaBaBBB", 2));
        assert_eq!(w("abab^2ab^3", 2), w("ababbabbb", 2));
        assert_eq!(w("(ab)^-1", 2), w("BA", 2));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_word("abc", 2),
            Err(WordError::OutOfRank {
                generator: 3,
                rank: 2
            })
        );
        assert_eq!(parse_word("", 2), Err(WordError::Empty));
        assert_eq!(parse_word("  ", 2), Err(WordError::Empty));
        assert!(matches!(
            parse_word("a*b", 2),
            Err(WordError::UnknownSymbol { symbol: '*', .. })
        ));
        assert!(matches!(parse_word("a3", 2), Err(WordError::OutOfRank { .. })));
        assert!(matches!(parse_word("(ab", 2), Err(WordError::UnknownSymbol { .. })));
        assert!(matches!(parse_word("ab)", 2), Err(WordError::UnknownSymbol { .. })));
    }

    #[test]
    fn cyclic_reduction() {
        assert_eq!(cyclic_reduce(&w("baB", 2)).unwrap(), w("a", 2));
        let long = w("abab^2ab^3", 2);
        assert_eq!(cyclic_reduce(&long).unwrap(), long);
        assert_eq!(
            cyclic_reduce(&w("aA", 1)),
            Err(WordError::Trivial { index: 0 })
        );
        assert_eq!(cyclic_reduce(&w("abBcCA", 3)), Err(WordError::Trivial { index: 0 }));
        assert_eq!(cyclic_reduce(&w("BAabaabA", 2)).unwrap(), w("ab", 2));
    }

    #[test]
    fn subwords_wrap_around() {
        let s = length2_cyclic_subwords(&w("aBaab", 2));
        let pairs: Vec<String> = s
            .iter()
            .map(|p| format!("{}{}", p.first, p.second))
            .collect();
        assert_eq!(pairs, ["aB", "Ba", "aa", "ab", "ba"]);
        assert_eq!(s[4].position, 4);

        let s = length2_cyclic_subwords(&w("aa", 1));
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|p| p.first == Letter::pos(0) && p.second == Letter::pos(0)));

        let pairs: Vec<String> = length2_cyclic_subwords(&w("abAB", 2))
            .iter()
            .map(|p| format!("{}{}", p.first, p.second))
            .collect();
        assert_eq!(pairs, ["ab", "bA", "AB", "Ba"]);
    }

    #[test]
    fn profiles() {
        let p = regularity_profile(&WordList::from_texts(2, &["abAB"]).unwrap());
        assert_eq!(p.counts, [2, 2]);
        assert_eq!(p.k, Some(2));
        let p = regularity_profile(&WordList::from_texts(2, &["abab^2ab^3"]).unwrap());
        assert_eq!(p.counts, [3, 6]);
        assert_eq!(p.k, None);
        let p = regularity_profile(&WordList::from_texts(2, &["a^2"]).unwrap());
        assert_eq!(p.counts, [2, 0]);
        assert_eq!(p.k, None);
    }

    #[test]
    fn list_rejects_unreduced() {
        let bad = vec![w("abA", 2)];
        assert_eq!(
            WordList::new(2, bad),
            Err(WordError::NotCyclicallyReduced { index: 0 })
        );
    }

    #[test]
    fn file_format() {
        let text = "# commutator\nrank 2\n\nabAB  # trailing\nbaB\n";
        let list = WordList::parse_file(text).unwrap();
        assert_eq!(list.rank(), 2);
        assert_eq!(list.words().len(), 2);
        assert_eq!(list.words()[1].render(), "a");
        assert_eq!(list.words()[1].index(), 1);
        assert!(WordList::parse_file("abAB\n").is_err());
        assert!(matches!(
            WordList::parse_file("rank 2\nabc\n"),
            Err(WordError::Syntax { line: 2, .. })
        ));
        assert_eq!(WordList::parse_file(&list.to_file_string()).unwrap(), list);
    }

    #[test]
    fn conjugate_powers() {
        let base = w("abAB", 2);
        let rotated = w("ABabABab", 2);
        assert_eq!(power_of_conjugate(rotated.letters(), base.letters()), Some(2));
        assert_eq!(power_of_conjugate(w("abBA", 2).letters(), base.letters()), None);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn letters(rank: usize) -> impl Strategy<Value = Vec<Letter>> {
            prop::collection::vec((0..rank, any::<bool>()), 1..16)
                .prop_map(|v| v.into_iter().map(|(g, i)| Letter::new(g, i)).collect())
        }

        proptest! {
            #[test]
            fn reduction_is_idempotent(ls in letters(3)) {
                if let Ok(r) = cyclic_reduce(&Word::new(ls)) {
                    prop_assert!(r.is_cyclically_reduced());
                    prop_assert_eq!(cyclic_reduce(&r).unwrap(), r);
                }
            }

            #[test]
            fn subword_count_matches_length(ls in letters(3)) {
                if let Ok(r) = cyclic_reduce(&Word::new(ls)) {
                    prop_assert_eq!(length2_cyclic_subwords(&r).len(), r.len());
                }
            }

            #[test]
            fn profile_sums_to_length(ls in prop::collection::vec(letters(3), 1..4)) {
                let words: Vec<Word> = ls.into_iter().filter_map(|l| cyclic_reduce(&Word::new(l)).ok()).collect();
                let list = WordList::new(3, words).unwrap();
                let p = regularity_profile(&list);
                prop_assert_eq!(p.counts.iter().sum::<usize>(), list.total_length());
            }

            #[test]
            fn render_parse_roundtrip(ls in letters(4)) {
                let word = Word::new(ls);
                prop_assert_eq!(parse_word(&word.render(), 4).unwrap(), word);
            }
        }
    }
}
