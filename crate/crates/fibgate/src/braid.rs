//! Braid words in Artin generator form.
//!
//! A word lives in a fixed braid group `B_n` (`strands = n`) and is a
//! sequence of nonzero integers: letter `k > 0` is the generator `s_k`
//! (crossing strands `k` and `k+1` over), `-k` is its inverse, and
//! `1 <= |k| <= n-1`. Words are kept *freely reduced* at all times — no `k`
//! adjacent to `-k` — so the empty word is the unique representation of the
//! identity.
//!
//! Only free reduction is applied. The braid relations
//! (`s_i s_j = s_j s_i` for `|i-j| >= 2`, and `s_i s_{i+1} s_i = s_{i+1} s_i s_{i+1}`)
//! are *not* used to rewrite words: two distinct reduced words may represent
//! the same braid group element. Collapsing those is the job of whoever
//! evaluates the words through a representation.
//!
//! Ordering: words compare by strand count, then length, then letter-by-letter
//! in the alphabet order `1, -1, 2, -2, ...` (index first, positive before
//! negative). [`ReducedWords`] enumerates all reduced words in depth-first
//! order over that alphabet, which makes enumeration output — and anything
//! derived from it per length — deterministic.

use std::fmt;

use thiserror::Error;

/// One Artin generator or its inverse; never zero inside a [`BraidWord`].
pub type Letter = i32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BraidError {
    #[error("cannot parse braid word: {0}")]
    Parse(String),
    #[error("letter {letter} is out of range for {strands} strands (want 1 <= |letter| <= {})", strands - 1)]
    LetterOutOfRange { letter: Letter, strands: usize },
    #[error("strand counts differ: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },
}

/// A freely reduced braid word in `B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    /// The empty word (identity braid) on `strands` strands.
    ///
    /// # Panics
    /// If `strands < 2`.
    pub fn identity(strands: usize) -> Self {
        assert!(strands >= 2, "need at least two strands");
        Self { strands, letters: Vec::new() }
    }

    /// The single generator `s_k` in `B_n`.
    ///
    /// # Panics
    /// If `strands < 2` or `k` is not in `1..=strands-1`.
    pub fn generator(strands: usize, k: u32) -> Self {
        let mut w = Self::identity(strands);
        w.push(k as Letter);
        w
    }

    /// Builds a word from raw letters, applying free reduction.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(
        strands: usize,
        letters: I,
    ) -> Result<Self, BraidError> {
        let mut w = Self::identity(strands);
        for l in letters {
            if !letter_in_range(strands, l) {
                return Err(BraidError::LetterOutOfRange { letter: l, strands });
            }
            w.push(l);
        }
        Ok(w)
    }

    /// Parses whitespace-separated integers, e.g. `"3 2 1 -1"`; an empty (or
    /// all-whitespace) string is the identity. The result is freely reduced.
    pub fn parse(strands: usize, s: &str) -> Result<Self, BraidError> {
        let mut w = Self::identity(strands);
        for tok in s.split_whitespace() {
            let l: Letter = tok
                .parse()
                .map_err(|_| BraidError::Parse(format!("bad letter `{tok}`")))?;
            if !letter_in_range(strands, l) {
                return Err(BraidError::LetterOutOfRange { letter: l, strands });
            }
            w.push(l);
        }
        Ok(w)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    /// The reduced letters.
    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Reduced length.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, or 0 for the identity.
    pub fn max_index(&self) -> u32 {
        self.letters.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0)
    }

    /// Appends one letter, cancelling against the tail if it is the inverse.
    ///
    /// # Panics
    /// If `l` is not a valid letter for this word's strand count.
    pub fn push(&mut self, l: Letter) {
        assert!(
            letter_in_range(self.strands, l),
            "letter {l} out of range for {} strands",
            self.strands
        );
        // Popping cannot expose a new redex: the remaining word was reduced.
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    /// `self` followed by `other`, with cancellation cascading across the
    /// seam. Fails if the strand counts differ.
    pub fn compose(&self, other: &Self) -> Result<Self, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch { left: self.strands, right: other.strands });
        }
        // Both inputs are reduced, so the only possible redexes sit at the
        // junction; peel matching inverse pairs inward from it.
        let mut i = self.letters.len();
        let mut j = 0;
        while i > 0 && j < other.letters.len() && self.letters[i - 1] == -other.letters[j] {
            i -= 1;
            j += 1;
        }
        let mut letters = Vec::with_capacity(i + other.letters.len() - j);
        letters.extend_from_slice(&self.letters[..i]);
        letters.extend_from_slice(&other.letters[j..]);
        Ok(Self { strands: self.strands, letters })
    }

    /// The inverse word: reversed with every letter negated. Stays reduced.
    pub fn inverse(&self) -> Self {
        Self {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// Integer power by repeated composition (exponents in practice are tiny).
    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Self::identity(self.strands);
        for _ in 0..e.unsigned_abs() {
            acc = acc.compose(&base).expect("same strand count");
        }
        acc
    }

    /// Internal: wrap letters already known to be reduced and in range.
    fn from_reduced(strands: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.windows(2).all(|p| p[0] != -p[1]));
        debug_assert!(letters.iter().all(|&l| letter_in_range(strands, l)));
        Self { strands, letters }
    }
}

fn letter_in_range(strands: usize, l: Letter) -> bool {
    l != 0 && (l.unsigned_abs() as usize) < strands
}

/// Rank of a letter in the alphabet order `1, -1, 2, -2, ...`.
fn alpha_rank(l: Letter) -> u64 {
    debug_assert!(l != 0);
    (l.unsigned_abs() as u64 - 1) * 2 + u64::from(l < 0)
}

/// Letter with the given alphabet rank (inverse of [`alpha_rank`]).
fn rank_letter(rank: u64) -> Letter {
    let idx = (rank / 2 + 1) as Letter;
    if rank % 2 == 0 {
        idx
    } else {
        -idx
    }
}

impl Ord for BraidWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.strands
            .cmp(&other.strands)
            .then_with(|| self.letters.len().cmp(&other.letters.len()))
            .then_with(|| {
                let a = self.letters.iter().map(|&l| alpha_rank(l));
                let b = other.letters.iter().map(|&l| alpha_rank(l));
                a.cmp(b)
            })
    }
}

impl PartialOrd for BraidWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BraidWord {
    /// Space-separated letters, e.g. `3 2 1 -1 4`; the identity prints as an
    /// empty string.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Distinguished words in `B_6` used by the verification suite and the
/// entangler construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedBraid {
    /// Half twist `D = (1)(21)(321)(4321)(54321)` written left-to-right as
    /// `1 2 1 3 2 1 4 3 2 1 5 4 3 2 1`. Its image in the two-qubit
    /// representation is a global phase times the qubit swap.
    Delta,
    /// `3 2 1 1 2 3`: conjugates the full twist on strands 1,2 onto strands
    /// 3,4, so its image acts locally on the second qubit.
    Sigma,
    /// `3 2 1 4 3 2 5 4 3`: shifts the first triple of strands onto the
    /// second; its image is a phase times `(F (x) F) . SWAP` on the qubits.
    HalfTwistTriple,
}

impl NamedBraid {
    pub const ALL: [NamedBraid; 3] =
        [NamedBraid::Delta, NamedBraid::Sigma, NamedBraid::HalfTwistTriple];

    pub fn word(self) -> BraidWord {
        let letters: &[Letter] = match self {
            NamedBraid::Delta => &[1, 2, 1, 3, 2, 1, 4, 3, 2, 1, 5, 4, 3, 2, 1],
            NamedBraid::Sigma => &[3, 2, 1, 1, 2, 3],
            NamedBraid::HalfTwistTriple => &[3, 2, 1, 4, 3, 2, 5, 4, 3],
        };
        BraidWord::from_reduced(6, letters.to_vec())
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedBraid::Delta => "delta",
            NamedBraid::Sigma => "sigma",
            NamedBraid::HalfTwistTriple => "half-twist-triple",
        }
    }
}

impl std::str::FromStr for NamedBraid {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedBraid::ALL
            .iter()
            .copied()
            .find(|n| n.name() == s)
            .ok_or_else(|| BraidError::Parse(format!("unknown named braid `{s}`")))
    }
}

/// Number of freely reduced words of exactly `len` letters on `2(n-1)`
/// generators: `2(n-1) * (2(n-1) - 1)^(len-1)`.
///
/// # Panics
/// On u128 overflow (lengths far beyond anything enumerable).
pub fn reduced_word_count(strands: usize, len: usize) -> u128 {
    assert!(strands >= 2, "need at least two strands");
    if len == 0 {
        return 1;
    }
    let k = 2 * (strands as u128 - 1);
    (k - 1)
        .checked_pow(len as u32 - 1)
        .and_then(|t| t.checked_mul(k))
        .expect("reduced word count overflows u128")
}

/// Is `next` an allowed successor of `prev` under free reduction and, when
/// `normalize` is set, the commuting-descent rule?
///
/// The commuting rule keeps only one representative of `s_i s_j = s_j s_i`
/// (`|i-j| >= 2`): the smaller index must come first, so a descent across a
/// gap of at least two is skipped. This thins the enumeration; it does not
/// change the set of braid elements (or gates) covered.
fn successor_ok(prev: Letter, next: Letter, normalize: bool) -> bool {
    if next == -prev {
        return false;
    }
    if normalize && prev.abs() >= next.abs() + 2 {
        return false;
    }
    true
}

/// All letters allowed after `prev` in `B_n`, in alphabet order.
pub(crate) fn successors(
    strands: usize,
    prev: Option<Letter>,
    normalize: bool,
) -> impl Iterator<Item = Letter> {
    (0..2 * (strands as u64 - 1))
        .map(rank_letter)
        .filter(move |&l| prev.is_none_or(|p| successor_ok(p, l, normalize)))
}

/// All freely reduced words of exactly `len` letters in `B_n`, in
/// lexicographic (alphabet) order.
pub fn words_of_length(strands: usize, len: usize) -> impl Iterator<Item = BraidWord> {
    ReducedWords::new(strands, len).filter(move |w| w.len() == len)
}

/// Depth-first enumeration of freely reduced words of length 1 to `max_len`
/// in `B_n`, in alphabet order at every depth (so also sorted by prefix:
/// `1`, `1 1`, `1 1 1`, ..., `1 2`, ...). The identity is not yielded.
///
/// Restricting to a fixed prefix via [`ReducedWords::with_prefix`] yields the
/// prefix itself and then its extensions; distinct prefixes of one length
/// give disjoint shards that together cover every word they are prefixes of.
pub struct ReducedWords {
    strands: usize,
    max_len: usize,
    normalize: bool,
    floor: usize,
    stack: Vec<Letter>,
    started: bool,
    done: bool,
}

impl ReducedWords {
    pub fn new(strands: usize, max_len: usize) -> Self {
        assert!(strands >= 2, "need at least two strands");
        Self { strands, max_len, normalize: false, floor: 0, stack: Vec::new(), started: false, done: false }
    }

    /// Enable the commuting-descent normalization (see [`successors`]).
    pub fn normalize_commuting(mut self, on: bool) -> Self {
        self.normalize = on;
        self
    }

    /// Restrict to words extending `prefix`. The prefix must match the strand
    /// count and fit within `max_len`.
    pub fn with_prefix(mut self, prefix: &BraidWord) -> Result<Self, BraidError> {
        if prefix.strands() != self.strands {
            return Err(BraidError::StrandMismatch { left: self.strands, right: prefix.strands() });
        }
        if prefix.len() > self.max_len {
            return Err(BraidError::Parse(format!(
                "prefix length {} exceeds max length {}",
                prefix.len(),
                self.max_len
            )));
        }
        self.stack = prefix.letters().to_vec();
        self.floor = prefix.len();
        Ok(self)
    }

    fn prev(&self) -> Option<Letter> {
        self.stack.last().copied()
    }

    /// First allowed letter at the current top, scanning ranks from `from`.
    fn first_allowed(&self, from: u64) -> Option<Letter> {
        let prev = self.prev();
        (from..2 * (self.strands as u64 - 1))
            .map(rank_letter)
            .find(|&l| prev.is_none_or(|p| successor_ok(p, l, self.normalize)))
    }
}

impl Iterator for ReducedWords {
    type Item = BraidWord;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.floor > 0 {
                // Yield the prefix itself before descending.
                return Some(BraidWord::from_reduced(self.strands, self.stack.clone()));
            }
        }
        // Descend if possible...
        if self.stack.len() < self.max_len {
            if let Some(l) = self.first_allowed(0) {
                self.stack.push(l);
                return Some(BraidWord::from_reduced(self.strands, self.stack.clone()));
            }
        }
        // ...otherwise advance the top letter, backtracking as needed.
        while self.stack.len() > self.floor {
            let last = self.stack.pop().expect("stack above floor");
            if let Some(l) = self.first_allowed(alpha_rank(last) + 1) {
                self.stack.push(l);
                return Some(BraidWord::from_reduced(self.strands, self.stack.clone()));
            }
        }
        self.done = true;
        None
    }
}
