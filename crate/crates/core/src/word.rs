//! Words over a graded, well-ordered alphabet.
//!
//! Letters are ordered degree-major, then by declaration rank. The
//! lexicographic order used throughout is the *reversed-prefix* convention:
//! `u <lex v` iff `v` is a proper prefix of `u`, or the two words first differ
//! at a position where `u` carries the smaller letter. Under this order a
//! Lyndon word is strictly greater than each of its proper rotations, and the
//! Lyndon decomposition of a word is a lex-nondecreasing product.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::AlgebraError;

/// Index of a letter in an [`Alphabet`]; smaller index means smaller letter.
pub type Letter = u16;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Declaration index, used to break ties between letters of equal degree.
    pub rank: usize,
}

/// A finite graded alphabet with its composite letter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    // sorted by (degree, rank); the position is the letter
    letters: Vec<Generator>,
    by_name: HashMap<String, Letter>,
}

impl Alphabet {
    /// Builds an alphabet from `(name, degree)` pairs in declaration order.
    pub fn new<S: AsRef<str>>(declared: &[(S, u32)]) -> Result<Self, AlgebraError> {
        let mut letters = Vec::with_capacity(declared.len());
        for (rank, (name, degree)) in declared.iter().enumerate() {
            let name = name.as_ref();
            if *degree == 0 {
                return Err(AlgebraError::InvalidArgument(format!(
                    "generator `{name}`: degree must be positive"
                )));
            }
            if !is_identifier(name) {
                return Err(AlgebraError::InvalidArgument(format!(
                    "`{name}` is not a valid generator name"
                )));
            }
            letters.push(Generator {
                name: name.to_string(),
                degree: *degree,
                rank,
            });
        }
        if letters.len() > Letter::MAX as usize {
            return Err(AlgebraError::InvalidArgument("too many generators".into()));
        }
        letters.sort_by_key(|g| (g.degree, g.rank));
        let mut by_name = HashMap::with_capacity(letters.len());
        for (i, g) in letters.iter().enumerate() {
            if by_name.insert(g.name.clone(), i as Letter).is_some() {
                return Err(AlgebraError::InvalidArgument(format!(
                    "duplicate generator name `{}`",
                    g.name
                )));
            }
        }
        Ok(Self { letters, by_name })
    }

    /// `n` degree-one letters `x1 < x2 < ... < xn`.
    pub fn uniform(n: usize) -> Self {
        let decl: Vec<(String, u32)> = (1..=n).map(|i| (format!("x{i}"), 1)).collect();
        Self::new(&decl).expect("generated names are valid")
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Generators in letter order (not declaration order).
    pub fn generators(&self) -> &[Generator] {
        &self.letters
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len()).map(|i| i as Letter)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.letters[letter as usize].name
    }

    pub fn degree_of(&self, letter: Letter) -> u32 {
        self.letters[letter as usize].degree
    }

    pub fn max_degree(&self) -> u32 {
        self.letters.iter().map(|g| g.degree).max().unwrap_or(0)
    }

    /// The one-letter word.
    pub fn single(&self, letter: Letter) -> Word {
        Word {
            degree: self.degree_of(letter),
            letters: SmallVec::from_slice(&[letter]),
        }
    }

    pub fn word(&self, letters: &[Letter]) -> Word {
        Word {
            degree: letters.iter().map(|&l| self.degree_of(l)).sum(),
            letters: SmallVec::from_slice(letters),
        }
    }

    /// Parses a word given as generator names separated by whitespace or `*`.
    pub fn parse_word(&self, src: &str) -> Result<Word, AlgebraError> {
        let mut letters = Vec::new();
        for tok in src
            .split(|c: char| c.is_whitespace() || c == '*' || c == '·')
            .filter(|t| !t.is_empty())
        {
            if tok == "1" {
                continue;
            }
            let (name, power) = match tok.split_once('^') {
                Some((n, p)) => {
                    let p: usize = p
                        .parse()
                        .map_err(|_| AlgebraError::InvalidArgument(format!("bad exponent in `{tok}`")))?;
                    (n, p)
                }
                None => (tok, 1),
            };
            let l = self
                .letter(name)
                .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown generator `{name}`")))?;
            letters.extend(std::iter::repeat_n(l, power));
        }
        Ok(self.word(&letters))
    }

    /// Renders a word as space-separated generator names, `1` for the empty word.
    pub fn render(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(" ")
    }

    /// Renders a word in expression syntax (`x1*x2^2`), `1` for the empty word.
    pub fn render_product(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = self.name(letters[i]);
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A word together with its degree.
///
/// `Ord` is the graded lex order: degree first, ties broken by
/// [`compare_lex`]. Words from different alphabets must not be mixed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    degree: u32,
    letters: SmallVec<[Letter; 12]>,
}

impl Word {
    pub fn empty() -> Self {
        Self::default()
    }

    pub(crate) fn from_parts(degree: u32, letters: &[Letter]) -> Self {
        Word {
            degree,
            letters: SmallVec::from_slice(letters),
        }
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

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            degree: self.degree + other.degree,
            letters,
        }
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut letters = SmallVec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word {
            degree: self.degree * n as u32,
            letters,
        }
    }

    /// Splits at a letter position, distributing the degree by `alphabet`.
    pub fn split_at(&self, alphabet: &Alphabet, at: usize) -> (Word, Word) {
        let (l, r) = self.letters.split_at(at);
        (alphabet.word(l), alphabet.word(r))
    }

    /// The factor `letters[start..end]`. `degree_of` supplies letter degrees.
    pub(crate) fn slice(&self, start: usize, end: usize, degree_of: impl Fn(Letter) -> u32) -> Word {
        let s = &self.letters[start..end];
        Word {
            degree: s.iter().map(|&l| degree_of(l)).sum(),
            letters: SmallVec::from_slice(s),
        }
    }

    pub fn is_letter(&self) -> bool {
        self.letters.len() == 1
    }

    /// Whether `factor` occurs as a contiguous factor of `self`.
    pub fn contains_factor(&self, factor: &Word) -> bool {
        factor.is_empty()
            || self
                .letters
                .windows(factor.len())
                .any(|w| w == factor.letters.as_slice())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.letters.starts_with(&prefix.letters)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.letters.as_slice())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_glex(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn lex_slices(u: &[Letter], v: &[Letter]) -> Ordering {
    for (a, b) in u.iter().zip(v) {
        if a != b {
            return a.cmp(b);
        }
    }
    // a proper prefix is the larger word
    v.len().cmp(&u.len())
}

/// The lexicographic order with the proper-prefix rule reversed.
pub fn compare_lex(u: &Word, v: &Word) -> Ordering {
    lex_slices(&u.letters, &v.letters)
}

/// Degree first, then [`compare_lex`].
pub fn compare_glex(u: &Word, v: &Word) -> Ordering {
    u.degree.cmp(&v.degree).then_with(|| lex_slices(&u.letters, &v.letters))
}

/// Start indices of the nondecreasing Lyndon factorization of `s`.
///
/// Duval's algorithm run against the reversed letter order, which is what the
/// reversed-prefix lex order amounts to.
pub(crate) fn lyndon_breaks_of(s: &[Letter]) -> Vec<usize> {
    let n = s.len();
    let mut starts = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] >= s[j] {
            if s[k] > s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            starts.push(i);
            i += j - k;
        }
    }
    starts
}

/// True iff `u` is nonempty and strictly lex-greater than each of its
/// proper rotations.
pub fn is_lyndon(u: &Word) -> bool {
    !u.is_empty() && lyndon_breaks_of(&u.letters).len() == 1
}

/// Splits `u` at its lex-largest proper suffix.
pub fn shirshov_factorization(alphabet: &Alphabet, u: &Word) -> Result<(Word, Word), AlgebraError> {
    if u.len() < 2 {
        return Err(AlgebraError::InvalidArgument(
            "Shirshov factorization needs a word of length at least 2".into(),
        ));
    }
    let s = u.letters();
    let best = (1..s.len())
        .max_by(|&a, &b| lex_slices(&s[a..], &s[b..]))
        .expect("length >= 2");
    Ok(u.split_at(alphabet, best))
}

/// The unique lex-nondecreasing factorization of `u` into Lyndon words.
pub fn lyndon_decomposition(alphabet: &Alphabet, u: &Word) -> Vec<Word> {
    let starts = lyndon_breaks_of(u.letters());
    let mut out = Vec::with_capacity(starts.len());
    for (i, &s) in starts.iter().enumerate() {
        let e = starts.get(i + 1).copied().unwrap_or(u.len());
        out.push(u.slice(s, e, |l| alphabet.degree_of(l)));
    }
    out
}

/// All Lyndon words of degree at most `max_degree`, ascending in graded lex
/// order.
///
/// Built degree by degree from standard factorizations: `u·v` with `u`, `v`
/// Lyndon, `u >lex v`, and `u` a letter or its right Shirshov factor
/// `<=lex v`.
pub fn enumerate_lyndon(alphabet: &Alphabet, max_degree: u32) -> Vec<Word> {
    let d = max_degree as usize;
    // by_degree[n] holds Lyndon words of degree n with their right Shirshov factor
    let mut by_degree: Vec<Vec<(Word, Option<Word>)>> = vec![Vec::new(); d + 1];
    for l in alphabet.letters() {
        let w = alphabet.single(l);
        if (w.degree() as usize) <= d {
            by_degree[w.degree() as usize].push((w, None));
        }
    }
    for n in 2..=d {
        let mut fresh = Vec::new();
        for du in 1..n {
            let dv = n - du;
            for (u, u_right) in &by_degree[du] {
                for (v, _) in &by_degree[dv] {
                    if compare_lex(u, v) != Ordering::Greater {
                        continue;
                    }
                    let admissible = match u_right {
                        None => true,
                        Some(r) => compare_lex(r, v) != Ordering::Greater,
                    };
                    if admissible {
                        fresh.push((u.concat(v), Some(v.clone())));
                    }
                }
            }
        }
        by_degree[n].extend(fresh);
    }
    let mut all: Vec<Word> = by_degree.into_iter().flatten().map(|(w, _)| w).collect();
    all.sort();
    all
}

/// All words of degree exactly `degree`, ascending in graded lex order.
pub fn words_of_degree(alphabet: &Alphabet, degree: u32) -> Vec<Word> {
    let mut table: Vec<Vec<Word>> = vec![Vec::new(); degree as usize + 1];
    table[0].push(Word::empty());
    for n in 1..=degree as usize {
        let mut cur = Vec::new();
        for l in alphabet.letters() {
            let dl = alphabet.degree_of(l) as usize;
            if dl <= n {
                for w in &table[n - dl] {
                    cur.push(w.concat(&alphabet.single(l)));
                }
            }
        }
        table[n] = cur;
    }
    let mut out = std::mem::take(&mut table[degree as usize]);
    out.sort();
    out
}
