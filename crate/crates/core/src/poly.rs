//! The free algebra `k<X>`, its tensor powers, the standard bracketing and
//! the standard comultiplication.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::scalar::{Field, Scalar};
use crate::word::{compare_lex, lyndon_breaks_of, Alphabet, Letter, Word};

/// A basis element of a free algebra or of one of its tensor powers.
pub trait Monomial: Ord + Clone + Hash + Debug {
    fn unit() -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn total_degree(&self) -> u32;
}

impl Monomial for Word {
    fn unit() -> Self {
        Word::empty()
    }
    fn mul(&self, other: &Self) -> Self {
        self.concat(other)
    }
    fn total_degree(&self) -> u32 {
        self.degree()
    }
}

impl Monomial for (Word, Word) {
    fn unit() -> Self {
        (Word::empty(), Word::empty())
    }
    fn mul(&self, other: &Self) -> Self {
        (self.0.concat(&other.0), self.1.concat(&other.1))
    }
    fn total_degree(&self) -> u32 {
        self.0.degree() + self.1.degree()
    }
}

impl Monomial for (Word, Word, Word) {
    fn unit() -> Self {
        (Word::empty(), Word::empty(), Word::empty())
    }
    fn mul(&self, other: &Self) -> Self {
        (
            self.0.concat(&other.0),
            self.1.concat(&other.1),
            self.2.concat(&other.2),
        )
    }
    fn total_degree(&self) -> u32 {
        self.0.degree() + self.1.degree() + self.2.degree()
    }
}

/// A finitely supported linear combination of monomials with coefficients in
/// a fixed field. Zero coefficients are never stored; iteration is ascending
/// in the monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCombination<M: Monomial> {
    field: Field,
    terms: BTreeMap<M, Scalar>,
}

/// Element of `k<X>`.
pub type Polynomial = LinearCombination<Word>;
/// Element of `k<X> ⊗ k<X>`.
pub type TensorElement = LinearCombination<(Word, Word)>;
/// Element of the threefold tensor power, used for coassociativity checks.
pub type Tensor3 = LinearCombination<(Word, Word, Word)>;

impl<M: Monomial> LinearCombination<M> {
    pub fn zero(field: Field) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field, M::unit())
    }

    pub fn monomial(field: Field, m: M) -> Self {
        Self::term(m, field.one())
    }

    pub fn term(m: M, c: Scalar) -> Self {
        let mut out = Self::zero(c.field());
        out.add_term(m, c);
        out
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(M::unit(), c)
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (M, Scalar)>) -> Self {
        let mut out = Self::zero(field);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl DoubleEndedIterator<Item = (M, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &M) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn contains(&self, m: &M) -> bool {
        self.terms.contains_key(m)
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: M, c: Scalar) {
        assert_eq!(c.field(), self.field, "scalar field mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (m, d) in &other.terms {
            self.add_term(m.clone(), c * d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        Self {
            field: self.field,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), c * d)).collect(),
        }
    }

    /// Largest monomial and its coefficient.
    pub fn leading_term(&self) -> Option<(&M, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(M::total_degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(M::total_degree).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.degree() == self.min_degree()
    }

    /// The part of total degree `n`.
    pub fn homogeneous_component(&self, n: u32) -> Self {
        self.filter(|m| m.total_degree() == n)
    }

    pub fn filter(&self, keep: impl Fn(&M) -> bool) -> Self {
        Self {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies a linear map given on monomials.
    pub fn map_linear<N: Monomial>(
        &self,
        target: Field,
        mut f: impl FnMut(&M) -> LinearCombination<N>,
    ) -> LinearCombination<N> {
        let mut out = LinearCombination::zero(target);
        for (m, c) in &self.terms {
            out.add_scaled(&f(m), c);
        }
        out
    }

    /// Product, failing on a field mismatch.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::InvalidArgument(format!(
                "mixed scalar modes: {} and {}",
                self.field, other.field
            )));
        }
        let mut out = Self::zero(self.field);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.mul(b), c * d);
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::InvalidArgument(format!(
                "mixed scalar modes: {} and {}",
                self.field, other.field
            )));
        }
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one());
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl<M: Monomial> Add for &LinearCombination<M> {
    type Output = LinearCombination<M>;
    fn add(self, rhs: Self) -> LinearCombination<M> {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<M: Monomial> Sub for &LinearCombination<M> {
    type Output = LinearCombination<M>;
    fn sub(self, rhs: Self) -> LinearCombination<M> {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = self.clone();
        out.add_scaled(rhs, &self.field.from_i64(-1));
        out
    }
}

impl<M: Monomial> Neg for &LinearCombination<M> {
    type Output = LinearCombination<M>;
    fn neg(self) -> LinearCombination<M> {
        self.scale(&self.field.from_i64(-1))
    }
}

impl<M: Monomial> Mul for &LinearCombination<M> {
    type Output = LinearCombination<M>;
    fn mul(self, rhs: Self) -> LinearCombination<M> {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Polynomial {
    pub fn word(field: Field, w: Word) -> Self {
        Self::monomial(field, w)
    }

    /// The `<glex`-largest word in the support.
    pub fn leading_word(&self) -> Result<&Word, AlgebraError> {
        self.leading_term()
            .map(|(w, _)| w)
            .ok_or_else(|| AlgebraError::InvalidArgument("zero polynomial has no leading word".into()))
    }

    /// Renders in the expression grammar accepted by the parser.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        render_terms(
            self.terms
                .iter()
                .rev()
                .map(|(w, c)| (alphabet.render_product(w), w.is_empty(), c)),
        )
    }
}

impl TensorElement {
    /// `f ⊗ g`.
    pub fn tensor(f: &Polynomial, g: &Polynomial) -> Self {
        assert_eq!(f.field(), g.field(), "field mismatch");
        let mut out = Self::zero(f.field());
        for (a, c) in f.terms() {
            for (b, d) in g.terms() {
                out.add_term((a.clone(), b.clone()), c * d);
            }
        }
        out
    }

    /// Applies `left ⊗ right` to every term.
    pub fn map_legs(
        &self,
        mut left: impl FnMut(&Word) -> Polynomial,
        mut right: impl FnMut(&Word) -> Polynomial,
    ) -> Self {
        let mut out = Self::zero(self.field());
        let mut lcache: HashMap<Word, Polynomial> = HashMap::new();
        let mut rcache: HashMap<Word, Polynomial> = HashMap::new();
        for ((a, b), c) in self.terms() {
            let la = lcache.entry(a.clone()).or_insert_with(|| left(a)).clone();
            let rb = rcache.entry(b.clone()).or_insert_with(|| right(b)).clone();
            out.add_scaled(&Self::tensor(&la, &rb), c);
        }
        out
    }

    /// Multiplies the two legs together.
    pub fn multiply_legs(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.field());
        for ((a, b), c) in self.terms() {
            out.add_term(a.concat(b), c.clone());
        }
        out
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        render_terms(self.terms.iter().rev().map(|((a, b), c)| {
            (
                format!("{}#{}", alphabet.render_product(a), alphabet.render_product(b)),
                false,
                c,
            )
        }))
    }
}

impl Tensor3 {
    pub fn render(&self, alphabet: &Alphabet) -> String {
        render_terms(self.terms.iter().rev().map(|((a, b, c), s)| {
            (
                format!(
                    "{}#{}#{}",
                    alphabet.render_product(a),
                    alphabet.render_product(b),
                    alphabet.render_product(c)
                ),
                false,
                s,
            )
        }))
    }
}

pub(crate) fn render_terms<'a>(terms: impl Iterator<Item = (String, bool, &'a Scalar)>) -> String {
    let mut out = String::new();
    for (i, (body, is_unit, c)) in terms.enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = c.abs();
        if is_unit {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&body);
        } else {
            out.push_str(&format!("{mag}*{body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `[f, g] = fg - gf`.
pub fn commutator(f: &Polynomial, g: &Polynomial) -> Polynomial {
    &(f * g) - &(g * f)
}

type LetterKey = SmallVec<[Letter; 12]>;

thread_local! {
    // Brackets computed on bare letter sequences (every letter weighted 1);
    // callers restore the true degree, which is the same for all terms.
    static BRACKETS: RefCell<HashMap<(Field, LetterKey), Polynomial>> = RefCell::new(HashMap::new());
}

const BRACKET_MEMO_LIMIT: usize = 200_000;

fn unit_word(letters: &[Letter]) -> Word {
    Word::from_parts(letters.len() as u32, letters)
}

fn lex_largest_suffix(s: &[Letter]) -> usize {
    (1..s.len())
        .max_by(|&a, &b| compare_lex(&unit_word(&s[a..]), &unit_word(&s[b..])))
        .expect("length >= 2")
}

fn bracket_unit(letters: &[Letter], field: Field) -> Polynomial {
    if letters.len() <= 1 {
        return Polynomial::word(field, unit_word(letters));
    }
    let key = (field, LetterKey::from_slice(letters));
    if let Some(p) = BRACKETS.with(|m| m.borrow().get(&key).cloned()) {
        return p;
    }
    let cut = lex_largest_suffix(letters);
    let left = bracket_unit(&letters[..cut], field);
    let right = bracket_unit(&letters[cut..], field);
    let lyndon = lyndon_breaks_of(letters).len() == 1;
    let value = if lyndon {
        commutator(&left, &right)
    } else {
        &left * &right
    };
    BRACKETS.with(|m| {
        let mut m = m.borrow_mut();
        if m.len() > BRACKET_MEMO_LIMIT {
            m.clear();
        }
        m.insert(key, value.clone());
    });
    value
}

fn with_degree(p: Polynomial, degree: u32) -> Polynomial {
    let field = p.field();
    Polynomial::from_terms(
        field,
        p.into_terms().map(|(w, c)| (Word::from_parts(degree, w.letters()), c)),
    )
}

/// The standard bracketing `[u]`: `[[u_L],[u_R]]` along the Shirshov
/// factorization when `u` is Lyndon, `[u_L][u_R]` otherwise.
pub fn standard_bracket(u: &Word, field: Field) -> Polynomial {
    with_degree(bracket_unit(u.letters(), field), u.degree())
}

/// Product of the standard brackets of the Lyndon factors of `w`.
pub fn bracket_monomial(w: &Word, field: Field) -> Polynomial {
    let s = w.letters();
    let starts = lyndon_breaks_of(s);
    let mut acc = Polynomial::one(field);
    for (i, &a) in starts.iter().enumerate() {
        let b = starts.get(i + 1).copied().unwrap_or(s.len());
        acc = &acc * &bracket_unit(&s[a..b], field);
    }
    with_degree(acc, w.degree())
}

/// The standard comultiplication `Δ_s`, determined by `x ↦ 1⊗x + x⊗1`.
///
/// Each word maps to the sum over its splittings into complementary
/// subsequences.
pub fn standard_comultiplication(alphabet: &Alphabet, f: &Polynomial) -> TensorElement {
    let field = f.field();
    let mut out = TensorElement::zero(field);
    for (w, c) in f.terms() {
        let s = w.letters();
        assert!(s.len() < 64, "word too long for subset enumeration");
        for mask in 0u64..(1u64 << s.len()) {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (i, &l) in s.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    left.push(l);
                } else {
                    right.push(l);
                }
            }
            out.add_term((alphabet.word(&left), alphabet.word(&right)), c.clone());
        }
    }
    out
}
