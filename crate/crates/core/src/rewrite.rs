//! Degree-truncated Gröbner bases of homogeneous two-sided ideals of `k<X>`
//! under the graded lex order, and the word sets read off from them.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use serde::Serialize;
use smallvec::SmallVec;

use crate::error::AlgebraError;
use crate::poly::{bracket_monomial, Polynomial, TensorElement};
use crate::scalar::Field;
use crate::word::{compare_lex, is_lyndon, lyndon_decomposition, Alphabet, Letter, Word};

type LetterKey = SmallVec<[Letter; 12]>;

/// An interreduced, monic rewriting system whose compositions are resolved
/// up to a degree bound.
pub struct TruncatedGB {
    alphabet: Alphabet,
    field: Field,
    bound: u32,
    // monic, ascending by leading word
    elements: Vec<Polynomial>,
    tails: Vec<Polynomial>,
    index: HashMap<LetterKey, usize>,
    max_lead_len: usize,
    max_relation_degree: u32,
    bracket_nf: Mutex<HashMap<Word, Polynomial>>,
}

impl fmt::Debug for TruncatedGB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TruncatedGB")
            .field("field", &self.field)
            .field("bound", &self.bound)
            .field("elements", &self.elements)
            .finish()
    }
}

impl Clone for TruncatedGB {
    fn clone(&self) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            field: self.field,
            bound: self.bound,
            elements: self.elements.clone(),
            tails: self.tails.clone(),
            index: self.index.clone(),
            max_lead_len: self.max_lead_len,
            max_relation_degree: self.max_relation_degree,
            bracket_nf: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for TruncatedGB {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.bound == other.bound && self.elements == other.elements
    }
}

/// Checks that `f` is homogeneous, naming an offending term otherwise.
pub fn check_homogeneous(alphabet: &Alphabet, f: &Polynomial) -> Result<(), AlgebraError> {
    let mut terms = f.terms().rev();
    if let Some((first, _)) = terms.next() {
        for (w, _) in terms {
            if w.degree() != first.degree() {
                return Err(AlgebraError::Inhomogeneous {
                    first: w.degree().min(first.degree()),
                    second: w.degree().max(first.degree()),
                    term: alphabet.render_product(w),
                });
            }
        }
    }
    Ok(())
}

/// Monic multiple of a nonzero polynomial.
fn monic(f: &Polynomial) -> Polynomial {
    let (_, c) = f.leading_term().expect("nonzero");
    f.scale(&c.inverse())
}

impl TruncatedGB {
    /// The zero ideal: every word is irreducible.
    pub fn free(alphabet: &Alphabet, field: Field, bound: u32) -> Self {
        Self::from_elements(alphabet, field, bound, Vec::new(), 0)
    }

    fn from_elements(
        alphabet: &Alphabet,
        field: Field,
        bound: u32,
        mut elements: Vec<Polynomial>,
        max_relation_degree: u32,
    ) -> Self {
        elements.sort_by(|a, b| a.leading_word().unwrap().cmp(b.leading_word().unwrap()));
        let mut index = HashMap::new();
        let mut tails = Vec::with_capacity(elements.len());
        let mut max_lead_len = 0;
        for (i, g) in elements.iter().enumerate() {
            let lw = g.leading_word().expect("nonzero").clone();
            max_lead_len = max_lead_len.max(lw.len());
            index.insert(LetterKey::from_slice(lw.letters()), i);
            tails.push(g.filter(|w| *w != lw));
        }
        Self {
            alphabet: alphabet.clone(),
            field,
            bound,
            elements,
            tails,
            index,
            max_lead_len,
            max_relation_degree,
            bracket_nf: Mutex::new(HashMap::new()),
        }
    }

    /// Completes `relations` to a rewriting system that is complete up to
    /// degree `bound`.
    ///
    /// Compositions are processed by ascending degree; each degree is closed
    /// under reduced row echelon form before its overlaps are generated, so
    /// the result is the reduced Gröbner basis truncated at `bound` and does
    /// not depend on the input order.
    pub fn compute(
        alphabet: &Alphabet,
        field: Field,
        relations: &[Polynomial],
        bound: u32,
    ) -> Result<Self, AlgebraError> {
        if bound == 0 {
            return Err(AlgebraError::InvalidArgument("degree bound must be positive".into()));
        }
        let mut pending: BTreeMap<u32, Vec<Polynomial>> = BTreeMap::new();
        let mut max_relation_degree = 0;
        for r in relations {
            if r.field() != field {
                return Err(AlgebraError::InvalidArgument(format!(
                    "relation over {} in a computation over {field}",
                    r.field()
                )));
            }
            if r.is_zero() {
                continue;
            }
            check_homogeneous(alphabet, r)?;
            let d = r.degree().expect("nonzero");
            if d == 0 {
                return Err(AlgebraError::WholeAlgebra);
            }
            if d > bound {
                return Err(AlgebraError::OutOfCertifiedRange { degree: d, bound });
            }
            max_relation_degree = max_relation_degree.max(d);
            pending.entry(d).or_default().push(r.clone());
        }

        let mut gb = Self::from_elements(alphabet, field, bound, Vec::new(), max_relation_degree);
        for n in 1..=bound {
            let Some(candidates) = pending.remove(&n) else { continue };
            let mut batch: Vec<Polynomial> = Vec::new();
            for c in candidates {
                let mut r = gb.reduce(&c);
                // same-degree reduction against the batch: only exact leading words
                loop {
                    let hit = r.terms().rev().find_map(|(w, coef)| {
                        batch
                            .iter()
                            .find(|b| b.leading_word().unwrap() == w)
                            .map(|b| (b.clone(), coef.clone()))
                    });
                    match hit {
                        Some((b, coef)) => r.add_scaled(&b, &(-&coef)),
                        None => break,
                    }
                }
                if r.is_zero() {
                    continue;
                }
                let r = monic(&r);
                let lw = r.leading_word().unwrap().clone();
                for b in batch.iter_mut() {
                    let c = b.coefficient(&lw);
                    if !c.is_zero() {
                        b.add_scaled(&r, &(-&c));
                    }
                }
                batch.push(r);
            }
            if batch.is_empty() {
                continue;
            }
            let mut elements = std::mem::take(&mut gb.elements);
            let start = elements.len();
            elements.extend(batch);
            gb = Self::from_elements(alphabet, field, bound, elements, max_relation_degree);
            // overlaps involving at least one element of degree n
            let fresh: Vec<Polynomial> = gb.elements.iter().filter(|g| g.degree() == Some(n)).cloned().collect();
            debug_assert_eq!(fresh.len(), gb.elements.len() - start);
            for f in &fresh {
                for g in &gb.elements {
                    for s in overlaps(alphabet, f, g, bound) {
                        pending.entry(s.degree().unwrap_or(0)).or_default().push(s);
                    }
                    if g != f {
                        for s in overlaps(alphabet, g, f, bound) {
                            pending.entry(s.degree().unwrap_or(0)).or_default().push(s);
                        }
                    }
                }
            }
            pending.retain(|&d, _| d > n);
        }
        Ok(gb)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_words(&self) -> Vec<Word> {
        self.elements
            .iter()
            .map(|g| g.leading_word().unwrap().clone())
            .collect()
    }

    /// Largest degree among the input relations (0 for the zero ideal).
    pub fn max_relation_degree(&self) -> u32 {
        self.max_relation_degree
    }

    /// Position and element index of a leading word occurring in `w`.
    fn find_divisor(&self, w: &Word) -> Option<(usize, usize)> {
        if self.index.is_empty() {
            return None;
        }
        let s = w.letters();
        for start in 0..s.len() {
            let max = self.max_lead_len.min(s.len() - start);
            for len in 1..=max {
                if let Some(&i) = self.index.get(&s[start..start + len]) {
                    return Some((start, i));
                }
            }
        }
        None
    }

    /// Whether `w` contains the leading word of an element.
    pub fn is_reducible(&self, w: &Word) -> bool {
        self.find_divisor(w).is_some()
    }

    fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut rest = f.clone();
        let mut out = Polynomial::zero(self.field);
        while let Some((w, c)) = rest.pop_leading() {
            match self.find_divisor(&w) {
                None => out.add_term(w, c),
                Some((start, i)) => {
                    let len = self.elements[i].leading_word().unwrap().len();
                    let deg = |l: Letter| self.alphabet.degree_of(l);
                    let left = w.slice(0, start, deg);
                    let right = w.slice(start + len, w.len(), deg);
                    let minus_c = -&c;
                    for (t, d) in self.tails[i].terms() {
                        rest.add_term(left.concat(t).concat(&right), &minus_c * d);
                    }
                }
            }
        }
        out
    }

    /// The representative of `f + I` supported on irreducible words.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_field(f.field())?;
        if let Some(d) = f.degree() {
            if d > self.bound {
                return Err(AlgebraError::OutOfCertifiedRange {
                    degree: d,
                    bound: self.bound,
                });
            }
        }
        Ok(self.reduce(f))
    }

    /// Normal form applied to both legs of a tensor.
    pub fn normal_form_tensor(&self, t: &TensorElement) -> Result<TensorElement, AlgebraError> {
        self.check_field(t.field())?;
        for ((a, b), _) in t.terms() {
            let d = a.degree().max(b.degree());
            if d > self.bound {
                return Err(AlgebraError::OutOfCertifiedRange {
                    degree: d,
                    bound: self.bound,
                });
            }
        }
        let nf = |w: &Word| self.reduce(&Polynomial::word(self.field, w.clone()));
        Ok(t.map_legs(nf, nf))
    }

    fn check_field(&self, field: Field) -> Result<(), AlgebraError> {
        if field != self.field {
            return Err(AlgebraError::InvalidArgument(format!(
                "polynomial over {field} reduced against a basis over {}",
                self.field
            )));
        }
        Ok(())
    }

    /// Normal form of the bracket monomial `[w]`.
    pub fn bracket_nf(&self, w: &Word) -> Result<Polynomial, AlgebraError> {
        if w.degree() > self.bound {
            return Err(AlgebraError::OutOfCertifiedRange {
                degree: w.degree(),
                bound: self.bound,
            });
        }
        Ok(self.bracket_normal_form(w))
    }

    /// Normal form of the bracket monomial of a word, memoized.
    fn bracket_normal_form(&self, w: &Word) -> Polynomial {
        if let Some(p) = self.bracket_nf.lock().unwrap().get(w) {
            return p.clone();
        }
        let p = self.reduce(&bracket_monomial(w, self.field));
        self.bracket_nf.lock().unwrap().insert(w.clone(), p.clone());
        p
    }

    /// Irreducible words of degree exactly `n`, ascending in graded lex order.
    pub fn irreducible_words(&self, n: u32) -> Result<Vec<Word>, AlgebraError> {
        if n > self.bound {
            return Err(AlgebraError::OutOfCertifiedRange {
                degree: n,
                bound: self.bound,
            });
        }
        Ok(self.irreducible_table(n).swap_remove(n as usize))
    }

    /// Irreducible words of every degree `0..=n`.
    fn irreducible_table(&self, n: u32) -> Vec<Vec<Word>> {
        let mut table: Vec<Vec<Word>> = vec![Vec::new(); n as usize + 1];
        table[0].push(Word::empty());
        for d in 1..=n as usize {
            let mut cur = Vec::new();
            for l in self.alphabet.letters() {
                let dl = self.alphabet.degree_of(l) as usize;
                if dl > d {
                    continue;
                }
                let x = self.alphabet.single(l);
                for w in &table[d - dl] {
                    let cand = w.concat(&x);
                    if !self.has_leading_suffix(&cand) {
                        cur.push(cand);
                    }
                }
            }
            cur.sort();
            table[d] = cur;
        }
        table
    }

    fn has_leading_suffix(&self, w: &Word) -> bool {
        let s = w.letters();
        let max = self.max_lead_len.min(s.len());
        (1..=max).any(|len| self.index.contains_key(&s[s.len() - len..]))
    }
}

impl Polynomial {
    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Word, crate::scalar::Scalar)> {
        let w = self.leading_term().map(|(w, _)| w.clone())?;
        let c = self.coefficient(&w);
        self.add_term(w.clone(), -&c);
        Some((w, c))
    }
}

/// Compositions of `f` and `g` along proper overlaps: a suffix of `lw(f)`
/// equal to a prefix of `lw(g)`, neither word contained in the other.
fn overlaps(alphabet: &Alphabet, f: &Polynomial, g: &Polynomial, bound: u32) -> Vec<Polynomial> {
    let a = f.leading_word().unwrap();
    let b = g.leading_word().unwrap();
    let (sa, sb) = (a.letters(), b.letters());
    let mut out = Vec::new();
    for k in 1..sa.len().min(sb.len()) {
        if sa[sa.len() - k..] != sb[..k] {
            continue;
        }
        let (_, right) = b.split_at(alphabet, k);
        let (left, _) = a.split_at(alphabet, sa.len() - k);
        if a.degree() + right.degree() > bound {
            continue;
        }
        let field = f.field();
        let fr = f * &Polynomial::word(field, right);
        let lg = &Polynomial::word(field, left) * g;
        let s = &fr - &lg;
        if !s.is_zero() {
            out.push(s);
        }
    }
    out
}

/// Bounded knowledge of `h_I(u) = min { n >= 1 | u^n is I-reducible }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Height {
    Finite(u32),
    /// No reducible power within the bound; the height is at least this.
    NotObserved {
        at_least: u32,
    },
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Height::Finite(n) => write!(f, "{n}"),
            Height::NotObserved { at_least } => write!(f, "not observed (>= {at_least})"),
        }
    }
}

pub fn height(u: &Word, gb: &TruncatedGB) -> Result<Height, AlgebraError> {
    if !is_lyndon(u) {
        return Err(AlgebraError::InvalidArgument(
            "height is defined for Lyndon words".into(),
        ));
    }
    let d = u.degree();
    if d > gb.bound() {
        return Err(AlgebraError::OutOfCertifiedRange {
            degree: d,
            bound: gb.bound(),
        });
    }
    let max_power = gb.bound() / d;
    for n in 1..=max_power {
        if gb.is_reducible(&u.pow(n as usize)) {
            return Ok(Height::Finite(n));
        }
    }
    Ok(Height::NotObserved {
        at_least: max_power + 1,
    })
}

/// Irreducible Lyndon words of degree at most `max_degree`, ascending in
/// graded lex order.
pub fn irreducible_lyndon_words(gb: &TruncatedGB, max_degree: u32) -> Result<Vec<Word>, AlgebraError> {
    if max_degree > gb.bound() {
        return Err(AlgebraError::OutOfCertifiedRange {
            degree: max_degree,
            bound: gb.bound(),
        });
    }
    let mut out: Vec<Word> = gb
        .irreducible_table(max_degree)
        .into_iter()
        .flatten()
        .filter(is_lyndon)
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum WordKind {
    /// Irreducible words.
    Irreducible,
    /// Lex-nondecreasing products of irreducible Lyndon words.
    B,
    /// Such products with each factor repeated fewer times than its height.
    C,
}

impl std::str::FromStr for WordKind {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "irreducible" => Ok(WordKind::Irreducible),
            "B" | "b" => Ok(WordKind::B),
            "C" | "c" => Ok(WordKind::C),
            other => Err(AlgebraError::InvalidArgument(format!("unknown word kind `{other}`"))),
        }
    }
}

/// The word sets of a truncated basis, per degree up to its bound.
#[derive(Clone, Debug)]
pub struct IrreducibleData {
    pub bound: u32,
    /// `irreducible[n]`: irreducible words of degree `n`.
    pub irreducible: Vec<Vec<Word>>,
    /// Irreducible Lyndon words, ascending in graded lex order.
    pub lyndon: Vec<Word>,
    pub heights: BTreeMap<Word, Height>,
}

impl IrreducibleData {
    pub fn compute(gb: &TruncatedGB) -> Self {
        let irreducible = gb.irreducible_table(gb.bound());
        let mut lyndon: Vec<Word> = irreducible.iter().flatten().filter(|w| is_lyndon(w)).cloned().collect();
        lyndon.sort();
        let heights = lyndon
            .iter()
            .map(|u| (u.clone(), height(u, gb).expect("irreducible Lyndon word within bound")))
            .collect();
        Self {
            bound: gb.bound(),
            irreducible,
            lyndon,
            heights,
        }
    }

    /// Per-degree quotient dimensions `0..=bound`.
    pub fn dimensions(&self) -> Vec<u64> {
        self.irreducible.iter().map(|v| v.len() as u64).collect()
    }

    /// Members of degree `n` of the requested set, ascending in graded lex order.
    pub fn words(&self, n: u32, kind: WordKind) -> Vec<Word> {
        match kind {
            WordKind::Irreducible => self.irreducible.get(n as usize).cloned().unwrap_or_default(),
            WordKind::B | WordKind::C => {
                let mut factors = self.lyndon.clone();
                factors.sort_by(compare_lex);
                let caps: Vec<Option<u32>> = factors
                    .iter()
                    .map(|u| match (kind, &self.heights[u]) {
                        (WordKind::C, Height::Finite(h)) => Some(*h),
                        _ => None,
                    })
                    .collect();
                let mut out = Vec::new();
                products(&factors, &caps, 0, n, &mut Vec::new(), &mut out);
                out.sort();
                out
            }
        }
    }
}

// Nondecreasing products of `factors[from..]` of total degree `remaining`;
// factor `i` may repeat fewer than `caps[i]` times when capped.
fn products(
    factors: &[Word],
    caps: &[Option<u32>],
    from: usize,
    remaining: u32,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Word>,
) {
    if remaining == 0 {
        let mut w = Word::empty();
        for &i in prefix.iter() {
            w = w.concat(&factors[i]);
        }
        out.push(w);
        return;
    }
    for i in from..factors.len() {
        let d = factors[i].degree();
        if d > remaining {
            continue;
        }
        let used = prefix.iter().filter(|&&j| j == i).count() as u32;
        if let Some(cap) = caps[i] {
            if used + 1 >= cap {
                continue;
            }
        }
        prefix.push(i);
        products(factors, caps, i, remaining - d, prefix, out);
        prefix.pop();
    }
}

/// Degree-`n` members of the requested word set.
pub fn admissible_words(gb: &TruncatedGB, n: u32, kind: WordKind) -> Result<Vec<Word>, AlgebraError> {
    if n > gb.bound() {
        return Err(AlgebraError::OutOfCertifiedRange {
            degree: n,
            bound: gb.bound(),
        });
    }
    Ok(IrreducibleData::compute(gb).words(n, kind))
}

/// Coordinates of `f + I` in the basis `{ [w] + I : w irreducible }`.
///
/// Back-substitution from the top: the leading word of the normal form of
/// `[w]` is `w` itself.
pub fn bracket_coordinates(f: &Polynomial, gb: &TruncatedGB) -> Result<Polynomial, AlgebraError> {
    let mut rest = gb.normal_form(f)?;
    let mut coords = Polynomial::zero(gb.field());
    while let Some((w, c)) = rest.leading_term().map(|(w, c)| (w.clone(), c.clone())) {
        let b = gb.bracket_normal_form(&w);
        debug_assert_eq!(b.leading_word().ok(), Some(&w));
        rest.add_scaled(&b, &(-&c));
        coords.add_term(w, c);
    }
    Ok(coords)
}

/// Leg-wise normal form followed by leg-wise bracket coordinates.
pub fn tensor_bracket_coordinates(t: &TensorElement, gb: &TruncatedGB) -> Result<TensorElement, AlgebraError> {
    let field = gb.field();
    // group by right leg, convert left legs
    let mut by_right: BTreeMap<Word, Polynomial> = BTreeMap::new();
    for ((a, b), c) in t.terms() {
        by_right
            .entry(b.clone())
            .or_insert_with(|| Polynomial::zero(field))
            .add_term(a.clone(), c.clone());
    }
    let mut by_left: BTreeMap<Word, Polynomial> = BTreeMap::new();
    for (b, left) in by_right {
        let coords = bracket_coordinates(&left, gb)?;
        let right_word = Polynomial::word(field, b);
        for (w, c) in coords.terms() {
            by_left
                .entry(w.clone())
                .or_insert_with(|| Polynomial::zero(field))
                .add_scaled(&right_word, c);
        }
    }
    let mut out = TensorElement::zero(field);
    for (w, right) in by_left {
        let coords = bracket_coordinates(&right, gb)?;
        for (v, c) in coords.terms() {
            out.add_term((w.clone(), v.clone()), c.clone());
        }
    }
    Ok(out)
}

/// Whether every Lyndon factor of `w` satisfies `accept`.
pub fn factors_all(alphabet: &Alphabet, w: &Word, accept: impl Fn(&Word) -> bool) -> bool {
    lyndon_decomposition(alphabet, w).iter().all(accept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn poly(a: &Alphabet, terms: &[(i64, &str)]) -> Polynomial {
        Polynomial::from_terms(Q, terms.iter().map(|(c, w)| (a.parse_word(w).unwrap(), Q.from_i64(*c))))
    }

    fn heisenberg() -> (Alphabet, TruncatedGB) {
        let a = Alphabet::new(&[("x1", 1), ("x2", 1), ("x3", 2)]).unwrap();
        let rels = vec![
            poly(&a, &[(1, "x2 x1"), (-1, "x1 x2"), (-1, "x3")]),
            poly(&a, &[(1, "x3 x1"), (-1, "x1 x3")]),
            poly(&a, &[(1, "x3 x2"), (-1, "x2 x3")]),
        ];
        let gb = TruncatedGB::compute(&a, Q, &rels, 6).unwrap();
        (a, gb)
    }

    fn words(a: &Alphabet, list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| a.parse_word(s).unwrap()).collect()
    }

    #[test]
    fn empty_relations() {
        let a = Alphabet::uniform(2);
        let gb = TruncatedGB::compute(&a, Q, &[], 4).unwrap();
        assert!(gb.elements().is_empty());
        assert_eq!(gb.irreducible_words(3).unwrap().len(), 8);
    }

    #[test]
    fn commutative_pair() {
        let a = Alphabet::uniform(2);
        let rel = poly(&a, &[(1, "x2 x1"), (-1, "x1 x2")]);
        let gb = TruncatedGB::compute(&a, Q, std::slice::from_ref(&rel), 6).unwrap();
        assert_eq!(gb.elements(), std::slice::from_ref(&rel));
        let nf = gb.normal_form(&poly(&a, &[(1, "x2 x1")])).unwrap();
        assert_eq!(nf, poly(&a, &[(1, "x1 x2")]));
        assert_eq!(irreducible_lyndon_words(&gb, 6).unwrap(), words(&a, &["x1", "x2"]));
        let reducible: Vec<Word> = crate::word::enumerate_lyndon(&a, 3)
            .into_iter()
            .filter(|w| gb.is_reducible(w))
            .collect();
        assert_eq!(reducible, words(&a, &["x2 x1", "x2 x1 x1", "x2 x2 x1"]));
    }

    #[test]
    fn heisenberg_basis() {
        let (a, gb) = heisenberg();
        assert_eq!(gb.leading_words(), words(&a, &["x3", "x2 x1 x1", "x2 x2 x1"]));
        assert_eq!(
            gb.normal_form(&poly(&a, &[(1, "x3")])).unwrap(),
            poly(&a, &[(1, "x2 x1"), (-1, "x1 x2")])
        );
        for g in gb.elements() {
            assert!(gb.normal_form(g).unwrap().is_zero());
        }
        assert_eq!(
            irreducible_lyndon_words(&gb, 6).unwrap(),
            words(&a, &["x1", "x2", "x2 x1"])
        );
        let b2 = admissible_words(&gb, 2, WordKind::B).unwrap();
        assert_eq!(b2, words(&a, &["x1 x1", "x1 x2", "x2 x1", "x2 x2"]));
    }

    #[test]
    fn heisenberg_coordinates() {
        let (a, gb) = heisenberg();
        let c = bracket_coordinates(&poly(&a, &[(1, "x3")]), &gb).unwrap();
        assert_eq!(c, poly(&a, &[(1, "x2 x1")]));
    }

    #[test]
    fn free_coordinates() {
        let a = Alphabet::uniform(2);
        let gb = TruncatedGB::free(&a, Q, 4);
        let c = bracket_coordinates(&poly(&a, &[(1, "x2 x1")]), &gb).unwrap();
        assert_eq!(c, poly(&a, &[(1, "x2 x1"), (1, "x1 x2")]));
        let w = a.parse_word("x2 x1 x1").unwrap();
        let c = bracket_coordinates(&crate::poly::standard_bracket(&w, Q), &gb).unwrap();
        assert_eq!(c, Polynomial::word(Q, w));
    }

    #[test]
    fn heights() {
        let f3 = Field::Prime(3);
        let a = Alphabet::uniform(1);
        let x3 = Polynomial::word(f3, a.parse_word("x1^3").unwrap());
        let gb = TruncatedGB::compute(&a, f3, &[x3], 9).unwrap();
        let x = a.parse_word("x1").unwrap();
        assert_eq!(height(&x, &gb).unwrap(), Height::Finite(3));
        let c4 = admissible_words(&gb, 4, WordKind::C).unwrap();
        assert!(c4.is_empty());
        assert_eq!(admissible_words(&gb, 2, WordKind::C).unwrap().len(), 1);
        assert_eq!(admissible_words(&gb, 4, WordKind::B).unwrap().len(), 1);

        let (a, gb) = heisenberg();
        let gb8 = TruncatedGB::compute(&a, Q, gb.elements(), 8).unwrap();
        let x1 = a.parse_word("x1").unwrap();
        assert_eq!(height(&x1, &gb8).unwrap(), Height::NotObserved { at_least: 9 });
        assert_eq!(height(&a.parse_word("x3").unwrap(), &gb8).unwrap(), Height::Finite(1));
        assert!(height(&a.parse_word("x1 x2").unwrap(), &gb8).is_err());
    }

    #[test]
    fn rejects_bad_relations() {
        let a = Alphabet::new(&[("x1", 1), ("x2", 1), ("x3", 3)]).unwrap();
        let bad = poly(&a, &[(1, "x2 x1"), (-1, "x3")]);
        let err = TruncatedGB::compute(&a, Q, &[bad], 6).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::Inhomogeneous {
                first: 2,
                second: 3,
                ..
            }
        ));
        let unit = Polynomial::one(Q);
        assert_eq!(
            TruncatedGB::compute(&a, Q, &[unit], 6).unwrap_err(),
            AlgebraError::WholeAlgebra
        );
    }

    #[test]
    fn normal_form_above_bound() {
        let a = Alphabet::uniform(1);
        let gb = TruncatedGB::free(&a, Q, 2);
        let f = Polynomial::word(Q, a.parse_word("x1^3").unwrap());
        assert!(matches!(
            gb.normal_form(&f),
            Err(AlgebraError::OutOfCertifiedRange { .. })
        ));
    }
}
