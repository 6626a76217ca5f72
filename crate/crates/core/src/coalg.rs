//! Comultiplications on the free algebra and the checks that relate them to
//! an ideal: triangularity, stability, coassociativity and counit, Lie
//! polynomials, the antipode, and the comultiplication of bracket powers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::AlgebraError;
use crate::poly::{standard_bracket, standard_comultiplication, Polynomial, Tensor3, TensorElement};
use crate::rewrite::{factors_all, tensor_bracket_coordinates, TruncatedGB};
use crate::scalar::{binomial, Field};
use crate::word::{compare_lex, is_lyndon, lyndon_decomposition, words_of_degree, Alphabet, Letter, Word};

/// An algebra map `k<X> → k<X> ⊗ k<X>` given by its values on the letters.
#[derive(Clone, Debug, PartialEq)]
pub struct Comultiplication {
    field: Field,
    degrees: Vec<u32>,
    images: Vec<TensorElement>,
}

fn primitive_image(alphabet: &Alphabet, field: Field, l: Letter) -> TensorElement {
    let x = Polynomial::word(field, alphabet.single(l));
    let one = Polynomial::one(field);
    &TensorElement::tensor(&one, &x) + &TensorElement::tensor(&x, &one)
}

impl Comultiplication {
    /// The standard comultiplication: every letter primitive.
    pub fn primitive(alphabet: &Alphabet, field: Field) -> Self {
        Self {
            field,
            degrees: alphabet.letters().map(|l| alphabet.degree_of(l)).collect(),
            images: alphabet
                .letters()
                .map(|l| primitive_image(alphabet, field, l))
                .collect(),
        }
    }

    /// Requires an image for every letter.
    pub fn new(
        alphabet: &Alphabet,
        field: Field,
        images: BTreeMap<Letter, TensorElement>,
    ) -> Result<Self, AlgebraError> {
        let mut out = Vec::with_capacity(alphabet.len());
        for l in alphabet.letters() {
            let img = images.get(&l).ok_or_else(|| {
                AlgebraError::InvalidArgument(format!("no image for generator `{}`", alphabet.name(l)))
            })?;
            if img.field() != field {
                return Err(AlgebraError::InvalidArgument(format!(
                    "image of `{}` is over {}, expected {field}",
                    alphabet.name(l),
                    img.field()
                )));
            }
            out.push(img.clone());
        }
        Ok(Self {
            field,
            degrees: alphabet.letters().map(|l| alphabet.degree_of(l)).collect(),
            images: out,
        })
    }

    /// Letters without an explicit image are primitive.
    pub fn with_primitive_defaults(
        alphabet: &Alphabet,
        field: Field,
        mut images: BTreeMap<Letter, TensorElement>,
    ) -> Result<Self, AlgebraError> {
        for l in alphabet.letters() {
            images.entry(l).or_insert_with(|| primitive_image(alphabet, field, l));
        }
        Self::new(alphabet, field, images)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn image(&self, l: Letter) -> &TensorElement {
        &self.images[l as usize]
    }

    /// Whether every letter is primitive.
    pub fn is_standard(&self, alphabet: &Alphabet) -> bool {
        alphabet
            .letters()
            .all(|l| self.images[l as usize] == primitive_image(alphabet, self.field, l))
    }

    /// Whether each image is homogeneous of the letter's degree.
    pub fn is_graded(&self, alphabet: &Alphabet) -> bool {
        alphabet.letters().all(|l| {
            let img = &self.images[l as usize];
            img.is_zero() || (img.is_homogeneous() && img.degree() == Some(alphabet.degree_of(l)))
        })
    }

    fn apply_word(&self, w: &Word, cache: &mut HashMap<Word, TensorElement>) -> TensorElement {
        if w.is_empty() {
            return TensorElement::one(self.field);
        }
        if let Some(t) = cache.get(w) {
            return t.clone();
        }
        let s = w.letters();
        let last = s[s.len() - 1];
        let prefix_degree = w.degree() - self.degrees[last as usize];
        let prefix = Word::from_parts(prefix_degree, &s[..s.len() - 1]);
        let t = &self.apply_word(&prefix, cache) * &self.images[last as usize];
        cache.insert(w.clone(), t.clone());
        t
    }

    /// The algebra-map extension applied to `f`; `Δ(1) = 1⊗1`.
    pub fn apply(&self, f: &Polynomial) -> TensorElement {
        let mut cache = HashMap::new();
        let mut out = TensorElement::zero(self.field);
        for (w, c) in f.terms() {
            out.add_scaled(&self.apply_word(w, &mut cache), c);
        }
        out
    }

    /// `(Δ ⊗ id)` on a tensor.
    pub fn apply_left(&self, t: &TensorElement) -> Tensor3 {
        let mut cache = HashMap::new();
        let mut out = Tensor3::zero(self.field);
        for ((a, b), c) in t.terms() {
            for ((p, q), d) in self.apply_word(a, &mut cache).terms() {
                out.add_term((p.clone(), q.clone(), b.clone()), c * d);
            }
        }
        out
    }

    /// `(id ⊗ Δ)` on a tensor.
    pub fn apply_right(&self, t: &TensorElement) -> Tensor3 {
        let mut cache = HashMap::new();
        let mut out = Tensor3::zero(self.field);
        for ((a, b), c) in t.terms() {
            for ((p, q), d) in self.apply_word(b, &mut cache).terms() {
                out.add_term((a.clone(), p.clone(), q.clone()), c * d);
            }
        }
        out
    }
}

/// Applies `Δ` (given on letters) to `f`, failing when a letter in `f` has no
/// image.
pub fn extend_comultiplication(
    alphabet: &Alphabet,
    images: &BTreeMap<Letter, TensorElement>,
    f: &Polynomial,
) -> Result<TensorElement, AlgebraError> {
    for (w, _) in f.terms() {
        for l in w.letters() {
            if !images.contains_key(l) {
                return Err(AlgebraError::InvalidArgument(format!(
                    "no image for generator `{}`",
                    alphabet.name(*l)
                )));
            }
        }
    }
    let mut full = images.clone();
    for l in alphabet.letters() {
        // letters absent from f never get evaluated
        full.entry(l).or_insert_with(|| primitive_image(alphabet, f.field(), l));
    }
    Ok(Comultiplication::new(alphabet, f.field(), full)?.apply(f))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub generator: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangularityReport {
    pub violations: Vec<Violation>,
    /// Generators whose image has a part of degree below the letter's degree.
    pub lower_degree_tails: Vec<String>,
}

impl TriangularityReport {
    pub fn is_triangular(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn is_graded_triangular(&self) -> bool {
        self.is_triangular() && self.lower_degree_tails.is_empty()
    }
}

/// Checks, per letter `x`, that `Δ(x) − 1⊗x − x⊗1` has its degree-`deg x`
/// part in `Σ_{i,j>0} k<X>^{<x}_i ⊗ k<X>^{<x}_j` and nothing above.
///
/// Membership is decided by bracket coordinates in the free algebra: the
/// subalgebra generated by brackets of Lyndon words `<lex x` has as basis the
/// bracket monomials whose Lyndon factors are all `<lex x`.
pub fn check_triangular(comult: &Comultiplication, alphabet: &Alphabet) -> TriangularityReport {
    let field = comult.field();
    let mut violations = Vec::new();
    let mut tails = Vec::new();
    for l in alphabet.letters() {
        let name = alphabet.name(l).to_string();
        let x = alphabet.single(l);
        let d = x.degree();
        let rest = comult.image(l) - &primitive_image(alphabet, field, l);
        let above = rest.filter(|m| m.0.degree() + m.1.degree() > d);
        if !above.is_zero() {
            violations.push(Violation {
                generator: name.clone(),
                detail: format!("terms above degree {d}: {}", above.render(alphabet)),
            });
            continue;
        }
        if !rest.filter(|m| m.0.degree() + m.1.degree() < d).is_zero() {
            tails.push(name.clone());
        }
        let top = rest.homogeneous_component(d);
        let unit_leg = top.filter(|m| m.0.is_empty() || m.1.is_empty());
        if !unit_leg.is_zero() {
            violations.push(Violation {
                generator: name.clone(),
                detail: format!("top-degree terms with a scalar leg: {}", unit_leg.render(alphabet)),
            });
            continue;
        }
        let free = TruncatedGB::free(alphabet, field, d);
        let coords = tensor_bracket_coordinates(&top, &free).expect("legs within bound");
        let smaller = |u: &Word| compare_lex(u, &x) == Ordering::Less;
        let bad: Vec<String> = coords
            .terms()
            .filter(|((a, b), _)| !factors_all(alphabet, a, smaller) || !factors_all(alphabet, b, smaller))
            .map(|((a, b), _)| format!("[{}]#[{}]", alphabet.render(a), alphabet.render(b)))
            .collect();
        if !bad.is_empty() {
            violations.push(Violation {
                generator: name,
                detail: format!(
                    "bracket monomials outside the subalgebra of Lyndon brackets below {}: {}",
                    alphabet.name(l),
                    bad.join(", ")
                ),
            });
        }
    }
    TriangularityReport {
        violations,
        lower_degree_tails: tails,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityFailure {
    pub element: Polynomial,
    pub residue: TensorElement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    pub bound: u32,
    pub failures: Vec<StabilityFailure>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `Δ(I) ⊆ k<X>⊗I + I⊗k<X>` on the basis elements: the leg-wise
/// normal form of `Δ(g)` must vanish.
pub fn check_stability(comult: &Comultiplication, gb: &TruncatedGB) -> Result<StabilityReport, AlgebraError> {
    let mut failures = Vec::new();
    for g in gb.elements() {
        let residue = gb.normal_form_tensor(&comult.apply(g))?;
        if !residue.is_zero() {
            failures.push(StabilityFailure {
                element: g.clone(),
                residue,
            });
        }
    }
    Ok(StabilityReport {
        bound: gb.bound(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoassociativityReport {
    pub bound: u32,
    /// Rendered elements where `(Δ⊗id)Δ ≠ (id⊗Δ)Δ` modulo the ideal.
    pub coassociativity_failures: Vec<(String, Tensor3)>,
    /// Rendered elements where a counit law fails, with the side.
    pub counit_failures: Vec<(String, &'static str, Polynomial)>,
}

impl CoassociativityReport {
    pub fn is_coassociative(&self) -> bool {
        self.coassociativity_failures.is_empty()
    }

    pub fn is_counital(&self) -> bool {
        self.counit_failures.is_empty()
    }

    pub fn holds(&self) -> bool {
        self.is_coassociative() && self.is_counital()
    }
}

fn normal_form_3(gb: &TruncatedGB, t: &Tensor3) -> Tensor3 {
    let field = gb.field();
    let mut cache: HashMap<Word, Polynomial> = HashMap::new();
    let mut nf = |w: &Word| {
        cache
            .entry(w.clone())
            .or_insert_with(|| {
                gb.normal_form(&Polynomial::word(field, w.clone()))
                    .expect("within bound")
            })
            .clone()
    };
    let mut out = Tensor3::zero(field);
    for ((a, b, c), s) in t.terms() {
        let (na, nb, nc) = (nf(a), nf(b), nf(c));
        for (p, x) in na.terms() {
            for (q, y) in nb.terms() {
                let xy = x * y;
                for (r, z) in nc.terms() {
                    out.add_term((p.clone(), q.clone(), r.clone()), &(s * &xy) * z);
                }
            }
        }
    }
    out
}

/// Coassociativity and the counit law (ε = projection to degree 0), checked
/// modulo the ideal on the generators and on every irreducible word of
/// degree at most `max_degree`.
pub fn check_coassoc_counit(
    comult: &Comultiplication,
    gb: &TruncatedGB,
    max_degree: u32,
) -> Result<CoassociativityReport, AlgebraError> {
    if max_degree > gb.bound() {
        return Err(AlgebraError::OutOfCertifiedRange {
            degree: max_degree,
            bound: gb.bound(),
        });
    }
    let alphabet = gb.alphabet();
    let field = gb.field();
    let mut probes: Vec<Word> = alphabet
        .letters()
        .map(|l| alphabet.single(l))
        .filter(|x| x.degree() <= max_degree)
        .collect();
    for n in 2..=max_degree {
        probes.extend(gb.irreducible_words(n)?.into_iter().filter(|w| w.len() > 1));
    }
    let mut coassoc = Vec::new();
    let mut counit = Vec::new();
    for w in probes {
        let f = Polynomial::word(field, w.clone());
        let d = comult.apply(&f);
        let diff = &comult.apply_left(&d) - &comult.apply_right(&d);
        let diff = normal_form_3(gb, &diff);
        if !diff.is_zero() {
            coassoc.push((alphabet.render(&w), diff));
        }
        let mut left = Polynomial::zero(field);
        let mut right = Polynomial::zero(field);
        for ((a, b), c) in d.terms() {
            if a.is_empty() {
                left.add_term(b.clone(), c.clone());
            }
            if b.is_empty() {
                right.add_term(a.clone(), c.clone());
            }
        }
        for (side, g) in [("(ε⊗id)Δ", left), ("(id⊗ε)Δ", right)] {
            let r = gb.normal_form(&(&g - &f))?;
            if !r.is_zero() {
                counit.push((alphabet.render(&w), side, r));
            }
        }
    }
    Ok(CoassociativityReport {
        bound: max_degree,
        coassociativity_failures: coassoc,
        counit_failures: counit,
    })
}

/// `Δ_s(f) = 1⊗f + f⊗1`, which characterises Lie polynomials in
/// characteristic zero.
pub fn is_lie_polynomial(alphabet: &Alphabet, f: &Polynomial) -> Result<bool, AlgebraError> {
    if f.field() != Field::Rational {
        return Err(AlgebraError::Unsupported(
            "Lie-polynomial test by primitivity needs characteristic 0".into(),
        ));
    }
    let one = Polynomial::one(f.field());
    let expect = &TensorElement::tensor(&one, f) + &TensorElement::tensor(f, &one);
    Ok(standard_comultiplication(alphabet, f) == expect)
}

/// The antipode on the free algebra, determined on letters by
/// `S(x) = −x − Σ S(a)·b` over `Δ(x) − x⊗1 − 1⊗x = Σ a⊗b` and extended
/// antimultiplicatively.
#[derive(Clone, Debug)]
pub struct Antipode {
    field: Field,
    on_letters: Vec<Polynomial>,
}

impl Antipode {
    pub fn compute(comult: &Comultiplication, alphabet: &Alphabet) -> Result<Self, AlgebraError> {
        let field = comult.field();
        let mut on_letters: Vec<Option<Polynomial>> = vec![None; alphabet.len()];
        // letters in ascending degree; lower-degree letters are already known
        for l in alphabet.letters() {
            let x = alphabet.single(l);
            let rest = comult.image(l) - &primitive_image(alphabet, field, l);
            let mut s = -&Polynomial::word(field, x.clone());
            for ((a, b), c) in rest.terms() {
                if a.degree() >= x.degree() {
                    return Err(AlgebraError::Refused(format!(
                        "antipode recursion: left leg `{}` of Δ({}) is not of lower degree",
                        alphabet.render(a),
                        alphabet.name(l)
                    )));
                }
                let mut sa = Polynomial::one(field);
                for m in a.letters().iter().rev() {
                    let known = on_letters[*m as usize]
                        .as_ref()
                        .ok_or_else(|| AlgebraError::Refused("antipode recursion is not well founded".into()))?;
                    sa = &sa * known;
                }
                let term = &sa * &Polynomial::word(field, b.clone());
                s.add_scaled(&term, &(-c));
            }
            on_letters[l as usize] = Some(s);
        }
        Ok(Self {
            field,
            on_letters: on_letters.into_iter().map(|s| s.expect("filled")).collect(),
        })
    }

    pub fn on_letter(&self, l: Letter) -> &Polynomial {
        &self.on_letters[l as usize]
    }

    /// `S` on the free algebra (no reduction).
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (w, c) in f.terms() {
            let mut acc = Polynomial::one(self.field);
            for l in w.letters().iter().rev() {
                acc = &acc * &self.on_letters[*l as usize];
            }
            out.add_scaled(&acc, c);
        }
        out
    }
}

/// `S(f)` in normal form; refused unless coassociativity and the counit law
/// hold up to the basis bound.
pub fn antipode_normal_form(
    comult: &Comultiplication,
    gb: &TruncatedGB,
    f: &Polynomial,
) -> Result<Polynomial, AlgebraError> {
    let pre = check_coassoc_counit(comult, gb, gb.bound())?;
    if !pre.holds() {
        return Err(AlgebraError::Refused(
            "antipode needs a coassociative, counital comultiplication".into(),
        ));
    }
    let s = Antipode::compute(comult, gb.alphabet())?;
    gb.normal_form(&s.apply(f))
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerReport {
    pub word: Word,
    pub power: u32,
    /// Top-degree remainder after removing the binomial terms.
    pub remainder: TensorElement,
    /// Bracket-monomial pairs of the remainder outside the allowed span.
    pub violations: Vec<(Word, Word)>,
    /// Part of `Δ([u]^n)` below the top degree.
    pub lower_degree_part: TensorElement,
}

impl PowerReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For `w` whose Lyndon factors are all `<=lex u`, the degree of the part
/// below `u` and the number of trailing copies of `u`.
fn split_trailing_power(alphabet: &Alphabet, w: &Word, u: &Word) -> Option<(u32, u32)> {
    let factors = lyndon_decomposition(alphabet, w);
    let copies = factors.iter().rev().take_while(|f| *f == u).count();
    let head = &factors[..factors.len() - copies];
    if head.iter().all(|f| compare_lex(f, u) == Ordering::Less) {
        Some((w.degree() - copies as u32 * u.degree(), copies as u32))
    } else {
        None
    }
}

/// Checks that `Δ([u]^n) − Σ_p C(n,p) [u]^p ⊗ [u]^{n−p}` has its top-degree
/// part in `Σ_{r+s<n} Σ_{i,j>0} k<X>^{<u}_i [u]^r ⊗ k<X>^{<u}_j [u]^s`.
pub fn check_power_comultiplication(
    comult: &Comultiplication,
    alphabet: &Alphabet,
    u: &Word,
    n: u32,
) -> Result<PowerReport, AlgebraError> {
    if !is_lyndon(u) {
        return Err(AlgebraError::InvalidArgument("expected a Lyndon word".into()));
    }
    if n == 0 {
        return Err(AlgebraError::InvalidArgument("power must be positive".into()));
    }
    if !check_triangular(comult, alphabet).is_triangular() {
        return Err(AlgebraError::Refused("comultiplication is not triangular".into()));
    }
    let field = comult.field();
    let bu = standard_bracket(u, field);
    let total = comult.apply(&bu.pow(n));
    let mut expected = TensorElement::zero(field);
    for p in 0..=n {
        let t = TensorElement::tensor(&bu.pow(p), &bu.pow(n - p));
        expected.add_scaled(&t, &binomial(field, n as u64, p as u64));
    }
    let rest = &total - &expected;
    let top_degree = n * u.degree();
    let remainder = rest.homogeneous_component(top_degree);
    let lower = rest.filter(|m| m.0.degree() + m.1.degree() < top_degree);
    let mut violations: Vec<(Word, Word)> = rest
        .filter(|m| m.0.degree() + m.1.degree() > top_degree)
        .terms()
        .map(|(m, _)| m.clone())
        .collect();
    let free = TruncatedGB::free(alphabet, field, top_degree);
    let coords = tensor_bracket_coordinates(&remainder, &free)?;
    for ((a, b), _) in coords.terms() {
        let ok = match (
            split_trailing_power(alphabet, a, u),
            split_trailing_power(alphabet, b, u),
        ) {
            (Some((i, r)), Some((j, s))) => i > 0 && j > 0 && r + s < n,
            _ => false,
        };
        if !ok {
            violations.push((a.clone(), b.clone()));
        }
    }
    Ok(PowerReport {
        word: u.clone(),
        power: n,
        remainder,
        violations,
        lower_degree_part: lower,
    })
}

/// Every Lyndon word `u` and power `n` with `n·deg(u) <= max_degree`.
pub fn check_all_powers(
    comult: &Comultiplication,
    alphabet: &Alphabet,
    max_degree: u32,
) -> Result<Vec<PowerReport>, AlgebraError> {
    let mut out = Vec::new();
    for u in crate::word::enumerate_lyndon(alphabet, max_degree) {
        for n in 1..=max_degree / u.degree() {
            out.push(check_power_comultiplication(comult, alphabet, &u, n)?);
        }
    }
    Ok(out)
}

/// Words of degree `n` as polynomials; handy for probing identities.
pub fn degree_basis(alphabet: &Alphabet, field: Field, n: u32) -> Vec<Polynomial> {
    words_of_degree(alphabet, n)
        .into_iter()
        .map(|w| Polynomial::word(field, w))
        .collect()
}
