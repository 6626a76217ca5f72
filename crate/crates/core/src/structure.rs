//! Verification and extraction on a presented algebra `k<X>/I` with a
//! comultiplication: ordered PBW generators, Hilbert series and GK
//! dimension, the iterated Ore extension tower, heights and Lie generators.
//!
//! Everything here is certified only up to the presentation's degree bound.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::coalg::{
    check_stability, check_triangular, is_lie_polynomial, Comultiplication, StabilityReport, TriangularityReport,
};
use crate::error::AlgebraError;
use crate::poly::{bracket_monomial, commutator, render_terms, standard_bracket, Polynomial, TensorElement};
use crate::rewrite::{
    bracket_coordinates, factors_all, tensor_bracket_coordinates, Height, IrreducibleData, TruncatedGB, WordKind,
};
use crate::scalar::{Field, Scalar};
use crate::word::{compare_lex, enumerate_lyndon, is_lyndon, lyndon_decomposition, Alphabet, Word};

/// Generators, homogeneous relations and a comultiplication, with a bound.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub field: Field,
    pub relations: Vec<Polynomial>,
    pub comultiplication: Comultiplication,
    pub bound: u32,
}

impl Presentation {
    /// Validates the relations; a missing comultiplication means every
    /// generator is primitive.
    pub fn new(
        alphabet: Alphabet,
        field: Field,
        relations: Vec<Polynomial>,
        comultiplication: Option<Comultiplication>,
        bound: u32,
    ) -> Result<Self, AlgebraError> {
        if bound == 0 {
            return Err(AlgebraError::InvalidArgument("degree bound must be positive".into()));
        }
        for r in &relations {
            if r.field() != field {
                return Err(AlgebraError::InvalidArgument("relation over a different field".into()));
            }
            crate::rewrite::check_homogeneous(&alphabet, r)?;
        }
        let comultiplication = comultiplication.unwrap_or_else(|| Comultiplication::primitive(&alphabet, field));
        if comultiplication.field() != field {
            return Err(AlgebraError::InvalidArgument(
                "comultiplication over a different field".into(),
            ));
        }
        Ok(Self {
            alphabet,
            field,
            relations,
            comultiplication,
            bound,
        })
    }
}

/// A presentation together with its truncated Gröbner basis and word sets.
#[derive(Clone, Debug)]
pub struct Quotient {
    presentation: Presentation,
    gb: TruncatedGB,
    data: IrreducibleData,
    gamma: Vec<Word>,
}

impl Quotient {
    pub fn new(presentation: Presentation) -> Result<Self, AlgebraError> {
        let gb = TruncatedGB::compute(
            &presentation.alphabet,
            presentation.field,
            &presentation.relations,
            presentation.bound,
        )?;
        let data = IrreducibleData::compute(&gb);
        let mut gamma = data.lyndon.clone();
        gamma.sort_by(compare_lex);
        Ok(Self {
            presentation,
            gb,
            data,
            gamma,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.presentation.alphabet
    }

    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn bound(&self) -> u32 {
        self.presentation.bound
    }

    pub fn comultiplication(&self) -> &Comultiplication {
        &self.presentation.comultiplication
    }

    pub fn gb(&self) -> &TruncatedGB {
        &self.gb
    }

    pub fn data(&self) -> &IrreducibleData {
        &self.data
    }

    /// Irreducible Lyndon words up to the bound, ascending in `<lex`.
    pub fn gamma(&self) -> &[Word] {
        &self.gamma
    }

    pub fn hypotheses(&self) -> Result<Hypotheses, AlgebraError> {
        Ok(Hypotheses {
            triangularity: check_triangular(self.comultiplication(), self.alphabet()),
            stability: check_stability(self.comultiplication(), &self.gb)?,
        })
    }

    /// Coordinates of `f + I` over ordered monomials `z_1^{r_1}⋯z_d^{r_d}`
    /// in the elements of [`Quotient::gamma`].
    pub fn pbw_coordinates(&self, f: &Polynomial) -> Result<PbwElement, AlgebraError> {
        let index: HashMap<&Word, usize> = self.gamma.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut out = PbwElement::zero(self.field());
        for (w, c) in bracket_coordinates(f, &self.gb)?.terms() {
            let mut exps = vec![0u32; self.gamma.len()];
            for factor in lyndon_decomposition(self.alphabet(), w) {
                let i = index.get(&factor).ok_or_else(|| {
                    AlgebraError::InvalidArgument(format!(
                        "`{}` is not an irreducible Lyndon word",
                        self.alphabet().render(&factor)
                    ))
                })?;
                exps[*i] += 1;
            }
            out.terms.insert(exps, c.clone());
        }
        Ok(out)
    }
}

/// The two hypotheses under which the structure results apply.
#[derive(Clone, Debug, PartialEq)]
pub struct Hypotheses {
    pub triangularity: TriangularityReport,
    pub stability: StabilityReport,
}

impl Hypotheses {
    pub fn hold(&self) -> bool {
        self.triangularity.is_triangular() && self.stability.is_stable()
    }

    fn require(&self, alphabet: &Alphabet) -> Result<(), AlgebraError> {
        if let Some(v) = self.triangularity.violations.first() {
            return Err(AlgebraError::Refused(format!(
                "comultiplication is not triangular at {}: {}",
                v.generator, v.detail
            )));
        }
        if let Some(f) = self.stability.failures.first() {
            return Err(AlgebraError::Refused(format!(
                "ideal is not stable under the comultiplication: {} leaves residue {}",
                f.element.render(alphabet),
                f.residue.render(alphabet)
            )));
        }
        Ok(())
    }
}

/// Outcome of a check restricted to one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub degree: u32,
    /// Number of instances examined in this degree.
    pub checked: usize,
    pub failures: Vec<String>,
}

impl DegreeVerdict {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn per_degree(bound: u32) -> Vec<DegreeVerdict> {
    (1..=bound)
        .map(|degree| DegreeVerdict {
            degree,
            checked: 0,
            failures: Vec::new(),
        })
        .collect()
}

fn record(verdicts: &mut [DegreeVerdict], degree: u32, failure: Option<String>) {
    let v = &mut verdicts[degree as usize - 1];
    v.checked += 1;
    v.failures.extend(failure);
}

pub fn all_hold(verdicts: &[DegreeVerdict]) -> bool {
    verdicts.iter().all(DegreeVerdict::holds)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Finiteness {
    /// No new irreducible Lyndon word near the top of the computed range.
    CandidateFinite,
    NotFiniteAtBound,
}

impl fmt::Display for Finiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finiteness::CandidateFinite => write!(f, "candidate finite"),
            Finiteness::NotFiniteAtBound => write!(f, "not finite at bound"),
        }
    }
}

/// Flags Γ as a finiteness candidate when no irreducible Lyndon word has
/// degree in `(D - m, D]`, with `m` the largest relation or generator degree.
pub fn finiteness(q: &Quotient) -> Finiteness {
    let m = q.gb().max_relation_degree().max(q.alphabet().max_degree()).max(1);
    let d = q.bound();
    if q.gamma().iter().any(|u| u.degree() + m > d) {
        Finiteness::NotFiniteAtBound
    } else {
        Finiteness::CandidateFinite
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub bound: u32,
    pub field: Field,
    /// Irreducible Lyndon words, ascending in `<lex`; degree need not be
    /// monotone along this order.
    pub gamma: Vec<Word>,
    /// `z_γ` as the normal form of `[γ]`, in the order of `gamma`.
    pub z_table: Vec<(Word, Polynomial)>,
    pub dimensions: Vec<u64>,
    /// `B` in characteristic 0, `C` otherwise.
    pub basis_kind: WordKind,
    pub basis_counts: Vec<u64>,
    pub condition1: Vec<DegreeVerdict>,
    pub condition2: Vec<DegreeVerdict>,
    pub condition3: Vec<DegreeVerdict>,
    pub finiteness: Finiteness,
    /// `#Γ` when Γ is a finiteness candidate.
    pub gk_candidate: Option<usize>,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        all_hold(&self.condition1) && all_hold(&self.condition2) && all_hold(&self.condition3)
    }
}

fn render_pair(alphabet: &Alphabet, a: &Word, b: &Word) -> String {
    format!("[{}]#[{}]", alphabet.render(a), alphabet.render(b))
}

fn lex_below(u: &Word) -> impl Fn(&Word) -> bool + '_ {
    move |w| compare_lex(w, u) == Ordering::Less
}

fn lex_at_most(u: &Word) -> impl Fn(&Word) -> bool + '_ {
    move |w| compare_lex(w, u) != Ordering::Greater
}

/// Condition (1) for one `γ`: the bracket coordinates of
/// `Δ([γ]) − 1⊗[γ] − [γ]⊗1` lie in `H^{<γ}_i ⊗ H^{<γ}_j`, `i, j > 0`,
/// `i + j = deg γ`. Returns the offending support pairs.
fn comultiplication_condition(q: &Quotient, gamma: &Word) -> Result<Vec<String>, AlgebraError> {
    let field = q.field();
    let b = standard_bracket(gamma, field);
    let one = Polynomial::one(field);
    let rest = &(&q.comultiplication().apply(&b) - &TensorElement::tensor(&one, &b)) - &TensorElement::tensor(&b, &one);
    let coords = tensor_bracket_coordinates(&rest, q.gb())?;
    let below = lex_below(gamma);
    Ok(coords
        .terms()
        .filter(|((a, c), _)| {
            a.is_empty()
                || c.is_empty()
                || a.degree() + c.degree() != gamma.degree()
                || !factors_all(q.alphabet(), a, &below)
                || !factors_all(q.alphabet(), c, &below)
        })
        .map(|((a, c), _)| render_pair(q.alphabet(), a, c))
        .collect())
}

fn basis_condition(q: &Quotient) -> (WordKind, Vec<u64>, Vec<DegreeVerdict>) {
    let kind = if q.field().characteristic() == 0 {
        WordKind::B
    } else {
        WordKind::C
    };
    let mut counts = vec![1u64];
    let mut verdicts = per_degree(q.bound());
    for n in 1..=q.bound() {
        let words = q.data().words(n, kind);
        let irreducible = &q.data().irreducible[n as usize];
        counts.push(words.len() as u64);
        let failure = (&words != irreducible).then(|| {
            format!(
                "{} {:?}-words against quotient dimension {}",
                words.len(),
                kind,
                irreducible.len()
            )
        });
        record(&mut verdicts, n, failure);
    }
    (kind, counts, verdicts)
}

/// Checks conditions (1), (2), (3) of the PBW structure theorem degree by
/// degree, with `Γ = N_I` ordered by `<lex` and `z_γ = [γ] + I`.
///
/// Refused unless the comultiplication is triangular and the ideal stable.
/// Outside characteristic 0 condition (3) is checked against `C_I`.
pub fn verify_structure_theorem(q: &Quotient) -> Result<StructureReport, AlgebraError> {
    q.hypotheses()?.require(q.alphabet())?;
    let alphabet = q.alphabet();
    let d = q.bound();
    let mut z_table = Vec::new();
    let mut condition1 = per_degree(d);
    for g in q.gamma() {
        z_table.push((g.clone(), q.gb().bracket_nf(g)?));
        let bad = comultiplication_condition(q, g)?;
        let failure = (!bad.is_empty()).then(|| format!("Δ(z_{}) has {}", alphabet.render(g), bad.join(", ")));
        record(&mut condition1, g.degree(), failure);
    }
    let mut condition2 = per_degree(d);
    for (i, g) in q.gamma().iter().enumerate() {
        for (h, zh) in &z_table[..i] {
            let degree = g.degree() + h.degree();
            if degree > d {
                continue;
            }
            let zg = &z_table[i].1;
            let coords = bracket_coordinates(&commutator(zg, zh), q.gb())?;
            let below = lex_below(g);
            let bad: Vec<String> = coords
                .terms()
                .filter(|(w, _)| !factors_all(alphabet, w, &below))
                .map(|(w, _)| format!("[{}]", alphabet.render(w)))
                .collect();
            let failure = (!bad.is_empty()).then(|| {
                format!(
                    "[z_{}, z_{}] involves {}",
                    alphabet.render(g),
                    alphabet.render(h),
                    bad.join(", ")
                )
            });
            record(&mut condition2, degree, failure);
        }
    }
    let (basis_kind, basis_counts, condition3) = basis_condition(q);
    let finiteness = finiteness(q);
    Ok(StructureReport {
        bound: d,
        field: q.field(),
        gamma: q.gamma().to_vec(),
        z_table,
        dimensions: q.data().dimensions(),
        basis_kind,
        basis_counts,
        condition1,
        condition2,
        condition3,
        finiteness,
        gk_candidate: (finiteness == Finiteness::CandidateFinite).then(|| q.gamma().len()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GkVerdict {
    /// `#Γ`, valid when no new PBW generator appears beyond the bound.
    Candidate { value: usize, bound: u32 },
    /// Γ still growing at the bound; `seen` generators so far.
    UnboundedAtBound { seen: usize, bound: u32 },
}

impl fmt::Display for GkVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GkVerdict::Candidate { value, bound } => {
                write!(f, "{value} (candidate: equals #Γ, certified up to degree {bound})")
            }
            GkVerdict::UnboundedAtBound { seen, bound } => {
                write!(f, "unbounded at D={bound} (#Γ = {seen} so far)")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertReport {
    pub bound: u32,
    /// `dim H_n` for `n = 0..=D`, counted from irreducible words.
    pub coefficients: Vec<u64>,
    /// The truncated product over Γ, each factor cut off at the height.
    pub product: Vec<u64>,
    pub matches: bool,
    pub gk: GkVerdict,
}

/// `∏_{γ∈Γ} (1 + t^d + ⋯ + t^{(h−1)d})`, `d = deg γ`, `h = h_I(γ)`, modulo
/// `t^{D+1}`; for infinite heights the factor is `(1 − t^d)^{-1}`.
pub fn truncated_product(factors: &[(u32, Option<u32>)], bound: u32) -> Vec<u64> {
    let len = bound as usize + 1;
    let mut series = vec![0u64; len];
    series[0] = 1;
    for &(d, h) in factors {
        let d = d as usize;
        let mut next = vec![0u64; len];
        for (n, coeff) in series.iter().enumerate() {
            if *coeff == 0 {
                continue;
            }
            let mut k = 0usize;
            while n + k * d < len && h.is_none_or(|h| (k as u32) < h) {
                next[n + k * d] = next[n + k * d].saturating_add(*coeff);
                k += 1;
            }
        }
        series = next;
    }
    series
}

pub fn hilbert_and_gk(q: &Quotient) -> HilbertReport {
    let coefficients = q.data().dimensions();
    let factors: Vec<(u32, Option<u32>)> = q
        .gamma()
        .iter()
        .map(|g| {
            let h = match q.data().heights[g] {
                Height::Finite(h) => Some(h),
                Height::NotObserved { .. } => None,
            };
            (g.degree(), h)
        })
        .collect();
    let product = truncated_product(&factors, q.bound());
    let gk = match finiteness(q) {
        Finiteness::CandidateFinite => GkVerdict::Candidate {
            value: q.gamma().len(),
            bound: q.bound(),
        },
        Finiteness::NotFiniteAtBound => GkVerdict::UnboundedAtBound {
            seen: q.gamma().len(),
            bound: q.bound(),
        },
    };
    HilbertReport {
        bound: q.bound(),
        matches: coefficients == product,
        coefficients,
        product,
        gk,
    }
}

/// A linear combination of ordered monomials `z_1^{r_1}⋯z_d^{r_d}`, keyed by
/// exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbwElement {
    field: Field,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl PbwElement {
    pub fn zero(field: Field) -> Self {
        Self {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    /// Highest index carrying a positive exponent.
    pub fn max_generator(&self) -> Option<usize> {
        self.terms.keys().filter_map(|e| e.iter().rposition(|&r| r > 0)).max()
    }

    /// Renders with generators named `z1, z2, …`.
    pub fn render(&self) -> String {
        render_terms(self.terms.iter().rev().map(|(e, c)| {
            let body: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, r)| **r > 0)
                .map(|(i, r)| {
                    if *r == 1 {
                        format!("z{}", i + 1)
                    } else {
                        format!("z{}^{r}", i + 1)
                    }
                })
                .collect();
            (body.join("*"), body.is_empty(), c)
        }))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TowerLevel {
    pub generator: Word,
    pub degree: u32,
    /// `δ(z_j)` for each earlier level `j` (0-based), in PBW coordinates.
    pub derivation: Vec<(usize, PbwElement)>,
    /// Whether `Δ(z)` lies in `1⊗z + z⊗1 + H^{<z} ⊗ H^{<z}`.
    pub comultiplication_ok: bool,
    /// Values of the derivation that leave the previous level.
    pub escapes: Vec<String>,
}

/// `H = k[z_1][z_2; δ_2]⋯[z_d; δ_d]` with `δ_i(z_j) = z_i z_j − z_j z_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct OreTower {
    pub field: Field,
    pub bound: u32,
    pub levels: Vec<TowerLevel>,
}

impl OreTower {
    pub fn is_sound(&self) -> bool {
        self.levels
            .iter()
            .all(|l| l.comultiplication_ok && l.escapes.is_empty())
    }

    /// `k[z1][z2;δ2]…`.
    pub fn describe(&self) -> String {
        let mut s = String::from("k");
        for (i, _) in self.levels.iter().enumerate() {
            if i == 0 {
                s.push_str("[z1]");
            } else {
                s.push_str(&format!("[z{};δ{}]", i + 1, i + 1));
            }
        }
        s
    }

    /// A presentation on letters `z1..zd` with relations
    /// `z_i z_j − z_j z_i − δ_i(z_j)`, `j < i`, and primitive generators.
    pub fn presentation(&self) -> Result<Presentation, AlgebraError> {
        let names: Vec<(String, u32)> = self
            .levels
            .iter()
            .enumerate()
            .map(|(i, l)| (format!("z{}", i + 1), l.degree))
            .collect();
        let alphabet = Alphabet::new(&names)?;
        let letter = |i: usize| alphabet.single(alphabet.letter(&names[i].0).expect("declared"));
        let field = self.field;
        let mut relations = Vec::new();
        for (i, level) in self.levels.iter().enumerate() {
            for (j, value) in &level.derivation {
                let zi = Polynomial::word(field, letter(i));
                let zj = Polynomial::word(field, letter(*j));
                let mut rel = commutator(&zi, &zj);
                for (e, c) in value.terms() {
                    let mut w = Word::empty();
                    for (k, r) in e.iter().enumerate() {
                        w = w.concat(&letter(k).pow(*r as usize));
                    }
                    rel.add_term(w, -c);
                }
                relations.push(rel);
            }
        }
        Presentation::new(alphabet, field, relations, None, self.bound)
    }
}

/// Builds the Ore tower over Γ in `<lex` order. Characteristic 0 only;
/// refused unless the structure conditions hold and Γ is a finiteness
/// candidate.
pub fn extract_ihoe(q: &Quotient) -> Result<OreTower, AlgebraError> {
    if q.field().characteristic() != 0 {
        return Err(AlgebraError::Unsupported(
            "the Ore tower needs characteristic 0 (finite heights are not Ore extensions)".into(),
        ));
    }
    let report = verify_structure_theorem(q)?;
    if !report.holds() {
        return Err(AlgebraError::Refused("structure conditions fail".into()));
    }
    if report.finiteness != Finiteness::CandidateFinite {
        return Err(AlgebraError::Refused(format!(
            "Γ is not a finiteness candidate at D={}",
            q.bound()
        )));
    }
    let mut levels = Vec::new();
    for (i, (g, zg)) in report.z_table.iter().enumerate() {
        let mut derivation = Vec::new();
        let mut escapes = Vec::new();
        for (j, (h, zh)) in report.z_table[..i].iter().enumerate() {
            let degree = g.degree() + h.degree();
            if degree > q.bound() {
                return Err(AlgebraError::OutOfCertifiedRange {
                    degree,
                    bound: q.bound(),
                });
            }
            let value = q.pbw_coordinates(&commutator(zg, zh))?;
            if value.max_generator().is_some_and(|m| m >= i) {
                escapes.push(format!("δ{}(z{}) = {}", i + 1, j + 1, value.render()));
            }
            derivation.push((j, value));
        }
        levels.push(TowerLevel {
            generator: g.clone(),
            degree: g.degree(),
            derivation,
            comultiplication_ok: comultiplication_condition(q, g)?.is_empty(),
            escapes,
        });
    }
    Ok(OreTower {
        field: q.field(),
        bound: q.bound(),
        levels,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieGenerator {
    pub word: Word,
    pub polynomial: Polynomial,
    pub is_lie: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LieGenerators {
    pub bound: u32,
    pub generators: Vec<LieGenerator>,
}

impl LieGenerators {
    /// Whether the ideal is generated by Lie polynomials up to the bound.
    pub fn all_lie(&self) -> bool {
        self.generators.iter().all(|g| g.is_lie)
    }
}

/// For each reducible Lyndon word `v`, `g_v = [v] − Σ c_w [w]` with `c` the
/// bracket coordinates of `[v]`; these generate the ideal up to the bound.
pub fn recover_lie_generators(q: &Quotient) -> Result<LieGenerators, AlgebraError> {
    if q.field().characteristic() != 0 {
        return Err(AlgebraError::Unsupported(
            "Lie generator recovery needs characteristic 0".into(),
        ));
    }
    if !q.comultiplication().is_standard(q.alphabet()) {
        return Err(AlgebraError::Refused(
            "Lie generator recovery needs primitive generators".into(),
        ));
    }
    let stability = check_stability(q.comultiplication(), q.gb())?;
    if !stability.is_stable() {
        return Err(AlgebraError::Refused(
            "ideal is not stable under the standard comultiplication".into(),
        ));
    }
    let field = q.field();
    let mut generators = Vec::new();
    for v in enumerate_lyndon(q.alphabet(), q.bound()) {
        if !q.gb().is_reducible(&v) {
            continue;
        }
        let mut g = standard_bracket(&v, field);
        for (w, c) in bracket_coordinates(&g.clone(), q.gb())?.terms() {
            g.add_scaled(&bracket_monomial(w, field), &(-c));
        }
        let is_lie = is_lie_polynomial(q.alphabet(), &g)?;
        generators.push(LieGenerator {
            word: v,
            polynomial: g,
            is_lie,
        });
    }
    Ok(LieGenerators {
        bound: q.bound(),
        generators,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct QuasiLieReport {
    pub bound: u32,
    pub part1: Vec<DegreeVerdict>,
    pub part2: Vec<DegreeVerdict>,
    pub part3: Vec<DegreeVerdict>,
}

impl QuasiLieReport {
    pub fn holds(&self) -> bool {
        all_hold(&self.part1) && all_hold(&self.part2) && all_hold(&self.part3)
    }
}

fn support_failures(alphabet: &Alphabet, coords: &Polynomial, accept: impl Fn(&Word) -> bool) -> Vec<String> {
    coords
        .terms()
        .filter(|(w, _)| !factors_all(alphabet, w, &accept))
        .map(|(w, _)| format!("[{}]", alphabet.render(w)))
        .collect()
}

/// Part (1): bracket coordinates of `[v]`, `v` a reducible Lyndon word, only
/// involve Lyndon factors `<lex v`. Part (2): for `u >lex v` in `N_I`, those
/// of `[u][v] − [v][u]` only involve factors `<=lex uv`. Part (3): the basis
/// count of [`verify_structure_theorem`].
pub fn verify_quasi_lie(q: &Quotient) -> Result<QuasiLieReport, AlgebraError> {
    q.hypotheses()?.require(q.alphabet())?;
    let alphabet = q.alphabet();
    let field = q.field();
    let d = q.bound();
    let mut part1 = per_degree(d);
    for v in enumerate_lyndon(alphabet, d) {
        if !q.gb().is_reducible(&v) {
            continue;
        }
        let coords = bracket_coordinates(&standard_bracket(&v, field), q.gb())?;
        let top = coords.homogeneous_component(v.degree());
        let bad = support_failures(alphabet, &top, lex_below(&v));
        let failure = (!bad.is_empty()).then(|| format!("[{}] involves {}", alphabet.render(&v), bad.join(", ")));
        record(&mut part1, v.degree(), failure);
    }
    let mut part2 = per_degree(d);
    for (i, v) in q.gamma().iter().enumerate() {
        for u in &q.gamma()[i + 1..] {
            let degree = u.degree() + v.degree();
            if degree > d {
                continue;
            }
            let uv = u.concat(v);
            let c = commutator(&standard_bracket(u, field), &standard_bracket(v, field));
            let coords = bracket_coordinates(&c, q.gb())?.homogeneous_component(degree);
            let bad = support_failures(alphabet, &coords, lex_at_most(&uv));
            let failure = (!bad.is_empty()).then(|| {
                format!(
                    "[[{}], [{}]] involves {}",
                    alphabet.render(u),
                    alphabet.render(v),
                    bad.join(", ")
                )
            });
            record(&mut part2, degree, failure);
        }
    }
    let (_, _, part3) = basis_condition(q);
    Ok(QuasiLieReport {
        bound: d,
        part1,
        part2,
        part3,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightsReport {
    pub bound: u32,
    pub field: Field,
    /// Heights of Γ, in `<lex` order.
    pub heights: Vec<(Word, Height)>,
    /// Finite heights that are not powers of the characteristic (or, in
    /// characteristic 0, any finite height).
    pub height_failures: Vec<String>,
    /// Lyndon words `v` of observed finite height `n` for which `[v]^n` is not
    /// supported on Lyndon factors `<lex v` at top degree.
    pub power_failures: Vec<String>,
    /// Number of Lyndon words with an observed finite height.
    pub finite_checked: usize,
}

impl HeightsReport {
    pub fn holds(&self) -> bool {
        self.height_failures.is_empty() && self.power_failures.is_empty()
    }
}

fn is_power_of(n: u32, p: u64) -> bool {
    if p < 2 || n < p as u32 {
        return false;
    }
    let mut m = n as u64;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Heights of the irreducible Lyndon words, the characteristic constraint on
/// finite heights, and the top-degree support of `[v]^{h(v)}` for every
/// Lyndon word `v` of observed finite height.
pub fn check_heights(q: &Quotient) -> Result<HeightsReport, AlgebraError> {
    q.hypotheses()?.require(q.alphabet())?;
    let alphabet = q.alphabet();
    let field = q.field();
    let p = field.characteristic();
    let heights: Vec<(Word, Height)> = q
        .gamma()
        .iter()
        .map(|g| (g.clone(), q.data().heights[g].clone()))
        .collect();
    let mut height_failures = Vec::new();
    for (g, h) in &heights {
        if let Height::Finite(n) = h {
            if p == 0 || !is_power_of(*n, p) {
                height_failures.push(format!("h({}) = {n}", alphabet.render(g)));
            }
        }
    }
    let mut power_failures = Vec::new();
    let mut finite_checked = 0;
    for v in enumerate_lyndon(alphabet, q.bound()) {
        debug_assert!(is_lyndon(&v));
        let Height::Finite(n) = crate::rewrite::height(&v, q.gb())? else {
            continue;
        };
        finite_checked += 1;
        let top = v.degree() * n;
        let coords = bracket_coordinates(&standard_bracket(&v, field).pow(n), q.gb())?.homogeneous_component(top);
        let bad = support_failures(alphabet, &coords, lex_below(&v));
        if !bad.is_empty() {
            power_failures.push(format!("[{}]^{n} involves {}", alphabet.render(&v), bad.join(", ")));
        }
    }
    Ok(HeightsReport {
        bound: q.bound(),
        field,
        heights,
        height_failures,
        power_failures,
        finite_checked,
    })
}
