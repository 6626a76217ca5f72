use std::cmp::Ordering;
use std::fmt::Write as _;
use std::path::Path;

use pbw_core::coalg::{check_coassoc_counit, Antipode};
use pbw_core::parse::load_presentation;
use pbw_core::rewrite::admissible_words;
use pbw_core::structure::{
    check_heights, extract_ihoe, hilbert_and_gk, recover_lie_generators, verify_structure_theorem, DegreeVerdict,
    Presentation, Quotient,
};
use pbw_core::word::{is_lyndon, lyndon_decomposition, shirshov_factorization};
use pbw_core::{AlgebraError, Alphabet, Field, Height, Polynomial, Word, WordKind};
use sha2::{Digest, Sha256};

use crate::report::{DerivationEntry, GammaEntry, Report, TowerEntry};
use crate::{GlobalArgs, WordArgs};

pub(crate) struct Loaded {
    q: Quotient,
    digest: String,
}

pub(crate) fn load(path: &Path, g: &GlobalArgs) -> Result<Loaded, AlgebraError> {
    let p = load_presentation(path, g.field, g.bound)?;
    let digest = digest(&p);
    Ok(Loaded {
        q: Quotient::new(p)?,
        digest,
    })
}

/// SHA-256 of a canonical rendering of the validated presentation.
fn digest(p: &Presentation) -> String {
    let a = &p.alphabet;
    let mut s = format!("field {}\n", p.field);
    for g in a.generators() {
        let _ = writeln!(s, "generator {} {}", g.name, g.degree);
    }
    for r in &p.relations {
        let _ = writeln!(s, "relation {}", r.render(a));
    }
    for l in a.letters() {
        let _ = writeln!(s, "coproduct {} {}", a.name(l), p.comultiplication.image(l).render(a));
    }
    let _ = writeln!(s, "bound {}", p.bound);
    format!("{:x}", Sha256::digest(s.as_bytes()))
}

fn header(echo: String, l: &Loaded) -> Report {
    let mut r = Report::new(echo);
    r.bound = Some(l.q.bound());
    r.field = Some(l.q.field().to_string());
    r.digest = Some(l.digest.clone());
    r
}

fn word(a: &Alphabet, w: &Word) -> String {
    a.render_product(w)
}

fn gamma(q: &Quotient) -> Vec<GammaEntry> {
    q.gamma()
        .iter()
        .map(|w| GammaEntry {
            word: word(q.alphabet(), w),
            degree: w.degree(),
        })
        .collect()
}

fn per_degree(name: &str, verdicts: &[DegreeVerdict], r: &mut Report) {
    let failures: Vec<String> = verdicts
        .iter()
        .flat_map(|v| v.failures.iter().map(move |f| format!("degree {}: {f}", v.degree)))
        .collect();
    let checked: usize = verdicts.iter().map(|v| v.checked).sum();
    if failures.is_empty() {
        r.verdict(name, true, format!("{checked} checks"));
    } else {
        r.verdict(name, false, failures.join("; "));
    }
}

/// Natural order on letter names: `x2 < x10`, then plain string order.
fn natural(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        (&s[..cut], s[cut..].parse().ok())
    }
    split(a).cmp(&split(b)).then_with(|| a.cmp(b))
}

fn has_separators(s: &str) -> bool {
    s.contains(|c: char| c.is_whitespace() || c == '*' || c == '·' || c == '^')
}

/// The letter names of a word given on the command line, in reading order.
fn word_names(src: &str) -> Vec<String> {
    if has_separators(src) {
        src.split(|c: char| c.is_whitespace() || c == '*' || c == '·')
            .filter(|t| !t.is_empty() && *t != "1")
            .map(|t| t.split('^').next().unwrap_or(t).to_string())
            .collect()
    } else {
        src.chars().map(String::from).collect()
    }
}

fn word_and_alphabet(args: &WordArgs) -> Result<(Alphabet, Word), AlgebraError> {
    let alphabet = match &args.alphabet {
        Some(spec) => {
            let mut declared = Vec::new();
            for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                let (name, degree) = match part.split_once(':') {
                    Some((n, d)) => {
                        let d: u32 = d
                            .trim()
                            .parse()
                            .map_err(|_| AlgebraError::InvalidArgument(format!("bad degree in `{part}`")))?;
                        (n.trim().to_string(), d)
                    }
                    None => (part.to_string(), 1),
                };
                declared.push((name, degree));
            }
            Alphabet::new(&declared)?
        }
        None => {
            let mut names = word_names(&args.word);
            names.sort_by(|a, b| natural(a, b));
            names.dedup();
            let declared: Vec<(String, u32)> = names.into_iter().map(|n| (n, 1)).collect();
            Alphabet::new(&declared)?
        }
    };
    let w = if has_separators(&args.word) || alphabet.letter(&args.word).is_some() {
        alphabet.parse_word(&args.word)?
    } else {
        alphabet.parse_word(&word_names(&args.word).join(" "))?
    };
    if w.is_empty() {
        return Err(AlgebraError::InvalidArgument("empty word".into()));
    }
    Ok((alphabet, w))
}

fn factors(a: &Alphabet, fs: &[Word]) -> String {
    fs.iter().map(|f| format!("({})", word(a, f))).collect()
}

pub(crate) fn lyndon_decompose(echo: String, args: &WordArgs) -> Result<Report, AlgebraError> {
    let (a, w) = word_and_alphabet(args)?;
    let mut r = Report::new(echo);
    let fs = lyndon_decomposition(&a, &w);
    r.item(format!("{} = {}", word(&a, &w), factors(&a, &fs)));
    Ok(r)
}

pub(crate) fn lyndon_check(echo: String, args: &WordArgs) -> Result<Report, AlgebraError> {
    let (a, w) = word_and_alphabet(args)?;
    let mut r = Report::new(echo);
    if is_lyndon(&w) {
        let detail = if w.is_letter() {
            "a letter".to_string()
        } else {
            let (left, right) = shirshov_factorization(&a, &w)?;
            format!("Shirshov factorization ({}, {})", word(&a, &left), word(&a, &right))
        };
        r.verdict("lyndon", true, detail);
    } else {
        let fs = lyndon_decomposition(&a, &w);
        r.verdict("lyndon", false, format!("factors as {}", factors(&a, &fs)));
    }
    Ok(r)
}

pub(crate) fn lyndon_bracket(echo: String, args: &WordArgs, g: &GlobalArgs) -> Result<Report, AlgebraError> {
    let (a, w) = word_and_alphabet(args)?;
    let field = g.field.unwrap_or(Field::Rational);
    let mut r = Report::new(echo);
    r.field = Some(field.to_string());
    let b = pbw_core::poly::bracket_monomial(&w, field);
    r.item(format!("[{}] = {}", word(&a, &w), b.render(&a)));
    Ok(r)
}

pub(crate) fn gb(echo: String, l: &Loaded) -> Result<Report, AlgebraError> {
    let mut r = header(echo, l);
    let a = l.q.alphabet();
    for g in l.q.gb().elements() {
        r.item(g.render(a));
    }
    r.note(format!(
        "{} basis elements, reduced and complete up to degree {}",
        l.q.gb().elements().len(),
        l.q.bound()
    ));
    Ok(r)
}

pub(crate) fn basis(echo: String, l: &Loaded, degree: u32, kind: WordKind) -> Result<Report, AlgebraError> {
    let q = &l.q;
    let words = admissible_words(q.gb(), degree, kind)?;
    let dim = q.data().irreducible[degree as usize].len();
    let mut r = header(echo, l);
    r.verdict(
        "count",
        words.len() == dim,
        format!(
            "{} {kind:?} words of degree {degree}, quotient dimension {dim}",
            words.len()
        ),
    );
    for w in &words {
        r.item(word(q.alphabet(), w));
    }
    Ok(r)
}

pub(crate) fn hilbert(echo: String, l: &Loaded) -> Result<Report, AlgebraError> {
    let q = &l.q;
    let h = hilbert_and_gk(q);
    let mut r = header(echo, l);
    let product: Vec<String> = h.product.iter().map(u64::to_string).collect();
    r.verdict(
        "product",
        h.matches,
        format!("product over Γ truncated at heights: {}", product.join(", ")),
    );
    r.gamma = gamma(q);
    r.hilbert = Some(h.coefficients.clone());
    r.item(format!("GK dimension: {}", h.gk));
    Ok(r)
}

pub(crate) fn verify(echo: String, l: &Loaded) -> Result<Report, AlgebraError> {
    let q = &l.q;
    let a = q.alphabet();
    let mut r = header(echo, l);
    let hyp = q.hypotheses()?;
    let tri = &hyp.triangularity;
    if tri.is_triangular() {
        let detail = if tri.lower_degree_tails.is_empty() {
            "graded triangular".to_string()
        } else {
            format!("lower-degree tail at {}", tri.lower_degree_tails.join(", "))
        };
        r.verdict("triangularity", true, detail);
    } else {
        let v: Vec<String> = tri
            .violations
            .iter()
            .map(|v| format!("at {}: {}", v.generator, v.detail))
            .collect();
        r.verdict("triangularity", false, v.join("; "));
    }
    let st = &hyp.stability;
    if st.is_stable() {
        r.verdict("stability", true, format!("{} basis elements", q.gb().elements().len()));
    } else {
        let v: Vec<String> = st
            .failures
            .iter()
            .map(|f| format!("{} leaves residue {}", f.element.render(a), f.residue.render(a)))
            .collect();
        r.verdict("stability", false, v.join("; "));
    }
    r.gamma = gamma(q);
    r.hilbert = Some(q.data().dimensions());
    if !hyp.hold() {
        r.note("PBW-generator conditions not checked: the hypotheses fail");
        return Ok(r);
    }
    let s = verify_structure_theorem(q)?;
    per_degree("condition (1) comultiplication", &s.condition1, &mut r);
    per_degree("condition (2) commutators", &s.condition2, &mut r);
    per_degree(
        &format!("condition (3) {:?} basis", s.basis_kind),
        &s.condition3,
        &mut r,
    );
    r.note(format!("finiteness of Γ at D = {}: {}", s.bound, s.finiteness));
    if let Some(gk) = s.gk_candidate {
        r.note(format!("GK dimension candidate {gk}"));
    }
    Ok(r)
}

pub(crate) fn hopf_check(echo: String, l: &Loaded) -> Result<Report, AlgebraError> {
    let q = &l.q;
    let a = q.alphabet();
    let gb = q.gb();
    let d = q.comultiplication();
    let mut r = header(echo, l);
    if !pbw_core::coalg::check_stability(d, gb)?.is_stable() {
        r.note("the ideal is not stable, so Δ does not descend to the quotient; checks are on representatives");
    }
    let c = check_coassoc_counit(d, gb, q.bound())?;
    if c.is_coassociative() {
        r.verdict("coassociativity", true, "");
    } else {
        let v: Vec<String> = c
            .coassociativity_failures
            .iter()
            .map(|(on, t)| format!("on {on}: {}", t.render(a)))
            .collect();
        r.verdict("coassociativity", false, v.join("; "));
    }
    if c.is_counital() {
        r.verdict("counit", true, "");
    } else {
        let v: Vec<String> = c
            .counit_failures
            .iter()
            .map(|(on, side, f)| format!("{side} on {on}: {}", f.render(a)))
            .collect();
        r.verdict("counit", false, v.join("; "));
    }
    if !c.holds() {
        r.verdict("antipode", false, "needs a coassociative, counital comultiplication");
        return Ok(r);
    }
    let s = match Antipode::compute(d, a) {
        Ok(s) => s,
        Err(AlgebraError::Refused(m)) => {
            r.verdict("antipode", false, m);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let field = q.field();
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 1..=q.bound() {
        for w in &q.data().irreducible[n as usize] {
            let dw = d.apply(&Polynomial::word(field, w.clone()));
            let left = dw.map_legs(
                |x| s.apply(&Polynomial::word(field, x.clone())),
                |y| Polynomial::word(field, y.clone()),
            );
            let right = dw.map_legs(
                |x| Polynomial::word(field, x.clone()),
                |y| s.apply(&Polynomial::word(field, y.clone())),
            );
            for (side, t) in [("S*id", left), ("id*S", right)] {
                let v = gb.normal_form(&t.multiply_legs())?;
                if !v.is_zero() {
                    bad.push(format!("{side} on {}: {}", word(a, w), v.render(a)));
                }
            }
            checked += 1;
        }
    }
    if bad.is_empty() {
        r.verdict(
            "antipode",
            true,
            format!("convolution inverse on {checked} irreducible words"),
        );
    } else {
        r.verdict("antipode", false, bad.join("; "));
    }
    for letter in a.letters() {
        let sx = gb.normal_form(s.on_letter(letter))?;
        r.item(format!("S({}) = {}", a.name(letter), sx.render(a)));
    }
    Ok(r)
}

pub(crate) fn ihoe(echo: String, l: &Loaded) -> Result<Report, AlgebraError> {
    let q = &l.q;
    let a = q.alphabet();
    let mut r = header(echo, l);
    r.gamma = gamma(q);
    let tower = match extract_ihoe(q) {
        Ok(t) => t,
        Err(AlgebraError::Refused(m)) => {
            r.verdict("tower", false, m);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let escapes: Vec<String> = tower.levels.iter().flat_map(|l| l.escapes.clone()).collect();
    let coproduct: Vec<String> = tower
        .levels
        .iter()
        .enumerate()
        .filter(|(_, l)| !l.comultiplication_ok)
        .map(|(i, _)| format!("Δ(z{}) leaves the previous level", i + 1))
        .collect();
    let problems: Vec<String> = escapes.into_iter().chain(coproduct).collect();
    let detail = if problems.is_empty() {
        tower.describe()
    } else {
        problems.join("; ")
    };
    r.verdict("tower", tower.is_sound(), detail);
    let regenerated = Quotient::new(tower.presentation()?)?;
    let same = regenerated.data().dimensions() == q.data().dimensions();
    r.verdict(
        "tower presentation",
        same,
        if same {
            "same dimensions as the input"
        } else {
            "dimensions differ from the input"
        },
    );
    r.tower = tower
        .levels
        .iter()
        .map(|level| TowerEntry {
            generator: word(a, &level.generator),
            degree: level.degree,
            derivation: level
                .derivation
                .iter()
                .map(|(j, v)| DerivationEntry {
                    on: format!("z{}", j + 1),
                    value: v.render(),
                })
                .collect(),
        })
        .collect();
    Ok(r)
}

pub(crate) fn lie_gens(echo: String, l: &Loaded) -> Result<Report, AlgebraError> {
    let q = &l.q;
    let a = q.alphabet();
    let mut r = header(echo, l);
    let gens = match recover_lie_generators(q) {
        Ok(g) => g,
        Err(AlgebraError::Refused(m)) => {
            r.verdict("all Lie", false, m);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let not_lie: Vec<String> = gens
        .generators
        .iter()
        .filter(|g| !g.is_lie)
        .map(|g| word(a, &g.word))
        .collect();
    let detail = if not_lie.is_empty() {
        format!("{} generators up to degree {}", gens.generators.len(), gens.bound)
    } else {
        format!("not Lie at {}", not_lie.join(", "))
    };
    r.verdict("all Lie", gens.all_lie(), detail);
    for g in &gens.generators {
        r.item(format!("g[{}] = {}", word(a, &g.word), g.polynomial.render(a)));
    }
    Ok(r)
}

pub(crate) fn heights(echo: String, l: &Loaded) -> Result<Report, AlgebraError> {
    let q = &l.q;
    let a = q.alphabet();
    let mut r = header(echo, l);
    r.gamma = gamma(q);
    let h = match check_heights(q) {
        Ok(h) => h,
        Err(AlgebraError::Refused(m)) => {
            r.verdict("heights", false, m);
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    let p = h.field.characteristic();
    let pass_detail = if p == 0 {
        "no finite height".to_string()
    } else {
        format!("every finite height is a power of {p}")
    };
    r.verdict(
        "heights",
        h.height_failures.is_empty(),
        if h.height_failures.is_empty() {
            pass_detail
        } else {
            h.height_failures.join("; ")
        },
    );
    r.verdict(
        "powers",
        h.power_failures.is_empty(),
        if h.power_failures.is_empty() {
            format!("[v]^h(v) supported below v for {} Lyndon words v", h.finite_checked)
        } else {
            h.power_failures.join("; ")
        },
    );
    for (w, height) in &h.heights {
        let shown = match height {
            Height::Finite(n) => format!("= {n}"),
            Height::NotObserved { at_least } => format!(">= {at_least}"),
        };
        r.item(format!("h({}) {shown}", word(a, w)));
    }
    Ok(r)
}
