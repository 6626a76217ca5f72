//! Browser bindings for the demo page in `www/`.
//!
//! Every entry point takes plain strings and returns a JSON string; failures
//! come back as `{"error": "..."}` so the page never has to catch.

use pbw_core::parse::parse_presentation;
use pbw_core::poly::bracket_monomial;
use pbw_core::structure::{hilbert_and_gk, verify_structure_theorem, DegreeVerdict, Quotient};
use pbw_core::word::{is_lyndon, lyndon_decomposition, shirshov_factorization};
use pbw_core::{AlgebraError, Alphabet, Field, Word};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(r: Result<Value, AlgebraError>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

/// `a,b,c` or `x:1,y:2`; letters in increasing order.
fn alphabet(src: &str) -> Result<Alphabet, AlgebraError> {
    let mut declared = Vec::new();
    for part in src.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, degree) = match part.split_once(':') {
            Some((n, d)) => {
                let d = d
                    .trim()
                    .parse()
                    .map_err(|_| AlgebraError::InvalidArgument(format!("bad degree in `{part}`")))?;
                (n.trim().to_string(), d)
            }
            None => (part.to_string(), 1u32),
        };
        declared.push((name, degree));
    }
    Alphabet::new(&declared)
}

fn load(presentation: &str, bound: Option<u32>) -> Result<Quotient, AlgebraError> {
    Quotient::new(parse_presentation(presentation, None, bound)?)
}

fn gamma(q: &Quotient) -> Value {
    let a = q.alphabet();
    q.gamma()
        .iter()
        .map(|w| json!({ "word": a.render_product(w), "degree": w.degree() }))
        .collect()
}

fn conditions(name: &str, verdicts: &[DegreeVerdict]) -> Value {
    let failures: Vec<String> = verdicts
        .iter()
        .flat_map(|v| v.failures.iter().map(move |f| format!("degree {}: {f}", v.degree)))
        .collect();
    let checked: usize = verdicts.iter().map(|v| v.checked).sum();
    json!({ "name": name, "pass": failures.is_empty(), "checked": checked, "failures": failures })
}

fn lyndon_report(word: &str, letters: &str) -> Result<Value, AlgebraError> {
    let a = alphabet(letters)?;
    let w: Word = a.parse_word(word)?;
    if w.is_empty() {
        return Err(AlgebraError::InvalidArgument("empty word".into()));
    }
    let factors: Vec<String> = lyndon_decomposition(&a, &w)
        .iter()
        .map(|f| a.render_product(f))
        .collect();
    let lyndon = is_lyndon(&w);
    let shirshov = if lyndon && !w.is_letter() {
        let (u, v) = shirshov_factorization(&a, &w)?;
        json!([a.render_product(&u), a.render_product(&v)])
    } else {
        Value::Null
    };
    let bracket = lyndon.then(|| bracket_monomial(&w, Field::Rational).render(&a));
    Ok(json!({
        "word": a.render_product(&w),
        "lyndon": lyndon,
        "factors": factors,
        "shirshov": shirshov,
        "bracket": bracket,
    }))
}

fn hilbert_report(presentation: &str, bound: Option<u32>) -> Result<Value, AlgebraError> {
    let q = load(presentation, bound)?;
    let h = hilbert_and_gk(&q);
    Ok(json!({
        "bound": q.bound(),
        "gamma": gamma(&q),
        "hilbert": h.coefficients,
        "product": h.product,
        "matches": h.matches,
        "gk": h.gk.to_string(),
    }))
}

fn verify_report(presentation: &str, bound: Option<u32>) -> Result<Value, AlgebraError> {
    let q = load(presentation, bound)?;
    let a = q.alphabet();
    let hyp = q.hypotheses()?;
    let tri = &hyp.triangularity;
    let st = &hyp.stability;
    let mut verdicts = vec![
        json!({
            "name": "triangularity",
            "pass": tri.is_triangular(),
            "failures": tri.violations.iter().map(|v| format!("at {}: {}", v.generator, v.detail)).collect::<Vec<_>>(),
        }),
        json!({
            "name": "stability",
            "pass": st.is_stable(),
            "failures": st.failures.iter()
                .map(|f| format!("{} leaves residue {}", f.element.render(a), f.residue.render(a)))
                .collect::<Vec<_>>(),
        }),
    ];
    let mut finiteness = Value::Null;
    if hyp.hold() {
        let s = verify_structure_theorem(&q)?;
        verdicts.push(conditions("condition (1) comultiplication", &s.condition1));
        verdicts.push(conditions("condition (2) commutators", &s.condition2));
        verdicts.push(conditions(
            &format!("condition (3) {:?} basis", s.basis_kind),
            &s.condition3,
        ));
        finiteness = json!(s.finiteness.to_string());
    }
    let pass = verdicts.iter().all(|v| v["pass"] == true);
    Ok(json!({
        "bound": q.bound(),
        "pass": pass,
        "verdicts": verdicts,
        "gamma": gamma(&q),
        "hilbert": q.data().dimensions(),
        "finiteness": finiteness,
    }))
}

/// Lyndon factorization, Shirshov factorization and standard bracketing of
/// `word` over the ordered alphabet `letters`.
#[wasm_bindgen]
pub fn lyndon(word: &str, letters: &str) -> String {
    respond(lyndon_report(word, letters))
}

/// Γ, Hilbert coefficients and the product over Γ for a JSON presentation.
#[wasm_bindgen]
pub fn hilbert(presentation: &str, bound: Option<u32>) -> String {
    respond(hilbert_report(presentation, bound))
}

/// Hypotheses and PBW-generator conditions for a JSON presentation.
#[wasm_bindgen]
pub fn verify(presentation: &str, bound: Option<u32>) -> String {
    respond(verify_report(presentation, bound))
}
