//! Brute-force reference implementations and exhaustive suites.
//!
//! Everything here works from definitions only: lex comparison, rotations,
//! suffixes, exhaustive factorization, dense linear algebra. Shared by the
//! integration tests and the acceptance harness.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::BTreeMap;

use pbw_core::poly::{bracket_monomial, commutator, standard_bracket};
use pbw_core::rewrite::bracket_coordinates;
use pbw_core::word::{compare_lex, is_lyndon, lyndon_decomposition, shirshov_factorization};
use pbw_core::{Alphabet, Field, Polynomial, Scalar, TruncatedGB, Word};

/// `a <lex b` iff `b` is a proper prefix of `a`, or `a` has the smaller
/// letter at the first difference.
pub fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    // one is a prefix of the other: the longer word is smaller
    b.len().cmp(&a.len())
}

/// Greater than every proper rotation.
pub fn lyndon_by_rotation(w: &[u16]) -> bool {
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|i| {
        let rot: Vec<u16> = w[i..].iter().chain(&w[..i]).copied().collect();
        lex(w, &rot) == Ordering::Greater
    })
}

/// Greater than every proper nonempty suffix.
pub fn lyndon_by_suffix(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| lex(w, &w[i..]) == Ordering::Greater)
}

/// Every word of length `1..=max_len` over `k` letters.
pub fn all_words(k: u16, max_len: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u16>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 0..k {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// All factorizations into Lyndon words (rotation definition) whose factors
/// are lex-nondecreasing.
pub fn nondecreasing_lyndon_factorizations(w: &[u16]) -> Vec<Vec<Vec<u16>>> {
    fn go(rest: &[u16], prev: Option<&[u16]>, acc: &mut Vec<Vec<u16>>, out: &mut Vec<Vec<Vec<u16>>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 1..=rest.len() {
            let f = &rest[..i];
            if !lyndon_by_rotation(f) {
                continue;
            }
            if let Some(p) = prev {
                if lex(p, f) == Ordering::Greater {
                    continue;
                }
            }
            acc.push(f.to_vec());
            go(&rest[i..], Some(f), acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(w, None, &mut Vec::new(), &mut out);
    out
}

/// Split at the lex-largest proper suffix.
pub fn shirshov_brute(w: &[u16]) -> (Vec<u16>, Vec<u16>) {
    let i = (1..w.len())
        .max_by(|&i, &j| lex(&w[i..], &w[j..]))
        .expect("length at least 2");
    (w[..i].to_vec(), w[i..].to_vec())
}

fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Number of Lyndon words of length `n` over `k` letters.
pub fn necklace_count(k: u64, n: u64) -> u64 {
    let mut total: i64 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(d) * (k as i64).pow((n / d) as u32);
        }
    }
    (total / n as i64) as u64
}

pub fn letter_counts(w: &Word) -> BTreeMap<u16, usize> {
    let mut m = BTreeMap::new();
    for l in w.letters() {
        *m.entry(*l).or_insert(0) += 1;
    }
    m
}

/// Every word of degree exactly `n`, generated letter by letter.
pub fn words_of_degree_brute(alphabet: &Alphabet, n: u32) -> Vec<Word> {
    if n == 0 {
        return vec![Word::empty()];
    }
    let mut out = Vec::new();
    for l in alphabet.letters() {
        let d = alphabet.degree_of(l);
        if d <= n {
            for w in words_of_degree_brute(alphabet, n - d) {
                out.push(alphabet.single(l).concat(&w));
            }
        }
    }
    out
}

/// Rank of a list of sparse vectors by Gaussian elimination.
pub fn rank(field: Field, rows: Vec<BTreeMap<usize, Scalar>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for mut row in rows {
        loop {
            row.retain(|_, c| !c.is_zero());
            let Some((&col, c)) = row.iter().next() else { break };
            let c = c.clone();
            match pivots.get(&col) {
                Some(p) => {
                    for (k, v) in p {
                        let e = row.entry(*k).or_insert_with(|| field.zero());
                        *e = &*e - &(&c * v);
                    }
                }
                None => {
                    let inv = c.inverse();
                    let normalised = row.iter().map(|(k, v)| (*k, v * &inv)).collect();
                    pivots.insert(col, normalised);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `dim (k<X>/I)_n` for `n = 0..=bound` from the span of all `u·r·v`.
pub fn quotient_dimensions_dense(alphabet: &Alphabet, field: Field, relations: &[Polynomial], bound: u32) -> Vec<u64> {
    let mut dims = Vec::new();
    for n in 0..=bound {
        let basis = words_of_degree_brute(alphabet, n);
        let index: BTreeMap<Word, usize> = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut rows = Vec::new();
        for r in relations {
            let Some(d) = r.degree() else { continue };
            if d > n {
                continue;
            }
            for a in 0..=(n - d) {
                for u in words_of_degree_brute(alphabet, a) {
                    for v in words_of_degree_brute(alphabet, n - d - a) {
                        let mut row = BTreeMap::new();
                        for (w, c) in r.terms() {
                            let full = u.concat(w).concat(&v);
                            row.insert(index[&full], c.clone());
                        }
                        rows.push(row);
                    }
                }
            }
        }
        dims.push((basis.len() - rank(field, rows)) as u64);
    }
    dims
}

/// Left-normed bracketing `[[..[a1, a2], ..], an]` applied word-wise.
pub fn dynkin(alphabet: &Alphabet, f: &Polynomial) -> Polynomial {
    let field = f.field();
    let mut out = Polynomial::zero(field);
    for (w, c) in f.terms() {
        let mut letters = w.letters().iter().map(|&l| Polynomial::word(field, alphabet.single(l)));
        let Some(first) = letters.next() else { continue };
        let acc = letters.fold(first, |acc, x| commutator(&acc, &x));
        out.add_scaled(&acc, c);
    }
    out
}

/// `#{(a, b, c) : a + 2b + c = n}`: ordered monomials `x1^a [x2x1]^b x2^c`.
pub fn heisenberg_pbw_count(n: u64) -> u64 {
    let mut count = 0;
    for b in 0..=n / 2 {
        count += n - 2 * b + 1;
    }
    count
}

/// Partitions of `n` into parts from `parts` (with repetition).
pub fn partition_count(n: u64, parts: &[u64]) -> u64 {
    let mut ways = vec![0u64; n as usize + 1];
    ways[0] = 1;
    for &p in parts {
        for m in p as usize..=n as usize {
            ways[m] += ways[m - p as usize];
        }
    }
    ways[n as usize]
}

fn as_word(alphabet: &Alphabet, w: &[u16]) -> Word {
    alphabet.word(w)
}

/// Exhaustive Lyndon-word checks: definition, suffix criterion, Shirshov
/// factorization, unique nondecreasing factorization, the comparison rule
/// for Lyndon decompositions, and agreement of `compare_lex` with the
/// reference order. Returns the number of individual checks.
pub fn lyndon_suite(letters: u16, max_len: usize) -> Result<usize, String> {
    let alphabet = Alphabet::uniform(letters as usize);
    let words = all_words(letters, max_len);
    let mut checks = 0usize;
    let mut decomposed = Vec::with_capacity(words.len());
    for w in &words {
        let word = as_word(&alphabet, w);
        let lyndon = is_lyndon(&word);
        if lyndon != lyndon_by_rotation(w) {
            return Err(format!("is_lyndon disagrees with the rotation definition on {w:?}"));
        }
        if lyndon != lyndon_by_suffix(w) {
            return Err(format!("suffix criterion fails on {w:?}"));
        }
        checks += 2;
        if w.len() >= 2 {
            let (l, r) = shirshov_factorization(&alphabet, &word).map_err(|e| e.to_string())?;
            let (bl, br) = shirshov_brute(w);
            if l.letters() != bl.as_slice() || r.letters() != br.as_slice() {
                return Err(format!("Shirshov factorization of {w:?} differs from brute force"));
            }
            let crit = lyndon_by_rotation(&bl) && lyndon_by_rotation(&br) && lex(&bl, &br) == Ordering::Greater;
            if lyndon != crit {
                return Err(format!("Shirshov criterion fails on {w:?}"));
            }
            checks += 2;
        }
        let factors = lyndon_decomposition(&alphabet, &word);
        let concat: Vec<u16> = factors.iter().flat_map(|f| f.letters().to_vec()).collect();
        if concat != *w {
            return Err(format!("decomposition of {w:?} does not concatenate back"));
        }
        if factors.iter().any(|f| !lyndon_by_rotation(f.letters())) {
            return Err(format!("decomposition of {w:?} has a non-Lyndon factor"));
        }
        if factors
            .windows(2)
            .any(|p| lex(p[0].letters(), p[1].letters()) == Ordering::Greater)
        {
            return Err(format!("decomposition of {w:?} is not nondecreasing"));
        }
        let brute = nondecreasing_lyndon_factorizations(w);
        let ours: Vec<Vec<u16>> = factors.iter().map(|f| f.letters().to_vec()).collect();
        if brute != vec![ours] {
            return Err(format!(
                "{w:?}: {} nondecreasing Lyndon factorizations, expected exactly ours",
                brute.len()
            ));
        }
        checks += 4;
        decomposed.push((word, factors));
    }
    for (u, fu) in &decomposed {
        for (v, fv) in &decomposed {
            let want = lex(u.letters(), v.letters());
            if compare_lex(u, v) != want {
                return Err(format!("compare_lex({u:?}, {v:?}) disagrees with the reference"));
            }
            // u <lex v iff v's factors are a proper prefix of u's, or the
            // first differing factor of u is lex-smaller
            let (m, n) = (fu.len(), fv.len());
            let l = fu.iter().zip(fv.iter()).position(|(a, b)| a != b);
            let rule_less = match l {
                Some(l) => compare_lex(&fu[l], &fv[l]) == Ordering::Less,
                None => n < m,
            };
            if rule_less != (want == Ordering::Less) {
                return Err(format!("Lyndon-decomposition comparison rule fails on {u:?}, {v:?}"));
            }
            checks += 2;
        }
    }
    Ok(checks)
}

/// Lyndon words of exactly degree `n` over `letters` degree-one letters.
fn lyndon_of_degree(alphabet: &Alphabet, n: u32) -> Vec<Word> {
    words_of_degree_brute(alphabet, n)
        .into_iter()
        .filter(|w| lyndon_by_rotation(w.letters()))
        .collect()
}

/// `[w] − w` is supported on words `<lex w` with the letter multiset of `w`;
/// every word of degree at most `max_degree`.
pub fn bracketing_leading(letters: usize, max_degree: u32) -> Result<usize, String> {
    let alphabet = Alphabet::uniform(letters);
    let mut checks = 0;
    for n in 1..=max_degree {
        for w in words_of_degree_brute(&alphabet, n) {
            let b = bracket_monomial(&w, Field::Rational);
            if !b.coefficient(&w).is_one() {
                return Err(format!(
                    "[{}] does not contain the word with coefficient 1",
                    alphabet.render(&w)
                ));
            }
            let counts = letter_counts(&w);
            for (v, _) in b.terms() {
                if *v == w {
                    continue;
                }
                if lex(v.letters(), w.letters()) != Ordering::Less || letter_counts(v) != counts {
                    return Err(format!("[{}] contains {}", alphabet.render(&w), alphabet.render(v)));
                }
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// For Lyndon `u >lex v`, `[[u],[v]]` expands in bracket monomials
/// `[w1]⋯[wn]` with `v <lex wi <=lex uv` and the letter multiset of `uv`.
pub fn bracketing_expansion(letters: usize, max_degree: u32) -> Result<usize, String> {
    let alphabet = Alphabet::uniform(letters);
    let free = TruncatedGB::free(&alphabet, Field::Rational, max_degree);
    let lyndon: Vec<Word> = (1..max_degree).flat_map(|n| lyndon_of_degree(&alphabet, n)).collect();
    let mut checks = 0;
    for u in &lyndon {
        for v in &lyndon {
            if u.degree() + v.degree() > max_degree || lex(u.letters(), v.letters()) != Ordering::Greater {
                continue;
            }
            let uv = u.concat(v);
            let c = commutator(
                &standard_bracket(u, Field::Rational),
                &standard_bracket(v, Field::Rational),
            );
            let coords = bracket_coordinates(&c, &free).map_err(|e| e.to_string())?;
            let counts = letter_counts(&uv);
            for (w, _) in coords.terms() {
                let ok = letter_counts(w) == counts
                    && lyndon_decomposition(&alphabet, w).iter().all(|f| {
                        lex(v.letters(), f.letters()) == Ordering::Less
                            && lex(f.letters(), uv.letters()) != Ordering::Greater
                    });
                if !ok {
                    return Err(format!(
                        "[[{}],[{}]] involves [{}]",
                        alphabet.render(u),
                        alphabet.render(v),
                        alphabet.render(w)
                    ));
                }
            }
            checks += 1;
        }
    }
    Ok(checks)
}

/// For any sequence of Lyndon words, `[u1]⋯[un]` expands in brackets of
/// nondecreasing products of Lyndon words between the smallest and largest
/// `ui`, with the same letter multiset.
pub fn reordering_bracketing(letters: usize, max_degree: u32) -> Result<usize, String> {
    let alphabet = Alphabet::uniform(letters);
    let free = TruncatedGB::free(&alphabet, Field::Rational, max_degree);
    let lyndon: Vec<Word> = (1..=max_degree).flat_map(|n| lyndon_of_degree(&alphabet, n)).collect();
    let mut checks = 0;
    let mut stack: Vec<(Vec<usize>, u32)> = vec![(vec![], 0)];
    while let Some((seq, degree)) = stack.pop() {
        for (i, u) in lyndon.iter().enumerate() {
            if degree + u.degree() <= max_degree {
                let mut next = seq.clone();
                next.push(i);
                stack.push((next, degree + u.degree()));
            }
        }
        if seq.len() < 2 {
            continue;
        }
        let words: Vec<&Word> = seq.iter().map(|&i| &lyndon[i]).collect();
        if words
            .windows(2)
            .all(|p| lex(p[0].letters(), p[1].letters()) != Ordering::Greater)
        {
            // already a bracket monomial
            continue;
        }
        let lo = words.iter().min_by(|a, b| lex(a.letters(), b.letters())).unwrap();
        let hi = words.iter().max_by(|a, b| lex(a.letters(), b.letters())).unwrap();
        let mut product = Polynomial::one(Field::Rational);
        let mut whole = Word::empty();
        for w in &words {
            product = &product * &standard_bracket(w, Field::Rational);
            whole = whole.concat(w);
        }
        let counts = letter_counts(&whole);
        let coords = bracket_coordinates(&product, &free).map_err(|e| e.to_string())?;
        for (w, _) in coords.terms() {
            let ok = letter_counts(w) == counts
                && lyndon_decomposition(&alphabet, w).iter().all(|f| {
                    lex(lo.letters(), f.letters()) != Ordering::Greater
                        && lex(f.letters(), hi.letters()) != Ordering::Greater
                });
            if !ok {
                let seq: Vec<String> = words.iter().map(|w| format!("[{}]", alphabet.render(w))).collect();
                return Err(format!("{} involves [{}]", seq.join(""), alphabet.render(w)));
            }
        }
        checks += 1;
    }
    Ok(checks)
}
