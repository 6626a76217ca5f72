//! Expression and presentation-file parsing.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := int ['/' int] | name ['^' int] | '(' expr ')' ['^' int]
//! tensor := ['+'|'-'] term '#' term (('+'|'-') term '#' term)*
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::coalg::Comultiplication;
use crate::error::AlgebraError;
use crate::poly::{Polynomial, TensorElement};
use crate::rewrite::check_homogeneous;
use crate::scalar::Field;
use crate::structure::Presentation;
use crate::word::Alphabet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Poly,
    Tensor,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Poly(Polynomial),
    Tensor(TensorElement),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Hash,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Name(s) => format!("`{s}`"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::Hash => "'#'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

/// Byte offset to 1-based (line, column), counting characters.
fn position(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().unwrap_or("").chars().count() + 1;
    (line, column)
}

fn error_at(src: &str, offset: usize, message: impl Into<String>) -> AlgebraError {
    let (line, column) = position(src, offset);
    AlgebraError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, AlgebraError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push((Tok::Int(src[i..end].parse().expect("digits")), i));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = j + d.len_utf8();
                chars.next();
            }
            out.push((Tok::Name(src[i..end].to_string()), i));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '#' | '⊗' => Tok::Hash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => return Err(error_at(src, i, format!("unexpected character `{other}`"))),
        };
        out.push((tok, i));
        chars.next();
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    alphabet: &'a Alphabet,
    field: Field,
    mode: Mode,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, AlgebraError> {
        Err(error_at(self.src, self.offset(), message))
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, AlgebraError> {
        if *self.peek() == Tok::Hash && self.mode == Mode::Poly {
            return self.fail("'#' is only allowed in tensor expressions");
        }
        self.fail(format!("expected {expected}, found {}", describe(self.peek())))
    }

    fn sign(&mut self) -> bool {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        }
    }

    fn expr(&mut self) -> Result<Polynomial, AlgebraError> {
        let neg = self.sign();
        let first = self.term()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, AlgebraError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32, AlgebraError> {
        if *self.peek() != Tok::Caret {
            return Ok(1);
        }
        self.bump();
        match self.peek().clone() {
            Tok::Int(n) => {
                let e = u32::try_from(&n).ok().filter(|&e| e <= 4096);
                match e {
                    Some(e) => {
                        self.bump();
                        Ok(e)
                    }
                    None => self.fail(format!("malformed exponent `{n}`")),
                }
            }
            _ => self.unexpected("an exponent"),
        }
    }

    fn factor(&mut self) -> Result<Polynomial, AlgebraError> {
        match self.peek().clone() {
            Tok::Int(num) => {
                self.bump();
                let den = if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Int(d) => {
                            let at = self.offset();
                            self.bump();
                            if d == BigInt::from(0) {
                                return Err(error_at(self.src, at, "malformed rational: zero denominator"));
                            }
                            d
                        }
                        _ => return self.fail("malformed rational: expected a denominator"),
                    }
                } else {
                    BigInt::from(1)
                };
                let c = self
                    .field
                    .from_ratio(&num, &den)
                    .map_err(|e| error_at(self.src, self.offset(), e.to_string()))?;
                Ok(Polynomial::constant(c))
            }
            Tok::Name(name) => {
                let at = self.offset();
                self.bump();
                let l = self
                    .alphabet
                    .letter(&name)
                    .ok_or_else(|| error_at(self.src, at, format!("unknown generator `{name}`")))?;
                let e = self.exponent()?;
                Ok(Polynomial::word(self.field, self.alphabet.single(l).pow(e as usize)))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.unexpected("')'");
                }
                self.bump();
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            _ => self.unexpected("a generator, number or '('"),
        }
    }

    fn tensor_summand(&mut self) -> Result<TensorElement, AlgebraError> {
        let left = self.term()?;
        if *self.peek() != Tok::Hash {
            return self.unexpected("'#'");
        }
        self.bump();
        let right = self.term()?;
        Ok(TensorElement::tensor(&left, &right))
    }

    fn tensor(&mut self) -> Result<TensorElement, AlgebraError> {
        let neg = self.sign();
        let first = self.tensor_summand()?;
        let mut acc = if neg { -&first } else { first };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.tensor_summand()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.tensor_summand()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn finish(&self) -> Result<(), AlgebraError> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => self.unexpected(if self.mode == Mode::Tensor {
                "'+', '-' or end of input"
            } else {
                "an operator or end of input"
            }),
        }
    }
}

/// Parses `src` over `alphabet`; errors carry the position in `src`.
pub fn parse_expression(src: &str, mode: Mode, alphabet: &Alphabet, field: Field) -> Result<Expression, AlgebraError> {
    let mut p = Parser {
        src,
        tokens: tokenize(src)?,
        pos: 0,
        alphabet,
        field,
        mode,
    };
    let out = match mode {
        Mode::Poly => Expression::Poly(p.expr()?),
        Mode::Tensor => Expression::Tensor(p.tensor()?),
    };
    p.finish()?;
    Ok(out)
}

pub fn parse_polynomial(src: &str, alphabet: &Alphabet, field: Field) -> Result<Polynomial, AlgebraError> {
    match parse_expression(src, Mode::Poly, alphabet, field)? {
        Expression::Poly(p) => Ok(p),
        Expression::Tensor(_) => unreachable!("poly mode"),
    }
}

pub fn parse_tensor(src: &str, alphabet: &Alphabet, field: Field) -> Result<TensorElement, AlgebraError> {
    match parse_expression(src, Mode::Tensor, alphabet, field)? {
        Expression::Tensor(t) => Ok(t),
        Expression::Poly(_) => unreachable!("tensor mode"),
    }
}

/// `Q`, `Fp:<p>` or `F<p>`.
pub fn parse_field(s: &str) -> Result<Field, AlgebraError> {
    let s = s.trim();
    if s == "Q" || s == "QQ" {
        return Ok(Field::Rational);
    }
    let digits = s
        .strip_prefix("Fp:")
        .or_else(|| s.strip_prefix("GF"))
        .or_else(|| s.strip_prefix('F'))
        .ok_or_else(|| AlgebraError::InvalidArgument(format!("unknown field `{s}` (expected Q or Fp:<p>)")))?;
    let p: u64 = digits
        .parse()
        .map_err(|_| AlgebraError::InvalidArgument(format!("malformed modulus in `{s}`")))?;
    Field::prime(p)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Named("Q".into())
    }
}

impl FieldSpec {
    pub fn resolve(&self) -> Result<Field, AlgebraError> {
        match self {
            FieldSpec::Named(s) => parse_field(s),
            FieldSpec::Prime { fp } => Field::prime(*fp),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i64,
}

/// The on-disk presentation format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    #[serde(default)]
    pub field: FieldSpec,
    pub generators: Vec<GeneratorSpec>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub comultiplication: BTreeMap<String, String>,
    pub degree_bound: u32,
}

/// Position of the JSON string literal holding `needle`, if it occurs.
fn locate(text: &str, needle: &str, from: usize) -> Option<usize> {
    let quoted = serde_json::to_string(needle).ok()?;
    text[from.min(text.len())..].find(&quoted).map(|i| from + i + 1)
}

/// Re-anchors an expression error at its place in the file.
fn within(text: &str, anchor: Option<usize>, context: &str, e: AlgebraError) -> AlgebraError {
    match (anchor, e) {
        (Some(start), AlgebraError::Parse { column, message, .. }) => {
            let (line, col) = position(text, start);
            AlgebraError::Parse {
                line,
                column: col + column - 1,
                message: format!("{context}: {message}"),
            }
        }
        (Some(start), other) => {
            let (line, column) = position(text, start);
            AlgebraError::Parse {
                line,
                column,
                message: format!("{context}: {other}"),
            }
        }
        (None, AlgebraError::Parse { line, column, message }) => AlgebraError::Parse {
            line,
            column,
            message: format!("{context}: {message}"),
        },
        (None, other) => AlgebraError::InvalidArgument(format!("{context}: {other}")),
    }
}

/// Parses and validates a presentation document. `field` and `bound`
/// override the values in the file.
pub fn parse_presentation(text: &str, field: Option<Field>, bound: Option<u32>) -> Result<Presentation, AlgebraError> {
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| AlgebraError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    let field_pos = text.find("\"field\"");
    let field = match field {
        Some(f) => f,
        None => file.field.resolve().map_err(|e| within(text, field_pos, "field", e))?,
    };
    let mut declared = Vec::new();
    let mut cursor = 0;
    for g in &file.generators {
        let at = locate(text, &g.name, cursor);
        cursor = at.unwrap_or(cursor);
        if g.degree <= 0 || g.degree > u32::MAX as i64 {
            return Err(within(
                text,
                at,
                &format!("generator `{}`", g.name),
                AlgebraError::InvalidArgument("degree must be positive".into()),
            ));
        }
        declared.push((g.name.clone(), g.degree as u32));
    }
    let alphabet = Alphabet::new(&declared).map_err(|e| within(text, None, "generators", e))?;
    let mut relations = Vec::new();
    for (i, src) in file.relations.iter().enumerate() {
        let at = locate(text, src, cursor);
        cursor = at.unwrap_or(cursor);
        let context = format!("relation {} `{src}`", i + 1);
        let f = parse_polynomial(src, &alphabet, field).map_err(|e| within(text, at, &context, e))?;
        check_homogeneous(&alphabet, &f).map_err(|e| within(text, at, &context, e))?;
        if !f.is_zero() {
            relations.push(f);
        }
    }
    let mut images = BTreeMap::new();
    for (name, src) in &file.comultiplication {
        let at = locate(text, src, 0);
        let context = format!("comultiplication of `{name}`");
        let l = alphabet.letter(name).ok_or_else(|| {
            within(
                text,
                locate(text, name, 0),
                &context,
                AlgebraError::InvalidArgument("unknown generator".into()),
            )
        })?;
        let t = parse_tensor(src, &alphabet, field).map_err(|e| within(text, at, &context, e))?;
        images.insert(l, t);
    }
    let comultiplication = Comultiplication::with_primitive_defaults(&alphabet, field, images)?;
    Presentation::new(
        alphabet,
        field,
        relations,
        Some(comultiplication),
        bound.unwrap_or(file.degree_bound),
    )
}

/// Reads and parses a presentation file.
pub fn load_presentation(path: &Path, field: Option<Field>, bound: Option<u32>) -> Result<Presentation, AlgebraError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| AlgebraError::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_presentation(&text, field, bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn heis() -> Alphabet {
        Alphabet::new(&[("x1", 1), ("x2", 1), ("x3", 2)]).unwrap()
    }

    #[test]
    fn heisenberg_relation() {
        let a = heis();
        let f = parse_polynomial("x2*x1 - x1*x2 - x3", &a, Q).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.render(&a), "-x3 + x2*x1 - x1*x2");
    }

    #[test]
    fn tensor_expression() {
        let a = Alphabet::new(&[("x", 1), ("y", 2)]).unwrap();
        let t = parse_tensor("1#y + y#1 + x#x", &a, Q).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(parse_tensor(&t.render(&a), &a, Q).unwrap(), t);
        let u = parse_tensor("-2*x#x + (x + 1)#1", &a, Q).unwrap();
        assert_eq!(u.len(), 3);
    }

    #[test]
    fn rationals_and_powers() {
        let a = Alphabet::new(&[("x", 1)]).unwrap();
        let f = parse_polynomial("(1/2)*x^2", &a, Q).unwrap();
        assert_eq!(f.render(&a), "1/2*x^2");
        assert_eq!(parse_polynomial(&f.render(&a), &a, Q).unwrap(), f);
        let g = parse_polynomial("(x + 1)^2 - x^2 - 2*x", &a, Q).unwrap();
        assert_eq!(g, Polynomial::one(Q));
        let h = parse_polynomial("1/2*x", &a, Field::Prime(3)).unwrap();
        assert_eq!(h.render(&a), "2*x");
    }

    #[test]
    fn positioned_errors() {
        let a = heis();
        let e = parse_polynomial("x2*x4", &a, Q).unwrap_err();
        assert_eq!(
            e,
            AlgebraError::Parse {
                line: 1,
                column: 4,
                message: "unknown generator `x4`".into()
            }
        );
        let e = parse_polynomial("x1 # x2", &a, Q).unwrap_err();
        assert!(matches!(e, AlgebraError::Parse { column: 4, ref message, .. } if message.contains("tensor")));
        let e = parse_polynomial("3/ x1", &a, Q).unwrap_err();
        assert!(e.to_string().contains("malformed rational"));
        let e = parse_polynomial("1/0", &a, Q).unwrap_err();
        assert!(e.to_string().contains("zero denominator"));
        assert!(parse_polynomial("x1 x2", &a, Q).is_err());
        assert!(parse_polynomial("(x1", &a, Q).is_err());
        assert!(parse_tensor("x1", &a, Q).is_err());
        assert!(parse_polynomial("1/3", &a, Field::Prime(3)).is_err());
    }

    const HEISENBERG: &str = r#"{
  "field": "Q",
  "generators": [
    {"name": "x1", "degree": 1},
    {"name": "x2", "degree": 1},
    {"name": "x3", "degree": 2}
  ],
  "relations": ["x2*x1 - x1*x2 - x3", "x3*x1 - x1*x3", "x3*x2 - x2*x3"],
  "degree_bound": 6
}"#;

    #[test]
    fn presentation_file() {
        let p = parse_presentation(HEISENBERG, None, None).unwrap();
        assert_eq!(p.alphabet.len(), 3);
        assert_eq!(p.relations.len(), 3);
        assert!(p.comultiplication.is_standard(&p.alphabet));
        assert_eq!(p.bound, 6);
        let p = parse_presentation(HEISENBERG, Some(Field::Prime(5)), Some(4)).unwrap();
        assert_eq!((p.field, p.bound), (Field::Prime(5), 4));
    }

    #[test]
    fn presentation_errors() {
        let zero = HEISENBERG.replace("\"x3\", \"degree\": 2", "\"x3\", \"degree\": 0");
        let e = parse_presentation(&zero, None, None).unwrap_err();
        assert!(e.to_string().contains("degree must be positive"), "{e}");

        let inhom = HEISENBERG
            .replace("\"x3\", \"degree\": 2", "\"x3\", \"degree\": 3")
            .replace("x2*x1 - x1*x2 - x3", "x2*x1 - x3");
        let e = parse_presentation(&inhom, None, None).unwrap_err();
        assert!(e.to_string().contains("inhomogeneous: degrees 2 and 3"), "{e}");
        assert!(matches!(e, AlgebraError::Parse { line: 8, .. }), "{e:?}");

        let bad_field = HEISENBERG.replace("\"Q\"", "{\"Fp\": 4}");
        assert!(parse_presentation(&bad_field, None, None)
            .unwrap_err()
            .to_string()
            .contains("not a prime"));

        let unknown = HEISENBERG.replace("x3*x2 - x2*x3", "x3*x2 - x2*y");
        match parse_presentation(&unknown, None, None).unwrap_err() {
            AlgebraError::Parse { line, column, message } => {
                assert_eq!(line, 8);
                assert!(message.contains("unknown generator `y`"));
                let l = unknown.lines().nth(7).unwrap();
                let pos = l.find("x2*y").unwrap() + 4;
                assert_eq!(column, pos);
            }
            other => panic!("{other:?}"),
        }

        let e = parse_presentation("{\"generators\": [}", None, None).unwrap_err();
        assert!(matches!(e, AlgebraError::Parse { line: 1, .. }));
    }
}
