//! Prefix terms over a signature, orderly terms, and admissible substitution.
//!
//! Terms are stored flat, as the token sequence of their prefix (Polish)
//! notation. For this calculus the flat form is the natural one: orderliness,
//! the `<` relation, and substitution are all statements about the
//! left-to-right variable sequence, and substitution is a token splice.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use serde::Serialize;
use thiserror::Error;

use crate::signature::{Signature, Symbol};

/// One token of a prefix term: a function symbol or a variable `v<index>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Sym(Symbol),
    Var(u32),
}

impl Token {
    fn push_text(&self, out: &mut String) {
        match self {
            Token::Sym(s) => out.push_str(&s.name),
            Token::Var(i) => {
                out.push('v');
                out.push_str(itoa(*i).as_str());
            }
        }
    }
}

/// Decimal text of a `u32` on the stack (no heap allocation).
fn itoa(mut n: u32) -> ArrayText {
    let mut buf = [0u8; 10];
    let mut at = buf.len();
    loop {
        at -= 1;
        buf[at] = b'0' + (n % 10) as u8;
        n /= 10;
        if n == 0 {
            break;
        }
    }
    ArrayText { buf, start: at }
}

struct ArrayText {
    buf: [u8; 10],
    start: usize,
}

impl ArrayText {
    fn as_str(&self) -> &str {
        std::str::from_utf8(&self.buf[self.start..]).expect("digits are utf8")
    }
}

/// Compare two tokens by their canonical text without allocating.
fn token_text_cmp(a: &Token, b: &Token) -> Ordering {
    let mut abuf = [0u8; 11];
    let mut bbuf = [0u8; 11];
    let atext: &[u8] = match a {
        Token::Sym(s) => s.name.as_bytes(),
        Token::Var(i) => {
            abuf[0] = b'v';
            let d = itoa(*i);
            let digits = d.as_str().as_bytes();
            abuf[1..1 + digits.len()].copy_from_slice(digits);
            &abuf[..1 + digits.len()]
        }
    };
    let btext: &[u8] = match b {
        Token::Sym(s) => s.name.as_bytes(),
        Token::Var(i) => {
            bbuf[0] = b'v';
            let d = itoa(*i);
            let digits = d.as_str().as_bytes();
            bbuf[1..1 + digits.len()].copy_from_slice(digits);
            &bbuf[..1 + digits.len()]
        }
    };
    atext.cmp(btext)
}

/// A well-formed prefix term: every symbol application is saturated.
///
/// `size` (the total count of symbol and variable occurrences) is the token
/// count. Equality and hashing are structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    tokens: Vec<Token>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("malformed variable `{0}`")]
    MalformedVariable(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
}

impl Term {
    /// Parse whitespace-separated prefix notation, e.g. `f v0 f v1 v2`.
    pub fn parse(text: &str, sig: &Signature) -> Result<Term, ParseError> {
        let mut tokens = Vec::new();
        let mut needed: usize = 1;
        for raw in text.split_whitespace() {
            if needed == 0 {
                return Err(ParseError::ArityMismatch(format!(
                    "term is complete before `{raw}`; extra tokens remain"
                )));
            }
            let token = classify(raw, sig)?;
            needed -= 1;
            if let Token::Sym(s) = &token {
                needed += s.arity;
            }
            tokens.push(token);
        }
        if needed > 0 {
            return Err(ParseError::ArityMismatch(format!(
                "input ended expecting {needed} more argument{}",
                if needed == 1 { "" } else { "s" }
            )));
        }
        Ok(Term { tokens })
    }

    /// The term consisting of the single variable `v<index>`.
    pub fn variable(index: u32) -> Term {
        Term { tokens: vec![Token::Var(index)] }
    }

    /// Apply `sym` to exactly `sym.arity` argument terms.
    ///
    /// Panics if the argument count is wrong; callers construct applications
    /// from signature data, so a mismatch is a programming error.
    pub fn apply(sym: &Symbol, args: &[&Term]) -> Term {
        assert_eq!(
            args.len(),
            sym.arity,
            "symbol {} applied to {} arguments",
            sym,
            args.len()
        );
        let mut tokens = Vec::with_capacity(1 + args.iter().map(|a| a.tokens.len()).sum::<usize>());
        tokens.push(Token::Sym(sym.clone()));
        for arg in args {
            tokens.extend(arg.tokens.iter().cloned());
        }
        Term { tokens }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Symbol-plus-variable occurrence count.
    pub fn size(&self) -> usize {
        self.tokens.len()
    }

    /// Variable indices in left-to-right occurrence order.
    pub fn var_indices(&self) -> impl Iterator<Item = u32> + '_ {
        self.tokens.iter().filter_map(|t| match t {
            Token::Var(i) => Some(*i),
            Token::Sym(_) => None,
        })
    }

    /// The set of variable indices occurring in the term.
    pub fn variables(&self) -> BTreeSet<u32> {
        self.var_indices().collect()
    }

    pub fn first_var(&self) -> Option<u32> {
        self.var_indices().next()
    }

    pub fn last_var(&self) -> Option<u32> {
        self.tokens.iter().rev().find_map(|t| match t {
            Token::Var(i) => Some(*i),
            Token::Sym(_) => None,
        })
    }

    pub fn max_var(&self) -> Option<u32> {
        self.var_indices().max()
    }

    /// True when the variable indices strictly increase left to right.
    pub fn is_orderly(&self) -> bool {
        let mut prev: Option<u32> = None;
        for i in self.var_indices() {
            if let Some(p) = prev {
                if i <= p {
                    return false;
                }
            }
            prev = Some(i);
        }
        true
    }

    /// The head token.
    pub fn root(&self) -> &Token {
        &self.tokens[0]
    }

    /// Token ranges of the immediate argument subterms (empty for a variable).
    pub fn arg_spans(&self) -> Vec<std::ops::Range<usize>> {
        match &self.tokens[0] {
            Token::Var(_) => Vec::new(),
            Token::Sym(s) => {
                let mut spans = Vec::with_capacity(s.arity);
                let mut at = 1;
                for _ in 0..s.arity {
                    let end = span_end(&self.tokens, at);
                    spans.push(at..end);
                    at = end;
                }
                debug_assert_eq!(at, self.tokens.len());
                spans
            }
        }
    }

    /// Clone the subterm covering `span` (must come from `arg_spans`).
    pub fn subterm(&self, span: std::ops::Range<usize>) -> Term {
        Term { tokens: self.tokens[span].to_vec() }
    }

    pub(crate) fn from_tokens_unchecked(tokens: Vec<Token>) -> Term {
        Term { tokens }
    }

    /// Canonical comparison: by size, then lexicographically by canonical
    /// text. This is the enumeration and search order everywhere.
    pub fn canonical_cmp(&self, other: &Term) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| {
                for (a, b) in self.tokens.iter().zip(other.tokens.iter()) {
                    match token_text_cmp(a, b) {
                        Ordering::Equal => continue,
                        ne => return ne,
                    }
                }
                Ordering::Equal
            })
    }
}

/// End index (exclusive) of the subterm starting at `start`.
fn span_end(tokens: &[Token], start: usize) -> usize {
    let mut needed = 1usize;
    let mut at = start;
    while needed > 0 {
        match &tokens[at] {
            Token::Var(_) => needed -= 1,
            Token::Sym(s) => needed += s.arity - 1,
        }
        at += 1;
    }
    at
}

fn classify(raw: &str, sig: &Signature) -> Result<Token, ParseError> {
    if let Some(rest) = raw.strip_prefix('v') {
        if rest.chars().all(|c| c.is_ascii_digit()) {
            if rest.is_empty() {
                return Err(ParseError::MalformedVariable(raw.to_string()));
            }
            return match rest.parse::<u32>() {
                Ok(i) => Ok(Token::Var(i)),
                Err(_) => Err(ParseError::MalformedVariable(raw.to_string())),
            };
        }
    }
    match sig.get(raw) {
        Some(sym) => Ok(Token::Sym(sym.clone())),
        None => Err(ParseError::UnknownSymbol(raw.to_string())),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut text = String::new();
        for (i, tok) in self.tokens.iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            tok.push_text(&mut text);
        }
        f.write_str(&text)
    }
}

/// Raised when a substitution or evaluation needs a variable index the finite
/// prefix does not cover. Finite prefixes stand in for infinite sequences, so
/// overruns must fail loudly instead of wrapping or defaulting.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("index {index} beyond prefix of length {len}")]
pub struct IndexBeyondPrefix {
    pub index: u32,
    pub len: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("term `{0}` is not orderly: variable indices must strictly increase left to right")]
pub struct NotOrderly(pub String);

/// A term whose variable indices strictly increase left to right.
///
/// `Ord` is the canonical enumeration order (size, then canonical text).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderlyTerm(Term);

impl OrderlyTerm {
    pub fn new(term: Term) -> Result<OrderlyTerm, NotOrderly> {
        if term.is_orderly() {
            Ok(OrderlyTerm(term))
        } else {
            Err(NotOrderly(term.to_string()))
        }
    }

    pub fn parse(text: &str, sig: &Signature) -> Result<OrderlyTerm, TermError> {
        let term = Term::parse(text, sig)?;
        Ok(OrderlyTerm::new(term)?)
    }

    pub fn variable(index: u32) -> OrderlyTerm {
        OrderlyTerm(Term::variable(index))
    }

    pub(crate) fn from_term_unchecked(term: Term) -> OrderlyTerm {
        debug_assert!(term.is_orderly(), "not orderly: {term}");
        OrderlyTerm(term)
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }

    /// The `<` relation: every variable of `self` is smaller than every
    /// variable of `other` (equivalently, last < first).
    pub fn precedes(&self, other: &OrderlyTerm) -> bool {
        match (self.last_var(), other.first_var()) {
            (Some(a), Some(b)) => a < b,
            _ => false,
        }
    }

    /// Substitute each variable `v_i` by `prefix[i]`. The result is again
    /// orderly because the prefix is admissible.
    pub fn substitute(&self, prefix: &AdmissiblePrefix) -> Result<OrderlyTerm, IndexBeyondPrefix> {
        self.substitute_slice(prefix.terms())
    }

    /// Substitution against a bare (already admissible) slice of terms.
    pub(crate) fn substitute_slice(
        &self,
        terms: &[OrderlyTerm],
    ) -> Result<OrderlyTerm, IndexBeyondPrefix> {
        let mut tokens = Vec::with_capacity(self.0.tokens.len());
        for tok in &self.0.tokens {
            match tok {
                Token::Sym(_) => tokens.push(tok.clone()),
                Token::Var(i) => match terms.get(*i as usize) {
                    Some(t) => tokens.extend(t.tokens().iter().cloned()),
                    None => {
                        return Err(IndexBeyondPrefix { index: *i, len: terms.len() })
                    }
                },
            }
        }
        Ok(OrderlyTerm::from_term_unchecked(Term { tokens }))
    }
}

impl Deref for OrderlyTerm {
    type Target = Term;

    fn deref(&self) -> &Term {
        &self.0
    }
}

impl fmt::Display for OrderlyTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl PartialOrd for OrderlyTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderlyTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.canonical_cmp(&other.0)
    }
}

impl Serialize for OrderlyTerm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Umbrella error for parsing orderly terms from text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TermError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    NotOrderly(#[from] NotOrderly),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdmissibleError {
    #[error("an admissible prefix must be nonempty")]
    Empty,
    #[error("entries {0} and {1} are out of order: `{2}` must precede `{3}`")]
    NotIncreasing(usize, usize, String, String),
}

/// A nonempty `<`-increasing sequence of orderly terms: the finite stand-in
/// for an infinite reduction witness. Substituting through an admissible
/// prefix preserves orderliness and the `<` relation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissiblePrefix {
    terms: Vec<OrderlyTerm>,
}

impl AdmissiblePrefix {
    pub fn new(terms: Vec<OrderlyTerm>) -> Result<AdmissiblePrefix, AdmissibleError> {
        if terms.is_empty() {
            return Err(AdmissibleError::Empty);
        }
        for i in 1..terms.len() {
            if !terms[i - 1].precedes(&terms[i]) {
                return Err(AdmissibleError::NotIncreasing(
                    i - 1,
                    i,
                    terms[i - 1].to_string(),
                    terms[i].to_string(),
                ));
            }
        }
        Ok(AdmissiblePrefix { terms })
    }

    pub(crate) fn from_terms_unchecked(terms: Vec<OrderlyTerm>) -> AdmissiblePrefix {
        debug_assert!(!terms.is_empty());
        debug_assert!((1..terms.len()).all(|i| terms[i - 1].precedes(&terms[i])));
        AdmissiblePrefix { terms }
    }

    /// The identity prefix `⟨v0, v1, …, v_{len-1}⟩`, a fixpoint of
    /// substitution.
    pub fn identity(len: usize) -> AdmissiblePrefix {
        assert!(len > 0, "identity prefix needs positive length");
        AdmissiblePrefix {
            terms: (0..len as u32).map(OrderlyTerm::variable).collect(),
        }
    }

    pub fn parse<S: AsRef<str>>(texts: &[S], sig: &Signature) -> Result<AdmissiblePrefix, String> {
        let mut terms = Vec::with_capacity(texts.len());
        for t in texts {
            terms.push(OrderlyTerm::parse(t.as_ref(), sig).map_err(|e| e.to_string())?);
        }
        AdmissiblePrefix::new(terms).map_err(|e| e.to_string())
    }

    pub fn terms(&self) -> &[OrderlyTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false // the constructor rejects empty prefixes
    }

    pub fn get(&self, i: usize) -> Option<&OrderlyTerm> {
        self.terms.get(i)
    }

    /// Entrywise substitution: the prefix `⟨self[i][next]⟩`. Satisfies the
    /// composition law `s.substitute(a).substitute(b) ==
    /// s.substitute(a.compose(b))`.
    pub fn compose(&self, next: &AdmissiblePrefix) -> Result<AdmissiblePrefix, IndexBeyondPrefix> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(t.substitute(next)?);
        }
        Ok(AdmissiblePrefix::from_terms_unchecked(terms))
    }

    /// JSON form: `{"terms":["f v0 v1","v2"]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "terms": self.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &serde_json::Value, sig: &Signature) -> Result<AdmissiblePrefix, String> {
        let terms = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| "expected {\"terms\": [..]}".to_string())?;
        let texts: Vec<String> = terms
            .iter()
            .map(|t| {
                t.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| "prefix entries must be strings".to_string())
            })
            .collect::<Result<_, _>>()?;
        AdmissiblePrefix::parse(&texts, sig)
    }
}

impl fmt::Display for AdmissiblePrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "⟩")
    }
}

impl Serialize for AdmissiblePrefix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}
