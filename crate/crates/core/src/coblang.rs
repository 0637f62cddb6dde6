//! Parser, type checker and evaluator for cobordism expressions over the
//! generator alphabet.
//!
//! Grammar (whitespace insignificant, `o` binds looser than `x`):
//!
//! ```text
//! expr := expr 'o' term | term
//! term := term 'x' atom | atom
//! atom := GEN | 'id[' word ']' | 'P[' word ',' word ',' word ']'
//!       | 'Pinv[' word ',' word ',' word ']' | '(' expr ')'
//! GEN  := psi | psi_inv | mu | eta | delta | eps | s | s_inv
//!       | v+ | v- | Y | c
//! word := '.' | '(' word word ')'
//! ```
//!
//! `a o b` means "do `b`, then `a`": the composite's top word is `b`'s and
//! its bottom word is `a`'s, under the constraint `top(a) = bottom(b)`.
//! Non-associative words are tracked exactly; re-parenthesizations must be
//! written explicitly with `P`/`Pinv`.

use std::fmt;

use crate::error::{LangError, NotationError};
use crate::generators::{GeneratorName, GeneratorTable};
use crate::matrix::StrutMatrix;
use crate::tscat::TsElement;

/// A parenthesized word in the single letter `.`; the monoidal unit is the
/// empty word, which never appears inside a pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Word {
    Empty,
    Leaf,
    Pair(Box<Word>, Box<Word>),
}

impl Word {
    pub fn leaf() -> Word {
        Word::Leaf
    }

    pub fn pair(a: Word, b: Word) -> Word {
        match (a, b) {
            (Word::Empty, w) | (w, Word::Empty) => w,
            (a, b) => Word::Pair(Box::new(a), Box::new(b)),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Word::Empty => 0,
            Word::Leaf => 1,
            Word::Pair(a, b) => a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Word::Empty)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Empty => write!(f, "<empty>"),
            Word::Leaf => write!(f, "."),
            Word::Pair(a, b) => write!(f, "({a}{b})"),
        }
    }
}

/// Source span in bytes, for diagnostics.
pub type Span = (usize, usize);

/// Abstract syntax of a cobordism expression.
#[derive(Clone, PartialEq, Debug)]
pub enum CobExpr {
    Gen(GeneratorName, Span),
    Id(Word, Span),
    P {
        u: Word,
        v: Word,
        w: Word,
        inverted: bool,
        span: Span,
    },
    Compose(Box<CobExpr>, Box<CobExpr>, Span),
    Tensor(Box<CobExpr>, Box<CobExpr>, Span),
}

impl CobExpr {
    pub fn span(&self) -> Span {
        match self {
            CobExpr::Gen(_, s) | CobExpr::Id(_, s) | CobExpr::P { span: s, .. } => *s,
            CobExpr::Compose(_, _, s) | CobExpr::Tensor(_, _, s) => *s,
        }
    }
}

/// A type-annotated expression: every node carries its top and bottom word.
#[derive(Clone, PartialEq, Debug)]
pub struct Typed {
    pub node: TypedNode,
    pub top: Word,
    pub bottom: Word,
    pub span: Span,
}

#[derive(Clone, PartialEq, Debug)]
pub enum TypedNode {
    Gen(GeneratorName),
    Id(Word),
    P { inverted: bool },
    Compose(Box<Typed>, Box<Typed>),
    Tensor(Box<Typed>, Box<Typed>),
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Gen(GeneratorName),
    Id,
    P { inverted: bool },
    Compose,
    Tensor,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    End,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && (self.text[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn next(&mut self) -> Result<(Tok, Span), NotationError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.text.len() {
            return Ok((Tok::End, (start, start)));
        }
        let c = self.text[self.pos] as char;
        let simple = |tok: Tok, lex: &mut Lexer| {
            lex.pos += 1;
            Ok((tok, (start, start + 1)))
        };
        match c {
            '(' => simple(Tok::LParen, self),
            ')' => simple(Tok::RParen, self),
            '[' => simple(Tok::LBracket, self),
            ']' => simple(Tok::RBracket, self),
            ',' => simple(Tok::Comma, self),
            '.' => simple(Tok::Dot, self),
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut end = self.pos;
                while end < self.text.len() {
                    let ch = self.text[end] as char;
                    if ch.is_ascii_alphanumeric() || ch == '_' {
                        end += 1;
                    } else {
                        break;
                    }
                }
                let mut word = String::from_utf8_lossy(&self.text[self.pos..end]).into_owned();
                self.pos = end;
                // `v` takes a sign suffix.
                if word == "v" && self.pos < self.text.len() {
                    let s = self.text[self.pos] as char;
                    if s == '+' || s == '-' {
                        word.push(s);
                        self.pos += 1;
                    }
                }
                let span = (start, self.pos);
                match word.as_str() {
                    "o" => Ok((Tok::Compose, span)),
                    "x" => Ok((Tok::Tensor, span)),
                    "id" => Ok((Tok::Id, span)),
                    "P" => Ok((Tok::P { inverted: false }, span)),
                    "Pinv" => Ok((Tok::P { inverted: true }, span)),
                    other => match GeneratorName::from_token(other) {
                        Some(g) if g != GeneratorName::P && g != GeneratorName::PInv => {
                            Ok((Tok::Gen(g), span))
                        }
                        _ => Err(NotationError::new(
                            start,
                            format!("unknown generator `{other}`"),
                        )),
                    },
                }
            }
            other => Err(NotationError::new(
                start,
                format!("unexpected character `{other}`"),
            )),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: (Tok, Span),
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self, NotationError> {
        let mut lexer = Lexer::new(text);
        let lookahead = lexer.next()?;
        Ok(Parser { lexer, lookahead })
    }

    fn peek(&self) -> &Tok {
        &self.lookahead.0
    }

    fn bump(&mut self) -> Result<(Tok, Span), NotationError> {
        let current = self.lookahead.clone();
        self.lookahead = self.lexer.next()?;
        Ok(current)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Span, NotationError> {
        let (t, span) = self.bump()?;
        if t == tok {
            Ok(span)
        } else {
            Err(NotationError::new(span.0, format!("expected {what}")))
        }
    }

    fn expr(&mut self) -> Result<CobExpr, NotationError> {
        let mut acc = self.term()?;
        while *self.peek() == Tok::Compose {
            self.bump()?;
            let rhs = self.term()?;
            let span = (acc.span().0, rhs.span().1);
            acc = CobExpr::Compose(Box::new(acc), Box::new(rhs), span);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<CobExpr, NotationError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Tensor {
            self.bump()?;
            let rhs = self.atom()?;
            let span = (acc.span().0, rhs.span().1);
            acc = CobExpr::Tensor(Box::new(acc), Box::new(rhs), span);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<CobExpr, NotationError> {
        let (tok, span) = self.bump()?;
        match tok {
            Tok::Gen(name) => Ok(CobExpr::Gen(name, span)),
            Tok::Id => {
                self.expect(Tok::LBracket, "`[` after `id`")?;
                let w = self.word()?;
                let end = self.expect(Tok::RBracket, "`]` closing `id[`")?;
                Ok(CobExpr::Id(w, (span.0, end.1)))
            }
            Tok::P { inverted } => {
                self.expect(Tok::LBracket, "`[` after the re-parenthesizer")?;
                let u = self.word()?;
                self.expect(Tok::Comma, "`,`")?;
                let v = self.word()?;
                self.expect(Tok::Comma, "`,`")?;
                let w = self.word()?;
                let end = self.expect(Tok::RBracket, "`]`")?;
                Ok(CobExpr::P {
                    u,
                    v,
                    w,
                    inverted,
                    span: (span.0, end.1),
                })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(NotationError::new(
                span.0,
                "expected a generator, `id[`, `P[`, `Pinv[` or `(`",
            )),
        }
    }

    fn word(&mut self) -> Result<Word, NotationError> {
        let (tok, span) = self.bump()?;
        match tok {
            Tok::Dot => Ok(Word::Leaf),
            Tok::LParen => {
                let a = self.word()?;
                let b = self.word()?;
                self.expect(Tok::RParen, "`)` closing a word")?;
                Ok(Word::pair(a, b))
            }
            _ => Err(NotationError::new(span.0, "expected a word: `.` or `(ww)`")),
        }
    }
}

/// Parses an expression.
pub fn parse(text: &str) -> Result<CobExpr, LangError> {
    let mut parser = Parser::new(text).map_err(LangError::Parse)?;
    let expr = parser.expr().map_err(LangError::Parse)?;
    let (tok, span) = parser.bump().map_err(LangError::Parse)?;
    if tok != Tok::End {
        return Err(LangError::Parse(NotationError::new(
            span.0,
            "trailing input after expression",
        )));
    }
    Ok(expr)
}

/// Annotates every node with its top and bottom words, enforcing the
/// composition constraint `top(a) = bottom(b)` for `a o b`.
pub fn typecheck(expr: &CobExpr) -> Result<Typed, LangError> {
    match expr {
        CobExpr::Gen(name, span) => {
            let (top, bottom) = name.arity_words();
            Ok(Typed {
                node: TypedNode::Gen(*name),
                top,
                bottom,
                span: *span,
            })
        }
        CobExpr::Id(w, span) => Ok(Typed {
            node: TypedNode::Id(w.clone()),
            top: w.clone(),
            bottom: w.clone(),
            span: *span,
        }),
        CobExpr::P {
            u,
            v,
            w,
            inverted,
            span,
        } => {
            let grouped_right = Word::pair(u.clone(), Word::pair(v.clone(), w.clone()));
            let grouped_left = Word::pair(Word::pair(u.clone(), v.clone()), w.clone());
            let (top, bottom) = if *inverted {
                (grouped_left, grouped_right)
            } else {
                (grouped_right, grouped_left)
            };
            Ok(Typed {
                node: TypedNode::P {
                    inverted: *inverted,
                },
                top,
                bottom,
                span: *span,
            })
        }
        CobExpr::Compose(a, b, span) => {
            let ta = typecheck(a)?;
            let tb = typecheck(b)?;
            if ta.top != tb.bottom {
                return Err(LangError::WordMismatch {
                    pos: span.0,
                    left_top: ta.top.to_string(),
                    right_bottom: tb.bottom.to_string(),
                });
            }
            let (top, bottom) = (tb.top.clone(), ta.bottom.clone());
            Ok(Typed {
                node: TypedNode::Compose(Box::new(ta), Box::new(tb)),
                top,
                bottom,
                span: *span,
            })
        }
        CobExpr::Tensor(a, b, span) => {
            let ta = typecheck(a)?;
            let tb = typecheck(b)?;
            let top = Word::pair(ta.top.clone(), tb.top.clone());
            let bottom = Word::pair(ta.bottom.clone(), tb.bottom.clone());
            Ok(Typed {
                node: TypedNode::Tensor(Box::new(ta), Box::new(tb)),
                top,
                bottom,
                span: *span,
            })
        }
    }
}

/// Evaluates a typechecked expression against a generator table: structural
/// recursion sending composition and tensor to the category operations.
pub fn evaluate(
    typed: &Typed,
    table: &GeneratorTable,
    max_ideg: usize,
) -> Result<TsElement, LangError> {
    if max_ideg > table.max_ideg {
        return Err(LangError::TruncationTooLarge {
            requested: max_ideg,
            table: table.max_ideg,
        });
    }
    eval_node(typed, table, max_ideg)
}

fn eval_node(
    typed: &Typed,
    table: &GeneratorTable,
    max_ideg: usize,
) -> Result<TsElement, LangError> {
    match &typed.node {
        TypedNode::Gen(name) => Ok(table.value_of(*name)?.truncated(max_ideg)),
        TypedNode::Id(w) => Ok(TsElement::identity(w.len(), max_ideg)),
        TypedNode::P { .. } => {
            let g = typed.top.len();
            if g == 3 {
                // The table's P row covers the all-singleton case.
                Ok(table.value_of(GeneratorName::P)?.truncated(max_ideg))
            } else {
                Ok(TsElement::identity(g, max_ideg))
            }
        }
        TypedNode::Compose(a, b) => {
            let va = eval_node(a, table, max_ideg)?;
            let vb = eval_node(b, table, max_ideg)?;
            Ok(TsElement::compose(&va, &vb)?)
        }
        TypedNode::Tensor(a, b) => {
            let va = eval_node(a, table, max_ideg)?;
            let vb = eval_node(b, table, max_ideg)?;
            Ok(TsElement::tensor(&va, &vb)?)
        }
    }
}

/// Composes and tensors only the strut matrices: the linking-matrix fast
/// path, using the same block law as composition but never touching the
/// Y-part machinery.
pub fn lk_only(typed: &Typed, table: &GeneratorTable) -> Result<StrutMatrix, LangError> {
    use crate::matrix::{block_add, block_mul};
    use crate::tscat::element_colors;
    let w_of = |t: &Typed| -> Result<(usize, usize, StrutMatrix), LangError> {
        let w = lk_only(t, table)?;
        Ok((t.top.len(), t.bottom.len(), w))
    };
    match &typed.node {
        TypedNode::Gen(name) => Ok(table.value_of(*name)?.w().clone()),
        TypedNode::Id(w) => Ok(StrutMatrix::identity_pairing(w.len())),
        TypedNode::P { .. } => Ok(StrutMatrix::identity_pairing(typed.top.len())),
        TypedNode::Compose(a, b) => {
            let (g, f, wa) = w_of(a)?;
            let (h, _g2, wb) = w_of(b)?;
            let plus = |n: usize| -> Vec<crate::diagram::Color> {
                (1..=n)
                    .map(|i| crate::diagram::Color::plus(i as u32))
                    .collect()
            };
            let minus = |n: usize| -> Vec<crate::diagram::Color> {
                (1..=n)
                    .map(|i| crate::diagram::Color::minus(i as u32))
                    .collect()
            };
            let a_pm = wa.block(&plus(g), &minus(f));
            let a_mp = wa.block(&minus(f), &plus(g));
            let a_mm = wa.block(&minus(f), &minus(f));
            let b_pm = wb.block(&plus(h), &minus(g));
            let b_mm = wb.block(&minus(g), &minus(g));
            let pm = block_mul(&b_pm, &a_pm, f);
            let mm = block_add(&a_mm, &block_mul(&a_mp, &block_mul(&b_mm, &a_pm, f), f));
            let mut w = StrutMatrix::zero(element_colors(h, f));
            for (i, ci) in plus(h).iter().enumerate() {
                for (j, cj) in minus(f).iter().enumerate() {
                    if !pm[i][j].is_zero() {
                        w.set_sym(ci, cj, pm[i][j].clone());
                    }
                }
            }
            for (i, ci) in minus(f).iter().enumerate() {
                for (j, cj) in minus(f).iter().enumerate().skip(i) {
                    if !mm[i][j].is_zero() {
                        w.set_sym(ci, cj, mm[i][j].clone());
                    }
                }
            }
            Ok(w)
        }
        TypedNode::Tensor(a, b) => {
            let (ga, fa, wa) = w_of(a)?;
            let (gb, fb, wb) = w_of(b)?;
            let mut w = StrutMatrix::zero(element_colors(ga + gb, fa + fb));
            let copy = |w: &mut StrutMatrix, src: &StrutMatrix, dg: usize, df: usize| {
                let cs = src.colors().to_vec();
                for (i, ci) in cs.iter().enumerate() {
                    for (j, cj) in cs.iter().enumerate().skip(i) {
                        let q = src.entry(i, j).clone();
                        if q.is_zero() {
                            continue;
                        }
                        let shift = |c: &crate::diagram::Color| match c {
                            crate::diagram::Color::Plus(k) => {
                                crate::diagram::Color::plus(k + dg as u32)
                            }
                            crate::diagram::Color::Minus(k) => {
                                crate::diagram::Color::minus(k + df as u32)
                            }
                            other => other.clone(),
                        };
                        w.set_sym(&shift(ci), &shift(cj), q);
                    }
                }
            };
            copy(&mut w, &wa, 0, 0);
            copy(&mut w, &wb, ga, fa);
            Ok(w)
        }
    }
}

use num_traits::Zero;

/// Parses, typechecks and evaluates in one step.
pub fn eval_str(
    text: &str,
    table: &GeneratorTable,
    max_ideg: usize,
) -> Result<TsElement, LangError> {
    let expr = parse(text)?;
    let typed = typecheck(&expr)?;
    evaluate(&typed, table, max_ideg)
}

/// Parses and typechecks, returning the linking matrix fast path.
pub fn lk_str(text: &str, table: &GeneratorTable) -> Result<StrutMatrix, LangError> {
    let expr = parse(text)?;
    let typed = typecheck(&expr)?;
    lk_only(&typed, table)
}
