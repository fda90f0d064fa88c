//! Expression parser for the grammar shared by presentation files and the
//! CLI: explicit `*` products, `^` integer exponents (negative exponents only
//! on invertible generators and nonzero scalars), `@` as tensor separator,
//! parentheses, and scalar literals.
//!
//! Products are free-algebra products; callers normalize against a rule set
//! afterwards when they want quotient elements.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::KernelError;
use crate::ncpoly::{Alphabet, NcPoly, Tensor3Poly, TensorPoly, Word};
use crate::scalar::{FieldDescriptor, Scalar};

/// A parsed expression: a plain algebra element or a tensor of rank 2 or 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Parsed {
    Poly(NcPoly),
    Tensor(TensorPoly),
    Tensor3(Tensor3Poly),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    At,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Returns the next token and the byte position where it starts.
    fn next(&mut self) -> Result<(Tok, usize), KernelError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos >= self.bytes.len() {
            return Ok((Tok::End, start));
        }
        let b = self.bytes[self.pos];
        let simple = match b {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'@' => Some(Tok::At),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((t, start));
        }
        if b.is_ascii_digit() {
            let mut end = self.pos;
            while end < self.bytes.len() && self.bytes[end].is_ascii_digit() {
                end += 1;
            }
            let text = self.src[self.pos..end].to_string();
            self.pos = end;
            return Ok((Tok::Number(text), start));
        }
        if b.is_ascii_alphabetic() || b == b'_' {
            let mut end = self.pos;
            while end < self.bytes.len()
                && (self.bytes[end].is_ascii_alphanumeric() || self.bytes[end] == b'_')
            {
                end += 1;
            }
            let text = self.src[self.pos..end].to_string();
            self.pos = end;
            return Ok((Tok::Ident(text), start));
        }
        Err(KernelError::Parse {
            position: start,
            message: format!("unexpected character `{}`", &self.src[start..start + 1]),
        })
    }
}

/// Evaluation value: scalars stay scalars until forced into the algebra, so
/// `q^-1 * E` and `(q - 1)/(q + 1)` behave as field arithmetic.
#[derive(Clone, Debug)]
enum Value {
    Scalar(Scalar),
    Poly(NcPoly),
    Tensor(TensorPoly),
    Tensor3(Tensor3Poly),
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    current: (Tok, usize),
    alphabet: &'a Arc<Alphabet>,
    field: &'a FieldDescriptor,
}

fn err(position: usize, message: impl Into<String>) -> KernelError {
    KernelError::Parse {
        position,
        message: message.into(),
    }
}

impl<'a> Parser<'a> {
    fn new(
        src: &'a str,
        alphabet: &'a Arc<Alphabet>,
        field: &'a FieldDescriptor,
    ) -> Result<Self, KernelError> {
        let mut lexer = Lexer::new(src);
        let current = lexer.next()?;
        Ok(Parser {
            lexer,
            current,
            alphabet,
            field,
        })
    }

    fn advance(&mut self) -> Result<(), KernelError> {
        self.current = self.lexer.next()?;
        Ok(())
    }

    fn pos(&self) -> usize {
        self.current.1
    }

    fn to_poly(&self, v: Value) -> Result<NcPoly, KernelError> {
        match v {
            Value::Scalar(s) => Ok(NcPoly::monomial(
                self.alphabet,
                self.field,
                Word::empty(),
                s,
            )),
            Value::Poly(p) => Ok(p),
            _ => Err(err(0, "expected an algebra element, found a tensor")),
        }
    }

    // expr := tensor_term (('+'|'-') tensor_term)*
    fn parse_expr(&mut self) -> Result<Value, KernelError> {
        let mut acc = self.parse_tensor_term()?;
        loop {
            let (op, op_pos) = match self.current.0 {
                Tok::Plus => (1i32, self.pos()),
                Tok::Minus => (-1, self.pos()),
                _ => break,
            };
            self.advance()?;
            let rhs = self.parse_tensor_term()?;
            acc = self.combine_add(acc, rhs, op, op_pos)?;
        }
        Ok(acc)
    }

    fn combine_add(&self, a: Value, b: Value, sign: i32, pos: usize) -> Result<Value, KernelError> {
        let negate = sign < 0;
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => {
                Value::Scalar(if negate { x.sub(&y) } else { x.add(&y) })
            }
            (Value::Tensor(x), Value::Tensor(y)) => {
                Value::Tensor(if negate { x.sub(&y) } else { x.add(&y) })
            }
            (Value::Tensor3(x), Value::Tensor3(y)) => {
                Value::Tensor3(if negate { x.sub(&y) } else { x.add(&y) })
            }
            (a @ (Value::Scalar(_) | Value::Poly(_)), b @ (Value::Scalar(_) | Value::Poly(_))) => {
                let x = self.to_poly(a)?;
                let y = self.to_poly(b)?;
                Value::Poly(if negate { x.sub(&y) } else { x.add(&y) })
            }
            _ => return Err(err(pos, "cannot add values of different tensor rank")),
        })
    }

    // tensor_term := factor_seq ('@' factor_seq)*
    fn parse_tensor_term(&mut self) -> Result<Value, KernelError> {
        let mut slots = vec![(self.parse_factor_seq()?, self.pos())];
        while self.current.0 == Tok::At {
            let at_pos = self.pos();
            self.advance()?;
            slots.push((self.parse_factor_seq()?, at_pos));
        }
        match slots.len() {
            1 => Ok(slots.pop().unwrap().0),
            2 => {
                let (b, _) = slots.pop().unwrap();
                let (a, _) = slots.pop().unwrap();
                let pa = self.slot_poly(a)?;
                let pb = self.slot_poly(b)?;
                Ok(Value::Tensor(TensorPoly::of(&pa, &pb)))
            }
            3 => {
                let (c, _) = slots.pop().unwrap();
                let (b, _) = slots.pop().unwrap();
                let (a, _) = slots.pop().unwrap();
                let pa = self.slot_poly(a)?;
                let pb = self.slot_poly(b)?;
                let pc = self.slot_poly(c)?;
                let mut terms = Vec::new();
                for (wa, ca) in pa.terms() {
                    for (wb, cb) in pb.terms() {
                        for (wc, cc) in pc.terms() {
                            terms.push(((wa.clone(), wb.clone(), wc.clone()), ca.mul(cb).mul(cc)));
                        }
                    }
                }
                Ok(Value::Tensor3(Tensor3Poly::from_terms(
                    self.alphabet,
                    self.field,
                    terms,
                )))
            }
            n => {
                let pos = slots[3].1;
                Err(err(pos, format!("tensor rank {} not supported (max 3)", n)))
            }
        }
    }

    fn slot_poly(&self, v: Value) -> Result<NcPoly, KernelError> {
        match v {
            Value::Tensor(_) | Value::Tensor3(_) => {
                Err(err(0, "tensor slots must be plain algebra elements"))
            }
            other => self.to_poly(other),
        }
    }

    // factor_seq := ['-'] factor (('*'|'/') factor)*
    fn parse_factor_seq(&mut self) -> Result<Value, KernelError> {
        let mut negated = false;
        if self.current.0 == Tok::Minus {
            negated = true;
            self.advance()?;
        }
        let mut acc = self.parse_factor()?;
        loop {
            let divide = match self.current.0 {
                Tok::Star => false,
                Tok::Slash => true,
                _ => break,
            };
            let op_pos = self.pos();
            self.advance()?;
            let rhs = self.parse_factor()?;
            acc = self.combine_mul(acc, rhs, divide, op_pos)?;
        }
        if negated {
            acc = match acc {
                Value::Scalar(s) => Value::Scalar(s.neg()),
                Value::Poly(p) => Value::Poly(p.neg()),
                Value::Tensor(t) => Value::Tensor(t.neg()),
                Value::Tensor3(t) => {
                    let zero = Tensor3Poly::zero(self.alphabet, self.field);
                    Value::Tensor3(zero.sub(&t))
                }
            };
        }
        Ok(acc)
    }

    fn combine_mul(
        &self,
        a: Value,
        b: Value,
        divide: bool,
        pos: usize,
    ) -> Result<Value, KernelError> {
        if divide {
            // Division only by nonzero scalars.
            let divisor = match b {
                Value::Scalar(s) => s,
                Value::Poly(p) => match p.terms() {
                    [(w, c)] if w.is_empty() => c.clone(),
                    _ => return Err(err(pos, "division is only defined by nonzero scalars")),
                },
                _ => return Err(err(pos, "division is only defined by nonzero scalars")),
            };
            let inv = divisor.inv().map_err(|_| err(pos, "division by zero"))?;
            return self.combine_mul(a, Value::Scalar(inv), false, pos);
        }
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(x.mul(&y)),
            (Value::Scalar(x), Value::Poly(p)) => Value::Poly(p.scale(&x)),
            (Value::Poly(p), Value::Scalar(x)) => Value::Poly(p.scale(&x)),
            (Value::Poly(p), Value::Poly(q)) => Value::Poly(p.concat_mul(&q)),
            (Value::Scalar(x), Value::Tensor(t)) | (Value::Tensor(t), Value::Scalar(x)) => {
                Value::Tensor(t.scale(&x))
            }
            (Value::Tensor(t), Value::Tensor(u)) => Value::Tensor(t.componentwise_mul(&u)),
            _ => return Err(err(pos, "cannot multiply values of different tensor rank")),
        })
    }

    // factor := atom ['^' ['-'] number]
    fn parse_factor(&mut self) -> Result<Value, KernelError> {
        let base = self.parse_atom()?;
        if self.current.0 != Tok::Caret {
            return Ok(base);
        }
        let caret_pos = self.pos();
        self.advance()?;
        let mut negative = false;
        if self.current.0 == Tok::Minus {
            negative = true;
            self.advance()?;
        }
        let digits = match &self.current.0 {
            Tok::Number(d) => d.clone(),
            _ => return Err(err(self.pos(), "expected an integer exponent after `^`")),
        };
        self.advance()?;
        let magnitude: u32 = digits
            .parse()
            .map_err(|_| err(caret_pos, "exponent too large"))?;
        self.apply_power(base, magnitude, negative, caret_pos)
    }

    fn apply_power(
        &self,
        base: Value,
        magnitude: u32,
        negative: bool,
        pos: usize,
    ) -> Result<Value, KernelError> {
        match base {
            Value::Scalar(s) => {
                let e = if negative {
                    -(magnitude as i64)
                } else {
                    magnitude as i64
                };
                s.pow(e)
                    .map(Value::Scalar)
                    .map_err(|_| err(pos, "negative power of zero"))
            }
            Value::Poly(p) => {
                if !negative {
                    let mut acc = NcPoly::one(self.alphabet, self.field);
                    for _ in 0..magnitude {
                        acc = acc.concat_mul(&p);
                    }
                    return Ok(Value::Poly(acc));
                }
                // Negative exponents: only on invertible monomials, i.e. a
                // nonzero coefficient times a word of paired symbols.
                let (word, coeff) = match p.terms() {
                    [(w, c)] => (w.clone(), c.clone()),
                    _ => {
                        return Err(err(
                            pos,
                            "negative exponents require an invertible generator or scalar",
                        ))
                    }
                };
                let mut inv_ids = Vec::with_capacity(word.len());
                for &id in word.ids().iter().rev() {
                    match self.alphabet.symbol_info(id).paired_inverse() {
                        Some(inv) => inv_ids.push(inv),
                        None => {
                            return Err(err(
                                pos,
                                format!(
                                    "negative exponent on `{}` which has no declared inverse",
                                    self.alphabet.symbol_info(id).display_name()
                                ),
                            ))
                        }
                    }
                }
                let inv_word = Word::from_ids(inv_ids).repeated(magnitude as usize);
                let inv_coeff = coeff
                    .inv()
                    .map_err(|_| err(pos, "negative power of zero"))?
                    .pow(magnitude as i64)
                    .expect("nonzero scalar power");
                Ok(Value::Poly(NcPoly::monomial(
                    self.alphabet,
                    self.field,
                    inv_word,
                    inv_coeff,
                )))
            }
            Value::Tensor(t) => {
                if negative {
                    return Err(err(pos, "negative exponents are not defined on tensors"));
                }
                let mut acc: Option<TensorPoly> = None;
                for _ in 0..magnitude {
                    acc = Some(match acc {
                        None => t.clone(),
                        Some(prev) => prev.componentwise_mul(&t),
                    });
                }
                match acc {
                    Some(v) => Ok(Value::Tensor(v)),
                    None => Err(err(pos, "tensor power 0 is not defined")),
                }
            }
            Value::Tensor3(_) => Err(err(pos, "exponents are not defined on rank-3 tensors")),
        }
    }

    // atom := number | ident | '(' expr ')'
    fn parse_atom(&mut self) -> Result<Value, KernelError> {
        let (tok, pos) = self.current.clone();
        match tok {
            Tok::Number(digits) => {
                self.advance()?;
                let n: BigInt = digits.parse().expect("digit string");
                Ok(Value::Scalar(Scalar::from_rational(
                    self.field,
                    BigRational::from_integer(n),
                )))
            }
            Tok::Ident(name) => {
                self.advance()?;
                if let Some(id) = self.alphabet.lookup(&name) {
                    return Ok(Value::Poly(NcPoly::monomial(
                        self.alphabet,
                        self.field,
                        Word::single(id),
                        Scalar::one(self.field),
                    )));
                }
                let field_var = match self.field {
                    FieldDescriptor::RationalFunctions { var } => Some(var.as_ref()),
                    FieldDescriptor::Cyclotomic { var, .. } => Some(var.as_ref()),
                    _ => None,
                };
                if field_var == Some(name.as_str()) {
                    return Ok(Value::Scalar(
                        self.field.generator().expect("field has a generator"),
                    ));
                }
                Err(err(pos, format!("unknown generator `{}`", name)))
            }
            Tok::LParen => {
                self.advance()?;
                let inner = self.parse_expr()?;
                if self.current.0 != Tok::RParen {
                    return Err(err(self.pos(), "expected `)`"));
                }
                self.advance()?;
                Ok(inner)
            }
            Tok::End => Err(err(pos, "unexpected end of expression")),
            other => Err(err(pos, format!("unexpected token {:?}", other))),
        }
    }
}

/// Parses a full expression; scalars are returned as multiples of the unit
/// monomial.
pub fn parse_expression(
    text: &str,
    alphabet: &Arc<Alphabet>,
    field: &FieldDescriptor,
) -> Result<Parsed, KernelError> {
    let mut p = Parser::new(text, alphabet, field)?;
    let value = p.parse_expr()?;
    if p.current.0 != Tok::End {
        return Err(err(p.pos(), "trailing input after expression"));
    }
    Ok(match value {
        Value::Scalar(s) => Parsed::Poly(NcPoly::monomial(alphabet, field, Word::empty(), s)),
        Value::Poly(poly) => Parsed::Poly(poly),
        Value::Tensor(t) => Parsed::Tensor(t),
        Value::Tensor3(t) => Parsed::Tensor3(t),
    })
}

/// Parses an expression that must be a plain algebra element.
pub fn parse_poly(
    text: &str,
    alphabet: &Arc<Alphabet>,
    field: &FieldDescriptor,
) -> Result<NcPoly, KernelError> {
    match parse_expression(text, alphabet, field)? {
        Parsed::Poly(p) => Ok(p),
        _ => Err(err(0, "expected an algebra element, found a tensor")),
    }
}

/// Parses an expression that must be a rank-2 tensor; plain elements h are
/// promoted to h⊗1 only if they are scalars (which embed as c·1⊗1).
pub fn parse_tensor(
    text: &str,
    alphabet: &Arc<Alphabet>,
    field: &FieldDescriptor,
) -> Result<TensorPoly, KernelError> {
    match parse_expression(text, alphabet, field)? {
        Parsed::Tensor(t) => Ok(t),
        Parsed::Poly(p) => {
            // A scalar literal like `1` means that multiple of 1⊗1.
            match p.terms() {
                [] => Ok(TensorPoly::zero(alphabet, field)),
                [(w, c)] if w.is_empty() => Ok(TensorPoly::from_terms(
                    alphabet,
                    field,
                    vec![((Word::empty(), Word::empty()), c.clone())],
                )),
                _ => Err(err(0, "expected a tensor expression with `@`")),
            }
        }
        Parsed::Tensor3(_) => Err(err(0, "expected a rank-2 tensor, found rank 3")),
    }
}

/// Parses a `lhs = rhs` relation into its two sides.
pub fn parse_relation(
    text: &str,
    alphabet: &Arc<Alphabet>,
    field: &FieldDescriptor,
) -> Result<(NcPoly, NcPoly), KernelError> {
    let parts: Vec<&str> = text.split('=').collect();
    if parts.len() != 2 {
        return Err(err(0, "a relation must contain exactly one `=`"));
    }
    let lhs = parse_poly(parts[0], alphabet, field)?;
    let rhs_offset = parts[0].len() + 1;
    let rhs = parse_poly(parts[1], alphabet, field).map_err(|e| match e {
        KernelError::Parse { position, message } => KernelError::Parse {
            position: position + rhs_offset,
            message,
        },
        other => other,
    })?;
    Ok((lhs, rhs))
}

/// Parses a single monomial with coefficient 1 (used for group-like lists).
pub fn parse_word(
    text: &str,
    alphabet: &Arc<Alphabet>,
    field: &FieldDescriptor,
) -> Result<Word, KernelError> {
    let poly = parse_poly(text, alphabet, field)?;
    match poly.terms() {
        [(w, c)] if c.is_one() => Ok(w.clone()),
        _ => Err(err(0, "expected a single monomial with coefficient 1")),
    }
}
