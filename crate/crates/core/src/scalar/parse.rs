//! Expression parser for rational/Gaussian literals, chart and auxiliary
//! variables, `+ - * / ^` with integer exponents, and parentheses.
//!
//! The same tokenizer and AST also back the shift-algebra operator syntax
//! (`δ`, alias `delta`), whose evaluator lives next to that algebra.

use std::fmt;

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::chart::Var;

use super::{ExactScalar, GaussianRational, Poly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at {pos}: {message}")]
pub struct ParseError {
    /// Byte offset into the input where parsing failed.
    pub pos: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: usize, message: impl Into<String>) -> ParseError {
        ParseError { pos, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Number(BigInt),
    Ident(String),
    ImagUnit,
    Delta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Number(n) => write!(f, "{n}"),
            Token::Ident(s) => write!(f, "{s}"),
            Token::ImagUnit => write!(f, "i"),
            Token::Delta => write!(f, "δ"),
            Token::Plus => write!(f, "+"),
            Token::Minus => write!(f, "-"),
            Token::Star => write!(f, "*"),
            Token::Slash => write!(f, "/"),
            Token::Caret => write!(f, "^"),
            Token::LParen => write!(f, "("),
            Token::RParen => write!(f, ")"),
        }
    }
}

pub struct Tokenizer;

impl Tokenizer {
    /// Tokenize, returning each token with its byte offset.
    pub fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
        let mut out = Vec::new();
        let bytes = text.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let c = bytes[pos];
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    pos += 1;
                }
                b'+' => {
                    out.push((pos, Token::Plus));
                    pos += 1;
                }
                b'-' => {
                    out.push((pos, Token::Minus));
                    pos += 1;
                }
                b'*' => {
                    out.push((pos, Token::Star));
                    pos += 1;
                }
                b'/' => {
                    out.push((pos, Token::Slash));
                    pos += 1;
                }
                b'^' => {
                    out.push((pos, Token::Caret));
                    pos += 1;
                }
                b'(' => {
                    out.push((pos, Token::LParen));
                    pos += 1;
                }
                b')' => {
                    out.push((pos, Token::RParen));
                    pos += 1;
                }
                b'0'..=b'9' => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let n: BigInt = text[start..pos].parse().expect("digits");
                    out.push((start, Token::Number(n)));
                }
                b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                    let start = pos;
                    while pos < bytes.len()
                        && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_')
                    {
                        pos += 1;
                    }
                    let word = &text[start..pos];
                    out.push((
                        start,
                        match word {
                            "i" => Token::ImagUnit,
                            "delta" => Token::Delta,
                            _ => Token::Ident(word.to_string()),
                        },
                    ));
                }
                _ => {
                    // Multibyte: accept δ, ν is not valid input.
                    if text[pos..].starts_with('δ') {
                        out.push((pos, Token::Delta));
                        pos += 'δ'.len_utf8();
                    } else {
                        let ch = text[pos..].chars().next().unwrap();
                        return Err(ParseError::new(pos, format!("unexpected character '{ch}'")));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Parsed expression tree, shared by the scalar and operator evaluators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    Number(BigInt),
    ImagUnit,
    Var(String),
    Delta,
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, i64),
}

pub struct Parser {
    tokens: Vec<(usize, Token)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    pub fn new(text: &str) -> Result<Parser, ParseError> {
        Ok(Parser {
            tokens: Tokenizer::tokenize(text)?,
            cursor: 0,
            end: text.len(),
        })
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.cursor).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.cursor).map(|(_, t)| t.clone());
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn expect(&mut self, want: Token) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.cursor += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::new(self.pos(), format!("expected '{want}', found '{t}'"))),
            None => Err(ParseError::new(self.pos(), format!("expected '{want}', found end of input"))),
        }
    }

    pub fn parse_expression(mut self) -> Result<Ast, ParseError> {
        let e = self.expr()?;
        if let Some(t) = self.peek() {
            return Err(ParseError::new(self.pos(), format!("unexpected '{t}'")));
        }
        Ok(e)
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.cursor += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Minus) => {
                    self.cursor += 1;
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.cursor += 1;
                    let rhs = self.factor()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Token::Slash) => {
                    self.cursor += 1;
                    let rhs = self.factor()?;
                    lhs = Ast::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        if let Some(Token::Minus) = self.peek() {
            self.cursor += 1;
            let inner = self.factor()?;
            return Ok(Ast::Neg(Box::new(inner)));
        }
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.cursor += 1;
            let exp = self.integer_exponent()?;
            return Ok(Ast::Pow(Box::new(base), exp));
        }
        Ok(base)
    }

    fn integer_exponent(&mut self) -> Result<i64, ParseError> {
        let mut negative = false;
        if let Some(Token::Minus) = self.peek() {
            self.cursor += 1;
            negative = true;
        }
        let parenthesized = matches!(self.peek(), Some(Token::LParen));
        if parenthesized {
            self.cursor += 1;
            if let Some(Token::Minus) = self.peek() {
                self.cursor += 1;
                negative = !negative;
            }
        }
        let pos = self.pos();
        let n = match self.advance() {
            Some(Token::Number(n)) => n,
            Some(t) => return Err(ParseError::new(pos, format!("expected integer exponent, found '{t}'"))),
            None => return Err(ParseError::new(pos, "expected integer exponent, found end of input")),
        };
        if parenthesized {
            self.expect(Token::RParen)?;
        }
        let mag: i64 = n
            .try_into()
            .map_err(|_| ParseError::new(pos, "exponent out of range"))?;
        Ok(if negative { -mag } else { mag })
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let pos = self.pos();
        match self.advance() {
            Some(Token::Number(n)) => Ok(Ast::Number(n)),
            Some(Token::ImagUnit) => Ok(Ast::ImagUnit),
            Some(Token::Ident(name)) => Ok(Ast::Var(name)),
            Some(Token::Delta) => Ok(Ast::Delta),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Some(t) => Err(ParseError::new(pos, format!("expected a value, found '{t}'"))),
            None => Err(ParseError::new(pos, "expected a value, found end of input")),
        }
    }
}

fn eval_scalar(ast: &Ast) -> Result<ExactScalar, ParseError> {
    match ast {
        Ast::Number(n) => Ok(ExactScalar::from_constant(GaussianRational::new(
            BigRational::from_integer(n.clone()),
            BigRational::from_integer(BigInt::from(0)),
        ))),
        Ast::ImagUnit => Ok(ExactScalar::from_constant(GaussianRational::i())),
        Ast::Var(name) => Ok(ExactScalar::var(Var::from_name(name))),
        Ast::Delta => Err(ParseError::new(0, "δ is only valid in operator expressions")),
        Ast::Neg(x) => Ok(-&eval_scalar(x)?),
        Ast::Add(a, b) => Ok(&eval_scalar(a)? + &eval_scalar(b)?),
        Ast::Sub(a, b) => Ok(&eval_scalar(a)? - &eval_scalar(b)?),
        Ast::Mul(a, b) => Ok(&eval_scalar(a)? * &eval_scalar(b)?),
        Ast::Div(a, b) => {
            let den = eval_scalar(b)?;
            if den.is_zero() {
                return Err(ParseError::new(0, "division by zero"));
            }
            Ok(&eval_scalar(a)? / &den)
        }
        Ast::Pow(base, exp) => {
            let b = eval_scalar(base)?;
            b.pow(*exp)
                .map_err(|_| ParseError::new(0, "zero raised to a negative power"))
        }
    }
}

/// Parse a rational expression into the fraction field.
pub fn parse_scalar(text: &str) -> Result<ExactScalar, ParseError> {
    let ast = Parser::new(text)?.parse_expression()?;
    eval_scalar(&ast)
}

/// Parse an expression that must be polynomial (denominator 1 after
/// simplification).
pub fn parse_poly(text: &str) -> Result<Poly, ParseError> {
    let s = parse_scalar(text)?;
    s.as_poly()
        .cloned()
        .ok_or_else(|| ParseError::new(0, "expected a polynomial, found a proper fraction"))
}

/// Parse an expression that must evaluate to a constant.
pub fn parse_constant(text: &str) -> Result<GaussianRational, ParseError> {
    let s = parse_scalar(text)?;
    s.as_constant()
        .ok_or_else(|| ParseError::new(0, "expected a constant"))
}

pub fn parse_ast(text: &str) -> Result<Ast, ParseError> {
    Parser::new(text)?.parse_expression()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Var;

    #[test]
    fn parses_defining_function() {
        let p = parse_poly("z1*zb1 - 1").unwrap();
        let expect = &(&Poly::var(Var::hol(1)) * &Poly::var(Var::anti(1))) - &Poly::one();
        assert_eq!(p, expect);
    }

    #[test]
    fn parses_gaussian_coefficient() {
        let p = parse_poly("(1/2)*i*z1^2").unwrap();
        let mut expect = Poly::zero();
        expect.add_term(
            super::super::Monomial::var_pow(Var::hol(1), 2),
            GaussianRational::from_parts(0, 1, 1, 2),
        );
        assert_eq!(p, expect);
    }

    #[test]
    fn error_position_at_missing_operand() {
        let err = parse_scalar("z1/").unwrap_err();
        assert_eq!(err.pos, 3);
    }

    #[test]
    fn error_position_at_bad_char() {
        let err = parse_scalar("z1 $ 3").unwrap_err();
        assert_eq!(err.pos, 3);
    }

    #[test]
    fn negative_exponents() {
        let s = parse_scalar("(z1 + zb1)^-2").unwrap();
        let psi = &Poly::var(Var::hol(1)) + &Poly::var(Var::anti(1));
        assert_eq!(s, ExactScalar::new(Poly::one(), &psi * &psi).unwrap());
        assert_eq!(parse_scalar("(z1+zb1)^(-2)").unwrap(), s);
    }

    #[test]
    fn round_trips_with_printer() {
        for text in [
            "z1^2 - 2*z1*zb1 + 1",
            "(zb1)/(z1*zb1 - 1)",
            "(1/2+3/4*i)*z2 + i",
            "(z1^2*zb2 - i*z2)/(z1 + zb1)",
        ] {
            let s = parse_scalar(text).unwrap();
            let printed = s.to_string();
            let back = parse_scalar(&printed).unwrap();
            assert_eq!(s, back, "round trip failed for {text} -> {printed}");
        }
    }
}
