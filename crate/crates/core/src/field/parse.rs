//! Recursive-descent parser for the field expression grammar:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' int)?
//! atom   := number | 'i' | 'x0' | 'x1' | 'x2' | 'x3'
//!         | func '(' expr ')' | '(' expr ')'
//! func   := 'sin' | 'cos' | 'exp' | 'sinh' | 'cosh'
//! ```
//!
//! Whitespace is insignificant; numbers are decimal literals with optional
//! fraction and exponent. Errors carry the byte offset they occurred at.

use crate::error::ParseError;
use crate::scalar::Real;

use super::{FieldExpr, FuncKind};

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Spanned { token: Token::Plus, pos: i });
                i += 1;
            }
            '-' => {
                out.push(Spanned { token: Token::Minus, pos: i });
                i += 1;
            }
            '*' => {
                out.push(Spanned { token: Token::Star, pos: i });
                i += 1;
            }
            '/' => {
                out.push(Spanned { token: Token::Slash, pos: i });
                i += 1;
            }
            '^' => {
                out.push(Spanned { token: Token::Caret, pos: i });
                i += 1;
            }
            '(' => {
                out.push(Spanned { token: Token::LParen, pos: i });
                i += 1;
            }
            ')' => {
                out.push(Spanned { token: Token::RParen, pos: i });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::new(i, "expected digits after decimal point"));
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mark = i;
                    i += 1;
                    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                        i += 1;
                    }
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(ParseError::new(mark, "malformed exponent"));
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let value: f64 = text
                    .parse()
                    .map_err(|_| ParseError::new(start, format!("invalid number `{text}`")))?;
                out.push(Spanned { token: Token::Number(value), pos: start });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Spanned {
                    token: Token::Ident(src[start..i].to_string()),
                    pos: start,
                });
            }
            other => {
                return Err(ParseError::new(i, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a, T> {
    tokens: &'a [Spanned],
    cursor: usize,
    end: usize,
    _marker: std::marker::PhantomData<T>,
}

impl<'a, T: Real> Parser<'a, T> {
    fn peek(&self) -> Option<&'a Spanned> {
        self.tokens.get(self.cursor)
    }

    fn advance(&mut self) -> Option<&'a Spanned> {
        let t = self.tokens.get(self.cursor);
        if t.is_some() {
            self.cursor += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|s| s.pos).unwrap_or(self.end)
    }

    fn expr(&mut self) -> Result<FieldExpr<T>, ParseError> {
        let mut lhs = self.term()?;
        while let Some(s) = self.peek() {
            match s.token {
                Token::Plus => {
                    self.advance();
                    lhs = FieldExpr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.advance();
                    lhs = FieldExpr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<FieldExpr<T>, ParseError> {
        let mut lhs = self.factor()?;
        while let Some(s) = self.peek() {
            match s.token {
                Token::Star => {
                    self.advance();
                    lhs = FieldExpr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Token::Slash => {
                    self.advance();
                    lhs = FieldExpr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<FieldExpr<T>, ParseError> {
        let base = self.atom()?;
        if let Some(s) = self.peek() {
            if s.token == Token::Caret {
                self.advance();
                let exp = self.integer()?;
                return Ok(FieldExpr::Pow(Box::new(base), exp));
            }
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i32, ParseError> {
        let mut negative = false;
        if let Some(s) = self.peek() {
            if s.token == Token::Minus {
                self.advance();
                negative = true;
            }
        }
        let pos = self.here();
        match self.advance() {
            Some(Spanned { token: Token::Number(v), .. }) => {
                if v.fract() != 0.0 || v.abs() > i32::MAX as f64 {
                    return Err(ParseError::new(pos, "exponent must be a small integer"));
                }
                let n = *v as i32;
                Ok(if negative { -n } else { n })
            }
            _ => Err(ParseError::new(pos, "expected integer exponent after `^`")),
        }
    }

    fn atom(&mut self) -> Result<FieldExpr<T>, ParseError> {
        let pos = self.here();
        match self.advance() {
            Some(Spanned { token: Token::Number(v), .. }) => Ok(FieldExpr::real(T::of(*v))),
            Some(Spanned { token: Token::Ident(name), .. }) => match name.as_str() {
                "i" => Ok(FieldExpr::constant(T::zero(), T::one())),
                "x0" => Ok(FieldExpr::Coord(0)),
                "x1" => Ok(FieldExpr::Coord(1)),
                "x2" => Ok(FieldExpr::Coord(2)),
                "x3" => Ok(FieldExpr::Coord(3)),
                "sin" | "cos" | "exp" | "sinh" | "cosh" => {
                    let kind = match name.as_str() {
                        "sin" => FuncKind::Sin,
                        "cos" => FuncKind::Cos,
                        "exp" => FuncKind::Exp,
                        "sinh" => FuncKind::Sinh,
                        _ => FuncKind::Cosh,
                    };
                    self.expect(Token::LParen, "expected `(` after function name")?;
                    let arg = self.expr()?;
                    self.expect(Token::RParen, "expected `)` to close function argument")?;
                    Ok(FieldExpr::Func(kind, Box::new(arg)))
                }
                other => Err(ParseError::new(pos, format!("unknown identifier `{other}`"))),
            },
            Some(Spanned { token: Token::LParen, .. }) => {
                let inner = self.expr()?;
                self.expect(Token::RParen, "expected `)`")?;
                Ok(inner)
            }
            Some(s) => Err(ParseError::new(s.pos, format!("unexpected token {:?}", s.token))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }

    fn expect(&mut self, want: Token, message: &str) -> Result<(), ParseError> {
        let pos = self.here();
        match self.advance() {
            Some(s) if s.token == want => Ok(()),
            _ => Err(ParseError::new(pos, message)),
        }
    }
}

/// Parses a field expression; errors carry the byte offset of the fault.
pub fn parse_field<T: Real>(src: &str) -> Result<FieldExpr<T>, ParseError> {
    if src.trim().is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let tokens = lex(src)?;
    let mut parser = Parser::<T> {
        tokens: &tokens,
        cursor: 0,
        end: src.len(),
        _marker: std::marker::PhantomData,
    };
    let expr = parser.expr()?;
    if let Some(s) = parser.peek() {
        return Err(ParseError::new(s.pos, format!("unexpected trailing token {:?}", s.token)));
    }
    Ok(expr)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vec4::FourVector;
    use num_complex::Complex;

    fn ev(src: &str, x: [f64; 4]) -> Complex<f64> {
        parse_field::<f64>(src)
            .unwrap()
            .eval(&FourVector::from_array(x))
            .unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(ev("1+2*3", [0.0; 4]).re, 7.0);
        assert_eq!(ev("(1+2)*3", [0.0; 4]).re, 9.0);
        assert_eq!(ev("8/4/2", [0.0; 4]).re, 1.0);
        assert_eq!(ev("10-4-3", [0.0; 4]).re, 3.0);
        assert_eq!(ev("2*x1^2", [0.0, 3.0, 0.0, 0.0]).re, 18.0);
    }

    #[test]
    fn numbers_with_exponents() {
        assert_eq!(ev("2.5e2", [0.0; 4]).re, 250.0);
        assert_eq!(ev("1e-3", [0.0; 4]).re, 1e-3);
    }

    #[test]
    fn imaginary_unit() {
        let v = ev("i*i", [0.0; 4]);
        assert_eq!(v, Complex::new(-1.0, 0.0));
    }

    #[test]
    fn whitespace_is_insignificant() {
        assert_eq!(ev("  1 +  2 * x2 ", [0.0, 0.0, 4.0, 0.0]).re, 9.0);
    }

    #[test]
    fn unknown_identifier_carries_position() {
        let err = parse_field::<f64>("1 + x4").unwrap_err();
        assert_eq!(err.position, 4);
        assert!(err.message.contains("x4"));
    }

    #[test]
    fn malformed_inputs_error_with_positions() {
        for (src, expect_pos) in [
            ("", 0usize),
            ("1+", 2),
            ("sin(", 4),
            ("sin 2", 4),
            ("()", 1),
            ("2^^3", 2),
            ("1..2", 2),
            ("x0 x1", 3),
            ("1/", 2),
            ("foo(1)", 0),
            ("@", 0),
            ("x2^1.5", 3),
            ("(1+2", 4),
            ("1e+", 1),
        ] {
            let err = parse_field::<f64>(src).unwrap_err();
            assert_eq!(err.position, expect_pos, "source `{src}`: {err}");
        }
    }
}
