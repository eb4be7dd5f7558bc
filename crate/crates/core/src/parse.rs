//! Concrete syntax for closed real expressions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := factor (('*' | '/') factor)*
//! factor   := base ('^' unsigned-int)?
//! base     := rational | 'pi' | 'e' | fn '(' expr ')' | '(' expr ')' | '-' base
//! fn       := sin | cos | atan | exp | ln | sqrt
//! rational := int ('/' unsigned-int)? | decimal-literal
//! ```
//!
//! `1/3` written where a value is expected is one rational literal, not a
//! division node; because `/` is also left-associative division the two
//! readings denote the same number, but the literal form evaluates exactly
//! instead of discovering a witness for the denominator. Decimal literals
//! are exact rationals (`0.1` is one tenth). A leading `-` binds to the
//! base before any exponent, so `-2^2` parses as `(-2)^2`.

use std::fmt;

use crate::prover::Expr;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Comparison operator of an inequality to prove.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Gt,
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmpOp::Lt => write!(f, "<"),
            CmpOp::Gt => write!(f, ">"),
        }
    }
}

pub fn parse_expr(input: &str) -> Result<Expr, ParseError> {
    let mut parser = Parser::new(input);
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.bytes.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

/// Splits `lhs (<|>) rhs` at the single comparison operator and parses both
/// sides. The operators never occur inside expressions, so a plain scan
/// suffices.
pub fn parse_inequality(input: &str) -> Result<(Expr, CmpOp, Expr), ParseError> {
    let mut found = None;
    for (i, c) in input.char_indices() {
        if c == '<' || c == '>' {
            if found.is_some() {
                return Err(ParseError {
                    position: i,
                    message: "more than one comparison operator".into(),
                });
            }
            found = Some((i, c));
        }
    }
    let Some((at, c)) = found else {
        return Err(ParseError {
            position: input.len(),
            message: "expected `<` or `>` between two expressions".into(),
        });
    };
    let op = if c == '<' { CmpOp::Lt } else { CmpOp::Gt };
    let lhs = parse_expr(&input[..at])?;
    let rhs = parse_expr(&input[at + 1..]).map_err(|mut e| {
        e.position += at + 1;
        e
    })?;
    Ok((lhs, op, rhs))
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str) -> Self {
        Parser {
            bytes: input.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Some(b'/') => {
                    self.pos += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.unsigned_int()?;
            let n: u32 = n
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), n));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.base()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.rational_literal(),
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.identifier();
                match name.as_str() {
                    "pi" => Ok(Expr::Pi),
                    "e" => Ok(Expr::E),
                    "sin" | "cos" | "atan" | "exp" | "ln" | "sqrt" => {
                        self.expect(b'(')?;
                        let arg = Box::new(self.expr()?);
                        self.expect(b')')?;
                        Ok(match name.as_str() {
                            "sin" => Expr::Sin(arg),
                            "cos" => Expr::Cos(arg),
                            "atan" => Expr::Atan(arg),
                            "exp" => Expr::Exp(arg),
                            "ln" => Expr::Ln(arg),
                            _ => Expr::Sqrt(arg),
                        })
                    }
                    other => Err(ParseError {
                        position: self.pos - other.len(),
                        message: format!("unknown name `{other}`"),
                    }),
                }
            }
            Some(c) => Err(self.error(format!("unexpected `{}`", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn identifier(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn unsigned_int(&mut self) -> Result<String, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    /// digits, digits.digits, or digits/digits — one literal token group.
    fn rational_literal(&mut self) -> Result<Expr, ParseError> {
        let start_pos = self.pos;
        let int_part = self.unsigned_int()?;
        match self.bytes.get(self.pos).copied() {
            Some(b'.') => {
                self.pos += 1;
                let frac_start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                if frac_start == self.pos {
                    return Err(self.error("expected digits after decimal point"));
                }
                let text = String::from_utf8_lossy(&self.bytes[start_pos..self.pos]).into_owned();
                let q = Rational::parse_literal(&text).map_err(|e| ParseError {
                    position: start_pos,
                    message: e.to_string(),
                })?;
                Ok(Expr::Lit(q))
            }
            // a slash followed by digits makes one rational literal; a
            // slash followed by anything else is left for `term` to read
            // as division
            Some(b'/') if matches!(self.bytes.get(self.pos + 1), Some(d) if d.is_ascii_digit()) => {
                self.pos += 1;
                let denom = self.unsigned_int()?;
                let q = Rational::parse_literal(&format!("{int_part}/{denom}")).map_err(|e| {
                    ParseError {
                        position: start_pos,
                        message: e.to_string(),
                    }
                })?;
                Ok(Expr::Lit(q))
            }
            _ => {
                let q = Rational::parse_literal(&int_part).map_err(|e| ParseError {
                    position: start_pos,
                    message: e.to_string(),
                })?;
                Ok(Expr::Lit(q))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(n: i64, d: i64) -> Expr {
        Expr::Lit(Rational::ratio(n, d))
    }

    #[test]
    fn literals() {
        assert_eq!(parse_expr("355/113").unwrap(), lit(355, 113));
        assert_eq!(parse_expr("3.14159").unwrap(), lit(314159, 100000));
        assert_eq!(parse_expr("42").unwrap(), lit(42, 1));
        assert_eq!(parse_expr("-7").unwrap(), Expr::Neg(Box::new(lit(7, 1))));
        assert_eq!(parse_expr(" 2/4 ").unwrap(), lit(1, 2));
    }

    #[test]
    fn precedence_and_associativity() {
        // 1 + 2*3 = 7, not 9
        let e = parse_expr("1+2*3").unwrap();
        assert_eq!(
            e,
            Expr::Add(
                Box::new(lit(1, 1)),
                Box::new(Expr::Mul(Box::new(lit(2, 1)), Box::new(lit(3, 1))))
            )
        );
        // 2*3^2: the exponent binds to the factor
        let e = parse_expr("2*3^2").unwrap();
        assert_eq!(
            e,
            Expr::Mul(
                Box::new(lit(2, 1)),
                Box::new(Expr::Pow(Box::new(lit(3, 1)), 2))
            )
        );
        // left-associative subtraction: 1 - 2 - 3 = (1 - 2) - 3
        let e = parse_expr("1-2-3").unwrap();
        assert_eq!(
            e,
            Expr::Sub(
                Box::new(Expr::Sub(Box::new(lit(1, 1)), Box::new(lit(2, 1)))),
                Box::new(lit(3, 1))
            )
        );
    }

    #[test]
    fn literal_slash_vs_division() {
        // pi/2 is division (pi is not a digit), 1/2 is a literal
        assert_eq!(
            parse_expr("pi/2").unwrap(),
            Expr::Div(Box::new(Expr::Pi), Box::new(lit(2, 1)))
        );
        assert_eq!(parse_expr("1/2").unwrap(), lit(1, 2));
        // 1/2/4 = literal 1/2 divided by 4
        assert_eq!(
            parse_expr("1/2/4").unwrap(),
            Expr::Div(Box::new(lit(1, 2)), Box::new(lit(4, 1)))
        );
        // a zero denominator in a literal is a parse error with a position
        let err = parse_expr("1 + 1/0").unwrap_err();
        assert_eq!(err.position, 4);
    }

    #[test]
    fn functions_and_constants() {
        let e = parse_expr("sin((e+1)^3)").unwrap();
        assert_eq!(
            e,
            Expr::Sin(Box::new(Expr::Pow(
                Box::new(Expr::Add(Box::new(Expr::E), Box::new(lit(1, 1)))),
                3
            )))
        );
        assert!(parse_expr("sqrt(e/pi)").is_ok());
        assert!(parse_expr("ln(exp(1))").is_ok());
    }

    #[test]
    fn unary_minus_binds_before_exponent() {
        let e = parse_expr("-2^2").unwrap();
        assert_eq!(
            e,
            Expr::Pow(Box::new(Expr::Neg(Box::new(lit(2, 1)))), 2)
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_expr("1 + ").unwrap_err();
        assert_eq!(err.position, 4);
        let err = parse_expr("sin 1").unwrap_err();
        assert_eq!(err.position, 4);
        let err = parse_expr("(1+2").unwrap_err();
        assert_eq!(err.position, 4);
        let err = parse_expr("bogus(1)").unwrap_err();
        assert_eq!(err.position, 0);
        let err = parse_expr("1+2)").unwrap_err();
        assert_eq!(err.position, 3);
    }

    #[test]
    fn inequalities() {
        let (lhs, op, rhs) = parse_inequality("pi < 355/113").unwrap();
        assert_eq!(lhs, Expr::Pi);
        assert_eq!(op, CmpOp::Lt);
        assert_eq!(rhs, lit(355, 113));
        let (_, op, _) = parse_inequality("4 > pi").unwrap();
        assert_eq!(op, CmpOp::Gt);
        assert!(parse_inequality("1 + 2").is_err());
        assert!(parse_inequality("1 < 2 < 3").is_err());
    }
}
