//! Recursive-descent parser for the expression language.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | power
//! power  := atom ("^" factor)?
//! atom   := number | "x" | "pi" | "e" | ident "(" expr ")" | "(" expr ")"
//! ```
//!
//! `^` is right-associative and binds tighter than unary minus, so `-x^2`
//! is `-(x^2)` and `2^-x` is `2^(-x)`.

use std::f64::consts;
use std::fmt;

use thiserror::Error;

use super::ast::{BinaryOp, Expression, Node, UnaryOp};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,

    #[error("syntax error at offset {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        offset: usize,
        expected: Vec<String>,
        found: String,
    },

    #[error("unknown identifier `{name}` at offset {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Empty => None,
            ParseError::Syntax { offset, .. } | ParseError::UnknownIdentifier { offset, .. } => {
                Some(*offset)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Number(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Number(v) => write!(f, "number {v}"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => f.write_str("\"+\""),
            Tok::Minus => f.write_str("\"-\""),
            Tok::Star => f.write_str("\"*\""),
            Tok::Slash => f.write_str("\"/\""),
            Tok::Caret => f.write_str("\"^\""),
            Tok::LParen => f.write_str("\"(\""),
            Tok::RParen => f.write_str("\")\""),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Self {
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

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.pos - start
    }

    /// Returns the token and the byte offset where it starts.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.bytes.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let single = match c {
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = single {
            self.pos += 1;
            return Ok((tok, start));
        }
        if c.is_ascii_digit() {
            return self.number(start);
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < self.bytes.len()
                && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(ParseError::Syntax {
            offset: start,
            expected: vec!["number".into(), "identifier".into(), "operator".into()],
            found: format!("character {ch:?}"),
        })
    }

    fn number(&mut self, start: usize) -> Result<(Tok, usize), ParseError> {
        self.digits();
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            if self.digits() == 0 {
                return Err(ParseError::Syntax {
                    offset: self.pos,
                    expected: vec!["digit".into()],
                    found: self.describe_here(),
                });
            }
        }
        if matches!(self.bytes.get(self.pos), Some(b'e' | b'E')) {
            // Only an exponent when digits follow; otherwise `e` is left for
            // the next token.
            let save = self.pos;
            self.pos += 1;
            if matches!(self.bytes.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                self.pos = save;
            }
        }
        let text = &self.src[start..self.pos];
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok((Tok::Number(v), start)),
            _ => Err(ParseError::Syntax {
                offset: start,
                expected: vec!["finite numeric literal".into()],
                found: format!("`{text}`"),
            }),
        }
    }

    fn describe_here(&self) -> String {
        match self.src[self.pos..].chars().next() {
            Some(c) => format!("character {c:?}"),
            None => "end of input".into(),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, ParseError> {
        let mut lexer = Lexer::new(src);
        let (tok, at) = lexer.next()?;
        Ok(Self { lexer, tok, at })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, at) = self.lexer.next()?;
        self.tok = tok;
        self.at = at;
        Ok(())
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            offset: self.at,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.tok.to_string(),
        }
    }

    fn expect(&mut self, tok: Tok, spelled: &str) -> Result<(), ParseError> {
        if self.tok == tok {
            self.bump()
        } else {
            Err(self.unexpected(&[spelled]))
        }
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.tok {
                Tok::Plus => BinaryOp::Add,
                Tok::Minus => BinaryOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.term()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            let op = match self.tok {
                Tok::Star => BinaryOp::Mul,
                Tok::Slash => BinaryOp::Div,
                _ => return Ok(lhs),
            };
            self.bump()?;
            let rhs = self.factor()?;
            lhs = Node::binary(op, lhs, rhs);
        }
    }

    fn factor(&mut self) -> Result<Node, ParseError> {
        if self.tok == Tok::Minus {
            self.bump()?;
            let inner = self.factor()?;
            return Ok(Node::unary(UnaryOp::Neg, inner));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if self.tok == Tok::Caret {
            self.bump()?;
            let exponent = self.factor()?;
            return Ok(Node::binary(BinaryOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        match self.tok.clone() {
            Tok::Number(v) => {
                self.bump()?;
                Ok(Node::Constant(v))
            }
            Tok::LParen => {
                self.bump()?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "\")\"")?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                let offset = self.at;
                match name.as_str() {
                    "x" => {
                        self.bump()?;
                        Ok(Node::Variable)
                    }
                    "pi" => {
                        self.bump()?;
                        Ok(Node::Constant(consts::PI))
                    }
                    "e" => {
                        self.bump()?;
                        Ok(Node::Constant(consts::E))
                    }
                    _ => {
                        let op = UnaryOp::from_name(&name)
                            .ok_or(ParseError::UnknownIdentifier { name, offset })?;
                        self.bump()?;
                        self.expect(Tok::LParen, "\"(\"")?;
                        let arg = self.expr()?;
                        self.expect(Tok::RParen, "\")\"")?;
                        Ok(Node::unary(op, arg))
                    }
                }
            }
            _ => Err(self.unexpected(&["number", "\"x\"", "function", "\"(\"", "\"-\""])),
        }
    }
}

/// Parse expression text into a tree.
pub fn parse(source: &str) -> Result<Expression, ParseError> {
    if source.trim().is_empty() {
        return Err(ParseError::Empty);
    }
    let mut parser = Parser::new(source)?;
    let root = parser.expr()?;
    if parser.tok != Tok::End {
        return Err(parser.unexpected(&["operator", "end of input"]));
    }
    Ok(Expression::new(root))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Node {
        parse(s).unwrap().into_root()
    }

    #[test]
    fn square_plus_one_shape() {
        let expected = Node::binary(
            BinaryOp::Add,
            Node::binary(BinaryOp::Pow, Node::Variable, Node::Constant(2.0)),
            Node::Constant(1.0),
        );
        assert_eq!(p("x^2 + 1"), expected);
    }

    #[test]
    fn abs_call() {
        assert_eq!(p("abs(x)"), Node::unary(UnaryOp::Abs, Node::Variable));
    }

    #[test]
    fn unbalanced_paren_reports_offset() {
        match parse("2*(x") {
            Err(ParseError::Syntax {
                offset, expected, ..
            }) => {
                assert_eq!(offset, 4);
                assert_eq!(expected, vec!["\")\"".to_string()]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_and_unknown() {
        assert_eq!(parse("   "), Err(ParseError::Empty));
        assert_eq!(
            parse("y + 1"),
            Err(ParseError::UnknownIdentifier {
                name: "y".into(),
                offset: 0
            })
        );
        assert!(matches!(
            parse("2 * tan(x)"),
            Err(ParseError::UnknownIdentifier { offset: 4, .. })
        ));
    }

    #[test]
    fn precedence_and_associativity() {
        // -x^2 == -(x^2)
        assert_eq!(
            p("-x^2"),
            Node::unary(
                UnaryOp::Neg,
                Node::binary(BinaryOp::Pow, Node::Variable, Node::Constant(2.0))
            )
        );
        // 2^3^2 == 2^(3^2)
        assert_eq!(
            p("2^3^2"),
            Node::binary(
                BinaryOp::Pow,
                Node::Constant(2.0),
                Node::binary(BinaryOp::Pow, Node::Constant(3.0), Node::Constant(2.0))
            )
        );
        // 1-2-3 == (1-2)-3
        assert_eq!(
            p("1-2-3"),
            Node::binary(
                BinaryOp::Sub,
                Node::binary(BinaryOp::Sub, Node::Constant(1.0), Node::Constant(2.0)),
                Node::Constant(3.0)
            )
        );
        // 8/4*2 == (8/4)*2
        assert_eq!(
            p("8/4*2"),
            Node::binary(
                BinaryOp::Mul,
                Node::binary(BinaryOp::Div, Node::Constant(8.0), Node::Constant(4.0)),
                Node::Constant(2.0)
            )
        );
        assert_eq!(
            p("2^-x"),
            Node::binary(
                BinaryOp::Pow,
                Node::Constant(2.0),
                Node::unary(UnaryOp::Neg, Node::Variable)
            )
        );
    }

    #[test]
    fn literals_and_constants() {
        assert_eq!(p("1.5e-3"), Node::Constant(1.5e-3));
        assert_eq!(p("2E+2"), Node::Constant(200.0));
        assert_eq!(p("pi"), Node::Constant(consts::PI));
        assert_eq!(p(" e "), Node::Constant(consts::E));
        assert!(parse("1.").is_err());
        assert!(parse("1e999").is_err());
        // `2e` is the literal 2 followed by the constant e: no implicit product.
        assert!(matches!(parse("2e"), Err(ParseError::Syntax { offset: 1, .. })));
    }

    #[test]
    fn trailing_garbage() {
        assert!(matches!(parse("x )"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("x $"), Err(ParseError::Syntax { offset: 2, .. })));
        assert!(matches!(parse("sin x"), Err(ParseError::Syntax { offset: 4, .. })));
    }

    #[test]
    fn canonical_round_trip() {
        for src in ["x^2 + 1", "-x^2", "sqrt(abs(x - 0.3)) / (1 + exp(-2*x))", "2^3^2", "-(-x)"] {
            let e = parse(src).unwrap();
            assert_eq!(parse(&e.canonical()).unwrap(), e, "{src}");
        }
    }
}
