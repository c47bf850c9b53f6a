//! Recursive-descent parser for the ASCII formula grammar.
//!
//! Binding strength, tightest first: `!`, the unary temporal operators
//! `X WX F G`, then `U R` (right-assoc), `&`, `|`, `->` (right-assoc) and
//! `<->` (left-assoc). `#` starts a comment that runs to the end of the line.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use super::Formula;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    True,
    False,
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    Next,
    WeakNext,
    Until,
    Release,
    Eventually,
    Globally,
    LParen,
    RParen,
    Eof,
}

const KEYWORDS: &[(&str, Tok)] = &[
    ("true", Tok::True),
    ("false", Tok::False),
    ("X", Tok::Next),
    ("WX", Tok::WeakNext),
    ("U", Tok::Until),
    ("R", Tok::Release),
    ("F", Tok::Eventually),
    ("G", Tok::Globally),
];

pub(crate) fn is_keyword(s: &str) -> bool {
    KEYWORDS.iter().any(|(k, _)| *k == s)
}

struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn describe(tok: &Tok) -> String {
    use alloc::string::ToString;
    match tok {
        Tok::Ident(s) => alloc::format!("identifier `{s}`"),
        Tok::Eof => "end of input".to_string(),
        other => alloc::format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        let mut push = |tok: Tok, width: usize, i: &mut usize, column: &mut usize| {
            out.push(Token { tok, line: start.0, column: start.1 });
            *i += width;
            *column += width;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                column += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => push(Tok::LParen, 1, &mut i, &mut column),
            ')' => push(Tok::RParen, 1, &mut i, &mut column),
            '!' => push(Tok::Not, 1, &mut i, &mut column),
            '&' => push(Tok::And, 1, &mut i, &mut column),
            '|' => push(Tok::Or, 1, &mut i, &mut column),
            '-' if chars.get(i + 1) == Some(&'>') => push(Tok::Implies, 2, &mut i, &mut column),
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                push(Tok::Iff, 3, &mut i, &mut column)
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = KEYWORDS
                    .iter()
                    .find(|(k, _)| *k == word)
                    .map(|(_, t)| t.clone())
                    .unwrap_or(Tok::Ident(word));
                push(tok, j - i, &mut i, &mut column);
            }
            other => {
                return Err(ParseError {
                    line,
                    column,
                    message: alloc::format!("unknown token `{other}`"),
                })
            }
        }
    }
    out.push(Token { tok: Tok::Eof, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: String) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError { line: t.line, column: t.column, message }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.implies()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            lhs = Formula::Iff(Box::new(lhs), Box::new(self.implies()?));
        }
        Ok(lhs)
    }

    fn implies(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Implies {
            self.bump();
            return Ok(Formula::Implies(Box::new(lhs), Box::new(self.implies()?)));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::Or(Box::new(lhs), Box::new(self.and()?));
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.binary_temporal()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::And(Box::new(lhs), Box::new(self.binary_temporal()?));
        }
        Ok(lhs)
    }

    fn binary_temporal(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Until => {
                self.bump();
                Ok(Formula::Until(Box::new(lhs), Box::new(self.binary_temporal()?)))
            }
            Tok::Release => {
                self.bump();
                Ok(Formula::Release(Box::new(lhs), Box::new(self.binary_temporal()?)))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let wrap: fn(Box<Formula>) -> Formula = match self.peek() {
            Tok::Not => Formula::Not,
            Tok::Next => Formula::Next,
            Tok::WeakNext => Formula::WeakNext,
            Tok::Eventually => Formula::Eventually,
            Tok::Globally => Formula::Globally,
            _ => return self.atom(),
        };
        self.bump();
        Ok(wrap(Box::new(self.unary()?)))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Prop(name))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.iff()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(alloc::format!(
                        "expected `)`, found {}",
                        describe(self.peek())
                    )));
                }
                self.bump();
                Ok(inner)
            }
            other => Err(self.error(alloc::format!("expected operand, found {}", describe(&other)))),
        }
    }
}

/// Parses a formula from its textual form.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut parser = Parser { tokens: lex(text)?, pos: 0 };
    let f = parser.iff()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error(alloc::format!(
            "unexpected {} after formula",
            describe(parser.peek())
        )));
    }
    Ok(f)
}
