//! Boolean combinations of class flags, e.g. `Q4 & !Q3` or `Qh ∧ ¬(Q1 ∧ Q2)`.
//!
//! Grammar: `expr := term ('|' term)*`, `term := factor ('&' factor)*`,
//! `factor := '!' factor | '(' expr ')' | condition`. The operators also
//! accept `∨ || ∧ && ¬`. Condition names are those of [`ConditionId`].

use std::fmt;
use std::str::FromStr;

use crate::class::{ClassReport, ConditionId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    Is(ConditionId),
    Not(Box<Predicate>),
    And(Box<Predicate>, Box<Predicate>),
    Or(Box<Predicate>, Box<Predicate>),
}

impl Predicate {
    /// Not-applicable conditions count as false.
    pub fn eval(&self, report: &ClassReport) -> bool {
        match self {
            Predicate::Is(c) => report.holds(*c),
            Predicate::Not(p) => !p.eval(report),
            Predicate::And(a, b) => a.eval(report) && b.eval(report),
            Predicate::Or(a, b) => a.eval(report) || b.eval(report),
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::Is(c) => write!(f, "{c}"),
            Predicate::Not(p) => write!(f, "!{p}"),
            Predicate::And(a, b) => write!(f, "({a} & {b})"),
            Predicate::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Ident(String),
    Not,
    And,
    Or,
    Open,
    Close,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '!' | '¬' | '~' => {
                chars.next();
                tokens.push(Token::Not);
            }
            '&' | '∧' => {
                chars.next();
                if c == '&' && chars.peek() == Some(&'&') {
                    chars.next();
                }
                tokens.push(Token::And);
            }
            '|' | '∨' => {
                chars.next();
                if c == '|' && chars.peek() == Some(&'|') {
                    chars.next();
                }
                tokens.push(Token::Or);
            }
            '(' => {
                chars.next();
                tokens.push(Token::Open);
            }
            ')' => {
                chars.next();
                tokens.push(Token::Close);
            }
            c if c.is_alphanumeric() || c == '*' || c == '_' => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '*' || c == '_' {
                        ident.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(ident));
            }
            other => return Err(Error::Predicate(format!("unexpected character `{other}`"))),
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Predicate> {
        let mut lhs = self.term()?;
        while self.peek() == Some(&Token::Or) {
            self.bump();
            lhs = Predicate::Or(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Predicate> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(&Token::And) {
            self.bump();
            lhs = Predicate::And(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Predicate> {
        match self.bump() {
            Some(Token::Not) => Ok(Predicate::Not(Box::new(self.factor()?))),
            Some(Token::Open) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::Close) => Ok(inner),
                    _ => Err(Error::Predicate("missing `)`".into())),
                }
            }
            Some(Token::Ident(name)) => Ok(Predicate::Is(name.parse()?)),
            Some(t) => Err(Error::Predicate(format!("unexpected {t:?}"))),
            None => Err(Error::Predicate("unexpected end of input".into())),
        }
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser { tokens: tokenize(s)?, pos: 0 };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Predicate(format!("trailing input after `{p}`")));
        }
        Ok(p)
    }
}
