//! Recursive-descent parser for the concrete expression syntax.
//!
//! Precedence, loosest first: `|`, `\`, `&`, `.`, then postfix `+`, `*`, `^k`.
//! All binary operators associate to the left.

use super::Expr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {pos}: {message}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

const KEYWORDS: &[&str] = &[
    "id", "di", "E", "A", "conv", "pi1", "pi2", "copi1", "copi2", "pi", "copi",
];

/// Parses an expression. `E` is rejected because no alphabet is declared.
pub fn parse(text: &str) -> Result<Expr, ParseError> {
    Parser::new(text, None)?.run()
}

/// Parses an expression, expanding `E` to the union of `alphabet`.
pub fn parse_in<S: AsRef<str>>(text: &str, alphabet: &[S]) -> Result<Expr, ParseError> {
    let alphabet: Vec<String> = alphabet.iter().map(|s| s.as_ref().to_string()).collect();
    Parser::new(text, Some(alphabet))?.run()
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = text[start..i].parse().map_err(|_| ParseError {
                pos: start,
                message: "integer too large".into(),
            })?;
            out.push((Tok::Int(n), start));
        } else if "|\\&.+*^()-".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(ParseError {
                pos: i,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    alphabet: Option<Vec<String>>,
}

impl Parser {
    fn new(text: &str, alphabet: Option<Vec<String>>) -> Result<Parser, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            alphabet,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn run(mut self) -> Result<Expr, ParseError> {
        let e = self.union()?;
        match self.peek() {
            Tok::End => Ok(e),
            Tok::Sym(')') => self.err("unbalanced `)`"),
            _ => self.err("unexpected trailing input"),
        }
    }

    fn union(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.diff()?;
        while self.eat('|') {
            e = Expr::union(e, self.diff()?);
        }
        Ok(e)
    }

    fn diff(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.inter()?;
        while self.eat('\\') {
            e = Expr::difference(e, self.inter()?);
        }
        Ok(e)
    }

    fn inter(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.comp()?;
        while self.eat('&') {
            e = Expr::intersect(e, self.comp()?);
        }
        Ok(e)
    }

    fn comp(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.post()?;
        while self.eat('.') {
            e = Expr::compose(e, self.post()?);
        }
        Ok(e)
    }

    fn post(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.atom()?;
        loop {
            if self.eat('+') {
                e = Expr::plus(e);
            } else if self.eat('*') {
                e = Expr::star(e);
            } else if self.eat('^') {
                if *self.peek() == Tok::Sym('-') {
                    return self.err("negative exponent");
                }
                match self.bump() {
                    Tok::Int(k) => {
                        let k = usize::try_from(k).map_err(|_| ParseError {
                            pos: self.pos(),
                            message: "exponent too large".into(),
                        })?;
                        e = Expr::power(e, k);
                    }
                    _ => return self.err("expected exponent after `^`"),
                }
            } else {
                return Ok(e);
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos();
        match self.bump() {
            Tok::Int(0) => Ok(Expr::Empty),
            Tok::Int(_) => Err(ParseError {
                pos: start,
                message: "only `0` is a numeric atom".into(),
            }),
            Tok::Sym('(') => {
                let e = self.union()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) => self.ident(name, start),
            Tok::End => Err(ParseError {
                pos: start,
                message: "unexpected end of input".into(),
            }),
            Tok::Sym(c) => Err(ParseError {
                pos: start,
                message: format!("unexpected `{c}`"),
            }),
        }
    }

    fn ident(&mut self, name: String, start: usize) -> Result<Expr, ParseError> {
        let wrap: Option<fn(Expr) -> Expr> = match name.as_str() {
            "conv" => Some(Expr::converse),
            "pi1" => Some(Expr::pi1),
            "pi2" => Some(Expr::pi2),
            "copi1" => Some(Expr::copi1),
            "copi2" => Some(Expr::copi2),
            _ => None,
        };
        if let Some(wrap) = wrap {
            self.expect('(')?;
            let inner = self.union()?;
            self.expect(')')?;
            return Ok(wrap(inner));
        }
        match name.as_str() {
            "id" => Ok(Expr::Identity),
            "di" => Ok(Expr::Diversity),
            "A" => Ok(Expr::union(Expr::Identity, Expr::Diversity)),
            "E" => match &self.alphabet {
                Some(a) if !a.is_empty() => Ok(Expr::any_label(a)),
                _ => Err(ParseError {
                    pos: start,
                    message: "`E` needs a declared, non-empty alphabet".into(),
                }),
            },
            "pi" | "copi" => Err(ParseError {
                pos: start,
                message: format!("unknown keyword `{name}`; write `{name}1` or `{name}2`"),
            }),
            _ if *self.peek() == Tok::Sym('(') => Err(ParseError {
                pos: start,
                message: format!("unknown keyword `{name}`"),
            }),
            _ => {
                debug_assert!(!KEYWORDS.contains(&name.as_str()));
                Ok(Expr::Label(name))
            }
        }
    }
}
