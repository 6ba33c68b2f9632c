//! Parser for the representation-expression DSL.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! expr := prod ("(+)" prod)*
//! prod := atom ("x" atom)*
//! atom := "sym" INT "(" FORMID ")" | "zeta" | "(" expr ")"
//! ```
//!
//! Form ids are the built-in holomorphic forms f12..f26 plus any loaded
//! Maass datasets (`maass:<id>`). All errors carry the byte offset of the
//! offending token.

use std::collections::BTreeSet;

use super::{FormId, RepExpr};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    IsobaricOp,
    Eof,
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, b'_' | b':' | b'.' | b'-')
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            text: text.as_bytes(),
            pos: 0,
        }
    }

    /// Next token and its starting byte offset.
    fn next(&mut self) -> Result<(Tok, usize)> {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= self.text.len() {
            return Ok((Tok::Eof, start));
        }
        match self.text[self.pos] {
            b'(' => {
                if self.text[self.pos..].starts_with(b"(+)") {
                    self.pos += 3;
                    Ok((Tok::IsobaricOp, start))
                } else {
                    self.pos += 1;
                    Ok((Tok::LParen, start))
                }
            }
            b')' => {
                self.pos += 1;
                Ok((Tok::RParen, start))
            }
            c if is_ident_char(c) => {
                while self.pos < self.text.len() && is_ident_char(self.text[self.pos]) {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.text[start..self.pos])
                    .expect("ident chars are ascii")
                    .to_string();
                Ok((Tok::Ident(s), start))
            }
            c => Err(Error::Parse {
                offset: start,
                msg: format!("unexpected character '{}'", c as char),
            }),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: (Tok, usize),
    maass_ids: &'a BTreeSet<String>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, maass_ids: &'a BTreeSet<String>) -> Result<Self> {
        let mut lexer = Lexer::new(text);
        let lookahead = lexer.next()?;
        Ok(Parser {
            lexer,
            lookahead,
            maass_ids,
        })
    }

    fn advance(&mut self) -> Result<(Tok, usize)> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.lookahead, next))
    }

    fn expr(&mut self) -> Result<RepExpr> {
        let mut acc = self.prod()?;
        while self.lookahead.0 == Tok::IsobaricOp {
            self.advance()?;
            acc = RepExpr::isobaric(acc, self.prod()?);
        }
        Ok(acc)
    }

    fn prod(&mut self) -> Result<RepExpr> {
        let mut acc = self.atom()?;
        while matches!(&self.lookahead.0, Tok::Ident(s) if s == "x") {
            self.advance()?;
            acc = RepExpr::tensor(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RepExpr> {
        let (tok, off) = self.advance()?;
        match tok {
            Tok::Ident(s) if s == "zeta" => Ok(RepExpr::Zeta),
            Tok::Ident(s) if s.starts_with("sym") => self.sym_atom(&s, off),
            Tok::LParen => {
                let inner = self.expr()?;
                let (tok, off) = self.advance()?;
                if tok != Tok::RParen {
                    return Err(Error::Parse {
                        offset: off,
                        msg: "expected ')'".to_string(),
                    });
                }
                Ok(inner)
            }
            Tok::Eof => Err(Error::Parse {
                offset: off,
                msg: "unexpected end of input, expected an atom".to_string(),
            }),
            _ => Err(Error::Parse {
                offset: off,
                msg: "expected 'sym<m>(<form>)', 'zeta' or '('".to_string(),
            }),
        }
    }

    fn sym_atom(&mut self, head: &str, off: usize) -> Result<RepExpr> {
        let rest = &head[3..];
        let m: u32 = if rest.is_empty() {
            // allow a detached power: "sym 2 (f12)"
            let (tok, noff) = self.advance()?;
            match tok {
                Tok::Ident(d) if d.bytes().all(|b| b.is_ascii_digit()) => {
                    d.parse().map_err(|_| Error::Parse {
                        offset: noff,
                        msg: "symmetric power out of range".to_string(),
                    })?
                }
                _ => {
                    return Err(Error::Parse {
                        offset: noff,
                        msg: "expected a nonnegative power after 'sym'".to_string(),
                    })
                }
            }
        } else if rest.bytes().all(|b| b.is_ascii_digit()) {
            rest.parse().map_err(|_| Error::Parse {
                offset: off + 3,
                msg: "symmetric power out of range".to_string(),
            })?
        } else if rest.starts_with('-') {
            return Err(Error::Parse {
                offset: off + 3,
                msg: "symmetric power must be nonnegative".to_string(),
            });
        } else {
            return Err(Error::Parse {
                offset: off,
                msg: format!("unknown form id '{head}'"),
            });
        };
        let (tok, poff) = self.advance()?;
        if tok != Tok::LParen {
            return Err(Error::Parse {
                offset: poff,
                msg: "expected '(' after symmetric power".to_string(),
            });
        }
        let (tok, foff) = self.advance()?;
        let name = match tok {
            Tok::Ident(s) => s,
            _ => {
                return Err(Error::Parse {
                    offset: foff,
                    msg: "expected a form id".to_string(),
                })
            }
        };
        let form = FormId::parse(&name, self.maass_ids).ok_or_else(|| Error::Parse {
            offset: foff,
            msg: format!("unknown form id '{name}'"),
        })?;
        let (tok, coff) = self.advance()?;
        if tok != Tok::RParen {
            return Err(Error::Parse {
                offset: coff,
                msg: "expected ')'".to_string(),
            });
        }
        Ok(RepExpr::sym(m, form))
    }
}

/// Parse a representation expression; `maass_ids` lists the loaded Maass
/// dataset ids that may appear as `maass:<id>`.
pub fn parse_rep(text: &str, maass_ids: &BTreeSet<String>) -> Result<RepExpr> {
    let mut p = Parser::new(text, maass_ids)?;
    let e = p.expr()?;
    let (tok, off) = p.advance()?;
    if tok != Tok::Eof {
        return Err(Error::Parse {
            offset: off,
            msg: "unexpected trailing input".to_string(),
        });
    }
    Ok(e)
}
