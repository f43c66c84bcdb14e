//! Shared token stream for the formula, term and theory grammars.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Star,
    Lolli,
    Arrow,
    Dot,
    Colon,
    Equals,
    LParen,
    RParen,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Star => "`*`".into(),
            Tok::Lolli => "`-o`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Equals => "`=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

/// Tokenize one logical line. `#` starts a comment running to the end of
/// the input.
pub(crate) fn lex(text: &str, line: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => {
                i += 1;
            }
            '(' => {
                out.push(Spanned {
                    tok: Tok::LParen,
                    line,
                    col,
                });
                i += 1;
            }
            ')' => {
                out.push(Spanned {
                    tok: Tok::RParen,
                    line,
                    col,
                });
                i += 1;
            }
            '*' => {
                out.push(Spanned {
                    tok: Tok::Star,
                    line,
                    col,
                });
                i += 1;
            }
            '.' => {
                out.push(Spanned {
                    tok: Tok::Dot,
                    line,
                    col,
                });
                i += 1;
            }
            ':' => {
                out.push(Spanned {
                    tok: Tok::Colon,
                    line,
                    col,
                });
                i += 1;
            }
            '=' => {
                out.push(Spanned {
                    tok: Tok::Equals,
                    line,
                    col,
                });
                i += 1;
            }
            '-' => match chars.get(i + 1) {
                Some('o') => {
                    out.push(Spanned {
                        tok: Tok::Lolli,
                        line,
                        col,
                    });
                    i += 2;
                }
                Some('>') => {
                    out.push(Spanned {
                        tok: Tok::Arrow,
                        line,
                        col,
                    });
                    i += 2;
                }
                _ => {
                    return Err(Error::Syntax {
                        line,
                        col,
                        msg: "expected `-o` or `->` after `-`".into(),
                    })
                }
            },
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                // trailing primes belong to the identifier: assoc', lunit', ...
                while i < chars.len() && chars[i] == '\'' {
                    i += 1;
                }
                let ident: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Ident(ident),
                    line,
                    col,
                });
            }
            other => {
                return Err(Error::Syntax {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

/// Cursor over a token slice with positioned error reporting.
pub(crate) struct Cursor<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(toks: &'a [Spanned], line: usize, end_col: usize) -> Self {
        Cursor {
            toks,
            pos: 0,
            line,
            end_col,
        }
    }

    pub(crate) fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    pub(crate) fn next(&mut self) -> Option<&Spanned> {
        let s = self.toks.get(self.pos);
        if s.is_some() {
            self.pos += 1;
        }
        s
    }

    pub(crate) fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, want: &Tok) -> Result<()> {
        if self.eat(want) {
            Ok(())
        } else {
            Err(self.error(format!("expected {}", want.describe())))
        }
    }

    pub(crate) fn error(&self, msg: String) -> Error {
        match self.toks.get(self.pos) {
            Some(s) => Error::Syntax {
                line: s.line,
                col: s.col,
                msg: format!("{msg}, found {}", s.tok.describe()),
            },
            None => Error::Syntax {
                line: self.line,
                col: self.end_col,
                msg: format!("{msg}, found end of input"),
            },
        }
    }

    pub(crate) fn expect_end(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.error("expected end of input".into()))
        }
    }
}
