//! Front end for the presentation language:
//!
//! ```text
//! presentation := '<' genlist '|' relatorlist '>'
//! genlist      := ident (',' ident)*
//! relatorlist  := ε | relator (',' relator)*
//! relator      := word ('=' word)?
//! word         := factor*
//! factor       := atom ('^' integer)?
//! atom         := ident | '1' | '(' word ')' | '[' word ',' word ']'
//! ```
//!
//! `[u,v]` is `u v u⁻¹ v⁻¹`, `u = v` is the relator `u v⁻¹`. Whitespace is
//! insignificant and `#` starts a comment running to the end of the line.

use std::collections::HashMap;

use super::{FreeWord, GroupPresentation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Lt,
    Gt,
    Bar,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Caret,
    Eq,
    Minus,
    Ident(String),
    Int(i64),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, column, message: message.into() })
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let single = match c {
            '<' | '⟨' => Some(Tok::Lt),
            '>' | '⟩' => Some(Tok::Gt),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Eq),
            '-' | '−' => Some(Tok::Minus),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: tl, column: tc });
            i += 1;
            col += 1;
            continue;
        }
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let v = s.parse::<i64>().or_else(|_| err(tl, tc, format!("integer `{s}` too large")))?;
            out.push(Token { tok: Tok::Int(v), line: tl, column: tc });
            col += i - start;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Ident(s), line: tl, column: tc });
            col += i - start;
        } else {
            return err(tl, tc, format!("unexpected character `{c}`"));
        }
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    gens: &'a HashMap<String, usize>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<Token> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            err(t.line, t.column, format!("expected {what}, found {}", describe(&t.tok)))
        }
    }

    fn word(&mut self) -> Result<FreeWord> {
        let mut w = FreeWord::identity();
        loop {
            match self.peek().tok {
                Tok::Ident(_) | Tok::Int(_) | Tok::LParen | Tok::LBracket => {
                    let f = self.factor()?;
                    w = w.mul(&f);
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<FreeWord> {
        let base = self.atom()?;
        if self.peek().tok == Tok::Caret {
            self.next();
            let negative = if self.peek().tok == Tok::Minus {
                self.next();
                true
            } else {
                false
            };
            let t = self.next();
            let Tok::Int(n) = t.tok else {
                return err(t.line, t.column, format!("expected integer exponent, found {}", describe(&t.tok)));
            };
            return Ok(base.pow(if negative { -n } else { n }));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FreeWord> {
        let t = self.next();
        match t.tok {
            Tok::Ident(ref name) => match self.gens.get(name) {
                Some(&i) => Ok(FreeWord::generator(i)),
                None => err(t.line, t.column, format!("unknown generator `{name}`")),
            },
            Tok::Int(1) => Ok(FreeWord::identity()),
            Tok::LParen => {
                let w = self.word()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(w)
            }
            Tok::LBracket => {
                let u = self.word()?;
                self.expect(Tok::Comma, "`,` inside commutator")?;
                let v = self.word()?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(FreeWord::commutator(&u, &v))
            }
            ref other => err(t.line, t.column, format!("expected a generator, found {}", describe(other))),
        }
    }

    fn relator(&mut self) -> Result<FreeWord> {
        let start = self.peek().clone();
        let start_pos = self.pos;
        let lhs = self.word()?;
        if self.pos == start_pos {
            return err(start.line, start.column, format!("expected a relator, found {}", describe(&start.tok)));
        }
        if self.peek().tok == Tok::Eq {
            self.next();
            let rhs = self.word()?;
            if self.peek().tok == Tok::Eq {
                let t = self.peek();
                return err(t.line, t.column, "chained `=` is not allowed");
            }
            return Ok(lhs.mul(&rhs.inverse()));
        }
        Ok(lhs)
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Int(n) => format!("`{n}`"),
        Tok::End => "end of input".into(),
        Tok::Lt => "`<`".into(),
        Tok::Gt => "`>`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Comma => "`,`".into(),
        Tok::LBracket => "`[`".into(),
        Tok::RBracket => "`]`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Caret => "`^`".into(),
        Tok::Eq => "`=`".into(),
        Tok::Minus => "`-`".into(),
    }
}

/// Parses a presentation; the result is freely reduced.
pub fn parse_presentation(text: &str) -> Result<GroupPresentation> {
    let toks = lex(text)?;
    let empty = HashMap::new();
    let mut p = Parser { toks, pos: 0, gens: &empty };
    p.expect(Tok::Lt, "`<`")?;

    let mut names = Vec::new();
    let mut gens = HashMap::new();
    if p.peek().tok == Tok::Bar {
        let t = p.peek();
        return err(t.line, t.column, "empty generator set");
    }
    loop {
        let t = p.next();
        let Tok::Ident(name) = t.tok else {
            return err(t.line, t.column, format!("expected generator name, found {}", describe(&t.tok)));
        };
        if gens.insert(name.clone(), names.len() + 1).is_some() {
            return err(t.line, t.column, format!("duplicate generator `{name}`"));
        }
        names.push(name);
        match p.peek().tok {
            Tok::Comma => {
                p.next();
            }
            _ => break,
        }
    }
    p.expect(Tok::Bar, "`|`")?;

    let mut parser = Parser { toks: p.toks, pos: p.pos, gens: &gens };
    let mut relators = Vec::new();
    if parser.peek().tok != Tok::Gt {
        loop {
            relators.push(parser.relator()?);
            match parser.peek().tok {
                Tok::Comma => {
                    parser.next();
                }
                _ => break,
            }
        }
    }
    parser.expect(Tok::Gt, "`,` or `>`")?;
    let t = parser.peek();
    if t.tok != Tok::End {
        return err(t.line, t.column, format!("trailing input {}", describe(&t.tok)));
    }
    GroupPresentation::new(names, relators, text.trim())
}

/// Parses a single word over the given generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<FreeWord> {
    let gens: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i + 1)).collect();
    let mut p = Parser { toks: lex(text)?, pos: 0, gens: &gens };
    let w = p.word()?;
    let t = p.peek();
    if t.tok != Tok::End {
        return err(t.line, t.column, format!("trailing input {}", describe(&t.tok)));
    }
    Ok(w)
}
