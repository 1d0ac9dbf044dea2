//! Presentation files:
//!
//! ```text
//! provenance "where the relators come from";   # optional
//! gens a, b, u, j;
//! rels (a*b)^3*j^-1, b^2 = j, [a, u], j^2;
//! ```
//!
//! Words are products of `x`, `x^k`, `(w)^k` and `[x, y] = x^-1 y^-1 x y`,
//! joined by `*` or whitespace; `lhs = rhs` means `lhs * rhs^-1`; `1` is the
//! empty word; `#` starts a comment.

use super::presentation::Presentation;
use super::word::{self, Word};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let adv = |i: &mut usize, n: usize, line: &mut usize, col: &mut usize| {
            for k in 0..n {
                if chars[*i + k] == '\n' {
                    *line += 1;
                    *col = 1;
                } else {
                    *col += 1;
                }
            }
            *i += n;
        };
        if c.is_whitespace() {
            adv(&mut i, 1, &mut line, &mut col);
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                adv(&mut i, 1, &mut line, &mut col);
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            let mut n = 0;
            while s + n < chars.len() && (chars[s + n].is_ascii_alphanumeric() || chars[s + n] == '_') {
                n += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[s..s + n].iter().collect()), line: l0, col: c0 });
            adv(&mut i, n, &mut line, &mut col);
        } else if c.is_ascii_digit() {
            let s = i;
            let mut n = 0;
            while s + n < chars.len() && chars[s + n].is_ascii_digit() {
                n += 1;
            }
            let lit: String = chars[s..s + n].iter().collect();
            let v = lit.parse::<i64>().map_err(|_| err(l0, c0, "integer too large"))?;
            out.push(Token { tok: Tok::Int(v), line: l0, col: c0 });
            adv(&mut i, n, &mut line, &mut col);
        } else if c == '"' {
            let mut n = 1;
            while i + n < chars.len() && chars[i + n] != '"' {
                n += 1;
            }
            if i + n >= chars.len() {
                return Err(err(l0, c0, "unterminated string"));
            }
            out.push(Token { tok: Tok::Str(chars[i + 1..i + n].iter().collect()), line: l0, col: c0 });
            adv(&mut i, n + 1, &mut line, &mut col);
        } else if "()[],;*^=-".contains(c) {
            out.push(Token { tok: Tok::Sym(c), line: l0, col: c0 });
            adv(&mut i, 1, &mut line, &mut col);
        } else {
            return Err(err(l0, c0, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    gens: Vec<String>,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, msg))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(format!("expected '{c}'"))
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('[')) | Some(Tok::Int(1)))
    }

    fn word(&mut self) -> Result<Word> {
        if !self.starts_factor() {
            return self.fail("expected a word");
        }
        let mut w = self.factor()?;
        loop {
            if self.eat('*') {
                let f = self.factor()?;
                w.extend(f);
            } else if self.starts_factor() {
                let f = self.factor()?;
                w.extend(f);
            } else {
                break;
            }
        }
        Ok(word::free_reduce(&w))
    }

    fn factor(&mut self) -> Result<Word> {
        let mut base = self.primary()?;
        while self.eat('^') {
            let neg = self.eat('-');
            let k = match self.peek() {
                Some(Tok::Int(k)) => *k,
                _ => return self.fail("expected an exponent"),
            };
            self.pos += 1;
            base = word::power(&base, if neg { -k } else { k });
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Word> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                let Some(k) = self.gens.iter().position(|g| *g == name) else {
                    return self.fail(format!("unknown generator {name:?}"));
                };
                self.pos += 1;
                Ok(vec![word::gen(k)])
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(vec![])
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let x = self.word()?;
                self.expect(',')?;
                let y = self.word()?;
                self.expect(']')?;
                Ok(word::commutator(&x, &y))
            }
            _ => self.fail("expected a generator, '(' or '['"),
        }
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let toks = tokenize(text)?;
    let end = toks.last().map(|t| (t.line, t.col + 1)).unwrap_or((1, 1));
    let mut p = Parser { toks, pos: 0, gens: Vec::new(), end };
    let mut rels: Vec<Word> = Vec::new();
    let mut provenance = None;
    let mut seen_gens = false;
    while p.peek().is_some() {
        let kw = match p.peek() {
            Some(Tok::Ident(k)) => k.clone(),
            _ => return p.fail("expected 'gens', 'rels' or 'provenance'"),
        };
        p.pos += 1;
        match kw.as_str() {
            "gens" => {
                if seen_gens {
                    return p.fail("duplicate gens statement");
                }
                seen_gens = true;
                if !p.eat(';') {
                    loop {
                        match p.peek().cloned() {
                            Some(Tok::Ident(n)) => {
                                if p.gens.contains(&n) {
                                    return p.fail(format!("duplicate generator {n:?}"));
                                }
                                p.gens.push(n);
                                p.pos += 1;
                            }
                            _ => return p.fail("expected a generator name"),
                        }
                        if p.eat(';') {
                            break;
                        }
                        p.expect(',')?;
                    }
                }
            }
            "rels" => {
                if !seen_gens {
                    return p.fail("rels before gens");
                }
                if !p.eat(';') {
                    loop {
                        let lhs = p.word()?;
                        let r = if p.eat('=') {
                            let rhs = p.word()?;
                            word::concat(&lhs, &word::inverse(&rhs))
                        } else {
                            lhs
                        };
                        rels.push(r);
                        if p.eat(';') {
                            break;
                        }
                        p.expect(',')?;
                    }
                }
            }
            "provenance" => {
                match p.peek().cloned() {
                    Some(Tok::Str(s)) => provenance = Some(s),
                    _ => return p.fail("expected a quoted string"),
                }
                p.pos += 1;
                p.expect(';')?;
            }
            other => return p.fail(format!("unknown statement {other:?}")),
        }
    }
    if !seen_gens {
        return p.fail("missing gens statement");
    }
    let mut pres = Presentation::new(p.gens, rels)?;
    pres.provenance = provenance;
    Ok(pres)
}
