//! Parser for the `.grp` presentation language.
//!
//! ```text
//! gens a, b;
//! rels a^4 = b^4 = 1, a^-1*b*a = b^-1;
//! ```
//!
//! `*` is optional between factors, and a run of single-letter generators
//! such as `abc` is read as their product. `^` binds tighter than
//! juxtaposition. `[x, y, z]` is the left-normed commutator `[[x, y], z]`
//! with `[x, y] = x^-1 y^-1 x y`. A chain `u = v = w` yields the relators
//! `u v^-1` and `v w^-1`.

use super::{FpPresentation, Relator, Span};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}")]
pub struct FpParseError {
    pub line: usize,
    pub col: usize,
    pub kind: FpErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FpErrorKind {
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("unbalanced '{0}'")]
    Unbalanced(char),
    #[error("malformed exponent")]
    MalformedExponent,
    #[error("duplicate generator '{0}'")]
    DuplicateGenerator(String),
    #[error("{0}")]
    Syntax(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
    offset: usize,
}

fn lex(src: &str) -> Result<(Vec<Token>, (usize, usize)), FpParseError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (offset, c) = chars[i];
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let start_col = col;
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            col += i - start;
            let v = s.parse().map_err(|_| FpParseError {
                line,
                col: start_col,
                kind: FpErrorKind::MalformedExponent,
            })?;
            out.push(Token {
                tok: Tok::Num(v),
                line,
                col: start_col,
                offset,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            col += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().map(|&(_, c)| c).collect()),
                line,
                col: start_col,
                offset,
            });
        } else if "[](),;=*^-".contains(c) {
            out.push(Token {
                tok: Tok::Sym(c),
                line,
                col,
                offset,
            });
            col += 1;
            i += 1;
        } else {
            return Err(FpParseError {
                line,
                col,
                kind: FpErrorKind::Syntax(format!("unexpected character '{c}'")),
            });
        }
    }
    Ok((out, (line, col)))
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    names: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.offset).unwrap_or(self.src.len())
    }

    fn fail<T>(&self, kind: FpErrorKind) -> Result<T, FpParseError> {
        let (line, col) = self.here();
        Err(FpParseError { line, col, kind })
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, FpParseError> {
        self.fail(FpErrorKind::Syntax(msg.to_string()))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), FpParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.syntax(&format!("expected '{kw}'")),
        }
    }

    fn generator_list(&mut self) -> Result<(), FpParseError> {
        if self.eat(';') {
            return Ok(());
        }
        loop {
            match self.peek().cloned() {
                Some(Tok::Ident(s)) => {
                    if self.names.contains(&s) {
                        return self.fail(FpErrorKind::DuplicateGenerator(s));
                    }
                    self.names.push(s);
                    self.pos += 1;
                }
                _ => return self.syntax("expected a generator name"),
            }
            if self.eat(';') {
                return Ok(());
            }
            if !self.eat(',') {
                return self.syntax("expected ',' or ';'");
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, FpParseError> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let v = match self.peek() {
            Some(Tok::Num(v)) if *v <= i64::MAX as u64 => *v as i64,
            _ => return self.fail(FpErrorKind::MalformedExponent),
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return self.fail(FpErrorKind::Unbalanced('('));
        }
        Ok(if neg { -v } else { v })
    }

    /// Resolves an identifier to generator indices, splitting runs of
    /// single-letter names.
    fn resolve(&self, s: &str) -> Result<Vec<usize>, FpParseError> {
        if let Some(g) = self.names.iter().position(|n| n == s) {
            return Ok(vec![g]);
        }
        let mut out = Vec::new();
        for c in s.chars() {
            match self
                .names
                .iter()
                .position(|n| n.len() == c.len_utf8() && n.starts_with(c))
            {
                Some(g) => out.push(g),
                None => return self.fail(FpErrorKind::UnknownGenerator(s.to_string())),
            }
        }
        Ok(out)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::Num(_)) | Some(Tok::Sym('(')) | Some(Tok::Sym('['))
        )
    }

    fn expr(&mut self) -> Result<Word, FpParseError> {
        if !self.starts_factor() {
            return self.syntax("expected a word");
        }
        let mut w = self.factor()?;
        loop {
            // juxtaposition multiplies like `*`
            if self.eat('*') || self.starts_factor() {
                w = w.concat(&self.factor()?);
            } else {
                return Ok(w);
            }
        }
    }

    fn factor(&mut self) -> Result<Word, FpParseError> {
        let (line, col) = self.here();
        // a split identifier yields a prefix that the exponent does not touch
        let (prefix, base) = match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                let gens = self.resolve(&s)?;
                self.pos += 1;
                let (last, rest) = gens.split_last().expect("identifiers are nonempty");
                (Word(rest.iter().map(|&g| (g, 1)).collect()), Word::generator(*last))
            }
            Some(Tok::Num(1)) => {
                self.pos += 1;
                (Word::identity(), Word::identity())
            }
            Some(Tok::Num(_)) => return self.syntax("only 1 may appear as a literal"),
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let w = self.expr()?;
                if !self.eat(')') {
                    return Err(FpParseError {
                        line,
                        col,
                        kind: FpErrorKind::Unbalanced('('),
                    });
                }
                (Word::identity(), w)
            }
            Some(Tok::Sym('[')) => {
                self.pos += 1;
                let mut parts = vec![self.expr()?];
                while self.eat(',') {
                    parts.push(self.expr()?);
                }
                if !self.eat(']') {
                    return Err(FpParseError {
                        line,
                        col,
                        kind: FpErrorKind::Unbalanced('['),
                    });
                }
                if parts.len() < 2 {
                    return self.syntax("a commutator needs at least two entries");
                }
                (Word::identity(), Word::left_normed_commutator(&parts))
            }
            Some(Tok::Sym(')')) => return self.fail(FpErrorKind::Unbalanced(')')),
            Some(Tok::Sym(']')) => return self.fail(FpErrorKind::Unbalanced(']')),
            _ => return self.syntax("expected a generator, '1', '(' or '['"),
        };
        let mut w = base;
        while self.eat('^') {
            w = w.pow(self.exponent()?);
        }
        Ok(prefix.concat(&w))
    }

    fn relation(&mut self, out: &mut Vec<Relator>) -> Result<(), FpParseError> {
        let (line, col) = self.here();
        let start = self.offset();
        let mut sides = vec![self.expr()?];
        while self.eat('=') {
            sides.push(self.expr()?);
        }
        let end = self
            .toks
            .get(self.pos.wrapping_sub(1))
            .map(|t| t.offset + token_len(&t.tok))
            .unwrap_or(start);
        let span = Span {
            line,
            col,
            text: self.src[start..end].to_string(),
        };
        if sides.len() == 1 {
            out.push(Relator {
                word: sides.pop().expect("one side"),
                span,
            });
        } else {
            for pair in sides.windows(2) {
                let word = if pair[1].is_identity() {
                    pair[0].clone()
                } else {
                    pair[0].concat(&pair[1].inverse())
                };
                out.push(Relator {
                    word,
                    span: span.clone(),
                });
            }
        }
        Ok(())
    }
}

fn token_len(t: &Tok) -> usize {
    match t {
        Tok::Ident(s) => s.len(),
        Tok::Num(v) => v.to_string().len(),
        Tok::Sym(_) => 1,
    }
}

/// Parses `gens ...; rels ...;`.
pub fn parse_presentation(src: &str) -> Result<FpPresentation, FpParseError> {
    let (toks, end) = lex(src)?;
    let mut p = Parser {
        src,
        toks,
        pos: 0,
        end,
        names: Vec::new(),
    };
    p.keyword("gens")?;
    p.generator_list()?;
    p.keyword("rels")?;
    let mut relators = Vec::new();
    if !p.eat(';') {
        loop {
            p.relation(&mut relators)?;
            if p.eat(';') {
                break;
            }
            if !p.eat(',') {
                return match p.peek() {
                    Some(Tok::Sym(')')) => p.fail(FpErrorKind::Unbalanced(')')),
                    Some(Tok::Sym(']')) => p.fail(FpErrorKind::Unbalanced(']')),
                    Some(Tok::Sym('^')) => p.fail(FpErrorKind::MalformedExponent),
                    _ => p.syntax("expected ',' or ';'"),
                };
            }
        }
    }
    if p.peek().is_some() {
        return p.syntax("unexpected input after the relator list");
    }
    Ok(FpPresentation {
        generators: p.names,
        relators,
    })
}
