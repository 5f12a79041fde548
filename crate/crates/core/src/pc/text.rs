//! The `.pc` text format.
//!
//! ```text
//! # dihedral of order 8
//! pcgroup D8 {
//!   p = 2; n = 3;
//!   comm 2 1 = g3;
//! }
//! ```
//!
//! Generators are 1-based. Right sides are `1` or normal-form words
//! `g<k>^<e>*...` with increasing `k`. Omitted relations are trivial.

use std::fmt::Write as _;

use super::{PcError, PcPresentation};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PcTextError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] PcError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

fn lex(src: &str) -> Result<Lexer, PcTextError> {
    let mut toks = Vec::new();
    let mut end = (1, 1);
    for (li, line) in src.lines().enumerate() {
        let line_no = li + 1;
        let line = line.split('#').next().unwrap_or("");
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse().map_err(|_| PcTextError::Syntax {
                    line: line_no,
                    col,
                    msg: format!("number {s} too large"),
                })?;
                toks.push((Tok::Num(v), line_no, col));
            } else if c.is_alphanumeric() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || "_-+.()".contains(chars[i])) {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), line_no, col));
            } else if "{};=*^".contains(c) {
                toks.push((Tok::Sym(c), line_no, col));
                i += 1;
            } else {
                return Err(PcTextError::Syntax {
                    line: line_no,
                    col,
                    msg: format!("unexpected character '{c}'"),
                });
            }
        }
        end = (line_no, chars.len() + 1);
    }
    Ok(Lexer { toks, pos: 0, end })
}

impl Lexer {
    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map(|t| (t.1, t.2)).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PcTextError> {
        let (line, col) = self.here();
        Err(PcTextError::Syntax {
            line,
            col,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<(), PcTextError> {
        match self.peek() {
            Some(Tok::Sym(s)) if *s == c => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{c}'")),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), PcTextError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected '{kw}'")),
        }
    }

    fn number(&mut self) -> Result<u64, PcTextError> {
        match self.peek() {
            Some(Tok::Num(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err("expected a number"),
        }
    }

    /// 1-based generator index.
    fn index(&mut self, n: usize) -> Result<usize, PcTextError> {
        let v = self.number()?;
        if v == 0 || v as usize > n {
            self.pos -= 1;
            return self.err(format!("generator index {v} outside 1..={n}"));
        }
        Ok(v as usize - 1)
    }

    fn word(&mut self, n: usize) -> Result<Vec<(usize, u32)>, PcTextError> {
        if let Some(Tok::Num(1)) = self.peek() {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut out: Vec<(usize, u32)> = Vec::new();
        loop {
            let g = match self.peek() {
                Some(Tok::Ident(s)) if s.starts_with('g') => {
                    let Ok(k) = s[1..].parse::<usize>() else {
                        return self.err(format!("bad generator '{s}'"));
                    };
                    if k == 0 || k > n {
                        return self.err(format!("generator g{k} outside 1..={n}"));
                    }
                    k - 1
                }
                _ => return self.err("expected a generator g<k> or 1"),
            };
            if let Some(&(last, _)) = out.last() {
                if g <= last {
                    return self.err("word is not in normal form (indices must increase)");
                }
            }
            self.pos += 1;
            let mut e = 1u64;
            if self.peek() == Some(&Tok::Sym('^')) {
                self.pos += 1;
                e = self.number()?;
            }
            if e > u32::MAX as u64 {
                return self.err("exponent too large");
            }
            out.push((g, e as u32));
            if self.peek() == Some(&Tok::Sym('*')) {
                self.pos += 1;
            } else {
                return Ok(out);
            }
        }
    }
}

/// Parses one `pcgroup` block.
pub fn parse_pc(src: &str) -> Result<PcPresentation, PcTextError> {
    let mut lx = lex(src)?;
    lx.expect_keyword("pcgroup")?;
    let name = match lx.next() {
        Some(Tok::Ident(s)) => s,
        Some(Tok::Num(v)) => v.to_string(),
        _ => {
            lx.pos -= 1;
            return lx.err("expected a group name");
        }
    };
    lx.expect_sym('{')?;
    lx.expect_keyword("p")?;
    lx.expect_sym('=')?;
    let p = lx.number()?;
    lx.expect_sym(';')?;
    lx.expect_keyword("n")?;
    lx.expect_sym('=')?;
    let n = lx.number()? as usize;
    lx.expect_sym(';')?;
    let mut b = PcPresentation::builder(p, n).name(name);
    loop {
        match lx.peek() {
            Some(Tok::Sym('}')) => {
                lx.pos += 1;
                break;
            }
            Some(Tok::Ident(kw)) if kw == "pow" => {
                lx.pos += 1;
                let i = lx.index(n)?;
                lx.expect_sym('=')?;
                b = b.pow(i, &lx.word(n)?);
            }
            Some(Tok::Ident(kw)) if kw == "comm" => {
                lx.pos += 1;
                let j = lx.index(n)?;
                let i = lx.index(n)?;
                if j <= i {
                    lx.pos -= 1;
                    return lx.err("comm j i needs j > i");
                }
                lx.expect_sym('=')?;
                b = b.comm(j, i, &lx.word(n)?);
            }
            _ => return lx.err("expected 'pow', 'comm' or '}'"),
        }
        lx.expect_sym(';')?;
    }
    if lx.peek().is_some() {
        return lx.err("trailing input after '}'");
    }
    Ok(b.build()?)
}

fn word_text(v: &[u32]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(k, &e)| {
            if e == 1 {
                format!("g{}", k + 1)
            } else {
                format!("g{}^{}", k + 1, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Prints the presentation, omitting trivial relations.
pub fn print_pc(g: &PcPresentation) -> String {
    let name: String = g
        .name()
        .chars()
        .map(|c| {
            if c.is_alphanumeric() || "_-+.()".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    let name = if name.starts_with(|c: char| c.is_alphabetic()) {
        name
    } else {
        format!("G{name}")
    };
    let mut s = String::new();
    let _ = writeln!(s, "pcgroup {name} {{");
    let _ = writeln!(s, "  p = {}; n = {};", g.prime(), g.ngens());
    for i in 0..g.ngens() {
        let w = g.power_rhs(i);
        if w.iter().any(|&e| e != 0) {
            let _ = writeln!(s, "  pow {} = {};", i + 1, word_text(w));
        }
    }
    for j in 0..g.ngens() {
        for i in 0..j {
            let w = g.comm_rhs(j, i);
            if w.iter().any(|&e| e != 0) {
                let _ = writeln!(s, "  comm {} {} = {};", j + 1, i + 1, word_text(w));
            }
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_dihedral() {
        let src = "# D8\npcgroup D8 {\n  p = 2; n = 3;\n  comm 2 1 = g3;  # the only relation\n}\n";
        let g = parse_pc(src).unwrap();
        assert_eq!(g.name(), "D8");
        assert_eq!(g.comm_rhs(1, 0), &[0, 0, 1]);
        assert!(g.is_consistent());
        assert_eq!(parse_pc(&print_pc(&g)).unwrap().comm_rhs(1, 0), g.comm_rhs(1, 0));
    }

    #[test]
    fn whitespace_insensitive() {
        let g = parse_pc("pcgroup Z9{p=3;n=2;pow 1=g2;}").unwrap();
        assert_eq!(g.power_rhs(0), &[0, 1]);
        let h = parse_pc("pcgroup Z9 { p = 3 ; n = 2 ; pow 1 = g2^1 ; }").unwrap();
        assert_eq!(g.power_rhs(0), h.power_rhs(0));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_pc("pcgroup X {\n p = 3; n = 2;\n pow 1 = g2*g1;\n}").unwrap_err();
        assert!(matches!(e, PcTextError::Syntax { line: 3, .. }), "{e}");
        let e = parse_pc("pcgroup X { p = 3; n = 2; comm 1 2 = 1; }").unwrap_err();
        assert!(matches!(e, PcTextError::Syntax { line: 1, .. }));
        let e = parse_pc("pcgroup X { p = 4; n = 1; }").unwrap_err();
        assert_eq!(e, PcTextError::Invalid(PcError::NotPrime(4)));
        let e = parse_pc("pcgroup X { p = 3; n = 1; pow 1 = g1; }").unwrap_err();
        assert!(matches!(e, PcTextError::Syntax { .. } | PcTextError::Invalid(_)));
        assert!(parse_pc("pcgroup X { p = 3; n = 1; } extra").is_err());
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in prop::sample::select(vec![2u64, 3, 5]), n in 0usize..5, seed in any::<u64>()) {
            // random structurally valid relations; consistency is irrelevant here
            let mut state = seed;
            let mut next = || { state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (state >> 33) as u32 };
            let mut b = PcPresentation::builder(p, n).name("R");
            for i in 0..n {
                let w: Vec<(usize, u32)> = (i + 1..n).map(|k| (k, next() % p as u32)).filter(|&(_, e)| e != 0).collect();
                b = b.pow(i, &w);
                for j in i + 1..n {
                    let w: Vec<(usize, u32)> = (j + 1..n).map(|k| (k, next() % p as u32)).filter(|&(_, e)| e != 0).collect();
                    b = b.comm(j, i, &w);
                }
            }
            let g = b.build().unwrap();
            let h = parse_pc(&print_pc(&g)).unwrap();
            prop_assert_eq!(print_pc(&g), print_pc(&h));
            prop_assert_eq!(g.is_consistent(), h.is_consistent());
        }
    }
}
