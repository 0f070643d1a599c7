//! Text formats: polynomial expressions and ideal files.
//!
//! ```text
//! ring: x y z w t
//! char: 32003
//! ideal:
//! x^2
//! x*y - 3*z*w
//! ```

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::{MonomialOrder, Polynomial, Ring, RingRef, DEFAULT_CHARACTERISTIC};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(s: &str) -> std::result::Result<Lexer, (usize, String)> {
    let chars: Vec<char> = s.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' | '\r' => i += 1,
            '+' => {
                toks.push((Tok::Plus, col));
                i += 1
            }
            '-' => {
                toks.push((Tok::Minus, col));
                i += 1
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1
            }
            '^' => {
                toks.push((Tok::Caret, col));
                i += 1
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let v = text.parse::<u64>().map_err(|_| (col, format!("integer `{text}` too large")))?;
                toks.push((Tok::Num(v), col));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => return Err((col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(Lexer { toks })
}

struct Parser<'a> {
    ring: &'a RingRef,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

type PResult<T> = std::result::Result<T, (usize, String)>;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.1).unwrap_or(self.end_col)
    }

    fn expr(&mut self) -> PResult<Polynomial> {
        let mut acc = Polynomial::zero(self.ring);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    1
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { acc.combine(&t, 1) } else { acc.combine(&t, self.ring.field().neg(1)) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Polynomial> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.power()?;
            acc = acc.mul_unchecked(&f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<Polynomial> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let col = self.col();
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    if e > u16::MAX as u64 {
                        return Err((col, "exponent too large".into()));
                    }
                    return Ok(base.pow(e as u32));
                }
                _ => return Err((col, "expected an exponent".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> PResult<Polynomial> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                let p = self.ring.characteristic() as u64;
                Ok(Polynomial::constant(self.ring, (v % p) as i64))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Polynomial::var(self.ring, &name).map_err(|_| (col, format!("unknown variable `{name}`")))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err((self.col(), "expected `)`".into())),
                }
            }
            Some(t) => Err((col, format!("unexpected token {t:?}"))),
            None => Err((col, "unexpected end of input".into())),
        }
    }
}

fn parse_at(ring: &RingRef, s: &str, line: usize) -> Result<Polynomial> {
    let err = |(column, message): (usize, String)| Error::Parse { line, column, message };
    let lexer = lex(s).map_err(err)?;
    let mut p = Parser { ring, toks: lexer.toks, pos: 0, end_col: s.chars().count() + 1 };
    if p.toks.is_empty() {
        return Err(err((1, "empty expression".into())));
    }
    let out = p.expr().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(err((p.col(), "trailing input".into())));
    }
    Ok(out)
}

/// Parses a polynomial expression with `+ - * ^`, parentheses and integer
/// coefficients.
pub fn parse_polynomial(ring: &RingRef, s: &str) -> Result<Polynomial> {
    parse_at(ring, s, 1)
}

/// Parses several expressions at once.
pub fn parse_polynomials(ring: &RingRef, items: &[&str]) -> Result<Vec<Polynomial>> {
    items.iter().map(|s| parse_polynomial(ring, s)).collect()
}

/// Parses the ideal file format. `ring:` defaults to `x y z w`, `char:` to
/// 32003 and `order:` to grevlex; `#` starts a comment.
pub fn parse_ideal(text: &str) -> Result<Ideal> {
    let mut names: Option<Vec<String>> = None;
    let mut characteristic = DEFAULT_CHARACTERISTIC;
    let mut order = MonomialOrder::Grevlex;
    let mut gens_lines: Vec<(usize, String)> = Vec::new();
    let mut in_ideal = false;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if in_ideal {
            gens_lines.push((line, content.to_string()));
            continue;
        }
        let Some((key, value)) = content.split_once(':') else {
            return Err(Error::Parse { line, column: 1, message: "expected `key: value`".into() });
        };
        let value = value.trim();
        match key.trim() {
            "ring" => names = Some(value.split_whitespace().map(str::to_string).collect()),
            "char" => {
                characteristic = value
                    .parse::<u32>()
                    .map_err(|_| Error::Parse { line, column: key.len() + 2, message: format!("bad characteristic `{value}`") })?;
            }
            "order" => order = MonomialOrder::parse(value)?,
            "ideal" => {
                in_ideal = true;
                if !value.is_empty() {
                    gens_lines.push((line, value.to_string()));
                }
            }
            other => return Err(Error::Parse { line, column: 1, message: format!("unknown key `{other}`") }),
        }
    }
    let names = names.unwrap_or_else(|| ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect());
    let ring = Ring::with_names(&names, characteristic, order)?;
    let gens = gens_lines.iter().map(|(line, s)| parse_at(&ring, s, *line)).collect::<Result<Vec<_>>>()?;
    Ok(Ideal::new(&ring, gens))
}

/// Renders an ideal in the file format accepted by [`parse_ideal`].
pub fn format_ideal(ideal: &Ideal) -> String {
    let ring = ideal.ring();
    let mut out = String::new();
    out.push_str(&format!("ring: {}\n", ring.names().join(" ")));
    out.push_str(&format!("char: {}\n", ring.characteristic()));
    if ring.order() == MonomialOrder::Lex {
        out.push_str("order: lex\n");
    }
    out.push_str("ideal:\n");
    for g in ideal.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_double_line_file() {
        let text = "ring: x y z w\nchar: 32003\nideal:\nx^2\nx*y\ny^2\nx*w-y*z\n";
        let i = parse_ideal(text).unwrap();
        assert_eq!(i.generators().len(), 4);
        let again = parse_ideal(&format_ideal(&i)).unwrap();
        assert_eq!(format_ideal(&again), format_ideal(&i));
    }

    #[test]
    fn malformed_token_position() {
        let r = Ring::projective(32003);
        match parse_polynomial(&r, "x*^2") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_characteristic_rejected() {
        let err = parse_ideal("char: 4\nideal:\nx\n").unwrap_err();
        assert_eq!(err, Error::NonPrimeCharacteristic(4));
    }

    #[test]
    fn unknown_variable_reports_line() {
        match parse_ideal("ring: x y\nideal:\nx\nq^2\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (4, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn coefficients_reduce_mod_p() {
        let r = Ring::new(&["x"], 7, MonomialOrder::Grevlex).unwrap();
        assert_eq!(parse_polynomial(&r, "15*x - 1").unwrap().to_string(), "x - 1");
        assert_eq!(parse_polynomial(&r, "(x+1)^2").unwrap().to_string(), "x^2 + 2*x + 1");
    }
}
