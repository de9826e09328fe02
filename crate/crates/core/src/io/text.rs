//! The text grammar for systems and polynomials, and its printer.
//!
//! ```text
//! # comment
//! version 1
//! main y1 y2
//! option trials 5
//! u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2
//! ```
//!
//! `term ::= rational? ('*'? factor)+`, `factor ::= ident ('@' nat)? ('^' int)?`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::diffpoly::{parse_coeff_name, DiffPoly, GenericSystem, LaurentMonomial, ShiftedVar, VarTable};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

/// A parsed input document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemDocument {
    pub version: u32,
    pub system: GenericSystem,
    pub options: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    At,
    Semi,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Tokenizes `text`; positions are 1-based and offset by `first_line`.
fn lex(text: &str, first_line: usize) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let line_no = first_line + li;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let simple = match c {
                '+' => Some(Tok::Plus),
                '-' => Some(Tok::Minus),
                '*' => Some(Tok::Star),
                '/' => Some(Tok::Slash),
                '^' => Some(Tok::Caret),
                '@' => Some(Tok::At),
                ';' => Some(Tok::Semi),
                _ => None,
            };
            if let Some(tok) = simple {
                out.push(Spanned { tok, line: line_no, col });
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Spanned { tok: Tok::Num(digits.parse().unwrap()), line: line_no, col });
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Spanned { tok: Tok::Ident(chars[start..i].iter().collect()), line: line_no, col });
            } else {
                return Err(parse_err(line_no, col, format!("unexpected character '{c}'")));
            }
        }
    }
    Ok(out)
}

/// A factor before name resolution.
#[derive(Clone, Debug)]
struct RawFactor {
    name: String,
    shift: u32,
    exp: i32,
    line: usize,
    col: usize,
}

#[derive(Clone, Debug)]
struct RawTerm {
    coeff: BigRational,
    factors: Vec<RawFactor>,
    line: usize,
    col: usize,
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |s| (s.line, s.col))
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (l, c) = self.here();
        parse_err(l, c, msg)
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n.clone())
            }
            _ => Err(self.err("expected a number")),
        }
    }

    fn small(&self, n: &BigInt, what: &str) -> Result<i64> {
        i64::try_from(n).ok().filter(|v| *v <= i32::MAX as i64).ok_or_else(|| self.err(format!("{what} out of range")))
    }

    /// One polynomial; stops before `;` or at end of input.
    fn poly(&mut self) -> Result<Vec<RawTerm>> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let (line, col) = self.here();
            let negative = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                None | Some(Tok::Semi) => break,
                _ => return Err(self.err("expected '+' or '-' between terms")),
            };
            first = false;
            let mut term = self.term(line, col)?;
            if negative {
                term.coeff = -term.coeff;
            }
            terms.push(term);
            if matches!(self.peek(), None | Some(Tok::Semi)) {
                break;
            }
        }
        if terms.is_empty() {
            return Err(self.err("empty polynomial"));
        }
        Ok(terms)
    }

    fn term(&mut self, line: usize, col: usize) -> Result<RawTerm> {
        let mut coeff = BigRational::one();
        let mut factors = Vec::new();
        if let Some(Tok::Num(_)) = self.peek() {
            let num = self.nat()?;
            let den = if let Some(Tok::Slash) = self.peek() {
                self.pos += 1;
                let d = self.nat()?;
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                d
            } else {
                BigInt::one()
            };
            coeff = BigRational::new(num, den);
            if let Some(Tok::Star) = self.peek() {
                self.pos += 1;
                if !matches!(self.peek(), Some(Tok::Ident(_))) {
                    return Err(self.err("expected a variable after '*'"));
                }
            }
        } else if !matches!(self.peek(), Some(Tok::Ident(_))) {
            return Err(self.err("expected a term"));
        }
        loop {
            match self.peek() {
                Some(Tok::Ident(_)) => factors.push(self.factor()?),
                Some(Tok::Star) => {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(Tok::Ident(_))) {
                        return Err(self.err("expected a variable after '*'"));
                    }
                }
                _ => break,
            }
        }
        Ok(RawTerm { coeff, factors, line, col })
    }

    fn factor(&mut self) -> Result<RawFactor> {
        let (line, col) = self.here();
        let Some(Tok::Ident(name)) = self.peek() else { return Err(self.err("expected a variable")) };
        self.pos += 1;
        let mut shift = 0;
        let mut exp = 1;
        if let Some(Tok::At) = self.peek() {
            self.pos += 1;
            let n = self.nat()?;
            shift = self.small(&n, "transform order")? as u32;
        }
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.pos += 1;
                true
            } else {
                false
            };
            let n = self.nat()?;
            let v = self.small(&n, "exponent")? as i32;
            exp = if neg { -v } else { v };
        }
        Ok(RawFactor { name: name.clone(), shift, exp, line, col })
    }
}

fn end_position(text: &str, first_line: usize) -> (usize, usize) {
    let lines: Vec<&str> = text.lines().collect();
    match lines.last() {
        Some(l) => (first_line + lines.len() - 1, l.chars().count() + 1),
        None => (first_line, 1),
    }
}

fn parse_polys(body: &str, first_line: usize) -> Result<Vec<Vec<RawTerm>>> {
    let toks = lex(body, first_line)?;
    let mut p = Parser { toks: &toks, pos: 0, end: end_position(body, first_line) };
    let mut polys = Vec::new();
    while p.pos < toks.len() {
        polys.push(p.poly()?);
        if let Some(Tok::Semi) = p.peek() {
            p.pos += 1;
            if p.pos == toks.len() {
                break;
            }
        }
    }
    Ok(polys)
}

/// Parses a polynomial over the variables of `vars`.
pub fn parse_poly(text: &str, vars: &VarTable) -> Result<DiffPoly> {
    let polys = parse_polys(text, 1)?;
    if polys.len() != 1 {
        return Err(parse_err(1, 1, format!("expected one polynomial, found {}", polys.len())));
    }
    let mut terms = Vec::new();
    for t in &polys[0] {
        let mut pairs = Vec::new();
        for f in &t.factors {
            let idx = vars.lookup(&f.name).ok_or_else(|| parse_err(f.line, f.col, format!("undeclared variable {}", f.name)))?;
            if f.exp < 0 && !vars.is_main(idx) {
                return Err(parse_err(f.line, f.col, format!("negative exponent on coefficient variable {}", f.name)));
            }
            pairs.push((ShiftedVar::new(idx, f.shift), f.exp));
        }
        terms.push((t.coeff.clone(), LaurentMonomial::from_pairs(pairs)));
    }
    Ok(DiffPoly::from_terms(terms))
}

/// Parses a document in the text grammar, or in JSON when it starts with `{`.
pub fn parse_document(text: &str) -> Result<SystemDocument> {
    if text.trim_start().starts_with('{') {
        return super::json::parse_document_json(text);
    }
    let mut version = FORMAT_VERSION;
    let mut main: Option<Vec<String>> = None;
    let mut options = BTreeMap::new();
    let mut body = String::new();
    let mut first_body_line = None;
    for (li, line) in text.lines().enumerate() {
        let line_no = li + 1;
        let trimmed = line.trim_start();
        let word = trimmed.split_whitespace().next().unwrap_or("");
        let rest: Vec<&str> = trimmed.split_whitespace().skip(1).take_while(|w| !w.starts_with('#')).collect();
        let col = line.len() - trimmed.len() + 1;
        match word {
            "version" => {
                version = rest
                    .first()
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| parse_err(line_no, col, "version needs an integer"))?;
                if version != FORMAT_VERSION {
                    return Err(parse_err(line_no, col, format!("unsupported version {version}")));
                }
                body.push('\n');
            }
            "main" => {
                if rest.is_empty() {
                    return Err(parse_err(line_no, col, "main needs at least one variable"));
                }
                main = Some(rest.iter().map(|s| s.to_string()).collect());
                body.push('\n');
            }
            "option" => {
                if rest.len() != 2 {
                    return Err(parse_err(line_no, col, "option needs a key and a value"));
                }
                options.insert(rest[0].to_string(), rest[1].to_string());
                body.push('\n');
            }
            _ => {
                if first_body_line.is_none() && !trimmed.is_empty() && !trimmed.starts_with('#') {
                    first_body_line = Some(line_no);
                }
                body.push_str(line);
                body.push('\n');
            }
        }
    }
    let polys = parse_polys(&body, 1)?;
    let system = build_system(&polys, main, first_body_line.unwrap_or(1))?;
    Ok(SystemDocument { version, system, options })
}

/// Parses a bare system (no directives allowed besides those `parse_document` accepts).
pub fn parse_system(text: &str) -> Result<GenericSystem> {
    Ok(parse_document(text)?.system)
}

pub(crate) fn parse_system_polys(polys: &[String], main: Option<Vec<String>>) -> Result<GenericSystem> {
    let mut raw = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        let mut parsed = parse_polys(p, i + 1)?;
        if parsed.len() != 1 {
            return Err(parse_err(i + 1, 1, "each entry must hold exactly one polynomial"));
        }
        raw.push(parsed.pop().unwrap());
    }
    build_system(&raw, main, 1)
}

fn build_system(polys: &[Vec<RawTerm>], main: Option<Vec<String>>, line: usize) -> Result<GenericSystem> {
    if polys.is_empty() {
        return Err(parse_err(line, 1, "no polynomials"));
    }
    // Main variables default to every non-coefficient name in order of first appearance.
    let main = main.unwrap_or_else(|| {
        let mut seen: Vec<String> = Vec::new();
        for f in polys.iter().flatten().flat_map(|t| &t.factors) {
            if parse_coeff_name(&f.name).is_none() && !seen.contains(&f.name) {
                seen.push(f.name.clone());
            }
        }
        seen
    });
    let mut supports = Vec::with_capacity(polys.len());
    for (i, terms) in polys.iter().enumerate() {
        let mut slots: BTreeMap<usize, Vec<(String, u32, i32)>> = BTreeMap::new();
        for t in terms {
            if !t.coeff.is_one() {
                return Err(parse_err(t.line, t.col, "generic polynomials carry unit coefficients"));
            }
            let mut slot = None;
            let mut rest = Vec::new();
            for f in &t.factors {
                if let Some((block, k)) = parse_coeff_name(&f.name) {
                    if f.exp < 0 {
                        return Err(parse_err(f.line, f.col, format!("negative exponent on coefficient variable {}", f.name)));
                    }
                    if block != i {
                        return Err(parse_err(f.line, f.col, format!("{} belongs to polynomial {block}, not {i}", f.name)));
                    }
                    if slot.is_some() || f.exp != 1 || f.shift != 0 {
                        return Err(parse_err(f.line, f.col, "each term needs exactly one plain coefficient variable"));
                    }
                    slot = Some(k);
                } else if main.contains(&f.name) {
                    rest.push((f.name.clone(), f.shift, f.exp));
                } else {
                    return Err(parse_err(f.line, f.col, format!("undeclared variable {}", f.name)));
                }
            }
            let Some(k) = slot else { return Err(parse_err(t.line, t.col, "term without a coefficient variable")) };
            if slots.insert(k, rest).is_some() {
                return Err(parse_err(t.line, t.col, format!("coefficient slot {k} used twice in polynomial {i}")));
            }
        }
        if slots.keys().copied().ne(0..slots.len()) {
            let (l, c) = (terms[0].line, terms[0].col);
            return Err(parse_err(l, c, format!("coefficient slots of polynomial {i} must be 0..{}", slots.len() - 1)));
        }
        let support = slots
            .into_values()
            .map(|rest| {
                LaurentMonomial::from_pairs(rest.into_iter().map(|(name, shift, e)| {
                    let j = main.iter().position(|m| *m == name).unwrap();
                    (ShiftedVar::new(j, shift), e)
                }))
            })
            .collect();
        supports.push(support);
    }
    GenericSystem::new(&main, supports)
}

fn write_rational(out: &mut String, c: &BigRational) {
    if c.is_integer() {
        write!(out, "{}", c.numer()).unwrap();
    } else {
        write!(out, "{}/{}", c.numer(), c.denom()).unwrap();
    }
}

pub fn format_monomial(m: &LaurentMonomial, vars: &VarTable) -> String {
    let mut out = String::new();
    for (i, &(sv, e)) in m.factors().iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        write!(out, "{}", sv.display(vars)).unwrap();
        if e != 1 {
            write!(out, "^{e}").unwrap();
        }
    }
    out
}

/// Terms in the global monomial order with explicit `*`, e.g. `u00@1*u11 - u01@1*u10`.
pub fn format_poly(p: &DiffPoly, vars: &VarTable) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, m)) in p.terms().iter().enumerate() {
        let abs = c.abs();
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        if m.is_one() {
            write_rational(&mut out, &abs);
            continue;
        }
        if !abs.is_one() {
            write_rational(&mut out, &abs);
            out.push('*');
        }
        out.push_str(&format_monomial(m, vars));
    }
    out
}

/// Canonical document text; parsing it gives back the same system.
pub fn format_system(sys: &GenericSystem) -> String {
    let mut out = format!("version {FORMAT_VERSION}\nmain {}\n", sys.vars().main_names().join(" "));
    let count = sys.len();
    for (i, p) in sys.polys().iter().enumerate() {
        out.push_str(&format_poly(p, sys.vars()));
        out.push_str(if i + 1 < count { " ;\n" } else { "\n" });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_examples() {
        let sys = parse_system("u00 + u01*y1^2 ; u10*y1@1 + u11*y1").unwrap();
        assert_eq!(sys.n(), 1);
        assert_eq!(format_poly(sys.poly(1), sys.vars()), "y1*u11 + y1@1*u10");
        let sys = parse_system("u00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2").unwrap();
        assert_eq!(sys.n(), 2);
        assert_eq!(sys.vars().main_names(), vec!["y1", "y2"]);
    }

    #[test]
    fn laurent_polynomial_parses() {
        let vars = VarTable::new(&["y1".into(), "y2".into()], &[]).unwrap();
        let p = parse_poly("y1^-1 + y2", &vars).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.terms().iter().any(|(_, m)| m.has_negative()));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_system("u00 + u01*y1 ;\nu10 + u11 ** y1") {
            Err(Error::Parse { line, col, .. }) => assert_eq!((line, col), (2, 12)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_system("u00 + u01^-1*y1 ; u10 + u11*y1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_system("u00 + u01*y1 + u02*y1 ; u10 + u11*y1"), Err(Error::Malformed(_))));
    }

    #[test]
    fn document_round_trip() {
        let text = "version 1\nmain y1 y2\noption trials 7\nu00 + u01*y1*y2 ; u10 + u11*y1@1*y2@1 ; u20 + u21*y2\n";
        let doc = parse_document(text).unwrap();
        assert_eq!(doc.options["trials"], "7");
        let printed = format_system(&doc.system);
        assert_eq!(parse_system(&printed).unwrap(), doc.system);
    }

    #[test]
    fn rational_coefficients_print() {
        let vars = VarTable::new(&["y1".into()], &[2]).unwrap();
        let p = parse_poly("3/2*y1@2 - 4 + u00*u01@1^2", &vars).unwrap();
        let s = format_poly(&p, &vars);
        assert_eq!(parse_poly(&s, &vars).unwrap(), p);
    }
}
