//! Text syntax for polynomials and ideal files.
//!
//! Polynomials are sums of terms over declared variables: `a*x + b*y`,
//! `x^2`, `3*x*y*z`. The `*` is optional between tokens (`2x^2 y`), but
//! identifiers are maximal runs, so `xy` is a single (unknown) name, not
//! `x*y`. Printing uses explicit `*` and canonical residue coefficients;
//! parse-then-print round-trips exactly.
//!
//! Ideal files: a header `ring p=<modulus> vars=<name,...>`, then one
//! polynomial per line. `#` starts a comment; blank lines are ignored.

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(input: &str) -> std::result::Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut it = input.chars().peekable();
    while let Some(&c) = it.peek() {
        match c {
            ' ' | '\t' => {
                it.next();
            }
            '+' => {
                it.next();
                toks.push(Tok::Plus);
            }
            '-' => {
                it.next();
                toks.push(Tok::Minus);
            }
            '*' => {
                it.next();
                toks.push(Tok::Star);
            }
            '^' => {
                it.next();
                toks.push(Tok::Caret);
            }
            '0'..='9' => {
                let mut n: u64 = 0;
                while let Some(&d) = it.peek() {
                    if let Some(v) = d.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(v as u64))
                            .ok_or_else(|| "numeric literal overflows".to_string())?;
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Num(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        s.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push(Tok::Ident(s));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(toks)
}

/// Parse one polynomial in the given ring.
pub fn parse_poly(ring: &Arc<Ring>, input: &str) -> Result<Polynomial> {
    parse_poly_at_line(ring, input, 0)
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_poly_at_line(ring: &Arc<Ring>, input: &str, line: usize) -> Result<Polynomial> {
    let toks = tokenize(input).map_err(|m| err(line, m))?;
    if toks.is_empty() {
        return Err(err(line, "empty polynomial"));
    }
    let f = *ring.field();
    let n = ring.nvars();
    let mut terms: Vec<(u64, Monomial)> = Vec::new();
    let mut i = 0usize;

    loop {
        // sign
        let mut negate = false;
        while i < toks.len() {
            match toks[i] {
                Tok::Plus => i += 1,
                Tok::Minus => {
                    negate = !negate;
                    i += 1;
                }
                _ => break,
            }
        }
        if i >= toks.len() {
            return Err(err(line, "dangling sign"));
        }
        // one term: product of factors
        let mut coeff: u64 = 1;
        let mut exps = vec![0u32; n];
        let mut saw_factor = false;
        loop {
            match toks.get(i) {
                Some(Tok::Num(v)) => {
                    coeff = f.mul(coeff, f.reduce_u64(*v));
                    i += 1;
                    saw_factor = true;
                }
                Some(Tok::Ident(name)) => {
                    let vi = ring
                        .var_index(name)
                        .ok_or_else(|| err(line, format!("unknown variable {name}")))?;
                    i += 1;
                    let mut e: u32 = 1;
                    if toks.get(i) == Some(&Tok::Caret) {
                        i += 1;
                        match toks.get(i) {
                            Some(Tok::Num(v)) => {
                                e = u32::try_from(*v)
                                    .map_err(|_| err(line, "exponent too large"))?;
                                i += 1;
                            }
                            _ => return Err(err(line, "expected exponent after ^")),
                        }
                    }
                    exps[vi] += e;
                    saw_factor = true;
                }
                Some(Tok::Star) => {
                    i += 1;
                    continue;
                }
                Some(Tok::Caret) => return Err(err(line, "misplaced ^")),
                Some(Tok::Plus) | Some(Tok::Minus) | None => break,
            }
        }
        if !saw_factor {
            return Err(err(line, "empty term"));
        }
        let m = Monomial::from_exps(&exps)
            .map_err(|_| err(line, "monomial exceeds the degree cap"))?;
        let c = if negate { f.neg(coeff) } else { coeff };
        terms.push((c, m));
        if i >= toks.len() {
            break;
        }
    }
    Ok(Polynomial::from_terms(ring, terms))
}

/// Canonical printer: grevlex-descending terms, residue coefficients,
/// explicit `*` and `^`.
pub fn poly_to_string(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let vars = p.ring().vars();
    let mut out = String::new();
    for (i, (c, m)) in p.terms().iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let mut factors: Vec<String> = Vec::new();
        if *c != 1 || m.is_one() {
            factors.push(c.to_string());
        }
        for (vi, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(vars[vi].clone()),
                _ => factors.push(format!("{}^{}", vars[vi], e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

/// A parsed ideal file: ring header plus homogeneous generators.
#[derive(Debug, Clone)]
pub struct IdealFile {
    pub ring: Arc<Ring>,
    pub gens: Vec<Polynomial>,
}

/// Parse the `ring p=<modulus> vars=<a,b,c>` header line.
pub fn parse_ring_header(line_no: usize, line: &str) -> Result<Arc<Ring>> {
    let rest = line
        .trim()
        .strip_prefix("ring")
        .ok_or_else(|| err(line_no, "expected `ring p=<modulus> vars=<names>`"))?;
    let mut modulus: Option<u64> = None;
    let mut vars: Option<Vec<String>> = None;
    for field in rest.split_whitespace() {
        if let Some(v) = field.strip_prefix("p=") {
            modulus = Some(
                v.parse::<u64>()
                    .map_err(|_| err(line_no, format!("bad modulus {v:?}")))?,
            );
        } else if let Some(v) = field.strip_prefix("vars=") {
            vars = Some(v.split(',').map(|s| s.trim().to_string()).collect());
        } else {
            return Err(err(line_no, format!("unexpected header field {field:?}")));
        }
    }
    let p = modulus.ok_or_else(|| err(line_no, "missing p="))?;
    let vars = vars.ok_or_else(|| err(line_no, "missing vars="))?;
    let field = PrimeField::new(p).map_err(|e| err(line_no, e.to_string()))?;
    Ring::new(field, vars).map_err(|e| err(line_no, e.to_string()))
}

/// Parse a full ideal file. Every body polynomial must be homogeneous.
pub fn parse_ideal_file(text: &str) -> Result<IdealFile> {
    let mut ring: Option<Arc<Ring>> = None;
    let mut gens = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        match &ring {
            None => ring = Some(parse_ring_header(line_no, line)?),
            Some(r) => {
                let p = parse_poly_at_line(r, line, line_no)?;
                if !p.is_homogeneous() {
                    return Err(err(line_no, "polynomial is not homogeneous"));
                }
                if p.is_zero() {
                    return Err(err(line_no, "zero generator"));
                }
                gens.push(p);
            }
        }
    }
    let ring = ring.ok_or_else(|| err(0, "missing ring header"))?;
    Ok(IdealFile { ring, gens })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> Arc<Ring> {
        Ring::default_with_vars(&["a", "b", "c", "x", "y", "z"])
    }

    #[test]
    fn basic_forms() {
        let r = ring();
        let f = parse_poly(&r, "a*x + b*y + c*z").unwrap();
        assert_eq!(f.num_terms(), 3);
        assert_eq!(parse_poly(&r, "x^2").unwrap().degree(), Some(2));
        // optional star and repeated factors
        assert_eq!(
            parse_poly(&r, "2x^2 y").unwrap(),
            parse_poly(&r, "2*x^2*y").unwrap()
        );
        assert_eq!(
            parse_poly(&r, "x*x*x").unwrap(),
            parse_poly(&r, "x^3").unwrap()
        );
        // coefficients reduce mod p
        assert_eq!(
            parse_poly(&r, "32004*x").unwrap(),
            parse_poly(&r, "x").unwrap()
        );
        assert!(parse_poly(&r, "x - x").unwrap().is_zero());
    }

    #[test]
    fn rejects_garbage() {
        let r = ring();
        assert!(parse_poly(&r, "w + x").is_err()); // unknown variable
        assert!(parse_poly(&r, "xy").is_err()); // one identifier, not x*y
        assert!(parse_poly(&r, "x +").is_err());
        assert!(parse_poly(&r, "x ^").is_err());
        assert!(parse_poly(&r, "").is_err());
    }

    #[test]
    fn ideal_file_roundtrip() {
        let text = "# comment\nring p=32003 vars=x,y,z\n\nx^2 + y*z # trailing\nz^2\n";
        let f = parse_ideal_file(text).unwrap();
        assert_eq!(f.ring.vars(), &["x", "y", "z"]);
        assert_eq!(f.gens.len(), 2);
    }

    #[test]
    fn ideal_file_errors_carry_lines() {
        let text = "ring p=32003 vars=x,y\nx + y^2\n";
        match parse_ideal_file(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    proptest! {
        // print-then-parse is the identity
        #[test]
        fn print_parse_roundtrip(seed in 0u64..5000) {
            use rand::{Rng, SeedableRng};
            let r = ring();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut terms = Vec::new();
            for _ in 0..rng.gen_range(0..8) {
                let exps: Vec<u32> = (0..6).map(|_| rng.gen_range(0..4)).collect();
                let c = rng.gen_range(0..32003u64);
                terms.push((c, crate::monomial::Monomial::from_exps(&exps).unwrap()));
            }
            let p = Polynomial::from_terms(&r, terms);
            let printed = poly_to_string(&p);
            let reparsed = parse_poly(&r, &printed).unwrap();
            prop_assert_eq!(p, reparsed);
        }
    }
}
