//! Expression parser for defining polynomials and sum-of-squares factors.
//!
//! Grammar (precedence climbing, `^` tightest, juxtaposition multiplies):
//!
//! ```text
//!   expr    := term (('+' | '-') term)*
//!   term    := unary (unary | '*' unary)*
//!   unary   := '-' unary | power
//!   power   := primary ('^' nat)?
//!   primary := nat ('/' nat)? | 'i' | var | func '(' expr ')' | '(' expr ')'
//!   var     := z<k> | zb<k> | w | u
//!   func    := Re | Im | abs2 | conj
//! ```
//!
//! `abs2(q)` expands to `q * conj(q)`; `Re`/`Im` expand through
//! `(h ± conj h)/2` and `/(2i)`. Division only appears inside rational
//! literals `p/q`. Errors carry the byte position of the offending token.

use crate::arith::{gauss, gauss_i, parse_rat, rat, rat_int, GaussRat, MultiIndex, Rat};
use crate::ring::{HoloPoly, MixedPoly, RealPoly, RingError};
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

// ---------------------------------------------------------------------------
// General parsed polynomial
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct GKey {
    alpha: MultiIndex,
    beta: MultiIndex,
    u: u32,
    w: u32,
}

/// Parser working representation: a complex-coefficient polynomial in
/// `z`, `zbar`, `u` and `w`. Converted into the typed polynomials after
/// parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPoly {
    n: usize,
    terms: BTreeMap<GKey, GaussRat>,
}

impl GenPoly {
    fn zero(n: usize) -> Self {
        GenPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    fn constant(n: usize, c: GaussRat) -> Self {
        let mut p = GenPoly::zero(n);
        p.insert(
            GKey {
                alpha: MultiIndex::zeros(n),
                beta: MultiIndex::zeros(n),
                u: 0,
                w: 0,
            },
            c,
        );
        p
    }

    fn insert(&mut self, key: GKey, c: GaussRat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    fn add(&self, other: &GenPoly) -> GenPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> GenPoly {
        GenPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), -c.clone()))
                .collect(),
        }
    }

    fn mul(&self, other: &GenPoly) -> GenPoly {
        let mut out = GenPoly::zero(self.n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key = GKey {
                    alpha: ka.alpha.add(&kb.alpha).expect("same n"),
                    beta: ka.beta.add(&kb.beta).expect("same n"),
                    u: ka.u + kb.u,
                    w: ka.w + kb.w,
                };
                out.insert(key, ca.clone() * cb.clone());
            }
        }
        out
    }

    fn pow(&self, e: u32) -> GenPoly {
        let mut acc = GenPoly::constant(self.n, GaussRat::new(rat_int(1), Rat::zero()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn involves_w(&self) -> bool {
        self.terms.keys().any(|k| k.w > 0)
    }

    fn involves_u(&self) -> bool {
        self.terms.keys().any(|k| k.u > 0)
    }

    fn involves_conjugates(&self) -> bool {
        self.terms.keys().any(|k| !k.beta.is_zero())
    }

    /// Complex conjugate; only defined for `w`-free polynomials.
    fn conj(&self) -> GenPoly {
        GenPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    (
                        GKey {
                            alpha: k.beta.clone(),
                            beta: k.alpha.clone(),
                            u: k.u,
                            w: 0,
                        },
                        c.conj(),
                    )
                })
                .collect(),
        }
    }

    /// Conversion to a real-valued polynomial in `(z, zbar)`.
    pub fn to_real(&self) -> Result<RealPoly, RingError> {
        if self.involves_w() || self.involves_u() {
            return Err(RingError::VariableOutOfRange { j: 0, n: self.n });
        }
        RealPoly::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(k, c)| (k.alpha.clone(), k.beta.clone(), c.clone()))
                .collect(),
        )
    }

    /// Conversion to a holomorphic polynomial in `(z, w)`.
    pub fn to_holo(&self) -> Result<HoloPoly, RingError> {
        if self.involves_conjugates() || self.involves_u() {
            return Err(RingError::VariableOutOfRange { j: 0, n: self.n });
        }
        HoloPoly::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(k, c)| (k.alpha.clone(), k.w, c.clone()))
                .collect(),
        )
    }

    pub fn to_mixed(&self) -> Result<MixedPoly, RingError> {
        if self.involves_w() {
            return Err(RingError::VariableOutOfRange { j: 0, n: self.n });
        }
        MixedPoly::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|(k, c)| (k.alpha.clone(), k.beta.clone(), k.u, c.clone()))
                .collect(),
        )
    }
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Nat(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

fn lex(s: &str) -> Result<Lexer, ParseError> {
    let bytes = s.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((start, Tok::Nat(s[start..i].to_string())));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric()) {
                    i += 1;
                }
                toks.push((start, Tok::Ident(s[start..i].to_string())));
            }
            other => return err(i, format!("unexpected character `{other}`")),
        }
    }
    Ok(Lexer {
        toks,
        pos: 0,
        end: s.len(),
    })
}

impl Lexer {
    fn peek(&self) -> Option<&(usize, Tok)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.end)
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    lx: Lexer,
    n: usize,
}

/// Parses an expression over `n` tangential variables into the general
/// polynomial representation.
pub fn parse_expression(s: &str, n: usize) -> Result<GenPoly, ParseError> {
    let mut p = Parser { lx: lex(s)?, n };
    let poly = p.expr()?;
    if let Some((pos, tok)) = p.lx.peek() {
        return err(*pos, format!("unexpected token {tok:?}"));
    }
    Ok(poly)
}

/// Parses a real-valued polynomial in `(z, zbar)`; used for defining
/// polynomials supplied on the command line or in model JSON.
pub fn parse_real_poly(s: &str, n: usize) -> Result<RealPoly, ParseError> {
    let g = parse_expression(s, n)?;
    g.to_real().map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })
}

/// Parses a holomorphic polynomial in `(z, w)`; used for sum-of-squares
/// factors.
pub fn parse_holo_poly(s: &str, n: usize) -> Result<HoloPoly, ParseError> {
    let g = parse_expression(s, n)?;
    g.to_holo().map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })
}

impl Parser {
    fn expr(&mut self) -> Result<GenPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some((_, tok)) = self.lx.peek() {
            match tok {
                Tok::Plus => {
                    self.lx.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.lx.next();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GenPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.lx.peek() {
                Some((_, Tok::Star)) => {
                    self.lx.next();
                    acc = acc.mul(&self.unary()?);
                }
                // juxtaposition: a factor follows directly
                Some((_, Tok::Nat(_))) | Some((_, Tok::Ident(_))) | Some((_, Tok::LParen)) => {
                    acc = acc.mul(&self.unary()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<GenPoly, ParseError> {
        if let Some((_, Tok::Minus)) = self.lx.peek() {
            self.lx.next();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<GenPoly, ParseError> {
        let base = self.primary()?;
        if let Some((_, Tok::Caret)) = self.lx.peek() {
            self.lx.next();
            let pos = self.lx.here();
            match self.lx.next() {
                Some((_, Tok::Nat(digits))) => {
                    let e: u32 = digits.parse().map_err(|_| ParseError {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => err(pos, "expected a nonnegative integer exponent after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<GenPoly, ParseError> {
        let pos = self.lx.here();
        match self.lx.next() {
            Some((_, Tok::Nat(digits))) => {
                // rational literal p or p/q
                if let Some((_, Tok::Slash)) = self.lx.peek() {
                    self.lx.next();
                    let dpos = self.lx.here();
                    match self.lx.next() {
                        Some((_, Tok::Nat(den))) => {
                            let r =
                                parse_rat(&format!("{digits}/{den}")).map_err(|e| ParseError {
                                    pos: dpos,
                                    msg: e.to_string(),
                                })?;
                            Ok(GenPoly::constant(self.n, gauss(r, Rat::zero())))
                        }
                        _ => err(dpos, "expected an integer denominator after `/`"),
                    }
                } else {
                    let r = parse_rat(&digits).map_err(|e| ParseError {
                        pos,
                        msg: e.to_string(),
                    })?;
                    Ok(GenPoly::constant(self.n, gauss(r, Rat::zero())))
                }
            }
            Some((_, Tok::LParen)) => {
                let inner = self.expr()?;
                self.expect_rparen()?;
                Ok(inner)
            }
            Some((ipos, Tok::Ident(name))) => self.ident(ipos, &name),
            Some((p, tok)) => err(p, format!("unexpected token {tok:?}")),
            None => err(pos, "unexpected end of input"),
        }
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let pos = self.lx.here();
        match self.lx.next() {
            Some((_, Tok::RParen)) => Ok(()),
            _ => err(pos, "expected `)`"),
        }
    }

    fn ident(&mut self, pos: usize, name: &str) -> Result<GenPoly, ParseError> {
        match name {
            "i" => Ok(GenPoly::constant(self.n, gauss_i())),
            "w" => {
                let mut p = GenPoly::zero(self.n);
                p.insert(
                    GKey {
                        alpha: MultiIndex::zeros(self.n),
                        beta: MultiIndex::zeros(self.n),
                        u: 0,
                        w: 1,
                    },
                    gauss(rat_int(1), Rat::zero()),
                );
                Ok(p)
            }
            "u" => {
                let mut p = GenPoly::zero(self.n);
                p.insert(
                    GKey {
                        alpha: MultiIndex::zeros(self.n),
                        beta: MultiIndex::zeros(self.n),
                        u: 1,
                        w: 0,
                    },
                    gauss(rat_int(1), Rat::zero()),
                );
                Ok(p)
            }
            "Re" | "Im" | "abs2" | "conj" => {
                let lpos = self.lx.here();
                match self.lx.next() {
                    Some((_, Tok::LParen)) => {}
                    _ => return err(lpos, format!("expected `(` after {name}")),
                }
                let arg = self.expr()?;
                self.expect_rparen()?;
                if arg.involves_w() {
                    return err(pos, format!("{name}(..) argument must not involve w"));
                }
                let half = gauss(rat(1, 2), Rat::zero());
                match name {
                    "conj" => Ok(arg.conj()),
                    "abs2" => Ok(arg.mul(&arg.conj())),
                    "Re" => {
                        let sum = arg.add(&arg.conj());
                        Ok(GenPoly {
                            n: sum.n,
                            terms: sum
                                .terms
                                .iter()
                                .map(|(k, c)| (k.clone(), c.clone() * half.clone()))
                                .collect(),
                        })
                    }
                    _ => {
                        // Im h = (h - conj h) / 2i
                        let diff = arg.add(&arg.conj().neg());
                        let inv_2i = gauss(Rat::zero(), rat(-1, 2));
                        Ok(GenPoly {
                            n: diff.n,
                            terms: diff
                                .terms
                                .iter()
                                .map(|(k, c)| (k.clone(), c.clone() * inv_2i.clone()))
                                .collect(),
                        })
                    }
                }
            }
            _ => {
                if let Some(rest) = name.strip_prefix("zb") {
                    let k = self.var_index(pos, rest)?;
                    let mut p = GenPoly::zero(self.n);
                    p.insert(
                        GKey {
                            alpha: MultiIndex::zeros(self.n),
                            beta: MultiIndex::unit(self.n, k),
                            u: 0,
                            w: 0,
                        },
                        gauss(rat_int(1), Rat::zero()),
                    );
                    Ok(p)
                } else if let Some(rest) = name.strip_prefix('z') {
                    let k = self.var_index(pos, rest)?;
                    let mut p = GenPoly::zero(self.n);
                    p.insert(
                        GKey {
                            alpha: MultiIndex::unit(self.n, k),
                            beta: MultiIndex::zeros(self.n),
                            u: 0,
                            w: 0,
                        },
                        gauss(rat_int(1), Rat::zero()),
                    );
                    Ok(p)
                } else {
                    err(pos, format!("unknown identifier `{name}`"))
                }
            }
        }
    }

    fn var_index(&self, pos: usize, digits: &str) -> Result<usize, ParseError> {
        let k: usize = digits.parse().map_err(|_| ParseError {
            pos,
            msg: format!("bad variable index `{digits}`"),
        })?;
        if k == 0 || k > self.n {
            return err(
                pos,
                format!("variable index {k} out of range 1..={}", self.n),
            );
        }
        Ok(k - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::gauss_int;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn parses_abs2() {
        let p = parse_real_poly("abs2(z1)", 1).unwrap();
        assert_eq!(p.coeff(&mi(&[1]), &mi(&[1])), gauss_int(1, 0));
        assert_eq!(p.num_terms(), 1);
        let p = parse_real_poly("abs2(z1) + abs2(z2^2)", 2).unwrap();
        assert_eq!(p.coeff(&mi(&[1, 0]), &mi(&[1, 0])), gauss_int(1, 0));
        assert_eq!(p.coeff(&mi(&[0, 2]), &mi(&[0, 2])), gauss_int(1, 0));
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn parses_re_times_abs2() {
        // Re(z1) * abs2(z2) = (1/2) z1 z2 zb2 + (1/2) zb1 z2 zb2
        let p = parse_real_poly("Re(z1)*abs2(z2)", 2).unwrap();
        assert_eq!(
            p.coeff(&mi(&[1, 1]), &mi(&[0, 1])),
            gauss(rat(1, 2), rat_int(0))
        );
        assert_eq!(
            p.coeff(&mi(&[0, 1]), &mi(&[1, 1])),
            gauss(rat(1, 2), rat_int(0))
        );
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn juxtaposition_and_rationals() {
        let p = parse_expression("1/2 z1 zb2^2", 2).unwrap();
        let q = parse_expression("(1/2) * z1 * zb2^2", 2).unwrap();
        assert_eq!(p, q);
        // unary minus binds outside powers
        let a = parse_expression("-z1^2", 1).unwrap();
        let b = parse_expression("-(z1^2)", 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn imaginary_unit_and_conj() {
        let p = parse_expression("i z1 zb1", 1).unwrap();
        let conj = p.conj();
        assert_eq!(conj, parse_expression("-i z1 zb1", 1).unwrap());
        // Im(z1^2) = (z1^2 - zb1^2) / 2i
        let im = parse_expression("Im(z1^2)", 1).unwrap();
        let manual = parse_expression("(z1^2 - zb1^2) * (-1/2) i", 1).unwrap();
        assert_eq!(im, manual);
    }

    #[test]
    fn error_positions() {
        let e = parse_expression("abs2(z1", 1).unwrap_err();
        assert_eq!(e.pos, 7);
        let e = parse_expression("z3 + z1", 2).unwrap_err();
        assert_eq!(e.pos, 0);
        let e = parse_expression("z1 $ z2", 2).unwrap_err();
        assert_eq!(e.pos, 3);
        // division of non-literals is rejected
        let e = parse_expression("(z1 + z2)/2", 2).unwrap_err();
        assert_eq!(e.pos, 9);
        // arity: Re requires parentheses
        let e = parse_expression("Re z1", 1).unwrap_err();
        assert!(e.msg.contains("expected `(`"));
    }

    #[test]
    fn holo_conversion() {
        let q = parse_holo_poly("z1^2 + i z1 z2", 2).unwrap();
        assert_eq!(q.coeff(&mi(&[2, 0]), 0), gauss_int(1, 0));
        assert_eq!(q.coeff(&mi(&[1, 1]), 0), gauss_int(0, 1));
        assert!(parse_holo_poly("zb1", 1).is_err());
        // w is allowed in holomorphic context
        let q = parse_holo_poly("w^2 + z1 w", 1).unwrap();
        assert_eq!(q.coeff(&mi(&[0]), 2), gauss_int(1, 0));
    }

    #[test]
    fn real_conversion_rejects_unreal() {
        assert!(parse_real_poly("z1^2", 1).is_err());
        assert!(parse_real_poly("i abs2(z1)", 1).is_err());
        assert!(parse_real_poly("abs2(z1) + abs2(z1)", 1).is_ok());
    }
}
