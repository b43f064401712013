//! Expression grammar for coefficients:
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' int)?          int may be negative, e.g. x^-1 or x^(-2)
//! atom  := integer | 'i' | coordinate | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use super::chart::{ChartRef, CoordKind};
use super::coeff::Coeff;
use super::form::{wedge_sign, DiffForm};
use super::scalar::GaussianRational as Q;
use super::vector::VectorField;
use super::SymError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, SymError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[st..i].iter().collect();
            out.push((st, Tok::Int(lit.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push((st, Tok::Ident(cs[st..i].iter().collect())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(SymError::Parse(format!("unexpected character '{c}' at column {} in '{s}'", i + 1)));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    chart: Option<&'a ChartRef>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> SymError {
        let col = self.toks.get(self.pos).map(|t| t.0 + 1).unwrap_or(self.src.len() + 1);
        SymError::Parse(format!("{msg} at column {col} in '{}'", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Coeff, SymError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Coeff, SymError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                let d = self.unary()?;
                if num_traits::Zero::is_zero(&d) {
                    return Err(self.err("division by zero"));
                }
                acc = acc.div(&d);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Coeff, SymError> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn int_exponent(&mut self) -> Result<i32, SymError> {
        let paren = self.eat('(');
        let neg = self.eat('-');
        let v = match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                i32::try_from(n).map_err(|_| self.err("exponent too large"))?
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        if paren && !self.eat(')') {
            return Err(self.err("expected ')'"));
        }
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<Coeff, SymError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.int_exponent()?;
            if e < 0 && num_traits::Zero::is_zero(&base) {
                return Err(self.err("negative power of zero"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Coeff, SymError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Coeff::constant(Q::from_real(BigRational::from_integer(n))))
            }
            Some(Tok::Ident(name)) => {
                if name == "i" {
                    self.pos += 1;
                    return Ok(Coeff::i());
                }
                let Some(chart) = self.chart else {
                    return Err(self.err(&format!("unknown symbol '{name}'")));
                };
                let Some(k) = chart.index_of(&name) else {
                    return Err(self.err(&format!("unknown coordinate '{name}'")));
                };
                if chart.kind(k) == CoordKind::Angle {
                    return Err(self.err(&format!("angle coordinate '{name}' cannot appear in a coefficient")));
                }
                self.pos += 1;
                Ok(Coeff::var(k))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, 'i', a coordinate or '('")),
        }
    }
}

fn parse_with(chart: Option<&ChartRef>, s: &str) -> Result<Coeff, SymError> {
    let toks = lex(s)?;
    let mut p = Parser { src: s, toks, pos: 0, chart };
    if p.toks.is_empty() {
        return Err(SymError::Parse("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a coefficient expression over the chart's full coordinates.
pub fn parse_coeff(chart: &ChartRef, s: &str) -> Result<Coeff, SymError> {
    parse_with(Some(chart), s)
}

/// Parses a constant in `Q(i)`, e.g. `3/2 - i/4`.
pub fn parse_scalar(s: &str) -> Result<Q, SymError> {
    parse_with(None, s)?.constant_value().ok_or_else(|| SymError::Parse(format!("'{s}' is not a constant")))
}

/// Parses a wedge key such as `du^dphi1` (or `1` for degree 0) into a mask
/// and the sign needed to reorder it.
pub fn parse_wedge_key(chart: &ChartRef, key: &str) -> Result<(u64, bool), SymError> {
    let key = key.trim();
    if key == "1" || key.is_empty() {
        return Ok((0, false));
    }
    let mut mask = 0u64;
    let mut neg = false;
    for part in key.split('^') {
        let part = part.trim();
        let name = part.strip_prefix('d').ok_or_else(|| SymError::Parse(format!("wedge factor '{part}' must look like d<coordinate>")))?;
        let k = chart.index_of(name).ok_or_else(|| SymError::Parse(format!("unknown coordinate '{name}' in wedge key '{key}'")))?;
        match wedge_sign(mask, 1 << k) {
            Some(s) => neg ^= s,
            None => return Err(SymError::Parse(format!("repeated differential in wedge key '{key}'"))),
        }
        mask |= 1 << k;
    }
    Ok((mask, neg))
}

/// Builds a form from `(wedge key, coefficient expression)` pairs.
pub fn parse_form<'a>(chart: &ChartRef, entries: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<DiffForm, SymError> {
    let mut f = DiffForm::zero(chart);
    for (k, e) in entries {
        let (mask, neg) = parse_wedge_key(chart, k)?;
        let c = parse_coeff(chart, e)?;
        let c = if neg { c.neg() } else { c };
        f = f.add(&DiffForm::term(chart, mask, c));
    }
    Ok(f)
}

/// Builds a vector field from `(coordinate name, expression)` pairs.
pub fn parse_vector<'a>(chart: &ChartRef, entries: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<VectorField, SymError> {
    let mut v = VectorField::zero(chart);
    for (name, e) in entries {
        let k = chart.index_of(name).ok_or_else(|| SymError::Parse(format!("unknown coordinate '{name}'")))?;
        let c = parse_coeff(chart, e)?;
        v = v.add(&VectorField::coordinate(chart, k).scale(&c));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcalc::chart::Chart;

    #[test]
    fn expressions() {
        let c = Chart::with_kinds("m", &[("u", CoordKind::Full), ("phi", CoordKind::Angle)]);
        let a = parse_coeff(&c, "(1-u)^2/(2*u) + i").unwrap();
        let u = Coeff::var(0);
        let expected = <Coeff as num_traits::One>::one().sub(&u).pow(2).div(&u.scale(&Q::from_int(2))).add(&Coeff::i());
        assert_eq!(a, expected);
        assert_eq!(parse_coeff(&c, "u^-1").unwrap(), u.inv().unwrap());
        assert!(parse_coeff(&c, "phi").is_err());
        assert!(parse_coeff(&c, "1/0").is_err());
        assert!(parse_coeff(&c, "u +").is_err());
        assert_eq!(parse_scalar("-3/4").unwrap(), Q::from_frac(-3, 4));
    }

    #[test]
    fn wedge_keys_reorder_with_sign() {
        let c = Chart::with_kinds("m", &[("u", CoordKind::Full), ("phi", CoordKind::Angle)]);
        let f = parse_form(&c, [("dphi^du", "u")]).unwrap();
        assert_eq!(f.coeff(0b11), Coeff::var(0).neg());
        assert!(parse_form(&c, [("du^du", "1")]).is_err());
    }
}
