//! Sparse multivariate polynomials over `Q(i)`.
//!
//! Terms are kept sorted in descending graded-lexicographic order
//! (`x0 > x1 > ...` within a degree) with no zero coefficients, so two equal
//! polynomials always have identical term vectors.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::scalar::GaussianRational as Q;

/// Exponent vector with trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(SmallVec<[u16; 8]>);

impl Mono {
    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(v: usize) -> Self {
        let mut e = SmallVec::from_elem(0u16, v + 1);
        e[v] = 1;
        Mono(e)
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        let mut m = Mono(SmallVec::from_slice(exps));
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let n = self.0.len().max(other.0.len());
        let mut e = SmallVec::with_capacity(n);
        for i in 0..n {
            e.push(self.exp(i) + other.exp(i));
        }
        Mono(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Mono) -> Option<Mono> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (i, &b) in other.0.iter().enumerate() {
            if e[i] < b {
                return None;
            }
            e[i] -= b;
        }
        let mut m = Mono(e);
        m.trim();
        Some(m)
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let n = self.0.len().min(other.0.len());
        let mut m = Mono((0..n).map(|i| self.0[i].min(other.0[i])).collect());
        m.trim();
        m
    }

    fn with_exp(&self, v: usize, e: u16) -> Mono {
        let mut x = self.0.clone();
        if x.len() <= v {
            x.resize(v + 1, 0);
        }
        x[v] = e;
        let mut m = Mono(x);
        m.trim();
        m
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    terms: Vec<(Mono, Q)>,
}

/// Bitmask of variables that occur in a polynomial (at most 64 variables).
pub type VarSet = u64;

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    pub fn var(v: usize) -> Self {
        Poly { terms: vec![(Mono::var(v), Q::one())] }
    }

    pub fn term(m: Mono, c: Q) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(mut terms: Vec<(Mono, Q)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, Q)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<&(Mono, Q)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Q {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Q::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> VarSet {
        let mut s = 0u64;
        for (m, _) in &self.terms {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    s |= 1 << i;
                }
            }
        }
        s
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    pub fn conj(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Mono, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect() }
    }

    /// Divides by the leading coefficient; returns the normalized polynomial
    /// and the factor that was removed.
    pub fn monic(&self) -> (Poly, Q) {
        match self.terms.first() {
            None => (Poly::zero(), Q::one()),
            Some((_, lc)) if lc.is_one() => (self.clone(), Q::one()),
            Some((_, lc)) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                (self.scale(&inv), lc.clone())
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { terms: out }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                prods.push((ma.mul(mb), ca * cb));
            }
        }
        Poly::from_terms(prods)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, v: usize) -> Poly {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            out.push((m.with_exp(v, e - 1), c * &Q::from_int(e as i64)));
        }
        Poly::from_terms(out)
    }

    /// Substitutes constants for some variables.
    pub fn substitute(&self, vals: &[(usize, Q)]) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut mono = m.clone();
            for (v, x) in vals {
                let e = mono.exp(*v);
                if e > 0 {
                    coeff = &coeff * &x.pow(e as u32);
                    mono = mono.with_exp(*v, 0);
                }
            }
            out.push((mono, coeff));
        }
        Poly::from_terms(out)
    }

    /// Full evaluation; `point[v]` must be provided for every occurring variable.
    pub fn eval(&self, point: &[Option<Q>]) -> Option<Q> {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let x = point.get(v)?.as_ref()?;
                    t = &t * &x.pow(e as u32);
                }
            }
            acc += &t;
        }
        Some(acc)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv().unwrap()));
        }
        if self.total_degree() < d.total_degree() {
            return None;
        }
        let dv = d.vars();
        for v in 0..64 {
            if dv >> v & 1 == 1 && self.degree_in(v) < d.degree_in(v) {
                return None;
            }
        }
        let (dm, dc) = d.terms[0].clone();
        let dc_inv = dc.inv().unwrap();
        let mut rem = self.clone();
        let mut q = Vec::new();
        while let Some((lm, lc)) = rem.terms.first().cloned() {
            let qm = lm.checked_div(&dm)?;
            let qc = &lc * &dc_inv;
            rem = rem.sub(&d.mul_term(&qm, &qc));
            q.push((qm, qc));
        }
        Some(Poly { terms: q })
    }

    /// Coefficients with respect to `v`: `result[k]` is the coefficient of `v^k`.
    pub fn to_univariate(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, Q)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            buckets[e].push((m.with_exp(v, 0), c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_univariate(v: usize, coeffs: &[Poly]) -> Poly {
        let mut out = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                out.push((m.with_exp(v, m.exp(v) + k as u16), a.clone()));
            }
        }
        Poly::from_terms(out)
    }

    /// Formats with the given variable names, e.g. `2*u^2-1/2*i*s+3`.
    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mono = mono_string(m, names);
            let (neg, mag) = split_sign(c);
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push(if neg { '-' } else { '+' });
            }
            if mono.is_empty() {
                s.push_str(&coeff_string(&mag));
            } else if mag.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&coeff_string(&mag));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }
}

fn split_sign(c: &Q) -> (bool, Q) {
    use num_traits::Signed;
    let neg = if c.re().is_zero() { c.im().is_negative() } else { c.re().is_negative() };
    if neg {
        (true, -c)
    } else {
        (false, c.clone())
    }
}

fn coeff_string(c: &Q) -> String {
    if c.needs_parens() {
        format!("({c})")
    } else {
        c.to_string()
    }
}

fn mono_string(m: &Mono, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
        if e == 1 {
            parts.push(name);
        } else {
            parts.push(format!("{name}^{e}"));
        }
    }
    parts.join("*")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}

// ---------------------------------------------------------------------------
// gcd

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic().0;
    }
    if b.is_zero() {
        return a.monic().0;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a.len() == 1 || b.len() == 1 {
        return monomial_gcd(a, b);
    }
    let shared = a.vars() & b.vars();
    if shared == 0 {
        return Poly::one();
    }
    let (am, _) = a.monic();
    let (bm, _) = b.monic();
    if am == bm {
        return am;
    }
    if probably_coprime(a, b, shared) {
        return Poly::one();
    }
    if a.len() <= b.len() {
        if b.exact_div(a).is_some() {
            return am;
        }
    } else if a.exact_div(b).is_some() {
        return bm;
    }
    gcd_full(a, b)
}

/// gcd when one side is a single term: the common monomial part.
fn monomial_gcd(a: &Poly, b: &Poly) -> Poly {
    let (single, other) = if a.len() == 1 { (a, b) } else { (b, a) };
    let mut g = single.terms[0].0.clone();
    for (m, _) in &other.terms {
        g = g.gcd(m);
        if g.is_one() {
            break;
        }
    }
    Poly::term(g, Q::one())
}

const EVAL_POINTS: [i64; 16] = [3, -2, 5, 7, -4, 11, 13, 6, -9, 17, 19, -8, 23, 10, 29, -12];

/// Cheap certificate of coprimality: for each shared variable `v`, specialize
/// all other variables and compare univariate gcd degrees. A degree-0 image
/// with preserved leading coefficients proves the true gcd is free of `v`.
fn probably_coprime(a: &Poly, b: &Poly, shared: VarSet) -> bool {
    let all = a.vars() | b.vars();
    for v in 0..64 {
        if shared >> v & 1 == 0 {
            continue;
        }
        let vals: Vec<(usize, Q)> =
            (0..64).filter(|&w| w != v && all >> w & 1 == 1).map(|w| (w, Q::from_int(EVAL_POINTS[(w * 5 + v) % EVAL_POINTS.len()]))).collect();
        let ua = dense_univariate(&a.substitute(&vals), v);
        let ub = dense_univariate(&b.substitute(&vals), v);
        if ua.len() != a.degree_in(v) as usize + 1 || ub.len() != b.degree_in(v) as usize + 1 {
            return false;
        }
        if univariate_field_gcd(ua, ub).len() > 1 {
            return false;
        }
    }
    true
}

fn dense_univariate(p: &Poly, v: usize) -> Vec<Q> {
    let deg = p.degree_in(v) as usize;
    let mut out = vec![Q::zero(); if p.is_zero() { 0 } else { deg + 1 }];
    for (m, c) in &p.terms {
        out[m.exp(v) as usize] += c;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Euclid over `Q(i)` on dense coefficient vectors (low degree first).
fn univariate_field_gcd(mut a: Vec<Q>, mut b: Vec<Q>) -> Vec<Q> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let lb_inv = b.last().unwrap().inv().unwrap();
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let f = a.last().unwrap() * &lb_inv;
            for (k, c) in b.iter().enumerate() {
                let t = &f * c;
                a[k + shift] -= &t;
            }
            a.pop();
            while a.last().is_some_and(|c| c.is_zero()) {
                a.pop();
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(l) = a.last().cloned() {
        let inv = l.inv().unwrap();
        for c in a.iter_mut() {
            *c = &*c * &inv;
        }
    }
    a
}

fn highest_var(s: VarSet) -> usize {
    63 - s.leading_zeros() as usize
}

fn content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_full(a: &Poly, b: &Poly) -> Poly {
    let v = highest_var(a.vars() | b.vars());
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    if ub.len() == 1 {
        return gcd(&content(&ua), b);
    }
    if ua.len() == 1 {
        return gcd(a, &content(&ub));
    }
    let ca = content(&ua);
    let cb = content(&ub);
    let pa: Vec<Poly> = ua.iter().map(|c| c.exact_div(&ca).unwrap()).collect();
    let pb: Vec<Poly> = ub.iter().map(|c| c.exact_div(&cb).unwrap()).collect();
    let g = primitive_prs(pa, pb);
    let c = gcd(&ca, &cb);
    Poly::from_univariate(v, &g).mul(&c).monic().0
}

fn trim_uni(p: &mut Vec<Poly>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn primitive_part(mut p: Vec<Poly>) -> Vec<Poly> {
    trim_uni(&mut p);
    let c = content(&p);
    if c.is_zero() || c.is_constant() {
        return p;
    }
    p.into_iter().map(|x| x.exact_div(&c).unwrap()).collect()
}

/// Pseudo-remainder of `a` by `b` in `D[v]`.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut r: Vec<Poly> = a.to_vec();
    let lb = b.last().unwrap();
    trim_uni(&mut r);
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let lr = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, c) in b.iter().enumerate() {
            let t = c.mul(&lr);
            r[k + shift] = r[k + shift].sub(&t);
        }
        debug_assert!(r.last().unwrap().is_zero());
        r.pop();
        trim_uni(&mut r);
    }
    r
}

fn primitive_prs(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut f, mut g) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    trim_uni(&mut g);
    while !g.is_empty() {
        let r = prem(&f, &g);
        f = g;
        g = primitive_part(r);
    }
    if f.len() <= 1 {
        return vec![Poly::one()];
    }
    primitive_part(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Poly {
        Poly::var(0)
    }
    fn y() -> Poly {
        Poly::var(1)
    }
    fn z() -> Poly {
        Poly::var(2)
    }
    fn c(n: i64) -> Poly {
        Poly::constant(Q::from_int(n))
    }

    #[test]
    fn grlex_ordering() {
        // x^2 > x*y > y^2 > x > y > 1
        let ms = [Mono::from_exps(&[2]), Mono::from_exps(&[1, 1]), Mono::from_exps(&[0, 2]), Mono::from_exps(&[1]), Mono::from_exps(&[0, 1]), Mono::one()];
        for w in ms.windows(2) {
            assert!(w[0] > w[1], "{:?} > {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn exact_division_roundtrip() {
        let a = x().add(&y()).mul(&x().sub(&c(3)));
        let b = x().sub(&c(3));
        assert_eq!(a.exact_div(&b).unwrap(), x().add(&y()));
        assert!(a.exact_div(&z()).is_none());
    }

    #[test]
    fn gcd_multivariate() {
        let common = x().mul(&y()).add(&z()).add(&c(1));
        let a = common.mul(&x().add(&c(2)));
        let b = common.mul(&y().sub(&z()));
        assert_eq!(gcd(&a, &b), common.monic().0);
        assert!(gcd(&x().add(&c(1)), &y().add(&c(1))).is_one());
        let sq = x().mul(&x()).add(&y().mul(&y()));
        assert_eq!(gcd(&sq.mul(&sq), &sq.mul(&x())), sq);
    }

    #[test]
    fn gcd_with_gaussian_coefficients() {
        let zi = x().add(&Poly::constant(Q::i()).mul(&y()));
        let zb = x().sub(&Poly::constant(Q::i()).mul(&y()));
        let sq = zi.mul(&zb); // x^2 + y^2
        assert_eq!(sq, x().mul(&x()).add(&y().mul(&y())));
        assert_eq!(gcd(&sq, &zi.mul(&c(5))), zi.monic().0);
    }

    #[test]
    fn derivative_and_substitution() {
        let p = x().pow(3).mul(&y()).add(&c(2));
        assert_eq!(p.derivative(0), c(3).mul(&x().pow(2)).mul(&y()));
        let s = p.substitute(&[(0, Q::from_int(2))]);
        assert_eq!(s, c(8).mul(&y()).add(&c(2)));
    }

    #[test]
    fn formatting() {
        let names = vec!["u".to_string(), "s".to_string()];
        let p = c(2).mul(&x().pow(2)).sub(&Poly::constant(Q::from_frac(1, 2)).mul(&y())).add(&c(3));
        assert_eq!(p.fmt_with(&names), "2*u^2-1/2*s+3");
    }
}
