//! Rational functions over `Q(i)`: the coefficient field of every tensor.
//!
//! A `Coeff` is kept as `num / den` with `gcd(num, den) = 1` and `den` monic
//! in graded-lex order, so `a == b` is structural equality and zero-testing
//! needs no extra work. Values are reference counted; cloning is cheap.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{gcd, Poly};
use super::scalar::GaussianRational as Q;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Frac {
    num: Poly,
    den: Poly,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coeff(Arc<Frac>);

/// Raised when a denominator vanishes at an evaluation point.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("denominator {den} vanishes at the evaluation point")]
pub struct PoleError {
    pub den: String,
}

impl Coeff {
    fn raw(num: Poly, den: Poly) -> Self {
        Coeff(Arc::new(Frac { num, den }))
    }

    /// Normalizes an arbitrary fraction. Panics if `den` is zero.
    pub fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(c) = den.constant_value() {
            return Self::raw(num.scale(&c.inv().unwrap()), Poly::one());
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap()) };
        Self::monic_den(num, den)
    }

    fn monic_den(num: Poly, den: Poly) -> Self {
        let (den, lc) = den.monic();
        if lc.is_one() {
            Self::raw(num, den)
        } else {
            Self::raw(num.scale(&lc.inv().unwrap()), den)
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self::raw(p, Poly::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Q::from_int(n))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Self::constant(Q::from_frac(n, d))
    }

    pub fn i() -> Self {
        Self::constant(Q::i())
    }

    pub fn var(v: usize) -> Self {
        Self::from_poly(Poly::var(v))
    }

    pub fn num(&self) -> &Poly {
        &self.0.num
    }

    pub fn den(&self) -> &Poly {
        &self.0.den
    }

    pub fn is_constant(&self) -> bool {
        self.0.num.is_constant() && self.0.den.is_one()
    }

    pub fn constant_value(&self) -> Option<Q> {
        if self.0.den.is_one() {
            self.0.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.den.is_one()
    }

    pub fn is_real(&self) -> bool {
        self.0.num.is_real() && self.0.den.is_real()
    }

    pub fn vars(&self) -> u64 {
        self.0.num.vars() | self.0.den.vars()
    }

    pub fn conj(&self) -> Self {
        Self::raw(self.0.num.conj(), self.0.den.conj())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::monic_den(self.0.den.clone(), self.0.num.clone()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::raw(self.0.num.scale(c), self.0.den.clone())
    }

    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 { self.inv().expect("negative power of zero") } else { self.clone() };
        let k = e.unsigned_abs();
        Self::raw(base.0.num.pow(k), base.0.den.pow(k))
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b) = (&self.0.num, &self.0.den);
        let (c, d) = (&o.0.num, &o.0.den);
        if b.is_one() && d.is_one() {
            return Self::from_poly(a.add(c));
        }
        if b == d {
            let t = a.add(c);
            return Self::from_parts(t, b.clone());
        }
        // Henrici: with g = gcd(b, d), only gcd(t, g) can cancel.
        let g = gcd(b, d);
        let (b1, d1) = if g.is_one() { (b.clone(), d.clone()) } else { (b.exact_div(&g).unwrap(), d.exact_div(&g).unwrap()) };
        let t = a.mul(&d1).add(&c.mul(&b1));
        if t.is_zero() {
            return Self::zero();
        }
        if g.is_one() {
            return Self::monic_den(t, b.mul(d));
        }
        let h = gcd(&t, &g);
        let (t, dh) = if h.is_one() { (t, d.clone()) } else { (t.exact_div(&h).unwrap(), d.exact_div(&h).unwrap()) };
        Self::monic_den(t, b1.mul(&dh))
    }

    pub fn neg(&self) -> Self {
        Self::raw(self.0.num.neg(), self.0.den.clone())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.constant_value() {
            return o.scale(&c);
        }
        if let Some(c) = o.constant_value() {
            return self.scale(&c);
        }
        let (a, b) = (&self.0.num, &self.0.den);
        let (c, d) = (&o.0.num, &o.0.den);
        if b.is_one() && d.is_one() {
            return Self::from_poly(a.mul(c));
        }
        let g1 = gcd(a, d);
        let g2 = gcd(c, b);
        let div = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.exact_div(g).unwrap() };
        let num = div(a, &g1).mul(&div(c, &g2));
        let den = div(b, &g2).mul(&div(d, &g1));
        Self::monic_den(num, den)
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero coefficient"))
    }

    /// Partial derivative with respect to variable `v`.
    pub fn derivative(&self, v: usize) -> Self {
        if self.vars() >> v & 1 == 0 {
            return Self::zero();
        }
        let (a, b) = (&self.0.num, &self.0.den);
        if b.is_one() {
            return Self::from_poly(a.derivative(v));
        }
        let num = a.derivative(v).mul(b).sub(&a.mul(&b.derivative(v)));
        Self::from_parts(num, b.mul(b))
    }

    /// Substitutes constants for some variables.
    pub fn substitute(&self, vals: &[(usize, Q)]) -> Result<Self, PoleError> {
        let num = self.0.num.substitute(vals);
        let den = self.0.den.substitute(vals);
        if den.is_zero() {
            return Err(PoleError { den: self.0.den.to_string() });
        }
        Ok(Self::from_parts(num, den))
    }

    /// Evaluates at a point; `point[v]` must cover all variables that occur.
    pub fn eval(&self, point: &[Option<Q>]) -> Result<Q, PoleError> {
        let den = self.0.den.eval(point).expect("evaluation point misses a variable");
        if den.is_zero() {
            return Err(PoleError { den: self.0.den.to_string() });
        }
        let num = self.0.num.eval(point).expect("evaluation point misses a variable");
        Ok(&num / &den)
    }

    /// Renames variables through `f`; `f` must be injective on occurring variables.
    pub fn remap(&self, f: &dyn Fn(usize) -> usize) -> Self {
        let rn = |p: &Poly| {
            Poly::from_terms(
                p.terms()
                    .iter()
                    .map(|(m, c)| {
                        let mut e = vec![0u16; 0];
                        for (i, &x) in m.exps().iter().enumerate() {
                            if x > 0 {
                                let j = f(i);
                                if e.len() <= j {
                                    e.resize(j + 1, 0);
                                }
                                e[j] = x;
                            }
                        }
                        (super::poly::Mono::from_exps(&e), c.clone())
                    })
                    .collect(),
            )
        };
        Self::monic_den(rn(&self.0.num), rn(&self.0.den))
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let n = self.0.num.fmt_with(names);
        if self.0.den.is_one() {
            return n;
        }
        let d = self.0.den.fmt_with(names);
        let n = if self.0.num.len() > 1 { format!("({n})") } else { n };
        let d = if self.0.den.len() > 1 || d.contains('*') { format!("({d})") } else { d };
        format!("{n}/{d}")
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Self::raw(Poly::zero(), Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }
}

impl One for Coeff {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_one(&self) -> bool {
        self.0.num.is_one() && self.0.den.is_one()
    }
}

impl std::ops::Add for Coeff {
    type Output = Coeff;
    fn add(self, o: Coeff) -> Coeff {
        Coeff::add(&self, &o)
    }
}

impl std::ops::Mul for Coeff {
    type Output = Coeff;
    fn mul(self, o: Coeff) -> Coeff {
        Coeff::mul(&self, &o)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&[]))
    }
}

impl From<Q> for Coeff {
    fn from(c: Q) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Coeff {
        Coeff::var(0)
    }
    fn y() -> Coeff {
        Coeff::var(1)
    }

    #[test]
    fn normalization_cancels() {
        // (x^2 - y^2) / (2x + 2y) = (x - y)/2
        let num = x().mul(&x()).sub(&y().mul(&y()));
        let den = x().add(&y()).scale(&Q::from_int(2));
        let q = num.div(&den);
        assert_eq!(q, x().sub(&y()).scale(&Q::from_frac(1, 2)));
        assert!(q.is_polynomial());
    }

    #[test]
    fn sum_of_fractions() {
        // 1/x - 1/(x+1) = 1/(x(x+1))
        let one = Coeff::one();
        let a = one.div(&x()).sub(&one.div(&x().add(&one)));
        let b = one.div(&x().mul(&x().add(&one)));
        assert_eq!(a, b);
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn quotient_rule() {
        let f = x().div(&x().add(&y()));
        let df = f.derivative(0);
        let expected = y().div(&x().add(&y()).pow(2));
        assert_eq!(df, expected);
    }

    #[test]
    fn evaluation_and_poles() {
        let f = Coeff::one().div(&x());
        assert!(f.eval(&[Some(Q::zero())]).is_err());
        assert_eq!(f.eval(&[Some(Q::from_int(4))]).unwrap(), Q::from_frac(1, 4));
    }
}
