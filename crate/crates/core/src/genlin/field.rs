use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::symcalc::{Coeff, GaussianRational as Q};

/// Exact field containing `Q(i)`: either the constants or a chart's
/// rational-function field.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_q(q: &Q) -> Self;
    fn conj(&self) -> Self;
    /// Value at a rational point (`None` if undefined there or a variable is missing).
    fn sample(&self, point: &[Option<Q>]) -> Option<Q>;
    /// The value as a real rational constant, when it is one.
    fn real_constant(&self) -> Option<BigRational>;
    fn render(&self, names: &[String]) -> String;

    fn from_int(n: i64) -> Self {
        Self::from_q(&Q::from_int(n))
    }
    fn half() -> Self {
        Self::from_q(&Q::from_frac(1, 2))
    }
    fn i() -> Self {
        Self::from_q(&Q::i())
    }
    fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv().expect("division by zero"))
    }
}

impl Field for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        Q::inv(self)
    }
    fn from_q(q: &Q) -> Self {
        q.clone()
    }
    fn conj(&self) -> Self {
        Q::conj(self)
    }
    fn sample(&self, _: &[Option<Q>]) -> Option<Q> {
        Some(self.clone())
    }
    fn real_constant(&self) -> Option<BigRational> {
        self.is_real().then(|| self.re().clone())
    }
    fn render(&self, _: &[String]) -> String {
        self.to_string()
    }
}

impl Field for Coeff {
    fn zero() -> Self {
        <Coeff as Zero>::zero()
    }
    fn one() -> Self {
        <Coeff as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Coeff::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Coeff::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Coeff::mul(self, o)
    }
    fn neg(&self) -> Self {
        Coeff::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Coeff::inv(self)
    }
    fn from_q(q: &Q) -> Self {
        Coeff::constant(q.clone())
    }
    fn conj(&self) -> Self {
        Coeff::conj(self)
    }
    fn sample(&self, point: &[Option<Q>]) -> Option<Q> {
        let vars = self.vars();
        for v in 0..64 {
            if vars >> v & 1 == 1 && point.get(v).map_or(true, |x| x.is_none()) {
                return None;
            }
        }
        self.eval(point).ok()
    }
    fn real_constant(&self) -> Option<BigRational> {
        self.constant_value().and_then(|q| q.real_constant())
    }
    fn render(&self, names: &[String]) -> String {
        self.fmt_with(names)
    }
}
