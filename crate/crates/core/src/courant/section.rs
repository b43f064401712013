//! Sections of `TM ⊕ T*M`, closed twisting 3-forms, and infinitesimal
//! symmetries `(X, A)`.

use std::fmt;

use num_traits::Zero;

use crate::symcalc::chart::same_chart;
use crate::symcalc::{ChartRef, Coeff, DiffForm, GaussianRational as Q, VectorField};

use super::CourantError;

/// `X + ξ` with `ξ` a 1-form on the same chart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSection {
    pub x: VectorField,
    pub xi: DiffForm,
}

fn expect_degree(f: &DiffForm, deg: u32, what: &str) -> Result<(), CourantError> {
    match f.degree() {
        None if f.is_zero() => Ok(()),
        Some(d) if d == deg => Ok(()),
        _ => Err(CourantError::Degree(format!("{what} must be a {deg}-form, got {f}"))),
    }
}

fn expect_chart(a: &ChartRef, b: &ChartRef) -> Result<(), CourantError> {
    if same_chart(a, b) {
        Ok(())
    } else {
        Err(CourantError::ChartMismatch(a.name().into(), b.name().into()))
    }
}

impl GenSection {
    pub fn new(x: VectorField, xi: DiffForm) -> Result<Self, CourantError> {
        expect_chart(x.chart(), xi.chart())?;
        expect_degree(&xi, 1, "ξ")?;
        Ok(GenSection { x, xi })
    }

    pub fn zero(chart: &ChartRef) -> Self {
        GenSection { x: VectorField::zero(chart), xi: DiffForm::zero(chart) }
    }

    pub fn vector(x: VectorField) -> Self {
        let xi = DiffForm::zero(x.chart());
        GenSection { x, xi }
    }

    pub fn form(xi: DiffForm) -> Result<Self, CourantError> {
        Self::new(VectorField::zero(xi.chart()), xi)
    }

    pub fn chart(&self) -> &ChartRef {
        self.x.chart()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.xi.is_zero()
    }

    pub fn same_chart(&self, o: &Self) -> Result<(), CourantError> {
        expect_chart(self.chart(), o.chart())
    }

    pub fn add(&self, o: &Self) -> Self {
        GenSection { x: self.x.add(&o.x), xi: self.xi.add(&o.xi) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        GenSection { x: self.x.sub(&o.x), xi: self.xi.sub(&o.xi) }
    }

    pub fn neg(&self) -> Self {
        GenSection { x: self.x.neg(), xi: self.xi.neg() }
    }

    pub fn scale(&self, f: &Coeff) -> Self {
        GenSection { x: self.x.scale(f), xi: self.xi.scale(f) }
    }

    pub fn conj(&self) -> Self {
        GenSection { x: self.x.conj(), xi: self.xi.conj() }
    }

    /// `ι_Xξ`, twice the pairing of the section with itself.
    pub fn contraction(&self) -> Coeff {
        self.x.pair(&self.xi)
    }

    /// `⟨x, y⟩ = ½(ι_Xη + ι_Yξ)`.
    pub fn pairing(&self, o: &Self) -> Coeff {
        self.x.pair(&o.xi).add(&o.x.pair(&self.xi)).scale(&Q::from_frac(1, 2))
    }

    /// Components `(X^1..X^n, ξ_1..ξ_n)`.
    pub fn to_vec(&self) -> Vec<Coeff> {
        let n = self.chart().dim();
        let mut v = self.x.components().to_vec();
        v.extend((0..n).map(|k| self.xi.coeff(1 << k)));
        v
    }

    pub fn from_vec(chart: &ChartRef, v: &[Coeff]) -> Result<Self, CourantError> {
        let n = chart.dim();
        if v.len() != 2 * n {
            return Err(CourantError::Shape(format!("section needs {} components, got {}", 2 * n, v.len())));
        }
        let x = VectorField::new(chart, v[..n].to_vec())?;
        let xi = DiffForm::from_terms(chart, (0..n).map(|k| (1u64 << k, v[n + k].clone())));
        Ok(GenSection { x, xi })
    }

    /// `e^B(X + ξ) = X + ξ + ι_XB`.
    pub fn b_transform(&self, b: &DiffForm) -> Self {
        GenSection { x: self.x.clone(), xi: self.xi.add(&b.interior(&self.x)) }
    }

    pub fn evaluate(&self, point: &[(usize, Q)]) -> Result<Self, CourantError> {
        Ok(GenSection { x: self.x.evaluate(point)?, xi: self.xi.evaluate(point)? })
    }
}

impl fmt::Display for GenSection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.x.is_zero(), self.xi.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.x),
            (true, false) => write!(f, "{}", self.xi),
            (false, false) => write!(f, "{} + {}", self.x, self.xi),
        }
    }
}

/// A closed 3-form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistData {
    h: DiffForm,
}

impl TwistData {
    pub fn new(h: DiffForm) -> Result<Self, CourantError> {
        expect_degree(&h, 3, "H")?;
        let dh = h.exterior_d();
        if !dh.is_zero() {
            return Err(CourantError::NotClosed(format!("dH = {dh}")));
        }
        Ok(TwistData { h })
    }

    pub fn zero(chart: &ChartRef) -> Self {
        TwistData { h: DiffForm::zero(chart) }
    }

    /// `H = dB`, closed by construction.
    pub fn exact(b: &DiffForm) -> Result<Self, CourantError> {
        Self::new(b.exterior_d())
    }

    pub fn h(&self) -> &DiffForm {
        &self.h
    }

    pub fn chart(&self) -> &ChartRef {
        self.h.chart()
    }

    pub fn add(&self, o: &Self) -> Self {
        TwistData { h: self.h.add(&o.h) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        TwistData { h: self.h.sub(&o.h) }
    }
}

/// `(X, A)` with `A` a closed 2-form: an element of `Γ(TM) ⊕ Ω²₀(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryPair {
    pub x: VectorField,
    pub a: DiffForm,
}

impl SymmetryPair {
    pub fn new(x: VectorField, a: DiffForm) -> Result<Self, CourantError> {
        expect_chart(x.chart(), a.chart())?;
        expect_degree(&a, 2, "A")?;
        let da = a.exterior_d();
        if !da.is_zero() {
            return Err(CourantError::NotClosed(format!("dA = {da}")));
        }
        Ok(SymmetryPair { x, a })
    }

    /// No closedness requirement; images of `ψ_H` need not be closed.
    pub fn unchecked(x: VectorField, a: DiffForm) -> Self {
        SymmetryPair { x, a }
    }

    pub fn sub(&self, o: &Self) -> Self {
        SymmetryPair { x: self.x.sub(&o.x), a: self.a.sub(&o.a) }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.a.is_zero()
    }
}

impl fmt::Display for SymmetryPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.a)
    }
}

/// Residual text for reports; empty when the residual vanishes.
pub(crate) fn coeff_detail(c: &Coeff, chart: &ChartRef) -> String {
    if c.is_zero() {
        String::new()
    } else {
        format!("residual {}", c.fmt_with(&chart.names()))
    }
}
