use std::fmt;

use num_traits::Zero;

use super::chart::{same_chart, ChartRef};
use super::coeff::Coeff;
use super::form::DiffForm;
use super::scalar::GaussianRational as Q;
use super::SymError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    chart: ChartRef,
    comps: Vec<Coeff>,
}

impl VectorField {
    pub fn new(chart: &ChartRef, comps: Vec<Coeff>) -> Result<Self, SymError> {
        if comps.len() != chart.dim() {
            return Err(SymError::Shape(format!("vector field needs {} components, got {}", chart.dim(), comps.len())));
        }
        Ok(VectorField { chart: chart.clone(), comps })
    }

    pub fn zero(chart: &ChartRef) -> Self {
        VectorField { chart: chart.clone(), comps: vec![Coeff::zero(); chart.dim()] }
    }

    /// The coordinate field `∂_k`.
    pub fn coordinate(chart: &ChartRef, k: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[k] = Coeff::from_int(1);
        v
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn component(&self, k: usize) -> &Coeff {
        &self.comps[k]
    }

    pub fn components(&self) -> &[Coeff] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &ChartRef) {
        assert!(same_chart(&self.chart, o), "chart mismatch: '{}' vs '{}'", self.chart.name(), o.name());
    }

    fn zip(&self, o: &Self, f: impl Fn(&Coeff, &Coeff) -> Coeff) -> Self {
        self.check(&o.chart);
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c.neg()).collect() }
    }

    pub fn scale(&self, f: &Coeff) -> Self {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c.mul(f)).collect() }
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c.scale(q)).collect() }
    }

    pub fn conj(&self) -> Self {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|c| c.conj()).collect() }
    }

    /// Directional derivative `X(f)`; angle coordinates never occur in `f`.
    pub fn apply(&self, f: &Coeff) -> Coeff {
        let mut acc = Coeff::zero();
        let mut vars = f.vars();
        while vars != 0 {
            let k = vars.trailing_zeros() as usize;
            vars &= vars - 1;
            if k >= self.comps.len() || self.comps[k].is_zero() {
                continue;
            }
            acc = acc.add(&self.comps[k].mul(&f.derivative(k)));
        }
        acc
    }

    /// Lie bracket `[X, Y]^k = X(Y^k) - Y(X^k)`.
    pub fn bracket(&self, o: &Self) -> Self {
        self.check(&o.chart);
        let comps = (0..self.comps.len()).map(|k| self.apply(&o.comps[k]).sub(&o.apply(&self.comps[k]))).collect();
        VectorField { chart: self.chart.clone(), comps }
    }

    /// Contraction with a 1-form (the degree-1 part of `a` is used).
    pub fn pair(&self, a: &DiffForm) -> Coeff {
        a.part(1).interior(self).scalar_part()
    }

    pub fn evaluate(&self, point: &[(usize, Q)]) -> Result<Self, SymError> {
        let mut pt: Vec<Option<Q>> = vec![None; self.chart.dim()];
        for (k, v) in point {
            pt[*k] = Some(v.clone());
        }
        let names = self.chart.names();
        let comps = self.comps.iter().map(|c| c.eval(&pt).map(Coeff::constant).map_err(|_| SymError::Pole(c.fmt_with(&names)))).collect::<Result<_, _>>()?;
        Ok(VectorField { chart: self.chart.clone(), comps })
    }

    /// Restriction to `{x_k = value}`; the field must be tangent there.
    pub fn restrict(&self, k: usize, value: &Q, target: &ChartRef) -> Result<Self, SymError> {
        let names = self.chart.names();
        let sub = |c: &Coeff| c.substitute(&[(k, value.clone())]).map_err(|_| SymError::Pole(c.fmt_with(&names)));
        if !sub(&self.comps[k])?.is_zero() {
            return Err(SymError::Basic(format!("vector field is not tangent to {} = {value}", self.chart.coord_name(k))));
        }
        let mut comps = Vec::new();
        for (j, c) in self.comps.iter().enumerate() {
            if j != k {
                comps.push(sub(c)?.remap(&|v| if v > k { v - 1 } else { v }));
            }
        }
        VectorField::new(target, comps)
    }

    /// Deletes a coordinate the field does not involve.
    pub fn drop_coordinate(&self, k: usize, target: &ChartRef) -> Result<Self, SymError> {
        if !self.comps[k].is_zero() || self.comps.iter().any(|c| c.vars() >> k & 1 == 1) {
            return Err(SymError::Basic(format!("vector field still involves '{}'", self.chart.coord_name(k))));
        }
        let comps = self.comps.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, c)| c.remap(&|v| if v > k { v - 1 } else { v })).collect();
        VectorField::new(target, comps)
    }

    pub fn to_key_strings(&self) -> Vec<(String, String)> {
        let names = self.chart.names();
        self.comps.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (names[k].clone(), c.fmt_with(&names))).collect()
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.to_key_strings().into_iter().map(|(k, c)| format!("({c})*d/d{k}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
