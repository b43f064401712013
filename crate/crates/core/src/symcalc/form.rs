//! Inhomogeneous differential forms on a chart.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::chart::{same_chart, ChartRef, CoordKind};
use super::coeff::Coeff;
use super::scalar::GaussianRational as Q;
use super::vector::VectorField;
use super::SymError;

/// A wedge monomial `dx_I` stored as the bitmask of `I`.
pub type Mask = u64;

/// Sign of `dx_a ∧ dx_b` relative to `dx_{a ∪ b}`; `None` if they overlap.
pub fn wedge_sign(a: Mask, b: Mask) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        swaps += (a >> j).count_ones();
        bb &= bb - 1;
    }
    Some(swaps % 2 == 1)
}

/// Sign of `ι_{∂k} dx_I` when `k ∈ I`: true means negative.
fn interior_sign(i: Mask, k: usize) -> bool {
    (i & ((1u64 << k) - 1)).count_ones() % 2 == 1
}

fn signed(c: Coeff, neg: bool) -> Coeff {
    if neg {
        c.neg()
    } else {
        c
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffForm {
    chart: ChartRef,
    terms: BTreeMap<Mask, Coeff>,
}

impl DiffForm {
    pub fn zero(chart: &ChartRef) -> Self {
        DiffForm { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(chart: &ChartRef, c: Coeff) -> Self {
        Self::term(chart, 0, c)
    }

    pub fn one(chart: &ChartRef) -> Self {
        Self::scalar(chart, Coeff::one())
    }

    pub fn term(chart: &ChartRef, mask: Mask, c: Coeff) -> Self {
        let mut f = Self::zero(chart);
        f.add_term(mask, c);
        f
    }

    /// `dx_k`.
    pub fn dx(chart: &ChartRef, k: usize) -> Self {
        assert!(k < chart.dim());
        Self::term(chart, 1 << k, Coeff::one())
    }

    pub fn from_terms(chart: &ChartRef, terms: impl IntoIterator<Item = (Mask, Coeff)>) -> Self {
        let mut f = Self::zero(chart);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// Exterior derivative of a 0-form.
    pub fn d_of(chart: &ChartRef, f: &Coeff) -> Self {
        Self::scalar(chart, f.clone()).exterior_d()
    }

    fn add_term(&mut self, mask: Mask, c: Coeff) {
        assert!(mask >> self.chart.dim() == 0, "wedge monomial outside the chart");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&mask);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn chart(&self) -> &ChartRef {
        &self.chart
    }

    pub fn terms(&self) -> &BTreeMap<Mask, Coeff> {
        &self.terms
    }

    pub fn coeff(&self, mask: Mask) -> Coeff {
        self.terms.get(&mask).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Degree-0 component.
    pub fn scalar_part(&self) -> Coeff {
        self.coeff(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree if homogeneous and nonzero.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.count_ones());
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn part(&self, deg: u32) -> Self {
        DiffForm { chart: self.chart.clone(), terms: self.terms.iter().filter(|(m, _)| m.count_ones() == deg).map(|(m, c)| (*m, c.clone())).collect() }
    }

    fn check(&self, other_chart: &ChartRef) {
        assert!(same_chart(&self.chart, other_chart), "chart mismatch: '{}' vs '{}'", self.chart.name(), other_chart.name());
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(&o.chart);
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, f: &Coeff) -> Self {
        if f.is_zero() {
            return Self::zero(&self.chart);
        }
        self.map_coeffs(|c| c.mul(f))
    }

    pub fn scale_q(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Self::zero(&self.chart);
        }
        self.map_coeffs(|c| c.scale(q))
    }

    pub fn conj(&self) -> Self {
        self.map_coeffs(|c| c.conj())
    }

    fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> Self {
        DiffForm { chart: self.chart.clone(), terms: self.terms.iter().map(|(m, c)| (*m, f(c))).filter(|(_, c)| !c.is_zero()).collect() }
    }

    /// Graded-commutative wedge product. Panics on chart mismatch.
    pub fn wedge(&self, o: &Self) -> Self {
        self.check(&o.chart);
        let mut r = Self::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some(neg) = wedge_sign(*ma, *mb) {
                    r.add_term(ma | mb, signed(ca.mul(cb), neg));
                }
            }
        }
        r
    }

    pub fn try_wedge(&self, o: &Self) -> Result<Self, SymError> {
        if !same_chart(&self.chart, &o.chart) {
            return Err(SymError::ChartMismatch(self.chart.name().into(), o.chart.name().into()));
        }
        Ok(self.wedge(o))
    }

    pub fn exterior_d(&self) -> Self {
        let mut r = Self::zero(&self.chart);
        let angles = self.chart.angle_mask();
        for (m, c) in &self.terms {
            let mut vars = c.vars() & !angles & !m;
            while vars != 0 {
                let k = vars.trailing_zeros() as usize;
                vars &= vars - 1;
                let dc = c.derivative(k);
                if !dc.is_zero() {
                    r.add_term(m | 1 << k, signed(dc, interior_sign(*m, k)));
                }
            }
        }
        r
    }

    /// Interior product with a vector field. Panics on chart mismatch.
    pub fn interior(&self, x: &VectorField) -> Self {
        self.check(x.chart());
        let mut r = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            let mut bits = *m;
            while bits != 0 {
                let k = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let xk = x.component(k);
                if xk.is_zero() {
                    continue;
                }
                r.add_term(m & !(1 << k), signed(c.mul(xk), interior_sign(*m, k)));
            }
        }
        r
    }

    pub fn try_interior(&self, x: &VectorField) -> Result<Self, SymError> {
        if !same_chart(&self.chart, x.chart()) {
            return Err(SymError::ChartMismatch(self.chart.name().into(), x.chart().name().into()));
        }
        Ok(self.interior(x))
    }

    /// Lie derivative by Cartan's formula.
    pub fn lie_derivative(&self, x: &VectorField) -> Self {
        self.exterior_d().interior(x).add(&self.interior(x).exterior_d())
    }

    /// Substitutes values for every full coordinate.
    pub fn evaluate(&self, point: &[(usize, Q)]) -> Result<Self, SymError> {
        let mut pt: Vec<Option<Q>> = vec![None; self.chart.dim()];
        for (k, v) in point {
            pt[*k] = Some(v.clone());
        }
        let names = self.chart.names();
        let mut r = Self::zero(&self.chart);
        for (m, c) in &self.terms {
            if c.vars() & !pt.iter().enumerate().fold(0u64, |a, (i, v)| if v.is_some() { a | 1 << i } else { a }) != 0 {
                return Err(SymError::Point(format!("point leaves a variable of {} unassigned", c.fmt_with(&names))));
            }
            let v = c.eval(&pt).map_err(|_| SymError::Pole(c.fmt_with(&names)))?;
            r.add_term(*m, Coeff::constant(v));
        }
        Ok(r)
    }

    /// Evaluation keyed by coordinate name.
    pub fn evaluate_named(&self, point: &[(&str, Q)]) -> Result<Self, SymError> {
        let mut idx = Vec::new();
        for (n, v) in point {
            let k = self.chart.index_of(n).ok_or_else(|| SymError::Point(format!("unknown coordinate '{n}'")))?;
            idx.push((k, v.clone()));
        }
        self.evaluate(&idx)
    }

    /// Horizontality and invariance with respect to the given vertical fields.
    pub fn basic_check(&self, verticals: &[VectorField]) -> BasicReport {
        let mut rep = BasicReport { horizontal: true, invariant: true, obstructions: Vec::new() };
        for (j, x) in verticals.iter().enumerate() {
            let i = self.interior(x);
            if !i.is_zero() {
                rep.horizontal = false;
                rep.obstructions.push(format!("interior product with generator {j} is {i}"));
            }
            let l = self.lie_derivative(x);
            if !l.is_zero() {
                rep.invariant = false;
                rep.obstructions.push(format!("Lie derivative along generator {j} is {l}"));
            }
        }
        rep
    }

    /// Pulls back to the level set `{x_k = value}`, returned on `target`
    /// (the chart with coordinate `k` deleted).
    pub fn restrict(&self, k: usize, value: &Q, target: &ChartRef) -> Result<Self, SymError> {
        let mut r = Self::zero(target);
        let names = self.chart.names();
        for (m, c) in &self.terms {
            if m >> k & 1 == 1 {
                continue;
            }
            let c = c.substitute(&[(k, value.clone())]).map_err(|_| SymError::Pole(c.fmt_with(&names)))?;
            r.add_term(drop_bit(*m, k), c.remap(&|v| if v > k { v - 1 } else { v }));
        }
        Ok(r)
    }

    /// Deletes a coordinate the form does not involve at all (neither in
    /// coefficients nor differentials); used after a basicness certificate.
    pub fn drop_coordinate(&self, k: usize, target: &ChartRef) -> Result<Self, SymError> {
        let mut r = Self::zero(target);
        for (m, c) in &self.terms {
            if m >> k & 1 == 1 || c.vars() >> k & 1 == 1 {
                return Err(SymError::Basic(format!("form still involves coordinate '{}'", self.chart.coord_name(k))));
            }
            r.add_term(drop_bit(*m, k), c.remap(&|v| if v > k { v - 1 } else { v }));
        }
        Ok(r)
    }

    /// Stable key for a wedge monomial, e.g. `du^dphi1`; `1` for degree 0.
    pub fn mask_key(&self, m: Mask) -> String {
        if m == 0 {
            return "1".into();
        }
        (0..self.chart.dim()).filter(|k| m >> k & 1 == 1).map(|k| format!("d{}", self.chart.coord_name(k))).collect::<Vec<_>>().join("^")
    }

    /// Terms in display order (degree, then index tuple), as key/expression strings.
    pub fn to_key_strings(&self) -> Vec<(String, String)> {
        let names = self.chart.names();
        let mut keys: Vec<Mask> = self.terms.keys().copied().collect();
        keys.sort_by_key(|m| (m.count_ones(), index_tuple(*m)));
        keys.into_iter().map(|m| (self.mask_key(m), self.terms[&m].fmt_with(&names))).collect()
    }

    pub fn uses_angles_in_coeffs(&self) -> bool {
        let a = self.chart.angle_mask();
        self.terms.values().any(|c| c.vars() & a != 0)
    }
}

pub(crate) fn drop_bit(m: Mask, k: usize) -> Mask {
    let low = m & ((1u64 << k) - 1);
    let high = m.checked_shr(k as u32 + 1).unwrap_or(0) << k;
    low | high
}

fn index_tuple(m: Mask) -> Vec<u32> {
    (0..64).filter(|k| m >> k & 1 == 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasicReport {
    pub horizontal: bool,
    pub invariant: bool,
    pub obstructions: Vec<String>,
}

impl BasicReport {
    pub fn is_basic(&self) -> bool {
        self.horizontal && self.invariant
    }
}

impl fmt::Display for DiffForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.to_key_strings().into_iter().map(|(k, c)| if k == "1" { format!("({c})") } else { format!("({c})*{k}") }).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl CoordKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CoordKind::Full => "full",
            CoordKind::Angle => "angle",
        }
    }
}
