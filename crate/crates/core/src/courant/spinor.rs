//! Mixed-degree forms as spinors for `TM ⊕ T*M`: Clifford action, the
//! twisted differential, annihilators, and the integrability equation
//! `d_Hρ = 𝔜·ρ`.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::checks::CheckList;
use crate::genlin::subspace::project_coords;
use crate::genlin::{Matrix, Subspace};
use crate::symcalc::{ChartRef, Coeff, DiffForm, GaussianRational as Q, Mask};

use super::section::{GenSection, TwistData};
use super::CourantError;

/// `𝔛·ρ = ι_Xρ + ξ∧ρ`.
pub fn clifford(x: &GenSection, rho: &DiffForm) -> Result<DiffForm, CourantError> {
    x.same_chart(&GenSection::zero(rho.chart()))?;
    Ok(rho.interior(&x.x).add(&x.xi.wedge(rho)))
}

/// `d_H = d − H∧`.
pub fn d_twisted(rho: &DiffForm, tw: &TwistData) -> DiffForm {
    rho.exterior_d().sub(&tw.h().wedge(rho))
}

/// `𝔛·𝔛·ρ − ⟨𝔛,𝔛⟩ρ`.
pub fn clifford_residual(x: &GenSection, rho: &DiffForm) -> Result<DiffForm, CourantError> {
    let twice = clifford(x, &clifford(x, rho)?)?;
    Ok(twice.sub(&rho.scale(&x.pairing(x))))
}

/// The images `e_k·ρ` of the basis sections `∂_1..∂_n, dx_1..dx_n`.
fn basis_images(rho: &DiffForm) -> Vec<DiffForm> {
    let chart = rho.chart();
    let n = chart.dim();
    (0..2 * n)
        .map(|k| {
            let mut v = vec![Coeff::zero(); 2 * n];
            v[k] = Coeff::one();
            let e = GenSection::from_vec(chart, &v).expect("basis section");
            rho.interior(&e.x).add(&e.xi.wedge(rho))
        })
        .collect()
}

/// Matrix of `𝔛 ↦ 𝔛·ρ` with rows indexed by `rows` (extended by every
/// monomial that occurs in an image) and columns by the basis sections.
fn clifford_matrix(rho: &DiffForm, extra: &[Mask]) -> (Vec<Mask>, Matrix<Coeff>) {
    let images = basis_images(rho);
    let mut masks: BTreeSet<Mask> = extra.iter().copied().collect();
    for f in &images {
        masks.extend(f.terms().keys().copied());
    }
    let masks: Vec<Mask> = masks.into_iter().collect();
    let m = Matrix::from_fn(masks.len(), images.len(), |r, c| images[c].coeff(masks[r]));
    (masks, m)
}

#[derive(Clone, Debug)]
pub enum Locus {
    /// Over the chart's rational-function field.
    Generic,
    /// At a point given as `(coordinate index, value)` for every full coordinate.
    Point(Vec<(usize, Q)>),
}

#[derive(Clone, Debug)]
pub struct Annihilator {
    pub space: Subspace<Coeff>,
    /// Dimension equals the chart dimension.
    pub pure: bool,
    pub isotropic: bool,
}

impl Annihilator {
    pub fn sections(&self, chart: &ChartRef) -> Vec<GenSection> {
        self.space.basis().iter().map(|v| GenSection::from_vec(chart, v).expect("annihilator basis")).collect()
    }
}

/// `{𝔛 : 𝔛·ρ = 0}`.
pub fn spinor_annihilator(rho: &DiffForm, at: &Locus) -> Result<Annihilator, CourantError> {
    let rho = match at {
        Locus::Generic => rho.clone(),
        Locus::Point(p) => rho.evaluate(p)?,
    };
    if rho.is_zero() {
        return Err(CourantError::Vanishing("spinor vanishes on the requested locus".into()));
    }
    let n = rho.chart().dim();
    let (_, m) = clifford_matrix(&rho, &[]);
    let space = Subspace::span(2 * n, &m.nullspace());
    let pairing = crate::genlin::pairing_nat::<Coeff>(n);
    let isotropic = space.is_isotropic(&pairing);
    Ok(Annihilator { pure: space.dim() == n, isotropic, space })
}

/// The spinor line annihilated by an isotropic frame, normalized by the
/// echelon form of the linear system on the `2^n` form coefficients.
pub fn pure_spinor(frame: &[GenSection]) -> Result<DiffForm, CourantError> {
    let chart = frame.first().ok_or_else(|| CourantError::Shape("empty frame".into()))?.chart().clone();
    let n = chart.dim();
    if n > 10 {
        return Err(CourantError::Shape("pure spinor search limited to dimension 10".into()));
    }
    let cols: Vec<Mask> = (0..1u64 << n).collect();
    let mut rows: Vec<Vec<Coeff>> = Vec::new();
    for s in frame {
        s.same_chart(&GenSection::zero(&chart))?;
        let images: Vec<DiffForm> = cols.iter().map(|&m| clifford(s, &DiffForm::term(&chart, m, Coeff::one())).unwrap()).collect();
        let mut out: BTreeSet<Mask> = BTreeSet::new();
        for f in &images {
            out.extend(f.terms().keys().copied());
        }
        for o in out {
            rows.push(images.iter().map(|f| f.coeff(o)).collect());
        }
    }
    if rows.is_empty() {
        return Ok(DiffForm::one(&chart));
    }
    let ns = Matrix::from_rows(rows).nullspace();
    match ns.len() {
        1 => Ok(DiffForm::from_terms(&chart, cols.iter().copied().zip(ns[0].iter().cloned()))),
        0 => Err(CourantError::Vanishing("no nonzero spinor is annihilated by the frame".into())),
        k => Err(CourantError::Shape(format!("frame is not maximal: {k}-dimensional spinor solution space"))),
    }
}

/// Solution of `d_Hρ = 𝔜·ρ`.
#[derive(Clone, Debug)]
pub struct Integrability {
    /// Echelon solution with free variables set to zero.
    pub canonical: GenSection,
    /// The unique representative in `L̄`, when `L ⊕ L̄` is the whole fiber.
    pub in_lbar: Option<GenSection>,
    pub checks: CheckList,
}

pub fn spinor_integrability(rho: &DiffForm, tw: &TwistData) -> Result<Integrability, CourantError> {
    let chart = rho.chart().clone();
    let n = chart.dim();
    let ann = spinor_annihilator(rho, &Locus::Generic)?;
    if !ann.pure {
        return Err(CourantError::NotPure(format!("annihilator has dimension {} on a {}-dimensional chart", ann.space.dim(), n)));
    }
    let target = d_twisted(rho, tw);
    let extra: Vec<Mask> = target.terms().keys().copied().collect();
    let (masks, m) = clifford_matrix(rho, &extra);
    let rhs: Vec<Coeff> = masks.iter().map(|&k| target.coeff(k)).collect();
    let sol = m.solve(&rhs).ok_or_else(|| CourantError::NotIntegrable(format!("d_Hρ = {target} is not in the Clifford image of ρ")))?;
    let canonical = GenSection::from_vec(&chart, &sol)?;
    let mut checks = CheckList::new();
    let res = d_twisted(rho, tw).sub(&clifford(&canonical, rho)?);
    checks.push("integrability-residual", res.is_zero(), if res.is_zero() { String::new() } else { format!("residual {res}") });
    checks.push("solution-unique-mod-annihilator", m.rank() + n == 2 * n, format!("kernel dimension {}", 2 * n - m.rank()));

    let l = ann.space.basis().to_vec();
    let lbar: Vec<Vec<Coeff>> = l.iter().map(|v| v.iter().map(Coeff::conj).collect()).collect();
    let in_lbar = project_coords(&lbar, &l, &sol).map(|c| {
        let mut v = vec![Coeff::zero(); 2 * n];
        for (a, w) in c.iter().zip(&lbar) {
            for (vi, wi) in v.iter_mut().zip(w) {
                *vi = vi.add(&a.mul(wi));
            }
        }
        GenSection::from_vec(&chart, &v).expect("projected section")
    });
    match &in_lbar {
        Some(y) => {
            let r = target.sub(&clifford(y, rho)?);
            checks.push("lbar-representative", r.is_zero(), if r.is_zero() { String::new() } else { format!("residual {r}") });
        }
        None => checks.push("lbar-representative", true, "L ∩ L̄ ≠ 0, no unique L̄ representative"),
    }
    Ok(Integrability { canonical, in_lbar, checks })
}

/// `(X, A)∘ρ = −ℒ_Xρ − A∧ρ` with `A = dξ − ι_XH`.
pub fn act_on_spinor(x: &GenSection, rho: &DiffForm, tw: &TwistData) -> Result<DiffForm, CourantError> {
    x.same_chart(&GenSection::zero(rho.chart()))?;
    let a = x.xi.exterior_d().sub(&tw.h().interior(&x.x));
    Ok(rho.lie_derivative(&x.x).add(&a.wedge(rho)).neg())
}

/// Residual of `𝔛∘_Hρ = (−d_H + 𝔜·)(𝔛·ρ) − 2⟨𝔛,𝔜⟩ρ` given `d_Hρ = 𝔜·ρ`.
pub fn action_commutator_residual(x: &GenSection, rho: &DiffForm, y: &GenSection, tw: &TwistData) -> Result<DiffForm, CourantError> {
    let lhs = act_on_spinor(x, rho, tw)?;
    let xr = clifford(x, rho)?;
    let rhs = d_twisted(&xr, tw).neg().add(&clifford(y, &xr)?).sub(&rho.scale(&x.pairing(y).scale(&Q::from_int(2))));
    Ok(lhs.sub(&rhs))
}
