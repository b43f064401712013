//! The twisted Loday bracket, the Courant algebroid axioms, and the
//! translation isomorphism `ψ_H` on infinitesimal symmetries.

use num_traits::Zero;
use rayon::prelude::*;

use crate::checks::CheckList;
use crate::symcalc::{Coeff, DiffForm, GaussianRational as Q};

use super::section::{coeff_detail, GenSection, SymmetryPair, TwistData};
use super::CourantError;

/// `(X+ξ) *_H (Y+η) = [X,Y] + ℒ_Xη − ι_Y(dξ − ι_XH)`.
pub fn loday_bracket(x: &GenSection, y: &GenSection, tw: &TwistData) -> Result<GenSection, CourantError> {
    x.same_chart(y)?;
    x.same_chart(&GenSection::zero(tw.chart()))?;
    Ok(loday_unchecked(x, y, tw))
}

pub(crate) fn loday_unchecked(x: &GenSection, y: &GenSection, tw: &TwistData) -> GenSection {
    let inner = x.xi.exterior_d().sub(&tw.h().interior(&x.x));
    GenSection { x: x.x.bracket(&y.x), xi: y.xi.lie_derivative(&x.x).sub(&inner.interior(&y.x)) }
}

/// Negative control: the bracket with the sign of `ι_Y dξ` flipped. Flipping
/// the `ι_XH` term instead would give the honest bracket for `−H`.
pub fn loday_bracket_corrupted(x: &GenSection, y: &GenSection, tw: &TwistData) -> Result<GenSection, CourantError> {
    x.same_chart(y)?;
    let inner = x.xi.exterior_d().neg().sub(&tw.h().interior(&x.x));
    Ok(GenSection { x: x.x.bracket(&y.x), xi: y.xi.lie_derivative(&x.x).sub(&inner.interior(&y.x)) })
}

pub type Bracket = dyn Fn(&GenSection, &GenSection, &TwistData) -> Result<GenSection, CourantError> + Sync;

/// `x*y + y*x − 2 d⟨x,y⟩`. With the pairing normalized by ½ the symmetric
/// part of the bracket is `d(ι_Xη + ι_Yξ)`.
pub fn symmetrization_residual(x: &GenSection, y: &GenSection, tw: &TwistData) -> Result<GenSection, CourantError> {
    let s = loday_bracket(x, y, tw)?.add(&loday_bracket(y, x, tw)?);
    let d = DiffForm::d_of(x.chart(), &x.pairing(y).scale(&Q::from_int(2)));
    Ok(GenSection { x: s.x, xi: s.xi.sub(&d) })
}

/// Residuals of the three axioms on one ordered triple.
#[derive(Clone, Debug)]
pub struct TripleResidual {
    pub indices: (usize, usize, usize),
    /// `𝔛*(𝔜*𝔷) − (𝔛*𝔜)*𝔷 − 𝔜*(𝔛*𝔷)`.
    pub jacobi: GenSection,
    /// `X⟨𝔜,𝔷⟩ − ⟨𝔛, 𝔜*𝔷 + 𝔷*𝔜⟩`.
    pub symmetric: Coeff,
    /// `X⟨𝔜,𝔷⟩ − ⟨𝔛*𝔜, 𝔷⟩ − ⟨𝔜, 𝔛*𝔷⟩`.
    pub invariance: Coeff,
}

impl TripleResidual {
    pub fn is_zero(&self) -> bool {
        self.jacobi.is_zero() && self.symmetric.is_zero() && self.invariance.is_zero()
    }
}

pub fn triple_residual(bracket: &Bracket, x: &GenSection, y: &GenSection, z: &GenSection, tw: &TwistData) -> Result<TripleResidual, CourantError> {
    let yz = bracket(y, z, tw)?;
    let zy = bracket(z, y, tw)?;
    let xy = bracket(x, y, tw)?;
    let xz = bracket(x, z, tw)?;
    let jacobi = bracket(x, &yz, tw)?.sub(&bracket(&xy, z, tw)?).sub(&bracket(y, &xz, tw)?);
    let anchor_term = x.x.apply(&y.pairing(z));
    let symmetric = anchor_term.sub(&x.pairing(&yz.add(&zy)));
    let invariance = anchor_term.sub(&xy.pairing(z)).sub(&y.pairing(&xz));
    Ok(TripleResidual { indices: (0, 0, 0), jacobi, symmetric, invariance })
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub triples: Vec<TripleResidual>,
    pub checks: CheckList,
}

impl AxiomReport {
    pub fn all_zero(&self) -> bool {
        self.triples.iter().all(TripleResidual::is_zero)
    }
}

/// Runs the axioms over all ordered triples of `sections`.
pub fn axioms_check(sections: &[GenSection], tw: &TwistData) -> Result<AxiomReport, CourantError> {
    axioms_check_with(&loday_bracket, sections, tw)
}

pub fn axioms_check_with(bracket: &Bracket, sections: &[GenSection], tw: &TwistData) -> Result<AxiomReport, CourantError> {
    if sections.len() < 3 {
        return Err(CourantError::Shape(format!("need at least 3 sections, got {}", sections.len())));
    }
    let n = sections.len();
    let idx: Vec<(usize, usize, usize)> = (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    let triples = idx
        .par_iter()
        .map(|&(i, j, k)| triple_residual(bracket, &sections[i], &sections[j], &sections[k], tw).map(|r| TripleResidual { indices: (i, j, k), ..r }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(triples))
}

/// Summarizes explicit triples, e.g. independently sampled ones.
pub fn axioms_check_triples(bracket: &Bracket, triples: &[(GenSection, GenSection, GenSection)], tw: &TwistData) -> Result<AxiomReport, CourantError> {
    let res = triples
        .par_iter()
        .enumerate()
        .map(|(t, (x, y, z))| triple_residual(bracket, x, y, z, tw).map(|r| TripleResidual { indices: (t, t, t), ..r }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(res))
}

fn summarize(triples: Vec<TripleResidual>) -> AxiomReport {
    let count = |f: &dyn Fn(&TripleResidual) -> bool| triples.iter().filter(|t| !f(t)).count();
    let bad_j = count(&|t| t.jacobi.is_zero());
    let bad_s = count(&|t| t.symmetric.is_zero());
    let bad_i = count(&|t| t.invariance.is_zero());
    let first = |f: &dyn Fn(&TripleResidual) -> Option<String>| triples.iter().find_map(f).unwrap_or_default();
    let mut checks = CheckList::new();
    let total = triples.len();
    checks.push(
        "jacobi",
        bad_j == 0,
        if bad_j == 0 {
            format!("{total} triples")
        } else {
            format!("{bad_j}/{total} nonzero, first {}", first(&|t| (!t.jacobi.is_zero()).then(|| t.jacobi.to_string())))
        },
    );
    checks.push(
        "anchor-symmetric",
        bad_s == 0,
        if bad_s == 0 {
            format!("{total} triples")
        } else {
            format!("{bad_s}/{total} nonzero, first {}", first(&|t| (!t.symmetric.is_zero()).then(|| coeff_detail(&t.symmetric, t.jacobi.chart()))))
        },
    );
    checks.push(
        "anchor-invariant",
        bad_i == 0,
        if bad_i == 0 {
            format!("{total} triples")
        } else {
            format!("{bad_i}/{total} nonzero, first {}", first(&|t| (!t.invariance.is_zero()).then(|| coeff_detail(&t.invariance, t.jacobi.chart()))))
        },
    );
    AxiomReport { triples, checks }
}

/// `[(X,A),(Y,B)]_H = ([X,Y], ℒ_XB − ℒ_YA + dι_Yι_XH)`.
pub fn symmetry_bracket(p: &SymmetryPair, q: &SymmetryPair, tw: &TwistData) -> SymmetryPair {
    let a = q.a.lie_derivative(&p.x).sub(&p.a.lie_derivative(&q.x)).add(&tw.h().interior(&p.x).interior(&q.x).exterior_d());
    SymmetryPair::unchecked(p.x.bracket(&q.x), a)
}

/// `ψ_H(X, A) = (X, A + ι_XH)`.
pub fn psi(p: &SymmetryPair, tw: &TwistData) -> SymmetryPair {
    SymmetryPair::unchecked(p.x.clone(), p.a.add(&tw.h().interior(&p.x)))
}

/// Residual of `[ψ_H p, ψ_H q]_{H+H'} = ψ_H [p, q]_{H'}`.
pub fn psi_translate_residual(p: &SymmetryPair, q: &SymmetryPair, h: &TwistData, hp: &TwistData) -> SymmetryPair {
    let lhs = symmetry_bracket(&psi(p, h), &psi(q, h), &h.add(hp));
    let rhs = psi(&symmetry_bracket(p, q, hp), h);
    lhs.sub(&rhs)
}

pub fn psi_translate_check(p: &SymmetryPair, q: &SymmetryPair, h: &TwistData, hp: &TwistData) -> CheckList {
    let r = psi_translate_residual(p, q, h, hp);
    let mut checks = CheckList::new();
    checks.push("psi-vector", r.x.is_zero(), if r.x.is_zero() { String::new() } else { format!("residual {}", r.x) });
    checks.push("psi-form", r.a.is_zero(), if r.a.is_zero() { String::new() } else { format!("residual {}", r.a) });
    checks
}

/// Residual of `e^B(x *_H y) = (e^B x) *_{H−dB} (e^B y)`.
pub fn b_naturality_residual(x: &GenSection, y: &GenSection, tw: &TwistData, b: &DiffForm) -> Result<GenSection, CourantError> {
    let shifted = TwistData::new(tw.h().sub(&b.exterior_d()))?;
    let lhs = loday_bracket(&x.b_transform(b), &y.b_transform(b), &shifted)?;
    let rhs = loday_bracket(x, y, tw)?.b_transform(b);
    Ok(lhs.sub(&rhs))
}
