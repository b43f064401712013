//! Eigenframes of generalized almost complex structures over a chart and
//! their involutivity under the twisted bracket.

use num_traits::Zero;
use rayon::prelude::*;

use crate::checks::CheckList;
use crate::genlin::structures::plus_i_eigenspace;
use crate::genlin::{pairing_nat, Matrix};
use crate::symcalc::{ChartRef, Coeff};

use super::bracket::loday_unchecked;
use super::section::{coeff_detail, GenSection, TwistData};
use super::CourantError;

/// Basis of `ker(J − i)` as sections, in echelon order.
pub fn eigenframe(j: &Matrix<Coeff>, chart: &ChartRef) -> Result<Vec<GenSection>, CourantError> {
    let n = chart.dim();
    if j.rows() != 2 * n || j.cols() != 2 * n {
        return Err(CourantError::Shape(format!("J must be {0}×{0} on this chart", 2 * n)));
    }
    let space = plus_i_eigenspace(j);
    if space.dim() != n {
        return Err(CourantError::RankDrop(format!("+i-eigenspace has dimension {}, expected {n}", space.dim())));
    }
    let pairing = pairing_nat::<Coeff>(n);
    if !space.is_isotropic(&pairing) {
        return Err(CourantError::RankDrop("+i-eigenspace is not isotropic".into()));
    }
    space.basis().iter().map(|v| GenSection::from_vec(chart, v)).collect()
}

/// `J𝔛 − i𝔛` for each frame member must vanish.
pub fn frame_residuals(j: &Matrix<Coeff>, frame: &[GenSection]) -> Vec<Vec<Coeff>> {
    frame
        .iter()
        .map(|s| {
            let v = s.to_vec();
            let jv = j.mul_vec(&v);
            jv.iter().zip(&v).map(|(a, b)| a.sub(&b.mul(&Coeff::i()))).collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct InvolutivityReport {
    pub frame: Vec<GenSection>,
    /// `⟨𝔛ᵃ *_H 𝔛ᵇ, 𝔛ᶜ⟩` indexed by `(a, b, c)`.
    pub residuals: Vec<((usize, usize, usize), Coeff)>,
    pub checks: CheckList,
}

impl InvolutivityReport {
    pub fn involutive(&self) -> bool {
        self.residuals.iter().all(|(_, c)| c.is_zero())
    }
}

/// Involutivity via orthogonality: `L` is maximal isotropic, so `𝔛ᵃ*𝔛ᵇ ∈ L`
/// exactly when it pairs to zero with the whole frame.
pub fn gcs_integrability(j: &Matrix<Coeff>, chart: &ChartRef, tw: &TwistData) -> Result<InvolutivityReport, CourantError> {
    let frame = eigenframe(j, chart)?;
    Ok(frame_involutivity(frame, tw))
}

pub fn frame_involutivity(frame: Vec<GenSection>, tw: &TwistData) -> InvolutivityReport {
    let n = frame.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let residuals: Vec<((usize, usize, usize), Coeff)> = pairs
        .par_iter()
        .flat_map_iter(|&(a, b)| {
            let br = loday_unchecked(&frame[a], &frame[b], tw);
            (0..n).map(|c| ((a, b, c), br.pairing(&frame[c]))).collect::<Vec<_>>()
        })
        .collect();
    let mut checks = CheckList::new();
    let bad: Vec<_> = residuals.iter().filter(|(_, c)| !c.is_zero()).collect();
    checks.push(
        "involutive",
        bad.is_empty(),
        match bad.first() {
            None => format!("{} pairings vanish", residuals.len()),
            Some(((a, b, c), r)) => {
                format!("{} of {} pairings nonzero, first at ({a},{b},{c}): {}", bad.len(), residuals.len(), coeff_detail(r, frame[0].chart()))
            }
        },
    );
    InvolutivityReport { frame, residuals, checks }
}

/// `𝔛∘_H𝔜 = −𝔛 *_H 𝔜`.
pub fn act_on_section(x: &GenSection, y: &GenSection, tw: &TwistData) -> Result<GenSection, CourantError> {
    Ok(super::bracket::loday_bracket(x, y, tw)?.neg())
}

/// Checks that `𝔛∘` maps every frame member back into the span of the frame.
pub fn preserves_frame(x: &GenSection, frame: &[GenSection], tw: &TwistData) -> Result<CheckList, CourantError> {
    let mut checks = CheckList::new();
    for (a, z) in frame.iter().enumerate() {
        let moved = act_on_section(x, z, tw)?;
        let bad = frame.iter().map(|w| moved.pairing(w)).find(|c| !c.is_zero());
        checks.push(format!("frame[{a}]"), bad.is_none(), bad.map(|c| coeff_detail(&c, x.chart())).unwrap_or_default());
    }
    Ok(checks)
}
