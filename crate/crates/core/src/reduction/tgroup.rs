//! The T-duality group `O(m,m;ℤ)` acting on the combined generators, and
//! the routing of subtorus reductions through the linear reduction lemmas.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::checks::CheckList;
use crate::courant::GenSection;
use crate::genlin::{lemma_extend, lemma_missingrank, Matrix, Subspace};
use crate::symcalc::{Coeff, DiffForm, GaussianRational as Q};

use super::action::{pairing_p, TorusActionData, TorusFamilies};
use super::twist::{duality_check, ConnectionData, DualityReport};
use super::ReductionError;

fn int_matrix(g: &[Vec<i64>]) -> Result<Matrix<Q>, ReductionError> {
    let n = g.len();
    if g.iter().any(|r| r.len() != n) {
        return Err(ReductionError::NotInGroup("matrix must be square".into()));
    }
    Ok(Matrix::from_fn(n, n, |i, j| Q::from_int(g[i][j])))
}

/// `[[0, P], [Pᵀ, 0]]`, the Gram matrix of `2⟨,⟩` on the combined generators.
pub fn split_pairing(p: &Matrix<Q>) -> Matrix<Q> {
    let m = p.rows();
    Matrix::block2(&Matrix::zeros(m, m), p, &p.transpose(), &Matrix::zeros(m, m))
}

/// `g = [[I, 0], [b, I]]` for an integral skew `b`.
pub fn b_shear(b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = b.len();
    let mut g = vec![vec![0; 2 * m]; 2 * m];
    for i in 0..2 * m {
        g[i][i] = 1;
    }
    for (i, row) in b.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            g[m + i][j] = *v;
        }
    }
    g
}

#[derive(Clone, Debug)]
pub struct TransformOutcome {
    pub families: TorusFamilies,
    pub connection: ConnectionData,
    pub checks: CheckList,
    pub duality: DualityReport,
}

/// Acts by `𝔛^g_j = Σ_a g_aj 𝔛_a` and `Φ^g = g⁻¹Φ` on the combined list
/// `Φ = (Θ, Θ̂)`, then reruns the duality check.
pub fn tduality_transform(g: &[Vec<i64>], fam: &TorusFamilies, conn: &ConnectionData) -> Result<TransformOutcome, ReductionError> {
    let m = fam.rank();
    let gq = int_matrix(g)?;
    if gq.rows() != 2 * m {
        return Err(ReductionError::NotInGroup(format!("need a {0}×{0} matrix", 2 * m)));
    }
    let p = pairing_p(fam).constant.ok_or_else(|| ReductionError::Hypothesis("pairing P is not constant".into()))?;
    let s = split_pairing(&p);
    if gq.transpose().mul(&s).mul(&gq) != s {
        return Err(ReductionError::NotInGroup("gᵀ S g ≠ S for the split pairing S".into()));
    }
    let ginv = gq.inverse().ok_or_else(|| ReductionError::NotInGroup("g is singular".into()))?;
    let gens = fam.all();
    let forms = conn.all();
    let new_gens: Vec<GenSection> =
        (0..2 * m).map(|j| (0..2 * m).fold(GenSection::zero(&fam.chart), |acc, a| acc.add(&gens[a].scale(&Coeff::constant(gq.get(a, j).clone()))))).collect();
    let new_forms: Vec<DiffForm> =
        (0..2 * m).map(|b| (0..2 * m).fold(DiffForm::zero(&fam.chart), |acc, a| acc.add(&forms[a].scale_q(ginv.get(b, a))))).collect();
    let mut t = new_gens;
    let t_hat = t.split_off(m);
    let families = TorusFamilies { chart: fam.chart.clone(), t, t_hat, tw: fam.tw.clone() };
    let connection = ConnectionData::from_all(m, new_forms);
    let mut checks = CheckList::new();
    checks.push("group.preserves-split-pairing", true, format!("g ∈ O({m},{m};ℤ)"));
    let names = fam.chart.names();
    for (label, side) in [("T", &families.t), ("T-hat", &families.t_hat)] {
        let bad = side
            .iter()
            .enumerate()
            .flat_map(|(j, x)| side.iter().map(move |y| x.pairing(y)).enumerate().map(move |(k, c)| (j, k, c)))
            .find(|(_, _, c)| !c.is_zero());
        if let Some((j, k, c)) = bad {
            return Err(ReductionError::NotLagrangian(format!("{label} family: ⟨𝔛_{j}, 𝔛_{k}⟩ = {}", c.fmt_with(&names))));
        }
        checks.push(format!("lagrangian.{label}"), true, "");
    }
    let duality = duality_check(&families, &connection)?;
    Ok(TransformOutcome { families, connection, checks, duality })
}

/// The four elements of `O(1,1;ℤ)`.
pub fn o11_elements() -> Vec<(&'static str, Vec<Vec<i64>>)> {
    vec![
        ("identity", vec![vec![1, 0], vec![0, 1]]),
        ("minus-identity", vec![vec![-1, 0], vec![0, -1]]),
        ("swap", vec![vec![0, 1], vec![1, 0]]),
        ("minus-swap", vec![vec![0, -1], vec![-1, 0]]),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubtorusMode {
    /// `(𝒦, 𝒦')` isotropic: reduce to an extended tangent bundle.
    Isotropic,
    /// `⟨,⟩` nondegenerate on `𝒦'`: reduce to an effective Courant algebroid.
    Nondegenerate,
}

#[derive(Clone, Debug)]
pub struct SubtorusReport {
    pub sections: Vec<GenSection>,
    /// `ι_Xξ` for each subtorus generator.
    pub contractions: Vec<Coeff>,
    /// `2⟨𝔛_a, 𝔛_b⟩` on the subtorus generators.
    pub gram: Matrix<Coeff>,
    pub isotropic_case: bool,
    pub nondegenerate_case: bool,
    pub requested: SubtorusMode,
    pub requested_applies: bool,
    pub dims: BTreeMap<String, usize>,
    pub checks: CheckList,
}

/// Fiberwise routing on the ambient chart: `𝒦` is spanned by the involved
/// `df`, `𝒦'` by the combinations `Σ c_a 𝔛_a` of the moment sections.
pub fn subtorus_reduction_check(
    act: &TorusActionData,
    sections: &[GenSection],
    basis: &[Vec<i64>],
    mode: SubtorusMode,
) -> Result<SubtorusReport, ReductionError> {
    let n = act.chart.dim();
    let ms = sections.len();
    if basis.is_empty() || basis.iter().any(|v| v.len() != ms) {
        return Err(ReductionError::Hypothesis(format!("subtorus basis vectors must have {ms} integer entries")));
    }
    let bq = Matrix::from_fn(basis.len(), ms, |i, j| Q::from_int(basis[i][j]));
    if bq.rank() != basis.len() {
        return Err(ReductionError::Hypothesis("subtorus basis is not independent".into()));
    }
    let subs: Vec<GenSection> =
        basis.iter().map(|v| v.iter().zip(sections).fold(GenSection::zero(&act.chart), |acc, (c, s)| acc.add(&s.scale(&Coeff::from_int(*c))))).collect();
    let mut kvecs = Vec::new();
    for (j, m) in act.moments.iter().enumerate() {
        if basis.iter().any(|v| v[j] != 0) {
            kvecs.push(GenSection::form(m.df.clone())?.to_vec());
        }
    }
    let k = Subspace::span(2 * n, &kvecs);
    let kp = Subspace::span(2 * n, &subs.iter().map(|s| s.to_vec()).collect::<Vec<_>>());
    let contractions: Vec<Coeff> = subs.iter().map(|s| s.contraction()).collect();
    let two = Q::from_int(2);
    let gram = Matrix::from_fn(subs.len(), subs.len(), |a, b| subs[a].pairing(&subs[b]).scale(&two));
    let names = act.chart.names();
    let mut checks = CheckList::new();
    for (a, c) in contractions.iter().enumerate() {
        checks.push(format!("subtorus[{a}].contraction"), true, format!("ι_Xξ = {}", c.fmt_with(&names)));
    }
    let mut dims = BTreeMap::new();
    let isotropic_case = match lemma_extend(&k, &kp) {
        Ok(out) => {
            let ok = out.checks.all_ok();
            checks.extend_prefixed("case-isotropic.", out.checks);
            if ok {
                dims.extend(out.dims);
            }
            ok
        }
        Err(e) => {
            checks.push("case-isotropic.hypotheses", false, e.to_string());
            false
        }
    };
    let nondegenerate_case = match lemma_missingrank(&k, &kp) {
        Ok(out) => {
            let ok = out.checks.all_ok();
            checks.extend_prefixed("case-nondegenerate.", out.checks);
            if ok {
                dims.extend(out.dims);
            }
            ok
        }
        Err(e) => {
            checks.push("case-nondegenerate.hypotheses", false, e.to_string());
            false
        }
    };
    if !isotropic_case && !nondegenerate_case {
        return Err(ReductionError::NoCase(checks.failures().iter().map(|c| format!("{}: {}", c.id, c.detail)).collect::<Vec<_>>().join("; ")));
    }
    let requested_applies = match mode {
        SubtorusMode::Isotropic => isotropic_case,
        SubtorusMode::Nondegenerate => nondegenerate_case,
    };
    Ok(SubtorusReport { sections: subs, contractions, gram, isotropic_case, nondegenerate_case, requested: mode, requested_applies, dims, checks })
}
