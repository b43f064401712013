//! Connections on `M₀`, the normalizing 2-form `B̃`, reduced twisting forms
//! and the T-duality identity.

use num_traits::Zero;

use crate::checks::CheckList;
use crate::genlin::Matrix;
use crate::symcalc::{ChartRef, Coeff, DiffForm, GaussianRational as Q, VectorField};

use super::action::{pairing_p, TorusFamilies};
use super::ReductionError;

/// Sign convention fixed for the dual connection; repeated in every report.
pub const CONVENTION: &str = "connections normalized by ι_{X_j}Θ_k = δ_jk and ι_{X̂_j}Θ̂_k = δ_jk; \
pairing P[j][k] = 2⟨𝔛_j, 𝔛̂_k⟩; d(Θ̂∧Θ) means d(Σ P[j][k] Θ̂_k∧Θ_j)";

/// Connection 1-forms on `M₀` for `T` and `T̂`.
#[derive(Clone, Debug)]
pub struct ConnectionData {
    pub theta: Vec<DiffForm>,
    pub theta_hat: Vec<DiffForm>,
}

#[derive(Clone, Debug)]
pub struct ConnectionReport {
    /// `ι_{X̂_j}Θ_k`, recorded but unconstrained.
    pub hat_on_theta: Matrix<Coeff>,
    /// `ι_{X_j}Θ̂_k`, recorded but unconstrained.
    pub on_theta_hat: Matrix<Coeff>,
    pub checks: CheckList,
}

impl ConnectionData {
    /// All forms as one list: `Θ` then `Θ̂`.
    pub fn all(&self) -> Vec<DiffForm> {
        self.theta.iter().chain(&self.theta_hat).cloned().collect()
    }

    pub fn from_all(m: usize, forms: Vec<DiffForm>) -> Self {
        let mut theta = forms;
        let theta_hat = theta.split_off(m);
        ConnectionData { theta, theta_hat }
    }

    /// Duality contractions are required; invariance failures are reported.
    pub fn verify(&self, fam: &TorusFamilies) -> Result<ConnectionReport, ReductionError> {
        let m = fam.rank();
        if self.theta.len() != m || self.theta_hat.len() != m {
            return Err(ReductionError::Contraction(format!("need {m} forms per family, got {} and {}", self.theta.len(), self.theta_hat.len())));
        }
        for f in self.theta.iter().chain(&self.theta_hat) {
            if f.degree().unwrap_or(1) != 1 {
                return Err(ReductionError::Contraction(format!("connection form {f} is not a 1-form")));
            }
            if f.chart().as_ref() != fam.chart.as_ref() {
                return Err(ReductionError::Contraction(format!("connection form lives on '{}', not '{}'", f.chart().name(), fam.chart.name())));
            }
        }
        let names = fam.chart.names();
        for (label, gens, forms) in [("Θ", &fam.t, &self.theta), ("Θ̂", &fam.t_hat, &self.theta_hat)] {
            for (j, s) in gens.iter().enumerate() {
                for (k, f) in forms.iter().enumerate() {
                    let c = s.x.pair(f);
                    let want = if j == k { Coeff::from_int(1) } else { Coeff::zero() };
                    if c != want {
                        return Err(ReductionError::Contraction(format!("{label}[{k}] on generator {j} gives {}", c.fmt_with(&names))));
                    }
                }
            }
        }
        let hat_on_theta = Matrix::from_fn(m, m, |j, k| fam.t_hat[j].x.pair(&self.theta[k]));
        let on_theta_hat = Matrix::from_fn(m, m, |j, k| fam.t[j].x.pair(&self.theta_hat[k]));
        let mut checks = CheckList::new();
        checks.push("connection.contractions", true, CONVENTION);
        for (a, y) in fam.all().iter().enumerate() {
            for (b, f) in self.all().iter().enumerate() {
                let l = f.lie_derivative(&y.x);
                checks.push(format!("connection[{b}].invariant[{a}]"), l.is_zero(), if l.is_zero() { String::new() } else { l.to_string() });
            }
        }
        Ok(ConnectionReport { hat_on_theta, on_theta_hat, checks })
    }
}

fn sum_forms(chart: &ChartRef, it: impl Iterator<Item = DiffForm>) -> DiffForm {
    it.fold(DiffForm::zero(chart), |a, b| a.add(&b))
}

/// `Θ∧ξ − ½ Σ Θ_j∧Θ_k ι_{X_k}ξ_j` for one family.
fn family_b(chart: &ChartRef, gens: &[crate::courant::GenSection], theta: &[DiffForm]) -> DiffForm {
    let half = Q::from_frac(1, 2);
    let first = sum_forms(chart, theta.iter().zip(gens).map(|(t, s)| t.wedge(&s.xi)));
    let second = sum_forms(
        chart,
        (0..gens.len()).flat_map(|j| (0..gens.len()).map(move |k| (j, k))).map(|(j, k)| theta[j].wedge(&theta[k]).scale(&gens[k].x.pair(&gens[j].xi))),
    );
    first.sub(&second.scale_q(&half))
}

/// Coframe dual to the combined generators, for horizontal projection.
fn dual_coframe(fam: &TorusFamilies, conn: &ConnectionData) -> Result<Vec<DiffForm>, ReductionError> {
    let gens: Vec<VectorField> = fam.all().into_iter().map(|s| s.x).collect();
    let forms = conn.all();
    let n = gens.len();
    let c = Matrix::from_fn(n, n, |a, b| gens[a].pair(&forms[b]));
    let inv = c.inverse().ok_or_else(|| ReductionError::Hypothesis("the combined torus does not act locally freely on M₀".into()))?;
    Ok((0..n).map(|a| sum_forms(&fam.chart, (0..n).map(|b| forms[b].scale(inv.get(b, a))))).collect())
}

/// `Π_a (1 − θ̃_a∧ι_{Y_a})` over the combined generators.
pub fn horizontal_part(form: &DiffForm, fam: &TorusFamilies, conn: &ConnectionData) -> Result<DiffForm, ReductionError> {
    let coframe = dual_coframe(fam, conn)?;
    let mut w = form.clone();
    for (y, t) in fam.all().iter().zip(&coframe) {
        w = w.sub(&t.wedge(&w.interior(&y.x)));
    }
    Ok(w)
}

#[derive(Clone, Debug)]
pub struct BTildeReport {
    pub b: DiffForm,
    pub b_hat: DiffForm,
    pub b_tilde: DiffForm,
    pub horizontal: DiffForm,
    pub checks: CheckList,
}

pub fn b_tilde(fam: &TorusFamilies, conn: &ConnectionData) -> Result<BTildeReport, ReductionError> {
    let cr = conn.verify(fam)?;
    let b = family_b(&fam.chart, &fam.t, &conn.theta);
    let b_hat = family_b(&fam.chart, &fam.t_hat, &conn.theta_hat);
    let b_tilde = b.add(&b_hat);
    let horizontal = horizontal_part(&b_tilde, fam, conn)?;
    let mut checks = cr.checks;
    for (a, y) in fam.all().iter().enumerate() {
        let l = b_tilde.lie_derivative(&y.x);
        checks.push(format!("b-tilde.invariant[{a}]"), l.is_zero(), if l.is_zero() { String::new() } else { l.to_string() });
    }
    checks.push("b-tilde.horizontal-part-vanishes", horizontal.is_zero(), if horizontal.is_zero() { String::new() } else { horizontal.to_string() });
    Ok(BTildeReport { b, b_hat, b_tilde, horizontal, checks })
}

/// Which torus is quotiented.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    T,
    THat,
}

#[derive(Clone, Debug)]
pub struct ReducedTwist {
    pub side: Side,
    /// `ξ'_l` (or `ξ̂'_l`).
    pub xi_prime: Vec<DiffForm>,
    /// The pullback representative `H̃ + d(Θ∧ξ')`.
    pub form: DiffForm,
    /// The same form on the quotient chart, when each quotiented generator
    /// is a constant multiple of an angle coordinate field.
    pub quotient: Option<(ChartRef, DiffForm)>,
}

/// `H̃ = H + dB̃` pulled back to `M₀`.
pub fn h_tilde(fam: &TorusFamilies, bt: &BTildeReport) -> DiffForm {
    fam.tw.h().add(&bt.b_tilde.exterior_d())
}

fn quotient_expression(form: &DiffForm, gens: &[VectorField]) -> Option<(ChartRef, DiffForm)> {
    let chart = form.chart();
    let mut ks = Vec::new();
    for g in gens {
        let nz: Vec<usize> = (0..chart.dim()).filter(|&k| !g.component(k).is_zero()).collect();
        match nz.as_slice() {
            [k] if chart.kind(*k) == crate::symcalc::CoordKind::Angle && g.component(*k).is_constant() => ks.push(*k),
            _ => return None,
        }
    }
    ks.sort_unstable_by(|a, b| b.cmp(a));
    ks.dedup();
    let mut c = chart.clone();
    let mut f = form.clone();
    for k in ks {
        let target = c.without(k, &format!("{}/{}", c.name(), c.coord_name(k)));
        f = f.drop_coordinate(k, &target).ok()?;
        c = target;
    }
    Some((c, f))
}

pub fn reduced_twisting(fam: &TorusFamilies, conn: &ConnectionData, bt: &BTildeReport, side: Side) -> Result<ReducedTwist, ReductionError> {
    let (gens, other, theta, theta_other) = match side {
        Side::T => (&fam.t, &fam.t_hat, &conn.theta, &conn.theta_hat),
        Side::THat => (&fam.t_hat, &fam.t, &conn.theta_hat, &conn.theta),
    };
    let xi_prime: Vec<DiffForm> = gens.iter().map(|s| sum_forms(&fam.chart, theta_other.iter().zip(other).map(|(th, o)| th.scale(&s.x.pair(&o.xi))))).collect();
    let correction = sum_forms(&fam.chart, theta.iter().zip(&xi_prime).map(|(t, x)| t.wedge(x)));
    let form = h_tilde(fam, bt).add(&correction.exterior_d());
    let vert: Vec<VectorField> = gens.iter().map(|s| s.x.clone()).collect();
    let basic = form.basic_check(&vert);
    if !basic.is_basic() {
        return Err(ReductionError::NotBasic(basic.obstructions.join("; ")));
    }
    let quotient = quotient_expression(&form, &vert);
    Ok(ReducedTwist { side, xi_prime, form, quotient })
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub h: DiffForm,
    pub hhat: DiffForm,
    pub residual: DiffForm,
    pub pairing_matrix: Matrix<Q>,
    pub b_tilde: DiffForm,
    pub h_tilde: DiffForm,
    pub reduced: [ReducedTwist; 2],
    pub checks: CheckList,
    pub convention: &'static str,
}

impl DualityReport {
    pub fn success(&self) -> bool {
        self.residual.is_zero() && self.checks.all_ok()
    }
}

pub fn duality_check(fam: &TorusFamilies, conn: &ConnectionData) -> Result<DualityReport, ReductionError> {
    duality_check_with(fam, conn, None)
}

/// As [`duality_check`], with the pairing optionally overridden (used by
/// negative controls).
pub fn duality_check_with(fam: &TorusFamilies, conn: &ConnectionData, p_override: Option<&Matrix<Q>>) -> Result<DualityReport, ReductionError> {
    let pr = pairing_p(fam);
    let mut checks = pr.checks;
    let p = match (p_override, pr.constant) {
        (Some(p), _) => {
            checks.push("pairing.override", true, "pairing matrix supplied by caller");
            p.clone()
        }
        (None, Some(p)) => p,
        (None, None) => return Err(ReductionError::Hypothesis("pairing P is not constant".into())),
    };
    let m = fam.rank();
    if p.rows() != m || p.cols() != m {
        return Err(ReductionError::Hypothesis(format!("pairing must be {m}×{m}")));
    }
    let bt = b_tilde(fam, conn)?;
    checks.extend_prefixed("", bt.checks.clone());
    let h_t = h_tilde(fam, &bt);
    let red = reduced_twisting(fam, conn, &bt, Side::T)?;
    let red_hat = reduced_twisting(fam, conn, &bt, Side::THat)?;
    let cross =
        sum_forms(&fam.chart, (0..m).flat_map(|j| (0..m).map(move |k| (j, k))).map(|(j, k)| conn.theta_hat[k].wedge(&conn.theta[j]).scale_q(p.get(j, k))));
    let residual = red_hat.form.sub(&red.form).sub(&cross.exterior_d());
    checks.push("duality.residual", residual.is_zero(), if residual.is_zero() { String::new() } else { residual.to_string() });
    Ok(DualityReport {
        h: red.form.clone(),
        hhat: red_hat.form.clone(),
        residual,
        pairing_matrix: p,
        b_tilde: bt.b_tilde,
        h_tilde: h_t,
        reduced: [red, red_hat],
        checks,
        convention: CONVENTION,
    })
}
