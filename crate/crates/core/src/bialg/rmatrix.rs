//! r-matrices, the Yang–Baxter obstruction and coboundary cocommutators.

use num_traits::Zero;

use crate::genlin::Matrix;
use crate::symcalc::GaussianRational as Q;

use super::lie::{unit, LieAlgebraData};
use super::BialgError;

/// `r = Σ r[i][j] e_i ⊗ e_j = s + a`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    pub r: Matrix<Q>,
    pub s: Matrix<Q>,
    pub a: Matrix<Q>,
}

impl RMatrix {
    pub fn new(r: Matrix<Q>) -> Result<Self, BialgError> {
        if !r.is_square() {
            return Err(BialgError::Shape("r must be square".into()));
        }
        let half = Q::from_frac(1, 2);
        let rt = r.transpose();
        let s = r.add(&rt).scale(&half);
        let a = r.sub(&rt).scale(&half);
        Ok(RMatrix { r, s, a })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self, BialgError> {
        Self::new(Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Q::from_int(v)).collect()).collect()))
    }

    /// `E⊗F + ¼H⊗H` in the basis `(H, E, F)`.
    pub fn sl2_standard() -> Self {
        let mut r = Matrix::zeros(3, 3);
        r.set(1, 2, Q::from_int(1));
        r.set(0, 0, Q::from_frac(1, 4));
        Self::new(r).expect("square")
    }

    pub fn dim(&self) -> usize {
        self.r.rows()
    }

    /// `r̲: ĝ → g`, `r̲(e^p) = Σ_q r[p][q] e_q`, as a matrix acting on coordinates.
    pub fn underline(m: &Matrix<Q>) -> Matrix<Q> {
        m.transpose()
    }
}

/// Dense `n×n×n` tensor.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    pub n: usize,
    pub data: Vec<Q>,
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Tensor3 { n, data: vec![Q::zero(); n * n * n] }
    }

    pub fn get(&self, p: usize, q: usize, t: usize) -> &Q {
        &self.data[(p * self.n + q) * self.n + t]
    }

    fn add_at(&mut self, p: usize, q: usize, t: usize, v: &Q) {
        let n = self.n;
        self.data[(p * n + q) * n + t] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// `(ad_x ⊗ 1 ⊗ 1 + 1 ⊗ ad_x ⊗ 1 + 1 ⊗ 1 ⊗ ad_x) T`.
    pub fn ad_action(&self, ad: &Matrix<Q>) -> Tensor3 {
        let n = self.n;
        let mut out = Tensor3::zeros(n);
        for p in 0..n {
            for q in 0..n {
                for t in 0..n {
                    let v = self.get(p, q, t);
                    if v.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        out.add_at(k, q, t, &(ad.get(k, p) * v));
                        out.add_at(p, k, t, &(ad.get(k, q) * v));
                        out.add_at(p, q, k, &(ad.get(k, t) * v));
                    }
                }
            }
        }
        out
    }
}

/// `(ad_x ⊗ 1 + 1 ⊗ ad_x) m = A m + m Aᵀ` for a 2-tensor `m`.
fn ad_on_2tensor(ad: &Matrix<Q>, m: &Matrix<Q>) -> Matrix<Q> {
    ad.mul(m).add(&m.mul(&ad.transpose()))
}

#[derive(Clone, Debug)]
pub struct CybeReport {
    /// `⟦r, r⟧`.
    pub obstruction: Tensor3,
    pub vanishes: bool,
    pub obstruction_invariant: bool,
    pub s_invariant: bool,
    pub s_invertible: bool,
    pub factorizable: bool,
}

/// `⟦r,r⟧ = Σ [a_i,a_j]⊗b_i⊗b_j + a_i⊗[b_i,a_j]⊗b_j + a_i⊗a_j⊗[b_i,b_j]`.
pub fn cybe_obstruction(g: &LieAlgebraData, r: &RMatrix) -> Result<CybeReport, BialgError> {
    let n = g.dim();
    if r.dim() != n {
        return Err(BialgError::Shape(format!("r is {0}×{0}, algebra has dimension {n}", r.dim())));
    }
    let mut t = Tensor3::zeros(n);
    let terms: Vec<(usize, usize, &Q)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| (i, j, r.r.get(i, j))).filter(|(_, _, v)| !v.is_zero()).collect();
    for &(i, j, rij) in &terms {
        for &(k, l, rkl) in &terms {
            let w = rij * rkl;
            for m in 0..n {
                // [a_i, a_k] ⊗ b_j ⊗ b_l
                let c = g.constant(i, k, m);
                if !c.is_zero() {
                    t.add_at(m, j, l, &(&w * c));
                }
                // a_i ⊗ [b_j, a_k] ⊗ b_l
                let c = g.constant(j, k, m);
                if !c.is_zero() {
                    t.add_at(i, m, l, &(&w * c));
                }
                // a_i ⊗ a_k ⊗ [b_j, b_l]
                let c = g.constant(j, l, m);
                if !c.is_zero() {
                    t.add_at(i, k, m, &(&w * c));
                }
            }
        }
    }
    let ads: Vec<Matrix<Q>> = (0..n).map(|x| g.ad(&unit(n, x))).collect();
    let s_invariant = ads.iter().all(|ad| ad_on_2tensor(ad, &r.s).is_zero());
    let obstruction_invariant = ads.iter().all(|ad| t.ad_action(ad).is_zero());
    let s_invertible = r.s.rank() == n;
    let vanishes = t.is_zero();
    Ok(CybeReport { obstruction: t, vanishes, obstruction_invariant, s_invariant, s_invertible, factorizable: vanishes && s_invertible })
}

#[derive(Clone, Debug)]
pub struct CocommutatorReport {
    /// `δ(e_x) = ad_{e_x} r`, stored as `delta[x]`.
    pub delta: Vec<Matrix<Q>>,
    /// Induced bracket on the dual: `[e^p, e^q] = Σ_x δ(e_x)[p][q] e^x`.
    pub dual: LieAlgebraData,
    pub antisymmetric: bool,
}

pub fn cocommutator(g: &LieAlgebraData, r: &RMatrix) -> Result<CocommutatorReport, BialgError> {
    let n = g.dim();
    if r.dim() != n {
        return Err(BialgError::Shape(format!("r is {0}×{0}, algebra has dimension {n}", r.dim())));
    }
    let delta: Vec<Matrix<Q>> = (0..n).map(|x| ad_on_2tensor(&g.ad(&unit(n, x)), &r.r)).collect();
    let c: Vec<Vec<Vec<Q>>> = (0..n).map(|p| (0..n).map(|q| (0..n).map(|x| delta[x].get(p, q).clone()).collect()).collect()).collect();
    let dual = LieAlgebraData::unchecked(c)?;
    let rep = dual.jacobi_check();
    let antisymmetric = rep.antisymmetry.is_empty();
    if !rep.residuals.is_empty() {
        let ((p, q, t), v) = &rep.residuals[0];
        let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        return Err(BialgError::DualJacobi(format!("{} nonzero Jacobiators, first on (e^{p}, e^{q}, e^{t}) = [{}]", rep.residuals.len(), v.join(", "))));
    }
    Ok(CocommutatorReport { delta, dual, antisymmetric })
}
