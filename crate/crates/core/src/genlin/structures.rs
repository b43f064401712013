//! Linear generalized complex and Kähler structures on `V ⊕ V*`.
//!
//! Vectors are columns `(X^1..X^n, ξ_1..ξ_n)`; matrices act on them from the left.

use rand::Rng;

use super::field::Field;
use super::matrix::{inertia, Matrix};
use super::subspace::Subspace;
use super::GenlinError;
use crate::checks::CheckList;
use crate::symcalc::GaussianRational as Q;

/// `P_nat = ½ [[0, I], [I, 0]]`, so `⟨X+ξ, Y+η⟩ = ½(ι_Xη + ι_Yξ)`.
pub fn pairing_nat<F: Field>(n: usize) -> Matrix<F> {
    let h = F::half();
    Matrix::from_fn(2 * n, 2 * n, |i, j| if (i < n) != (j < n) && i % n == j % n { h.clone() } else { F::zero() })
}

pub fn natural_pairing<F: Field>(x: &[F], y: &[F]) -> Result<F, GenlinError> {
    if x.len() != y.len() || x.len() % 2 != 0 {
        return Err(GenlinError::Shape(format!("cannot pair vectors of lengths {} and {}", x.len(), y.len())));
    }
    Ok(pairing_nat::<F>(x.len() / 2).bilinear(x, y))
}

fn residual_text<F: Field>(m: &Matrix<F>, names: &[String]) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let nz: Vec<String> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !m.get(i, j).is_zero())
        .take(4)
        .map(|(i, j)| format!("[{i},{j}]={}", m.get(i, j).render(names)))
        .collect();
    format!("nonzero entries {}", nz.join(", "))
}

/// `J² = −I` and `Jᵀ P J = P` for an arbitrary pairing `P`.
pub fn is_gcs_with<F: Field>(j: &Matrix<F>, pairing: &Matrix<F>, names: &[String]) -> CheckList {
    let mut c = CheckList::new();
    if !j.is_square() || j.rows() != pairing.rows() {
        c.push("shape", false, format!("{}x{} matrix against a {}-dim pairing", j.rows(), j.cols(), pairing.rows()));
        return c;
    }
    let sq = j.mul(j).add(&Matrix::identity(j.rows()));
    c.push("square-is-minus-identity", sq.is_zero(), residual_text(&sq, names));
    let orth = j.transpose().mul(pairing).mul(j).sub(pairing);
    c.push("orthogonal", orth.is_zero(), residual_text(&orth, names));
    c
}

pub fn is_gcs<F: Field>(j: &Matrix<F>, names: &[String]) -> CheckList {
    if !j.is_square() || j.rows() % 2 != 0 {
        let mut c = CheckList::new();
        c.push("shape", false, "generalized complex structures are even-dimensional square matrices");
        return c;
    }
    is_gcs_with(j, &pairing_nat(j.rows() / 2), names)
}

/// A pair of commuting generalized complex structures.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearGk<F> {
    pub j1: Matrix<F>,
    pub j2: Matrix<F>,
}

impl<F: Field> LinearGk<F> {
    pub fn new(j1: Matrix<F>, j2: Matrix<F>) -> Self {
        LinearGk { j1, j2 }
    }

    pub fn dim(&self) -> usize {
        self.j1.rows()
    }

    /// `G = −J₁J₂`.
    pub fn g(&self) -> Matrix<F> {
        self.j1.mul(&self.j2).neg()
    }

    pub fn j(&self, which: usize) -> &Matrix<F> {
        if which == 1 {
            &self.j1
        } else {
            &self.j2
        }
    }

    pub fn conjugate_by(&self, m: &Matrix<F>, m_inv: &Matrix<F>) -> Self {
        LinearGk { j1: m.mul(&self.j1).mul(m_inv), j2: m.mul(&self.j2).mul(m_inv) }
    }
}

/// Full GK verification against the pairing `P`. Positivity of `⟨G·,·⟩` is
/// decided exactly for constant entries and at the supplied sample points
/// otherwise ("sampled positivity").
pub fn is_gk_with<F: Field>(gk: &LinearGk<F>, pairing: &Matrix<F>, samples: &[Vec<Option<Q>>], names: &[String]) -> CheckList {
    let mut c = CheckList::new();
    c.extend_prefixed("J1.", is_gcs_with(&gk.j1, pairing, names));
    c.extend_prefixed("J2.", is_gcs_with(&gk.j2, pairing, names));
    if !c.all_ok() {
        return c;
    }
    let g = gk.g();
    let comm = gk.j1.mul(&gk.j2).sub(&gk.j2.mul(&gk.j1));
    c.push("commute", comm.is_zero(), residual_text(&comm, names));
    let gsq = g.mul(&g).sub(&Matrix::identity(g.rows()));
    c.push("G-squared-is-identity", gsq.is_zero(), residual_text(&gsq, names));
    let form = g.transpose().mul(pairing);
    let asym = form.sub(&form.transpose());
    c.push("G-pairing-symmetric", asym.is_zero(), residual_text(&asym, names));
    c.push_positivity(&form, samples, names);
    c
}

pub fn is_gk<F: Field>(gk: &LinearGk<F>, samples: &[Vec<Option<Q>>], names: &[String]) -> CheckList {
    is_gk_with(gk, &pairing_nat(gk.dim() / 2), samples, names)
}

impl CheckList {
    fn push_positivity<F: Field>(&mut self, form: &Matrix<F>, samples: &[Vec<Option<Q>>], names: &[String]) {
        let n = form.rows();
        if let Some(m) = form.sample(&[]) {
            let ok = inertia(&m) == Some((n, 0, 0));
            self.push("G-positive", ok, if ok { "exact" } else { "not positive definite" });
            return;
        }
        if samples.is_empty() {
            self.push("G-positive", false, "non-constant entries and no sample points supplied");
            return;
        }
        for (k, p) in samples.iter().enumerate() {
            match form.sample(p) {
                Some(m) if inertia(&m) == Some((n, 0, 0)) => {}
                Some(_) => {
                    self.push("G-positive", false, format!("not positive definite at sample {k}"));
                    return;
                }
                None => {
                    let _ = names;
                    self.push("G-positive", false, format!("sample {k} is outside the domain"));
                    return;
                }
            }
        }
        self.push("G-positive", true, format!("sampled positivity at {} points", samples.len()));
    }
}

/// Matrix of `X ↦ ι_Xω` for the skew matrix `w_ij = ω(∂_i, ∂_j)`.
pub fn contraction_matrix<F: Field>(w: &Matrix<F>) -> Matrix<F> {
    w.transpose()
}

/// `J_ω = [[0, −M⁻¹], [M, 0]]` with `M` the matrix of `X ↦ ι_Xω`; its
/// `+i`-eigenspace is `L_ω = {X − i ι_Xω}`.
pub fn gcs_from_symplectic<F: Field>(w: &Matrix<F>) -> Result<Matrix<F>, GenlinError> {
    if !w.is_square() || *w != w.transpose().neg() {
        return Err(GenlinError::Hypothesis("symplectic form must be a skew square matrix".into()));
    }
    let m = contraction_matrix(w);
    let inv = m.inverse().ok_or_else(|| GenlinError::Hypothesis("degenerate 2-form".into()))?;
    let n = w.rows();
    Ok(Matrix::block2(&Matrix::zeros(n, n), &inv.neg(), &m, &Matrix::zeros(n, n)))
}

/// `J_J = [[−J, 0], [0, Jᵀ]]`; its `+i`-eigenspace is `L_J = {X + ξ + i(JX − J*ξ)}`.
pub fn gcs_from_complex<F: Field>(j: &Matrix<F>) -> Result<Matrix<F>, GenlinError> {
    if !j.is_square() || !j.mul(j).add(&Matrix::identity(j.rows())).is_zero() {
        return Err(GenlinError::Hypothesis("J is not an almost complex structure".into()));
    }
    let n = j.rows();
    Ok(Matrix::block2(&j.neg(), &Matrix::zeros(n, n), &Matrix::zeros(n, n), &j.transpose()))
}

/// `L_ω` read off its definition.
pub fn l_omega<F: Field>(w: &Matrix<F>) -> Subspace<F> {
    let n = w.rows();
    let m = contraction_matrix(w);
    let vs: Vec<Vec<F>> = (0..n)
        .map(|k| {
            let mut v = vec![F::zero(); 2 * n];
            v[k] = F::one();
            for j in 0..n {
                v[n + j] = m.get(j, k).mul(&F::i()).neg();
            }
            v
        })
        .collect();
    Subspace::span(2 * n, &vs)
}

/// `L_J` read off its definition.
pub fn l_complex<F: Field>(j: &Matrix<F>) -> Subspace<F> {
    let n = j.rows();
    let jt = j.transpose();
    let mut vs = Vec::new();
    for k in 0..n {
        let mut v = vec![F::zero(); 2 * n];
        v[k] = F::one();
        for r in 0..n {
            v[r] = v[r].add(&j.get(r, k).mul(&F::i()));
        }
        vs.push(v);
        let mut w = vec![F::zero(); 2 * n];
        w[n + k] = F::one();
        for r in 0..n {
            w[n + r] = w[n + r].sub(&jt.get(r, k).mul(&F::i()));
        }
        vs.push(w);
    }
    Subspace::span(2 * n, &vs)
}

/// `ker(J − i)`.
pub fn plus_i_eigenspace<F: Field>(j: &Matrix<F>) -> Subspace<F> {
    let shifted = j.sub(&Matrix::identity(j.rows()).scale(&F::i()));
    Subspace::span(j.rows(), &shifted.nullspace())
}

/// `e^B = [[I, 0], [B, I]]`, acting as `X + ξ ↦ X + ξ + ι_XB`; `b` is the
/// matrix of `X ↦ ι_XB` and must be skew.
pub fn b_matrix<F: Field>(b: &Matrix<F>) -> Result<Matrix<F>, GenlinError> {
    if !b.is_square() || *b != b.transpose().neg() {
        return Err(GenlinError::Hypothesis("B is not skew-symmetric".into()));
    }
    let n = b.rows();
    Ok(Matrix::block2(&Matrix::identity(n), &Matrix::zeros(n, n), b, &Matrix::identity(n)))
}

/// `e^B J e^{−B}`.
pub fn b_transform_gcs<F: Field>(b: &Matrix<F>, j: &Matrix<F>) -> Result<Matrix<F>, GenlinError> {
    let e = b_matrix(b)?;
    let einv = b_matrix(&b.neg())?;
    Ok(e.mul(j).mul(&einv))
}

pub fn b_transform_vec<F: Field>(b: &Matrix<F>, v: &[F]) -> Result<Vec<F>, GenlinError> {
    Ok(b_matrix(b)?.mul_vec(v))
}

pub fn b_transform_subspace<F: Field>(b: &Matrix<F>, s: &Subspace<F>) -> Result<Subspace<F>, GenlinError> {
    Ok(s.image(&b_matrix(b)?))
}

fn random_int_matrix<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64) -> Matrix<Q> {
    let rows = (0..n).map(|_| (0..n).map(|_| Q::from_int(rng.gen_range(lo..=hi))).collect()).collect();
    Matrix::from_rows(rows)
}

pub fn random_skew<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<Q> {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = Q::from_int(rng.gen_range(-bound..=bound));
            m.set(j, i, -&x);
            m.set(i, j, x);
        }
    }
    m
}

/// Standard complex structure on `R^n` (n even): blocks `[[0, −1], [1, 0]]`.
pub fn standard_complex(n: usize) -> Matrix<Q> {
    let mut j = Matrix::zeros(n, n);
    for k in (0..n).step_by(2) {
        j.set(k, k + 1, Q::from_int(-1));
        j.set(k + 1, k, Q::from_int(1));
    }
    j
}

/// Random constant generalized Kähler structure on `R^n ⊕ R^n*` (n even).
///
/// Built in bi-Hermitian form: a metric `g = DᵀD`, two `g`-orthogonal complex
/// structures `J₊ = D⁻¹J₀D` and `J₋ = D⁻¹RJ₀RᵀD` (R a Cayley rotation), and
/// `J₁ = E diag(J₊, J₋) E⁻¹`, `J₂ = E diag(J₊, −J₋) E⁻¹` with
/// `E = [[I, I], [g, −g]]`; finally a random B-transform.
pub fn random_gk<R: Rng>(rng: &mut R, n: usize) -> LinearGk<Q> {
    assert!(n % 2 == 0 && n > 0, "base dimension must be even");
    let d = loop {
        let d = random_int_matrix(rng, n, -2, 2);
        if !d.det().is_zero() {
            break d;
        }
    };
    let dinv = d.inverse().unwrap();
    let g = d.transpose().mul(&d);
    let j0 = standard_complex(n);
    let a = random_skew(rng, n, 2);
    let id = Matrix::identity(n);
    let r = id.sub(&a).mul(&id.add(&a).inverse().expect("I + skew is invertible"));
    let jp = dinv.mul(&j0).mul(&d);
    let jm = dinv.mul(&r).mul(&j0).mul(&r.transpose()).mul(&d);
    let e = Matrix::block2(&id, &id, &g, &g.neg());
    let einv = e.inverse().unwrap();
    let z = Matrix::zeros(n, n);
    let j1 = e.mul(&Matrix::block2(&jp, &z, &z, &jm)).mul(&einv);
    let j2 = e.mul(&Matrix::block2(&jp, &z, &z, &jm.neg())).mul(&einv);
    let b = random_skew(rng, n, 2);
    let eb = b_matrix(&b).unwrap();
    let ebinv = b_matrix(&b.neg()).unwrap();
    LinearGk { j1, j2 }.conjugate_by(&eb, &ebinv)
}

/// Random nonzero covector subspace `K ⊂ V*` of the given dimension.
pub fn random_covectors<R: Rng>(rng: &mut R, n: usize, dim: usize) -> Subspace<Q> {
    loop {
        let vs: Vec<Vec<Q>> = (0..dim).map(|_| (0..2 * n).map(|k| if k < n { Q::from_int(0) } else { Q::from_int(rng.gen_range(-3..=3)) }).collect()).collect();
        let s = Subspace::span(2 * n, &vs);
        if s.dim() == dim {
            return s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64) -> Q {
        Q::from_int(n)
    }

    #[test]
    fn symplectic_type_eigenspace_is_l_omega() {
        let w = Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(-1), q(0)]]);
        let j = gcs_from_symplectic(&w).unwrap();
        assert!(is_gcs(&j, &[]).all_ok());
        assert_eq!(plus_i_eigenspace(&j), l_omega(&w));
        // ∂u − i dφ for ω = du∧dφ
        assert!(l_omega(&w).contains(&[q(1), q(0), q(0), -Q::i()]));
    }

    #[test]
    fn complex_type_eigenspace_is_l_j() {
        let j = standard_complex(2);
        let jj = gcs_from_complex(&j).unwrap();
        assert!(is_gcs(&jj, &[]).all_ok());
        assert_eq!(plus_i_eigenspace(&jj), l_complex(&j));
    }

    #[test]
    fn identity_is_not_gcs() {
        assert!(!is_gcs(&Matrix::<Q>::identity(4), &[]).all_ok());
    }

    #[test]
    fn random_gk_instances_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 4] {
            for _ in 0..5 {
                let gk = random_gk(&mut rng, n);
                let rep = is_gk(&gk, &[], &[]);
                assert!(rep.all_ok(), "{rep}");
            }
        }
    }
}
