//! The Manin triple `(g ⊕ g, g, ĝ)` of a factorizable r-matrix.

use num_traits::Zero;

use crate::checks::CheckList;
use crate::genlin::{Matrix, Subspace};
use crate::symcalc::GaussianRational as Q;

use super::lie::{unit, LieAlgebraData};
use super::rmatrix::{cybe_obstruction, RMatrix};
use super::BialgError;

#[derive(Clone, Debug)]
pub struct ManinTripleData {
    /// `g ⊕ g` with the componentwise bracket.
    pub big: LieAlgebraData,
    /// `⟨(x₁,x₂),(y₁,y₂)⟩ = ½x₁ᵀs⁻¹y₁ − ½x₂ᵀs⁻¹y₂`.
    pub pairing: Matrix<Q>,
    /// Columns are the images of `e_j` under `τ ↦ (τ, τ)`.
    pub embed_g: Matrix<Q>,
    /// Columns are the images of `e^j` under `ω̂ ↦ (r̲₊ω̂, r̲₋ω̂)`.
    pub embed_ghat: Matrix<Q>,
    pub checks: CheckList,
}

fn direct_sum(g: &LieAlgebraData) -> LieAlgebraData {
    let n = g.dim();
    let mut c = vec![vec![vec![Q::zero(); 2 * n]; 2 * n]; 2 * n];
    for b in 0..2 {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[b * n + i][b * n + j][b * n + k] = g.constant(i, j, k).clone();
                }
            }
        }
    }
    LieAlgebraData::unchecked(c).expect("square by construction")
}

fn is_subalgebra(big: &LieAlgebraData, basis: &[Vec<Q>]) -> bool {
    let span = Subspace::span(big.dim(), basis);
    basis.iter().all(|x| basis.iter().all(|y| span.contains(&big.bracket(x, y))))
}

pub fn manin_triple(g: &LieAlgebraData, r: &RMatrix) -> Result<ManinTripleData, BialgError> {
    let n = g.dim();
    let cy = cybe_obstruction(g, r)?;
    if !cy.factorizable {
        return Err(BialgError::NotFactorizable(format!(
            "⟦r,r⟧ {} 0, s {} invertible",
            if cy.vanishes { "=" } else { "≠" },
            if cy.s_invertible { "is" } else { "is not" }
        )));
    }
    let s_inv = r.s.inverse().expect("s invertible");
    let half = Q::from_frac(1, 2);
    let zero = Matrix::zeros(n, n);
    let pairing = Matrix::block2(&s_inv.scale(&half), &zero, &zero, &s_inv.scale(&-half));
    let id = Matrix::<Q>::identity(n);
    let embed_g = Matrix::block2(&id, &zero, &id, &zero).block(0, 0, 2 * n, n);
    let r_plus = RMatrix::underline(&r.a.add(&r.s));
    let r_minus = RMatrix::underline(&r.a.sub(&r.s));
    let embed_ghat = Matrix::block2(&r_plus, &zero, &r_minus, &zero).block(0, 0, 2 * n, n);
    let big = direct_sum(g);

    let gb: Vec<Vec<Q>> = (0..n).map(|j| embed_g.col(j)).collect();
    let hb: Vec<Vec<Q>> = (0..n).map(|j| embed_ghat.col(j)).collect();
    let mut checks = CheckList::new();
    checks.push("g-subalgebra", is_subalgebra(&big, &gb), "");
    checks.push("ghat-subalgebra", is_subalgebra(&big, &hb), "");
    let gram = |a: &[Vec<Q>], b: &[Vec<Q>]| Matrix::from_fn(a.len(), b.len(), |i, j| pairing.bilinear(&a[i], &b[j]));
    checks.push("g-isotropic", gram(&gb, &gb).is_zero(), "");
    checks.push("ghat-isotropic", gram(&hb, &hb).is_zero(), "");
    let all: Vec<Vec<Q>> = gb.iter().chain(&hb).cloned().collect();
    checks.push("direct-sum", Subspace::span(2 * n, &all).dim() == 2 * n, "r̲₊ − r̲₋ = 2s̲ invertible");
    checks.push("natural-duality", gram(&gb, &hb).is_identity(), "pairing built from s restricts to the canonical g–ĝ duality");
    let mut invariant = true;
    'outer: for x in 0..2 * n {
        for y in 0..2 * n {
            for z in 0..2 * n {
                let (ex, ey, ez) = (unit(2 * n, x), unit(2 * n, y), unit(2 * n, z));
                let v = &pairing.bilinear(&big.bracket(&ex, &ey), &ez) + &pairing.bilinear(&ey, &big.bracket(&ex, &ez));
                if !v.is_zero() {
                    invariant = false;
                    break 'outer;
                }
            }
        }
    }
    checks.push("pairing-invariant", invariant, "");
    Ok(ManinTripleData { big, pairing, embed_g, embed_ghat, checks })
}

/// If `[g, ĝ] = 0` inside the triple, the whole double must be abelian.
/// Returns whether the hypothesis held; a non-abelian double under the
/// hypothesis is reported as an error.
pub fn commuting_abelian_check(t: &ManinTripleData) -> Result<bool, BialgError> {
    let n = t.embed_g.cols();
    let commute = (0..n).all(|i| (0..n).all(|j| t.big.bracket(&t.embed_g.col(i), &t.embed_ghat.col(j)).iter().all(|v| v.is_zero())));
    if !commute {
        return Ok(false);
    }
    if !t.big.is_abelian() {
        return Err(BialgError::Contradiction("g and ĝ commute but the double is not abelian".into()));
    }
    Ok(true)
}
