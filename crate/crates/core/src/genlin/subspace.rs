//! Subspaces in canonical reduced echelon form, and quotients carrying an
//! induced pairing.

use super::field::Field;
use super::matrix::{dot, Matrix};

/// Span of vectors in `F^ambient`. The basis is the nonzero rows of the
/// reduced echelon form of any spanning set, so equal subspaces compare equal.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &Matrix::<F>::identity(ambient).to_rows())
    }

    pub fn span(ambient: usize, vectors: &[Vec<F>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        assert!(vectors.iter().all(|v| v.len() == ambient), "vector outside the ambient space");
        let (r, pivots) = Matrix::from_rows(vectors.to_vec()).rref();
        Subspace { ambient, basis: (0..pivots.len()).map(|i| r.row(i)).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[F]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn contains_space(&self, o: &Self) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Self {
        let mut rows = self.basis.clone();
        rows.extend(o.basis.iter().cloned());
        Self::span(self.ambient, &rows)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ambient);
        }
        // Solve Σ a_i u_i = Σ b_j w_j.
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().map(|w| w.iter().map(|x| x.neg()).collect()));
        let m = Matrix::from_cols(&cols, self.ambient);
        let vs: Vec<Vec<F>> = m
            .nullspace()
            .into_iter()
            .map(|c| {
                let mut v = vec![F::zero(); self.ambient];
                for (i, u) in self.basis.iter().enumerate() {
                    for (k, x) in u.iter().enumerate() {
                        v[k] = v[k].add(&c[i].mul(x));
                    }
                }
                v
            })
            .collect();
        Self::span(self.ambient, &vs)
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        Self::span(m.rows(), &self.basis.iter().map(|v| m.mul_vec(v)).collect::<Vec<_>>())
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        if self.is_zero() {
            return v.iter().all(|x| x.is_zero()).then(Vec::new);
        }
        let m = Matrix::from_cols(&self.basis, self.ambient);
        m.solve(v)
    }

    /// `{v : vᵀ P s = 0 for all s in self}`.
    pub fn annihilator(&self, pairing: &Matrix<F>) -> Self {
        if self.is_zero() {
            return Self::full(self.ambient);
        }
        let rows: Vec<Vec<F>> = self.basis.iter().map(|s| pairing.mul_vec(s)).collect();
        let ns = Matrix::from_rows(rows).nullspace();
        Self::span(self.ambient, &ns)
    }

    /// Annihilator taken inside another subspace.
    pub fn annihilator_within(&self, within: &Self, pairing: &Matrix<F>) -> Self {
        self.annihilator(pairing).intersect(within)
    }

    /// Gram matrix of the basis for the pairing.
    pub fn gram(&self, pairing: &Matrix<F>) -> Matrix<F> {
        gram(&self.basis, pairing)
    }

    pub fn is_isotropic(&self, pairing: &Matrix<F>) -> bool {
        self.gram(pairing).is_zero()
    }
}

pub fn gram<F: Field>(vs: &[Vec<F>], pairing: &Matrix<F>) -> Matrix<F> {
    let pv: Vec<Vec<F>> = vs.iter().map(|v| pairing.mul_vec(v)).collect();
    Matrix::from_fn(vs.len(), vs.len(), |i, j| dot(&vs[i], &pv[j]))
}

/// `top / bottom` with the pairing induced from the ambient one.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    pub top: Subspace<F>,
    pub bottom: Subspace<F>,
    /// Representatives of a basis of the quotient: the canonical basis
    /// vectors of `top` not already in the span of `bottom` plus earlier picks.
    pub reps: Vec<Vec<F>>,
    pub gram: Matrix<F>,
    pub nondegenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QuotientError {
    #[error("bottom space is not contained in top space")]
    NotContained,
    #[error("pairing does not descend: bottom is not orthogonal to top")]
    NotOrthogonal,
}

impl<F: Field> Quotient<F> {
    pub fn new(top: &Subspace<F>, bottom: &Subspace<F>, pairing: &Matrix<F>) -> Result<Self, QuotientError> {
        if !top.contains_space(bottom) {
            return Err(QuotientError::NotContained);
        }
        for b in bottom.basis() {
            let pb = pairing.mul_vec(b);
            if top.basis().iter().any(|t| !dot(t, &pb).is_zero()) {
                return Err(QuotientError::NotOrthogonal);
            }
        }
        let mut acc = bottom.basis().to_vec();
        let mut reps = Vec::new();
        let mut rank = acc.len();
        for t in top.basis() {
            let mut trial = acc.clone();
            trial.push(t.clone());
            let r = Matrix::from_rows(trial.clone()).rank();
            if r > rank {
                rank = r;
                acc = trial;
                reps.push(t.clone());
            }
        }
        let g = gram(&reps, pairing);
        let nondegenerate = g.rows() == 0 || g.rank() == g.rows();
        Ok(Quotient { top: top.clone(), bottom: bottom.clone(), reps, gram: g, nondegenerate })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of the class of `v ∈ top` in the representative basis.
    pub fn coordinates(&self, v: &[F]) -> Option<Vec<F>> {
        project_coords(&self.reps, self.bottom.basis(), v)
    }
}

/// Coordinates of `v` along `reps` in a decomposition `span(reps) ⊕ span(rest)`.
pub fn project_coords<F: Field>(reps: &[Vec<F>], rest: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    if reps.is_empty() && rest.is_empty() {
        return v.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let mut cols = reps.to_vec();
    cols.extend(rest.iter().cloned());
    let m = Matrix::from_cols(&cols, v.len());
    let x = m.solve(v)?;
    Some(x[..reps.len()].to_vec())
}
