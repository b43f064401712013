//! Finite-dimensional Lie algebras by structure constants.

use num_traits::Zero;

use crate::genlin::Matrix;
use crate::symcalc::GaussianRational as Q;

use super::BialgError;

/// `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraData {
    dim: usize,
    c: Vec<Vec<Vec<Q>>>,
}

#[derive(Clone, Debug, Default)]
pub struct JacobiReport {
    /// `(i, j)` with `c[i][j] ≠ −c[j][i]`.
    pub antisymmetry: Vec<(usize, usize)>,
    /// Nonzero Jacobiators of basis triples `i < j < k`.
    pub residuals: Vec<((usize, usize, usize), Vec<Q>)>,
}

impl JacobiReport {
    pub fn is_valid(&self) -> bool {
        self.antisymmetry.is_empty() && self.residuals.is_empty()
    }
}

impl LieAlgebraData {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(c: Vec<Vec<Vec<Q>>>) -> Result<Self, BialgError> {
        let g = Self::unchecked(c)?;
        let rep = g.jacobi_check();
        if let Some((i, j)) = rep.antisymmetry.first() {
            return Err(BialgError::NotLie(format!("[e{i}, e{j}] ≠ −[e{j}, e{i}]")));
        }
        if let Some(((i, j, k), _)) = rep.residuals.first() {
            return Err(BialgError::NotLie(format!("Jacobi fails on (e{i}, e{j}, e{k})")));
        }
        Ok(g)
    }

    /// Shape check only; used to study perturbed algebras.
    pub fn unchecked(c: Vec<Vec<Vec<Q>>>) -> Result<Self, BialgError> {
        let dim = c.len();
        if c.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(BialgError::Shape(format!("structure constants must be {dim}×{dim}×{dim}")));
        }
        Ok(LieAlgebraData { dim, c })
    }

    pub fn abelian(n: usize) -> Self {
        LieAlgebraData { dim: n, c: vec![vec![vec![Q::zero(); n]; n]; n] }
    }

    /// `sl₂` in the basis `(H, E, F)`: `[H,E] = 2E`, `[H,F] = −2F`, `[E,F] = H`.
    pub fn sl2() -> Self {
        let mut c = vec![vec![vec![Q::zero(); 3]; 3]; 3];
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[i][j][k] = Q::from_int(v);
            c[j][i][k] = Q::from_int(-v);
        };
        set(0, 1, 1, 2);
        set(0, 2, 2, -2);
        set(1, 2, 0, 1);
        LieAlgebraData { dim: 3, c }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.c[i][j][k]
    }

    pub fn constants(&self) -> &[Vec<Vec<Q>>] {
        &self.c
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|v| v.is_zero())
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        let n = self.dim;
        let mut out = vec![Q::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let w = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o += &(&w * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_x`.
    pub fn ad(&self, x: &[Q]) -> Matrix<Q> {
        let n = self.dim;
        let cols: Vec<Vec<Q>> = (0..n).map(|j| self.bracket(x, &unit(n, j))).collect();
        Matrix::from_cols(&cols, n)
    }

    pub fn jacobi_check(&self) -> JacobiReport {
        let n = self.dim;
        let mut rep = JacobiReport::default();
        for i in 0..n {
            for j in i..n {
                if (0..n).any(|k| self.c[i][j][k] != -&self.c[j][i][k]) {
                    rep.antisymmetry.push((i, j));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (unit(n, i), unit(n, j), unit(n, k));
                    let mut r = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let r2 = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let r3 = self.bracket(&self.bracket(&ek, &ei), &ej);
                    for l in 0..n {
                        r[l] += &r2[l];
                        r[l] += &r3[l];
                    }
                    if r.iter().any(|v| !v.is_zero()) {
                        rep.residuals.push(((i, j, k), r));
                    }
                }
            }
        }
        rep
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::from_int(1);
    v
}
