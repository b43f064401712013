//! Seeded random polynomial data for the consistency suites.

use rand::Rng;

use crate::symcalc::{ChartRef, Coeff, CoordKind, DiffForm, GaussianRational as Q, Mono, Poly, VectorField};

use super::section::{GenSection, SymmetryPair, TwistData};

/// Shape of random polynomial coefficients.
#[derive(Clone, Copy, Debug)]
pub struct PolyShape {
    pub max_degree: u16,
    pub max_terms: usize,
    pub bound: i64,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape { max_degree: 2, max_terms: 3, bound: 3 }
    }
}

pub fn random_coeff<R: Rng>(rng: &mut R, chart: &ChartRef, shape: PolyShape) -> Coeff {
    let full: Vec<usize> = (0..chart.dim()).filter(|&k| chart.kind(k) == CoordKind::Full).collect();
    let nterms = rng.gen_range(0..=shape.max_terms);
    let mut terms = Vec::with_capacity(nterms);
    for _ in 0..nterms {
        let mut exps = vec![0u16; chart.dim()];
        if !full.is_empty() {
            let deg = rng.gen_range(0..=shape.max_degree);
            for _ in 0..deg {
                exps[full[rng.gen_range(0..full.len())]] += 1;
            }
        }
        let c = rng.gen_range(-shape.bound..=shape.bound);
        if c != 0 {
            terms.push((Mono::from_exps(&exps), Q::from_int(c)));
        }
    }
    Coeff::from_poly(Poly::from_terms(terms))
}

pub fn random_vector<R: Rng>(rng: &mut R, chart: &ChartRef, shape: PolyShape) -> VectorField {
    VectorField::new(chart, (0..chart.dim()).map(|_| random_coeff(rng, chart, shape)).collect()).expect("component count")
}

/// Random homogeneous form of the given degree.
pub fn random_form<R: Rng>(rng: &mut R, chart: &ChartRef, degree: u32, shape: PolyShape) -> DiffForm {
    let n = chart.dim();
    let masks = (0..1u64 << n).filter(|m| m.count_ones() == degree);
    let terms: Vec<_> = masks.map(|m| (m, random_coeff(rng, chart, shape))).collect();
    DiffForm::from_terms(chart, terms)
}

/// Random mixed-degree form.
pub fn random_spinor<R: Rng>(rng: &mut R, chart: &ChartRef, shape: PolyShape) -> DiffForm {
    let n = chart.dim();
    let terms: Vec<_> = (0..1u64 << n).map(|m| (m, random_coeff(rng, chart, shape))).collect();
    DiffForm::from_terms(chart, terms)
}

pub fn random_section<R: Rng>(rng: &mut R, chart: &ChartRef, shape: PolyShape) -> GenSection {
    GenSection::new(random_vector(rng, chart, shape), random_form(rng, chart, 1, shape)).expect("degree-1 form")
}

/// `H = dB` for a random 2-form `B`.
pub fn random_exact_twist<R: Rng>(rng: &mut R, chart: &ChartRef, shape: PolyShape) -> TwistData {
    TwistData::exact(&random_form(rng, chart, 2, shape)).expect("exact forms are closed")
}

/// `(X, dβ)` for a random vector field and 1-form `β`.
pub fn random_symmetry<R: Rng>(rng: &mut R, chart: &ChartRef, shape: PolyShape) -> SymmetryPair {
    let beta = random_form(rng, chart, 1, shape);
    SymmetryPair::new(random_vector(rng, chart, shape), beta.exterior_d()).expect("exact 2-form")
}
