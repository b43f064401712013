//! Seeded random instances for the five linear reduction lemmas.

use rand::Rng;

use crate::checks::CheckList;
use crate::symcalc::GaussianRational as Q;

use super::lemmas::{anchor, lemma_double_split, lemma_dual_split, lemma_extend, lemma_kahler_split, lemma_missingrank};
use super::matrix::vec_sub;
use super::structures::{random_covectors, random_gk, LinearGk};
use super::subspace::Subspace;
use super::Field;

pub const LEMMAS: [&str; 5] = ["extend", "missingrank", "kahler-split", "double-split", "dual-split"];

/// One outcome per entry of [`LEMMAS`]: the lemma's checks, or the
/// hypothesis it rejected.
pub type LemmaOutcomes = Vec<(&'static str, Result<CheckList, String>)>;

/// Runs every lemma on `K` with `K' = J₁K` for the isotropic lemmas and
/// `K' = (J₁ − J₂)K` for the nondegenerate one.
pub fn run_lemmas<F: Field>(k: &Subspace<F>, gk: &LinearGk<F>, samples: &[Vec<Option<Q>>]) -> LemmaOutcomes {
    let n = k.ambient();
    let j1k = k.image(&gk.j1);
    let anti: Vec<Vec<F>> = k.basis().iter().map(|b| vec_sub(&gk.j1.mul_vec(b), &gk.j2.mul_vec(b))).collect();
    let anti = Subspace::span(n, &anti);
    let s = |r: Result<CheckList, super::GenlinError>| r.map_err(|e| e.to_string());
    vec![
        ("extend", s(lemma_extend(k, &j1k).map(|o| o.checks))),
        ("missingrank", s(lemma_missingrank(k, &anti).map(|o| o.checks))),
        ("kahler-split", s(lemma_kahler_split(k, gk, samples).map(|o| o.checks))),
        ("double-split", s(lemma_double_split(k, gk).map(|o| o.checks))),
        ("dual-split", s(lemma_dual_split(k, gk, &j1k, samples).map(|o| o.checks))),
    ]
}

/// A random GK structure on `V = Q^n` (`n` even) with a random line
/// `K ⊂ V*`, redrawn until the anchors of `J₁K` and `J₂K` are independent
/// (the shared hypothesis of the split lemmas).
///
/// For `n = 2` the anchor of `J₁K` always vanishes, so `n ≥ 4` is required.
pub fn random_instance<R: Rng>(rng: &mut R, n: usize) -> (LinearGk<Q>, Subspace<Q>) {
    assert!(n >= 4 && n % 2 == 0, "random lemma instances need even n ≥ 4");
    for _ in 0..1000 {
        let gk = random_gk(rng, n);
        let k = random_covectors(rng, n, 1);
        let b = &k.basis()[0];
        let a1 = anchor(&gk.j1.mul_vec(b));
        let a2 = anchor(&gk.j2.mul_vec(b));
        if Subspace::span(n, &[a1, a2]).dim() == 2 {
            return (gk, k);
        }
    }
    panic!("no instance with independent anchors in 1000 draws");
}
