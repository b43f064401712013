//! The toric example on the Cartesian chart `(x1, y1, x2, y2)` of `C²`.

use gcgeom::courant::{gcs_integrability, TwistData};
use gcgeom::genlin::{is_gk, LinearGk, Matrix};
use gcgeom::symcalc::{parse_coeff, Chart, ChartRef, Coeff, DiffForm, GaussianRational as Q};

fn chart() -> ChartRef {
    Chart::full("cartesian", &["x1", "y1", "x2", "y2"])
}

fn c(ch: &ChartRef, s: &str) -> Coeff {
    parse_coeff(ch, s).unwrap()
}

/// Places `f·J` (`J = [[0,-1],[1,0]]`) in block `(bi, bj)` of a 4×4 grid of 2×2 blocks.
fn place(m: &mut Matrix<Coeff>, bi: usize, bj: usize, f: &Coeff) {
    m.set(2 * bi, 2 * bj + 1, f.neg());
    m.set(2 * bi + 1, 2 * bj, f.clone());
}

pub fn structures(ch: &ChartRef) -> LinearGk<Coeff> {
    let r2 = c(ch, "x1^2+y1^2+x2^2+y2^2");
    let one = Coeff::from_int(1);
    let mut j1 = Matrix::zeros(8, 8);
    place(&mut j1, 0, 2, &r2);
    place(&mut j1, 1, 1, &one.neg());
    place(&mut j1, 2, 0, &r2.inv().unwrap());
    place(&mut j1, 3, 3, &one.neg());
    let mut j2 = Matrix::zeros(8, 8);
    place(&mut j2, 0, 0, &one);
    place(&mut j2, 1, 3, &r2.neg());
    place(&mut j2, 2, 2, &one);
    place(&mut j2, 3, 1, &r2.inv().unwrap().neg());
    LinearGk::new(j1, j2)
}

/// `du∧dφ₁∧dφ₂` with `u = |z₂|²/r²` and `φ_k = arg z_k`.
pub fn twist(ch: &ChartRef) -> DiffForm {
    let u = c(ch, "(x2^2+y2^2)/(x1^2+y1^2+x2^2+y2^2)");
    let dphi = |x: usize, y: usize, n: &str| {
        let (xs, ys) = (ch.coord_name(x).to_string(), ch.coord_name(y).to_string());
        DiffForm::dx(ch, y).scale(&c(ch, &format!("{xs}/({n})"))).sub(&DiffForm::dx(ch, x).scale(&c(ch, &format!("{ys}/({n})"))))
    };
    DiffForm::d_of(ch, &u).wedge(&dphi(0, 1, "x1^2+y1^2")).wedge(&dphi(2, 3, "x2^2+y2^2"))
}

#[test]
fn cartesian_structures_form_a_gk_pair() {
    let ch = chart();
    let gk = structures(&ch);
    let samples = vec![
        vec![Some(Q::from_int(1)), Some(Q::from_int(2)), Some(Q::from_int(-1)), Some(Q::from_int(3))],
        vec![Some(Q::from_frac(1, 3)), Some(Q::from_int(0)), Some(Q::from_int(5)), Some(Q::from_frac(-2, 7))],
    ];
    let checks = is_gk(&gk, &samples, &ch.names());
    assert!(checks.all_ok(), "{checks}");
}

#[test]
fn cartesian_integrability() {
    let ch = chart();
    let gk = structures(&ch);
    let h = twist(&ch);
    let tw = TwistData::new(h.clone()).unwrap();
    for j in [&gk.j1, &gk.j2] {
        let rep = gcs_integrability(j, &ch, &tw).unwrap();
        assert!(rep.involutive(), "{}", rep.checks);
        let flat = gcs_integrability(j, &ch, &TwistData::zero(&ch)).unwrap();
        assert!(!flat.involutive());
    }
}
