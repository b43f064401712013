use gcgeom::courant::random::{random_coeff, random_exact_twist, random_form, random_section, random_spinor, random_symmetry, PolyShape};
use gcgeom::courant::*;
use gcgeom::genlin::structures::{gcs_from_complex, gcs_from_symplectic, l_complex, l_omega};
use gcgeom::genlin::{Matrix, Subspace};
use gcgeom::symcalc::{parse_coeff, parse_form, parse_vector, Chart, ChartRef, Coeff, CoordKind, DiffForm, VectorField};
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn plane() -> ChartRef {
    Chart::full("plane", &["u", "v"])
}

fn space3() -> ChartRef {
    Chart::full("space", &["x", "y", "z"])
}

fn sec(chart: &ChartRef, x: &[(&str, &str)], xi: &[(&str, &str)]) -> GenSection {
    GenSection::new(parse_vector(chart, x.iter().copied()).unwrap(), parse_form(chart, xi.iter().copied()).unwrap()).unwrap()
}

/// Component-wise bracket built only from partial derivatives and the
/// coefficients of `H`, sharing no code with the form calculus.
fn loday_by_components(x: &GenSection, y: &GenSection, h: &DiffForm) -> (Vec<Coeff>, Vec<Coeff>) {
    let n = x.chart().dim();
    let d = |f: &Coeff, k: usize| f.derivative(k);
    let xv: Vec<Coeff> = x.x.components().to_vec();
    let yv: Vec<Coeff> = y.x.components().to_vec();
    let xi: Vec<Coeff> = (0..n).map(|k| x.xi.coeff(1 << k)).collect();
    let eta: Vec<Coeff> = (0..n).map(|k| y.xi.coeff(1 << k)).collect();
    // H(∂a, ∂b, ∂c) for arbitrary index order.
    let hc = |a: usize, b: usize, c: usize| -> Coeff {
        if a == b || b == c || a == c {
            return Coeff::zero();
        }
        let mut idx = [a, b, c];
        let mut sign = 1;
        for i in 0..3 {
            for j in 0..2 - i {
                if idx[j] > idx[j + 1] {
                    idx.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let v = h.coeff((1 << idx[0]) | (1 << idx[1]) | (1 << idx[2]));
        if sign < 0 {
            v.neg()
        } else {
            v
        }
    };
    let mut vec = vec![Coeff::zero(); n];
    let mut form = vec![Coeff::zero(); n];
    for k in 0..n {
        for i in 0..n {
            vec[k] = vec[k].add(&xv[i].mul(&d(&yv[k], i))).sub(&yv[i].mul(&d(&xv[k], i)));
            // ℒ_Xη
            form[k] = form[k].add(&xv[i].mul(&d(&eta[k], i))).add(&eta[i].mul(&d(&xv[i], k)));
            // −ι_Y dξ, with (dξ)(∂i, ∂k) = ∂_iξ_k − ∂_kξ_i
            form[k] = form[k].sub(&yv[i].mul(&d(&xi[k], i).sub(&d(&xi[i], k))));
            // +ι_Yι_XH = H(X, Y, ∂k)
            for a in 0..n {
                form[k] = form[k].add(&xv[a].mul(&yv[i]).mul(&hc(a, i, k)));
            }
        }
    }
    (vec, form)
}

#[test]
fn self_bracket_is_differential_of_pairing() {
    let c = plane();
    let x = sec(&c, &[("u", "1")], &[("du", "u")]);
    let b = loday_bracket(&x, &x, &TwistData::zero(&c)).unwrap();
    assert!(b.x.is_zero());
    assert_eq!(b.xi, DiffForm::dx(&c, 0));
    assert_eq!(b.xi, DiffForm::d_of(&c, &x.pairing(&x)));
}

#[test]
fn moment_sections_of_the_example_commute() {
    let c = Chart::with_kinds("m0", &[("u", CoordKind::Full), ("phi1", CoordKind::Angle), ("phi2", CoordKind::Angle)]);
    let x = sec(&c, &[("phi1", "1")], &[("dphi2", "-u")]);
    let y = sec(&c, &[("phi2", "-1")], &[("dphi1", "1-u")]);
    let tw = TwistData::new(parse_form(&c, [("du^dphi1^dphi2", "1")]).unwrap()).unwrap();
    assert!(loday_bracket(&x, &y, &tw).unwrap().is_zero());
    assert!(loday_bracket(&y, &x, &tw).unwrap().is_zero());
}

#[test]
fn bracket_matches_component_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let c = space3();
    for _ in 0..25 {
        let shape = PolyShape::default();
        let x = random_section(&mut rng, &c, shape);
        let y = random_section(&mut rng, &c, shape);
        let tw = random_exact_twist(&mut rng, &c, shape);
        let b = loday_bracket(&x, &y, &tw).unwrap();
        let (v, f) = loday_by_components(&x, &y, tw.h());
        assert_eq!(b.x.components(), &v[..]);
        for (k, fk) in f.iter().enumerate() {
            assert_eq!(&b.xi.coeff(1 << k), fk);
        }
    }
}

#[test]
fn symmetric_part_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let c = space3();
    for _ in 0..20 {
        let shape = PolyShape::default();
        let tw = random_exact_twist(&mut rng, &c, shape);
        let x = random_section(&mut rng, &c, shape);
        let y = random_section(&mut rng, &c, shape);
        assert!(symmetrization_residual(&x, &y, &tw).unwrap().is_zero());
    }
}

#[test]
fn axioms_hold_and_corruption_is_detected() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let c = space3();
    let shape = PolyShape::default();
    let tw = random_exact_twist(&mut rng, &c, shape);
    let secs: Vec<GenSection> = (0..3).map(|_| random_section(&mut rng, &c, shape)).collect();
    let rep = axioms_check(&secs, &tw).unwrap();
    assert_eq!(rep.triples.len(), 27);
    assert!(rep.all_zero(), "{}", rep.checks);
    let bad = axioms_check_with(&loday_bracket_corrupted, &secs, &tw).unwrap();
    assert!(!bad.checks.get("jacobi").unwrap().ok);

    let zeros = vec![GenSection::zero(&c); 3];
    assert!(axioms_check(&zeros, &tw).unwrap().all_zero());
    assert!(axioms_check(&zeros[..2], &tw).is_err());
}

#[test]
fn psi_translation() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let c = space3();
    let shape = PolyShape::default();
    for _ in 0..10 {
        let p = random_symmetry(&mut rng, &c, shape);
        let q = random_symmetry(&mut rng, &c, shape);
        let h = random_exact_twist(&mut rng, &c, shape);
        let hp = random_exact_twist(&mut rng, &c, shape);
        assert!(psi_translate_check(&p, &q, &h, &hp).all_ok());
    }
    // Untwisted: reduces to ([X,Y], ℒ_XB − ℒ_YA).
    let zero = TwistData::zero(&c);
    let p = random_symmetry(&mut rng, &c, shape);
    let q = random_symmetry(&mut rng, &c, shape);
    let direct = q.a.lie_derivative(&p.x).sub(&p.a.lie_derivative(&q.x));
    assert_eq!(symmetry_bracket(&p, &q, &zero).a, direct);
    assert!(psi_translate_residual(&p, &q, &zero, &zero).is_zero());
    // Coordinate fields with A = B = 0: the bracket is (0, dι_Yι_XH').
    let hp = random_exact_twist(&mut rng, &c, shape);
    let ex = SymmetryPair::new(VectorField::coordinate(&c, 0), DiffForm::zero(&c)).unwrap();
    let ey = SymmetryPair::new(VectorField::coordinate(&c, 1), DiffForm::zero(&c)).unwrap();
    let br = symmetry_bracket(&ex, &ey, &hp);
    assert!(br.x.is_zero());
    let hxy = hp.h().coeff(0b111);
    assert_eq!(br.a, DiffForm::term(&c, 0b100, hxy.clone()).exterior_d());
    assert!(psi_translate_residual(&ex, &ey, &random_exact_twist(&mut rng, &c, shape), &hp).is_zero());
}

#[test]
fn b_transform_shifts_the_twist() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let c = space3();
    let shape = PolyShape::default();
    for _ in 0..10 {
        let tw = random_exact_twist(&mut rng, &c, shape);
        let b = random_form(&mut rng, &c, 2, shape);
        let x = random_section(&mut rng, &c, shape);
        let y = random_section(&mut rng, &c, shape);
        assert!(b_naturality_residual(&x, &y, &tw, &b).unwrap().is_zero());
    }
}

#[test]
fn clifford_examples() {
    let c = plane();
    let x = sec(&c, &[("u", "1")], &[("du", "1")]);
    let one = DiffForm::one(&c);
    let once = clifford(&x, &one).unwrap();
    assert_eq!(once, DiffForm::dx(&c, 0));
    assert_eq!(clifford(&x, &once).unwrap(), one.scale(&x.pairing(&x)));
    assert!(x.pairing(&x).is_one());
    let v = sec(&c, &[("u", "u*v"), ("v", "3")], &[]);
    assert!(clifford(&v, &one).unwrap().is_zero());
}

#[test]
fn clifford_relation_random() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let c = space3();
    let shape = PolyShape::default();
    for _ in 0..20 {
        let x = random_section(&mut rng, &c, shape);
        let y = random_section(&mut rng, &c, shape);
        let rho = random_spinor(&mut rng, &c, shape);
        assert!(clifford_residual(&x, &rho).unwrap().is_zero());
        let anti = clifford(&x, &clifford(&y, &rho).unwrap()).unwrap().add(&clifford(&y, &clifford(&x, &rho).unwrap()).unwrap());
        assert_eq!(anti, rho.scale(&x.pairing(&y).scale(&2.into())));
    }
}

#[test]
fn twisted_differential() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let c = space3();
    let shape = PolyShape::default();
    let tw = random_exact_twist(&mut rng, &c, shape);
    assert_eq!(d_twisted(&DiffForm::one(&c), &tw), tw.h().neg());
    for _ in 0..10 {
        let rho = random_spinor(&mut rng, &c, shape);
        assert_eq!(d_twisted(&rho, &TwistData::zero(&c)), rho.exterior_d());
        assert!(d_twisted(&d_twisted(&rho, &tw), &tw).is_zero());
    }
}

fn exp_i(c: &ChartRef, w: &DiffForm) -> DiffForm {
    // e^{iω} for a 2-form on a surface.
    DiffForm::one(c).add(&w.scale(&Coeff::i()))
}

#[test]
fn annihilators() {
    let c = plane();
    let w = parse_form(&c, [("du^dv", "1")]).unwrap();
    let ann = spinor_annihilator(&exp_i(&c, &w), &Locus::Generic).unwrap();
    assert!(ann.pure && ann.isotropic);
    let wm = Matrix::from_rows(vec![vec![Coeff::zero(), Coeff::one()], vec![Coeff::from_int(-1), Coeff::zero()]]);
    assert_eq!(ann.space, l_omega(&wm));

    let ann1 = spinor_annihilator(&DiffForm::one(&c), &Locus::Generic).unwrap();
    assert!(ann1.pure);
    let e = |k: usize| {
        let mut v = vec![Coeff::zero(); 4];
        v[k] = Coeff::one();
        v
    };
    assert_eq!(ann1.space, Subspace::span(4, &[e(0), e(1)]));

    let mixed = DiffForm::one(&c).add(&w);
    let ann2 = spinor_annihilator(&mixed, &Locus::Generic).unwrap();
    assert!(ann2.pure && ann2.isotropic);
    // e^B applied to the annihilator of 1, checked by direct substitution.
    for s in ann2.sections(&c) {
        assert!(clifford(&s, &mixed).unwrap().is_zero());
    }

    // Non-pure: a generic 1-form plus a function in 3 dimensions has a small annihilator.
    let c3 = space3();
    let rho = parse_form(&c3, [("1", "1"), ("dx", "1")]).unwrap();
    let a3 = spinor_annihilator(&rho, &Locus::Generic).unwrap();
    assert!(!a3.pure);

    let vanishing = parse_form(&c, [("du", "u")]).unwrap();
    let pt = vec![(0, 0.into()), (1, 1.into())];
    assert!(spinor_annihilator(&vanishing, &Locus::Point(pt)).is_err());
}

#[test]
fn integrability_of_closed_symplectic_spinor() {
    let c = plane();
    let w = parse_form(&c, [("du^dv", "1+u^2")]).unwrap();
    let r = spinor_integrability(&exp_i(&c, &w), &TwistData::zero(&c)).unwrap();
    assert!(r.canonical.is_zero());
    assert!(r.checks.all_ok(), "{}", r.checks);
}

#[test]
fn eigenframes_match_definitions() {
    let c = plane();
    let w = Matrix::from_rows(vec![vec![Coeff::zero(), parse_coeff(&c, "1+u^2").unwrap()], vec![parse_coeff(&c, "-1-u^2").unwrap(), Coeff::zero()]]);
    let j = gcs_from_symplectic(&w).unwrap();
    let frame = eigenframe(&j, &c).unwrap();
    assert_eq!(Subspace::span(4, &frame.iter().map(GenSection::to_vec).collect::<Vec<_>>()), l_omega(&w));
    assert!(frame_residuals(&j, &frame).iter().flatten().all(Zero::is_zero));
    assert!(gcs_integrability(&j, &c, &TwistData::zero(&c)).unwrap().involutive());

    let c4 = Chart::full("r4", &["a", "b", "p", "q"]);
    let jc = Matrix::from_fn(4, 4, |i, k| match (i, k) {
        (1, 0) | (3, 2) => Coeff::one(),
        (0, 1) | (2, 3) => Coeff::from_int(-1),
        _ => Coeff::zero(),
    });
    let jj = gcs_from_complex(&jc).unwrap();
    let frame = eigenframe(&jj, &c4).unwrap();
    assert_eq!(Subspace::span(8, &frame.iter().map(GenSection::to_vec).collect::<Vec<_>>()), l_complex(&jc));
    let upper = [(0, 1, 1), (2, 3, 1), (0, 3, 2), (1, 2, -3)];
    let mut skew = Matrix::zeros(4, 4);
    for (i, k, v) in upper {
        skew.set(i, k, Coeff::from_int(v));
        skew.set(k, i, Coeff::from_int(-v));
    }
    let jw = gcs_from_symplectic(&skew).unwrap();
    assert!(gcs_integrability(&jw, &c4, &TwistData::zero(&c4)).unwrap().involutive());
}

#[test]
fn closed_form_acts_trivially_on_spinors() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let c = space3();
    let shape = PolyShape::default();
    let f = random_coeff(&mut rng, &c, shape);
    let x = GenSection::form(DiffForm::d_of(&c, &f)).unwrap();
    let rho = random_spinor(&mut rng, &c, shape);
    assert!(act_on_spinor(&x, &rho, &TwistData::zero(&c)).unwrap().is_zero());
}

#[test]
fn chart_mismatch_is_an_error() {
    let a = plane();
    let b = Chart::full("other", &["u", "v"]);
    assert!(loday_bracket(&GenSection::zero(&a), &GenSection::zero(&b), &TwistData::zero(&a)).is_err());
    assert!(clifford(&GenSection::zero(&a), &DiffForm::one(&b)).is_err());
    assert!(TwistData::new(parse_form(&a, [("du", "1")]).unwrap()).is_err());
    let c3 = space3();
    assert!(TwistData::new(parse_form(&c3, [("dx^dy^dz", "x")]).unwrap()).is_ok());
    let c4 = Chart::full("r4", &["a", "b", "p", "q"]);
    assert!(TwistData::new(parse_form(&c4, [("da^db^dp", "q")]).unwrap()).is_err());
}
