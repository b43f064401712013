use gcgeom::bialg::*;
use gcgeom::genlin::Matrix;
use gcgeom::symcalc::GaussianRational as Q;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(v: i64) -> Q {
    Q::from_int(v)
}

/// Fundamental representation of sl₂ on C², basis (H, E, F).
fn rho(i: usize) -> Matrix<Q> {
    let m = |a: [i64; 4]| Matrix::from_rows(vec![vec![q(a[0]), q(a[1])], vec![q(a[2]), q(a[3])]]);
    [m([1, 0, 0, -1]), m([0, 1, 0, 0]), m([0, 0, 1, 0])][i].clone()
}

fn kron(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    Matrix::from_fn(ra * rb, ca * cb, |i, j| a.get(i / rb, j / cb) * b.get(i % rb, j % cb))
}

fn id2() -> Matrix<Q> {
    Matrix::identity(2)
}

fn commutator(a: &Matrix<Q>, b: &Matrix<Q>) -> Matrix<Q> {
    a.mul(b).sub(&b.mul(a))
}

/// `[r12,r13] + [r12,r23] + [r13,r23]` as 8×8 matrices.
fn cybe_in_rep(r: &Matrix<Q>) -> Matrix<Q> {
    let mut r12 = Matrix::zeros(8, 8);
    let mut r13 = Matrix::zeros(8, 8);
    let mut r23 = Matrix::zeros(8, 8);
    for i in 0..3 {
        for j in 0..3 {
            let c = r.get(i, j);
            if c.is_zero() {
                continue;
            }
            r12 = r12.add(&kron(&kron(&rho(i), &rho(j)), &id2()).scale(c));
            r23 = r23.add(&kron(&kron(&id2(), &rho(i)), &rho(j)).scale(c));
            // slot 1 and 3: swap the middle factor
            r13 = r13.add(&kron(&kron(&rho(i), &id2()), &rho(j)).scale(c));
        }
    }
    commutator(&r12, &r13).add(&commutator(&r12, &r23)).add(&commutator(&r13, &r23))
}

fn tensor_in_rep(t: &Tensor3) -> Matrix<Q> {
    let mut out = Matrix::zeros(8, 8);
    for p in 0..3 {
        for q_ in 0..3 {
            for s in 0..3 {
                let c = t.get(p, q_, s);
                if !c.is_zero() {
                    out = out.add(&kron(&kron(&rho(p), &rho(q_)), &rho(s)).scale(c));
                }
            }
        }
    }
    out
}

#[test]
fn jacobi_on_textbook_and_perturbed_algebras() {
    assert!(LieAlgebraData::sl2().jacobi_check().is_valid());
    assert!(LieAlgebraData::abelian(4).jacobi_check().is_valid());
    let mut c = LieAlgebraData::sl2().constants().to_vec();
    c[0][1][1] = q(3);
    c[1][0][1] = q(-3);
    let bad = LieAlgebraData::unchecked(c.clone()).unwrap();
    let rep = bad.jacobi_check();
    assert_eq!(rep.residuals.len(), 1);
    assert_eq!(rep.residuals[0], ((0, 1, 2), vec![q(1), q(0), q(0)]));
    assert!(matches!(LieAlgebraData::new(c), Err(BialgError::NotLie(_))));
}

#[test]
fn sl2_standard_is_factorizable() {
    let g = LieAlgebraData::sl2();
    let r = RMatrix::sl2_standard();
    let rep = cybe_obstruction(&g, &r).unwrap();
    assert!(rep.vanishes && rep.s_invariant && rep.s_invertible && rep.factorizable);
    assert!(cybe_in_rep(&r.r).is_zero());
}

#[test]
fn obstruction_matches_representation_oracle() {
    let g = LieAlgebraData::sl2();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let vals: Vec<Q> = (0..9).map(|_| q(rng.gen_range(-3..=3))).collect();
        let m = Matrix::from_fn(3, 3, |i, j| vals[3 * i + j].clone());
        let r = RMatrix::new(m).unwrap();
        let rep = cybe_obstruction(&g, &r).unwrap();
        assert_eq!(tensor_in_rep(&rep.obstruction), cybe_in_rep(&r.r));
    }
}

#[test]
fn antisymmetric_r_is_not_factorizable() {
    let g = LieAlgebraData::sl2();
    let r = RMatrix::from_ints(&[vec![0, 0, 0], vec![0, 0, 1], vec![0, -1, 0]]).unwrap();
    let rep = cybe_obstruction(&g, &r).unwrap();
    assert!(r.s.is_zero() && !rep.s_invertible && !rep.factorizable);
    assert!(matches!(manin_triple(&g, &r), Err(BialgError::NotFactorizable(_))));
}

#[test]
fn abelian_r_matrices() {
    let g = LieAlgebraData::abelian(2);
    let r = RMatrix::from_ints(&[vec![2, 1], vec![-1, 1]]).unwrap();
    let rep = cybe_obstruction(&g, &r).unwrap();
    assert!(rep.vanishes && rep.s_invariant && rep.factorizable);
    let co = cocommutator(&g, &r).unwrap();
    assert!(co.dual.is_abelian());
    let degenerate = RMatrix::from_ints(&[vec![1, 1], vec![1, 1]]).unwrap();
    assert!(!cybe_obstruction(&g, &degenerate).unwrap().factorizable);
}

#[test]
fn cocommutator_matches_representation_oracle() {
    let g = LieAlgebraData::sl2();
    let r = RMatrix::sl2_standard();
    let co = cocommutator(&g, &r).unwrap();
    assert!(co.antisymmetric);
    let rr = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).fold(Matrix::zeros(4, 4), |acc, (i, j)| acc.add(&kron(&rho(i), &rho(j)).scale(r.r.get(i, j))));
    for x in 0..3 {
        let ad = kron(&rho(x), &id2()).add(&kron(&id2(), &rho(x)));
        let oracle = commutator(&ad, &rr);
        let ours = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .fold(Matrix::zeros(4, 4), |acc, (i, j)| acc.add(&kron(&rho(i), &rho(j)).scale(co.delta[x].get(i, j))));
        assert_eq!(ours, oracle);
    }
}

#[test]
fn non_invariant_obstruction_breaks_dual_jacobi() {
    let g = LieAlgebraData::sl2();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut found = false;
    for _ in 0..200 {
        let vals: Vec<Q> = (0..9).map(|_| q(rng.gen_range(-2..=2))).collect();
        let m = Matrix::from_fn(3, 3, |i, j| vals[3 * i + j].clone());
        let r = RMatrix::new(m).unwrap();
        let rep = cybe_obstruction(&g, &r).unwrap();
        if !rep.obstruction_invariant && matches!(cocommutator(&g, &r), Err(BialgError::DualJacobi(_))) {
            found = true;
            break;
        }
    }
    assert!(found);
}

#[test]
fn manin_triples() {
    let one = LieAlgebraData::abelian(1);
    let r = RMatrix::from_ints(&[vec![1]]).unwrap();
    let t = manin_triple(&one, &r).unwrap();
    assert!(t.checks.all_ok(), "{}", t.checks);
    let basis = Matrix::from_cols(&[t.embed_g.col(0), t.embed_ghat.col(0)], 2);
    let hyperbolic = basis.transpose().mul(&t.pairing).mul(&basis);
    assert_eq!(hyperbolic, Matrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]));
    assert_eq!(commuting_abelian_check(&t), Ok(true));

    let two = LieAlgebraData::abelian(2);
    let t2 = manin_triple(&two, &RMatrix::from_ints(&[vec![1, 0], vec![0, 1]]).unwrap()).unwrap();
    assert!(t2.checks.all_ok());
    assert_eq!(commuting_abelian_check(&t2), Ok(true));

    let sl2 = LieAlgebraData::sl2();
    let r = RMatrix::sl2_standard();
    let t3 = manin_triple(&sl2, &r).unwrap();
    assert!(t3.checks.all_ok(), "{}", t3.checks);
    assert_eq!(commuting_abelian_check(&t3), Ok(false));

    // The bracket ĝ inherits from the double is the one dual to δ.
    let co = cocommutator(&sl2, &r).unwrap();
    let hat: Vec<Vec<Q>> = (0..3).map(|j| t3.embed_ghat.col(j)).collect();
    for p in 0..3 {
        for s in 0..3 {
            let b = t3.big.bracket(&hat[p], &hat[s]);
            let expect = (0..3).fold(vec![Q::zero(); 6], |acc, x| acc.iter().zip(&hat[x]).map(|(a, h)| a + &(h * co.dual.constant(p, s, x))).collect());
            assert_eq!(b, expect, "({p},{s})");
        }
    }
}

#[test]
fn invariant_data_gives_a_bialgebra() {
    let g = LieAlgebraData::sl2();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let k = q(rng.gen_range(-3..=3));
        let mut m = Matrix::zeros(3, 3);
        m.set(0, 0, &k * &Q::from_frac(1, 2));
        m.set(1, 2, k.clone());
        m.set(2, 1, k);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let v = q(rng.gen_range(-3..=3));
            m.set(i, j, m.get(i, j) + &v);
            m.set(j, i, m.get(j, i) - &v);
        }
        let r = RMatrix::new(m).unwrap();
        let rep = cybe_obstruction(&g, &r).unwrap();
        assert!(rep.s_invariant && rep.obstruction_invariant);
        let co = cocommutator(&g, &r).unwrap();
        assert!(co.antisymmetric);
    }
}
