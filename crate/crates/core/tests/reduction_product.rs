mod common;

use common::*;
use gcgeom::courant::TwistData;
use gcgeom::genlin::{LinearGk, Matrix};
use gcgeom::reduction::*;
use gcgeom::symcalc::{parse_form, ChartRef, DiffForm, GaussianRational as Q};

fn action() -> TorusActionData {
    let c = product_chart();
    let inv = invariant_chart();
    let ds = parse_form(&c, [("ds", "1/(2*s)")]).unwrap();
    let dt = parse_form(&c, [("dt", "1/(2*t)")]).unwrap();
    TorusActionData {
        gk: LinearGk::new(doubled(&j1(&inv)), doubled(&j2(&inv))),
        tw: TwistData::new(product_h(&c)).unwrap(),
        moments: vec![
            Moment::new("f", ds.clone(), Tag::J1).unwrap(),
            Moment::new("g", dt.clone(), Tag::J1).unwrap(),
            Moment::new("f", ds, Tag::J2).unwrap(),
            Moment::new("g", dt, Tag::J2).unwrap(),
        ],
        level: vec![(0, Q::from_int(1)), (4, Q::from_int(1))],
        chart: c,
    }
}

fn families() -> TorusFamilies {
    let act = action();
    let secs = moment_sections(&act).unwrap();
    restrict_to_level(&act, &secs).unwrap()
}

fn form(chart: &ChartRef, terms: &[(&str, &str)]) -> DiffForm {
    parse_form(chart, terms.iter().copied()).unwrap()
}

fn product_connection(fam: &TorusFamilies) -> ConnectionData {
    let c = &fam.chart;
    ConnectionData {
        theta: vec![form(c, &[("dphi1", "1")]), form(c, &[("dpsi1", "1")])],
        theta_hat: vec![form(c, &[("dphi2", "-1")]), form(c, &[("dpsi2", "-1")])],
    }
}

/// Couples the factors so that neither reduced twisting form vanishes.
fn mixing_connection(fam: &TorusFamilies) -> ConnectionData {
    let c = &fam.chart;
    ConnectionData {
        theta: vec![form(c, &[("dphi1", "1"), ("dv", "u")]), form(c, &[("dpsi1", "1"), ("du", "v")])],
        theta_hat: vec![form(c, &[("dphi2", "-1")]), form(c, &[("dpsi2", "-1"), ("du", "u*v")])],
    }
}

#[test]
fn hamiltonian_and_pairing() {
    let act = action();
    let secs = moment_sections(&act).unwrap();
    let checks = hamiltonian_checks(&act, &secs).unwrap();
    assert!(checks.all_ok(), "{checks}");
    let fam = restrict_to_level(&act, &secs).unwrap();
    assert_eq!(fam.chart.dim(), 6);
    let p = pairing_p(&fam);
    assert_eq!(p.constant.unwrap(), Matrix::<Q>::identity(2));
}

#[test]
fn b_tilde_is_additive_over_factors() {
    let fam = families();
    let bt = b_tilde(&fam, &product_connection(&fam)).unwrap();
    assert!(bt.checks.all_ok(), "{}", bt.checks);
    assert_eq!(bt.b_tilde, form(&fam.chart, &[("dphi1^dphi2", "1-2*u"), ("dpsi1^dpsi2", "1-2*v")]));
}

#[test]
fn duality_with_nonzero_sides() {
    let fam = families();
    let conn = mixing_connection(&fam);
    let rep = duality_check(&fam, &conn).unwrap();
    assert!(rep.success(), "{}", rep.checks);
    assert!(!rep.h.is_zero() && !rep.hhat.is_zero());
    let (qc, qh) = rep.reduced[0].quotient.clone().unwrap();
    assert_eq!(qc.dim(), 4);
    assert_eq!(qh.degree(), Some(3));
    assert!(!qh.is_zero());
    let plain = duality_check(&fam, &product_connection(&fam)).unwrap();
    assert!(plain.success());
}

#[test]
fn doubled_pairing_breaks_the_identity() {
    let fam = families();
    let p2 = Matrix::<Q>::identity(2).scale(&Q::from_int(2));
    let rep = duality_check_with(&fam, &mixing_connection(&fam), Some(&p2)).unwrap();
    assert!(!rep.residual.is_zero());
    assert!(!rep.success());
}

#[test]
fn b_shear_preserves_duality() {
    let fam = families();
    let conn = mixing_connection(&fam);
    let g = b_shear(&[vec![0, 1], vec![-1, 0]]);
    let out = tduality_transform(&g, &fam, &conn).unwrap();
    assert!(out.checks.all_ok());
    assert!(out.duality.success(), "{}", out.duality.checks);
    // Θ^b = Θ, Θ̂^b_j = Θ̂_j − Σ b_jk Θ_k, X^b_j = X_j + Σ b_kj X̂_k.
    assert_eq!(out.connection.theta, conn.theta);
    assert_eq!(out.connection.theta_hat[0], conn.theta_hat[0].sub(&conn.theta[1]));
    assert_eq!(out.connection.theta_hat[1], conn.theta_hat[1].add(&conn.theta[0]));
    assert_eq!(out.families.t[0], fam.t[0].sub(&fam.t_hat[1]));
    assert_eq!(out.families.t[1], fam.t[1].add(&fam.t_hat[0]));
}

#[test]
fn diagonal_lagrangian_subtorus_is_isotropic_case() {
    let act = action();
    let secs = moment_sections(&act).unwrap();
    let rep = subtorus_reduction_check(&act, &secs, &[vec![1, 0, 0, 1], vec![0, 1, -1, 0]], SubtorusMode::Isotropic).unwrap();
    assert!(rep.isotropic_case && rep.requested_applies, "{}", rep.checks);
}
