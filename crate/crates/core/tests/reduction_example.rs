mod common;

use common::*;
use gcgeom::courant::{GenSection, TwistData};
use gcgeom::genlin::{LinearGk, Matrix};
use gcgeom::reduction::*;
use gcgeom::symcalc::{parse_coeff, parse_form, parse_vector, Chart, ChartRef, CoordKind, DiffForm, GaussianRational as Q};
use num_traits::Zero;

fn action(h: DiffForm) -> TorusActionData {
    let c = invariant_chart();
    TorusActionData {
        gk: LinearGk::new(j1(&c), j2(&c)),
        tw: TwistData::new(h).unwrap(),
        moments: vec![Moment::new("f", df(&c), Tag::J1).unwrap(), Moment::new("f", df(&c), Tag::J2).unwrap()],
        level: vec![(0, Q::from_int(1))],
        chart: c,
    }
}

fn families() -> TorusFamilies {
    let act = action(h(&invariant_chart()));
    let secs = moment_sections(&act).unwrap();
    restrict_to_level(&act, &secs).unwrap()
}

fn connection(fam: &TorusFamilies) -> ConnectionData {
    ConnectionData { theta: vec![parse_form(&fam.chart, [("dphi1", "1")]).unwrap()], theta_hat: vec![parse_form(&fam.chart, [("dphi2", "-1")]).unwrap()] }
}

fn form(chart: &ChartRef, terms: &[(&str, &str)]) -> DiffForm {
    parse_form(chart, terms.iter().copied()).unwrap()
}

#[test]
fn moment_sections_and_hamiltonian_checks() {
    let act = action(h(&invariant_chart()));
    let c = &act.chart;
    let secs = moment_sections(&act).unwrap();
    let x1 = GenSection::new(parse_vector(c, [("phi1", "1")]).unwrap(), form(c, &[("dphi2", "-u")])).unwrap();
    let x2 = GenSection::new(parse_vector(c, [("phi2", "-1")]).unwrap(), form(c, &[("dphi1", "1-u")])).unwrap();
    assert_eq!(secs, vec![x1, x2]);
    let checks = hamiltonian_checks(&act, &secs).unwrap();
    assert!(checks.all_ok(), "{checks}");

    let flat = action(DiffForm::zero(c));
    let checks = hamiltonian_checks(&flat, &moment_sections(&flat).unwrap()).unwrap();
    let failed: Vec<_> = checks.failures().iter().map(|c| c.id.clone()).collect();
    assert!(failed.contains(&"moment[0].preserves-splitting".to_string()), "{failed:?}");
}

#[test]
fn constant_moment_is_rejected() {
    let c = invariant_chart();
    let f = parse_coeff(&c, "3").unwrap();
    assert!(matches!(Moment::from_function("f", &c, &f, Tag::J1), Err(ReductionError::Hypothesis(_))));
    let g = parse_coeff(&c, "s*u").unwrap();
    assert!(Moment::from_function("g", &c, &g, Tag::J1).is_ok());
}

#[test]
fn pairing_is_one() {
    let fam = families();
    assert_eq!(fam.chart.names(), vec!["u", "phi1", "phi2"]);
    let p = pairing_p(&fam);
    assert!(p.nondegenerate && p.checks.all_ok());
    assert_eq!(p.constant.unwrap(), Matrix::from_rows(vec![vec![Q::from_int(1)]]));
}

#[test]
fn degenerate_pairing_is_flagged() {
    let c = Chart::with_kinds("flat", &[("x", CoordKind::Angle), ("y", CoordKind::Angle)]);
    let fam = TorusFamilies {
        t: vec![GenSection::vector(parse_vector(&c, [("x", "1")]).unwrap())],
        t_hat: vec![GenSection::vector(parse_vector(&c, [("y", "1")]).unwrap())],
        tw: TwistData::zero(&c),
        chart: c,
    };
    let p = pairing_p(&fam);
    assert!(!p.nondegenerate);
}

#[test]
fn b_tilde_of_the_example() {
    let fam = families();
    let conn = connection(&fam);
    let bt = b_tilde(&fam, &conn).unwrap();
    assert_eq!(bt.b, form(&fam.chart, &[("dphi1^dphi2", "-u")]));
    assert_eq!(bt.b_hat, form(&fam.chart, &[("dphi1^dphi2", "1-u")]));
    assert_eq!(bt.b_tilde, form(&fam.chart, &[("dphi1^dphi2", "1-2*u")]));
    assert!(bt.horizontal.is_zero());
    assert!(bt.checks.all_ok(), "{}", bt.checks);
    assert_eq!(h_tilde(&fam, &bt), form(&fam.chart, &[("du^dphi1^dphi2", "-1")]));
}

#[test]
fn b_tilde_vanishes_without_form_parts() {
    let c = Chart::with_kinds("flat", &[("x", CoordKind::Angle), ("y", CoordKind::Angle), ("z", CoordKind::Full)]);
    let fam = TorusFamilies {
        t: vec![GenSection::vector(parse_vector(&c, [("x", "1")]).unwrap())],
        t_hat: vec![GenSection::vector(parse_vector(&c, [("y", "1")]).unwrap())],
        tw: TwistData::zero(&c),
        chart: c.clone(),
    };
    let conn = ConnectionData { theta: vec![form(&c, &[("dx", "1")])], theta_hat: vec![form(&c, &[("dy", "1")])] };
    assert!(b_tilde(&fam, &conn).unwrap().b_tilde.is_zero());
}

#[test]
fn bad_connection_is_rejected() {
    let fam = families();
    let conn = ConnectionData { theta: vec![form(&fam.chart, &[("dphi1", "2")])], theta_hat: vec![form(&fam.chart, &[("dphi2", "-1")])] };
    assert!(matches!(b_tilde(&fam, &conn), Err(ReductionError::Contraction(_))));
}

#[test]
fn reduced_twisting_forms_vanish_on_the_quotients() {
    let fam = families();
    let conn = connection(&fam);
    let bt = b_tilde(&fam, &conn).unwrap();
    let t = reduced_twisting(&fam, &conn, &bt, Side::T).unwrap();
    assert_eq!(t.xi_prime, vec![form(&fam.chart, &[("dphi2", "u-1")])]);
    assert!(t.form.is_zero());
    let (qc, qf) = t.quotient.unwrap();
    assert_eq!(qc.names(), vec!["u", "phi2"]);
    assert!(qf.is_zero());
    let th = reduced_twisting(&fam, &conn, &bt, Side::THat).unwrap();
    assert_eq!(th.xi_prime, vec![form(&fam.chart, &[("dphi1", "u")])]);
    assert!(th.form.is_zero());
    assert_eq!(th.quotient.unwrap().0.names(), vec!["u", "phi1"]);
}

#[test]
fn duality_identity_holds() {
    let fam = families();
    let rep = duality_check(&fam, &connection(&fam)).unwrap();
    assert!(rep.success(), "{}", rep.checks);
    assert!(rep.residual.is_zero());
    assert_eq!(rep.pairing_matrix, Matrix::from_rows(vec![vec![Q::from_int(1)]]));
}

#[test]
fn o11_preserves_duality() {
    let fam = families();
    let conn = connection(&fam);
    for (name, g) in o11_elements() {
        let out = tduality_transform(&g, &fam, &conn).unwrap();
        assert!(out.duality.success(), "{name}: {}", out.duality.checks);
        if name == "swap" {
            assert_eq!(out.families.t, fam.t_hat);
            assert_eq!(out.families.t_hat, fam.t);
        }
        if name == "identity" {
            assert_eq!(out.families.t, fam.t);
            assert_eq!(out.connection.theta, conn.theta);
        }
    }
    let shear = vec![vec![1, 1], vec![0, 1]];
    assert!(matches!(tduality_transform(&shear, &fam, &conn), Err(ReductionError::NotInGroup(_))));
}

#[test]
fn subtorus_routing() {
    let act = action(h(&invariant_chart()));
    let secs = moment_sections(&act).unwrap();
    let anti = subtorus_reduction_check(&act, &secs, &[vec![1, -1]], SubtorusMode::Nondegenerate).unwrap();
    assert_eq!(anti.contractions, vec![parse_coeff(&act.chart, "-1").unwrap()]);
    assert!(!anti.isotropic_case);
    assert!(anti.nondegenerate_case && anti.requested_applies);

    let t = subtorus_reduction_check(&act, &secs, &[vec![1, 0]], SubtorusMode::Isotropic).unwrap();
    assert!(t.isotropic_case && !t.nondegenerate_case && t.requested_applies);
    assert!(t.contractions[0].is_zero());

    assert!(matches!(subtorus_reduction_check(&act, &secs, &[vec![1, 0], vec![2, 0]], SubtorusMode::Isotropic), Err(ReductionError::Hypothesis(_))));
}
