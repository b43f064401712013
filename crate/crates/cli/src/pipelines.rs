//! Scenario kinds mapped onto the core verification routines.
//!
//! Malformed input is an `Err` (exit code 2). A mathematical failure while
//! a stage runs becomes a failed `pipeline:<stage>` entry instead, so the
//! report still shows everything that was checked before it.

use std::collections::BTreeMap;

use gcgeom::bialg::{self, cocommutator, commuting_abelian_check, cybe_obstruction, manin_triple, LieAlgebraData, RMatrix};
use gcgeom::courant::random::{random_exact_twist, random_form, random_section, random_spinor, random_symmetry, PolyShape};
use gcgeom::courant::{
    axioms_check_triples, b_naturality_residual, clifford, clifford_residual, eigenframe, gcs_integrability, loday_bracket, loday_bracket_corrupted,
    psi_translate_residual, pure_spinor, spinor_annihilator, spinor_integrability, CourantError, GenSection, Locus, TwistData,
};
use gcgeom::genlin::suite::{random_instance, run_lemmas, LemmaOutcomes, LEMMAS};
use gcgeom::genlin::{is_gk, LinearGk, Matrix, Subspace};
use gcgeom::reduction::{
    b_shear, b_tilde, duality_check, hamiltonian_checks, moment_sections, pairing_p, reduced_twisting, restrict_to_level, subtorus_reduction_check,
    tduality_transform, ConnectionData, Moment, ReductionError, Side, SubtorusMode, Tag, TorusActionData, TorusFamilies,
};
use gcgeom::symcalc::{parse_coeff, parse_form, parse_scalar, parse_vector, Chart, ChartRef, Coeff, CoordKind, DiffForm, GaussianRational as Q};
use num_traits::Zero;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::report::{Recorder, Report, Status};
use crate::scenario::*;

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub timings: bool,
}

pub fn run(s: &Scenario, opts: RunOptions) -> Result<Report, CliError> {
    let mut r = Recorder::new(opts.timings);
    match &s.payload {
        Payload::Geometry(g) => {
            geometry(&mut r, g, "payload")?;
        }
        Payload::Reduction(p) => reduction(&mut r, p, s.kind == Kind::Tduality)?,
        Payload::Axioms(a) => axioms(&mut r, a)?,
        Payload::Bialg(b) => bialgebras(&mut r, b)?,
        Payload::Lemmas(l) => lemmas(&mut r, l)?,
    }
    Ok(r.finish(&s.name, s.kind.as_str(), s.seed()))
}

// ---- input conversion ----

pub fn build_chart(spec: &ChartSpec, field: &str) -> Result<ChartRef, CliError> {
    if let Some(a) = spec.angles.iter().find(|a| !spec.coords.contains(a)) {
        return Err(CliError::invalid(format!("{field}.angles"), format!("`{a}` is not a coordinate")));
    }
    let coords = spec.coords.iter().map(|c| (c.clone(), if spec.angles.contains(c) { CoordKind::Angle } else { CoordKind::Full })).collect();
    Chart::new(spec.name.clone(), coords).map_err(|e| CliError::invalid(field, e))
}

fn coeff(chart: &ChartRef, s: &str, field: &str) -> Result<Coeff, CliError> {
    parse_coeff(chart, s).map_err(|e| CliError::invalid(field, e))
}

fn scalar(s: &str, field: &str) -> Result<Q, CliError> {
    parse_scalar(s).map_err(|e| CliError::invalid(field, e))
}

pub fn form(chart: &ChartRef, spec: &FormSpec, field: &str) -> Result<DiffForm, CliError> {
    parse_form(chart, spec.iter().map(|(k, v)| (k.as_str(), v.as_str()))).map_err(|e| CliError::invalid(field, e))
}

fn section(chart: &ChartRef, spec: &SectionSpec, field: &str) -> Result<GenSection, CliError> {
    let x = parse_vector(chart, spec.vector.iter().map(|(k, v)| (k.as_str(), v.as_str()))).map_err(|e| CliError::invalid(format!("{field}.vector"), e))?;
    let xi = form(chart, &spec.form, &format!("{field}.form"))?;
    GenSection::new(x, xi).map_err(|e| CliError::invalid(field, e))
}

fn str_matrix(chart: &ChartRef, m: &StrMatrix, size: usize, field: &str) -> Result<Matrix<Coeff>, CliError> {
    if m.len() != size || m.iter().any(|r| r.len() != size) {
        return Err(CliError::invalid(field, format!("expected a {size}×{size} matrix")));
    }
    let rows = m
        .iter()
        .enumerate()
        .map(|(i, row)| row.iter().enumerate().map(|(j, e)| coeff(chart, e, &format!("{field}[{i}][{j}]"))).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows))
}

pub fn build_gk(chart: &ChartRef, spec: &GkSpec, field: &str) -> Result<LinearGk<Coeff>, CliError> {
    let n = chart.dim();
    match (&spec.j1, &spec.j2, spec.blocks.is_empty()) {
        (Some(a), Some(b), true) => {
            Ok(LinearGk::new(str_matrix(chart, a, 2 * n, &format!("{field}.j1"))?, str_matrix(chart, b, 2 * n, &format!("{field}.j2"))?))
        }
        (None, None, false) => {
            let mut j1 = Matrix::zeros(2 * n, 2 * n);
            let mut j2 = Matrix::zeros(2 * n, 2 * n);
            let mut seen = vec![false; n];
            for (b, blk) in spec.blocks.iter().enumerate() {
                let bf = format!("{field}.blocks[{b}]");
                let idx = blk
                    .coords
                    .iter()
                    .map(|c| chart.index_of(c).ok_or_else(|| CliError::invalid(format!("{bf}.coords"), format!("unknown coordinate `{c}`"))))
                    .collect::<Result<Vec<_>, _>>()?;
                for &i in &idx {
                    if std::mem::replace(&mut seen[i], true) {
                        return Err(CliError::invalid(format!("{bf}.coords"), format!("`{}` is in two blocks", chart.coord_name(i))));
                    }
                }
                let k = idx.len();
                let place = |i: usize| if i < k { idx[i] } else { n + idx[i - k] };
                for (src, dst, name) in [(&blk.j1, &mut j1, "j1"), (&blk.j2, &mut j2, "j2")] {
                    let m = str_matrix(chart, src, 2 * k, &format!("{bf}.{name}"))?;
                    for i in 0..2 * k {
                        for j in 0..2 * k {
                            dst.set(place(i), place(j), m.get(i, j).clone());
                        }
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(CliError::invalid(format!("{field}.blocks"), "blocks must cover every coordinate"));
            }
            Ok(LinearGk::new(j1, j2))
        }
        _ => Err(CliError::invalid(field, "give either `j1` and `j2`, or `blocks`")),
    }
}

fn samples(chart: &ChartRef, pts: &[BTreeMap<String, String>], field: &str) -> Result<Vec<Vec<Option<Q>>>, CliError> {
    pts.iter()
        .enumerate()
        .map(|(p, m)| {
            let mut v = vec![None; chart.dim()];
            for (name, val) in m {
                let f = format!("{field}[{p}].{name}");
                let i = chart.index_of(name).ok_or_else(|| CliError::invalid(&f, "unknown coordinate"))?;
                v[i] = Some(scalar(val, &f)?);
            }
            Ok(v)
        })
        .collect()
}

fn render_q(m: &Matrix<Q>) -> String {
    let rows: Vec<String> = m.to_rows().iter().map(|r| format!("[{}]", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn stage_error(r: &mut Recorder, stage: &str, e: impl std::fmt::Display) {
    r.push("pipeline", stage, Status::Fail, None, e.to_string());
}

// ---- gk-verify ----

pub struct Geometry {
    pub chart: ChartRef,
    pub gk: LinearGk<Coeff>,
    pub tw: TwistData,
}

/// Runs the geometric checks; `Ok(None)` when `H` is unusable.
fn geometry(r: &mut Recorder, g: &GeometrySpec, field: &str) -> Result<Option<Geometry>, CliError> {
    let chart = build_chart(&g.chart, &format!("{field}.chart"))?;
    let gk = build_gk(&chart, &g.gk, &format!("{field}.gk"))?;
    let h = form(&chart, &g.h, &format!("{field}.h"))?;
    let pts = samples(&chart, &g.samples, &format!("{field}.samples"))?;
    let names = chart.names();
    r.start();
    let tw = match TwistData::new(h) {
        Ok(tw) => {
            r.ok("twist", "closed-3-form", true, "");
            tw
        }
        Err(e) => {
            r.ok("twist", "closed-3-form", false, e.to_string());
            return Ok(None);
        }
    };
    if g.validity {
        r.start();
        r.checklist("gk-validity", "", &is_gk(&gk, &pts, &names));
    }
    let zero = TwistData::zero(&chart);
    for (label, j) in [("J1", &gk.j1), ("J2", &gk.j2)] {
        if g.integrability {
            r.start();
            match gcs_integrability(j, &chart, &tw) {
                Ok(rep) => {
                    let bad = rep.residuals.iter().find(|(_, c)| !c.is_zero());
                    let res = bad.map(|(_, c)| c.fmt_with(&names)).unwrap_or_else(|| "0".into());
                    r.push("integrability", label, Status::of(bad.is_none()), Some(res), rep.checks.checks[0].detail.clone());
                }
                Err(e) => stage_error(r, &format!("integrability.{label}"), e),
            }
        }
        if g.flat_control {
            r.start();
            match gcs_integrability(j, &chart, &zero) {
                Ok(rep) => {
                    let bad = rep.residuals.iter().filter(|(_, c)| !c.is_zero()).count();
                    r.ok("integrability-control", label, bad > 0, format!("with H = 0, {bad} of {} pairings are nonzero", rep.residuals.len()));
                }
                Err(e) => stage_error(r, &format!("integrability-control.{label}"), e),
            }
        }
        if g.spinors {
            r.start();
            if let Err(e) = spinor_checks(r, label, j, &chart, &tw) {
                stage_error(r, &format!("spinor.{label}"), e);
            }
        }
    }
    for (m, exp) in g.moments.iter().enumerate() {
        let f = format!("{field}.moments[{m}]");
        let df = form(&chart, &exp.df, &format!("{f}.df"))?;
        let dfv = GenSection::form(df).map_err(|e| CliError::invalid(format!("{f}.df"), e))?.to_vec();
        r.start();
        let x1 = GenSection::from_vec(&chart, &gk.j1.mul_vec(&dfv)).expect("J maps sections to sections");
        let x2 = GenSection::from_vec(&chart, &gk.j2.mul_vec(&dfv)).expect("J maps sections to sections");
        for (label, got, want) in [("J1(df)", &x1, &exp.j1), ("J2(df)", &x2, &exp.j2)] {
            if let Some(w) = want {
                let w = section(&chart, w, &format!("{f}.{}", label[..2].to_lowercase()))?;
                r.ok("moment-sections", &format!("{m}.{label}"), got == &w, format!("computed {got}"));
            }
        }
        if let Some(p) = &exp.pairing {
            let want = coeff(&chart, p, &format!("{f}.pairing"))?;
            let got = x1.pairing(&x2).scale(&Q::from_int(2));
            r.ok("moment-pairing", &m.to_string(), got == want, format!("2<J1(df), J2(df)> = {}", got.fmt_with(&names)));
        }
    }
    Ok(Some(Geometry { chart, gk, tw }))
}

fn spinor_checks(r: &mut Recorder, label: &str, j: &Matrix<Coeff>, chart: &ChartRef, tw: &TwistData) -> Result<(), CourantError> {
    let frame = eigenframe(j, chart)?;
    let rho = pure_spinor(&frame)?;
    let ann = spinor_annihilator(&rho, &Locus::Generic)?;
    let lspan = Subspace::span(2 * chart.dim(), &frame.iter().map(GenSection::to_vec).collect::<Vec<_>>());
    r.ok("spinor-integrability", &format!("{label}.annihilator-is-L"), ann.pure && ann.isotropic && ann.space == lspan, format!("rho = {rho}"));
    match spinor_integrability(&rho, tw) {
        Ok(integ) => r.checklist("spinor-integrability", &format!("{label}."), &integ.checks),
        Err(e) => r.ok("spinor-integrability", &format!("{label}.integrability-residual"), false, e.to_string()),
    }
    match spinor_integrability(&rho, &TwistData::zero(chart)) {
        Err(CourantError::NotIntegrable(m)) => r.ok("spinor-control", label, true, m),
        Ok(integ) => r.ok("spinor-control", label, !integ.checks.all_ok(), "d rho solved with H = 0"),
        Err(e) => return Err(e),
    }
    Ok(())
}

// ---- reduction and tduality ----

fn reduction(r: &mut Recorder, p: &ReductionSpec, tduality: bool) -> Result<(), CliError> {
    let Some(geo) = geometry(r, &p.geometry, "payload.geometry")? else {
        return Ok(());
    };
    let chart = geo.chart.clone();
    if tduality && p.connection.is_none() {
        return Err(CliError::invalid("payload.connection", "required for tduality scenarios"));
    }
    let mut moments = Vec::new();
    for (i, m) in p.moments.iter().enumerate() {
        let f = format!("payload.moments[{i}]");
        let tag = match m.tag {
            TagSpec::J1 => Tag::J1,
            TagSpec::J2 => Tag::J2,
        };
        let made = match (&m.df, &m.f) {
            (Some(df), None) => Moment::new(m.name.clone(), form(&chart, df, &format!("{f}.df"))?, tag),
            (None, Some(fs)) => Moment::from_function(m.name.clone(), &chart, &coeff(&chart, fs, &format!("{f}.f"))?, tag),
            _ => return Err(CliError::invalid(&f, "give exactly one of `df` and `f`")),
        };
        match made {
            Ok(mm) => moments.push(mm),
            Err(e) => {
                r.ok("moments", &format!("{i}.{}", m.name), false, e.to_string());
                return Ok(());
            }
        }
    }
    let mut level = Vec::new();
    for (name, v) in &p.level {
        let f = format!("payload.level.{name}");
        let i = chart.index_of(name).ok_or_else(|| CliError::invalid(&f, "unknown coordinate"))?;
        level.push((i, scalar(v, &f)?));
    }
    let act = TorusActionData { chart: chart.clone(), gk: geo.gk, tw: geo.tw, moments, level };

    r.start();
    let secs = match moment_sections(&act) {
        Ok(s) => s,
        Err(e) => {
            stage_error(r, "moment-sections", e);
            return Ok(());
        }
    };
    match hamiltonian_checks(&act, &secs) {
        Ok(c) => r.checklist("hamiltonian", "", &c),
        Err(e) => stage_error(r, "hamiltonian", e),
    }
    for (i, st) in p.subtori.iter().enumerate() {
        subtorus(r, &act, &secs, st, &format!("payload.subtori[{i}]"))?;
    }

    let fam = match restrict_to_level(&act, &secs) {
        Ok(f) => f,
        Err(e) => {
            stage_error(r, "restrict-to-level", e);
            return Ok(());
        }
    };
    r.start();
    let pr = pairing_p(&fam);
    let shown = pr.constant.as_ref().map(render_q).unwrap_or_else(|| "not constant".into());
    r.ok("pairing", "constant-nondegenerate", pr.nondegenerate && pr.constant.is_some(), format!("P = {shown}"));
    r.checklist("pairing", "", &pr.checks);

    let Some(cs) = &p.connection else {
        return Ok(());
    };
    let conn = connection(&fam, cs)?;
    r.start();
    match conn.verify(&fam) {
        Ok(rep) => r.checklist("connection", "", &rep.checks),
        Err(e) => {
            r.ok("connection", "contractions", false, e.to_string());
            return Ok(());
        }
    }
    if !tduality {
        twisting_stages(r, &fam, &conn);
        return Ok(());
    }

    r.start();
    match duality_check(&fam, &conn) {
        Ok(rep) => {
            r.push(
                "duality-residual",
                "identity",
                Status::of(rep.residual.is_zero()),
                Some(rep.residual.to_string()),
                format!("P = {}, Btilde = {}", render_q(&rep.pairing_matrix), rep.b_tilde),
            );
            r.checklist("duality", "", &rep.checks);
            for red in &rep.reduced {
                let side = side_name(red.side);
                let detail = match &red.quotient {
                    Some((qc, qf)) => format!("pulled back {} descends to {} on ({})", red.form, qf, qc.names().join(", ")),
                    None => format!("pulled back {}", red.form),
                };
                r.ok("reduced-twisting", &format!("{side}.basic"), true, detail);
            }
            if p.expect_nonzero_sides {
                let ok = !rep.h.is_zero() && !rep.hhat.is_zero();
                r.ok("duality", "sides-nonzero", ok, format!("pi*h = {}; pihat*hhat = {}", rep.h, rep.hhat));
            }
        }
        Err(e) => stage_error(r, "duality", e),
    }
    for (i, g) in p.group.iter().enumerate() {
        group_element(r, &fam, &conn, g, &format!("payload.group[{i}]"))?;
    }
    Ok(())
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::T => "T",
        Side::THat => "That",
    }
}

fn connection(fam: &TorusFamilies, cs: &ConnectionSpec) -> Result<ConnectionData, CliError> {
    let m = fam.rank();
    if cs.theta.len() != m || cs.theta_hat.len() != m {
        return Err(CliError::invalid("payload.connection", format!("need {m} forms in `theta` and in `theta_hat`")));
    }
    let conv = |v: &[FormSpec], name: &str| -> Result<Vec<DiffForm>, CliError> {
        v.iter().enumerate().map(|(i, f)| form(&fam.chart, f, &format!("payload.connection.{name}[{i}]"))).collect()
    };
    Ok(ConnectionData { theta: conv(&cs.theta, "theta")?, theta_hat: conv(&cs.theta_hat, "theta_hat")? })
}

fn twisting_stages(r: &mut Recorder, fam: &TorusFamilies, conn: &ConnectionData) {
    r.start();
    let bt = match b_tilde(fam, conn) {
        Ok(bt) => bt,
        Err(e) => {
            stage_error(r, "b-tilde", e);
            return;
        }
    };
    r.ok("b-tilde", "computed", true, format!("Btilde = {}", bt.b_tilde));
    r.checklist("b-tilde", "", &bt.checks);
    for side in [Side::T, Side::THat] {
        r.start();
        match reduced_twisting(fam, conn, &bt, side) {
            Ok(red) => {
                let detail = match &red.quotient {
                    Some((qc, qf)) => format!("h = {qf} on ({})", qc.names().join(", ")),
                    None => format!("pulled back {}", red.form),
                };
                r.ok("reduced-twisting", &format!("{}.basic", side_name(side)), true, detail);
            }
            Err(e) => r.ok("reduced-twisting", &format!("{}.basic", side_name(side)), false, e.to_string()),
        }
    }
}

fn subtorus(r: &mut Recorder, act: &TorusActionData, secs: &[GenSection], st: &SubtorusSpec, field: &str) -> Result<(), CliError> {
    let mode = match st.mode {
        ModeSpec::Isotropic => SubtorusMode::Isotropic,
        ModeSpec::Nondegenerate => SubtorusMode::Nondegenerate,
    };
    if st.basis.iter().any(|b| b.len() != act.moments.len()) {
        return Err(CliError::invalid(format!("{field}.basis"), format!("each vector needs {} entries", act.moments.len())));
    }
    let names = act.chart.names();
    let l = &st.label;
    r.start();
    match subtorus_reduction_check(act, secs, &st.basis, mode) {
        Ok(rep) => {
            for (a, c) in rep.contractions.iter().enumerate() {
                let (status, detail) = match &st.expect_contractions {
                    Some(want) => {
                        let w = want.get(a).ok_or_else(|| CliError::invalid(format!("{field}.expect_contractions"), "too few entries"))?;
                        let w = coeff(&act.chart, w, &format!("{field}.expect_contractions[{a}]"))?;
                        (Status::of(&w == c), format!("expected {}", w.fmt_with(&names)))
                    }
                    None => (Status::Pass, String::new()),
                };
                r.push("subtorus", &format!("{l}.contraction[{a}]"), status, Some(c.fmt_with(&names)), detail);
            }
            let case = |ok: bool| if ok { Status::Pass } else { Status::NotApplicable };
            r.push("subtorus", &format!("{l}.case-isotropic"), case(rep.isotropic_case), None, "sections isotropic");
            r.push("subtorus", &format!("{l}.case-nondegenerate"), case(rep.nondegenerate_case), None, "Gram matrix of sections nondegenerate");
            r.ok("subtorus", &format!("{l}.requested"), rep.requested_applies, format!("{:?} route", rep.requested).to_lowercase());
            // Checks of a case that does not apply explain why; they are not failures.
            for c in &rep.checks.checks {
                let applies = if c.id.starts_with("case-isotropic.") {
                    rep.isotropic_case
                } else if c.id.starts_with("case-nondegenerate.") {
                    rep.nondegenerate_case
                } else {
                    continue;
                };
                let status = if applies { Status::of(c.ok) } else { Status::NotApplicable };
                r.push("subtorus", &format!("{l}.{}", c.id), status, None, c.detail.clone());
            }
        }
        Err(ReductionError::NoCase(m)) => r.ok("subtorus", &format!("{l}.route"), false, m),
        Err(ReductionError::Hypothesis(m)) => return Err(CliError::invalid(format!("{field}.basis"), m)),
        Err(e) => stage_error(r, &format!("subtorus.{l}"), e),
    }
    Ok(())
}

fn group_element(r: &mut Recorder, fam: &TorusFamilies, conn: &ConnectionData, g: &GroupSpec, field: &str) -> Result<(), CliError> {
    let m = match (&g.matrix, &g.b_shear) {
        (Some(m), None) => m.clone(),
        (None, Some(b)) => {
            if b.len() != fam.rank() || b.iter().any(|row| row.len() != fam.rank()) {
                return Err(CliError::invalid(format!("{field}.b_shear"), format!("expected a {0}×{0} matrix", fam.rank())));
            }
            b_shear(b)
        }
        _ => return Err(CliError::invalid(field, "give exactly one of `matrix` and `b_shear`")),
    };
    let n = &g.name;
    r.start();
    match tduality_transform(&m, fam, conn) {
        Ok(out) => {
            r.ok("tgroup", &format!("{n}.membership"), g.expect_in_group, if g.expect_in_group { "" } else { "expected rejection" });
            r.checklist("tgroup", &format!("{n}."), &out.checks);
            r.push("tgroup", &format!("{n}.duality-residual"), Status::of(out.duality.success()), Some(out.duality.residual.to_string()), "");
        }
        Err(ReductionError::NotInGroup(msg)) => r.ok("tgroup", &format!("{n}.membership"), !g.expect_in_group, msg),
        Err(ReductionError::Hypothesis(msg)) => return Err(CliError::invalid(format!("{field}.matrix"), msg)),
        Err(e) => stage_error(r, &format!("tgroup.{n}"), e),
    }
    Ok(())
}

// ---- courant-axioms ----

/// Counts failures over a suite and keeps the first nonzero residual.
struct Tally {
    total: usize,
    bad: usize,
    first: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally { total: 0, bad: 0, first: None }
    }

    fn add(&mut self, zero: bool, residual: impl FnOnce() -> String) {
        self.total += 1;
        if !zero {
            self.bad += 1;
            if self.first.is_none() {
                self.first = Some(residual());
            }
        }
    }

    fn record(self, r: &mut Recorder, family: &str, sub: &str, what: &str) {
        let detail = format!("{}/{} {what} nonzero", self.bad, self.total);
        r.push(family, sub, Status::of(self.bad == 0 && self.total > 0), Some(self.first.unwrap_or_else(|| "0".into())), detail);
    }
}

fn axioms(r: &mut Recorder, a: &AxiomSpec) -> Result<(), CliError> {
    let chart = build_chart(&a.chart, "payload.chart")?;
    if a.batch == 0 {
        return Err(CliError::invalid("payload.batch", "must be positive"));
    }
    let shape = PolyShape { max_degree: a.shape.max_degree, max_terms: a.shape.max_terms, bound: a.shape.bound };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);

    r.start();
    let (mut jac, mut sym, mut inv) = (Tally::new(), Tally::new(), Tally::new());
    let mut control: Option<(Vec<(GenSection, GenSection, GenSection)>, TwistData)> = None;
    let mut left = a.triples;
    while left > 0 {
        let count = left.min(a.batch);
        left -= count;
        let tw = random_exact_twist(&mut rng, &chart, shape);
        let triples: Vec<_> = (0..count)
            .map(|_| (random_section(&mut rng, &chart, shape), random_section(&mut rng, &chart, shape), random_section(&mut rng, &chart, shape)))
            .collect();
        let rep = match axioms_check_triples(&loday_bracket, &triples, &tw) {
            Ok(rep) => rep,
            Err(e) => {
                stage_error(r, "courant-axioms", e);
                return Ok(());
            }
        };
        let names = chart.names();
        for t in &rep.triples {
            jac.add(t.jacobi.is_zero(), || t.jacobi.to_string());
            sym.add(t.symmetric.is_zero(), || t.symmetric.fmt_with(&names));
            inv.add(t.invariance.is_zero(), || t.invariance.fmt_with(&names));
        }
        if control.is_none() {
            control = Some((triples, tw));
        }
    }
    if a.triples > 0 {
        jac.record(r, "courant-axioms", "leibniz", "triples");
        sym.record(r, "courant-axioms", "anchor-symmetric", "triples");
        inv.record(r, "courant-axioms", "anchor-invariant", "triples");
    }

    if a.corrupted_control {
        r.start();
        match &control {
            Some((triples, tw)) => match axioms_check_triples(&loday_bracket_corrupted, triples, tw) {
                Ok(rep) => {
                    let bad = rep.triples.iter().filter(|t| !t.jacobi.is_zero()).count();
                    r.ok("corrupted-control", "leibniz-detects", bad > 0, format!("{bad}/{} triples nonzero", rep.triples.len()));
                }
                Err(e) => stage_error(r, "corrupted-control", e),
            },
            None => return Err(CliError::invalid("payload.triples", "the corrupted control needs at least one triple")),
        }
    }

    if a.psi_instances > 0 {
        r.start();
        let mut t = Tally::new();
        for _ in 0..a.psi_instances {
            let p = random_symmetry(&mut rng, &chart, shape);
            let q = random_symmetry(&mut rng, &chart, shape);
            let h = random_exact_twist(&mut rng, &chart, shape);
            let hp = random_exact_twist(&mut rng, &chart, shape);
            let res = psi_translate_residual(&p, &q, &h, &hp);
            t.add(res.is_zero(), || res.to_string());
        }
        t.record(r, "psi-translation", "residual", "instances");
    }

    if a.clifford_pairs > 0 {
        r.start();
        let mut t = Tally::new();
        for _ in 0..a.clifford_pairs {
            let x = random_section(&mut rng, &chart, shape);
            let y = random_section(&mut rng, &chart, shape);
            let rho = random_spinor(&mut rng, &chart, shape);
            let res = (|| -> Result<DiffForm, CourantError> {
                let sq = clifford_residual(&x, &rho)?;
                let anti = clifford(&x, &clifford(&y, &rho)?)?.add(&clifford(&y, &clifford(&x, &rho)?)?);
                Ok(sq.add(&anti.sub(&rho.scale(&x.pairing(&y).scale(&Q::from_int(2))))))
            })();
            match res {
                Ok(f) => t.add(f.is_zero(), || f.to_string()),
                Err(e) => t.add(false, || e.to_string()),
            }
        }
        t.record(r, "clifford", "relation", "pairs");
    }

    if a.b_naturality > 0 {
        r.start();
        let mut t = Tally::new();
        for _ in 0..a.b_naturality {
            let tw = random_exact_twist(&mut rng, &chart, shape);
            let b = random_form(&mut rng, &chart, 2, shape);
            let x = random_section(&mut rng, &chart, shape);
            let y = random_section(&mut rng, &chart, shape);
            match b_naturality_residual(&x, &y, &tw, &b) {
                Ok(res) => t.add(res.is_zero(), || res.to_string()),
                Err(e) => t.add(false, || e.to_string()),
            }
        }
        t.record(r, "b-naturality", "residual", "instances");
    }
    Ok(())
}

// ---- bialg ----

fn algebra(spec: &AlgebraSpec, field: &str) -> Result<LieAlgebraData, CliError> {
    match spec {
        AlgebraSpec::Named(s) if s == "sl2" => Ok(LieAlgebraData::sl2()),
        AlgebraSpec::Named(s) => match s.strip_prefix("abelian:").and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if n > 0 => Ok(LieAlgebraData::abelian(n)),
            _ => Err(CliError::invalid(field, format!("unknown algebra `{s}`; use `sl2`, `abelian:<n>` or structure constants"))),
        },
        AlgebraSpec::Constants { constants } => {
            let c = constants
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    a.iter()
                        .enumerate()
                        .map(|(j, b)| b.iter().enumerate().map(|(k, v)| scalar(v, &format!("{field}.constants[{i}][{j}][{k}]"))).collect())
                        .collect()
                })
                .collect::<Result<Vec<Vec<Vec<Q>>>, CliError>>()?;
            LieAlgebraData::new(c).map_err(|e| CliError::invalid(field, e))
        }
    }
}

fn bialgebras(r: &mut Recorder, b: &BialgSpec) -> Result<(), CliError> {
    for (i, case) in b.cases.iter().enumerate() {
        let field = format!("payload.cases[{i}]");
        let g = algebra(&case.algebra, &format!("{field}.algebra"))?;
        let n = g.dim();
        if case.r.len() != n || case.r.iter().any(|row| row.len() != n) {
            return Err(CliError::invalid(format!("{field}.r"), format!("expected a {n}×{n} matrix")));
        }
        let rows = case
            .r
            .iter()
            .enumerate()
            .map(|(p, row)| row.iter().enumerate().map(|(q, v)| scalar(v, &format!("{field}.r[{p}][{q}]"))).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let rm = RMatrix::new(Matrix::from_rows(rows)).map_err(|e| CliError::invalid(format!("{field}.r"), e))?;
        bialg_case(r, &case.label, &g, &rm, case.expect_factorizable);
    }
    Ok(())
}

fn bialg_case(r: &mut Recorder, l: &str, g: &LieAlgebraData, rm: &RMatrix, expect: bool) {
    r.start();
    let cy = match cybe_obstruction(g, rm) {
        Ok(c) => c,
        Err(e) => {
            stage_error(r, &format!("cybe.{l}"), e);
            return;
        }
    };
    let n = g.dim();
    let nonzero: Vec<String> = (0..n)
        .flat_map(|p| (0..n).flat_map(move |q| (0..n).map(move |t| (p, q, t))))
        .filter(|&(p, q, t)| !cy.obstruction.get(p, q, t).is_zero())
        .map(|(p, q, t)| format!("T[{p},{q},{t}] = {}", cy.obstruction.get(p, q, t)))
        .collect();
    let residual = if nonzero.is_empty() { "0".to_string() } else { nonzero.join("; ") };
    // For an expected non-factorizable r the components are informational.
    let part = |ok: bool| match (ok, expect) {
        (true, _) => Status::Pass,
        (false, true) => Status::Fail,
        (false, false) => Status::NotApplicable,
    };
    let inv = if cy.obstruction_invariant { "obstruction ad-invariant" } else { "obstruction not ad-invariant" };
    r.push("cybe", &format!("{l}.vanishes"), part(cy.vanishes), Some(residual), inv);
    r.push("cybe", &format!("{l}.s-invariant"), part(cy.s_invariant), None, "");
    r.push("cybe", &format!("{l}.s-invertible"), part(cy.s_invertible), None, "");
    let fact = cy.factorizable && cy.s_invariant;
    r.ok("factorizable", l, fact == expect, format!("factorizable = {fact}, expected {expect}"));

    r.start();
    match cocommutator(g, rm) {
        Ok(c) => r.ok("cocommutator", &format!("{l}.dual-jacobi"), c.antisymmetric, if c.antisymmetric { "" } else { "dual bracket not antisymmetric" }),
        Err(bialg::BialgError::DualJacobi(m)) => r.push("cocommutator", &format!("{l}.dual-jacobi"), part(false), None, m),
        Err(e) => stage_error(r, &format!("cocommutator.{l}"), e),
    }

    if !fact {
        r.push("manin-triple", l, Status::NotApplicable, None, "r is not factorizable");
        return;
    }
    r.start();
    match manin_triple(g, rm) {
        Ok(t) => {
            r.checklist("manin-triple", &format!("{l}."), &t.checks);
            match commuting_abelian_check(&t) {
                Ok(true) => r.ok("commuting-abelian", l, true, "g and ghat commute and the double is abelian"),
                Ok(false) => r.push("commuting-abelian", l, Status::NotApplicable, None, "returns false: g and ghat do not commute"),
                Err(e) => r.ok("commuting-abelian", l, false, e.to_string()),
            }
        }
        Err(e) => stage_error(r, &format!("manin-triple.{l}"), e),
    }
}

// ---- linear-lemmas ----

fn record_lemmas(r: &mut Recorder, sub: &str, runs: &[LemmaOutcomes]) {
    for (li, name) in LEMMAS.iter().enumerate() {
        let mut ok = 0;
        let mut first = None;
        for (i, out) in runs.iter().enumerate() {
            match &out[li].1 {
                Ok(c) if c.all_ok() => ok += 1,
                Ok(c) => {
                    first.get_or_insert_with(|| format!("instance {i}: {}", c.failures().iter().map(|f| f.id.clone()).collect::<Vec<_>>().join(", ")));
                }
                Err(e) => {
                    first.get_or_insert_with(|| format!("instance {i}: {e}"));
                }
            }
        }
        let mut detail = format!("{ok}/{} instances", runs.len());
        if let Some(f) = first {
            detail.push_str(&format!("; first failure {f}"));
        }
        r.ok(&format!("lemma-{name}"), sub, ok == runs.len() && !runs.is_empty(), detail);
    }
}

fn lemmas(r: &mut Recorder, l: &LemmaSpec) -> Result<(), CliError> {
    if l.dim < 4 || l.dim % 2 == 1 {
        return Err(CliError::invalid("payload.dim", "random instances need an even dimension of at least 4"));
    }
    if l.instances > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(l.seed);
        r.start();
        let runs: Vec<LemmaOutcomes> = (0..l.instances)
            .map(|_| {
                let (gk, k) = random_instance(&mut rng, l.dim);
                run_lemmas(&k, &gk, &[])
            })
            .collect();
        record_lemmas(r, "random", &runs);
    }
    if let Some(ex) = &l.example {
        let chart = build_chart(&ex.chart, "payload.example.chart")?;
        let gk = build_gk(&chart, &ex.gk, "payload.example.gk")?;
        let vs =
            ex.k.iter()
                .enumerate()
                .map(|(i, f)| {
                    let fld = format!("payload.example.k[{i}]");
                    let df = form(&chart, f, &fld)?;
                    GenSection::form(df).map(|s| s.to_vec()).map_err(|e| CliError::invalid(&fld, e))
                })
                .collect::<Result<Vec<_>, _>>()?;
        let k = Subspace::span(2 * chart.dim(), &vs);
        let pts = samples(&chart, &ex.samples, "payload.example.samples")?;
        r.start();
        record_lemmas(r, "example", &[run_lemmas(&k, &gk, &pts)]);
    }
    Ok(())
}
