//! Torus actions generated by moment sections `J(df_j)`, their Hamiltonian
//! properties, restriction to the level set, and the pairing `P`.

use num_traits::Zero;

use crate::checks::CheckList;
use crate::courant::bracket::loday_bracket;
use crate::courant::{eigenframe, preserves_frame, GenSection, TwistData};
use crate::genlin::{LinearGk, Matrix, Subspace};
use crate::symcalc::{ChartRef, Coeff, DiffForm, GaussianRational as Q};

use super::ReductionError;

/// Which structure generates the action of a moment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    /// `X + ξ = J₁(df)`: a generator of `T`.
    J1,
    /// `X + ξ = J₂(df)`: a generator of `T̂`.
    J2,
}

/// A moment given by its differential, which must be closed; `f` itself
/// may be transcendental (e.g. `ln r`).
#[derive(Clone, Debug)]
pub struct Moment {
    pub name: String,
    pub df: DiffForm,
    pub tag: Tag,
}

impl Moment {
    pub fn new(name: impl Into<String>, df: DiffForm, tag: Tag) -> Result<Self, ReductionError> {
        let name = name.into();
        match df.degree() {
            Some(1) => {}
            None if df.is_zero() => return Err(ReductionError::Hypothesis(format!("moment {name}: df vanishes identically"))),
            _ => return Err(ReductionError::Hypothesis(format!("moment {name}: df must be a 1-form"))),
        }
        if !df.exterior_d().is_zero() {
            return Err(ReductionError::Hypothesis(format!("moment {name}: df is not closed")));
        }
        Ok(Moment { name, df, tag })
    }

    pub fn from_function(name: impl Into<String>, chart: &ChartRef, f: &Coeff, tag: Tag) -> Result<Self, ReductionError> {
        Self::new(name, DiffForm::d_of(chart, f), tag)
    }
}

/// Abelian bi-Hamiltonian action on a chart of `M`, with the level set
/// `M₀` given as a coordinate slice.
#[derive(Clone, Debug)]
pub struct TorusActionData {
    pub chart: ChartRef,
    pub gk: LinearGk<Coeff>,
    pub tw: TwistData,
    pub moments: Vec<Moment>,
    /// Coordinates fixed on `M₀`, as `(index, value)`; empty when the chart
    /// already models `M₀`.
    pub level: Vec<(usize, Q)>,
}

/// The two generator families restricted to `M₀`, with `H` pulled back.
#[derive(Clone, Debug)]
pub struct TorusFamilies {
    pub chart: ChartRef,
    pub t: Vec<GenSection>,
    pub t_hat: Vec<GenSection>,
    pub tw: TwistData,
}

impl TorusFamilies {
    pub fn rank(&self) -> usize {
        self.t.len()
    }

    /// `T`-generators followed by `T̂`-generators.
    pub fn all(&self) -> Vec<GenSection> {
        self.t.iter().chain(&self.t_hat).cloned().collect()
    }
}

fn as_section(chart: &ChartRef, v: Vec<Coeff>) -> GenSection {
    GenSection::from_vec(chart, &v).expect("matrix image has the section shape")
}

/// `𝔛_j = J_tag(df_j)`.
pub fn moment_sections(act: &TorusActionData) -> Result<Vec<GenSection>, ReductionError> {
    let n = act.chart.dim();
    if act.gk.dim() != 2 * n {
        return Err(ReductionError::Hypothesis(format!("structures are {0}×{0}, chart needs {1}×{1}", act.gk.dim(), 2 * n)));
    }
    act.moments
        .iter()
        .map(|m| {
            let v = GenSection::form(m.df.clone())?.to_vec();
            let j = match m.tag {
                Tag::J1 => &act.gk.j1,
                Tag::J2 => &act.gk.j2,
            };
            Ok(as_section(&act.chart, j.mul_vec(&v)))
        })
        .collect()
}

/// Infinitesimal Hamiltonian properties of the moment sections on `M`.
pub fn hamiltonian_checks(act: &TorusActionData, sections: &[GenSection]) -> Result<CheckList, ReductionError> {
    let mut c = CheckList::new();
    let names = act.chart.names();
    let show = |x: &Coeff| x.fmt_with(&names);
    for (j, (s, m)) in sections.iter().zip(&act.moments).enumerate() {
        let r = s.x.pair(&m.df);
        c.push(format!("moment[{j}].preserves-own-moment"), r.is_zero(), if r.is_zero() { String::new() } else { show(&r) });
    }
    for (j, (sj, mj)) in sections.iter().zip(&act.moments).enumerate() {
        for (k, (sk, mk)) in sections.iter().zip(&act.moments).enumerate().skip(j + 1) {
            if mj.tag != mk.tag {
                continue;
            }
            let r = sj.x.pair(&mk.df).add(&sk.x.pair(&mj.df));
            c.push(format!("moment[{j},{k}].same-family-antisymmetry"), r.is_zero(), if r.is_zero() { String::new() } else { show(&r) });
        }
    }
    for (j, sj) in sections.iter().enumerate() {
        for (k, sk) in sections.iter().enumerate() {
            let b = loday_bracket(sj, sk, &act.tw)?;
            c.push(format!("bracket[{j},{k}].vanishes"), b.is_zero(), if b.is_zero() { String::new() } else { b.to_string() });
        }
    }
    for (j, s) in sections.iter().enumerate() {
        let l = act.tw.h().lie_derivative(&s.x);
        c.push(format!("moment[{j}].preserves-H"), l.is_zero(), if l.is_zero() { String::new() } else { l.to_string() });
        let r = s.xi.exterior_d().sub(&act.tw.h().interior(&s.x));
        c.push(format!("moment[{j}].preserves-splitting"), r.is_zero(), if r.is_zero() { String::new() } else { format!("dξ − ι_XH = {r}") });
    }
    // The bundle spanned by df_k, J₁df_k, J₂df_k is carried into itself.
    let mut fam = Vec::new();
    for m in &act.moments {
        let v = GenSection::form(m.df.clone())?.to_vec();
        fam.push(act.gk.j1.mul_vec(&v));
        fam.push(act.gk.j2.mul_vec(&v));
        fam.push(v);
    }
    let span = Subspace::span(2 * act.chart.dim(), &fam);
    for (j, s) in sections.iter().enumerate() {
        let ok = fam.iter().all(|v| span.contains(&loday_bracket(s, &as_section(&act.chart, v.clone()), &act.tw).unwrap().to_vec()));
        c.push(format!("moment[{j}].preserves-moment-bundle"), ok, "");
    }
    for (which, j) in [("J1", &act.gk.j1), ("J2", &act.gk.j2)] {
        let frame = eigenframe(j, &act.chart)?;
        for (k, s) in sections.iter().enumerate() {
            let p = preserves_frame(s, &frame, &act.tw)?;
            c.push(format!("moment[{k}].preserves-{which}"), p.all_ok(), p.failures().first().map(|f| f.detail.clone()).unwrap_or_default());
        }
    }
    Ok(c)
}

fn restrict_section(s: &GenSection, k: usize, v: &Q, target: &ChartRef) -> Result<GenSection, ReductionError> {
    Ok(GenSection::new(s.x.restrict(k, v, target)?, s.xi.restrict(k, v, target)?)?)
}

/// Restricts the moment sections and `H` to `M₀` and splits them by tag.
pub fn restrict_to_level(act: &TorusActionData, sections: &[GenSection]) -> Result<TorusFamilies, ReductionError> {
    let mut level = act.level.clone();
    level.sort_by(|a, b| b.0.cmp(&a.0));
    let mut chart = act.chart.clone();
    let mut secs = sections.to_vec();
    let mut h = act.tw.h().clone();
    for (k, v) in &level {
        let target = chart.without(*k, &format!("{}|{}={}", chart.name(), chart.coord_name(*k), v));
        secs = secs.iter().map(|s| restrict_section(s, *k, v, &target)).collect::<Result<_, _>>()?;
        h = h.restrict(*k, v, &target)?;
        chart = target;
    }
    let mut t = Vec::new();
    let mut t_hat = Vec::new();
    for (s, m) in secs.into_iter().zip(&act.moments) {
        match m.tag {
            Tag::J1 => t.push(s),
            Tag::J2 => t_hat.push(s),
        }
    }
    if t.len() != t_hat.len() {
        return Err(ReductionError::Hypothesis(format!("{} J1-moments but {} J2-moments", t.len(), t_hat.len())));
    }
    Ok(TorusFamilies { chart, t, t_hat, tw: TwistData::new(h)? })
}

#[derive(Clone, Debug)]
pub struct PairingReport {
    /// `P[j][k] = 2⟨𝔛_j, 𝔛̂_k⟩`.
    pub entries: Matrix<Coeff>,
    /// The same matrix over constants, when every entry is constant.
    pub constant: Option<Matrix<Q>>,
    pub nondegenerate: bool,
    pub checks: CheckList,
}

pub fn pairing_p(fam: &TorusFamilies) -> PairingReport {
    let m = fam.rank();
    let names = fam.chart.names();
    let two = Q::from_int(2);
    let entries = Matrix::from_fn(m, m, |j, k| fam.t[j].pairing(&fam.t_hat[k]).scale(&two));
    let mut checks = CheckList::new();
    let mut all_const = true;
    for j in 0..m {
        for k in 0..m {
            let d = DiffForm::d_of(&fam.chart, entries.get(j, k));
            let ok = d.is_zero() && entries.get(j, k).is_constant();
            all_const &= ok;
            checks.push(format!("P[{j},{k}].constant"), ok, if ok { entries.get(j, k).fmt_with(&names) } else { format!("dP = {d}") });
        }
    }
    let constant = all_const.then(|| entries.map(|c: &Coeff| c.constant_value().expect("constant entry")));
    let nondegenerate = constant.as_ref().map(|p| p.rank() == m).unwrap_or(false);
    checks.push("P-nondegenerate", nondegenerate, "");
    PairingReport { entries, constant, nondegenerate, checks }
}
