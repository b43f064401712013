//! Scenario files: JSON with every expression written in the symcalc grammar.
//!
//! ```json
//! { "name": "...", "description": "...", "kind": "tduality", "payload": { ... } }
//! ```
//!
//! Forms are maps from wedge keys (`"du^dphi1"`, `"1"` for functions) to
//! coefficient strings; vector fields map coordinate names to components.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

use crate::error::CliError;

pub type FormSpec = BTreeMap<String, String>;
pub type StrMatrix = Vec<Vec<String>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    GkVerify,
    CourantAxioms,
    Reduction,
    Tduality,
    Bialg,
    LinearLemmas,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::GkVerify => "gk-verify",
            Kind::CourantAxioms => "courant-axioms",
            Kind::Reduction => "reduction",
            Kind::Tduality => "tduality",
            Kind::Bialg => "bialg",
            Kind::LinearLemmas => "linear-lemmas",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub kind: Kind,
    pub payload: Payload,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload {
    Geometry(GeometrySpec),
    Axioms(AxiomSpec),
    Reduction(ReductionSpec),
    Bialg(BialgSpec),
    Lemmas(LemmaSpec),
}

impl Scenario {
    /// The seed of a randomized suite, if the scenario is one.
    pub fn seed(&self) -> Option<u64> {
        match &self.payload {
            Payload::Axioms(a) => Some(a.seed),
            Payload::Lemmas(l) => Some(l.seed),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    pub name: String,
    pub coords: Vec<String>,
    /// Coordinates that are angles (coefficients may not depend on them).
    #[serde(default)]
    pub angles: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlockSpec {
    /// Chart coordinates spanned by this block, in block order.
    pub coords: Vec<String>,
    pub j1: StrMatrix,
    pub j2: StrMatrix,
}

/// Either full `2n×2n` matrices on `TM ⊕ T*M`, or blocks placed on
/// coordinate subsets (the rest is zero).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GkSpec {
    #[serde(default)]
    pub j1: Option<StrMatrix>,
    #[serde(default)]
    pub j2: Option<StrMatrix>,
    #[serde(default)]
    pub blocks: Vec<BlockSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionSpec {
    #[serde(default)]
    pub vector: BTreeMap<String, String>,
    #[serde(default)]
    pub form: FormSpec,
}

/// `J₁(df)` and `J₂(df)` compared against stated sections.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentExpectation {
    pub df: FormSpec,
    #[serde(default)]
    pub j1: Option<SectionSpec>,
    #[serde(default)]
    pub j2: Option<SectionSpec>,
    /// Expected value of `2⟨J₁(df), J₂(df)⟩`.
    #[serde(default)]
    pub pairing: Option<String>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySpec {
    pub chart: ChartSpec,
    pub gk: GkSpec,
    /// The twisting 3-form.
    pub h: FormSpec,
    /// Points for positivity of `G`; omitted coordinates stay symbolic.
    #[serde(default)]
    pub samples: Vec<BTreeMap<String, String>>,
    #[serde(default = "yes")]
    pub validity: bool,
    #[serde(default = "yes")]
    pub integrability: bool,
    /// Re-run integrability with `H = 0` and expect it to fail.
    #[serde(default = "yes")]
    pub flat_control: bool,
    #[serde(default)]
    pub spinors: bool,
    #[serde(default)]
    pub moments: Vec<MomentExpectation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TagSpec {
    J1,
    J2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentSpec {
    pub name: String,
    pub tag: TagSpec,
    #[serde(default)]
    pub df: Option<FormSpec>,
    #[serde(default)]
    pub f: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectionSpec {
    pub theta: Vec<FormSpec>,
    pub theta_hat: Vec<FormSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeSpec {
    Isotropic,
    Nondegenerate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubtorusSpec {
    pub label: String,
    /// Integer combinations of the moments, in moment order.
    pub basis: Vec<Vec<i64>>,
    pub mode: ModeSpec,
    #[serde(default)]
    pub expect_contractions: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    #[serde(default)]
    pub matrix: Option<Vec<Vec<i64>>>,
    /// `b` of the shear `[[1, 0], [b, 1]]`.
    #[serde(default)]
    pub b_shear: Option<Vec<Vec<i64>>>,
    /// `false` for elements that must be rejected.
    #[serde(default = "yes")]
    pub expect_in_group: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReductionSpec {
    pub geometry: GeometrySpec,
    pub moments: Vec<MomentSpec>,
    /// Level-set values of the full coordinates being fixed.
    #[serde(default)]
    pub level: BTreeMap<String, String>,
    /// Forms on the level-set chart.
    #[serde(default)]
    pub connection: Option<ConnectionSpec>,
    #[serde(default)]
    pub subtori: Vec<SubtorusSpec>,
    #[serde(default)]
    pub group: Vec<GroupSpec>,
    /// Require both pulled-back reduced twisting forms to be nonzero.
    #[serde(default)]
    pub expect_nonzero_sides: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeSpec {
    pub max_degree: u16,
    pub max_terms: usize,
    pub bound: i64,
}

impl Default for ShapeSpec {
    fn default() -> Self {
        ShapeSpec { max_degree: 2, max_terms: 3, bound: 3 }
    }
}

fn ten() -> usize {
    10
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomSpec {
    pub chart: ChartSpec,
    pub seed: u64,
    #[serde(default)]
    pub shape: ShapeSpec,
    /// Independent random section triples.
    pub triples: usize,
    /// Triples sharing one random exact twist.
    #[serde(default = "ten")]
    pub batch: usize,
    #[serde(default)]
    pub psi_instances: usize,
    #[serde(default)]
    pub clifford_pairs: usize,
    #[serde(default)]
    pub b_naturality: usize,
    #[serde(default)]
    pub corrupted_control: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    /// `"sl2"` or `"abelian:<n>"`.
    Named(String),
    /// `c[i][j][k]` with `[e_i, e_j] = Σ c[i][j][k] e_k`.
    Constants { constants: Vec<Vec<Vec<String>>> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgCase {
    pub label: String,
    pub algebra: AlgebraSpec,
    /// `r = Σ r[i][j] e_i ⊗ e_j`.
    pub r: StrMatrix,
    #[serde(default = "yes")]
    pub expect_factorizable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgSpec {
    pub cases: Vec<BialgCase>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaExample {
    pub chart: ChartSpec,
    pub gk: GkSpec,
    /// Spanning 1-forms of `K`.
    pub k: Vec<FormSpec>,
    #[serde(default)]
    pub samples: Vec<BTreeMap<String, String>>,
}

fn four() -> usize {
    4
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LemmaSpec {
    pub seed: u64,
    pub instances: usize,
    #[serde(default = "four")]
    pub dim: usize,
    #[serde(default)]
    pub example: Option<LemmaExample>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario<'a> {
    name: String,
    #[serde(default)]
    description: String,
    kind: Kind,
    #[serde(borrow)]
    payload: &'a RawValue,
}

#[derive(Serialize)]
struct OutScenario<'a, T: Serialize> {
    name: &'a str,
    description: &'a str,
    kind: Kind,
    payload: &'a T,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset].bytes().filter(|&b| b == b'\n').count() + 1
}

/// serde_json's message without its own ` at line L column C` suffix, which
/// would be relative to the payload.
fn message_of(e: &serde_json::Error) -> String {
    let m = e.to_string();
    match m.rfind(" at line ") {
        Some(i) if e.line() > 0 => m[..i].to_string(),
        _ => m,
    }
}

fn parse_payload<'a, T: Deserialize<'a>>(text: &str, raw: &'a RawValue) -> Result<T, CliError> {
    // The raw payload borrows from `text`, so its offset gives absolute lines.
    let offset = raw.get().as_ptr() as usize - text.as_ptr() as usize;
    let base = line_of(text, offset);
    let mut de = serde_json::Deserializer::from_str(raw.get());
    serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        CliError::Parse { line: base + inner.line() - 1, field: format!("payload.{path}"), message: message_of(&inner) }
    })
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let mut de = serde_json::Deserializer::from_str(text);
        let raw: RawScenario = serde_path_to_error::deserialize(&mut de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CliError::Parse { line: inner.line(), field: path, message: message_of(&inner) }
        })?;
        let payload = match raw.kind {
            Kind::GkVerify => Payload::Geometry(parse_payload(text, raw.payload)?),
            Kind::CourantAxioms => Payload::Axioms(parse_payload(text, raw.payload)?),
            Kind::Reduction | Kind::Tduality => Payload::Reduction(parse_payload(text, raw.payload)?),
            Kind::Bialg => Payload::Bialg(parse_payload(text, raw.payload)?),
            Kind::LinearLemmas => Payload::Lemmas(parse_payload(text, raw.payload)?),
        };
        Ok(Scenario { name: raw.name, description: raw.description, kind: raw.kind, payload })
    }

    pub fn to_json(&self) -> String {
        let (name, description, kind) = (&self.name, &self.description, self.kind);
        let out = match &self.payload {
            Payload::Geometry(p) => serde_json::to_string_pretty(&OutScenario { name, description, kind, payload: p }),
            Payload::Axioms(p) => serde_json::to_string_pretty(&OutScenario { name, description, kind, payload: p }),
            Payload::Reduction(p) => serde_json::to_string_pretty(&OutScenario { name, description, kind, payload: p }),
            Payload::Bialg(p) => serde_json::to_string_pretty(&OutScenario { name, description, kind, payload: p }),
            Payload::Lemmas(p) => serde_json::to_string_pretty(&OutScenario { name, description, kind, payload: p }),
        };
        out.expect("scenario types serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_errors_carry_absolute_lines_and_paths() {
        let text = "{\n  \"name\": \"x\",\n  \"kind\": \"bialg\",\n  \"payload\": {\n    \"cases\": [\n      {\"label\": 3}\n    ]\n  }\n}\n";
        match Scenario::from_json(text) {
            Err(CliError::Parse { line, field, .. }) => {
                assert_eq!(line, 6);
                assert!(field.starts_with("payload.cases[0]"), "{field}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_kind_is_a_parse_error() {
        let text = r#"{"name": "x", "kind": "nope", "payload": {}}"#;
        assert!(matches!(Scenario::from_json(text), Err(CliError::Parse { .. })));
    }

    #[test]
    fn round_trip() {
        let text = r#"{"name": "b", "kind": "bialg", "payload": {"cases": [{"label": "a", "algebra": "abelian:2", "r": [["2","1"],["-1","1"]]}]}}"#;
        let s = Scenario::from_json(text).unwrap();
        assert_eq!(Scenario::from_json(&s.to_json()).unwrap(), s);
    }
}
