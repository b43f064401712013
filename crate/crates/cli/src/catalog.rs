//! Bundled scenarios and the registry behind `explain`.

use crate::error::CliError;
use crate::scenario::Scenario;

pub struct Bundled {
    pub name: &'static str,
    pub json: &'static str,
}

pub const BUNDLED: &[Bundled] = &[
    Bundled { name: "cp2-example", json: include_str!("../scenarios/cp2-example.json") },
    Bundled { name: "cp2-cartesian", json: include_str!("../scenarios/cp2-cartesian.json") },
    Bundled { name: "cp2-product", json: include_str!("../scenarios/cp2-product.json") },
    Bundled { name: "antidiagonal", json: include_str!("../scenarios/antidiagonal.json") },
    Bundled { name: "bshear", json: include_str!("../scenarios/bshear.json") },
    Bundled { name: "sl2-rmatrix", json: include_str!("../scenarios/sl2-rmatrix.json") },
    Bundled { name: "random-axioms", json: include_str!("../scenarios/random-axioms.json") },
    Bundled { name: "linear-lemmas", json: include_str!("../scenarios/linear-lemmas.json") },
];

pub fn bundled(name: &str) -> Option<&'static Bundled> {
    BUNDLED.iter().find(|b| b.name == name)
}

/// `(name, kind, description)` for every bundled scenario.
pub fn list() -> Result<Vec<(String, String, String)>, CliError> {
    BUNDLED.iter().map(|b| Scenario::from_json(b.json).map(|s| (b.name.to_string(), s.kind.as_str().to_string(), s.description))).collect()
}

pub struct Family {
    pub id: &'static str,
    /// The result being checked.
    pub anchor: &'static str,
    pub formula: &'static str,
}

pub const FAMILIES: &[Family] = &[
    Family { id: "twist", anchor: "twisting 3-form of an exact Courant algebroid", formula: "H is a closed real 3-form, dH = 0" },
    Family {
        id: "gk-validity",
        anchor: "generalized Kahler pair",
        formula: "J1^2 = J2^2 = -1, J_i orthogonal for <,>, J1 J2 = J2 J1, G = -J1 J2 symmetric and positive definite, G^2 = 1",
    },
    Family {
        id: "integrability",
        anchor: "H-twisted integrability of a generalized complex structure",
        formula: "the +i-eigenbundle L of J is involutive: <e_a *_H e_b, e_c> = 0 for a frame of L",
    },
    Family {
        id: "integrability-control",
        anchor: "negative control for twisted integrability",
        formula: "with H = 0 the +i-eigenbundle of the example's J1 and J2 is not involutive",
    },
    Family {
        id: "spinor-integrability",
        anchor: "pure spinor line of a generalized complex structure",
        formula: "the annihilator of rho is L, and d_H rho = Y.rho for a section Y of Lbar (d_H = d - H^)",
    },
    Family { id: "spinor-control", anchor: "negative control for spinor integrability", formula: "with H = 0, d rho is not of the form Y.rho" },
    Family {
        id: "moment-sections",
        anchor: "moment sections of the abelian bi-Hamiltonian action",
        formula: "X = J1(df) and Xhat = J2(df) agree with the stated generalized vector fields",
    },
    Family { id: "moment-pairing", anchor: "pairing between the two torus Lie algebras", formula: "P = 2<J1(df), J2(df)> is the stated constant" },
    Family { id: "moments", anchor: "moment map hypotheses", formula: "each df is a nonzero closed 1-form on the chart" },
    Family {
        id: "hamiltonian",
        anchor: "bi-Hamiltonian torus action",
        formula: "X_j *_H X_k = 0 within and across families, L_X H = 0, the moment sections preserve the splitting, both structures and each other's moments",
    },
    Family { id: "pairing", anchor: "pairing between the two torus Lie algebras", formula: "P_jk = 2<X_j, Xhat_k> is constant and nondegenerate" },
    Family {
        id: "subtorus",
        anchor: "reduction routing for a subtorus",
        formula:
            "case (1) needs the generated sections isotropic; case (2) needs the Gram matrix of the sections nondegenerate; contractions i_X xi are reported",
    },
    Family {
        id: "connection",
        anchor: "connection forms for the two torus bundles",
        formula: "i_{X_a} Theta_b = delta_ab, i_{Xhat_a} Thetahat_b = delta_ab, and Theta, Thetahat are invariant",
    },
    Family {
        id: "b-tilde",
        anchor: "correction 2-form relating the two splittings",
        formula: "Btilde = sum_fam (Theta ^ xi - 1/2 sum Theta_j ^ Theta_k i_{X_k} xi_j), invariant, with vanishing horizontal part",
    },
    Family {
        id: "reduced-twisting",
        anchor: "twisting form of a reduced space",
        formula: "pi*h = Htilde + d(sum_l Theta_l ^ xi'_l) is basic for the quotiented torus; h is its quotient-chart form",
    },
    Family {
        id: "duality-residual",
        anchor: "T-duality identity between the two reduced twisting forms",
        formula: "pihat*hhat - pi*h - d(sum_jk P_jk Thetahat_k ^ Theta_j) = 0",
    },
    Family {
        id: "duality",
        anchor: "ingredients of the T-duality identity",
        formula: "pairing, connection, Btilde and both reduced twisting forms pass their own checks",
    },
    Family {
        id: "tgroup",
        anchor: "T-duality group O(m,m;Z) acting on the torus data",
        formula: "g^T S g = S for S = [[0,P],[P^T,0]]; the transformed families are Lagrangian and satisfy the duality identity",
    },
    Family {
        id: "courant-axioms",
        anchor: "exact Courant algebroid axioms for the twisted Loday bracket",
        formula: "x*(y*z) = (x*y)*z + y*(x*z); a(x)<y,z> = <x, y*z + z*y>; a(x)<y,z> = <x*y, z> + <y, x*z>",
    },
    Family { id: "corrupted-control", anchor: "negative control for the axiom suite", formula: "flipping the sign of i_Y d xi breaks the Leibniz identity" },
    Family {
        id: "psi-translation",
        anchor: "translating symmetries between twists",
        formula: "[psi_H p, psi_H q]_{H+H'} = psi_H [p, q]_{H'} with psi_H(X, A) = (X, A + i_X H)",
    },
    Family {
        id: "clifford",
        anchor: "Clifford action on mixed-degree forms",
        formula: "x.(x.rho) = <x,x> rho and x.(y.rho) + y.(x.rho) = 2<x,y> rho, with (X + xi).rho = i_X rho + xi ^ rho",
    },
    Family { id: "b-naturality", anchor: "B-field transformations of the twisted bracket", formula: "e^B(x *_H y) = (e^B x) *_{H - dB} (e^B y)" },
    Family {
        id: "lemma-extend",
        anchor: "linear reduction for an isotropic moment subspace",
        formula: "K + K' isotropic, K' meets V* trivially: V_K = Ann(K)/K is a well-defined quotient with the stated dimension and exact sequence",
    },
    Family {
        id: "lemma-missingrank",
        anchor: "linear reduction for a nondegenerate pair",
        formula: "the pairing on K + K' is nondegenerate: V_K = (K + K')^perp has the stated dimension and inherits a nondegenerate pairing",
    },
    Family {
        id: "lemma-kahler-split",
        anchor: "linear generalized Kahler reduction, split form",
        formula: "W_K is J1 and J2 stable, isomorphic to V_K, and carries the restricted generalized Kahler pair",
    },
    Family {
        id: "lemma-double-split",
        anchor: "linear generalized Kahler reduction via both moment subspaces",
        formula: "Vtilde_K = W_K + K, N1 + N2 is direct and contained in Ann_V(K)",
    },
    Family {
        id: "lemma-dual-split",
        anchor: "linear generalized Kahler reduction, dual description",
        formula: "the two descriptions of W_K agree and the anchor image is Ann_V(K)",
    },
    Family { id: "cybe", anchor: "classical Yang-Baxter equation", formula: "[[r,r]] = [r12,r13] + [r12,r23] + [r13,r23] = 0, expanded over basis tensors" },
    Family { id: "factorizable", anchor: "factorizable r-matrix", formula: "[[r,r]] = 0 and the symmetric part s of r is ad-invariant and invertible" },
    Family {
        id: "cocommutator",
        anchor: "coboundary Lie bialgebra",
        formula: "delta(x) = ad_x r; the dual bracket [e^p, e^q] = sum_x delta(e_x)_pq e^x satisfies Jacobi",
    },
    Family {
        id: "manin-triple",
        anchor: "Manin triple of a factorizable r-matrix",
        formula: "g and ghat = (r+, r-)(g*) are isotropic subalgebras of g + g with pairing diag(s^-1/2, -s^-1/2), complementary and in canonical duality",
    },
    Family { id: "commuting-abelian", anchor: "commuting halves of a Manin triple", formula: "if [g, ghat] = 0 in the double then the double is abelian" },
    Family { id: "pipeline", anchor: "pipeline stage", formula: "a stage could not run on this input; the detail carries the error" },
];

pub fn family(id: &str) -> Option<&'static Family> {
    FAMILIES.iter().find(|f| f.id == id)
}

pub fn anchor_for(id: &str) -> &'static str {
    family(id).map(|f| f.anchor).unwrap_or("")
}

/// Accepts a family id or a full report id `family:detail`.
pub fn explain(id: &str) -> Result<String, CliError> {
    let key = id.split(':').next().unwrap_or(id);
    let f = family(key).ok_or_else(|| CliError::UnknownCheck(id.to_string()))?;
    Ok(format!("{}\n  verifies: {}\n  formula:  {}\n", f.id, f.anchor, f.formula))
}
