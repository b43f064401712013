//! Shared fixtures: the invariant-chart model of the toric example on
//! `C² \ {0}`, with `s = r²`, `u = cos²λ` and angle coordinates `phi1, phi2`.

#![allow(dead_code)]

use gcgeom::genlin::Matrix;
use gcgeom::symcalc::{parse_coeff, parse_form, Chart, ChartRef, Coeff, CoordKind, DiffForm};

pub fn invariant_chart() -> ChartRef {
    Chart::with_kinds("invariant", &[("s", CoordKind::Full), ("u", CoordKind::Full), ("phi1", CoordKind::Angle), ("phi2", CoordKind::Angle)])
}

pub fn matrix(chart: &ChartRef, rows: &[[&str; 8]]) -> Matrix<Coeff> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|e| parse_coeff(chart, e).unwrap()).collect()).collect())
}

pub fn j1(chart: &ChartRef) -> Matrix<Coeff> {
    matrix(
        chart,
        &[
            ["0", "0", "0", "2*s*u", "0", "0", "-2*s", "0"],
            ["0", "0", "0", "2*u*(1-u)", "0", "0", "2*u", "0"],
            ["0", "0", "0", "0", "2*s", "-2*u", "0", "0"],
            ["-1/(2*s)", "-1/(2*u)", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "(u-1)/(2*s)", "0", "0", "0", "0", "1/(2*s)"],
            ["0", "0", "1/2", "0", "0", "0", "0", "1/(2*u)"],
            ["(1-u)/(2*s)", "-1/2", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "-2*s*u", "2*u*(u-1)", "0", "0"],
        ],
    )
}

pub fn j2(chart: &ChartRef) -> Matrix<Coeff> {
    matrix(
        chart,
        &[
            ["0", "0", "2*s*(u-1)", "0", "0", "0", "0", "2*s"],
            ["0", "0", "-2*u*(u-1)", "0", "0", "0", "0", "2-2*u"],
            ["1/(2*s)", "1/(2*(u-1))", "0", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "0", "-2*s", "2*u-2", "0", "0"],
            ["0", "0", "0", "u/(2*s)", "0", "0", "-1/(2*s)", "0"],
            ["0", "0", "0", "1/2", "0", "0", "-1/(2*u-2)", "0"],
            ["0", "0", "0", "0", "-2*s*(u-1)", "2*u*(u-1)", "0", "0"],
            ["-u/(2*s)", "-1/2", "0", "0", "0", "0", "0", "0"],
        ],
    )
}

pub fn h(chart: &ChartRef) -> DiffForm {
    parse_form(chart, [("du^dphi1^dphi2", "1")]).unwrap()
}

pub fn df(chart: &ChartRef) -> DiffForm {
    parse_form(chart, [("ds", "1/(2*s)")]).unwrap()
}

/// Two copies of the invariant chart: `(s, u, phi1, phi2, t, v, psi1, psi2)`.
pub fn product_chart() -> ChartRef {
    Chart::with_kinds(
        "product",
        &[
            ("s", CoordKind::Full),
            ("u", CoordKind::Full),
            ("phi1", CoordKind::Angle),
            ("phi2", CoordKind::Angle),
            ("t", CoordKind::Full),
            ("v", CoordKind::Full),
            ("psi1", CoordKind::Angle),
            ("psi2", CoordKind::Angle),
        ],
    )
}

/// Block-diagonal copy of a single-factor structure; the second block has
/// its variables shifted by 4.
pub fn doubled(m: &Matrix<Coeff>) -> Matrix<Coeff> {
    let place = |c: usize, i: usize| if i < 4 { 4 * c + i } else { 8 + 4 * c + i - 4 };
    let mut out = Matrix::zeros(16, 16);
    for c in 0..2 {
        for i in 0..8 {
            for j in 0..8 {
                let e = m.get(i, j).remap(&|v| v + 4 * c);
                out.set(place(c, i), place(c, j), e);
            }
        }
    }
    out
}

pub fn product_h(chart: &ChartRef) -> DiffForm {
    parse_form(chart, [("du^dphi1^dphi2", "1"), ("dv^dpsi1^dpsi2", "1")]).unwrap()
}
