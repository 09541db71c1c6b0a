//! The worked `[16, 6]` example over GF(4): `r = 3`, `δ = 3`, `t_i = 2`,
//! built from the `K_4` design, rebuilt and diffed against the golden
//! matrices in `data/`, then run through the full verification battery.

use serde::Serialize;

use crate::bounds::{rate_from_matrix, rate_report, RateReport};
use crate::code::RecoveryTable;
use crate::construct::{build_parity_check, expand_m_star, ConstructedCode, ConstructionParams};
use crate::design::complete_graph_design;
use crate::error::Result;
use crate::gf::Field;
use crate::io::matrix_from_csv;
use crate::matrix::Matrix;
use crate::mds::{build_mds_parity, MdsStyle};
use crate::verify::{
    check_availability, check_information_locality, check_lemma2, check_sequential_with, max_sequential_t_with, Check,
    Lemma2Report, LocalityReport, MaxTReport, VerificationReport, DEFAULT_PATTERN_LIMIT,
};

pub const R: usize = 3;
pub const DELTA: usize = 3;
pub const T_I: usize = 2;
pub const MAX_T_CAP: usize = 9;

const DESIGN_CSV: &str = include_str!("../data/design.csv");
const MDS_CSV: &str = include_str!("../data/mds.csv");
const M_STAR_CSV: &str = include_str!("../data/m_star.csv");
const H_CSV: &str = include_str!("../data/h.csv");

/// Expected matrices, entries encoded with `β = 2`, `β² = 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Goldens {
    pub design: Matrix,
    pub mds: Matrix,
    pub m_star: Matrix,
    pub h: Matrix,
}

impl Goldens {
    pub fn embedded() -> Goldens {
        let parse = |text: &str| matrix_from_csv(text).expect("embedded golden matrix parses");
        Goldens {
            design: parse(DESIGN_CSV),
            mds: parse(MDS_CSV),
            m_star: parse(M_STAR_CSV),
            h: parse(H_CSV),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub row: usize,
    pub col: usize,
    pub expected: u16,
    pub actual: u16,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixDiff {
    pub name: &'static str,
    pub expected_shape: (usize, usize),
    pub actual_shape: (usize, usize),
    /// First differing entry in row-major order, 1-based.
    pub first_mismatch: Option<Mismatch>,
}

impl MatrixDiff {
    pub fn is_empty(&self) -> bool {
        self.expected_shape == self.actual_shape && self.first_mismatch.is_none()
    }
}

pub fn diff_matrices(name: &'static str, expected: &Matrix, actual: &Matrix) -> MatrixDiff {
    let mut first_mismatch = None;
    'outer: for row in 0..expected.rows().min(actual.rows()) {
        for col in 0..expected.cols().min(actual.cols()) {
            let (e, a) = (expected.get(row, col), actual.get(row, col));
            if e != a {
                first_mismatch = Some(Mismatch {
                    row: row + 1,
                    col: col + 1,
                    expected: e,
                    actual: a,
                });
                break 'outer;
            }
        }
    }
    MatrixDiff {
        name,
        expected_shape: (expected.rows(), expected.cols()),
        actual_shape: (actual.rows(), actual.cols()),
        first_mismatch,
    }
}

/// Construction inputs of the worked example.
pub fn example_params() -> Result<ConstructionParams> {
    let field = Field::new(2, 2)?;
    let mds = build_mds_parity(R, DELTA, &field, MdsStyle::Vandermonde)?;
    ConstructionParams::new(complete_graph_design(R)?, mds)
}

pub fn example_code() -> Result<ConstructedCode> {
    build_parity_check(&example_params()?)
}

#[derive(Clone, Debug, Serialize)]
pub struct DemoReport {
    pub diffs: Vec<MatrixDiff>,
    pub n: usize,
    pub k: usize,
    pub rank: usize,
    pub dimension: usize,
    /// `b(δ-1)`, the nominal rank.
    pub nominal_rank: usize,
    pub rank_matches_nominal: bool,
    pub rates: RateReport,
    #[serde(with = "crate::bounds::ratio_string")]
    pub rate_from_matrix: crate::bounds::Rational,
    pub sequential: VerificationReport,
    pub max_t: MaxTReport,
    /// Whether all patterns of size `δ·t_i + 1` are recoverable.
    pub abstract_claim_holds: bool,
    pub locality: LocalityReport,
    pub lemma2: Lemma2Report,
    /// Maximum number of disjoint recovery sets per information symbol.
    pub availability: Vec<usize>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl DemoReport {
    pub fn matrices_match(&self) -> bool {
        self.diffs.iter().all(MatrixDiff::is_empty)
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

pub fn demo_paper() -> Result<DemoReport> {
    demo_paper_with(&Goldens::embedded())
}

/// Rebuilds the four matrices, diffs them against `goldens`, and verifies
/// the resulting code.
pub fn demo_paper_with(goldens: &Goldens) -> Result<DemoReport> {
    let params = example_params()?;
    let m_star = expand_m_star(&params.design, &params.mds)?;
    let code = build_parity_check(&params)?;
    let diffs = vec![
        diff_matrices("design incidence", &goldens.design, &params.design.incidence()),
        diff_matrices("local MDS parity check", &goldens.mds, &params.mds.full()),
        diff_matrices("M*", &goldens.m_star, &m_star),
        diff_matrices("H", &goldens.h, code.h()),
    ];

    let layout = code.layout;
    let table = RecoveryTable::build(&code.code, layout.r)?;
    let sequential = check_sequential_with(&table, layout.t_claim(), DEFAULT_PATTERN_LIMIT)?;
    let max_t = max_sequential_t_with(&table, MAX_T_CAP, DEFAULT_PATTERN_LIMIT);
    let abstract_claim_holds = max_t.complete && max_t.t_star >= layout.t_abstract();
    let locality = check_information_locality(&code)?;
    let lemma2 = check_lemma2(&code, &table);
    let availability: Vec<usize> = (0..layout.k).map(|i| check_availability(&table, i).0).collect();
    let rates = rate_report(&layout);

    let mut checks: Vec<Check> = diffs
        .iter()
        .map(|d| {
            let witness = d.first_mismatch.as_ref().map(|m| {
                format!(
                    "row {}, column {}: expected {}, got {}",
                    m.row, m.col, m.expected, m.actual
                )
            });
            let witness = witness.or_else(|| {
                (d.expected_shape != d.actual_shape)
                    .then(|| format!("shape {:?} vs expected {:?}", d.actual_shape, d.expected_shape))
            });
            Check::new(format!("matrix {}", d.name), d.is_empty(), witness)
        })
        .collect();
    checks.push(Check::new(
        format!("sequential recovery at t = {}", layout.t_claim()),
        sequential.holds,
        sequential
            .failing_pattern
            .as_ref()
            .map(|p| crate::labels::set_string(p)),
    ));
    checks.extend(locality.checks.iter().cloned());
    for s in &lemma2.statements {
        checks.push(Check::new(
            format!("recovery statement {}: {}", s.index, s.description),
            s.holds,
            s.failure.as_ref().map(|f| format!("coordinate {}", f[0] + 1)),
        ));
    }
    checks.push(Check::new(
        format!("{} disjoint recovery sets per information symbol", layout.t_i),
        availability.iter().all(|&a| a >= layout.t_i),
        None,
    ));

    let mut notes = Vec::new();
    if !code.rank_matches_nominal() {
        notes.push(format!(
            "rank(H) = {} while b(δ-1) = {}; the parity-check rows are independent, so the dimension is n - {} = {}",
            code.code.rank(),
            layout.nominal_rank(),
            code.code.rank(),
            code.code.dimension()
        ));
    }
    notes.extend(rates.notes.iter().cloned());
    notes.push(format!(
        "measured t* = {} (cap {}); all patterns of size δ·t_i + 1 = {} recoverable: {}",
        max_t.t_star,
        MAX_T_CAP,
        layout.t_abstract(),
        abstract_claim_holds
    ));

    Ok(DemoReport {
        diffs,
        n: layout.n,
        k: layout.k,
        rank: code.code.rank(),
        dimension: code.code.dimension(),
        nominal_rank: layout.nominal_rank(),
        rank_matches_nominal: code.rank_matches_nominal(),
        rate_from_matrix: rate_from_matrix(&code),
        rates,
        sequential,
        max_t,
        abstract_claim_holds,
        locality,
        lemma2,
        availability,
        checks,
        notes,
    })
}
