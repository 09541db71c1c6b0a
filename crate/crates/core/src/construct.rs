//! Assembly of the global parity-check matrix
//!
//! ```text
//!     H = | M*  I_μ        0          |
//!         | 0   [W* 0]     I_{g(δ-1)} |
//! ```
//!
//! where `M*` expands each line of the design into a `(δ-1)`-row block using
//! the columns of `Q`, `W*` is block-diagonal with `g = ⌈s/r⌉` copies of `Q`
//! (`s = ⌈k/r⌉`), and `μ = b(δ-1)`.
//!
//! Coordinates `0..k` carry information, `k..k+μ` are line parities (line `j`
//! owns `k+j(δ-1) .. k+(j+1)(δ-1)`), the remaining `g(δ-1)` are global
//! parities. `W*` sits over the first `g·r` line-parity columns.

use serde::{Deserialize, Serialize};

use crate::bounds::{ratio_string, Rational};
use crate::code::LinearCode;
use crate::design::{validate_design, Design};
use crate::error::{Error, Result};
use crate::gf::{prime_power, Field};
use crate::matrix::Matrix;
use crate::mds::{build_mds_parity, MdsLocalMatrix, MdsStyle};

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

/// Dimensions and coordinate layout of an staircase parity-check matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeLayout {
    pub r: usize,
    pub delta: usize,
    pub t_i: usize,
    pub k: usize,
    pub b: usize,
    /// `⌈k/r⌉`.
    pub s: usize,
    /// `⌈s/r⌉`, the number of `Q` blocks in `W*`.
    pub global_blocks: usize,
    /// `b(δ-1)`.
    pub mu: usize,
    pub n: usize,
    pub rows: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoordinateRole {
    Information,
    LineParity,
    GlobalParity,
}

impl CodeLayout {
    pub fn new(r: usize, delta: usize, t_i: usize, k: usize, b: usize) -> Result<CodeLayout> {
        if r == 0 || delta < 2 || k == 0 || b == 0 {
            return Err(Error::param("layout needs r >= 1, δ >= 2, k >= 1, b >= 1"));
        }
        let s = ceil_div(k, r);
        let global_blocks = ceil_div(s, r);
        let mu = b * (delta - 1);
        let rows = (b + global_blocks) * (delta - 1);
        Ok(CodeLayout {
            r,
            delta,
            t_i,
            k,
            b,
            s,
            global_blocks,
            mu,
            n: k + rows,
            rows,
        })
    }

    pub fn role(&self, c: usize) -> CoordinateRole {
        if c < self.k {
            CoordinateRole::Information
        } else if c < self.k + self.mu {
            CoordinateRole::LineParity
        } else {
            CoordinateRole::GlobalParity
        }
    }

    pub fn roles(&self) -> Vec<CoordinateRole> {
        (0..self.n).map(|c| self.role(c)).collect()
    }

    /// Parity columns owned by line `j`.
    pub fn line_parities(&self, j: usize) -> std::ops::Range<usize> {
        let start = self.k + j * (self.delta - 1);
        start..start + self.delta - 1
    }

    pub fn line_parity_range(&self) -> std::ops::Range<usize> {
        self.k..self.k + self.mu
    }

    pub fn global_parity_range(&self) -> std::ops::Range<usize> {
        self.k + self.mu..self.n
    }

    /// Rows of row block `j` (lines first, then the global blocks).
    pub fn row_block(&self, j: usize) -> std::ops::Range<usize> {
        j * (self.delta - 1)..(j + 1) * (self.delta - 1)
    }

    /// Width of `W*`, i.e. `g·r`.
    pub fn w_star_width(&self) -> usize {
        self.global_blocks * self.r
    }

    /// `t_i(δ-1)`, the tolerance the construction is proven to reach.
    pub fn t_claim(&self) -> usize {
        self.t_i * (self.delta - 1)
    }

    /// `δ·t_i + 1`, the stronger tolerance stated without proof.
    pub fn t_abstract(&self) -> usize {
        self.delta * self.t_i + 1
    }

    /// The nominal rank, `b(δ-1)`.
    pub fn nominal_rank(&self) -> usize {
        self.mu
    }
}

/// Validated inputs to the construction.
#[derive(Clone, Debug)]
pub struct ConstructionParams {
    pub field: Field,
    pub design: Design,
    pub mds: MdsLocalMatrix,
    pub layout: CodeLayout,
}

impl ConstructionParams {
    pub fn new(design: Design, mds: MdsLocalMatrix) -> Result<ConstructionParams> {
        let check = validate_design(&design, design.t_i, design.r);
        if let Some(v) = check.violation {
            return Err(Error::InvalidDesign(v.to_string()));
        }
        if mds.r != design.r {
            return Err(Error::param(format!(
                "design lines have {} points but the local MDS code has r = {}",
                design.r, mds.r
            )));
        }
        let q = mds.field.order();
        if q + 2 < mds.r + mds.delta {
            return Err(Error::param(format!(
                "q < r+δ-2: GF({q}) is too small for r = {}, δ = {}",
                mds.r, mds.delta
            )));
        }
        let layout = CodeLayout::new(design.r, mds.delta, design.t_i, design.k, design.b())?;
        Ok(ConstructionParams {
            field: mds.field.clone(),
            design,
            mds,
            layout,
        })
    }

    /// `t_i ≤ δ`, required by the definition of information sequential
    /// locality but not by the construction itself.
    pub fn meets_locality_side_condition(&self) -> bool {
        self.layout.t_i <= self.layout.delta
    }
}

/// Replaces the j-th one of every row of `M` by the j-th column of `Q`.
pub fn expand_m_star(design: &Design, mds: &MdsLocalMatrix) -> Result<Matrix> {
    let h = mds.delta - 1;
    let mut m = Matrix::zeros(design.b() * h, design.k);
    for (j, line) in design.lines.iter().enumerate() {
        if line.len() != mds.r {
            return Err(Error::param(format!(
                "line {} has {} points, the local code needs r = {}",
                j + 1,
                line.len(),
                mds.r
            )));
        }
        let mut sorted = line.clone();
        sorted.sort_unstable();
        for (pos, &point) in sorted.iter().enumerate() {
            for row in 0..h {
                m.set(j * h + row, point, mds.q.get(row, pos));
            }
        }
    }
    Ok(m)
}

/// Block-diagonal matrix with `⌈s/r⌉` copies of `Q`.
pub fn build_w_star(s: usize, mds: &MdsLocalMatrix) -> Result<Matrix> {
    if s == 0 {
        return Err(Error::param("s must be at least 1"));
    }
    let blocks = ceil_div(s, mds.r);
    let h = mds.delta - 1;
    let mut w = Matrix::zeros(blocks * h, blocks * mds.r);
    for b in 0..blocks {
        w.place(b * h, b * mds.r, &mds.q);
    }
    Ok(w)
}

/// A staircase-construction code: its layout plus the linear code defined by `H`.
#[derive(Clone, Debug)]
pub struct ConstructedCode {
    pub layout: CodeLayout,
    pub code: LinearCode,
}

pub fn build_parity_check(params: &ConstructionParams) -> Result<ConstructedCode> {
    let layout = params.layout;
    if layout.w_star_width() > layout.mu {
        return Err(Error::param(format!(
            "W* needs {} parity columns but only μ = {} exist; increase b or δ",
            layout.w_star_width(),
            layout.mu
        )));
    }
    let m_star = expand_m_star(&params.design, &params.mds)?;
    let w_star = build_w_star(layout.s, &params.mds)?;
    let mut h = Matrix::zeros(layout.rows, layout.n);
    h.place(0, 0, &m_star);
    h.place(0, layout.k, &Matrix::identity(layout.mu));
    h.place(layout.mu, layout.k, &w_star);
    let tail = layout.global_blocks * (layout.delta - 1);
    h.place(layout.mu, layout.k + layout.mu, &Matrix::identity(tail));
    let code = LinearCode::new(&params.field, h)?;
    Ok(ConstructedCode { layout, code })
}

/// Builds the code for `design` with a local `[r+δ-1, r, δ]` code over
/// GF(`q`).
pub fn construct_code(design: Design, delta: usize, q: usize, style: MdsStyle) -> Result<ConstructedCode> {
    let field = Field::with_order(q)?;
    let mds = build_mds_parity(design.r, delta, &field, style)?;
    build_parity_check(&ConstructionParams::new(design, mds)?)
}

/// Smallest prime power `q ≥ max(2, r+δ-2)`.
pub fn smallest_admissible_q(r: usize, delta: usize) -> usize {
    (2.max(r + delta - 2)..)
        .find(|&q| prime_power(q).is_some())
        .expect("prime powers are unbounded")
}

impl ConstructedCode {
    /// Pairs an existing parity-check matrix with a layout, checking shapes.
    pub fn from_parts(code: LinearCode, layout: CodeLayout) -> Result<ConstructedCode> {
        let h = code.parity_check();
        if h.rows() != layout.rows || h.cols() != layout.n {
            return Err(Error::Dimension(format!(
                "matrix is {}x{} but the layout expects {}x{}",
                h.rows(),
                h.cols(),
                layout.rows,
                layout.n
            )));
        }
        Ok(ConstructedCode { layout, code })
    }

    pub fn h(&self) -> &Matrix {
        self.code.parity_check()
    }

    pub fn field(&self) -> &Field {
        self.code.field()
    }

    pub fn m_star(&self) -> Matrix {
        self.h().submatrix(0..self.layout.mu, 0..self.layout.k)
    }

    pub fn w_star(&self) -> Matrix {
        let l = &self.layout;
        self.h().submatrix(l.mu..l.rows, l.k..l.k + l.w_star_width())
    }

    /// Nonzero columns of row block `j`.
    pub fn block_support(&self, j: usize) -> Vec<usize> {
        self.h().nonzero_columns(self.layout.row_block(j))
    }

    /// Information coordinates of line `j`, read back from `H`.
    pub fn line_points(&self, j: usize) -> Vec<usize> {
        self.block_support(j)
            .into_iter()
            .filter(|&c| c < self.layout.k)
            .collect()
    }

    /// Lines (row blocks among the first `b`) whose support contains `i`.
    pub fn lines_through(&self, i: usize) -> Vec<usize> {
        (0..self.layout.b)
            .filter(|&j| self.layout.row_block(j).any(|row| self.h().get(row, i) != 0))
            .collect()
    }

    pub fn rank_matches_nominal(&self) -> bool {
        self.code.rank() == self.layout.nominal_rank()
    }
}

/// Derived parameters of a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParameterReport {
    pub n: usize,
    pub k: usize,
    #[serde(with = "ratio_string")]
    pub rate: Rational,
    pub b: usize,
    pub s: usize,
    pub mu: usize,
    pub global_blocks: usize,
    pub rows: usize,
    /// `t_i(δ-1)`.
    pub t_claim: usize,
    /// `δ·t_i + 1`, still to be verified.
    pub t_abstract: usize,
}

pub fn code_params(layout: &CodeLayout) -> ParameterReport {
    ParameterReport {
        n: layout.n,
        k: layout.k,
        rate: Rational::new(layout.k as u128, layout.n as u128),
        b: layout.b,
        s: layout.s,
        mu: layout.mu,
        global_blocks: layout.global_blocks,
        rows: layout.rows,
        t_claim: layout.t_claim(),
        t_abstract: layout.t_abstract(),
    }
}

/// Systematic encoding: information coordinates carry `message`, each parity
/// is solved from its own row (line parities from the information symbols,
/// global parities from the line parities).
pub fn encode(code: &ConstructedCode, message: &[u16]) -> Result<Vec<u16>> {
    let l = &code.layout;
    if message.len() != l.k {
        return Err(Error::Dimension(format!(
            "message has {} symbols, expected k = {}",
            message.len(),
            l.k
        )));
    }
    let field = code.field();
    if let Some(&v) = message.iter().find(|&&v| !field.contains(v as u32)) {
        return Err(Error::param(format!("symbol {v} is not in GF({})", field.order())));
    }
    let h = code.h();
    let mut c = vec![0u16; l.n];
    c[..l.k].copy_from_slice(message);
    for row in 0..l.rows {
        let pivot = l.k + row;
        if h.get(row, pivot) != 1 || (pivot + 1..l.n).any(|col| h.get(row, col) != 0) {
            return Err(Error::Construction(format!(
                "row {} of H is not in systematic staircase form",
                row + 1
            )));
        }
        let acc = (0..pivot).fold(0, |acc, col| field.add(acc, field.mul(h.get(row, col), c[col])));
        c[pivot] = field.neg(acc);
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::{affine_design, complete_graph_design};

    fn example_params() -> ConstructionParams {
        let f = Field::new(2, 2).unwrap();
        let mds = build_mds_parity(3, 3, &f, MdsStyle::Vandermonde).unwrap();
        ConstructionParams::new(complete_graph_design(3).unwrap(), mds).unwrap()
    }

    #[test]
    fn layout_of_worked_example() {
        let p = example_params();
        let l = p.layout;
        assert_eq!(
            (l.n, l.k, l.b, l.s, l.global_blocks, l.mu, l.rows),
            (16, 6, 4, 2, 1, 8, 10)
        );
        assert_eq!(l.line_parities(0), 6..8);
        assert_eq!(l.line_parities(1), 8..10);
        let report = code_params(&l);
        assert_eq!(report.rate, Rational::new(3, 8));
        assert_eq!((report.t_claim, report.t_abstract), (4, 7));
    }

    #[test]
    fn admissible_field_orders() {
        assert_eq!(smallest_admissible_q(2, 2), 2);
        assert_eq!(smallest_admissible_q(3, 3), 4);
        assert_eq!(smallest_admissible_q(4, 3), 5);
        assert_eq!(smallest_admissible_q(5, 3), 7);
        assert_eq!(smallest_admissible_q(4, 4), 7);
    }

    #[test]
    fn w_star_shapes() {
        let f = Field::new(2, 2).unwrap();
        let mds = build_mds_parity(3, 3, &f, MdsStyle::Vandermonde).unwrap();
        assert_eq!(build_w_star(2, &mds).unwrap(), mds.q);
        let w = build_w_star(7, &mds).unwrap();
        assert_eq!((w.rows(), w.cols()), (6, 9));
        assert!(w.submatrix(0..2, 3..9).is_zero());
        assert_eq!(w.submatrix(4..6, 6..9), mds.q);
        let single = build_mds_parity(3, 2, &f, MdsStyle::Vandermonde).unwrap();
        assert_eq!(
            build_w_star(1, &single).unwrap(),
            Matrix::from_rows(&[vec![1, 1, 1]]).unwrap()
        );
        assert!(build_w_star(0, &mds).is_err());
    }

    #[test]
    fn delta_two_m_star_equals_incidence() {
        let f = Field::new(2, 2).unwrap();
        let mds = build_mds_parity(3, 2, &f, MdsStyle::Vandermonde).unwrap();
        let d = complete_graph_design(3).unwrap();
        assert_eq!(expand_m_star(&d, &mds).unwrap(), d.incidence());
        let p = ConstructionParams::new(d, mds).unwrap();
        let c = build_parity_check(&p).unwrap();
        assert_eq!((c.h().rows(), c.h().cols()), (5, 11));
        assert_eq!(c.code.dimension(), 6);
        assert_eq!(code_params(&c.layout).n, 6 + 4 + 1);
    }

    #[test]
    fn encode_zero_and_unit() {
        let c = build_parity_check(&example_params()).unwrap();
        assert_eq!(encode(&c, &[0; 6]).unwrap(), vec![0; 16]);
        let cw = encode(&c, &[1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!((cw[6], cw[7]), (1, 1));
        assert!(c.code.contains(&cw));
        assert!(encode(&c, &[1, 0]).is_err());
    }

    #[test]
    fn mismatched_inputs_rejected() {
        let f = Field::new(2, 2).unwrap();
        let mds = build_mds_parity(2, 3, &f, MdsStyle::Vandermonde).unwrap();
        assert!(ConstructionParams::new(complete_graph_design(3).unwrap(), mds).is_err());
    }

    #[test]
    fn affine_nine_points() {
        let f = Field::new(2, 2).unwrap();
        let mds = build_mds_parity(3, 3, &f, MdsStyle::Vandermonde).unwrap();
        let p = ConstructionParams::new(affine_design(3, 2).unwrap(), mds).unwrap();
        let c = build_parity_check(&p).unwrap();
        assert_eq!(c.h().cols(), code_params(&c.layout).n);
        assert_eq!(c.h().cols(), 9 + (6 + 1) * 2);
        assert_eq!(c.code.rank(), c.layout.rows);
    }
}
