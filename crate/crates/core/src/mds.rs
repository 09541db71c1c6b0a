//! Local MDS parity-check matrices `Ĥ = [Q | I]` of `[r+δ-1, r, δ]` codes.

use serde::{Deserialize, Serialize};

use crate::combinatorics::for_each_combination;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::matrix::{rank, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MdsStyle {
    /// `Q[i][j] = β^(i·j)`.
    Vandermonde,
    /// `Q[i][j] = 1/(x_i - y_j)` over the first `δ-1+r` elements.
    Cauchy,
}

impl std::str::FromStr for MdsStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vandermonde" => Ok(MdsStyle::Vandermonde),
            "cauchy" => Ok(MdsStyle::Cauchy),
            other => Err(Error::param(format!("unknown MDS style '{other}'"))),
        }
    }
}

/// The parity-check matrix of the local `[r+δ-1, r, δ]` MDS code.
#[derive(Clone, Debug, PartialEq)]
pub struct MdsLocalMatrix {
    pub r: usize,
    pub delta: usize,
    pub field: Field,
    /// The `(δ-1) × r` block in front of the identity.
    pub q: Matrix,
}

/// Result of the column-independence check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsCheck {
    pub is_mds: bool,
    /// First dependent `(δ-1)`-subset of columns (0-based), if any.
    pub dependent_columns: Option<Vec<usize>>,
}

impl MdsLocalMatrix {
    /// Wraps an arbitrary `Q` block; no MDS check is performed.
    pub fn from_q(field: &Field, q: Matrix) -> Result<MdsLocalMatrix> {
        if q.rows() == 0 || q.cols() == 0 {
            return Err(Error::param("Q must have at least one row and one column"));
        }
        if q.data().iter().any(|&v| !field.contains(v as u32)) {
            return Err(Error::param("Q has entries outside the field"));
        }
        Ok(MdsLocalMatrix {
            r: q.cols(),
            delta: q.rows() + 1,
            field: field.clone(),
            q,
        })
    }

    /// Length `r+δ-1` of the local code.
    pub fn length(&self) -> usize {
        self.r + self.delta - 1
    }

    /// `Ĥ = [Q | I_{δ-1}]`.
    pub fn full(&self) -> Matrix {
        let rows = self.delta - 1;
        let mut h = Matrix::zeros(rows, self.length());
        h.place(0, 0, &self.q);
        h.place(0, self.r, &Matrix::identity(rows));
        h
    }

    /// Column `j` of `Q` as a vector of length `δ-1`.
    pub fn q_column(&self, j: usize) -> Vec<u16> {
        self.q.column(j)
    }
}

pub fn build_mds_parity(r: usize, delta: usize, field: &Field, style: MdsStyle) -> Result<MdsLocalMatrix> {
    if r < 1 {
        return Err(Error::param("r must be at least 1"));
    }
    if delta < 2 {
        return Err(Error::param("delta must be at least 2"));
    }
    let q = field.order();
    if q + 2 < r + delta {
        return Err(Error::param(format!(
            "q < r+δ-2: GF({q}) is too small for r = {r}, δ = {delta}"
        )));
    }
    let rows = delta - 1;
    let mut block = Matrix::zeros(rows, r);
    match style {
        MdsStyle::Vandermonde => {
            for i in 0..rows {
                for j in 0..r {
                    block.set(i, j, field.beta_pow((i * j) as i64));
                }
            }
        }
        MdsStyle::Cauchy => {
            if rows + r > q {
                return Err(Error::param(format!(
                    "Cauchy style needs δ-1+r = {} distinct elements but GF({q}) has {q}",
                    rows + r
                )));
            }
            for i in 0..rows {
                for j in 0..r {
                    let x = i as u16;
                    let y = (rows + j) as u16;
                    let inv = field.inv(field.sub(x, y)).expect("distinct elements");
                    block.set(i, j, inv);
                }
            }
        }
    }
    let h = MdsLocalMatrix {
        r,
        delta,
        field: field.clone(),
        q: block,
    };
    let check = verify_mds(&h);
    if !check.is_mds {
        let advice = match style {
            MdsStyle::Vandermonde => "; try the cauchy style",
            MdsStyle::Cauchy => "",
        };
        return Err(Error::Construction(format!(
            "{style:?} Q for r = {r}, δ = {delta} over GF({q}) is not MDS (dependent columns {:?}){advice}",
            check.dependent_columns.unwrap_or_default()
        )));
    }
    Ok(h)
}

/// Checks that every `δ-1` columns of `Ĥ` are linearly independent.
pub fn verify_mds(h: &MdsLocalMatrix) -> MdsCheck {
    let full = h.full();
    let need = h.delta - 1;
    let mut witness = None;
    for_each_combination(full.cols(), need, |cols| {
        if rank(&h.field, &full.select_columns(cols)) < need {
            witness = Some(cols.to_vec());
            false
        } else {
            true
        }
    });
    MdsCheck {
        is_mds: witness.is_none(),
        dependent_columns: witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> Field {
        Field::new(2, 2).unwrap()
    }

    #[test]
    fn vandermonde_reproduces_local_example() {
        let h = build_mds_parity(3, 3, &gf4(), MdsStyle::Vandermonde).unwrap();
        let expected = Matrix::from_rows(&[vec![1, 1, 1, 1, 0], vec![1, 2, 3, 0, 1]]).unwrap();
        assert_eq!(h.full(), expected);
    }

    #[test]
    fn delta_two_is_single_parity() {
        let h = build_mds_parity(3, 2, &gf4(), MdsStyle::Vandermonde).unwrap();
        assert_eq!(h.full(), Matrix::from_rows(&[vec![1, 1, 1, 1]]).unwrap());
    }

    #[test]
    fn cauchy_small() {
        let h = build_mds_parity(2, 3, &gf4(), MdsStyle::Cauchy).unwrap();
        assert_eq!(h.full().rows(), 2);
        assert_eq!(h.full().cols(), 4);
        assert!(verify_mds(&h).is_mds);
    }

    #[test]
    fn field_too_small() {
        let f2 = Field::new(2, 1).unwrap();
        assert!(matches!(
            build_mds_parity(3, 3, &f2, MdsStyle::Vandermonde),
            Err(Error::Parameter(_))
        ));
        // Cauchy needs δ-1+r distinct elements, one more than admissibility.
        assert!(build_mds_parity(3, 3, &gf4(), MdsStyle::Vandermonde).is_ok());
        assert!(build_mds_parity(3, 3, &gf4(), MdsStyle::Cauchy).is_err());
        assert!(build_mds_parity(3, 3, &Field::new(5, 1).unwrap(), MdsStyle::Cauchy).is_ok());
    }

    #[test]
    fn repeated_column_detected() {
        let f = gf4();
        let q = Matrix::from_rows(&[vec![1, 1, 2], vec![2, 2, 3]]).unwrap();
        let h = MdsLocalMatrix::from_q(&f, q).unwrap();
        let check = verify_mds(&h);
        assert!(!check.is_mds);
        assert_eq!(check.dependent_columns, Some(vec![0, 1]));
    }

    #[test]
    fn vandermonde_failure_is_reported() {
        // GF(5), β = 2: columns (1,1,1), (1,4,1) and e2 are dependent.
        let f5 = Field::new(5, 1).unwrap();
        let err = build_mds_parity(3, 4, &f5, MdsStyle::Vandermonde).unwrap_err();
        assert!(err.to_string().contains("cauchy"), "{err}");
    }
}
