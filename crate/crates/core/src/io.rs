//! Matrix files (JSON) and plain CSV import/export.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::construct::{CodeLayout, ConstructedCode, CoordinateRole};
use crate::design::{affine_design, complete_graph_design, load_design, Design, DesignRecord};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldSpec};
use crate::matrix::Matrix;

/// On-disk form of a parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    /// Row-major element encodings.
    pub entries: Vec<u16>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coordinate_roles: Option<Vec<CoordinateRole>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<CodeLayout>,
}

impl MatrixFile {
    pub fn from_matrix(field: &Field, h: &Matrix) -> MatrixFile {
        MatrixFile {
            field: field.spec().clone(),
            rows: h.rows(),
            cols: h.cols(),
            entries: h.data().to_vec(),
            coordinate_roles: None,
            params: None,
        }
    }

    pub fn from_constructed(code: &ConstructedCode) -> MatrixFile {
        MatrixFile {
            coordinate_roles: Some(code.layout.roles()),
            params: Some(code.layout),
            ..MatrixFile::from_matrix(code.field(), code.h())
        }
    }

    /// Validates the document and returns its field and matrix.
    pub fn decode(&self) -> Result<(Field, Matrix)> {
        let field = Field::from_spec(&self.field)?;
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Format(format!(
                "{} entries for a {}x{} matrix",
                self.entries.len(),
                self.rows,
                self.cols
            )));
        }
        if let Some(pos) = self.entries.iter().position(|&v| !field.contains(v as u32)) {
            return Err(Error::Format(format!(
                "entry {} at row {}, column {} is not below q = {}",
                self.entries[pos],
                pos / self.cols + 1,
                pos % self.cols + 1,
                field.order()
            )));
        }
        if let Some(roles) = &self.coordinate_roles {
            if roles.len() != self.cols {
                return Err(Error::Format(format!(
                    "{} coordinate roles for {} columns",
                    roles.len(),
                    self.cols
                )));
            }
        }
        let h = Matrix::from_vec(self.rows, self.cols, self.entries.clone())?;
        Ok((field, h))
    }

    pub fn code(&self) -> Result<LinearCode> {
        let (field, h) = self.decode()?;
        LinearCode::new(&field, h)
    }

    /// The code with its construction layout, when the file carries one.
    pub fn constructed(&self) -> Result<Option<ConstructedCode>> {
        let code = self.code()?;
        match self.params {
            Some(layout) => ConstructedCode::from_parts(code, layout).map(Some),
            None => Ok(None),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<MatrixFile> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.decode()?;
        Ok(file)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()? + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<MatrixFile> {
        MatrixFile::from_json(&fs::read_to_string(path)?)
    }
}

/// Comma-separated rows of integer encodings.
pub fn matrix_to_csv(m: &Matrix) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for row in m.to_rows() {
        w.serialize(row).map_err(|e| Error::Format(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
}

pub fn matrix_from_csv(text: &str) -> Result<Matrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut rows: Vec<Vec<u16>> = Vec::new();
    for (line, record) in reader.deserialize().enumerate() {
        let row: Vec<u16> = record.map_err(|e| Error::Format(format!("csv row {}: {e}", line + 1)))?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Format("empty csv matrix".into()));
    }
    Matrix::from_rows(&rows).map_err(|e| Error::Format(e.to_string()))
}

/// Reads a CSV matrix and checks every entry against `field`.
pub fn matrix_from_csv_in(field: &Field, text: &str) -> Result<Matrix> {
    let m = matrix_from_csv(text)?;
    if let Some(pos) = m.data().iter().position(|&v| !field.contains(v as u32)) {
        return Err(Error::Format(format!(
            "entry at row {}, column {} is not in GF({})",
            pos / m.cols() + 1,
            pos % m.cols() + 1,
            field.order()
        )));
    }
    Ok(m)
}

/// A 0/1 incidence matrix from CSV.
pub fn incidence_from_csv(text: &str) -> Result<Matrix> {
    let m = matrix_from_csv(text)?;
    if m.data().iter().any(|&v| v > 1) {
        return Err(Error::Format("incidence matrix entries must be 0 or 1".into()));
    }
    Ok(m)
}

/// Reads a design from a 0/1 CSV incidence matrix or a JSON design record.
pub fn read_design(path: &Path) -> Result<Design> {
    let text = fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e == "json") {
        let rec: DesignRecord = serde_json::from_str(&text).map_err(|e| Error::Format(e.to_string()))?;
        Design::from_record(&rec)
    } else {
        load_design(&incidence_from_csv(&text)?)
    }
}

/// Where a construction takes its design from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DesignSource {
    CompleteGraph,
    Affine,
    File(PathBuf),
}

impl FromStr for DesignSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<DesignSource> {
        match s {
            "complete-graph" => Ok(DesignSource::CompleteGraph),
            "affine" => Ok(DesignSource::Affine),
            _ => match s.strip_prefix("file:") {
                Some(path) if !path.is_empty() => Ok(DesignSource::File(PathBuf::from(path))),
                _ => Err(Error::Parameter(format!(
                    "unknown design '{s}': expected complete-graph, affine or file:PATH"
                ))),
            },
        }
    }
}

impl DesignSource {
    /// Produces a design with lines of size `r` and `t_i` lines per point.
    pub fn load(&self, r: usize, t_i: usize) -> Result<Design> {
        let d = match self {
            DesignSource::CompleteGraph => {
                if t_i != 2 {
                    return Err(Error::Parameter(format!(
                        "the complete-graph design has t_i = 2, not {t_i}"
                    )));
                }
                complete_graph_design(r)?
            }
            DesignSource::Affine => affine_design(r, t_i)?,
            DesignSource::File(path) => read_design(path)?,
        };
        if d.r != r || d.t_i != t_i {
            return Err(Error::Parameter(format!(
                "design has r = {}, t_i = {} but r = {r}, t_i = {t_i} was requested",
                d.r, d.t_i
            )));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let f = Field::new(3, 2).unwrap();
        let h = Matrix::from_rows(&[vec![1, 2, 8, 0], vec![0, 5, 1, 1]]).unwrap();
        let file = MatrixFile::from_matrix(&f, &h);
        let back = MatrixFile::from_json(&file.to_json().unwrap()).unwrap();
        assert_eq!(back, file);
        let (f2, h2) = back.decode().unwrap();
        assert_eq!((f2, h2), (f, h));
    }

    #[test]
    fn rejects_bad_entries() {
        let f = Field::new(2, 2).unwrap();
        let mut file = MatrixFile::from_matrix(&f, &Matrix::identity(2));
        file.entries[1] = 4;
        assert!(matches!(file.decode(), Err(Error::Format(_))));
        file.entries.pop();
        assert!(matches!(file.decode(), Err(Error::Format(_))));
    }

    #[test]
    fn csv_round_trip() {
        let h = Matrix::from_rows(&[vec![1, 2, 3], vec![0, 0, 1]]).unwrap();
        let text = matrix_to_csv(&h).unwrap();
        assert_eq!(text, "1,2,3\n0,0,1\n");
        assert_eq!(matrix_from_csv(&text).unwrap(), h);
        assert!(matrix_from_csv("1,2\n3\n").is_err());
        assert!(incidence_from_csv("1,2\n").is_err());
    }

    #[test]
    fn design_sources() {
        assert_eq!("affine".parse::<DesignSource>().unwrap(), DesignSource::Affine);
        assert_eq!(
            "file:m.csv".parse::<DesignSource>().unwrap(),
            DesignSource::File(PathBuf::from("m.csv"))
        );
        assert!("file:".parse::<DesignSource>().is_err());
        assert!(DesignSource::CompleteGraph.load(3, 3).is_err());
        assert_eq!(DesignSource::CompleteGraph.load(3, 2).unwrap().k, 6);
    }
}
