//! Writes a construction as a JSON matrix file and as CSV, then reads both
//! back.

use slrc::construct::construct_code;
use slrc::design::affine_design;
use slrc::io::{matrix_from_csv_in, matrix_to_csv, MatrixFile};
use slrc::MdsStyle;

fn main() -> slrc::Result<()> {
    let code = construct_code(affine_design(3, 2)?, 3, 4, MdsStyle::Vandermonde)?;
    let dir = std::env::temp_dir();
    let json_path = dir.join("slrc-affine.json");
    MatrixFile::from_constructed(&code).write(&json_path)?;
    let back = MatrixFile::read(&json_path)?;
    println!(
        "{} ({}x{}) round-trips: {}",
        json_path.display(),
        back.rows,
        back.cols,
        back == MatrixFile::from_constructed(&code)
    );

    let csv = matrix_to_csv(code.h())?;
    let h = matrix_from_csv_in(code.field(), &csv)?;
    println!("csv round-trips: {}", &h == code.h());
    print!("{csv}");
    Ok(())
}
