//! Rebuilds the [16, 6] code over GF(4) and checks it against the golden
//! matrices shipped in `data/`.

use slrc::worked_example::demo_paper;

fn main() -> slrc::Result<()> {
    let report = demo_paper()?;
    for d in &report.diffs {
        println!(
            "{:<24} {:?} {}",
            d.name,
            d.actual_shape,
            if d.is_empty() { "matches" } else { "DIFFERS" }
        );
    }
    let code = slrc::worked_example::example_code()?;
    println!("H =");
    for row in code.h().to_rows() {
        println!("  {row:?}");
    }
    println!(
        "rank {} dimension {} t* {}",
        report.rank, report.dimension, report.max_t.t_star
    );
    for n in &report.notes {
        println!("note: {n}");
    }
    Ok(())
}
