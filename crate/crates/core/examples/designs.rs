//! Incidence structures with lines of size r, t_i lines per point and girth
//! at least 4, plus the validator's witnesses on broken inputs.

use slrc::design::{affine_design, complete_graph_design, validate_design, Design};

fn show(name: &str, d: &Design) {
    let v = validate_design(d, d.t_i, d.r);
    println!(
        "{name}: k = {}, b = {}, r = {}, t_i = {}, valid = {}, {:?}",
        d.k,
        d.b(),
        d.r,
        d.t_i,
        v.valid,
        v.resolvability
    );
    let m = d.incidence();
    for row in 0..m.rows() {
        let line: String = m.row(row).iter().map(|&x| if x == 1 { '1' } else { '.' }).collect();
        println!("  {line}");
    }
}

fn main() -> slrc::Result<()> {
    show("complete graph K_4", &complete_graph_design(3)?);
    show("affine plane of order 3, two classes", &affine_design(3, 2)?);

    let broken = Design {
        k: 4,
        r: 3,
        t_i: 1,
        lines: vec![vec![0, 1, 2], vec![0, 1, 3]],
        classes: None,
    };
    let v = validate_design(&broken, 2, 3);
    println!("two lines through two common points: {}", v.violation.unwrap());
    Ok(())
}
