//! Exact rates of constructed codes next to the published rate bounds.

use slrc::bounds::rate_report;
use slrc::construct::CodeLayout;
use slrc::design::{affine_design, complete_graph_design};

fn main() -> slrc::Result<()> {
    let designs = [
        ("K_4", complete_graph_design(3)?),
        ("K_5", complete_graph_design(4)?),
        ("affine 3x3", affine_design(3, 3)?),
    ];
    for (name, d) in designs {
        for delta in [2, 3] {
            let layout = CodeLayout::new(d.r, delta, d.t_i, d.k, d.b())?;
            let rep = rate_report(&layout);
            let bounds: Vec<String> = rep.bounds.iter().map(|b| format!("{} {}", b.name, b.value)).collect();
            println!(
                "{name:<10} δ={delta} [{}, {}] rate {} closed form {} | {}",
                layout.n,
                layout.k,
                rep.exact_rate,
                rep.closed_form_rate,
                bounds.join(", ")
            );
        }
    }
    Ok(())
}
