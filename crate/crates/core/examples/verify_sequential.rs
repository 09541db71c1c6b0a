//! Exhaustive sequential-recovery certificate, the largest certified t, and
//! the smallest pattern that breaks it.

use slrc::code::RecoveryTable;
use slrc::labels::set_string;
use slrc::verify::{check_availability, check_sequential_with, max_sequential_t_with, DEFAULT_PATTERN_LIMIT};
use slrc::worked_example::example_code;

fn main() -> slrc::Result<()> {
    let code = example_code()?;
    let table = RecoveryTable::build(&code.code, code.layout.r)?;
    for i in 0..code.layout.n {
        let sets: Vec<String> = table.sets[i].iter().map(|s| set_string(&s.helpers)).collect();
        let (avail, _) = check_availability(&table, i);
        println!(
            "c{:<2} {:>2} sets, {} disjoint: {}",
            i + 1,
            sets.len(),
            avail,
            sets.join(" ")
        );
    }
    let rep = check_sequential_with(&table, 4, DEFAULT_PATTERN_LIMIT)?;
    println!(
        "t = 4: holds = {}, patterns per size {:?}",
        rep.holds, rep.patterns_per_size
    );
    let max = max_sequential_t_with(&table, 9, DEFAULT_PATTERN_LIMIT);
    println!("t* = {}", max.t_star);
    if let Some(p) = &max.failing_pattern {
        println!("smallest stuck pattern: {}", set_string(p));
    }
    Ok(())
}
