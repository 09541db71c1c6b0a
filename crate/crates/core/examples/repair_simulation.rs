//! Seeded erasure trials with greedy peeling repair.

use slrc::code::RecoveryTable;
use slrc::simulate::{execute_repair, plan_repair, trial_campaign, PatternSize};
use slrc::worked_example::example_code;

fn main() -> slrc::Result<()> {
    let code = example_code()?;
    let table = RecoveryTable::build(&code.code, code.layout.r)?;

    let word = code.code.random_codeword(&mut rand::thread_rng());
    let erased = [0, 6, 14];
    let plan = plan_repair(&table, &erased);
    let schedule = plan
        .schedule()
        .expect("three erasures are within the certified tolerance");
    for step in &schedule.steps {
        println!("{}", step.trace_line());
    }
    let restored = execute_repair(code.field(), &word, &erased, schedule)?;
    println!("restored = original: {}", restored == word);

    for t in [4, 5] {
        let stats = trial_campaign(&code.code, &table, t, 1000, 7, PatternSize::Exactly)?;
        println!(
            "exactly {t} erasures: success {:.3}, mean helpers per repair {:.2}",
            stats.success_rate, stats.mean_helpers_per_repair
        );
    }
    Ok(())
}
