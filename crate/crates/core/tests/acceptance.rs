//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::PolyField;
use slrc::bounds::{exact_rate, rate_from_matrix, rate_report, Rational};
use slrc::code::{is_recovery_set, min_distance, puncture, Distance, RecoveryTable};
use slrc::construct::{encode, ConstructedCode};
use slrc::design::{affine_design, complete_graph_design, load_design, validate_design, Design, DesignViolation};
use slrc::io::incidence_from_csv;
use slrc::matrix::Matrix;
use slrc::simulate::{trial_campaign, PatternSize};
use slrc::sweep::{default_grid, run_point};
use slrc::verify::{
    check_availability, check_information_locality, check_lemma2, check_sequential_with, max_sequential_t_with,
    DEFAULT_PATTERN_LIMIT,
};
use slrc::worked_example::{demo_paper, example_code};
use slrc::Field;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:?}, limit {limit:?}"))
    }
}

fn code() -> ConstructedCode {
    example_code().expect("worked example builds")
}

/// All codewords, enumerated by encoding every message and checked against
/// `H` with reference arithmetic.
fn all_codewords(code: &ConstructedCode) -> Result<Vec<Vec<u16>>, String> {
    let oracle = PolyField::new(code.field().spec());
    let q = code.field().order() as u64;
    let k = code.layout.k;
    let mut words = Vec::new();
    for idx in 0..q.pow(k as u32) {
        let msg: Vec<u16> = (0..k).map(|j| ((idx / q.pow(j as u32)) % q) as u16).collect();
        let c = encode(code, &msg).map_err(|e| e.to_string())?;
        for row in code.h().to_rows() {
            ensure!(
                oracle.dot(&row, &c) == 0,
                "encoded word of {msg:?} violates a parity check"
            );
        }
        words.push(c);
    }
    Ok(words)
}

fn c1_reproduction() -> Outcome {
    let start = Instant::now();
    let report = demo_paper().map_err(|e| e.to_string())?;
    within(start.elapsed(), Duration::from_secs(1), "demo")?;
    for d in &report.diffs {
        ensure!(d.is_empty(), "{} differs: {:?}", d.name, d);
    }
    let shapes: Vec<_> = report.diffs.iter().map(|d| d.actual_shape).collect();
    ensure!(shapes == [(4, 6), (2, 5), (8, 6), (10, 16)], "shapes {shapes:?}");
    Ok(format!("4 matrices bit-exact in {:?}", start.elapsed()))
}

fn c2_local_mds() -> Outcome {
    let start = Instant::now();
    let code = code();
    let words = all_codewords(&code)?;
    let mut summary = Vec::new();
    for j in 0..code.layout.b {
        let support = code.block_support(j);
        ensure!(support.len() == 5, "block {} has support {:?}", j + 1, support);
        let projected: BTreeSet<Vec<u16>> = words.iter().map(|c| support.iter().map(|&s| c[s]).collect()).collect();
        ensure!(
            projected.len() == 64,
            "block {} punctured code has {} words",
            j + 1,
            projected.len()
        );
        let d = projected
            .iter()
            .map(|w| w.iter().filter(|&&x| x != 0).count())
            .filter(|&w| w > 0)
            .min()
            .unwrap_or(0);
        ensure!(d == 3, "block {} punctured distance {d}", j + 1);
        let lib = min_distance(&puncture(&code.code, &support).map_err(|e| e.to_string())?, None)
            .map_err(|e| e.to_string())?;
        ensure!(lib == Distance::Exact(3), "library distance {lib} for block {}", j + 1);
        summary.push(format!("[{}, 3, {d}]", support.len()));
    }
    within(start.elapsed(), Duration::from_secs(1), "local MDS check")?;
    Ok(format!("blocks {}", summary.join(" ")))
}

fn c3_sequential() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?;
    pool.install(|| {
        let start = Instant::now();
        let code = code();
        let table = RecoveryTable::build(&code.code, 3).map_err(|e| e.to_string())?;
        let rep = check_sequential_with(&table, 4, DEFAULT_PATTERN_LIMIT).map_err(|e| e.to_string())?;
        ensure!(rep.holds, "t = 4 fails at {:?}", rep.failing_pattern);
        ensure!(
            rep.patterns_per_size == [16, 120, 560, 1820],
            "pattern counts {:?}",
            rep.patterns_per_size
        );
        let max = max_sequential_t_with(&table, 9, DEFAULT_PATTERN_LIMIT);
        ensure!(
            max.complete && max.t_star >= 4,
            "t* = {} complete = {}",
            max.t_star,
            max.complete
        );
        let seven = check_sequential_with(&table, 7, DEFAULT_PATTERN_LIMIT).map_err(|e| e.to_string())?;
        let enumerated: u64 = seven.patterns_per_size.iter().sum();
        if seven.holds {
            ensure!(enumerated == 26332, "enumerated {enumerated} patterns up to size 7");
        }
        ensure!(seven.holds == (max.t_star >= 7), "t = 7 verdict disagrees with t*");
        within(start.elapsed(), Duration::from_secs(60), "single-threaded verification")?;
        Ok(format!(
            "t = 4 holds; t* = {}; size-7 claim holds: {} (first stuck pattern {:?}) in {:?}",
            max.t_star,
            seven.holds,
            seven
                .failing_pattern
                .map(|p| p.iter().map(|i| i + 1).collect::<Vec<_>>()),
            start.elapsed()
        ))
    })
}

fn c4_locality() -> Outcome {
    let start = Instant::now();
    let code = code();
    let rep = check_information_locality(&code).map_err(|e| e.to_string())?;
    ensure!(
        rep.per_coordinate.len() == 6,
        "{} information coordinates",
        rep.per_coordinate.len()
    );
    for c in &rep.per_coordinate {
        ensure!(c.holds(), "coordinate {} fails: {:?}", c.coordinate + 1, c);
        ensure!(
            c.supports.iter().all(|s| s.len() == 5),
            "coordinate {} supports {:?}",
            c.coordinate + 1,
            c.supports
        );
        ensure!(
            c.parity_counts == [2, 2],
            "coordinate {} parities {:?}",
            c.coordinate + 1,
            c.parity_counts
        );
    }
    let first: Vec<Vec<usize>> = rep.per_coordinate[0]
        .supports
        .iter()
        .map(|s| s.iter().map(|i| i + 1).collect())
        .collect();
    ensure!(
        first == [vec![1, 2, 3, 7, 8], vec![1, 4, 5, 9, 10]],
        "supports of coordinate 1: {first:?}"
    );
    within(start.elapsed(), Duration::from_secs(1), "locality check")?;
    Ok("conditions 1-4 hold for all 6 information symbols; coordinate 1 supports {1,2,3,7,8} {1,4,5,9,10}".into())
}

fn c5_recovery_statements() -> Outcome {
    let start = Instant::now();
    let code = code();
    let table = RecoveryTable::build(&code.code, 3).map_err(|e| e.to_string())?;
    let rep = check_lemma2(&code, &table);
    for s in &rep.statements {
        ensure!(s.holds, "statement {} fails at {:?}", s.index, s.failure);
    }
    let r7 = rep.witness(2, 6).ok_or("no witness for coordinate 7")?;
    ensure!(r7.helpers == [0, 1, 2], "R7 = {:?}", r7.helpers);
    let r7b = rep.witness(3, 6).ok_or("no W* witness for coordinate 7")?;
    ensure!(r7b.helpers == [7, 8, 14], "R'7 = {:?}", r7b.helpers);
    let r15 = rep.witness(4, 14).ok_or("no witness for coordinate 15")?;
    ensure!(r15.helpers == [6, 7, 8], "R15 = {:?}", r15.helpers);
    for (target, helpers) in [
        (6, vec![0, 1, 2]),
        (14, vec![6, 7, 8]),
        (0, vec![1, 2, 6]),
        (0, vec![3, 4, 8]),
    ] {
        ensure!(
            is_recovery_set(&code.code, target, &helpers).is_some(),
            "{helpers:?} does not recover {target}"
        );
    }
    for i in 0..6 {
        let (count, packing) = check_availability(&table, i);
        ensure!(count >= 2, "coordinate {} has {count} disjoint sets", i + 1);
        ensure!(packing.iter().all(|s| s.len() <= 3), "oversized set for {}", i + 1);
        let own: Vec<_> = rep.statements[0].witnesses.iter().filter(|w| w.target == i).collect();
        ensure!(own.len() == 2, "coordinate {} has {} line-based sets", i + 1, own.len());
        ensure!(
            own[0].helpers.iter().all(|h| !own[1].helpers.contains(h)),
            "line-based sets of {} overlap",
            i + 1
        );
    }
    within(start.elapsed(), Duration::from_secs(5), "recovery statements")?;
    Ok("statements 1-4 hold; R7 = {1,2,3}, R'7 = {8,9,15}, R15 = {7,8,9}".into())
}

fn c6_rank() -> Outcome {
    let code = code();
    let h = code.h();
    // Columns 7..16 form a unit lower-triangular block, so the rows are
    // independent.
    for row in 0..10 {
        ensure!(h.get(row, 6 + row) == 1, "pivot of row {}", row + 1);
        ensure!(
            (6 + row + 1..16).all(|c| h.get(row, c) == 0),
            "row {} not staircase",
            row + 1
        );
    }
    ensure!(code.code.rank() == 10, "rank {}", code.code.rank());
    ensure!(code.code.dimension() == 6, "dimension {}", code.code.dimension());
    let words = all_codewords(&code)?;
    let distinct: BTreeSet<&Vec<u16>> = words.iter().collect();
    ensure!(distinct.len() == 4096, "{} distinct codewords", distinct.len());
    let report = demo_paper().map_err(|e| e.to_string())?;
    ensure!(
        !report.rank_matches_nominal && report.nominal_rank == 8,
        "nominal rank mismatch not flagged"
    );
    ensure!(
        report.notes.iter().any(|n| n.contains("rank(H) = 10")),
        "notes {:?}",
        report.notes
    );
    Ok("rank 10, dimension 6, b(δ-1) = 8 flagged".into())
}

fn c7_round_trip() -> Outcome {
    let start = Instant::now();
    let code = code();
    let table = RecoveryTable::build(&code.code, 3).map_err(|e| e.to_string())?;
    let t_star = max_sequential_t_with(&table, 9, DEFAULT_PATTERN_LIMIT).t_star;
    let trials = slrc::simulate::run_trials(&code.code, &table, t_star, 1000, 2024, PatternSize::UpTo)
        .map_err(|e| e.to_string())?;
    for trial in &trials {
        ensure!(
            code.code.contains(&trial.codeword),
            "trial {} drew a non-codeword",
            trial.index
        );
        ensure!(
            !trial.erased.is_empty() && trial.erased.len() <= t_star,
            "trial {} pattern size",
            trial.index
        );
        let schedule = trial
            .plan
            .schedule()
            .ok_or(format!("trial {} stuck on {:?}", trial.index, trial.erased))?;
        ensure!(
            schedule.steps.iter().all(|s| s.helpers.len() <= 3),
            "trial {} uses more than 3 helpers",
            trial.index
        );
        ensure!(
            trial.restored.as_ref() == Some(&trial.codeword),
            "trial {} not restored",
            trial.index
        );
    }
    let stats = trial_campaign(&code.code, &table, t_star, 1000, 2024, PatternSize::UpTo).map_err(|e| e.to_string())?;
    ensure!(stats.success_rate == 1.0, "success rate {}", stats.success_rate);
    within(start.elapsed(), Duration::from_secs(30), "1000 repair trials")?;
    Ok(format!(
        "1000/1000 restored with t* = {t_star}, max {} helpers",
        stats.max_helpers
    ))
}

fn c8_rates() -> Outcome {
    let code = code();
    let from_matrix = rate_from_matrix(&code);
    let additive = exact_rate(&code.layout);
    let three_eighths = Rational::new(3, 8);
    ensure!(from_matrix == three_eighths, "matrix rate {from_matrix}");
    ensure!(additive == three_eighths, "additive rate {additive}");
    let report = rate_report(&code.layout);
    ensure!(
        report.closed_form_rate == Rational::new(1, 5),
        "closed form {}",
        report.closed_form_rate
    );
    ensure!(report.closed_form_diverges, "divergence not flagged");
    Ok(format!(
        "k/n = {from_matrix} (matrix and formula), closed form {} flagged",
        report.closed_form_rate
    ))
}

fn c9_sweep() -> Outcome {
    let mut lines = Vec::new();
    let grid = default_grid();
    ensure!(grid.len() == 18, "grid has {} points", grid.len());
    for point in grid {
        let res = run_point(point).map_err(|e| format!("{point:?}: {e}"))?;
        ensure!(res.passed(), "{point:?} fails: {res:?}");
        ensure!(res.dimension == res.k, "{point:?} dimension {}", res.dimension);
        within(res.elapsed, Duration::from_secs(300), &format!("{point:?}"))?;
        lines.push(res.n);
    }
    Ok(format!(
        "18 points pass, n from {} to {}",
        lines.iter().min().unwrap(),
        lines.iter().max().unwrap()
    ))
}

fn c10_oracles() -> Outcome {
    for q in [2usize, 3, 4, 5, 8, 9, 16] {
        let f = Field::with_order(q).map_err(|e| e.to_string())?;
        let oracle = PolyField::new(f.spec());
        let els: Vec<u16> = f.elements().collect();
        ensure!(els.len() == q, "GF({q}) lists {} elements", els.len());
        for &a in &els {
            ensure!(f.add(a, 0) == a && f.mul(a, 1) == a, "GF({q}) identities at {a}");
            ensure!(f.add(a, f.neg(a)) == 0, "GF({q}) additive inverse of {a}");
            if a != 0 {
                ensure!(f.mul(a, f.inv(a).unwrap()) == 1, "GF({q}) inverse of {a}");
            }
            for &b in &els {
                ensure!(f.add(a, b) == oracle.add(a, b), "GF({q}) {a}+{b}");
                ensure!(f.mul(a, b) == oracle.mul(a, b), "GF({q}) {a}·{b}");
                ensure!(
                    f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a),
                    "GF({q}) commutativity"
                );
                for &c in &els {
                    ensure!(
                        f.add(f.add(a, b), c) == f.add(a, f.add(b, c)),
                        "GF({q}) additive associativity"
                    );
                    ensure!(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)), "GF({q}) associativity");
                    ensure!(
                        f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)),
                        "GF({q}) distributivity at {a},{b},{c}"
                    );
                }
            }
        }
    }

    let golden = incidence_from_csv(include_str!("../data/design.csv")).map_err(|e| e.to_string())?;
    let loaded = load_design(&golden).map_err(|e| e.to_string())?;
    ensure!(validate_design(&loaded, 2, 3).valid, "golden design rejected");
    ensure!(loaded.incidence() == golden, "golden design changes on load");
    for r in 2..=6 {
        let d = complete_graph_design(r).map_err(|e| e.to_string())?;
        ensure!(validate_design(&d, 2, r).valid, "complete graph r = {r} rejected");
    }
    for (r, t_i) in [(2, 2), (2, 3), (3, 2), (3, 3), (3, 4), (4, 2), (4, 3), (4, 5), (5, 3)] {
        let d = affine_design(r, t_i).map_err(|e| e.to_string())?;
        ensure!(
            validate_design(&d, t_i, r).valid,
            "affine r = {r}, t_i = {t_i} rejected"
        );
    }

    let shared = Design {
        k: 4,
        r: 3,
        t_i: 1,
        lines: vec![vec![0, 1, 2], vec![0, 1, 3]],
        classes: None,
    };
    let v = validate_design(&shared, 2, 3);
    ensure!(
        matches!(v.violation, Some(DesignViolation::SharedPoints { .. })),
        "two shared points not reported: {:?}",
        v.violation
    );
    // Regular weights, but lines 1 and 2 share points 1 and 4.
    let broken = Matrix::from_rows(&[
        vec![1, 1, 0, 1, 0, 0],
        vec![1, 0, 0, 1, 1, 0],
        vec![0, 1, 1, 0, 0, 1],
        vec![0, 0, 1, 0, 1, 1],
    ])
    .unwrap();
    ensure!(load_design(&broken).is_err(), "girth violation accepted");
    Ok("GF(2,3,4,5,8,9,16) axioms and reference products; designs accepted; girth violations rejected".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 worked example reproduction", c1_reproduction),
        ("2 local MDS structure", c2_local_mds),
        ("3 sequential tolerance", c3_sequential),
        ("4 information locality", c4_locality),
        ("5 recovery statements", c5_recovery_statements),
        ("6 rank and dimension", c6_rank),
        ("7 round-trip repair", c7_round_trip),
        ("8 rate accounting", c8_rates),
        ("9 parameter sweep", c9_sweep),
        ("10 field and design oracles", c10_oracles),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
