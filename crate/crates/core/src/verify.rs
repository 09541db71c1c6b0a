//! Exhaustive verification of sequential recoverability and of the
//! structural claims made for staircase-construction codes.
//!
//! Sequential recovery is checked through the one-at-a-time condition: a
//! code is an `(r, t)` sequential code iff every nonempty erasure set `I`
//! with `|I| ≤ t` contains a coordinate that has an `r`-recovery set
//! disjoint from `I`. Patterns are visited by size, lexicographically within
//! a size, and the first failure is reported.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{is_recovery_set, min_distance, puncture, Distance, LinearCode, RecoveryTable};
use crate::combinatorics::{binomial, mask_of, next_combination, patterns_up_to, Mask};
use crate::construct::ConstructedCode;
use crate::error::{Error, Result};
use crate::labels::{one_based, one_based_nested, one_based_opt, one_based_scalar, set_string};

/// Default budget for exhaustive pattern enumeration.
pub const DEFAULT_PATTERN_LIMIT: f64 = 1e7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub r: usize,
    pub checked_t: usize,
    pub holds: bool,
    /// Smallest pattern (size, then lexicographic) with no repairable member.
    #[serde(serialize_with = "one_based_opt")]
    pub failing_pattern: Option<Vec<usize>>,
    /// Patterns examined per size `1..=checked_t`.
    pub patterns_per_size: Vec<u64>,
    pub t_star: Option<usize>,
}

/// Whether some member of the pattern can be repaired from outside it.
#[inline]
pub fn pattern_recoverable(table: &RecoveryTable, items: &[usize], mask: Mask) -> bool {
    items.iter().any(|&i| table.has_set_avoiding(i, mask))
}

/// Lexicographic index of a sorted k-subset of `0..n`.
fn lex_rank(items: &[usize], n: usize) -> u64 {
    let k = items.len();
    let mut rank = 0.0;
    let mut prev = 0;
    for (pos, &x) in items.iter().enumerate() {
        for skipped in prev..x {
            rank += binomial(n - skipped - 1, k - pos - 1);
        }
        prev = x + 1;
    }
    rank as u64
}

/// First unrecoverable pattern of exactly `size` coordinates, if any.
fn first_failure_of_size(table: &RecoveryTable, size: usize) -> Option<Vec<usize>> {
    let n = table.n;
    if size == 0 || size > n {
        return None;
    }
    (0..=n - size).into_par_iter().find_map_first(|first| {
        let rest_len = size - 1;
        let pool = n - first - 1;
        let mut rest: Vec<usize> = (0..rest_len).collect();
        let mut items = vec![0usize; size];
        loop {
            items[0] = first;
            for (slot, &r) in items[1..].iter_mut().zip(&rest) {
                *slot = first + 1 + r;
            }
            let mask = mask_of(&items);
            if !pattern_recoverable(table, &items, mask) {
                return Some(items);
            }
            if rest_len == 0 || !next_combination(&mut rest, pool) {
                return None;
            }
        }
    })
}

fn check_level(table: &RecoveryTable, size: usize) -> (u64, Option<Vec<usize>>) {
    match first_failure_of_size(table, size) {
        Some(p) => (lex_rank(&p, table.n) + 1, Some(p)),
        None => (binomial(table.n, size) as u64, None),
    }
}

fn infeasible(n: usize, t: usize, limit: f64) -> Error {
    Error::Infeasible {
        what: format!("exhaustive check of all erasure patterns of size <= {t} in length {n}"),
        estimate: patterns_up_to(n, t),
        limit,
        hint: "use max_sequential_t for the largest feasible level, or the sampled check".into(),
    }
}

/// Checks every erasure pattern of size `1..=t`.
pub fn check_sequential(code: &LinearCode, r: usize, t: usize) -> Result<VerificationReport> {
    let table = RecoveryTable::build(code, r)?;
    check_sequential_with(&table, t, DEFAULT_PATTERN_LIMIT)
}

pub fn check_sequential_with(table: &RecoveryTable, t: usize, limit: f64) -> Result<VerificationReport> {
    let t = t.min(table.n);
    if patterns_up_to(table.n, t) > limit {
        return Err(infeasible(table.n, t, limit));
    }
    let mut counts = Vec::with_capacity(t);
    for size in 1..=t {
        let (count, failure) = check_level(table, size);
        counts.push(count);
        if let Some(p) = failure {
            return Ok(VerificationReport {
                r: table.r,
                checked_t: t,
                holds: false,
                failing_pattern: Some(p),
                patterns_per_size: counts,
                t_star: Some(size - 1),
            });
        }
    }
    Ok(VerificationReport {
        r: table.r,
        checked_t: t,
        holds: true,
        failing_pattern: None,
        patterns_per_size: counts,
        t_star: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxTReport {
    pub r: usize,
    pub cap: usize,
    /// Largest certified `t`.
    pub t_star: usize,
    /// False when a level was skipped for exceeding the pattern budget, in
    /// which case `t_star` is only a lower bound.
    pub complete: bool,
    /// The minimal failing pattern of size `t_star + 1`, when one was found.
    #[serde(serialize_with = "one_based_opt")]
    pub failing_pattern: Option<Vec<usize>>,
    pub patterns_per_size: Vec<u64>,
}

/// Largest `t ≤ cap` for which every pattern of size `≤ t` is sequentially
/// recoverable.
pub fn max_sequential_t(code: &LinearCode, r: usize, cap: usize) -> Result<MaxTReport> {
    let table = RecoveryTable::build(code, r)?;
    Ok(max_sequential_t_with(&table, cap, DEFAULT_PATTERN_LIMIT))
}

pub fn max_sequential_t_with(table: &RecoveryTable, cap: usize, limit: f64) -> MaxTReport {
    let mut counts = Vec::new();
    let mut spent = 0.0;
    for size in 1..=cap.min(table.n) {
        spent += binomial(table.n, size);
        if spent > limit {
            return MaxTReport {
                r: table.r,
                cap,
                t_star: size - 1,
                complete: false,
                failing_pattern: None,
                patterns_per_size: counts,
            };
        }
        let (count, failure) = check_level(table, size);
        counts.push(count);
        if failure.is_some() {
            return MaxTReport {
                r: table.r,
                cap,
                t_star: size - 1,
                complete: true,
                failing_pattern: failure,
                patterns_per_size: counts,
            };
        }
    }
    MaxTReport {
        r: table.r,
        cap,
        t_star: cap.min(table.n),
        complete: true,
        failing_pattern: None,
        patterns_per_size: counts,
    }
}

/// Random-pattern spot check for codes beyond exhaustive reach. Never a
/// certificate: a `None` only means no failure was sampled.
pub fn check_sequential_sampled(table: &RecoveryTable, t: usize, samples: usize, seed: u64) -> Option<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = t.min(table.n);
    for _ in 0..samples {
        let size = 1 + (rand::Rng::gen_range(&mut rng, 0..t));
        let mut items = sample(&mut rng, table.n, size).into_vec();
        items.sort_unstable();
        if !pattern_recoverable(table, &items, mask_of(&items)) {
            return Some(items);
        }
    }
    None
}

/// One named pass/fail entry of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: Option<String>) -> Check {
        Check {
            name: name.into(),
            pass,
            witness,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfoLocality {
    #[serde(serialize_with = "one_based_scalar")]
    pub coordinate: usize,
    /// Supports of the row blocks containing the coordinate.
    #[serde(serialize_with = "one_based_nested")]
    pub supports: Vec<Vec<usize>>,
    pub distances: Vec<Distance>,
    pub parity_counts: Vec<usize>,
    pub size_ok: bool,
    pub distance_ok: bool,
    pub intersection_ok: bool,
    pub parity_ok: bool,
}

impl InfoLocality {
    pub fn holds(&self) -> bool {
        self.size_ok && self.distance_ok && self.intersection_ok && self.parity_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalityReport {
    pub per_coordinate: Vec<InfoLocality>,
    pub checks: Vec<Check>,
    /// Conditions 1 to 4 for every information coordinate.
    pub structural_holds: bool,
}

/// Information locality: for each information coordinate, the supports of
/// the local row blocks through it must have size ≤ r+δ-1, punctured
/// distance δ, pairwise intersection `{i}` and exactly δ-1 parities. The
/// tolerance condition is left to [`check_sequential`] and
/// [`max_sequential_t`].
pub fn check_information_locality(code: &ConstructedCode) -> Result<LocalityReport> {
    let l = &code.layout;
    let mut block_distance: Vec<Option<Distance>> = vec![None; l.b];
    let mut per = Vec::with_capacity(l.k);
    for i in 0..l.k {
        let blocks = code.lines_through(i);
        let supports: Vec<Vec<usize>> = blocks.iter().map(|&j| code.block_support(j)).collect();
        let mut distances = Vec::with_capacity(blocks.len());
        for &j in &blocks {
            let d = match block_distance[j] {
                Some(d) => d,
                None => {
                    let punctured = puncture(&code.code, &code.block_support(j))?;
                    let d = min_distance(&punctured, Some(l.delta + 1))?;
                    block_distance[j] = Some(d);
                    d
                }
            };
            distances.push(d);
        }
        let parity_counts: Vec<usize> = supports
            .iter()
            .map(|s| s.iter().filter(|&&c| c >= l.k).count())
            .collect();
        let mut intersection_ok = supports.len() == l.t_i;
        for a in 0..supports.len() {
            for b in a + 1..supports.len() {
                let shared: Vec<usize> = supports[a]
                    .iter()
                    .copied()
                    .filter(|c| supports[b].contains(c))
                    .collect();
                intersection_ok &= shared == vec![i];
            }
        }
        per.push(InfoLocality {
            coordinate: i,
            size_ok: !supports.is_empty() && supports.iter().all(|s| s.len() < l.r + l.delta),
            distance_ok: !distances.is_empty() && distances.iter().all(|d| *d == Distance::Exact(l.delta)),
            intersection_ok,
            parity_ok: parity_counts.iter().all(|&p| p == l.delta - 1),
            supports,
            distances,
            parity_counts,
        });
    }

    let first_bad = |pred: fn(&InfoLocality) -> bool| {
        per.iter().find(|x| !pred(x)).map(|x| {
            format!(
                "coordinate {} supports {:?}",
                x.coordinate + 1,
                x.supports.iter().map(|s| set_string(s)).collect::<Vec<_>>()
            )
        })
    };
    let checks = vec![
        Check::new(
            "locality.1 support size <= r+delta-1",
            per.iter().all(|x| x.size_ok),
            first_bad(|x| x.size_ok),
        ),
        Check::new(
            "locality.2 punctured distance = delta",
            per.iter().all(|x| x.distance_ok),
            first_bad(|x| x.distance_ok),
        ),
        Check::new(
            "locality.3 supports meet only in i",
            per.iter().all(|x| x.intersection_ok),
            first_bad(|x| x.intersection_ok),
        ),
        Check::new(
            "locality.4 delta-1 parities per support",
            per.iter().all(|x| x.parity_ok),
            first_bad(|x| x.parity_ok),
        ),
    ];
    let structural_holds = checks.iter().all(|c| c.pass);
    Ok(LocalityReport {
        per_coordinate: per,
        checks,
        structural_holds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSet {
    #[serde(serialize_with = "one_based_scalar")]
    pub target: usize,
    #[serde(serialize_with = "one_based")]
    pub helpers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Statement {
    pub index: usize,
    pub description: &'static str,
    pub holds: bool,
    /// First coordinate for which the statement failed.
    #[serde(serialize_with = "one_based_opt")]
    pub failure: Option<Vec<usize>>,
    pub witnesses: Vec<WitnessSet>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Report {
    pub statements: Vec<Statement>,
}

impl Lemma2Report {
    pub fn holds(&self) -> bool {
        self.statements.iter().all(|s| s.holds)
    }

    pub fn witness(&self, statement: usize, target: usize) -> Option<&WitnessSet> {
        self.statements[statement - 1]
            .witnesses
            .iter()
            .find(|w| w.target == target)
    }
}

/// Structural recovery claims for staircase-construction codes:
///
/// 1. each information coordinate has `t_i` disjoint recovery sets, namely
///    its line minus itself plus one parity of that line;
/// 2. each line parity is recoverable from information coordinates;
/// 3. each parity under `W*` is recoverable from the other `W*` parities and
///    the global parities;
/// 4. each global parity is recoverable from the `W*` parities.
pub fn check_lemma2(code: &ConstructedCode, table: &RecoveryTable) -> Lemma2Report {
    let l = &code.layout;
    let w_range = l.k..l.k + l.w_star_width();
    let globals = l.global_parity_range();

    // 1: explicit line-based sets, checked directly against the code.
    let mut s1 = Statement {
        index: 1,
        description: "information symbols have t_i disjoint recovery sets",
        holds: true,
        failure: None,
        witnesses: Vec::new(),
    };
    for i in 0..l.k {
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for j in code.lines_through(i) {
            let points: Vec<usize> = code.line_points(j).into_iter().filter(|&p| p != i).collect();
            let found = l.line_parities(j).find_map(|p| {
                let mut helpers = points.clone();
                helpers.push(p);
                (helpers.len() <= l.r && is_recovery_set(&code.code, i, &helpers).is_some()).then_some(helpers)
            });
            if let Some(h) = found {
                sets.push(h);
            }
        }
        let disjoint = sets
            .iter()
            .enumerate()
            .all(|(a, x)| sets[a + 1..].iter().all(|y| x.iter().all(|c| !y.contains(c))));
        if sets.len() < l.t_i || !disjoint || check_availability(table, i).0 < l.t_i {
            s1.holds = false;
            s1.failure.get_or_insert_with(|| vec![i]);
        }
        s1.witnesses
            .extend(sets.into_iter().map(|helpers| WitnessSet { target: i, helpers }));
    }

    let within =
        |name: &'static str, index: usize, targets: std::ops::Range<usize>, allowed: &dyn Fn(usize, usize) -> bool| {
            let mut st = Statement {
                index,
                description: name,
                holds: true,
                failure: None,
                witnesses: Vec::new(),
            };
            for i in targets {
                match table.sets[i].iter().find(|s| s.helpers.iter().all(|&h| allowed(i, h))) {
                    Some(s) => st.witnesses.push(WitnessSet {
                        target: i,
                        helpers: s.helpers.clone(),
                    }),
                    None => {
                        st.holds = false;
                        st.failure.get_or_insert_with(|| vec![i]);
                    }
                }
            }
            st
        };

    let s2 = within(
        "line parities recover from information symbols",
        2,
        l.line_parity_range(),
        &|_, h| h < l.k,
    );
    let s3 = within(
        "W* parities recover from other W* and global parities",
        3,
        w_range.clone(),
        &|i, h| h != i && (w_range.contains(&h) || globals.contains(&h)),
    );
    let s4 = within(
        "global parities recover from W* parities",
        4,
        globals.clone(),
        &|_, h| w_range.contains(&h),
    );
    Lemma2Report {
        statements: vec![s1, s2, s3, s4],
    }
}

/// Maximum number of pairwise disjoint recovery sets of coordinate `i`,
/// with one optimal packing.
pub fn check_availability(table: &RecoveryTable, i: usize) -> (usize, Vec<Vec<usize>>) {
    let sets = &table.minimal[i];
    fn search(sets: &[Mask], start: usize, used: Mask, chosen: &mut Vec<Mask>, best: &mut Vec<Mask>) {
        if chosen.len() > best.len() {
            *best = chosen.clone();
        }
        if chosen.len() + (sets.len() - start) <= best.len() {
            return;
        }
        for idx in start..sets.len() {
            if sets[idx] & used == 0 {
                chosen.push(sets[idx]);
                search(sets, idx + 1, used | sets[idx], chosen, best);
                chosen.pop();
            }
        }
    }
    let mut best = Vec::new();
    search(sets, 0, 0, &mut Vec::new(), &mut best);
    let packing = best.iter().map(|&m| crate::combinatorics::mask_items(m)).collect();
    (best.len(), packing)
}
