//! Erasure and repair simulation on concrete codewords.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::code::{LinearCode, RecoveryTable};
use crate::combinatorics::mask_of;
use crate::error::{Error, Result};
use crate::gf::Field;
use crate::labels::{one_based, one_based_opt, one_based_scalar, set_string};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepairStep {
    #[serde(serialize_with = "one_based_scalar")]
    pub repaired: usize,
    #[serde(serialize_with = "one_based")]
    pub helpers: Vec<usize>,
    pub coefficients: Vec<u16>,
}

impl RepairStep {
    /// `repair c<i> <- {helpers} coeffs=[...]`, 1-based.
    pub fn trace_line(&self) -> String {
        let coeffs: Vec<String> = self.coefficients.iter().map(u16::to_string).collect();
        format!(
            "repair c{} <- {} coeffs=[{}]",
            self.repaired + 1,
            set_string(&self.helpers),
            coeffs.join(", ")
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RepairSchedule {
    pub steps: Vec<RepairStep>,
}

impl RepairSchedule {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total_helpers(&self) -> usize {
        self.steps.iter().map(|s| s.helpers.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RepairPlan {
    Complete {
        schedule: RepairSchedule,
    },
    /// Peeling stopped; `residual` could not be repaired from the survivors.
    Stuck {
        partial: RepairSchedule,
        #[serde(serialize_with = "one_based")]
        residual: Vec<usize>,
    },
}

impl RepairPlan {
    pub fn is_complete(&self) -> bool {
        matches!(self, RepairPlan::Complete { .. })
    }

    pub fn schedule(&self) -> Option<&RepairSchedule> {
        match self {
            RepairPlan::Complete { schedule } => Some(schedule),
            RepairPlan::Stuck { .. } => None,
        }
    }
}

/// Greedy peeling: repeatedly repair the smallest erased coordinate that has
/// a recovery set avoiding every still-erased coordinate, using its
/// lexicographically first such set.
pub fn plan_repair(table: &RecoveryTable, erased: &[usize]) -> RepairPlan {
    let mut pending: Vec<usize> = erased.to_vec();
    pending.sort_unstable();
    pending.dedup();
    let mut blocked = mask_of(&pending);
    let mut steps = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let next = pending
            .iter()
            .enumerate()
            .find_map(|(pos, &i)| table.first_avoiding(i, blocked).map(|s| (pos, s)));
        match next {
            Some((pos, set)) => {
                let i = pending.remove(pos);
                blocked &= !(1 << i);
                steps.push(RepairStep {
                    repaired: i,
                    helpers: set.helpers.clone(),
                    coefficients: set.coefficients.clone(),
                });
            }
            None => {
                return RepairPlan::Stuck {
                    partial: RepairSchedule { steps },
                    residual: pending,
                }
            }
        }
    }
    RepairPlan::Complete {
        schedule: RepairSchedule { steps },
    }
}

/// Applies `schedule` to `received`, whose erased entries are ignored.
pub fn execute_repair(
    field: &Field,
    received: &[u16],
    erased: &[usize],
    schedule: &RepairSchedule,
) -> Result<Vec<u16>> {
    let mut word = received.to_vec();
    let mut available = vec![true; word.len()];
    for &e in erased {
        if e >= word.len() {
            return Err(Error::param(format!("erased coordinate {} out of range", e + 1)));
        }
        available[e] = false;
        word[e] = 0;
    }
    for step in &schedule.steps {
        if step.repaired >= word.len() || available[step.repaired] {
            return Err(Error::Integrity(format!(
                "step repairs c{} which is not erased",
                step.repaired + 1
            )));
        }
        let mut value = 0;
        for (&h, &a) in step.helpers.iter().zip(&step.coefficients) {
            if h >= word.len() || !available[h] {
                return Err(Error::Integrity(format!(
                    "repair of c{} reads c{}, which is unavailable",
                    step.repaired + 1,
                    h + 1
                )));
            }
            value = field.add(value, field.mul(a, word[h]));
        }
        word[step.repaired] = value;
        available[step.repaired] = true;
    }
    if let Some(missing) = available.iter().position(|a| !a) {
        return Err(Error::Integrity(format!("schedule leaves c{} erased", missing + 1)));
    }
    Ok(word)
}

/// How trial pattern sizes are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternSize {
    /// Uniform over `1..=t`.
    UpTo,
    /// Always exactly `t`.
    Exactly,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignStats {
    pub r: usize,
    pub t: usize,
    pub trials: usize,
    pub seed: u64,
    pub pattern_size: PatternSize,
    pub successes: usize,
    pub success_rate: f64,
    /// Mean steps over successful trials.
    pub mean_schedule_length: f64,
    /// Mean helpers per repair step over successful trials.
    pub mean_helpers_per_repair: f64,
    pub max_helpers: usize,
    /// Trials whose repair ran but did not restore the original word.
    pub mismatches: usize,
    /// First failing pattern by trial index.
    #[serde(serialize_with = "one_based_opt")]
    pub first_failure: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct Trial {
    pub index: u64,
    pub codeword: Vec<u16>,
    pub erased: Vec<usize>,
    pub plan: RepairPlan,
    pub restored: Option<Vec<u16>>,
}

/// Runs one seeded trial: draw a codeword and a pattern, plan, execute.
pub fn run_trial(
    code: &LinearCode,
    table: &RecoveryTable,
    t: usize,
    mode: PatternSize,
    seed: u64,
    index: u64,
) -> Result<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let n = code.n();
    let t = t.min(n);
    let codeword = code.random_codeword(&mut rng);
    let size = match mode {
        PatternSize::UpTo => rng.gen_range(1..=t),
        PatternSize::Exactly => t,
    };
    let mut erased = sample(&mut rng, n, size).into_vec();
    erased.sort_unstable();
    let plan = plan_repair(table, &erased);
    let restored = match plan.schedule() {
        Some(s) => Some(execute_repair(code.field(), &codeword, &erased, s)?),
        None => None,
    };
    Ok(Trial {
        index,
        codeword,
        erased,
        plan,
        restored,
    })
}

/// Runs `trials` independent trials. Each trial draws from its own stream of
/// the seed, so results do not depend on the thread count.
pub fn run_trials(
    code: &LinearCode,
    table: &RecoveryTable,
    t: usize,
    trials: usize,
    seed: u64,
    mode: PatternSize,
) -> Result<Vec<Trial>> {
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    if t == 0 {
        return Err(Error::param("t must be at least 1"));
    }
    (0..trials as u64)
        .into_par_iter()
        .map(|i| run_trial(code, table, t, mode, seed, i))
        .collect()
}

/// Seeded campaign statistics.
pub fn trial_campaign(
    code: &LinearCode,
    table: &RecoveryTable,
    t: usize,
    trials: usize,
    seed: u64,
    mode: PatternSize,
) -> Result<CampaignStats> {
    let results = run_trials(code, table, t, trials, seed, mode)?;
    Ok(summarize(table.r, t.min(code.n()), seed, mode, &results))
}

pub fn summarize(r: usize, t: usize, seed: u64, mode: PatternSize, results: &[Trial]) -> CampaignStats {
    let mut successes = 0;
    let mut steps = 0;
    let mut helpers = 0;
    let mut max_helpers = 0;
    let mut mismatches = 0;
    let mut first_failure = None;
    for trial in results {
        let ok = trial.restored.as_ref() == Some(&trial.codeword);
        if ok {
            let s = trial.plan.schedule().expect("restored implies schedule");
            successes += 1;
            steps += s.len();
            helpers += s.total_helpers();
            max_helpers = max_helpers.max(s.steps.iter().map(|x| x.helpers.len()).max().unwrap_or(0));
        } else {
            if trial.restored.is_some() {
                mismatches += 1;
            }
            first_failure.get_or_insert_with(|| trial.erased.clone());
        }
    }
    let ratio = |a: usize, b: usize| if b == 0 { 0.0 } else { a as f64 / b as f64 };
    CampaignStats {
        r,
        t,
        trials: results.len(),
        seed,
        pattern_size: mode,
        successes,
        success_rate: ratio(successes, results.len()),
        mean_schedule_length: ratio(steps, successes),
        mean_helpers_per_repair: ratio(helpers, steps),
        max_helpers,
        mismatches,
        first_failure,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn parity_code() -> (LinearCode, RecoveryTable) {
        let f = Field::new(2, 2).unwrap();
        let h = Matrix::from_rows(&[vec![1, 1, 1, 1]]).unwrap();
        let code = LinearCode::new(&f, h).unwrap();
        let table = RecoveryTable::build(&code, 3).unwrap();
        (code, table)
    }

    #[test]
    fn empty_pattern_has_empty_schedule() {
        let (_, table) = parity_code();
        assert_eq!(
            plan_repair(&table, &[]),
            RepairPlan::Complete {
                schedule: RepairSchedule::default()
            }
        );
    }

    #[test]
    fn single_parity_repairs_one() {
        let (code, table) = parity_code();
        let plan = plan_repair(&table, &[2]);
        let s = plan.schedule().unwrap();
        assert_eq!(s.steps[0].helpers, vec![0, 1, 3]);
        assert_eq!(s.steps[0].trace_line(), "repair c3 <- {1, 2, 4} coeffs=[1, 1, 1]");
        let word = vec![1, 2, 0, 0];
        let word = {
            let mut w = word;
            w[3] = code.field().add(1, 2);
            w
        };
        assert!(code.contains(&word));
        assert_eq!(execute_repair(code.field(), &word, &[2], s).unwrap()[2], 0);
    }

    #[test]
    fn two_erasures_stuck() {
        let (_, table) = parity_code();
        match plan_repair(&table, &[0, 1]) {
            RepairPlan::Stuck { residual, .. } => assert_eq!(residual, vec![0, 1]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unavailable_helper_is_integrity_error() {
        let (code, _) = parity_code();
        let bad = RepairSchedule {
            steps: vec![RepairStep {
                repaired: 0,
                helpers: vec![1, 2, 3],
                coefficients: vec![1, 1, 1],
            }],
        };
        let err = execute_repair(code.field(), &[0; 4], &[0, 1], &bad).unwrap_err();
        assert!(matches!(err, Error::Integrity(_)));
    }

    #[test]
    fn campaign_is_deterministic() {
        let (code, table) = parity_code();
        let a = trial_campaign(&code, &table, 2, 50, 3, PatternSize::UpTo).unwrap();
        let b = trial_campaign(&code, &table, 2, 50, 3, PatternSize::UpTo).unwrap();
        assert_eq!(a, b);
        assert!(a.success_rate > 0.0 && a.success_rate < 1.0);
        let all = trial_campaign(&code, &table, 4, 10, 3, PatternSize::Exactly).unwrap();
        assert_eq!(all.success_rate, 0.0);
    }
}
