//! Construct-and-verify runs over a grid of small parameters.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::code::RecoveryTable;
use crate::construct::{construct_code, smallest_admissible_q};
use crate::design::{affine_design, complete_graph_design};
use crate::error::Result;
use crate::gf::prime_power;
use crate::mds::MdsStyle;
use crate::verify::{check_information_locality, check_sequential_with, DEFAULT_PATTERN_LIMIT};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    CompleteGraph,
    Affine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GridPoint {
    pub family: Family,
    pub r: usize,
    pub delta: usize,
    pub t_i: usize,
    pub q: usize,
}

/// Complete-graph designs (`t_i = 2`) for every `r`, affine designs with
/// `t_i ∈ {2, 3}` when `r` is a prime power; each at the smallest admissible
/// field.
pub fn default_grid() -> Vec<GridPoint> {
    let mut grid = Vec::new();
    for r in 2..=4 {
        for delta in [2, 3] {
            let q = smallest_admissible_q(r, delta);
            grid.push(GridPoint {
                family: Family::CompleteGraph,
                r,
                delta,
                t_i: 2,
                q,
            });
            if prime_power(r).is_some() {
                for t_i in [2, 3] {
                    grid.push(GridPoint {
                        family: Family::Affine,
                        r,
                        delta,
                        t_i,
                        q,
                    });
                }
            }
        }
    }
    grid
}

#[derive(Clone, Debug, Serialize)]
pub struct GridResult {
    pub point: GridPoint,
    pub n: usize,
    pub k: usize,
    pub dimension: usize,
    /// `t_i(δ-1)`.
    pub t: usize,
    pub locality_holds: bool,
    pub sequential_holds: bool,
    pub patterns: u64,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl GridResult {
    pub fn passed(&self) -> bool {
        self.locality_holds && self.sequential_holds
    }
}

pub fn run_point(point: GridPoint) -> Result<GridResult> {
    let start = Instant::now();
    let design = match point.family {
        Family::CompleteGraph => complete_graph_design(point.r)?,
        Family::Affine => affine_design(point.r, point.t_i)?,
    };
    let code = construct_code(design, point.delta, point.q, MdsStyle::Vandermonde)?;
    let t = code.layout.t_claim();
    let table = RecoveryTable::build(&code.code, point.r)?;
    let sequential = check_sequential_with(&table, t, DEFAULT_PATTERN_LIMIT)?;
    let locality = check_information_locality(&code)?.structural_holds;
    Ok(GridResult {
        point,
        n: code.layout.n,
        k: code.layout.k,
        dimension: code.code.dimension(),
        t,
        locality_holds: locality,
        sequential_holds: sequential.holds,
        patterns: sequential.patterns_per_size.iter().sum(),
        elapsed: start.elapsed(),
    })
}
