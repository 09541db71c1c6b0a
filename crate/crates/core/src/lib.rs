//! Sequential locally recoverable codes over GF(q).
//!
//! Builds parity-check matrices from a local MDS code and a regular
//! incidence structure of girth at least 4, then certifies sequential
//! recovery exhaustively and exercises it with seeded repair simulations.
//!
//! ```
//! use slrc::{build_mds_parity, build_parity_check, complete_graph_design, ConstructionParams, Field, MdsStyle};
//!
//! let field = Field::new(2, 2).unwrap();
//! let mds = build_mds_parity(3, 3, &field, MdsStyle::Vandermonde).unwrap();
//! let params = ConstructionParams::new(complete_graph_design(3).unwrap(), mds).unwrap();
//! let code = build_parity_check(&params).unwrap();
//! assert_eq!((code.layout.n, code.code.dimension()), (16, 6));
//! ```

pub mod bounds;
pub mod code;
pub mod combinatorics;
pub mod construct;
pub mod design;
pub mod error;
pub mod gf;
pub mod io;
pub mod labels;
pub mod matrix;
pub mod mds;
pub mod simulate;
pub mod sweep;
pub mod verify;
pub mod worked_example;

pub use bounds::{exact_rate, rate_report, RateReport, Rational};
pub use code::{
    dual_low_weight, is_recovery_set, min_distance, puncture, recovery_sets_for, Distance, LinearCode, RecoverySet,
    RecoveryTable,
};
pub use construct::{
    build_parity_check, code_params, encode, CodeLayout, ConstructedCode, ConstructionParams, CoordinateRole,
};
pub use design::{affine_design, complete_graph_design, load_design, validate_design, Design};
pub use error::{Error, Result};
pub use gf::{Field, FieldElement, FieldSpec};
pub use io::MatrixFile;
pub use matrix::Matrix;
pub use mds::{build_mds_parity, verify_mds, MdsLocalMatrix, MdsStyle};
pub use simulate::{execute_repair, plan_repair, trial_campaign, PatternSize, RepairPlan, RepairSchedule};
pub use verify::{check_information_locality, check_lemma2, check_sequential, max_sequential_t, VerificationReport};
