//! Relative-entropy quantifiers of two-qubit correlations.
//!
//! Everything is measured with one yardstick — the quantum relative
//! entropy S(rho || sigma) in bits — against nested comparison sets:
//! incoherent states (coherence), classically correlated states
//! (discord), separable states (entanglement), unsteerable states
//! (two-projective-measurement scenario), and CHSH-local states. On the
//! Bell-diagonal tetrahedron all of these are either closed-form
//! ([`bell`]) or tightly bounded by independent optimizers
//! ([`variational`]), which double as cross-checks on each other.
//!
//! The `qcorr` binary exposes per-state reports, CSV grid sweeps over
//! (c1, c2) slices, and seeded verification suites; see README.md.
//!
//! Heavy loops (sweeps, suites, optimizer restarts) run data-parallel by
//! default; build with `--no-default-features` for a strictly sequential
//! core. Either way results are bit-identical: work is indexed, RNG
//! streams are per-index, and reductions are ordered.

// index-symmetric matrix kernels read better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod bell;
pub mod divergences;
pub mod error;
pub mod input;
pub mod linalg;
pub mod states;
pub mod suites;
pub mod sweep;
pub mod util;
pub mod variational;

pub use bell::{
    chsh_violating, coherence_bd, coherence_minus_discord_bd, discord_bd, entanglement_bd,
    measure_report, nearest_separable_bd, pure_state_measures, steerable_two_pm, MeasureReport,
};
pub use divergences::{bures_distance, fidelity, relative_entropy, DivergenceValue};
pub use error::{Error, Result};
pub use input::{parse_state_input, StateInput};
pub use linalg::{partial_trace, tensor_product, Mat2, Mat4, Subsystem, C64};
pub use states::{BellDiagonalState, DensityMatrix, PureSchmidtState};
pub use suites::{run_suite, steering_grid_oracle, SuiteResult};
pub use sweep::{sweep_grid, sweep_grid_serial, SweepQuantity, SweepSpec};
pub use variational::{
    discord_variational, nonlocality_bound_bd, ree_upper_bound, steering_bound_bd, OptimizerConfig,
};
