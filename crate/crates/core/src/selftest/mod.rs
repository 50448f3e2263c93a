//! Robustness bounds derived from the certificates and their empirical check
//! through the swap isometry on concrete systems.

mod bounds;
mod checks;
mod isometry;
mod noise;

pub use bounds::{
    bound_sweep, bound_sweep_header, bound_sweep_row, delta_family, parse_grid, slot, DeltaFamily,
};
pub use checks::{
    measured_epsilon, regularized_norm_bounds, self_test, sos_norm_bounds, BoundCheck,
    SelfTestReport, CHECK_SLACK,
};
pub use isometry::{
    attach_ancilla, regularize, swap_isometry, IsometryOutput, LocalOps, ReferencePair,
    SwapIsometry, JUNK_NORM_FLOOR, ZERO_EIGENVALUE,
};
pub use noise::{noise_sweep, noisy_system, NoiseModel, SweepEntry, NOISE_MODELS};
