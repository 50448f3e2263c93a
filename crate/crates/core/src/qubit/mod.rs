//! Concrete finite-dimensional realizations of the observables.

mod exact;
mod file;
mod represent;
mod system;

pub use exact::{exact_apply, operator_images};
pub use file::{system_from_json, system_to_json};
pub use represent::{apply, classical_value, deterministic_system, expectation, represent};
pub use system::{pauli_x, pauli_y, pauli_z, QubitSystem, MAX_LOCAL_DIM};
