//! Time integration of the nonlinear equation, conserved quantities, initial
//! data, and the vector-field diagnostics.

pub mod checkpoint;
pub mod diagnostics;
pub mod initial;
pub mod invariants;
pub mod state;
pub mod stepper;

pub use diagnostics::{vector_field_y, vector_field_y_conjugated, x_norm};
pub use initial::{initial_data, InitialShape};
pub use invariants::{hamiltonian, mass, InvariantLedger, InvariantSample};
pub use state::{
    geometric_times, run, run_with, uniform_times, DiagnosticSample, Flow, SimulationState, Trajectory,
    TrajectorySample, DEFAULT_T0,
};
pub use stepper::{IfRk4, CFL_NUMBER};
