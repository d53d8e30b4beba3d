//! Run configuration, decay-envelope verification, ε-sweeps and report output.

pub mod config;
pub mod decay;
pub mod output;
pub mod runs;
pub mod sweep;

pub use config::{Check, ConservationLimits, GridSpec, Perturbation, RunConfig, SampleSchedule, SweepConfig, CONFIG_VERSION};
pub use decay::{
    check_linear_decay, check_lp_decay, check_nonlinear_decay, decay_envelope, detect_breakdown, elliptic_envelope,
    elliptic_exponent, fbd_constant, lp_condition, lp_exponent, measure, monitor_nonlinear_decay, oscillatory_exponent,
    Breakdown, DecayOptions, DecayReport, DecayRow, ExponentFit, LpReport, BREAKDOWN_FACTOR,
};
pub use sweep::{epsilon_sweep, predicted_slope, SweepReport, SweepRow, SweepSetup, GROWTH_FACTOR};
pub use runs::{decay, profile_run, profile_times, simulate, sweep, DecayOutcome, GaugeRow, ProfileOutcome, SampleRow, SimulationOutcome, RESIDUAL_FACTOR};
