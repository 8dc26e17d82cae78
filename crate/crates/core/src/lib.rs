//! Bit-exact software model of a 32-bit Q16.16 fixed-point logistic map
//! datapath, its rounding-mode-configurable multiply-convert units, and the
//! four-state control unit that sequences whole orbit runs, plus the offline
//! analysis (Lyapunov exponent, rounding-mode divergence) of the orbits it
//! produces.
//!
//! The crate is organized around the hardware it mirrors:
//!
//! - [`fix`] — the Q16.16 word, widening multiplies (monolithic and
//!   decomposed into 16-bit partial products) and the saturating, flagging
//!   64-to-32 conversion.
//! - [`map`] — one map iteration as two chained multiply-convert stages,
//!   and whole orbits.
//! - [`sim`] — the cycle-level control FSM with its 11-bit iteration
//!   counter; a proven refinement of [`map::run_orbit`].
//! - [`analysis`] — Lyapunov exponent and orbit divergence, in doubles.
//! - [`decimal`] / [`export`] — exact decimal I/O and the frozen CSV/JSON
//!   schemas.

pub mod analysis;
pub mod decimal;
pub mod error;
pub mod export;
pub mod fix;
pub mod map;
pub mod sim;

pub use analysis::{DivergenceProfile, DivergenceRow, LyapunovEstimate};
pub use error::{Error, Result};
pub use fix::{
    convert, mul_convert, mul_wide, mul_wide_decomposed, Fix32, Flagged, RoundMode, Wide64,
};
pub use map::{iterate_once, run_orbit, IterationRecord, MapParams, Orbit, StepResult};
pub use sim::{fsm_step, run_sim, FsmState, SimConfig, SimInputs, SimState, TraceEvent};
