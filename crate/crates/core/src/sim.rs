//! Cycle-level model of the control unit: a four-state FSM, the 11-bit
//! iteration counter, and the X register with its multiplexed feedback path.
//!
//! The simulator is a refinement of [`crate::map::run_orbit`], not a second
//! model: the sequence of register load events is bit-identical to the pure
//! orbit for every valid configuration, independent of the configured
//! datapath latency. Two modeling choices differ from silicon and are noted
//! in the trace header: the half-cycle completion pulse is stretched to one
//! full cycle, and the asynchronous reset is sampled at cycle boundaries.

use std::fmt;

use crate::error::{Error, Result};
use crate::fix::Fix32;
use crate::map::{self, IterationRecord, MapParams, Orbit, StepResult};

/// Widest iteration count the 11-bit counter can express.
pub const IT_MAX_LIMIT: u16 = 2047;

/// Default datapath latency in cycles: two per multiply-convert stage.
pub const DEFAULT_LATENCY: u32 = 4;

/// Control-unit states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FsmState {
    Idle,
    Op,
    DoneIt,
    DoneAll,
}

impl FsmState {
    pub const fn name(self) -> &'static str {
        match self {
            FsmState::Idle => "idle",
            FsmState::Op => "op",
            FsmState::DoneIt => "done_it",
            FsmState::DoneAll => "done_all",
        }
    }
}

impl fmt::Display for FsmState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Simulation configuration: map parameters plus the control-unit knobs.
#[derive(Clone, Copy, Debug)]
pub struct SimConfig {
    pub params: MapParams,
    /// Iteration target loaded into the comparator; capped by the 11-bit
    /// counter. Supersedes `params.n_iter` on the simulation path.
    pub it_max: u16,
    /// Cycles one full iteration occupies in the op state.
    pub datapath_latency: u32,
}

impl SimConfig {
    pub fn new(params: MapParams, it_max: u16, datapath_latency: u32) -> Result<SimConfig> {
        let config = SimConfig {
            params,
            it_max,
            datapath_latency,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.it_max > IT_MAX_LIMIT {
            return Err(Error::Config(format!(
                "it_max = {} exceeds the 11-bit iteration counter (0..=2047)",
                self.it_max
            )));
        }
        if self.datapath_latency == 0 {
            return Err(Error::Config("datapath_latency must be at least 1".into()));
        }
        self.params.validate()
    }
}

/// Inputs sampled at each cycle boundary.
#[derive(Clone, Copy, Debug, Default)]
pub struct SimInputs {
    pub start: bool,
    pub reset: bool,
}

/// Registered state as observed during one clock cycle.
#[derive(Clone, Copy, Debug)]
pub struct SimState {
    pub fsm: FsmState,
    /// 11-bit iteration counter; never exceeds [`IT_MAX_LIMIT`].
    pub counter: u16,
    pub x_reg: Fix32,
    /// Datapath enable; high while a run is in progress.
    pub ready: bool,
    /// One-cycle pulse marking a completed iteration (the o_done signal).
    pub done_pulse: bool,
    /// One-cycle pulse marking a completed run.
    pub done_all: bool,
    pub cycle: u64,
    /// Iteration result loaded into the X register on this cycle, if any.
    pub completed: Option<StepResult>,
    op_elapsed: u32,
}

impl SimState {
    /// The reset/idle state: counter and handshakes cleared, X register
    /// routed from the initial condition.
    pub fn idle(cycle: u64, config: &SimConfig) -> SimState {
        SimState {
            fsm: FsmState::Idle,
            counter: 0,
            x_reg: config.params.x0,
            ready: false,
            done_pulse: false,
            done_all: false,
            cycle,
            completed: None,
            op_elapsed: 0,
        }
    }
}

/// Advances the machine by one clock cycle. Total on valid states.
pub fn fsm_step(state: &SimState, inputs: SimInputs, config: &SimConfig) -> SimState {
    let cycle = state.cycle + 1;
    if inputs.reset {
        return SimState::idle(cycle, config);
    }
    match state.fsm {
        FsmState::Idle => {
            if inputs.start {
                op_row(state.x_reg, state.counter, 1, cycle, config)
            } else {
                SimState::idle(cycle, config)
            }
        }
        FsmState::Op => {
            if state.done_pulse {
                // Pulse consumed; bridge to the next iteration.
                SimState {
                    fsm: FsmState::DoneIt,
                    done_pulse: false,
                    completed: None,
                    op_elapsed: 0,
                    cycle,
                    ..*state
                }
            } else if state.counter == config.it_max {
                SimState {
                    fsm: FsmState::DoneAll,
                    ready: false,
                    done_all: true,
                    completed: None,
                    op_elapsed: 0,
                    cycle,
                    ..*state
                }
            } else {
                op_row(
                    state.x_reg,
                    state.counter,
                    state.op_elapsed + 1,
                    cycle,
                    config,
                )
            }
        }
        FsmState::DoneIt => op_row(state.x_reg, state.counter, 1, cycle, config),
        FsmState::DoneAll => SimState::idle(cycle, config),
    }
}

/// Produces the k-th op cycle of the current iteration. The final one loads
/// the X register, increments the counter and raises the completion pulse,
/// all on the same cycle.
fn op_row(x: Fix32, counter: u16, k: u32, cycle: u64, config: &SimConfig) -> SimState {
    let completing = counter < config.it_max && k == config.datapath_latency;
    if completing {
        let step = map::step_unchecked(x, config.params.r, config.params.mode);
        SimState {
            fsm: FsmState::Op,
            counter: counter + 1,
            x_reg: step.value,
            ready: true,
            done_pulse: true,
            done_all: false,
            cycle,
            completed: Some(step),
            op_elapsed: k,
        }
    } else {
        SimState {
            fsm: FsmState::Op,
            counter,
            x_reg: x,
            ready: true,
            done_pulse: false,
            done_all: false,
            cycle,
            completed: None,
            op_elapsed: k,
        }
    }
}

/// One trace row per clock cycle. `o_over`/`o_under` show the flags of an
/// iteration completed on that cycle and are low otherwise.
#[derive(Clone, Copy, Debug)]
pub struct TraceEvent {
    pub cycle: u64,
    pub fsm: FsmState,
    pub counter: u16,
    pub ready: bool,
    pub o_done: bool,
    pub done_all: bool,
    pub x: Fix32,
    pub o_over: bool,
    pub o_under: bool,
}

impl TraceEvent {
    fn from_state(state: &SimState) -> TraceEvent {
        let (o_over, o_under) = state
            .completed
            .map(|s| (s.overflow, s.underflow))
            .unwrap_or((false, false));
        TraceEvent {
            cycle: state.cycle,
            fsm: state.fsm,
            counter: state.counter,
            ready: state.ready,
            o_done: state.done_pulse,
            done_all: state.done_all,
            x: state.x_reg,
            o_over,
            o_under,
        }
    }
}

/// Drives the machine from idle with start asserted until the run completes,
/// collecting the orbit of register load events and the per-cycle trace.
pub fn run_sim(config: &SimConfig) -> Result<(Orbit, Vec<TraceEvent>)> {
    config.validate()?;
    let mut state = SimState::idle(0, config);
    let mut trace = vec![TraceEvent::from_state(&state)];
    let mut records = Vec::with_capacity(config.it_max as usize + 1);
    records.push(IterationRecord {
        n: 0,
        x: config.params.x0,
        overflow: false,
        underflow: false,
    });
    let inputs = SimInputs {
        start: true,
        reset: false,
    };
    loop {
        let finishing = state.fsm == FsmState::DoneAll;
        state = fsm_step(&state, inputs, config);
        if let Some(step) = state.completed {
            records.push(IterationRecord {
                n: u32::from(state.counter),
                x: step.value,
                overflow: step.overflow,
                underflow: step.underflow,
            });
        }
        trace.push(TraceEvent::from_state(&state));
        if finishing {
            // The post-run idle row has just been recorded.
            break;
        }
    }
    let params = MapParams {
        n_iter: u32::from(config.it_max),
        ..config.params
    };
    Ok((Orbit { params, records }, trace))
}
