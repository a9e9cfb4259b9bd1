//! Adiabatic preparation of the transverse-field Ising ground state.
//!
//! `H(t) = J(t) Σ X_iX_{i+1} + h Σ Z_i`, with `J` ramped linearly from 0 to
//! `jp` over `[0, ramp]` and then held for `tail` more time units. The start
//! state is the ground state of the field term alone: all spins up for
//! `h ≤ 0`, all down otherwise.

use std::io::Write;

use blockcomp_core::export::{lower_to_gates, GateStats, LoweringStyle};
use blockcomp_core::models::{Couplings, Family, ModelSpec, Schedule};
use blockcomp_core::pipeline::{compile, CompressionPath, Target};
use blockcomp_core::sim::{evolve, magnetization, model_ground_state, StateVector, DEFAULT_DENSE_CAP};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub struct AspParams {
    pub n: usize,
    pub h: f64,
    pub jp: f64,
    pub ramp: f64,
    pub tail: f64,
    pub dt: f64,
    pub snap: f64,
}

impl Default for AspParams {
    fn default() -> Self {
        AspParams { n: 5, h: -1.0, jp: -2.0, ramp: 30.0, tail: 10.0, dt: 0.05, snap: 0.5 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub steps: usize,
    pub m_compressed: f64,
    pub m_exact_gs: f64,
    pub m_target: f64,
    pub gates: GateStats,
}

impl AspParams {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |f: &str, v: f64| Err(CliError::Config(format!("`{f}` = {v} is out of range")));
        if self.n < 2 {
            return Err(CliError::Config(format!("`n` must be at least 2, got {}", self.n)));
        }
        if self.n > DEFAULT_DENSE_CAP {
            return Err(CliError::Model(blockcomp_core::Error::CapExceeded { n: self.n, cap: DEFAULT_DENSE_CAP }));
        }
        for (f, v) in [("h", self.h), ("jp", self.jp)] {
            if !v.is_finite() {
                return bad(f, v);
            }
        }
        if !(self.ramp.is_finite() && self.ramp > 0.0) {
            return bad("ramp", self.ramp);
        }
        if !(self.tail.is_finite() && self.tail >= 0.0) {
            return bad("tail", self.tail);
        }
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad("dt", self.dt);
        }
        if !(self.snap.is_finite() && self.snap > 0.0) {
            return bad("snap", self.snap);
        }
        Ok(())
    }

    pub fn end(&self) -> f64 {
        self.ramp + self.tail
    }

    fn couplings(&self, j: f64) -> Couplings {
        let mut c = Couplings::zeros(self.n);
        c.xx = vec![j; self.n - 1];
        c.z = vec![self.h; self.n];
        c
    }

    pub fn model_at(&self, t: f64) -> Result<ModelSpec, CliError> {
        let j = self.jp * (t / self.ramp).clamp(0.0, 1.0);
        Ok(ModelSpec::new(Family::Tfim, self.n, self.couplings(j))?)
    }

    pub fn schedule(&self) -> Schedule {
        let mut knots = vec![(0.0, self.couplings(0.0)), (self.ramp, self.couplings(self.jp))];
        if self.tail > 0.0 {
            knots.push((self.end(), self.couplings(self.jp)));
        }
        Schedule::PiecewiseLinear(knots)
    }

    pub fn initial_state(&self) -> StateVector {
        if self.h <= 0.0 {
            StateVector::zero(self.n)
        } else {
            StateVector::basis(self.n, (1 << self.n) - 1)
        }
    }

    /// Trotter steps that fit in `[0, t]`.
    pub fn steps_for(&self, t: f64) -> usize {
        (t / self.dt + 1e-9).floor() as usize
    }

    /// Snapshot times `0, snap, 2·snap, …` up to the end of the tail.
    pub fn snapshot_times(&self) -> Vec<f64> {
        let count = (self.end() / self.snap + 1e-9).floor() as usize;
        (0..=count).map(|k| k as f64 * self.snap).collect()
    }

    /// Magnetization after compressing and simulating `[0, t]`.
    pub fn compressed_magnetization(&self, t: f64) -> Result<(f64, usize, GateStats), CliError> {
        let steps = self.steps_for(t);
        let mut state = self.initial_state();
        if steps == 0 {
            return Ok((magnetization(&state), 0, GateStats::default()));
        }
        let model = self.model_at(0.0)?;
        let c = compile(&model, &self.schedule(), self.dt, steps, Target::Tfxy, CompressionPath::TimeDependent)?;
        evolve(&mut state, &c.square_parts())?;
        let gates = lower_to_gates(&c.square_parts(), LoweringStyle::Cnot)?.stats();
        Ok((magnetization(&state), steps, gates))
    }

    pub fn ground_magnetization(&self, t: f64) -> Result<f64, CliError> {
        let gs = model_ground_state(&self.model_at(t)?, DEFAULT_DENSE_CAP)?;
        Ok(magnetization(&gs.state))
    }

    /// `|m(end) − m_gs(H_P)|`.
    pub fn final_deviation(&self) -> Result<f64, CliError> {
        self.validate()?;
        let (m, ..) = self.compressed_magnetization(self.end())?;
        Ok((m - self.ground_magnetization(self.end())?).abs())
    }

    /// Every snapshot, compiled independently from `t = 0`. Snapshots run on
    /// worker threads; the result is in time order either way.
    pub fn run(&self) -> Result<Vec<Snapshot>, CliError> {
        self.validate()?;
        let m_target = self.ground_magnetization(self.end())?;
        let times = self.snapshot_times();
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(times.len());
        let mut slots: Vec<Option<Result<Snapshot, CliError>>> = (0..times.len()).map(|_| None).collect();
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|w| {
                    let times = &times;
                    s.spawn(move || {
                        (w..times.len())
                            .step_by(workers)
                            .map(|k| {
                                let t = times[k];
                                let snap = self.compressed_magnetization(t).and_then(|(m, steps, gates)| {
                                    Ok(Snapshot {
                                        t,
                                        steps,
                                        m_compressed: m,
                                        m_exact_gs: self.ground_magnetization(t)?,
                                        m_target,
                                        gates,
                                    })
                                });
                                (k, snap)
                            })
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (k, snap) in h.join().expect("snapshot worker panicked") {
                    slots[k] = Some(snap);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("every snapshot computed")).collect()
    }
}

pub fn write_csv<W: Write>(out: W, snaps: &[Snapshot]) -> Result<(), CliError> {
    let io = |e: csv::Error| CliError::Io(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "m_compressed", "m_exact_instantaneous_gs", "m_target_final"]).map_err(io)?;
    for s in snaps {
        w.write_record([
            format!("{}", s.t),
            format!("{:.12}", s.m_compressed),
            format!("{:.12}", s.m_exact_gs),
            format!("{:.12}", s.m_target),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))
}
