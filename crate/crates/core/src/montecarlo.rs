//! Single-shot readout: Born-rule sampling of dot-1 occupancy followed by an
//! imperfect charge detector.
//!
//! Shots are drawn in fixed-size batches. Batch `k` uses a ChaCha stream keyed
//! by `(seed, k)`, so serial and parallel execution produce identical counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::GateParams;
use crate::error::{Error, Result};
use crate::hilbert::{Mode, SpinInput};
use crate::protocol;

/// Shots per RNG substream.
pub const SHOT_BATCH: u64 = 4096;

/// Binary charge detector on dot 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectorModel {
    efficiency: f64,
    false_positive: f64,
}

fn check_probability(field: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::OutOfRange {
            field,
            value,
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

impl DetectorModel {
    pub fn new(efficiency: f64, false_positive: f64) -> Result<Self> {
        check_probability("efficiency", efficiency)?;
        check_probability("false_positive", false_positive)?;
        Ok(Self {
            efficiency,
            false_positive,
        })
    }

    pub fn ideal() -> Self {
        Self {
            efficiency: 1.0,
            false_positive: 0.0,
        }
    }

    pub fn efficiency(&self) -> f64 {
        self.efficiency
    }

    pub fn false_positive(&self) -> f64 {
        self.false_positive
    }
}

impl Default for DetectorModel {
    fn default() -> Self {
        Self::ideal()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotRecord {
    pub shots: u64,
    pub detected_dot1: u64,
    pub seed: u64,
    pub estimated_p_up: f64,
}

/// Probability that the detector reports a charge on dot 1.
pub fn effective_outcome_probability(p_occupied: f64, detector: &DetectorModel) -> Result<f64> {
    check_probability("p_occupied", p_occupied)?;
    Ok(p_occupied * detector.efficiency + (1.0 - p_occupied) * detector.false_positive)
}

/// Analytic dot-1 occupancy after the two-dot sequence.
pub fn occupied_probability(input: &SpinInput, params: &GateParams) -> f64 {
    let out = protocol::output_state(input, params);
    out.occupancy(Mode::Dot1)
        .expect("two-dot layout has dot 1")
        .clamp(0.0, 1.0)
}

pub fn sample_readout(
    input: &SpinInput,
    params: &GateParams,
    shots: u64,
    seed: u64,
    detector: &DetectorModel,
) -> Result<ShotRecord> {
    params.validate()?;
    let p = occupied_probability(input, params);
    sample_occupancy(p, shots, seed, detector, true)
}

/// Draws `shots` readouts of a dot whose occupancy probability is
/// `p_occupied`. `parallel` only changes scheduling, never the result.
pub fn sample_occupancy(
    p_occupied: f64,
    shots: u64,
    seed: u64,
    detector: &DetectorModel,
    parallel: bool,
) -> Result<ShotRecord> {
    if shots == 0 {
        return Err(Error::NoShots);
    }
    check_probability("p_occupied", p_occupied)?;
    let batches = shots.div_ceil(SHOT_BATCH);
    let run = |batch: u64| {
        let len = SHOT_BATCH.min(shots - batch * SHOT_BATCH);
        sample_batch(p_occupied, len, seed, batch, detector)
    };
    let detected_dot1: u64 = if parallel {
        (0..batches).into_par_iter().map(run).sum()
    } else {
        (0..batches).map(run).sum()
    };
    Ok(ShotRecord {
        shots,
        detected_dot1,
        seed,
        estimated_p_up: detected_dot1 as f64 / shots as f64,
    })
}

fn sample_batch(p: f64, len: u64, seed: u64, batch: u64, detector: &DetectorModel) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    let mut hits = 0;
    for _ in 0..len {
        let occupied = rng.gen_bool(p);
        let report = if occupied {
            rng.gen_bool(detector.efficiency)
        } else {
            rng.gen_bool(detector.false_positive)
        };
        hits += u64::from(report);
    }
    hits
}
