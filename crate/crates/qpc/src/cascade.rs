//! Monte Carlo down-conversion engine.
//!
//! A trial starts from one phonon and repeatedly applies the branching
//! rules until nothing can source a pair-breaking phonon any more:
//!
//! * a phonon above twice the gap breaks a Cooper pair (superconductor) or
//!   excites an electron pair (normal metal);
//! * a quasiparticle that could still emit a pair-breaking phonon
//!   (energy above the freeze threshold, default 3 gap) emits one phonon;
//! * an electron above the drop threshold (default 2 gap) emits one phonon.
//!
//! Quasiparticles below the freeze threshold can only emit sub-gap phonons
//! on their way down to the gap, which changes no counts; that relaxation
//! is tallied analytically (the quasiparticle books the gap energy, the
//! rest goes to the sub-gap phonon ledger). Scattering *rates* never enter:
//! the final counts depend only on the branching ratios, so the cascade is
//! pure sampling.
//!
//! For a superconductor/normal-metal bilayer, the down-conversion medium is
//! drawn once per trial with probability equal to the participation ratio.
//! The mean quasiparticle yield is then exactly linear in participation,
//! which is what the bilayer simulations show; drawing a fresh medium for
//! every absorption event produces a visibly convex curve instead and is
//! rejected on that evidence.

use crate::design::participation_ratio;
use crate::rng::RunRng;
pub use crate::sampler::{sample_electron_emission, sample_pairbreak_split, sample_qp_emission};

use crate::sampler::{sample_electron_split, SampleError};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CascadeError {
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("cascade at {ep_k} K exceeded the iteration cap of {cap} steps")]
    IterationCap { ep_k: f64, cap: u64 },
    #[error("invalid cascade config: {0}")]
    BadConfig(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Phonon,
    Quasiparticle,
    Electron,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Medium {
    Superconductor,
    Normal,
}

/// One excitation in flight during a trial.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Excitation {
    pub kind: Kind,
    pub energy_k: f64,
    pub medium: Medium,
}

#[derive(Debug, Clone, Serialize)]
pub struct CascadeConfig {
    pub gap_k: f64,
    /// Probability that a trial's down-conversion lands in the
    /// superconductor rather than the normal metal.
    pub participation_s: f64,
    pub trials: u64,
    pub seed: u64,
    /// Quasiparticles at or below this stop branching (default 3 gap; a
    /// lower value cannot change any count, only waste work).
    pub qp_freeze_threshold_k: f64,
    /// Electrons at or below this are dropped to the electron ledger
    /// (default 2 gap; they can no longer source a pair-breaking phonon).
    pub electron_drop_threshold_k: f64,
    /// Thickness weighting of the participation formula.
    pub participation_constant: f64,
}

impl CascadeConfig {
    /// Defaults for a pure superconductor with the given gap.
    pub fn for_gap(gap_k: f64) -> Self {
        CascadeConfig {
            gap_k,
            participation_s: 1.0,
            trials: 10_000,
            seed: crate::rng::DEFAULT_SEED,
            qp_freeze_threshold_k: 3.0 * gap_k,
            electron_drop_threshold_k: 2.0 * gap_k,
            participation_constant: 1.65,
        }
    }

    fn validate(&self) -> Result<(), CascadeError> {
        if !(self.gap_k > 0.0) {
            return Err(CascadeError::BadConfig("gap_k must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.participation_s) {
            return Err(CascadeError::BadConfig(
                "participation_s must lie in [0, 1]".into(),
            ));
        }
        if self.trials < 1 {
            return Err(CascadeError::BadConfig("trials must be at least 1".into()));
        }
        if self.qp_freeze_threshold_k < 3.0 * self.gap_k {
            return Err(CascadeError::BadConfig(
                "qp freeze threshold below 3 gap would drop pair-breaking phonons".into(),
            ));
        }
        if self.electron_drop_threshold_k < 2.0 * self.gap_k {
            return Err(CascadeError::BadConfig(
                "electron drop threshold below 2 gap would drop pair-breaking phonons".into(),
            ));
        }
        Ok(())
    }
}

/// Energy books of a single trial. The three ledgers sum to the initial
/// phonon energy up to floating-point roundoff.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrialLedger {
    /// Frozen quasiparticle count (always even).
    pub n_qp: u64,
    /// Energy booked at the gap by frozen quasiparticles.
    pub energy_qp_k: f64,
    /// Energy in phonons that can never break a pair again.
    pub energy_subgap_k: f64,
    /// Energy dropped to normal-metal electrons.
    pub energy_electron_k: f64,
}

impl TrialLedger {
    pub fn conservation_residual(&self, ep_k: f64) -> f64 {
        ((self.energy_qp_k + self.energy_subgap_k + self.energy_electron_k) - ep_k).abs() / ep_k
    }
}

fn iteration_cap(ep_k: f64, gap_k: f64) -> u64 {
    10_000 + 200 * (ep_k / gap_k).ceil() as u64
}

/// Run one trial in a fixed medium.
fn cascade_in_medium(
    ep_k: f64,
    cfg: &CascadeConfig,
    medium: Medium,
    rng: &mut impl Rng,
) -> Result<TrialLedger, CascadeError> {
    let gap = cfg.gap_k;
    let pair_threshold = 2.0 * gap;
    let cap = iteration_cap(ep_k, gap);
    let mut steps = 0u64;
    let mut ledger = TrialLedger::default();
    // (kind, energy) work list; the whole trial shares one medium
    let mut work: Vec<(Kind, f64)> = vec![(Kind::Phonon, ep_k)];
    while let Some((kind, energy)) = work.pop() {
        steps += 1;
        if steps > cap {
            return Err(CascadeError::IterationCap { ep_k, cap });
        }
        match kind {
            Kind::Phonon => {
                if energy <= pair_threshold {
                    ledger.energy_subgap_k += energy;
                } else {
                    match medium {
                        Medium::Superconductor => {
                            let (a, b) = sample_pairbreak_split(energy, gap, rng)?;
                            work.push((Kind::Quasiparticle, a));
                            work.push((Kind::Quasiparticle, b));
                        }
                        Medium::Normal => {
                            let (a, b) = sample_electron_split(energy, rng);
                            work.push((Kind::Electron, a));
                            work.push((Kind::Electron, b));
                        }
                    }
                }
            }
            Kind::Quasiparticle => {
                if energy <= cfg.qp_freeze_threshold_k {
                    // relaxation to the gap emits only sub-gap phonons
                    ledger.n_qp += 1;
                    ledger.energy_qp_k += gap;
                    ledger.energy_subgap_k += energy - gap;
                } else {
                    let (qp, phonon) = sample_qp_emission(energy, gap, rng)?;
                    work.push((Kind::Quasiparticle, qp));
                    work.push((Kind::Phonon, phonon));
                }
            }
            Kind::Electron => {
                if energy <= cfg.electron_drop_threshold_k {
                    ledger.energy_electron_k += energy;
                } else {
                    let (electron, phonon) = sample_electron_emission(energy, rng)?;
                    work.push((Kind::Electron, electron));
                    work.push((Kind::Phonon, phonon));
                }
            }
        }
    }
    Ok(ledger)
}

/// Run a single trial: draw the medium (superconductor with probability
/// `participation_s`), then cascade in it.
pub fn run_cascade(
    ep_k: f64,
    cfg: &CascadeConfig,
    rng: &mut impl Rng,
) -> Result<TrialLedger, CascadeError> {
    cfg.validate()?;
    let medium = if cfg.participation_s >= 1.0 {
        Medium::Superconductor
    } else if rng.gen::<f64>() < cfg.participation_s {
        Medium::Superconductor
    } else {
        Medium::Normal
    };
    cascade_in_medium(ep_k, cfg, medium, rng)
}

/// Ensemble statistics over many trials.
#[derive(Debug, Clone, Serialize)]
pub struct CascadeResult {
    pub ep_k: f64,
    pub gap_k: f64,
    pub participation_s: f64,
    pub trials: u64,
    /// Mean frozen quasiparticle count per trial.
    pub n_qp_mean: f64,
    /// Mean of n_qp / (E_p/gap), the normalized yield.
    pub n_qp_normalized: f64,
    pub n_qp_norm_stderr: f64,
    /// Mean energy per trial booked by each ledger, in K.
    pub energy_in_qp_k: f64,
    pub energy_in_subgap_phonons_k: f64,
    pub energy_in_electrons_k: f64,
    /// Worst per-trial conservation residual, relative to E_p.
    pub conservation_residual: f64,
    #[serde(skip)]
    pub per_trial_counts: Vec<u64>,
}

impl CascadeResult {
    pub fn e_qp_frac(&self) -> f64 {
        self.energy_in_qp_k / self.ep_k
    }
    pub fn e_subgap_frac(&self) -> f64 {
        self.energy_in_subgap_phonons_k / self.ep_k
    }
    pub fn e_electron_frac(&self) -> f64 {
        self.energy_in_electrons_k / self.ep_k
    }
}

fn aggregate(ep_k: f64, cfg: &CascadeConfig, ledgers: Vec<TrialLedger>) -> CascadeResult {
    let trials = ledgers.len() as u64;
    let max_count = ep_k / cfg.gap_k;
    let mut sum_n = 0.0;
    let mut sum_norm = 0.0;
    let mut sum_norm_sq = 0.0;
    let mut sum_qp = 0.0;
    let mut sum_sub = 0.0;
    let mut sum_el = 0.0;
    let mut worst = 0.0f64;
    let mut counts = Vec::with_capacity(ledgers.len());
    // fixed-order reduction: identical bytes regardless of worker count
    for l in &ledgers {
        let norm = l.n_qp as f64 / max_count;
        sum_n += l.n_qp as f64;
        sum_norm += norm;
        sum_norm_sq += norm * norm;
        sum_qp += l.energy_qp_k;
        sum_sub += l.energy_subgap_k;
        sum_el += l.energy_electron_k;
        worst = worst.max(l.conservation_residual(ep_k));
        counts.push(l.n_qp);
    }
    let n = trials as f64;
    let mean_norm = sum_norm / n;
    let var = if trials > 1 {
        ((sum_norm_sq - n * mean_norm * mean_norm) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    CascadeResult {
        ep_k,
        gap_k: cfg.gap_k,
        participation_s: cfg.participation_s,
        trials,
        n_qp_mean: sum_n / n,
        n_qp_normalized: mean_norm,
        n_qp_norm_stderr: (var / n).sqrt(),
        energy_in_qp_k: sum_qp / n,
        energy_in_subgap_phonons_k: sum_sub / n,
        energy_in_electrons_k: sum_el / n,
        conservation_residual: worst,
        per_trial_counts: counts,
    }
}

/// Run `cfg.trials` independent trials at one initial phonon energy.
///
/// Trial `i` always consumes random stream `i` of the seeded generator, so
/// the result is bit-identical for any `workers` count. `workers == 0`
/// means use all available cores.
pub fn run_trials(ep_k: f64, cfg: &CascadeConfig, workers: usize) -> Result<CascadeResult, CascadeError> {
    cfg.validate()?;
    if !(ep_k > 0.0) {
        return Err(CascadeError::BadConfig(
            "initial phonon energy must be positive".into(),
        ));
    }
    let root = RunRng::from_seed(cfg.seed);
    let ledgers: Result<Vec<TrialLedger>, CascadeError> = if workers == 1 {
        (0..cfg.trials)
            .map(|i| {
                let mut rng = root.trial_stream(i);
                run_cascade(ep_k, cfg, &mut rng)
            })
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CascadeError::BadConfig(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..cfg.trials)
                .into_par_iter()
                .map(|i| {
                    let mut rng = root.trial_stream(i);
                    run_cascade(ep_k, cfg, &mut rng)
                })
                .collect()
        })
    };
    Ok(aggregate(ep_k, cfg, ledgers?))
}

/// Bilayer run: participation is computed from the film thicknesses with
/// the weighting `t_s / (t_s + c * t_n)`.
pub fn run_cascade_bilayer(
    ep_k: f64,
    ts_um: f64,
    tn_um: f64,
    cfg: &CascadeConfig,
    workers: usize,
) -> Result<CascadeResult, CascadeError> {
    if ts_um < 0.0 || tn_um < 0.0 || (ts_um == 0.0 && tn_um == 0.0) {
        return Err(CascadeError::BadConfig(
            "film thicknesses must be non-negative and not both zero".into(),
        ));
    }
    let mut cfg = cfg.clone();
    cfg.participation_s = participation_ratio(ts_um, tn_um, cfg.participation_constant);
    run_trials(ep_k, &cfg, workers)
}

/// Monte Carlo means over a grid of initial energies, in units of the gap.
pub fn efficiency_curve(
    ep_over_gap_grid: &[f64],
    cfg: &CascadeConfig,
    workers: usize,
) -> Result<Vec<CascadeResult>, CascadeError> {
    ep_over_gap_grid
        .iter()
        .map(|&x| run_trials(x * cfg.gap_k, cfg, workers))
        .collect()
}

// ================================================================
// tests
// ================================================================
