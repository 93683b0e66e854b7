//! Down-conversion of ionizing radiation in a superconducting qubit chip.
//!
//! When a gamma ray or cosmic-ray muon deposits energy in the substrate, the
//! energy ends up as a burst of athermal phonons. Phonons above twice the
//! superconducting gap break Cooper pairs; the resulting quasiparticles shed
//! energy by re-emitting phonons, and the cascade repeats until every phonon
//! is below the pair-breaking threshold. The surviving quasiparticle density
//! poisons qubits by suppressing their relaxation time `T1`.
//!
//! This crate models that chain end to end:
//!
//! * [`materials`]: built-in material parameter sets and unit conventions
//!   (energies in Kelvin, times in ns, lengths in µm).
//! * [`rates`]: single-particle scattering rates of the Kaplan form
//!   (numerical integrals plus their closed-form fits) and power-balance
//!   rates for normal metals, with derived diffusion/interaction lengths.
//! * [`cascade`]: the seeded Monte Carlo down-conversion engine, including
//!   the superconductor/normal-metal bilayer variant.
//! * [`event`]: the five-stage timeline of a radiation event: fireball,
//!   freeze-out, quasiparticle diffusion, recombination/rebreaking, and
//!   phonon escape through the wirebonds.
//! * [`design`]: mitigation estimators: normal-metal participation ratio,
//!   backside-contact damping, and quasiparticle trap sizing.
//! * [`cli`]: the `qpc` command-line front end with CSV/JSON output and a
//!   conformance report against published reference values.
//!
//! # Quick start
//!
//! ```
//! use qpc::cascade::{run_trials, CascadeConfig};
//! use qpc::materials::builtin_material;
//!
//! let al = builtin_material("Al").unwrap();
//! let mut cfg = CascadeConfig::for_gap(al.gap_k);
//! cfg.trials = 200;
//! let res = run_trials(100.0 * al.gap_k, &cfg, 1).unwrap();
//! assert!(res.n_qp_normalized > 0.5 && res.n_qp_normalized < 0.7);
//! ```
//!
//! # Examples
//!
//! Run any of these with `cargo run --release --example <name>`:
//!
//! | example | what it shows |
//! |---------|---------------|
//! | `kaplan_rates` | scattering/pair-breaking integrals next to their fits |
//! | `efficiency_curve` | normalized quasiparticle yield vs initial phonon energy |
//! | `bilayer_sweep` | yield vs normal-metal participation, with the linear fit |
//! | `power_balance` | power-transfer rates and the derived length table |
//! | `radiation_event` | five-stage timelines for present and improved designs |
//! | `phonon_escape` | wirebond escape-rate geometry study |
//! | `mitigation_design` | participation, backside damping, and trap estimates |
//! | `conformance` | full report of computed values vs published references |
//!
//! # Determinism
//!
//! Every Monte Carlo entry point takes a 64-bit seed and derives one
//! counter-indexed random stream per trial, so results are bit-identical
//! across runs and across worker counts.

pub mod cascade;
pub mod cli;
pub mod config;
pub mod design;
pub mod event;
pub mod materials;
pub mod output;
pub mod quad;
pub mod rates;
pub mod report;
pub mod rng;
pub mod sampler;

pub use cascade::{CascadeConfig, CascadeResult};
pub use event::{ChipGeometry, Design, EventConfig, EventTimeline};
pub use materials::MaterialParams;
pub use rates::RateResult;
