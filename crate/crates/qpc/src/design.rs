//! Mitigation estimates: normal-metal layers, lossy backside grounds, and
//! quasiparticle traps.
//!
//! These are closed-form design aids, not simulations. They answer how
//! much of the down-conversion a normal layer soaks up, how lossy a
//! backside ground plane can be before it limits the qubit, and how fast
//! a lower-gap trap layer absorbs quasiparticles.

use serde::Serialize;
use std::f64::consts::PI;

/// Thickness weighting of the normal metal in the participation formula.
/// Per micrometer, the normal layer absorbs this much more of the
/// down-converting phonon flux than the superconductor.
pub const PARTICIPATION_CONSTANT: f64 = 1.65;

/// Fraction of down-conversion events that land in the superconducting
/// film of a superconductor/normal bilayer.
pub fn participation_ratio(ts_um: f64, tn_um: f64, constant: f64) -> f64 {
    ts_um / (ts_um + constant * tn_um)
}

// ================================================================
// lossy backside metallization
// ================================================================

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BacksideCircuit {
    /// Effective series resistance of the backside ground plane.
    pub r_eff_ohm: f64,
    pub qubit_c_ff: f64,
    /// Fraction of the qubit field that couples to the backside.
    pub coupling_fraction: f64,
    pub f_ghz: f64,
    /// Series inductance of the ground return path.
    pub series_l_nh: f64,
}

impl Default for BacksideCircuit {
    fn default() -> Self {
        BacksideCircuit {
            r_eff_ohm: 6.0,
            qubit_c_ff: 100.0,
            coupling_fraction: 0.2,
            f_ghz: 5.0,
            series_l_nh: 0.3,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BacksideEstimate {
    /// Qubit quality factor limit from the resistive backside.
    pub q: f64,
    /// Reactance of the series inductance at the qubit frequency; quoted
    /// separately because it stores energy instead of dissipating it.
    pub series_reactance_ohm: f64,
}

/// Quality factor limit for a qubit over a resistive ground plane:
/// the coupled fraction of the field sees R in series with the qubit
/// capacitance, so Q = (1/fraction)^2 / (w R C).
pub fn backside_q_estimate(c: &BacksideCircuit) -> BacksideEstimate {
    let w = 2.0 * PI * c.f_ghz * 1e9;
    let cap_f = c.qubit_c_ff * 1e-15;
    let q = (1.0 / c.coupling_fraction).powi(2) / (w * c.r_eff_ohm * cap_f);
    BacksideEstimate {
        q,
        series_reactance_ohm: w * c.series_l_nh * 1e-9,
    }
}

// ================================================================
// quasiparticle traps
// ================================================================

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TrapEstimates {
    pub trap_gap_k: f64,
    /// Time for a quasiparticle sitting `energy_offset_k` above the trap
    /// gap to scatter down into the trap.
    pub scatter_time_us: f64,
    /// Distance it diffuses in that time.
    pub diffusion_length_um: f64,
}

/// Published near-gap scattering prefactor: a quasiparticle 1 K above the
/// gap scatters down in about 1.7 us, falling off with the offset cubed.
pub const TRAP_SCATTER_PREFACTOR_US: f64 = 1.7;

/// How fast and how far quasiparticles fall into a lower-gap trap layer.
pub fn trap_estimates(
    tc_trap_k: f64,
    energy_offset_k: f64,
    v_e_mm_per_ns: f64,
    mean_free_path_um: f64,
) -> TrapEstimates {
    let tau_us = TRAP_SCATTER_PREFACTOR_US / energy_offset_k.powi(3);
    let d_um2_per_ns = v_e_mm_per_ns * 1000.0 * mean_free_path_um / 3.0;
    TrapEstimates {
        trap_gap_k: crate::materials::gap_from_tc(tc_trap_k),
        scatter_time_us: tau_us,
        diffusion_length_um: (d_um2_per_ns * tau_us * 1000.0).sqrt(),
    }
}

// ================================================================
// tests
// ================================================================
