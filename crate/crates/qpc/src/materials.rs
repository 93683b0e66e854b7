//! Material parameter sets and unit conventions.
//!
//! Canonical internal units: energy in Kelvin (E/k_B), time in ns, length in
//! µm, rates in 1/ns. All tabulated material constants are quoted in these
//! units, so published numbers are usable without conversion.

use serde::Serialize;
use thiserror::Error;

/// Weak-coupling BCS relation between gap and transition temperature.
pub const BCS_GAP_RATIO: f64 = 1.76;

/// Kelvin per electron-volt (1 eV / k_B).
pub const KELVIN_PER_EV: f64 = 11604.5;

/// Relative offset used to clamp evaluations away from the gap edge, where
/// the density of states has an integrable 1/sqrt singularity.
pub const DOS_FLOOR: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum MaterialError {
    #[error("unknown material `{0}`")]
    Unknown(String),
    #[error("density of states undefined at {eps_k} K for gap {gap_k} K")]
    DosDomain { eps_k: f64, gap_k: f64 },
    #[error("material `{name}` is invalid: {reason}")]
    Invalid { name: String, reason: String },
}

/// One material's full parameter set.
///
/// Fields that a given material never consults may be zero: a gapless metal
/// (`gap_k == 0`) carries no pair-breaking parameters, and validation only
/// checks what the rate formulas will actually read.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaterialParams {
    pub name: String,
    /// Superconducting gap in K; 0 for a normal metal.
    pub gap_k: f64,
    /// Transition temperature in K.
    pub tc_k: f64,
    /// Characteristic electron-phonon time tau0 in ns.
    pub tau0_ns: f64,
    /// Characteristic phonon pair-breaking time in ns.
    pub tau0ph_ns: f64,
    /// Cooper-pair density per µm^3.
    pub n_cp_per_um3: f64,
    /// Electron (Fermi) velocity in mm/ns.
    pub v_e_mm_per_ns: f64,
    /// Sound speed in µm/ns.
    pub v_p_um_per_ns: f64,
    /// Electron-phonon coupling constant in nW/(µm^3 K^5).
    pub sigma_ep: f64,
    /// Phonon energy-density coefficient: U_p = c_p T^4/4 in aJ/µm^3.
    pub c_p: f64,
    /// Electron energy-density coefficient: U_e = c_e T^2/2 in aJ/µm^3.
    pub c_e: f64,
}

impl MaterialParams {
    pub fn is_superconductor(&self) -> bool {
        self.gap_k > 0.0
    }

    /// Sanity-check the parameter set. Only fields the rate formulas consult
    /// for this kind of material are required to be positive.
    pub fn validate(&self) -> Result<(), MaterialError> {
        let fail = |reason: &str| {
            Err(MaterialError::Invalid {
                name: self.name.clone(),
                reason: reason.to_string(),
            })
        };
        let finite = [
            self.gap_k,
            self.tc_k,
            self.tau0_ns,
            self.tau0ph_ns,
            self.n_cp_per_um3,
            self.v_e_mm_per_ns,
            self.v_p_um_per_ns,
            self.sigma_ep,
            self.c_p,
            self.c_e,
        ];
        if finite.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return fail("all parameters must be finite and non-negative");
        }
        if self.v_e_mm_per_ns <= 0.0 || self.v_p_um_per_ns <= 0.0 {
            return fail("velocities must be positive");
        }
        if self.is_superconductor() {
            if self.tc_k <= 0.0 {
                return fail("superconductor needs a transition temperature");
            }
            let ratio = self.gap_k / self.tc_k;
            if (ratio - BCS_GAP_RATIO).abs() > 1e-9 {
                return fail("gap_k must equal 1.76 * tc_k");
            }
            if self.tau0_ns <= 0.0 || self.tau0ph_ns <= 0.0 {
                return fail("superconductor needs tau0_ns and tau0ph_ns");
            }
            if self.n_cp_per_um3 <= 0.0 {
                return fail("superconductor needs a Cooper-pair density");
            }
        }
        if self.sigma_ep > 0.0 && (self.c_p <= 0.0 || self.c_e <= 0.0) {
            return fail("power-balance rates need c_p and c_e");
        }
        Ok(())
    }
}

/// Gap implied by the BCS weak-coupling relation, in K.
pub fn gap_from_tc(tc_k: f64) -> f64 {
    BCS_GAP_RATIO * tc_k
}

/// Names accepted by [`builtin_material`].
pub fn builtin_names() -> &'static [&'static str] {
    &["Al", "n-Al", "Cu", "AlSi-wirebond", "trap-0.5K"]
}

/// Look up one of the built-in materials.
///
/// * `Al`: superconducting aluminum, Tc = 1.2 K.
/// * `n-Al`: aluminum driven normal (same constants, gap forced to 0).
/// * `Cu`: normal copper; carries only power-balance and velocity data.
/// * `AlSi-wirebond`: wirebond alloy with a slightly higher Tc than the
///   device aluminum, so 2-gap phonons from the chip cannot break pairs in it.
/// * `trap-0.5K`: low-gap trap layer; reuses aluminum's characteristic
///   times, which is how its published scattering time is quoted.
pub fn builtin_material(name: &str) -> Result<MaterialParams, MaterialError> {
    let al = MaterialParams {
        name: "Al".to_string(),
        gap_k: gap_from_tc(1.2),
        tc_k: 1.2,
        tau0_ns: 440.0,
        tau0ph_ns: 0.24,
        n_cp_per_um3: 2.8e6,
        v_e_mm_per_ns: 2.03,
        v_p_um_per_ns: 6.4,
        sigma_ep: 0.2,
        c_p: 2.5,
        c_e: 140.0,
    };
    let m = match name {
        "Al" => al,
        "n-Al" => MaterialParams {
            name: "n-Al".to_string(),
            gap_k: 0.0,
            ..al
        },
        "Cu" => MaterialParams {
            name: "Cu".to_string(),
            gap_k: 0.0,
            tc_k: 0.0,
            tau0_ns: 0.0,
            tau0ph_ns: 0.0,
            n_cp_per_um3: 0.0,
            v_e_mm_per_ns: 1.57,
            v_p_um_per_ns: 4.8,
            sigma_ep: 2.0,
            c_p: 6.6,
            c_e: 97.0,
        },
        "AlSi-wirebond" => MaterialParams {
            name: "AlSi-wirebond".to_string(),
            gap_k: gap_from_tc(1.3),
            tc_k: 1.3,
            ..al
        },
        "trap-0.5K" => MaterialParams {
            name: "trap-0.5K".to_string(),
            gap_k: gap_from_tc(0.5),
            tc_k: 0.5,
            ..al
        },
        other => return Err(MaterialError::Unknown(other.to_string())),
    };
    m.validate()?;
    Ok(m)
}

/// Normalized BCS density of states, eps / sqrt(eps^2 - gap^2).
///
/// For a gapless metal this is identically 1 for any positive energy. The
/// divergence at the gap edge is integrable; callers that integrate across
/// it use [`bcs_dos_floored`] or absorb the singularity analytically.
pub fn bcs_dos(eps_k: f64, gap_k: f64) -> Result<f64, MaterialError> {
    if gap_k == 0.0 {
        if eps_k > 0.0 {
            return Ok(1.0);
        }
        return Err(MaterialError::DosDomain { eps_k, gap_k });
    }
    if eps_k <= gap_k {
        return Err(MaterialError::DosDomain { eps_k, gap_k });
    }
    Ok(eps_k / (eps_k * eps_k - gap_k * gap_k).sqrt())
}

/// BCS density of states with the energy clamped to at least
/// `gap * (1 + DOS_FLOOR)`, so it is always finite.
pub fn bcs_dos_floored(eps_k: f64, gap_k: f64) -> f64 {
    if gap_k == 0.0 {
        return 1.0;
    }
    let eps = eps_k.max(gap_k * (1.0 + DOS_FLOOR));
    eps / (eps * eps - gap_k * gap_k).sqrt()
}

/// Convert an energy in eV to Kelvin.
pub fn kelvin_from_ev(e_ev: f64) -> f64 {
    e_ev * KELVIN_PER_EV
}

/// Convert an energy in Kelvin to eV.
pub fn ev_from_kelvin(e_k: f64) -> f64 {
    e_k / KELVIN_PER_EV
}
