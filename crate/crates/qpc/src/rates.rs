//! Scattering rates and derived length scales.
//!
//! Superconductor rates are the Kaplan-form integrals over the BCS density
//! of states, evaluated numerically with the gap-edge singularity absorbed
//! by the substitution u = sqrt(eps - gap), together with their closed-form
//! fits. Normal-metal rates come from the measured electron-phonon power
//! transfer. Everything is in Kelvin, ns, and µm.

use crate::materials::MaterialParams;
use crate::quad::{adaptive_simpson, QuadError};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RateError {
    #[error("energy {eps_k} K is not above the gap {gap_k} K")]
    BelowGap { eps_k: f64, gap_k: f64 },
    #[error("material `{0}` carries no pair-breaking parameters")]
    NoPairingData(String),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("occupation function does not decay; cannot truncate the integral")]
    OccupationNoDecay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RateMethod {
    Integral,
    Fit,
    Power,
}

/// A rate together with how it was obtained.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RateResult {
    pub rate_per_ns: f64,
    pub method: RateMethod,
    pub rel_err_estimate: f64,
}

impl RateResult {
    fn exact(rate_per_ns: f64, method: RateMethod) -> Self {
        RateResult {
            rate_per_ns,
            method,
            rel_err_estimate: 0.0,
        }
    }
}

const QUAD_REL_TOL: f64 = 1e-10;

/// Shared factor of the substituted integrands: rho(eps) deps expressed in
/// the variable u = sqrt(eps - gap), including the Jacobian 2u. The edge
/// singularity cancels algebraically, leaving a bounded smooth factor.
fn rho_times_jacobian(u: f64, gap: f64) -> f64 {
    let eps = gap + u * u;
    if gap == 0.0 {
        2.0 * u
    } else {
        2.0 * eps / (eps + gap).sqrt()
    }
}

/// Quasiparticle relaxation rate by phonon emission, from the rate integral
///
/// (1/tau0) int_gap^eps deps' (eps-eps')^2/(k Tc)^3 rho(eps') (1 - gap^2/(eps eps')).
///
/// Works for a gapless metal too, where it reduces to eps^3/(3 tau0 Tc^3).
pub fn qp_scatter_rate_integral(
    eps_k: f64,
    mat: &MaterialParams,
) -> Result<RateResult, RateError> {
    let gap = mat.gap_k;
    if eps_k <= gap {
        return Err(RateError::BelowGap { eps_k, gap_k: gap });
    }
    if mat.tau0_ns <= 0.0 || mat.tc_k <= 0.0 {
        return Err(RateError::NoPairingData(mat.name.clone()));
    }
    let umax = (eps_k - gap).sqrt();
    let q = adaptive_simpson(
        |u| {
            let epsp = gap + u * u;
            let diff = eps_k - epsp;
            let coh = if gap == 0.0 {
                1.0
            } else {
                1.0 - gap * gap / (eps_k * epsp)
            };
            diff * diff * coh * rho_times_jacobian(u, gap)
        },
        0.0,
        umax,
        QUAD_REL_TOL,
        0.0,
    )?;
    let norm = mat.tau0_ns * mat.tc_k.powi(3);
    Ok(RateResult {
        rate_per_ns: q.value / norm,
        method: RateMethod::Integral,
        rel_err_estimate: q.rel_err(),
    })
}

/// Cubic fit to the relaxation integral: 1.8 (eps - gap)^3 / (tau0 gap^3).
pub fn qp_scatter_rate_fit(eps_k: f64, mat: &MaterialParams) -> Result<RateResult, RateError> {
    let gap = mat.gap_k;
    if eps_k <= gap {
        return Err(RateError::BelowGap { eps_k, gap_k: gap });
    }
    if gap <= 0.0 || mat.tau0_ns <= 0.0 {
        return Err(RateError::NoPairingData(mat.name.clone()));
    }
    let x = eps_k - gap;
    Ok(RateResult::exact(
        1.8 * x * x * x / (mat.tau0_ns * gap.powi(3)),
        RateMethod::Fit,
    ))
}

/// Near-gap recombination rate, (22/tau0) * n_qp/n_cp.
pub fn qp_recomb_rate(n_ratio: f64, mat: &MaterialParams) -> RateResult {
    RateResult::exact(22.0 / mat.tau0_ns * n_ratio, RateMethod::Fit)
}

/// Full recombination-rate integral against an occupation function f(eps'):
///
/// (1/tau0) int_gap^inf deps' (eps+eps')^2/(k Tc)^3 f(eps') rho(eps') (1 + gap^2/(eps eps')).
///
/// The infinite upper limit is truncated where `occupation` has dropped
/// below 1e-12 of its peak.
pub fn qp_recomb_rate_integral(
    eps_k: f64,
    occupation: impl Fn(f64) -> f64,
    mat: &MaterialParams,
) -> Result<RateResult, RateError> {
    let gap = mat.gap_k;
    if eps_k <= gap {
        return Err(RateError::BelowGap { eps_k, gap_k: gap });
    }
    if mat.tau0_ns <= 0.0 || mat.tc_k <= 0.0 {
        return Err(RateError::NoPairingData(mat.name.clone()));
    }
    // scan outward for the occupation peak, then for the decay cutoff
    let scale = gap.max(1.0);
    let mut peak = 0.0f64;
    let mut cutoff = None;
    let steps = 4000;
    let max_span = 1e4 * scale;
    for i in 1..=steps {
        // geometric sweep of the offset above the gap
        let frac = i as f64 / steps as f64;
        let offset = 1e-9 * scale * (max_span / (1e-9 * scale)).powf(frac);
        let f = occupation(gap + offset);
        if f > peak {
            peak = f;
        } else if peak > 0.0 && f <= 1e-12 * peak {
            cutoff = Some(gap + offset);
            break;
        }
    }
    if peak == 0.0 {
        return Ok(RateResult::exact(0.0, RateMethod::Integral));
    }
    let hi = match cutoff {
        Some(x) => x,
        None => return Err(RateError::OccupationNoDecay),
    };
    let umax = (hi - gap).sqrt();
    let q = adaptive_simpson(
        |u| {
            let epsp = gap + u * u;
            let sum = eps_k + epsp;
            let coh = if gap == 0.0 {
                1.0
            } else {
                1.0 + gap * gap / (eps_k * epsp)
            };
            sum * sum * coh * occupation(epsp) * rho_times_jacobian(u, gap)
        },
        0.0,
        umax,
        1e-8,
        0.0,
    )?;
    let norm = mat.tau0_ns * mat.tc_k.powi(3);
    Ok(RateResult {
        rate_per_ns: q.value / norm,
        method: RateMethod::Integral,
        rel_err_estimate: q.rel_err(),
    })
}

/// Pair-breaking rate of a phonon, from the rate integral
///
/// (1/(pi tau0ph gap)) int_gap^{E-gap} deps rho(eps) rho(E-eps) (1 + gap^2/(eps (E-eps))).
///
/// Returns exactly zero (not an error) at or below the 2-gap threshold: no
/// pair breaking happens there.
pub fn phonon_pairbreak_rate_integral(
    ep_k: f64,
    mat: &MaterialParams,
) -> Result<RateResult, RateError> {
    let gap = mat.gap_k;
    if gap <= 0.0 {
        return Err(RateError::NoPairingData(mat.name.clone()));
    }
    if ep_k <= 2.0 * gap {
        return Ok(RateResult::exact(0.0, RateMethod::Integral));
    }
    // the integrand is symmetric about E/2; integrate the left half where
    // only the gap-edge singularity lives and double it
    let umax = (0.5 * ep_k - gap).sqrt();
    let q = adaptive_simpson(
        |u| {
            let eps = gap + u * u;
            let other = ep_k - eps;
            let rho_other = other / (other * other - gap * gap).sqrt();
            let coh = 1.0 + gap * gap / (eps * other);
            rho_other * coh * rho_times_jacobian(u, gap)
        },
        0.0,
        umax,
        QUAD_REL_TOL,
        0.0,
    )?;
    let rate = 2.0 * q.value / (std::f64::consts::PI * mat.tau0ph_ns * gap);
    Ok(RateResult {
        rate_per_ns: rate,
        method: RateMethod::Integral,
        rel_err_estimate: q.rel_err(),
    })
}

/// Closed-form fit to the pair-breaking integral, and its linear asymptote.
///
/// With `linear_asymptote = false` this evaluates
/// (1/(pi tau0ph gap)) [E + 3.8 gap / (E/gap + 2.3)^0.8] above threshold and
/// 0 at or below it, mirroring the integral. With `linear_asymptote = true`
/// it evaluates the straight-line high-energy form 1.4 E / (pi tau0ph gap)
/// with no threshold, which is how the published per-Kelvin phonon rate is
/// quoted and applied even slightly below 2 gap.
pub fn phonon_pairbreak_rate_fit(
    ep_k: f64,
    mat: &MaterialParams,
    linear_asymptote: bool,
) -> Result<RateResult, RateError> {
    let gap = mat.gap_k;
    if gap <= 0.0 {
        return Err(RateError::NoPairingData(mat.name.clone()));
    }
    let norm = std::f64::consts::PI * mat.tau0ph_ns * gap;
    if linear_asymptote {
        return Ok(RateResult::exact(1.4 * ep_k / norm, RateMethod::Fit));
    }
    if ep_k <= 2.0 * gap {
        return Ok(RateResult::exact(0.0, RateMethod::Fit));
    }
    let w = ep_k / gap;
    let rate = (ep_k + 3.8 * gap / (w + 2.3).powf(0.8)) / norm;
    Ok(RateResult::exact(rate, RateMethod::Fit))
}

/// Electron-phonon power exchange in nW for a volume in µm^3:
/// Sigma V (T_e^5 - T_p^5). The sign gives the direction of flow.
pub fn power_ep(te_k: f64, tp_k: f64, mat: &MaterialParams, volume_um3: f64) -> f64 {
    mat.sigma_ep * volume_um3 * (te_k.powi(5) - tp_k.powi(5))
}

/// Power-balance scattering rates (phonon, electron) at temperature `t_k`:
/// Gamma_p = P/U_p = 4 Sigma T / c_p and Gamma_e = P/U_e = 2 Sigma T^3 / c_e.
pub fn power_rates(t_k: f64, mat: &MaterialParams) -> (RateResult, RateResult) {
    let phonon = 4.0 * mat.sigma_ep * t_k / mat.c_p;
    let electron = 2.0 * mat.sigma_ep * t_k.powi(3) / mat.c_e;
    (
        RateResult::exact(phonon, RateMethod::Power),
        RateResult::exact(electron, RateMethod::Power),
    )
}

/// One row of the scattering-length table.
#[derive(Debug, Clone, Serialize)]
pub struct LengthTable {
    pub material: String,
    pub energy_k: f64,
    pub film_thickness_um: f64,
    /// Electron or quasiparticle scattering rate in 1/ns.
    pub e_rate_per_ns: f64,
    /// Diffusion length sqrt(v_e * thickness / rate) in µm.
    pub e_diffuse_um: f64,
    /// Phonon interaction rate in 1/ns.
    pub p_rate_per_ns: f64,
    /// Ballistic interaction length v_p / rate in µm.
    pub p_length_um: f64,
}

/// Rates and lengths at one energy for one film.
///
/// Superconductors use the relaxation integral for the quasiparticle rate
/// and the linear pair-breaking asymptote for the phonon rate (the
/// published per-Kelvin form, finite even just below threshold, which is
/// how the reference table tabulates its 4 K column). Normal metals use the
/// power-balance rates with the energy standing in for the temperature.
/// Vanishing rates give infinite lengths.
pub fn scattering_lengths(
    energy_k: f64,
    mat: &MaterialParams,
    film_thickness_um: f64,
) -> Result<LengthTable, RateError> {
    let (e_rate, p_rate) = if mat.is_superconductor() {
        let e_rate = if energy_k > mat.gap_k {
            qp_scatter_rate_integral(energy_k, mat)?.rate_per_ns
        } else {
            0.0
        };
        let p_rate = phonon_pairbreak_rate_fit(energy_k, mat, true)?.rate_per_ns;
        (e_rate, p_rate)
    } else {
        let (p, e) = power_rates(energy_k, mat);
        (e.rate_per_ns, p.rate_per_ns)
    };
    let v_e_um = mat.v_e_mm_per_ns * 1000.0;
    let e_diffuse_um = if e_rate > 0.0 {
        (v_e_um * film_thickness_um / e_rate).sqrt()
    } else {
        f64::INFINITY
    };
    let p_length_um = if p_rate > 0.0 {
        mat.v_p_um_per_ns / p_rate
    } else {
        f64::INFINITY
    };
    Ok(LengthTable {
        material: mat.name.clone(),
        energy_k,
        film_thickness_um,
        e_rate_per_ns: e_rate,
        e_diffuse_um,
        p_rate_per_ns: p_rate,
        p_length_um,
    })
}

/// The two energies the reference length table quotes: well above the gap,
/// and at phonon freeze-out.
pub fn standard_length_energies() -> [f64; 2] {
    [20.0, 4.0]
}

// ================================================================
// tests
// ================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::materials::builtin_material;

    /// Dimensionless relaxation integral in gap units, tau0 * rate,
    /// frozen from an independent high-precision quadrature.
    const QP_SCATTER_REF: &[(f64, f64)] = &[
        (1.2, 1.4241875605e-02),
        (1.4735, 2.4193730189e-01),
        (1.8939393939393938, 1.7950933079e+00), // 4 K
        (2.0, 2.5356578965e+00),
        (3.0, 2.0407447220e+01),
        (5.0, 1.5420743526e+02),
        (9.469696969696969, 1.3415636221e+03), // 20 K
    ];

    /// Dimensionless pair-breaking integral in gap units, which works out
    /// to pi * tau0ph * rate.
    const PAIRBREAK_REF: &[(f64, f64)] = &[
        (2.5, 3.5452084861e+00),
        (4.0, 4.8442241103e+00),
        (9.469696969696969, 9.9920283553e+00),
        (10.0, 1.0505022270e+01),
        (20.0, 2.0319870901e+01),
    ];

    #[test]
    fn qp_scatter_integral_matches_reference() {
        let al = builtin_material("Al").unwrap();
        for &(e, want) in QP_SCATTER_REF {
            let r = qp_scatter_rate_integral(e * al.gap_k, &al).unwrap();
            let got = r.rate_per_ns * al.tau0_ns;
            assert!(
                (got - want).abs() <= 1e-6 * want,
                "e = {e}: got {got}, want {want}"
            );
            assert!(r.rel_err_estimate <= 1e-6);
        }
    }

    #[test]
    fn pairbreak_integral_matches_reference() {
        let al = builtin_material("Al").unwrap();
        for &(w, want) in PAIRBREAK_REF {
            let r = phonon_pairbreak_rate_integral(w * al.gap_k, &al).unwrap();
            let got = r.rate_per_ns * std::f64::consts::PI * al.tau0ph_ns;
            assert!(
                (got - want).abs() <= 1e-6 * want,
                "w = {w}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn scatter_rate_vanishes_at_the_gap() {
        let al = builtin_material("Al").unwrap();
        let r = qp_scatter_rate_integral(al.gap_k * (1.0 + 1e-7), &al).unwrap();
        assert!(r.rate_per_ns < 1e-15);
        assert!(qp_scatter_rate_integral(al.gap_k, &al).is_err());
    }

    #[test]
    fn cubic_fit_values() {
        let al = builtin_material("Al").unwrap();
        // offset 1 K above the gap: 1.8 / (440 * 2.112^3) = 1/2303 ns
        let r = qp_scatter_rate_fit(al.gap_k + 1.0, &al).unwrap();
        assert!((1.0 / r.rate_per_ns - 2302.8).abs() < 0.5);
        // cubic scaling: doubling the offset gives 8x
        let r2 = qp_scatter_rate_fit(al.gap_k + 2.0, &al).unwrap();
        assert!((r2.rate_per_ns / r.rate_per_ns - 8.0).abs() < 1e-12);
    }

    #[test]
    fn gapless_scatter_integral_is_cubic_in_energy() {
        let nal = builtin_material("n-Al").unwrap();
        // with gap = 0 the integral closes to eps^3 / (3 tau0 Tc^3)
        for eps in [0.5, 2.0, 11.0] {
            let r = qp_scatter_rate_integral(eps, &nal).unwrap();
            let want = eps.powi(3) / (3.0 * nal.tau0_ns * nal.tc_k.powi(3));
            assert!((r.rate_per_ns - want).abs() < 1e-9 * want);
        }
    }

    #[test]
    fn pairbreak_threshold_is_exact() {
        let al = builtin_material("Al").unwrap();
        for f in [0.3, 1.0, 1.9, 1.999999, 2.0] {
            let r = phonon_pairbreak_rate_integral(f * al.gap_k, &al).unwrap();
            assert_eq!(r.rate_per_ns, 0.0);
        }
        let r = phonon_pairbreak_rate_integral(2.000001 * al.gap_k, &al).unwrap();
        assert!(r.rate_per_ns > 0.0);
    }

    #[test]
    fn pairbreak_fit_tracks_integral() {
        let al = builtin_material("Al").unwrap();
        // at 10 gap the fit is called excellent; measure the residual
        let ep = 10.0 * al.gap_k;
        let int = phonon_pairbreak_rate_integral(ep, &al).unwrap().rate_per_ns;
        let fit = phonon_pairbreak_rate_fit(ep, &al, false).unwrap().rate_per_ns;
        assert!(((fit - int) / int).abs() < 0.03);
        // 20 K entry of the reference table, via the linear form
        let lin = phonon_pairbreak_rate_fit(20.0, &al, true).unwrap().rate_per_ns;
        assert!((lin - 17.5834).abs() < 0.001);
        // published rounded per-Kelvin prefactor is 1/1.0 ns; ours is
        // 1.4/(pi tau0ph gap) = 1/1.14 ns per K
        assert!((lin / 20.0 - 0.8786).abs() < 0.001);
    }

    #[test]
    fn recombination_rates() {
        let al = builtin_material("Al").unwrap();
        assert_eq!(qp_recomb_rate(0.0, &al).rate_per_ns, 0.0);
        let r = qp_recomb_rate(2.4e-5, &al);
        assert!((r.rate_per_ns - 1.2e-6).abs() < 1e-9);
        // linearity
        let r2 = qp_recomb_rate(1e-6, &al);
        assert!((r2.rate_per_ns - 5e-8).abs() < 1e-12);
    }

    #[test]
    fn recomb_integral_thermal_occupation_matches_reference() {
        let al = builtin_material("Al").unwrap();
        let t = 0.2;
        let eps = 1.1 * al.gap_k;
        let r = qp_recomb_rate_integral(eps, |e| (-e / t).exp(), &al).unwrap();
        let got = r.rate_per_ns * al.tau0_ns;
        let want = 4.8714236921e-04;
        assert!((got - want).abs() < 1e-4 * want, "got {got}");
    }

    #[test]
    fn recomb_integral_near_gap_limit_consistency() {
        // a narrow near-gap occupation with density ratio r approaches the
        // closed form (22/tau0) r
        let al = builtin_material("Al").unwrap();
        let t = 0.2;
        let occ = |e: f64| (-e / t).exp();
        // density ratio implied by the same occupation, frozen from the
        // same independent quadrature as the rate
        let n_ratio = 2.06944822e-05;
        let full = qp_recomb_rate_integral(al.gap_k * (1.0 + 1e-6), occ, &al)
            .unwrap()
            .rate_per_ns;
        let near = qp_recomb_rate(n_ratio, &al).rate_per_ns;
        assert!(
            ((full - near) / near).abs() < 0.05,
            "full {full}, near {near}"
        );
    }

    #[test]
    fn recomb_integral_edge_cases() {
        let al = builtin_material("Al").unwrap();
        let zero = qp_recomb_rate_integral(1.1 * al.gap_k, |_| 0.0, &al).unwrap();
        assert_eq!(zero.rate_per_ns, 0.0);
        let err = qp_recomb_rate_integral(1.1 * al.gap_k, |_| 1.0, &al);
        assert!(matches!(err, Err(RateError::OccupationNoDecay)));
    }

    #[test]
    fn power_exchange_values() {
        let cu = builtin_material("Cu").unwrap();
        let nal = builtin_material("n-Al").unwrap();
        assert_eq!(power_ep(1.0, 1.0, &cu, 1.0), 0.0);
        assert!((power_ep(1.0, 0.0, &cu, 1.0) - 2.0).abs() < 1e-12);
        assert!((power_ep(1.0, 0.0, &nal, 1.0) - 0.2).abs() < 1e-12);
        // sign flips with direction
        assert!(power_ep(0.0, 1.0, &cu, 1.0) < 0.0);
    }

    #[test]
    fn power_rates_match_reference_entries() {
        let nal = builtin_material("n-Al").unwrap();
        let (p, e) = power_rates(1.0, &nal);
        assert!((1.0 / p.rate_per_ns - 3.125).abs() < 0.01); // published 3.1 ns
        assert!((1.0 / e.rate_per_ns - 350.0).abs() < 0.01); // published 350 ns
        let cu = builtin_material("Cu").unwrap();
        let (_, e_cu) = power_rates(1.0, &cu);
        assert!((1.0 / e_cu.rate_per_ns - 24.25).abs() < 0.01); // published 24 ns
        // cubic electron scaling
        let (_, e2) = power_rates(2.0, &nal);
        assert!((e2.rate_per_ns / e.rate_per_ns - 8.0).abs() < 1e-12);
    }

    #[test]
    fn length_table_aluminum() {
        let al = builtin_material("Al").unwrap();
        let t20 = scattering_lengths(20.0, &al, 0.1).unwrap();
        // published row: q rate 3.5, diffuse 7.6 µm, p rate 20, p length 0.32 µm
        assert!((t20.e_rate_per_ns - 3.0490).abs() < 0.001);
        assert!((t20.e_diffuse_um - 8.16).abs() < 0.01);
        assert!((t20.p_rate_per_ns - 17.583).abs() < 0.001);
        assert!((t20.p_length_um - 0.364).abs() < 0.001);
        let t4 = scattering_lengths(4.0, &al, 0.1).unwrap();
        // published row: q rate 0.0052, diffuse 200 µm, p rate 4.0, p length 1.6 µm
        assert!((t4.e_rate_per_ns - 0.0040798).abs() < 1e-6);
        assert!((t4.e_diffuse_um - 223.1).abs() < 0.5);
        assert!((t4.p_rate_per_ns - 3.5167).abs() < 0.001);
        assert!((t4.p_length_um - 1.820).abs() < 0.001);
    }

    #[test]
    fn length_table_copper() {
        let cu = builtin_material("Cu").unwrap();
        let t20 = scattering_lengths(20.0, &cu, 3.0).unwrap();
        assert!((t20.e_rate_per_ns - 329.897).abs() < 0.01); // published 330
        assert!((t20.e_diffuse_um - 3.78).abs() < 0.01); // published 3.8
        let t4 = scattering_lengths(4.0, &cu, 3.0).unwrap();
        assert!((t4.e_rate_per_ns - 2.639).abs() < 0.001); // published 2.7
        assert!((t4.e_diffuse_um - 42.2).abs() < 0.1); // published 42
        // the published copper phonon entries are 10x smaller than what the
        // same table's power constants give; ours follow the constants
        assert!((t4.p_rate_per_ns - 4.848).abs() < 0.001); // published 0.49
    }

    #[test]
    fn lengths_diverge_when_rates_vanish() {
        let al = builtin_material("Al").unwrap();
        // below the gap no quasiparticle scattering channel exists
        let t = scattering_lengths(1.0, &al, 0.1).unwrap();
        assert_eq!(t.e_rate_per_ns, 0.0);
        assert!(t.e_diffuse_um.is_infinite());
    }
}
