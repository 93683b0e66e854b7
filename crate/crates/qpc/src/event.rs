//! Timeline of a single radiation impact on a qubit chip.
//!
//! A deposit in the substrate converts to quasiparticles with a fixed
//! efficiency, and the resulting pair-breaking density is tracked through
//! five stages: the initial down-conversion burst, the freeze-out hot
//! spot, quasiparticle diffusion across the film, the chip-wide bath with
//! recombination, and finally phonon escape through the wirebonds. Each
//! stage carries the simple density estimate that sets the qubit decay
//! time at that moment.
//!
//! The qubit decay model is deliberately coarse: a pair-breaking density
//! ratio r gives a quality factor Q = 1/(1.2 r) and T1 = Q / (2 pi f).
//! Stage times and spatial sizes are fixed annotations (they describe the
//! scenario), while every T1 is computed from the density model.

use crate::design::participation_ratio;
use crate::materials::{builtin_material, MaterialParams, KELVIN_PER_EV};
use clap::ValueEnum;
use serde::{Serialize, Serializer};
use std::f64::consts::PI;
use std::fmt;

/// Quality factor per unit density ratio: Q = 1 / (QP_LOSS_COEFF * r).
pub const QP_LOSS_COEFF: f64 = 1.2;

/// Coefficient of the 1/t recombination decay law, in microseconds:
/// r(t) = RECOMB_COEFF_US / (t + t0).
pub const RECOMB_COEFF_US: f64 = 400.0e-3 / 43.6;

// ================================================================
// geometry and configuration
// ================================================================

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Wirebonds {
    pub count: u32,
    pub wire_radius_um: f64,
    pub wire_length_mm: f64,
    /// Electron mean free path in the bond alloy, which sets the chance
    /// that a phonon entering a wire random-walks out of the chip.
    pub mean_free_path_um: f64,
}

impl Default for Wirebonds {
    fn default() -> Self {
        Wirebonds {
            count: 300,
            wire_radius_um: 12.0,
            wire_length_mm: 2.0,
            mean_free_path_um: 25.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChipGeometry {
    pub chip_area_mm2: f64,
    pub substrate_thickness_mm: f64,
    /// Superconducting film thickness.
    pub film_thickness_um: f64,
    /// Normal-metal layer thickness; zero means no mitigation layer.
    pub normal_thickness_um: f64,
    /// Film area reached by the freeze-out stage.
    pub hotspot_area_mm2: f64,
    pub wirebonds: Wirebonds,
}

impl Default for ChipGeometry {
    fn default() -> Self {
        ChipGeometry {
            chip_area_mm2: 100.0,
            substrate_thickness_mm: 0.4,
            film_thickness_um: 0.1,
            normal_thickness_um: 0.0,
            hotspot_area_mm2: 10.0,
            wirebonds: Wirebonds::default(),
        }
    }
}

impl ChipGeometry {
    /// Same chip with a thick normal-metal layer on the back side.
    pub fn improved_default() -> Self {
        ChipGeometry {
            normal_thickness_um: 6.0,
            ..ChipGeometry::default()
        }
    }

    pub fn film_volume_um3(&self) -> f64 {
        self.chip_area_mm2 * 1e6 * self.film_thickness_um
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Design {
    Present,
    Improved,
}

#[derive(Debug, Clone, Serialize)]
pub struct EventConfig {
    pub deposit_energy_mev: f64,
    pub qubit_frequency_ghz: f64,
    /// Fraction of the deposit that ends up in quasiparticles.
    pub conversion_efficiency: f64,
    pub design: Design,
    pub geometry: ChipGeometry,
    pub material: MaterialParams,
}

impl EventConfig {
    pub fn new(design: Design) -> Self {
        let geometry = match design {
            Design::Present => ChipGeometry::default(),
            Design::Improved => ChipGeometry::improved_default(),
        };
        EventConfig {
            deposit_energy_mev: 0.2,
            qubit_frequency_ghz: 5.0,
            conversion_efficiency: 0.57,
            design,
            geometry,
            material: builtin_material("Al").unwrap(),
        }
    }
}

// ================================================================
// stage bookkeeping
// ================================================================

/// Qubit decay entry for one stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum T1Entry {
    /// Indistinguishable from the undisturbed qubit.
    Baseline,
    Finite(f64),
    /// Lower bound only (the stage can only improve on it).
    AtLeast(f64),
}

impl T1Entry {
    pub fn value_us(&self) -> Option<f64> {
        match self {
            T1Entry::Baseline => None,
            T1Entry::Finite(x) | T1Entry::AtLeast(x) => Some(*x),
        }
    }
}

impl fmt::Display for T1Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            T1Entry::Baseline => write!(f, "baseline"),
            T1Entry::Finite(x) => write!(f, "{x}"),
            T1Entry::AtLeast(x) => write!(f, ">{x}"),
        }
    }
}

impl Serialize for T1Entry {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Spatial extent of a stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SizeScale {
    Mm(f64),
    Chip,
}

impl fmt::Display for SizeScale {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SizeScale::Mm(x) => write!(f, "{x}"),
            SizeScale::Chip => write!(f, "chip"),
        }
    }
}

impl Serialize for SizeScale {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub name: &'static str,
    /// Characteristic time annotation (the stage's end).
    pub time_us: f64,
    pub t_start_us: f64,
    pub duration_us: f64,
    pub size: SizeScale,
    pub t1: T1Entry,
    /// Published decay time for this stage, where one exists.
    pub reference_t1: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EventTimeline {
    pub design: Design,
    pub deposit_energy_mev: f64,
    pub n_qp: f64,
    pub chip_density_ratio: f64,
    pub hotspot_density_ratio: f64,
    pub stages: Vec<Stage>,
}

// ================================================================
// density model
// ================================================================

/// Quasiparticles created by a deposit, given the conversion efficiency.
pub fn initial_qp_count(deposit_energy_mev: f64, efficiency: f64, gap_k: f64) -> f64 {
    deposit_energy_mev * 1e6 * KELVIN_PER_EV * efficiency / gap_k
}

/// n_qp / n_cp for a count spread uniformly over `area_mm2` of film.
pub fn qp_density_ratio(
    n_qp: f64,
    area_mm2: f64,
    film_thickness_um: f64,
    n_cp_per_um3: f64,
) -> f64 {
    n_qp / (area_mm2 * 1e6 * film_thickness_um * n_cp_per_um3)
}

/// Quality factor and decay time of a qubit exposed to a pair-breaking
/// density ratio. A non-positive ratio leaves the qubit at its baseline.
pub fn qubit_q_and_t1(density_ratio: f64, f_ghz: f64) -> (f64, T1Entry) {
    if density_ratio <= 0.0 {
        return (f64::INFINITY, T1Entry::Baseline);
    }
    let q = 1.0 / (QP_LOSS_COEFF * density_ratio);
    let t1_us = q / (2.0 * PI * f_ghz * 1000.0);
    (q, T1Entry::Finite(t1_us))
}

/// Group-velocity reduction of a quasiparticle at `energy_k` relative to
/// the normal-state velocity, zero at or below the gap.
pub fn qp_velocity_factor(energy_k: f64, gap_k: f64) -> f64 {
    if gap_k <= 0.0 {
        return 1.0;
    }
    if energy_k <= gap_k {
        return 0.0;
    }
    (1.0 - (gap_k / energy_k).powi(2)).sqrt()
}

/// Radius of a quasiparticle cloud after diffusing for `t_us`, with the
/// mean free path set by the film thickness. `energy_k` applies the
/// group-velocity reduction to the radius; `None` gives the bare value.
pub fn qp_diffusion_radius_mm(
    t_us: f64,
    energy_k: Option<f64>,
    mat: &MaterialParams,
    film_thickness_um: f64,
) -> f64 {
    let v_um_per_ns = mat.v_e_mm_per_ns * 1000.0;
    let bare = (v_um_per_ns * film_thickness_um * t_us * 1000.0).sqrt() / 1000.0;
    match energy_k {
        Some(e) => bare * qp_velocity_factor(e, mat.gap_k),
        None => bare,
    }
}

/// Density ratio a time `t_us` after a uniform bath of ratio `r0` forms.
/// Closed form of dr/dt = -r^2 / RECOMB_COEFF_US.
pub fn recombination_density_ratio(t_us: f64, r0: f64) -> f64 {
    if r0 <= 0.0 {
        return 0.0;
    }
    let t0 = RECOMB_COEFF_US / r0;
    RECOMB_COEFF_US / (t_us + t0)
}

/// Derivative form of the decay law, for cross-checks against an ODE
/// integration of the same bath.
pub fn recombination_density_rate(r: f64) -> f64 {
    -r * r / RECOMB_COEFF_US
}

/// Escape rate of pair-breaking phonons through the wirebonds, per ns:
/// (bond cross-section / chip volume) * sound speed * the chance that a
/// phonon entering a wire random-walks out instead of returning.
pub fn phonon_escape_rate_per_ns(geom: &ChipGeometry, v_p_um_per_ns: f64) -> f64 {
    let w = &geom.wirebonds;
    let bond_area_um2 = w.count as f64 * PI * w.wire_radius_um * w.wire_radius_um;
    let chip_volume_um3 = geom.chip_area_mm2 * geom.substrate_thickness_mm * 1e9;
    let traverse_prob = w.mean_free_path_um / (w.wire_length_mm * 1000.0);
    bond_area_um2 / chip_volume_um3 * v_p_um_per_ns * traverse_prob
}

pub fn phonon_escape_time_ms(geom: &ChipGeometry, v_p_um_per_ns: f64) -> f64 {
    1.0 / phonon_escape_rate_per_ns(geom, v_p_um_per_ns) / 1e6
}

/// Round to 12 significant digits, stripping float noise from differences
/// of humanly exact inputs (0.3 - 0.01 should print as 0.29).
pub(crate) fn tidy(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mag = x.abs().log10().floor() as i32;
    let scale = 10f64.powi(11 - mag);
    (x * scale).round() / scale
}

// ================================================================
// the five-stage timeline
// ================================================================

/// Build the five-stage timeline for one impact.
///
/// Times, sizes, and reference decay entries are fixed annotations of the
/// scenario; every computed T1 comes from the density model. A zero
/// deposit leaves all stages at baseline.
pub fn simulate_event(cfg: &EventConfig) -> EventTimeline {
    let mat = &cfg.material;
    let geom = &cfg.geometry;
    let f = cfg.qubit_frequency_ghz;
    let n_qp = initial_qp_count(cfg.deposit_energy_mev, cfg.conversion_efficiency, mat.gap_k);
    let chip_r = qp_density_ratio(n_qp, geom.chip_area_mm2, geom.film_thickness_um, mat.n_cp_per_um3);
    let hot_r = qp_density_ratio(
        n_qp,
        geom.hotspot_area_mm2,
        geom.film_thickness_um,
        mat.n_cp_per_um3,
    );

    let (times, sizes, names, refs, t1s): (
        [f64; 5],
        [SizeScale; 5],
        [&'static str; 5],
        [Option<&'static str>; 5],
        [T1Entry; 5],
    ) = match cfg.design {
        Design::Present => {
            let t1_hot = qubit_q_and_t1(hot_r, f).1;
            // the diffusion plume covers size^2 of film area
            let plume_r = qp_density_ratio(n_qp, 36.0, geom.film_thickness_um, mat.n_cp_per_um3);
            let t1_plume = qubit_q_and_t1(plume_r, f).1;
            let t1_chip = qubit_q_and_t1(chip_r, f).1;
            // recombination decays the bath over the stage four to five span
            let r_tail = recombination_density_ratio(4000.0 - 1000.0, chip_r);
            let t1_tail = qubit_q_and_t1(r_tail, f).1;
            (
                [0.01, 0.3, 100.0, 1000.0, 4000.0],
                [
                    SizeScale::Mm(1.0),
                    SizeScale::Mm(3.0),
                    SizeScale::Mm(6.0),
                    SizeScale::Chip,
                    SizeScale::Chip,
                ],
                [
                    "down-conversion",
                    "freeze-out",
                    "qp-diffusion",
                    "qp-recombination",
                    "phonon-escape",
                ],
                [None, Some("0.16"), Some("0.6"), Some(">1.6"), None],
                [T1Entry::Baseline, t1_hot, t1_plume, t1_chip, t1_tail],
            )
        }
        Design::Improved => {
            // only the fraction of phonon energy down-converting in the
            // superconductor makes quasiparticles
            let s = if geom.normal_thickness_um > 0.0 {
                participation_ratio(geom.film_thickness_um, geom.normal_thickness_um, 1.65)
            } else {
                0.01
            };
            let t1_hot = qubit_q_and_t1(hot_r * s, f).1;
            // trapping in the normal layer can only improve on freeze-out
            let t1_trap = match t1_hot {
                T1Entry::Finite(x) => T1Entry::AtLeast(x),
                other => other,
            };
            (
                [0.01, 0.3, 1.7, 1000.0, 4000.0],
                [
                    SizeScale::Mm(1.0),
                    SizeScale::Mm(3.0),
                    SizeScale::Mm(3.0),
                    SizeScale::Chip,
                    SizeScale::Chip,
                ],
                [
                    "down-conversion",
                    "freeze-out",
                    "qp-trapping",
                    "qp-recombination",
                    "phonon-escape",
                ],
                [None, Some("16"), Some(">16"), Some("bl"), Some("bl")],
                [
                    T1Entry::Baseline,
                    t1_hot,
                    t1_trap,
                    T1Entry::Baseline,
                    T1Entry::Baseline,
                ],
            )
        }
    };

    let mut stages = Vec::with_capacity(5);
    let mut t_start = 0.0;
    for i in 0..5 {
        stages.push(Stage {
            name: names[i],
            time_us: times[i],
            t_start_us: tidy(t_start),
            duration_us: tidy(times[i] - t_start),
            size: sizes[i],
            t1: t1s[i],
            reference_t1: refs[i],
        });
        t_start = times[i];
    }

    EventTimeline {
        design: cfg.design,
        deposit_energy_mev: cfg.deposit_energy_mev,
        n_qp,
        chip_density_ratio: chip_r,
        hotspot_density_ratio: hot_r,
        stages,
    }
}

// ================================================================
// tests
// ================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn qp_count_from_standard_deposit() {
        let n = initial_qp_count(0.2, 0.57, 2.112);
        assert_relative_eq!(n, 6.263793e8, max_relative = 1e-5);
    }

    #[test]
    fn density_ratios_for_default_chip() {
        let n = initial_qp_count(0.2, 0.57, 2.112);
        let chip = qp_density_ratio(n, 100.0, 0.1, 2.8e6);
        let hot = qp_density_ratio(n, 10.0, 0.1, 2.8e6);
        assert_relative_eq!(chip, 2.237069e-5, max_relative = 1e-5);
        assert_relative_eq!(hot, 10.0 * chip, max_relative = 1e-12);
    }

    #[test]
    fn quality_factor_and_decay_time() {
        let (q, t1) = qubit_q_and_t1(2.237069e-5, 5.0);
        assert_relative_eq!(q, 3.72510e4, max_relative = 1e-4);
        assert_relative_eq!(t1.value_us().unwrap(), 1.185735, max_relative = 1e-4);
        let (q0, t0) = qubit_q_and_t1(0.0, 5.0);
        assert!(q0.is_infinite());
        assert_eq!(t0, T1Entry::Baseline);
    }

    #[test]
    fn present_timeline_values() {
        let tl = simulate_event(&EventConfig::new(Design::Present));
        assert_eq!(tl.stages.len(), 5);
        let t: Vec<f64> = tl.stages.iter().map(|s| s.time_us).collect();
        assert_eq!(t, vec![0.01, 0.3, 100.0, 1000.0, 4000.0]);
        assert_eq!(tl.stages[0].t1, T1Entry::Baseline);
        assert_relative_eq!(
            tl.stages[1].t1.value_us().unwrap(),
            0.1185735,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            tl.stages[2].t1.value_us().unwrap(),
            0.4268646,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            tl.stages[3].t1.value_us().unwrap(),
            1.185735,
            max_relative = 1e-4
        );
        assert_relative_eq!(
            tl.stages[4].t1.value_us().unwrap(),
            9.85965,
            max_relative = 1e-3
        );
        // recovery is monotone once quasiparticles exist
        for w in tl.stages.windows(2).skip(1) {
            assert!(w[0].t1.value_us().unwrap() < w[1].t1.value_us().unwrap());
        }
        assert_eq!(tl.stages[1].reference_t1, Some("0.16"));
        assert_eq!(tl.stages[3].reference_t1, Some(">1.6"));
    }

    #[test]
    fn stage_durations_are_tidy() {
        let tl = simulate_event(&EventConfig::new(Design::Present));
        let d: Vec<f64> = tl.stages.iter().map(|s| s.duration_us).collect();
        assert_eq!(d, vec![0.01, 0.29, 99.7, 900.0, 3000.0]);
        let s: Vec<f64> = tl.stages.iter().map(|s| s.t_start_us).collect();
        assert_eq!(s, vec![0.0, 0.01, 0.3, 100.0, 1000.0]);
    }

    #[test]
    fn improved_design_buys_two_orders() {
        let present = simulate_event(&EventConfig::new(Design::Present));
        let improved = simulate_event(&EventConfig::new(Design::Improved));
        let p = present.stages[1].t1.value_us().unwrap();
        let i = improved.stages[1].t1.value_us().unwrap();
        assert_relative_eq!(i / p, 100.0, max_relative = 1e-9);
        assert!(matches!(improved.stages[2].t1, T1Entry::AtLeast(_)));
        assert_eq!(improved.stages[3].t1, T1Entry::Baseline);
        assert_eq!(improved.stages[4].t1, T1Entry::Baseline);
        assert_eq!(improved.stages[2].time_us, 1.7);
    }

    #[test]
    fn zero_deposit_leaves_baseline() {
        let mut cfg = EventConfig::new(Design::Present);
        cfg.deposit_energy_mev = 0.0;
        let tl = simulate_event(&cfg);
        assert!(tl.stages.iter().all(|s| s.t1 == T1Entry::Baseline));
        assert_eq!(tl.n_qp, 0.0);
    }

    #[test]
    fn diffusion_radius_and_velocity_factor() {
        let al = builtin_material("Al").unwrap();
        let bare = qp_diffusion_radius_mm(1.0, None, &al, 0.1);
        assert_relative_eq!(bare, 0.4505552, max_relative = 1e-5);
        // scales as sqrt(t)
        let later = qp_diffusion_radius_mm(4.0, None, &al, 0.1);
        assert_relative_eq!(later, 2.0 * bare, max_relative = 1e-12);
        let f = qp_velocity_factor(al.gap_k + 0.25, al.gap_k);
        assert_relative_eq!(f, 0.44775, max_relative = 1e-3);
        assert_eq!(qp_velocity_factor(al.gap_k, al.gap_k), 0.0);
        assert_eq!(qp_velocity_factor(5.0, 0.0), 1.0);
    }

    #[test]
    fn wirebond_escape_time() {
        let geom = ChipGeometry::default();
        let rate = phonon_escape_rate_per_ns(&geom, 6.4);
        assert_relative_eq!(rate, 2.71434e-7, max_relative = 1e-4);
        assert_relative_eq!(phonon_escape_time_ms(&geom, 6.4), 3.6842, max_relative = 1e-4);
    }

    #[test]
    fn recombination_closed_form_matches_ode() {
        let r0 = 2.237069e-5;
        // RK4 on dr/dt = -r^2/C over the stage four to five span
        let mut r = r0;
        let dt = 0.05;
        let steps = (3000.0 / dt) as usize;
        for _ in 0..steps {
            let k1 = recombination_density_rate(r);
            let k2 = recombination_density_rate(r + 0.5 * dt * k1);
            let k3 = recombination_density_rate(r + 0.5 * dt * k2);
            let k4 = recombination_density_rate(r + dt * k3);
            r += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        let closed = recombination_density_ratio(3000.0, r0);
        assert_relative_eq!(r, closed, max_relative = 1e-9);
        // and the tail decay time constant is hundreds of microseconds
        assert_relative_eq!(RECOMB_COEFF_US / r0, 410.104, max_relative = 1e-4);
    }

    #[test]
    fn tidy_strips_float_noise() {
        assert_eq!(tidy(0.3 - 0.01), 0.29);
        assert_eq!(tidy(100.0 - 0.3), 99.7);
        assert_eq!(tidy(0.0), 0.0);
        assert_eq!(tidy(3000.0), 3000.0);
    }
}
