//! Conformance report: computed quantities against their published values.
//!
//! Every entry names a quantity, the published reference value, the value
//! this crate computes, and a tolerance. Entries whose disagreement is
//! understood are marked as documented deviations instead of failures;
//! entries with no tolerance are annotations (rough published scales
//! recorded for context, not checked). Producing the report is the tool's
//! job, so it renders faithfully whatever the comparison yields.

use crate::cascade::{run_trials, CascadeConfig};
use crate::design::{backside_q_estimate, participation_ratio, BacksideCircuit, PARTICIPATION_CONSTANT};
use crate::event::{
    phonon_escape_time_ms, qp_diffusion_radius_mm, qp_velocity_factor, qubit_q_and_t1,
    simulate_event, ChipGeometry, Design, EventConfig, QP_LOSS_COEFF, RECOMB_COEFF_US,
};
use crate::materials::builtin_material;
use crate::output::{Cell, Table};
use crate::rates::{power_rates, qp_scatter_rate_fit, scattering_lengths};
use serde::Serialize;
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    DocumentedDeviation,
    Annotation,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::DocumentedDeviation => "documented-deviation",
            Status::Annotation => "annotation",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub id: String,
    /// Where the reference value is published, described by content.
    pub location: String,
    pub quantity: String,
    pub reference: f64,
    pub computed: f64,
    /// None marks an annotation (not a checked comparison).
    pub tolerance_pct: Option<f64>,
    /// A known, explained disagreement reports as a deviation, not a fail.
    pub documented: bool,
    pub note: String,
}

impl Entry {
    pub fn rel_diff_pct(&self) -> f64 {
        if self.reference == 0.0 {
            return if self.computed == 0.0 { 0.0 } else { f64::INFINITY };
        }
        ((self.computed - self.reference) / self.reference).abs() * 100.0
    }

    pub fn status(&self) -> Status {
        match self.tolerance_pct {
            None => Status::Annotation,
            Some(tol) => {
                if self.rel_diff_pct() <= tol {
                    Status::Pass
                } else if self.documented {
                    Status::DocumentedDeviation
                } else {
                    Status::Fail
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn entry(
    id: &str,
    location: &str,
    quantity: &str,
    reference: f64,
    computed: f64,
    tolerance_pct: Option<f64>,
    documented: bool,
    note: &str,
) -> Entry {
    Entry {
        id: id.to_string(),
        location: location.to_string(),
        quantity: quantity.to_string(),
        reference,
        computed,
        tolerance_pct,
        documented,
        note: note.to_string(),
    }
}

/// Build the full report. The seed drives the one Monte Carlo entry; the
/// worker count only affects wall time, never values.
pub fn conformance_entries(seed: u64, workers: usize) -> Vec<Entry> {
    let al = builtin_material("Al").unwrap();
    let nal = builtin_material("n-Al").unwrap();
    let cu = builtin_material("Cu").unwrap();
    let mut out = Vec::new();

    // ---- cascade block ----
    let mut cfg = CascadeConfig::for_gap(al.gap_k);
    cfg.trials = 3000;
    cfg.seed = seed;
    let plateau = run_trials(100.0 * al.gap_k, &cfg, workers)
        .expect("the cascade at 100 gap is well within the iteration cap");
    out.push(entry(
        "C1",
        "published down-conversion efficiency",
        "normalized quasiparticle yield at high phonon energy",
        0.57,
        plateau.n_qp_normalized,
        Some(3.5),
        true,
        "converged plateau is near 0.590, at the edge of the rounded reference band",
    ));
    let s = participation_ratio(0.1, 6.0, PARTICIPATION_CONSTANT);
    out.push(entry(
        "C2",
        "published mitigation estimate",
        "decay-time gain from a 6 um normal layer under a 0.1 um film",
        100.0,
        1.0 / s,
        Some(5.0),
        false,
        "",
    ));
    out.push(entry(
        "C3",
        "published near-gap scattering estimate",
        "quasiparticle relaxation rate 1 K above the gap (per ns)",
        1.0 / 1700.0,
        qp_scatter_rate_fit(al.gap_k + 1.0, &al).unwrap().rate_per_ns,
        Some(20.0),
        true,
        "cubic fit to the full integral lands a factor 1.35 below the reference prefactor",
    ));
    out.push(entry(
        "C4",
        "published recombination decay law",
        "coefficient of the inverse-time density decay",
        43.6,
        8.0 * (al.gap_k / al.tc_k).powi(3),
        Some(0.5),
        false,
        "twice the per-quasiparticle near-gap coefficient",
    ));

    // ---- relaxation-rate block ----
    let (nal_p, nal_e) = power_rates(1.0, &nal);
    let (nal_p, nal_e) = (nal_p.rate_per_ns, nal_e.rate_per_ns);
    let (cu_p, cu_e) = power_rates(1.0, &cu);
    let (cu_p, cu_e) = (cu_p.rate_per_ns, cu_e.rate_per_ns);
    out.push(entry(
        "C5",
        "published relaxation-time table",
        "gapless-aluminum phonon relaxation rate at 1 K (per ns)",
        1.0 / 3.125,
        nal_p,
        Some(1.0),
        false,
        "",
    ));
    out.push(entry(
        "C6",
        "published relaxation-time table",
        "gapless-aluminum electron relaxation rate at 1 K (per ns)",
        1.0 / 350.0,
        nal_e,
        Some(1.0),
        false,
        "",
    ));
    out.push(entry(
        "C7",
        "published relaxation-time table",
        "copper electron relaxation rate at 1 K (per ns)",
        1.0 / 24.25,
        cu_e,
        Some(1.0),
        false,
        "",
    ));
    out.push(entry(
        "C8",
        "published relaxation-time table",
        "copper phonon relaxation rate at 1 K (per ns)",
        1.0 / 8.2,
        cu_p,
        Some(10.0),
        true,
        "reference appears scaled by ten; the companion length entries shift consistently",
    ));

    // ---- scattering length table ----
    let quantities = ["electron scattering rate (per ns)",
        "electron diffusion length (um)",
        "phonon scattering rate (per ns)",
        "phonon scattering length (um)"];
    let blocks: [(&str, f64, f64, [f64; 4], [bool; 4]); 4] = [
        ("Cu", 3.0, 20.0, [330.0, 3.8, 2.4, 2.0], [false, false, true, true]),
        ("Al", 0.1, 20.0, [3.5, 7.6, 20.0, 0.32], [false, false, false, false]),
        ("Cu", 3.0, 4.0, [2.7, 42.0, 0.49, 9.8], [false, false, true, true]),
        ("Al", 0.1, 4.0, [0.0052, 200.0, 4.0, 1.6], [false, false, false, false]),
    ];
    let mut l_index = 0;
    for (name, thickness, energy, published, documented) in blocks {
        let mat = builtin_material(name).unwrap();
        let row = scattering_lengths(energy, &mat, thickness)
            .expect("table energies are above the gap");
        let computed = [row.e_rate_per_ns, row.e_diffuse_um, row.p_rate_per_ns, row.p_length_um];
        for q in 0..4 {
            l_index += 1;
            let note = if documented[q] {
                "reference appears scaled by ten"
            } else {
                ""
            };
            out.push(entry(
                &format!("L{l_index:02}"),
                "published scattering length table",
                &format!("{name} {} at {energy} K", quantities[q]),
                published[q],
                computed[q],
                Some(25.0),
                documented[q],
                note,
            ));
        }
    }

    // ---- event timeline block ----
    let present = simulate_event(&EventConfig::new(Design::Present));
    let improved = simulate_event(&EventConfig::new(Design::Improved));
    let t1 = |tl: &crate::event::EventTimeline, i: usize| {
        tl.stages[i].t1.value_us().unwrap_or(f64::NAN)
    };
    out.push(entry(
        "E1",
        "published impact timeline",
        "freeze-out stage decay time (us)",
        0.16,
        t1(&present, 1),
        Some(40.0),
        false,
        "density estimate over the hot-spot area",
    ));
    out.push(entry(
        "E2",
        "published impact timeline",
        "diffusion stage decay time (us)",
        0.6,
        t1(&present, 2),
        Some(40.0),
        false,
        "",
    ));
    out.push(entry(
        "E3",
        "published impact timeline",
        "chip-wide bath decay time (us)",
        1.6,
        t1(&present, 3),
        Some(40.0),
        false,
        "reference is quoted as a lower bound",
    ));
    let q20 = 2.0 * PI * 5.0 * 1000.0 * 20.0;
    let r20 = 1.0 / (QP_LOSS_COEFF * q20);
    let recover_ms =
        (RECOMB_COEFF_US / r20 - RECOMB_COEFF_US / present.chip_density_ratio) / 1000.0;
    out.push(entry(
        "E4",
        "published recombination estimate",
        "time for the decay time to recover to 20 us (ms)",
        6.0,
        recover_ms,
        Some(20.0),
        false,
        "",
    ));
    out.push(entry(
        "E5",
        "published impact timeline",
        "freeze-out decay time with the normal layer (us)",
        16.0,
        t1(&improved, 1),
        Some(40.0),
        false,
        "",
    ));
    out.push(entry(
        "E6",
        "published escape-rate estimate",
        "phonon escape time through the wirebonds (ms)",
        4.0,
        phonon_escape_time_ms(&ChipGeometry::default(), al.v_p_um_per_ns),
        Some(20.0),
        false,
        "",
    ));
    out.push(entry(
        "E7",
        "published diffusion estimate",
        "quasiparticle diffusion radius at 1 us (mm)",
        0.4,
        qp_diffusion_radius_mm(1.0, None, &al, 0.1),
        Some(10.0),
        true,
        "reference coefficient is rounded down",
    ));
    out.push(entry(
        "E8",
        "published diffusion estimate",
        "group-velocity reduction 0.25 K above the gap",
        0.46,
        qp_velocity_factor(al.gap_k + 0.25, al.gap_k),
        Some(10.0),
        false,
        "",
    ));
    out.push(entry(
        "E9",
        "published recombination estimate",
        "recombination time scale of the hot-spot density (us)",
        100.0,
        RECOMB_COEFF_US / present.hotspot_density_ratio,
        None,
        false,
        "reference is a rough scale for when recombination matters",
    ));
    out.push(entry(
        "E10",
        "published quality-factor entry",
        "qubit quality factor at the chip-average density",
        5.1e4,
        qubit_q_and_t1(present.chip_density_ratio, 5.0).0,
        Some(15.0),
        true,
        "the reference Q and its companion decay time are mutually \
         inconsistent at this level; the computed decay time stays within \
         its stated bound while Q lands near 37 k",
    ));

    // ---- mitigation design block ----
    let backside = backside_q_estimate(&BacksideCircuit::default());
    out.push(entry(
        "D1",
        "published backside-circuit estimate",
        "quality factor over a continuous resistive backside",
        1000.0,
        backside.q,
        Some(50.0),
        false,
        "reference is quoted as an order of magnitude",
    ));
    out.push(entry(
        "D2",
        "published backside-circuit estimate",
        "reactance of the ground-return inductance (ohm)",
        10.0,
        backside.series_reactance_ohm,
        Some(10.0),
        false,
        "",
    ));
    let island = backside_q_estimate(&BacksideCircuit {
        r_eff_ohm: 0.01,
        ..BacksideCircuit::default()
    });
    out.push(entry(
        "D3",
        "published backside-circuit estimate",
        "quality factor with the backside broken into islands",
        3e6,
        island.q,
        None,
        false,
        "reference is a rough order of magnitude for the island design",
    ));

    out
}

pub fn conformance_table(entries: &[Entry]) -> Table {
    let mut table = Table::new(&[
        "id",
        "location",
        "quantity",
        "reference",
        "computed",
        "rel_diff_pct",
        "tolerance_pct",
        "status",
        "note",
    ]);
    for e in entries {
        table.push_row(vec![
            e.id.as_str().into(),
            e.location.as_str().into(),
            e.quantity.as_str().into(),
            Cell::Num(e.reference),
            Cell::Num(e.computed),
            Cell::Num(e.rel_diff_pct()),
            match e.tolerance_pct {
                Some(t) => Cell::Num(t),
                None => Cell::Empty,
            },
            e.status().to_string().into(),
            e.note.as_str().into(),
        ]);
    }
    table
}

/// One-line tally, suitable for stderr next to the rendered table.
pub fn summary_line(entries: &[Entry]) -> String {
    let count = |s: Status| entries.iter().filter(|e| e.status() == s).count();
    format!(
        "conformance: {} entries, {} pass, {} fail, {} documented deviations, {} annotations",
        entries.len(),
        count(Status::Pass),
        count(Status::Fail),
        count(Status::DocumentedDeviation),
        count(Status::Annotation)
    )
}
