//! Closed-form sizing of the three mitigation knobs: a normal-metal
//! layer that eats the down-conversion, a resistive backside contact
//! that damps the substrate, and a lower-gap trap that collects
//! quasiparticles before they reach a junction.

use qpc::design::{
    backside_q_estimate, participation_ratio, trap_estimates, BacksideCircuit,
    PARTICIPATION_CONSTANT,
};

fn main() {
    println!("normal-metal participation (0.1 um superconductor on top):");
    println!("{:>10} {:>14}", "tn (um)", "SC share");
    for tn in [0.0, 0.5, 2.0, 6.0, 20.0] {
        println!(
            "{:>10.1} {:>14.3}",
            tn,
            participation_ratio(0.1, tn, PARTICIPATION_CONSTANT)
        );
    }

    let circuit = BacksideCircuit {
        r_eff_ohm: 6.0,
        qubit_c_ff: 100.0,
        coupling_fraction: 0.2,
        f_ghz: 5.0,
        series_l_nh: 0.3,
    };
    let est = backside_q_estimate(&circuit);
    println!("\nresistive backside contact:");
    println!(
        "  {} ohm seen through a {}% field coupling limits qubit Q to {:.1e}",
        circuit.r_eff_ohm,
        100.0 * circuit.coupling_fraction,
        est.q
    );
    println!(
        "  series reactance at {} GHz: {:.1} ohm (stores energy, no loss)",
        circuit.f_ghz, est.series_reactance_ohm
    );

    let trap = trap_estimates(0.5, 1.0, 2.03, 25.0);
    println!("\nquasiparticle trap (Tc = 0.5 K layer):");
    println!("  trap gap {:.2} K", trap.trap_gap_k);
    println!(
        "  a quasiparticle 1 K above the trap gap scatters down in {:.1} us",
        trap.scatter_time_us
    );
    println!(
        "  and diffuses {:.0} um while doing so; traps on that pitch work",
        trap.diffusion_length_um
    );
}
