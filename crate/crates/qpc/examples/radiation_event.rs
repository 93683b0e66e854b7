//! Five-stage timeline of a 0.2 MeV radiation impact, for the present
//! chip and for an improved design with a thick normal-metal backside
//! layer. Each stage lists the elapsed time, the spatial extent of the
//! quasiparticle cloud, and the qubit relaxation time it allows.

use qpc::event::{simulate_event, Design, EventConfig, T1Entry};

fn t1_text(t1: &T1Entry) -> String {
    match t1 {
        T1Entry::Baseline => "baseline".to_string(),
        T1Entry::Finite(v) => format!("{v:.2} us"),
        T1Entry::AtLeast(v) => format!(">{v:.2} us"),
    }
}

fn print_timeline(cfg: &EventConfig) {
    let tl = simulate_event(cfg);
    println!(
        "{:?} design: {:.1e} quasiparticles from {} MeV, chip-average density ratio {:.2e}",
        tl.design, tl.n_qp, tl.deposit_energy_mev, tl.chip_density_ratio
    );
    println!(
        "{:>18} {:>10} {:>12} {:>12}",
        "stage", "t (us)", "extent (mm)", "T1"
    );
    for s in &tl.stages {
        println!(
            "{:>18} {:>10} {:>12} {:>12}",
            s.name,
            s.time_us,
            s.size.to_string(),
            t1_text(&s.t1)
        );
    }
    println!();
}

fn main() {
    print_timeline(&EventConfig::new(Design::Present));
    print_timeline(&EventConfig::new(Design::Improved));

    let present = simulate_event(&EventConfig::new(Design::Present));
    let improved = simulate_event(&EventConfig::new(Design::Improved));
    let p = present.stages[1].t1.value_us().unwrap();
    let i = improved.stages[1].t1.value_us().unwrap();
    println!(
        "freeze-out T1, improved over present: {:.0}x (hotspot density diluted into the normal layer)",
        i / p
    );
}
