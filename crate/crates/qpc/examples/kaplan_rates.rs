//! Single-particle scattering rates in aluminum: the full numerical
//! integrals next to the closed-form fits the cascade engine uses.

use qpc::materials::builtin_material;
use qpc::rates::{
    phonon_pairbreak_rate_fit, phonon_pairbreak_rate_integral, qp_scatter_rate_fit,
    qp_scatter_rate_integral,
};

fn main() {
    let al = builtin_material("Al").unwrap();
    let gap = al.gap_k;
    println!("Al, gap {gap:.3} K\n");

    println!("quasiparticle phonon emission:");
    println!(
        "{:>7} {:>14} {:>14} {:>9}",
        "E/gap", "integral/ns", "fit/ns", "fit err"
    );
    for x in [1.2, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0] {
        let e = x * gap;
        let full = qp_scatter_rate_integral(e, &al).unwrap().rate_per_ns;
        let fit = qp_scatter_rate_fit(e, &al).unwrap().rate_per_ns;
        println!(
            "{:>7.1} {:>14.6e} {:>14.6e} {:>8.1}%",
            x,
            full,
            fit,
            100.0 * (fit / full - 1.0)
        );
    }
    println!("(the cubic fit is rough near the gap and converges above ~2 gaps)\n");

    println!("phonon pair breaking:");
    println!(
        "{:>7} {:>14} {:>14} {:>9}",
        "Ep/gap", "integral/ns", "fit/ns", "fit err"
    );
    for w in [2.1, 2.5, 3.0, 5.0, 10.0, 20.0, 50.0] {
        let ep = w * gap;
        let full = phonon_pairbreak_rate_integral(ep, &al).unwrap().rate_per_ns;
        let fit = phonon_pairbreak_rate_fit(ep, &al, false).unwrap().rate_per_ns;
        println!(
            "{:>7.1} {:>14.6e} {:>14.6e} {:>8.1}%",
            w,
            full,
            fit,
            100.0 * (fit / full - 1.0)
        );
    }
}
