//! Quasiparticle yield of the down-conversion cascade as a function of
//! the initial phonon energy, normalized so 1.0 would mean the whole
//! deposit ends up in quasiparticles. The curve rises from the 2-gap
//! threshold and flattens near 0.59 once the cascade is deep.

use qpc::cascade::{run_trials, CascadeConfig};
use qpc::materials::builtin_material;

fn main() {
    let al = builtin_material("Al").unwrap();
    let mut cfg = CascadeConfig::for_gap(al.gap_k);
    cfg.trials = 2000;

    println!(
        "{:>7} {:>10} {:>10} {:>10} {:>10}",
        "Ep/gap", "yield", "stderr", "e_subgap", "n_qp mean"
    );
    for x in [2.5, 3.0, 4.0, 6.0, 10.0, 20.0, 50.0, 100.0, 200.0] {
        let res = run_trials(x * al.gap_k, &cfg, 0).unwrap();
        println!(
            "{:>7.1} {:>10.4} {:>10.4} {:>10.4} {:>10.2}",
            x,
            res.n_qp_normalized,
            res.n_qp_norm_stderr,
            res.e_subgap_frac(),
            res.n_qp_mean
        );
    }
    println!("\nyield = n_qp * gap / Ep; e_subgap is the energy fraction");
    println!("stranded in phonons below the pair-breaking threshold");
}
