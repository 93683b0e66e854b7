//! Yield of a superconductor/normal-metal bilayer cascade as the
//! superconductor participation is swept from 0 to 1, with a linear fit.
//! Energy that down-converts in the normal metal stays with electrons,
//! so the quasiparticle yield scales almost linearly with participation.

use qpc::cascade::{run_trials, CascadeConfig};
use qpc::materials::builtin_material;

fn main() {
    let al = builtin_material("Al").unwrap();
    let mut cfg = CascadeConfig::for_gap(al.gap_k);
    cfg.trials = 3000;
    let ep = 10.0 * al.gap_k;

    let mut pts = Vec::new();
    println!("{:>6} {:>10} {:>12}", "s", "yield", "e_electron");
    for i in 0..=10 {
        let s = f64::from(i) / 10.0;
        cfg.participation_s = s;
        let res = run_trials(ep, &cfg, 0).unwrap();
        println!(
            "{:>6.1} {:>10.4} {:>12.4}",
            s,
            res.n_qp_normalized,
            res.e_electron_frac()
        );
        pts.push((s, res.n_qp_normalized));
    }

    // Least-squares line through the sweep.
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let intercept = (sy - slope * sx) / n;
    println!("\nlinear fit: yield = {slope:.4} * s + {intercept:.4}");
    println!("at s = 1 the fit gives {:.4}", slope + intercept);
}
