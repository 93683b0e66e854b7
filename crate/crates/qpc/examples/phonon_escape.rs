//! How fast athermal phonons leave the chip through the wirebonds, and
//! how the escape time moves with bond count and phonon mean free path.
//! The baseline geometry drains the chip in a few milliseconds, which is
//! what keeps the quasiparticle background recycling for so long.

use qpc::event::{phonon_escape_time_ms, ChipGeometry};
use qpc::materials::builtin_material;

fn main() {
    let al = builtin_material("Al").unwrap();
    let base = ChipGeometry::default();
    println!(
        "baseline: {} bonds, {:.0} um mean free path, escape time {:.2} ms\n",
        base.wirebonds.count,
        base.wirebonds.mean_free_path_um,
        phonon_escape_time_ms(&base, al.v_p_um_per_ns)
    );

    println!("{:>7} {:>10} {:>14}", "bonds", "mfp (um)", "escape (ms)");
    for count in [100, 300, 1000] {
        for mfp in [10.0, 25.0, 100.0] {
            let mut geom = base.clone();
            geom.wirebonds.count = count;
            geom.wirebonds.mean_free_path_um = mfp;
            println!(
                "{:>7} {:>10.0} {:>14.2}",
                count,
                mfp,
                phonon_escape_time_ms(&geom, al.v_p_um_per_ns)
            );
        }
    }
    println!("\nescape rate scales with bond count and contact area; the");
    println!("mean free path sets how often a phonon finds the contact");
}
