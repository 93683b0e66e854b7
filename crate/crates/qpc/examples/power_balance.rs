//! Electron-phonon power balance in normal metals, and the scattering
//! and diffusion length table for the standard film stack.

use qpc::materials::{builtin_material, builtin_names};
use qpc::rates::{power_rates, scattering_lengths, standard_length_energies};

fn main() {
    println!("power-transfer times at 1 K:");
    println!("{:>6} {:>16} {:>16}", "metal", "phonon tau (ns)", "electron tau (ns)");
    for name in builtin_names() {
        let mat = builtin_material(name).unwrap();
        if mat.is_superconductor() {
            continue;
        }
        let (p, e) = power_rates(1.0, &mat);
        println!(
            "{:>6} {:>16.2} {:>16.2}",
            name,
            1.0 / p.rate_per_ns,
            1.0 / e.rate_per_ns
        );
    }

    println!("\nscattering and diffusion lengths:");
    println!(
        "{:>6} {:>7} {:>8} {:>13} {:>13}",
        "medium", "E (K)", "t (um)", "e diffuse um", "p length um"
    );
    for name in ["Al", "n-Al"] {
        let mat = builtin_material(name).unwrap();
        let thickness = if mat.is_superconductor() { 0.1 } else { 3.0 };
        for e in standard_length_energies() {
            let row = scattering_lengths(e, &mat, thickness).unwrap();
            println!(
                "{:>6} {:>7.0} {:>8.1} {:>13.1} {:>13.1}",
                row.material, row.energy_k, row.film_thickness_um, row.e_diffuse_um, row.p_length_um
            );
        }
    }
}
