//! Command-line interface: one thin binary with a subcommand per tool.

use crate::cascade::{run_trials, CascadeConfig};
use crate::config::Config;
use crate::design::{
    backside_q_estimate, participation_ratio, trap_estimates, BacksideCircuit,
    PARTICIPATION_CONSTANT,
};
use crate::event::{
    phonon_escape_rate_per_ns, simulate_event, ChipGeometry, Design, EventConfig,
};
use crate::materials::{builtin_material, builtin_names, MaterialParams};
use crate::output::{write_table, Cell, Format, Table};
use crate::rates::{
    phonon_pairbreak_rate_fit, phonon_pairbreak_rate_integral, qp_scatter_rate_fit,
    qp_scatter_rate_integral, scattering_lengths, standard_length_energies,
};
use crate::report::{conformance_entries, conformance_table, summary_line};
use crate::rng::DEFAULT_SEED;
use clap::{Args, Parser, Subcommand};
use std::error::Error;
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "qpc",
    version,
    about = "Phonon and quasiparticle down-conversion tools for superconducting chips"
)]
pub struct Cli {
    /// Seed for Monte Carlo runs (overrides the QPC_SEED environment
    /// variable; the built-in default is used when neither is set)
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker threads for Monte Carlo runs; 0 means all cores
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the table here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// key = value file with material.<name>.<field> overrides
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Scattering rates from the full integrals and their fits
    Rates(RatesArgs),
    /// Monte Carlo phonon down-conversion to quasiparticles
    Cascade(CascadeArgs),
    /// Five-stage timeline of a radiation impact
    Event(EventArgs),
    /// Closed-form mitigation estimates
    #[command(subcommand)]
    Design(DesignCmd),
    /// Phonon escape through the wirebonds
    Escape(EscapeArgs),
    /// Computed values against their published references
    Conformance,
}

#[derive(Debug, Args)]
struct RatesArgs {
    /// Material name
    #[arg(long, default_value = "Al")]
    material: String,

    /// Comma-separated energies in K
    #[arg(long, value_delimiter = ',')]
    energies: Option<Vec<f64>>,

    /// Emit the scattering rate and length table instead of the
    /// integral-versus-fit comparison
    #[arg(long)]
    lengths: bool,

    /// Film thickness for diffusion lengths, in um (defaults to 0.1 for
    /// superconductors and 3 for normal metals)
    #[arg(long)]
    thickness_um: Option<f64>,
}

#[derive(Debug, Args)]
struct CascadeArgs {
    /// Comma-separated initial phonon energies in units of the gap
    #[arg(long, value_delimiter = ',', default_value = "10")]
    ep_over_gap: Vec<f64>,

    #[arg(long, default_value_t = 10_000)]
    trials: u64,

    /// Material that sets the gap
    #[arg(long, default_value = "Al")]
    material: String,

    /// Probability that down-conversion happens in the superconductor
    #[arg(long, conflicts_with_all = ["ts_um", "tn_um"])]
    participation: Option<f64>,

    /// Superconducting film thickness in um (with --tn-um, sets the
    /// participation from the bilayer formula)
    #[arg(long, requires = "tn_um")]
    ts_um: Option<f64>,

    /// Normal film thickness in um
    #[arg(long, requires = "ts_um")]
    tn_um: Option<f64>,
}

#[derive(Debug, Args)]
struct EventArgs {
    #[arg(long, default_value_t = 0.2)]
    energy_mev: f64,

    #[arg(long, value_enum, default_value_t = Design::Present)]
    design: Design,

    #[arg(long, default_value_t = 5.0)]
    f_ghz: f64,

    /// Fraction of the deposit converted to quasiparticles
    #[arg(long, default_value_t = 0.57)]
    efficiency: f64,

    /// key = value file with geometry.<field> overrides
    #[arg(long)]
    geometry: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum DesignCmd {
    /// Superconductor share of bilayer down-conversion
    Participation(ParticipationArgs),
    /// Qubit quality factor over a resistive backside layer
    Backside(BacksideArgs),
    /// Scatter time and diffusion length into a lower-gap trap
    Trap(TrapArgs),
}

#[derive(Debug, Args)]
struct ParticipationArgs {
    #[arg(long)]
    ts_um: f64,
    #[arg(long)]
    tn_um: f64,
    #[arg(long, default_value_t = PARTICIPATION_CONSTANT)]
    constant: f64,
}

#[derive(Debug, Args)]
struct BacksideArgs {
    #[arg(long, default_value_t = 6.0)]
    r_ohm: f64,
    #[arg(long, default_value_t = 100.0)]
    c_ff: f64,
    #[arg(long, default_value_t = 0.2)]
    fraction: f64,
    #[arg(long, default_value_t = 5.0)]
    f_ghz: f64,
    #[arg(long, default_value_t = 0.3)]
    l_nh: f64,
}

#[derive(Debug, Args)]
struct TrapArgs {
    #[arg(long, default_value_t = 0.5)]
    tc_k: f64,
    #[arg(long, default_value_t = 1.0)]
    offset_k: f64,
    #[arg(long, default_value_t = 2.03)]
    v_e_mm_per_ns: f64,
    #[arg(long, default_value_t = 25.0)]
    mfp_um: f64,
}

#[derive(Debug, Args)]
struct EscapeArgs {
    /// key = value file with geometry.<field> overrides
    #[arg(long)]
    geometry: Option<PathBuf>,
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn execute(cli: Cli) -> Result<(), Box<dyn Error>> {
    let seed = resolve_seed(cli.seed, std::env::var("QPC_SEED").ok().as_deref())?;
    let config = match &cli.config {
        Some(path) => Config::from_file(path)?,
        None => Config::default(),
    };
    let table = match &cli.command {
        Command::Rates(args) => rates_table(args, &config)?,
        Command::Cascade(args) => cascade_table(args, &config, seed, cli.workers)?,
        Command::Event(args) => event_table(args, &config)?,
        Command::Design(cmd) => design_table(cmd),
        Command::Escape(args) => escape_table(args, &config)?,
        Command::Conformance => {
            let entries = conformance_entries(seed, cli.workers);
            eprintln!("{}", summary_line(&entries));
            conformance_table(&entries)
        }
    };
    write_table(&table, cli.format, cli.output.as_deref())?;
    Ok(())
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env {
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("QPC_SEED must be an unsigned integer, got {v:?}")),
        None => Ok(DEFAULT_SEED),
    }
}

fn load_material(name: &str, config: &Config) -> Result<MaterialParams, Box<dyn Error>> {
    let mut mat = builtin_material(name).map_err(|_| {
        format!(
            "unknown material {name:?}; built-ins are {}",
            builtin_names().join(", ")
        )
    })?;
    config.apply_material_overrides(&mut mat)?;
    mat.validate()?;
    Ok(mat)
}

fn load_geometry(
    design: Design,
    config: &Config,
    geometry_file: &Option<PathBuf>,
) -> Result<ChipGeometry, Box<dyn Error>> {
    let mut geom = match design {
        Design::Present => ChipGeometry::default(),
        Design::Improved => ChipGeometry::improved_default(),
    };
    config.apply_geometry(&mut geom)?;
    if let Some(path) = geometry_file {
        Config::from_file(path)?.apply_geometry(&mut geom)?;
    }
    Ok(geom)
}

fn rates_table(args: &RatesArgs, config: &Config) -> Result<Table, Box<dyn Error>> {
    let mat = load_material(&args.material, config)?;
    if args.lengths {
        let energies = args
            .energies
            .clone()
            .unwrap_or_else(|| standard_length_energies().to_vec());
        let thickness = args.thickness_um.unwrap_or(if mat.is_superconductor() {
            0.1
        } else {
            3.0
        });
        let mut table = Table::new(&[
            "material",
            "energy_K",
            "e_rate_per_ns",
            "e_diffuse_um",
            "p_rate_per_ns",
            "p_length_um",
        ]);
        for e in energies {
            let row = scattering_lengths(e, &mat, thickness)?;
            table.push_row(vec![
                mat.name.as_str().into(),
                Cell::Num(e),
                Cell::Num(row.e_rate_per_ns),
                Cell::Num(row.e_diffuse_um),
                Cell::Num(row.p_rate_per_ns),
                Cell::Num(row.p_length_um),
            ]);
        }
        return Ok(table);
    }

    if !mat.is_superconductor() || mat.tau0_ns <= 0.0 {
        return Err(format!(
            "material {:?} has no pairing rate data; use --lengths for the power-law rates",
            mat.name
        )
        .into());
    }
    let energies = args.energies.clone().unwrap_or_else(|| {
        [1.2, 1.5, 2.0, 2.5, 3.0, 4.0, 6.0, 10.0]
            .iter()
            .map(|f| f * mat.gap_k)
            .collect()
    });
    let mut table = Table::new(&[
        "material",
        "quantity",
        "energy_K",
        "rate_integral_per_ns",
        "rate_fit_per_ns",
        "rel_residual",
    ]);
    for &e in &energies {
        if e <= mat.gap_k {
            return Err(format!(
                "energy {e} K is at or below the gap ({} K)",
                mat.gap_k
            )
            .into());
        }
        let integral = qp_scatter_rate_integral(e, &mat)?;
        let fit = qp_scatter_rate_fit(e, &mat)?.rate_per_ns;
        table.push_row(vec![
            mat.name.as_str().into(),
            "qp-scatter".into(),
            Cell::Num(e),
            Cell::Num(integral.rate_per_ns),
            Cell::Num(fit),
            Cell::Num(residual(fit, integral.rate_per_ns)),
        ]);
    }
    for &e in &energies {
        let integral = phonon_pairbreak_rate_integral(e, &mat)?;
        let fit = phonon_pairbreak_rate_fit(e, &mat, false)?.rate_per_ns;
        table.push_row(vec![
            mat.name.as_str().into(),
            "phonon-pairbreak".into(),
            Cell::Num(e),
            Cell::Num(integral.rate_per_ns),
            Cell::Num(fit),
            Cell::Num(residual(fit, integral.rate_per_ns)),
        ]);
    }
    Ok(table)
}

fn residual(fit: f64, integral: f64) -> f64 {
    if integral == 0.0 {
        if fit == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (fit - integral).abs() / integral
    }
}

fn cascade_table(
    args: &CascadeArgs,
    config: &Config,
    seed: u64,
    workers: usize,
) -> Result<Table, Box<dyn Error>> {
    let mat = load_material(&args.material, config)?;
    if !mat.is_superconductor() {
        return Err(format!("material {:?} has no gap to cascade against", mat.name).into());
    }
    let mut cfg = CascadeConfig::for_gap(mat.gap_k);
    cfg.trials = args.trials;
    cfg.seed = seed;
    cfg.participation_s = match (args.participation, args.ts_um, args.tn_um) {
        (Some(s), _, _) => s,
        (None, Some(ts), Some(tn)) => participation_ratio(ts, tn, cfg.participation_constant),
        _ => 1.0,
    };
    let mut table = Table::new(&[
        "ep_over_gap",
        "participation",
        "trials",
        "n_qp_mean",
        "n_qp_norm_mean",
        "n_qp_norm_stderr",
        "e_qp_frac",
        "e_subgap_frac",
        "e_electron_frac",
    ]);
    for &x in &args.ep_over_gap {
        let r = run_trials(x * mat.gap_k, &cfg, workers)?;
        table.push_row(vec![
            Cell::Num(x),
            Cell::Num(r.participation_s),
            Cell::Int(r.trials as i64),
            Cell::Num(r.n_qp_mean),
            Cell::Num(r.n_qp_normalized),
            Cell::Num(r.n_qp_norm_stderr),
            Cell::Num(r.e_qp_frac()),
            Cell::Num(r.e_subgap_frac()),
            Cell::Num(r.e_electron_frac()),
        ]);
    }
    Ok(table)
}

fn event_table(args: &EventArgs, config: &Config) -> Result<Table, Box<dyn Error>> {
    let material = load_material("Al", config)?;
    let geometry = load_geometry(args.design, config, &args.geometry)?;
    let cfg = EventConfig {
        deposit_energy_mev: args.energy_mev,
        qubit_frequency_ghz: args.f_ghz,
        conversion_efficiency: args.efficiency,
        design: args.design,
        geometry,
        material,
    };
    let timeline = simulate_event(&cfg);
    let mut table = Table::new(&["stage", "t_start_us", "duration_us", "size_mm", "t1_us"]);
    for s in &timeline.stages {
        table.push_row(vec![
            s.name.into(),
            Cell::Num(s.t_start_us),
            Cell::Num(s.duration_us),
            s.size.to_string().into(),
            s.t1.to_string().into(),
        ]);
    }
    Ok(table)
}

fn design_table(cmd: &DesignCmd) -> Table {
    match cmd {
        DesignCmd::Participation(a) => {
            let mut table = Table::new(&["ts_um", "tn_um", "constant", "participation"]);
            table.push_row(vec![
                Cell::Num(a.ts_um),
                Cell::Num(a.tn_um),
                Cell::Num(a.constant),
                Cell::Num(participation_ratio(a.ts_um, a.tn_um, a.constant)),
            ]);
            table
        }
        DesignCmd::Backside(a) => {
            let circuit = BacksideCircuit {
                r_eff_ohm: a.r_ohm,
                qubit_c_ff: a.c_ff,
                coupling_fraction: a.fraction,
                f_ghz: a.f_ghz,
                series_l_nh: a.l_nh,
            };
            let est = backside_q_estimate(&circuit);
            let mut table = Table::new(&[
                "r_ohm",
                "c_ff",
                "fraction",
                "f_ghz",
                "q",
                "series_reactance_ohm",
            ]);
            table.push_row(vec![
                Cell::Num(a.r_ohm),
                Cell::Num(a.c_ff),
                Cell::Num(a.fraction),
                Cell::Num(a.f_ghz),
                Cell::Num(est.q),
                Cell::Num(est.series_reactance_ohm),
            ]);
            table
        }
        DesignCmd::Trap(a) => {
            let est = trap_estimates(a.tc_k, a.offset_k, a.v_e_mm_per_ns, a.mfp_um);
            let mut table = Table::new(&[
                "tc_k",
                "offset_k",
                "trap_gap_k",
                "scatter_time_us",
                "diffusion_length_um",
            ]);
            table.push_row(vec![
                Cell::Num(a.tc_k),
                Cell::Num(a.offset_k),
                Cell::Num(est.trap_gap_k),
                Cell::Num(est.scatter_time_us),
                Cell::Num(est.diffusion_length_um),
            ]);
            table
        }
    }
}

fn escape_table(args: &EscapeArgs, config: &Config) -> Result<Table, Box<dyn Error>> {
    let mat = load_material("Al", config)?;
    let geom = load_geometry(Design::Present, config, &args.geometry)?;
    let rate = phonon_escape_rate_per_ns(&geom, mat.v_p_um_per_ns);
    let mut table = Table::new(&[
        "n_wirebonds",
        "bond_radius_um",
        "bond_length_mm",
        "mean_free_path_um",
        "escape_rate_per_ns",
        "escape_time_ms",
    ]);
    table.push_row(vec![
        Cell::Int(geom.wirebonds.count as i64),
        Cell::Num(geom.wirebonds.wire_radius_um),
        Cell::Num(geom.wirebonds.wire_length_mm),
        Cell::Num(geom.wirebonds.mean_free_path_um),
        Cell::Num(rate),
        Cell::Num(1.0 / rate / 1e6),
    ]);
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(Some(7), Some("9")).unwrap(), 7);
        assert_eq!(resolve_seed(None, Some("9")).unwrap(), 9);
        assert_eq!(resolve_seed(None, None).unwrap(), DEFAULT_SEED);
        assert!(resolve_seed(None, Some("fast")).is_err());
    }

    #[test]
    fn parses_defaults() {
        let cli = Cli::try_parse_from(["qpc", "cascade"]).unwrap();
        assert_eq!(cli.workers, 0);
        assert!(cli.seed.is_none());
        match cli.command {
            Command::Cascade(a) => {
                assert_eq!(a.ep_over_gap, vec![10.0]);
                assert_eq!(a.trials, 10_000);
            }
            _ => panic!("wrong subcommand"),
        }
    }

    #[test]
    fn participation_conflicts_with_thicknesses() {
        let err = Cli::try_parse_from([
            "qpc",
            "cascade",
            "--participation",
            "0.5",
            "--ts-um",
            "0.1",
            "--tn-um",
            "6",
        ]);
        assert!(err.is_err());
        let err = Cli::try_parse_from(["qpc", "cascade", "--ts-um", "0.1"]);
        assert!(err.is_err(), "--ts-um alone must be rejected");
    }

    #[test]
    fn comma_lists_parse() {
        let cli = Cli::try_parse_from(["qpc", "cascade", "--ep-over-gap", "2,4,8"]).unwrap();
        match cli.command {
            Command::Cascade(a) => assert_eq!(a.ep_over_gap, vec![2.0, 4.0, 8.0]),
            _ => unreachable!(),
        }
    }

    #[test]
    fn missing_subcommand_is_a_usage_error() {
        // exits with the usage code (2), showing help
        let err = Cli::try_parse_from(["qpc"]).unwrap_err();
        assert_eq!(
            err.kind(),
            clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
        );
    }
}
