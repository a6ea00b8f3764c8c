//! Command-line entry point: generate instances, evolve QUBOs, run slice
//! sweeps, render flip-rate heatmaps, and solve tiny instances exactly.
//!
//! Exit codes: 0 success, 1 runtime/IO failure, 2 usage or validation failure.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use anneal_slice::analysis::{flip_rate_heatmap_data, run_slice_sweep, SliceSweepConfig};
use anneal_slice::annealer::{Backend, SamplerConfig};
use anneal_slice::error::{Error, Result};
use anneal_slice::genetic::{run_ga, GaConfig};
use anneal_slice::heatmap::render_heatmap_svg;
use anneal_slice::manifest::RunManifest;
use anneal_slice::qubo::{exact_minimum, random_qubo, Qubo};
use anneal_slice::schedule::{sliced_schedule, EnergyScaleTable};
use anneal_slice::topology::parse_chimera_spec;

#[derive(Parser)]
#[command(name = "anneal-slice", version, about = "Anneal-slicing toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Seed; pass `random` to draw from entropy.
    #[arg(long, global = true, default_value = "2020")]
    seed: String,
    /// Output directory; created if missing.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Sampler backend.
    #[arg(long, global = true, default_value = "svmc")]
    backend: String,
    /// Energy-scale table CSV (header `s,A_GHz,B_GHz`); bundled table if omitted.
    #[arg(long, global = true)]
    schedule_table: Option<PathBuf>,
}

#[derive(Args)]
struct SvmcArgs {
    /// SVMC sweeps per microsecond of schedule time.
    #[arg(long, default_value_t = 10)]
    sweeps_per_us: usize,
    /// Dimensionless inverse temperature of the SVMC updates.
    #[arg(long, default_value_t = 10.0)]
    beta: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random QUBO on a Chimera topology.
    Gen {
        #[command(flatten)]
        common: Common,
        /// Topology spec, e.g. chimera-4-4-4.
        #[arg(long, default_value = "chimera-4-4-4")]
        topology: String,
        /// Linear weight range `lo,hi`.
        #[arg(long, default_value = "-2,2")]
        linear_range: String,
        /// Coupler weight range `lo,hi`.
        #[arg(long, default_value = "-1,1")]
        quad_range: String,
    },
    /// Evolve a QUBO whose solution changes strongly during the anneal.
    Evolve {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        svmc: SvmcArgs,
        #[arg(long, default_value = "chimera-4-4-4")]
        topology: String,
        #[arg(long, default_value_t = 50)]
        iters: usize,
        #[arg(long, default_value_t = 50)]
        pop: usize,
        #[arg(long, default_value_t = 0.25)]
        pcross: f64,
        #[arg(long, default_value_t = 0.01)]
        pmut: f64,
        #[arg(long, default_value_t = 1.0)]
        short_us: f64,
        #[arg(long, default_value_t = 1000.0)]
        long_us: f64,
        #[arg(long, default_value_t = 1000)]
        reads_per_eval: usize,
    },
    /// Dissect an anneal into slices and record per-slice statistics.
    Slice {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        svmc: SvmcArgs,
        /// QUBO instance file.
        #[arg(long)]
        qubo: PathBuf,
        #[arg(long, default_value_t = 100)]
        slices: usize,
        #[arg(long, default_value_t = 200.0)]
        total_us: f64,
        #[arg(long, default_value_t = 200)]
        reads: usize,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 10)]
        top_k: usize,
        #[arg(long, default_value_t = 1.0)]
        quench_us: f64,
        /// Print the schedule CSV for slice K (1-based) and exit.
        #[arg(long)]
        emit_schedule_for: Option<usize>,
    },
    /// Render a flip-rate CSV as an SVG heatmap on the topology layout.
    Heatmap {
        #[command(flatten)]
        common: Common,
        /// Flip-rate CSV (header `var,flip_rate,freezeout_slice`).
        #[arg(long)]
        flip_rates: PathBuf,
        #[arg(long)]
        topology: String,
    },
    /// Exhaustively solve a small QUBO (n <= 24) and print the minimum.
    SolveExact {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        qubo: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Io { .. } => 1,
                _ => 2,
            };
            std::process::exit(code);
        }
    }
}

fn resolve_seed(s: &str) -> Result<u64> {
    if s == "random" {
        return Ok(rand::random());
    }
    s.parse()
        .map_err(|_| Error::InvalidArgument(format!("bad seed {s:?}: expected u64 or `random`")))
}

fn parse_range(s: &str) -> Result<(f64, f64)> {
    let parts: Vec<&str> = s.split(',').collect();
    let err = || Error::InvalidArgument(format!("bad range {s:?}: expected `lo,hi`"));
    if parts.len() != 2 {
        return Err(err());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| err())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| err())?;
    if !(lo < hi) {
        return Err(err());
    }
    Ok((lo, hi))
}

fn load_energy_scales(common: &Common) -> Result<EnergyScaleTable> {
    match &common.schedule_table {
        Some(path) => EnergyScaleTable::load(path),
        None => Ok(EnergyScaleTable::default_table()),
    }
}

fn ensure_out_dir(common: &Common) -> Result<()> {
    std::fs::create_dir_all(&common.out)
        .map_err(|e| Error::io(common.out.display().to_string(), e))
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content).map_err(|e| Error::io(path.display().to_string(), e))
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Gen {
            common,
            topology,
            linear_range,
            quad_range,
        } => {
            let start = Instant::now();
            let seed = resolve_seed(&common.seed)?;
            let lin = parse_range(&linear_range)?;
            let quad = parse_range(&quad_range)?;
            let topo = std::sync::Arc::new(parse_chimera_spec(&topology)?);
            let q = random_qubo(topo, seed, lin, quad)?;
            ensure_out_dir(&common)?;
            let qubo_path = common.out.join("qubo.json");
            q.save(&qubo_path)?;

            let mut manifest = RunManifest::new(
                "gen",
                seed,
                serde_json::json!({
                    "topology": topology,
                    "linear_range": lin,
                    "quad_range": quad,
                }),
            );
            manifest.outputs.push(qubo_path.display().to_string());
            manifest.duration_seconds = start.elapsed().as_secs_f64();
            manifest.write(&common.out.join("gen.manifest.json"))?;
            println!("wrote {} ({} variables)", qubo_path.display(), q.num_vars());
            Ok(())
        }

        Command::Evolve {
            common,
            svmc,
            topology,
            iters,
            pop,
            pcross,
            pmut,
            short_us,
            long_us,
            reads_per_eval,
        } => {
            let start = Instant::now();
            let seed = resolve_seed(&common.seed)?;
            let backend: Backend = common.backend.parse()?;
            let topo = std::sync::Arc::new(parse_chimera_spec(&topology)?);

            let mut cfg = GaConfig::new(seed);
            cfg.population_size = pop;
            cfg.crossover_proportion = pcross;
            cfg.mutation_rate = pmut;
            cfg.iterations = iters;
            cfg.short_time = short_us;
            cfg.long_time = long_us;
            cfg.reads_per_eval = reads_per_eval;
            cfg.backend = backend;
            cfg.sampler = SamplerConfig::new(seed);
            cfg.sampler.sweeps_per_microsecond = svmc.sweeps_per_us;
            cfg.sampler.inverse_temperature = svmc.beta;
            cfg.sampler.energy_scales = load_energy_scales(&common)?;
            cfg.validate()?;

            let result = run_ga(&cfg, &topo)?;
            ensure_out_dir(&common)?;
            let best_path = common.out.join("best.qubo.json");
            result.best.save(&best_path)?;
            let history_path = common.out.join("history.csv");
            write_file(&history_path, &result.history.to_csv())?;

            let mut manifest = RunManifest::new(
                "evolve",
                seed,
                serde_json::json!({
                    "topology": topology,
                    "iters": iters,
                    "pop": pop,
                    "pcross": pcross,
                    "pmut": pmut,
                    "short_us": short_us,
                    "long_us": long_us,
                    "reads_per_eval": reads_per_eval,
                    "backend": common.backend,
                    "sweeps_per_us": svmc.sweeps_per_us,
                    "beta": svmc.beta,
                }),
            );
            manifest.outputs = vec![
                best_path.display().to_string(),
                history_path.display().to_string(),
            ];
            manifest.duration_seconds = start.elapsed().as_secs_f64();
            manifest.write(&common.out.join("evolve.manifest.json"))?;
            println!(
                "best fitness {:.6} after {} iterations; wrote {}",
                result.best_record.fitness,
                iters,
                best_path.display()
            );
            Ok(())
        }

        Command::Slice {
            common,
            svmc,
            qubo,
            slices,
            total_us,
            reads,
            repeats,
            top_k,
            quench_us,
            emit_schedule_for,
        } => {
            let start = Instant::now();
            let seed = resolve_seed(&common.seed)?;

            if let Some(k) = emit_schedule_for {
                if k == 0 || k > slices {
                    return Err(Error::InvalidArgument(format!(
                        "slice index {k} outside 1..={slices}"
                    )));
                }
                let slice_time = total_us * k as f64 / slices as f64;
                let sch = sliced_schedule(total_us, slice_time, quench_us)?;
                print!("{}", sch.to_csv());
                return Ok(());
            }

            let backend: Backend = common.backend.parse()?;
            let q = Qubo::load(&qubo)?;

            let mut cfg = SliceSweepConfig::full_scale(total_us, slices, seed);
            cfg.reads_per_slice = reads;
            cfg.repeats = repeats;
            cfg.top_k = top_k;
            cfg.quench_duration = quench_us;
            cfg.sampler = SamplerConfig::new(seed);
            cfg.sampler.sweeps_per_microsecond = svmc.sweeps_per_us;
            cfg.sampler.inverse_temperature = svmc.beta;
            cfg.sampler.energy_scales = load_energy_scales(&common)?;

            let sweep = run_slice_sweep(&q, &cfg, backend.build().as_ref())?;
            ensure_out_dir(&common)?;
            let sweep_path = common.out.join("sweep.csv");
            write_file(&sweep_path, &sweep.to_csv())?;
            let flips_path = common.out.join("flip_rates.csv");
            write_file(&flips_path, &sweep.flip_rate_csv())?;

            let mut manifest = RunManifest::new(
                "slice",
                seed,
                serde_json::json!({
                    "qubo": qubo.display().to_string(),
                    "slices": slices,
                    "total_us": total_us,
                    "reads": reads,
                    "repeats": repeats,
                    "top_k": top_k,
                    "quench_us": quench_us,
                    "backend": common.backend,
                    "sweeps_per_us": svmc.sweeps_per_us,
                    "beta": svmc.beta,
                }),
            );
            manifest.inputs.push(qubo.display().to_string());
            manifest.outputs = vec![
                sweep_path.display().to_string(),
                flips_path.display().to_string(),
            ];
            manifest.duration_seconds = start.elapsed().as_secs_f64();
            manifest.write(&common.out.join("slice.manifest.json"))?;
            println!(
                "wrote {} and {} ({} slices)",
                sweep_path.display(),
                flips_path.display(),
                slices
            );
            Ok(())
        }

        Command::Heatmap {
            common,
            flip_rates,
            topology,
        } => {
            let start = Instant::now();
            let seed = resolve_seed(&common.seed)?;
            let topo = parse_chimera_spec(&topology)?;
            let rates = read_flip_rate_csv(&flip_rates)?;
            if rates.len() != topo.num_vars {
                return Err(Error::DimensionMismatch {
                    expected: topo.num_vars,
                    got: rates.len(),
                });
            }
            let cells = flip_rate_heatmap_data(&rates, &topo)?;
            let svg = render_heatmap_svg(&cells);
            ensure_out_dir(&common)?;
            let svg_path = common.out.join("heatmap.svg");
            write_file(&svg_path, &svg)?;

            let mut manifest = RunManifest::new(
                "heatmap",
                seed,
                serde_json::json!({
                    "flip_rates": flip_rates.display().to_string(),
                    "topology": topology,
                }),
            );
            manifest.inputs.push(flip_rates.display().to_string());
            manifest.outputs.push(svg_path.display().to_string());
            manifest.duration_seconds = start.elapsed().as_secs_f64();
            manifest.write(&common.out.join("heatmap.manifest.json"))?;
            println!("wrote {}", svg_path.display());
            Ok(())
        }

        Command::SolveExact { common: _, qubo } => {
            let q = Qubo::load(&qubo)?;
            let (bits, energy) = exact_minimum(&q)?;
            println!("energy {:.16e}", energy);
            println!("bits {}", bits.to_01_string());
            Ok(())
        }
    }
}

fn read_flip_rate_csv(path: &Path) -> Result<Vec<f64>> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    let mut rates = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.starts_with("var")) {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                path: path.display().to_string(),
                context: format!("line {}", lineno + 1),
                message: format!("expected 3 fields, got {}", fields.len()),
            });
        }
        let var: usize = fields[0].parse().map_err(|e| Error::Parse {
            path: path.display().to_string(),
            context: format!("line {}, field 1", lineno + 1),
            message: format!("{e}"),
        })?;
        if var != rates.len() {
            return Err(Error::Parse {
                path: path.display().to_string(),
                context: format!("line {}", lineno + 1),
                message: format!("expected var {}, found {var}", rates.len()),
            });
        }
        rates.push(fields[1].parse().map_err(|e| Error::Parse {
            path: path.display().to_string(),
            context: format!("line {}, field 2", lineno + 1),
            message: format!("{e}"),
        })?);
    }
    Ok(rates)
}
