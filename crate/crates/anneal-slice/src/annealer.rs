//! Sampler backends: the spin-vector Monte Carlo (SVMC) annealer that follows
//! an arbitrary anneal schedule, and a deterministic exact backend for tiny
//! instances.
//!
//! SVMC evolves one planar angle theta_i in [0, pi] per variable under the
//! energy
//!
//!   E(theta) = -(A/2) sum_i sin(theta_i)
//!            + (B/2) [ sum_i h_i cos(theta_i)
//!                    + sum_(i,j) J_ij cos(theta_i) cos(theta_j) ]
//!
//! with (h, J) the Ising form of the QUBO and (A, B) interpolated from the
//! energy-scale table at the schedule fraction of the current sweep. Spins
//! lock as B/A grows, which reproduces freeze-out-like dynamics; a short
//! quench segment receives few sweeps and so acts as a projection of the
//! current state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{derive_seed, map_indexed};
use crate::qubo::{exact_minimum, spins_to_bits, BitString, IsingModel, Qubo, EXACT_CAP};
use crate::schedule::{validate, AnnealSchedule, EnergyScaleTable, DEFAULT_SLOPE_MAX, MAX_POINTS};

const READ_TAG: u64 = 0x5245_4144; // "READ"
const COS_TIE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub num_reads: usize,
    pub seed: u64,
    /// SVMC time resolution: sweeps per microsecond of schedule time.
    pub sweeps_per_microsecond: usize,
    /// Dimensionless beta applied to the SVMC energy.
    pub inverse_temperature: f64,
    /// Half-width of the uniform theta proposal, radians.
    pub proposal_width: f64,
    pub energy_scales: EnergyScaleTable,
}

impl SamplerConfig {
    pub fn new(seed: u64) -> Self {
        SamplerConfig {
            num_reads: 1000,
            seed,
            sweeps_per_microsecond: 10,
            inverse_temperature: 10.0,
            proposal_width: 0.3,
            energy_scales: EnergyScaleTable::default_table(),
        }
    }

    pub fn with_reads(mut self, num_reads: usize) -> Self {
        self.num_reads = num_reads;
        self
    }

    fn check(&self) -> Result<()> {
        if self.num_reads == 0 || self.sweeps_per_microsecond == 0 {
            return Err(Error::Config(
                "num_reads and sweeps_per_microsecond must be >= 1".into(),
            ));
        }
        if !(self.inverse_temperature > 0.0) {
            return Err(Error::Config("inverse_temperature must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub read: usize,
    pub bits: BitString,
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub samples: Vec<Sample>,
    pub schedule_used: AnnealSchedule,
    pub qubo_ref: String,
}

impl SampleSet {
    /// The minimum-energy sample; ties break toward the earliest read index.
    pub fn min_sample(&self) -> Result<&Sample> {
        self.samples
            .iter()
            .reduce(|best, s| if s.energy < best.energy { s } else { best })
            .ok_or_else(|| Error::InvalidArgument("empty sample set".into()))
    }

    pub fn min_energy(&self) -> Result<(BitString, f64)> {
        let s = self.min_sample()?;
        Ok((s.bits.clone(), s.energy))
    }

    pub fn energies(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.energy).collect()
    }

    /// CSV with header `read,energy,bits`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("read,energy,bits\n");
        for s in &self.samples {
            out.push_str(&format!(
                "{},{:.16e},{}\n",
                s.read,
                s.energy,
                s.bits.to_01_string()
            ));
        }
        out
    }
}

/// The stand-in for submitting anneals to the machine. Backends are stateless
/// between calls; every read's randomness derives from (seed, read index).
pub trait Sampler: Sync {
    fn name(&self) -> &'static str;

    fn sample(&self, q: &Qubo, sch: &AnnealSchedule, cfg: &SamplerConfig) -> Result<SampleSet>;
}

// ---------------------------------------------------------------------------
// SVMC backend
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, Default)]
pub struct SvmcSampler;

struct SvmcProblem {
    ising: IsingModel,
    /// Per-variable (neighbor, J) adjacency.
    adj: Vec<Vec<(usize, f64)>>,
}

impl SvmcProblem {
    fn new(q: &Qubo) -> Self {
        let ising = q.to_ising();
        let n = q.num_vars();
        let mut adj = vec![Vec::new(); n];
        for (idx, &(u, v)) in q.topology.edges.iter().enumerate() {
            let j = ising.j[idx];
            adj[u].push((v, j));
            adj[v].push((u, j));
        }
        SvmcProblem { ising, adj }
    }
}

/// Splits the schedule into per-sweep anneal fractions. Total sweeps equal
/// ceil(total_time * sweeps_per_us), apportioned to segments by time extent
/// via cumulative rounding; each sweep sees the fraction at its start.
fn sweep_fractions(sch: &AnnealSchedule, sweeps_per_us: usize) -> Vec<f64> {
    let mut fractions = Vec::new();
    let pts = &sch.points;
    let boundary = |t: f64| (t * sweeps_per_us as f64).ceil() as usize;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let count = boundary(b.time) - boundary(a.time);
        for j in 0..count {
            let f = j as f64 / count as f64;
            fractions.push(a.s + f * (b.s - a.s));
        }
    }
    fractions
}

fn svmc_anneal(
    problem: &SvmcProblem,
    fractions: &[f64],
    cfg: &SamplerConfig,
    read_index: usize,
) -> BitString {
    let n = problem.ising.topology.num_vars;
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[READ_TAG, read_index as u64]));
    let beta = cfg.inverse_temperature;
    let w = cfg.proposal_width;

    // Transverse-field ground state analogue: all angles at pi/2.
    let mut theta = vec![std::f64::consts::FRAC_PI_2; n];
    let mut cos_t: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
    let mut sin_t: Vec<f64> = theta.iter().map(|t| t.sin()).collect();

    for &s in fractions {
        let (a_scale, b_scale) = cfg
            .energy_scales
            .interpolate(s)
            .expect("schedule fractions lie in [0, 1]");
        for i in 0..n {
            let proposed = (theta[i] + rng.gen_range(-w..=w)).clamp(0.0, std::f64::consts::PI);
            let cos_p = proposed.cos();
            let sin_p = proposed.sin();
            let mut field = problem.ising.h[i];
            for &(nbr, j) in &problem.adj[i] {
                field += j * cos_t[nbr];
            }
            let delta = -(a_scale / 2.0) * (sin_p - sin_t[i])
                + (b_scale / 2.0) * field * (cos_p - cos_t[i]);
            if delta <= 0.0 || rng.gen::<f64>() < (-beta * delta).exp() {
                theta[i] = proposed;
                cos_t[i] = cos_p;
                sin_t[i] = sin_p;
            }
        }
    }

    // Readout through the same spin -> bit convention as to_ising
    // (s = +1 maps to bit 1); cos-zero ties resolve from the read's stream.
    let spins: Vec<i8> = cos_t
        .iter()
        .map(|&c| {
            if c > COS_TIE_EPS {
                1
            } else if c < -COS_TIE_EPS {
                -1
            } else if rng.gen::<bool>() {
                1
            } else {
                -1
            }
        })
        .collect();
    spins_to_bits(&spins)
}

impl Sampler for SvmcSampler {
    fn name(&self) -> &'static str {
        "svmc"
    }

    fn sample(&self, q: &Qubo, sch: &AnnealSchedule, cfg: &SamplerConfig) -> Result<SampleSet> {
        cfg.check()?;
        let violations = validate(sch, DEFAULT_SLOPE_MAX, MAX_POINTS);
        if let Some(v) = violations.first() {
            return Err(Error::ScheduleConstraint(v.to_string()));
        }
        let problem = SvmcProblem::new(q);
        let fractions = sweep_fractions(sch, cfg.sweeps_per_microsecond);
        let reads = map_indexed(cfg.num_reads, |read| {
            svmc_anneal(&problem, &fractions, cfg, read)
        });
        let samples = reads
            .into_iter()
            .enumerate()
            .map(|(read, bits)| {
                let energy = q.energy(&bits)?;
                Ok(Sample { read, bits, energy })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SampleSet {
            samples,
            schedule_used: sch.clone(),
            qubo_ref: q.topology.name.clone(),
        })
    }
}

// ---------------------------------------------------------------------------
// Exact backend
// ---------------------------------------------------------------------------

/// Returns `num_reads` copies of the exhaustive minimizer. Ignores the
/// schedule entirely, which makes it a schedule-insensitive oracle for tests:
/// every slice of an anneal yields the identical solution.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactSampler;

impl Sampler for ExactSampler {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn sample(&self, q: &Qubo, sch: &AnnealSchedule, cfg: &SamplerConfig) -> Result<SampleSet> {
        cfg.check()?;
        if q.num_vars() > EXACT_CAP {
            return Err(Error::SizeLimit {
                num_vars: q.num_vars(),
                cap: EXACT_CAP,
            });
        }
        let (bits, energy) = exact_minimum(q)?;
        let samples = (0..cfg.num_reads)
            .map(|read| Sample {
                read,
                bits: bits.clone(),
                energy,
            })
            .collect();
        Ok(SampleSet {
            samples,
            schedule_used: sch.clone(),
            qubo_ref: q.topology.name.clone(),
        })
    }
}

/// Backend selection as it appears on the CLI and in GA configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Svmc,
    Exact,
}

impl Backend {
    pub fn build(self) -> Box<dyn Sampler> {
        match self {
            Backend::Svmc => Box::new(SvmcSampler),
            Backend::Exact => Box::new(ExactSampler),
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svmc" => Ok(Backend::Svmc),
            "exact" => Ok(Backend::Exact),
            other => Err(Error::InvalidArgument(format!(
                "unknown backend {other:?} (expected svmc or exact)"
            ))),
        }
    }
}
