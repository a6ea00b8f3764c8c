//! Evolves QUBOs whose minimum-energy solution changes strongly, in energy
//! and in bits, between a 1 us slice and the full anneal.
//!
//! Fitness of an individual: Delta * (d/n * 100), where Delta is the
//! min-energy decrease from the short to the long anneal and d the Hamming
//! distance between the long-anneal minimum and the short-slice minimum.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::annealer::{Backend, Sampler, SamplerConfig};
use crate::error::{Error, Result};
use crate::exec::{derive_seed, map_indexed};
use crate::qubo::{hamming_distance, random_qubo, BitString, Qubo};
use crate::schedule::{sliced_schedule, standard_schedule};
use crate::topology::Topology;
use std::sync::Arc;

const INIT_TAG: u64 = 0x494e_4954; // "INIT"
const FIT_TAG: u64 = 0x4649_5421; // "FIT!"
const XOVER_TAG: u64 = 0x584f_5652; // "XOVR"

#[derive(Debug, Clone)]
pub struct GaConfig {
    pub population_size: usize,
    pub crossover_proportion: f64,
    pub mutation_rate: f64,
    pub iterations: usize,
    /// Short anneal length in microseconds.
    pub short_time: f64,
    /// Long anneal length in microseconds.
    pub long_time: f64,
    pub reads_per_eval: usize,
    pub seed: u64,
    pub backend: Backend,
    pub sampler: SamplerConfig,
    pub linear_range: (f64, f64),
    pub quad_range: (f64, f64),
}

impl GaConfig {
    /// Defaults: N = 50, p_cross = 0.25, p_mut = 0.01, 1 vs 1000 us
    /// anneals, 1000 reads per evaluation.
    pub fn new(seed: u64) -> Self {
        GaConfig {
            population_size: 50,
            crossover_proportion: 0.25,
            mutation_rate: 0.01,
            iterations: 50,
            short_time: 1.0,
            long_time: 1000.0,
            reads_per_eval: 1000,
            seed,
            backend: Backend::Svmc,
            sampler: SamplerConfig::new(seed),
            linear_range: crate::qubo::DEFAULT_LINEAR_RANGE,
            quad_range: crate::qubo::DEFAULT_QUAD_RANGE,
        }
    }

    pub fn selection_count(&self) -> usize {
        let raw = (self.population_size as f64 * self.crossover_proportion).ceil() as usize;
        raw.max(2)
    }

    pub fn validate(&self) -> Result<()> {
        if self.population_size < 2 {
            return Err(Error::Config(
                "population_size must be at least 2 (crossover needs two parents)".into(),
            ));
        }
        if !(self.crossover_proportion > 0.0 && self.crossover_proportion <= 1.0) {
            return Err(Error::Config("crossover_proportion must lie in (0, 1]".into()));
        }
        if !(0.0..=1.0).contains(&self.mutation_rate) {
            return Err(Error::Config("mutation_rate must lie in [0, 1]".into()));
        }
        if self.iterations == 0 || self.reads_per_eval == 0 {
            return Err(Error::Config("iterations and reads_per_eval must be >= 1".into()));
        }
        if self.selection_count() > self.population_size {
            return Err(Error::Config(
                "selection count exceeds population size".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitnessRecord {
    /// Min-energy decrease from the short to the long anneal.
    pub delta: f64,
    /// Hamming distance between long-anneal and short-slice minima.
    pub hamming: usize,
    pub fitness: f64,
    pub short_min: (BitString, f64),
    pub long_min: (BitString, f64),
    pub slice_min: (BitString, f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistoryRow {
    pub best_fitness: f64,
    pub mean_fitness: f64,
    pub best_so_far: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct GaHistory {
    pub rows: Vec<HistoryRow>,
}

impl GaHistory {
    /// CSV with header `iteration,best_fitness,mean_fitness,best_so_far`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("iteration,best_fitness,mean_fitness,best_so_far\n");
        for (i, r) in self.rows.iter().enumerate() {
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e}\n",
                i, r.best_fitness, r.mean_fitness, r.best_so_far
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaResult {
    pub best: Qubo,
    pub best_record: FitnessRecord,
    pub history: GaHistory,
}

/// Evaluates the fitness of one individual. Implementations must be
/// deterministic in (individual, generation, index) so that concurrent
/// evaluation matches sequential execution.
pub trait FitnessEval: Sync {
    fn eval(&self, q: &Qubo, generation: usize, index: usize) -> Result<FitnessRecord>;
}

/// The sampler-backed fitness of the evolution loop: three invocations per
/// individual (short anneal, long anneal, short slice of the long anneal).
pub struct SamplerFitness<'a> {
    pub cfg: &'a GaConfig,
    pub sampler: Box<dyn Sampler>,
}

impl<'a> SamplerFitness<'a> {
    pub fn new(cfg: &'a GaConfig) -> Self {
        SamplerFitness {
            cfg,
            sampler: cfg.backend.build(),
        }
    }
}

impl FitnessEval for SamplerFitness<'_> {
    fn eval(&self, q: &Qubo, generation: usize, index: usize) -> Result<FitnessRecord> {
        let cfg = self.cfg;
        let n = q.num_vars();
        let run = |schedule, which: u64| -> Result<(BitString, f64)> {
            let mut scfg = cfg.sampler.clone();
            scfg.num_reads = cfg.reads_per_eval;
            scfg.seed = derive_seed(cfg.seed, &[FIT_TAG, generation as u64, index as u64, which]);
            self.sampler.sample(q, &schedule, &scfg)?.min_energy()
        };
        let short_min = run(standard_schedule(cfg.short_time)?, 0)?;
        let long_min = run(standard_schedule(cfg.long_time)?, 1)?;
        let slice_min = run(sliced_schedule(cfg.long_time, cfg.short_time, 1.0)?, 2)?;
        let delta = short_min.1 - long_min.1;
        let hamming = hamming_distance(&long_min.0, &slice_min.0)?;
        let fitness = delta * (hamming as f64 / n as f64 * 100.0);
        Ok(FitnessRecord {
            delta,
            hamming,
            fitness,
            short_min,
            long_min,
            slice_min,
        })
    }
}

/// N random QUBOs with the configured coefficient ranges, deterministic in
/// the config seed.
pub fn init_population(cfg: &GaConfig, topology: &Arc<Topology>) -> Result<Vec<Qubo>> {
    (0..cfg.population_size)
        .map(|i| {
            random_qubo(
                Arc::clone(topology),
                derive_seed(cfg.seed, &[INIT_TAG, i as u64]),
                cfg.linear_range,
                cfg.quad_range,
            )
        })
        .collect()
}

/// Keeps the `selection_count` highest-fitness individuals; ties break by
/// population index.
pub fn select<'a>(
    population: &'a [Qubo],
    records: &[FitnessRecord],
    count: usize,
) -> Result<Vec<&'a Qubo>> {
    if count < 2 || population.len() < count {
        return Err(Error::Config(format!(
            "cannot select {count} parents from population of {}",
            population.len()
        )));
    }
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.sort_by(|&a, &b| {
        records[b].fitness
            .partial_cmp(&records[a].fitness)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    Ok(order[..count].iter().map(|&i| &population[i]).collect())
}

/// Produces `count` children; each child copies every coefficient from one of
/// two distinct random parents with probability 0.5.
pub fn crossover(parents: &[&Qubo], count: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Qubo>> {
    if parents.len() < 2 {
        return Err(Error::Config("crossover needs at least two parents".into()));
    }
    let mut children = Vec::with_capacity(count);
    for _ in 0..count {
        let p1 = rng.gen_range(0..parents.len());
        let p2 = loop {
            let k = rng.gen_range(0..parents.len());
            if k != p1 {
                break k;
            }
        };
        let (a, b) = (parents[p1], parents[p2]);
        let mut child = a.clone();
        for (i, w) in child.linear.iter_mut().enumerate() {
            if rng.gen::<bool>() {
                *w = b.linear[i];
            }
        }
        for (i, w) in child.quadratic.iter_mut().enumerate() {
            if rng.gen::<bool>() {
                *w = b.quadratic[i];
            }
        }
        children.push(child);
    }
    Ok(children)
}

/// Resamples each coefficient of each individual with probability `p_mut`
/// from its legal range.
pub fn mutate(
    population: &mut [Qubo],
    p_mut: f64,
    linear_range: (f64, f64),
    quad_range: (f64, f64),
    rng: &mut ChaCha8Rng,
) {
    for q in population.iter_mut() {
        for w in q.linear.iter_mut() {
            if rng.gen::<f64>() < p_mut {
                *w = rng.gen_range(linear_range.0..linear_range.1);
            }
        }
        for w in q.quadratic.iter_mut() {
            if rng.gen::<f64>() < p_mut {
                *w = rng.gen_range(quad_range.0..quad_range.1);
            }
        }
    }
}

/// Runs the full loop with the sampler-backed fitness.
pub fn run_ga(cfg: &GaConfig, topology: &Arc<Topology>) -> Result<GaResult> {
    run_ga_with(cfg, topology, &SamplerFitness::new(cfg))
}

/// Runs the loop with an arbitrary fitness evaluator. Each iteration:
/// evaluate, record history, select, crossover back to N, mutate. The
/// returned individual is the fittest member of the final population.
pub fn run_ga_with(
    cfg: &GaConfig,
    topology: &Arc<Topology>,
    evaluator: &dyn FitnessEval,
) -> Result<GaResult> {
    cfg.validate()?;
    let mut population = init_population(cfg, topology)?;
    let mut history = GaHistory::default();
    let mut best_so_far = f64::NEG_INFINITY;

    let evaluate = |pop: &[Qubo], generation: usize| -> Result<Vec<FitnessRecord>> {
        map_indexed(pop.len(), |i| evaluator.eval(&pop[i], generation, i))
            .into_iter()
            .collect()
    };

    for generation in 0..cfg.iterations {
        let records = evaluate(&population, generation)?;
        let best = records.iter().map(|r| r.fitness).fold(f64::NEG_INFINITY, f64::max);
        let mean = records.iter().map(|r| r.fitness).sum::<f64>() / records.len() as f64;
        best_so_far = best_so_far.max(best);
        history.rows.push(HistoryRow {
            best_fitness: best,
            mean_fitness: mean,
            best_so_far,
        });

        let parents = select(&population, &records, cfg.selection_count())?;
        let mut rng =
            ChaCha8Rng::seed_from_u64(derive_seed(cfg.seed, &[XOVER_TAG, generation as u64]));
        let mut children = crossover(&parents, cfg.population_size, &mut rng)?;
        mutate(
            &mut children,
            cfg.mutation_rate,
            cfg.linear_range,
            cfg.quad_range,
            &mut rng,
        );
        population = children;
    }

    // Final population gets its own evaluation; the result is the fittest
    // member of the last generation, not the best ever observed.
    let records = evaluate(&population, cfg.iterations)?;
    let best_idx = (0..records.len())
        .max_by(|&a, &b| {
            records[a].fitness
                .partial_cmp(&records[b].fitness)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(b.cmp(&a))
        })
        .expect("population is non-empty");
    Ok(GaResult {
        best: population[best_idx].clone(),
        best_record: records[best_idx].clone(),
        history,
    })
}

/// Deterministic, sampler-free fitness for tests: the sum of linear
/// coefficients (d fixed at n, so fitness = 100 * sum).
pub struct SumLinearFitness;

impl FitnessEval for SumLinearFitness {
    fn eval(&self, q: &Qubo, _generation: usize, _index: usize) -> Result<FitnessRecord> {
        let n = q.num_vars();
        let delta: f64 = q.linear.iter().sum();
        let zero = (BitString::zeros(n), 0.0);
        Ok(FitnessRecord {
            delta,
            hamming: n,
            fitness: delta * (n as f64 / n as f64 * 100.0),
            short_min: zero.clone(),
            long_min: zero.clone(),
            slice_min: zero,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubo::{DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE};
    use crate::topology::chimera_topology;

    fn topo() -> Arc<Topology> {
        Arc::new(chimera_topology(1, 1, 4).unwrap())
    }

    fn desk_cfg(seed: u64) -> GaConfig {
        let mut cfg = GaConfig::new(seed);
        cfg.population_size = 6;
        cfg.iterations = 3;
        cfg.reads_per_eval = 20;
        cfg.short_time = 1.0;
        cfg.long_time = 20.0;
        cfg.sampler.sweeps_per_microsecond = 2;
        cfg
    }

    #[test]
    fn init_population_is_deterministic_and_sized() {
        let cfg = desk_cfg(3);
        let t = topo();
        let a = init_population(&cfg, &t).unwrap();
        let b = init_population(&cfg, &t).unwrap();
        assert_eq!(a.len(), 6);
        assert_eq!(a, b);
        // distinct seeds yield distinct individuals
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn selection_count_rounding() {
        let mut cfg = GaConfig::new(0);
        cfg.population_size = 50;
        cfg.crossover_proportion = 0.25;
        assert_eq!(cfg.selection_count(), 13); // ceil(12.5)
        cfg.crossover_proportion = 1.0;
        assert_eq!(cfg.selection_count(), 50);
        cfg.population_size = 4;
        cfg.crossover_proportion = 0.1;
        assert_eq!(cfg.selection_count(), 2); // floor of 2
    }

    #[test]
    fn config_rejects_tiny_population() {
        let mut cfg = GaConfig::new(0);
        cfg.population_size = 1;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn select_ranks_and_tie_breaks_by_index() {
        let t = topo();
        let cfg = desk_cfg(1);
        let pop = init_population(&cfg, &t).unwrap();
        let rec = |f: f64| FitnessRecord {
            delta: f,
            hamming: 0,
            fitness: f,
            short_min: (BitString::zeros(8), 0.0),
            long_min: (BitString::zeros(8), 0.0),
            slice_min: (BitString::zeros(8), 0.0),
        };
        let records = vec![rec(1.0), rec(5.0), rec(5.0), rec(0.0), rec(3.0), rec(2.0)];
        let chosen = select(&pop, &records, 3).unwrap();
        assert!(std::ptr::eq(chosen[0], &pop[1]));
        assert!(std::ptr::eq(chosen[1], &pop[2]));
        assert!(std::ptr::eq(chosen[2], &pop[4]));

        // all equal: first `count` by index
        let records = vec![rec(1.0); 6];
        let chosen = select(&pop, &records, 4).unwrap();
        for (k, c) in chosen.iter().enumerate() {
            assert!(std::ptr::eq(*c, &pop[k]));
        }
        assert!(select(&pop, &records, 1).is_err());
    }

    #[test]
    fn crossover_identical_parents_reproduce() {
        let t = topo();
        let q = random_qubo(t, 9, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let children = crossover(&[&q, &q], 5, &mut rng).unwrap();
        for c in &children {
            assert_eq!(c, &q);
        }
    }

    #[test]
    fn crossover_single_difference_splits_evenly() {
        let t = topo();
        let a = random_qubo(Arc::clone(&t), 1, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE).unwrap();
        let mut b = a.clone();
        b.linear[3] = 1.5;
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let children = crossover(&[&a, &b], 1000, &mut rng).unwrap();
        let mut from_b = 0usize;
        for c in &children {
            assert!(c.linear[3] == a.linear[3] || c.linear[3] == 1.5);
            if c.linear[3] == 1.5 {
                from_b += 1;
            }
            // key set never changes
            assert_eq!(c.linear.len(), a.linear.len());
            assert_eq!(c.quadratic.len(), a.quadratic.len());
        }
        // binomial(1000, 0.5): 4 sigma ~ 63
        assert!((from_b as f64 - 500.0).abs() < 63.0, "split {from_b}/1000");
    }

    #[test]
    fn mutate_zero_rate_is_identity() {
        let t = topo();
        let q = random_qubo(t, 4, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE).unwrap();
        let mut pop = vec![q.clone()];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        mutate(&mut pop, 0.0, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE, &mut rng);
        assert_eq!(pop[0], q);
    }

    #[test]
    fn mutate_full_rate_resamples_everything() {
        let t = Arc::new(chimera_topology(2, 2, 4).unwrap());
        let q = random_qubo(Arc::clone(&t), 4, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE).unwrap();
        let mut pop = vec![q.clone()];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        mutate(&mut pop, 1.0, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE, &mut rng);
        let changed = pop[0]
            .linear
            .iter()
            .zip(&q.linear)
            .filter(|(a, b)| a != b)
            .count();
        assert_eq!(changed, q.linear.len());
        assert!(pop[0].linear.iter().all(|&w| (-2.0..2.0).contains(&w)));
        assert!(pop[0].quadratic.iter().all(|&w| (-1.0..1.0).contains(&w)));
    }

    #[test]
    fn mutate_rate_hits_binomial_count() {
        // ~10000 coefficients at p = 0.01: expect 100 +- 4*sqrt(99)
        let t = Arc::new(chimera_topology(8, 8, 4).unwrap()); // 512 vars, many edges
        let q = random_qubo(Arc::clone(&t), 4, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE).unwrap();
        let total = (q.linear.len() + q.quadratic.len()) as f64;
        let mut pop = vec![q.clone()];
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        mutate(&mut pop, 0.01, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE, &mut rng);
        let changed = pop[0]
            .linear
            .iter()
            .zip(&q.linear)
            .chain(pop[0].quadratic.iter().zip(&q.quadratic))
            .filter(|(a, b)| a != b)
            .count() as f64;
        let expect = total * 0.01;
        let sigma = (total * 0.01 * 0.99).sqrt();
        assert!(
            (changed - expect).abs() < 4.0 * sigma,
            "changed {changed}, expected {expect} +- {sigma}"
        );
    }

    #[test]
    fn exact_backend_fitness_is_zero() {
        let t = topo();
        let mut cfg = desk_cfg(5);
        cfg.backend = Backend::Exact;
        cfg.iterations = 1;
        cfg.population_size = 4;
        let result = run_ga(&cfg, &t).unwrap();
        assert_eq!(result.history.rows.len(), 1);
        assert_eq!(result.best_record.fitness, 0.0);
        assert_eq!(result.history.rows[0].best_fitness, 0.0);
        assert_eq!(result.history.rows[0].mean_fitness, 0.0);
    }

    #[test]
    fn fitness_formula_is_rederivable() {
        let t = topo();
        let cfg = desk_cfg(8);
        let eval = SamplerFitness::new(&cfg);
        let pop = init_population(&cfg, &t).unwrap();
        for (i, q) in pop.iter().enumerate() {
            let r = eval.eval(q, 0, i).unwrap();
            let expect = r.delta * (r.hamming as f64 / q.num_vars() as f64 * 100.0);
            assert!((r.fitness - expect).abs() <= 1e-12);
            assert_eq!(r.delta, r.short_min.1 - r.long_min.1);
            if r.hamming == 0 {
                assert_eq!(r.fitness, 0.0);
            }
        }
    }

    #[test]
    fn stub_fitness_hill_climbs() {
        let t = topo();
        let mut improved = 0;
        for seed in 0..10u64 {
            let mut cfg = GaConfig::new(seed);
            cfg.population_size = 20;
            cfg.iterations = 20;
            let result = run_ga_with(&cfg, &t, &SumLinearFitness).unwrap();
            let rows = &result.history.rows;
            if rows[rows.len() - 1].best_fitness > rows[0].best_fitness {
                improved += 1;
            }
        }
        assert!(improved >= 9, "improved in only {improved}/10 seeds");
    }

    #[test]
    fn run_ga_is_deterministic() {
        let t = topo();
        let cfg = desk_cfg(12);
        let a = run_ga(&cfg, &t).unwrap();
        let b = run_ga(&cfg, &t).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn best_so_far_is_running_maximum() {
        let t = topo();
        let mut cfg = GaConfig::new(33);
        cfg.population_size = 10;
        cfg.iterations = 15;
        let result = run_ga_with(&cfg, &t, &SumLinearFitness).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for row in &result.history.rows {
            assert!(row.best_so_far >= prev);
            assert!(row.best_so_far >= row.best_fitness);
            prev = row.best_so_far;
        }
    }

    #[test]
    fn coefficients_stay_in_range_throughout() {
        let t = topo();
        let mut cfg = GaConfig::new(2);
        cfg.population_size = 10;
        cfg.iterations = 10;
        cfg.mutation_rate = 0.2;
        let result = run_ga_with(&cfg, &t, &SumLinearFitness).unwrap();
        assert!(result.best.linear.iter().all(|&w| (-2.0..2.0).contains(&w)));
        assert!(result.best.quadratic.iter().all(|&w| (-1.0..1.0).contains(&w)));
    }

    #[test]
    fn history_csv_shape() {
        let t = topo();
        let mut cfg = GaConfig::new(2);
        cfg.population_size = 4;
        cfg.iterations = 3;
        let result = run_ga_with(&cfg, &t, &SumLinearFitness).unwrap();
        let csv = result.history.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "iteration,best_fitness,mean_fitness,best_so_far");
        assert_eq!(lines.len(), 4);
    }
}
