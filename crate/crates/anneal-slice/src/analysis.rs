//! Measurement pipeline over a dissected anneal: per-slice energy statistics,
//! min-1% averages, adjacent-slice Hamming distances, per-qubit flip rates,
//! and freeze-out detection.

use crate::annealer::{Sampler, SamplerConfig};
use crate::error::{Error, Result};
use crate::exec::{derive_seed, map_indexed};
use crate::qubo::{hamming_distance, BitString, Qubo};
use crate::schedule::sliced_schedule;
use crate::topology::Topology;

const SLICE_TAG: u64 = 0x534c_4943; // "SLIC"

#[derive(Debug, Clone, PartialEq)]
pub struct SliceSweepConfig {
    pub total_time: f64,
    pub num_slices: usize,
    pub reads_per_slice: usize,
    pub repeats: usize,
    /// How many lowest energies each repeat contributes to the error bars.
    pub top_k: usize,
    pub quench_duration: f64,
    pub seed: u64,
    pub sampler: SamplerConfig,
}

impl SliceSweepConfig {
    /// Full measurement protocol: 1000 reads, 10 repeats, top 10 energies.
    pub fn full_scale(total_time: f64, num_slices: usize, seed: u64) -> Self {
        SliceSweepConfig {
            total_time,
            num_slices,
            reads_per_slice: 1000,
            repeats: 10,
            top_k: 10,
            quench_duration: 1.0,
            seed,
            sampler: SamplerConfig::new(seed),
        }
    }

    /// Reduced settings that run in minutes on the simulator.
    pub fn desk_scale(total_time: f64, seed: u64) -> Self {
        SliceSweepConfig {
            total_time,
            num_slices: 100,
            reads_per_slice: 200,
            repeats: 5,
            top_k: 10,
            quench_duration: 1.0,
            seed,
            sampler: SamplerConfig::new(seed),
        }
    }

    fn check(&self) -> Result<()> {
        if self.num_slices < 2 {
            return Err(Error::Config("num_slices must be at least 2".into()));
        }
        if self.top_k == 0 || self.top_k > self.reads_per_slice {
            return Err(Error::Config(
                "top_k must lie in [1, reads_per_slice]".into(),
            ));
        }
        if self.repeats == 0 {
            return Err(Error::Config("repeats must be >= 1".into()));
        }
        if !(self.total_time > 0.0) {
            return Err(Error::Config("total_time must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceRecord {
    pub slice_index: usize,
    pub slice_time: f64,
    pub s_at_slice: f64,
    pub energy_mean: f64,
    pub energy_std: f64,
    pub min1pct_mean: f64,
    /// Minimum-energy sample across all repeats at this slice.
    pub representative_bits: BitString,
    pub representative_energy: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceSweep {
    pub slices: Vec<SliceRecord>,
    /// adjacent_hamming[k] = d(rep[k], rep[k+1]); length K-1.
    pub adjacent_hamming: Vec<usize>,
    /// Per-variable fraction of adjacent-slice transitions that flip the bit.
    pub flip_rate: Vec<f64>,
    /// Per-variable earliest slice index from which the representative bit
    /// stays constant (0 = never flips).
    pub per_qubit_freezeout: Vec<usize>,
}

impl SliceSweep {
    /// CSV with header
    /// `slice_index,time_us,s,energy_mean,energy_std,min1pct_mean,adjacent_hamming`;
    /// the Hamming column holds the distance to the previous slice and is
    /// blank for the first.
    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("slice_index,time_us,s,energy_mean,energy_std,min1pct_mean,adjacent_hamming\n");
        for (k, rec) in self.slices.iter().enumerate() {
            let ham = if k == 0 {
                String::new()
            } else {
                self.adjacent_hamming[k - 1].to_string()
            };
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
                rec.slice_index,
                rec.slice_time,
                rec.s_at_slice,
                rec.energy_mean,
                rec.energy_std,
                rec.min1pct_mean,
                ham
            ));
        }
        out
    }

    /// CSV with header `var,flip_rate,freezeout_slice`.
    pub fn flip_rate_csv(&self) -> String {
        let mut out = String::from("var,flip_rate,freezeout_slice\n");
        for (i, (&rate, &fo)) in self.flip_rate.iter().zip(&self.per_qubit_freezeout).enumerate() {
            out.push_str(&format!("{},{:.16e},{}\n", i, rate, fo));
        }
        out
    }
}

/// Pools the `top_k` lowest energies from each sample set and returns their
/// mean and population standard deviation.
pub fn energy_stats(sets: &[Vec<f64>], top_k: usize) -> Result<(f64, f64)> {
    let mut pooled = Vec::with_capacity(sets.len() * top_k);
    for set in sets {
        if set.len() < top_k {
            return Err(Error::InvalidArgument(format!(
                "sample set has {} energies, need at least top_k = {top_k}",
                set.len()
            )));
        }
        let mut sorted = set.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pooled.extend_from_slice(&sorted[..top_k]);
    }
    if pooled.is_empty() {
        return Err(Error::InvalidArgument("no sample sets".into()));
    }
    let n = pooled.len() as f64;
    let mean = pooled.iter().sum::<f64>() / n;
    let var = pooled.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / n;
    Ok((mean, var.sqrt()))
}

/// Mean of the lowest ceil(1%) of energies; requires at least 100 reads.
pub fn min1pct_mean(energies: &[f64]) -> Result<f64> {
    if energies.len() < 100 {
        return Err(Error::InvalidArgument(format!(
            "min-1% average needs at least 100 reads, got {}",
            energies.len()
        )));
    }
    let k = ((energies.len() as f64) * 0.01).ceil() as usize;
    let mut sorted = energies.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(sorted[..k].iter().sum::<f64>() / k as f64)
}

/// Divides every value by the series minimum.
pub fn normalize_by_min(series: &[f64]) -> Result<Vec<f64>> {
    if series.is_empty() {
        return Err(Error::InvalidArgument("empty series".into()));
    }
    let min = series.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        return Err(Error::Normalization(
            "series minimum is zero; cannot normalize".into(),
        ));
    }
    Ok(series.iter().map(|v| v / min).collect())
}

/// Smallest index k such that every value from k on lies within `epsilon` of
/// the final value, provided the plateau is at least `window` long; `None`
/// otherwise.
pub fn detect_freezeout(series: &[f64], window: usize, epsilon: f64) -> Option<usize> {
    if window < 2 || !(epsilon > 0.0) || series.len() < window {
        return None;
    }
    let last = *series.last().unwrap();
    let mut start = series.len();
    for (k, &v) in series.iter().enumerate().rev() {
        if (v - last).abs() <= epsilon {
            start = k;
        } else {
            break;
        }
    }
    if series.len() - start >= window {
        Some(start)
    } else {
        None
    }
}

/// Default plateau band: one population standard deviation of the last 5% of
/// the series (at least 2 values).
pub fn default_freezeout_epsilon(series: &[f64]) -> f64 {
    let k = ((series.len() as f64 * 0.05).ceil() as usize).max(2).min(series.len());
    let tail = &series[series.len() - k..];
    let mean = tail.iter().sum::<f64>() / k as f64;
    let var = tail.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / k as f64;
    var.sqrt()
}

/// For each variable, the smallest slice index from which its representative
/// bit never changes again (0 when it never flips at all).
pub fn per_qubit_freezeout(reps: &[&BitString]) -> Vec<usize> {
    if reps.is_empty() {
        return Vec::new();
    }
    let n = reps[0].len();
    let mut out = vec![0usize; n];
    for i in 0..n {
        let mut frozen_from = 0;
        for k in (1..reps.len()).rev() {
            if reps[k].0[i] != reps[k - 1].0[i] {
                frozen_from = k;
                break;
            }
        }
        out[i] = frozen_from;
    }
    out
}

/// Runs the full slice sweep: for each slice time total*k/K (k = 1..K),
/// builds the quench-sliced schedule (the last slice is the full anneal),
/// samples `repeats` times, and assembles statistics and cross-slice arrays.
pub fn run_slice_sweep(
    q: &Qubo,
    cfg: &SliceSweepConfig,
    sampler: &dyn Sampler,
) -> Result<SliceSweep> {
    cfg.check()?;
    let k_total = cfg.num_slices;

    let slice_results: Vec<Result<SliceRecord>> = map_indexed(k_total, |idx| {
        let k = idx + 1;
        let slice_time = cfg.total_time * k as f64 / k_total as f64;
        let with_ctx = |e: Error| Error::Config(format!("slice {idx} (t = {slice_time} us): {e}"));
        let schedule =
            sliced_schedule(cfg.total_time, slice_time, cfg.quench_duration).map_err(with_ctx)?;
        let s_at_slice = slice_time / cfg.total_time;

        let mut energy_sets: Vec<Vec<f64>> = Vec::with_capacity(cfg.repeats);
        let mut rep: Option<(BitString, f64)> = None;
        let mut pct_sum = 0.0;
        for r in 0..cfg.repeats {
            let mut scfg = cfg.sampler.clone();
            scfg.num_reads = cfg.reads_per_slice;
            scfg.seed = derive_seed(cfg.seed, &[SLICE_TAG, idx as u64, r as u64]);
            let ss = sampler.sample(q, &schedule, &scfg).map_err(with_ctx)?;
            let (bits, energy) = ss.min_energy().map_err(with_ctx)?;
            // strict improvement keeps the earliest repeat on ties
            if rep.as_ref().map_or(true, |(_, best)| energy < *best) {
                rep = Some((bits, energy));
            }
            let energies = ss.energies();
            pct_sum += min1pct_mean(&energies).map_err(with_ctx)?;
            energy_sets.push(energies);
        }
        let (energy_mean, energy_std) = energy_stats(&energy_sets, cfg.top_k).map_err(with_ctx)?;
        let (representative_bits, representative_energy) = rep.expect("repeats >= 1");
        Ok(SliceRecord {
            slice_index: idx,
            slice_time,
            s_at_slice,
            energy_mean,
            energy_std,
            min1pct_mean: pct_sum / cfg.repeats as f64,
            representative_bits,
            representative_energy,
        })
    });
    let slices = slice_results.into_iter().collect::<Result<Vec<_>>>()?;

    let mut adjacent_hamming = Vec::with_capacity(k_total - 1);
    for w in slices.windows(2) {
        adjacent_hamming.push(hamming_distance(
            &w[0].representative_bits,
            &w[1].representative_bits,
        )?);
    }

    let n = q.num_vars();
    let mut flip_counts = vec![0usize; n];
    for w in slices.windows(2) {
        for i in 0..n {
            if w[0].representative_bits.0[i] != w[1].representative_bits.0[i] {
                flip_counts[i] += 1;
            }
        }
    }
    let flip_rate = flip_counts
        .iter()
        .map(|&c| c as f64 / (k_total - 1) as f64)
        .collect();

    let reps: Vec<&BitString> = slices.iter().map(|r| &r.representative_bits).collect();
    let per_qubit = per_qubit_freezeout(&reps);

    Ok(SliceSweep {
        slices,
        adjacent_hamming,
        flip_rate,
        per_qubit_freezeout: per_qubit,
    })
}

/// One renderable heatmap cell: layout position, flip rate, RGB fill.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapCell {
    pub var: usize,
    pub x: f64,
    pub y: f64,
    pub rate: f64,
    pub color: (u8, u8, u8),
}

pub const HEATMAP_BLUE: (u8, u8, u8) = (0, 0, 255);
pub const HEATMAP_RED: (u8, u8, u8) = (255, 0, 0);

/// Maps per-variable flip rates onto layout coordinates with a linear
/// blue (rate 0) to red (maximum observed rate) color scale; all blue when
/// no variable ever flips.
pub fn flip_rate_heatmap_data(
    flip_rate: &[f64],
    topology: &Topology,
) -> Result<Vec<HeatmapCell>> {
    if flip_rate.len() != topology.num_vars {
        return Err(Error::DimensionMismatch {
            expected: topology.num_vars,
            got: flip_rate.len(),
        });
    }
    let layout = topology
        .layout
        .clone()
        .unwrap_or_else(|| (0..topology.num_vars).map(|i| (i as f64, 0.0)).collect());
    let max_rate = flip_rate.iter().cloned().fold(0.0f64, f64::max);
    Ok(flip_rate
        .iter()
        .enumerate()
        .map(|(var, &rate)| {
            let t = if max_rate > 0.0 { rate / max_rate } else { 0.0 };
            let color = (
                (t * 255.0).round() as u8,
                0,
                ((1.0 - t) * 255.0).round() as u8,
            );
            HeatmapCell {
                var,
                x: layout[var].0,
                y: layout[var].1,
                rate,
                color,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annealer::{ExactSampler, SvmcSampler};
    use crate::qubo::{random_qubo, Qubo, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE};
    use crate::topology::chimera_topology;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn tiny_sweep_cfg(seed: u64) -> SliceSweepConfig {
        let mut cfg = SliceSweepConfig::desk_scale(20.0, seed);
        cfg.num_slices = 5;
        cfg.reads_per_slice = 100;
        cfg.repeats = 2;
        cfg.top_k = 5;
        cfg.sampler.sweeps_per_microsecond = 2;
        cfg
    }

    #[test]
    fn slice_times_cover_the_anneal() {
        let t = Arc::new(chimera_topology(1, 1, 2).unwrap());
        let q = Qubo::zero(t);
        let sweep = run_slice_sweep(&q, &tiny_sweep_cfg(0), &ExactSampler).unwrap();
        let times: Vec<f64> = sweep.slices.iter().map(|r| r.slice_time).collect();
        assert_eq!(times, vec![4.0, 8.0, 12.0, 16.0, 20.0]);
        assert_eq!(sweep.slices.last().unwrap().s_at_slice, 1.0);
    }

    #[test]
    fn zero_qubo_exact_backend_all_stats_zero() {
        let t = Arc::new(chimera_topology(1, 1, 2).unwrap());
        let q = Qubo::zero(t);
        let sweep = run_slice_sweep(&q, &tiny_sweep_cfg(1), &ExactSampler).unwrap();
        for rec in &sweep.slices {
            assert_eq!((rec.energy_mean, rec.energy_std), (0.0, 0.0));
            assert_eq!(rec.min1pct_mean, 0.0);
        }
        assert!(sweep.adjacent_hamming.iter().all(|&d| d == 0));
        assert!(sweep.flip_rate.iter().all(|&r| r == 0.0));
        assert!(sweep.per_qubit_freezeout.iter().all(|&k| k == 0));
    }

    #[test]
    fn exact_backend_is_schedule_insensitive() {
        let t = Arc::new(chimera_topology(1, 1, 4).unwrap());
        let q = random_qubo(t, 5, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE).unwrap();
        let sweep = run_slice_sweep(&q, &tiny_sweep_cfg(2), &ExactSampler).unwrap();
        let first = &sweep.slices[0].representative_bits;
        assert!(sweep.slices.iter().all(|r| &r.representative_bits == first));
        assert!(sweep.adjacent_hamming.iter().all(|&d| d == 0));
    }

    #[test]
    fn flip_accounting_identity() {
        let t = Arc::new(chimera_topology(1, 1, 4).unwrap());
        let q = random_qubo(t, 3, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE).unwrap();
        let sweep = run_slice_sweep(&q, &tiny_sweep_cfg(3), &SvmcSampler).unwrap();
        let k1 = (sweep.slices.len() - 1) as f64;
        let lhs: f64 = sweep.flip_rate.iter().map(|r| r * k1).sum();
        let rhs: f64 = sweep.adjacent_hamming.iter().map(|&d| d as f64).sum();
        assert!((lhs - rhs).abs() < 1e-9);
    }

    #[test]
    fn energy_stats_hand_example() {
        let (mean, std) = energy_stats(&[vec![4.0, 2.0, 1.0, 3.0]], 2).unwrap();
        assert_eq!(mean, 1.5);
        assert_eq!(std, 0.5);
        let (_, std) = energy_stats(&[vec![2.0, 2.0, 2.0]], 3).unwrap();
        assert_eq!(std, 0.0);
        assert!(energy_stats(&[vec![1.0]], 2).is_err());
    }

    #[test]
    fn energy_stats_matches_flat_sort_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let sets: Vec<Vec<f64>> = (0..10)
            .map(|_| (0..1000).map(|_| rng.gen_range(-5.0..5.0)).collect())
            .collect();
        let (mean, _) = energy_stats(&sets, 10).unwrap();
        // independent flat-sort oracle
        let mut pooled = Vec::new();
        for set in &sets {
            let mut s = set.clone();
            s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            pooled.extend_from_slice(&s[..10]);
        }
        assert_eq!(pooled.len(), 100);
        let oracle = pooled.iter().sum::<f64>() / 100.0;
        assert!((mean - oracle).abs() < 1e-12);
        // permutation invariance
        let mut reversed = sets.clone();
        reversed.reverse();
        assert!((energy_stats(&reversed, 10).unwrap().0 - mean).abs() < 1e-12);
    }

    #[test]
    fn min1pct_hand_examples() {
        let hundred: Vec<f64> = (1..=100).map(|v| v as f64).collect();
        assert_eq!(min1pct_mean(&hundred).unwrap(), 1.0);
        let thousand: Vec<f64> = (1..=1000).map(|v| v as f64).collect();
        assert_eq!(min1pct_mean(&thousand).unwrap(), 5.5);
        assert!(min1pct_mean(&[1.0; 99]).is_err());
    }

    #[test]
    fn min1pct_matches_sort_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let vals: Vec<f64> = (0..500).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let mut sorted = vals.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let oracle = sorted[..5].iter().sum::<f64>() / 5.0;
        assert_eq!(min1pct_mean(&vals).unwrap(), oracle);
    }

    #[test]
    fn normalize_by_min_examples() {
        assert_eq!(
            normalize_by_min(&[-10.0, -5.0, -2.0]).unwrap(),
            vec![1.0, 0.5, 0.2]
        );
        assert_eq!(normalize_by_min(&[3.0, 3.0]).unwrap(), vec![1.0, 1.0]);
        assert!(normalize_by_min(&[0.0, 1.0]).is_err());
        // positive series: minimum maps to exactly 1.0, shape preserved
        let series = [8.0, 8.0, 2.0, 2.0];
        let norm = normalize_by_min(&series).unwrap();
        assert_eq!(norm, vec![4.0, 4.0, 1.0, 1.0]);
    }

    #[test]
    fn detect_freezeout_examples() {
        assert_eq!(detect_freezeout(&[5.0; 10], 2, 0.1), Some(0));
        let series = [10.0, 10.0, 5.0, 1.0, 1.0, 1.0, 1.0];
        assert_eq!(detect_freezeout(&series, 2, 0.1), Some(3));
        // tail too short for the window
        assert_eq!(detect_freezeout(&[9.0, 5.0, 1.0], 3, 0.1), None);
    }

    #[test]
    fn detect_freezeout_noisy_plateau() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let eps = 0.5;
        let mut series: Vec<f64> = (0..600).map(|k| 10.0 - k as f64 * 0.01).collect();
        series.extend((0..400).map(|_| 1.0 + rng.gen_range(-0.4 * eps..0.4 * eps)));
        // pin the final value so the band is centered in the noise
        *series.last_mut().unwrap() = 1.0;
        let found = detect_freezeout(&series, 5, eps).unwrap();
        assert!(
            (595..=605).contains(&found),
            "expected freeze-out near 600, got {found}"
        );
    }

    #[test]
    fn detect_freezeout_monotone_in_epsilon() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let series: Vec<f64> = (0..200)
            .map(|k| (200 - k) as f64 * 0.05 + rng.gen_range(-0.1..0.1))
            .collect();
        let mut prev = usize::MAX;
        for eps in [0.2, 0.5, 1.0, 2.0, 5.0] {
            if let Some(k) = detect_freezeout(&series, 2, eps) {
                assert!(k <= prev);
                prev = k;
            }
        }
    }

    #[test]
    fn per_qubit_freezeout_examples() {
        let reps: Vec<BitString> = vec![
            BitString(vec![0, 0, 0]),
            BitString(vec![0, 1, 0]),
            BitString(vec![0, 1, 0]),
            BitString(vec![0, 1, 1]),
            BitString(vec![0, 1, 1]),
        ];
        let refs: Vec<&BitString> = reps.iter().collect();
        // var 0 never flips -> 0; var 1 last flips into slice 1; var 2 into slice 3
        assert_eq!(per_qubit_freezeout(&refs), vec![0, 1, 3]);
    }

    #[test]
    fn per_qubit_freezeout_matches_reverse_scan_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let reps: Vec<BitString> = (0..50)
            .map(|_| BitString((0..16).map(|_| rng.gen_range(0..2u8)).collect()))
            .collect();
        let refs: Vec<&BitString> = reps.iter().collect();
        let got = per_qubit_freezeout(&refs);
        for i in 0..16 {
            // oracle: forward scan for the last change
            let mut last_change = 0;
            for k in 1..reps.len() {
                if reps[k].0[i] != reps[k - 1].0[i] {
                    last_change = k;
                }
            }
            assert_eq!(got[i], last_change, "var {i}");
        }
    }

    #[test]
    fn heatmap_color_endpoints() {
        let t = chimera_topology(1, 1, 2).unwrap(); // 4 vars
        let cells = flip_rate_heatmap_data(&[0.0, 0.5, 1.0, 0.0], &t).unwrap();
        assert_eq!(cells.len(), 4);
        assert_eq!(cells[0].color, HEATMAP_BLUE);
        assert_eq!(cells[2].color, HEATMAP_RED);
        assert_eq!(cells[1].color, (128, 0, 128));

        // max rate 0: everything blue
        let cells = flip_rate_heatmap_data(&[0.0; 4], &t).unwrap();
        assert!(cells.iter().all(|c| c.color == HEATMAP_BLUE));

        assert!(flip_rate_heatmap_data(&[0.0; 3], &t).is_err());
    }

    #[test]
    fn sweep_csv_shapes() {
        let t = Arc::new(chimera_topology(1, 1, 2).unwrap());
        let q = Qubo::zero(t);
        let sweep = run_slice_sweep(&q, &tiny_sweep_cfg(4), &ExactSampler).unwrap();
        let csv = sweep.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(
            lines[0],
            "slice_index,time_us,s,energy_mean,energy_std,min1pct_mean,adjacent_hamming"
        );
        assert_eq!(lines.len(), 6);
        assert!(lines[1].ends_with(',')); // blank hamming on the first slice
        let flips = sweep.flip_rate_csv();
        assert!(flips.starts_with("var,flip_rate,freezeout_slice\n"));
        assert_eq!(flips.lines().count(), 5);
    }

    #[test]
    fn sweep_is_deterministic() {
        let t = Arc::new(chimera_topology(1, 1, 4).unwrap());
        let q = random_qubo(t, 8, DEFAULT_LINEAR_RANGE, DEFAULT_QUAD_RANGE).unwrap();
        let a = run_slice_sweep(&q, &tiny_sweep_cfg(5), &SvmcSampler).unwrap();
        let b = run_slice_sweep(&q, &tiny_sweep_cfg(5), &SvmcSampler).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn config_validation() {
        let t = Arc::new(chimera_topology(1, 1, 2).unwrap());
        let q = Qubo::zero(t);
        let mut cfg = tiny_sweep_cfg(0);
        cfg.num_slices = 1;
        assert!(run_slice_sweep(&q, &cfg, &ExactSampler).is_err());
        let mut cfg = tiny_sweep_cfg(0);
        cfg.top_k = 1000;
        assert!(run_slice_sweep(&q, &cfg, &ExactSampler).is_err());
    }
}
