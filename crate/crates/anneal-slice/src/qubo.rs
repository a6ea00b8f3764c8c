//! QUBO and Ising problem instances: energy evaluation, formulation
//! conversion, random generation, and the on-disk instance format.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use rand::distributions::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{canonical_edge, Edge, Topology};

/// Hard cap on exhaustive enumeration.
pub const EXACT_CAP: usize = 24;

/// Default coefficient ranges: linear weights in (-2, 2), couplers in (-1, 1).
pub const DEFAULT_LINEAR_RANGE: (f64, f64) = (-2.0, 2.0);
pub const DEFAULT_QUAD_RANGE: (f64, f64) = (-1.0, 1.0);

/// One candidate solution: an ordered sequence of n bits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BitString(pub Vec<u8>);

impl BitString {
    pub fn zeros(n: usize) -> Self {
        BitString(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Renders as a 0/1 string, variable 0 first.
    pub fn to_01_string(&self) -> String {
        self.0.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
    }

    pub fn from_01_string(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidArgument(format!("bad bit char {c:?}"))),
            })
            .collect::<Result<Vec<u8>>>()
            .map(BitString)
    }
}

/// Counts bit positions where `x` and `y` differ.
pub fn hamming_distance(x: &BitString, y: &BitString) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: y.len(),
        });
    }
    Ok(x.0.iter().zip(&y.0).filter(|(a, b)| a != b).count())
}

/// A QUBO instance over a topology. Coefficients are stored densely: `linear[i]`
/// is the weight of variable `i`, `quadratic[e]` the weight of `topology.edges[e]`.
/// Diagonal quadratic terms are folded into linear weights at construction
/// (x_i^2 = x_i for binary variables).
#[derive(Debug, Clone, PartialEq)]
pub struct Qubo {
    pub topology: Arc<Topology>,
    pub linear: Vec<f64>,
    pub quadratic: Vec<f64>,
}

impl Qubo {
    /// Zero-coefficient instance.
    pub fn zero(topology: Arc<Topology>) -> Self {
        let n = topology.num_vars;
        let m = topology.edges.len();
        Qubo {
            topology,
            linear: vec![0.0; n],
            quadratic: vec![0.0; m],
        }
    }

    /// Builds from sparse coefficient lists. Quadratic keys must be topology
    /// edges; diagonal entries (i, i) fold into the linear weight.
    pub fn from_coeffs(
        topology: Arc<Topology>,
        linear: &[(usize, f64)],
        quadratic: &[(usize, usize, f64)],
    ) -> Result<Self> {
        let mut q = Qubo::zero(topology);
        let n = q.topology.num_vars;
        for &(i, w) in linear {
            if i >= n {
                return Err(Error::InvalidArgument(format!(
                    "linear index {i} out of range (n = {n})"
                )));
            }
            q.linear[i] += w;
        }
        for &(i, j, w) in quadratic {
            if i == j {
                if i >= n {
                    return Err(Error::InvalidArgument(format!(
                        "diagonal index {i} out of range (n = {n})"
                    )));
                }
                q.linear[i] += w;
                continue;
            }
            let e = canonical_edge(i, j);
            let idx = q
                .topology
                .edges
                .binary_search(&e)
                .map_err(|_| Error::InvalidArgument(format!("({}, {}) is not a topology edge", e.0, e.1)))?;
            q.quadratic[idx] += w;
        }
        Ok(q)
    }

    pub fn num_vars(&self) -> usize {
        self.topology.num_vars
    }

    /// Evaluates sum_i a_i x_i + sum_(i,j) a_ij x_i x_j.
    pub fn energy(&self, x: &BitString) -> Result<f64> {
        let n = self.num_vars();
        if x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: x.len(),
            });
        }
        let mut e = 0.0;
        for (i, &a) in self.linear.iter().enumerate() {
            if x.0[i] != 0 {
                e += a;
            }
        }
        for (idx, &(i, j)) in self.topology.edges.iter().enumerate() {
            if x.0[i] != 0 && x.0[j] != 0 {
                e += self.quadratic[idx];
            }
        }
        Ok(e)
    }

    /// Converts to the equivalent Ising model under x_i = (1 + s_i)/2.
    pub fn to_ising(&self) -> IsingModel {
        let n = self.num_vars();
        let mut h = vec![0.0; n];
        let mut offset = 0.0;
        for (i, &a) in self.linear.iter().enumerate() {
            h[i] += a / 2.0;
            offset += a / 2.0;
        }
        let mut j = vec![0.0; self.topology.edges.len()];
        for (idx, &(u, v)) in self.topology.edges.iter().enumerate() {
            let a = self.quadratic[idx];
            j[idx] = a / 4.0;
            h[u] += a / 4.0;
            h[v] += a / 4.0;
            offset += a / 4.0;
        }
        IsingModel {
            topology: Arc::clone(&self.topology),
            h,
            j,
            offset,
        }
    }
}

/// Ising formulation over spins in {-1, +1}: E(s) = sum h_i s_i + sum J_ij s_i s_j + offset.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    pub topology: Arc<Topology>,
    pub h: Vec<f64>,
    pub j: Vec<f64>,
    pub offset: f64,
}

impl IsingModel {
    pub fn energy(&self, spins: &[i8]) -> Result<f64> {
        let n = self.topology.num_vars;
        if spins.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: spins.len(),
            });
        }
        let mut e = self.offset;
        for (i, &hi) in self.h.iter().enumerate() {
            e += hi * spins[i] as f64;
        }
        for (idx, &(u, v)) in self.topology.edges.iter().enumerate() {
            e += self.j[idx] * spins[u] as f64 * spins[v] as f64;
        }
        Ok(e)
    }

    /// Inverse of [`Qubo::to_ising`]; the offset is discarded (a QUBO holds no
    /// constant term), so energies agree up to the dropped constant and the
    /// coefficient round-trip is exact.
    pub fn to_qubo(&self) -> Qubo {
        let n = self.topology.num_vars;
        let mut linear = vec![0.0; n];
        let mut quadratic = vec![0.0; self.topology.edges.len()];
        for (idx, &(u, v)) in self.topology.edges.iter().enumerate() {
            let a = 4.0 * self.j[idx];
            quadratic[idx] = a;
            linear[u] -= a / 2.0;
            linear[v] -= a / 2.0;
        }
        for (i, &hi) in self.h.iter().enumerate() {
            linear[i] += 2.0 * hi;
        }
        Qubo {
            topology: Arc::clone(&self.topology),
            linear,
            quadratic,
        }
    }
}

/// Maps a spin assignment to bits under the same x = (1 + s)/2 convention as
/// [`Qubo::to_ising`].
pub fn spins_to_bits(spins: &[i8]) -> BitString {
    BitString(spins.iter().map(|&s| if s > 0 { 1 } else { 0 }).collect())
}

pub fn bits_to_spins(x: &BitString) -> Vec<i8> {
    x.0.iter().map(|&b| if b == 0 { -1 } else { 1 }).collect()
}

/// Generates a random QUBO with every linear weight uniform in `linear_range`
/// and every coupler uniform in `quad_range`, fully determined by `seed`.
pub fn random_qubo(
    topology: Arc<Topology>,
    seed: u64,
    linear_range: (f64, f64),
    quad_range: (f64, f64),
) -> Result<Qubo> {
    for (lo, hi) in [linear_range, quad_range] {
        if !(lo < hi) {
            return Err(Error::InvalidArgument(format!(
                "empty coefficient range ({lo}, {hi})"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lin = Uniform::new(linear_range.0, linear_range.1);
    let quad = Uniform::new(quad_range.0, quad_range.1);
    let linear = (0..topology.num_vars).map(|_| lin.sample(&mut rng)).collect();
    let quadratic = (0..topology.edges.len()).map(|_| quad.sample(&mut rng)).collect();
    Ok(Qubo {
        topology,
        linear,
        quadratic,
    })
}

/// Exhaustively enumerates all 2^n bitstrings (n <= 24) and returns a
/// minimizer with its energy. Ties break toward the lexicographically
/// smallest bitstring.
pub fn exact_minimum(q: &Qubo) -> Result<(BitString, f64)> {
    let n = q.num_vars();
    if n > EXACT_CAP {
        return Err(Error::SizeLimit {
            num_vars: n,
            cap: EXACT_CAP,
        });
    }
    let mut best_bits = BitString::zeros(n);
    let mut best_e = f64::INFINITY;
    let mut x = BitString::zeros(n);
    // Counting with bit i at position n-1-i walks bitstrings in lexicographic
    // order, so keeping strict improvements yields the lex-smallest minimizer.
    for u in 0u64..(1u64 << n) {
        for i in 0..n {
            x.0[i] = ((u >> (n - 1 - i)) & 1) as u8;
        }
        let e = q.energy(&x)?;
        if e < best_e {
            best_e = e;
            best_bits = x.clone();
        }
    }
    Ok((best_bits, best_e))
}

// ---------------------------------------------------------------------------
// On-disk instance format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TopologyFile {
    name: String,
    edges: Vec<Edge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layout: Option<Vec<(f64, f64)>>,
}

#[derive(Serialize, Deserialize)]
struct QuboFile {
    num_vars: usize,
    topology: TopologyFile,
    linear: BTreeMap<usize, f64>,
    quadratic: Vec<(usize, usize, f64)>,
}

impl Qubo {
    pub fn to_json(&self) -> String {
        let file = QuboFile {
            num_vars: self.num_vars(),
            topology: TopologyFile {
                name: self.topology.name.clone(),
                edges: self.topology.edges.clone(),
                layout: self.topology.layout.clone(),
            },
            linear: self
                .linear
                .iter()
                .enumerate()
                .filter(|(_, &w)| w != 0.0)
                .map(|(i, &w)| (i, w))
                .collect(),
            quadratic: self
                .topology
                .edges
                .iter()
                .zip(&self.quadratic)
                .filter(|(_, &w)| w != 0.0)
                .map(|(&(i, j), &w)| (i, j, w))
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("qubo serialization cannot fail")
    }

    pub fn from_json(text: &str, path: &str) -> Result<Self> {
        let file: QuboFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            path: path.to_string(),
            context: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let topo = Topology::with_layout(
            file.topology.name,
            file.num_vars,
            file.topology.edges,
            file.topology.layout,
        )
        .map_err(|e| Error::Parse {
            path: path.to_string(),
            context: "topology".into(),
            message: e.to_string(),
        })?;
        let linear: Vec<(usize, f64)> = file.linear.into_iter().collect();
        Qubo::from_coeffs(Arc::new(topo), &linear, &file.quadratic).map_err(|e| Error::Parse {
            path: path.to_string(),
            context: "coefficients".into(),
            message: e.to_string(),
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path.display().to_string(), e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::io(path.display().to_string(), e))?;
        Qubo::from_json(&text, &path.display().to_string())
    }
}
