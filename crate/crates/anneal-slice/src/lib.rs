//! Desk-scale toolkit for peering into an anneal by slicing it: QUBO/Ising
//! instances on Chimera-style graphs, quench-sliced anneal schedules, a
//! spin-vector Monte Carlo annealer standing in for quantum hardware, a
//! genetic algorithm that evolves QUBOs with a pronounced solution evolution,
//! and analysis of energy, Hamming-distance, and per-qubit freeze-out across
//! slices.

pub mod analysis;
pub mod annealer;
pub mod error;
pub mod exec;
pub mod genetic;
pub mod heatmap;
pub mod manifest;
pub mod qubo;
pub mod schedule;
pub mod topology;

pub use error::{Error, Result};
