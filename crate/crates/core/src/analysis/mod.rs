//! Verification tools: real cycle inventories and Barna's theorem, basin
//! boundaries and their comparison with α-limits, ghost-attractor probes.

mod barna;
mod boundary;
mod cycles;
mod probe;

pub use barna::{barna_check, BarnaConfig, BarnaReport, PeriodSummary, RootWithMultiplicity};
pub use boundary::{compare_alpha_boundary, extract_boundary, BoundaryComparison, BoundaryMap};
pub use cycles::{enumerate_cycles_1d, periodic_points_1d, CycleRecord, RealNewton1d, Stability};
pub use probe::{probe_ghost_attractor, probe_ghost_attractors, GhostProbe, ProbeConfig};
