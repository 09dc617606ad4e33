//! Betweenness centrality for undirected, unweighted graphs, with
//! degree-1 peeling.
//!
//! Exact scores come from Brandes' algorithm, from the one-round peeled
//! algorithms in [`peel_bc`], or from the multi-round 2-core recurrence in
//! [`recurrence`]. [`sampling`] provides pivot estimators with and without
//! peeling, and [`oracle`] a brute-force reference for testing.
//!
//! Scores are normalized by `(n-1)(n-2)` over ordered pairs.

pub mod accumulate;
pub mod bench;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod peel;
pub mod peel_bc;
pub mod recurrence;
pub mod sampling;
pub mod sssp;
pub mod synth;

pub use accumulate::accumulate_delta_zeta;
pub use error::{BcError, Result};
pub use exact::{brandes_exact, source_dependencies, Algorithm, BcResult};
pub use graph::Graph;
pub use oracle::{oracle_bc, oracle_sigma, oracle_source_dependencies, PathCounts};
pub use peel::{peel, peel_diagnostics, PeelDecomposition, PeelReport};
pub use peel_bc::{bc_one_round_full, bc_one_round_mem, DeltaZetaTable, DEFAULT_FULL_INFO_CAP};
pub use recurrence::{bc_via_2core_recurrence, two_core_recurrence_trace, RecurrenceTrace};
pub use sampling::{
    bernstein_pivot_bound, recommended_pivots, relative_l1_error, sample_bc_baseline,
    sample_bc_peeled, ErrorReport, SampleConfig,
};
pub use sssp::{sssp_bfs, SsspTree};
pub use synth::{generate_core_periphery, random_pendant_graph, Attachment, CorePeripherySpec};
