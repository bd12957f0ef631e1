//! Maximum scatter TSP: a (1−ε) decision procedure and optimizer for
//! geometric and doubling metrics, the graph subroutines it needs, exact
//! small-instance solvers, and a generator of hard Hamming instances.
//!
//! ```
//! use scatter_tsp::{maximize_scatter, scatter, Instance};
//!
//! let square = Instance::euclidean(vec![
//!     vec![0.0, 0.0],
//!     vec![1.0, 0.0],
//!     vec![1.0, 1.0],
//!     vec![0.0, 1.0],
//! ])
//! .unwrap();
//! let best = maximize_scatter(&square, 0.1).unwrap();
//! assert!(scatter(&square, &best.tour).unwrap() >= 0.9);
//! ```

pub mod eptas;
pub mod error;
pub mod exec;
pub mod generate;
pub mod graph;
pub mod hardness;
pub mod instance;
pub mod io;
pub mod many_visits;
pub mod net;
pub mod oracle;

pub use eptas::{
    decide_scatter, decide_scatter_with, find_low_degree_point, maximize_scatter,
    maximize_scatter_with, Answer, Branch, DecisionOutcome, DecisionParams, LowDegreeContext,
    Maximized,
};
pub use error::{Result, ScatterError};
pub use exec::Parallelism;
pub use graph::{threshold_graph, ThresholdGraph};
pub use instance::{candidate_distances, scatter, Instance, LpNorm, Metric, Tour};
pub use many_visits::{many_visits_tour, Multiwalk, VisitSpec};
pub use oracle::{brute_force_mstsp, is_hamiltonian, OracleResult};
