//! Structural metrics of dependency networks.

mod clustering;
mod components;
mod degree;
mod distance;
mod er;

pub use clustering::{average_local_clustering, connected_triples, transitivity, triangle_count};
pub use components::{components, giant_subnetwork, ComponentDecomposition};
pub use degree::{degree_correlation, degree_stats, CorrelationMode, DegreeStats};
pub use distance::{all_pairs_distances, bfs_distances, distances, DistanceMode, DistanceStats};
pub use er::{er_baseline, gnm, ErBaseline};
