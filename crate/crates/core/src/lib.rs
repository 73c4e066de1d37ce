//! Exact counting, generating functions and capacities for constrained codes
//! defined by a finite set of forbidden substrings.

pub mod capacity;
pub mod cli;
pub mod cluster;
pub mod error;
pub mod exactalg;
pub mod input;
pub mod nonoverlap;
pub mod report;
pub mod sample;
pub mod series;
pub mod spectral;
pub mod verify;
pub mod words;

pub use capacity::{capacity, capacity_spectral, CapacityEstimate, Method};
pub use cluster::{cluster_genfun, ClusterSystem, GenFun};
pub use error::{Error, Result};
pub use input::ConstraintSpec;
pub use series::{count, count_range};
pub use words::{Alphabet, Family, ForbiddenSet, Word};
