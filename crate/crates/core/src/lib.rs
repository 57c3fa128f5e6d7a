//! Exact computations around neighborly partitions and Gordon's identities.
//!
//! - [`partition`]: partitions, neighborly / Gordon / distinct-residue classes
//! - [`hypergraph`]: finite hypergraphs, `H_λ`, truncations of `H^∞_{r,i}`
//! - [`signature`]: the signature `δ(λ)` (brute force and level DP) and the
//!   signed neighborly series
//! - [`qseries`]: truncated integer power series and the product / multisum
//!   sides of the identities
//! - [`hilbert`]: edge ideals, weighted Hilbert series, `P_{r,i}` and `J_{r,i}`
//! - [`verify`]: coefficient-by-coefficient identity reports

pub mod error;
pub mod hilbert;
pub mod hypergraph;
pub mod partition;
pub mod qseries;
pub mod signature;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, Vertex, WeightAssignment};
pub use partition::{Interpretation, Partition, PartitionClass};
pub use qseries::{ClassWeighting, TruncatedSeries};
pub use signature::{SignatureMethod, SignatureResult};
pub use verify::{Identity, VerificationReport};
