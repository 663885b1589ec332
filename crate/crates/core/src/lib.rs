//! Simulation and verification of GHZ-based teleportation with a remote Z
//! rotation, next to the teleport-then-remote-control baseline it replaces.
//!
//! - [`statevector`]: dense state vectors, gates, projective measurement.
//! - [`protocol`]: the two engines and their transcripts.
//! - [`resources`]: ledgers and the side-by-side comparison.
//! - [`harness`]: seeded trial runner and report emission behind the CLI.

pub mod harness;
pub mod protocol;
pub mod resources;
pub mod statevector;
