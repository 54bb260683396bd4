pub mod analysis;
pub mod certificate;
pub mod error;
pub mod extract;
pub mod graph;
pub mod harness;
pub mod path;
pub mod rng;
pub mod sample;
