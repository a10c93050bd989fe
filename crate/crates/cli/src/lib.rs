//! Library surface of the command-line front end: the job schema, the stage
//! pipeline, and the bundled example registry. The binary in `main.rs` is a
//! thin argument-parsing wrapper around these.

pub mod job;
pub mod pipeline;
pub mod registry;
