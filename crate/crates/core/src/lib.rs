pub mod bits;
pub mod concat;
pub mod dict;
pub mod error;
pub mod graph;
pub mod corpus;
pub mod partition;
pub mod codec;
pub mod label;
pub mod director;
pub mod archive;
pub mod query;
pub mod text;
