use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("arc ({u}, {v}) has an endpoint outside [0, {n})")]
    EndpointOutOfRange { u: Vertex, v: Vertex, n: usize },
    #[error("self-loop at vertex {u}")]
    SelfLoop { u: Vertex },
    #[error("duplicate arc ({u}, {v})")]
    DuplicateArc { u: Vertex, v: Vertex },
    #[error("color map has {got} entries for {expected} vertices")]
    ColorCount { expected: usize, got: usize },
    #[error("graph with {0} vertices exceeds the 32-bit id space")]
    TooLarge(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Errors raised while reading any bit-level structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported archive version {0}")]
    BadVersion(u8),
    #[error("archive truncated: {0}")]
    Truncated(&'static str),
    #[error("malformed concatenation header: {0}")]
    BadHeader(&'static str),
    #[error("part {index} out of range (container has {count})")]
    PartOutOfRange { index: usize, count: usize },
    #[error("leaf code not present in the code-book")]
    UnknownCode,
    #[error("inconsistent encoding: {0}")]
    Inconsistent(&'static str),
    #[error("archive differs from the encoding of its own decoded graph")]
    NotCanonical,
    #[error("section {0} not present in archive")]
    MissingSection(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DictError {
    #[error("position {pos} outside [1, {len}]")]
    Position { pos: usize, len: usize },
    #[error("select index {index} outside [1, {count}]")]
    Select { index: usize, count: usize },
    #[error("dictionary contents are inconsistent")]
    Corrupt,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("no balanced partition found for a {0}-vertex graph")]
    Unbalanced(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("label {label} outside [1, {n}]")]
    Label { label: u64, n: u64 },
    #[error("archive has no colors")]
    Uncolored,
    #[error("near query asks for t = {asked} but the section supports t <= {built}")]
    Radius { asked: u32, built: u32 },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Dict(#[from] DictError),
}
