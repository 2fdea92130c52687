use thiserror::Error;

use crate::colour::Colour;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("edge ({0}, {1}) is invalid: {2}")]
    BadEdge(usize, usize, &'static str),
    #[error("not a matching: {0}")]
    NotMatching(String),
    #[error("matching is not maximum")]
    NotMaximum,
    #[error("graph too large for {0} (n = {1})")]
    TooLarge(&'static str, usize),
    #[error("colour {colour} is not available at vertex {vertex}")]
    ColourOutOfRange { vertex: usize, colour: Colour },
    #[error("colouring is improper on edge ({0}, {1})")]
    Improper(usize, usize),
    #[error("colouring has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid instance: {0}")]
    BadInstance(String),
    #[error("wrong colouring mode: {0}")]
    WrongMode(&'static str),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph is not {0}")]
    WrongClass(&'static str),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("state budget of {budget} exceeded after exploring {explored} states")]
    Budget { budget: u64, explored: u64 },
    #[error("no applicable scheduler")]
    NoScheduler,
    #[error("scheduler could not make progress: {0}")]
    Stuck(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
