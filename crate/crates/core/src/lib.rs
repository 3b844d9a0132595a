pub mod bench;
pub mod budget;
pub mod circuit;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod family;
pub mod generate;
pub mod graph;
pub mod msep;
pub mod multiset;
pub mod oracles;
pub mod poly;
pub mod repset;
pub mod separating;
pub mod solvers;
pub mod spanning;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, ParseError, Result};
pub use multiset::{MultisetSum, MultisetVector, WeightedUniverse};
pub use verify::{Counterexample, Verdict};
