pub mod abelian;
pub mod audit;
pub mod autsearch;
pub mod arith;
mod closure;
pub mod error;
pub mod group;

pub use abelian::FinAbGroup;
pub use error::{Error, Result};
pub use group::{Elem, MetacyclicParams, PGroup, Quotient, Series, SeriesKind, Subgroup};
pub mod tate;
pub mod catalog;
pub mod classifier;
pub mod verify;
