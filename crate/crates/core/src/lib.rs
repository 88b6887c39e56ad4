pub mod cli;
pub mod cyclo;
pub mod error;
pub mod grid;
pub mod harness;
pub mod io;
pub mod moment;
pub mod multiplier;
pub mod norm;
pub mod poly;

pub use cyclo::CycInt;
pub use error::{Error, Result};
pub use poly::{MultiIndex, Poly, Scheme};
