pub mod algebra;
pub mod cli;
pub mod cover;
pub mod curve;
pub mod error;
pub mod jacobian;
pub mod multmap;
pub mod riemann_roch;
pub mod scroll;
pub mod seed;

pub use error::{Error, Result};
