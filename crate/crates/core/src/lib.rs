//! Structure constants of the Demazure and Grothendieck bases in the
//! K-theory of flag varieties, computed from a Cartan matrix alone.

pub mod error;
pub mod polyring;
pub mod rootsys;
pub mod delta;
pub mod derived;
pub mod constants;
pub mod verify;
pub mod oracles;
pub mod tablefile;
pub mod cli;

pub use error::{Error, Result};
