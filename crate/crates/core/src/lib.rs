pub mod confined;
pub mod error;
pub mod free_hydrogen;
pub mod measures;
pub mod momentum;
pub mod oracle;
pub mod radial;
pub mod specfun;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
