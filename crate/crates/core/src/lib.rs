//! Exact computations with coherent sheaves on the Fargues-Fontaine curve,
//! their tilt at slope 0, and the homological algebra used alongside them.

pub mod bc;
pub mod cocycle;
pub mod complex;
pub mod derham;
pub mod error;
pub mod matrix;
pub mod par;
pub mod ring;
pub mod sample;
pub mod sequences;
pub mod sheaf;
pub mod slope;
pub mod syntax;
pub mod tilt;

pub use error::{Error, Result};
pub use sheaf::{BcInvariant, CoherentSheaf, K0Class};
pub use slope::Slope;
pub use tilt::TiltedObject;
