//! Castelnuovo–Mumford regularity of tangent cones of Schubert varieties,
//! computed both by the covexillary diagonal rule and by a Gröbner/Hilbert
//! series kernel over Kazhdan–Lusztig ideals.

pub mod cli;
pub mod gb;
pub mod groth;
pub mod ideal;
pub mod perm;
pub mod poly;
pub mod reg;
pub mod shapes;

pub use perm::{Cell, Diagram, Partition, PermError, Permutation};
pub use poly::{Int, MultiPoly, PolyError, UniPoly};
