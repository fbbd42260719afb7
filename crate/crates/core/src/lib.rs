//! Balanced simplicial complexes and their local moves.
//!
//! The crate covers facet-based complexes ([`complex`]), diamond complexes and
//! their shelling orders ([`diamond`]), stellar, bistellar, shelling and
//! cross-flip moves ([`moves`]), shelling verification and search
//! ([`shelling`]), and the catalog of basic cross-flips ([`catalog`]).

#![forbid(unsafe_code)]

pub mod catalog;
pub mod cli;
pub mod complex;
pub mod diamond;
pub mod io;
pub mod iso;
pub mod manifold;
pub mod moves;
pub mod script;
pub mod shelling;
pub mod verify;
pub mod walk;
pub mod vertex;

pub use complex::{find_balanced_coloring, is_proper_coloring, Coloring, Complex, ComplexError, RelativeComplex};
pub use io::ShellingCertificate;
pub use iso::{are_isomorphic, find_isomorphism, IsoOptions, VertexMap};
pub use manifold::{is_combinatorial_manifold, ManifoldVerdict};
pub use vertex::{Face, Vertex};
