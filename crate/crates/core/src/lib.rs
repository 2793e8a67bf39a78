//! Exact computation of diagonal classes on fine moduli spaces of quiver
//! representations and related test spaces.

pub mod basedring;
pub mod chernclass;
pub mod exactnum;
pub mod gtcomb;
pub mod quiverrep;
pub mod resolutions;

pub use basedring::{BasedRing, ProductRing, RingElement, RingError};
pub use chernclass::{BundleClass, ChernError};
pub use exactnum::{ExactError, ExactMatrix, Field, Rational, SmithForm};
pub use gtcomb::{enumerate_staircases, gt_dimension, gt_quiver, GtError, HilbertFunction, Staircase};
pub use quiverrep::{DimVector, Quiver, QuiverError, Representation, Weight};
pub use resolutions::{diagonal_class, DiagonalSetup, HomDimProvider, P2Config, ProjectiveTag, ResolutionError, UniversalResolution};
