//! Combinatorial Floer-theoretic invariants of Brieskorn homology spheres.
//!
//! The pipeline runs triple → Seifert invariants and plumbing ([`seifert`]) →
//! graded root ([`root`]) → monotone subroot ([`monotone`]) → local class
//! ([`local`]). [`complex`] holds the standard `ι`-complexes and their
//! homology, and [`instanton`] turns `r_0` values into independence
//! certificates.

pub mod complex;
pub mod error;
pub mod families;
pub mod instanton;
pub mod local;
pub mod monotone;
pub mod root;
pub mod seifert;

pub use error::{Error, Result};
pub use families::Family;
pub use local::LocalClass;
pub use monotone::MonotoneSubroot;
pub use root::GradedRoot;
pub use seifert::{BrieskornTriple, Orientation};

/// Bumped whenever a change alters cached τ extrema.
pub const ALGORITHM_VERSION: u32 = 1;
