//! Exact-arithmetic stability machinery for modules over quiver algebras:
//! King theta-stability and Bridgeland-style central charges on the heart of
//! finite-dimensional modules, Harder-Narasimhan filtrations, Jordan-Hoelder
//! factors and S-equivalence, the wall-and-chamber decomposition of the
//! stability parameter space, and the nef divisor number of a family of
//! semistable modules over the projective line, computed by two independent
//! formulas and cross-checked.
//!
//! Everything is exact: prime-field linear algebra for the module side,
//! big-rational arithmetic for the parameter side. There is no floating
//! point anywhere in the library.
//!
//! Quick tour:
//!
//! ```
//! use quiverstab::{corpus, stability, family, Caps};
//!
//! let caps = Caps::default();
//! let bf = corpus::family_by_name("k2_taut").unwrap();
//! let report = family::positivity_report(&bf.family, &bf.params, &caps).unwrap();
//! assert!(report.routes_agree);
//! assert_eq!(report.ell_determinant.to_string(), "1/2");
//! ```

pub mod corpus;
pub mod error;
pub mod family;
pub mod knum;
pub mod linalg;
pub mod parse;
pub mod quiver;
pub mod rep;
pub mod stability;
pub mod walls;

pub use error::{Error, Result};
pub use family::{FamilyOverP1, NefNumber, P1Point, PositivityReport};
pub use knum::{EulerMatrix, TorTable};
pub use linalg::{FpMatrix, PrimeField, Rational, Subspace};
pub use parse::{parse_document, parse_presentation, render, Document};
pub use quiver::{DimensionVector, Path, Quiver, QuiverPresentation, Relation};
pub use rep::{HomSpace, Representation, Submodule};
pub use stability::{ChargeValue, HNFiltration, JHMultiset, StabilityParams};
pub use walls::{Chamber, Wall};

/// Resource ceilings for the potentially explosive enumerations. Every cap
/// fires as a structured error carrying what was exceeded and by how much,
/// never as a silent truncation.
#[derive(Debug, Clone)]
pub struct Caps {
    /// submodule lattice size
    pub submodules: usize,
    /// exhaustive isomorphism search space (number of Hom elements scanned)
    pub iso: u64,
    /// randomized isomorphism search attempts after the exhaustive cap
    pub iso_random_tries: u64,
    /// census enumeration size (number of matrix assignments)
    pub census: u64,
    /// path enumeration size
    pub paths: usize,
    /// wall count accepted by chamber enumeration
    pub max_walls: usize,
    /// vertex count accepted by chamber enumeration
    pub max_theta_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            submodules: 50_000,
            iso: 100_000,
            iso_random_tries: 1_000,
            census: 1_000_000,
            paths: 10_000,
            max_walls: 24,
            max_theta_vertices: 6,
        }
    }
}
