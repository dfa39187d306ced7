//! Reduced Khovanov homology over the two-element field, spectral sequences
//! of filtered complexes computed by staged cancellation, and a constraint
//! solver for the higher pages `E^k(L)` of the Khovanov-to-Floer spectral
//! sequence of a link.
//!
//! The crate is organized bottom-up:
//!
//! - [`diagram`]: braid words, planar diagrams (PD codes), resolutions.
//! - [`f2homalg`]: sparse F2 matrices, chain complexes, the cancellation
//!   lemma, spectral-sequence pages and an independent subquotient oracle.
//! - [`khovanov`]: the reduced cube-of-resolutions complex and its homology.
//! - [`transverse`]: the transverse cycle `ψ` of a braid closure.
//! - [`pagesolver`]: enumeration of higher differentials under the
//!   `(k, 2k-2)` bigrading-shift assumption.
//! - [`doublecover`]: link determinant via Goeritz matrices.
//! - [`cli`]: the `khpages` command-line front end.
//!
//! ```
//! use khpages::diagram::{parse_braid, braid_to_diagram};
//! use khpages::khovanov::kh_homology;
//!
//! let t34 = braid_to_diagram(&parse_braid("s=3; w=1,2,1,2,1,2,1,2").unwrap());
//! let kh = kh_homology(&t34);
//! assert_eq!(kh.poincare(), "h^0q^6 + h^2q^10 + h^3q^12 + h^4q^12 + h^5q^16");
//! ```

pub mod cli;
pub mod diagram;
pub mod doublecover;
pub mod error;
pub mod f2homalg;
pub mod khovanov;
pub mod pagesolver;
pub mod poly;
pub mod transverse;

pub use error::{Error, Result};
