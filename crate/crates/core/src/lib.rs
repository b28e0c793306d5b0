//! Combinatorial sheaf and cosheaf (co)homology, local homology and
//! Cohen–Macaulay duality on finite oriented simplicial complexes.
//!
//! All computations are exact over `Z`. The crate is organised as:
//!
//! - [`complex`]: oriented simplicial complexes, stars, links, full subcomplexes.
//! - [`algebra`]: integer matrices, Smith normal form, homology with generators.
//! - [`local`]: local homology sheaves, local cohomology cosheaves, CM verdicts.
//! - [`coefficients`]: (co)homology with coefficients in (co)sheaves, sections,
//!   Mittag-Leffler checks.
//! - [`duality`]: fundamental class, cap product and the duality reports.
//! - [`poset`]: finite posets, order complexes, chain posets, thickened spines.
//! - [`equivariant`]: finite group actions, coinvariants and the dualizing bound.
//! - [`vi`]: visible irreducibility of 2-complexes.
//! - [`fixtures`] and [`corpus`]: shipped complexes and seeded random generators.
//! - [`io`]: JSON interchange formats.
//!
//! ```
//! use cmkit_core::{fixtures, local::cm_verdict};
//!
//! let x = fixtures::by_name("s2").unwrap();
//! assert!(cm_verdict(&x).unwrap().locally_cm);
//! assert_eq!(x.homology().get(2).to_string(), "Z");
//! ```

pub mod algebra;
pub mod coefficients;
pub mod complex;
pub mod corpus;
pub mod duality;
pub mod equivariant;
pub mod fixtures;
pub mod io;
pub mod local;
pub mod poset;
pub mod vi;

pub use algebra::{FgAbelianGroup, GradedGroups, IntMatrix, IntegerChainComplex};
pub use complex::{OrientedComplex, Simplex};
