//! Exact rational generalized inverses and the block-matrix identities built
//! on them: pseudo Schur complements, pseudo principal pivot transforms and
//! absorption laws, together with a randomized verification harness.
//!
//! All arithmetic is over ℚ with arbitrary-precision integers, so every
//! equality checked by this crate is exact.
//!
//! ```
//! use pseudoschur::{matrix, Matrix};
//!
//! let m = matrix![[1, 2], [2, 4]];
//! let p = m.pinv();
//! assert_eq!(&(&m * &p) * &m, m);
//! ```

pub mod error;
pub mod absorption;
pub mod geninv;
pub mod harness;
pub mod instgen;
pub mod pppt;
pub mod ratmat;
pub mod schur;
pub mod subspace;
pub mod verdict;

pub use error::{Error, Histogram, Result};
pub use geninv::{check_group, check_penrose, ginv, pinv, GenInverseResult};
pub use ratmat::{q, Matrix, Rational};
pub use schur::{schur_f, schur_g, schur_k, schur_l, Block, BlockMatrix};
pub use subspace::{is_range_symmetric, range_included, rowspace_included};
pub use verdict::{Atom, Outcome, Verdict};

/// The guide's chapters, compiled so their snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/matrices.md")]
    mod matrices {}
    #[doc = include_str!("../../../book/src/inverses.md")]
    mod inverses {}
    #[doc = include_str!("../../../book/src/ranges.md")]
    mod ranges {}
    #[doc = include_str!("../../../book/src/schur.md")]
    mod schur {}
    #[doc = include_str!("../../../book/src/pivots.md")]
    mod pivots {}
    #[doc = include_str!("../../../book/src/absorption.md")]
    mod absorption {}
    #[doc = include_str!("../../../book/src/generation.md")]
    mod generation {}
    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}
}
