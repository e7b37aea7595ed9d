//! Exact arithmetic in the Brin–Higman–Thompson groups `nV_{k̄,r}`, viewed as
//! full groups of products of full one-sided shifts.
//!
//! The unit space is `r` copies of `Π_j {0..k_j-1}^ℕ`. Compact open sets are
//! finite unions of [`Brick`]s, group elements are finite brick matchings
//! ([`TableElement`]), and everything is decided exactly by refinement.
//!
//! ```
//! use bht_core::{SpaceSpec, format};
//!
//! let v2 = SpaceSpec::uniform(1, 2, 1).unwrap();
//! let a = format::parse_table("table n=1 k=2 r=1\nroot:0 0 -> root:0 00\nroot:0 10 -> root:0 01\nroot:0 11 -> root:0 1\n").unwrap();
//! let back = a.compose(&a.invert()).unwrap();
//! assert!(back.is_identity());
//! assert_eq!(a.space(), &v2);
//! ```

pub mod bisection;
pub mod brick;
pub mod clopen;
pub mod element;
pub mod embedding;
pub mod error;
pub mod format;
pub mod homology;
pub mod point;
pub mod random;
pub mod space;
pub mod witness;

pub use bisection::PrefixBijection;
pub use brick::{Brick, Word};
pub use clopen::{Clopen, SetOp, SetOpResult};
pub use element::{Multisection, Order, TableElement};
pub use embedding::{build_v_embedding, evaluate_embedding, image_vigor_check, VElement, VEmbedding};
pub use error::{Error, Result};
pub use homology::{abelianization, homology, is_perfect, proper_characters, AbelianGroupDesc, CharacterDesc};
pub use point::{Periodic, RationalPoint};
pub use space::SpaceSpec;
pub use witness::{
    bisection_between, compress, compressibility_witness, distinct_conjugates, doubling_witness,
    multisection, vigor_witness, CompressibilityArgs, CompressibilityWitness, VigorCase,
    VigorWitness,
};
