//! Double covers of Seifert fibered 3-manifolds.
//!
//! Given normalized Seifert invariants and an epimorphism from the
//! fundamental group onto `Z/2`, compute the invariants of the double cover
//! in closed form ([`covers`]) and check them against the kernel presentation
//! obtained by Reidemeister–Schreier rewriting ([`rs`], [`verify`]).

pub mod abelian;
pub mod cli;
pub mod covers;
pub mod error;
pub mod group;
pub mod identities;
pub mod parse;
pub mod rs;
pub mod seifert;
pub mod verify;
pub mod z2hom;

pub use abelian::{h1, H1Invariants};
pub use covers::{classify, double_cover, CaseTag, CoverCase};
pub use error::Error;
pub use group::{Generator, Presentation, Word};
pub use seifert::{FiberPair, SeifertInvariants, TypeSymbol};
pub use z2hom::{enumerate_epimorphisms, Z2Hom};
