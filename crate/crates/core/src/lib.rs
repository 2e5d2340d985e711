//! Combinatorial and numerical machinery for degree-`d` branched covers of the
//! complex plane.
//!
//! The crate is organised around the geodesic partial multiplication on the
//! symmetric group: permutations multiply only when their transposition word
//! lengths add up ([`perm`]). Formal products of such elements have a normal
//! form consisting of a permutation, a block partition and one branch count
//! per block ([`completion`]); these normal forms classify braid-move orbits
//! of factorisation tuples ([`orbits`]) and, on the analytic side, the
//! monodromy data of a polynomial viewed as a branched cover ([`monodromy`]).
//! Closed-form dimension bookkeeping lives in [`dims`], and the stable
//! dimension tables of conjugation invariants in [`cohomology`].
//!
//! One convention is global and worth stating once: products compose like
//! functions, so in `a * b` the factor `b` acts first. This is the convention
//! under which `(1,2)(2,3)...(d-1,d)` equals the long cycle `1 -> 2 -> ... ->
//! d -> 1`, and it is assumed by every sequence-valued operation below.
//! All in-memory indices are zero-based; serialized formats are one-based.

pub mod cohomology;
pub mod completion;
pub mod dims;
pub mod error;
pub mod monodromy;
pub mod orbits;
pub mod perm;
pub mod poly;
pub mod verify;

pub use completion::{CompletionElement, EnvelopingElement};
pub use error::{Error, ErrorKind};
pub use monodromy::{BranchPoint, HurwitzConfiguration, MonodromyConfig};
pub use orbits::{FactorSequence, MoveSet, OrbitReport};
pub use perm::{CycleType, GeoElement, Permutation};
pub use poly::MonicPolynomial;
