//! Exact arithmetic over Q(∛m) and the continued-fraction machinery built on it.
//!
//! The crate computes certified continued-fraction expansions of ∛m and ∛m²
//! for noncube integers m, detects the connections between the two convergent
//! sequences (pairs of convergents whose product is exactly m), and verifies
//! the algebraic identities that govern those connections. All number-theoretic
//! computation is exact: big integers, big rationals and certified rational
//! enclosures of the cube root; no floating point enters any decision.

pub mod cf;
pub mod cubic;
pub mod error;
pub mod interval;
pub mod ladder;
pub mod oracle;
pub mod stats;
pub mod verify;

pub use cf::{Expansion, Power, QuotientStream, Surd, Triplet};
pub use cubic::{residual_identity_check, CubicNumber};
pub use error::{Error, Result};
pub use interval::{cbrt_bounds, RationalInterval};
pub use ladder::{Certificate, Connection, CoverageGap, CoverageReport, Ladder};
pub use stats::{histogram, kuzmin_distance, kuzmin_expected, QuotientHistogram};
pub use verify::{CheckResult, VerificationReport};
