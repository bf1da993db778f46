//! Exact characteristic numbers of twisted Milnor hypersurfaces
//! `H^I_{n1,n2}(d1, d2)`: the Â-genus, the α-invariant, spin and PSC
//! verdicts, and the circle-action obstruction.
//!
//! Two independent routes compute the central quantity `F_{n1,n2,I}(d1, d2)`:
//! a closed-form binomial sum ([`invariants::f_closed`]) and a truncated
//! power-series pairing against the fundamental class
//! ([`series::genus_pairing`]). All arithmetic is exact.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod identities;
pub mod invariants;
pub mod record;
pub mod series;
pub mod spec;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use spec::TwistSpec;
