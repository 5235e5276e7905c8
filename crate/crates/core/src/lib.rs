//! Group-valued invariants of long knots in the full torus.
//!
//! A long knot diagram on the cylinder is encoded as a [`LinearGaussDiagram`].
//! Chords are split by Gaussian parity and odd chords by type; reading one
//! letter per endpoint gives a word in one of two groups:
//!
//! * [`g2::phi2`] lands in G'' = Z/2 * Z^2, where normal forms make equality
//!   and conjugacy decidable;
//! * [`gbar::phibar`] lands in Gbar, compared by [`gbar::compare`].
//!
//! [`moves`] implements the oriented Reidemeister moves used to check that
//! both words are invariants.

pub mod g2;
pub mod gauss;
pub mod gbar;
pub mod moves;
pub mod word;

pub use g2::{phi2, G2Element};
pub use gauss::{parse_gauss_code, GaussError, LinearGaussDiagram};
pub use gbar::{compare, phibar, GBarVerdict, GBarWord};
pub use moves::{apply_move, enumerate_moves, random_walk, MoveApplication};
pub use word::{letters_phi2, letters_phibar, Letter, Word};
