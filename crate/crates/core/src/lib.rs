//! Exact computations in three symmetric tensor categories:
//!
//! * the diagrammatic Deligne category `Rep GL_t`, presented by walled Brauer
//!   diagrams with loop parameter `t` ([`brauer`]);
//! * representations of cyclic `p`-groups over `F_p`, decomposed into Jordan
//!   blocks through rank profiles of nilpotent operators ([`modrep`]);
//! * the Verlinde fusion ring `Ver_p` ([`verlinde`]) and the growth invariants
//!   of tensor powers built on top of it ([`growth`]).
//!
//! All structural computations are exact (big integers, rationals, `F_p`).
//! Frobenius–Perron dimensions are reported as fixed-point reals carrying
//! roughly 96 decimal digits.

pub mod brauer;
pub mod cli;
mod error;
pub mod growth;
pub mod modrep;
pub mod partitions;
pub mod scalars;
pub mod verlinde;

pub use error::{Error, Result};
