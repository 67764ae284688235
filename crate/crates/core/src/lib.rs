//! Certified constructions over the rationals: split-Rolle witnesses for
//! polynomials whose irrational roots are real and simple, and rational
//! Belyi maps built from tuples of rational points.

pub mod exactalg;
pub mod realroots;

pub use exactalg::{Poly, Rat};
pub mod belyi;
pub mod document;
pub mod expr;
pub mod report;
pub mod witness;
