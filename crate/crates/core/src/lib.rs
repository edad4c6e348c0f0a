//! Exact computation of the PASEP partition polynomial
//! `y <W|(yD + E)^(n-1)|V>` by several independent routes, and a harness that
//! cross-validates them.
//!
//! * [`ansatz`]: truncated operator matrices and their scalar products.
//! * [`paths`]: weighted and signed Motzkin path enumeration.
//! * [`rooks`]: rook placements on Young diagrams and the hat operators.
//! * [`closedforms`]: closed-form and asymptotic formulas.
//! * [`permstats`]: brute-force permutation and matching statistics.
//! * [`cli`]: the `pasep` command-line front end.

pub mod ansatz;
pub mod cli;
pub mod closedforms;
pub mod exactpoly;
pub mod paths;
pub mod permstats;
pub mod rooks;

pub use exactpoly::{binomial, q_binomial, q_int, LaurentPoly, PolyError, RationalPoly};
