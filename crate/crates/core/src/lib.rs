//! Certified chromatic numbers of Abelian Cayley graphs.
//!
//! An integer `m×r` matrix `M` (a Heuberger matrix) describes the graph
//! `Cay(Z^m / H, {±e_1, …, ±e_m})` where `H` is the column lattice of `M`.
//! The [`chromatic`] engine computes the chromatic number of that graph for
//! every matrix of rank at most two and emits a certificate naming the
//! case that decided it. The [`oracle`] module audits those answers with
//! exact colorings of finite subgraphs and finite quotients.

pub mod cayley;
pub mod chromatic;
pub mod cli;
pub mod intmat;
pub mod oracle;
