//! Desk-scale tooling for range avoidance over GF(2).
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`gf2core`]: a fan-in-2 circuit IR over `{INPUT, CONST, NOT, AND, OR, XOR}` with
//!   evaluation, degree bounds, ANF extraction and linear output layers.
//! * [`gens`]: candidate stretching generators (Goldreich local PRG, LPN with a sparse
//!   error encoder, truth-table generator, planted random circuits).
//! * [`extract`]: the offset-free Toeplitz hash family used as a linear seeded extractor.
//! * [`avoid`]: hard `Avoid` instance constructors, a brute-force solver and the one-sided
//!   adversaries that turn a solver into a generator break.
//! * [`cnf`]: the 3-CNF `tau_b(G)`, the "Student loses" CNF and a small SAT oracle.
//! * [`parred`]: simple parity reductions and `Res[xor]` proofs (checker, transformer,
//!   refutations of linear systems).
//! * [`game`]: Student-Teacher games, valid traces, the Goldwasser-Sipser set-size
//!   protocol and the round trial of the AM adversary.
//!
//! Text formats, configuration and the command line live in the `avoidforge` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod avoid;
pub mod bits;
pub mod cnf;
pub mod extract;
pub mod game;
pub mod gens;
pub mod gf2core;
pub mod parred;
pub mod rate;
pub mod rng;

pub use bits::Bits;
pub use gf2core::{Gate, GateId, Gf2Circuit};
pub use rate::Rate;
