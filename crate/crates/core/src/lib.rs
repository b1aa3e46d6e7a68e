//! Quantum-logic machinery and quantum-key-distribution simulation.
//!
//! The crate is organised around a few layers:
//!
//! * [`logic`]: orthogonality hypergraphs (Greechie diagrams), two-valued
//!   state enumeration, partition logics, "chocolate ball" urn types,
//!   lattice evaluation on set models and Mealy-automaton partitions.
//! * [`realization`]: integer rays, context derivation from rays, exact
//!   realization checks, a numerical realization search and the built-in
//!   catalog of logics.
//! * [`quantum`]: a small finite-dimensional simulator (Born rule, singlet
//!   correlations, spin-3/2 rotations) plus the seedable [`RandomSource`].
//! * [`protocols`]: Monte-Carlo engines for classical and quantum BB84, the
//!   Kochen-Specker protected protocol and Ekert/CHSH.
//! * [`randomness`]: symbol-to-bit grouping, von Neumann extraction and
//!   descriptive bit statistics.
//!
//! Stochastic engines split their rounds into fixed-size chunks, each with
//! its own random stream, so results are bit-identical whether the chunks run
//! sequentially or on the rayon pool (feature `parallel`, on by default).

pub mod exec;
pub mod logic;
pub mod logic_file;
pub mod protocols;
pub mod quantum;
pub mod randomness;
pub mod realization;

pub use exec::Execution;
pub use quantum::RandomSource;
