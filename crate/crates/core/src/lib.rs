//! Finite categories, their nerves, and the chain complexes and homology
//! they induce, computed over exact rationals. Also 2-vector spaces and an
//! Eckmann–Hilton checker.

pub mod chain;
pub mod chfunctor;
pub mod cli;
pub mod fincat;
pub mod nerve;
pub mod ratlinalg;
pub mod twovect;
