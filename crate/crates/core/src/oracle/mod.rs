//! Ground-truth constructions that share no code with the Coxeter pipeline.

pub mod tamari;
