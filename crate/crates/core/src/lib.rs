//! Exact computations on nilpotent Lie algebras given by structure constants:
//! central series, characteristic sequences, the centralizer property,
//! second cohomology, graded central extensions, the model catalog and
//! root-system checks.

pub mod cli;
pub mod cohomology;
pub mod document;
pub mod exactla;
pub mod extensions;
pub mod grading;
pub mod liecore;
pub mod models;
pub mod roots;
pub mod tables;
