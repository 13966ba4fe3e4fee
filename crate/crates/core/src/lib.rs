//! Exact computations with graded objects, species, duoidal structures and
//! measurings, over the rationals.

pub mod graded;
pub mod linalg;
pub mod species;
pub mod engine;
pub mod duoidal;
pub mod structures;
pub mod measuring;
pub mod random;
pub mod selftest;
pub mod serial;
