//! Exact rational-arithmetic toolkit for generalized inverses with
//! nilpotent defect: Drazin, strongly Drazin, and Hirano inverses,
//! commuting structured + nilpotent decompositions, block-matrix
//! perturbation checkers with proof witnesses, and seeded instance
//! generators for soundness sweeps.

pub mod blockthm;
pub mod decomp;
pub mod error;
pub mod format;
pub mod gendrazin;
pub mod genfuzz;
pub mod ratmat;

pub use error::{Error, Result};
