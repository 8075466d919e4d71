//! Exact integrability toolkit for the twisted spin-1 nineteen-vertex model.

pub mod field;
pub mod linalg;
pub mod exec;
pub mod params;
pub mod rmatrix;
pub mod aba;
pub mod detform;
pub mod asm;
pub mod spinchain;
pub mod verify;
