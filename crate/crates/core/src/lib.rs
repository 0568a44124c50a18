pub mod aff;
pub mod config;
pub mod frt;
pub mod linalg;
pub mod report;
pub mod rmatrix;
pub mod scalar;
pub mod slqhat;
pub mod suite;
pub mod uq;
