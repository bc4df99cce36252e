//! Exact computations with finite-dimensional dual quasi-bialgebras: axiom
//! verification, Hopf bicomodules and the free/coinvariant adjunction,
//! preantipodes and the structure theorem, twisted group algebras.

pub mod comodules;
pub mod dqb;
pub mod exactmath;
pub mod groups;
pub mod preantipode;
pub mod report;
pub mod serialization;

pub use comodules::{Bicomodule, HopfBicomodule, LeftComodule, Subspace};
pub use dqb::{validate_dqb, DqbError, DualQuasiBialgebra};
pub use exactmath::{FieldSpec, Matrix, Scalar, Tensor};
pub use groups::{Cocycle, GroupData};
pub use preantipode::{AntipodeData, Preantipode, TauMap};
pub use report::{Entry, Outcome, Report, Witness};
