pub mod algebra;
pub mod catalog;
pub mod coalgebra;
pub mod comodule_connection;
pub mod connection;
pub mod coring;
pub mod cotensor;
pub mod cring;
pub mod dga;
pub mod document;
pub mod entwining;
pub mod error;
pub mod field;
pub mod hopf;
pub mod matrix;
pub mod report;
pub mod tensor;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, Fp, Rational};
pub use matrix::Matrix;
pub use report::Report;
