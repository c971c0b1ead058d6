pub mod census;
pub mod cli;
pub mod engine;
pub mod error;
pub mod flag;
pub mod io;
pub mod linalg;
pub mod monomial;
pub mod ses;
pub mod tensor;
pub mod topology;
