pub mod cli;
pub mod expr;
pub mod fock;
pub mod kleingordon;
pub mod symalg;
pub mod testkit;
