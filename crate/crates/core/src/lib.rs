pub mod bases;
pub mod cartan;
pub mod cli;
pub mod error;
pub mod repcheck;
pub mod scalar;
pub mod selftest;
pub mod shuffle;
pub mod words;
