pub mod analysis;
pub mod ast;
pub mod cli;
pub mod compiler;
pub mod difftest;
pub mod ops;
pub mod print;
pub mod program;
pub mod semantics;
pub mod surface;
pub mod trace;
pub mod vm;
