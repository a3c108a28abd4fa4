//! Metastability-containing addition.
//!
//! Kleene three-valued logic, the codes whose words can be superposed and
//! still be read back (`kleene`, `codes`, `verify`), a small gate-level
//! netlist model (`netlist`), and constructions of adders that handle
//! metastable inputs (`synth`).

pub mod cli;
pub mod codes;
pub mod kleene;
pub mod netlist;
pub mod synth;
pub mod verify;
