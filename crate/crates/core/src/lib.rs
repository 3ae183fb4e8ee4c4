//! Two-weight trace codes over `Z/p^h` built from the Galois ring `GR(p^h, 2)`.
//!
//! The crate constructs the codes `C_d = {(Tr(A·x^d))_{x ∈ T*} : A ∈ GR(p^h, 2)}`,
//! enumerates their weight distributions exactly, punctures them down to
//! projective codes, and verifies the coset graphs of the dual punctured codes
//! as strongly regular Cayley graphs.

pub mod ring;
pub mod code;
pub mod puncture;
pub mod graph;
pub mod reference;
pub mod cli;
