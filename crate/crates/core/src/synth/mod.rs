//! Circuit constructions: prefix networks, code translators, the `ũ`
//! circuit, binary adders, the hybrid-code adder `ADD(n, k)` and the
//! prime-implicant closure transform.

mod adder;
mod closure;
mod prefix;
mod translate;

pub use adder::{build_add, mc_add_oracle, AddOracle, AddResult};
pub use closure::{
    all_prime_implicants, mc_transform, mc_transform_with_limit, prime_implicants, Cube, TruthTable,
    DEFAULT_IMPLICANT_LIMIT, MAX_IMPLICANT_WIDTH,
};
pub use prefix::{ppc, prefix_adder, ripple_adder, scan, Direction, PrefixOp};
pub use translate::{bin_to_brgc, bin_to_un, brgc_to_bin, map_circuit, un_to_bin, unary_bits};

use thiserror::Error;

use crate::netlist::{Builder, Netlist, NetlistError};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("width {width} exceeds the limit of {max}")]
    TooWide { width: usize, max: usize },
    #[error("{count} prime implicants exceed the limit of {limit}")]
    TooManyImplicants { count: usize, limit: usize },
    #[error("operand has {actual} trits, expected {expected}")]
    Width { expected: usize, actual: usize },
    #[error("{count} metastable trits exceed the limit of {limit}")]
    MetaLimit { count: usize, limit: usize },
    #[error(transparent)]
    Netlist(#[from] NetlistError),
}

/// `OR(AND(a, NOT s), AND(b, s))` on inputs `a b s`.
pub fn naive_mux() -> Netlist {
    let mut b = Builder::new();
    let a = b.input("a");
    let d = b.input("b");
    let s = b.input("s");
    let out = b.mux(a, d, s);
    b.finish(vec![out])
}
