//! Frozen gate counts and depths of the constructions.

use mcadd::netlist::{CircuitStats, Netlist};
use mcadd::synth::{self, build_add, mc_transform, naive_mux, Direction, PrefixOp, TruthTable};

fn stats(c: &Netlist) -> (usize, usize) {
    let CircuitStats { size, depth } = c.stats();
    (size, depth)
}

#[test]
fn prefix_circuits() {
    let ltr = Direction::LeftToRight;
    assert_eq!(stats(&synth::ppc(PrefixOp::And, 16, ltr)), (26, 6));
    assert_eq!(stats(&synth::ppc(PrefixOp::Or, 16, ltr)), (26, 6));
    assert_eq!(stats(&synth::ppc(PrefixOp::Xor, 16, ltr)), (130, 18));
    assert_eq!(stats(&synth::prefix_adder(16)), (241, 18));
    assert_eq!(stats(&synth::ripple_adder(16)), (208, 36));
}

#[test]
fn translators() {
    assert_eq!(stats(&synth::brgc_to_bin(8)), (55, 12));
    assert_eq!(stats(&synth::bin_to_brgc(8)), (35, 3));
    assert_eq!(stats(&synth::un_to_bin(7)), (51, 8));
    assert_eq!(stats(&synth::bin_to_un(7)), (51, 8));
    assert_eq!(stats(&synth::map_circuit(8)), (140, 8));
}

#[test]
fn adders_and_closures() {
    assert_eq!(stats(&build_add(5, 3).unwrap()), (305, 33));
    assert_eq!(stats(&build_add(16, 3).unwrap()), (740, 42));
    assert_eq!(stats(&naive_mux()), (4, 3));
    assert_eq!(stats(&mc_transform(&TruthTable::mux()).unwrap()), (6, 4));
    let add = TruthTable::from_netlist(&build_add(3, 1).unwrap()).unwrap();
    assert_eq!(stats(&mc_transform(&add).unwrap()), (1483, 11));
}
