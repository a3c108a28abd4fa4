//! Translators between BRGC, binary and unary words, and the circuit for the
//! unary mapping `ũ`.

use super::prefix::{ppc_in, Direction, PrefixOp};
use crate::netlist::{Builder, Netlist, Signal};

/// Bits needed to write `0..=k` in binary.
pub fn unary_bits(k: usize) -> usize {
    (k + 1).next_power_of_two().trailing_zeros() as usize
}

pub(crate) fn brgc_to_bin_in(b: &mut Builder, g: &[Signal]) -> Vec<Signal> {
    ppc_in(b, PrefixOp::Xor, g, Direction::LeftToRight)
}

pub(crate) fn bin_to_brgc_in(b: &mut Builder, x: &[Signal]) -> Vec<Signal> {
    let mut out = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        let s = if i == 0 { x[0] } else { b.xor(x[i - 1], x[i]) };
        out.push(s);
    }
    out
}

/// Binary value of a unary-up word of length `2^l - 1`.
fn delta(b: &mut Builder, z: &[Signal]) -> Vec<Signal> {
    if z.len() == 1 {
        return vec![z[0]];
    }
    let m = z.len().div_ceil(2);
    let mid = z[m - 1];
    let left = delta(b, &z[..m - 1]);
    let right = delta(b, &z[m..]);
    let mut out = vec![mid];
    for (l, r) in left.into_iter().zip(right) {
        out.push(b.mux(l, r, mid));
    }
    out
}

pub(crate) fn un_to_bin_in(b: &mut Builder, pi: Signal, u: &[Signal]) -> Vec<Signal> {
    let l = unary_bits(u.len());
    let mut z: Vec<Signal> = u.iter().map(|x| b.xor(*x, pi)).collect();
    z.resize((1 << l) - 1, Signal::Const(false));
    delta(b, &z)
}

/// Unary-up word of length `2^l - 1` for an `l`-bit value.
fn delta_inv(b: &mut Builder, x: &[Signal]) -> Vec<Signal> {
    if x.len() == 1 {
        return vec![x[0]];
    }
    let y = delta_inv(b, &x[1..]);
    let half = 1usize << (x.len() - 1);
    let lo: Vec<Signal> = y
        .iter()
        .copied()
        .chain(std::iter::repeat_n(Signal::Const(false), half))
        .collect();
    let hi: Vec<Signal> = std::iter::repeat_n(Signal::Const(true), half)
        .chain(y.iter().copied())
        .collect();
    lo.into_iter().zip(hi).map(|(l, h)| b.mux(l, h, x[0])).collect()
}

pub(crate) fn bin_to_un_in(b: &mut Builder, pi: Signal, x: &[Signal], k: usize) -> Vec<Signal> {
    let mut up = delta_inv(b, x);
    up.truncate(k);
    up.into_iter().map(|s| b.xor(s, pi)).collect()
}

pub(crate) fn map_in(b: &mut Builder, pi: Signal, x: &[Signal]) -> Vec<Signal> {
    let k = x.len();
    if k == 0 {
        return Vec::new();
    }
    let mid = x[k.div_ceil(2) - 1];
    let c00 = ppc_in(b, PrefixOp::And, x, Direction::LeftToRight);
    let c01 = ppc_in(b, PrefixOp::Or, x, Direction::RightToLeft);
    let c10 = ppc_in(b, PrefixOp::And, x, Direction::RightToLeft);
    let c11 = ppc_in(b, PrefixOp::Or, x, Direction::LeftToRight);
    (0..k)
        .map(|i| {
            let up = b.mux(c00[i], c01[i], mid);
            let down = b.mux(c10[i], c11[i], mid);
            b.mux(up, down, pi)
        })
        .collect()
}

/// Inputs `g1..gn`, outputs the binary word of the decoded value.
pub fn brgc_to_bin(n: usize) -> Netlist {
    let mut b = Builder::new();
    let g = b.inputs("g", n);
    let out = brgc_to_bin_in(&mut b, &g);
    b.finish(out)
}

/// Inputs `b1..bn`, outputs the BRGC word of the value.
pub fn bin_to_brgc(n: usize) -> Netlist {
    let mut b = Builder::new();
    let x = b.inputs("b", n);
    let out = bin_to_brgc_in(&mut b, &x);
    b.finish(out)
}

/// Inputs `pi u1..uk`; outputs the `unary_bits(k)`-bit binary value of
/// an up codeword (`pi = 0`) or down codeword (`pi = 1`).
pub fn un_to_bin(k: usize) -> Netlist {
    let mut b = Builder::new();
    let pi = b.input("pi");
    let u = b.inputs("u", k);
    let out = un_to_bin_in(&mut b, pi, &u);
    b.finish(out)
}

/// Inputs `pi b1..bl` with `l = unary_bits(k)`; outputs the `k`-bit unary
/// word, up for `pi = 0` and down for `pi = 1`.
pub fn bin_to_un(k: usize) -> Netlist {
    let mut b = Builder::new();
    let pi = b.input("pi");
    let x = b.inputs("b", unary_bits(k));
    let out = bin_to_un_in(&mut b, pi, &x, k);
    b.finish(out)
}

/// Inputs `pi u1..uk`; outputs `ũ(pi, u)`. Four prefix circuits feed a 4:1
/// multiplexer selected by `pi` and the middle bit.
pub fn map_circuit(k: usize) -> Netlist {
    let mut b = Builder::new();
    let pi = b.input("pi");
    let u = b.inputs("u", k);
    let out = map_in(&mut b, pi, &u);
    b.finish(out)
}
