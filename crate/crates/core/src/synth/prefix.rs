//! Parallel prefix networks and binary adders.
//!
//! Prefixes are computed with the Brent–Kung recursion: combine adjacent
//! pairs, recurse on the half-length sequence, then fill in the even
//! positions. For `n` elements this uses fewer than `2n` operator instances
//! at operator depth at most `2 log2 n`.

use crate::netlist::{Builder, Netlist, Signal};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixOp {
    And,
    Or,
    Xor,
}

impl PrefixOp {
    fn apply(self, b: &mut Builder, x: Signal, y: Signal) -> Signal {
        match self {
            PrefixOp::And => b.and(x, y),
            PrefixOp::Or => b.or(x, y),
            PrefixOp::Xor => b.xor(x, y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Output `i` folds inputs `1..=i`.
    LeftToRight,
    /// Output `i` folds inputs `i..=n`.
    RightToLeft,
}

/// Inclusive prefixes of `xs` under an associative `op(earlier, later)`.
pub fn scan<T: Clone>(b: &mut Builder, xs: &[T], op: &mut dyn FnMut(&mut Builder, &T, &T) -> T) -> Vec<T> {
    if xs.len() <= 1 {
        return xs.to_vec();
    }
    let pairs: Vec<T> = xs.chunks_exact(2).map(|p| op(b, &p[0], &p[1])).collect();
    let inner = scan(b, &pairs, op);
    let mut out = Vec::with_capacity(xs.len());
    out.push(xs[0].clone());
    for j in 1..xs.len() {
        if j % 2 == 1 {
            out.push(inner[j / 2].clone());
        } else {
            let v = op(b, &inner[j / 2 - 1], &xs[j]);
            out.push(v);
        }
    }
    out
}

pub(crate) fn ppc_in(b: &mut Builder, op: PrefixOp, xs: &[Signal], dir: Direction) -> Vec<Signal> {
    let mut f = |b: &mut Builder, x: &Signal, y: &Signal| op.apply(b, *x, *y);
    match dir {
        Direction::LeftToRight => scan(b, xs, &mut f),
        Direction::RightToLeft => {
            let rev: Vec<Signal> = xs.iter().rev().copied().collect();
            let mut out = scan(b, &rev, &mut f);
            out.reverse();
            out
        }
    }
}

/// Parallel prefix circuit on inputs `x1..xn`.
pub fn ppc(op: PrefixOp, n: usize, dir: Direction) -> Netlist {
    let mut b = Builder::new();
    let xs = b.inputs("x", n);
    let out = ppc_in(&mut b, op, &xs, dir);
    b.finish(out)
}

/// Adds two words (first bit most significant) and a carry-in with a
/// generate/propagate prefix network. Returns the sum bits and carry-out.
pub(crate) fn prefix_add_in(b: &mut Builder, x: &[Signal], y: &[Signal], cin: Signal) -> (Vec<Signal>, Signal) {
    assert_eq!(x.len(), y.len(), "adder operand widths");
    let w = x.len();
    let mut props = Vec::with_capacity(w);
    // Elements from least significant upwards; the carry-in is a pure
    // generate element below bit w.
    let mut elems = vec![(cin, Signal::Const(false))];
    for i in (0..w).rev() {
        let g = b.and(x[i], y[i]);
        let p = b.xor(x[i], y[i]);
        props.push(p);
        elems.push((g, p));
    }
    let mut op = |b: &mut Builder, lo: &(Signal, Signal), hi: &(Signal, Signal)| {
        let t = b.and(hi.1, lo.0);
        let g = b.or(hi.0, t);
        let p = b.and(hi.1, lo.1);
        (g, p)
    };
    let carries = scan(b, &elems, &mut op);
    let mut sum: Vec<Signal> = (0..w).map(|j| b.xor(props[j], carries[j].0)).collect();
    sum.reverse();
    (sum, carries[w].0)
}

pub(crate) fn ripple_add_in(b: &mut Builder, x: &[Signal], y: &[Signal], cin: Signal) -> (Vec<Signal>, Signal) {
    assert_eq!(x.len(), y.len(), "adder operand widths");
    let mut c = cin;
    let mut sum = vec![Signal::Const(false); x.len()];
    for i in (0..x.len()).rev() {
        let p = b.xor(x[i], y[i]);
        sum[i] = b.xor(p, c);
        let g = b.and(x[i], y[i]);
        let t = b.and(c, p);
        c = b.or(g, t);
    }
    (sum, c)
}

type AddFn = fn(&mut Builder, &[Signal], &[Signal], Signal) -> (Vec<Signal>, Signal);

fn adder(w: usize, f: AddFn) -> Netlist {
    let mut b = Builder::new();
    let x = b.inputs("a", w);
    let y = b.inputs("b", w);
    let cin = b.input("cin");
    let (mut out, cout) = f(&mut b, &x, &y, cin);
    out.push(cout);
    b.finish(out)
}

/// `w`-bit parallel-prefix adder: inputs `a1..aw b1..bw cin`, outputs
/// `s1..sw cout`.
pub fn prefix_adder(w: usize) -> Netlist {
    adder(w, prefix_add_in)
}

/// Ripple-carry adder with the same ports as [`prefix_adder`].
pub fn ripple_adder(w: usize) -> Netlist {
    adder(w, ripple_add_in)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kleene::{BitWord, TritWord};

    fn run(c: &Netlist, x: &str) -> String {
        c.eval(&x.parse::<TritWord>().unwrap()).unwrap().to_string()
    }

    #[test]
    fn ppc_examples() {
        assert_eq!(run(&ppc(PrefixOp::Xor, 4, Direction::LeftToRight), "0111"), "0101");
        assert_eq!(run(&ppc(PrefixOp::And, 5, Direction::LeftToRight), "11111"), "11111");
        assert_eq!(run(&ppc(PrefixOp::Or, 3, Direction::RightToLeft), "001"), "111");
    }

    #[test]
    fn ppc_matches_fold_exhaustively() {
        for n in 1..=9usize {
            for (op, f) in [
                (PrefixOp::And, (|a, b| a & b) as fn(bool, bool) -> bool),
                (PrefixOp::Or, |a, b| a | b),
                (PrefixOp::Xor, |a, b| a ^ b),
            ] {
                for dir in [Direction::LeftToRight, Direction::RightToLeft] {
                    let c = ppc(op, n, dir);
                    for v in 0..(1u64 << n) {
                        let x = BitWord::from_u64(v, n);
                        let bits = x.bits();
                        let want: BitWord = (0..n)
                            .map(|i| {
                                let r = match dir {
                                    Direction::LeftToRight => &bits[..=i],
                                    Direction::RightToLeft => &bits[i..],
                                };
                                r.iter().copied().reduce(f).unwrap()
                            })
                            .collect();
                        assert_eq!(c.eval_bool(&x).unwrap(), want, "{op:?} {dir:?} {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn ppc_is_logarithmic() {
        for n in [4usize, 8, 16, 32, 64] {
            let s = ppc(PrefixOp::And, n, Direction::LeftToRight).stats();
            assert!(s.size < 2 * n, "n={n} size={}", s.size);
            assert!(s.depth <= 2 * n.ilog2() as usize, "n={n} depth={}", s.depth);
        }
    }

    #[test]
    fn adder_examples() {
        let a = prefix_adder(4);
        assert_eq!(run(&a, "0101 0011 0"), "10000");
        assert_eq!(run(&a, "1111 0000 1"), "00001");
        assert_eq!(run(&ripple_adder(4), "1111 0001 0"), "00001");
    }

    #[test]
    fn adders_match_integer_addition() {
        for w in 1..=6usize {
            for c in [prefix_adder(w), ripple_adder(w)] {
                for x in 0..(1u64 << w) {
                    for y in 0..(1u64 << w) {
                        for cin in 0..2u64 {
                            let input = BitWord::from_u64(x, w)
                                .concat(&BitWord::from_u64(y, w))
                                .concat(&BitWord::from_u64(cin, 1));
                            let out = c.eval_bool(&input).unwrap();
                            let got = ((out.bits()[w] as u64) << w) | out.slice(0, w).to_u64();
                            assert_eq!(got, x + y + cin, "w={w} {x}+{y}+{cin}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn serial_adder_smears_metastability() {
        let c = ripple_adder(8);
        assert_eq!(run(&c, "0001101M 00100101 0"), "0MMMMMMM0");
        assert_eq!(run(&c, "00011001 00100101 0"), "001111100");
    }
}
