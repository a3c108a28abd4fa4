//! Line-oriented netlist files.
//!
//! ```text
//! # naive multiplexer
//! inputs a b s
//! outputs n3
//! n0 = NOT s
//! n1 = AND a n0
//! n2 = AND b s
//! n3 = OR n1 n2
//! ```
//!
//! `ZERO` and `ONE` are predefined. Gates may appear in any order in a file
//! that is loaded; [`to_text`] writes them in stored order named `n0, n1, ..`,
//! which makes a saved file reproduce itself byte for byte.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::io::Write;
use std::path::Path;

use super::{Gate, Netlist, NetlistError, Signal};
use crate::kleene::TritWord;

fn signal_name(c: &Netlist, s: Signal) -> String {
    match s {
        Signal::Input(i) => c.inputs[i].clone(),
        other => other.to_string(),
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_gate_name(s: &str) -> bool {
    s.len() > 1 && s.starts_with('n') && s[1..].bytes().all(|b| b.is_ascii_digit())
}

/// Canonical text form.
pub fn to_text(c: &Netlist) -> String {
    let mut out = String::from("inputs");
    for name in &c.inputs {
        out.push(' ');
        out.push_str(name);
    }
    out.push_str("\noutputs");
    for s in &c.outputs {
        out.push(' ');
        out.push_str(&signal_name(c, *s));
    }
    out.push('\n');
    for (g, gate) in c.gates.iter().enumerate() {
        let ops: Vec<String> = gate.operands().map(|s| signal_name(c, s)).collect();
        out.push_str(&format!("n{g} = {} {}\n", gate.mnemonic(), ops.join(" ")));
    }
    out
}

pub fn save(c: &Netlist, path: impl AsRef<Path>) -> Result<(), NetlistError> {
    for name in &c.inputs {
        if !is_identifier(name) || name == "ZERO" || name == "ONE" || is_gate_name(name) {
            return Err(NetlistError::Parse {
                line: 1,
                col: 1,
                msg: format!("input name {name:?} cannot be written"),
            });
        }
    }
    std::fs::write(path, to_text(c))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Netlist, NetlistError> {
    parse(&std::fs::read_to_string(path)?)
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    col: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            col: line[..s].chars().count() + 1,
        });
    }
    out
}

struct RawGate<'a> {
    line: usize,
    id: &'a str,
    kind: &'a str,
    ops: Vec<Token<'a>>,
}

fn parse_err(line: usize, col: usize, msg: impl Into<String>) -> NetlistError {
    NetlistError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

pub fn parse(text: &str) -> Result<Netlist, NetlistError> {
    let mut inputs: Option<Vec<String>> = None;
    let mut outputs: Option<(usize, Vec<Token<'_>>)> = None;
    let mut raw: Vec<RawGate<'_>> = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let line = line.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "inputs" => {
                if inputs.is_some() {
                    return Err(parse_err(ln, head.col, "duplicate inputs line"));
                }
                let mut names = Vec::new();
                for t in &toks[1..] {
                    if !is_identifier(t.text) || t.text == "ZERO" || t.text == "ONE" || is_gate_name(t.text) {
                        return Err(parse_err(ln, t.col, format!("invalid input name {:?}", t.text)));
                    }
                    if names.iter().any(|n| n == t.text) {
                        return Err(parse_err(ln, t.col, format!("duplicate input {}", t.text)));
                    }
                    names.push(t.text.to_string());
                }
                inputs = Some(names);
            }
            "outputs" => {
                if outputs.is_some() {
                    return Err(parse_err(ln, head.col, "duplicate outputs line"));
                }
                outputs = Some((ln, toks.into_iter().skip(1).collect()));
            }
            _ => {
                if !is_identifier(head.text) {
                    return Err(parse_err(ln, head.col, format!("invalid gate id {:?}", head.text)));
                }
                match toks.get(1) {
                    Some(t) if t.text == "=" => {}
                    Some(t) => return Err(parse_err(ln, t.col, "expected '='")),
                    None => return Err(parse_err(ln, head.col + head.text.len(), "expected '='")),
                }
                let Some(kind) = toks.get(2) else {
                    return Err(parse_err(ln, toks[1].col + 1, "expected gate kind"));
                };
                if !matches!(kind.text, "AND" | "OR" | "NOT") {
                    return Err(parse_err(ln, kind.col, format!("unknown gate kind {:?}", kind.text)));
                }
                let id = head.text;
                let kind = kind.text;
                raw.push(RawGate {
                    line: ln,
                    id,
                    kind,
                    ops: toks.into_iter().skip(3).collect(),
                });
            }
        }
    }
    let inputs = inputs.ok_or_else(|| parse_err(1, 1, "missing inputs line"))?;
    let (out_line, out_toks) = outputs.ok_or_else(|| parse_err(1, 1, "missing outputs line"))?;

    let mut by_id: HashMap<&str, usize> = HashMap::new();
    for (i, g) in raw.iter().enumerate() {
        if g.id == "ZERO" || g.id == "ONE" || inputs.iter().any(|n| n == g.id) {
            return Err(parse_err(
                g.line,
                1,
                format!("gate id {} shadows a predefined signal", g.id),
            ));
        }
        if by_id.insert(g.id, i).is_some() {
            return Err(parse_err(g.line, 1, format!("duplicate gate id {}", g.id)));
        }
        let expected = if g.kind == "NOT" { 1 } else { 2 };
        if g.ops.len() != expected {
            return Err(NetlistError::Arity {
                line: g.line,
                gate: g.id.to_string(),
                kind: match g.kind {
                    "AND" => "AND",
                    "OR" => "OR",
                    _ => "NOT",
                },
                expected,
                actual: g.ops.len(),
            });
        }
    }

    // Sources refer to raw gate indices until the gates are ordered.
    let resolve = |t: &Token<'_>, line: usize| -> Result<Signal, NetlistError> {
        match t.text {
            "ZERO" => Ok(Signal::Const(false)),
            "ONE" => Ok(Signal::Const(true)),
            name => {
                if let Some(i) = inputs.iter().position(|n| n == name) {
                    Ok(Signal::Input(i))
                } else if let Some(g) = by_id.get(name) {
                    Ok(Signal::Gate(*g))
                } else {
                    Err(parse_err(line, t.col, format!("undefined signal {name}")))
                }
            }
        }
    };
    let mut ops: Vec<Vec<Signal>> = Vec::with_capacity(raw.len());
    for g in &raw {
        ops.push(g.ops.iter().map(|t| resolve(t, g.line)).collect::<Result<_, _>>()?);
    }
    let outs: Vec<Signal> = out_toks
        .iter()
        .map(|t| resolve(t, out_line))
        .collect::<Result<_, _>>()?;

    // Kahn's algorithm, always taking the earliest ready gate in file order.
    let mut users: Vec<Vec<usize>> = vec![Vec::new(); raw.len()];
    let mut pending: Vec<usize> = vec![0; raw.len()];
    for (i, os) in ops.iter().enumerate() {
        for s in os {
            if let Signal::Gate(g) = s {
                users[*g].push(i);
                pending[i] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> = (0..raw.len()).filter(|i| pending[*i] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(raw.len());
    let mut position = vec![usize::MAX; raw.len()];
    while let Some(Reverse(i)) = ready.pop() {
        position[i] = order.len();
        order.push(i);
        for u in &users[i] {
            pending[*u] -= 1;
            if pending[*u] == 0 {
                ready.push(Reverse(*u));
            }
        }
    }
    if order.len() < raw.len() {
        let mut cur = (0..raw.len())
            .find(|i| position[*i] == usize::MAX)
            .expect("unsorted gate");
        let mut seen = vec![false; raw.len()];
        while !seen[cur] {
            seen[cur] = true;
            cur = ops[cur]
                .iter()
                .find_map(|s| match s {
                    Signal::Gate(g) if position[*g] == usize::MAX => Some(*g),
                    _ => None,
                })
                .expect("blocked gate has an unsorted operand");
        }
        return Err(NetlistError::Cycle(raw[cur].id.to_string()));
    }

    let tr = |s: Signal| match s {
        Signal::Gate(g) => Signal::Gate(position[g]),
        other => other,
    };
    let gates = order
        .iter()
        .map(|i| {
            let o = &ops[*i];
            match raw[*i].kind {
                "AND" => Gate::And(tr(o[0]), tr(o[1])),
                "OR" => Gate::Or(tr(o[0]), tr(o[1])),
                _ => Gate::Not(tr(o[0])),
            }
        })
        .collect();
    Netlist::new(inputs, gates, outs.into_iter().map(tr).collect())
}

/// Writes one CSV row `input,output` per evaluated word.
pub fn write_trace<W: Write>(c: &Netlist, words: &[TritWord], out: W) -> Result<(), NetlistError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["input", "output"])?;
    for x in words {
        let y = c.eval(x)?;
        w.write_record([x.to_string(), y.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const MUX: &str = "inputs a b s\noutputs n3\nn0 = NOT s\nn1 = AND a n0\nn2 = AND b s\nn3 = OR n1 n2\n";

    #[test]
    fn canonical_round_trip() {
        let c = parse(MUX).unwrap();
        assert_eq!(to_text(&c), MUX);
        assert_eq!(c.stats().size, 4);
    }

    #[test]
    fn out_of_order_gates_are_sorted() {
        let text = "# shuffled\ninputs a b s\noutputs top\ntop = OR l r\nl = AND a ns\nns = NOT s\nr = AND b s\n";
        let c = parse(text).unwrap();
        assert_eq!(to_text(&c), MUX);
    }

    #[test]
    fn constants_and_inputs_as_outputs() {
        let c = parse("inputs a\noutputs ONE a ZERO g\ng = AND a ONE\n").unwrap();
        assert_eq!(c.eval(&"M".parse().unwrap()).unwrap().to_string(), "1M0M");
        assert_eq!(to_text(&c), "inputs a\noutputs ONE a ZERO n0\nn0 = AND a ONE\n");
    }

    #[test]
    fn cycle_is_reported() {
        let text = "inputs a\noutputs x\nx = AND a y\ny = NOT x\n";
        match parse(text) {
            Err(e @ NetlistError::Cycle(_)) => assert!(e.to_string().starts_with("cycle involving ")),
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn arity_error_names_gate() {
        let text = "inputs a b\noutputs g7\ng7 = AND a\n";
        let e = parse(text).unwrap_err();
        assert!(matches!(e, NetlistError::Arity { ref gate, .. } if gate == "g7"));
        assert!(e.to_string().contains("g7"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse("inputs a\noutputs q\nq = XOR a a\n").unwrap_err();
        assert!(matches!(e, NetlistError::Parse { line: 3, col: 5, .. }), "{e}");
        let e = parse("inputs a\noutputs q\nq = NOT zz\n").unwrap_err();
        assert!(matches!(e, NetlistError::Parse { line: 3, col: 9, .. }), "{e}");
        let e = parse("inputs a a\noutputs a\n").unwrap_err();
        assert!(matches!(e, NetlistError::Parse { line: 1, col: 10, .. }), "{e}");
        let e = parse("outputs ZERO\n").unwrap_err();
        assert!(e.to_string().contains("missing inputs"));
        let e = parse("inputs a\noutputs q\nq = NOT a\nq = NOT a\n").unwrap_err();
        assert!(e.to_string().contains("duplicate gate id q"));
    }

    #[test]
    fn save_and_load_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mux.net");
        let c = parse(MUX).unwrap();
        save(&c, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), MUX);
        assert_eq!(load(&path).unwrap(), c);
    }

    #[test]
    fn trace_csv() {
        let c = parse(MUX).unwrap();
        let mut buf = Vec::new();
        let words: Vec<TritWord> = ["11M", "010"].iter().map(|w| w.parse().unwrap()).collect();
        write_trace(&c, &words, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "input,output\n11M,M\n010,0\n");
    }
}
