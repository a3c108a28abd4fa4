use std::process::{Command, Output};

fn mcadd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mcadd"))
        .args(args)
        .output()
        .expect("run mcadd")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn hybrid(n: &'static str, k: &'static str) -> Vec<&'static str> {
    vec!["--code", "hybrid", "--n", n, "--k", k]
}

fn with(mut head: Vec<&'static str>, sub: &'static str, tail: &[&'static str]) -> Vec<&'static str> {
    head.insert(0, sub);
    head.extend_from_slice(tail);
    head
}

#[test]
fn encode_decode_golden() {
    let o = mcadd(&with(hybrid("5", "3"), "encode", &["37"]));
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "01101 011\n"));
    let o = mcadd(&with(hybrid("5", "3"), "decode", &["--recover", "01110 100"]));
    assert_eq!(stdout(&o), "47\n");
    let o = mcadd(&["decode", "--code", "brgc", "--n", "4", "0000"]);
    assert_eq!(stdout(&o), "0\n");
    let o = mcadd(&["encode", "--code", "unary-down", "--n", "4", "3"]);
    assert_eq!(stdout(&o), "0001\n");
    let o = mcadd(&["--format", "csv", "encode", "--code", "binary", "--n", "4", "7"]);
    assert_eq!(stdout(&o), "value,word\n7,0111\n");
}

#[test]
fn interval_golden() {
    let o = mcadd(&with(hybrid("4", "4"), "interval", &["25", "29"]));
    assert_eq!(stdout(&o), "0111 MMMM\nmetastable trits: 4\n");
    let o = mcadd(&with(hybrid("4", "4"), "interval", &["18", "22"]));
    assert_eq!(stdout(&o), "0M10 MM0M\nmetastable trits: 4\n");
}

#[test]
fn add_engines_agree_on_table_rows() {
    for engine in ["oracle", "circuit", "mc-circuit"] {
        let o = mcadd(&with(hybrid("3", "1"), "add", &["--engine", engine, "00M 0", "001 1"]));
        assert_eq!(
            o.status.code(),
            Some(0),
            "{engine}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = mcadd(&with(hybrid("5", "3"), "add", &["00101 1M0", "01101 011"]));
    assert_eq!(stdout(&o), "sum: 01000 00M\novf: 0\n");
    let o = mcadd(&with(hybrid("5", "3"), "add", &["01X10 X00", "00111 011"]));
    assert_eq!(stdout(&o), "sum: 11001 MM1\novf: 0\n");
    let o = mcadd(&[
        "add", "--code", "binary", "--n", "8", "--engine", "circuit", "0001101M", "00100101",
    ]);
    assert_eq!(stdout(&o), "sum: 0MMMMMMM\novf: 0\n");
}

#[test]
fn closure_engine_is_at_least_as_precise_as_circuit() {
    let args = |engine| with(hybrid("3", "1"), "add", &["--engine", engine, "0M1 1", "001 0"]);
    let plain = stdout(&mcadd(&args("circuit")));
    let closed = stdout(&mcadd(&args("mc-circuit")));
    let oracle = stdout(&mcadd(&args("oracle")));
    assert_eq!(closed, oracle);
    assert!(plain.matches('M').count() >= closed.matches('M').count());
}

#[test]
fn check_exit_codes() {
    let o = mcadd(&with(hybrid("5", "3"), "check", &["--property", "preserving"]));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("holds"));
    let o = mcadd(&[
        "check",
        "--code",
        "brgc",
        "--n",
        "4",
        "--property",
        "recoverable",
        "--k",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness: "));
    let o = mcadd(&["check", "--property", "bound", "--n", "3", "--k", "2", "--m", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("no such code"));
    let o = mcadd(&[
        "check",
        "--property",
        "bound",
        "--n",
        "3",
        "--k",
        "2",
        "--m",
        "6",
        "--fast",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("exists: "));
    let o = mcadd(&[
        "--max-evals",
        "10",
        "check",
        "--code",
        "brgc",
        "--n",
        "8",
        "--property",
        "preserving",
        "--k",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn usage_errors() {
    assert_eq!(
        mcadd(&["encode", "--code", "hybrid", "--n", "5", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mcadd(&["decode", "--code", "brgc", "--n", "4", "01x2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mcadd(&["interval", "--code", "brgc", "--n", "4", "3", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(mcadd(&["tables", "--table", "5"]).status.code(), Some(2));
    let o = mcadd(&["add", "--code", "brgc", "--n", "4", "0000", "0001"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn tables_match_fixtures() {
    for t in ["1", "2", "3", "4"] {
        let o = mcadd(&["tables", "--table", t]);
        assert_eq!(o.status.code(), Some(0), "table {t}");
        assert_eq!(stdout(&o), mcadd::cli::fixture(t.parse().unwrap()));
    }
    assert!(stdout(&mcadd(&["tables", "--table", "2"])).contains("01000 00X ({62,63})"));
}

#[test]
fn synth_then_sim() {
    let dir = tempfile::tempdir().unwrap();
    let naive = dir.path().join("naive.net");
    let mc = dir.path().join("mc.net");
    let o = mcadd(&["synth", "--construction", "naive-mux", "--out", naive.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = mcadd(&[
        "--format",
        "csv",
        "synth",
        "--construction",
        "mc-mux",
        "--out",
        mc.to_str().unwrap(),
    ]);
    let text = stdout(&o);
    assert!(text.starts_with("name,n,k,size,depth\nmc-mux,,,"), "{text}");
    let o = mcadd(&["sim", "--netlist", naive.to_str().unwrap(), "11M", "10M"]);
    assert_eq!(stdout(&o), "11M -> M\n10M -> M\n");
    let o = mcadd(&["sim", "--netlist", mc.to_str().unwrap(), "11M", "10M"]);
    assert_eq!(stdout(&o), "11M -> 1\n10M -> M\n");
    let o = mcadd(&["--format", "csv", "sim", "--netlist", mc.to_str().unwrap(), "11M"]);
    assert_eq!(stdout(&o), "input,output\n11M,1\n");
}

#[test]
fn synth_adder_round_trips_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("add.net");
    let o = mcadd(&[
        "synth",
        "--construction",
        "add",
        "--n",
        "5",
        "--k",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let c = mcadd::netlist::load(&path).unwrap();
    let direct = mcadd::synth::build_add(5, 3).unwrap();
    assert_eq!(c.stats(), direct.stats());
    let x: mcadd::kleene::TritWord = "00101 100 01101 011".parse().unwrap();
    assert_eq!(c.eval(&x).unwrap(), direct.eval(&x).unwrap());
    let o = mcadd(&[
        "synth",
        "--construction",
        "add",
        "--n",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sim_reports_missing_file() {
    let o = mcadd(&["sim", "--netlist", "/nonexistent/x.net", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}
