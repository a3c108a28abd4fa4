//! Command-line front end.
//!
//! [`run`] parses arguments and executes a command in-process, returning the
//! exit code and the text destined for stdout and stderr. Exit codes: 0
//! success, 1 property violation or mismatch, 2 usage or parse error, 3
//! budget exceeded.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::codes::{extended_codeword, Code, CodeError, CodeSpec, Family, Interval};
use crate::kleene::{closure_eval, BitWord, KleeneError, Trit, TritWord};
use crate::netlist::{self, Netlist, NetlistError, DEFAULT_EVAL_BUDGET};
use crate::synth::{self, AddOracle, Direction, PrefixOp, SynthError, TruthTable};
use crate::verify::{self, PropertyReport, SearchOptions, VerifyError, Witness};

pub const TABLE1_FIXTURE: &str = include_str!("../fixtures/table1.txt");
pub const TABLE2_FIXTURE: &str = include_str!("../fixtures/table2.txt");
pub const TABLE3_FIXTURE: &str = include_str!("../fixtures/table3.txt");
pub const TABLE4_FIXTURE: &str = include_str!("../fixtures/table4.txt");

const DEFAULT_MAX_RESOLUTIONS: u64 = 1 << 20;

#[derive(Debug, Parser)]
#[command(name = "mcadd", version, about = "Metastability-containing codes and adders")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Largest number of operand resolutions an oracle may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RESOLUTIONS)]
    max_resolutions: u64,

    /// Evaluation budget for exhaustive checks and searches.
    #[arg(long, global = true, default_value_t = DEFAULT_EVAL_BUDGET)]
    max_evals: u64,

    /// Largest prime-implicant count accepted by closure synthesis.
    #[arg(long, global = true, default_value_t = synth::DEFAULT_IMPLICANT_LIMIT)]
    max_implicants: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CodeKind {
    Binary,
    UnaryUp,
    UnaryDown,
    Brgc,
    Hybrid,
}

#[derive(Debug, Args)]
struct CodeArgs {
    /// Code family.
    #[arg(long, value_enum)]
    code: CodeKind,
    /// Word length (BRGC part length for hybrid codes).
    #[arg(long)]
    n: usize,
    /// Unary part length of hybrid codes.
    #[arg(long)]
    k: Option<usize>,
}

impl CodeArgs {
    fn spec(&self) -> Result<CodeSpec, CliError> {
        let spec = match self.code {
            CodeKind::Binary => CodeSpec::binary(self.n),
            CodeKind::UnaryUp => CodeSpec::unary_up(self.n),
            CodeKind::UnaryDown => CodeSpec::unary_down(self.n),
            CodeKind::Brgc => CodeSpec::brgc(self.n),
            CodeKind::Hybrid => {
                let k = self.k.ok_or_else(|| CliError::Usage("hybrid codes need --k".into()))?;
                CodeSpec::hybrid(self.n, k)
            }
        };
        spec.map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    /// Closure of the stable adder over all resolutions.
    Oracle,
    /// Plain ternary evaluation of the adder circuit.
    Circuit,
    /// Ternary evaluation of the prime-implicant closure circuit.
    McCircuit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AdderKind {
    Prefix,
    Ripple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PropertyKind {
    Preserving,
    Recoverable,
    MCount,
    Bound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Construction {
    PpcAnd,
    PpcOr,
    PpcXor,
    BrgcToBin,
    BinToBrgc,
    UnToBin,
    BinToUn,
    Map,
    PrefixAdder,
    RippleAdder,
    Add,
    NaiveMux,
    McMux,
    McAdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    Ltr,
    Rtl,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode an integer.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        value: u64,
    },
    /// Decode a stable word.
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        /// Use the family's total decoder for non-codewords.
        #[arg(long)]
        recover: bool,
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
    /// Print the extended codeword of an interval.
    Interval {
        #[command(flatten)]
        code: CodeArgs,
        lo: u64,
        hi: u64,
    },
    /// Add two ternary words.
    Add {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, value_enum, default_value_t = Engine::Oracle)]
        engine: Engine,
        /// Binary adder used for --code binary (ripple by default).
        #[arg(long, value_enum)]
        adder: Option<AdderKind>,
        x: String,
        y: String,
    },
    /// Check a code property.
    Check {
        #[arg(long, value_enum)]
        code: Option<CodeKind>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Property level; defaults to --k.
        #[arg(long)]
        level: Option<usize>,
        /// Domain size for --property bound.
        #[arg(long)]
        m: Option<u64>,
        /// Fix the first codeword in the bound search.
        #[arg(long)]
        fast: bool,
        #[arg(long, value_enum)]
        property: PropertyKind,
    },
    /// Write a circuit construction as a netlist file.
    Synth {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Dir::Ltr)]
        direction: Dir,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate ternary words on a netlist file.
    Sim {
        #[arg(long)]
        netlist: PathBuf,
        #[arg(required = true, num_args = 1..)]
        words: Vec<String>,
    },
    /// Regenerate a reference table and compare it with the stored fixture.
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        table: u8,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Violation(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<KleeneError> for CliError {
    fn from(e: KleeneError) -> Self {
        match e {
            KleeneError::MetaLimit { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::OutOfDomain { .. } | CodeError::NotCodeword(_) | CodeError::NoExtension(_) => {
                CliError::Violation(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Budget { .. } | VerifyError::WordTooLong { .. } => CliError::Budget(e.to_string()),
            VerifyError::Code(c) => c.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<NetlistError> for CliError {
    fn from(e: NetlistError) -> Self {
        match e {
            NetlistError::Budget { .. } | NetlistError::TooWide { .. } => CliError::Budget(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::TooWide { .. } | SynthError::TooManyImplicants { .. } | SynthError::MetaLimit { .. } => {
                CliError::Budget(e.to_string())
            }
            SynthError::Netlist(n) => n.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Outcome of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandResult {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut out = Output::default();
    match execute(&cli, &mut out) {
        Ok(code) => CommandResult {
            code,
            stdout: out.stdout,
            stderr: out.stderr,
        },
        Err(e) => {
            let mut stderr = out.stderr;
            writeln!(stderr, "error: {e}").ok();
            CommandResult {
                code: e.exit_code(),
                stdout: out.stdout,
                stderr,
            }
        }
    }
}

#[derive(Default)]
struct Output {
    stdout: String,
    stderr: String,
}

impl Output {
    fn line(&mut self, s: impl AsRef<str>) {
        self.stdout.push_str(s.as_ref());
        self.stdout.push('\n');
    }
}

fn parse_trits(s: &str) -> Result<TritWord, CliError> {
    s.parse()
        .map_err(|e: KleeneError| CliError::Usage(format!("cannot parse {s:?}: {e}")))
}

fn parse_bits(s: &str) -> Result<BitWord, CliError> {
    s.parse()
        .map_err(|e: KleeneError| CliError::Usage(format!("cannot parse {s:?} as a stable word: {e}")))
}

fn meta_limit(max_resolutions: u64) -> usize {
    max_resolutions.max(1).ilog2() as usize
}

fn execute(cli: &Cli, out: &mut Output) -> Result<i32, CliError> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::Encode { code, value } => {
            let spec = code.spec()?;
            let w = spec.encode(*value)?;
            let text = spec.format_word(&TritWord::from(&w));
            if csv {
                out.line("value,word");
                out.line(format!("{value},{text}"));
            } else {
                out.line(text);
            }
            Ok(0)
        }
        Command::Decode { code, recover, word } => {
            let spec = code.spec()?;
            let w = parse_bits(&word.join(""))?;
            let v = if *recover {
                spec.extended_decode(&w)?
            } else {
                spec.decode(&w)?
            };
            if csv {
                out.line("word,value");
                out.line(format!("{w},{v}"));
            } else {
                out.line(v.to_string());
            }
            Ok(0)
        }
        Command::Interval { code, lo, hi } => {
            let spec = code.spec()?;
            let iv = Interval::new(*lo, *hi).map_err(|e| CliError::Usage(e.to_string()))?;
            let x = extended_codeword(&spec, iv).map_err(|e| CliError::Usage(e.to_string()))?;
            let text = spec.format_word(&x);
            if csv {
                out.line("lo,hi,word,meta");
                out.line(format!("{lo},{hi},{text},{}", x.meta_count()));
            } else {
                out.line(text);
                out.line(format!("metastable trits: {}", x.meta_count()));
            }
            Ok(0)
        }
        Command::Add {
            code,
            engine,
            adder,
            x,
            y,
        } => cmd_add(cli, out, code, *engine, *adder, x, y),
        Command::Check {
            code,
            n,
            k,
            level,
            m,
            fast,
            property,
        } => {
            if *property == PropertyKind::Bound {
                let (Some(n), Some(k), Some(m)) = (n, k, m) else {
                    return Err(CliError::Usage("--property bound needs --n, --k and --m".into()));
                };
                return cmd_bound(cli, out, *n, *k, *m, *fast);
            }
            let (Some(kind), Some(n)) = (code, n) else {
                return Err(CliError::Usage(format!("--property {property:?} needs --code and --n")));
            };
            let spec = CodeArgs {
                code: *kind,
                n: *n,
                k: *k,
            }
            .spec()?;
            let level = level
                .or(*k)
                .ok_or_else(|| CliError::Usage("give the property level with --level or --k".into()))?;
            cmd_check(cli, out, spec, *property, level)
        }
        Command::Synth {
            construction,
            n,
            k,
            direction,
            out: path,
        } => {
            let c = construct(cli, *construction, *n, *k, *direction)?;
            netlist::save(&c, path)?;
            let s = c.stats();
            let name = construction
                .to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default();
            let show = |v: &Option<usize>| v.map(|v| v.to_string()).unwrap_or_default();
            if csv {
                out.line("name,n,k,size,depth");
                out.line(format!("{name},{},{},{},{}", show(n), show(k), s.size, s.depth));
            } else {
                out.line(format!("wrote {}: size {}, depth {}", path.display(), s.size, s.depth));
            }
            Ok(0)
        }
        Command::Sim { netlist: path, words } => {
            let c = netlist::load(path)?;
            let xs = words.iter().map(|w| parse_trits(w)).collect::<Result<Vec<_>, _>>()?;
            if csv {
                let mut buf = Vec::new();
                netlist::write_trace(&c, &xs, &mut buf)?;
                out.stdout.push_str(&String::from_utf8_lossy(&buf));
            } else {
                for x in &xs {
                    out.line(format!("{x} -> {}", c.eval(x)?));
                }
            }
            Ok(0)
        }
        Command::Tables { table } => {
            let text = table_text(*table)?;
            out.stdout.push_str(&text);
            if text == fixture(*table) {
                Ok(0)
            } else {
                out.stderr
                    .push_str(&format!("table {table} does not match its fixture\n"));
                Ok(1)
            }
        }
    }
}

fn cmd_add(
    cli: &Cli,
    out: &mut Output,
    code: &CodeArgs,
    engine: Engine,
    adder: Option<AdderKind>,
    x: &str,
    y: &str,
) -> Result<i32, CliError> {
    let spec = code.spec()?;
    let (x, y) = (parse_trits(x)?, parse_trits(y)?);
    let len = spec.word_len();
    for w in [&x, &y] {
        if w.len() != len {
            return Err(CliError::Usage(format!(
                "operand {w} has {} trits, expected {len}",
                w.len()
            )));
        }
    }
    let limit = meta_limit(cli.max_resolutions);
    let (sum, ovf) = match spec.family() {
        Family::Hybrid { n, k } => {
            let oracle = AddOracle::new(n, k)?.with_meta_limit(limit);
            match engine {
                Engine::Oracle => {
                    let r = oracle.add(&x, &y)?;
                    (r.sum, r.ovf)
                }
                Engine::Circuit => split_sum(oracle.circuit().eval(&x.concat(&y))?, len),
                Engine::McCircuit => {
                    let c = closure_circuit(cli, oracle.circuit())?;
                    split_sum(c.eval(&x.concat(&y))?, len)
                }
            }
        }
        Family::Binary { n } => {
            let circuit = match adder.unwrap_or(AdderKind::Ripple) {
                AdderKind::Ripple => synth::ripple_adder(n),
                AdderKind::Prefix => synth::prefix_adder(n),
            };
            let input = x.concat(&y).concat(&TritWord::new(vec![Trit::Zero]));
            let word = match engine {
                Engine::Oracle => closure_eval(&circuit, &input, limit)?,
                Engine::Circuit => circuit.eval(&input)?,
                Engine::McCircuit => closure_circuit(cli, &circuit)?.eval(&input)?,
            };
            split_sum(word, len)
        }
        _ => {
            return Err(CliError::Usage(
                "addition is defined for binary and hybrid codes".into(),
            ))
        }
    };
    let text = spec.format_word(&sum);
    if cli.format == Format::Csv {
        out.line("sum,ovf");
        out.line(format!("{text},{ovf}"));
    } else {
        out.line(format!("sum: {text}"));
        out.line(format!("ovf: {ovf}"));
    }
    Ok(0)
}

fn split_sum(word: TritWord, len: usize) -> (TritWord, Trit) {
    let ovf = word.get(len + 1).unwrap_or(Trit::Zero);
    (word.slice(0, len), ovf)
}

fn closure_circuit(cli: &Cli, c: &Netlist) -> Result<Netlist, CliError> {
    if c.input_count() > synth::MAX_IMPLICANT_WIDTH {
        return Err(CliError::Budget(format!(
            "closure synthesis needs {} inputs, limit is {}",
            c.input_count(),
            synth::MAX_IMPLICANT_WIDTH
        )));
    }
    let tt = TruthTable::from_netlist(c)?;
    Ok(synth::mc_transform_with_limit(&tt, cli.max_implicants)?)
}

fn witness_text(spec: &CodeSpec, w: &Witness) -> String {
    let show = |b: &BitWord| spec.format_word(&TritWord::from(b));
    match w {
        Witness::Leak { interval, codeword } => {
            let x = extended_codeword(spec, *interval)
                .map(|x| spec.format_word(&x))
                .unwrap_or_default();
            format!(
                "interval {interval} has extended codeword {x}, which resolves to codeword {} of value {}",
                show(codeword),
                spec.decode(codeword).map(|v| v.to_string()).unwrap_or_default()
            )
        }
        Witness::Conflict { word, first, second } => {
            format!(
                "word {} is a resolution of both {first} and {second}, which are disjoint",
                show(word)
            )
        }
    }
}

fn cmd_check(
    cli: &Cli,
    out: &mut Output,
    spec: CodeSpec,
    property: PropertyKind,
    level: usize,
) -> Result<i32, CliError> {
    let csv = cli.format == Format::Csv;
    let report: PropertyReport = match property {
        PropertyKind::Preserving => verify::check_preserving_with_budget(&spec, level, cli.max_evals)?,
        PropertyKind::Recoverable => verify::check_recoverable_with_budget(&spec, level, cli.max_evals)?,
        PropertyKind::MCount => {
            let holds = verify::check_m_count(&spec, level);
            if csv {
                out.line("code,property,level,holds");
                out.line(format!("{spec},m-count,{level},{holds}"));
            } else if holds {
                out.line(format!(
                    "holds: every extended codeword of {spec} with imprecision p <= {level} has at least p Ms"
                ));
            } else {
                out.line(format!(
                    "fails: some extended codeword of {spec} with imprecision p <= {level} has fewer than p Ms"
                ));
            }
            return Ok(if holds { 0 } else { 1 });
        }
        PropertyKind::Bound => unreachable!("handled by cmd_bound"),
    };
    let name = report.property;
    let witness = report.witness.as_ref().map(|w| witness_text(&spec, w));
    let ext = report.extension.as_ref();
    if csv {
        out.line("code,property,level,holds,witness,extension");
        let ext = ext.map(|e| e.holds.to_string()).unwrap_or_default();
        out.line(format!(
            "{spec},{name},{level},{},{},{ext}",
            report.holds,
            witness.clone().unwrap_or_default()
        ));
    } else {
        if report.holds {
            out.line(format!("holds: {spec} is {level}-{name}"));
        } else {
            out.line(format!("fails: {spec} is not {level}-{name}"));
        }
        if let Some(w) = witness {
            out.line(format!("witness: {w}"));
        }
        if let Some(e) = ext {
            match &e.witness {
                None => out.line("decoder extension: maps every resolution into its interval"),
                Some((iv, w)) => out.line(format!(
                    "decoder extension: maps {} (a resolution of {iv}) to {}",
                    spec.format_word(&TritWord::from(w)),
                    spec.extended_decode(w).map(|v| v.to_string()).unwrap_or_default()
                )),
            }
        }
    }
    Ok(if report.holds { 0 } else { 1 })
}

fn cmd_bound(cli: &Cli, out: &mut Output, n: usize, k: usize, m: u64, fast: bool) -> Result<i32, CliError> {
    let max = verify::max_domain(n, k)?;
    let r = verify::exhaustive_bound_search(
        n,
        k,
        m,
        SearchOptions {
            budget: cli.max_evals,
            fast,
        },
    )?;
    let words = r
        .witness
        .as_ref()
        .map(|t| t.words().iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
    if cli.format == Format::Csv {
        out.line("n,k,m,bound,exists,witness,nodes");
        out.line(format!(
            "{n},{k},{m},{max},{},{},{}",
            !r.no_code_exists,
            words.clone().unwrap_or_default(),
            r.nodes
        ));
    } else if r.no_code_exists {
        out.line(format!(
            "no such code: no {n}-bit code on {m} values is {k}-recoverable (bound {max}, {} nodes)",
            r.nodes
        ));
    } else {
        out.line(format!("exists: {}", words.clone().unwrap_or_default()));
        out.line(format!("bound: {max}"));
    }
    // A code larger than the bound would refute it.
    Ok(if !r.no_code_exists && m > max { 1 } else { 0 })
}

fn construct(cli: &Cli, c: Construction, n: Option<usize>, k: Option<usize>, dir: Dir) -> Result<Netlist, CliError> {
    let need = |v: Option<usize>, flag: &str| {
        v.filter(|v| *v >= 1)
            .ok_or_else(|| CliError::Usage(format!("this construction needs {flag} >= 1")))
    };
    let direction = match dir {
        Dir::Ltr => Direction::LeftToRight,
        Dir::Rtl => Direction::RightToLeft,
    };
    Ok(match c {
        Construction::PpcAnd => synth::ppc(PrefixOp::And, need(n, "--n")?, direction),
        Construction::PpcOr => synth::ppc(PrefixOp::Or, need(n, "--n")?, direction),
        Construction::PpcXor => synth::ppc(PrefixOp::Xor, need(n, "--n")?, direction),
        Construction::BrgcToBin => synth::brgc_to_bin(need(n, "--n")?),
        Construction::BinToBrgc => synth::bin_to_brgc(need(n, "--n")?),
        Construction::UnToBin => synth::un_to_bin(need(k, "--k")?),
        Construction::BinToUn => synth::bin_to_un(need(k, "--k")?),
        Construction::Map => synth::map_circuit(need(k, "--k")?),
        Construction::PrefixAdder => synth::prefix_adder(need(n, "--n")?),
        Construction::RippleAdder => synth::ripple_adder(need(n, "--n")?),
        Construction::Add => synth::build_add(need(n, "--n")?, need(k, "--k")?)?,
        Construction::NaiveMux => synth::naive_mux(),
        Construction::McMux => synth::mc_transform_with_limit(&TruthTable::mux(), cli.max_implicants)?,
        Construction::McAdd => closure_circuit(cli, &synth::build_add(need(n, "--n")?, need(k, "--k")?)?)?,
    })
}

/// Stored reference text of table `n`.
pub fn fixture(n: u8) -> &'static str {
    match n {
        1 => TABLE1_FIXTURE,
        2 => TABLE2_FIXTURE,
        3 => TABLE3_FIXTURE,
        _ => TABLE4_FIXTURE,
    }
}

/// `{a,b,c}` for up to three values, `{lo,...,hi}` for longer runs.
pub fn value_set_text(values: &BTreeSet<u64>) -> String {
    let contiguous = match (values.first(), values.last()) {
        (Some(lo), Some(hi)) => hi - lo + 1 == values.len() as u64,
        _ => false,
    };
    if values.len() > 3 && contiguous {
        let lo = values.first().expect("nonempty");
        let hi = values.last().expect("nonempty");
        return format!("{{{lo},...,{hi}}}");
    }
    let list: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("{{{}}}", list.join(","))
}

fn x_for_m(s: &str) -> String {
    s.replace('M', "X")
}

/// Binary word with a space after every four bits.
fn nibbles(w: &TritWord) -> String {
    let s = w.to_string();
    let chunks: Vec<&str> = s
        .as_bytes()
        .chunks(4)
        .map(|c| std::str::from_utf8(c).expect("ascii"))
        .collect();
    chunks.join(" ")
}

fn decoded_set(
    word: &TritWord,
    decode: impl Fn(&BitWord) -> Result<u64, CodeError>,
) -> Result<BTreeSet<u64>, CliError> {
    let mut set = BTreeSet::new();
    for r in word.resolutions() {
        set.insert(decode(&r)?);
    }
    Ok(set)
}

fn table_rows(rows: [(&str, [String; 2]); 3]) -> String {
    let mut s = String::new();
    for (label, [a, b]) in rows {
        writeln!(s, "{label:<3} | {a} | {b}").ok();
    }
    s
}

/// Regenerates table `n` from the library.
pub fn table_text(n: u8) -> Result<String, CliError> {
    match n {
        1 => {
            let c = synth::ripple_adder(8);
            let y = parse_trits("00100101")?;
            let mut cols: Vec<[String; 3]> = Vec::new();
            for x in ["00011001", "0001101M"] {
                let x = parse_trits(x)?;
                let input = x.concat(&y).concat(&TritWord::new(vec![Trit::Zero]));
                let (sum, _) = split_sum(c.eval(&input)?, 8);
                let cell = |w: &TritWord| -> Result<String, CliError> {
                    let set = decoded_set(w, |b| Ok(b.to_u64()))?;
                    Ok(format!("{} ({})", x_for_m(&nibbles(w)), value_set_text(&set)))
                };
                cols.push([cell(&x)?, cell(&y)?, cell(&sum)?]);
            }
            Ok(transpose(cols))
        }
        2 => {
            let oracle = AddOracle::new(5, 3)?;
            let spec = oracle.spec();
            let mut cols: Vec<[String; 3]> = Vec::new();
            for (x, y) in [("00101 1M0", "01101 011"), ("01M10 M00", "00111 011")] {
                let (x, y) = (parse_trits(x)?, parse_trits(y)?);
                let r = oracle.add(&x, &y)?;
                let cell = |w: &TritWord| -> Result<String, CliError> {
                    let set = decoded_set(w, |b| spec.extended_decode(b))?;
                    Ok(format!("{} ({})", x_for_m(&spec.format_word(w)), value_set_text(&set)))
                };
                cols.push([cell(&x)?, cell(&y)?, cell(&r.sum)?]);
            }
            Ok(transpose(cols))
        }
        3 => {
            let spec = CodeSpec::brgc(4).expect("valid");
            let mut s = String::new();
            for r in 0..4u64 {
                let cells: Vec<String> = (0..4u64)
                    .map(|c| {
                        let i = 4 * c + r;
                        format!("{i:>2} {}", spec.encode(i).expect("in domain"))
                    })
                    .collect();
                writeln!(s, "{}", cells.join("   ")).ok();
            }
            Ok(s)
        }
        4 => {
            let spec = CodeSpec::hybrid(4, 4).expect("valid");
            let mut s = String::new();
            for r in 0..5u64 {
                let cells: Vec<String> = (0..6u64)
                    .map(|c| {
                        let i = 10 + 5 * c + r;
                        if (12..=37).contains(&i) {
                            let w = TritWord::from(spec.encode(i).expect("in domain"));
                            format!("{i:>2} {}", spec.format_word(&w))
                        } else {
                            " ".repeat(12)
                        }
                    })
                    .collect();
                writeln!(s, "{}", cells.join("   ").trim_end()).ok();
            }
            Ok(s)
        }
        _ => Err(CliError::Usage(format!("no table {n}"))),
    }
}

fn transpose(cols: Vec<[String; 3]>) -> String {
    let cell = |r: usize, c: usize| cols[c][r].clone();
    table_rows([
        ("X", [cell(0, 0), cell(0, 1)]),
        ("Y", [cell(1, 0), cell(1, 1)]),
        ("SUM", [cell(2, 0), cell(2, 1)]),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mcadd(args: &[&str]) -> CommandResult {
        run(std::iter::once("mcadd").chain(args.iter().copied()))
    }

    #[test]
    fn encode_and_decode() {
        let r = mcadd(&["encode", "--code", "hybrid", "--n", "5", "--k", "3", "37"]);
        assert_eq!((r.code, r.stdout.as_str()), (0, "01101 011\n"));
        let r = mcadd(&[
            "decode",
            "--code",
            "hybrid",
            "--n",
            "5",
            "--k",
            "3",
            "--recover",
            "01110 100",
        ]);
        assert_eq!((r.code, r.stdout.as_str()), (0, "47\n"));
        let r = mcadd(&["decode", "--code", "hybrid", "--n", "5", "--k", "3", "01110", "100"]);
        assert_eq!(r.code, 1);
        let r = mcadd(&["decode", "--code", "brgc", "--n", "4", "0000"]);
        assert_eq!(r.stdout, "0\n");
        let r = mcadd(&["encode", "--code", "brgc", "--n", "4", "16"]);
        assert_eq!(r.code, 1);
    }

    #[test]
    fn interval_words() {
        let r = mcadd(&["interval", "--code", "hybrid", "--n", "4", "--k", "4", "25", "29"]);
        assert_eq!(r.stdout, "0111 MMMM\nmetastable trits: 4\n");
        let r = mcadd(&["interval", "--code", "hybrid", "--n", "4", "--k", "4", "29", "25"]);
        assert_eq!(r.code, 2);
    }

    #[test]
    fn tables_match_fixtures() {
        for t in 1..=4u8 {
            assert_eq!(table_text(t).unwrap(), fixture(t), "table {t}");
        }
    }

    #[test]
    fn value_sets() {
        let s: BTreeSet<u64> = (0..128).collect();
        assert_eq!(value_set_text(&s), "{0,...,127}");
        assert_eq!(value_set_text(&[1, 2, 3].into()), "{1,2,3}");
        assert_eq!(value_set_text(&[1, 3, 5, 7].into()), "{1,3,5,7}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(mcadd(&["encode", "--code", "hybrid", "--n", "5", "3"]).code, 2);
        assert_eq!(mcadd(&["frobnicate"]).code, 2);
        assert_eq!(mcadd(&["--help"]).code, 0);
    }
}
