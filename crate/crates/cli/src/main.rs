//! `kingship`: batch front end for the kingship library.
//!
//! Exit codes: 0 success or a positive decision, 1 a negative decision or a
//! failed check, 2 usage or input errors, 3 a size cap was exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use kingship::circuit::{
    gw_check_tournament, gw_k_king, jt_k_king, lift_j, lift_k, BooleanCircuit, JTournamentCircuit, JtNode,
    SuccinctGraph,
};
use kingship::digraph::{
    all_k_kings, check_tournament, export_dot, find_king_landau, is_k_king, parse_graph, write_graph, Digraph,
    Tournament,
};
use kingship::formula::{parse_forall_exists, parse_formula, Codec};
use kingship::reductions::{
    build_2partite_instance, build_gw_antenna_instance, reduce_taut_to_1king_gw, reduce_to_kings, reduce_to_kkings,
    suite_ids, verify_suite,
};
use kingship::specifier::{
    check_associativity, induced_graph, make_builtin_specifier, specifier_k_king, validate_specifier, BuiltinKind,
    CheckMode, TournamentFamily,
};
use kingship::{BitString, Error, Limits};

#[derive(Parser)]
#[command(name = "kingship", version, about = "Kings in succinctly specified tournaments")]
struct Cli {
    /// Largest variable count any formula oracle may enumerate.
    #[arg(long, global = true, default_value_t = Limits::default().max_vars)]
    max_vars: usize,
    /// Largest graph any command may materialize.
    #[arg(long, global = true, default_value_t = Limits::default().max_nodes)]
    max_nodes: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kingship in explicit graphs.
    #[command(subcommand)]
    King(KingCmd),
    /// Built-in tournament family specifiers.
    #[command(subcommand)]
    Spec(SpecCmd),
    /// Reduce a formula to a kingship instance.
    Reduce(ReduceArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Circuit-specified multipartite tournaments.
    #[command(subcommand)]
    Mpt(MptCmd),
    /// Circuit-specified graphs.
    #[command(subcommand)]
    Gw(GwCmd),
}

#[derive(Subcommand)]
enum KingCmd {
    /// Is NODE (an index or a label) a K-king?
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        node: String,
        #[arg(long)]
        k: usize,
    },
    /// Print a king: the Landau king of a tournament, or every K-king.
    Find {
        #[arg(long)]
        graph: PathBuf,
        /// List all K-kings instead of one 2-king.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Args)]
struct SpecArg {
    /// `max`, `pi2:C`, `conp:C`, `np:C` or `kkings:K:C`.
    #[arg(long)]
    spec: String,
}

#[derive(Args)]
struct SampleArgs {
    /// Check N random pairs or triples instead of all of them.
    #[arg(long)]
    sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl SampleArgs {
    fn mode(&self) -> CheckMode {
        match self.sample {
            Some(count) => CheckMode::Sampled { count, seed: self.seed },
            None => CheckMode::Exhaustive,
        }
    }
}

#[derive(Subcommand)]
enum SpecCmd {
    /// Print select(X, Y).
    Select {
        #[command(flatten)]
        spec: SpecArg,
        x: String,
        y: String,
    },
    /// Is NODE a K-king of the tournament at its length?
    King {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        node: String,
        #[arg(long)]
        k: usize,
    },
    /// Print the tournament at length M in graph format.
    Materialize {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        m: usize,
        /// Write Graphviz DOT to this file instead.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check selection, commutativity and guard exclusivity at length M.
    Validate {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        sample: SampleArgs,
    },
    /// Check associativity at length M.
    Assoc {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        sample: SampleArgs,
    },
}

#[derive(Args)]
struct ReduceArgs {
    /// pi2, conp, np, kkings:K, gw-antenna:K, onekings or 2partite.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    formula: String,
    /// Formula codec for pi2, conp, np and kkings.
    #[arg(long)]
    codec: Option<String>,
    /// Decide the produced instance by brute force.
    #[arg(long)]
    decide: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "list")]
    suite: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Print the key=value record too.
    #[arg(long)]
    records: bool,
    /// List the suite identifiers.
    #[arg(long)]
    list: bool,
}

#[derive(Args)]
struct JtArgs {
    #[arg(long)]
    circuit: PathBuf,
    #[arg(long)]
    j: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum MptCmd {
    /// Is node I:S a K-king?
    King {
        #[command(flatten)]
        jt: JtArgs,
        #[arg(long)]
        node: String,
        #[arg(long)]
        k: usize,
    },
    /// Add an empty part; prints the new circuit.
    LiftJ {
        #[command(flatten)]
        jt: JtArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Add a node z with z a (k+1)-king iff NODE is a k-king.
    LiftK {
        #[command(flatten)]
        jt: JtArgs,
        #[arg(long)]
        node: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GwCmd {
    /// Is NODE a K-king of the graph the circuit specifies?
    King {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        node: String,
        #[arg(long)]
        k: usize,
    },
    /// Does the circuit specify a tournament?
    IsTournament {
        #[arg(long)]
        circuit: PathBuf,
    },
}

enum Outcome {
    Done,
    Decision(bool),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let limits = Limits {
        max_vars: cli.max_vars,
        max_nodes: cli.max_nodes,
    };
    match run(cli.command, &limits) {
        Ok(Outcome::Done) | Ok(Outcome::Decision(true)) => ExitCode::SUCCESS,
        Ok(Outcome::Decision(false)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap_exceeded() { 3 } else { 2 })
        }
    }
}

fn read(path: &Path) -> kingship::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> kingship::Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> kingship::Result<Digraph> {
    parse_graph(&read(path)?)
}

fn load_circuit(path: &Path) -> kingship::Result<BooleanCircuit> {
    BooleanCircuit::parse(&read(path)?)
}

fn load_jt(args: &JtArgs) -> kingship::Result<JTournamentCircuit> {
    JTournamentCircuit::new(args.j, args.n, load_circuit(&args.circuit)?)
}

fn bits(text: &str) -> kingship::Result<BitString> {
    text.parse()
}

fn decision(b: bool) -> Outcome {
    println!("{b}");
    Outcome::Decision(b)
}

fn emit(text: &str, out: Option<&Path>) -> kingship::Result<()> {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command, limits: &Limits) -> kingship::Result<Outcome> {
    match command {
        Command::King(cmd) => king(cmd),
        Command::Spec(cmd) => spec(cmd, limits),
        Command::Reduce(args) => reduce(args, limits),
        Command::Verify(args) => verify(args, limits),
        Command::Mpt(cmd) => mpt(cmd, limits),
        Command::Gw(cmd) => gw(cmd, limits),
    }
}

fn king(cmd: KingCmd) -> kingship::Result<Outcome> {
    match cmd {
        KingCmd::Check { graph, node, k } => {
            let g = load_graph(&graph)?;
            let v = g.resolve_node(&node)?;
            Ok(decision(is_k_king(&g, v, k)?))
        }
        KingCmd::Find { graph, k } => {
            let g = load_graph(&graph)?;
            let name = |v: usize| g.label(v).map_or_else(|| v.to_string(), str::to_string);
            match k {
                None if check_tournament(&g) => {
                    let t = Tournament::new(g.clone())?;
                    println!("{}", name(find_king_landau(&t)));
                    Ok(Outcome::Done)
                }
                k => {
                    let kings = all_k_kings(&g, k.unwrap_or(2))?;
                    for &v in &kings {
                        println!("{}", name(v));
                    }
                    if kings.is_empty() {
                        println!("none");
                    }
                    Ok(Outcome::Decision(!kings.is_empty()))
                }
            }
        }
    }
}

fn builtin(arg: &SpecArg) -> kingship::Result<kingship::specifier::BuiltinSpecifier> {
    make_builtin_specifier(arg.spec.parse()?)
}

fn spec(cmd: SpecCmd, limits: &Limits) -> kingship::Result<Outcome> {
    match cmd {
        SpecCmd::Select { spec, x, y } => {
            println!("{}", builtin(&spec)?.select(&bits(&x)?, &bits(&y)?));
            Ok(Outcome::Done)
        }
        SpecCmd::King { spec, node, k } => Ok(decision(specifier_k_king(&builtin(&spec)?, &bits(&node)?, k, limits)?)),
        SpecCmd::Materialize { spec, m, dot } => {
            let t = induced_graph(&builtin(&spec)?, m, limits)?;
            match dot {
                Some(path) => write(&path, &export_dot(t.graph()))?,
                None => print!("{}", write_graph(t.graph())),
            }
            Ok(Outcome::Done)
        }
        SpecCmd::Validate { spec, m, sample } => {
            let r = validate_specifier(&builtin(&spec)?, m, sample.mode(), limits)?;
            println!("{r}");
            Ok(Outcome::Decision(r.passed()))
        }
        SpecCmd::Assoc { spec, m, sample } => {
            let r = check_associativity(&builtin(&spec)?, m, sample.mode(), limits)?;
            println!("{r}");
            Ok(Outcome::Decision(r.passed()))
        }
    }
}

fn reduce(args: ReduceArgs, limits: &Limits) -> kingship::Result<Outcome> {
    let codec = |default: Codec| -> kingship::Result<Codec> { args.codec.as_deref().map_or(Ok(default), str::parse) };
    let number = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::InvalidArgument(format!("bad k `{s}`")))
    };
    let instance = match args.kind.split_once(':') {
        None => match args.kind.as_str() {
            "pi2" => reduce_to_kings(BuiltinKind::Pi2(codec(Codec::TtFe)?), &args.formula, limits)?,
            "conp" => reduce_to_kings(BuiltinKind::Conp(codec(Codec::TtPlain)?), &args.formula, limits)?,
            "np" => reduce_to_kings(BuiltinKind::Np(codec(Codec::TtPlain)?), &args.formula, limits)?,
            "onekings" => reduce_taut_to_1king_gw(&parse_formula(&args.formula)?, limits)?,
            "2partite" => build_2partite_instance(&parse_forall_exists(&args.formula)?, limits)?,
            other => return Err(Error::InvalidArgument(format!("unknown reduction kind `{other}`"))),
        },
        Some(("kkings", k)) => reduce_to_kkings(&args.formula, number(k)?, codec(Codec::TtFe)?, limits)?,
        Some(("gw-antenna", k)) => build_gw_antenna_instance(&parse_forall_exists(&args.formula)?, number(k)?, limits)?,
        Some(_) => {
            return Err(Error::InvalidArgument(format!(
                "unknown reduction kind `{}`",
                args.kind
            )))
        }
    };
    println!("{instance}");
    if args.decide {
        let king = instance.decide(limits)?;
        println!("king: {king}");
        return Ok(Outcome::Decision(king));
    }
    Ok(Outcome::Done)
}

fn verify(args: VerifyArgs, limits: &Limits) -> kingship::Result<Outcome> {
    if args.list {
        suite_ids().iter().for_each(|id| println!("{id}"));
        return Ok(Outcome::Done);
    }
    let id = args.suite.expect("clap requires --suite without --list");
    let r = verify_suite(&id, args.seed, limits)?;
    println!("{r}");
    if args.records {
        println!("{}", r.record());
    }
    Ok(Outcome::Decision(r.passed()))
}

fn mpt(cmd: MptCmd, limits: &Limits) -> kingship::Result<Outcome> {
    match cmd {
        MptCmd::King { jt, node, k } => {
            let jc = load_jt(&jt)?;
            Ok(decision(jt_k_king(&jc, &node.parse::<JtNode>()?, k, limits)?))
        }
        MptCmd::LiftJ { jt, out } => {
            let lifted = lift_j(&load_jt(&jt)?);
            eprintln!("j={} n={}", lifted.j(), lifted.n());
            emit(&lifted.circuit().to_string(), out.as_deref())?;
            Ok(Outcome::Done)
        }
        MptCmd::LiftK { jt, node, out } => {
            let lifted = lift_k(&load_jt(&jt)?, &node.parse()?, limits)?;
            eprintln!(
                "j={} n={} z={} w={}",
                lifted.circuit.j(),
                lifted.circuit.n(),
                lifted.z,
                lifted.w
            );
            emit(&lifted.circuit.circuit().to_string(), out.as_deref())?;
            Ok(Outcome::Done)
        }
    }
}

fn gw(cmd: GwCmd, limits: &Limits) -> kingship::Result<Outcome> {
    match cmd {
        GwCmd::King { circuit, node, k } => {
            let sg = SuccinctGraph::from_circuit(load_circuit(&circuit)?)?;
            Ok(decision(gw_k_king(&sg, &bits(&node)?, k, limits)?))
        }
        GwCmd::IsTournament { circuit } => {
            let sg = SuccinctGraph::from_circuit(load_circuit(&circuit)?)?;
            Ok(decision(gw_check_tournament(&sg, limits)?))
        }
    }
}
