use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bmnet::exec::DEFAULT_MAX_CELLS;
use bmnet::io;
use bmnet::network::{topological_order, validate, Family, TopoError, Violation};
use bmnet::tensor::{bmp_with, Tensor};
use bmnet::{EvalOptions, Execution, Network, NetworkSpec};
use clap::{Parser, Subcommand, ValueEnum};

/// Exact total tensors of DAG signal networks.
///
/// Exit status: 0 on success, 1 when `total --method verify` finds a
/// difference, 2 on any input error.
#[derive(Parser)]
#[command(name = "bmnet", version)]
struct Cli {
    /// Evaluate on the current thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a network document and list every violated invariant.
    Validate {
        file: PathBuf,
        /// Also report which activations sum to 1 over the node's own state.
        #[arg(long)]
        check_stochastic: bool,
    },
    /// Print the deterministic topological order of a network's nodes.
    Order { file: PathBuf },
    /// Print node tensors built by the blow/forget construction.
    NodeTensors {
        file: PathBuf,
        /// Only this node.
        #[arg(long)]
        node: Option<String>,
        /// Also print the intermediate forgotten and blown tensors.
        #[arg(long)]
        stages: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
        max_cells: usize,
    },
    /// Compute the total tensor, or check that both methods agree.
    Total {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Bmp)]
        method: Method,
        /// Evaluate numerically, e.g. `alpha=1/2,beta=0.5`.
        #[arg(long, conflicts_with = "expect")]
        assign: Option<String>,
        #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
        max_cells: usize,
        /// With `verify`: tensor file both methods must also reproduce.
        #[arg(long)]
        expect: Option<PathBuf>,
        /// With `verify`: compare this many random cells instead of all,
        /// without materializing the total tensor.
        #[arg(long, conflicts_with_all = ["expect", "assign"])]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0, requires = "sample")]
        seed: u64,
    },
    /// Bhattacharya-Mesner product of tensor files, in the given order.
    Bmp {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
        max_cells: usize,
    },
    /// Describe the activation families accepted in network documents.
    Families {
        /// Names only, one per line.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Direct,
    Bmp,
    Verify,
}

/// Reported on stderr with exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<(String, ExitCode), InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let execution = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match run(cli.command, execution) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, execution: Execution) -> Outcome {
    match command {
        Command::Validate { file, check_stochastic } => cmd_validate(&file, check_stochastic),
        Command::Order { file } => cmd_order(&file),
        Command::NodeTensors { file, node, stages, max_cells } => {
            let opts = EvalOptions { max_cells, execution };
            cmd_node_tensors(&file, node.as_deref(), stages, &opts)
        }
        Command::Total { file, method, assign, max_cells, expect, sample, seed } => {
            let opts = EvalOptions { max_cells, execution };
            match method {
                Method::Verify => cmd_verify(&file, expect.as_deref(), sample.map(|n| (n, seed)), &opts),
                _ if expect.is_some() || sample.is_some() => {
                    Err(InputError("--expect and --sample apply to --method verify".into()))
                }
                _ => cmd_total(&file, method, assign.as_deref(), &opts),
            }
        }
        Command::Bmp { files, max_cells } => cmd_bmp(&files, &EvalOptions { max_cells, execution }),
        Command::Families { list } => Ok((cmd_families(list), ExitCode::SUCCESS)),
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_spec(path: &Path) -> Result<NetworkSpec, InputError> {
    io::parse_network(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_tensor(path: &Path) -> Result<Tensor, InputError> {
    io::parse_tensor(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn cycle(spec: &NetworkSpec) -> Option<Vec<String>> {
    match topological_order(&spec.ids(), &spec.edges()) {
        Err(TopoError::CycleDetected(c)) => Some(c),
        _ => None,
    }
}

/// Loads and validates, turning violations into one error listing all of them.
fn read_network(path: &Path) -> Result<Network, InputError> {
    let spec = read_spec(path)?;
    let violations = validate(&spec);
    if !violations.is_empty() {
        return Err(InputError(violation_report(&spec, &violations)));
    }
    Ok(Network::new(spec)?)
}

fn violation_report(spec: &NetworkSpec, violations: &[Violation]) -> String {
    let mut msg = String::from("invalid network");
    if let Some(c) = cycle(spec) {
        write!(msg, "\n  CycleDetected: {}", c.join(" -> ")).unwrap();
    }
    for v in violations {
        write!(msg, "\n  {v}").unwrap();
    }
    msg
}

fn cmd_validate(path: &Path, check_stochastic: bool) -> Outcome {
    let spec = read_spec(path)?;
    let violations = validate(&spec);
    if !violations.is_empty() {
        return Err(InputError(violation_report(&spec, &violations)));
    }
    let network = Network::new(spec)?;
    let mut out = format!(
        "valid\nnodes: {}\narity: {}\norder: {}\n",
        network.len(),
        network.arity(),
        network.spec().ids().join(",")
    );
    if check_stochastic {
        for (id, ok) in network.stochastic_report() {
            let verdict = if ok { "stochastic" } else { "not stochastic" };
            writeln!(out, "node {id}: {verdict}").unwrap();
        }
    }
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_order(path: &Path) -> Outcome {
    let spec = read_spec(path)?;
    match topological_order(&spec.ids(), &spec.edges()) {
        Ok(order) => Ok((format!("{}\n", order.join(",")), ExitCode::SUCCESS)),
        Err(TopoError::CycleDetected(c)) => Err(InputError(format!("CycleDetected: {}", c.join(" -> ")))),
        Err(e) => Err(e.into()),
    }
}

fn cmd_node_tensors(path: &Path, node: Option<&str>, stages: bool, opts: &EvalOptions) -> Outcome {
    let network = read_network(path)?;
    let positions: Vec<usize> = match node {
        Some(id) => vec![network.position(id).map_err(|_| InputError(format!("UnknownNodeId: `{id}`")))?],
        None => (1..=network.len()).collect(),
    };
    let ids = network.spec().ids();
    let mut out = String::new();
    for (k, &i) in positions.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let p = network.node_pipeline(i, opts)?;
        if stages {
            writeln!(out, "# node {} (position {i}): forgotten", ids[i - 1]).unwrap();
            out.push_str(&io::serialize_tensor(&p.forgotten));
            if let Some(blown) = &p.blown {
                writeln!(out, "\n# node {} (position {i}): blown", ids[i - 1]).unwrap();
                out.push_str(&io::serialize_tensor(blown));
            }
            out.push('\n');
        }
        writeln!(out, "# node {} (position {i}): node tensor", ids[i - 1]).unwrap();
        out.push_str(&io::serialize_tensor(&p.node_tensor));
    }
    Ok((out, ExitCode::SUCCESS))
}

fn cmd_total(path: &Path, method: Method, assign: Option<&str>, opts: &EvalOptions) -> Outcome {
    let network = read_network(path)?;
    let total = match method {
        Method::Direct => network.total_direct(opts)?,
        _ => network.total_bmp(opts)?,
    };
    let out = match assign {
        None => io::serialize_tensor(&total),
        Some(list) => {
            let assignment = io::parse_assignment(list)?;
            let values = total.try_eval(|c| c.eval(&assignment))?;
            io::serialize_values(total.shape(), &values)
        }
    };
    Ok((out, ExitCode::SUCCESS))
}

fn fmt_index(index: &[usize]) -> String {
    let parts: Vec<String> = index.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn cmd_verify(path: &Path, expect: Option<&Path>, sample: Option<(usize, u64)>, opts: &EvalOptions) -> Outcome {
    let network = read_network(path)?;
    if let Some((samples, seed)) = sample {
        let v = network.verify_sampled(samples, seed);
        return Ok(match v.mismatch {
            None => (format!("EQUAL ({samples} sampled cells, seed {seed})\n"), ExitCode::SUCCESS),
            Some(m) => (
                format!("DIFFERENT at {}: direct = {}, bmp = {}\n", fmt_index(&m.index), m.direct, m.bmp),
                ExitCode::from(1),
            ),
        });
    }
    let expected = expect.map(read_tensor).transpose()?;
    let direct = network.total_direct(opts)?;
    let product = network.total_bmp(opts)?;
    if let Some(e) = &expected {
        if e.dims() != direct.dims() {
            return Err(InputError(format!("ShapeMismatch: expected tensor has shape {}, network gives {}", e.shape(), direct.shape())));
        }
    }
    for (k, (index, d)) in direct.iter().enumerate() {
        let b = &product.cells()[k];
        let e = expected.as_ref().map_or(d, |e| &e.cells()[k]);
        if d != b || d != e {
            let mut msg = format!("DIFFERENT at {}:", fmt_index(&index));
            if expected.is_some() {
                write!(msg, " expected = {e},").unwrap();
            }
            writeln!(msg, " direct = {d}, bmp = {b}").unwrap();
            return Ok((msg, ExitCode::from(1)));
        }
    }
    Ok((format!("EQUAL ({} cells)\n", direct.cells().len()), ExitCode::SUCCESS))
}

fn cmd_bmp(paths: &[PathBuf], opts: &EvalOptions) -> Outcome {
    let tensors = paths.iter().map(|p| read_tensor(p)).collect::<Result<Vec<_>, _>>()?;
    // Slot t of argument t is never contracted, so it fixes the result's t-th dimension.
    let cells = tensors
        .iter()
        .enumerate()
        .map(|(t, x)| x.dims().get(t).copied().unwrap_or(1))
        .try_fold(1usize, |acc, n| acc.checked_mul(n));
    if cells.map_or(true, |c| c > opts.max_cells) {
        return Err(InputError(format!("CellCapExceeded: result exceeds the cap of {} cells", opts.max_cells)));
    }
    let product = bmp_with(&tensors, opts.execution)?;
    Ok((io::serialize_tensor(&product), ExitCode::SUCCESS))
}

fn cmd_families(list: bool) -> String {
    Family::ALL
        .iter()
        .map(|f| if list { format!("{f}\n") } else { format!("{f}: {}\n", f.describe()) })
        .collect()
}

