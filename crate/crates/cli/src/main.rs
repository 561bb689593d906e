mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(name = "belyi", version, about = "Polynomial monodromy, dessins and Beauville structures")]
struct Cli {
    /// Print the report as JSON on standard output.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for searches and enumerations.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Counts factorizations τ₀∘τ₁ = (1,…,n) of the given cycle types, i.e.
    /// normalized polynomials with two critical values and that branch datum;
    /// with --degree, scans every datum of that degree.
    Enumerate(EnumerateArgs),
    /// Classifies a branch datum or a monodromy pair as Chebycheff, Belyi or
    /// other; for a pair also reports validity and reality of its class.
    Classify(ClassifyArgs),
    /// Chebycheff polynomial T_n: the identity T_n² − (z²−1)U_{n−1}² = 1,
    /// critical values ±1, and the dihedral monodromy group of order 2n.
    Cheb(ChebArgs),
    /// Belyi polynomial P_{m,r} with zeros 0, 1 and interior critical value 1,
    /// or the degree-5 polynomial with P′ = (15/16)(z²−1)².
    Belyi(BelyiArgs),
    /// Dessin d'enfant of a monodromy pair (turn-to-the-right rule), its
    /// genus, and optional DOT export.
    Dessin(DessinArgs),
    /// Irreducible factors of f(x) − g(y) as orbits of the product monodromy
    /// on the n×m grid.
    Difffactors(DiffArgs),
    /// Searches for an unmixed Beauville structure: two generating pairs
    /// whose Σ-sets meet only in the identity.
    BeauvilleSearch(SearchArgs),
    /// Verifies the two conditions of an unmixed Beauville structure.
    BeauvilleVerify(StructureArgs),
    /// Decides whether S(v) is isomorphic to its complex conjugate via
    /// automorphisms inverting both generating pairs.
    BeauvilleReality(StructureArgs),
    /// Verifies conditions i–iv of a mixed Beauville quadruple.
    MixedVerify(StructureArgs),
    /// The group (H×H)⋊ℤ/4 and the four hypotheses that yield a mixed
    /// Beauville structure on it.
    H4(H4Args),
    /// The pairs a = (1,p+2,p+1)(2,p+3), c = (1,…,p)(p+1,…,n) and
    /// a′ = σ⁻¹, c′ = τσ² giving a surface not isomorphic to its conjugate.
    Snexample(SnArgs),
    /// Least odd prime p with n ≢ 0, 1 (mod p).
    Findprime(PrimeArgs),
    /// The six degree-6 branch data with their known polynomial counts.
    Table6,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Cycle type over 0, e.g. "2,2,1,1".
    #[arg(long, requires = "type1")]
    type0: Option<String>,
    /// Cycle type over 1.
    #[arg(long, requires = "type0")]
    type1: Option<String>,
    /// Scan all branch data of this degree.
    #[arg(long, conflicts_with = "type0")]
    degree: Option<usize>,
    /// Refuse degrees above this.
    #[arg(long, default_value_t = 9)]
    guard: usize,
    /// Include every factorization, not only class representatives.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    type0: Option<String>,
    #[arg(long)]
    type1: Option<String>,
    /// τ₀ in cycle notation.
    #[arg(long, requires_all = ["tau1", "degree"], conflicts_with_all = ["type0", "type1"])]
    tau0: Option<String>,
    #[arg(long)]
    tau1: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Debug, Args)]
struct ChebArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct BelyiArgs {
    #[arg(long, required_unless_present = "special")]
    m: Option<u32>,
    #[arg(long, required_unless_present = "special")]
    r: Option<u32>,
    /// The degree-5 example instead of P_{m,r}.
    #[arg(long)]
    special: bool,
}

#[derive(Debug, Args)]
struct DessinArgs {
    #[arg(long, requires = "tau1")]
    tau0: Option<String>,
    #[arg(long, requires = "tau0")]
    tau1: Option<String>,
    #[arg(long)]
    degree: usize,
    /// Draw a random genus-zero pair of the degree from this seed.
    #[arg(long, conflicts_with = "tau0")]
    seed: Option<u64>,
    /// Write the Graphviz export to this file.
    #[arg(long)]
    dot: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum DiffKind {
    ChebSum,
    Schur,
    Fano,
}

#[derive(Debug, Args)]
struct DiffArgs {
    #[arg(long, value_enum, required_unless_present = "input")]
    kind: Option<DiffKind>,
    #[arg(long)]
    n: Option<usize>,
    /// Product monodromy JSON file.
    #[arg(long, conflicts_with = "kind")]
    input: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Group descriptor such as "psl2:7", "alt:5", "sym:7", "znxzn:7".
    #[arg(long)]
    group: String,
    /// Type of the first pair, "r,s,t".
    #[arg(long)]
    type1: Option<String>,
    #[arg(long)]
    type2: Option<String>,
    #[arg(long, default_value_t = 5_000_000)]
    max_pairs: u64,
    /// Sample c from a seeded random walk instead of enumerating the group.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 2000, requires = "seed")]
    samples: usize,
}

#[derive(Debug, Args)]
struct StructureArgs {
    /// Structure JSON, inline or as a file path.
    #[arg(long)]
    structure: String,
}

#[derive(Debug, Args)]
struct H4Args {
    /// Descriptor of H, e.g. "sl2:11".
    #[arg(long)]
    inner: String,
    /// a₁, c₁, a₂, c₂ as JSON elements of H; searched for when absent.
    #[arg(long, requires_all = ["c1", "a2", "c2"])]
    a1: Option<String>,
    #[arg(long)]
    c1: Option<String>,
    #[arg(long)]
    a2: Option<String>,
    #[arg(long)]
    c2: Option<String>,
    /// Also check the assembled quadruple directly.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct SnArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
}

#[derive(Debug, Args)]
struct PrimeArgs {
    #[arg(long)]
    n: u64,
    /// Only primes p ≤ bound.
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
    InvalidInput,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::VerificationFailed => "verification-failed",
            Status::InvalidInput => "invalid-input",
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 2,
            Status::InvalidInput => 3,
        }
    }
}

/// A finished command: status plus payload.
pub struct Outcome {
    pub status: Status,
    pub payload: Value,
}

impl Outcome {
    pub fn ok(payload: Value) -> Self {
        Outcome { status: Status::Ok, payload }
    }

    pub fn checked(passed: bool, payload: Value) -> Self {
        Outcome {
            status: if passed { Status::Ok } else { Status::VerificationFailed },
            payload,
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Enumerate(_) => "enumerate",
        Command::Classify(_) => "classify",
        Command::Cheb(_) => "cheb",
        Command::Belyi(_) => "belyi",
        Command::Dessin(_) => "dessin",
        Command::Difffactors(_) => "difffactors",
        Command::BeauvilleSearch(_) => "beauville-search",
        Command::BeauvilleVerify(_) => "beauville-verify",
        Command::BeauvilleReality(_) => "beauville-reality",
        Command::MixedVerify(_) => "mixed-verify",
        Command::H4(_) => "h4",
        Command::Snexample(_) => "snexample",
        Command::Findprime(_) => "findprime",
        Command::Table6 => "table6",
    }
}

// Write failures such as a closed pipe are ignored.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(json_mode: bool, command: &str, status: Status, payload: Value) -> ExitCode {
    let report = json!({ "command": command, "status": status.as_str(), "payload": payload });
    if json_mode {
        out(&format!("{}\n", serde_json::to_string_pretty(&report).expect("serializable report")));
    } else {
        out(&format!(
            "{command}: {}\n{}\n",
            status.as_str(),
            serde_json::to_string_pretty(&report["payload"]).expect("serializable payload")
        ));
    }
    ExitCode::from(status.code())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let json_mode = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                out(&e.to_string());
                return ExitCode::SUCCESS;
            }
            if json_mode {
                let command = argv.iter().skip(1).find(|a| !a.starts_with('-')).cloned().unwrap_or_default();
                return emit(true, &command, Status::InvalidInput, json!({ "error": e.to_string() }));
            }
            eprint!("{e}");
            return ExitCode::from(Status::InvalidInput.code());
        }
    };
    if cli.jobs == 0 {
        return emit(json_mode, command_name(&cli.command), Status::InvalidInput, json!({ "error": "--jobs must be positive" }));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global()
        .expect("thread pool configured once");
    let name = command_name(&cli.command);
    let result = match cli.command {
        Command::Enumerate(a) => commands::enumerate(a.type0, a.type1, a.degree, a.guard, a.list),
        Command::Classify(a) => commands::classify(a.type0, a.type1, a.tau0, a.tau1, a.degree),
        Command::Cheb(a) => commands::cheb(a.n),
        Command::Belyi(a) => commands::belyi(a.m, a.r, a.special),
        Command::Dessin(a) => commands::dessin(a.tau0, a.tau1, a.degree, a.seed, a.dot),
        Command::Difffactors(a) => commands::difffactors(
            a.kind.map(|k| match k {
                DiffKind::ChebSum => "cheb-sum",
                DiffKind::Schur => "schur",
                DiffKind::Fano => "fano",
            }),
            a.n,
            a.input,
        ),
        Command::BeauvilleSearch(a) => {
            commands::beauville_search(&a.group, a.type1, a.type2, a.max_pairs, a.seed.map(|s| (s, a.samples)))
        }
        Command::BeauvilleVerify(a) => commands::beauville_verify(&a.structure),
        Command::BeauvilleReality(a) => commands::beauville_reality(&a.structure),
        Command::MixedVerify(a) => commands::mixed_verify(&a.structure),
        Command::H4(a) => commands::h4(&a.inner, [a.a1, a.c1, a.a2, a.c2], a.verify),
        Command::Snexample(a) => commands::snexample(a.n, a.p),
        Command::Findprime(a) => commands::findprime(a.n, a.bound),
        Command::Table6 => commands::table6(),
    };
    match result {
        Ok(o) => emit(json_mode, name, o.status, o.payload),
        Err(msg) => emit(json_mode, name, Status::InvalidInput, json!({ "error": msg })),
    }
}
