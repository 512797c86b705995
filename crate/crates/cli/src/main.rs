//! `ladderkit` command line: build codes, run the disentangler analysis,
//! compute entropies and export lattices.
//!
//! Exit status 0 on success, 2 for configuration errors, 3 when an internal
//! verification fails.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ladderkit::analysis::{
    analyze, disentangler_for, entanglement_entropy, induced_ladders, mapped_state,
};
use ladderkit::codes::{build_color_code, build_toric_code, ground_state_completion, CodeInstance};
use ladderkit::export::{code_json, lattice_dot, Envelope};
use ladderkit::lattice::{
    build_hex_torus, build_square_torus, build_triangular_ladder, diagonal_lines, horizontal_loops,
    Lattice, LatticeKind,
};
use ladderkit::{oracle, Error, StabilizerState};
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ladderkit",
    version,
    about = "GHZ-loop disentangler workbench for toric, color and ladder codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and dump it as JSON.
    Build(RunConfig),
    /// Map the code through its GHZ disentangler and report the analysis.
    Disentangle(RunConfig),
    /// Entanglement entropy of the ground state (or its image) across a cut.
    Entropy {
        #[command(flatten)]
        config: RunConfig,
        /// Qubit list `0,3,5`, `row:<k>`, `ladder:<k>`, `all` or `empty`.
        #[arg(long)]
        cut: String,
        /// Use the disentangled state.
        #[arg(long)]
        mapped: bool,
    },
    /// Number of encoded qubits.
    Degeneracy(RunConfig),
    /// Graphviz rendering of the lattice and its loops.
    ExportDot(RunConfig),
    /// Dense-oracle cross-checks of the symbolic machinery.
    Selftest {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeArg {
    Toric,
    Color,
    Ladder,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct RunConfig {
    #[arg(long, value_enum)]
    code: CodeArg,
    /// L for toric, N for color, R for ladder.
    #[arg(long)]
    size: usize,
    /// Closed ladder (ladder only).
    #[arg(long)]
    closed: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(short, long, action = clap::ArgAction::Count)]
    verbose: u8,
}

enum Failure {
    Config(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_config_error() {
            Failure::Config(e.to_string())
        } else {
            Failure::Verification(e.to_string())
        }
    }
}

type CmdResult = Result<String, Failure>;

impl RunConfig {
    fn lattice(&self) -> Result<Lattice, Failure> {
        if self.closed && !matches!(self.code, CodeArg::Ladder) {
            return Err(Failure::Config(
                "--closed applies only to --code ladder".into(),
            ));
        }
        Ok(match self.code {
            CodeArg::Toric => build_square_torus(self.size)?,
            CodeArg::Color => build_hex_torus(self.size)?,
            CodeArg::Ladder => build_triangular_ladder(self.size, self.closed)?,
        })
    }

    fn code(&self) -> Result<CodeInstance, Failure> {
        let lat = self.lattice()?;
        self.log(
            1,
            &format!("built {} with {} qubits", lat.kind().name(), lat.n_qubits()),
        );
        Ok(match self.code {
            CodeArg::Color => build_color_code(&lat)?,
            _ => build_toric_code(&lat)?,
        })
    }

    fn log(&self, level: u8, msg: &str) {
        if self.verbose >= level {
            eprintln!("{msg}");
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn cmd_build(cfg: &RunConfig) -> CmdResult {
    let code = cfg.code()?;
    Ok(match cfg.format {
        Format::Json => code_json(&code),
        Format::Text => {
            let mut s = format!(
                "{} qubits, {} generators\n",
                code.n(),
                code.generators().len()
            );
            for g in code.generators() {
                s.push_str(&format!("{g}\n"));
            }
            s
        }
    })
}

fn cmd_disentangle(cfg: &RunConfig) -> CmdResult {
    let code = cfg.code()?;
    let report = analyze(&code)?;
    if !report.disentangler.all_tableaux_valid {
        return Err(Failure::Verification(
            "GHZ tableau validation failed".into(),
        ));
    }
    Ok(match cfg.format {
        Format::Json => report.to_json(),
        Format::Text => {
            let r = &report.ranks;
            format!(
                "commutation preserved: {}\nshape failures: {}\nsign anomalies: {}\ncomponents: {}\nladders: {}\nmembers: {}/{}\nrank: {} -> {}\ndelta: {}  ladder delta: {}\n",
                report.commutation_preserved,
                report.shape_failures.len(),
                report.sign_anomalies.len(),
                report.components.len(),
                report.ladders.iter().map(|l| l.label.as_str()).collect::<Vec<_>>().join(" "),
                report.members(),
                report.membership.len(),
                r.original_rank,
                r.mapped_rank,
                r.delta,
                r.ladder_delta,
            )
        }
    })
}

fn parse_cut(cut: &str, code: &CodeInstance, mapped: bool) -> Result<Vec<usize>, Failure> {
    let n = code.n();
    let bad = |m: String| Err(Failure::Config(m));
    match cut.split_once(':') {
        Some(("row", k)) => {
            let k: i64 = k
                .parse()
                .map_err(|_| Failure::Config(format!("bad row index {k:?}")))?;
            let lat = code
                .lattice()
                .ok_or_else(|| Failure::Config("row cut needs a lattice".into()))?;
            let row_of = |c: [i64; 2]| match lat.kind() {
                LatticeKind::SquareTorus => Some(c[0].div_euclid(2)),
                LatticeKind::HexTorus => Some(c[0]),
                LatticeKind::TriangularLadder => None,
            };
            if lat.kind() == LatticeKind::TriangularLadder {
                return bad("row cuts are defined on tori only".into());
            }
            let a: Vec<usize> = (0..n)
                .filter(|&q| row_of(lat.qubits()[q].coords) == Some(k))
                .collect();
            if a.is_empty() {
                return bad(format!("row {k} is outside the lattice"));
            }
            Ok(a)
        }
        Some(("ladder", k)) => {
            if !mapped {
                return bad("ladder cuts need --mapped".into());
            }
            let k: usize = k
                .parse()
                .map_err(|_| Failure::Config(format!("bad ladder index {k:?}")))?;
            let map = disentangler_for(code)?;
            let set = induced_ladders(code, &map)?;
            match set.ladders.get(k) {
                Some(l) => Ok(l.register.clone()),
                None => bad(format!(
                    "ladder {k} does not exist ({} ladders)",
                    set.ladders.len()
                )),
            }
        }
        Some((name, _)) => bad(format!("unknown cut {name:?}")),
        None => match cut {
            "all" => Ok((0..n).collect()),
            "empty" | "" => Ok(Vec::new()),
            list => list
                .split(',')
                .map(|t| {
                    let q: usize = t
                        .trim()
                        .parse()
                        .map_err(|_| Failure::Config(format!("unknown cut {list:?}")))?;
                    if q >= n {
                        return Err(Failure::Config(format!(
                            "qubit {q} outside a {n}-qubit register"
                        )));
                    }
                    Ok(q)
                })
                .collect(),
        },
    }
}

fn cmd_entropy(cfg: &RunConfig, cut: &str, mapped: bool) -> CmdResult {
    let code = cfg.code()?;
    let a = parse_cut(cut, &code, mapped)?;
    let state: StabilizerState = if mapped {
        mapped_state(&code, &disentangler_for(&code)?)?
    } else {
        ground_state_completion(&code)?
    };
    let s = entanglement_entropy(&state, &a)?;
    let dense = if code.n() <= oracle::MAX_QUBITS {
        let st = oracle::dense_stabilizer_state(state.group())?;
        let d = oracle::dense_entropy(&st, &a)?;
        if d != s {
            return Err(Failure::Verification(format!(
                "formula entropy {s} but dense entropy {d}"
            )));
        }
        Some(d)
    } else {
        None
    };
    Ok(match cfg.format {
        Format::Json => pretty(&json!(Envelope::new(
            "entropy",
            json!({ "cut": cut, "mapped": mapped, "qubits": a, "entropy": s, "oracle": dense })
        ))),
        Format::Text => format!("S({cut}) = {s}\n"),
    })
}

fn cmd_degeneracy(cfg: &RunConfig) -> CmdResult {
    let code = cfg.code()?;
    let rank = code.group().rank();
    let k = code.n() - rank;
    Ok(match cfg.format {
        Format::Json => pretty(&json!(Envelope::new(
            "degeneracy",
            json!({ "n": code.n(), "rank": rank, "k": k })
        ))),
        Format::Text => format!("n = {}, rank = {rank}, k = {k}\n", code.n()),
    })
}

fn cmd_export_dot(cfg: &RunConfig) -> CmdResult {
    let lat = cfg.lattice()?;
    let loops = match lat.kind() {
        LatticeKind::SquareTorus => diagonal_lines(&lat)?,
        LatticeKind::HexTorus => horizontal_loops(&lat)?,
        LatticeKind::TriangularLadder => Vec::new(),
    };
    Ok(lattice_dot(&lat, &loops))
}

fn cmd_selftest(format: Format) -> CmdResult {
    let results = oracle::selftest();
    let out = match format {
        Format::Json => pretty(&json!(Envelope::new("selftest", &results))),
        Format::Text => results
            .iter()
            .map(|r| {
                format!(
                    "{}: {} ({})\n",
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.detail
                )
            })
            .collect(),
    };
    if results.iter().all(|r| r.passed) {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Verification("selftest failed".into()))
    }
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), Failure> {
    match out {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Build(c) => (cmd_build(c), c.out.as_deref()),
        Command::Disentangle(c) => (cmd_disentangle(c), c.out.as_deref()),
        Command::Entropy {
            config,
            cut,
            mapped,
        } => (cmd_entropy(config, cut, *mapped), config.out.as_deref()),
        Command::Degeneracy(c) => (cmd_degeneracy(c), c.out.as_deref()),
        Command::ExportDot(c) => (cmd_export_dot(c), c.out.as_deref()),
        Command::Selftest { format } => (cmd_selftest(*format), None),
    };
    match result.and_then(|text| emit(&text, out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(3)
        }
    }
}
