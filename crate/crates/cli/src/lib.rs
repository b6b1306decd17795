//! Command-line front end.
//!
//! Every report ends with a machine-readable line; boolean queries end
//! with `true` or `false`. Exit status 2 means a usage, parse or type
//! error, 3 an exhausted resource budget, 4 a broken internal invariant.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use reactime_core::abstraction::{
    doe, doe_compose, format_pair_sets, lemma_check, merge_seq, obs_leq, ssp, ssp_seq, LemmaVerdict,
};
use reactime_core::bisim::{bisim_quotient, non_bisimilar};
use reactime_core::compose::{par_compose, seq_compose};
use reactime_core::dot::export_dot;
use reactime_core::effect::{format_effects, parse_effects};
use reactime_core::psyc::{build_lts, parse_program, BuildOptions, Program};
use reactime_core::reactivity::{
    det_reaction_time, diff, first_guaranteed_effect, separating_pairs, separators, strongly_separable,
};
use reactime_core::{report, sls, Error, StateId, SynchronousSystem};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "reactime",
    version,
    about = "Reactivity and reaction time of synchronous systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A state, optionally in a second system file.
#[derive(Args, Debug)]
struct Other {
    /// Look the second state up in this system instead
    #[arg(long = "with", value_name = "FILE2")]
    with: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a system file
    Check { file: PathBuf },
    /// Write the bisimulation quotient
    Quotient {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decide bisimilarity, printing a witness when the states differ
    Bisim {
        file: PathBuf,
        p: String,
        q: String,
        #[command(flatten)]
        other: Other,
    },
    /// Separating pairs of a state
    Seppairs { file: PathBuf, q: String },
    /// Minimal separators of two states
    Separators {
        file: PathBuf,
        p: String,
        q: String,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[command(flatten)]
        other: Other,
    },
    /// Strong separability of two states
    Strongsep {
        file: PathBuf,
        p: String,
        q: String,
        #[command(flatten)]
        other: Other,
    },
    /// Deterministic reaction time of a state
    Reactime { file: PathBuf, q: String },
    /// Observable effects of an input word
    Diff {
        file: PathBuf,
        p: String,
        q: String,
        #[arg(short, long, value_name = "WORD", allow_hyphen_values = true)]
        word: String,
        #[command(flatten)]
        other: Other,
    },
    /// Deterministic observable effects of a state
    Doe { file: PathBuf, q: String },
    /// Strongly separating pairs: FILE P [FILE2] Q
    Ssp {
        #[arg(num_args = 3..=4, required = true, value_name = "ARGS")]
        args: Vec<String>,
    },
    /// Sequence of strongly separating pairs of a state
    Sspseq { file: PathBuf, q: String },
    /// Sequential or parallel composition
    Compose {
        #[arg(long, conflicts_with = "par", required_unless_present = "par")]
        seq: bool,
        #[arg(long)]
        par: bool,
        f: PathBuf,
        g: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Compositional sufficient condition for reactivity
    Lemma {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        qf: String,
        #[arg(long)]
        qg: String,
    },
    /// Effects of a composite state derived from its components
    DoeCompose {
        f: PathBuf,
        g: PathBuf,
        #[arg(long)]
        qf: String,
        #[arg(long)]
        qg: String,
        #[arg(short)]
        t: usize,
    },
    /// Observational order on effect sequences
    ObsLeq { d1: String, d2: String },
    /// Pointwise merge of effect sequences
    Merge { d1: String, d2: String },
    /// Program front end
    Psyc {
        #[command(subcommand)]
        command: PsycCommand,
    },
    /// Graphviz rendering
    Dot {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum PsycCommand {
    /// Type-check a program
    Typecheck { program: PathBuf },
    /// Compile a program to a system
    Build {
        program: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        max_states: usize,
        #[arg(short, long)]
        output: PathBuf,
        /// States are named PREFIX0, PREFIX1, ...
        #[arg(long, default_value = "s")]
        prefix: String,
        #[arg(long, default_value = "program")]
        name: String,
        /// Input assumed before the first tick
        #[arg(long)]
        initial_input: Option<String>,
    },
}

/// A failure with its exit status, already rendered.
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
struct Failure {
    code: i32,
    message: String,
}

fn code_of(e: &Error) -> i32 {
    if e.is_internal() {
        EXIT_INTERNAL
    } else if e.is_resource_limit() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

/// Diagnostic prefixed with the file and, when known, the position.
fn located(path: &Path, e: Error) -> Failure {
    let file = path.display();
    let message = match &e {
        Error::Parse { line: 0, message } => format!("{file}: {message}"),
        Error::Parse { line, message } => format!("{file}:{line}: {message}"),
        Error::Syntax { line, column, message } => format!("{file}:{line}:{column}: {message}"),
        other => format!("{file}: {other}"),
    };
    Failure {
        code: code_of(&e),
        message,
    }
}

fn plain(e: Error) -> Failure {
    Failure {
        code: code_of(&e),
        message: format!("error: {e}"),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", path.display()),
    })
}

/// Loads and validates a system.
fn load(path: &Path) -> Result<SynchronousSystem, Failure> {
    let sys = sls::parse(&read(path)?).map_err(|e| located(path, e))?;
    let violations = sys.validate();
    if let Some(v) = violations.first() {
        return Err(Failure {
            code: EXIT_USAGE,
            message: format!("{}: {v}", path.display()),
        });
    }
    Ok(sys)
}

fn load_program(path: &Path) -> Result<Program, Failure> {
    parse_program(&read(path)?).map_err(|e| located(path, e))
}

fn state(sys: &SynchronousSystem, name: &str) -> Result<StateId, Failure> {
    sys.state(name).map_err(plain)
}

type Out<'a> = &'a mut dyn Write;

fn emit(out: Out, line: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", line.as_ref()).map_err(|e| Failure {
        code: EXIT_INTERNAL,
        message: format!("cannot write output: {e}"),
    })
}

/// The first system, the second system (the first again unless
/// `--with` names another file) and the two states.
fn two_states(
    file: &Path,
    p: &str,
    q: &str,
    other: &Other,
) -> Result<(SynchronousSystem, Option<SynchronousSystem>, StateId, StateId), Failure> {
    let a = load(file)?;
    let pa = state(&a, p)?;
    match &other.with {
        None => {
            let qa = state(&a, q)?;
            Ok((a, None, pa, qa))
        }
        Some(path) => {
            let b = load(path)?;
            let qb = state(&b, q)?;
            Ok((a, Some(b), pa, qb))
        }
    }
}

fn execute(command: Command, out: Out) -> Result<(), Failure> {
    match command {
        Command::Check { file } => {
            let sys = load(&file)?;
            emit(out, format!("states {}", sys.num_states()))?;
            emit(out, format!("transitions {}", sys.transitions().len()))?;
            emit(out, format!("deterministic {}", sys.is_deterministic()))?;
            emit(out, "valid")
        }
        Command::Quotient { file, output } => {
            let sys = load(&file)?;
            let (partition, quotient) = bisim_quotient(&sys);
            for c in 0..partition.num_classes() {
                let members: Vec<&str> = partition.members(c).map(|q| sys.state_name(q)).collect();
                emit(
                    out,
                    format!(
                        "class {}: {}",
                        sys.state_name(partition.representative(c)),
                        members.join(" ")
                    ),
                )?;
            }
            write_file(&output, &sls::write(&quotient))?;
            emit(out, format!("classes {}", partition.num_classes()))
        }
        Command::Bisim { file, p, q, other } => {
            let (a, b, p, q) = two_states(&file, &p, &q, &other)?;
            match non_bisimilar(&a, p, b.as_ref().unwrap_or(&a), q).map_err(plain)? {
                None => emit(out, "true"),
                Some((witness, joined, jp, jq)) => {
                    write!(out, "{}", witness.render(&joined, jp, jq)).map_err(|e| Failure {
                        code: EXIT_INTERNAL,
                        message: e.to_string(),
                    })?;
                    emit(out, "false")
                }
            }
        }
        Command::Seppairs { file, q } => {
            let sys = load(&file)?;
            let pairs = separating_pairs(&sys, state(&sys, &q)?).map_err(plain)?;
            for line in report::pair_lines(&sys, &pairs) {
                emit(out, line)?;
            }
            emit(out, format!("reactive {}", pairs.is_reactive()))
        }
        Command::Separators {
            file,
            p,
            q,
            max_len,
            other,
        } => {
            let (a, b, p, q) = two_states(&file, &p, &q, &other)?;
            let seps = separators(&a, p, b.as_ref().unwrap_or(&a), q, max_len).map_err(plain)?;
            for s in &seps {
                emit(out, report::separator_line(&a, s))?;
            }
            emit(out, format!("separators {}", seps.len()))
        }
        Command::Strongsep { file, p, q, other } => {
            let (a, b, p, q) = two_states(&file, &p, &q, &other)?;
            let s = strongly_separable(&a, p, b.as_ref().unwrap_or(&a), q).map_err(plain)?;
            for line in report::strong_separation_lines(&a, &s) {
                emit(out, line)?;
            }
            Ok(())
        }
        Command::Reactime { file, q } => {
            let sys = load(&file)?;
            let rt = det_reaction_time(&sys, state(&sys, &q)?).map_err(plain)?;
            emit(out, report::reaction_explanation(&sys, &rt))?;
            emit(out, report::reaction_line(&sys, &rt))
        }
        Command::Diff {
            file,
            p,
            q,
            word,
            other,
        } => {
            let (a, b, p, q) = two_states(&file, &p, &q, &other)?;
            let b = b.as_ref().unwrap_or(&a);
            let w = a.word(&word).map_err(plain)?;
            for (n, set) in diff(&a, p, b, q, &w).map_err(plain)?.iter().enumerate() {
                emit(out, format!("diff {n} {}", report::effect_set(set)))?;
            }
            match first_guaranteed_effect(&a, p, b, q, &w).map_err(plain)? {
                Some(n) => emit(out, format!("first-effect {n}")),
                None => emit(out, "first-effect none"),
            }
        }
        Command::Doe { file, q } => {
            let sys = load(&file)?;
            let d = doe(&sys, state(&sys, &q)?).map_err(plain)?;
            emit(out, format!("doe {}", format_effects(&d)))
        }
        Command::Ssp { args } => {
            let (file, p, file2, q) = match args.as_slice() {
                [f, p, q] => (f, p, None, q),
                [f, p, f2, q] => (f, p, Some(f2), q),
                _ => unreachable!("clap bounds the argument count"),
            };
            let a = load(Path::new(file))?;
            let b = file2.map(|f| load(Path::new(f))).transpose()?;
            let b_ref = b.as_ref().unwrap_or(&a);
            let set = ssp(&a, state(&a, p)?, b_ref, state(b_ref, q)?).map_err(plain)?;
            let items: Vec<String> = set
                .iter()
                .map(|&(x, y)| format!("{}/{}", a.input_symbol(x), a.input_symbol(y)))
                .collect();
            emit(out, format!("ssp {{{}}}", items.join(" ")))
        }
        Command::Sspseq { file, q } => {
            let sys = load(&file)?;
            let seq = ssp_seq(&sys, state(&sys, &q)?).map_err(plain)?;
            emit(out, format!("sspseq {}", format_pair_sets(&seq, sys.inputs())))
        }
        Command::Compose { seq, f, g, output, .. } => {
            let (sf, sg) = (load(&f)?, load(&g)?);
            let comp = if seq {
                seq_compose(&sf, &sg)
            } else {
                par_compose(&sf, &sg)
            }
            .map_err(plain)?;
            let sys = comp.into_system();
            write_file(&output, &sls::write(&sys))?;
            emit(out, format!("states {}", sys.num_states()))
        }
        Command::Lemma { f, g, qf, qg } => {
            let (sf, sg) = (load(&f)?, load(&g)?);
            let verdict = lemma_check(&sf, state(&sf, &qf)?, &sg, state(&sg, &qg)?).map_err(plain)?;
            match verdict {
                LemmaVerdict::GuaranteedReactive { index, effect } => {
                    emit(out, format!("index {index} effect {effect}"))?;
                    emit(out, "true")
                }
                LemmaVerdict::NoGuarantee => emit(out, "false"),
            }
        }
        Command::DoeCompose { f, g, qf, qg, t } => {
            let (sf, sg) = (load(&f)?, load(&g)?);
            let d = doe_compose(&sf, state(&sf, &qf)?, &sg, state(&sg, &qg)?, t).map_err(plain)?;
            emit(out, format!("doe {}", format_effects(&d)))
        }
        Command::ObsLeq { d1, d2 } => {
            let (x, y) = (
                parse_effects(&d1, None).map_err(plain)?,
                parse_effects(&d2, None).map_err(plain)?,
            );
            emit(out, obs_leq(&x, &y).to_string())
        }
        Command::Merge { d1, d2 } => {
            let (x, y) = (
                parse_effects(&d1, None).map_err(plain)?,
                parse_effects(&d2, None).map_err(plain)?,
            );
            emit(out, format!("merge {}", format_effects(&merge_seq(&x, &y))))
        }
        Command::Psyc { command } => match command {
            PsycCommand::Typecheck { program } => {
                load_program(&program)?.typecheck().map_err(|e| located(&program, e))?;
                emit(out, "type comm")
            }
            PsycCommand::Build {
                program,
                max_states,
                output,
                prefix,
                name,
                initial_input,
            } => {
                let p = load_program(&program)?;
                let options = BuildOptions {
                    max_states,
                    state_prefix: prefix,
                    initial_input,
                    name,
                };
                let sys = build_lts(&p, &options).map_err(|e| located(&program, e))?;
                write_file(&output, &sls::write(&sys))?;
                emit(out, format!("states {}", sys.num_states()))
            }
        },
        Command::Dot { file, output } => {
            let sys = load(&file)?;
            write_file(&output, &export_dot(&sys))?;
            emit(
                out,
                format!("nodes {} edges {}", sys.num_states(), sys.transitions().len()),
            )
        }
    }
}

/// Runs one command line and returns the exit status. Results go to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let to_out = !e.use_stderr();
            let sink: &mut dyn Write = if to_out { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if to_out { 0 } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(err, "{}", f.message);
            f.code
        }
    }
}
