//! Command-line interface. [`run`] returns the process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success, or a model was found |
//! | 1 | no model up to the domain bound |
//! | 2 | usage or parse error |
//! | 3 | shape or validation error |
//! | 4 | conflict budget exhausted |
//! | 5 | an extracted witness failed re-verification |

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::automata::{standard_logic, validate_against_system, PRESET_NAMES};
use crate::error::Error;
use crate::fo::{close, to_sexp, to_tptp, Closure, Fo, Role, SymbolTable};
use crate::frontends::{ipl_to_gf2, ktu_to_cpdl, parse_ipl, to_ktu};
use crate::grammar_file::load_logic;
use crate::logic::Logic;
use crate::semantics::frame_file::{parse_model, render_model};
use crate::semantics::{bounded_fo_sat, closure_paths, extract_modal_model, random_frame, FoSat, DEFAULT_CONFLICT_CAP};
use crate::syntax::{parse_modal, ModalFormula};
use crate::translate::{translate_with, Mode, Options};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_MODEL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SHAPE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_UNVERIFIED: i32 = 5;

#[derive(Parser, Debug)]
#[command(name = "gramlogic", version, about = "Translate grammar logics with converse into the guarded two-variable fragment")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct LogicArgs {
    /// Built-in logic (see `preset list`).
    #[arg(long)]
    pub preset: Option<String>,
    /// Grammar file with letters, rules, and optional automata.
    #[arg(long)]
    pub system: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Tptp,
    Sexp,
}

#[derive(Copy, Clone, Debug, Default, ValueEnum)]
pub enum ModeArg {
    #[default]
    Inline,
    Hoisted,
}

#[derive(Args, Debug, Clone)]
pub struct TranslateArgs {
    #[command(flatten)]
    pub logic: LogicArgs,
    /// Modal formula; `->` is classical and expanded before NNF.
    #[arg(long)]
    pub formula: String,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t)]
    pub mode: ModeArg,
    /// Allow nominals `@n`, translated to equalities with constants.
    #[arg(long)]
    pub nominals: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the first-order translation of a formula.
    Translate(TranslateArgs),
    /// Search for a finite model of the translation and read a Kripke witness off it.
    Check {
        #[command(flatten)]
        translate: TranslateArgs,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_domain: u64,
        /// Conflict budget of the SAT search per domain size.
        #[arg(long, default_value_t = DEFAULT_CONFLICT_CAP)]
        conflict_cap: u64,
    },
    /// Close a frame under the rules of a logic.
    Closure {
        #[command(flatten)]
        logic: LogicArgs,
        /// Model file; when absent a random frame is drawn.
        #[arg(long)]
        frame: Option<PathBuf>,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        worlds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the automata of a logic against its rules on short words.
    Validate {
        #[command(flatten)]
        logic: LogicArgs,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        len_bound: u64,
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        step_bound: u64,
    },
    /// Translate an intuitionistic formula; with `--max-domain`, look for a countermodel.
    Ipl {
        #[arg(long)]
        formula: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_domain: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_CONFLICT_CAP)]
        conflict_cap: u64,
    },
    /// Lower a formula into K_t with the universal modality.
    Ktu {
        #[command(flatten)]
        logic: LogicArgs,
        #[arg(long)]
        formula: String,
        /// Also print the converse PDL lowering.
        #[arg(long)]
        cpdl: bool,
    },
    /// Built-in logics.
    Preset {
        #[command(subcommand)]
        action: PresetAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum PresetAction {
    /// Names of the built-in logics.
    List,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Shape(_) => EXIT_SHAPE,
            _ => EXIT_PARSE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn fail<E: Into<Error>>(e: E) -> Failure {
    Failure::from(e.into())
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure { code: EXIT_PARSE, message: format!("{}: {e}", path.display()) })
}

fn logic(args: &LogicArgs) -> Result<Logic, Failure> {
    match (&args.preset, &args.system) {
        (Some(name), _) => standard_logic(name).map_err(fail),
        (None, Some(path)) => {
            let name = path.file_stem().map_or("system".into(), |s| s.to_string_lossy().into_owned());
            load_logic(&read(path)?, &name).map_err(fail)
        }
        (None, None) => unreachable!("clap requires one logic source"),
    }
}

fn formula(logic: &Logic, text: &str) -> Result<ModalFormula, Failure> {
    Ok(parse_modal(text, &logic.alphabet).map_err(fail)?.nnf())
}

fn emit(out: &mut String, fo: &Fo, table: &SymbolTable, header: &[String], format: Format) {
    let comment = match format {
        Format::Tptp => "%",
        Format::Sexp => ";",
    };
    for line in header.iter().chain(&table.listing()) {
        out.push_str(&format!("{comment} {line}\n"));
    }
    match format {
        Format::Tptp => out.push_str(&to_tptp(fo, Role::Axiom, Closure::Existential)),
        Format::Sexp => out.push_str(&to_sexp(&close(fo, Closure::Existential))),
    }
    out.push('\n');
}

fn translation(args: &TranslateArgs) -> Result<(Logic, ModalFormula, Fo, SymbolTable), Failure> {
    let logic = logic(&args.logic)?;
    let phi = formula(&logic, &args.formula)?;
    let mode = match args.mode {
        ModeArg::Inline => Mode::Inline,
        ModeArg::Hoisted => Mode::Hoisted,
    };
    let (fo, table) = translate_with(&logic, &phi, Options { mode, nominals: args.nominals }).map_err(fail)?;
    Ok((logic, phi, fo, table))
}

fn execute(cmd: &Command, out: &mut String) -> Result<i32, Failure> {
    match cmd {
        Command::Translate(args) => {
            let (logic, phi, fo, table) = translation(args)?;
            let header = [format!("logic: {}", logic.name), format!("formula: {}", phi.render(&logic.alphabet))];
            emit(out, &fo, &table, &header, args.format);
            Ok(EXIT_OK)
        }
        Command::Check { translate, max_domain, conflict_cap } => {
            let (logic, phi, fo, table) = translation(translate)?;
            match bounded_fo_sat(&fo, *max_domain as usize, *conflict_cap) {
                FoSat::Model(sol) => {
                    let world = sol.witness[0].unwrap_or(0);
                    let kripke = extract_modal_model(&sol.model, &table, &logic);
                    let verified = kripke.eval(world, &phi).map_err(fail)?;
                    out.push_str(&format!("model found (domain {})\n", sol.model.size));
                    out.push_str(&format!("witness world: {world}\n"));
                    out.push_str(&render_model(&kripke, &logic.alphabet));
                    out.push_str(&format!("verified: {verified}\n"));
                    Ok(if verified { EXIT_OK } else { EXIT_UNVERIFIED })
                }
                FoSat::NoModel { up_to } => {
                    out.push_str(&format!("no model up to domain {up_to}\n"));
                    Ok(EXIT_NO_MODEL)
                }
                FoSat::Exhausted { domain } => {
                    out.push_str(&format!("conflict budget exhausted at domain {domain}\n"));
                    Ok(EXIT_RESOURCE)
                }
            }
        }
        Command::Closure { logic: largs, frame, worlds, seed } => {
            let logic = logic(largs)?;
            let model = match frame {
                Some(path) => parse_model(&read(path)?, &logic.alphabet).map_err(fail)?,
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    let f = random_frame(&mut rng, *worlds as usize, logic.alphabet.forward_len(), 0.3);
                    crate::semantics::KripkeModel::new(f)
                }
            };
            let mut closed = model.clone();
            closed.frame = closure_paths(&model.frame, &logic.automata);
            out.push_str(&format!("# input\n{}", render_model(&model, &logic.alphabet)));
            out.push_str(&format!("# closure under {}\n{}", logic.name, render_model(&closed, &logic.alphabet)));
            Ok(EXIT_OK)
        }
        Command::Validate { logic: largs, len_bound, step_bound } => {
            let logic = logic(largs)?;
            let report = validate_against_system(
                &logic.alphabet,
                &logic.automata,
                &logic.system,
                *len_bound as usize,
                *step_bound as usize,
            );
            out.push_str(&report.render(&logic.alphabet));
            Ok(if report.has_errors() { EXIT_SHAPE } else { EXIT_OK })
        }
        Command::Ipl { formula, format, max_domain, conflict_cap } => {
            let phi = parse_ipl(formula).map_err(fail)?;
            let (fo, table) = ipl_to_gf2(&phi);
            let header = [format!("ipl formula: {phi}")];
            emit(out, &fo, &table, &header, *format);
            let Some(bound) = max_domain else { return Ok(EXIT_OK) };
            match bounded_fo_sat(&fo, *bound as usize, *conflict_cap) {
                FoSat::Model(sol) => {
                    out.push_str(&format!("countermodel found (domain {}): not valid\n", sol.model.size));
                    Ok(EXIT_OK)
                }
                FoSat::NoModel { up_to } => {
                    out.push_str(&format!("no countermodel up to domain {up_to} (bounded search, not a proof)\n"));
                    Ok(EXIT_NO_MODEL)
                }
                FoSat::Exhausted { domain } => {
                    out.push_str(&format!("conflict budget exhausted at domain {domain}\n"));
                    Ok(EXIT_RESOURCE)
                }
            }
        }
        Command::Ktu { logic: largs, formula: text, cpdl } => {
            let logic = logic(largs)?;
            let phi = formula(&logic, text)?;
            let k = to_ktu(&logic, &phi).map_err(fail)?;
            out.push_str(&format!("{k}\n"));
            if *cpdl {
                out.push_str(&format!("{}\n", ktu_to_cpdl(&k, logic.alphabet.forward_len())));
            }
            Ok(EXIT_OK)
        }
        Command::Preset { action: PresetAction::List } => {
            for name in PRESET_NAMES {
                out.push_str(name);
                out.push('\n');
            }
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (program name first), runs the command, and writes to
/// `out` and `err`.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut buf = String::new();
    match execute(&cli.command, &mut buf) {
        Ok(code) => {
            let _ = out.write_all(buf.as_bytes());
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
