use std::fs;
use std::net::TcpListener;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use braillepad::config::RuntimeConfig;
use braillepad::contacts::load_contacts;
use braillepad::serve::{serve, ServeOptions};
use braillepad::translate::{from_braille, to_braille};
use braillepad::{replay, NoteStore, Script, DEFAULT_NOTES_DIR, NOTES_DIR_ENV};
use braillepad_core::{CharsetTable, NoteName};
use clap::{Parser, Subcommand};

/// Eyes-free Braille note manager.
#[derive(Parser)]
#[command(name = "braillepad", version)]
struct Cli {
    /// Directory holding `<name>.note` files and `schedule.rec`.
    #[arg(long, global = true, env = NOTES_DIR_ENV, default_value = DEFAULT_NOTES_DIR)]
    notes_dir: PathBuf,
    /// `name<TAB>number` contact table.
    #[arg(long, global = true)]
    contacts: Option<PathBuf>,
    /// `key=value` settings file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON-lines script headless and print the feedback log.
    Replay {
        script: PathBuf,
        /// Write the log here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Speak the wire protocol over WebSocket.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Fire scheduled actions on the wall clock.
        #[arg(long)]
        real_clock: bool,
    },
    /// Convert between text and dot groups such as `125 24`.
    Translate {
        #[command(subcommand)]
        direction: Direction,
    },
    Notes {
        #[command(subcommand)]
        action: NotesAction,
    },
}

#[derive(Subcommand)]
enum Direction {
    ToBraille { text: String },
    FromBraille { cells: String },
}

#[derive(Subcommand)]
enum NotesAction {
    List,
    Show { name: String },
}

const MISMATCH: u8 = 1;
const BAD_INPUT: u8 = 2;

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("braillepad: {msg}");
    ExitCode::from(BAD_INPUT)
}

fn load_config(cli: &Cli) -> Result<RuntimeConfig, String> {
    let mut config = match &cli.config {
        Some(p) => RuntimeConfig::load(p).map_err(|e| format!("{}: {e}", p.display()))?,
        None => RuntimeConfig::default(),
    };
    if let Some(p) = &cli.contacts {
        config.contacts = load_contacts(p).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(config)
}

fn run_replay(config: &RuntimeConfig, notes_dir: &Path, script: &Path, out: Option<&Path>) -> ExitCode {
    let src = match fs::read_to_string(script) {
        Ok(s) => s,
        Err(e) => return fail(format!("{}: {e}", script.display())),
    };
    let script = match Script::parse(&src) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let report = match replay(&script, config, notes_dir) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let log = report.log_text();
    match out {
        Some(p) => {
            if let Err(e) = fs::write(p, &log) {
                return fail(format!("{}: {e}", p.display()));
            }
        }
        None => print!("{log}"),
    }
    if report.failures.is_empty() {
        return ExitCode::SUCCESS;
    }
    for f in &report.failures {
        eprintln!("braillepad: line {}: no record matched {}", f.line, f.expected);
    }
    ExitCode::from(MISMATCH)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match load_config(&cli) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match &cli.command {
        Command::Replay { script, out } => run_replay(&config, &cli.notes_dir, script, out.as_deref()),
        Command::Serve { port, host, real_clock } => {
            let listener = match TcpListener::bind((host.as_str(), *port)) {
                Ok(l) => l,
                Err(e) => return fail(format!("bind {host}:{port}: {e}")),
            };
            eprintln!("braillepad: listening on ws://{}", listener.local_addr().map(|a| a.to_string()).unwrap_or_default());
            let options = ServeOptions { config, notes_dir: cli.notes_dir.clone(), real_clock: *real_clock };
            match serve(listener, options) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => fail(e),
            }
        }
        Command::Translate { direction } => {
            let table = CharsetTable::standard();
            let result = match direction {
                Direction::ToBraille { text } => to_braille(&table, text),
                Direction::FromBraille { cells } => from_braille(&table, cells),
            };
            match result {
                Ok(s) => {
                    println!("{s}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Notes { action } => {
            let store = match NoteStore::open(&cli.notes_dir) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            match action {
                NotesAction::List => match store.list() {
                    Ok(names) => {
                        for n in names {
                            println!("{n}");
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => fail(e),
                },
                NotesAction::Show { name } => {
                    let Some(name) = NoteName::parse(name) else {
                        return fail(format!("{name:?} is not a note name"));
                    };
                    match store.load(&name) {
                        Ok(content) => {
                            print!("{content}");
                            ExitCode::SUCCESS
                        }
                        Err(e) => fail(e),
                    }
                }
            }
        }
    }
}
