//! Command-line front end for `tilecoh`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::algebra::{LimitError, DEFAULT_STAB_WINDOW};
use crate::approximant::{build_approximant, export_dot, ApproximantError};
use crate::collaring::{adjacency, collar, CollaringError};
use crate::language::{factor_language, LanguageError};
use crate::model::{parse_definition, TilingDefinition};
use crate::pattern::Shape;
use crate::report::{
    collar_text, language_text, to_json, ClosureFailureReport, CohomologyReport, ComplexReport, DegreeReport,
    LimitReport,
};
use crate::tower::{build_tower, TowerError, TowerOptions, DEFAULT_MAX_DEPTH, MAX_SAFE_DEPTH};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNRESOLVED: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "tilecoh", version, about = "Cohomology of tiling spaces from collared-tile approximants")]
pub struct Cli {
    /// Tiling definition (JSON).
    #[arg(long = "def", global = true, value_name = "PATH")]
    pub definition: Option<PathBuf>,

    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,

    /// Write the result here instead of standard output.
    #[arg(short, long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    /// Allow depths above the default cap.
    #[arg(long, global = true)]
    pub unsafe_depth: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the admissible patterns of a window shape.
    Language {
        /// Window shape: `W` or `WxH`.
        #[arg(long, value_parser = parse_shape)]
        shape: Shape,
    },
    /// List the collared tiles of depth n and their adjacencies.
    Collar(DepthArg),
    /// Cell counts and boundary matrices of K_n.
    Complex {
        #[command(flatten)]
        depth: DepthArg,
        /// Also write the 1-skeleton as DOT (`-` for standard output).
        #[arg(long, value_name = "PATH")]
        dot: Option<String>,
    },
    /// Cohomology of every level of the tower.
    Cohomology {
        #[command(flatten)]
        depth: DepthArg,
        #[arg(long)]
        include_k0: bool,
    },
    /// Direct-limit analysis of the cohomology towers.
    Limit {
        #[command(flatten)]
        depth: DepthArg,
        /// Number of consecutive isomorphisms needed to call a tower stable.
        #[arg(long, default_value_t = DEFAULT_STAB_WINDOW)]
        stab_window: usize,
        #[arg(long)]
        include_k0: bool,
    },
}

#[derive(Debug, Args)]
pub struct DepthArg {
    /// Collar depth (for towers: the deepest level).
    #[arg(short = 'n', long = "depth", default_value_t = DEFAULT_MAX_DEPTH)]
    pub depth: usize,
}

fn parse_shape(s: &str) -> Result<Shape, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid shape `{s}`, expected W or WxH"))
    };
    let shape = match s.split_once(['x', 'X']) {
        Some((w, h)) => Shape::new(parse(w)?, parse(h)?),
        None => Shape::line(parse(s)?),
    };
    if shape.is_empty() {
        return Err(format!("shape `{s}` is empty"));
    }
    Ok(shape)
}

/// Validated run parameters.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub definition: TilingDefinition,
    pub max_depth: usize,
    pub stab_window: usize,
    pub include_k0: bool,
    pub pretty: bool,
}

impl RunConfig {
    pub fn tower_options(&self) -> TowerOptions {
        TowerOptions {
            max_depth: self.max_depth,
            include_k0: self.include_k0,
        }
    }

    pub fn level_count(&self) -> usize {
        self.max_depth + usize::from(self.include_k0)
    }
}

struct Failure {
    code: i32,
    message: String,
    /// Written to the output in place of a result.
    report: Option<String>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
            report: None,
        }
    }

    fn unresolved(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_UNRESOLVED,
            message: message.into(),
            report: None,
        }
    }
}

/// What a command produced: the primary document plus any side files.
struct Output {
    primary: String,
    dot: Option<(String, String)>,
    code: i32,
    warning: Option<String>,
}

impl Output {
    fn ok(primary: String) -> Self {
        Output {
            primary,
            dot: None,
            code: EXIT_OK,
            warning: None,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    run_cli(&cli, stdout, stderr)
}

pub fn run_cli(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let result = load_config(cli).and_then(|config| execute(cli, &config));
    match result {
        Ok(out) => {
            if let Some(w) = &out.warning {
                let _ = writeln!(stderr, "tilecoh: {w}");
            }
            if let Err(e) = emit(cli, &out, stdout) {
                let _ = writeln!(stderr, "tilecoh: {e}");
                return EXIT_IO;
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "tilecoh: {}", f.message);
            if let Some(report) = f.report {
                if let Err(e) = emit(cli, &Output::ok(report), stdout) {
                    let _ = writeln!(stderr, "tilecoh: {e}");
                    return EXIT_IO;
                }
            }
            f.code
        }
    }
}

fn emit(cli: &Cli, out: &Output, stdout: &mut dyn Write) -> io::Result<()> {
    let dot_on_stdout = matches!(&out.dot, Some((target, _)) if target == "-");
    if let Some((target, text)) = &out.dot {
        if target == "-" {
            stdout.write_all(text.as_bytes())?;
        } else {
            fs::write(target, text)?;
        }
    }
    match &cli.output {
        Some(path) if path.as_os_str() != "-" => fs::write(path, &out.primary),
        _ if dot_on_stdout && cli.output.is_none() => Ok(()),
        _ => stdout.write_all(out.primary.as_bytes()),
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let path = cli
        .definition
        .as_ref()
        .ok_or_else(|| Failure::input("missing --def PATH"))?;
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let definition = parse_definition(&text).map_err(|e| {
        let mut message = format!("{}: {e}", path.display());
        for d in e.diagnostics() {
            message.push_str(&format!("\n  {d}"));
        }
        Failure::input(message)
    })?;

    let (max_depth, stab_window, include_k0) = match &cli.command {
        Command::Language { .. } => (0, DEFAULT_STAB_WINDOW, false),
        Command::Collar(d) | Command::Complex { depth: d, .. } => (d.depth, DEFAULT_STAB_WINDOW, false),
        Command::Cohomology { depth, include_k0 } => (depth.depth, DEFAULT_STAB_WINDOW, *include_k0),
        Command::Limit {
            depth,
            stab_window,
            include_k0,
        } => (depth.depth, *stab_window, *include_k0),
    };
    if max_depth > MAX_SAFE_DEPTH && !cli.unsafe_depth {
        return Err(Failure::input(format!(
            "depth {max_depth} exceeds the cap of {MAX_SAFE_DEPTH}; pass --unsafe-depth to override"
        )));
    }
    if stab_window < 2 {
        return Err(Failure::input("--stab-window must be at least 2"));
    }
    let config = RunConfig {
        definition,
        max_depth,
        stab_window,
        include_k0,
        pretty: cli.pretty,
    };
    let towered = matches!(cli.command, Command::Cohomology { .. } | Command::Limit { .. });
    if towered && config.level_count() == 0 {
        return Err(Failure::input("tower is empty: use -n >= 1 or --include-k0"));
    }
    if matches!(cli.command, Command::Limit { .. }) && config.level_count() < stab_window + 1 {
        let e = LimitError::TowerTooShort {
            levels: config.level_count(),
            required: stab_window + 1,
            window: stab_window,
        };
        return Err(Failure::input(e.to_string()));
    }
    Ok(config)
}

fn execute(cli: &Cli, config: &RunConfig) -> Result<Output, Failure> {
    let def = &config.definition;
    match &cli.command {
        Command::Language { shape } => {
            let lang = factor_language(def, *shape).map_err(|e| language_failure(def, e))?;
            Ok(Output::ok(language_text(def, &lang)))
        }
        Command::Collar(d) => {
            let tiles = collar(def, d.depth).map_err(|e| collaring_failure(def, e))?;
            let adj = adjacency(def, &tiles).map_err(|e| collaring_failure(def, e))?;
            Ok(Output::ok(collar_text(def, &tiles, &adj)))
        }
        Command::Complex { depth, dot } => {
            let k = build_approximant(def, depth.depth).map_err(|e| approximant_failure(def, e))?;
            let report = ComplexReport::new(def, depth.depth, k.complex());
            let primary = if config.pretty {
                report.pretty()
            } else {
                to_json(&report)
            };
            let mut out = Output::ok(primary);
            out.dot = dot.clone().map(|target| (target, export_dot(k.complex())));
            Ok(out)
        }
        Command::Cohomology { .. } => {
            let tower = build_tower(def, config.tower_options()).map_err(|e| tower_failure(def, e))?;
            let report = CohomologyReport::new(def, &tower);
            Ok(Output::ok(if config.pretty {
                report.pretty()
            } else {
                to_json(&report)
            }))
        }
        Command::Limit { .. } => {
            let tower = build_tower(def, config.tower_options()).map_err(|e| tower_failure(def, e))?;
            let limits = tower
                .limits(config.stab_window)
                .map_err(|e| tower_failure(def, e))?;
            let mut report = LimitReport {
                definition: def.name.clone(),
                symmetry: def.symmetry.as_str(),
                dimension: tower.dimension(),
                max_depth: config.max_depth,
                stab_window: config.stab_window,
                include_k0: config.include_k0,
                status: "ok",
                note: None,
                degrees: limits.iter().map(DegreeReport::new).collect(),
            };
            let mut code = EXIT_OK;
            let mut warning = None;
            if !report.all_classified() {
                report.status = "unclassified";
                report.note = Some("some degrees did not stabilize; increase -n");
                code = EXIT_UNRESOLVED;
                warning = Some("some cohomology towers did not stabilize within the computed levels".into());
            }
            Ok(Output {
                primary: if config.pretty {
                    report.pretty()
                } else {
                    to_json(&report)
                },
                dot: None,
                code,
                warning,
            })
        }
    }
}

fn language_failure(def: &TilingDefinition, e: LanguageError) -> Failure {
    match &e {
        LanguageError::ClosureNotReached { shape, previous, last } => {
            let report = ClosureFailureReport {
                status: "closure_not_reached",
                error: e.to_string(),
                shape: shape.to_string(),
                previous: previous.iter().map(|p| def.alphabet.render(p)).collect(),
                last: last.iter().map(|p| def.alphabet.render(p)).collect(),
            };
            Failure {
                report: Some(to_json(&report)),
                ..Failure::unresolved(e.to_string())
            }
        }
        LanguageError::UnsupportedWindow { .. } | LanguageError::InvalidShape { .. } => Failure::input(e.to_string()),
    }
}

fn collaring_failure(def: &TilingDefinition, e: CollaringError) -> Failure {
    match e {
        CollaringError::Language(inner) => language_failure(def, inner),
        CollaringError::NotExtendable { .. } => Failure::unresolved(e.to_string()),
        CollaringError::ForgetDepthZero | CollaringError::DepthMismatch { .. } => Failure::input(e.to_string()),
        CollaringError::Inconsistent { .. } => Failure::unresolved(e.to_string()),
    }
}

fn approximant_failure(def: &TilingDefinition, e: ApproximantError) -> Failure {
    match e {
        ApproximantError::Collaring(inner) => collaring_failure(def, inner),
        ApproximantError::DepthZero | ApproximantError::Mismatch => Failure::input(e.to_string()),
        _ => Failure::unresolved(e.to_string()),
    }
}

fn tower_failure(def: &TilingDefinition, e: TowerError) -> Failure {
    match e {
        TowerError::Approximant(inner) => approximant_failure(def, inner),
        TowerError::Limit(inner @ LimitError::TowerTooShort { .. }) => Failure::input(inner.to_string()),
        other => Failure::unresolved(other.to_string()),
    }
}
