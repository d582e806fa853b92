use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use charkern::catalog::{default_corpus, parse_manifest, preset_names, presets, search_subgroups, CorpusEntry};
use charkern::group::DEFAULT_ELEMENT_CAP;
use charkern::invariants::analyze;
use charkern::verifier::{claim_ids, resolve_claims, verify_corpus, CLAIMS};
use charkern::{build_group_with_cap, dixon_character_table, Error, GroupSpec};
use clap::{Parser, Subcommand};
use serde::Serialize;

mod report;

use report::AnalyzeReport;

#[derive(Parser)]
#[command(name = "charkern", version, about = "Character kernels of finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one group.
    Analyze {
        /// Group spec JSON file.
        #[arg(long)]
        spec: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Maximum number of group elements.
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Print the exact character table of one group.
    Table {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Check registered claims over a corpus.
    Verify {
        /// Corpus manifest; the built-in corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated claim ids; all claims when omitted.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Add the p = 2 presets to the built-in corpus (exploratory).
        #[arg(long)]
        include_p2: bool,
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: usize,
    },
    /// Find subgroups of a given order and write them as a manifest.
    Search {
        /// Preset name or group spec JSON file.
        #[arg(long)]
        ambient: String,
        #[arg(long)]
        order: usize,
        /// Keep only subgroups of this nilpotency class.
        #[arg(long)]
        class: Option<usize>,
        #[arg(long, default_value_t = 10)]
        limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List presets and claim ids.
    List,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SpecInvalid(_) | Error::UnknownPreset(_) => 2,
            Error::UnknownClaim(_) => {
                return Failure { code: 2, message: format!("{e}; valid claim ids: {}", claim_ids().join(", ")) };
            }
            Error::GroupTooLarge { .. } | Error::AmbientTooLarge { .. } => 3,
            _ => 4,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn output_error(path: &Path, e: io::Error) -> Failure {
    Failure { code: 4, message: format!("writing {}: {e}", path.display()) }
}

fn read_spec(path: &Path) -> Result<GroupSpec, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| input_error(path, e))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Writes to a sibling temporary file and renames it into place, so a
/// failed run never leaves a partial output.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let Some(path) = out else {
        io::stdout().write_all(text.as_bytes()).map_err(|e| output_error(Path::new("<stdout>"), e))?;
        return Ok(());
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(format!(".tmp{}", std::process::id()));
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, text).map_err(|e| output_error(&tmp, e))?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        output_error(path, e)
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze { spec, out, cap } => {
            let g = build_group_with_cap(&read_spec(&spec)?, cap)?;
            let a = analyze(g)?;
            emit(out.as_deref(), &to_json(&AnalyzeReport::new(&a)))?;
            Ok(0)
        }
        Command::Table { spec, out, cap } => {
            let g = build_group_with_cap(&read_spec(&spec)?, cap)?;
            let t = dixon_character_table(&g)?;
            emit(out.as_deref(), &to_json(&t.to_json()))?;
            Ok(0)
        }
        Command::Verify { corpus, claims, out, jobs, include_p2, cap } => {
            let claims = resolve_claims(claims.as_deref())?;
            let entries: Vec<CorpusEntry> = match &corpus {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| input_error(path, e))?;
                    parse_manifest(&text)?
                }
                None => default_corpus(include_p2)?,
            };
            let run = verify_corpus(&entries, &claims, jobs, cap)?;
            emit(out.as_deref(), &to_json(&run))?;
            let s = &run.summary;
            eprintln!(
                "{} groups, {} reports, {} in-scope fails, {} entry errors",
                s.groups,
                s.reports,
                s.in_scope_fails,
                s.entry_errors.len()
            );
            for e in &s.entry_errors {
                eprintln!("  {}: {}", e.group, e.error);
            }
            for r in run.reports.iter().filter(|r| r.is_in_scope_fail()) {
                eprintln!("  FAIL {} on {}", r.claim, r.group);
            }
            Ok(if s.is_clean() { 0 } else { 1 })
        }
        Command::Search { ambient, order, class, limit, out } => {
            let path = Path::new(&ambient);
            let spec = if path.is_file() {
                read_spec(path)?
            } else {
                charkern::catalog::preset(&ambient)?;
                GroupSpec::preset(&ambient)
            };
            let found = search_subgroups(&spec, order, class, limit)?;
            emit(out.as_deref(), &to_json(&found))?;
            eprintln!("found {} subgroups", found.len());
            Ok(0)
        }
        Command::List => {
            let mut text = String::from("presets:\n");
            let all = presets();
            for name in preset_names() {
                let e = all.iter().find(|e| e.name == name).expect("listed presets exist");
                let tags: Vec<&str> = e.tags.iter().map(String::as_str).collect();
                text.push_str(&format!("  {name} [{}]\n", tags.join(", ")));
            }
            text.push_str("claims:\n");
            for c in CLAIMS {
                text.push_str(&format!("  {:<7} {}\n", c.id, c.statement));
            }
            emit(None, &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
