use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use diffset::group::BuiltinGroup;
use diffset_cli::{
    cmd_auts, cmd_check, cmd_preset, cmd_scheme, cmd_search, group_and_subgroup, parse_params, spec, CliError,
    Output, Overrides,
};

#[derive(Parser)]
#[command(name = "diffset", version, about = "Search for difference sets along towers of Schurian scheme quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a tower search from a job file, or a built-in preset.
    Search(SearchArgs),
    /// Test whether a set, or a function on G/H, is equi-distributed.
    Check(CheckArgs),
    /// Print the Schurian scheme on G/H.
    Scheme(SchemeArgs),
    /// Count automorphisms, and those fixing each subgroup.
    Auts(AutsArgs),
}

#[derive(Args)]
struct SearchArgs {
    /// Job document (JSON).
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    spec: Option<PathBuf>,
    /// Built-in reproduction preset.
    #[arg(long, value_parser = ["paper-120"])]
    preset: Option<String>,
    /// With --preset: comma-separated subset of the built-in groups.
    #[arg(long, requires = "preset", value_delimiter = ',')]
    only: Vec<String>,
    /// Keep every candidate instead of one per equivalence class.
    #[arg(long)]
    no_reduction: bool,
    /// Worker threads (default: one per core).
    #[arg(long)]
    workers: Option<usize>,
    /// Include the surviving candidates of every level in the report.
    #[arg(long)]
    emit_candidates: bool,
    /// Stop after this many backtracking nodes; the run then exits with 3.
    #[arg(long)]
    node_budget: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GroupArg {
    /// Built-in name, C<n>, or a JSON group spec.
    #[arg(long)]
    group: String,
    /// Subgroup generators: JSON array or comma-separated indices.
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    group: GroupArg,
    /// Elements of G: JSON array or comma-separated indices.
    #[arg(long, conflicts_with = "function")]
    set: Option<String>,
    /// Values on the points of G/H, comma-separated.
    #[arg(long, value_delimiter = ',')]
    function: Option<Vec<u64>>,
    /// Expected parameters as v,k,lambda.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Args)]
struct SchemeArgs {
    #[command(flatten)]
    group: GroupArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AutsArgs {
    /// Built-in name, C<n>, or a JSON group spec.
    #[arg(long, conflicts_with = "spec", required_unless_present = "spec")]
    group: Option<String>,
    #[arg(long, requires = "group")]
    subgroup: Option<String>,
    /// Report for every subgroup of a job's chain.
    #[arg(long)]
    spec: Option<PathBuf>,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Spec(format!("{}: {e}", path.display())))
}

fn write(path: &Option<PathBuf>, text: &str) -> Result<bool, CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map(|_| true)
            .map_err(|e| CliError::Resource(format!("{}: {e}", p.display()))),
        None => Ok(false),
    }
}

fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Search(a) => {
            let overrides = Overrides {
                no_reduction: a.no_reduction,
                workers: a.workers,
                emit_candidates: a.emit_candidates,
                node_budget: a.node_budget,
            };
            if a.preset.is_some() {
                let only = a.only.iter().map(|s| spec::parse_builtin(s)).collect::<Result<Vec<BuiltinGroup>, _>>()?;
                let (table, docs, code) = cmd_preset(&only, &overrides)?;
                let json = serde_json::to_string_pretty(&docs).expect("reports serialize") + "\n";
                write(&a.out, &json)?;
                return Ok(Output { text: table, code });
            }
            let path = a.spec.expect("clap requires --spec without --preset");
            let (doc, line, code) = cmd_search(&read(&path)?, &overrides)?;
            let json = serde_json::to_string_pretty(&doc).expect("reports serialize") + "\n";
            if write(&a.out, &json)? {
                Ok(Output { text: line + "\n", code })
            } else {
                eprintln!("{line}");
                Ok(Output { text: json, code })
            }
        }
        Command::Check(a) => {
            let (g, h) = group_and_subgroup(&a.group.group, a.group.subgroup.as_deref())?;
            let set = a.set.as_deref().map(|s| spec::elements_from_arg("set", s)).transpose()?;
            let expected = a.params.as_deref().map(parse_params).transpose()?;
            cmd_check(&g, h.as_ref(), set.as_deref(), a.function.as_deref(), expected)
        }
        Command::Scheme(a) => {
            let (g, h) = group_and_subgroup(&a.group.group, a.group.subgroup.as_deref())?;
            let out = cmd_scheme(&g, h.as_ref())?;
            if write(&a.out, &out.text)? {
                return Ok(Output { text: String::new(), code: out.code });
            }
            Ok(out)
        }
        Command::Auts(a) => match (a.group, a.spec) {
            (Some(group), _) => {
                let (g, h) = group_and_subgroup(&group, a.subgroup.as_deref())?;
                let subgroups: Vec<_> = h.into_iter().collect();
                cmd_auts(&g, &subgroups)
            }
            (None, Some(path)) => {
                let job = spec::JobSpec::from_json(&read(&path)?)?.resolve()?;
                cmd_auts(&job.group, job.chain.subgroups())
            }
            (None, None) => unreachable!("clap requires one of --group and --spec"),
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
