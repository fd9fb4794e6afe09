//! Command-line front end: structure verification, module search, invariant
//! computation and batch table reproduction.
//!
//! Exit codes: 0 = pass, 1 = semantic failure (an axiom or relation fails,
//! or a table row mismatches), 2 = usage, I/O or parse error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use shadow_invar::algebra::{search_modules, verify_module, ModuleError, ShadowModuleStructure};
use shadow_invar::birack::{Birack, Shadow};
use shadow_invar::diagram::LinkDiagram;
use shadow_invar::invariant::{shadow_module_invariant, InvariantValue};
use shadow_invar::io::{
    load_birack_file, load_link_file, load_module_file, load_shadow_file, ModuleFile,
};
use shadow_invar::tables::{find_link, is_knot_name, link_table, name_crossings};

#[derive(Parser)]
#[command(name = "shadow-invar", version, about = "Shadow-module enhanced birack invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a structure file against its axioms or relations.
    Check {
        #[arg(value_enum)]
        what: CheckWhat,
        #[command(flatten)]
        files: StructureArgs,
    },
    /// Print the kink maps and birack rank of a birack file.
    Rank {
        #[command(flatten)]
        files: StructureArgs,
    },
    /// Enumerate all module structures over Z_k for a birack/shadow pair.
    SearchModules {
        #[command(flatten)]
        files: StructureArgs,
        /// Ring modulus k.
        #[arg(long)]
        ring: i64,
        /// Stop after this many structures (sorted order).
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Compute the shadow module invariant of one link.
    Invariant {
        #[command(flatten)]
        files: StructureArgs,
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the invariant for every bundled link within a crossing bound
    /// and print rows grouped by equal polynomial value.
    Table {
        #[command(flatten)]
        files: StructureArgs,
        /// Largest crossing number to include (by table name).
        #[arg(long, default_value_t = 8)]
        max_crossings: usize,
        /// Include the bundled links (L-names) as well as knots.
        #[arg(long, default_value_t = false)]
        knots_only: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Compute on mirrored diagrams.
        #[arg(long, default_value_t = false)]
        mirror: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckWhat {
    Birack,
    Shadow,
    Module,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct StructureArgs {
    /// Birack JSON file.
    #[arg(long)]
    birack: Option<PathBuf>,
    /// Shadow JSON file.
    #[arg(long)]
    shadow: Option<PathBuf>,
    /// Module JSON file.
    #[arg(long)]
    module: Option<PathBuf>,
}

#[derive(Args)]
struct LinkArgs {
    /// Name in the bundled table (e.g. 3_1, L6a4).
    #[arg(long)]
    link: Option<String>,
    /// Path to a link JSON file instead of a table name.
    #[arg(long)]
    pd: Option<PathBuf>,
    /// Compute on the mirrored diagram.
    #[arg(long, default_value_t = false)]
    mirror: bool,
}

/// Failures carrying their intended process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { what, files } => check(what, &files),
        Command::Rank { files } => rank(&files),
        Command::SearchModules { files, ring, limit } => search(&files, ring, limit),
        Command::Invariant { files, link, format } => invariant(&files, &link, format),
        Command::Table {
            files,
            max_crossings,
            knots_only,
            format,
            mirror,
        } => table(&files, max_crossings, knots_only, format, mirror),
    }
}

fn require<'a>(p: &'a Option<PathBuf>, what: &str) -> Result<&'a Path, Failure> {
    p.as_deref()
        .ok_or_else(|| Failure::usage(format!("--{what} is required")))
}

fn load_birack(files: &StructureArgs) -> Result<Birack, Failure> {
    let f = load_birack_file(require(&files.birack, "birack")?)?;
    f.build().map_err(|e| Failure::semantic(e.to_string()))
}

fn load_pair(files: &StructureArgs) -> Result<(Birack, Shadow), Failure> {
    let b = load_birack(files)?;
    let f = load_shadow_file(require(&files.shadow, "shadow")?)?;
    let sh = f.build(&b).map_err(|e| Failure::semantic(e.to_string()))?;
    Ok((b, sh))
}

fn load_all(files: &StructureArgs) -> Result<(Birack, Shadow, ShadowModuleStructure), Failure> {
    let (b, sh) = load_pair(files)?;
    let f = load_module_file(require(&files.module, "module")?)?;
    let ms = f.build().map_err(|e| Failure::semantic(e.to_string()))?;
    Ok((b, sh, ms))
}

fn check(what: CheckWhat, files: &StructureArgs) -> Result<(), Failure> {
    match what {
        CheckWhat::Birack => {
            load_birack(files)?;
        }
        CheckWhat::Shadow => {
            load_pair(files)?;
        }
        CheckWhat::Module => {
            let (b, sh, ms) = load_all(files)?;
            verify_module(&ms, &b, &sh).map_err(|e| match e {
                ModuleError::RelationFailed(inst) => {
                    Failure::semantic(format!("relation fails: {inst}"))
                }
                other => Failure::semantic(other.to_string()),
            })?;
        }
    }
    println!("PASS");
    Ok(())
}

fn rank(files: &StructureArgs) -> Result<(), Failure> {
    let b = load_birack(files)?;
    let (alpha, pi, n) = b.kink_maps();
    let one_based = |p: &shadow_invar::zn::Permutation| -> Vec<usize> {
        p.images().iter().map(|&v| v + 1).collect()
    };
    println!("alpha = {:?}", one_based(alpha));
    println!("pi    = {:?}", one_based(pi));
    println!("N     = {n}");
    Ok(())
}

fn search(files: &StructureArgs, ring: i64, limit: Option<usize>) -> Result<(), Failure> {
    if ring < 2 {
        return Err(Failure::usage("--ring must be at least 2"));
    }
    let (b, sh) = load_pair(files)?;
    let found = search_modules(&b, &sh, ring, limit);
    for ms in &found {
        let file = ModuleFile::of(ms);
        println!("{}", serde_json::to_string(&file).expect("serializable"));
    }
    println!("count: {}", found.len());
    Ok(())
}

fn resolve_diagram(link: &LinkArgs) -> Result<(String, LinkDiagram), Failure> {
    let pd = match (&link.link, &link.pd) {
        (Some(name), None) => {
            let table = link_table(table_override().as_deref())?;
            let entry = find_link(&table, name)
                .ok_or_else(|| Failure::usage(format!("unknown link name {name}")))?;
            (name.clone(), entry.pd_code())
        }
        (None, Some(path)) => {
            let f = load_link_file(path)?;
            (f.name.clone(), f.pd_code())
        }
        _ => return Err(Failure::usage("exactly one of --link or --pd is required")),
    };
    let code = if link.mirror { pd.1.mirror() } else { pd.1 };
    let d = LinkDiagram::from_pd(&code).map_err(|e| Failure::semantic(e.to_string()))?;
    Ok((pd.0, d))
}

fn table_override() -> Option<PathBuf> {
    std::env::var_os("SHADOW_INVAR_TABLE").map(PathBuf::from)
}

fn invariant(files: &StructureArgs, link: &LinkArgs, format: Format) -> Result<(), Failure> {
    let (b, sh, ms) = load_all(files)?;
    let (_, d) = resolve_diagram(link)?;
    let phi = shadow_module_invariant(&d, &b, &sh, &ms);
    match format {
        Format::Text => println!("{phi}"),
        Format::Json => println!("{}", invariant_json(&phi)),
    }
    Ok(())
}

fn invariant_json(phi: &InvariantValue) -> String {
    let poly: BTreeMap<String, u64> = phi
        .polynomial
        .iter()
        .map(|(&e, &c)| (e.to_string(), c))
        .collect();
    serde_json::json!({
        "multiset": phi.multiset,
        "polynomial": poly,
    })
    .to_string()
}

fn table(
    files: &StructureArgs,
    max_crossings: usize,
    knots_only: bool,
    format: Format,
    mirror: bool,
) -> Result<(), Failure> {
    let (b, sh, ms) = load_all(files)?;
    let table = link_table(table_override().as_deref())?;
    let mut rows: Vec<(String, InvariantValue)> = Vec::new();
    for entry in &table {
        let Some(c) = name_crossings(&entry.name) else {
            continue;
        };
        if c > max_crossings || (knots_only && !is_knot_name(&entry.name)) {
            continue;
        }
        let mut code = entry.pd_code();
        if mirror {
            code = code.mirror();
        }
        let d = LinkDiagram::from_pd(&code).map_err(|e| Failure::semantic(e.to_string()))?;
        rows.push((entry.name.clone(), shadow_module_invariant(&d, &b, &sh, &ms)));
    }
    // group by value, groups ordered by first appearance in table order
    let mut groups: Vec<(String, Vec<String>)> = Vec::new();
    for (name, phi) in &rows {
        let key = phi.to_string();
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, names)) => names.push(name.clone()),
            None => groups.push((key, vec![name.clone()])),
        }
    }
    match format {
        Format::Text => {
            for (value, names) in &groups {
                println!("{value}\t{}", names.join(", "));
            }
        }
        Format::Json => {
            let out: Vec<_> = groups
                .iter()
                .map(|(value, names)| serde_json::json!({"value": value, "links": names}))
                .collect();
            println!("{}", serde_json::to_string(&out).expect("serializable"));
        }
    }
    Ok(())
}
