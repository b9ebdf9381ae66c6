//! Command-line interface: JSON inputs, JSON results, exit code 0 on
//! success, 2 on malformed input, 3 on an unsupported parameter range.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use glindex::betti;
use glindex::clutter::{by_name, catalog_names, family_c, CatalogEntry, Clutter};
use glindex::complex::FieldChoice;
use glindex::error::Error;
use glindex::linpres::{self, PairWitness};
use glindex::monomial::{Monomial, MonomialIdeal};
use glindex::search::{self, OmegaQuery};
use glindex::IndexValue;

#[derive(Parser)]
#[command(
    name = "glindex",
    version,
    about = "Graded Betti numbers, resolution index, and linear presentation \
             of monomial ideals and clutter edge ideals"
)]
struct Cli {
    /// Worker threads for homology ranks (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Cache directory for the classification family; the GLINDEX_CACHE_DIR
    /// environment variable overrides this flag.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded and multigraded Betti table of the input ideal.
    Betti(IdealArgs),
    /// Resolution index: number of leading linear steps, or "infinity".
    Index(IdealArgs),
    /// Linear presentation of a power, decided on the generator graph.
    Linpres(LinpresArgs),
    /// Freeness from a forbidden family of induced subclutters.
    CheckFree(CheckFreeArgs),
    /// The four classification flags of a clutter.
    Classify(ClutterArgs),
    /// Minimal clutters whose edge ideal first fails linear presentation at
    /// power k: isomorphism-class count and optional representatives.
    Enumerate(EnumerateArgs),
    /// The degree-six disconnection census over mixed-triple memberships.
    #[command(name = "census-105")]
    Census105,
    /// Smallest clutter size with a nonlinear complement resolution.
    Kappa(KappaArgs),
    /// Named example clutters and ideals.
    Catalog(CatalogArgs),
}

#[derive(Args)]
struct IdealArgs {
    /// JSON input file ("-" for standard input).
    #[arg(value_name = "FILE", conflicts_with = "name")]
    input: Option<PathBuf>,

    /// Catalog entry to use instead of a file.
    #[arg(long, value_name = "NAME")]
    name: Option<String>,

    /// Coefficient field: q for the rationals, or a prime.
    #[arg(long, default_value = "q")]
    field: FieldChoice,

    /// Power of the ideal to inspect.
    #[arg(long, default_value_t = 1, value_name = "K")]
    power: u32,
}

#[derive(Args)]
struct LinpresArgs {
    /// JSON input file ("-" for standard input).
    #[arg(value_name = "FILE", conflicts_with = "name")]
    input: Option<PathBuf>,

    /// Catalog entry to use instead of a file.
    #[arg(long, value_name = "NAME")]
    name: Option<String>,

    /// Power of the ideal to inspect.
    #[arg(long, default_value_t = 1, value_name = "K")]
    power: u32,
}

#[derive(Args)]
struct ClutterArgs {
    /// JSON input file ("-" for standard input).
    #[arg(value_name = "FILE", conflicts_with = "name")]
    input: Option<PathBuf>,

    /// Catalog entry to use instead of a file.
    #[arg(long, value_name = "NAME")]
    name: Option<String>,
}

#[derive(Args)]
struct CheckFreeArgs {
    /// JSON input file ("-" for standard input).
    #[arg(value_name = "FILE", conflicts_with = "name")]
    input: Option<PathBuf>,

    /// Catalog entry to use instead of a file.
    #[arg(long, value_name = "NAME")]
    name: Option<String>,

    /// Forbidden family: C is checked on the complement, D on the clutter
    /// itself, matching the two characterizations.
    #[arg(long)]
    family: FamilyChoice,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyChoice {
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Uniformity of the clutters.
    #[arg(long)]
    d: usize,

    /// The power at which linear presentation first fails.
    #[arg(long)]
    k: u32,

    /// Number of vertices.
    #[arg(long)]
    n: usize,

    /// Include canonical representatives in the output.
    #[arg(long)]
    reps: bool,
}

#[derive(Args)]
struct KappaArgs {
    /// Uniformity of the clutters.
    #[arg(long)]
    d: usize,
}

#[derive(Args)]
struct CatalogArgs {
    /// Entry to dump; without it, the list of names.
    #[arg(long, value_name = "NAME")]
    name: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(value) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("output serializes")
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                // A well-formed input the computation does not cover.
                Error::Unsupported(_) | Error::MixedDegrees => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<Value, Error> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::Malformed("--jobs wants at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::Malformed(format!("worker pool: {e}")))?;
    }
    let cache_dir = std::env::var_os("GLINDEX_CACHE_DIR")
        .map(PathBuf::from)
        .or(cli.cache_dir);

    match cli.command {
        Command::Betti(a) => {
            let ideal = powered(as_ideal(read_entry(&a.input, &a.name)?), a.power)?;
            let table = betti::betti_table(&ideal, a.field)?;
            let graded: Vec<Value> = table
                .graded()
                .into_iter()
                .map(|((i, j), r)| json!([i, j, r]))
                .collect();
            let multigraded: Vec<Value> = table
                .multigraded()
                .map(|(i, u, r)| json!([i, u.exponents(), r]))
                .collect();
            Ok(json!({
                "field": a.field.to_string(),
                "graded": graded,
                "multigraded": multigraded,
                "power": a.power,
            }))
        }
        Command::Index(a) => {
            let ideal = powered(as_ideal(read_entry(&a.input, &a.name)?), a.power)?;
            let value = match betti::gl_index(&ideal, a.field)? {
                IndexValue::Finite(i) => json!(i),
                IndexValue::Infinity => json!("infinity"),
            };
            Ok(json!({
                "field": a.field.to_string(),
                "index": value,
                "power": a.power,
            }))
        }
        Command::Linpres(a) => {
            if a.power == 0 {
                return Err(Error::Malformed("--power wants at least 1".into()));
            }
            let ideal = as_ideal(read_entry(&a.input, &a.name)?);
            let check = linpres::power_check(&ideal, a.power)?;
            Ok(json!({
                "linearly_presented": check.linearly_presented,
                "power": a.power,
                "witness": witness_json(check.witness),
            }))
        }
        Command::CheckFree(a) => {
            let clutter = as_clutter(read_entry(&a.input, &a.name)?)?;
            let (family, target, checked) = match a.family {
                FamilyChoice::C => (family_c(), clutter.complement(), "complement"),
                FamilyChoice::D => (
                    search::family_d(cache_dir.as_deref())?.members().to_vec(),
                    clutter,
                    "clutter",
                ),
            };
            let witness = family.iter().enumerate().find_map(|(idx, pattern)| {
                target.find_induced_embedding(pattern).map(|image| {
                    json!({
                        "image": image.iter().map(|&v| v + 1).collect::<Vec<_>>(),
                        "member": clutter_json(pattern),
                        "member_index": idx,
                    })
                })
            });
            Ok(json!({
                "checked": checked,
                "family": match a.family { FamilyChoice::C => "C", FamilyChoice::D => "D" },
                "free": witness.is_none(),
                "witness": witness.unwrap_or(Value::Null),
            }))
        }
        Command::Classify(a) => {
            let clutter = as_clutter(read_entry(&a.input, &a.name)?)?;
            let ideal = clutter.edge_ideal();
            let d_family = search::family_d(cache_dir.as_deref())?;
            Ok(json!({
                "D_free": clutter.is_family_free(d_family.members()),
                "complement_C_free": clutter.complement().is_family_free(&family_c()),
                "index_gt1": linpres::linearly_presented_graph(&ideal)?.linearly_presented,
                "index_sq_gt1": linpres::power_check(&ideal, 2)?.linearly_presented,
            }))
        }
        Command::Enumerate(a) => {
            let query = OmegaQuery {
                d: a.d,
                k: a.k,
                n: a.n,
            };
            let report = search::enumerate_omega(query, cache_dir.as_deref())?;
            let mut out = json!({
                "count": report.count,
                "d": a.d,
                "k": a.k,
                "n": a.n,
            });
            if a.reps {
                out["representatives"] = Value::Array(
                    report.representatives.iter().map(clutter_json).collect(),
                );
            }
            Ok(out)
        }
        Command::Census105 => {
            let report = search::case_census_deg6()?;
            Ok(json!({
                "cases": report.cases,
                "every_complement_obstructed": report.every_complement_obstructed,
                "orbit_counts": report.orbit_counts.to_vec(),
                "scenarios_verified": report.scenarios_verified,
            }))
        }
        Command::Kappa(a) => {
            let report = search::kappa(a.d)?;
            Ok(json!({
                "classes_checked": report.classes_checked,
                "d": report.d,
                "kappa": report.kappa,
                "witness": clutter_json(&report.witness),
            }))
        }
        Command::Catalog(a) => match a.name {
            None => Ok(json!({ "names": catalog_names() })),
            Some(name) => {
                let entry = by_name(&name).ok_or_else(|| {
                    Error::Malformed(format!("unknown catalog name {name:?}"))
                })?;
                Ok(match entry {
                    CatalogEntry::Clutter(c) => json!({
                        "kind": "clutter",
                        "name": name,
                        "value": clutter_json(&c),
                    }),
                    CatalogEntry::Ideal(i) => json!({
                        "kind": "ideal",
                        "name": name,
                        "value": ideal_json(&i),
                    }),
                })
            }
        },
    }
}

fn powered(ideal: MonomialIdeal, k: u32) -> Result<MonomialIdeal, Error> {
    match k {
        0 => Err(Error::Malformed("--power wants at least 1".into())),
        1 => Ok(ideal),
        _ => Ok(ideal.power(k)),
    }
}

fn read_entry(input: &Option<PathBuf>, name: &Option<String>) -> Result<CatalogEntry, Error> {
    match (input, name) {
        (None, None) => Err(Error::Malformed(
            "supply a JSON input file or --name".into(),
        )),
        (None, Some(n)) => by_name(n).ok_or_else(|| {
            Error::Malformed(format!(
                "unknown catalog name {n:?}; the catalog subcommand lists names"
            ))
        }),
        (Some(path), _) => {
            let text = if path == Path::new("-") {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Error::Malformed(format!("reading standard input: {e}")))?;
                buf
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| Error::Malformed(format!("reading {}: {e}", path.display())))?
            };
            parse_entry(&text)
        }
    }
}

/// Detects the input shape: a clutter has "circuits", an ideal has
/// "generators". An object with both or neither is rejected.
fn parse_entry(text: &str) -> Result<CatalogEntry, Error> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Malformed(format!("invalid JSON: {e}")))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Malformed("expected a JSON object".into()))?;
    match (obj.contains_key("circuits"), obj.contains_key("generators")) {
        (true, true) => Err(Error::Malformed(
            "ambiguous input: both \"circuits\" and \"generators\" present".into(),
        )),
        (false, false) => Err(Error::Malformed(
            "input wants either \"circuits\" (clutter) or \"generators\" (ideal)".into(),
        )),
        (true, false) => Clutter::from_json_str(text).map(CatalogEntry::Clutter),
        (false, true) => {
            let (ideal, minimal) = MonomialIdeal::from_json_str(text)?;
            if !minimal {
                eprintln!("warning: generator list was not minimal; redundant generators dropped");
            }
            Ok(CatalogEntry::Ideal(ideal))
        }
    }
}

fn as_ideal(entry: CatalogEntry) -> MonomialIdeal {
    match entry {
        CatalogEntry::Clutter(c) => c.edge_ideal(),
        CatalogEntry::Ideal(i) => i,
    }
}

fn as_clutter(entry: CatalogEntry) -> Result<Clutter, Error> {
    match entry {
        CatalogEntry::Clutter(c) => Ok(c),
        CatalogEntry::Ideal(i) => {
            if !i.is_squarefree() {
                return Err(Error::Malformed(
                    "clutter commands want a square-free ideal".into(),
                ));
            }
            let d = i.equigenerated_degree()? as usize;
            let circuits: Vec<u64> = i.generators().iter().map(Monomial::support_mask).collect();
            Clutter::new(i.nvars(), d, circuits)
        }
    }
}

fn clutter_json(c: &Clutter) -> Value {
    json!({
        "circuits": c.vertex_lists(),
        "d": c.d(),
        "n": c.n(),
    })
}

fn ideal_json(i: &MonomialIdeal) -> Value {
    json!({
        "generators": i
            .generators()
            .iter()
            .map(|g| g.exponents().to_vec())
            .collect::<Vec<_>>(),
        "vars": i.nvars(),
    })
}

fn witness_json(witness: Option<PairWitness>) -> Value {
    match witness {
        None => Value::Null,
        Some(w) => json!({
            "path": w.path.map(|p| {
                p.iter()
                    .map(|m| m.exponents().to_vec())
                    .collect::<Vec<_>>()
            }),
            "u": w.u.exponents(),
            "v": w.v.exponents(),
        }),
    }
}
