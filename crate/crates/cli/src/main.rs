use std::fmt::Write as _;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dcm_core::compat::neighbors;
use dcm_core::families::FamilyIndex;
use dcm_core::formulas::{
    big_component_order, catalan, count_dbd, count_edb_components, count_i, count_pairs,
    edge_series, fuss_series,
};
use dcm_core::graph::{build_graph_with, census_csv, BuildOptions, DEFAULT_MAX_K};
use dcm_core::verify::{verify_range, VerifyOptions};
use dcm_core::{enumerate_matchings, to_dual_tree, Error, Matching};
use serde_json::json;

/// Largest size `verify --quick` builds a graph for.
const QUICK_CAP: usize = 8;

#[derive(Parser)]
#[command(name = "dcm", version, about = "Disjoint compatibility graphs of non-crossing perfect matchings")]
struct Cli {
    /// Worker threads for graph builds (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Refuse graph builds whose estimated footprint exceeds this many MB
    #[arg(long, global = true, value_name = "MB")]
    memory_cap: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List all non-crossing perfect matchings of size k
    Enumerate {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the matchings disjoint compatible with a matching
    Neighbors {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        matching: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Name the special family of a matching
    Classify {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        matching: String,
        /// Also print the dual tree as JSON
        #[arg(long)]
        dump_dual: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Component census of DCM_k
    Components {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Export DCM_k
    Graph {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Exact series coefficients as CSV
    Series {
        /// Edge counts d_0..d_N of DCM_k
        #[arg(long, conflicts_with = "fuss", required_unless_present = "fuss")]
        edges: bool,
        /// Coefficients of g = 1 + x g^4
        #[arg(long)]
        fuss: bool,
        #[arg(long, default_value_t = 12)]
        terms: usize,
    },
    /// Component counts and orders from the closed forms
    Counts {
        #[arg(long, value_name = "A..B")]
        k_range: String,
    },
    /// Exhaustive checks over a range of sizes; prints a JSON summary
    Verify {
        #[arg(long, value_name = "A..B")]
        k_range: String,
        /// Skip graph builds above k = 8
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
    Dot,
}

enum Failure {
    Usage(String),
    Resource(String),
    Io(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceBound { .. } | Error::MemoryCap { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Run = Result<(), Failure>;

fn max_k() -> Result<usize, Failure> {
    match std::env::var("DCM_MAX_K") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("DCM_MAX_K is not a number: {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_K),
    }
}

fn check_k(k: usize, max: usize) -> Result<(), Failure> {
    if k == 0 {
        return Err(Failure::Usage("k must be at least 1".into()));
    }
    if k > max {
        return Err(Failure::Resource(Error::ResourceBound { k, max }.to_string()));
    }
    Ok(())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Usage(format!("expected a range A..B, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn format_guard(format: Format, allowed: &[Format], what: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("unsupported format for {what}")))
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Run {
    let max = max_k()?;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let build = BuildOptions {
        max_k: max,
        memory_cap_mb: cli.memory_cap,
    };
    match cli.command {
        Command::Enumerate { k, format } => {
            check_k(k, max)?;
            format_guard(format, &[Format::Text, Format::Csv, Format::Json], "enumerate")?;
            let all = enumerate_matchings(k);
            match format {
                Format::Json => {
                    let names: Vec<String> = all.iter().map(ToString::to_string).collect();
                    writeln!(out, "{}", json!(names))?;
                }
                Format::Csv => {
                    writeln!(out, "index,matching")?;
                    for (i, m) in all.iter().enumerate() {
                        writeln!(out, "{i},\"{m}\"")?;
                    }
                }
                _ => {
                    for m in &all {
                        writeln!(out, "{m}")?;
                    }
                }
            }
        }
        Command::Neighbors { k, matching, format } => {
            check_k(k, max)?;
            format_guard(format, &[Format::Text, Format::Json], "neighbors")?;
            let m = Matching::parse_with_k(&matching, k)?;
            let ns: Vec<String> = neighbors(&m).iter().map(ToString::to_string).collect();
            if format == Format::Json {
                writeln!(out, "{}", json!({ "matching": m.to_string(), "neighbors": ns }))?;
            } else {
                for n in ns {
                    writeln!(out, "{n}")?;
                }
            }
        }
        Command::Classify { k, matching, dump_dual, format } => {
            check_k(k, max)?;
            format_guard(format, &[Format::Text, Format::Json], "classify")?;
            let m = Matching::parse_with_k(&matching, k)?;
            let c = FamilyIndex::new(k).classify(&m)?;
            if format == Format::Json {
                let mut v = json!({ "matching": m.to_string(), "class": c.class.name(), "witness": c.witness });
                if dump_dual {
                    v["dual_tree"] = json!(to_dual_tree(&m));
                }
                writeln!(out, "{v}")?;
            } else {
                match &c.witness {
                    Some(w) => writeln!(out, "{} {w}", c.class)?,
                    None => writeln!(out, "{}", c.class)?,
                }
                if dump_dual {
                    writeln!(out, "{}", json!(to_dual_tree(&m)))?;
                }
            }
        }
        Command::Components { k, format } => {
            check_k(k, max)?;
            format_guard(format, &[Format::Text, Format::Csv, Format::Json], "components")?;
            let g = build_graph_with(k, &build)?;
            let comps = g.components();
            let reports = g.component_reports(&comps, &FamilyIndex::new(k))?;
            match format {
                Format::Csv => write!(out, "{}", census_csv(k, &reports))?,
                Format::Json => {
                    let iso = g.isomorphism_classes(&comps);
                    writeln!(
                        out,
                        "{}",
                        json!({ "k": k, "components": reports, "isomorphism_classes": iso })
                    )?;
                }
                _ => {
                    let mut by_order: std::collections::BTreeMap<usize, (usize, &str)> = Default::default();
                    for r in &reports {
                        by_order.entry(r.order).or_insert((0, r.class.name())).0 += 1;
                    }
                    let mut s = format!("DCM_{k}: {} vertices, {} edges\n", g.num_vertices(), g.edge_count);
                    for (order, (n, class)) in by_order {
                        let _ = writeln!(s, "{n} component(s) of order {order} ({class})");
                    }
                    write!(out, "{s}")?;
                }
            }
        }
        Command::Graph { k, out: path, format } => {
            check_k(k, max)?;
            format_guard(format, &[Format::Dot, Format::Json], "graph")?;
            let g = build_graph_with(k, &build)?;
            let body = if format == Format::Json { g.to_json() + "\n" } else { g.to_dot() };
            std::fs::write(&path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        }
        Command::Series { edges, fuss: _, terms } => {
            let (header, table) = if edges {
                ("k,d_k", edge_series(terms))
            } else {
                ("l,a_l", fuss_series(terms))
            };
            writeln!(out, "{header}")?;
            for (i, c) in table.coefficients.iter().enumerate() {
                writeln!(out, "{i},{c}")?;
            }
        }
        Command::Counts { k_range } => {
            writeln!(out, "k,l,vertices,small_components,small_order,medium_components,medium_order,big_order")?;
            for k in parse_range(&k_range)? {
                let l = k.div_ceil(2) as u64;
                let (small, small_order, medium, medium_order) = if k % 2 == 1 {
                    let medium = match l {
                        1 => String::new(),
                        2 => "1".into(),
                        _ => count_dbd(l)?.to_string(),
                    };
                    let order = if k >= 3 { l.to_string() } else { String::new() };
                    (count_i(l)?.to_string(), "1", medium, order)
                } else {
                    let medium = match l {
                        1 => String::new(),
                        2 => "1".into(),
                        _ => count_edb_components(l)?.to_string(),
                    };
                    let order = if k >= 4 { (6 * l - 6).to_string() } else { String::new() };
                    (count_pairs(l)?.to_string(), "2", medium, order)
                };
                let big = big_component_order(k as u64).map(|v| v.to_string()).unwrap_or_default();
                writeln!(out, "{k},{l},{},{small},{small_order},{medium},{medium_order},{big}", catalan(k as u64))?;
            }
        }
        Command::Verify { k_range, quick } => {
            let range = parse_range(&k_range)?;
            check_k(*range.end(), max)?;
            let opts = VerifyOptions {
                build,
                quick_cap: quick.then_some(QUICK_CAP),
            };
            let report = verify_range(*range.start(), *range.end(), &opts)?;
            writeln!(out, "{}", json!(report))?;
            if !report.passed {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn one_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error code=usage message={}", one_line(first));
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, exit, msg) = match f {
                Failure::Usage(m) => ("usage", 2, m),
                Failure::Resource(m) => ("resource", 3, m),
                Failure::Io(m) if m.contains("Broken pipe") => return ExitCode::SUCCESS,
                Failure::Io(m) => ("io", 3, m),
                Failure::Verification => ("verification", 1, "one or more checks failed".into()),
            };
            let _ = out.flush();
            eprintln!("error code={code} message={}", one_line(&msg));
            ExitCode::from(exit)
        }
    }
}
