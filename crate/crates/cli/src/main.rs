use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clustercat::cluster::{closure_for, mutate_seed, seed_cap, Seed};
use clustercat::export;
use clustercat::tilting::{complements, enumerate_tilting_sets, exchange_graph};
use clustercat::triangle::exchange_triangles;
use clustercat::{
    almost_positive_roots, alternating_orientation, positive_roots, AlmostPositiveRoot, ClusterCategory, DynkinType,
    Error, Orientation,
};

#[derive(Parser)]
#[command(name = "clustercat", version, about = "Cluster categories of Dynkin quivers")]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Quiver {
    /// Dynkin type: A1.., D4.., E6, E7, E8.
    #[arg(long = "type", short = 't')]
    ty: DynkinType,
    /// `alternating`, `linear`, or arrows such as `1>2,3>2`.
    #[arg(long, short = 'o', default_value = "alternating")]
    orientation: String,
}

impl Quiver {
    fn orientation(&self) -> Result<Orientation, Error> {
        match self.orientation.as_str() {
            "alternating" => Ok(alternating_orientation(self.ty).0),
            "linear" => Ok(Orientation::linear(self.ty)),
            s => {
                let arrows = s
                    .split(',')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| {
                        let (a, b) = p
                            .split_once("->")
                            .or_else(|| p.split_once('>'))
                            .ok_or_else(|| Error::InvalidOrientation(format!("cannot read arrow {p:?}")))?;
                        let num = |x: &str| {
                            x.trim()
                                .parse::<usize>()
                                .map_err(|_| Error::InvalidOrientation(format!("bad vertex {x:?}")))
                        };
                        Ok((num(a)?, num(b)?))
                    })
                    .collect::<Result<Vec<_>, Error>>()?;
                Orientation::from_one_based(self.ty, &arrows)
            }
        }
    }

    fn category(&self) -> Result<ClusterCategory, Error> {
        ClusterCategory::new(&self.orientation()?)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Positive (or almost positive) roots.
    Roots {
        #[command(flatten)]
        q: Quiver,
        /// Include the negative simple roots.
        #[arg(long)]
        almost: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// AR-quiver of the module category, or of the cluster category with --cluster.
    ArQuiver {
        #[command(flatten)]
        q: Quiver,
        #[arg(long)]
        cluster: bool,
        /// Draw the translation as dashed edges (dot only).
        #[arg(long)]
        tau: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Indecomposable objects of the cluster category.
    ClusterObjects {
        #[command(flatten)]
        q: Quiver,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// dim Ext^1 between all indecomposables of the cluster category.
    ExtTable {
        #[command(flatten)]
        q: Quiver,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Tilting sets.
    Tilting {
        #[command(subcommand)]
        cmd: TiltingCmd,
    },
    /// The two complements of an almost complete tilting set.
    Complements {
        #[command(flatten)]
        q: Quiver,
        /// Comma-separated labels, e.g. `-1,12`.
        #[arg(long, allow_hyphen_values = true)]
        tbar: String,
    },
    /// Exchange graph of tilting sets.
    ExchangeGraph {
        #[command(flatten)]
        q: Quiver,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Both exchange triangles of an exchange pair.
    Triangle {
        #[command(flatten)]
        q: Quiver,
        /// Two labels separated by `|`, e.g. `12|-3`.
        #[arg(long, allow_hyphen_values = true)]
        pair: String,
    },
    /// Cluster algebra of the quiver.
    Cluster {
        #[command(subcommand)]
        cmd: ClusterCmd,
    },
    /// Run the invariant battery.
    Verify {
        #[command(flatten)]
        q: Quiver,
        /// A suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum TiltingCmd {
    /// Every tilting set, as sorted label arrays
    List {
        #[command(flatten)]
        q: Quiver,
        /// Print only the number of tilting sets.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ClusterCmd {
    /// Mutate the initial seed along a sequence of 1-based indices.
    Mutate {
        #[command(flatten)]
        q: Quiver,
        #[arg(long, value_delimiter = ',')]
        seq: Vec<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// All clusters reachable from the initial seed.
    Enumerate {
        #[command(flatten)]
        q: Quiver,
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn usage(msg: String) -> Result<String, Failure> {
    Err(Failure::Usage(msg))
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn object(cat: &ClusterCategory, label: &str) -> Result<usize, Error> {
    cat.index_of_root(&AlmostPositiveRoot::parse(cat.rank(), label.trim())?)
}

fn run(cmd: Command) -> Result<String, Failure> {
    Ok(match cmd {
        Command::Roots { q, almost, format } => {
            q.orientation()?;
            let roots = if almost { almost_positive_roots(q.ty) } else { positive_roots(q.ty) };
            match format {
                Format::Json => json(&roots),
                Format::Text => roots.iter().map(|r| format!("{}\t{:?}\n", r.label(), r.coeffs)).collect(),
                Format::Dot => return usage("--format dot is not available for roots".into()),
            }
        }
        Command::ArQuiver { q, cluster, tau, format } => {
            let cat = q.category()?;
            match (format, cluster) {
                (Format::Json, true) => json(&export::cluster_quiver_json(&cat)),
                (Format::Json, false) => json(&export::module_quiver_json(cat.module_quiver())),
                (Format::Dot, true) => export::cluster_quiver_dot(&cat, tau),
                (Format::Dot, false) => export::module_quiver_dot(cat.module_quiver(), tau),
                (Format::Text, _) => return usage("ar-quiver supports --format json or dot".into()),
            }
        }
        Command::ClusterObjects { q, format } => {
            let cat = q.category()?;
            let v = export::cluster_quiver_json(&cat).vertices;
            match format {
                Format::Json => json(&v),
                Format::Text => v.iter().map(|x| format!("{}\t{}\t{:?}\n", x.label, x.kind, x.root)).collect(),
                Format::Dot => return usage("--format dot is not available for cluster-objects".into()),
            }
        }
        Command::ExtTable { q, format } => {
            let t = export::ext_table_json(&q.category()?);
            match format {
                Format::Json => json(&t),
                Format::Text => {
                    let w = t.labels.iter().map(String::len).max().unwrap_or(1).max(2);
                    let mut out = format!("{:>w$}", "");
                    for l in &t.labels {
                        out.push_str(&format!(" {l:>w$}"));
                    }
                    out.push('\n');
                    for (l, row) in t.labels.iter().zip(&t.matrix) {
                        out.push_str(&format!("{l:>w$}"));
                        for x in row {
                            out.push_str(&format!(" {x:>w$}"));
                        }
                        out.push('\n');
                    }
                    out
                }
                Format::Dot => return usage("--format dot is not available for ext-table".into()),
            }
        }
        Command::Tilting {
            cmd: TiltingCmd::List { q, count, format },
        } => {
            let cat = q.category()?;
            let sets = enumerate_tilting_sets(&cat)?;
            if count {
                format!("{}\n", sets.len())
            } else {
                let labels = export::tilting_json(&cat, &sets);
                match format {
                    Format::Json => json(&labels),
                    Format::Text => labels.iter().map(|s| format!("{}\n", s.join(" "))).collect(),
                    Format::Dot => return usage("--format dot is not available for tilting list".into()),
                }
            }
        }
        Command::Complements { q, tbar } => {
            let cat = q.category()?;
            let mut set = tbar
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| object(&cat, s))
                .collect::<Result<Vec<_>, _>>()?;
            set.sort_unstable();
            let [a, b] = complements(&cat, &set)?;
            format!("{}\n{}\n", cat.label(a), cat.label(b))
        }
        Command::ExchangeGraph { q, format } => {
            let cat = q.category()?;
            let g = exchange_graph(&enumerate_tilting_sets(&cat)?);
            match format {
                Format::Dot => export::exchange_graph_dot(&cat, &g),
                Format::Json => json(&serde_json::json!({
                    "vertices": export::tilting_json(&cat, &g.vertices),
                    "edges": g.edges,
                })),
                Format::Text => return usage("exchange-graph supports --format dot or json".into()),
            }
        }
        Command::Triangle { q, pair } => {
            let cat = q.category()?;
            let Some((a, b)) = pair.split_once('|') else {
                return usage(format!("--pair expects two labels separated by '|', got {pair:?}"));
            };
            let t = exchange_triangles(&cat, object(&cat, a)?, object(&cat, b)?)?;
            json(&export::triangle_json(&cat, &t))
        }
        Command::Cluster {
            cmd: ClusterCmd::Mutate { q, seq, format },
        } => {
            let mut s = Seed::initial(clustercat::cluster::matrix_from_quiver(&q.orientation()?));
            for &k in &seq {
                if k == 0 || k > q.ty.rank() {
                    return usage(format!("--seq index {k} outside 1..={}", q.ty.rank()));
                }
                s = mutate_seed(&s, k - 1)?;
            }
            match format {
                Format::Text => format!("{s}"),
                Format::Json => json(&serde_json::json!({
                    "variables": s.variables.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "matrix": s.matrix.entries(),
                })),
                Format::Dot => return usage("--format dot is not available for cluster mutate".into()),
            }
        }
        Command::Cluster {
            cmd: ClusterCmd::Enumerate { q, count, format },
        } => {
            let cat = q.category()?;
            let c = closure_for(&cat, seed_cap())?;
            if count {
                format!("{} {}\n", c.clusters.len(), c.variables.len())
            } else {
                let j = export::closure_json(&c);
                match format {
                    Format::Json => json(&j),
                    Format::Text => j
                        .clusters
                        .iter()
                        .map(|cl| format!("{}\n", cl.variables.join(" ; ")))
                        .collect(),
                    Format::Dot => return usage("--format dot is not available for cluster enumerate".into()),
                }
            }
        }
        Command::Verify { q, suite, format } => {
            let cat = q.category()?;
            let res = match clustercat::verify::run(&cat, &suite, seed_cap()) {
                Err(Error::PreconditionViolated(msg)) if msg.starts_with("unknown suite") => return usage(msg),
                r => r?,
            };
            let out = match format {
                Format::Json => json(&res),
                Format::Text => clustercat::verify::format_table(&res),
                Format::Dot => return usage("--format dot is not available for verify".into()),
            };
            if res.iter().all(|r| r.passed) {
                out
            } else {
                print!("{out}");
                return Err(Failure::Domain(Error::PreconditionViolated("verification failed".into())));
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error[{}]: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
