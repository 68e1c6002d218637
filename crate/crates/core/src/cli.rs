//! The `orchard` command line. [`run`] is the whole program; the binary only
//! forwards its arguments and exit code.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{ensure_generic, Configuration, DEFAULT_RETRIES};
use crate::error::{OrchardError, Result};
use crate::exact::parse_rat;
use crate::family::{c_generic, c_orchard_partition, GeneralizedConfiguration};
use crate::flip::{
    apply_flip, classify_flip, pointed_parity_experiment, random_flip, verify_flip_proposition,
    FlipSpec, ParityExperiment,
};
use crate::projective::{
    default_chart, projective_orchard, spherical_orchard, verify_homological_triviality, Chart,
    HomogeneousConfiguration,
};
use crate::pseudoline::{
    all_digon_counts, desingularize, dualize, pseudoline_orientation, pseudoline_parity_even,
    pseudoline_partition, triangle_move, Smoothing, WiringDiagram,
};
use crate::relation::{orchard_partition, orchard_tree, Method};
use crate::svg::{render_svg, SvgOptions};

#[derive(Debug, Parser)]
#[command(
    name = "orchard",
    version,
    about = "Exact Orchard relations of point configurations"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Retry budget for random constructions.
    #[arg(long, global = true, default_value_t = DEFAULT_RETRIES)]
    pub retries: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a configuration is generic.
    Check { file: PathBuf },
    /// Orchard partition of an affine configuration.
    Partition {
        file: PathBuf,
        #[arg(long, default_value = "anchor", value_parser = parse_method)]
        method: Method,
    },
    /// Recursive Orchard tree.
    Tree { file: PathBuf },
    /// Apply a flip and check how the relation changes.
    Flip(FlipArgs),
    /// Parity experiment for pointed configurations along flip walks.
    Parity(ParityArgs),
    /// Partition of a point set generic for a function family.
    Family { file: PathBuf },
    /// Relation on an antipodal configuration of a sphere.
    Sphere(ChartArgs),
    /// Partition of a projective configuration.
    Projective(ChartArgs),
    /// Immersed complete graph and its triangle cycles.
    Gamma(ChartArgs),
    /// Pseudoline arrangement given by a wiring diagram.
    Wiring(WiringArgs),
    /// Wiring diagram of the lines dual to a planar configuration.
    Dualize { file: PathBuf },
    /// Draw a planar configuration as SVG.
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct FlipArgs {
    pub file: PathBuf,
    /// Comma-separated labels of the flipset.
    #[arg(long, value_delimiter = ',', required_unless_present = "random")]
    pub flipset: Vec<usize>,
    /// The point that moves; must be in the flipset.
    #[arg(long, required_unless_present = "random")]
    pub mover: Option<usize>,
    /// Pick a realizable flip at random instead.
    #[arg(long, conflicts_with_all = ["flipset", "mover"])]
    pub random: bool,
    /// Write the flipped configuration to this file.
    #[arg(long)]
    pub write: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ParityArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    /// Coordinate bound of the random starting configurations.
    #[arg(long, default_value_t = 1000)]
    pub bound: i64,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    pub file: PathBuf,
    /// Covector of the hyperplane at infinity, e.g. "1,0,2".
    #[arg(long)]
    pub chart: Option<String>,
}

#[derive(Debug, Args)]
pub struct WiringArgs {
    pub file: PathBuf,
    /// Include digon counts for every pair.
    #[arg(long)]
    pub digons: bool,
    /// Desingularize along the first compatible orientation.
    #[arg(long, value_parser = parse_smoothing)]
    pub smooth: Option<Smoothing>,
    /// Apply a triangle move at this 0-based position first.
    #[arg(long)]
    pub triangle: Option<usize>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    pub file: PathBuf,
    /// Output path; standard output when omitted.
    pub out: Option<PathBuf>,
    /// Overlay the separating lines of a pair, e.g. "1,3".
    #[arg(long, value_parser = parse_pair)]
    pub pair: Option<(usize, usize)>,
    /// Print point labels.
    #[arg(long)]
    pub labels: bool,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse()
}

fn parse_smoothing(s: &str) -> std::result::Result<Smoothing, String> {
    s.parse()
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected two labels, e.g. 1,3")?;
    let p = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad label `{x}`"))
    };
    Ok((p(a)?, p(b)?))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| OrchardError::Io(format!("{}: {e}", path.display())))
}

fn chart_for(hcfg: &HomogeneousConfiguration, spec: &Option<String>) -> Result<Chart> {
    match spec {
        None => default_chart(hcfg),
        Some(s) => {
            let cov = s
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| parse_rat(t).map_err(OrchardError::InvalidChart))
                .collect::<Result<Vec<_>>>()?;
            let chart = Chart::new(cov);
            chart.validate(hcfg)?;
            Ok(chart)
        }
    }
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Executes one command and returns its JSON report.
pub fn execute(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Check { file } => {
            let cfg = Configuration::parse(&read(file)?)?;
            ensure_generic(&cfg)?;
            Ok(json!({"generic": true, "d": cfg.dim(), "n": cfg.len()}))
        }
        Command::Partition { file, method } => {
            let cfg = Configuration::parse(&read(file)?)?;
            Ok(to_value(orchard_partition(&cfg, *method)?))
        }
        Command::Tree { file } => {
            let cfg = Configuration::parse(&read(file)?)?;
            Ok(to_value(orchard_tree(&cfg)?))
        }
        Command::Flip(args) => flip(cli, args),
        Command::Parity(args) => {
            let exp = ParityExperiment {
                n: args.n,
                d: args.d,
                trials: args.trials,
                steps: args.steps,
                seed: cli.seed,
                bound: args.bound,
            };
            Ok(to_value(pointed_parity_experiment(&exp)?))
        }
        Command::Family { file } => {
            let g = GeneralizedConfiguration::parse(&read(file)?)?;
            let generic = c_generic(&g);
            let partition = if generic {
                to_value(c_orchard_partition(&g)?)
            } else {
                Value::Null
            };
            Ok(json!({
                "family": g.family.name(),
                "k": g.family.source_dim(),
                "d": g.family.sep_dim(),
                "c_generic": generic,
                "partition": partition,
            }))
        }
        Command::Sphere(args) => {
            let h = HomogeneousConfiguration::parse(&read(&args.file)?)?;
            let chart = chart_for(&h, &args.chart)?;
            let p = spherical_orchard(&h, &chart)?;
            Ok(json!({
                "chart": to_value(&chart),
                "antipodes_same_class": p.antipodes_same(),
                "classA": p.class_a,
                "classB": p.class_b,
            }))
        }
        Command::Projective(args) => {
            let h = HomogeneousConfiguration::parse(&read(&args.file)?)?;
            let chart = chart_for(&h, &args.chart)?;
            Ok(to_value(projective_orchard(&h, &chart)?))
        }
        Command::Gamma(args) => {
            let h = HomogeneousConfiguration::parse(&read(&args.file)?)?;
            let chart = chart_for(&h, &args.chart)?;
            let report = verify_homological_triviality(&h, &chart)?;
            let mut v = to_value(report);
            v["chart"] = to_value(&chart);
            Ok(v)
        }
        Command::Wiring(args) => wiring(args),
        Command::Dualize { file } => {
            let cfg = Configuration::parse(&read(file)?)?;
            let dual = dualize(&cfg, cli.seed, cli.retries)?;
            Ok(json!({
                "n": dual.diagram.n(),
                "word": dual.diagram.word(),
                "wire_to_point": dual.wire_to_point,
                "shear": crate::exact::format_rat(&dual.shear),
            }))
        }
        Command::Plot(args) => {
            let cfg = Configuration::parse(&read(&args.file)?)?;
            let partition = orchard_partition(&cfg, Method::AllPairs)?;
            let svg = render_svg(
                &cfg,
                &partition,
                &SvgOptions {
                    pair: args.pair,
                    labels: args.labels,
                },
            )?;
            match &args.out {
                Some(path) => {
                    fs::write(path, &svg)
                        .map_err(|e| OrchardError::Io(format!("{}: {e}", path.display())))?;
                    Ok(json!({"svg": path.display().to_string(), "partition": to_value(partition)}))
                }
                None => Ok(Value::String(svg)),
            }
        }
    }
}

fn flip(cli: &Cli, args: &FlipArgs) -> Result<Value> {
    let cfg = Configuration::parse(&read(&args.file)?)?;
    let res = if args.random {
        random_flip(&cfg, &mut ChaCha8Rng::seed_from_u64(cli.seed))?
    } else {
        let mover = args.mover.expect("clap enforces --mover");
        apply_flip(&cfg, &FlipSpec::new(args.flipset.clone(), mover))?
    };
    let check = verify_flip_proposition(&res)?;
    let kind = classify_flip(&check.before, &res.spec)?;
    if let Some(path) = &args.write {
        fs::write(path, res.after.to_text())
            .map_err(|e| OrchardError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(json!({
        "flipset": res.spec.flipset,
        "mover": res.spec.mover,
        "stop_parameter": crate::exact::format_rat(&res.stop_parameter),
        "after": to_value(&res.after),
        "type": to_value(kind),
        "proposition": {
            "pass": check.pass,
            "pairs_checked": check.pairs_checked,
            "counterexample": check.counterexample,
        },
        "before_partition": to_value(&check.before),
        "after_partition": to_value(&check.after),
    }))
}

fn wiring(args: &WiringArgs) -> Result<Value> {
    let mut wd = WiringDiagram::parse(&read(&args.file)?)?;
    if let Some(pos) = args.triangle {
        wd = triangle_move(&wd, pos)?;
    }
    let mut v = json!({"n": wd.n(), "word": wd.word()});
    if pseudoline_parity_even(wd.n()) {
        if args.smooth.is_some() {
            return Err(OrchardError::UnsupportedParity(format!(
                "C({}, 2) is even for n = {}: there is no compatible orientation to smooth along",
                wd.n() as i64 - 2,
                wd.n()
            )));
        }
        v["partition"] = to_value(pseudoline_partition(&wd)?);
    } else {
        let orientations = pseudoline_orientation(&wd)?;
        if let Some(mode) = args.smooth {
            v["curves"] = to_value(desingularize(&wd, &orientations[0], mode)?);
        }
        v["orientations"] = to_value(orientations.iter().map(|o| &o.forward).collect::<Vec<_>>());
    }
    if args.digons {
        v["digons"] = to_value(all_digon_counts(&wd));
    }
    Ok(v)
}

/// Renders a JSON report as indented `key: value` lines.
pub fn plain(v: &Value) -> String {
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::String(s) => Some(s.clone()),
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => Some(
                a.iter()
                    .map(|x| scalar(x).unwrap_or_default())
                    .collect::<Vec<_>>()
                    .join(" "),
            ),
            Value::Object(_) | Value::Array(_) => None,
            other => Some(other.to_string()),
        }
    }
    fn walk(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(x, indent + 1, out);
                        }
                    }
                }
            }
            Value::Array(a) => {
                for x in a {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            walk(x, indent + 1, out);
                        }
                    }
                }
            }
            other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
        }
    }
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

fn error_value(e: &OrchardError) -> Value {
    let mut err = json!({"code": e.code(), "message": e.to_string()});
    if let OrchardError::NonGeneric { subset } = e {
        err["subset"] = json!(subset);
    }
    json!({ "error": err })
}

/// Runs the command line on `args` (including the program name). Reports
/// go to `out`, usage errors to `err`. Returns the exit code: 0 on success,
/// 1 for errors in the input data, 2 for usage errors.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (value, code) = match execute(&cli) {
        Ok(v) => (v, 0),
        Err(e) => (error_value(&e), 1),
    };
    let text = match (&value, cli.format) {
        (Value::String(svg), _) => svg.clone(),
        (v, Format::Json) => format!("{}\n", serde_json::to_string(v).expect("json")),
        (v, Format::Plain) => plain(v),
    };
    if out.write_all(text.as_bytes()).is_err() {
        return 1;
    }
    code
}
