use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use krebes_core::branched::{knot_determinant, krebes_even_cover, krebes_odd_cover, surgery_h1, SurgeryPresentation};
use krebes_core::diagram::{bracket_determinant, LinkDiagram, DEFAULT_CROSSING_LIMIT};
use krebes_core::intlinalg::{smith_normal_form, AbelianGroup, IntMatrix, JsonInt};
use krebes_core::tangle::{
    close_tangle, fixture, load_tangle, scan_closures, AnnulusTangle, ClosureSpec, CoverTorsion, ScanConfig, FIXTURES,
};
use krebes_core::Error;
use serde_json::json;

/// Exit statuses: 0 on success, 1 when a computation rejects its input or
/// two oracles disagree, 2 on usage and parse errors.
#[derive(Parser)]
#[command(name = "krebes", version, about = "Homology obstructions for genus-1 tangles")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Goeritz,
    Bracket,
    Both,
}

#[derive(Subcommand)]
enum Verb {
    /// Smith normal form of an integer matrix, with U and V such that U*M*V = D.
    Snf { matrix: PathBuf },
    /// First homology of a surgery presentation.
    Homology { presentation: PathBuf },
    /// Determinant of a knot given as a PD code (text or JSON).
    Det {
        pd: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Goeritz)]
        method: Method,
        /// Compute both ways and fail if they differ.
        #[arg(long)]
        check_both: bool,
        #[arg(long, default_value_t = DEFAULT_CROSSING_LIMIT)]
        crossing_limit: usize,
    },
    /// Linking number of components `i` and `j` (numbered from 0).
    Lk { pd: PathBuf, i: usize, j: usize },
    /// PD code of the closure of a tangle. A tangle argument is a JSON file
    /// or `builtin:<name>`.
    Close { tangle: String, spec: PathBuf },
    /// Closes a tangle every way within the bounds and checks each closure
    /// against the torsion of the branched covers. The built-in `krebes_A`
    /// uses its known covers unless overridden.
    Scan {
        tangle: String,
        #[arg(long, default_value_t = 2)]
        max_passages: usize,
        #[arg(long, default_value_t = 3)]
        max_path: usize,
        #[arg(long, default_value_t = DEFAULT_CROSSING_LIMIT)]
        crossing_limit: usize,
        /// Presentation of the cover induced by odd closures.
        #[arg(long)]
        odd_cover: Option<PathBuf>,
        /// Presentation of the cover induced by even closures.
        #[arg(long)]
        even_cover: Option<PathBuf>,
    },
    /// Built-in cover presentations with their homology, and built-in tangles.
    Fixtures,
}

enum Failure {
    Usage(String),
    Rejected(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_input_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Rejected(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn tangle_arg(arg: &str) -> Result<AnnulusTangle, Failure> {
    if let Some(name) = arg.strip_prefix("builtin:") {
        return fixture(name).ok_or_else(|| Failure::Usage(format!("no built-in tangle `{name}`")));
    }
    Ok(load_tangle(&read(&PathBuf::from(arg))?)?)
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize") + "\n"
}

fn group_json(g: &AbelianGroup) -> serde_json::Value {
    json!({ "group": g.to_string(), "free_rank": g.free_rank, "torsion": g.torsion.iter().cloned().map(JsonInt).collect::<Vec<_>>() })
}

fn snf(path: &PathBuf, format: Format) -> Outcome {
    let m: IntMatrix = read(path)?.parse()?;
    let r = smith_normal_form(&m)?;
    Ok(match format {
        Format::Json => pretty(&serde_json::to_value(&r).expect("serializes")),
        Format::Text => {
            let d: Vec<String> = r.d.iter().map(ToString::to_string).collect();
            format!("d: {}\nU:\n{}V:\n{}", d.join(" "), r.u, r.v)
        }
    })
}

fn homology(path: &PathBuf, format: Format) -> Outcome {
    let p = SurgeryPresentation::from_json(&read(path)?)?;
    let g = surgery_h1(&p)?;
    Ok(match format {
        Format::Json => pretty(&group_json(&g)),
        Format::Text => format!("{g}\n"),
    })
}

fn det(path: &PathBuf, method: Method, check_both: bool, limit: usize, format: Format) -> Outcome {
    let d = LinkDiagram::parse_any(&read(path)?)?;
    let method = if check_both { Method::Both } else { method };
    let goeritz = || knot_determinant(&d);
    let bracket = || bracket_determinant(&d, limit);
    let (value, extra) = match method {
        Method::Goeritz => (goeritz()?, json!({ "method": "goeritz" })),
        Method::Bracket => (bracket()?, json!({ "method": "bracket" })),
        Method::Both => {
            let (g, b) = (goeritz()?, bracket()?);
            if g != b {
                return Err(Failure::Rejected(format!("determinants disagree: goeritz {g}, bracket {b}")));
            }
            (g, json!({ "method": "both" }))
        }
    };
    Ok(match format {
        Format::Json => {
            let mut v = extra;
            v["determinant"] = serde_json::to_value(JsonInt(value)).expect("serializes");
            pretty(&v)
        }
        Format::Text => format!("{value}\n"),
    })
}

fn lk(path: &PathBuf, i: usize, j: usize, format: Format) -> Outcome {
    let d = LinkDiagram::parse_any(&read(path)?)?;
    let v = d.linking_number(i, j)?;
    Ok(match format {
        Format::Json => pretty(&json!({ "components": [i, j], "linking_number": v })),
        Format::Text => format!("{v}\n"),
    })
}

fn close(tangle: &str, spec: &PathBuf, format: Format) -> Outcome {
    let t = tangle_arg(tangle)?;
    let spec = ClosureSpec::from_json(&read(spec)?)?;
    let d = close_tangle(&t, &spec)?;
    Ok(match format {
        Format::Json => pretty(&serde_json::to_value(d.to_json()).expect("serializes")),
        Format::Text => format!("{}\n", d.to_pd_string()),
    })
}

fn cover(path: &Option<PathBuf>, builtin: Option<SurgeryPresentation>) -> Result<Option<AbelianGroup>, Failure> {
    let p = match path {
        Some(path) => Some(SurgeryPresentation::from_json(&read(path)?)?),
        None => builtin,
    };
    Ok(p.map(|p| surgery_h1(&p)).transpose()?)
}

fn scan(tangle: &str, cfg: ScanConfig, odd: &Option<PathBuf>, even: &Option<PathBuf>, format: Format) -> Outcome {
    let t = tangle_arg(tangle)?;
    let known = tangle == "builtin:krebes_A";
    let torsion = CoverTorsion {
        odd: cover(odd, known.then(krebes_odd_cover))?,
        even: cover(even, if known { krebes_even_cover() } else { None })?,
    };
    let report = scan_closures(&t, &ScanConfig { torsion, ..cfg });
    let s = &report.summary;
    let out = match format {
        Format::Json => report.to_json_lines(),
        Format::Text => {
            let mut out = String::new();
            for r in &report.records {
                let det = r.determinant().map_or_else(|| "-".to_string(), ToString::to_string);
                let verdict = match (&r.obstruction, &r.skipped) {
                    (Some(o), _) => serde_json::to_value(o).expect("serializes").as_str().unwrap_or("").to_string(),
                    (None, Some(why)) => format!("skipped: {why}"),
                    (None, None) => String::new(),
                };
                out.push_str(&format!(
                    "{:>5}  lk {:>3}  {:<4}  crossings {:>3}  det {:>6}  {}\n",
                    r.index,
                    r.lk_with_longitude,
                    serde_json::to_value(r.parity).expect("serializes").as_str().unwrap_or(""),
                    r.crossings,
                    det,
                    verdict
                ));
            }
            out.push_str(&format!(
                "closures {}  evaluated {}  odd {}  even {}  skipped {}  truncated {}  disagreements {}  contradiction {}\n",
                s.closures, s.evaluated, s.odd, s.even, s.skipped, s.truncated, s.oracle_disagreements, s.contradiction
            ));
            out
        }
    };
    if s.oracle_disagreements > 0 || s.contradiction {
        print!("{out}");
        return Err(Failure::Rejected(if s.contradiction {
            "a realized closure is excluded by torsion".into()
        } else {
            "determinant oracles disagree".into()
        }));
    }
    Ok(out)
}

fn fixtures(format: Format) -> Outcome {
    let odd = krebes_odd_cover();
    let odd_h = surgery_h1(&odd)?;
    let even = krebes_even_cover();
    Ok(match format {
        Format::Json => {
            let mut covers = vec![json!({
                "name": "krebes_odd",
                "longitude_image": 1,
                "presentation": serde_json::to_value(&odd).expect("serializes"),
                "homology": group_json(&odd_h),
            })];
            if let Some(p) = &even {
                covers.push(json!({
                    "name": "krebes_even",
                    "longitude_image": 0,
                    "presentation": serde_json::to_value(p).expect("serializes"),
                    "homology": group_json(&surgery_h1(p)?),
                }));
            }
            let tangles: Vec<_> = FIXTURES
                .iter()
                .map(|(name, text)| json!({ "name": name, "tangle": serde_json::from_str::<serde_json::Value>(text).expect("valid") }))
                .collect();
            pretty(&json!({ "covers": covers, "tangles": tangles }))
        }
        Format::Text => {
            let mut out = format!("krebes_odd (longitude -> 1): {odd_h}\n  {}\n", odd.to_json());
            match &even {
                Some(p) => {
                    out.push_str(&format!("krebes_even (longitude -> 0): {}\n  {}\n", surgery_h1(p)?, p.to_json()))
                }
                None => out.push_str("krebes_even (longitude -> 0): no presentation available\n"),
            }
            for (name, text) in FIXTURES {
                out.push_str(&format!("tangle {name}: {text}\n"));
            }
            out
        }
    })
}

fn run(cli: Cli) -> Outcome {
    let f = cli.format;
    match cli.verb {
        Verb::Snf { matrix } => snf(&matrix, f),
        Verb::Homology { presentation } => homology(&presentation, f),
        Verb::Det { pd, method, check_both, crossing_limit } => det(&pd, method, check_both, crossing_limit, f),
        Verb::Lk { pd, i, j } => lk(&pd, i, j, f),
        Verb::Close { tangle, spec } => close(&tangle, &spec, f),
        Verb::Scan { tangle, max_passages, max_path, crossing_limit, odd_cover, even_cover } => {
            let cfg = ScanConfig { max_passages, max_path, crossing_limit, torsion: CoverTorsion::default() };
            scan(&tangle, cfg, &odd_cover, &even_cover, f)
        }
        Verb::Fixtures => fixtures(f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(Failure::Rejected(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
