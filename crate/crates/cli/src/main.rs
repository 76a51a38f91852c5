use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use braidforms::front::{
    closure_pos_braid, closure_two_perms, render_svg, ruling_polynomial, validate_and_orient, FrontDiagram,
};
use braidforms::inner::{configured_max_n, expand_in_neg_basis, gram, inner_words, mfw_sharp, Basis};
use braidforms::selfcheck::{run_all, Level, DEFAULT_SEED};
use braidforms::skein::{braid_closure_pd, skein_homfly};
use braidforms::trace::{extremal_column, framed_homfly, homfly_p, ocneanu_trace};
use braidforms::{BraidWord, Error, LaurentPoly2, Permutation, Side};

#[derive(Parser)]
#[command(name = "braidforms", version, about = "Hecke algebra inner products, Homfly polynomials and front rulings")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct BraidArgs {
    /// Signed letters separated by spaces, e.g. "1 -2 1"
    #[arg(long, allow_hyphen_values = true)]
    braid: String,
    #[arg(long)]
    strands: usize,
}

#[derive(Args)]
struct FrontArgs {
    /// Event word, e.g. "B1 B2 X3 D2 D1"
    #[arg(long)]
    front: String,
    /// Per-component flags (1 keeps the default orientation, 0 reverses it)
    #[arg(long)]
    orientation: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Homfly polynomial P(v, z) of the braid closure
    Homfly(BraidArgs),
    /// Framed Homfly polynomial H(v, z)
    FramedHomfly(BraidArgs),
    /// Ocneanu trace in Z[z, T]
    Trace(BraidArgs),
    /// Extremal columns of the framed Homfly polynomial and its v-range
    Mfw(BraidArgs),
    /// Homfly polynomial from the skein relation on the closure diagram
    OracleHomfly(BraidArgs),
    /// Left or right inner product of two braids
    Inner {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        strands: usize,
        #[arg(long, default_value = "L")]
        side: String,
    },
    /// Gram matrix of a permutation-braid basis
    Gram {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "neg")]
        basis: String,
        #[arg(long, default_value = "L")]
        side: String,
    },
    /// Coefficients of a braid in the negative permutation-braid basis
    Expand(BraidArgs),
    /// Whether the lower/upper MFW estimates are attained
    MfwSharp {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long)]
        side: Option<String>,
    },
    /// Build a front: `nn --pi P --kappa K` or `pos --braid B --strands N --pi P`
    FrontBuild {
        #[command(subcommand)]
        kind: FrontKind,
    },
    /// Oriented rulings and the ruling polynomial of a front
    FrontRuling(FrontArgs),
    /// Cusps, writhe, Thurston-Bennequin number and crossing signs
    FrontStats(FrontArgs),
    /// Render a front as SVG
    FrontSvg {
        #[command(flatten)]
        front: FrontArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the theorem suite
    Selfcheck {
        #[arg(long, default_value = "quick")]
        level: String,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Include wall-clock times (output then differs between runs)
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Subcommand)]
enum FrontKind {
    /// Closure of two negative permutation braids
    Nn {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        kappa: String,
    },
    /// A positive braid followed by a negative permutation braid
    Pos {
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: usize,
        #[arg(long)]
        pi: String,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    SelfcheckFailed,
}

struct Output {
    text: String,
    json: Value,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn compute(e: impl std::fmt::Display) -> Failure {
    Failure::Compute(e.to_string())
}

fn parse_braid(text: &str, strands: usize) -> Result<BraidWord, Failure> {
    BraidWord::parse(text, strands).map_err(usage)
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    text.parse().map_err(usage)
}

fn parse_side(text: &str) -> Result<Side, Failure> {
    text.parse().map_err(usage)
}

fn parse_front(args: &FrontArgs) -> Result<FrontDiagram, Failure> {
    let f = FrontDiagram::parse(&args.front).map_err(usage)?;
    match &args.orientation {
        None => Ok(f),
        Some(o) => {
            let flags = o
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| match t {
                    "1" | "+" | "true" => Ok(true),
                    "0" | "-" | "false" => Ok(false),
                    _ => Err(usage(format!("bad orientation flag {t:?}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(FrontDiagram::with_orientation(f.events().to_vec(), flags))
        }
    }
}

fn check_bound(n: usize) -> Result<(), Failure> {
    let max = configured_max_n();
    if n > max {
        return Err(compute(Error::BoundExceeded { n, max }));
    }
    Ok(())
}

fn poly_json(p: &LaurentPoly2) -> Value {
    json!({ "text": p.to_string(), "value": p })
}

fn braid_json(w: &BraidWord) -> Value {
    json!({ "letters": w.letters(), "strands": w.n() })
}

fn polynomial_output(command: &str, w: &BraidWord, p: &LaurentPoly2) -> Output {
    Output {
        text: p.to_string(),
        json: json!({ "command": command, "braid": braid_json(w), "polynomial": poly_json(p) }),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Homfly(a) => {
            let w = parse_braid(&a.braid, a.strands)?;
            Ok(polynomial_output("homfly", &w, &homfly_p(&w)))
        }
        Command::OracleHomfly(a) => {
            let w = parse_braid(&a.braid, a.strands)?;
            let p = skein_homfly(&braid_closure_pd(&w)).map_err(compute)?;
            Ok(polynomial_output("oracle-homfly", &w, &p))
        }
        Command::FramedHomfly(a) => {
            let w = parse_braid(&a.braid, a.strands)?;
            Ok(polynomial_output("framed-homfly", &w, &framed_homfly(&w).value))
        }
        Command::Trace(a) => {
            let w = parse_braid(&a.braid, a.strands)?;
            let tr = ocneanu_trace(&braidforms::HeckeElement::from_braid(&w));
            Ok(polynomial_output("trace", &w, &tr.value))
        }
        Command::Mfw(a) => {
            let w = parse_braid(&a.braid, a.strands)?;
            let h = framed_homfly(&w).value;
            let v = braidforms::Var::V;
            let range = (h.min_exponent(v), h.max_exponent(v));
            let lower = extremal_column(&w, Side::Left);
            let upper = extremal_column(&w, Side::Right);
            let n = w.n() as i32;
            let range_text = match range {
                (Some(lo), Some(hi)) => format!("[{lo}, {hi}]"),
                _ => "empty".into(),
            };
            Ok(Output {
                text: format!(
                    "window: [{}, {}]\nv-range: {range_text}\nlower column: {lower}\nupper column: {upper}",
                    1 - n,
                    n - 1
                ),
                json: json!({
                    "command": "mfw",
                    "braid": braid_json(&w),
                    "window": [1 - n, n - 1],
                    "v_range": match range { (Some(lo), Some(hi)) => json!([lo, hi]), _ => Value::Null },
                    "lower_column": poly_json(&lower),
                    "upper_column": poly_json(&upper),
                }),
            })
        }
        Command::Inner { a, b, strands, side } => {
            let (a, b) = (parse_braid(a, *strands)?, parse_braid(b, *strands)?);
            let side = parse_side(side)?;
            let value = inner_words(&a, &b, side).map_err(compute)?;
            Ok(Output {
                text: value.to_string(),
                json: json!({
                    "command": "inner",
                    "a": braid_json(&a),
                    "b": braid_json(&b),
                    "side": side,
                    "value": poly_json(value.poly()),
                }),
            })
        }
        Command::Gram { n, basis, side } => {
            let basis: Basis = basis.parse().map_err(usage)?;
            let side = parse_side(side)?;
            let g = gram(*n, basis, side).map_err(compute)?;
            let mut text = String::new();
            for (pi, row) in g.perms.iter().zip(&g.matrix) {
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                text.push_str(&format!("{pi}: {}\n", cells.join(", ")));
            }
            text.pop();
            let matrix: Vec<Vec<Value>> =
                g.matrix.iter().map(|row| row.iter().map(|x| poly_json(x.poly())).collect()).collect();
            Ok(Output {
                text,
                json: json!({
                    "command": "gram",
                    "n": g.n,
                    "basis": g.basis,
                    "side": g.side,
                    "perms": g.perms,
                    "matrix": matrix,
                    "identity": g.is_identity(),
                }),
            })
        }
        Command::Expand(a) => {
            let w = parse_braid(&a.braid, a.strands)?;
            check_bound(w.n())?;
            let coeffs = expand_in_neg_basis(&braidforms::HeckeElement::from_braid(&w));
            let text = coeffs.iter().map(|(pi, c)| format!("{pi}: {c}")).collect::<Vec<_>>().join("\n");
            let terms: Vec<Value> =
                coeffs.iter().map(|(pi, c)| json!({ "perm": pi, "coeff": poly_json(c.poly()) })).collect();
            Ok(Output { text, json: json!({ "command": "expand", "braid": braid_json(&w), "terms": terms }) })
        }
        Command::MfwSharp { braid, side } => {
            let w = parse_braid(&braid.braid, braid.strands)?;
            let sides = match side {
                Some(s) => vec![parse_side(s)?],
                None => vec![Side::Left, Side::Right],
            };
            let results: Vec<(Side, bool)> = sides.into_iter().map(|s| (s, mfw_sharp(&w, s))).collect();
            let text = results
                .iter()
                .map(|(s, sharp)| {
                    let name = if *s == Side::Left { "lower" } else { "upper" };
                    format!("{name}: {}", if *sharp { "sharp" } else { "not sharp" })
                })
                .collect::<Vec<_>>()
                .join("\n");
            let mut obj = json!({ "command": "mfw-sharp", "braid": braid_json(&w) });
            for (s, sharp) in results {
                obj[if s == Side::Left { "lower" } else { "upper" }] = json!(sharp);
            }
            Ok(Output { text, json: obj })
        }
        Command::FrontBuild { kind } => {
            let f = match kind {
                FrontKind::Nn { pi, kappa } => {
                    closure_two_perms(&parse_perm(pi)?, &parse_perm(kappa)?).map_err(usage)?
                }
                FrontKind::Pos { braid, strands, pi } => {
                    closure_pos_braid(&parse_braid(braid, *strands)?, &parse_perm(pi)?).map_err(usage)?
                }
            };
            let events: Vec<String> = f.events().iter().map(ToString::to_string).collect();
            Ok(Output { text: f.to_string(), json: json!({ "command": "front-build", "front": f.to_string(), "events": events }) })
        }
        Command::FrontRuling(a) => {
            let f = parse_front(a)?;
            let rs = ruling_polynomial(&f).map_err(compute)?;
            Ok(Output {
                text: rs.polynomial.to_string(),
                json: json!({
                    "command": "front-ruling",
                    "front": f.to_string(),
                    "polynomial": poly_json(&rs.polynomial),
                    "rulings": rs.rulings,
                }),
            })
        }
        Command::FrontStats(a) => {
            let f = parse_front(a)?;
            let st = validate_and_orient(&f).map_err(compute)?;
            let signs: Vec<&str> = st.crossing_signs.iter().map(|&s| if s > 0 { "+" } else { "-" }).collect();
            Ok(Output {
                text: format!(
                    "components: {}\ncusps: {}\nwrithe: {}\ntb: {}\ncrossing signs: {}",
                    st.components,
                    st.cusps,
                    st.writhe,
                    st.tb,
                    signs.join(" ")
                ),
                json: json!({
                    "command": "front-stats",
                    "front": f.to_string(),
                    "components": st.components,
                    "cusps": st.cusps,
                    "writhe": st.writhe,
                    "tb": st.tb,
                    "crossing_signs": st.crossing_signs,
                }),
            })
        }
        Command::FrontSvg { front, out } => {
            let f = parse_front(front)?;
            let svg = render_svg(&f).map_err(compute)?;
            match out {
                None => Ok(Output { text: svg.trim_end().to_string(), json: json!({ "command": "front-svg", "svg": svg }) }),
                Some(path) => {
                    std::fs::write(path, &svg).map_err(|e| compute(format!("{}: {e}", path.display())))?;
                    Ok(Output {
                        text: format!("wrote {}", path.display()),
                        json: json!({ "command": "front-svg", "path": path.display().to_string(), "bytes": svg.len() }),
                    })
                }
            }
        }
        Command::Selfcheck { level, seed, timings } => {
            let level: Level = level.parse().map_err(usage)?;
            let reports = run_all(level, *seed);
            let ok = reports.iter().filter(|r| r.passed && r.within_budget()).count();
            let passed = ok == reports.len();
            let mut text: Vec<String> = reports
                .iter()
                .map(|r| if *timings { format!("{r} ({})", r.timing()) } else { r.to_string() })
                .collect();
            let reports: Vec<Value> = reports
                .iter()
                .map(|r| {
                    let mut v = json!(r);
                    if !timings {
                        v["elapsed_ms"] = Value::Null;
                    }
                    v
                })
                .collect();
            text.push(format!("{ok} of {} criteria passed", reports.len()));
            let out = Output {
                text: text.join("\n"),
                json: json!({ "command": "selfcheck", "level": level, "seed": seed, "passed": passed, "reports": reports }),
            };
            if passed {
                Ok(out)
            } else {
                emit(&cli.format, &out);
                Err(Failure::SelfcheckFailed)
            }
        }
    }
}

fn emit(format: &Format, out: &Output) {
    match format {
        Format::Text => println!("{}", out.text),
        Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(&cli.format, &out);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::SelfcheckFailed) => ExitCode::from(3),
    }
}
