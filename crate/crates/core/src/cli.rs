//! Command-line front end. Every subcommand formats a library result; none
//! computes anything of its own.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::census::{self, CensusConfig, CensusReport};
use crate::forms::{equiv, equiv_marked, reduce};
use crate::heuristic;
use crate::lowering::{canonical_g, extract_hu, lower};
use crate::mordell::{form_to_point, MordellPoint};
use crate::{BinaryCubicForm, Error, MarkedForm, Result, Unimodular};

/// Default directory for relative `--out`/`--csv` paths.
pub const OUT_DIR_ENV: &str = "CUBIC_TWIST_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "cubic-twist", version, about = "Integral points on y^2 = x^3 + kB^2 via binary cubic forms")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy)]
struct Point(i128, i128);

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let bad = || format!("expected x,y but got {s:?}");
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    Ok(Point(
        x.trim().parse().map_err(|_| bad())?,
        y.trim().parse().map_err(|_| bad())?,
    ))
}

fn parse_form(s: &str) -> std::result::Result<BinaryCubicForm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
struct FormArg {
    /// Form as [a,b,c,d].
    #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
    form: BinaryCubicForm,
}

#[derive(Debug, Args)]
struct CurveArgs {
    #[arg(long = "k", allow_hyphen_values = true)]
    k: i64,
    #[arg(long = "B")]
    b: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Seminvariants a, H, U and the discriminant.
    Invariants(FormArg),
    /// Hessian covariant (b^2-ac, bc-ad, c^2-bd).
    Hessian(FormArg),
    /// Reduced representative and the matrix reaching it.
    Reduce(FormArg),
    /// Search for a GL2(Z) matrix taking the first form to the second.
    Equiv {
        #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
        form1: BinaryCubicForm,
        #[arg(long, value_parser = parse_form, allow_hyphen_values = true)]
        form2: BinaryCubicForm,
        /// Marked point for form1; requires --point2.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires = "point2")]
        point1: Option<Point>,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires = "point1")]
        point2: Option<Point>,
        #[arg(long, default_value_t = 6)]
        radius: usize,
    },
    /// Point -> form (with --point and --B) or form -> point (with --form).
    Correspond {
        #[arg(long = "k", allow_hyphen_values = true)]
        k: i64,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true, requires = "b", conflicts_with = "form")]
        point: Option<Point>,
        #[arg(long = "B")]
        b: Option<u64>,
        #[arg(long, value_parser = parse_form, allow_hyphen_values = true, required_unless_present = "point")]
        form: Option<BinaryCubicForm>,
    },
    /// Discriminant-lowered form F_P.
    Lower {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
        /// Divisor of B coprime to x; defaults to B / g.
        #[arg(long = "M")]
        m: Option<u64>,
    },
    /// Split H = h g0, U/2 = u g0 and check u^2 - k g1^2 a^2 = g0 h^3.
    ExtractHu {
        #[command(flatten)]
        form: FormArg,
        #[arg(long = "k", allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        g0: u64,
        #[arg(long)]
        g1: u64,
    },
    /// Integral points on one curve with x <= x-bound.
    Enumerate {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long = "x-bound")]
        x_bound: i128,
    },
    /// Census over B in b-start..=N; writes JSONL and optionally CSV.
    Census {
        #[arg(long = "k", allow_hyphen_values = true)]
        k: i64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long = "x-bound")]
        x_bound: i128,
        /// First B of this shard.
        #[arg(long = "b-start", default_value_t = 1)]
        b_start: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Merge census shard files into one.
    Merge {
        #[arg(required = true)]
        shards: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// #{B <= N : cube-full part of B >= K}.
    CubefullCount {
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "K")]
        big_k: u64,
    },
    /// Reducible forms x(x^2 + 3bxy + 3cy^2) of discriminant -4kB^2, B <= N.
    ReducibleCensus {
        #[arg(long = "k", allow_hyphen_values = true)]
        k: i64,
        #[arg(long = "N")]
        n: u64,
    },
    /// #{B <= N : B equals its m-part}.
    MCount {
        #[arg(long = "k", allow_hyphen_values = true)]
        k: i64,
        #[arg(long = "N")]
        n: u32,
    },
    /// Predicted point count 3|k|^(5/6) N^(2/3) * constant.
    Heuristic {
        #[arg(long = "k", allow_hyphen_values = true)]
        k: i64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code: 0 on success, 1 on usage errors, 2 on computation errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                1
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn num(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn form_json(f: &BinaryCubicForm) -> Value {
    Value::Array(f.coefficients().into_iter().map(num).collect())
}

fn matrix_json(g: &Unimodular) -> Value {
    let [[a, b], [c, d]] = g.entries();
    json!([[num(a), num(b)], [num(c), num(d)]])
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn emit(out: &mut dyn Write, json_mode: bool, value: Value, text: String) -> Result<()> {
    if json_mode {
        writeln!(out, "{value}")?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

fn summary_text(r: &CensusReport) -> String {
    format!(
        "k={} B={}..={} x_bound={} curve_count={} point_sum={} point_sum_cubefree={}",
        r.k, r.b_start, r.n, r.x_bound, r.curve_count, r.point_sum, r.point_sum_cubefree
    )
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let js = cli.json;
    match &cli.command {
        Command::Invariants(FormArg { form }) => {
            let s = form.seminvariants();
            emit(
                out,
                js,
                json!({"a": num(&s.a), "H": num(&s.h), "U": num(&s.u), "Delta": num(&s.delta)}),
                format!("a={} H={} U={} Delta={}", s.a, s.h, s.u, s.delta),
            )
        }
        Command::Hessian(FormArg { form }) => {
            let q = form.hessian();
            emit(out, js, json!({"hessian": [num(&q.p), num(&q.q), num(&q.r)]}), q.to_string())
        }
        Command::Reduce(FormArg { form }) => {
            let (red, g) = reduce(form)?;
            emit(
                out,
                js,
                json!({"form": form_json(&red), "gamma": matrix_json(&g)}),
                format!("form {red} gamma {g}"),
            )
        }
        Command::Equiv {
            form1,
            form2,
            point1,
            point2,
            radius,
        } => {
            let witness = match (point1, point2) {
                (Some(p), Some(q)) => {
                    let a = MarkedForm::new(form1.clone(), p.0, p.1)?;
                    let b = MarkedForm::new(form2.clone(), q.0, q.1)?;
                    equiv_marked(&a, &b, *radius)?
                }
                _ => equiv(form1, form2, *radius)?,
            };
            match witness {
                Some(g) => emit(
                    out,
                    js,
                    json!({"equivalent": true, "gamma": matrix_json(&g)}),
                    format!("equivalent gamma {g}"),
                ),
                None => emit(
                    out,
                    js,
                    json!({"equivalent": false, "radius": radius}),
                    format!("no equivalence found within radius {radius}"),
                ),
            }
        }
        Command::Correspond { k, point, b, form } => match (point, b, form) {
            (Some(p), Some(b), _) => {
                let f = MordellPoint::new(*k, *b, p.0, p.1)?.form();
                emit(
                    out,
                    js,
                    json!({"form": form_json(&f), "Delta": num(&f.discriminant())}),
                    format!("form {f} Delta={}", f.discriminant()),
                )
            }
            (_, _, Some(f)) => {
                let p = form_to_point(f, *k)?;
                emit(
                    out,
                    js,
                    json!({"k": p.k, "B": p.b, "point": [p.x, p.y]}),
                    format!("B={} point {},{}", p.b, p.x, p.y),
                )
            }
            _ => unreachable!("clap enforces --point with --B, or --form"),
        },
        Command::Lower { curve, point, m } => {
            let p = MordellPoint::new(curve.k, curve.b, point.0, point.1)?;
            let m = match m {
                Some(m) => *m,
                None => canonical_g(&p)?.1,
            };
            let l = lower(&p, m)?;
            let delta = l.form.discriminant();
            emit(
                out,
                js,
                json!({"M": l.m, "w": num(&l.w), "form": form_json(&l.form), "Delta": num(&delta)}),
                format!("M={} w={} form {} Delta={}", l.m, l.w, l.form, delta),
            )
        }
        Command::ExtractHu { form, k, g0, g1 } => {
            let (h, u) = extract_hu(&form.form, *k, *g0, *g1)?;
            emit(out, js, json!({"h": num(&h), "u": num(&u)}), format!("h={h} u={u}"))
        }
        Command::Enumerate { curve, x_bound } => {
            let pts = census::enumerate_points(curve.k, curve.b, *x_bound)?;
            if js {
                let list: Vec<[i128; 2]> = pts.iter().map(|p| [p.x, p.y]).collect();
                writeln!(out, "{}", json!({"k": curve.k, "B": curve.b, "x_bound": x_bound, "points": list}))?;
            } else {
                for p in &pts {
                    writeln!(out, "{},{}", p.x, p.y)?;
                }
            }
            Ok(())
        }
        Command::Census {
            k,
            n,
            x_bound,
            b_start,
            workers,
            out: path,
            csv,
        } => {
            let report = CensusConfig::new(*k, *n, *x_bound)
                .with_range(*b_start, *n)
                .with_workers(*workers)
                .run()?;
            let path = path
                .clone()
                .or_else(|| std::env::var_os(OUT_DIR_ENV).map(|_| format!("census_k{k}_N{n}.jsonl").into()));
            if let Some(path) = path {
                let mut w = BufWriter::new(File::create(resolve(&path))?);
                census::write_jsonl(&report, &mut w)?;
                w.flush()?;
            }
            if let Some(path) = csv {
                census::write_summary_csv(&[report.summary()], File::create(resolve(path))?)?;
            }
            emit(out, js, serde_json::to_value(report.summary())?, summary_text(&report))
        }
        Command::Merge { shards, out: path } => {
            let reports = shards
                .iter()
                .map(|p| census::read_jsonl(BufReader::new(File::open(p)?)))
                .collect::<Result<Vec<_>>>()?;
            let merged = census::merge_shards(reports)?;
            let mut w = BufWriter::new(File::create(resolve(path))?);
            census::write_jsonl(&merged, &mut w)?;
            w.flush()?;
            emit(out, js, serde_json::to_value(merged.summary())?, summary_text(&merged))
        }
        Command::CubefullCount { n, big_k } => {
            let c = census::count_large_cubefull(*n, *big_k);
            emit(out, js, json!({"N": n, "K": big_k, "count": c}), c.to_string())
        }
        Command::ReducibleCensus { k, n } => {
            let triples = census::reducible_census(*k, *n)?;
            if js {
                writeln!(out, "{}", json!({"k": k, "N": n, "triples": triples}))?;
            } else {
                for t in &triples {
                    writeln!(out, "b={} c={} B={}", t.b, t.c, t.big_b)?;
                }
            }
            Ok(())
        }
        Command::MCount { k, n } => {
            if *k == 0 {
                return Err(Error::ZeroK);
            }
            let c = census::count_m_integers(*k, *n);
            emit(out, js, json!({"k": k, "N": n, "count": c}), c.to_string())
        }
        Command::Heuristic { k, n, tol } => {
            let p = heuristic::predicted_sum(*k, *n, *tol)?;
            emit(
                out,
                js,
                serde_json::to_value(p)?,
                format!("constant={:.10} predicted={:.4}", p.constant, p.predicted),
            )
        }
    }
}
