mod props;
mod report;
mod verify;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use permderiv::convexity::{algorithm1, enumerate_convex, AlgorithmOutcome, First, Last, Replay};
use permderiv::costas::{gamma, jedwab_witness};
use permderiv::dpair::{construct_dpair, inverse_dpair};
use permderiv::perm::{
    from_tree, join_comma, parse_int_list, realize_shift, SumCharacteristic, TreeEdge, WeightedTree,
};
use permderiv::search::{
    count_costas, count_one_costas, enumerate, table, CostasPruner, CountRow, Direction, Mode,
    NoPruning, Objective, OneCostasPruner, Outcome, Pruner, SearchSpec, TableKind,
};
use permderiv::triangle::{DifferenceTriangle, IntSequence, RenderMode};
use permderiv::variation::{
    construct_max_global, construct_maximin_abs, construct_min_local_1costas, delta_star,
    global_variation, local_variation, min_global_1costas, pi_perm, pi_star,
    published_odd_delta_star, published_odd_min_global_1costas,
};
use permderiv::{integrate, is_realizable, sum_characteristic, Permutation};

use props::Property;
use report::{csv_field, render, rows_csv, rows_text, Format, Report};

#[derive(Parser)]
#[command(
    name = "permderiv",
    version,
    about = "Discrete derivatives of permutations, difference triangles and Costas-type searches"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Threads for searches; 0 or 1 runs on the calling thread.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print D(π) for a permutation such as 5,2,7,4,1,6,3.
    Derive { perm: String },
    /// Recover the permutation with a given derivative.
    Integrate {
        #[arg(allow_hyphen_values = true)]
        derivative: String,
    },
    /// Difference triangle of a sequence of distinct integers.
    Triangle {
        #[arg(allow_hyphen_values = true)]
        sequence: String,
        #[arg(long, value_enum, default_value_t = Render::Plain)]
        render: Render,
    },
    /// Test a property; exits 1 when it does not hold.
    Check {
        #[arg(long)]
        property: String,
        #[arg(allow_hyphen_values = true)]
        input: String,
    },
    /// Build one of the extremal or structured permutations.
    Construct {
        #[arg(value_enum)]
        kind: Construction,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        a: Option<i64>,
        #[arg(long)]
        b: Option<i64>,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Reverse, complement, invert or rotate a permutation.
    Transform {
        perm: String,
        #[arg(long, value_enum)]
        op: Transform,
    },
    /// List every permutation of order n with a property, in lexicographic order.
    Enumerate {
        #[arg(long)]
        property: String,
        #[arg(long)]
        n: usize,
    },
    /// Count the permutations of order n with a property.
    Count {
        #[arg(long)]
        property: String,
        #[arg(long)]
        n: usize,
    },
    /// Best value of a variation statistic over permutations of order n.
    Optimize {
        #[arg(long, value_enum)]
        objective: ObjectiveKind,
        #[arg(long, value_enum)]
        direction: DirectionArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "any")]
        property: String,
    },
    /// Count table for n = 1..max-n.
    Table {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        max_n: usize,
    },
    /// Longest Costas subpermutation of order n.
    Gamma {
        #[arg(long)]
        n: usize,
    },
    /// Two segments with equal row and opposite column displacement.
    Jedwab { perm: String },
    /// Derivative statistics of a permutation.
    Stats { perm: String },
    /// Sum-characteristic of an integer sequence.
    SumChar {
        #[arg(allow_hyphen_values = true)]
        derivative: String,
    },
    /// Rebuild a permutation from a weighted spanning tree.
    FromTree {
        #[arg(long)]
        n: usize,
        /// An edge `i,j,w` meaning π_j - π_i = w; repeat for each edge.
        #[arg(long = "edge", allow_hyphen_values = true)]
        edges: Vec<String>,
    },
    /// Fill the columns of a convex matrix one at a time.
    Algorithm1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        start: usize,
        /// Rows to pick for columns 2, 3, ...
        #[arg(long)]
        choices: Option<String>,
        #[arg(long, value_enum, default_value_t = ChooserArg::First)]
        chooser: ChooserArg,
    },
    /// Print the permutation matrix.
    Matrix { perm: String },
    /// Replay the built-in checks.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Render {
    Plain,
    Staggered,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Dpair,
    MinLocal,
    MaxGlobal,
    Maximin,
    Pi,
    PiStar,
    RealizeShift,
}

#[derive(Clone, Copy, ValueEnum)]
enum Transform {
    Reverse,
    Complement,
    Inverse,
    Rotate90,
    Rotate180,
    Rotate270,
    Dihedral,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveKind {
    Global,
    Local,
    MinAbs,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Max,
    Min,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    OneCostas,
    Costas,
    Convex,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChooserArg {
    First,
    Last,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyTarget {
    Figure1,
    Examples,
}

fn perm_arg(s: &str) -> Result<Permutation> {
    s.parse()
        .with_context(|| format!("`{s}` is not a permutation"))
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.with_context(|| format!("missing --{flag}"))
}

fn perm_and_derivative(p: &Permutation) -> String {
    format!("{p}\n{}", p.derivative())
}

fn perm_result(p: &Permutation) -> serde_json::Value {
    json!({ "permutation": p, "derivative": p.derivative() })
}

fn run(cli: &Cli) -> Result<Report> {
    let workers = cli.workers;
    Ok(match &cli.command {
        Command::Derive { perm } => {
            let p = perm_arg(perm)?;
            let d = p.derivative();
            Report::new("derive", json!({ "perm": p }), &d, d.to_string())
        }
        Command::Integrate { derivative } => {
            let z = parse_int_list(derivative)?;
            let p = integrate(&z)?;
            Report::new("integrate", json!({ "derivative": z }), &p, p.to_string())
        }
        Command::Triangle { sequence, render } => {
            let seq: IntSequence = sequence.parse()?;
            let t = DifferenceTriangle::build(&seq);
            let mode = match render {
                Render::Plain => RenderMode::Plain,
                Render::Staggered => RenderMode::Staggered,
            };
            Report::new(
                "triangle",
                json!({ "sequence": seq }),
                json!({ "rows": t.rows(), "repeat_free": t.is_repeat_free() }),
                t.render(mode),
            )
        }
        Command::Check { property, input } => {
            let prop: Property = property.parse()?;
            let holds = prop.check_input(input)?;
            Report::new(
                "check",
                json!({ "property": property, "input": input }),
                json!({ "holds": holds }),
                holds.to_string(),
            )
            .succeeded(holds)
        }
        Command::Construct {
            kind,
            n,
            k,
            a,
            b,
            s,
        } => construct(*kind, *n, *k, *a, *b, *s)?,
        Command::Transform { perm, op } => {
            let p = perm_arg(perm)?;
            let images: Vec<(&str, Permutation)> = match op {
                Transform::Reverse => vec![("reverse", p.reverse())],
                Transform::Complement => vec![("complement", p.complement())],
                Transform::Inverse => vec![("inverse", p.inverse())],
                Transform::Rotate90 => vec![("rotate90", p.rotate90())],
                Transform::Rotate180 => vec![("rotate180", p.rotate90().rotate90())],
                Transform::Rotate270 => vec![("rotate270", p.rotate90().rotate90().rotate90())],
                Transform::Dihedral => {
                    let names = [
                        "identity",
                        "rotate90",
                        "rotate180",
                        "rotate270",
                        "reverse",
                        "rotate90-reverse",
                        "rotate180-reverse",
                        "rotate270-reverse",
                    ];
                    names.into_iter().zip(p.dihedral_images()).collect()
                }
            };
            let text = if images.len() == 1 {
                images[0].1.to_string()
            } else {
                images
                    .iter()
                    .map(|(name, q)| format!("{name}: {q}"))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let result: serde_json::Map<String, serde_json::Value> = images
                .iter()
                .map(|(name, q)| (name.to_string(), json!(q)))
                .collect();
            Report::new("transform", json!({ "perm": p }), result, text)
        }
        Command::Enumerate { property, n } => {
            let prop: Property = property.parse()?;
            let perms = collect(prop, *n, workers)?;
            let text = perms
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n");
            let csv = std::iter::once("permutation".to_string())
                .chain(perms.iter().map(|q| csv_field(&q.to_string())))
                .collect::<Vec<_>>()
                .join("\n");
            Report::new(
                "enumerate",
                json!({ "property": property, "n": n }),
                json!({ "count": perms.len(), "permutations": perms }),
                text,
            )
            .with_csv(csv)
        }
        Command::Count { property, n } => {
            let prop: Property = property.parse()?;
            let row = count(prop, *n, workers)?;
            Report::new(
                "count",
                json!({ "property": property, "n": n }),
                &row,
                rows_text(std::slice::from_ref(&row)),
            )
            .with_csv(rows_csv(std::slice::from_ref(&row)))
        }
        Command::Optimize {
            objective,
            direction,
            n,
            property,
        } => optimize(*objective, *direction, *n, property, workers)?,
        Command::Table { kind, max_n } => {
            let kind = table_kind(*kind);
            let rows = table(kind, *max_n, workers)?;
            Report::new(
                "table",
                json!({ "kind": kind, "max_n": max_n }),
                &rows,
                rows_text(&rows),
            )
            .with_csv(rows_csv(&rows))
        }
        Command::Gamma { n } => {
            let g = gamma(*n)?;
            Report::new(
                "gamma",
                json!({ "n": n }),
                &g,
                format!("{}\n{}", g.m, g.witness),
            )
        }
        Command::Jedwab { perm } => {
            let p = perm_arg(perm)?;
            match jedwab_witness(&p) {
                Some(w) => {
                    let ((r, s), (u, v)) = w.first;
                    let ((a, b), (c, d)) = w.second;
                    let text = format!("({r},{s})-({u},{v}) ({a},{b})-({c},{d})");
                    let report = Report::new(
                        "jedwab",
                        json!({ "perm": p }),
                        json!({ "witness": w, "shares_point": w.shares_point() }),
                        text,
                    );
                    if w.shares_point() {
                        report.with_note("the two segments share an endpoint")
                    } else {
                        report
                    }
                }
                None => Report::new(
                    "jedwab",
                    json!({ "perm": p }),
                    json!({ "witness": null }),
                    "none",
                )
                .succeeded(false),
            }
        }
        Command::Stats { perm } => {
            let p = perm_arg(perm)?;
            let d = p.derivative();
            let sc = SumCharacteristic::of(&p);
            let stats = json!({
                "order": p.order(),
                "derivative": d,
                "local_variation": local_variation(&p),
                "global_variation": global_variation(&p),
                "min_abs": d.min_abs(),
                "descents": p.descent_count(),
                "grassmannian": p.is_grassmannian(),
                "one_costas": d.is_injective(),
                "costas": permderiv::costas::is_costas(&p),
                "convex": permderiv::convexity::is_convex(&p),
                "mid_alternating": permderiv::variation::is_mid_alternating(&p),
                "sum_characteristic": [sc.low(), sc.high()],
            });
            let text = format!(
                "order: {}\nderivative: {}\nlocal variation: {}\nglobal variation: {}\nmin |D|: {}\ndescents: {}\nsum-characteristic: {}..{}",
                p.order(),
                d,
                local_variation(&p),
                global_variation(&p),
                d.min_abs().map_or("-".to_string(), |m| m.to_string()),
                p.descent_count(),
                sc.low(),
                sc.high(),
            );
            Report::new("stats", json!({ "perm": p }), stats, text)
        }
        Command::SumChar { derivative } => {
            let z = parse_int_list(derivative)?;
            let set: Vec<i64> = sum_characteristic(&z).into_iter().collect();
            let realizable = is_realizable(&z);
            Report::new(
                "sum-char",
                json!({ "derivative": z }),
                json!({ "values": set, "realizable": realizable }),
                format!("{}\nrealizable: {realizable}", join_comma(&set)),
            )
        }
        Command::FromTree { n, edges } => {
            let edges = edges
                .iter()
                .map(|e| {
                    let v = parse_int_list(e)?;
                    let [i, j, w] = v[..] else {
                        bail!("edge `{e}` must be i,j,w");
                    };
                    let (i, j) = (usize::try_from(i)?, usize::try_from(j)?);
                    Ok(TreeEdge { i, j, w })
                })
                .collect::<Result<Vec<_>>>()?;
            let tree = WeightedTree::new(*n, edges);
            let p = from_tree(&tree)?;
            Report::new("from-tree", json!(tree), &p, p.to_string())
        }
        Command::Algorithm1 {
            n,
            start,
            choices,
            chooser,
        } => {
            let outcome = match (choices, chooser) {
                (Some(c), _) => {
                    let rows = parse_int_list(c)?
                        .into_iter()
                        .map(usize::try_from)
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .context("choices must be positive rows")?;
                    algorithm1(*n, *start, Replay::new(rows))?
                }
                (None, ChooserArg::First) => algorithm1(*n, *start, First)?,
                (None, ChooserArg::Last) => algorithm1(*n, *start, Last)?,
            };
            let inputs = json!({ "n": n, "start": start, "choices": choices });
            match &outcome {
                AlgorithmOutcome::Completed { permutation } => {
                    Report::new("algorithm1", inputs, &outcome, permutation.to_string())
                }
                AlgorithmOutcome::Failed { state } => Report::new(
                    "algorithm1",
                    inputs,
                    &outcome,
                    format!(
                        "failed after {} columns (rows {})",
                        state.filled(),
                        join_comma(state.rows())
                    ),
                )
                .succeeded(false),
            }
        }
        Command::Matrix { perm } => {
            let p = perm_arg(perm)?;
            let m = p.render_matrix()?;
            Report::new(
                "matrix",
                json!({ "perm": p }),
                json!({ "matrix": m.lines().collect::<Vec<_>>() }),
                m.trim_end(),
            )
        }
        Command::Verify {
            target: VerifyTarget::Examples,
            ..
        } => {
            let results = verify::run_examples();
            let passed = results.iter().all(|r| r.passed);
            let text = results
                .iter()
                .map(|r| {
                    let mark = if r.passed { "ok  " } else { "FAIL" };
                    match &r.error {
                        Some(e) => format!("{mark} {} ({e})", r.name),
                        None => format!("{mark} {}", r.name),
                    }
                })
                .chain(std::iter::once(format!(
                    "{} of {} examples passed",
                    results.iter().filter(|r| r.passed).count(),
                    results.len()
                )))
                .collect::<Vec<_>>()
                .join("\n");
            Report::new("verify", json!({ "target": "examples" }), &results, text).succeeded(passed)
        }
        Command::Verify {
            target: VerifyTarget::Figure1,
            max_n,
        } => {
            let rows = table(TableKind::OneCostas, *max_n, workers)?;
            let ok = verify::figure1_matches(&rows);
            let status = if ok {
                "figure1: ok"
            } else {
                "figure1: MISMATCH"
            };
            Report::new(
                "verify",
                json!({ "target": "figure1", "max_n": max_n }),
                json!({ "rows": rows, "matches": ok }),
                format!("{}\n{status}", rows_text(&rows)),
            )
            .with_csv(rows_csv(&rows))
            .succeeded(ok)
        }
    })
}

fn construct(
    kind: Construction,
    n: Option<usize>,
    k: Option<usize>,
    a: Option<i64>,
    b: Option<i64>,
    s: Option<usize>,
) -> Result<Report> {
    let order = || need(n.or(k), "n");
    Ok(match kind {
        Construction::Dpair => {
            let (a, b) = (need(a, "a")?, need(b, "b")?);
            let p = construct_dpair(a, b)?;
            let inv = inverse_dpair(a, b)?;
            let mut result = perm_result(&p);
            result["pair"] = json!([a, -b]);
            result["inverse_pair"] = json!([inv.p, inv.q]);
            Report::new(
                "construct",
                json!({ "kind": "dpair", "a": a, "b": b }),
                result,
                perm_and_derivative(&p),
            )
        }
        Construction::MinLocal => {
            let n = order()?;
            let p = construct_min_local_1costas(n)?;
            let mut report = Report::new(
                "construct",
                json!({ "kind": "min-local", "n": n }),
                json!({
                    "permutation": p,
                    "derivative": p.derivative(),
                    "local_variation": local_variation(&p),
                    "global_variation": global_variation(&p),
                    "min_global_1costas": min_global_1costas(n)?,
                }),
                perm_and_derivative(&p),
            );
            if let Some(v) = published_odd_min_global_1costas(n)
                .filter(|v| v.value != min_global_1costas(n).unwrap_or(v.value))
            {
                report = report.with_note(format!(
                    "published odd-order form {} gives {}; exhaustive search gives {}",
                    v.formula,
                    v.value,
                    min_global_1costas(n)?
                ));
            }
            report
        }
        Construction::MaxGlobal => {
            let n = order()?;
            let p = construct_max_global(n)?;
            let mut report = Report::new(
                "construct",
                json!({ "kind": "max-global", "n": n }),
                json!({
                    "permutation": p,
                    "derivative": p.derivative(),
                    "global_variation": global_variation(&p),
                    "delta_star": delta_star(n)?,
                }),
                perm_and_derivative(&p),
            );
            if let Some(v) =
                published_odd_delta_star(n).filter(|v| v.value != delta_star(n).unwrap_or(v.value))
            {
                report = report.with_note(format!(
                    "published odd-order form {} gives {}; exhaustive search gives {}",
                    v.formula,
                    v.value,
                    delta_star(n)?
                ));
            }
            report
        }
        Construction::Maximin => {
            let n = order()?;
            let p = construct_maximin_abs(n)?;
            let mut result = perm_result(&p);
            result["min_abs"] = json!(p.derivative().min_abs());
            Report::new(
                "construct",
                json!({ "kind": "maximin", "n": n }),
                result,
                perm_and_derivative(&p),
            )
        }
        Construction::Pi => {
            let k = order()?;
            let p = pi_perm(k)?;
            Report::new(
                "construct",
                json!({ "kind": "pi", "k": k }),
                perm_result(&p),
                perm_and_derivative(&p),
            )
        }
        Construction::PiStar => {
            let k = order()?;
            let p = pi_star(k)?;
            Report::new(
                "construct",
                json!({ "kind": "pi-star", "k": k }),
                perm_result(&p),
                perm_and_derivative(&p),
            )
        }
        Construction::RealizeShift => {
            let n = order()?;
            let s = need(s, "s")?;
            let p = realize_shift(n, s)?;
            Report::new(
                "construct",
                json!({ "kind": "realize-shift", "n": n, "s": s }),
                perm_result(&p),
                perm_and_derivative(&p),
            )
        }
    })
}

fn table_kind(kind: Kind) -> TableKind {
    match kind {
        Kind::OneCostas => TableKind::OneCostas,
        Kind::Costas => TableKind::Costas,
        Kind::Convex => TableKind::Convex,
    }
}

fn spec_for<P: Pruner>(
    n: usize,
    pruner: P,
    prop: Property,
    mode: Mode,
) -> SearchSpec<P, impl Fn(&Permutation) -> bool + Sync> {
    SearchSpec {
        n,
        pruner,
        accept: move |p: &Permutation| prop.holds(p).unwrap_or(false),
        mode,
    }
}

/// Checks once that the property can be evaluated at order `n`, so that
/// errors surface as invalid input rather than as silent rejections.
fn validate(prop: Property, n: usize) -> Result<()> {
    if prop.takes_sequence() {
        bail!("this property applies to sequences, not permutations");
    }
    prop.holds(&Permutation::identity(n)?)?;
    Ok(())
}

fn run_search(prop: Property, n: usize, mode: Mode, workers: usize) -> Result<Outcome> {
    validate(prop, n)?;
    Ok(match prop {
        Property::OneCostas => {
            enumerate(&spec_for(n, OneCostasPruner, Property::Any, mode), workers)?
        }
        Property::Costas => enumerate(&spec_for(n, CostasPruner, Property::Any, mode), workers)?,
        _ => enumerate(&spec_for(n, NoPruning, prop, mode), workers)?,
    })
}

fn collect(prop: Property, n: usize, workers: usize) -> Result<Vec<Permutation>> {
    if prop == Property::Convex {
        return Ok(enumerate_convex(n)?.into_iter().collect());
    }
    match run_search(prop, n, Mode::Collect, workers)? {
        Outcome::Collected(v) => Ok(v),
        _ => unreachable!("collect mode yields a collection"),
    }
}

fn count(prop: Property, n: usize, workers: usize) -> Result<CountRow> {
    Ok(match prop {
        Property::OneCostas => count_one_costas(n, workers)?,
        Property::Costas => CountRow::new(n, count_costas(n, workers)?),
        Property::Convex => CountRow::new(n, enumerate_convex(n)?.len() as u64),
        _ => CountRow::new(n, run_search(prop, n, Mode::Count, workers)?.count()),
    })
}

fn optimize(
    objective: ObjectiveKind,
    direction: DirectionArg,
    n: usize,
    property: &str,
    workers: usize,
) -> Result<Report> {
    let prop: Property = property.parse()?;
    let f: Objective = match objective {
        ObjectiveKind::Global => Arc::new(global_variation),
        ObjectiveKind::Local => Arc::new(local_variation),
        ObjectiveKind::MinAbs => Arc::new(|p: &Permutation| p.derivative().min_abs().unwrap_or(0)),
    };
    let direction = match direction {
        DirectionArg::Max => Direction::Max,
        DirectionArg::Min => Direction::Min,
    };
    let mode = Mode::Optimize {
        objective: f,
        direction,
    };
    let inputs = json!({ "n": n, "property": property, "direction": direction });
    Ok(match run_search(prop, n, mode, workers)? {
        Outcome::Optimum(Some((value, witness))) => Report::new(
            "optimize",
            inputs,
            json!({ "value": value, "witness": witness }),
            format!("{value}\n{witness}"),
        ),
        Outcome::Optimum(None) => {
            Report::new("optimize", inputs, json!({ "value": null }), "none").succeeded(false)
        }
        _ => unreachable!("optimize mode yields an optimum"),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let outcome = run(&cli).and_then(|report| {
        let rendered = render(
            &report,
            cli.format,
            cli.workers,
            started.elapsed().as_millis(),
        )?;
        Ok((report.success, rendered))
    });
    match outcome {
        Ok((success, rendered)) => {
            println!("{rendered}");
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
