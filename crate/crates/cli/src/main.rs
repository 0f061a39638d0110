//! carrykit: carry tables and carry scores for coset representatives,
//! splitting detection, Sym-set extraction, and the additive-combinatorics
//! toolbox, from the command line.
//!
//! Exit codes: 0 success, 1 out-of-regime or no-guarantee outcomes,
//! 2 invalid input.

mod output;
mod reproduce;

use anyhow::{anyhow, bail, Context, Result};
use carrykit_core::additive::{
    arc_concentration, cauchy_davenport_check, coefficient, fourier_profile, freiman_24_check,
    freiman_3k3_check, freiman_iso_check, half_circle_arc, max_rep_check, pollard_check, rectify,
    solution_count, two_carry_classify, AddSet, ArcOutcome, IntSet, ModSet, RectifyMethod,
    RectifyOutcome, TwoCarryOutcome,
};
use carrykit_core::approx::{bclr_repair, split_detector, SplitOutcome};
use carrykit_core::carries::{carry_score, carry_table};
use carrykit_core::fournier::{extract_with_eta, fournier_extract, FournierOutcome};
use carrykit_core::parallel::with_workers;
use carrykit_core::parse::{parse_group, read_int_file, resolve_reps, resolve_subgroup};
use carrykit_core::rational::{ratio, Rational};
use carrykit_core::search::{
    enumerate_two_carry, grid_cscore, max_cscore_group, max_solution_count, min_carries_group,
    min_carries_window,
};
use carrykit_core::{CosetSystem, Elem, FiniteGroup};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use output::{matrix_csv, matrix_json, rational_json, render_matrix};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "carrykit",
    version,
    about = "Carry tables, splitting detection, and additive-combinatorics checks for finite coset systems"
)]
struct Cli {
    /// Worker threads (default: CARRYKIT_WORKERS, else all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Carry tables and carry scores
    Carries {
        #[command(subcommand)]
        cmd: CarriesCmd,
    },
    /// Detect whether a representative choice certifies a split extension
    Split(SystemArgs),
    /// Repair an approximate homomorphism given as "arg value" lines
    Repair {
        /// File of whitespace-separated "arg value" pairs, one per line
        #[arg(long, value_name = "FILE")]
        f: PathBuf,
        /// Domain group spec
        #[arg(long)]
        g1: String,
        /// Codomain group spec
        #[arg(long)]
        g2: String,
    },
    /// Extract a near-subgroup from a dense-product set
    Fournier {
        /// Group spec, e.g. Z/400
        #[arg(long)]
        group: String,
        /// Element set: comma list or file:PATH
        #[arg(long)]
        set: String,
        /// Exploratory eta (rational like 1/20); theorem constants need 1/20
        #[arg(long)]
        eta: Option<String>,
    },
    /// Sumset, counting, structure, and Fourier operations
    Additive {
        #[command(subcommand)]
        cmd: AdditiveCmd,
    },
    /// Certified searches over representative sets
    Search {
        #[command(subcommand)]
        cmd: SearchCmd,
    },
    /// Run a named verification suite
    Reproduce {
        /// Suite name; `carrykit reproduce list` prints the catalog
        suite: String,
    },
}

#[derive(Args, Clone)]
struct SystemArgs {
    /// Group spec: Z/9, Z/5xZ/5, table:PATH
    #[arg(long)]
    group: String,
    /// Subgroup spec: mult:b, comma list, file:PATH
    #[arg(long)]
    subgroup: String,
    /// Representatives: standard:b, balanced:b, comma list, file:PATH
    #[arg(long)]
    reps: String,
}

#[derive(Subcommand)]
enum CarriesCmd {
    /// Print the carry matrix in the table layout
    Matrix(SystemArgs),
    /// Print only the carry score C(X)
    Score(SystemArgs),
}

#[derive(Subcommand)]
enum AdditiveCmd {
    /// Truncated-representation inequality against centered intervals
    Pollard {
        #[arg(long)]
        modulus: usize,
        /// Repeatable set spec (comma list or file:PATH)
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
        #[arg(long, default_value_t = 1)]
        r: u64,
        /// Also check the representation-count maximum
        #[arg(long)]
        max_rep: bool,
    },
    /// Cauchy-Davenport bound over a prime modulus
    Cd {
        #[arg(long)]
        modulus: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Count solutions of a1 + a2 = a3
    Solutions {
        #[arg(long)]
        modulus: usize,
        #[arg(long = "set", required = true, num_args = 1)]
        sets: Vec<String>,
    },
    /// Fourier coefficients of a subset of Z/m
    Fourier {
        #[arg(long)]
        modulus: usize,
        #[arg(long)]
        set: String,
        /// Single frequency; omit for the full profile
        #[arg(long)]
        r: Option<usize>,
    },
    /// Rectify a representative set over p(Z/p^2)
    Rectify {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        reps: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Classify a representative set by its number of distinct carries
    Twocarry {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        reps: String,
    },
    /// Enumerate all two-carry representative sets (p <= 7)
    TwocarryAll {
        #[arg(long)]
        p: usize,
    },
    /// Small-doubling progression structure over Z
    Freiman3k3 {
        /// Integers, comma list (negatives allowed) or file:PATH
        #[arg(long)]
        set: String,
    },
    /// Small-doubling progression structure over Z/p
    Freiman24 {
        #[arg(long)]
        modulus: usize,
        #[arg(long)]
        set: String,
    },
    /// Freiman isomorphism test between two sets
    Iso {
        /// Ambient of the first set: `int` or `mod:M`
        #[arg(long)]
        ambient_a: String,
        #[arg(long)]
        set_a: String,
        #[arg(long)]
        ambient_b: String,
        #[arg(long)]
        set_b: String,
        /// Bijection as x:y pairs, comma separated, or file:PATH of "x y" lines
        #[arg(long)]
        map: String,
    },
    /// Arc concentration for unit-circle points
    Arc {
        /// File of "re im" lines
        #[arg(long)]
        points: PathBuf,
        /// Arc length; omit for the half-circle specialization
        #[arg(long)]
        phi: Option<f64>,
        /// Point threshold: looks for an arc holding more than n points
        #[arg(long, default_value_t = 0)]
        n: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Fourier,
    Exhaustive,
    Both,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Minimum carries: integer window (--b/--window) or group (--group/--subgroup)
    MinCarries {
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Maximum carry score over all representative sets
    MaxScore {
        #[arg(long)]
        group: String,
        #[arg(long)]
        subgroup: String,
    },
    /// Maximum solution count over representative-set triples
    MaxSolutions {
        #[arg(long)]
        p: usize,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// All two-carry representative sets with classifications
    TwoCarry {
        #[arg(long)]
        p: usize,
    },
    /// Two-dimensional integer-model exploration (evidence, not a theorem)
    Grid {
        #[arg(long)]
        b: usize,
        #[arg(long)]
        window: i64,
    },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `carrykit ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let workers = cli.workers.or_else(|| {
        std::env::var("CARRYKIT_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    let format = cli.format;
    match with_workers(workers, || dispatch(cli.command, format)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn build_system(group: &str, subgroup: &str) -> Result<CosetSystem> {
    let g = parse_group(group)?;
    let h = resolve_subgroup(&g, subgroup)?;
    Ok(CosetSystem::new(g, &h)?)
}

fn build_digit_system(p: usize) -> Result<CosetSystem> {
    if p < 2 {
        bail!("base must be at least 2, got {p}");
    }
    let g = FiniteGroup::cyclic(p * p)?;
    let h: Vec<Elem> = (0..p).map(|t| t * p).collect();
    Ok(CosetSystem::new(g, &h)?)
}

fn parse_elem_set(spec: &str) -> Result<Vec<usize>> {
    if let Some(path) = spec.strip_prefix("file:") {
        let ints = read_int_file(std::path::Path::new(path))?;
        return ints
            .into_iter()
            .map(|x| usize::try_from(x).map_err(|_| anyhow!("negative element {x}")))
            .collect();
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .with_context(|| format!("bad element `{tok}`"))
        })
        .collect()
}

fn parse_int_set(spec: &str) -> Result<Vec<i64>> {
    if let Some(path) = spec.strip_prefix("file:") {
        return Ok(read_int_file(std::path::Path::new(path))?);
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .with_context(|| format!("bad integer `{tok}`"))
        })
        .collect()
}

fn parse_rational(text: &str) -> Result<Rational> {
    Rational::from_str(text).map_err(|e| anyhow!("bad rational `{text}`: {e}"))
}

fn modset(modulus: usize, spec: &str) -> Result<ModSet> {
    Ok(ModSet::new(modulus, parse_elem_set(spec)?)?)
}

fn emit(format: Format, value: &Value, text: String) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Text => print!("{text}"),
        Format::Csv => bail!("csv output is not available for this command"),
    }
    Ok(())
}

const OK: ExitCode = ExitCode::SUCCESS;

/// Exit code 1: the run succeeded but the result carries no guarantee
/// (below-threshold score, out-of-regime delta, inapplicable hypothesis).
fn no_guarantee() -> ExitCode {
    ExitCode::from(1)
}

fn dispatch(command: Command, format: Format) -> Result<ExitCode> {
    match command {
        Command::Carries { cmd } => carries_cmd(cmd, format),
        Command::Split(args) => split_cmd(args, format),
        Command::Repair { f, g1, g2 } => repair_cmd(&f, &g1, &g2, format),
        Command::Fournier { group, set, eta } => fournier_cmd(&group, &set, eta, format),
        Command::Additive { cmd } => additive_cmd(cmd, format),
        Command::Search { cmd } => search_cmd(cmd, format),
        Command::Reproduce { suite } => reproduce::run(&suite),
    }
}

fn carries_cmd(cmd: CarriesCmd, format: Format) -> Result<ExitCode> {
    match cmd {
        CarriesCmd::Matrix(args) => {
            let sys = build_system(&args.group, &args.subgroup)?;
            let reps = resolve_reps(&sys, &args.reps)?;
            let table = carry_table(&sys, &reps);
            match format {
                Format::Csv => print!("{}", matrix_csv(&sys, &reps, &table)),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&matrix_json(&sys, &reps, &table))?
                ),
                Format::Text => print!("{}", render_matrix(&sys, &reps, &table)),
            }
            Ok(OK)
        }
        CarriesCmd::Score(args) => {
            let sys = build_system(&args.group, &args.subgroup)?;
            let reps = resolve_reps(&sys, &args.reps)?;
            let score = carry_score(&sys, &reps);
            let value = json!({ "score": rational_json(score) });
            emit(format, &value, format!("C(X) = {score}\n"))?;
            Ok(OK)
        }
    }
}

fn split_cmd(args: SystemArgs, format: Format) -> Result<ExitCode> {
    let sys = build_system(&args.group, &args.subgroup)?;
    let reps = resolve_reps(&sys, &args.reps)?;
    match split_detector(&sys, &reps)? {
        SplitOutcome::Split(report) => {
            let value = json!({
                "score": rational_json(report.score),
                "threshold_met": true,
                "tau_float": report.tau,
                "K": report.complement,
                "checks": {
                    "subgroup": report.checks.subgroup,
                    "trivial_intersection": report.checks.trivial_intersection,
                    "full_size": report.checks.full_size,
                    "covers_group": report.checks.covers_group,
                },
                "is_homomorphism": report.repair.is_homomorphism,
                "agreement": rational_json(report.repair.agreement),
                "disagreement": rational_json(report.repair.disagreement()),
                "ties": report.repair.tie_points,
            });
            let text = format!(
                "C(X) = {} > 7/9: split verified\nK = {:?}\ndisagreement {} <= tau = {:.6}\n",
                report.score,
                report.complement,
                report.repair.disagreement(),
                report.tau
            );
            emit(format, &value, text)?;
            Ok(OK)
        }
        SplitOutcome::NoGuarantee { score } => {
            let value = json!({
                "score": rational_json(score),
                "threshold_met": false,
            });
            emit(
                format,
                &value,
                format!("C(X) = {score} <= 7/9: no splitting guarantee\n"),
            )?;
            Ok(no_guarantee())
        }
    }
}

fn repair_cmd(f: &std::path::Path, g1: &str, g2: &str, format: Format) -> Result<ExitCode> {
    let g1 = parse_group(g1)?;
    let g2 = parse_group(g2)?;
    let pairs = read_int_file(f)?;
    if pairs.len() % 2 != 0 {
        bail!("map file must hold \"arg value\" pairs");
    }
    let mut map = vec![usize::MAX; g1.order()];
    for chunk in pairs.chunks(2) {
        let (arg, value) = (chunk[0], chunk[1]);
        let arg = usize::try_from(arg).map_err(|_| anyhow!("negative arg {arg}"))?;
        let value = usize::try_from(value).map_err(|_| anyhow!("negative value {value}"))?;
        if arg >= g1.order() {
            bail!("arg {arg} outside the domain");
        }
        map[arg] = value;
    }
    if let Some(missing) = map.iter().position(|&v| v == usize::MAX) {
        bail!("map gives no value at {missing}");
    }
    let report = bclr_repair(&map, &g1, &g2)?;
    let value = json!({
        "epsilon": rational_json(report.epsilon),
        "above_threshold": report.above_threshold,
        "well_defined": report.well_defined,
        "is_homomorphism": report.is_homomorphism,
        "agreement": rational_json(report.agreement),
        "phi": report.phi,
        "ties": report.tie_points,
    });
    let text = format!(
        "epsilon = {}{}\nrepaired map is{} a homomorphism; agreement {}\n",
        report.epsilon,
        if report.above_threshold {
            " (> 7/9)"
        } else {
            " (<= 7/9: below threshold, no guarantee)"
        },
        if report.is_homomorphism { "" } else { " not" },
        report.agreement,
    );
    emit(format, &value, text)?;
    Ok(if report.above_threshold {
        OK
    } else {
        no_guarantee()
    })
}

fn fournier_cmd(group: &str, set: &str, eta: Option<String>, format: Format) -> Result<ExitCode> {
    let g = parse_group(group)?;
    let a = parse_elem_set(set)?;
    let (outcome, eta_used, exploratory) = match eta {
        Some(text) => {
            let eta = parse_rational(&text)?;
            (extract_with_eta(&a, &g, eta)?, eta, eta != ratio(1, 20))
        }
        None => (fournier_extract(&a, &g)?, ratio(1, 20), false),
    };
    match outcome {
        FournierOutcome::InRegime(report) => {
            let value = json!({
                "delta": rational_json(report.delta),
                "in_regime": true,
                "eta": rational_json(report.eta),
                "exploratory_eta": exploratory,
                "K": report.subgroup,
                "bounds": { "size_ok": report.size_ok, "overlap_ok": report.overlap_ok },
                "stable": report.stable,
                "is_subgroup": report.is_subgroup,
                "overlap": report.overlap,
            });
            let text = format!(
                "delta = {} <= 1/60: extracted subgroup of order {} (overlap {}){}\n",
                report.delta,
                report.subgroup.len(),
                report.overlap,
                if exploratory {
                    format!("\nnote: eta = {eta_used} is exploratory; the guarantee holds at 1/20")
                } else {
                    String::new()
                },
            );
            emit(format, &value, text)?;
            Ok(OK)
        }
        FournierOutcome::OutOfRegime { delta } => {
            let value = json!({
                "delta": rational_json(delta),
                "in_regime": false,
            });
            emit(
                format,
                &value,
                format!("delta = {delta} > 1/60: out of regime\n"),
            )?;
            Ok(no_guarantee())
        }
    }
}

fn additive_cmd(cmd: AdditiveCmd, format: Format) -> Result<ExitCode> {
    match cmd {
        AdditiveCmd::Pollard {
            modulus,
            sets,
            r,
            max_rep,
        } => {
            let sets: Vec<ModSet> = sets
                .iter()
                .map(|s| modset(modulus, s))
                .collect::<Result<_>>()?;
            let refs: Vec<&ModSet> = sets.iter().collect();
            let report = pollard_check(&refs, r)?;
            let mut value = json!({
                "r": r,
                "s": report.s,
                "s_intervals": report.s_intervals,
                "holds": report.holds,
                "intervals": report.intervals.iter().map(|i| i.elems().to_vec()).collect::<Vec<_>>(),
            });
            let mut text = format!(
                "S(A1..Ak, {r}) = {} >= {} = S over centered intervals: {}\n",
                report.s,
                report.s_intervals,
                if report.holds { "holds" } else { "VIOLATED" }
            );
            if max_rep {
                let mr = max_rep_check(&refs)?;
                value["max_rep"] = json!({
                    "max": mr.max, "max_intervals": mr.max_intervals, "holds": mr.holds,
                });
                text.push_str(&format!(
                    "max representation count {} <= {}: {}\n",
                    mr.max,
                    mr.max_intervals,
                    if mr.holds { "holds" } else { "VIOLATED" }
                ));
            }
            emit(format, &value, text)?;
            Ok(OK)
        }
        AdditiveCmd::Cd { modulus, a, b } => {
            let a = modset(modulus, &a)?;
            let b = modset(modulus, &b)?;
            let report = cauchy_davenport_check(&a, &b)?;
            let value = json!({
                "sumset_size": report.sumset_size,
                "bound": report.bound,
                "holds": report.holds,
            });
            emit(
                format,
                &value,
                format!(
                    "|A + B| = {} >= min(p, |A|+|B|-1) = {}: {}\n",
                    report.sumset_size,
                    report.bound,
                    if report.holds { "holds" } else { "VIOLATED" }
                ),
            )?;
            Ok(OK)
        }
        AdditiveCmd::Solutions { modulus, sets } => {
            if sets.len() != 3 {
                bail!("solutions needs exactly three --set arguments");
            }
            let a1 = modset(modulus, &sets[0])?;
            let a2 = modset(modulus, &sets[1])?;
            let a3 = modset(modulus, &sets[2])?;
            let count = solution_count(&a1, &a2, &a3)?;
            emit(
                format,
                &json!({ "count": count }),
                format!("solutions of a1 + a2 = a3: {count}\n"),
            )?;
            Ok(OK)
        }
        AdditiveCmd::Fourier { modulus, set, r } => {
            let a = modset(modulus, &set)?;
            match r {
                Some(r) => {
                    let c = coefficient(&a, r);
                    let value = json!({
                        "r": r, "re": c.re, "im": c.im, "magnitude": c.norm(),
                    });
                    match format {
                        Format::Csv => {
                            println!("r,re,im,magnitude");
                            println!("{r},{},{},{}", c.re, c.im, c.norm());
                        }
                        _ => emit(
                            format,
                            &value,
                            format!("A^({r}) = {} + {}i, |.| = {}\n", c.re, c.im, c.norm()),
                        )?,
                    }
                }
                None => {
                    let profile = fourier_profile(&a)?;
                    match format {
                        Format::Csv => {
                            println!("r,re,im,magnitude");
                            for (r, c) in profile.coefficients.iter().enumerate() {
                                println!("{r},{},{},{}", c.re, c.im, c.norm());
                            }
                        }
                        Format::Json => {
                            let rows: Vec<Value> = profile
                                .coefficients
                                .iter()
                                .enumerate()
                                .map(|(r, c)| {
                                    json!({ "r": r, "re": c.re, "im": c.im, "magnitude": c.norm() })
                                })
                                .collect();
                            println!(
                                "{}",
                                serde_json::to_string_pretty(&json!({
                                    "coefficients": rows,
                                    "max_r": profile.max_r,
                                    "max_magnitude_float": profile.max_magnitude,
                                }))?
                            );
                        }
                        Format::Text => {
                            for (r, c) in profile.coefficients.iter().enumerate() {
                                println!(
                                    "A^({r}) = {:+.6} {:+.6}i  |.| = {:.6}",
                                    c.re,
                                    c.im,
                                    c.norm()
                                );
                            }
                            println!(
                                "max over r != 0 at r = {} with magnitude {:.6}",
                                profile.max_r, profile.max_magnitude
                            );
                        }
                    }
                }
            }
            Ok(OK)
        }
        AdditiveCmd::Rectify { p, reps, method } => {
            let sys = build_digit_system(p)?;
            let reps = resolve_reps(&sys, &reps)?;
            let outcome = match method {
                MethodArg::Fourier => rectify(&sys, &reps, RectifyMethod::FourierGuided)?,
                MethodArg::Exhaustive => rectify(&sys, &reps, RectifyMethod::Exhaustive)?,
                MethodArg::Both => carrykit_core::additive::rectify_cross_checked(&sys, &reps)?,
            };
            match outcome {
                RectifyOutcome::Rectified(r) => {
                    let value = json!({
                        "status": "rectified",
                        "c": r.c,
                        "d": r.d,
                        "image": r.image,
                        "concentration": r.concentration.map(|c| json!({
                            "window_count": c.window_count,
                            "arc_bound_float": c.arc_bound,
                            "analytic_bound_float": c.analytic_bound,
                        })),
                    });
                    emit(
                        format,
                        &value,
                        format!(
                            "rectified: c = {}, d = {}, image {:?} inside (-{}/4, {}/4]\n",
                            r.c,
                            r.d,
                            r.image,
                            p * p,
                            p * p
                        ),
                    )?;
                    Ok(OK)
                }
                RectifyOutcome::HypothesisNotMet { doubling, size } => {
                    let value = json!({
                        "status": "hypothesis_not_met",
                        "doubling": doubling,
                        "size": size,
                    });
                    emit(
                        format,
                        &value,
                        format!(
                            "|A + A| = {doubling} > 2|A| = {}: hypothesis not met\n",
                            2 * size
                        ),
                    )?;
                    Ok(no_guarantee())
                }
            }
        }
        AdditiveCmd::Twocarry { p, reps } => {
            let sys = build_digit_system(p)?;
            let reps = resolve_reps(&sys, &reps)?;
            match two_carry_classify(&sys, &reps)? {
                TwoCarryOutcome::Classified {
                    c,
                    d,
                    form,
                    cross_checked,
                } => {
                    let form_text = match form {
                        carrykit_core::additive::CanonicalForm::Standard => "0..p-1",
                        carrykit_core::additive::CanonicalForm::Shifted => "1..p",
                    };
                    let value = json!({
                        "status": "classified",
                        "c": c,
                        "d": d,
                        "form": form_text,
                        "cross_checked": cross_checked,
                    });
                    emit(
                        format,
                        &value,
                        format!("two carries: cA + d = {{{form_text}}} with c = {c}, d = {d}\n"),
                    )?;
                    Ok(OK)
                }
                TwoCarryOutcome::NotTwoCarries { distinct } => {
                    let value = json!({
                        "status": "not_two_carries",
                        "distinct": distinct,
                    });
                    emit(
                        format,
                        &value,
                        format!("{distinct} distinct carries: not a two-carry set\n"),
                    )?;
                    Ok(no_guarantee())
                }
            }
        }
        AdditiveCmd::TwocarryAll { p } => {
            let sys = build_digit_system(p)?;
            let entries = enumerate_two_carry(&sys)?;
            let rows: Vec<Value> = entries
                .iter()
                .map(|e| {
                    let classified = match &e.outcome {
                        TwoCarryOutcome::Classified { c, d, form, .. } => json!({
                            "c": c, "d": d,
                            "form": match form {
                                carrykit_core::additive::CanonicalForm::Standard => "0..p-1",
                                carrykit_core::additive::CanonicalForm::Shifted => "1..p",
                            },
                        }),
                        TwoCarryOutcome::NotTwoCarries { distinct } => {
                            json!({ "distinct": distinct })
                        }
                    };
                    json!({ "reps": e.reps.sorted(), "classification": classified })
                })
                .collect();
            let value = json!({ "count": entries.len(), "sets": rows });
            let mut text = format!("{} two-carry sets\n", entries.len());
            for e in &entries {
                text.push_str(&format!("{:?}\n", e.reps.sorted()));
            }
            emit(format, &value, text)?;
            Ok(OK)
        }
        AdditiveCmd::Freiman3k3 { set } => {
            let a = IntSet::new(parse_int_set(&set)?);
            let report = freiman_3k3_check(&a)?;
            let value = json!({
                "k": report.k,
                "doubling": report.doubling,
                "b": report.b,
                "applicable": report.applicable,
                "ap": report.ap.as_ref().map(|ap| json!({
                    "start": ap.start, "diff": ap.diff, "len": ap.len,
                })),
            });
            let text = match &report.ap {
                Some(ap) => format!(
                    "|A+A| = {} = 2k-1+{}: progression start {} step {} length {}\n",
                    report.doubling, report.b, ap.start, ap.diff, ap.len
                ),
                None => format!(
                    "|A+A| = {} exceeds 3k-4 = {}: not applicable\n",
                    report.doubling,
                    3 * report.k as i64 - 4
                ),
            };
            emit(format, &value, text)?;
            Ok(if report.applicable {
                OK
            } else {
                no_guarantee()
            })
        }
        AdditiveCmd::Freiman24 { modulus, set } => {
            let a = modset(modulus, &set)?;
            let report = freiman_24_check(&a)?;
            let value = json!({
                "k": report.k,
                "doubling": report.doubling,
                "b": report.b,
                "applicable": report.applicable,
                "ap": report.ap.as_ref().map(|ap| json!({
                    "start": ap.start, "diff": ap.diff, "len": ap.len, "modulus": ap.modulus,
                })),
            });
            let text = match &report.ap {
                Some(ap) => format!(
                    "progression start {} step {} length {} mod {}\n",
                    ap.start, ap.diff, ap.len, ap.modulus
                ),
                None => "not applicable\n".to_string(),
            };
            emit(format, &value, text)?;
            Ok(if report.applicable {
                OK
            } else {
                no_guarantee()
            })
        }
        AdditiveCmd::Iso {
            ambient_a,
            set_a,
            ambient_b,
            set_b,
            map,
        } => {
            let a = parse_addset(&ambient_a, &set_a)?;
            let b = parse_addset(&ambient_b, &set_b)?;
            let pairs = parse_map(&map)?;
            let isomorphic = freiman_iso_check(&a, &b, &pairs)?;
            emit(
                format,
                &json!({ "isomorphic": isomorphic }),
                format!(
                    "the map is{} a Freiman isomorphism\n",
                    if isomorphic { "" } else { " not" }
                ),
            )?;
            Ok(if isomorphic { OK } else { no_guarantee() })
        }
        AdditiveCmd::Arc { points, phi, n } => {
            let raw = read_int_file_f64(&points)?;
            if raw.len() % 2 != 0 {
                bail!("points file must hold \"re im\" pairs");
            }
            let pts: Vec<Complex64> = raw.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
            match phi {
                Some(phi) => match arc_concentration(&pts, phi, n)? {
                    ArcOutcome::Found {
                        start,
                        length,
                        count,
                        needed,
                    } => {
                        let value = json!({
                            "status": "found",
                            "start_float": start,
                            "length_float": length,
                            "count": count,
                            "needed": needed,
                        });
                        emit(
                            format,
                            &value,
                            format!(
                                "arc at {start:.6} of length {length:.6} holds {count} points\n"
                            ),
                        )?;
                        Ok(OK)
                    }
                    ArcOutcome::HypothesisNotMet { sum_abs, threshold } => {
                        let value = json!({
                            "status": "hypothesis_not_met",
                            "sum_abs_float": sum_abs,
                            "threshold_float": threshold,
                        });
                        emit(
                            format,
                            &value,
                            format!("|sum| = {sum_abs:.6} <= {threshold:.6}: hypothesis not met\n"),
                        )?;
                        Ok(no_guarantee())
                    }
                },
                None => {
                    let (start, count) = half_circle_arc(&pts)?;
                    let value = json!({
                        "status": "half_circle",
                        "start_float": start,
                        "count": count,
                    });
                    emit(
                        format,
                        &value,
                        format!("half-circle arc at {start:.6} holds {count} points\n"),
                    )?;
                    Ok(OK)
                }
            }
        }
    }
}

fn parse_addset(ambient: &str, set: &str) -> Result<AddSet> {
    if ambient == "int" {
        Ok(AddSet::Int(IntSet::new(parse_int_set(set)?)))
    } else if let Some(m) = ambient.strip_prefix("mod:") {
        let m: usize = m.parse().with_context(|| format!("bad modulus `{m}`"))?;
        Ok(AddSet::Mod(ModSet::new(m, parse_elem_set(set)?)?))
    } else {
        bail!("ambient must be `int` or `mod:M`, got `{ambient}`")
    }
}

fn parse_map(spec: &str) -> Result<Vec<(i64, i64)>> {
    if let Some(path) = spec.strip_prefix("file:") {
        let ints = read_int_file(std::path::Path::new(path))?;
        if ints.len() % 2 != 0 {
            bail!("map file must hold \"x y\" pairs");
        }
        return Ok(ints.chunks(2).map(|c| (c[0], c[1])).collect());
    }
    spec.split(',')
        .map(|pair| {
            let (x, y) = pair
                .split_once(':')
                .ok_or_else(|| anyhow!("map entries look like x:y, got `{pair}`"))?;
            Ok((
                x.trim()
                    .parse::<i64>()
                    .with_context(|| format!("bad `{x}`"))?,
                y.trim()
                    .parse::<i64>()
                    .with_context(|| format!("bad `{y}`"))?,
            ))
        })
        .collect()
}

fn read_int_file_f64(path: &PathBuf) -> Result<Vec<f64>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    text.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .with_context(|| format!("bad number `{tok}`"))
        })
        .collect()
}

fn search_cmd(cmd: SearchCmd, format: Format) -> Result<ExitCode> {
    match cmd {
        SearchCmd::MinCarries {
            b,
            window,
            group,
            subgroup,
        } => match (b, window, group, subgroup) {
            (Some(b), Some(window), None, None) => {
                let r = min_carries_window(b, window)?;
                let value = json!({
                    "objective": r.objective,
                    "witness": r.witness,
                    "optima": r.optima,
                    "nodes": r.nodes,
                    "exhaustive": r.exhaustive,
                });
                emit(
                    format,
                    &value,
                    format!(
                        "minimum carries: {} (witness {:?}, {} optima, {} nodes)\n",
                        r.objective, r.witness, r.optima, r.nodes
                    ),
                )?;
                Ok(OK)
            }
            (None, None, Some(group), Some(subgroup)) => {
                let sys = build_system(&group, &subgroup)?;
                let r = min_carries_group(&sys)?;
                let value = json!({
                    "objective": r.objective,
                    "witness": r.witness.reps(),
                    "optima": r.optima,
                    "nodes": r.nodes,
                    "exhaustive": r.exhaustive,
                });
                emit(
                    format,
                    &value,
                    format!(
                        "minimum carries: {} (witness {:?}, {} optima, {} nodes)\n",
                        r.objective,
                        r.witness.reps(),
                        r.optima,
                        r.nodes
                    ),
                )?;
                Ok(OK)
            }
            _ => bail!("pass either --b and --window, or --group and --subgroup"),
        },
        SearchCmd::MaxScore { group, subgroup } => {
            let sys = build_system(&group, &subgroup)?;
            let r = max_cscore_group(&sys)?;
            let value = json!({
                "objective": rational_json(r.objective),
                "witness": r.witness.reps(),
                "optima": r.optima,
                "nodes": r.nodes,
                "exhaustive": r.exhaustive,
            });
            emit(
                format,
                &value,
                format!(
                    "maximum C(X) = {} (witness {:?}, {} optima)\n",
                    r.objective,
                    r.witness.reps(),
                    r.optima
                ),
            )?;
            Ok(OK)
        }
        SearchCmd::MaxSolutions { p, samples, seed } => {
            let s = max_solution_count(p, samples, seed)?;
            let value = json!({
                "objective": s.result.objective,
                "balanced_value": s.balanced_value,
                "exhaustive": s.result.exhaustive,
                "samples": s.samples,
                "optima": s.result.optima,
                "witness": [
                    s.result.witness.0.reps(),
                    s.result.witness.1.reps(),
                    s.result.witness.2.reps(),
                ],
            });
            emit(
                format,
                &value,
                format!(
                    "maximum solutions: {} ({}; balanced triple gives {})\n",
                    s.result.objective,
                    if s.result.exhaustive {
                        "exhaustive".to_string()
                    } else {
                        format!("{} samples", s.samples)
                    },
                    s.balanced_value
                ),
            )?;
            Ok(OK)
        }
        SearchCmd::TwoCarry { p } => {
            let sys = build_digit_system(p)?;
            let entries = enumerate_two_carry(&sys)?;
            let rows: Vec<Value> = entries.iter().map(|e| json!(e.reps.sorted())).collect();
            let value = json!({ "count": entries.len(), "sets": rows });
            let mut text = format!("{} two-carry representative sets\n", entries.len());
            for e in &entries {
                text.push_str(&format!("{:?}\n", e.reps.sorted()));
            }
            emit(format, &value, text)?;
            Ok(OK)
        }
        SearchCmd::Grid { b, window } => {
            let r = grid_cscore(b, window)?;
            let value = json!({
                "exploratory": true,
                "base": r.base,
                "window": r.window,
                "best_score": rational_json(r.best.objective),
                "best_witness": r.best.witness.iter().map(|&(x, y)| json!([x, y])).collect::<Vec<_>>(),
                "product_balanced": rational_json(r.product_balanced),
                "ceiling_float": r.ceiling,
                "exceeded_ceiling": r.exceeded_ceiling,
                "evaluated": r.evaluated,
            });
            emit(
                format,
                &value,
                format!(
                    "exploratory grid search (open conjecture; evidence only)\n\
                     best C found: {} over {} evaluations\n\
                     product-balanced value: {}\n\
                     ceiling 1 - 3*sqrt(3)/(4*pi) = {:.6}: {}\n",
                    r.best.objective,
                    r.evaluated,
                    r.product_balanced,
                    r.ceiling,
                    if r.exceeded_ceiling {
                        "EXCEEDED (unexpected)"
                    } else {
                        "never exceeded"
                    }
                ),
            )?;
            Ok(OK)
        }
    }
}
