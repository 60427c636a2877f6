use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use subspace::audit::{audit, enumerate_points, proof_inequality_report, AuditConfig};
use subspace::bounds::{
    check_proof_identities, covering_check, theorem_constants, CoveringSet, ProblemParams,
};
use subspace::chow::{
    chow_form, chow_weight, chow_weight_aggregate, image_variety, thm22_report, ChowForm, Thm22Mode,
};
use subspace::geometry::{
    dimension_filtration, distributive_constant_capped, generic_combinations, lemma32_eval,
    DivisorFamily, DEFAULT_FAMILY_CAP,
};
use subspace::groebner::{hilbert_data, projective_dimension, Budget, Ideal};
use subspace::heights::{proj_height, proj_height_by_places, ProjPoint, WeightAssignment};
use subspace::polyalg::{
    parse_poly, system_height, system_norm, HeightVariant, MultiPoly, NormVariant, PolySystem,
};
use subspace::qarith::{format_rational, joint_support, parse_rational, Place, PlaceSet, Rational};
use subspace::{Error, Result};

#[derive(Parser)]
#[command(
    name = "subspace",
    version,
    about = "Heights, Chow weights and subspace-theorem audits over Q"
)]
struct Cli {
    /// Number of variables for inline polynomials and generator lists.
    #[arg(long, global = true)]
    vars: Option<usize>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Gröbner budget as PAIRS,DEG.
    #[arg(long, global = true)]
    budget: Option<Budget>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Heights of points and polynomial systems.
    #[command(subcommand)]
    Height(HeightCmd),
    /// Coefficient norms of a system at one place or at every place of its support.
    Norms {
        #[arg(required = true)]
        polys: Vec<String>,
        #[arg(long)]
        place: Option<Place>,
        /// Use the sum of absolute values at infinity.
        #[arg(long)]
        sum: bool,
    },
    /// Projective dimension of V(I).
    Dimension { ideal: String },
    /// Degree and Hilbert numerator of V(I).
    Degree { ideal: String },
    /// Distributive constant of a family (JSON file or inline JSON).
    Distconst {
        family: String,
        #[arg(long, default_value_t = DEFAULT_FAMILY_CAP)]
        cap: usize,
    },
    /// Dimension filtration of X by a sequence of divisors.
    Filtration {
        ideal: String,
        #[arg(required = true)]
        divisors: Vec<String>,
    },
    /// Generic linear combinations along the dimension filtration.
    Lemma31 {
        ideal: String,
        #[arg(required = true)]
        divisors: Vec<String>,
    },
    /// Product inequality for integer steps t and rational a.
    Lemma32 {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<u64>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        a: Vec<String>,
    },
    /// Chow forms and Chow weights.
    #[command(subcommand)]
    Chow(ChowCmd),
    /// Lower bound for the Chow weight along coordinate hyperplanes.
    Thm22 {
        ideal: String,
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        c: Vec<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::EmptyIntersection)]
        mode: ModeArg,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Closure of the image of X under (g_0 : … : g_R).
    Image {
        ideal: String,
        #[arg(required = true)]
        g: Vec<String>,
    },
    /// Theorem constants and the identities that relate them.
    Bounds(BoundsArgs),
    /// Covering sets of weight tuples.
    #[command(subcommand)]
    Covering(CoveringCmd),
    /// Points of P^N(Q) of bounded height, optionally on X.
    Enumerate {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Audit the approximation inequality over enumerated points.
    Audit {
        config: PathBuf,
        /// Row output; defaults to stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Summary output; defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Regression check of the height inequalities behind the main theorem.
    Proofcheck {
        ideal: String,
        #[arg(required = true)]
        polys: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "inf")]
        places: Vec<Place>,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum HeightCmd {
    /// Absolute logarithmic height of a point given as `a,b,c`.
    Point { point: ProjPoint },
    /// Height of the coefficient vector of a system.
    Poly {
        #[arg(required = true)]
        polys: Vec<String>,
        /// Use the sum of absolute values at infinity.
        #[arg(long)]
        h1: bool,
    },
}

#[derive(Subcommand)]
enum ChowCmd {
    /// Chow form of V(I).
    Form { ideal: String },
    /// Chow weight for one weight vector or an aggregate over places.
    Weight {
        /// Chow form JSON as printed by `chow form --json`.
        form: String,
        #[arg(long, value_delimiter = ',', conflicts_with = "weights")]
        c: Option<Vec<String>>,
        /// Weight assignment JSON for the aggregate weight.
        #[arg(long)]
        weights: Option<String>,
    },
}

#[derive(Subcommand)]
enum CoveringCmd {
    /// Describe the covering set and optionally write its tuples as CSV.
    Make {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Find a covering tuple for given A and Λ.
    Check {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        theta: String,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        a: Vec<String>,
        #[arg(long)]
        lambda: String,
    },
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long = "N")]
    big_n: Option<u32>,
    #[arg(long)]
    d: u64,
    #[arg(long = "Delta")]
    delta_lcm: u64,
    #[arg(long = "delta-x")]
    delta_x: String,
    #[arg(long)]
    delta: String,
    #[arg(long = "C", default_value_t = 1)]
    c: u64,
    #[arg(long, default_value_t = 1)]
    s: u64,
    #[arg(long = "H", default_value_t = 0.0)]
    h: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Filtered,
    EmptyIntersection,
}

struct Ctx {
    vars: Option<usize>,
    json: bool,
    seed: u64,
    budget: Budget,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget(_) => 3,
        Error::Assertion(_) | Error::Structural(_) => 4,
        Error::Io(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx {
        vars: cli.vars,
        json: cli.json,
        seed: cli.seed,
        budget: cli.budget.unwrap_or_default(),
    };
    match run(&ctx, cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn read_arg(arg: &str) -> Result<Option<String>> {
    let t = arg.trim_start();
    if t.starts_with('{') {
        return Ok(Some(arg.to_string()));
    }
    if Path::new(arg).is_file() {
        return Ok(Some(fs::read_to_string(arg)?));
    }
    Ok(None)
}

/// An ideal as inline JSON, a JSON file, or `;`-separated generators (which
/// need `--vars`; an empty list is the zero ideal).
fn load_ideal(ctx: &Ctx, arg: &str) -> Result<Ideal> {
    if let Some(text) = read_arg(arg)? {
        return Ideal::from_json(&text);
    }
    let n = ctx
        .vars
        .ok_or_else(|| Error::Precondition("generator lists need --vars".into()))?;
    let gens: Vec<&str> = arg
        .split(';')
        .map(str::trim)
        .filter(|g| !g.is_empty())
        .collect();
    Ideal::parse(n, &gens)
}

fn parse_polys(texts: &[String], nvars: usize) -> Result<Vec<MultiPoly>> {
    texts.iter().map(|t| parse_poly(t, nvars)).collect()
}

fn vars_or_infer(ctx: &Ctx, texts: &[String]) -> Result<usize> {
    if let Some(n) = ctx.vars {
        return Ok(n);
    }
    let mut best = 0;
    for t in texts {
        let f = parse_poly(t, 64)?;
        best = best.max(f.max_var_used().map_or(0, |i| i + 1));
    }
    Ok(best.max(1))
}

fn rationals(texts: &[String]) -> Result<Vec<Rational>> {
    texts.iter().map(|t| parse_rational(t)).collect()
}

fn emit<T: Serialize>(ctx: &Ctx, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let out = if ctx.json {
        serde_json::to_string_pretty(value)?
    } else {
        text()
    };
    println!("{out}");
    Ok(())
}

fn run(ctx: &Ctx, cmd: Cmd) -> Result<()> {
    let budget = ctx.budget;
    match cmd {
        Cmd::Height(HeightCmd::Point { point }) => {
            let h = proj_height(&point);
            let places = proj_height_by_places(&point.rational_coords())?;
            let by_place: Vec<Value> = places
                .iter()
                .map(|(v, r)| json!({"place": v, "max_norm": format_rational(r)}))
                .collect();
            let value = json!({"point": point, "H": format_rational(h.mult()), "h": h.ln(), "places": by_place});
            emit(ctx, &value, || {
                format!(
                    "h{} = log {} = {}",
                    point,
                    format_rational(h.mult()),
                    h.ln()
                )
            })
        }
        Cmd::Height(HeightCmd::Poly { polys, h1 }) => {
            let n = vars_or_infer(ctx, &polys)?;
            let fs = parse_polys(&polys, n)?;
            let variant = if h1 {
                HeightVariant::H1
            } else {
                HeightVariant::H
            };
            let h = system_height(&fs, variant)?;
            let name = if h1 { "h1" } else { "h" };
            let value =
                json!({"variant": name, "mult": format_rational(h.mult()), "value": h.ln()});
            emit(ctx, &value, || {
                format!("{name} = log {} = {}", format_rational(h.mult()), h.ln())
            })
        }
        Cmd::Norms { polys, place, sum } => {
            let n = vars_or_infer(ctx, &polys)?;
            let fs = parse_polys(&polys, n)?;
            let variant = if sum {
                NormVariant::Sum
            } else {
                NormVariant::Max
            };
            let places: Vec<Place> = match place {
                Some(v) => vec![v],
                None => {
                    let coeffs: Vec<Rational> = fs.iter().flat_map(|f| f.coefficients()).collect();
                    joint_support(&coeffs)?.iter().copied().collect()
                }
            };
            let mut rows = Vec::new();
            for v in places {
                rows.push((v, system_norm(&fs, v, variant)?));
            }
            let value: Vec<Value> = rows
                .iter()
                .map(|(v, r)| json!({"place": v, "norm": format_rational(r)}))
                .collect();
            emit(ctx, &value, || {
                rows.iter()
                    .map(|(v, r)| format!("{v}\t{}", format_rational(r)))
                    .collect::<Vec<_>>()
                    .join("\n")
            })
        }
        Cmd::Dimension { ideal } => {
            let i = load_ideal(ctx, &ideal)?;
            let dim = projective_dimension(&i, budget)?;
            emit(ctx, &json!({"dimension": dim}), || dim.to_string())
        }
        Cmd::Degree { ideal } => {
            let i = load_ideal(ctx, &ideal)?;
            let hd = hilbert_data(&i, budget)?;
            if hd.krull_dimension == 0 {
                return Err(Error::Precondition(
                    "V(I) is empty; degree is undefined".into(),
                ));
            }
            let value = json!({
                "dimension": hd.krull_dimension - 1,
                "degree": hd.degree,
                "hilbert_numerator": hd.numerator,
            });
            emit(ctx, &value, || hd.degree.to_string())
        }
        Cmd::Distconst { family, cap } => {
            let text = read_arg(&family)?
                .ok_or_else(|| Error::Precondition("family must be JSON".into()))?;
            let fam = DivisorFamily::from_json(&text, budget)?;
            let dc = distributive_constant_capped(&fam, budget, cap)?;
            emit(ctx, &dc, || {
                format!(
                    "{}\t(witness {:?}, raw max {})",
                    format_rational(&dc.value),
                    dc.witness,
                    format_rational(&dc.raw_max)
                )
            })
        }
        Cmd::Filtration { ideal, divisors } => {
            let x = load_ideal(ctx, &ideal)?;
            let fs = parse_polys(&divisors, x.nvars())?;
            let filt = dimension_filtration(&x, &fs, budget)?;
            emit(ctx, &filt, || {
                let mut s = format!("t = {:?}\nprefix dims = {:?}", filt.t, filt.prefix_dims);
                if filt.is_flagged() {
                    s.push_str(&format!("\nmulti-step drops at {:?}", filt.multi_drops));
                }
                s
            })
        }
        Cmd::Lemma31 { ideal, divisors } => {
            let x = load_ideal(ctx, &ideal)?;
            let fs = parse_polys(&divisors, x.nvars())?;
            let filt = dimension_filtration(&x, &fs, budget)?;
            let gc = generic_combinations(&x, &fs, &filt, ctx.seed, budget)?;
            let value = json!({"filtration": filt, "combination": gc});
            emit(ctx, &value, || {
                let mut s = format!(
                    "t = {:?}; attempts {}, coefficient bound {}",
                    filt.t, gc.attempts, gc.bound
                );
                for p in &gc.polys {
                    s.push_str(&format!("\n{p}"));
                }
                s
            })
        }
        Cmd::Lemma32 { t, a } => {
            let a = rationals(&a)?;
            let r = lemma32_eval(&t, &a)?;
            emit(ctx, &r, || {
                format!(
                    "lhs = {}  rhs = {}  holds = {}  equality = {}",
                    format_rational(&r.lhs),
                    r.rhs,
                    r.holds,
                    r.equality
                )
            })
        }
        Cmd::Chow(ChowCmd::Form { ideal }) => {
            let x = load_ideal(ctx, &ideal)?;
            let n = projective_dimension(&x, budget)?;
            if n < 0 {
                return Err(Error::Precondition("V(I) is empty".into()));
            }
            let form = chow_form(&x, n as usize, budget)?;
            emit(ctx, &form.to_json_value(), || {
                form.poly().to_string_with(&form.var_names())
            })
        }
        Cmd::Chow(ChowCmd::Weight { form, c, weights }) => {
            let text =
                read_arg(&form)?.ok_or_else(|| Error::Precondition("form must be JSON".into()))?;
            let form = ChowForm::from_json(&text)?;
            let value = match (c, weights) {
                (Some(c), _) => chow_weight(&form, &rationals(&c)?)?,
                (None, Some(w)) => {
                    let text = read_arg(&w)?
                        .ok_or_else(|| Error::Precondition("weights must be JSON".into()))?;
                    chow_weight_aggregate(&form, &WeightAssignment::from_json(&text)?)?
                }
                (None, None) => return Err(Error::Precondition("give --c or --weights".into())),
            };
            emit(ctx, &json!({"weight": format_rational(&value)}), || {
                format_rational(&value)
            })
        }
        Cmd::Thm22 {
            ideal,
            indices,
            c,
            mode,
            delta,
        } => {
            let y = load_ideal(ctx, &ideal)?;
            let c = rationals(&c)?;
            let delta = delta.map(|d| parse_rational(&d)).transpose()?;
            let mode = match mode {
                ModeArg::Filtered => Thm22Mode::Filtered,
                ModeArg::EmptyIntersection => Thm22Mode::EmptyIntersection,
            };
            let r = thm22_report(&y, None, &indices, &c, mode, delta.as_ref(), budget)?;
            emit(ctx, &r, || {
                format!(
                    "e_Y(c) = {} >= {}{}  (delta_Y = {})",
                    format_rational(&r.lhs),
                    format_rational(&r.rhs),
                    if r.equality { " with equality" } else { "" },
                    format_rational(&r.delta_y)
                )
            })
        }
        Cmd::Image { ideal, g } => {
            let x = load_ideal(ctx, &ideal)?;
            let gs = parse_polys(&g, x.nvars())?;
            let img = image_variety(&x, &gs, budget)?;
            emit(ctx, &img, || {
                format!(
                    "{}\ndim {}, degree {} (bound {})",
                    img.to_json_value()["ideal"],
                    img.dimension,
                    img.degree,
                    img.degree_bound
                )
            })
        }
        Cmd::Bounds(b) => {
            let params = ProblemParams {
                n: b.n,
                m: b.m,
                big_n: b.big_n.unwrap_or(b.n),
                d: b.d,
                delta_lcm: b.delta_lcm,
                delta_x: parse_rational(&b.delta_x)?,
                delta: parse_rational(&b.delta)?,
                c: b.c,
                s: b.s,
                h: b.h,
            };
            let consts = theorem_constants(&params)?;
            let ids = check_proof_identities(&params)?;
            let value = json!({"params": params, "constants": consts, "identities": ids});
            emit(ctx, &value, || {
                format!(
                    "alpha = {}\nA2 = {}\nlog A1 = {}\nlog A3 = {}\nB'2*Delta = A2: {}\nlog B'1 + log T <= log A1: {} ([.] read as floor)",
                    format_rational(&consts.alpha),
                    format_rational(&consts.a2),
                    consts.log_a1.value,
                    consts.log_a3.value,
                    ids.b2_identity,
                    ids.b1_inequality
                )
            })
        }
        Cmd::Covering(CoveringCmd::Make { q, theta, csv }) => {
            let w = CoveringSet::new(q, parse_rational(&theta)?)?;
            if let Some(path) = csv {
                let mut out = BufWriter::new(fs::File::create(path)?);
                let header: Vec<String> = (0..q).map(|j| format!("c{j}")).collect();
                writeln!(out, "{}", header.join(","))?;
                for t in w.tuples() {
                    let row: Vec<String> = t.iter().map(format_rational).collect();
                    writeln!(out, "{}", row.join(","))?;
                }
                out.flush()?;
            }
            let r = w.report();
            emit(ctx, &r, || {
                format!(
                    "M = {}, |W| = {}, (e/theta)^(q-1) = {}",
                    r.grid, r.cardinality, r.paper_bound
                )
            })
        }
        Cmd::Covering(CoveringCmd::Check {
            q,
            theta,
            a,
            lambda,
        }) => {
            let w = CoveringSet::new(q, parse_rational(&theta)?)?;
            let a = rationals(&a)?;
            let c = covering_check(&w, &a, &parse_rational(&lambda)?)?;
            let cs: Vec<String> = c.iter().map(format_rational).collect();
            emit(ctx, &json!({"witness": cs}), || cs.join(","))
        }
        Cmd::Enumerate {
            big_n,
            bound,
            ideal,
        } => {
            let x = ideal.map(|i| load_ideal(ctx, &i)).transpose()?;
            let stream = enumerate_points(big_n, bound, x.as_ref())?;
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            if ctx.json {
                let pts: Vec<ProjPoint> = stream.collect();
                serde_json::to_writer_pretty(&mut out, &pts)?;
                writeln!(out)?;
            } else {
                for p in stream {
                    writeln!(out, "{p}")?;
                }
            }
            out.flush()?;
            Ok(())
        }
        Cmd::Audit { config, csv, out } => {
            let text = fs::read_to_string(&config)?;
            let cfg = AuditConfig::from_json(&text, budget)?;
            let summary = match &csv {
                Some(path) => {
                    let mut w = BufWriter::new(fs::File::create(path)?);
                    let s = audit(&cfg, &mut w, budget)?;
                    w.flush()?;
                    s
                }
                None => {
                    let stdout = io::stdout();
                    let mut w = BufWriter::new(stdout.lock());
                    let s = audit(&cfg, &mut w, budget)?;
                    w.flush()?;
                    s
                }
            };
            let report = json!({"seed": ctx.seed, "summary": summary});
            let text = serde_json::to_string_pretty(&report)?;
            match out {
                Some(path) => fs::write(path, text + "\n")?,
                None if csv.is_some() || ctx.json => println!("{text}"),
                None => {}
            }
            Ok(())
        }
        Cmd::Proofcheck {
            ideal,
            polys,
            places,
            samples,
        } => {
            let x = load_ideal(ctx, &ideal)?;
            let system = PolySystem::new(parse_polys(&polys, x.nvars())?)?;
            let places = PlaceSet::new(places)?;
            let r = proof_inequality_report(&x, &system, &places, samples, ctx.seed, budget)?;
            emit(ctx, &r, || {
                let mut s = format!(
                    "Y: dim {}, degree {}\nH = {}",
                    r.image.dimension, r.image.degree, r.h
                );
                for c in &r.checks {
                    s.push_str(&format!(
                        "\n{}: {} <= {} ({})",
                        c.name, c.lhs, c.rhs, c.holds
                    ));
                }
                s.push_str(&format!(
                    "\nE_Y(c) >= {} on {} samples",
                    format_rational(&r.e_bound),
                    r.samples.len()
                ));
                s
            })
        }
    }
}
