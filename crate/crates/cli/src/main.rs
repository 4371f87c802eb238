use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use skewcirc::codes::{self_dual_scan, scaling_to, CodeHandle, DEFAULT_DISTANCE_BUDGET};
use skewcirc::divisors::{
    build_lattice, dual_lattice, enumerate_right_divisors, transfer_divisors, DivisorLattice, DotMode, Factorization,
    DEFAULT_SEARCH_BUDGET,
};
use skewcirc::parse::{parse_element, parse_field, parse_poly};
use skewcirc::quotient::ModulusSpec;
use skewcirc::report::Report;
use skewcirc::suites::{run_suite, Suite, SuiteConfig};
use skewcirc::{Error, FieldCtx, Gf, SkewPoly, SkewRing};

const MAX_N: usize = 32;

/// Skew-polynomial rings F[x;theta], (theta,a)-circulants and
/// skew-constacyclic codes over small finite fields.
#[derive(Parser, Debug)]
#[command(name = "skewcirc", version)]
struct Cli {
    /// Field: gf(q), gf(p^m) or gf(p^m;mod=c0,...,cm).
    #[arg(long, global = true, default_value = "gf(8)")]
    field: String,
    /// Frobenius exponent s of theta(c) = c^(p^s).
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    theta: i64,
    /// Length n of the modulus x^n - a.
    #[arg(short = 'n', global = true)]
    n: Option<usize>,
    /// Constant a of the modulus, e.g. "a^3", "1+a" or "2".
    #[arg(short = 'a', global = true, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Cap on search candidates and on enumerated codewords.
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = SuiteConfig::default().seed)]
    seed: u64,
    /// Random trials per property.
    #[arg(long, global = true, default_value_t = SuiteConfig::default().trials)]
    trials: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the monic right divisors of x^n - a.
    Divisors {
        /// Also compute the minimum distance of each code.
        #[arg(long)]
        distances: bool,
    },
    /// The divisor lattice (or the code lattice) of x^n - a.
    Lattice {
        #[arg(long, value_enum, default_value = "divisors")]
        mode: LatticeMode,
        /// Emit the image lattice over x^n - a^-1.
        #[arg(long)]
        dual: bool,
    },
    /// Report on the code generated by a monic right divisor.
    Code {
        #[arg(long)]
        g: String,
    },
    /// Dual generators, for one divisor or all of them.
    Dual {
        #[arg(long)]
        g: Option<String>,
    },
    /// Scale equivalence x^n - a -> x^n - a b theta^n(b^-1).
    Equiv {
        /// Scaling factor.
        #[arg(long, conflicts_with = "to", required_unless_present = "to")]
        b: Option<String>,
        /// Target constant; a suitable b is searched for.
        #[arg(long)]
        to: Option<String>,
        /// Restrict to the code generated by this divisor.
        #[arg(long)]
        g: Option<String>,
    },
    /// Self-dual codes of length n over all constants a.
    Selfdual,
    /// Run verification suites over every factorization of x^n - a.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum LatticeMode {
    Divisors,
    Codes,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SuiteArg {
    Prelim,
    Factors,
    Circulant,
    Transpose,
    Duality,
    Central,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Prelim => Suite::Prelim,
            SuiteArg::Factors => Suite::Factors,
            SuiteArg::Circulant => Suite::Circulant,
            SuiteArg::Transpose => Suite::Transpose,
            SuiteArg::Duality => Suite::Duality,
            SuiteArg::Central => Suite::Central,
            SuiteArg::All => Suite::All,
        }
    }
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = if matches!(e, Error::BudgetExceeded { .. }) { 3 } else { 2 };
        Failure { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, msg: msg.into() }
}

/// Adds the offending input and a caret to parse errors.
fn parsed<T>(what: &str, input: &str, r: skewcirc::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match e {
        Error::Parse { pos, ref msg } => {
            usage(format!("cannot parse {what} at position {pos}: {msg}\n  {input}\n  {}^", " ".repeat(pos)))
        }
        other => Failure::from(other),
    })
}

struct Ctx {
    cli: Cli,
    field: Arc<FieldCtx>,
    ring: Arc<SkewRing>,
}

impl Ctx {
    fn new(cli: Cli) -> Result<Ctx, Failure> {
        let field = parsed("field", &cli.field, parse_field(&cli.field))?;
        let ring = SkewRing::new(field.clone(), cli.theta);
        Ok(Ctx { cli, field, ring })
    }

    fn n(&self) -> Result<usize, Failure> {
        match self.cli.n {
            None => Err(usage("missing -n")),
            Some(0) => Err(usage("n must be at least 1")),
            Some(n) if n > MAX_N => Err(usage(format!("n = {n} exceeds the limit of {MAX_N}"))),
            Some(n) => Ok(n),
        }
    }

    fn element(&self, what: &str, s: &str) -> Result<Gf, Failure> {
        parsed(what, s, parse_element(&self.field, s))
    }

    fn modulus(&self) -> Result<ModulusSpec, Failure> {
        let n = self.n()?;
        let a = self.cli.a.as_deref().ok_or_else(|| usage("missing -a"))?;
        let a = self.element("a", a)?;
        Ok(ModulusSpec::new(self.ring.clone(), n, a)?)
    }

    fn poly(&self, what: &str, s: &str) -> Result<SkewPoly, Failure> {
        parsed(what, s, parse_poly(&self.ring, s))
    }

    fn search_budget(&self) -> u128 {
        self.cli.budget.unwrap_or(DEFAULT_SEARCH_BUDGET)
    }

    fn distance_budget(&self) -> u128 {
        self.cli.budget.unwrap_or(DEFAULT_DISTANCE_BUDGET)
    }

    fn format(&self, allowed: &[Format]) -> Result<Format, Failure> {
        let f = self.cli.format.unwrap_or(allowed[0]);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(usage(format!("--format {f:?} is not available for this command").to_lowercase()))
        }
    }

    fn header(&self, m: &ModulusSpec) -> String {
        format!("{} over {}, theta = frobenius^{}", m.poly(), self.field.describe(), m.theta().exponent())
    }

    fn show(&self, x: Gf) -> String {
        self.field.show(x)
    }
}

fn json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn divisor_table(lat: &DivisorLattice) -> String {
    let rows: Vec<[String; 5]> = lat
        .nodes
        .iter()
        .map(|nd| {
            [
                nd.g.degree().unwrap_or(0).to_string(),
                nd.g.to_string(),
                nd.h.to_string(),
                nd.d.map_or("-".into(), |d| d.to_string()),
                if nd.left_divisor { String::new() } else { "not a left divisor".into() },
            ]
        })
        .collect();
    let head = ["deg", "g", "h", "d", ""];
    let show_d = lat.nodes.iter().any(|nd| nd.d.is_some());
    let cols: Vec<usize> = (0..5).filter(|&c| c != 3 || show_d).collect();
    let width = |c: usize| rows.iter().map(|r| r[c].len()).chain([head[c].len()]).max().unwrap_or(0);
    let widths: Vec<usize> = (0..5).map(width).collect();
    let line = |cells: Vec<&str>| {
        let parts: Vec<String> = cols.iter().zip(cells).map(|(&c, s)| format!("{s:<w$}", w = widths[c])).collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = String::new();
    writeln!(out, "{}", line(cols.iter().map(|&c| head[c]).collect())).unwrap();
    for r in &rows {
        writeln!(out, "{}", line(cols.iter().map(|&c| r[c].as_str()).collect())).unwrap();
    }
    out
}

fn lattice_json(lat: &DivisorLattice) -> serde_json::Value {
    let m = &lat.modulus;
    let f = m.field();
    json!({
        "field": f.describe(),
        "theta": m.theta().exponent(),
        "n": m.n(),
        "a": f.show(m.a()),
        "nodes": lat.entries(),
        "edges": lat.edges,
    })
}

fn cmd_divisors(ctx: &Ctx, distances: bool) -> Result<String, Failure> {
    let fmt = ctx.format(&[Format::Text, Format::Json, Format::Dot])?;
    let m = ctx.modulus()?;
    let divs = enumerate_right_divisors(&m, ctx.search_budget())?;
    let lat = build_lattice(&m, &divs, distances.then(|| ctx.distance_budget()))?;
    Ok(match fmt {
        Format::Json => json_text(&lat.entries()),
        Format::Dot => lat.to_dot(DotMode::Divisors),
        Format::Text => {
            let mut out = format!("{}: {} monic right divisors\n", ctx.header(&m), divs.len());
            out.push_str(&divisor_table(&lat));
            out
        }
    })
}

fn with_distances(lat: DivisorLattice, budget: u128) -> Result<DivisorLattice, Failure> {
    let facs: Vec<Factorization> = lat
        .nodes
        .iter()
        .map(|nd| Factorization { g: nd.g.clone(), h: nd.h.clone(), left_divisor: nd.left_divisor })
        .collect();
    Ok(build_lattice(&lat.modulus, &facs, Some(budget))?)
}

fn cmd_lattice(ctx: &Ctx, mode: LatticeMode, dual: bool) -> Result<String, Failure> {
    let fmt = ctx.format(&[Format::Dot, Format::Json, Format::Text])?;
    let m = ctx.modulus()?;
    let divs = enumerate_right_divisors(&m, ctx.search_budget())?;
    let mut lat = build_lattice(&m, &divs, None)?;
    if dual {
        lat = dual_lattice(&lat, ctx.search_budget())?.0;
    }
    let dot_mode = match mode {
        LatticeMode::Divisors => DotMode::Divisors,
        LatticeMode::Codes => {
            lat = with_distances(lat, ctx.distance_budget())?;
            DotMode::Codes
        }
    };
    Ok(match fmt {
        Format::Dot => lat.to_dot(dot_mode),
        Format::Json => json_text(&lattice_json(&lat)),
        Format::Text => {
            let mut out = format!("{}: {} nodes\n", ctx.header(&lat.modulus), lat.nodes.len());
            out.push_str(&divisor_table(&lat));
            out.push_str("covering pairs (g |_r g'):\n");
            for &(i, j) in &lat.edges {
                writeln!(out, "  {} | {}", lat.nodes[i].g, lat.nodes[j].g).unwrap();
            }
            out
        }
    })
}

fn code_text(ctx: &Ctx, code: &CodeHandle) -> Result<String, Failure> {
    let r = code.report(ctx.distance_budget())?;
    let mut out = String::new();
    let d = r.d.map_or("-".to_string(), |d| d.to_string());
    writeln!(out, "{}", ctx.header(code.modulus())).unwrap();
    writeln!(out, "g = {}", code.g()).unwrap();
    writeln!(out, "h = {}", code.h()).unwrap();
    writeln!(out, "[n,k,d] = [{},{},{d}]", r.n, r.k).unwrap();
    if let Some(defect) = r.defect {
        writeln!(out, "Singleton defect = {defect}").unwrap();
    }
    let counts: Vec<String> = r
        .weight_enumerator
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(w, c)| format!("A{w}={c}"))
        .collect();
    writeln!(out, "weights: {}", counts.join(" ")).unwrap();
    writeln!(out, "dual generator = {} (modulus {})", code.dual_generator(), code.dual()?.modulus().poly()).unwrap();
    writeln!(out, "check polynomial = {} (modulus {})", code.check_poly(), code.check_modulus().poly()).unwrap();
    writeln!(out, "generator matrix:\n{}", code.generator_matrix()).unwrap();
    Ok(out)
}

fn code_output(ctx: &Ctx, code: &CodeHandle) -> Result<String, Failure> {
    match ctx.format(&[Format::Text, Format::Json])? {
        Format::Json => Ok(json_text(&code.report(ctx.distance_budget())?)),
        _ => code_text(ctx, code),
    }
}

fn cmd_code(ctx: &Ctx, g: &str) -> Result<String, Failure> {
    let m = ctx.modulus()?;
    let g = ctx.poly("g", g)?;
    let code = CodeHandle::from_generator(&m, &g)?;
    code_output(ctx, &code)
}

fn cmd_dual(ctx: &Ctx, g: Option<&str>) -> Result<String, Failure> {
    let m = ctx.modulus()?;
    if let Some(g) = g {
        let g = ctx.poly("g", g)?;
        let code = CodeHandle::from_generator(&m, &g)?;
        return code_output(ctx, &code.dual()?);
    }
    let fmt = ctx.format(&[Format::Text, Format::Json])?;
    let divs = enumerate_right_divisors(&m, ctx.search_budget())?;
    let pairs: Vec<(SkewPoly, SkewPoly)> = divs
        .iter()
        .map(|d| Ok((d.g.clone(), CodeHandle::from_generator(&m, &d.g)?.dual_generator())))
        .collect::<Result<_, Failure>>()?;
    let ainv = ctx.show(ctx.field.inv(m.a())?);
    Ok(match fmt {
        Format::Json => json_text(&json!({
            "a": ctx.show(m.a()),
            "dual_a": ainv,
            "pairs": pairs.iter().map(|(g, d)| json!({"g": g, "dual_g": d})).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = format!("{}: dual generators over {}\n", ctx.header(&m), m.with_a(ctx.field.inv(m.a())?)?.poly());
            let w = pairs.iter().map(|(g, _)| g.to_string().len()).max().unwrap_or(0);
            for (g, d) in &pairs {
                writeln!(out, "{:<w$}  ->  {d}", g.to_string()).unwrap();
            }
            out
        }
    })
}

fn cmd_equiv(ctx: &Ctx, b: Option<&str>, to: Option<&str>, g: Option<&str>) -> Result<(String, bool), Failure> {
    let fmt = ctx.format(&[Format::Text, Format::Json])?;
    let m = ctx.modulus()?;
    let b = match (b, to) {
        (Some(b), _) => ctx.element("b", b)?,
        (None, Some(t)) => {
            let t = ctx.element("target", t)?;
            scaling_to(&m, t).ok_or_else(|| {
                Failure { code: 1, msg: format!("x^{}-{} is not scale-equivalent to x^{}-{}", m.n(), ctx.show(m.a()), m.n(), ctx.show(t)) }
            })?
        }
        (None, None) => return Err(usage("one of --b or --to is required")),
    };
    if b.is_zero() {
        return Err(usage("b must be nonzero"));
    }
    let (mhat, rep, pairs) = match g {
        Some(g) => {
            let code = CodeHandle::from_generator(&m, &ctx.poly("g", g)?)?;
            let other = code.scale_equivalent(b)?;
            let rep = code.scale_equivalence_check(b, ctx.distance_budget())?;
            (other.modulus().clone(), rep, vec![(code.g().clone(), other.g().clone())])
        }
        None => {
            let divs = enumerate_right_divisors(&m, ctx.search_budget())?;
            let gs: Vec<SkewPoly> = divs.iter().map(|d| d.g.clone()).collect();
            let (mhat, moved) = transfer_divisors(&m, &gs, b)?;
            let mut rep = Report::new(format!("scaling by {}", ctx.show(b)));
            match enumerate_right_divisors(&mhat, ctx.search_budget()) {
                Ok(direct) => {
                    let direct: Vec<SkewPoly> = direct.into_iter().map(|d| d.g).collect();
                    rep.record("transferred divisors equal the divisors of x^n-ahat", direct == moved, || {
                        vec![("direct count".into(), direct.len().to_string())]
                    });
                }
                Err(e) => rep.skip("transferred divisors equal the divisors of x^n-ahat", e.to_string()),
            }
            (mhat, rep, gs.into_iter().zip(moved).collect())
        }
    };
    let ok = rep.all_passed();
    let text = match fmt {
        Format::Json => json_text(&json!({
            "b": ctx.show(b),
            "a": ctx.show(m.a()),
            "ahat": ctx.show(mhat.a()),
            "pairs": pairs.iter().map(|(g, gb)| json!({"g": g, "scaled_g": gb})).collect::<Vec<_>>(),
            "report": rep,
        })),
        _ => {
            let mut out = format!("{}\nb = {}: ahat = a b theta^n(b^-1) = {}\n", ctx.header(&m), ctx.show(b), ctx.show(mhat.a()));
            let w = pairs.iter().map(|(g, _)| g.to_string().len()).max().unwrap_or(0);
            for (g, gb) in &pairs {
                writeln!(out, "{:<w$}  ->  {gb}", g.to_string()).unwrap();
            }
            writeln!(out, "{rep}").unwrap();
            out
        }
    };
    Ok((text, ok))
}

fn cmd_selfdual(ctx: &Ctx) -> Result<String, Failure> {
    let fmt = ctx.format(&[Format::Text, Format::Json])?;
    let n = ctx.n()?;
    let hits = self_dual_scan(&ctx.ring, n, ctx.search_budget())?;
    let one = ctx.field.one();
    let minus_one = ctx.field.neg(one);
    let consistent = hits.iter().all(|h| n % 2 == 0 && (h.a == one || h.a == minus_one));
    Ok(match fmt {
        Format::Json => json_text(&json!({
            "field": ctx.field.describe(),
            "theta": ctx.ring.theta().exponent(),
            "n": n,
            "hits": hits.iter().map(|h| json!({"a": ctx.show(h.a), "g": h.g})).collect::<Vec<_>>(),
            "n_even_and_a_is_plus_minus_one": consistent,
        })),
        _ => {
            let mut out = format!(
                "self-dual codes of length {n} over {}, theta = frobenius^{}: {}\n",
                ctx.field.describe(),
                ctx.ring.theta().exponent(),
                hits.len()
            );
            for h in &hits {
                writeln!(out, "a = {}: g = {}", ctx.show(h.a), h.g).unwrap();
            }
            writeln!(out, "every hit has n even and a = 1 or -1: {}", yes_no(consistent)).unwrap();
            out
        }
    })
}

fn cmd_verify(ctx: &Ctx, suite: Suite) -> Result<(String, bool), Failure> {
    let fmt = ctx.format(&[Format::Text, Format::Json])?;
    let m = ctx.modulus()?;
    let defaults = SuiteConfig::default();
    let cfg = SuiteConfig {
        trials: ctx.cli.trials,
        seed: ctx.cli.seed,
        budget: ctx.cli.budget.unwrap_or(defaults.budget),
        distance_budget: ctx.cli.budget.unwrap_or(defaults.distance_budget),
    };
    let rep = run_suite(&m, suite, &cfg)?.summarize();
    let ok = rep.all_passed();
    let text = match fmt {
        Format::Json => json_text(&rep),
        _ => format!("{rep}\n"),
    };
    Ok((text, ok))
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    let ctx = Ctx::new(cli)?;
    match &ctx.cli.command {
        Command::Divisors { distances } => cmd_divisors(&ctx, *distances).map(|s| (s, true)),
        Command::Lattice { mode, dual } => cmd_lattice(&ctx, *mode, *dual).map(|s| (s, true)),
        Command::Code { g } => cmd_code(&ctx, g).map(|s| (s, true)),
        Command::Dual { g } => cmd_dual(&ctx, g.as_deref()).map(|s| (s, true)),
        Command::Equiv { b, to, g } => cmd_equiv(&ctx, b.as_deref(), to.as_deref(), g.as_deref()),
        Command::Selfdual => cmd_selfdual(&ctx).map(|s| (s, true)),
        Command::Verify { suite } => cmd_verify(&ctx, (*suite).into()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
