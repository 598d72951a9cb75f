//! The `scnr` command-line tool.
//!
//! Exit codes: 0 success, 1 a verification claim failed, 2 malformed input
//! or usage, 3 capacity exceeded.

pub mod args;

use std::fmt::Write as _;
use std::io::{self, Read};
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use scnr_core::circulant::{enumerate_circulants, CirculantSpec};
use scnr_core::families;
use scnr_core::optimality::{compare_polynomials, tournament_polynomials};
use scnr_core::poly::{format_rational, parse_rational};
use scnr_core::reliability::{configured_exact_limit, exact_scnr_with_limit, MAX_EXACT_N};
use scnr_core::verify::{self, csv_field, VerifyConfig};
use scnr_core::{mc_scnr, with_workers, Digraph, ReliabilityPolynomial, SearchReport};
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CLAIM_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAPACITY: u8 = 3;

/// Orders accepted by `search`.
pub const SEARCH_RANGE: RangeInclusive<usize> = 4..=25;

#[derive(Debug, Parser)]
#[command(name = "scnr", version, about = "Strongly connected node reliability of digraphs")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0, global = true)]
    pub workers: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyType {
    Cycle,
    Star,
    StarPlusArc,
    G,
    H,
    Circulant,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact reliability polynomial of a digraph given as JSON.
    Compute {
        /// Digraph file, or `-` for stdin.
        input: PathBuf,
        /// Also evaluate at this point (`a/b` or decimal).
        #[arg(long)]
        eval: Option<String>,
        /// Include the N-vector.
        #[arg(long = "n-form")]
        n_form: bool,
        /// Include power-basis coefficients.
        #[arg(long)]
        power: bool,
    },
    /// Emit a member of a named family as digraph JSON.
    Family {
        #[arg(long = "type", value_enum)]
        kind: FamilyType,
        #[arg(long)]
        n: usize,
        /// Cycle length for the `g` and `h` families.
        #[arg(long)]
        k: Option<usize>,
        /// Connection pair for circulants.
        #[arg(long = "s", value_parser = args::parse_pair)]
        s: Option<(u64, u64)>,
    },
    /// Compare two digraphs near 0, near 1 and on all of (0, 1).
    Compare { first: PathBuf, second: PathBuf },
    /// Tournament over every connected two-generator circulant class of order n.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_enum, default_value_t = FamilyType::Circulant)]
        kind: FamilyType,
    },
    /// Check the coefficient formulas and optimality claims over finite ranges.
    Verify {
        /// Use this range for every family (`a..b`, `a..=b` or `n`).
        #[arg(long, value_parser = args::parse_range)]
        n: Option<RangeInclusive<usize>>,
        #[arg(long, value_parser = args::parse_range)]
        even: Option<RangeInclusive<usize>>,
        #[arg(long, value_parser = args::parse_range)]
        odd: Option<RangeInclusive<usize>>,
        #[arg(long, value_parser = args::parse_range)]
        div3: Option<RangeInclusive<usize>>,
        #[arg(long, value_parser = args::parse_range)]
        witness: Option<RangeInclusive<usize>>,
        /// Skip checks that need a complete polynomial above this order.
        #[arg(long = "full-limit", default_value_t = verify::DEFAULT_FULL_LIMIT)]
        full_limit: usize,
        /// Seed for the random digraphs in the bundle check.
        #[arg(long)]
        seed: Option<u64>,
        /// Corrupt the coefficients examined by this claim.
        #[arg(long = "inject-fault", hide = true)]
        inject_fault: Option<String>,
    },
    /// Monte Carlo estimate of the reliability at one point.
    Mc {
        input: PathBuf,
        /// Vertex operating probability.
        #[arg(long, visible_alias = "p")]
        eval: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<scnr_core::Error> for Failure {
    fn from(err: scnr_core::Error) -> Self {
        Failure {
            code: if err.is_capacity() { EXIT_CAPACITY } else { EXIT_INPUT },
            message: err.to_string(),
        }
    }
}

/// Standard output plus diagnostics for stderr.
#[derive(Debug, Default)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: u8,
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    with_workers_opt(cli.workers, || dispatch(cli))
}

fn with_workers_opt<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> R {
    if workers == 0 {
        f()
    } else {
        with_workers(workers, f)
    }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Compute {
            input,
            eval,
            n_form,
            power,
        } => compute(cli.format, input, eval.as_deref(), *n_form, *power),
        Command::Family { kind, n, k, s } => family(cli.format, *kind, *n, *k, *s),
        Command::Compare { first, second } => compare(cli.format, first, second),
        Command::Search { n, kind } => search(cli.format, *n, *kind),
        Command::Verify {
            n,
            even,
            odd,
            div3,
            witness,
            full_limit,
            seed,
            inject_fault,
        } => {
            let mut config = VerifyConfig::default();
            if let Some(r) = n {
                config.cycle = r.clone();
                config.star = r.clone();
                config.star_exhaustive = r.clone();
                config.sparse = r.clone();
                config.even = r.clone();
                config.odd = r.clone();
                config.div3 = r.clone();
                config.witness = r.clone();
            }
            for (slot, value) in [
                (&mut config.even, even),
                (&mut config.odd, odd),
                (&mut config.div3, div3),
                (&mut config.witness, witness),
            ] {
                if let Some(r) = value {
                    *slot = r.clone();
                }
            }
            config.full_limit = (*full_limit).min(configured_exact_limit());
            if let Some(seed) = seed {
                config.seed = *seed;
            }
            if let Some(claim) = inject_fault {
                if !verify::claims::ALL.contains(&claim.as_str()) {
                    return Err(Failure::input(format!("unknown claim {claim:?}")));
                }
                config.fault = Some(claim.clone());
            }
            verify_cmd(cli.format, &config)
        }
        Command::Mc {
            input,
            eval,
            samples,
            seed,
        } => mc(cli.format, input, eval, *samples, *seed),
    }
}

fn display(path: &Path) -> String {
    if path == Path::new("-") {
        "<stdin>".into()
    } else {
        path.display().to_string()
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure::input(format!("{}: {e}", display(path))))?;
    Ok(text)
}

fn read_digraph(path: &Path) -> Result<Digraph, Failure> {
    Digraph::from_json_str(&read_input(path)?)
        .map_err(|e| Failure::input(format!("{}: {e}", display(path))))
}

fn exact(g: &Digraph) -> Result<ReliabilityPolynomial, Failure> {
    Ok(exact_scnr_with_limit(g, configured_exact_limit())?)
}

fn strings<T: ToString>(values: &[T]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serialisable");
    s.push('\n');
    s
}

fn not_strongly_connected(path: &Path) -> String {
    format!("warning: {} is not strongly connected; F_0 = 0", display(path))
}

fn compute(
    format: Format,
    input: &Path,
    eval: Option<&str>,
    n_form: bool,
    power: bool,
) -> Result<Output, Failure> {
    let g = read_digraph(input)?;
    let point = eval.map(parse_rational).transpose()?;
    let rp = exact(&g)?;
    let value = point.as_ref().map(|p| rp.evaluate(p)).transpose()?;
    let mut out = Output::default();
    if !g.is_strongly_connected() {
        out.warnings.push(not_strongly_connected(input));
    }
    let f = strings(rp.f());
    let n_vec = strings(&rp.n_form());
    let power_basis = rp.to_power_basis();
    let mut powers: Vec<String> = strings(power_basis.coeffs());
    powers.resize(rp.order() + 1, "0".into());

    out.stdout = match format {
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("n".into(), json!(rp.order()));
            obj.insert("F".into(), json!(f));
            if n_form {
                obj.insert("N".into(), json!(n_vec));
            }
            if power {
                obj.insert("power".into(), json!(powers));
            }
            if let (Some(p), Some(v)) = (&point, &value) {
                obj.insert("eval".into(), json!({ "p": format_rational(p), "value": format_rational(v) }));
            }
            to_json(&Value::Object(obj))
        }
        Format::Csv => {
            let mut s = String::from("i,F");
            if n_form {
                s.push_str(",N");
            }
            if power {
                s.push_str(",power");
            }
            s.push('\n');
            for i in 0..=rp.order() {
                let _ = write!(s, "{i},{}", f[i]);
                if n_form {
                    let _ = write!(s, ",{}", n_vec[i]);
                }
                if power {
                    let _ = write!(s, ",{}", powers[i]);
                }
                s.push('\n');
            }
            if let (Some(p), Some(v)) = (&point, &value) {
                let _ = write!(s, "\np,value\n{},{}\n", format_rational(p), format_rational(v));
            }
            s
        }
        Format::Text => {
            let mut s = format!("n = {}\nF = [{}]\n", rp.order(), f.join(", "));
            if n_form {
                let _ = writeln!(s, "N = [{}]", n_vec.join(", "));
            }
            if power {
                let _ = writeln!(s, "Rel(p) = {power_basis}");
            }
            if let (Some(p), Some(v)) = (&point, &value) {
                let _ = writeln!(s, "Rel({}) = {}", format_rational(p), format_rational(v));
            }
            s
        }
    };
    Ok(out)
}

fn family(
    format: Format,
    kind: FamilyType,
    n: usize,
    k: Option<usize>,
    s: Option<(u64, u64)>,
) -> Result<Output, Failure> {
    let need_k = || k.ok_or_else(|| Failure::input("--k is required for this family"));
    let g = match kind {
        FamilyType::Cycle => families::directed_cycle(n)?,
        FamilyType::Star => families::bundled_star(n)?,
        FamilyType::StarPlusArc => families::star_plus_arc(n)?,
        FamilyType::G => families::g_family(n, need_k()?)?,
        FamilyType::H => families::h_family(n, need_k()?)?,
        FamilyType::Circulant => {
            let (a, b) = s.ok_or_else(|| Failure::input("--s a,b is required for circulants"))?;
            CirculantSpec::new(n as u64, a, b)?.to_digraph()?
        }
    };
    let stdout = match format {
        Format::Json => format!("{}\n", g.to_json()),
        Format::Csv => {
            let mut s = String::from("u,v\n");
            for (u, v) in g.arcs() {
                let _ = writeln!(s, "{u},{v}");
            }
            s
        }
        Format::Text => {
            let mut s = format!("n = {}, {} arcs, {} bundles\n", g.order(), g.arc_count(), g.count_bundles());
            for (u, v) in g.arcs() {
                let _ = writeln!(s, "{u} -> {v}");
            }
            s
        }
    };
    Ok(Output {
        stdout,
        ..Output::default()
    })
}

fn compare(format: Format, first: &Path, second: &Path) -> Result<Output, Failure> {
    let g = read_digraph(first)?;
    let h = read_digraph(second)?;
    if g.order() != h.order() {
        return Err(scnr_core::Error::OrderMismatch {
            left: g.order(),
            right: h.order(),
        }
        .into());
    }
    let mut out = Output::default();
    for (path, graph) in [(first, &g), (second, &h)] {
        if !graph.is_strongly_connected() {
            out.warnings.push(not_strongly_connected(path));
        }
    }
    let (gp, hp) = (exact(&g)?, exact(&h)?);
    let v = compare_polynomials(&gp, &hp)?;
    out.stdout = match format {
        Format::Json => to_json(&json!({
            "n": g.order(),
            "G": strings(gp.f()),
            "H": strings(hp.f()),
            "near_zero": v.near_zero,
            "near_zero_index": v.near_zero_index,
            "near_one": v.near_one,
            "near_one_index": v.near_one_index,
            "dominance": v.dominance,
        })),
        Format::Csv => {
            let mut s = String::from("lo,hi,sign_change\n");
            for r in &v.dominance.roots {
                let _ = writeln!(s, "{},{},{}", format_rational(&r.lo), format_rational(&r.hi), r.sign_change);
            }
            s
        }
        Format::Text => {
            let index = |i: Option<usize>| i.map_or("-".to_string(), |i| i.to_string());
            let mut s = format!(
                "F(G) = [{}]\nF(H) = [{}]\nnear 0: {} (N index {})\nnear 1: {} (F index {})\ndominance: {}\n",
                strings(gp.f()).join(", "),
                strings(hp.f()).join(", "),
                label(&v.near_zero),
                index(v.near_zero_index),
                label(&v.near_one),
                index(v.near_one_index),
                serde_json::to_value(v.dominance.status).expect("status").as_str().unwrap_or_default(),
            );
            for r in &v.dominance.roots {
                let kind = if r.sign_change { "crossing" } else { "touch" };
                let _ = writeln!(s, "{kind} in ({}, {})", format_rational(&r.lo), format_rational(&r.hi));
            }
            s
        }
    };
    Ok(out)
}

fn label<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn search(format: Format, n: usize, kind: FamilyType) -> Result<Output, Failure> {
    if kind != FamilyType::Circulant {
        return Err(Failure::input("search supports only --type circulant"));
    }
    if !SEARCH_RANGE.contains(&n) {
        return Err(Failure::input(format!(
            "search needs {} <= n <= {}, got {n}",
            SEARCH_RANGE.start(),
            SEARCH_RANGE.end()
        )));
    }
    let limit = configured_exact_limit();
    if n > limit {
        return Err(scnr_core::Error::Capacity {
            what: "exact enumeration order",
            limit,
            requested: n,
        }
        .into());
    }
    let classes = enumerate_circulants(n as u64)?;
    let labels: Vec<String> = classes.iter().map(|c| c.canonical.to_string()).collect();
    let polys = classes
        .iter()
        .map(|c| exact(&c.canonical.to_digraph()?))
        .collect::<Result<Vec<_>, Failure>>()?;
    let report = tournament_polynomials("circulant", &labels, &polys)?;
    Ok(Output {
        stdout: render_search(format, &report),
        ..Output::default()
    })
}

fn render_search(format: Format, report: &SearchReport) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => {
            let mut s = String::from("label,near_zero_rank,near_one_rank,F\n");
            for m in &report.members {
                let rank = |ranking: &[String]| ranking.iter().position(|l| *l == m.label).map_or(0, |i| i + 1);
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    m.label,
                    rank(&report.near_zero_ranking),
                    rank(&report.near_one_ranking),
                    m.f.join(" ")
                );
            }
            s
        }
        Format::Text => {
            let mut s = format!("{} classes of order {}\n", report.members.len(), report.n);
            for m in &report.members {
                let _ = writeln!(s, "  {:<12} F = [{}]", m.label, m.f.join(", "));
            }
            let _ = writeln!(s, "near 0: {}", report.near_zero_ranking.join(" > "));
            let _ = writeln!(s, "near 1: {}", report.near_one_ranking.join(" > "));
            if report.has_winner() {
                let _ = writeln!(s, "winner: {}", report.winners.join(", "));
            } else {
                let _ = writeln!(s, "winner: none");
            }
            if let Some(w) = &report.witness {
                let _ = writeln!(
                    s,
                    "witness: {} and {} cross in ({}, {})",
                    w.first,
                    w.second,
                    format_rational(&w.crossing.lo),
                    format_rational(&w.crossing.hi)
                );
            }
            s
        }
    }
}

fn verify_cmd(format: Format, config: &VerifyConfig) -> Result<Output, Failure> {
    let report = verify::verify_paper_suite(config);
    let stdout = match format {
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    let warnings = report
        .failures()
        .map(|r| format!("claim failed: {} {}", r.claim, r.instance))
        .collect();
    Ok(Output {
        stdout,
        warnings,
        code: if report.passed { EXIT_OK } else { EXIT_CLAIM_FAILED },
    })
}

fn mc(format: Format, input: &Path, eval: &str, samples: u64, seed: u64) -> Result<Output, Failure> {
    let g = read_digraph(input)?;
    let p = parse_rational(eval)?;
    let est = mc_scnr(&g, p.to_f64().unwrap_or(f64::NAN), samples, seed)?;
    let mut out = Output::default();
    if !g.is_strongly_connected() {
        out.warnings.push(not_strongly_connected(input));
    }
    out.stdout = match format {
        Format::Json => to_json(&json!({
            "n": g.order(),
            "p": format_rational(&p),
            "samples": est.samples,
            "seed": est.seed,
            "hits": est.hits,
            "estimate": est.estimate,
            "std_error": est.std_error,
        })),
        Format::Csv => format!(
            "n,p,samples,seed,hits,estimate,std_error\n{},{},{},{},{},{},{}\n",
            g.order(),
            csv_field(&format_rational(&p)),
            est.samples,
            est.seed,
            est.hits,
            est.estimate,
            est.std_error
        ),
        Format::Text => format!(
            "Rel({}) ≈ {} ± {} (estimate; {} of {} samples, seed {})\n",
            format_rational(&p),
            est.estimate,
            est.std_error,
            est.hits,
            est.samples,
            est.seed
        ),
    };
    Ok(out)
}

/// Largest order the exact engine will accept in this process.
pub fn exact_limit_note() -> String {
    format!("exact enumeration is limited to n <= {} (hard cap {MAX_EXACT_N})", configured_exact_limit())
}
