use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use copkit_core::export::{
    ccop_json, certificates_json, chord_json, cop_json, report_json, scan_csv, scan_json,
};
use copkit_core::{
    chord_float, chord_gamma, classify_region, cop_build, expand, scan, verify_certificates,
    BaseSet, BaseSetRegistry, CAxis, CCoP, CPoint, Error, ExpansionCertificate, ExpansionQuery,
    FigureSpec, GeneratorFilter, GeneratorRange, Rational, RegionClass, RendererRegistry, Sign,
    VerificationReport,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod config;

use config::{CliConfig, Format, SIEVE_BOUND_ENV};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_EMPTY: u8 = 2;
pub const EXIT_UNSOUND: u8 = 3;
pub const EXIT_IO: u8 = 4;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    pub fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            kind: kind.into(),
            message: message.into(),
        }
    }

    fn io(path: &Path, err: std::io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            kind: "io".into(),
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::Io { .. }) {
            EXIT_IO
        } else {
            EXIT_USAGE
        };
        Failure {
            code,
            kind: e.kind().into(),
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "copkit",
    version,
    about = "Circles of partition and expansion certificates"
)]
struct Cli {
    /// key=value configuration file
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Largest generator any base set is materialized for
    #[arg(long, global = true)]
    sieve_bound: Option<u64>,

    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Seed for sampled checks
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Weights and axes of C(n, M)
    Cop(BaseArgs),
    /// Points and axes of the complex circle of partition
    Ccop(BaseArgs),
    /// Exact chord length between two points of C°(n)
    Chord {
        #[arg(long)]
        n: u64,
        /// Point as real part with sign, e.g. `3+` or `7-`
        #[arg(long, value_parser = parse_point)]
        p: (u64, Sign),
        #[arg(long, value_parser = parse_point)]
        q: (u64, Sign),
    },
    /// Position of a rational complex point relative to the embedding circle of n
    Classify {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
        re: Rational,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational, default_value = "0")]
        im: Rational,
    },
    /// Expansion certificates for one (n, t, s)
    Expand {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        n: u64,
        /// Print the verification report with the certificates
        #[arg(long)]
        verify: bool,
    },
    /// Expansion summary over a range of generators
    Scan {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, conflicts_with = "odd")]
        even: bool,
        #[arg(long)]
        odd: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an SVG figure
    Render(RenderArgs),
    /// Sampled check of exact chords against float distances
    Check {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 300)]
        max_n: u64,
    },
}

#[derive(Args)]
struct BaseArgs {
    #[arg(long)]
    n: u64,
    /// Base set: nat, primes, odds or custom:PATH (default from config)
    #[arg(long)]
    base: Option<String>,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    t: u64,
    #[arg(long)]
    s: u64,
    #[arg(long, default_value = "nat")]
    superset: String,
    #[arg(long, default_value = "primes")]
    subset: String,
    /// Admissible generators for n, t and s (base-set spec)
    #[arg(long)]
    filter: Option<String>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: Option<u64>,
    /// Axis through a point, e.g. `3` or `3-`; repeatable
    #[arg(long, value_parser = parse_point)]
    axis: Vec<(u64, Sign)>,
    #[arg(long)]
    base: Option<String>,
    #[arg(long, value_delimiter = ',')]
    generators: Vec<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long, default_value = "nat")]
    superset: String,
    #[arg(long, default_value = "primes")]
    subset: String,
    /// Keep only certificates whose z witness has this low endpoint
    #[arg(long)]
    z_low: Option<u64>,
    #[arg(long, default_value_t = 10.0)]
    scale: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Circle,
    BigBang,
    Expansion,
}

fn parse_point(s: &str) -> Result<(u64, Sign), String> {
    let (digits, sign) = match s.strip_suffix('+') {
        Some(d) => (d, Sign::Plus),
        None => match s.strip_suffix('-') {
            Some(d) => (d, Sign::Minus),
            None => (s, Sign::Plus),
        },
    };
    let x = digits
        .parse()
        .map_err(|_| format!("expected a point like `3+` or `7-`, got `{s}`"))?;
    Ok((x, sign))
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse()
        .map_err(|_| format!("expected a rational like `3`, `-1/2`, got `{s}`"))
}

struct Ctx {
    config: CliConfig,
    format: Option<Format>,
    registry: BaseSetRegistry,
}

struct Output {
    stdout: String,
    code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            code: EXIT_OK,
        }
    }
}

impl Ctx {
    fn format_or(&self, fallback: Format) -> Format {
        self.format
            .or(self.config.output_format)
            .unwrap_or(fallback)
    }

    fn require(&self, needed: u64) -> Result<(), Failure> {
        if needed > self.config.sieve_bound {
            return Err(Failure::usage(
                "sieve-bound",
                format!(
                    "required sieve bound {needed} exceeds configured sieve_bound {}",
                    self.config.sieve_bound
                ),
            ));
        }
        Ok(())
    }

    fn base(&self, spec: Option<&str>) -> Result<BaseSet, Failure> {
        let spec = spec.unwrap_or(&self.config.default_base);
        Ok(self.registry.resolve(spec, self.config.sieve_bound)?)
    }

    fn filter(&self, spec: Option<&str>) -> Result<GeneratorFilter, Failure> {
        Ok(match spec {
            Some(spec) => GeneratorFilter::only(self.base(Some(spec))?),
            None => GeneratorFilter::any(),
        })
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn sign_char(s: Sign) -> char {
    if s == Sign::Plus {
        '+'
    } else {
        '-'
    }
}

fn cmd_cop(ctx: &Ctx, args: &BaseArgs) -> Result<Output, Failure> {
    ctx.require(args.n)?;
    let base = ctx.base(args.base.as_deref())?;
    let cop = cop_build(args.n, &base)?;
    let axes = copkit_core::axes(&cop);
    let stdout = match ctx.format_or(Format::Text) {
        Format::Json => cop_json(&cop) + "\n",
        Format::Csv => {
            let mut out = String::from("low,high\n");
            for a in axes.all() {
                let _ = writeln!(out, "{},{}", a.low, a.high);
            }
            out
        }
        Format::Text if cop.is_empty() => format!("C({}, {}) is empty\n", cop.n(), cop.base()),
        Format::Text => {
            let mut out = format!(
                "C({}, {}): {}\n",
                cop.n(),
                cop.base(),
                join(cop.weights(), " ")
            );
            let _ = writeln!(
                out,
                "axes: {}",
                join(
                    axes.real.iter().map(|a| format!("{}+{}", a.low, a.high)),
                    " "
                )
            );
            if let Some(d) = axes.degenerate {
                let _ = writeln!(out, "center: {}", d.low);
            }
            let _ = writeln!(out, "nu: {}", copkit_core::nu(&cop));
            out
        }
    };
    let code = if cop.is_empty() { EXIT_EMPTY } else { EXIT_OK };
    Ok(Output { stdout, code })
}

fn cmd_ccop(ctx: &Ctx, args: &BaseArgs) -> Result<Output, Failure> {
    ctx.require(args.n)?;
    let base = ctx.base(args.base.as_deref())?;
    let c = CCoP::build(args.n, &base)?;
    let stdout = match ctx.format_or(Format::Text) {
        Format::Json => ccop_json(&c) + "\n",
        Format::Csv => {
            let mut out = String::from("x,sigma,imag_sq\n");
            for z in c.points() {
                let _ = writeln!(out, "{},{},{}", z.x(), sign_char(z.sigma()), z.imag_sq());
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "C°({}, {}): {} points, nu° = {}\n",
                c.n(),
                c.source().base(),
                c.points().len(),
                c.nu_complex()
            );
            for a in c.axes() {
                let _ = writeln!(out, "{}  --  {}", a.p(), a.q());
            }
            out
        }
    };
    let code = if c.is_empty() { EXIT_EMPTY } else { EXIT_OK };
    Ok(Output { stdout, code })
}

fn cmd_chord(ctx: &Ctx, n: u64, p: (u64, Sign), q: (u64, Sign)) -> Result<Output, Failure> {
    ctx.require(n)?;
    let p = CPoint::new(n, p.0, p.1)?;
    let q = CPoint::new(n, q.0, q.1)?;
    let g = chord_gamma(&p, &q)?;
    Ok(Output::ok(match ctx.format_or(Format::Text) {
        Format::Json => chord_json(&g) + "\n",
        Format::Csv => format!(
            "a,op,b,value\n{},{},{},{}\n",
            g.a(),
            g.op().symbol(),
            g.b(),
            g.value()
        ),
        Format::Text => format!("{g} ≈ {}\n", g.value()),
    }))
}

fn cmd_classify(ctx: &Ctx, n: u64, re: Rational, im: Rational) -> Result<Output, Failure> {
    ctx.require(n)?;
    if n < 2 {
        return Err(Error::InvalidGenerator(n).into());
    }
    let class = match classify_region(n, re, im) {
        RegionClass::OnCircle => "on-circle",
        RegionClass::Interior => "interior",
        RegionClass::Exterior => "exterior",
    };
    Ok(Output::ok(match ctx.format_or(Format::Text) {
        Format::Json => serde_json::json!({ "n": n, "re": re.to_string(), "im": im.to_string(), "region": class })
            .to_string()
            + "\n",
        Format::Csv => format!("n,re,im,region\n{n},{re},{im},{class}\n"),
        Format::Text => format!("{class}\n"),
    }))
}

fn certificate_line(c: &ExpansionCertificate, sound: bool) -> String {
    let d = c.deduced_axis();
    format!(
        "{} -> {} -> {} [{}]: z = {}, w = {}, deduced {{{}, {}}}{}{}{}",
        c.n(),
        c.n() + c.t(),
        c.n() + c.s(),
        c.principle().as_str(),
        c.z_low(),
        c.w_re(),
        d.low,
        d.high,
        if c.w_high_endpoint() {
            ", w high endpoint"
        } else {
            ""
        },
        if c.degenerate_witness() {
            ", degenerate witness"
        } else {
            ""
        },
        if sound { "" } else { ", UNSOUND" },
    )
}

fn report_text(report: &VerificationReport) -> String {
    let mut out = format!("sound: {}\n", report.sound());
    match &report.missing {
        Some(m) => {
            let _ = writeln!(out, "complete: {}", m.is_empty());
            for a in m {
                let _ = writeln!(out, "missing: {{{}, {}}}", a.low, a.high);
            }
        }
        None => out.push_str("complete: not claimed\n"),
    }
    for v in &report.soundness_violations {
        let _ = writeln!(out, "violation: {v:?}");
    }
    out
}

fn cmd_expand(ctx: &Ctx, q: &QueryArgs, n: u64, verify: bool) -> Result<Output, Failure> {
    ctx.require(n.saturating_add(q.t.max(q.s)))?;
    let superset = ctx.base(Some(&q.superset))?;
    let subset = ctx.base(Some(&q.subset))?;
    let filter = ctx.filter(q.filter.as_deref())?;
    let query = ExpansionQuery::with_filter(n, q.t, q.s, &superset, &subset, &filter)?;
    let certs = expand(&query)?;
    let report = verify_certificates(&query, &certs)?;
    let stdout = match ctx.format_or(Format::Json) {
        Format::Json if verify => format!(
            "{{\"certificates\":{},\"report\":{}}}\n",
            certificates_json(&certs, &report),
            report_json(&report)
        ),
        Format::Json => certificates_json(&certs, &report) + "\n",
        Format::Csv => {
            let mut out =
                String::from("n,t,s,principle,z_low,w_re,deduced_low,deduced_high,sound\n");
            for (c, sound) in certs.iter().zip(&report.certificate_sound) {
                let d = c.deduced_axis();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    c.n(),
                    c.t(),
                    c.s(),
                    c.principle().as_str(),
                    c.z_low(),
                    c.w_re(),
                    d.low,
                    d.high,
                    sound
                );
            }
            out
        }
        Format::Text => {
            let mut out: String = certs
                .iter()
                .zip(&report.certificate_sound)
                .map(|(c, &sound)| certificate_line(c, sound) + "\n")
                .collect();
            if verify {
                out.push_str(&report_text(&report));
            }
            out
        }
    };
    let code = if certs.is_empty() {
        EXIT_EMPTY
    } else if !report.sound() {
        EXIT_UNSOUND
    } else {
        EXIT_OK
    };
    Ok(Output { stdout, code })
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    std::fs::write(path, bytes).map_err(|e| Failure::io(path, e))
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    ctx: &Ctx,
    q: &QueryArgs,
    from: u64,
    to: u64,
    even: bool,
    odd: bool,
    out: Option<&Path>,
) -> Result<Output, Failure> {
    let range = if even {
        GeneratorRange::even(from, to)
    } else if odd {
        GeneratorRange::odd(from, to)
    } else {
        GeneratorRange::new(from, to)
    };
    if range.is_empty() {
        return Err(Failure::usage(
            "empty-range",
            format!("generator range [{from}, {to}] is empty"),
        ));
    }
    ctx.require(to.saturating_add(q.t.max(q.s)))?;
    let superset = ctx.base(Some(&q.superset))?;
    let subset = ctx.base(Some(&q.subset))?;
    let filter = ctx.filter(q.filter.as_deref())?;
    let rows = scan(range, q.t, q.s, &superset, &subset, &filter)?;
    let body = match ctx.format_or(Format::Csv) {
        Format::Json => scan_json(&rows) + "\n",
        Format::Csv | Format::Text => scan_csv(&rows),
    };
    let code = if rows.iter().all(|r| r.sound) {
        EXIT_OK
    } else {
        EXIT_UNSOUND
    };
    match out {
        Some(path) => {
            write_file(path, body.as_bytes())?;
            Ok(Output {
                stdout: String::new(),
                code,
            })
        }
        None => Ok(Output { stdout: body, code }),
    }
}

fn cmd_render(ctx: &Ctx, r: &RenderArgs) -> Result<Output, Failure> {
    let missing = |flag: &str| Failure::usage("missing-argument", format!("--kind needs {flag}"));
    let spec = match r.kind {
        KindArg::Circle => {
            let n = r.n.ok_or_else(|| missing("--n"))?;
            ctx.require(n)?;
            let base = ctx.base(r.base.as_deref())?;
            let c = CCoP::build(n, &base)?;
            let axes = if r.axis.is_empty() {
                c.axes().to_vec()
            } else {
                r.axis
                    .iter()
                    .map(|&(x, sign)| {
                        let p = CPoint::new(n, x, sign)?;
                        if !c.contains(&p) {
                            return Err(Error::NotAPoint { n, x });
                        }
                        Ok(CAxis::through(p))
                    })
                    .collect::<Result<_, _>>()?
            };
            FigureSpec::single_circle(n, axes, r.scale)
        }
        KindArg::BigBang => {
            if r.generators.is_empty() {
                return Err(missing("--generators"));
            }
            FigureSpec::big_bang(r.generators.clone(), r.scale)
        }
        KindArg::Expansion => {
            let n = r.n.ok_or_else(|| missing("--n"))?;
            let t = r.t.ok_or_else(|| missing("--t"))?;
            let s = r.s.ok_or_else(|| missing("--s"))?;
            ctx.require(n.saturating_add(t.max(s)))?;
            let superset = ctx.base(Some(&r.superset))?;
            let subset = ctx.base(Some(&r.subset))?;
            let query = ExpansionQuery::new(n, t, s, &superset, &subset)?;
            let certs: Vec<_> = expand(&query)?
                .into_iter()
                .filter(|c| r.z_low.is_none_or(|z| c.z_low() == z))
                .collect();
            if certs.is_empty() {
                return Ok(Output {
                    stdout: String::new(),
                    code: EXIT_EMPTY,
                });
            }
            FigureSpec::expansion(certs, r.scale)
        }
    };
    let svg = RendererRegistry::with_builtins().render(&spec)?;
    match &r.out {
        Some(path) => {
            write_file(path, &svg)?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(String::from_utf8(svg).expect("svg is utf-8"))),
    }
}

fn euclid(p: &CPoint, q: &CPoint) -> f64 {
    let (x1, y1) = p.coords();
    let (x2, y2) = q.coords();
    (x1 - x2).hypot(y1 - y2)
}

fn cmd_check(ctx: &Ctx, samples: usize, max_n: u64) -> Result<Output, Failure> {
    if max_n < 2 {
        return Err(Error::InvalidGenerator(max_n).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.config.seed);
    let mut worst = 0.0f64;
    let mut failures = 0usize;
    for _ in 0..samples {
        let n = rng.gen_range(2..=max_n);
        let point = |rng: &mut ChaCha8Rng| {
            let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
            CPoint::new(n, rng.gen_range(1..n), sign)
        };
        let (p, q) = (point(&mut rng)?, point(&mut rng)?);
        let surd = chord_float(&p, &q)?;
        let direct = euclid(&p, &q);
        let err = if direct == 0.0 {
            surd.abs()
        } else {
            (surd - direct).abs() / direct
        };
        worst = worst.max(err);
        if err > 1e-9 {
            failures += 1;
        }
    }
    let stdout = match ctx.format_or(Format::Text) {
        Format::Json => {
            serde_json::json!({
                "failures": failures,
                "max_relative_error": worst,
                "samples": samples,
                "seed": ctx.config.seed,
            })
            .to_string()
                + "\n"
        }
        Format::Csv => format!(
            "samples,seed,failures,max_relative_error\n{samples},{},{failures},{worst:e}\n",
            ctx.config.seed
        ),
        Format::Text => format!(
            "{samples} samples (seed {}): {failures} failures, max relative error {worst:.1e}\n",
            ctx.config.seed
        ),
    };
    let code = if failures == 0 { EXIT_OK } else { EXIT_UNSOUND };
    Ok(Output { stdout, code })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let config = match &cli.config {
        Some(path) => CliConfig::load(path)?,
        None => CliConfig::default(),
    };
    let env = std::env::var(SIEVE_BOUND_ENV).ok();
    let mut config = config.with_overrides(env.as_deref(), cli.sieve_bound)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    let ctx = Ctx {
        config,
        format: cli.format.map(Format::from),
        registry: BaseSetRegistry::with_builtins(),
    };
    match &cli.command {
        Command::Cop(args) => cmd_cop(&ctx, args),
        Command::Ccop(args) => cmd_ccop(&ctx, args),
        Command::Chord { n, p, q } => cmd_chord(&ctx, *n, *p, *q),
        Command::Classify { n, re, im } => cmd_classify(&ctx, *n, *re, *im),
        Command::Expand { query, n, verify } => cmd_expand(&ctx, query, *n, *verify),
        Command::Scan {
            query,
            from,
            to,
            even,
            odd,
            out,
        } => cmd_scan(&ctx, query, *from, *to, *even, *odd, out.as_deref()),
        Command::Render(args) => cmd_render(&ctx, args),
        Command::Check { samples, max_n } => cmd_check(&ctx, *samples, *max_n),
    }
}

/// Format for error output, as far as it can be known.
fn error_format(cli: &Cli) -> Format {
    cli.format
        .map(Format::from)
        .or_else(|| {
            cli.config
                .as_deref()
                .and_then(|p| CliConfig::load(p).ok()?.output_format)
        })
        .unwrap_or(Format::Text)
}

fn report_failure(f: &Failure, format: Format) {
    if format == Format::Json {
        let v = serde_json::json!({ "error": { "code": f.code, "kind": f.kind, "message": f.message } });
        eprintln!("{v}");
    } else {
        eprintln!("copkit: {}", f.message);
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(out.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(EXIT_IO);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            report_failure(&f, error_format(&cli));
            ExitCode::from(f.code)
        }
    }
}
