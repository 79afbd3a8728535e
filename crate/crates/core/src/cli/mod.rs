//! Batch front end: subcommands over definition files, human tables or JSON line records.

pub mod deffile;
pub mod expr;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;
use serde_json::{json, Value};

use crate::analytic::exp::exp_coeffs;
use crate::base_arith::matrix::{binomial, Mat};
use crate::base_arith::poly::FqPoly;
use crate::base_arith::scalar::Scalar;
use crate::cinf_series::element::fmt_ratio;
use crate::cinf_series::{CinfConfig, Ctx};
use crate::constructions::{dual_presentation, exterior_power, tensor, TPresentation};
use crate::error::{Error, Result};
use crate::h1_solver::{h1_of, h_1_of, Direction, H1Options, RankResult, RankStatus, Verdict};
use crate::lattice_siegel::{dual_siegel, siegel_action, siegel_matrix, Lattice, SiegelMatrix};
use crate::lfunction::{
    global_l, good_reduction_check, local_factor, ordinary_check, torsion_count_reduction, BadReason, Ordinarity,
    Reduction,
};
use crate::tmotive_core::ArithMotive;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Upper,
    Lower,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Table,
    Series,
}

#[derive(Parser, Debug)]
#[command(name = "tmotive", version, about = "Exact computations with Anderson t-motives")]
pub struct Cli {
    /// Human-readable table or one JSON record per line.
    #[arg(long, value_enum, default_value = "table", global = true)]
    pub format: Format,
    /// Write the payload to this file (replaced atomically) instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Working precision in v_inf units.
    #[arg(long, default_value_t = 64, global = true)]
    pub precision: i64,
    /// Largest exponent denominator is D * q^s_cap.
    #[arg(long, default_value_t = 8, global = true)]
    pub s_cap: u32,
    /// Progress messages on stderr.
    #[arg(long, global = true)]
    pub progress: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Source {
    /// Definition file.
    pub file: Option<PathBuf>,
    /// Definition file (same as the positional argument).
    #[arg(long)]
    pub motive: Option<PathBuf>,
}

impl Source {
    fn path(&self) -> Result<&Path> {
        match (&self.file, &self.motive) {
            (Some(p), None) | (None, Some(p)) => Ok(p),
            (Some(_), Some(_)) => Err(Error::InvalidArgument("give the definition file once".into())),
            (None, None) => Err(Error::InvalidArgument("no definition file given".into())),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and validate a t-motive.
    Validate {
        #[command(flatten)]
        src: Source,
        /// Print the normalized definition file.
        #[arg(long)]
        emit_normalized: bool,
    },
    /// Coefficients C_1..C_count of the exponential.
    ExpCoeffs {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// h^1 and h_1 with their certificates.
    H1 {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 24)]
        horizon: usize,
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[arg(long, default_value_t = 64)]
        branch_cap: usize,
        #[arg(long, value_enum, default_value = "both")]
        direction: DirectionArg,
    },
    /// Global L-function through U^max_deg and its local factors.
    Lfunction {
        #[command(flatten)]
        src: Source,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
        #[arg(long, value_enum, default_value = "series")]
        emit: Emit,
    },
    /// Tensor product of two presentations.
    Tensor { first: PathBuf, second: PathBuf },
    /// Dual presentation (Q^t)^-1.
    Dual {
        #[command(flatten)]
        src: Source,
    },
    /// k-th exterior power of a Drinfeld module.
    Exterior {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        k: usize,
    },
    /// Lattice certificate, Siegel matrix, dual and optional action.
    Siegel { file: PathBuf },
    /// Torsion count of the reduction at a prime over an extension of the residue field.
    Torsion {
        #[command(flatten)]
        src: Source,
        /// Monic irreducible polynomial in t.
        #[arg(long)]
        prime: String,
        #[arg(long, default_value_t = 1)]
        ext: u32,
    },
    /// Reduction type at a prime.
    Reduce {
        #[command(flatten)]
        src: Source,
        #[arg(long)]
        prime: String,
    },
}

/// One output item: its table lines and its record.
struct Row {
    table: Vec<String>,
    record: Option<Value>,
}

#[derive(Default)]
struct Out {
    rows: Vec<Row>,
    /// Set when a reported result is only a bound.
    undecided: bool,
}

impl Out {
    fn push(&mut self, table: Vec<String>, record: Value) {
        self.rows.push(Row { table, record: Some(record) });
    }
    fn table(&mut self, table: Vec<String>) {
        self.rows.push(Row { table, record: None });
    }
    fn render(&self, f: Format) -> String {
        let mut s = String::new();
        for r in &self.rows {
            match f {
                Format::Table => {
                    for l in &r.table {
                        s.push_str(l);
                        s.push('\n');
                    }
                }
                Format::Records => {
                    if let Some(v) = &r.record {
                        s.push_str(&v.to_string());
                        s.push('\n');
                    }
                }
            }
        }
        s
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn load(src: &Source) -> Result<ArithMotive> {
    deffile::parse_motive(&read(src.path()?)?)
}

fn parse_prime(m: &ArithMotive, text: &str) -> Result<FqPoly> {
    let p = expr::parse_poly(&m.spec().fq(), text)
        .map_err(|e| Error::Parse { line: 1, col: e.pos + 1, msg: format!("--prime: {}", e.msg) })?;
    let monic = p.degree().is_some_and(|d| d > 0) && p.is_monic();
    if !monic || !p.is_irreducible() {
        return Err(Error::InvalidArgument(format!("{p} is not a monic irreducible polynomial")));
    }
    Ok(p)
}

fn strings<S: std::fmt::Display + Scalar>(m: &Mat<S>) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}


fn config(cli: &Cli) -> CinfConfig {
    CinfConfig { precision: cli.precision, s_cap: cli.s_cap, ..CinfConfig::default() }
}

fn validate(out: &mut Out, src: &Source, normalized: bool) -> Result<()> {
    let m = load(src)?;
    if normalized {
        let text = deffile::emit_motive(&m);
        out.push(text.lines().map(str::to_string).collect(), json!({"record": "normalized", "text": text}));
        return Ok(());
    }
    let rank = m.rank_dim().ok().map(|(r, _)| r);
    let rank_text = rank.map(|r| r.to_string()).unwrap_or_else(|| "unknown".into());
    out.push(
        vec![format!("valid: q = {}, n = {}, k = {}, rank = {rank_text}", m.q(), m.n(), m.k())],
        json!({"record": "motive", "status": "ok", "q": m.q(), "n": m.n(), "k": m.k(), "rank": rank}),
    );
    Ok(())
}

fn exp_table(out: &mut Out, src: &Source, count: usize) -> Result<()> {
    let m = load(src)?;
    let e = exp_coeffs(&m, count)?;
    out.table(vec![format!("{:>3}  {:>6}  C_i", "i", "v_inf")]);
    for (i, c) in e.c.iter().enumerate().skip(1) {
        let v = c.entries().filter_map(|x| x.valuation()).min();
        let shown = if m.n() == 1 { c.get(0, 0).to_string() } else { c.to_string() };
        let vt = v.map(|v| v.to_string()).unwrap_or_else(|| "inf".into());
        out.push(
            vec![format!("{i:>3}  {vt:>6}  {shown}")],
            json!({"record": "exp_coeff", "i": i, "valuation": v, "matrix": strings(c)}),
        );
    }
    Ok(())
}

fn profile_entry(v: &Option<Ratio<i128>>, bounded: bool) -> String {
    match v {
        None => "inf".into(),
        Some(r) if bounded => format!(">={}", fmt_ratio(*r)),
        Some(r) => fmt_ratio(*r),
    }
}

fn status_name(s: RankStatus) -> &'static str {
    match s {
        RankStatus::Exact => "exact",
        RankStatus::LowerBound => "lower_bound",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Convergent => "convergent",
        Verdict::Divergent => "divergent",
        Verdict::Undecided => "undecided",
    }
}

fn h1_rows(out: &mut Out, name: &str, res: &RankResult) {
    let c = &res.certificate;
    let mut table = vec![format!(
        "{name}: rank {} ({}), at most {}; kernel {} ({}), horizon {}, window {}, precision {}",
        res.value,
        status_name(res.status),
        res.upper,
        c.kernel_dim,
        if c.kernel_complete { "complete" } else { "incomplete" },
        c.horizon,
        c.window,
        c.precision
    )];
    let cands: Vec<Value> = c
        .candidates
        .iter()
        .map(|k| {
            let profile: Vec<String> = k.profile.iter().zip(&k.bounded).map(|(v, b)| profile_entry(v, *b)).collect();
            json!({"coords": k.coords, "verdict": verdict_name(k.verdict), "profile": profile})
        })
        .collect();
    if !c.candidates.is_empty() {
        let head: Vec<String> = c
            .candidates
            .iter()
            .enumerate()
            .map(|(i, k)| format!("c{i}={:?}:{}", k.coords, verdict_name(k.verdict)))
            .collect();
        table.push(format!("  candidates: {}", head.join(" ")));
        let len = c.candidates.iter().map(|k| k.profile.len()).max().unwrap_or(0);
        let mut header = format!("  {:>4}", "i");
        for i in 0..c.candidates.len() {
            header.push_str(&format!("  {:>10}", format!("c{i}")));
        }
        table.push(header);
        for j in 0..len {
            let mut line = format!("  {j:>4}");
            for k in &c.candidates {
                let e = match k.profile.get(j) {
                    Some(v) => profile_entry(v, k.bounded[j]),
                    None => "-".into(),
                };
                line.push_str(&format!("  {e:>10}"));
            }
            table.push(line);
        }
    }
    let record = json!({
        "record": "h1",
        "direction": name,
        "rank": res.value,
        "upper": res.upper,
        "status": status_name(res.status),
        "horizon": c.horizon,
        "window": c.window,
        "precision": c.precision,
        "kernel_dim": c.kernel_dim,
        "kernel_complete": c.kernel_complete,
        "basis": c.basis,
        "candidates": cands,
    });
    out.push(table, record);
}

fn h1_cmd(out: &mut Out, cli: &Cli, src: &Source, opts: &H1Options, dir: DirectionArg) -> Result<()> {
    let m = load(src)?;
    let ctx = Ctx::new(m.spec(), 1, &config(cli))?;
    let am = m.to_analytic(&ctx)?;
    let mut done = Vec::new();
    for (d, name) in [(Direction::Upper, "upper"), (Direction::Lower, "lower")] {
        let wanted = matches!((dir, d), (DirectionArg::Both, _) | (DirectionArg::Upper, Direction::Upper) | (DirectionArg::Lower, Direction::Lower));
        if !wanted {
            continue;
        }
        if cli.progress {
            eprintln!("h1: solving the {name} system");
        }
        let res = match d {
            Direction::Upper => h1_of(&am, opts)?,
            Direction::Lower => h_1_of(&am, opts)?,
        };
        h1_rows(out, name, &res);
        out.undecided |= res.status != RankStatus::Exact;
        done.push(res);
    }
    if let ([up, low], Ok((r, _))) = (done.as_slice(), m.rank_dim()) {
        let exact_full = |x: &RankResult| x.status == RankStatus::Exact && x.value == r;
        let verdict = if exact_full(up) || exact_full(low) {
            "uniformizable"
        } else if up.upper < r || low.upper < r {
            "not_uniformizable"
        } else {
            "undecided"
        };
        out.push(vec![format!("rank r = {r}: {verdict}")], json!({"record": "uniformizability", "r": r, "verdict": verdict}));
    }
    Ok(())
}

fn lfunction_cmd(out: &mut Out, src: &Source, max_deg: usize, emit: Emit) -> Result<()> {
    let m = load(src)?;
    let g = global_l(&m, max_deg)?;
    match emit {
        Emit::Series => {
            let bad: Vec<String> = g.bad.iter().map(|p| p.to_string()).collect();
            let mut table = vec![format!("L(U) = {} + O(U^{})", g.series, max_deg + 1)];
            if !bad.is_empty() {
                table.push(format!("bad primes: {}", bad.join(", ")));
            }
            let record = json!({
                "record": "l_series",
                "max_deg": max_deg,
                "series": g.series.to_string(),
                "good_primes": g.factors.len(),
                "bad_primes": bad,
            });
            out.push(table, record);
        }
        Emit::Table => {
            let width = g.factors.iter().map(|f| f.prime.to_string().len()).max().unwrap_or(1).max(1);
            out.table(vec![format!("{:<width$}  L_P(U)", "P")]);
            for f in &g.factors {
                let dets: Vec<String> = f.det_coeffs.iter().map(|c| c.to_string()).collect();
                out.push(
                    vec![format!("{:<width$}  {}+...", f.prime.to_string(), f.series)],
                    json!({"record": "local_factor", "prime": f.prime.to_string(), "degree": f.degree, "det_coeffs": dets, "series": f.series.to_string()}),
                );
            }
            for p in &g.bad {
                out.push(
                    vec![format!("{:<width$}  bad", p.to_string())],
                    json!({"record": "bad_prime", "prime": p.to_string()}),
                );
            }
        }
    }
    Ok(())
}

fn presentation_row(out: &mut Out, kind: &str, p: &TPresentation<crate::base_arith::rat::ThetaRat>, extra: Value) {
    let mut record = json!({
        "record": kind,
        "rank": p.rank,
        "dim": p.dim,
        "det_const": p.det_const.to_string(),
        "q": strings(&p.q),
    });
    if let (Value::Object(r), Value::Object(e)) = (&mut record, extra) {
        r.extend(e);
    }
    out.push(
        vec![
            format!("{kind}: rank {}, dimension {}, det Q = ({}) (T-t)^{}", p.rank, p.dim, p.det_const, p.dim),
            format!("Q = {}", p.q),
        ],
        record,
    );
}

fn tensor_cmd(out: &mut Out, a: &Path, b: &Path) -> Result<()> {
    let m1 = deffile::parse_motive(&read(a)?)?;
    let m2 = deffile::parse_motive(&read(b)?)?;
    if m1.spec() != m2.spec() {
        return Err(Error::InvalidArgument("the two motives are over different fields".into()));
    }
    let (p1, p2) = (TPresentation::of(&m1)?, TPresentation::of(&m2)?);
    let t = tensor(&p1, &p2)?;
    let expected = p1.dim * p2.rank + p2.dim * p1.rank;
    presentation_row(out, "tensor", &t, json!({"expected_dim": expected}));
    Ok(())
}

fn dual_cmd(out: &mut Out, src: &Source) -> Result<()> {
    let m = load(src)?;
    let p = TPresentation::of(&m)?;
    let d = dual_presentation(&p)?;
    let dd = d.dual()?;
    let involution = dd.exp == 0 && dd.num == p.q;
    out.push(
        vec![
            format!("dual: rank {}, dimension {}, Q' = N / (T-t)^{}", p.rank, d.target_dim, d.exp),
            format!("N = {}", d.num),
            format!("double dual equals Q: {involution}"),
        ],
        json!({
            "record": "dual",
            "rank": p.rank,
            "dim": d.target_dim,
            "denominator_exp": d.exp,
            "polynomial": d.is_polynomial(),
            "num": strings(&d.num),
            "involution": involution,
        }),
    );
    Ok(())
}

fn exterior_cmd(out: &mut Out, src: &Source, k: usize) -> Result<()> {
    let m = load(src)?;
    let e = exterior_power(&m, k)?;
    let r = TPresentation::of(&m)?.rank;
    presentation_row(out, "exterior", &e, json!({"k": k, "expected": [binomial(r, k), binomial(r - 1, k - 1)]}));
    Ok(())
}

fn siegel_row(out: &mut Out, kind: &str, s: &SiegelMatrix) {
    out.push(vec![format!("{kind} = {}", s.s)], json!({"record": kind, "s": strings(&s.s)}));
}

fn siegel_cmd(out: &mut Out, cli: &Cli, path: &Path) -> Result<()> {
    let lf = deffile::parse_lattice(&read(path)?, &config(cli))?;
    let lat = Lattice::new(lf.generators)?;
    let c = &lat.certificate;
    let show = |v: &[Ratio<i128>]| v.iter().map(|x| fmt_ratio(*x)).collect::<Vec<_>>();
    let prec = c.precision.map(fmt_ratio);
    out.push(
        vec![format!(
            "lattice: r = {}, n = {}, span pivots {:?}, independence pivots {:?}, precision {}",
            c.r,
            c.n,
            show(&c.span_pivots),
            show(&c.independence_pivots),
            prec.clone().unwrap_or_else(|| "exact".into())
        )],
        json!({
            "record": "lattice",
            "r": c.r,
            "n": c.n,
            "span_pivots": show(&c.span_pivots),
            "independence_pivots": show(&c.independence_pivots),
            "precision": prec,
        }),
    );
    let ordering = lf.ordering.unwrap_or_else(|| (0..lat.rank()).collect());
    let s = siegel_matrix(&lat, &ordering)?;
    siegel_row(out, "siegel", &s);
    siegel_row(out, "dual_siegel", &dual_siegel(&s));
    if let Some(g) = &lf.action {
        siegel_row(out, "action", &siegel_action(g, &s)?);
    }
    Ok(())
}

fn torsion_cmd(out: &mut Out, src: &Source, prime: &str, ext: u32) -> Result<()> {
    let m = load(src)?;
    let p = parse_prime(&m, prime)?;
    let t = torsion_count_reduction(&m, &p, ext)?;
    out.push(
        vec![format!("torsion at {p} over degree {ext}: {} points, |A/P|^(r-n) = {}, field size {}", t.count, t.expected, t.field_size)],
        json!({"record": "torsion", "prime": p.to_string(), "ext": ext, "count": t.count, "expected": t.expected, "field_size": t.field_size}),
    );
    Ok(())
}

fn reduce_cmd(out: &mut Out, src: &Source, prime: &str) -> Result<()> {
    let m = load(src)?;
    let p = parse_prime(&m, prime)?;
    let (kind, reason) = match good_reduction_check(&m, &p)? {
        Reduction::Good => ("good", None),
        Reduction::Bad(BadReason::NonIntegral { coeff, entry }) => {
            ("bad", Some(format!("entry {entry} of A{coeff} is not integral")))
        }
        Reduction::Bad(BadReason::RankDrop { before, after }) => {
            ("bad", Some(format!("A_k drops from rank {before} to {after}")))
        }
    };
    let ordinarity = if kind == "good" {
        Some(match ordinary_check(&m, &p)? {
            Ordinarity::Ordinary => "ordinary",
            Ordinarity::NonOrdinary => "non_ordinary",
            Ordinarity::Undefined => "undefined",
        })
    } else {
        None
    };
    let factor = if kind == "good" {
        let d = p.degree().unwrap_or(1);
        let lf = local_factor(&m, &p, d * m.rank_dim().map(|x| x.0).unwrap_or(1))?;
        Some(lf.det_coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>())
    } else {
        None
    };
    let mut line = format!("reduction at {p}: {kind}");
    if let Some(r) = &reason {
        line.push_str(&format!(" ({r})"));
    }
    if let Some(o) = ordinarity {
        line.push_str(&format!(", {o}"));
    }
    let mut table = vec![line];
    if let Some(f) = &factor {
        table.push(format!("det(1 - Q~ X) coefficients: {}", f.join(", ")));
    }
    out.push(
        table,
        json!({"record": "reduction", "prime": p.to_string(), "reduction": kind, "reason": reason, "ordinarity": ordinarity, "det_coeffs": factor}),
    );
    Ok(())
}

fn dispatch(cli: &Cli, out: &mut Out) -> Result<()> {
    match &cli.command {
        Command::Validate { src, emit_normalized } => validate(out, src, *emit_normalized),
        Command::ExpCoeffs { src, count } => exp_table(out, src, *count),
        Command::H1 { src, horizon, window, branch_cap, direction } => {
            let opts = H1Options { horizon: *horizon, window: *window, branch_cap: *branch_cap, ..H1Options::default() };
            h1_cmd(out, cli, src, &opts, *direction)
        }
        Command::Lfunction { src, max_deg, emit } => lfunction_cmd(out, src, *max_deg, *emit),
        Command::Tensor { first, second } => tensor_cmd(out, first, second),
        Command::Dual { src } => dual_cmd(out, src),
        Command::Exterior { src, k } => exterior_cmd(out, src, *k),
        Command::Siegel { file } => siegel_cmd(out, cli, file),
        Command::Torsion { src, prime, ext } => torsion_cmd(out, src, prime, *ext),
        Command::Reduce { src, prime } => reduce_cmd(out, src, prime),
    }
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}

/// Run one command line (program name first).
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> Outcome {
    let mut out = Out::default();
    let result = dispatch(cli, &mut out);
    let mut stderr = String::new();
    let mut code = 0;
    if let Err(e) = &result {
        code = e.exit_code();
        stderr = format!("error: {e}\n");
        out.push(vec![], json!({"record": "error", "code": e.code(), "exit": code, "message": e.to_string()}));
    } else if out.undecided {
        code = Error::Undecided(String::new()).exit_code();
    }
    let payload = out.render(cli.format);
    let stdout = match &cli.output {
        Some(path) => {
            if let Err(e) = write_atomic(path, &payload) {
                stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
                code = Error::InvalidArgument(String::new()).exit_code();
            }
            String::new()
        }
        None => payload,
    };
    Outcome { code, stdout, stderr }
}
