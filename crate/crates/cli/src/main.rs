//! `tvsn`: command-line front end.
//!
//! Every subcommand prints a human-readable report and ends with a line
//! `RESULT <value>`. Exit status is 0 on success, 1 when `verify` finds a
//! mismatch or a computation fails, and 2 for usage and input errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use tvsn::complex3::{census, dual_triangulation, parse_triangulation, prism_complex, Branching, Triangulation3};
use tvsn::equivalence::{verify_projector_equals_tv, DEFAULT_TOLERANCE};
use tvsn::qalgebra::IdentityReport;
use tvsn::stringnet::{ground_projector, hamiltonian, spectrum, TrivalentLattice};
use tvsn::tv::{tv_closed, tv_matrix, BoundaryWeights, TvOptions};
use tvsn::{QContext, Spin};

/// Overrides the default tolerance of `verify`.
const TOLERANCE_ENV: &str = "TVSN_TOLERANCE";

#[derive(Parser)]
#[command(
    name = "tvsn",
    version,
    about = "Turaev-Viro state sums and Levin-Wen string-net projectors"
)]
struct Cli {
    /// Worker threads for state sums and operator construction.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Symmetric quantum 6j symbols.
    Q6j(Q6jArgs),
    /// Closed invariants and cylinder amplitude matrices.
    Tv(TvArgs),
    /// Exact diagonalization of the string-net Hamiltonian.
    Spectrum(LatticeArgs),
    /// Compare the ground-state projector with the cylinder amplitude.
    Verify(LatticeArgs),
    /// Write a honeycomb lattice on the torus.
    HoneycombTorus(HoneycombArgs),
}

#[derive(Args)]
struct Q6jArgs {
    #[arg(long)]
    r: u32,
    /// Print every symbol with admissible faces.
    #[arg(long)]
    all: bool,
    /// Report residuals of the F-symbol identities.
    #[arg(long)]
    check: bool,
    /// Six labels `i j m k l n`, e.g. `1/2` or `1`.
    labels: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Boundary {
    Symmetric,
    BlackWhite,
}

#[derive(Args)]
struct TvArgs {
    /// Triangulation file or census name (S3_5tet, S2xS1, T3).
    #[arg(long, conflicts_with = "cylinder", required_unless_present = "cylinder")]
    manifold: Option<String>,
    /// Lattice file or generator; builds the cylinder over its dual.
    #[arg(long)]
    cylinder: Option<String>,
    #[arg(long)]
    r: u32,
    /// Write the cylinder matrix here (dense text).
    #[arg(long, requires = "cylinder")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "symmetric")]
    boundary: Boundary,
    /// Compensated summation.
    #[arg(long)]
    kahan: bool,
}

#[derive(Args)]
struct LatticeArgs {
    /// Lattice file, or `honeycomb-torus:N` / `honeycomb-torus:RxC`.
    #[arg(long)]
    lattice: String,
    #[arg(long)]
    r: u32,
}

#[derive(Args)]
struct HoneycombArgs {
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    /// Output file; the lattice goes to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An input problem reported with exit status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn is_usage(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<Usage>()
            || matches!(
                c.downcast_ref::<tvsn::Error>(),
                Some(
                    tvsn::Error::Domain(_)
                        | tvsn::Error::Parse { .. }
                        | tvsn::Error::Precondition(_)
                        | tvsn::Error::Io(_)
                )
            )
    })
}

fn context(r: u32) -> anyhow::Result<QContext> {
    QContext::new(r).map_err(|e| usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let out = std::io::stdout();
    let mut out = out.lock();
    let res = match cli.command {
        Command::Q6j(a) => q6j(a, &mut out),
        Command::Tv(a) => tv(a, &mut out),
        Command::Spectrum(a) => cmd_spectrum(a, &mut out),
        Command::Verify(a) => verify(a, &mut out),
        Command::HoneycombTorus(a) => honeycomb(a, &mut out),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}

fn q6j(a: Q6jArgs, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let ctx = context(a.r)?;
    if a.labels.is_empty() && !a.all && !a.check {
        return Err(usage("give six labels, --all or --check"));
    }
    if !a.labels.is_empty() && a.labels.len() != 6 {
        return Err(usage(format!("expected six labels, got {}", a.labels.len())));
    }
    let mut result = None;
    if !a.labels.is_empty() {
        let l: Vec<Spin> = a
            .labels
            .iter()
            .map(|s| s.parse::<Spin>().map_err(|e| usage(e.to_string())))
            .collect::<anyhow::Result<_>>()?;
        let v = ctx
            .q6j(l[0], l[1], l[2], l[3], l[4], l[5])
            .map_err(|e| usage(e.to_string()))?;
        writeln!(out, "{{{} {} {}; {} {} {}}} = {v}", l[0], l[1], l[2], l[3], l[4], l[5])?;
        result = Some(v.to_string());
    }
    if a.all {
        let labels = ctx.labels();
        let n = labels.len();
        let mut count = 0usize;
        for idx in 0..n.pow(6) {
            let e: [usize; 6] = std::array::from_fn(|k| idx / n.pow(5 - k as u32) % n);
            let faces = [
                [e[0], e[1], e[2]],
                [e[3], e[4], e[2]],
                [e[0], e[4], e[5]],
                [e[3], e[1], e[5]],
            ];
            if !faces.iter().all(|f| ctx.admissible_idx(f[0], f[1], f[2])) {
                continue;
            }
            let s: Vec<String> = e.iter().map(|&i| labels[i].to_string()).collect();
            writeln!(out, "{} {}", s.join(" "), ctx.sixj_idx(e))?;
            count += 1;
        }
        writeln!(out, "# {count} admissible symbols at r = {}", a.r)?;
        result.get_or_insert(count.to_string());
    }
    if a.check {
        let rep = IdentityReport::compute(&ctx);
        writeln!(out, "first line    {:e}", rep.first_line)?;
        writeln!(out, "symmetry      {:e}", rep.symmetry)?;
        writeln!(out, "orthogonality {:e}", rep.orthogonality)?;
        writeln!(
            out,
            "pentagon      {:e} over {} tuples",
            rep.pentagon, rep.pentagon_tuples
        )?;
        result = Some(format!("{:e}", rep.pentagon));
    }
    writeln!(out, "RESULT {}", result.unwrap())?;
    Ok(ExitCode::SUCCESS)
}

fn load_manifold(arg: &str) -> anyhow::Result<Triangulation3> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        return parse_triangulation(&text).with_context(|| format!("parsing {arg}"));
    }
    census(arg).map_err(|_| usage(format!("`{arg}` is neither a file nor a census name")))
}

fn tv(a: TvArgs, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let ctx = context(a.r)?;
    let opts = TvOptions {
        boundary: match a.boundary {
            Boundary::Symmetric => BoundaryWeights::Symmetric,
            Boundary::BlackWhite => BoundaryWeights::BlackWhite,
        },
        kahan: a.kahan,
    };
    if let Some(m) = a.manifold {
        let t = load_manifold(&m)?;
        writeln!(
            out,
            "{m}: {} tetrahedra, {} edges, {} vertices",
            t.tet_count(),
            t.edge_count(),
            t.vertex_count()
        )?;
        let z = tv_closed(&t, &ctx, &opts)?;
        writeln!(out, "Z_TV at r = {} is {z:.12}", a.r)?;
        writeln!(out, "RESULT {z}")?;
        return Ok(ExitCode::SUCCESS);
    }
    let spec = a.cylinder.expect("clap enforces one of the two");
    let l = TrivalentLattice::from_spec(&spec)?;
    let x = dual_triangulation(&l)?;
    let b = Branching::from_vertex_order(&x)?;
    let cyl = prism_complex(&x, &b)?;
    let m = tv_matrix(&cyl, &ctx, &opts)?;
    writeln!(
        out,
        "cylinder over {spec}: {} tetrahedra, matrix dimension {}",
        cyl.complex.tet_count(),
        m.dim()
    )?;
    writeln!(out, "trace {:.12}", m.trace())?;
    if let Some(path) = a.out {
        let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        let mut w = BufWriter::new(f);
        m.write_dense_text(&mut w)?;
        w.flush()?;
        writeln!(out, "matrix written to {}", path.display())?;
    }
    writeln!(out, "RESULT {}", m.trace())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_spectrum(a: LatticeArgs, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let ctx = context(a.r)?;
    let l = TrivalentLattice::from_spec(&a.lattice)?;
    let h = hamiltonian(&l, &ctx)?;
    let s = spectrum(&h)?;
    writeln!(
        out,
        "{}: V = {}, E = {}, F = {}, dimension {}",
        a.lattice,
        l.vertex_count(),
        l.edge_count(),
        l.plaquette_count(),
        h.dim()
    )?;
    writeln!(out, "ground energy {:.12}", s.ground_energy)?;
    writeln!(out, "degeneracy    {}", s.degeneracy)?;
    match s.gap {
        Some(g) => writeln!(out, "gap           {g:.12}")?,
        None => writeln!(out, "gap           none")?,
    }
    let rank = ground_projector(&l, &ctx)?.projector_rank()?;
    writeln!(out, "rank(P)       {rank}")?;
    writeln!(out, "RESULT {}", s.ground_energy)?;
    Ok(ExitCode::SUCCESS)
}

fn tolerance() -> anyhow::Result<f64> {
    match std::env::var(TOLERANCE_ENV) {
        Ok(v) => match v.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t >= 0.0 => Ok(t),
            _ => Err(usage(format!("{TOLERANCE_ENV}={v:?} is not a tolerance"))),
        },
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TOLERANCE),
        Err(e) => bail!("{TOLERANCE_ENV}: {e}"),
    }
}

fn verify(a: LatticeArgs, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let ctx = context(a.r)?;
    let tol = tolerance()?;
    let l = TrivalentLattice::from_spec(&a.lattice)?;
    let rep = verify_projector_equals_tv(&l, &ctx, &TvOptions::default(), tol)?;
    let rank = |r: Option<usize>| r.map_or("n/a".to_string(), |r| r.to_string());
    writeln!(out, "lattice {} at r = {}, dimension {}", a.lattice, rep.r, rep.dim)?;
    writeln!(
        out,
        "max |P - M|   {:e} (tolerance {:e})",
        rep.max_abs_diff, rep.tolerance
    )?;
    writeln!(out, "trace P, M    {:.12} {:.12}", rep.trace_projector, rep.trace_tv)?;
    writeln!(out, "rank P, M     {} {}", rank(rep.rank_projector), rank(rep.rank_tv))?;
    writeln!(out, "fitted scalar {:.12}", rep.fitted_scalar)?;
    writeln!(out, "{}", if rep.passed { "PASS" } else { "FAIL" })?;
    writeln!(out, "RESULT {:e}", rep.max_abs_diff)?;
    Ok(if rep.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn honeycomb(a: HoneycombArgs, out: &mut impl Write) -> anyhow::Result<ExitCode> {
    let l = TrivalentLattice::honeycomb_torus(a.rows, a.cols)?;
    match a.out {
        // stdout then carries only the lattice, so it can be redirected
        None => write!(out, "{}", l.to_text())?,
        Some(path) => {
            std::fs::write(&path, l.to_text()).with_context(|| format!("writing {}", path.display()))?;
            writeln!(
                out,
                "{} vertices, {} edges, {} plaquettes written to {}",
                l.vertex_count(),
                l.edge_count(),
                l.plaquette_count(),
                path.display()
            )?;
            writeln!(out, "RESULT {}", l.edge_count())?;
        }
    }
    Ok(ExitCode::SUCCESS)
}
