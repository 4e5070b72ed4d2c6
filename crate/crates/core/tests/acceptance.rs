//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Criteria 1 to 6 are evaluated twice on a fixed-size thread pool; the
//! seventh compares the two printed transcripts byte for byte.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::process::ExitCode;

use tvsn::complex3::{apply_move, s2_x_s1, s3_5tet, t3, PachnerMove, Triangulation3};
use tvsn::equivalence::{verify_projector_equals_tv, DEFAULT_TOLERANCE};
use tvsn::qalgebra::{first_line_residual, pentagon_residual};
use tvsn::stringnet::{b_plaquette, ground_projector, hamiltonian, q_vertex, spectrum, TrivalentLattice};
use tvsn::tv::{tv_closed, TvOptions};
use tvsn::{OperatorMatrix, QContext};

const THREADS: usize = 4;

const PENTAGON_TOL: f64 = 1e-10;
const FIRST_LINE_TOL: f64 = 1e-12;
const INVARIANCE_TOL: f64 = 1e-9;
const CENSUS_TOL: f64 = 1e-9;
const ALGEBRA_TOL: f64 = 1e-10;
const ENERGY_TOL: f64 = 1e-9;
const EQUIVALENCE_TOL: f64 = 1e-9;

struct Line {
    id: u32,
    pass: bool,
    detail: String,
}

/// D^2 from the closed form r / (2 sin^2(pi/r)).
fn total_dim_sq(r: u32) -> f64 {
    let s = (PI / r as f64).sin();
    r as f64 / (2.0 * s * s)
}

/// Plain enumeration over every labelling of the edges, admissible or not.
fn brute_closed(t: &Triangulation3, ctx: &QContext) -> f64 {
    let n = ctx.label_count();
    let e = t.edge_count();
    let r = ctx.r() as f64;
    let dim = |j: usize| ((j + 1) as f64 * PI / r).sin() / (PI / r).sin();
    let faces = t.face_triples();
    let mut total = 0.0;
    let mut l = vec![0usize; e];
    for mut idx in 0..n.pow(e as u32) {
        for x in l.iter_mut() {
            *x = idx % n;
            idx /= n;
        }
        let admissible = faces.iter().all(|f| {
            let (a, b, c) = (l[f[0]], l[f[1]], l[f[2]]);
            (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * (n - 1)
        });
        if !admissible {
            continue;
        }
        let mut w: f64 = l.iter().map(|&x| dim(x)).product();
        for x in 0..t.tet_count() {
            w *= ctx.sixj_idx(t.sixj_layout(x).map(|k| l[k]));
        }
        total += w;
    }
    total / total_dim_sq(ctx.r()).powi(t.vertex_count() as i32)
}

fn criterion_1() -> Line {
    let mut pass = true;
    let mut detail = String::new();
    for r in [3, 4, 5, 6, 8] {
        let ctx = QContext::new(r).unwrap();
        let (pent, tuples) = pentagon_residual(&ctx);
        let first = first_line_residual(&ctx);
        pass &= pent < PENTAGON_TOL && first < FIRST_LINE_TOL && tuples > 0;
        write!(detail, " r={r}:pentagon={pent:e}/{tuples},first={first:e}").unwrap();
    }
    Line { id: 1, pass, detail }
}

fn criterion_2() -> Line {
    let mut pass = true;
    let mut detail = String::new();
    let opts = TvOptions::default();
    let s3 = s3_5tet();
    let moved = [
        apply_move(&s3, PachnerMove::OneFour { tet: 0 }).unwrap(),
        apply_move(&s3, PachnerMove::TwoThree { tet: 0, face: 0 }).unwrap(),
    ];
    for r in [3, 4, 5] {
        let ctx = QContext::new(r).unwrap();
        let z = tv_closed(&s3, &ctx, &opts).unwrap();
        let z14 = tv_closed(&moved[0], &ctx, &opts).unwrap();
        let z23 = tv_closed(&moved[1], &ctx, &opts).unwrap();
        let brute = brute_closed(&s3, &ctx);
        let want = 1.0 / total_dim_sq(r);
        pass &= (z - z14).abs() < INVARIANCE_TOL
            && (z - z23).abs() < INVARIANCE_TOL
            && (z - brute).abs() < INVARIANCE_TOL
            && (z - want).abs() < INVARIANCE_TOL;
        write!(detail, " r={r}:Z={z:e},1-4={z14:e},2-3={z23:e},brute={brute:e}").unwrap();
    }
    Line { id: 2, pass, detail }
}

fn criterion_3() -> Line {
    let ctx = QContext::new(3).unwrap();
    let opts = TvOptions::default();
    let s2s1 = tv_closed(&s2_x_s1(), &ctx, &opts).unwrap();
    let t = t3();
    let torus = tv_closed(&t, &ctx, &opts).unwrap();
    let brute_s2s1 = brute_closed(&s2_x_s1(), &ctx);
    let brute_t3 = brute_closed(&t, &ctx);
    let pass = (s2s1 - 1.0).abs() < CENSUS_TOL
        && (brute_s2s1 - 1.0).abs() < CENSUS_TOL
        && (torus - 4.0).abs() < CENSUS_TOL
        && (brute_t3 - 4.0).abs() < CENSUS_TOL;
    Line {
        id: 3,
        pass,
        detail: format!(" S2xS1={s2s1:e}(brute {brute_s2s1:e}) T3={torus:e}(brute {brute_t3:e})"),
    }
}

fn torus2() -> TrivalentLattice {
    TrivalentLattice::from_spec("honeycomb-torus:2").unwrap()
}

fn criterion_4() -> Line {
    let mut pass = true;
    let mut detail = String::new();
    for r in [3, 4] {
        let ctx = QContext::new(r).unwrap();
        let l = torus2();
        let bs: Vec<OperatorMatrix> = (0..l.plaquette_count())
            .map(|p| b_plaquette(&l, &ctx, p).unwrap())
            .collect();
        let qs: Vec<OperatorMatrix> = (0..l.vertex_count()).map(|v| q_vertex(&l, &ctx, v).unwrap()).collect();
        let idem = bs.iter().map(|b| b.idempotency_defect()).fold(0.0, f64::max);
        let mut bb: f64 = 0.0;
        let mut qb: f64 = 0.0;
        for b in &bs {
            for b2 in &bs {
                bb = bb.max(b.commutator_norm(b2));
            }
            for q in &qs {
                qb = qb.max(q.commutator_norm(b));
            }
        }
        let p = ground_projector(&l, &ctx).unwrap().idempotency_defect();
        pass &= idem < ALGEBRA_TOL && bb < ALGEBRA_TOL && qb < ALGEBRA_TOL && p < ALGEBRA_TOL;
        write!(detail, " r={r}:B^2-B={idem:e},[B,B]={bb:e},[Q,B]={qb:e},P^2-P={p:e}").unwrap();
    }
    Line { id: 4, pass, detail }
}

fn criterion_5() -> Line {
    let ctx = QContext::new(3).unwrap();
    let l = torus2();
    let s = spectrum(&hamiltonian(&l, &ctx).unwrap()).unwrap();
    let rank = ground_projector(&l, &ctx).unwrap().projector_rank().unwrap();
    let want = -((l.vertex_count() + l.plaquette_count()) as f64);
    let pass = (s.ground_energy - want).abs() < ENERGY_TOL && s.degeneracy == 4 && rank == 4;
    Line {
        id: 5,
        pass,
        detail: format!(" E0={:e} degeneracy={} rank(P)={rank}", s.ground_energy, s.degeneracy),
    }
}

fn criterion_6() -> Line {
    let mut pass = true;
    let mut detail = String::new();
    for r in [3, 4] {
        let ctx = QContext::new(r).unwrap();
        let rep = verify_projector_equals_tv(&torus2(), &ctx, &TvOptions::default(), EQUIVALENCE_TOL).unwrap();
        pass &= rep.passed && rep.max_abs_diff < DEFAULT_TOLERANCE;
        write!(
            detail,
            " r={r}:dim={},max|P-M|={:e},tr={:e}/{:e}",
            rep.dim, rep.max_abs_diff, rep.trace_projector, rep.trace_tv
        )
        .unwrap();
    }
    Line { id: 6, pass, detail }
}

fn run_once(pool: &rayon::ThreadPool) -> Vec<Line> {
    pool.install(|| {
        vec![
            criterion_1(),
            criterion_2(),
            criterion_3(),
            criterion_4(),
            criterion_5(),
            criterion_6(),
        ]
    })
}

fn render(lines: &[Line]) -> String {
    let mut out = String::new();
    for l in lines {
        let tag = if l.pass { "PASS" } else { "FAIL" };
        writeln!(out, "{tag} criterion {}:{}", l.id, l.detail).unwrap();
    }
    out
}

fn main() -> ExitCode {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(THREADS).build().unwrap();
    let first = run_once(&pool);
    let second = run_once(&pool);
    let (a, b) = (render(&first), render(&second));
    print!("{a}");
    let same = a == b;
    println!(
        "{} criterion 7: {} threads, two runs {}",
        if same { "PASS" } else { "FAIL" },
        THREADS,
        if same { "bit-identical" } else { "differ" }
    );
    if first.iter().all(|l| l.pass) && same {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
