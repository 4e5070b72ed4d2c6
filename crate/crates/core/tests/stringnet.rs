use tvsn::stringnet::{
    b_plaquette, b_plaquette_s, ground_projector, hamiltonian, q_vertex, spectrum, vertex_projector, Basis, Dart,
    TrivalentLattice,
};
use tvsn::{OperatorMatrix, QContext};

fn torus2() -> TrivalentLattice {
    TrivalentLattice::from_spec("honeycomb-torus:2").unwrap()
}

#[test]
fn vertex_projector_counts_admissible_labellings() {
    let ctx = QContext::new(3).unwrap();
    let l = torus2();
    let q = vertex_projector(&l, &ctx).unwrap();
    // brute-force filter over all 2^6 labellings; at r=3 only (0,0,0),
    // (0,1/2,1/2) and permutations are admissible
    let mut count = 0;
    for idx in 0..64usize {
        let bit = |e: usize| (idx >> e) & 1;
        let ok = (0..l.vertex_count()).all(|v| {
            let s: usize = l.vertex_edges(v).iter().map(|&e| bit(e)).sum();
            s.is_multiple_of(2)
        });
        count += ok as usize;
    }
    assert_eq!(q.trace() as usize, count);
    for v in 0..l.vertex_count() {
        let qv = q_vertex(&l, &ctx, v).unwrap();
        assert!(qv.idempotency_defect() == 0.0);
        // all-zero state has eigenvalue 1; one spin-1/2 leg at v gives 0
        assert_eq!(qv.get(0, 0), 1.0);
        let e = l.vertex_edges(v)[0];
        let i = 1usize << e;
        assert_eq!(qv.get(i, i), 0.0);
    }
    assert!(q_vertex(&l, &ctx, 99).is_err());
}

#[test]
fn projector_algebra_on_torus() {
    for r in [3, 4] {
        let ctx = QContext::new(r).unwrap();
        let l = torus2();
        let bs: Vec<OperatorMatrix> = (0..l.plaquette_count())
            .map(|p| b_plaquette(&l, &ctx, p).unwrap())
            .collect();
        for (p, b) in bs.iter().enumerate() {
            assert!(b.idempotency_defect() < 1e-10, "r={r} p={p}");
            assert!(b.hermiticity_defect() < 1e-10);
            for v in 0..l.vertex_count() {
                let q = q_vertex(&l, &ctx, v).unwrap();
                assert!(q.commutator_norm(b) < 1e-10);
            }
            for b2 in &bs {
                assert!(b.commutator_norm(b2) < 1e-10);
            }
        }
        let p = ground_projector(&l, &ctx).unwrap();
        assert!(p.idempotency_defect() < 1e-10);
        assert!(p.hermiticity_defect() < 1e-10);
        for v in 0..l.vertex_count() {
            let q = q_vertex(&l, &ctx, v).unwrap();
            assert!(p.mul(&q).max_abs_diff(&p) < 1e-12);
        }
        // reversed factor order
        let mut rev = vertex_projector(&l, &ctx).unwrap();
        for b in bs.iter().rev() {
            rev = rev.mul(b);
        }
        assert!(rev.max_abs_diff(&p) < 1e-10);
        let want = ((r - 1) * (r - 1)) as f64;
        assert!((p.trace() - want).abs() < 1e-9, "r={r}: tr P = {}", p.trace());
    }
}

#[test]
fn eigenvalues_of_plaquette_projector() {
    let ctx = QContext::new(3).unwrap();
    let b = b_plaquette(&torus2(), &ctx, 0).unwrap();
    for e in b.symmetric_eigenvalues().unwrap() {
        assert!(e.abs() < 1e-10 || (e - 1.0).abs() < 1e-10, "{e}");
    }
}

#[test]
fn trivial_loop_is_identity_on_admissible_states() {
    for r in [3, 4] {
        let ctx = QContext::new(r).unwrap();
        let l = torus2();
        let q = vertex_projector(&l, &ctx).unwrap();
        let b0 = b_plaquette_s(&l, &ctx, 0, 0).unwrap();
        assert!(b0.mul(&q).max_abs_diff(&q) < 1e-12);
    }
}

#[test]
fn loop_on_vacuum_of_hexagon() {
    // on the 2x2 torus every plaquette is a hexagon with six distinct edges
    let ctx = QContext::new(3).unwrap();
    let l = TrivalentLattice::honeycomb_torus(2, 2).unwrap();
    let basis = Basis::new(ctx.label_count(), l.edge_count()).unwrap();
    let p = 0;
    let darts = l.plaquette(p).to_vec();
    assert_eq!(darts.len(), 6);
    let s = 1;
    let b = b_plaquette_s(&l, &ctx, p, s).unwrap();
    let mut target = vec![0; l.edge_count()];
    for d in &darts {
        target[d.edge] = s;
    }
    let row = basis.encode(&target);
    // one F^{0 s s}_{s 0 0}-type factor per corner, legs and old labels 0
    let corner = ctx.f_idx([0, 0, 0, s, s, s]);
    let want = corner.powi(6);
    assert!((b.get(row, 0) - want).abs() < 1e-12);
    // nothing else in that column
    let col_nnz = b.entries().filter(|&(_, c, _)| c == 0).count();
    assert_eq!(col_nnz, 1);
}

#[test]
fn plaquette_operator_is_local() {
    let ctx = QContext::new(3).unwrap();
    let l = TrivalentLattice::honeycomb_torus(2, 2).unwrap();
    let basis = Basis::new(ctx.label_count(), l.edge_count()).unwrap();
    for p in 0..l.plaquette_count() {
        let on_p: Vec<bool> = (0..l.edge_count())
            .map(|e| l.plaquette(p).iter().any(|d| d.edge == e))
            .collect();
        let b = b_plaquette_s(&l, &ctx, p, 1).unwrap();
        for (r, c, _) in b.entries() {
            let (x, y) = (basis.decode(r), basis.decode(c));
            for e in 0..l.edge_count() {
                if !on_p[e] {
                    assert_eq!(x[e], y[e]);
                }
            }
        }
    }
}

#[test]
fn hamiltonian_ground_state() {
    let ctx = QContext::new(3).unwrap();
    let l = torus2();
    let h = hamiltonian(&l, &ctx).unwrap();
    assert!(h.hermiticity_defect() < 1e-12);
    let s = spectrum(&h).unwrap();
    assert!((s.ground_energy + 6.0).abs() < 1e-9);
    assert_eq!(s.degeneracy, 4);
    assert!(s.gap.unwrap() > 0.5);
    let p = ground_projector(&l, &ctx).unwrap();
    assert_eq!(p.projector_rank().unwrap(), 4);
}

#[test]
fn rank_is_invariant_under_edge_relabelling() {
    let ctx = QContext::new(3).unwrap();
    let l = torus2();
    let perm = [3, 5, 0, 1, 4, 2];
    let edges: Vec<[usize; 2]> = {
        let mut e = vec![[0, 0]; 6];
        for old in 0..6 {
            e[perm[old]] = l.endpoints(old);
        }
        e
    };
    let plaquettes: Vec<Vec<Dart>> = (0..l.plaquette_count())
        .map(|p| {
            l.plaquette(p)
                .iter()
                .map(|d| Dart {
                    edge: perm[d.edge],
                    forward: d.forward,
                })
                .collect()
        })
        .collect();
    let relabelled = TrivalentLattice::new(l.vertex_count(), edges, plaquettes).unwrap();
    let a = ground_projector(&l, &ctx).unwrap();
    let b = ground_projector(&relabelled, &ctx).unwrap();
    assert_eq!(a.projector_rank().unwrap(), b.projector_rank().unwrap());
    assert!((a.trace() - b.trace()).abs() < 1e-12);
}

#[test]
fn plaquette_coefficients() {
    let ctx = QContext::new(4).unwrap();
    let total: f64 = (0..ctx.label_count()).map(|s| ctx.plaquette_coefficient(s)).sum();
    assert!(total < 1.0);
    assert!((ctx.plaquette_coefficient(0) - 1.0 / ctx.total_dim_sq()).abs() < 1e-15);
}

#[test]
fn projector_algebra_on_larger_spaces() {
    // 4^6 states at r=5, and 2^12 states on the 2x2 torus at r=3
    for (l, r, degeneracy) in [
        (torus2(), 5, 16.0),
        (TrivalentLattice::honeycomb_torus(2, 2).unwrap(), 3, 4.0),
    ] {
        let ctx = QContext::new(r).unwrap();
        let bs: Vec<OperatorMatrix> = (0..l.plaquette_count())
            .map(|p| b_plaquette(&l, &ctx, p).unwrap())
            .collect();
        for (i, b) in bs.iter().enumerate() {
            assert!(b.idempotency_defect() < 1e-10);
            assert!(b.hermiticity_defect() < 1e-10);
            for b2 in &bs[i + 1..] {
                assert!(b.commutator_norm(b2) < 1e-10);
            }
            for v in 0..l.vertex_count() {
                let q = q_vertex(&l, &ctx, v).unwrap();
                assert!(q.idempotency_defect() < 1e-10);
                assert!(q.commutator_norm(b) < 1e-10);
            }
        }
        let p = ground_projector(&l, &ctx).unwrap();
        assert!(p.idempotency_defect() < 1e-10);
        assert!((p.trace() - degeneracy).abs() < 1e-9);
    }
}
