use tvsn::complex3::{
    apply_move, census, dual_triangulation, enumerate_colorings, enumerate_colorings_shard, isomorphism_signature,
    parse_triangulation, prism_complex, s2_x_s1, s3_5tet, t3, write_triangulation, Branching, PachnerMove,
    Triangulation3,
};
use tvsn::stringnet::TrivalentLattice;
use tvsn::{QContext, Spin};

#[test]
fn census_bookkeeping() {
    let s3 = s3_5tet();
    assert_eq!((s3.tet_count(), s3.edge_count(), s3.vertex_count()), (5, 10, 5));
    assert!(s3.is_closed());
    for t in [s2_x_s1(), t3()] {
        assert!(t.is_closed());
        t.validate_manifold().unwrap();
        // closed 3-manifolds have Euler characteristic zero
        let faces = 2 * t.tet_count();
        let chi = t.vertex_count() as i64 - t.edge_count() as i64 + faces as i64 - t.tet_count() as i64;
        assert_eq!(chi, 0);
    }
    assert!(census("S3_5tet").is_ok());
    assert!(census("nonsense").is_err());
}

#[test]
fn single_tetrahedron() {
    let t = parse_triangulation("tets 1\n").unwrap();
    assert_eq!(t.boundary_faces().len(), 4);
    assert_eq!(t.edge_count(), 6);
    assert!(!t.is_closed());
}

#[test]
fn parse_errors_carry_locations() {
    let bad = [
        "g 0 0 1 0 0\n",                      // no header
        "tets 2\ng 0 0 1 0 9\n",              // perm out of range
        "tets 2\ng 0 0 0 0 0\n",              // face glued to itself
        "tets 2\ng 0 0 1 0 0\ng 0 0 1 1 0\n", // face glued twice
        "tets 1\nwhat\n",
    ];
    for text in bad {
        assert!(parse_triangulation(text).is_err(), "{text:?}");
    }
    let err = parse_triangulation("tets 1\n\n# c\nbogus 1\n").unwrap_err();
    assert!(err.to_string().contains('4'), "{err}");
}

#[test]
fn text_round_trip() {
    for t in [s3_5tet(), s2_x_s1(), t3()] {
        let text = write_triangulation(&t);
        let back = parse_triangulation(&text).unwrap();
        assert_eq!(write_triangulation(&back), text);
        assert_eq!(isomorphism_signature(&back), isomorphism_signature(&t));
    }
}

#[test]
fn signature_ignores_tet_order() {
    let t = t3();
    let n = t.tet_count();
    let order: Vec<usize> = (0..n).map(|i| (i * 5 + 2) % n).collect();
    let u = t.relabel(&order).unwrap();
    assert_eq!(isomorphism_signature(&t), isomorphism_signature(&u));
    assert_eq!(u.edge_count(), t.edge_count());
    assert_ne!(isomorphism_signature(&t), isomorphism_signature(&s3_5tet()));
}

#[test]
fn pachner_moves() {
    let s3 = s3_5tet();
    let a = apply_move(&s3, PachnerMove::OneFour { tet: 2 }).unwrap();
    assert_eq!(a.tet_count(), 8);
    assert_eq!(a.vertex_count(), 6);
    a.validate_manifold().unwrap();
    let back = apply_move(&a, PachnerMove::FourOne { vertex: 5 }).unwrap();
    assert_eq!(isomorphism_signature(&back), isomorphism_signature(&s3));

    let b = apply_move(&s3, PachnerMove::TwoThree { tet: 0, face: 1 }).unwrap();
    assert_eq!(b.tet_count(), 6);
    b.validate_manifold().unwrap();
    // one of the degree-3 edges is the one the move created
    let undone: Vec<Triangulation3> = (0..b.edge_count())
        .filter(|&e| b.edge_degree(e) == 3)
        .filter_map(|e| apply_move(&b, PachnerMove::ThreeTwo { edge: e }).ok())
        .collect();
    assert!(undone.iter().all(|u| u.tet_count() == 5));
    assert!(undone
        .iter()
        .any(|u| isomorphism_signature(u) == isomorphism_signature(&s3)));

    assert!(apply_move(&s3, PachnerMove::OneFour { tet: 9 }).is_err());
    // every vertex of the 4-simplex boundary has degree 4
    let two = apply_move(&s3, PachnerMove::FourOne { vertex: 0 }).unwrap();
    assert_eq!((two.tet_count(), two.vertex_count()), (2, 4));
    assert!(apply_move(&s3, PachnerMove::FourOne { vertex: 5 }).is_err());
    assert!(apply_move(&a, PachnerMove::ThreeTwo { edge: 99 }).is_err());
}

#[test]
fn dual_counts() {
    for (spec, counts) in [("honeycomb-torus:2", (2, 6, 4)), ("honeycomb-torus:4", (4, 12, 8))] {
        let l = TrivalentLattice::from_spec(spec).unwrap();
        let x = dual_triangulation(&l).unwrap();
        assert_eq!((x.vertex_count(), x.edge_count(), x.triangle_count()), counts);
        assert_eq!(x.edge_count(), l.edge_count());
        assert_eq!(x.genus(), 1);
    }
}

#[test]
fn prism_over_the_torus() {
    let l = TrivalentLattice::from_spec("honeycomb-torus:2").unwrap();
    let x = dual_triangulation(&l).unwrap();
    let b = Branching::from_vertex_order(&x).unwrap();
    let cyl = prism_complex(&x, &b).unwrap();
    assert_eq!(cyl.complex.tet_count(), 3 * x.triangle_count());
    assert_eq!(cyl.complex.boundary_faces().len(), 2 * x.triangle_count());
    assert_eq!(cyl.bottom_edges.len(), 6);
    assert_eq!(cyl.top_edges.len(), 6);
    cyl.check_markings().unwrap();
    cyl.complex.validate_manifold().unwrap();
    // both boundary tori: V - E + F = 0
    for (edges, verts) in [
        (&cyl.bottom_edges, &cyl.bottom_vertices),
        (&cyl.top_edges, &cyl.top_vertices),
    ] {
        let chi = verts.len() as i64 - edges.len() as i64 + x.triangle_count() as i64;
        assert_eq!(chi, 0);
    }
}

fn brute_count(t: &Triangulation3, ctx: &QContext) -> usize {
    let n = ctx.label_count();
    let e = t.edge_count();
    (0..n.pow(e as u32))
        .filter(|&idx| {
            let l: Vec<usize> = (0..e).map(|k| idx / n.pow(k as u32) % n).collect();
            t.face_triples().iter().all(|f| {
                let (a, b, c) = (l[f[0]], l[f[1]], l[f[2]]);
                (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * (n - 1)
            })
        })
        .count()
}

#[test]
fn colorings_of_a_tetrahedron() {
    let t = parse_triangulation("tets 1\n").unwrap();
    for r in [3, 4, 5] {
        let ctx = QContext::new(r).unwrap();
        let all: Vec<Vec<usize>> = enumerate_colorings(&t, &ctx, &[None; 6]).unwrap().collect();
        assert_eq!(all.len(), brute_count(&t, &ctx));
        // shards over the first two edges partition the stream
        let mut sharded = 0;
        for a in ctx.labels() {
            for b in ctx.labels() {
                sharded += enumerate_colorings_shard(&t, &ctx, &[None; 6], &[0, 1], &[*a, *b])
                    .unwrap()
                    .count();
            }
        }
        assert_eq!(sharded, all.len());
    }
    let ctx = QContext::new(3).unwrap();
    let zero = [Some(Spin::ZERO); 6];
    assert_eq!(enumerate_colorings(&t, &ctx, &zero).unwrap().count(), 1);
    let mut bad = zero;
    bad[0] = Some(Spin::HALF);
    assert_eq!(enumerate_colorings(&t, &ctx, &bad).unwrap().count(), 0);
}

#[test]
fn colorings_of_the_dual_surface() {
    let ctx = QContext::new(3).unwrap();
    let l = TrivalentLattice::from_spec("honeycomb-torus:2").unwrap();
    let x = dual_triangulation(&l).unwrap();
    // Z2 cocycles on a genus-one surface with 2 vertices: 2^(2g) 2^(V - 1)
    assert_eq!(enumerate_colorings(&x, &ctx, &[None; 6]).unwrap().count(), 8);
}

#[test]
fn closed_complexes_are_stable_under_random_moves() {
    let mut t = s3_5tet();
    let mut seed = 7u64;
    for _ in 0..6 {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let k = (seed >> 33) as usize;
        let mv = if k.is_multiple_of(2) {
            PachnerMove::OneFour { tet: k % t.tet_count() }
        } else {
            PachnerMove::TwoThree {
                tet: k % t.tet_count(),
                face: (k / 7 % 4) as u8,
            }
        };
        if let Ok(u) = apply_move(&t, mv) {
            u.validate_manifold().unwrap();
            assert!(u.is_closed());
            t = u;
        }
    }
    assert!(t.tet_count() > 5);
}
