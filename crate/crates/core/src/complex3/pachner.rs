//! Pachner moves 1-4, 2-3 and their inverses.
//!
//! Every move removes a set of tetrahedra whose vertex positions have been
//! labelled with abstract keys, inserts new tetrahedra described by keys,
//! and re-attaches the outer faces by matching key sets. New tetrahedra are
//! appended after the surviving ones, which keep their relative order.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::perm::{face_vertices, Perm4};
use super::tri3::{Gluing, Triangulation3, TET_EDGES};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PachnerMove {
    /// Cone a tetrahedron off an interior point.
    OneFour { tet: usize },
    /// Replace two tetrahedra sharing face `face` of `tet` by three.
    TwoThree { tet: usize, face: u8 },
    /// Replace the three tetrahedra around an edge class of degree 3 by two.
    ThreeTwo { edge: usize },
    /// Remove an interior vertex class of degree 4.
    FourOne { vertex: usize },
}

pub fn apply_move(t: &Triangulation3, mv: PachnerMove) -> Result<Triangulation3> {
    match mv {
        PachnerMove::OneFour { tet } => one_four(t, tet),
        PachnerMove::TwoThree { tet, face } => two_three(t, tet, face),
        PachnerMove::ThreeTwo { edge } => three_two(t, edge),
        PachnerMove::FourOne { vertex } => four_one(t, vertex),
    }
}

fn not_applicable(msg: impl Into<String>) -> Error {
    Error::Precondition(format!("Pachner move not applicable: {}", msg.into()))
}

fn one_four(t: &Triangulation3, tet: usize) -> Result<Triangulation3> {
    if tet >= t.tet_count() {
        return Err(not_applicable(format!("no tetrahedron {tet}")));
    }
    let new: Vec<[u32; 4]> = (0..4)
        .map(|i| {
            let mut k = [0, 1, 2, 3];
            k[i] = 4;
            k
        })
        .collect();
    replace(t, &[(tet, [0, 1, 2, 3])], &new)
}

fn two_three(t: &Triangulation3, tet: usize, face: u8) -> Result<Triangulation3> {
    if tet >= t.tet_count() || face > 3 {
        return Err(not_applicable("face out of range"));
    }
    let g = t
        .gluing(tet, face)
        .ok_or_else(|| not_applicable("the face is on the boundary"))?;
    if g.tet == tet {
        return Err(not_applicable("the face is glued to its own tetrahedron"));
    }
    let mut other = [0u32; 4];
    for p in 0..4u8 {
        other[g.perm.apply(p) as usize] = if p == face { 4 } else { p as u32 };
    }
    let [a, b, c] = face_vertices(face).map(u32::from);
    let (d, e) = (face as u32, 4);
    let new = vec![[d, e, a, b], [d, e, b, c], [d, e, a, c]];
    replace(t, &[(tet, [0, 1, 2, 3]), (g.tet, other)], &new)
}

fn three_two(t: &Triangulation3, edge: usize) -> Result<Triangulation3> {
    if edge >= t.edge_count() {
        return Err(not_applicable(format!("no edge {edge}")));
    }
    if t.is_boundary_edge(edge) || t.edge_degree(edge) != 3 {
        return Err(not_applicable("the edge must be interior of degree 3"));
    }
    let (t0, k) = (0..t.tet_count())
        .flat_map(|x| (0..6).map(move |k| (x, k)))
        .find(|&(x, k)| t.tet_edges(x)[k] == edge)
        .unwrap();
    let (a, b) = TET_EDGES[k];
    let others: Vec<u8> = (0..4).filter(|&v| v != a && v != b).collect();
    let mut keys0 = [0u32; 4];
    keys0[a as usize] = 0;
    keys0[b as usize] = 1;
    keys0[others[0] as usize] = 2;
    keys0[others[1] as usize] = 3;
    // walk across the face opposite key 2, then opposite key 3
    let step = |tet: usize, keys: [u32; 4], drop: u32, fresh: u32| -> Result<(usize, [u32; 4])> {
        let f = keys.iter().position(|&x| x == drop).unwrap() as u8;
        let g = t
            .gluing(tet, f)
            .ok_or_else(|| not_applicable("edge star touches the boundary"))?;
        let mut next = [u32::MAX; 4];
        for p in 0..4u8 {
            next[g.perm.apply(p) as usize] = if p == f { fresh } else { keys[p as usize] };
        }
        Ok((g.tet, next))
    };
    let (t1, keys1) = step(t0, keys0, 2, 4)?;
    let (t2, keys2) = step(t1, keys1, 3, 2)?;
    if t0 == t1 || t1 == t2 || t0 == t2 {
        return Err(not_applicable("the tetrahedra around the edge are not distinct"));
    }
    let new = vec![[0, 2, 3, 4], [1, 2, 3, 4]];
    replace(t, &[(t0, keys0), (t1, keys1), (t2, keys2)], &new)
}

fn four_one(t: &Triangulation3, vertex: usize) -> Result<Triangulation3> {
    if vertex >= t.vertex_count() {
        return Err(not_applicable(format!("no vertex {vertex}")));
    }
    if t.is_boundary_vertex(vertex) {
        return Err(not_applicable("the vertex is on the boundary"));
    }
    let slots: Vec<(usize, u8)> = (0..t.tet_count())
        .flat_map(|x| (0..4u8).map(move |p| (x, p)))
        .filter(|&(x, p)| t.tet_vertices(x)[p as usize] == vertex)
        .collect();
    if slots.len() != 4 {
        return Err(not_applicable("the vertex must have degree 4"));
    }
    let (t0, p0) = slots[0];
    let mut keys0 = [4u32; 4];
    let mut next_key = 0;
    for (p, key) in keys0.iter_mut().enumerate() {
        if p != p0 as usize {
            *key = next_key;
            next_key += 1;
        }
    }
    let mut found: Vec<(usize, [u32; 4])> = vec![(t0, keys0)];
    let mut head = 0;
    while head < found.len() {
        let (x, keys) = found[head];
        head += 1;
        let apex_pos = keys.iter().position(|&k| k == 4).unwrap() as u8;
        for f in 0..4u8 {
            if f == apex_pos {
                continue;
            }
            let g = t.gluing(x, f).unwrap();
            let missing = keys[f as usize];
            let mut next = [u32::MAX; 4];
            for p in 0..4u8 {
                if p != f {
                    next[g.perm.apply(p) as usize] = keys[p as usize];
                }
            }
            let used: Vec<u32> = next.iter().copied().filter(|&k| k != u32::MAX).collect();
            let fresh = (0..4).find(|k| *k != missing && !used.contains(k)).unwrap();
            next[g.face as usize] = fresh;
            match found.iter().find(|(y, _)| *y == g.tet) {
                Some((_, k)) if *k == next => {}
                Some(_) => return Err(not_applicable("the vertex star is not a ball of four tetrahedra")),
                None => found.push((g.tet, next)),
            }
        }
    }
    if found.len() != 4 {
        return Err(not_applicable(
            "the vertex star does not consist of four distinct tetrahedra",
        ));
    }
    replace(t, &found, &[[0, 1, 2, 3]])
}

fn sorted_face_keys(keys: &[u32; 4], f: u8) -> [u32; 3] {
    let mut k = face_vertices(f).map(|p| keys[p as usize]);
    k.sort_unstable();
    k
}

fn replace(t: &Triangulation3, removed: &[(usize, [u32; 4])], new: &[[u32; 4]]) -> Result<Triangulation3> {
    let n = t.tet_count();
    let removed_index: HashMap<usize, usize> = removed.iter().enumerate().map(|(i, (x, _))| (*x, i)).collect();
    if removed_index.len() != removed.len() {
        return Err(not_applicable("a tetrahedron occurs twice"));
    }
    for keys in removed.iter().map(|r| &r.1).chain(new) {
        let mut s = *keys;
        s.sort_unstable();
        if s.windows(2).any(|w| w[0] == w[1]) {
            return Err(not_applicable("degenerate tetrahedron"));
        }
    }

    // outer faces of the removed region, keyed by their key triple
    let mut outer: HashMap<[u32; 3], (usize, u8)> = HashMap::new();
    for (i, (x, keys)) in removed.iter().enumerate() {
        for f in 0..4u8 {
            let internal = match t.gluing(*x, f) {
                Some(g) => match removed_index.get(&g.tet) {
                    Some(&j) => (0..4u8).all(|p| removed[j].1[g.perm.apply(p) as usize] == keys[p as usize] || p == f),
                    None => false,
                },
                None => false,
            };
            if !internal && outer.insert(sorted_face_keys(keys, f), (i, f)).is_some() {
                return Err(not_applicable("outer faces are not distinct"));
            }
        }
    }

    let mut new_faces: HashMap<[u32; 3], Vec<(usize, u8)>> = HashMap::new();
    for (j, keys) in new.iter().enumerate() {
        for f in 0..4u8 {
            new_faces.entry(sorted_face_keys(keys, f)).or_default().push((j, f));
        }
    }

    let kept: Vec<usize> = (0..n).filter(|x| !removed_index.contains_key(x)).collect();
    let mut new_id = vec![usize::MAX; n];
    for (i, &x) in kept.iter().enumerate() {
        new_id[x] = i;
    }
    let base = kept.len();
    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; base + new.len()];
    for &x in &kept {
        for f in 0..4u8 {
            if let Some(g) = t.gluing(x, f) {
                if !removed_index.contains_key(&g.tet) {
                    gluings[new_id[x]][f as usize] = Some(Gluing {
                        tet: new_id[g.tet],
                        ..g
                    });
                }
            }
        }
    }

    let pos = |keys: &[u32; 4], k: u32| keys.iter().position(|&x| x == k).unwrap() as u8;
    // where each outer face of the removed region went
    let mut outer_new: HashMap<(usize, u8), (usize, u8)> = HashMap::new();
    let mut matched = 0;
    for (key, sites) in &new_faces {
        match sites.as_slice() {
            [(j1, f1), (j2, f2)] => {
                if outer.contains_key(key) {
                    return Err(not_applicable("face occurs both inside and outside"));
                }
                let (k1, k2) = (&new[*j1], &new[*j2]);
                let perm = Perm4::new(std::array::from_fn(
                    |p| if p as u8 == *f1 { *f2 } else { pos(k2, k1[p]) },
                ));
                gluings[base + j1][*f1 as usize] = Some(Gluing {
                    tet: base + j2,
                    face: *f2,
                    perm,
                });
                gluings[base + j2][*f2 as usize] = Some(Gluing {
                    tet: base + j1,
                    face: *f1,
                    perm: perm.inverse(),
                });
            }
            [(j, f)] => {
                let &(i, rf) = outer
                    .get(key)
                    .ok_or_else(|| not_applicable("new faces do not match the old boundary"))?;
                outer_new.insert((i, rf), (*j, *f));
                matched += 1;
            }
            _ => return Err(not_applicable("a face is shared by more than two new tetrahedra")),
        }
    }
    if matched != outer.len() {
        return Err(not_applicable("old outer faces were not all matched"));
    }

    for (&(i, rf), &(j, nf)) in &outer_new {
        let (x, rkeys) = &removed[i];
        let nkeys = &new[j];
        // new position -> old position in the removed tet
        let to_old: [u8; 4] = std::array::from_fn(|p| if p as u8 == nf { rf } else { pos(rkeys, nkeys[p]) });
        let Some(g) = t.gluing(*x, rf) else { continue };
        let glued = match removed_index.get(&g.tet) {
            None => {
                let perm = Perm4::new(to_old.map(|q| g.perm.apply(q)));
                let target = Gluing {
                    tet: new_id[g.tet],
                    face: g.face,
                    perm,
                };
                gluings[target.tet][target.face as usize] = Some(Gluing {
                    tet: base + j,
                    face: nf,
                    perm: perm.inverse(),
                });
                target
            }
            Some(&i2) => {
                let &(j2, nf2) = outer_new
                    .get(&(i2, g.face))
                    .ok_or_else(|| not_applicable("inconsistent self-gluing in the removed region"))?;
                let (k2, n2) = (&removed[i2].1, &new[j2]);
                let perm = Perm4::new(to_old.map(|q| {
                    if q == rf {
                        nf2
                    } else {
                        pos(n2, k2[g.perm.apply(q) as usize])
                    }
                }));
                Gluing {
                    tet: base + j2,
                    face: nf2,
                    perm,
                }
            }
        };
        gluings[base + j][nf as usize] = Some(glued);
    }
    Triangulation3::from_gluings(gluings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex3::census;
    use crate::complex3::signature::isomorphism_signature;

    #[test]
    fn one_four_then_four_one_is_identity() {
        let s3 = census::s3_5tet();
        let sig = isomorphism_signature(&s3);
        let up = apply_move(&s3, PachnerMove::OneFour { tet: 2 }).unwrap();
        assert_eq!(up.tet_count(), 8);
        assert_eq!(up.vertex_count(), 6);
        up.validate_manifold().unwrap();
        let v = (0..up.vertex_count())
            .find(|&v| apply_move(&up, PachnerMove::FourOne { vertex: v }).is_ok())
            .unwrap();
        let down = apply_move(&up, PachnerMove::FourOne { vertex: v }).unwrap();
        assert_eq!(isomorphism_signature(&down), sig);
    }

    #[test]
    fn two_three_then_three_two_is_identity() {
        let s3 = census::s3_5tet();
        let sig = isomorphism_signature(&s3);
        let up = apply_move(&s3, PachnerMove::TwoThree { tet: 0, face: 1 }).unwrap();
        assert_eq!(up.tet_count(), 6);
        assert_eq!(up.edge_count(), s3.edge_count() + 1);
        up.validate_manifold().unwrap();
        let e = (0..up.edge_count()).find(|&e| up.edge_degree(e) == 3).unwrap();
        let down = apply_move(&up, PachnerMove::ThreeTwo { edge: e }).unwrap();
        assert_eq!(isomorphism_signature(&down), sig);
    }

    #[test]
    fn moves_on_boundary_are_rejected() {
        let single = Triangulation3::new(1, &[]).unwrap();
        assert!(apply_move(&single, PachnerMove::TwoThree { tet: 0, face: 0 }).is_err());
        assert!(apply_move(&single, PachnerMove::FourOne { vertex: 0 }).is_err());
        assert!(apply_move(&single, PachnerMove::ThreeTwo { edge: 0 }).is_err());
        let cone = apply_move(&single, PachnerMove::OneFour { tet: 0 }).unwrap();
        assert_eq!(cone.boundary_faces().len(), 4);
        cone.validate_manifold().unwrap();
    }
}
