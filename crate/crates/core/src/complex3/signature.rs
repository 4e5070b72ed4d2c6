//! Canonical isomorphism signature of a triangulation.
//!
//! Each connected component is relabelled by a breadth-first walk from
//! every (tet, vertex permutation) start; the lexicographically smallest
//! encoding wins. Components are then sorted.

use super::perm::Perm4;
use super::tri3::Triangulation3;

const BOUNDARY: u32 = u32::MAX;

/// Two triangulations are combinatorially isomorphic iff their signatures
/// are equal.
pub fn isomorphism_signature(t: &Triangulation3) -> Vec<u32> {
    let n = t.tet_count();
    let mut component = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        component[s] = id;
        while let Some(x) = stack.pop() {
            members.push(x);
            for f in 0..4 {
                if let Some(g) = t.gluing(x, f) {
                    if component[g.tet] == usize::MAX {
                        component[g.tet] = id;
                        stack.push(g.tet);
                    }
                }
            }
        }
        comps.push(members);
    }
    let mut encoded: Vec<Vec<u32>> = comps
        .iter()
        .map(|members| {
            let mut best: Option<Vec<u32>> = None;
            for &start in members {
                for p in Perm4::all() {
                    let code = encode_from(t, start, p, members.len());
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
            best.unwrap()
        })
        .collect();
    encoded.sort();
    let mut out = vec![comps.len() as u32];
    for c in encoded {
        out.push(c.len() as u32);
        out.extend(c);
    }
    out
}

/// `rho` maps old vertex positions of `start` to new positions.
fn encode_from(t: &Triangulation3, start: usize, rho: Perm4, size: usize) -> Vec<u32> {
    let n = t.tet_count();
    let mut new_index = vec![usize::MAX; n];
    let mut relabel = vec![Perm4::IDENTITY; n];
    let mut order = Vec::with_capacity(size);
    new_index[start] = 0;
    relabel[start] = rho;
    order.push(start);
    let mut code = Vec::with_capacity(size * 4 * 3);
    let mut head = 0;
    while head < order.len() {
        let old = order[head];
        head += 1;
        let rho = relabel[old];
        let inv = rho.inverse();
        for new_face in 0..4u8 {
            let old_face = inv.apply(new_face);
            match t.gluing(old, old_face) {
                None => code.extend([BOUNDARY, 0, 0]),
                Some(g) => {
                    if new_index[g.tet] == usize::MAX {
                        new_index[g.tet] = order.len();
                        relabel[g.tet] = rho.compose(g.perm.inverse());
                        order.push(g.tet);
                    }
                    let p = relabel[g.tet].compose(g.perm).compose(inv);
                    code.extend([new_index[g.tet] as u32, p.apply(new_face) as u32, p.index() as u32]);
                }
            }
        }
    }
    code
}
