//! Plain-text gluing format.
//!
//! ```text
//! # comment
//! tets 2
//! g 0 3 1 3 0
//! ```
//!
//! Each `g` line glues face `faceA` of `tetA` to face `faceB` of `tetB`;
//! the last field (0..=5) indexes the bijection between the ascending vertex
//! lists of the two faces, in lexicographic order of S3.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::perm::{face_index_of_perm, perm_from_face_index};
use super::tri3::Triangulation3;

pub fn parse_triangulation(text: &str) -> Result<Triangulation3> {
    let mut n_tets = None;
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        match fields[0] {
            "tets" => {
                if n_tets.is_some() {
                    return Err(Error::parse(line, "duplicate `tets` header"));
                }
                if fields.len() != 2 {
                    return Err(Error::parse(line, "expected `tets N`"));
                }
                n_tets = Some(num(fields[1], line)?);
            }
            "g" => {
                if n_tets.is_none() {
                    return Err(Error::parse(line, "gluing before `tets` header"));
                }
                if fields.len() != 6 {
                    return Err(Error::parse(line, "expected `g tetA faceA tetB faceB perm`"));
                }
                let ta = num(fields[1], line)?;
                let fa = face(fields[2], line)?;
                let tb = num(fields[3], line)?;
                let fb = face(fields[4], line)?;
                let idx = num(fields[5], line)?;
                if idx > 5 {
                    return Err(Error::parse(line, format!("permutation index {idx} is not in 0..=5")));
                }
                pairs.push((ta, fa, tb, fb, perm_from_face_index(fa, fb, idx)));
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    let n = n_tets.ok_or_else(|| Error::parse(0, "missing `tets` header"))?;
    Triangulation3::new(n, &pairs)
}

pub fn write_triangulation(t: &Triangulation3) -> String {
    let mut out = String::new();
    writeln!(out, "tets {}", t.tet_count()).unwrap();
    for (ta, fa) in t.distinct_faces() {
        if let Some(g) = t.gluing(ta, fa) {
            let idx = face_index_of_perm(fa, g.perm);
            writeln!(out, "g {ta} {fa} {} {} {idx}", g.tet, g.face).unwrap();
        }
    }
    out
}

fn num(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, found `{s}`")))
}

fn face(s: &str, line: usize) -> Result<u8> {
    match s.parse::<u8>() {
        Ok(f) if f < 4 => Ok(f),
        _ => Err(Error::parse(line, format!("face index must be 0..=3, found `{s}`"))),
    }
}
