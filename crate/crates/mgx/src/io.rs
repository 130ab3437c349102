//! Pattern JSON and the multigraph text format.
//!
//! Patterns come in three shapes:
//!
//! ```text
//! {"vertices": 2, "loops": [2, 1], "edges": [[0, 1, 3]]}
//! {"turan": {"r": [1, 0, 1], "a": 3}}
//! {"named": "Petersen", "a": 2}            // "ell" selects ℓ for K1_l, P_l, C_l
//! ```
//!
//! Multigraphs are plain text: the vertex count on the first line, then one
//! `u v m` line per pair (0-based, u < v). Missing pairs are 0; blank lines
//! and `#` comments are ignored.

use std::fmt::Write as _;
use std::path::Path;

use mgx_core::catalog::{make_turan_pattern, named_pattern, TuranSpec};
use mgx_core::{Error, Multigraph, Pattern, Result};
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Explicit {
    vertices: usize,
    #[serde(default)]
    loops: Vec<u32>,
    #[serde(default)]
    edges: Vec<(usize, usize, u32)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TuranBody {
    r: Vec<u32>,
    a: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Turan {
    turan: TuranBody,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Named {
    named: String,
    a: u32,
    #[serde(default)]
    ell: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PatternFile {
    Explicit(Explicit),
    Turan(Turan),
    Named(Named),
}

pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let file: PatternFile = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("pattern JSON: {e} (expected explicit, turan or named form)")))?;
    match file {
        PatternFile::Explicit(x) => {
            if x.vertices == 0 {
                return Err(Error::input("pattern needs at least one vertex"));
            }
            let loops = match x.loops.len() {
                0 => vec![0; x.vertices],
                n if n == x.vertices => x.loops,
                n => return Err(Error::input(format!("{n} loops given for {} vertices", x.vertices))),
            };
            Pattern::new(&loops, &x.edges)
        }
        PatternFile::Turan(t) => make_turan_pattern(&TuranSpec::new(t.turan.r, t.turan.a)?),
        PatternFile::Named(n) => named_pattern(&n.named, n.a, n.ell),
    }
}

pub fn read_pattern(path: &Path) -> Result<Pattern> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    parse_pattern(&text)
}

pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, first) = lines.next().ok_or_else(|| Error::input("empty multigraph file"))?;
    let n: usize = first.parse().map_err(|_| Error::input(format!("bad vertex count `{first}`")))?;
    let mut g = Multigraph::new(n);
    for (no, line) in lines {
        let f: Vec<&str> = line.split_whitespace().collect();
        let parsed: Option<(usize, usize, u32)> = match f.as_slice() {
            [u, v, m] => u.parse().ok().zip(v.parse().ok()).zip(m.parse().ok()).map(|((u, v), m)| (u, v, m)),
            _ => None,
        };
        let (u, v, m) = parsed.ok_or_else(|| Error::input(format!("line {no}: expected `u v m`")))?;
        if u >= v || v >= n {
            return Err(Error::input(format!("line {no}: need u < v < {n}")));
        }
        g.set(u, v, m);
    }
    Ok(g)
}

pub fn read_multigraph(path: &Path) -> Result<Multigraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    parse_multigraph(&text)
}

/// Writes every pair with nonzero multiplicity.
pub fn format_multigraph(g: &Multigraph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v, m) in g.pairs().filter(|&(_, _, m)| m > 0) {
        let _ = writeln!(s, "{u} {v} {m}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_pattern() {
        let p = parse_pattern(r#"{"vertices":2,"loops":[2,1],"edges":[[0,1,3]]}"#).unwrap();
        assert_eq!((p.loop_mult(0), p.loop_mult(1), p.pair(0, 1)), (2, 1, 3));
        let q = parse_pattern(r#"{"vertices":3,"edges":[[0,2,1]]}"#).unwrap();
        assert_eq!((q.loop_mult(1), q.pair(0, 1), q.pair(0, 2)), (0, 0, 1));
    }

    #[test]
    fn shorthand_patterns() {
        let t = parse_pattern(r#"{"turan":{"r":[1,1],"a":2}}"#).unwrap();
        assert_eq!(t.k(), 2);
        let n = parse_pattern(r#"{"named":"Petersen","a":2}"#).unwrap();
        assert_eq!(n.k(), 10);
        let c = parse_pattern(r#"{"named":"C_l","a":1,"ell":7}"#).unwrap();
        assert_eq!(c.k(), 7);
    }

    #[test]
    fn bad_patterns() {
        assert!(parse_pattern(r#"{"vertices":2,"loops":[1]}"#).is_err());
        assert!(parse_pattern(r#"{"named":"Nope","a":2}"#).is_err());
        assert!(parse_pattern(r#"{"vertices":2,"edges":[[0,5,1]]}"#).is_err());
        assert!(parse_pattern("[]").is_err());
    }

    #[test]
    fn multigraph_roundtrip() {
        let g = parse_multigraph("# demo\n3\n0 1 2\n1 2 5 # heavy\n\n").unwrap();
        assert_eq!((g.get(0, 1), g.get(0, 2), g.get(1, 2)), (2, 0, 5));
        assert_eq!(parse_multigraph(&format_multigraph(&g)).unwrap(), g);
        assert!(parse_multigraph("3\n1 0 2\n").is_err());
        assert!(parse_multigraph("2\n0 1\n").is_err());
    }
}
