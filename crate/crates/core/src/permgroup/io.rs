//! Text format for permutation groups:
//!
//! ```text
//! # comment
//! degree 4
//! gen 2 1 4 3
//! gen 2 3 1 4
//! ```
//!
//! Points are 1-based; each `gen` line lists the images of `1..degree`.

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("degree") => {
                if degree.is_some() {
                    return Err(err("duplicate degree line".into()));
                }
                let value = words.next().ok_or_else(|| err("missing degree value".into()))?;
                let n: usize = value.parse().map_err(|_| err(format!("bad degree `{value}`")))?;
                if n == 0 || words.next().is_some() {
                    return Err(err("degree must be a single positive integer".into()));
                }
                degree = Some(n);
            }
            Some("gen") => {
                let n = degree.ok_or_else(|| err("`gen` before `degree`".into()))?;
                let images = words
                    .map(|w| w.parse::<u32>().map_err(|_| err(format!("bad point `{w}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if images.len() != n {
                    return Err(err(format!("expected {n} images, found {}", images.len())));
                }
                let perm = Permutation::from_one_based(&images).map_err(|e| err(e.to_string()))?;
                gens.push(perm);
            }
            Some(other) => return Err(err(format!("unknown directive `{other}`"))),
            None => unreachable!(),
        }
    }
    let degree = degree.ok_or(Error::Parse { line: 0, msg: "missing `degree` line".into() })?;
    PermGroup::generate(degree, gens)
}

pub fn write_group_file(g: &PermGroup) -> String {
    let mut out = format!("degree {}\n", g.degree());
    for s in g.generators() {
        let words: Vec<String> = s.one_based().iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("gen {}\n", words.join(" ")));
    }
    out
}
