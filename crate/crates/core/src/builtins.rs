//! Named groups available to the CLI.
//!
//! Fixed: `A4 S3 S4 S5 S6 SL23 V4 Q8`. Parametric: `agl:p:m`, `cyclic:n`,
//! `gpqn:p:q:n`, `sym:n`.

use crate::constructions::{agl1, g_pqn};
use crate::error::{Error, Result};
use crate::permgroup::{cyclic_group, symmetric_group, PermGroup, Permutation};

pub const FIXED_BUILTINS: [&str; 8] = ["A4", "S3", "S4", "S5", "S6", "SL23", "V4", "Q8"];

/// Documented order of a fixed builtin.
pub fn documented_order(name: &str) -> Option<u64> {
    Some(match name.to_ascii_uppercase().as_str() {
        "A4" => 12,
        "S3" => 6,
        "S4" => 24,
        "S5" => 120,
        "S6" => 720,
        "SL23" => 24,
        "V4" => 4,
        "Q8" => 8,
        _ => return None,
    })
}

fn cycles(degree: usize, gens: &[&[&[u32]]]) -> Result<PermGroup> {
    let perms = gens.iter().map(|c| Permutation::from_cycles(degree, c)).collect::<Result<Vec<_>>>()?;
    PermGroup::generate(degree, perms)
}

pub fn alternating4() -> PermGroup {
    cycles(4, &[&[&[1, 2], &[3, 4]], &[&[1, 2, 3]]]).expect("A4")
}

pub fn klein_four() -> PermGroup {
    cycles(4, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]]).expect("V4")
}

/// `SL(2,3)` acting on the eight nonzero vectors of `GF(3)²`.
pub fn sl23() -> PermGroup {
    // point index of (a, b) is a + 3b - 1
    let act = |m: [[u32; 2]; 2]| {
        let images = (1..9u32)
            .map(|v| {
                let (a, b) = (v % 3, v / 3);
                let x = (m[0][0] * a + m[0][1] * b) % 3;
                let y = (m[1][0] * a + m[1][1] * b) % 3;
                x + 3 * y - 1
            })
            .collect();
        Permutation::from_images(images).expect("invertible matrix")
    };
    PermGroup::generate(8, vec![act([[1, 1], [0, 1]]), act([[1, 0], [1, 1]])]).expect("SL(2,3)")
}

/// Regular representation of the quaternion group.
pub fn quaternion() -> PermGroup {
    // element 2u + s is (-1)^s times unit u, with units 1, i, j, k
    const UNIT: [[(u32, u32); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let left = |u: usize| {
        let images = (0..8u32)
            .map(|x| {
                let (v, s) = ((x / 2) as usize, x % 2);
                let (w, t) = UNIT[u][v];
                2 * w + (s ^ t)
            })
            .collect();
        Permutation::from_images(images).expect("left multiplication is a bijection")
    };
    PermGroup::generate(8, vec![left(1), left(2)]).expect("Q8")
}

fn parse_num(s: &str, text: &str) -> Result<u64> {
    s.parse().map_err(|_| Error::domain(format!("bad number `{s}` in builtin `{text}`")))
}

pub fn resolve(text: &str) -> Result<PermGroup> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts[0].to_ascii_lowercase().as_str() {
        "a4" if parts.len() == 1 => Ok(alternating4()),
        "s3" if parts.len() == 1 => symmetric_group(3),
        "s4" if parts.len() == 1 => symmetric_group(4),
        "s5" if parts.len() == 1 => symmetric_group(5),
        "s6" if parts.len() == 1 => symmetric_group(6),
        "sl23" if parts.len() == 1 => Ok(sl23()),
        "v4" if parts.len() == 1 => Ok(klein_four()),
        "q8" if parts.len() == 1 => Ok(quaternion()),
        "agl" if parts.len() == 3 => {
            let m = u32::try_from(parse_num(parts[2], text)?).map_err(|_| Error::domain("degree too large"))?;
            agl1(parse_num(parts[1], text)?, m)
        }
        "cyclic" if parts.len() == 2 => cyclic_group(parse_num(parts[1], text)? as usize),
        "gpqn" if parts.len() == 4 => {
            let n = u32::try_from(parse_num(parts[3], text)?).map_err(|_| Error::domain("n too large"))?;
            g_pqn(parse_num(parts[1], text)?, parse_num(parts[2], text)?, n)
        }
        "sym" if parts.len() == 2 => symmetric_group(parse_num(parts[1], text)? as usize),
        _ => Err(Error::domain(format!(
            "unknown builtin `{text}`; expected one of {} or agl:p:m, cyclic:n, gpqn:p:q:n, sym:n",
            FIXED_BUILTINS.join(", ")
        ))),
    }
}
