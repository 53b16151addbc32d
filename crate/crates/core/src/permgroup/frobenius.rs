//! Frobenius structure checks.
//!
//! `G` is Frobenius with kernel `N` when `N` is a proper nontrivial normal
//! subgroup with a complement `H` such that no nonidentity `h ∈ H`
//! centralizes a nonidentity element of `N`.

use serde::Serialize;

use super::{PermGroup, Subgroup};
use crate::error::Result;
use crate::spectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FrobeniusCase {
    /// `K ⊆ N`
    InKernel,
    /// `K ∩ N = 1`
    TrivialMeet,
    /// `K` is Frobenius with kernel `K ∩ N`.
    FrobeniusSub,
}

/// Search `subgroups` (all subgroups of the ambient group) for a complement
/// of `kernel` inside `within` that acts fixed-point-freely on the kernel.
pub fn frobenius_complement(
    g: &PermGroup,
    subgroups: &[Subgroup],
    within: &Subgroup,
    kernel: &Subgroup,
) -> Option<Subgroup> {
    let t = g.table();
    let (order, korder) = (within.order(), kernel.order());
    if korder <= 1 || korder >= order || !kernel.is_subset(within) {
        return None;
    }
    let normal = within.elements().iter().all(|&x| kernel.elements().iter().all(|&k| kernel.contains(t.conj(k, x))));
    if !normal {
        return None;
    }
    let target = order / korder;
    subgroups
        .iter()
        .filter(|h| h.order() == target && h.is_subset(within) && h.intersection(kernel).order() == 1)
        .find(|h| {
            h.elements()[1..]
                .iter()
                .all(|&x| kernel.elements()[1..].iter().all(|&k| t.mul(x, k) != t.mul(k, x)))
        })
        .cloned()
}

/// True iff `g` is a Frobenius group with kernel `n`.
pub fn verify_frobenius(g: &PermGroup, n: &Subgroup) -> Result<bool> {
    if !g.is_subgroup(n) {
        return Ok(false);
    }
    let subs = spectrum::enumerate_subgroups(g)?;
    Ok(frobenius_complement(g, &subs, &g.full_subgroup(), n).is_some())
}

/// Which case of the subgroup trichotomy in a Frobenius group `K` falls
/// into. The trivial subgroup counts as `InKernel`.
pub fn classify_in_frobenius(n: &Subgroup, k: &Subgroup) -> FrobeniusCase {
    if k.is_subset(n) {
        FrobeniusCase::InKernel
    } else if k.intersection(n).order() == 1 {
        FrobeniusCase::TrivialMeet
    } else {
        FrobeniusCase::FrobeniusSub
    }
}
