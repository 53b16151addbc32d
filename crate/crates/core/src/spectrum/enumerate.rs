//! Complete subgroup enumeration.
//!
//! Two strategies share one driver that grows a set of known subgroups in
//! rounds, starting from the trivial subgroup:
//!
//! * **Join-closure** (any group). Every known `H` is joined with single
//!   elements `x ∉ H`. Since `⟨H, hx⟩ = ⟨H, x⟩` for `h ∈ H`, one
//!   representative per right coset `Hx` suffices. Joining the trivial
//!   group yields every cyclic subgroup, and `⟨x₁, …, x_k⟩` is reached along
//!   `⟨x₁⟩ ⊆ ⟨x₁, x₂⟩ ⊆ …`, so the fixpoint is the whole lattice.
//! * **Cyclic extension** (solvable groups). Every nontrivial subgroup `J`
//!   of a solvable group has a normal subgroup `H` of prime index `p`, so
//!   `J = H ∪ Hx ∪ … ∪ Hx^{p-1}` for any `x ∈ J \ H`. It is enough to extend
//!   each `H` by elements `x ∈ N(H)` with `x^p ∈ H`, and every element of
//!   the resulting `J \ H` gives the same `J`.
//!
//! The extensions of one round may be computed on several workers; results
//! are merged in frontier order, so the output does not depend on the
//! worker count.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numtheory::factor_any;
use crate::permgroup::{ElementSet, MulTable, PermGroup, Subgroup};

use super::{OracleConfig, Strategy};

struct Known {
    set: Arc<ElementSet>,
    gens: Vec<u32>,
}

fn joins_of(t: &MulTable, h: &Known) -> Vec<Known> {
    let n = t.len();
    let base: Vec<u32> = h.set.iter().collect();
    let mut covered = (*h.set).clone();
    let mut local: HashSet<ElementSet> = HashSet::new();
    let mut out = Vec::new();
    for x in 0..n as u32 {
        if covered.contains(x) {
            continue;
        }
        for &e in &base {
            covered.insert(t.mul(e, x));
        }
        let mut gens = h.gens.clone();
        gens.push(x);
        let mut set = (*h.set).clone();
        let mut list = base.clone();
        set.insert(x);
        list.push(x);
        t.close_into(&mut set, &mut list, &gens);
        if local.insert(set.clone()) {
            out.push(Known { set: Arc::new(set), gens });
        }
    }
    out
}

/// `powers[i][x]` is `x^{primes[i]}`.
struct PrimePowers {
    primes: Vec<u64>,
    powers: Vec<Vec<u32>>,
}

impl PrimePowers {
    fn new(t: &MulTable, order: u64) -> Self {
        let primes: Vec<u64> = factor_any(order).primes();
        let powers = primes
            .iter()
            .map(|&p| {
                (0..t.len() as u32)
                    .map(|x| {
                        let mut y = 0u32;
                        for _ in 0..p {
                            y = t.mul(y, x);
                        }
                        y
                    })
                    .collect()
            })
            .collect();
        PrimePowers { primes, powers }
    }
}

fn extensions_of(t: &MulTable, pp: &PrimePowers, h: &Known) -> Vec<Known> {
    let n = t.len();
    let base: Vec<u32> = h.set.iter().collect();
    let mut covered = (*h.set).clone();
    let mut out = Vec::new();
    for x in 0..n as u32 {
        if covered.contains(x) {
            continue;
        }
        let Some(i) = pp.powers.iter().position(|pw| h.set.contains(pw[x as usize])) else {
            continue;
        };
        if !h.gens.iter().all(|&g| h.set.contains(t.conj(g, x))) {
            continue;
        }
        let mut set = (*h.set).clone();
        let mut y = x;
        for _ in 1..pp.primes[i] {
            for &e in &base {
                set.insert(t.mul(e, y));
            }
            y = t.mul(y, x);
        }
        for z in set.iter() {
            covered.insert(z);
        }
        let mut gens = h.gens.clone();
        gens.push(x);
        out.push(Known { set: Arc::new(set), gens });
    }
    out
}

/// True iff the derived series of `g` reaches the trivial group.
pub fn is_solvable(g: &PermGroup) -> bool {
    let t = g.table();
    let mut current: Vec<u32> = (0..t.len() as u32).collect();
    loop {
        if current.len() == 1 {
            return true;
        }
        let mut comms = ElementSet::new(t.len());
        let mut gens = Vec::new();
        for &a in &current {
            for &b in &current {
                let c = t.mul(t.mul(t.inv(a), t.inv(b)), t.mul(a, b));
                if comms.insert(c) {
                    gens.push(c);
                }
            }
        }
        let derived: Vec<u32> = t.closure(&gens).iter().collect();
        if derived.len() == current.len() {
            return false;
        }
        current = derived;
    }
}

pub(crate) fn enumerate(g: &PermGroup, cfg: &OracleConfig) -> Result<Vec<Subgroup>> {
    if g.order() > cfg.cap {
        return Err(Error::resource(format!(
            "group of order {} exceeds the oracle cap of {}",
            g.order(),
            cfg.cap
        )));
    }
    let t = g.table();
    let n = t.len();
    let use_extension = match cfg.strategy {
        Strategy::JoinClosure => false,
        Strategy::CyclicExtension => {
            if !is_solvable(g) {
                return Err(Error::domain("cyclic extension needs a solvable group"));
            }
            true
        }
        Strategy::Auto => is_solvable(g),
    };
    let powers = use_extension.then(|| PrimePowers::new(t, g.order()));
    let step = |h: &Known| match &powers {
        Some(pp) => extensions_of(t, pp, h),
        None => joins_of(t, h),
    };

    let mut trivial = ElementSet::new(n);
    trivial.insert(0);
    let trivial = Arc::new(trivial);
    let mut known = vec![Known { set: trivial.clone(), gens: vec![] }];
    let mut index: HashSet<Arc<ElementSet>> = HashSet::from([trivial]);
    let mut frontier = vec![0usize];

    let pool = if cfg.workers > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.workers)
                .build()
                .map_err(|e| Error::Internal(e.to_string()))?,
        )
    } else {
        None
    };

    while !frontier.is_empty() {
        let rounds: Vec<Vec<Known>> = match &pool {
            Some(pool) => pool.install(|| frontier.par_iter().map(|&i| step(&known[i])).collect()),
            None => frontier.iter().map(|&i| step(&known[i])).collect(),
        };
        let mut next = Vec::new();
        for found in rounds.into_iter().flatten() {
            if index.insert(found.set.clone()) {
                next.push(known.len());
                known.push(found);
            }
        }
        frontier = next;
    }
    drop(index);

    let mut subs: Vec<Subgroup> = known.iter().map(|k| Subgroup::from_set(&k.set)).collect();
    sort_subgroups(&mut subs);
    Ok(subs)
}

/// Canonical output order: by size, then lexicographically by elements.
pub fn sort_subgroups(subs: &mut [Subgroup]) {
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
}

/// True iff joining any two listed subgroups produces a listed subgroup.
/// Quadratic in the number of subgroups; intended for small groups.
pub fn is_join_closed(g: &PermGroup, subs: &[Subgroup]) -> bool {
    let t = g.table();
    let n = t.len();
    let sets: HashSet<ElementSet> = subs.iter().map(|s| s.to_set(n)).collect();
    subs.iter().enumerate().all(|(i, a)| {
        subs[i + 1..].iter().all(|b| {
            let gens: Vec<u32> = a.elements().iter().chain(b.elements()).copied().collect();
            sets.contains(&t.closure(&gens))
        })
    })
}

/// Conjugacy class id of every subgroup (ids assigned in list order), by
/// union-find over conjugation by the group's generators. Fails if some
/// conjugate is missing from the list.
pub fn conjugacy_classes(g: &PermGroup, subs: &[Subgroup]) -> Result<Vec<usize>> {
    let t = g.table();
    let n = t.len();
    let index: HashMap<ElementSet, usize> = subs.iter().enumerate().map(|(i, s)| (s.to_set(n), i)).collect();
    let mut parent: Vec<usize> = (0..subs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let gens = g.generator_indices();
    for (i, s) in subs.iter().enumerate() {
        for &gen in &gens {
            let mut image = ElementSet::new(n);
            for &h in s.elements() {
                image.insert(t.conj(h, gen));
            }
            let j = *index
                .get(&image)
                .ok_or_else(|| Error::Internal("subgroup list is not closed under conjugation".into()))?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut ids = HashMap::new();
    Ok((0..subs.len())
        .map(|i| {
            let root = find(&mut parent, i);
            let next = ids.len();
            *ids.entry(root).or_insert(next)
        })
        .collect())
}
