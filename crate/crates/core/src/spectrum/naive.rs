//! A deliberately simple second enumerator, used to cross-check the
//! join-closure oracle on small groups. It works on permutations directly
//! (no multiplication table): grow each known subgroup by one element and
//! close under composition until nothing changes.

use std::collections::BTreeSet;

use crate::permgroup::{PermGroup, Permutation, Subgroup};

fn close(seed: &BTreeSet<Permutation>) -> BTreeSet<Permutation> {
    let mut set = seed.clone();
    loop {
        let mut added = Vec::new();
        for a in &set {
            for b in &set {
                let c = a.compose(b);
                if !set.contains(&c) {
                    added.push(c);
                }
            }
        }
        if added.is_empty() {
            return set;
        }
        set.extend(added);
    }
}

/// All subgroups of `g`, sorted like the main oracle's output.
pub fn naive_subgroups(g: &PermGroup) -> Vec<Subgroup> {
    let id = Permutation::identity(g.degree());
    let trivial = BTreeSet::from([id]);
    let mut found: BTreeSet<BTreeSet<Permutation>> = BTreeSet::from([trivial.clone()]);
    let mut work = vec![trivial];
    while let Some(h) = work.pop() {
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let mut seed = h.clone();
            seed.insert(x.clone());
            let k = close(&seed);
            if !found.contains(&k) {
                found.insert(k.clone());
                work.push(k);
            }
        }
    }
    let mut subs: Vec<Subgroup> = found
        .iter()
        .map(|s| Subgroup::from_indices(s.iter().map(|p| g.index_of(p).expect("closure stays in G")).collect()))
        .collect();
    super::enumerate::sort_subgroups(&mut subs);
    subs
}
