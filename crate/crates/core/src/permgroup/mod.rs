//! Permutation groups held as a full, BFS-ordered element table.
//!
//! A [`PermGroup`] enumerates every element at construction time (up to a
//! cap). A full multiplication table is derived lazily from the BFS
//! parent pointers: if `e_j = e_parent * s_k` then
//! `e_i * e_j = (e_i * e_parent) * s_k`, so each entry is one lookup into
//! the generator table and no permutation is hashed twice.
//!
//! Subgroups are [`Subgroup`]s: sorted lists of indices into the parent's
//! element table.

mod frobenius;
mod io;
mod perm;
mod set;

use std::collections::HashMap;
use std::sync::OnceLock;

pub use frobenius::{classify_in_frobenius, frobenius_complement, verify_frobenius, FrobeniusCase};
pub use io::{parse_group_file, write_group_file};
pub use perm::Permutation;
pub use set::ElementSet;

use crate::error::{Error, Result};

/// Default bound on the number of elements `generate` will enumerate.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    /// `(parent, generator)` for every non-identity element.
    parent: Vec<(u32, u32)>,
    /// `right_gen[i * ngens + k]` = index of `e_i * s_k`.
    right_gen: Vec<u32>,
    table: OnceLock<MulTable>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            parent: self.parent.clone(),
            right_gen: self.right_gen.clone(),
            table: OnceLock::new(),
        }
    }
}

/// Full Cayley table over element indices.
#[derive(Debug)]
pub struct MulTable {
    n: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
}

impl MulTable {
    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `g^-1 h g`
    #[inline]
    pub fn conj(&self, h: u32, g: u32) -> u32 {
        self.mul(self.mul(self.inv(g), h), g)
    }

    /// Subgroup generated by `gens`, by right-multiplication BFS.
    pub fn closure(&self, gens: &[u32]) -> ElementSet {
        let mut set = ElementSet::new(self.n);
        set.insert(0);
        let mut list = vec![0u32];
        self.close_into(&mut set, &mut list, gens);
        set
    }

    /// Extend `set`/`list` (already closed under a subset of `gens`) to the
    /// subgroup generated by everything in `list` and `gens`.
    pub(crate) fn close_into(&self, set: &mut ElementSet, list: &mut Vec<u32>, gens: &[u32]) {
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    list.push(y);
                }
            }
            i += 1;
        }
    }

    pub fn element_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// A subgroup as a sorted list of element indices into its parent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<u32>,
}

impl Subgroup {
    /// Wrap an index list; sorts and dedups. Closure is not checked here.
    pub fn from_indices(mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn from_set(set: &ElementSet) -> Self {
        Subgroup { elements: set.iter().collect() }
    }

    pub fn trivial() -> Self {
        Subgroup { elements: vec![0] }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup { elements: self.elements.iter().copied().filter(|&x| other.contains(x)).collect() }
    }

    pub fn to_set(&self, n: usize) -> ElementSet {
        let mut s = ElementSet::new(n);
        for &x in &self.elements {
            s.insert(x);
        }
        s
    }
}

impl PermGroup {
    /// Breadth-first closure of `gens` from the identity, generators applied
    /// in list order.
    pub fn generate(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        Self::generate_with_cap(degree, gens, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_with_cap(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Self> {
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::domain(format!(
                "generator of degree {} in a group of degree {degree}",
                bad.degree()
            )));
        }
        let ngens = gens.len();
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0u32)]);
        let mut parent = vec![(0u32, 0u32)];
        let mut right_gen = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for (k, s) in gens.iter().enumerate() {
                let y = elements[i].compose(s);
                let idx = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len() as u32;
                        if elements.len() >= cap {
                            return Err(Error::resource(format!(
                                "group exceeds the element cap of {cap}"
                            )));
                        }
                        index.insert(y.clone(), j);
                        elements.push(y);
                        parent.push((i as u32, k as u32));
                        j
                    }
                };
                right_gen.push(idx);
            }
            i += 1;
        }
        debug_assert_eq!(right_gen.len(), elements.len() * ngens);
        Ok(PermGroup { degree, generators: gens, elements, index, parent, right_gen, table: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<u32> {
        self.index.get(p).copied()
    }

    /// Indices of the generators in the element table.
    pub fn generator_indices(&self) -> Vec<u32> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn table(&self) -> &MulTable {
        self.table.get_or_init(|| self.build_table())
    }

    fn build_table(&self) -> MulTable {
        let n = self.elements.len();
        let ngens = self.generators.len();
        let mut mul = vec![0u32; n * n];
        // column j is filled from column parent(j)
        for i in 0..n {
            mul[i * n] = i as u32;
        }
        for j in 1..n {
            let (par, k) = self.parent[j];
            for i in 0..n {
                let ip = mul[i * n + par as usize] as usize;
                mul[i * n + j] = self.right_gen[ip * ngens + k as usize];
            }
        }
        let mut inv = vec![0u32; n];
        for i in 0..n {
            let row = &mul[i * n..(i + 1) * n];
            let j = row.iter().position(|&x| x == 0).expect("every element has an inverse");
            inv[i] = j as u32;
        }
        MulTable { n, mul, inv }
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { elements: (0..self.elements.len() as u32).collect() }
    }

    /// Subgroup generated by the given permutations, which must be elements.
    pub fn subgroup_generated_by(&self, gens: &[Permutation]) -> Result<Subgroup> {
        let idx = gens
            .iter()
            .map(|g| {
                self.index_of(g).ok_or_else(|| Error::domain(format!("{g} is not an element of the group")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Subgroup::from_set(&self.table().closure(&idx)))
    }

    /// True iff `h` is closed under products (hence a subgroup, being finite).
    pub fn is_subgroup(&self, h: &Subgroup) -> bool {
        let n = self.elements.len() as u32;
        if h.elements.is_empty() || h.elements.iter().any(|&x| x >= n) || !h.contains(0) {
            return false;
        }
        let t = self.table();
        let set = h.to_set(n as usize);
        h.elements.iter().all(|&a| h.elements.iter().all(|&b| set.contains(t.mul(a, b))))
    }

    pub fn center(&self) -> Subgroup {
        let t = self.table();
        let gens = self.generator_indices();
        Subgroup {
            elements: (0..self.elements.len() as u32)
                .filter(|&x| gens.iter().all(|&g| t.mul(x, g) == t.mul(g, x)))
                .collect(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        let t = self.table();
        let gens = self.generator_indices();
        gens.iter().all(|&a| gens.iter().all(|&b| t.mul(a, b) == t.mul(b, a)))
    }
}

pub fn generate(degree: usize, gens: Vec<Permutation>) -> Result<PermGroup> {
    PermGroup::generate(degree, gens)
}

/// The `n`-cycle on `n` points.
pub fn cyclic_group(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::domain("cyclic group order must be at least 1"));
    }
    let images: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    PermGroup::generate(n, vec![Permutation::from_images_unchecked(images)])
}

/// `S_n` generated by `(1 2)` and `(1 2 ... n)`.
pub fn symmetric_group(n: usize) -> Result<PermGroup> {
    symmetric_group_with_cap(n, DEFAULT_ELEMENT_CAP)
}

pub fn symmetric_group_with_cap(n: usize, cap: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(Error::domain("symmetric group needs at least one point"));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<u32> = (0..n as u32).collect();
        t.swap(0, 1);
        gens.push(Permutation::from_images_unchecked(t));
    }
    if n >= 3 {
        gens.push(Permutation::from_images_unchecked((0..n as u32).map(|i| (i + 1) % n as u32).collect()));
    }
    PermGroup::generate_with_cap(n, gens, cap)
}

/// `G × H` acting on disjoint blocks of points.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    let total = g.degree + h.degree;
    let order = g.order().checked_mul(h.order());
    if order.map_or(true, |o| o > DEFAULT_ELEMENT_CAP as u64) {
        return Err(Error::resource(format!(
            "direct product of orders {} and {} exceeds the element cap of {DEFAULT_ELEMENT_CAP}",
            g.order(),
            h.order()
        )));
    }
    let gens = g
        .generators
        .iter()
        .map(|s| s.shifted(0, total))
        .chain(h.generators.iter().map(|s| s.shifted(g.degree, total)))
        .collect();
    PermGroup::generate(total, gens)
}

/// True iff `h` is normalized by every generator of `g`.
pub fn is_normal(g: &PermGroup, h: &Subgroup) -> Result<bool> {
    if !g.is_subgroup(h) {
        return Err(Error::domain("the given element set is not a subgroup"));
    }
    let t = g.table();
    let gens = g.generator_indices();
    Ok(gens.iter().all(|&s| h.elements.iter().all(|&x| h.contains(t.conj(x, s)))))
}

/// `G/N` as the left-multiplication action of `G` on the cosets of `N`.
pub fn quotient_group(g: &PermGroup, n: &Subgroup) -> Result<PermGroup> {
    if !is_normal(g, n)? {
        return Err(Error::domain("quotient requires a normal subgroup"));
    }
    let t = g.table();
    let size = g.elements.len();
    let mut coset = vec![u32::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size as u32 {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &k in &n.elements {
            coset[t.mul(x, k) as usize] = c;
        }
    }
    let gens = g
        .generator_indices()
        .into_iter()
        .map(|s| {
            let images = reps.iter().map(|&r| coset[t.mul(s, r) as usize]).collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::generate(reps.len(), gens)
}
