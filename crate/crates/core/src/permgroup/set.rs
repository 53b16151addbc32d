/// Fixed-size bitset over element indices; the hashable canonical form of
/// a subgroup during enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new(n: usize) -> Self {
        ElementSet { words: vec![0; n.div_ceil(64)] }
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    /// Returns true if `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: u32) -> bool {
        let w = &mut self.words[(x >> 6) as usize];
        let bit = 1u64 << (x & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Size of the intersection.
    pub fn meet_count(&self, other: &ElementSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as u32 * 64 + b)
            })
        })
    }
}
