use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `0 .. degree`. Points are 0-based here; the group file
/// format and cycle constructors speak 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Build from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::domain(format!("image list {images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    /// Build from 1-based images.
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        if images.iter().any(|&x| x == 0) {
            return Err(Error::domain("points are numbered from 1"));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// Product of disjoint or overlapping cycles given with 1-based points,
    /// applied left to right.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut result = Self::identity(degree);
        for cycle in cycles {
            let mut images: Vec<u32> = (0..degree as u32).collect();
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a == 0 || b == 0 || a as usize > degree || b as usize > degree {
                    return Err(Error::domain(format!("cycle point out of range 1..{degree}")));
                }
                images[a as usize - 1] = b - 1;
            }
            result = result.compose(&Self::from_images(images)?);
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<u32> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn order(&self) -> u64 {
        let mut seen = vec![false; self.images.len()];
        let mut order = 1u64;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            order = num_integer::lcm(order, len);
        }
        order
    }

    /// Place `self` on points `offset .. offset + degree` of a larger set.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as u32;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    /// Disjoint cycle notation, 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut wrote = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.images[x] as usize;
            }
            write!(f, "({})", cycle.join(" "))?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}
