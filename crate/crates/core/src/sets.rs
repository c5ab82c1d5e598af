//! Bit sets over positive-root indices.

use std::fmt;

/// A subset of the positive roots of a fixed root system, stored as a bit
/// vector over root indices. The universe size is carried along so that
/// complement-style queries (`is_full`) are well defined.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootSet {
    nbits: u32,
    blocks: Vec<u64>,
}

impl RootSet {
    pub fn empty(nbits: usize) -> Self {
        RootSet {
            nbits: nbits as u32,
            blocks: vec![0; nbits.div_ceil(64)],
        }
    }

    pub fn full(nbits: usize) -> Self {
        let mut s = Self::empty(nbits);
        for i in 0..nbits {
            s.insert(i as u32);
        }
        s
    }

    pub fn from_indices(nbits: usize, indices: &[u32]) -> Self {
        let mut s = Self::empty(nbits);
        for &i in indices {
            s.insert(i);
        }
        s
    }

    pub fn universe_len(&self) -> usize {
        self.nbits as usize
    }

    pub fn insert(&mut self, i: u32) {
        debug_assert!(i < self.nbits);
        self.blocks[(i / 64) as usize] |= 1u64 << (i % 64);
    }

    pub fn remove(&mut self, i: u32) {
        debug_assert!(i < self.nbits);
        self.blocks[(i / 64) as usize] &= !(1u64 << (i % 64));
    }

    pub fn contains(&self, i: u32) -> bool {
        debug_assert!(i < self.nbits);
        self.blocks[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.nbits as usize
    }

    pub fn union_with(&mut self, other: &RootSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &RootSet) {
        debug_assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &RootSet) -> bool {
        debug_assert_eq!(self.nbits, other.nbits);
        self.blocks.iter().zip(&other.blocks).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut b = block;
            std::iter::from_fn(move || {
                if b == 0 {
                    None
                } else {
                    let tz = b.trailing_zeros();
                    b &= b - 1;
                    Some(bi as u32 * 64 + tz)
                }
            })
        })
    }

    pub fn indices(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = RootSet::empty(130);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.count(), 3);
        assert!(s.contains(64) && !s.contains(63));
        assert_eq!(s.indices(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.count(), 2);

        let t = RootSet::from_indices(130, &[0, 129]);
        assert_eq!(s, t);
        assert!(t.is_subset(&RootSet::full(130)));
        assert!(!RootSet::full(130).is_subset(&t));
    }
}
