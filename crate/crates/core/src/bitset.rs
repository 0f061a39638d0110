//! Fixed-universe bitset over element ids.
//!
//! Sym-set scans intersect a set with its translates for every group element;
//! a word-packed bitmap keeps that inner loop at O(|G|/64) per translate.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElemSet {
    universe: usize,
    blocks: Vec<u64>,
    len: usize,
}

impl ElemSet {
    pub fn new(universe: usize) -> Self {
        ElemSet {
            universe,
            blocks: vec![0; universe.div_ceil(64)],
            len: 0,
        }
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(universe: usize, elems: I) -> Self {
        let mut set = ElemSet::new(universe);
        for e in elems {
            set.insert(e);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, e: usize) -> bool {
        debug_assert!(e < self.universe);
        let (w, b) = (e / 64, 1u64 << (e % 64));
        if self.blocks[w] & b == 0 {
            self.blocks[w] |= b;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, e: usize) -> bool {
        debug_assert!(e < self.universe);
        self.blocks[e / 64] & (1 << (e % 64)) != 0
    }

    pub fn clear(&mut self) {
        self.blocks.fill(0);
        self.len = 0;
    }

    pub fn intersection_count(&self, other: &ElemSet) -> usize {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(|&e| self.contains(e))
    }
}
