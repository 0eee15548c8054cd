//! Compact index sets backed by u64 blocks.
//!
//! Used for hypothesis subsets (version spaces, partition blocks) and for
//! packed label patterns. Capacity is fixed at construction; all binary
//! operations require equal capacity.

/// A fixed-capacity set of small indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    capacity: usize,
    blocks: Vec<u64>,
}

impl IndexSet {
    pub fn empty(capacity: usize) -> Self {
        let blocks = vec![0u64; capacity.div_ceil(64)];
        IndexSet { capacity, blocks }
    }

    pub fn full(capacity: usize) -> Self {
        let mut set = Self::empty(capacity);
        for i in 0..capacity {
            set.insert(i);
        }
        set
    }

    pub fn from_indices(capacity: usize, indices: &[usize]) -> Self {
        let mut set = Self::empty(capacity);
        for &i in indices {
            set.insert(i);
        }
        set
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, index: usize) {
        debug_assert!(index < self.capacity);
        self.blocks[index / 64] |= 1 << (index % 64);
    }

    pub fn remove(&mut self, index: usize) {
        debug_assert!(index < self.capacity);
        self.blocks[index / 64] &= !(1 << (index % 64));
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.capacity && self.blocks[index / 64] & (1 << (index % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        assert_eq!(self.capacity, other.capacity, "capacity mismatch");
        IndexSet {
            capacity: self.capacity,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        assert_eq!(self.capacity, other.capacity, "capacity mismatch");
        IndexSet {
            capacity: self.capacity,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        assert_eq!(self.capacity, other.capacity, "capacity mismatch");
        IndexSet {
            capacity: self.capacity,
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a & !b)
                .collect(),
        }
    }

    pub fn is_subset_of(&self, other: &IndexSet) -> bool {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &IndexSet) -> bool {
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & b == 0)
    }

    /// Iterates members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &block)| {
            let mut bits = block;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let tz = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(bi * 64 + tz)
                }
            })
        })
    }

    /// Members as a sorted vector; the canonical serialized form.
    pub fn to_indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// The single member of a singleton set.
    pub fn sole_member(&self) -> Option<usize> {
        let mut it = self.iter();
        match (it.next(), it.next()) {
            (Some(i), None) => Some(i),
            _ => None,
        }
    }
}

impl std::fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A packed vector of bits, used for hypothesis rows and label patterns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    blocks: Vec<u64>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        BitRow {
            len,
            blocks: vec![0u64; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut row = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            row.set(i, b);
        }
        row
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> bool {
        debug_assert!(index < self.len);
        self.blocks[index / 64] & (1 << (index % 64)) != 0
    }

    pub fn set(&mut self, index: usize, value: bool) {
        debug_assert!(index < self.len);
        if value {
            self.blocks[index / 64] |= 1 << (index % 64);
        } else {
            self.blocks[index / 64] &= !(1 << (index % 64));
        }
    }

    pub fn flip(&mut self, index: usize) {
        debug_assert!(index < self.len);
        self.blocks[index / 64] ^= 1 << (index % 64);
    }

    pub fn hamming(&self, other: &BitRow) -> usize {
        debug_assert_eq!(self.len, other.len);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Packs the bits at `columns` (read in the given order) into a key
    /// suitable for hashing pattern projections.
    pub fn project(&self, columns: &[usize]) -> BitRow {
        let mut out = BitRow::zeros(columns.len());
        for (i, &c) in columns.iter().enumerate() {
            if self.get(c) {
                out.set(i, true);
            }
        }
        out
    }
}

impl std::fmt::Debug for BitRow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}
