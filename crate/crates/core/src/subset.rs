/// Subset of the simple-root index set I, packed as a bitmask.
/// Rank is capped at 8, so u16 is plenty.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u16);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(rank: usize) -> Subset {
        Subset(((1u32 << rank) - 1) as u16)
    }

    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Subset {
        let mut mask = 0u16;
        for &i in indices {
            mask |= 1 << i;
        }
        Subset(mask)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..16).filter(move |&i| self.contains(i))
    }

    /// All subsets of `self`, in binary-counter order over the positions of
    /// `self` (so the empty set comes first and `self` last).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let positions: alloc::vec::Vec<usize> = self.iter().collect();
        (0u32..1 << positions.len()).map(move |k| {
            let mut mask = 0u16;
            for (bit, &pos) in positions.iter().enumerate() {
                if k >> bit & 1 == 1 {
                    mask |= 1 << pos;
                }
            }
            Subset(mask)
        })
    }
}

impl core::fmt::Debug for Subset {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
            first = false;
        }
        write!(f, "}}")
    }
}
