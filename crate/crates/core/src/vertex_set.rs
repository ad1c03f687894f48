use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::hamming::{HVertex, HammingShape};

/// A subset of `0..universe`, stored as a bitset over vertex indices.
///
/// For Hamming graphs the universe is `V` and indices are the mixed-radix
/// encoding; for general graphs they are 0-based vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn for_shape(shape: &HammingShape) -> Self {
        VertexSet::new(shape.len())
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = VertexSet::new(universe);
        for i in indices {
            set.insert(i)?;
        }
        Ok(set)
    }

    pub fn from_vertices<'a>(shape: &HammingShape, vertices: impl IntoIterator<Item = &'a HVertex>) -> Result<Self> {
        let mut set = VertexSet::for_shape(shape);
        for v in vertices {
            set.bits.insert(shape.encode(v)?.0);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn insert(&mut self, index: usize) -> Result<bool> {
        if index >= self.universe() {
            return Err(Error::IndexOutOfRange {
                index: index as u64,
                len: self.universe() as u64,
            });
        }
        Ok(!self.bits.put(index))
    }

    pub fn remove(&mut self, index: usize) -> bool {
        let was = self.contains(index);
        if was {
            self.bits.set(index, false);
        }
        was
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe() && self.bits.contains(index)
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    /// Members decoded as tuples, in index order.
    pub fn vertices(&self, shape: &HammingShape) -> Result<Vec<HVertex>> {
        self.check_shape(shape)?;
        Ok(self.iter().map(|i| shape.decode_unchecked(i)).collect())
    }

    pub(crate) fn check_shape(&self, shape: &HammingShape) -> Result<()> {
        self.check_universe(shape.len())
    }

    pub(crate) fn check_universe(&self, expected: usize) -> Result<()> {
        if self.universe() != expected {
            return Err(Error::UniverseMismatch {
                expected,
                got: self.universe(),
            });
        }
        Ok(())
    }

    /// The set with coordinates rearranged as in [`HVertex::permuted`], living
    /// on `shape.permuted(perm)`.
    pub fn permuted(&self, shape: &HammingShape, perm: &[usize]) -> Result<VertexSet> {
        let target = shape.permuted(perm)?;
        let vertices: Vec<HVertex> = self.vertices(shape)?.iter().map(|v| v.permuted(perm)).collect();
        VertexSet::from_vertices(&target, &vertices)
    }
}
