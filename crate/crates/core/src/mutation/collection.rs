use std::collections::BTreeMap;
use std::fmt;

use super::MutationError;
use crate::lattice::{is_primitive, pl_mutate, LatticeError, LatticeMap, LatticeVector, SkewForm};

/// A finite multiset of nonzero lattice vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExchangeCollection {
    rank: usize,
    entries: BTreeMap<LatticeVector, u32>,
}

impl ExchangeCollection {
    pub fn new(rank: usize) -> Self {
        ExchangeCollection { rank, entries: BTreeMap::new() }
    }

    /// Builds a collection from `(vector, multiplicity)` pairs; repeated vectors merge and
    /// zero multiplicities are dropped.
    pub fn from_entries<I>(rank: usize, entries: I) -> Result<Self, MutationError>
    where
        I: IntoIterator<Item = (LatticeVector, u32)>,
    {
        let mut c = Self::new(rank);
        for (v, m) in entries {
            c.insert(v, m)?;
        }
        Ok(c)
    }

    /// Builds a collection from a list with repetitions.
    pub fn from_list(rank: usize, vectors: &[LatticeVector]) -> Result<Self, MutationError> {
        Self::from_entries(rank, vectors.iter().map(|v| (v.clone(), 1)))
    }

    pub fn insert(&mut self, v: LatticeVector, m: u32) -> Result<(), MutationError> {
        if v.rank() != self.rank {
            return Err(MutationError::RankMismatch { left: self.rank, right: v.rank() });
        }
        if m > 0 {
            *self.entries.entry(v).or_insert(0) += m;
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn multiplicity(&self, v: &LatticeVector) -> u32 {
        self.entries.get(v).copied().unwrap_or(0)
    }

    /// Total size counted with multiplicity.
    pub fn total(&self) -> u32 {
        self.entries.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticeVector, u32)> {
        self.entries.iter().map(|(v, &m)| (v, m))
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.entries.contains_key(v)
    }

    pub fn has_zero_vector(&self) -> bool {
        self.entries.keys().any(LatticeVector::is_zero)
    }

    pub fn all_primitive(&self) -> bool {
        self.entries.keys().all(is_primitive)
    }

    pub fn is_subcollection_of(&self, other: &Self) -> bool {
        self.entries.iter().all(|(v, &m)| other.multiplicity(v) >= m)
    }

    /// Sorted list with each vector repeated by its multiplicity.
    pub fn to_list(&self) -> Vec<LatticeVector> {
        self.entries
            .iter()
            .flat_map(|(v, &m)| std::iter::repeat_n(v.clone(), m as usize))
            .collect()
    }

    /// Mutation at `d`: one copy of `d` becomes `-d`, every other element `v` becomes
    /// `v + max(0, ω(d, v)) d`. Coinciding images merge.
    pub fn mutate(&self, d: &LatticeVector, form: &SkewForm) -> Result<Self, MutationError> {
        if !self.contains(d) {
            return Err(MutationError::NotInCollection(d.clone()));
        }
        let mut out = Self::new(self.rank);
        for (v, m) in self.iter() {
            let m = if v == d { m - 1 } else { m };
            out.insert(pl_mutate(form, d, v), m)?;
        }
        out.insert(d.neg(), 1)?;
        Ok(out)
    }

    /// Image under a lattice map.
    pub fn push_forward(&self, f: &LatticeMap) -> Result<Self, LatticeError> {
        let mut out = Self::new(f.target().rank());
        for (v, m) in self.iter() {
            *out.entries.entry(f.push_forward(v)?).or_insert(0) += m;
        }
        Ok(out)
    }
}

impl fmt::Display for ExchangeCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{m}×{v}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Mutation of an ordered list at position `k`, keeping positions: entry `k` is negated,
/// the others are piecewise-linearly mutated.
pub fn collection_mutate_ordered(
    vectors: &[LatticeVector],
    k: usize,
    form: &SkewForm,
) -> Result<Vec<LatticeVector>, MutationError> {
    let d = vectors
        .get(k)
        .ok_or(MutationError::IndexOutOfRange { index: k, len: vectors.len() })?;
    Ok(vectors
        .iter()
        .enumerate()
        .map(|(i, v)| if i == k { d.neg() } else { pl_mutate(form, d, v) })
        .collect())
}
