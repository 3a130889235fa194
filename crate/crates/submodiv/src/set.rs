//! Ground sets and ordered item sets.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fmt;

/// Index of an item within a ground set. Dense in `[0, n)` after ingestion.
#[derive(
    Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct ItemId(pub u32);

impl ItemId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for ItemId {
    fn from(id: u32) -> Self {
        ItemId(id)
    }
}

impl fmt::Display for ItemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The candidate pool items are drawn from, with optional external labels.
#[derive(Clone, Debug)]
pub struct GroundSet {
    size: usize,
    labels: Option<Vec<String>>,
}

impl GroundSet {
    /// A ground set of `size` anonymous items.
    ///
    /// # Panics
    /// Panics if `size` is zero.
    pub fn new(size: usize) -> Self {
        assert!(size >= 1, "ground set must contain at least one item");
        GroundSet { size, labels: None }
    }

    pub fn with_labels(labels: Vec<String>) -> Self {
        assert!(!labels.is_empty(), "ground set must contain at least one item");
        GroundSet {
            size: labels.len(),
            labels: Some(labels),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn label(&self, id: ItemId) -> Option<&str> {
        self.labels.as_ref().and_then(|l| l.get(id.index())).map(String::as_str)
    }

    pub fn ids(&self) -> impl Iterator<Item = ItemId> {
        (0..self.size as u32).map(ItemId)
    }

    /// The full ground set as an `ItemSet` in ascending id order.
    pub fn full_set(&self) -> ItemSet {
        ItemSet::from_unique(self.ids().collect())
    }

    pub fn contains(&self, id: ItemId) -> bool {
        id.index() < self.size
    }
}

/// A duplicate-free collection of items. Insertion order is preserved so a
/// ranking can be read back out of it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ItemSet {
    members: Vec<ItemId>,
}

impl ItemSet {
    pub fn new() -> Self {
        ItemSet::default()
    }

    /// Builds a set from ids, rejecting duplicates.
    pub fn from_ids<I: IntoIterator<Item = ItemId>>(ids: I) -> Result<Self> {
        let members: Vec<ItemId> = ids.into_iter().collect();
        let mut seen = HashSet::with_capacity(members.len());
        for &id in &members {
            if !seen.insert(id) {
                return Err(Error::DuplicateItem(id));
            }
        }
        Ok(ItemSet { members })
    }

    /// Builds a set from ids the caller guarantees to be pairwise distinct.
    pub(crate) fn from_unique(members: Vec<ItemId>) -> Self {
        debug_assert!({
            let mut seen = HashSet::new();
            members.iter().all(|&id| seen.insert(id))
        });
        ItemSet { members }
    }

    /// The subsets of `self` selected by the bits of `mask`
    /// (bit `b` selects `self.members[b]`).
    pub(crate) fn subset_by_mask(&self, mask: u64) -> ItemSet {
        let members = self
            .members
            .iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &id)| id)
            .collect();
        ItemSet::from_unique(members)
    }

    pub fn insert(&mut self, id: ItemId) -> Result<()> {
        if self.contains(id) {
            return Err(Error::DuplicateItem(id));
        }
        self.members.push(id);
        Ok(())
    }

    /// Appends an id the caller guarantees is not yet a member.
    pub(crate) fn push_unchecked(&mut self, id: ItemId) {
        debug_assert!(!self.contains(id));
        self.members.push(id);
    }

    /// A copy of `self` with `id` appended.
    pub(crate) fn cloned_with(&self, id: ItemId) -> ItemSet {
        let mut members = Vec::with_capacity(self.members.len() + 1);
        members.extend_from_slice(&self.members);
        members.push(id);
        ItemSet::from_unique(members)
    }

    /// A copy of `self` with `id` removed (no-op if absent).
    pub fn without(&self, id: ItemId) -> ItemSet {
        ItemSet {
            members: self.members.iter().copied().filter(|&m| m != id).collect(),
        }
    }

    pub fn singleton(id: ItemId) -> ItemSet {
        ItemSet { members: vec![id] }
    }

    pub fn contains(&self, id: ItemId) -> bool {
        self.members.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[ItemId] {
        &self.members
    }
}

impl FromIterator<u32> for ItemSet {
    /// Convenience for literals in tests and examples.
    ///
    /// # Panics
    /// Panics on duplicate ids.
    fn from_iter<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        ItemSet::from_ids(ids.into_iter().map(ItemId)).expect("duplicate item id")
    }
}
