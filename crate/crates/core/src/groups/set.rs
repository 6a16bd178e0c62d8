use std::collections::HashMap;

use super::{Element, Realization};

/// Insertion-ordered set of elements, hashed by canonical key with exact
/// equality resolving coarse-key collisions.
#[derive(Clone, Debug)]
pub struct ElementSet<'a> {
    r: &'a Realization,
    index: HashMap<Vec<u8>, Vec<usize>>,
    items: Vec<Element>,
}

impl<'a> ElementSet<'a> {
    pub fn new(r: &'a Realization) -> Self {
        ElementSet { r, index: HashMap::new(), items: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.items[i]
    }

    pub fn items(&self) -> &[Element] {
        &self.items
    }

    pub fn find(&self, x: &Element) -> Option<usize> {
        let key = self.r.canonical_key(x);
        self.find_keyed(&key, x)
    }

    fn find_keyed(&self, key: &[u8], x: &Element) -> Option<usize> {
        let slot = self.index.get(key)?;
        if self.r.key_is_exact() {
            return slot.first().copied();
        }
        slot.iter().copied().find(|&i| self.r.eq_unchecked(&self.items[i], x))
    }

    /// Inserts `x`; returns `Err(i)` with the index of an equal member if
    /// one is already present.
    pub fn insert(&mut self, x: Element) -> Result<usize, usize> {
        let key = self.r.canonical_key(&x);
        if let Some(i) = self.find_keyed(&key, &x) {
            return Err(i);
        }
        let i = self.items.len();
        self.items.push(x);
        self.index.entry(key).or_default().push(i);
        Ok(i)
    }
}
