//! Fixed-width sets of 1-based pattern / rule indices.

use std::fmt;

/// A set of indices drawn from `1..=width`, stored as a bit vector.
///
/// Index `j` lives in bit `j - 1`. All sets that are combined with each other
/// must share the same width.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdSet {
    width: usize,
    words: Vec<u64>,
}

impl IdSet {
    pub fn empty(width: usize) -> Self {
        IdSet {
            width,
            words: vec![0; width.div_ceil(64)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for id in 1..=width {
            s.insert(id);
        }
        s
    }

    pub fn from_ids<I: IntoIterator<Item = usize>>(width: usize, ids: I) -> Self {
        let mut s = Self::empty(width);
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn insert(&mut self, id: usize) {
        assert!(
            id >= 1 && id <= self.width,
            "index {id} outside 1..={}",
            self.width
        );
        let bit = id - 1;
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    pub fn contains(&self, id: usize) -> bool {
        if id == 0 || id > self.width {
            return false;
        }
        let bit = id - 1;
        self.words[bit / 64] & (1 << (bit % 64)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize + 1)
    }

    pub fn union_with(&mut self, other: &IdSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &IdSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn intersection(&self, other: &IdSet) -> IdSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    /// Minimum of `self ∩ other` without materializing the intersection.
    pub fn min_common(&self, other: &IdSet) -> Option<usize> {
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .find_map(|(i, (a, b))| {
                let w = a & b;
                (w != 0).then(|| i * 64 + w.trailing_zeros() as usize + 1)
            })
    }

    /// Minimum of the intersection of three sets.
    pub fn min_common3(&self, b: &IdSet, c: &IdSet) -> Option<usize> {
        (0..self.words.len()).find_map(|i| {
            let w = self.words[i] & b.words[i] & c.words[i];
            (w != 0).then(|| i * 64 + w.trailing_zeros() as usize + 1)
        })
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + tz + 1)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, id) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{id}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_min() {
        let mut s = IdSet::empty(130);
        assert!(s.is_empty());
        assert_eq!(s.first(), None);
        s.insert(130);
        s.insert(65);
        s.insert(3);
        assert_eq!(s.to_vec(), vec![3, 65, 130]);
        assert_eq!(s.first(), Some(3));
        assert!(s.contains(65));
        assert!(!s.contains(64));
        assert!(!s.contains(0));
        assert!(!s.contains(131));
        assert_eq!(s.len(), 3);
        assert_eq!(s.to_string(), "{3,65,130}");
    }

    #[test]
    fn intersections() {
        let a = IdSet::from_ids(70, [1, 2, 66, 70]);
        let b = IdSet::from_ids(70, [2, 66, 69]);
        let c = IdSet::from_ids(70, [66, 70]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2, 66]);
        assert_eq!(a.min_common(&b), Some(2));
        assert_eq!(a.min_common3(&b, &c), Some(66));
        assert_eq!(b.min_common(&IdSet::empty(70)), None);
        assert_eq!(IdSet::full(5).to_vec(), vec![1, 2, 3, 4, 5]);
    }
}
