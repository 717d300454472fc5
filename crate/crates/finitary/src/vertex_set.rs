use bitvec::prelude::*;
use std::fmt;

/// A set of vertex ids drawn from `0..universe`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(BitVec);

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet(bitvec![0; universe])
    }

    pub fn full(universe: usize) -> Self {
        VertexSet(bitvec![1; universe])
    }

    /// Ids outside the universe are ignored.
    pub fn from_ids<I: IntoIterator<Item = usize>>(universe: usize, ids: I) -> Self {
        let mut s = Self::empty(universe);
        for v in ids {
            if v < universe {
                s.insert(v);
            }
        }
        s
    }

    pub fn from_fn(universe: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe {
            if f(v) {
                s.0.set(v, true);
            }
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.0.len() && self.0[v]
    }

    pub fn insert(&mut self, v: usize) -> bool {
        let was = self.0[v];
        self.0.set(v, true);
        !was
    }

    pub fn remove(&mut self, v: usize) -> bool {
        let was = self.0[v];
        self.0.set(v, false);
        was
    }

    pub fn len(&self) -> usize {
        self.0.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.0.not_any()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter_ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first_one()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn union_with(&mut self, other: &Self) {
        self.0 |= &other.0;
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut r = self.clone();
        r.0 &= &other.0;
        r
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for v in other.iter() {
            if v < r.0.len() {
                r.0.set(v, false);
            }
        }
        r
    }

    pub fn complement(&self) -> Self {
        VertexSet(!self.0.clone())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.iter().all(|v| other.contains(v))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Comma separated ids, `-` for the empty set.
impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        let mut first = true;
        for v in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let a = VertexSet::from_ids(5, [0, 2, 4]);
        let b = VertexSet::from_ids(5, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 4]);
        assert_eq!(a.complement().to_vec(), vec![1, 3]);
        assert!(VertexSet::from_ids(5, [2]).is_subset(&a));
        assert_eq!(a.to_string(), "0,2,4");
        assert_eq!(VertexSet::empty(3).to_string(), "-");
    }
}
