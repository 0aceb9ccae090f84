//! Dense index sets over the elements of a parent group.

use std::fmt;
use std::hash::{Hash, Hasher};

/// A set of element indices of a parent group of order `universe`.
///
/// Used for subgroups, isolated sets and graph vertex sets. The cached
/// `is_subgroup` / `is_normal` flags are set by the constructors that know
/// them; `None` means "not established".
#[derive(Clone)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
    len: usize,
    pub(crate) gens: Vec<u32>,
    pub is_subgroup: Option<bool>,
    pub is_normal: Option<bool>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe,
            words: vec![0; universe.div_ceil(64)],
            len: 0,
            gens: Vec::new(),
            is_subgroup: None,
            is_normal: None,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for x in 0..universe {
            s.insert(x);
        }
        s.is_subgroup = Some(true);
        s.is_normal = Some(true);
        s
    }

    pub fn from_indices(universe: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(universe);
        for x in it {
            s.insert(x);
        }
        s
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

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.universe && (self.words[x >> 6] >> (x & 63)) & 1 == 1
    }

    /// Returns true when `x` was not already present.
    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let w = &mut self.words[x >> 6];
        let bit = 1u64 << (x & 63);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            self.invalidate();
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, x: usize) -> bool {
        let w = &mut self.words[x >> 6];
        let bit = 1u64 << (x & 63);
        if *w & bit != 0 {
            *w &= !bit;
            self.len -= 1;
            self.invalidate();
            true
        } else {
            false
        }
    }

    fn invalidate(&mut self) {
        self.is_subgroup = None;
        self.is_normal = None;
        self.gens.clear();
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + t)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.len <= other.len
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a & b)
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a | b)
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        self.combine(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> ElementSet {
        let mut out = ElementSet::full(self.universe);
        out = out.difference(self);
        out
    }

    fn combine(&self, other: &ElementSet, f: impl Fn(u64, u64) -> u64) -> ElementSet {
        assert_eq!(self.universe, other.universe, "element sets over different groups");
        let words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(&a, &b)| f(a, b))
            .collect();
        let mut out = ElementSet {
            universe: self.universe,
            len: 0,
            words,
            gens: Vec::new(),
            is_subgroup: None,
            is_normal: None,
        };
        // bits past the universe are never set by insert, but complement-style
        // closures could set them; mask the tail.
        let tail = self.universe % 64;
        if tail != 0 {
            if let Some(last) = out.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        out.len = out.words.iter().map(|w| w.count_ones() as usize).sum();
        out
    }

    /// Generators recorded by the constructor, if any.
    pub fn generators(&self) -> Vec<usize> {
        self.gens.iter().map(|&g| g as usize).collect()
    }

    pub fn set_generators(&mut self, gens: &[usize]) {
        self.gens = gens.iter().map(|&g| g as u32).collect();
    }

    /// 64-bit FNV-1a over the member words; equal sets hash equally.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for &w in &self.words {
            h ^= w;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
            h ^= h >> 29;
        }
        h ^ self.len as u64
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.len == other.len && self.words == other.words
    }
}

impl Eq for ElementSet {}

impl Hash for ElementSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        state.write_u64(self.fingerprint());
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by size, then lexicographically by sorted members.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet(|{}| of {}: ", self.len, self.universe)?;
        let v: Vec<usize> = self.iter().take(16).collect();
        write!(f, "{:?}", v)?;
        if self.len > 16 {
            write!(f, "…")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_ops() {
        let a = ElementSet::from_indices(130, [0, 5, 64, 129]);
        let b = ElementSet::from_indices(130, [5, 64, 100]);
        assert_eq!(a.len(), 4);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 64]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 129]);
        assert!(a.intersection(&b).is_subset(&a));
        assert_eq!(a.complement().len(), 126);
        assert!(!a.complement().contains(129));
    }

    #[test]
    fn canonical_order_is_size_first() {
        let a = ElementSet::from_indices(10, [0, 9]);
        let b = ElementSet::from_indices(10, [0, 1, 2]);
        assert!(a < b);
        let c = ElementSet::from_indices(10, [0, 3]);
        assert!(c < a);
    }
}
