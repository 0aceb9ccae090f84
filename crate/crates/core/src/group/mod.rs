//! Explicit finite groups.
//!
//! A [`FiniteGroup`] is an immutable, cheaply clonable handle. Element `0`
//! is always the identity. Small groups store a full Cayley table; product,
//! subgroup and quotient groups above [`TABLE_LIMIT`] keep a lazy backend
//! that multiplies through their constituents, with the same `mul` contract.

mod classes;
mod homomorphism;
mod perm;
mod product;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use sha2::{Digest, Sha256};

use crate::elemset::ElementSet;
use crate::error::{cap_exceeded, GroupError, Result};

pub use classes::{centralizer, conjugacy_classes, ConjugacyClasses};
pub use homomorphism::{quotient, Homomorphism};
pub use perm::{format_cycles, parse_cycles, Permutation};
pub use product::{automorphism_from_images, Action};

/// Groups up to this order get a materialized Cayley table.
pub const TABLE_LIMIT: usize = 2048;

/// Default global order cap.
pub const DEFAULT_ORDER_CAP: usize = 120_000;

/// Order cap, honouring the `NONF_CAP` environment override.
pub fn order_cap() -> usize {
    std::env::var("NONF_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORDER_CAP)
}

/// Construction record: a description plus named subgroups and elements.
#[derive(Clone, Debug, Default)]
pub struct Provenance {
    pub description: String,
    pub subgroups: BTreeMap<String, ElementSet>,
    pub elements: BTreeMap<String, usize>,
}

impl Provenance {
    pub fn new(description: impl Into<String>) -> Self {
        Provenance {
            description: description.into(),
            ..Default::default()
        }
    }
}

enum Backend {
    Table(Vec<u32>),
    /// Pairs `(n, h)` indexed `n * |H| + h`; `action` is `|H| x |N|`, `None`
    /// for a direct product.
    Product {
        normal: FiniteGroup,
        top: FiniteGroup,
        action: Option<Vec<u32>>,
    },
    Perm {
        degree: usize,
        perms: Vec<u32>,
        lookup: HashMap<Vec<u32>, u32>,
    },
    Sub {
        parent: FiniteGroup,
        elems: Vec<u32>,
        pos: Vec<u32>,
    },
    Quotient {
        parent: FiniteGroup,
        reps: Vec<u32>,
        coset: Vec<u32>,
    },
}

struct GroupData {
    order: usize,
    backend: Backend,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    gens: Vec<u32>,
    labels: Option<Vec<String>>,
    provenance: Provenance,
}

#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup(order {}, {})",
            self.order(),
            self.inner.provenance.description
        )
    }
}

impl FiniteGroup {
    fn finish(
        order: usize,
        backend: Backend,
        gens: Vec<u32>,
        provenance: Provenance,
    ) -> Result<FiniteGroup> {
        let mut data = GroupData {
            order,
            backend,
            inv: Vec::new(),
            elem_order: Vec::new(),
            gens,
            labels: None,
            provenance,
        };
        let mut inv = vec![u32::MAX; order];
        let mut ord = vec![0u32; order];
        for x in 0..order {
            if ord[x] != 0 {
                continue;
            }
            let mut k = 1usize;
            let mut y = x;
            let mut prev = 0usize;
            while y != 0 {
                prev = y;
                y = data.mul(y, x);
                k += 1;
                if k > order + 1 {
                    return Err(GroupError::InvariantViolated(format!(
                        "element {x} has no finite order"
                    )));
                }
            }
            ord[x] = k as u32;
            inv[x] = if x == 0 { 0 } else { prev as u32 };
            if k > 1 && x != 0 {
                // x^(k-1) is the inverse; record it for the inverse too
                let xi = prev;
                if ord[xi] == 0 {
                    ord[xi] = k as u32;
                    inv[xi] = x as u32;
                }
            }
        }
        data.inv = inv;
        data.elem_order = ord;
        Ok(FiniteGroup {
            inner: Arc::new(data),
        })
    }

    /// Builds a tabled group from a multiplication rule on `0..n`.
    pub fn from_mul_fn(
        n: usize,
        gens: &[usize],
        description: impl Into<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<FiniteGroup> {
        if n == 0 {
            return Err(GroupError::InvalidParameters("empty group".into()));
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let c = mul(a, b);
                if c >= n {
                    return Err(GroupError::InvariantViolated(format!(
                        "product {a}*{b} = {c} out of range"
                    )));
                }
                table[a * n + b] = c as u32;
            }
        }
        Self::from_table_raw(n, table, gens, Provenance::new(description))
    }

    /// Builds a group from a row-major Cayley table and validates it.
    pub fn from_table(n: usize, table: Vec<u32>, description: impl Into<String>) -> Result<FiniteGroup> {
        if table.len() != n * n {
            return Err(GroupError::Parse(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if table.iter().any(|&c| c as usize >= n) {
            return Err(GroupError::InvariantViolated("table entry out of range".into()));
        }
        let g = Self::from_table_raw(n, table, &[], Provenance::new(description))?;
        g.check_invariants()?;
        Ok(g)
    }

    fn from_table_raw(
        n: usize,
        table: Vec<u32>,
        gens: &[usize],
        provenance: Provenance,
    ) -> Result<FiniteGroup> {
        for x in 0..n {
            if table[x] as usize != x || table[x * n] as usize != x {
                return Err(GroupError::InvariantViolated(
                    "index 0 is not the identity".into(),
                ));
            }
        }
        let g = Self::finish(
            n,
            Backend::Table(table),
            gens.iter().map(|&x| x as u32).collect(),
            provenance,
        )?;
        Ok(g.with_default_generators())
    }

    fn with_default_generators(self) -> FiniteGroup {
        if !self.inner.gens.is_empty() || self.order() == 1 {
            return self;
        }
        let gens = crate::subgroup::greedy_generators(&self, &ElementSet::full(self.order()));
        self.replace(|d| d.gens = gens.iter().map(|&g| g as u32).collect())
    }

    fn replace(self, f: impl FnOnce(&mut GroupData)) -> FiniteGroup {
        match Arc::try_unwrap(self.inner) {
            Ok(mut data) => {
                f(&mut data);
                FiniteGroup {
                    inner: Arc::new(data),
                }
            }
            Err(shared) => {
                // rebuild a private copy; only reached for shared handles
                let d = &*shared;
                let backend = match &d.backend {
                    Backend::Table(t) => Backend::Table(t.clone()),
                    Backend::Product {
                        normal,
                        top,
                        action,
                    } => Backend::Product {
                        normal: normal.clone(),
                        top: top.clone(),
                        action: action.clone(),
                    },
                    Backend::Perm {
                        degree,
                        perms,
                        lookup,
                    } => Backend::Perm {
                        degree: *degree,
                        perms: perms.clone(),
                        lookup: lookup.clone(),
                    },
                    Backend::Sub { parent, elems, pos } => Backend::Sub {
                        parent: parent.clone(),
                        elems: elems.clone(),
                        pos: pos.clone(),
                    },
                    Backend::Quotient {
                        parent,
                        reps,
                        coset,
                    } => Backend::Quotient {
                        parent: parent.clone(),
                        reps: reps.clone(),
                        coset: coset.clone(),
                    },
                };
                let mut data = GroupData {
                    order: d.order,
                    backend,
                    inv: d.inv.clone(),
                    elem_order: d.elem_order.clone(),
                    gens: d.gens.clone(),
                    labels: d.labels.clone(),
                    provenance: d.provenance.clone(),
                };
                f(&mut data);
                FiniteGroup {
                    inner: Arc::new(data),
                }
            }
        }
    }

    pub fn with_provenance(self, provenance: Provenance) -> FiniteGroup {
        self.replace(|d| d.provenance = provenance)
    }

    pub fn with_labels(self, labels: Vec<String>) -> Result<FiniteGroup> {
        if labels.len() != self.order() {
            return Err(GroupError::InvalidParameters(format!(
                "{} labels for a group of order {}",
                labels.len(),
                self.order()
            )));
        }
        Ok(self.replace(|d| d.labels = Some(labels)))
    }

    pub fn with_generators(self, gens: &[usize]) -> FiniteGroup {
        self.replace(|d| d.gens = gens.iter().map(|&g| g as u32).collect())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.inner.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inner.inv[a] as usize
    }

    #[inline]
    pub fn elem_order(&self, a: usize) -> usize {
        self.inner.elem_order[a] as usize
    }

    /// `g a g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let o = self.elem_order(a) as i64;
        let mut k = k.rem_euclid(o) as usize;
        if k + 1 == o as usize {
            return self.inv(a);
        }
        let (mut r, mut base) = (0, a);
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        r
    }

    pub fn generators(&self) -> Vec<usize> {
        self.inner.gens.iter().map(|&g| g as usize).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.inner.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.inner.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.inner.provenance
    }

    pub fn whole(&self) -> ElementSet {
        let mut s = ElementSet::full(self.order());
        s.set_generators(&self.generators());
        s
    }

    pub fn trivial_subgroup(&self) -> ElementSet {
        let mut s = ElementSet::from_indices(self.order(), [0]);
        s.is_subgroup = Some(true);
        s.is_normal = Some(true);
        s
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// True when the Cayley table is materialized.
    pub fn is_tabled(&self) -> bool {
        matches!(self.inner.backend, Backend::Table(_))
    }

    /// Multiset of element orders as a sorted `(order, count)` list.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for x in 0..self.order() {
            *m.entry(self.elem_order(x)).or_default() += 1;
        }
        m.into_iter().collect()
    }

    /// For a group built by [`FiniteGroup::subgroup`], the parent index of
    /// each element; identity map otherwise.
    pub fn embedding(&self) -> Vec<usize> {
        match &self.inner.backend {
            Backend::Sub { elems, .. } => elems.iter().map(|&e| e as usize).collect(),
            _ => (0..self.order()).collect(),
        }
    }

    /// For product groups, the two factors `(N, H)`.
    pub fn product_factors(&self) -> Option<(FiniteGroup, FiniteGroup)> {
        match &self.inner.backend {
            Backend::Product { normal, top, .. } => Some((normal.clone(), top.clone())),
            _ => None,
        }
    }

    /// Materializes the subgroup `set` as a standalone group. Elements keep
    /// the ascending order of their parent indices.
    pub fn subgroup(&self, set: &ElementSet) -> FiniteGroup {
        debug_assert!(set.contains(0));
        let elems: Vec<u32> = set.iter().map(|x| x as u32).collect();
        let mut pos = vec![u32::MAX; self.order()];
        for (i, &e) in elems.iter().enumerate() {
            pos[e as usize] = i as u32;
        }
        let gens: Vec<u32> = set
            .generators()
            .iter()
            .map(|&g| pos[g] )
            .filter(|&g| g != u32::MAX)
            .collect();
        let n = elems.len();
        let inv = elems
            .iter()
            .map(|&e| pos[self.inv(e as usize)])
            .collect::<Vec<_>>();
        let elem_order = elems
            .iter()
            .map(|&e| self.elem_order(e as usize) as u32)
            .collect::<Vec<_>>();
        let g = FiniteGroup {
            inner: Arc::new(GroupData {
                order: n,
                backend: Backend::Sub {
                    parent: self.clone(),
                    elems,
                    pos,
                },
                inv,
                elem_order,
                gens,
                labels: None,
                provenance: Provenance::new(format!(
                    "subgroup of order {} in {}",
                    n,
                    self.inner.provenance.description
                )),
            }),
        };
        g.with_default_generators()
    }

    /// Copies a lazily multiplied group into a full table.
    pub fn materialize(&self) -> Result<FiniteGroup> {
        if self.is_tabled() {
            return Ok(self.clone());
        }
        let n = self.order();
        if n > 4 * TABLE_LIMIT {
            return Err(cap_exceeded("materializing a Cayley table", 4 * TABLE_LIMIT));
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = self.mul(a, b) as u32;
            }
        }
        let g = Self::from_table_raw(n, table, &self.generators(), self.provenance().clone())?;
        match self.labels() {
            Some(l) => g.with_labels(l.to_vec()),
            None => Ok(g),
        }
    }

    /// Stable hash of the group as presented: order, generators and the
    /// right action of each generator on all elements.
    pub fn structure_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.order() as u64).to_le_bytes());
        let gens = self.generators();
        for &s in &gens {
            h.update((s as u64).to_le_bytes());
            for e in 0..self.order() {
                h.update((self.mul(e, s) as u32).to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }

    /// Checks identity, Latin-square, inverse, order and associativity
    /// invariants. Exhaustive up to order 2000 (associativity through
    /// Light's test over the generators); above that, 10^6 random triples.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.order();
        let bad = |m: String| Err(GroupError::InvariantViolated(m));
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return bad(format!("identity law fails at {x}"));
            }
            if self.mul(x, self.inv(x)) != 0 {
                return bad(format!("inverse of {x} is wrong"));
            }
            let o = self.elem_order(x);
            let mut y = 0;
            for k in 1..=o {
                y = self.mul(y, x);
                if y == 0 && k < o {
                    return bad(format!("order of {x} recorded as {o}, actual {k}"));
                }
            }
            if y != 0 {
                return bad(format!("order of {x} recorded as {o} but x^{o} != 1"));
            }
        }
        if n <= 2000 {
            let mut seen = vec![0u32; n];
            let mut stamp = 0u32;
            for a in 0..n {
                stamp += 1;
                for b in 0..n {
                    let c = self.mul(a, b);
                    if seen[c] == stamp {
                        return bad(format!("row {a} is not a permutation"));
                    }
                    seen[c] = stamp;
                }
            }
            for b in 0..n {
                stamp += 1;
                for a in 0..n {
                    let c = self.mul(a, b);
                    if seen[c] == stamp {
                        return bad(format!("column {b} is not a permutation"));
                    }
                    seen[c] = stamp;
                }
            }
            // Light's associativity test: (x s) y == x (s y) for all x, y and
            // every generator s.
            let gens = if self.generators().is_empty() {
                (0..n).collect()
            } else {
                self.generators()
            };
            let closure = crate::subgroup::closure(self, &gens);
            if closure.len() != n {
                return bad("recorded generators do not generate the group".into());
            }
            for &s in &gens {
                for x in 0..n {
                    let xs = self.mul(x, s);
                    for y in 0..n {
                        if self.mul(xs, y) != self.mul(x, self.mul(s, y)) {
                            return bad(format!("associativity fails at ({x}, {s}, {y})"));
                        }
                    }
                }
            }
        } else {
            let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0f6a0e);
            for _ in 0..1_000_000 {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                    return bad(format!("associativity fails at ({a}, {b}, {c})"));
                }
                // b ↦ a b must be injective: spot-check via left division
                let ab = self.mul(a, b);
                if self.mul(self.inv(a), ab) != b {
                    return bad(format!("left cancellation fails at ({a}, {b})"));
                }
            }
        }
        Ok(())
    }

    /// Cyclic group of order `n` with element `k` the `k`-th power of the
    /// generator.
    pub fn cyclic(n: usize) -> Result<FiniteGroup> {
        let gens: Vec<usize> = if n > 1 { vec![1] } else { vec![] };
        Self::from_mul_fn(n, &gens, format!("cyclic({n})"), |a, b| (a + b) % n)
    }

    pub(crate) fn from_perm_data(
        degree: usize,
        perms: Vec<u32>,
        lookup: HashMap<Vec<u32>, u32>,
        gens: Vec<u32>,
        provenance: Provenance,
    ) -> Result<FiniteGroup> {
        let n = perms.len() / degree.max(1);
        let perm_backed = Self::finish(
            n,
            Backend::Perm {
                degree,
                perms,
                lookup,
            },
            gens,
            provenance,
        )?;
        if n <= TABLE_LIMIT {
            perm_backed.materialize()
        } else {
            Ok(perm_backed)
        }
    }

    pub(crate) fn from_product(
        normal: FiniteGroup,
        top: FiniteGroup,
        action: Option<Vec<u32>>,
        provenance: Provenance,
    ) -> Result<FiniteGroup> {
        let n = normal.order() * top.order();
        let cap = order_cap();
        if n > cap {
            return Err(cap_exceeded(format!("product of order {n}"), cap));
        }
        let hn = top.order();
        let mut gens: Vec<u32> = normal
            .generators()
            .iter()
            .map(|&a| (a * hn) as u32)
            .collect();
        gens.extend(top.generators().iter().map(|&h| h as u32));
        let g = Self::finish(
            n,
            Backend::Product {
                normal,
                top,
                action,
            },
            gens,
            provenance,
        )?;
        if n <= TABLE_LIMIT {
            g.materialize()
        } else {
            Ok(g)
        }
    }

    pub(crate) fn from_quotient(
        parent: &FiniteGroup,
        reps: Vec<u32>,
        coset: Vec<u32>,
        gens: Vec<u32>,
        provenance: Provenance,
    ) -> Result<FiniteGroup> {
        let n = reps.len();
        let g = Self::finish(
            n,
            Backend::Quotient {
                parent: parent.clone(),
                reps,
                coset,
            },
            gens,
            provenance,
        )?;
        if n <= TABLE_LIMIT {
            g.materialize()
        } else {
            Ok(g)
        }
    }

    /// The permutation of `0..degree` for element `a` of a permutation-built
    /// group, if the group still carries its permutation data.
    pub fn as_permutation(&self, a: usize) -> Option<Vec<u32>> {
        match &self.inner.backend {
            Backend::Perm { degree, perms, .. } => {
                Some(perms[a * degree..(a + 1) * degree].to_vec())
            }
            _ => None,
        }
    }
}

impl GroupData {
    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match &self.backend {
            Backend::Table(t) => t[a * self.order + b] as usize,
            Backend::Product {
                normal,
                top,
                action,
            } => {
                let hn = top.order();
                let (na, ha) = (a / hn, a % hn);
                let (nb, hb) = (b / hn, b % hn);
                let nb = match action {
                    Some(act) => act[ha * normal.order() + nb] as usize,
                    None => nb,
                };
                normal.mul(na, nb) * hn + top.mul(ha, hb)
            }
            Backend::Perm {
                degree,
                perms,
                lookup,
            } => {
                let d = *degree;
                let pa = &perms[a * d..(a + 1) * d];
                let pb = &perms[b * d..(b + 1) * d];
                let c: Vec<u32> = pa.iter().map(|&i| pb[i as usize]).collect();
                lookup[&c] as usize
            }
            Backend::Sub { parent, elems, pos } => {
                pos[parent.mul(elems[a] as usize, elems[b] as usize)] as usize
            }
            Backend::Quotient {
                parent,
                reps,
                coset,
            } => coset[parent.mul(reps[a] as usize, reps[b] as usize)] as usize,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_basics() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(c6.order(), 6);
        assert_eq!(c6.elem_order(1), 6);
        assert_eq!(c6.elem_order(2), 3);
        assert_eq!(c6.elem_order(3), 2);
        assert_eq!(c6.inv(2), 4);
        c6.check_invariants().unwrap();
    }

    #[test]
    fn bad_table_rejected() {
        // not a Latin square
        let t = vec![0, 1, 1, 1];
        assert!(FiniteGroup::from_table(2, t, "bad").is_err());
        // not associative: a loop of order 5 that is not a group
        let t: Vec<u32> = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        assert!(FiniteGroup::from_table(5, t, "loop").is_err());
    }

    #[test]
    fn trivial_group() {
        let c1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.elem_order(0), 1);
        c1.check_invariants().unwrap();
    }
}
