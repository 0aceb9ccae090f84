//! Graphs on the elements of a group whose adjacency is invariant under
//! simultaneous conjugation, built either by testing every pair or by
//! testing one pair per conjugation orbit.

use crate::elemset::ElementSet;
use crate::error::Result;
use crate::group::{centralizer, conjugacy_classes, FiniteGroup};
use crate::subgroup::greedy_generators;

/// Adjacency predicate on distinct elements.
pub(crate) type Pred<'a> = dyn FnMut(usize, usize) -> Result<bool> + 'a;

pub(crate) const NO_LABEL: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub(crate) struct PairGraph {
    pub isolated: ElementSet,
    /// Component id per element, `NO_LABEL` on isolated vertices. Ids are
    /// numbered by least member.
    pub labels: Vec<u32>,
    pub count: usize,
    /// Every edge in explicit mode; adjacent representative pairs in orbit
    /// mode.
    pub edges: Vec<(u32, u32)>,
    pub pairs_tested: u64,
}

/// Disjoint sets with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }

    /// Returns false when already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Union-find kept invariant under conjugation by `gens`: joining `a, b`
/// also joins `a^s, b^s` for every generator, transitively.
struct InvariantUnionFind<'a> {
    g: &'a FiniteGroup,
    gens: Vec<usize>,
    uf: UnionFind,
    queue: Vec<(usize, usize)>,
}

impl InvariantUnionFind<'_> {
    fn join(&mut self, a: usize, b: usize) {
        if !self.uf.union(a, b) {
            return;
        }
        self.queue.push((a, b));
        while let Some((x, y)) = self.queue.pop() {
            for &s in &self.gens {
                let (xs, ys) = (self.g.conj(s, x), self.g.conj(s, y));
                if self.uf.union(xs, ys) {
                    self.queue.push((xs, ys));
                }
            }
        }
    }
}

fn finish(n: usize, isolated: ElementSet, uf: &mut UnionFind, edges: Vec<(u32, u32)>, tested: u64) -> PairGraph {
    let mut labels = vec![NO_LABEL; n];
    let mut root_label = vec![NO_LABEL; n];
    let mut count = 0u32;
    for x in 0..n {
        if isolated.contains(x) {
            continue;
        }
        let r = uf.find(x);
        if root_label[r] == NO_LABEL {
            root_label[r] = count;
            count += 1;
        }
        labels[x] = root_label[r];
    }
    PairGraph {
        isolated,
        labels,
        count: count as usize,
        edges,
        pairs_tested: tested,
    }
}

/// Tests all unordered pairs.
pub(crate) fn explicit(g: &FiniteGroup, pred: &mut Pred<'_>) -> Result<PairGraph> {
    let n = g.order();
    let mut uf = UnionFind::new(n);
    let mut has_edge = vec![false; n];
    let mut edges = Vec::new();
    let mut tested = 0;
    for x in 0..n {
        for y in x + 1..n {
            tested += 1;
            if pred(x, y)? {
                edges.push((x as u32, y as u32));
                has_edge[x] = true;
                has_edge[y] = true;
                uf.union(x, y);
            }
        }
    }
    let isolated = ElementSet::from_indices(n, (0..n).filter(|&x| !has_edge[x]));
    Ok(finish(n, isolated, &mut uf, edges, tested))
}

/// Representatives `x` of the conjugacy classes and, for each, the
/// representatives of the orbits of `C(x)` on all elements. Every ordered
/// pair is conjugate to some `(x, y)` from this list.
pub(crate) struct PairOrbits {
    pub class_reps: Vec<usize>,
    pub class_of: Vec<u32>,
    pub partners: Vec<Vec<u32>>,
}

impl PairOrbits {
    pub fn new(g: &FiniteGroup) -> PairOrbits {
        let n = g.order();
        let cc = conjugacy_classes(g);
        let mut partners = Vec::with_capacity(cc.len());
        let mut stamp = vec![u32::MAX; n];
        let mut stack = Vec::new();
        for (ci, &x) in cc.reps.iter().enumerate() {
            let cgens = if cc.sizes[ci] == 1 {
                g.generators()
            } else {
                greedy_generators(g, &centralizer(g, &[x]))
            };
            let mut reps = Vec::new();
            for y in 0..n {
                if stamp[y] == ci as u32 {
                    continue;
                }
                stamp[y] = ci as u32;
                reps.push(y as u32);
                stack.push(y);
                while let Some(z) = stack.pop() {
                    for &s in &cgens {
                        let w = g.conj(s, z);
                        if stamp[w] != ci as u32 {
                            stamp[w] = ci as u32;
                            stack.push(w);
                        }
                    }
                }
            }
            partners.push(reps);
        }
        PairOrbits {
            class_of: (0..n).map(|x| cc.class_of(x) as u32).collect(),
            class_reps: cc.reps,
            partners,
        }
    }

    #[cfg(test)]
    pub fn pair_count(&self) -> usize {
        self.partners.iter().map(Vec::len).sum()
    }
}

/// Isolation per class with early exit: the class of `x` is isolated iff no
/// representative partner is adjacent to `x`. Returns the isolated set and
/// the first edge found for each non-isolated class.
pub(crate) fn isolation(
    g: &FiniteGroup,
    orbits: &PairOrbits,
    pred: &mut Pred<'_>,
    tested: &mut u64,
) -> Result<(ElementSet, Vec<Option<u32>>)> {
    let n = g.order();
    let mut first_edge = vec![None; orbits.class_reps.len()];
    for (ci, &x) in orbits.class_reps.iter().enumerate() {
        for &y in &orbits.partners[ci] {
            let y = y as usize;
            if y == x {
                continue;
            }
            *tested += 1;
            if pred(x, y)? {
                first_edge[ci] = Some(y as u32);
                break;
            }
        }
    }
    let isolated = ElementSet::from_indices(
        n,
        (0..n).filter(|&z| first_edge[orbits.class_of[z] as usize].is_none()),
    );
    Ok((isolated, first_edge))
}

/// Orbit-reduced construction: isolation first, then components from the
/// representative pairs whose ends are not yet known to be connected.
pub(crate) fn orbit_reduced(g: &FiniteGroup, pred: &mut Pred<'_>) -> Result<PairGraph> {
    let n = g.order();
    let orbits = PairOrbits::new(g);
    let mut tested = 0;
    let (isolated, first_edge) = isolation(g, &orbits, pred, &mut tested)?;
    let mut iuf = InvariantUnionFind {
        g,
        gens: g.generators(),
        uf: UnionFind::new(n),
        queue: Vec::new(),
    };
    let mut edges = Vec::new();
    for (ci, &x) in orbits.class_reps.iter().enumerate() {
        if let Some(y) = first_edge[ci] {
            edges.push((x as u32, y));
            iuf.join(x, y as usize);
        }
    }
    for (ci, &x) in orbits.class_reps.iter().enumerate() {
        if first_edge[ci].is_none() {
            continue;
        }
        for &y in &orbits.partners[ci] {
            let y = y as usize;
            if y == x || isolated.contains(y) || iuf.uf.find(x) == iuf.uf.find(y) {
                continue;
            }
            tested += 1;
            if pred(x, y)? {
                edges.push((x as u32, y as u32));
                iuf.join(x, y);
            }
        }
    }
    Ok(finish(n, isolated, &mut iuf.uf, edges, tested))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.find(0), uf.find(1));
        assert_ne!(uf.find(1), uf.find(3));
    }

    #[test]
    fn pair_orbit_count_matches_burnside() {
        // number of orbits on G x G equals the sum of centralizer orders
        // over class representatives
        let g = corpus::symmetric(4).unwrap();
        let orbits = PairOrbits::new(&g);
        let cc = conjugacy_classes(&g);
        let burnside: usize = cc.reps.iter().map(|&x| centralizer(&g, &[x]).len()).sum();
        assert_eq!(orbits.pair_count(), burnside);
    }

    #[test]
    fn commuting_graph_both_ways() {
        // non-commuting graph of S4 as a generic invariant predicate
        let g = corpus::symmetric(4).unwrap();
        let gg = g.clone();
        let mut p1 = |x: usize, y: usize| Ok(gg.mul(x, y) != gg.mul(y, x));
        let a = explicit(&g, &mut p1).unwrap();
        let mut p2 = |x: usize, y: usize| Ok(gg.mul(x, y) != gg.mul(y, x));
        let b = orbit_reduced(&g, &mut p2).unwrap();
        assert_eq!(a.isolated, b.isolated);
        assert_eq!(a.labels, b.labels);
        assert_eq!(a.isolated.len(), 1);
        assert_eq!(a.count, 1);
    }
}
