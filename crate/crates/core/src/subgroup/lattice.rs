use std::collections::HashMap;

use super::{conjugate_set, extend};
use crate::elemset::ElementSet;
use crate::error::{cap_exceeded, Result};
use crate::group::FiniteGroup;

/// Groups above this order get no full subgroup lattice.
pub const LATTICE_CAP: usize = 2000;
/// Cap on the number of subgroups held while building a lattice.
pub const SUBGROUP_COUNT_CAP: usize = 250_000;

#[derive(Clone, Debug)]
pub struct SubgroupList {
    pub subgroups: Vec<ElementSet>,
    /// Size of the conjugacy class of each entry.
    pub class_sizes: Vec<usize>,
    pub up_to_conjugacy: bool,
    /// How completeness was established.
    pub certificate: String,
}

impl SubgroupList {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }
}

struct Lattice {
    /// subgroup -> conjugacy class id
    index: HashMap<ElementSet, usize>,
    classes: Vec<Vec<ElementSet>>,
}

impl Lattice {
    fn register(&mut self, g: &FiniteGroup, h: ElementSet) -> Result<bool> {
        if self.index.contains_key(&h) {
            return Ok(false);
        }
        let id = self.classes.len();
        let gens = g.generators();
        let mut class = vec![h.clone()];
        self.index.insert(h, id);
        let mut i = 0;
        while i < class.len() {
            let k = class[i].clone();
            i += 1;
            for &s in &gens {
                let c = conjugate_set(g, &k, s);
                if !self.index.contains_key(&c) {
                    self.index.insert(c.clone(), id);
                    class.push(c);
                }
            }
        }
        if self.index.len() > SUBGROUP_COUNT_CAP {
            return Err(cap_exceeded("subgroup lattice size", SUBGROUP_COUNT_CAP));
        }
        self.classes.push(class);
        Ok(true)
    }
}

fn build(g: &FiniteGroup) -> Result<Lattice> {
    let n = g.order();
    if n > LATTICE_CAP {
        return Err(cap_exceeded(
            format!("subgroup lattice of a group of order {n}"),
            LATTICE_CAP,
        ));
    }
    let mut lat = Lattice {
        index: HashMap::new(),
        classes: Vec::new(),
    };
    let mut cyclics: Vec<ElementSet> = Vec::new();
    let mut seen = HashMap::new();
    for x in 0..n {
        let mut c = ElementSet::empty(n);
        let mut y = 0;
        loop {
            c.insert(y);
            y = g.mul(y, x);
            if y == 0 {
                break;
            }
        }
        c.set_generators(if x == 0 { &[] } else { std::slice::from_ref(&x) });
        c.is_subgroup = Some(true);
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(c.clone()) {
            e.insert(());
            cyclics.push(c);
        }
    }
    for c in &cyclics {
        lat.register(g, c.clone())?;
    }
    // Joins with cyclic subgroups, extending one representative per class:
    // a join of conjugates is the conjugate of a join.
    let mut i = 0;
    while i < lat.classes.len() {
        let h = lat.classes[i][0].clone();
        i += 1;
        for c in &cyclics {
            if c.is_subset(&h) {
                continue;
            }
            let j = extend(g, &h, &c.generators());
            lat.register(g, j)?;
        }
    }
    Ok(lat)
}

/// Every subgroup of `g` (or one per conjugacy class), in canonical order.
pub fn all_subgroups(g: &FiniteGroup, up_to_conjugacy: bool) -> Result<SubgroupList> {
    let lat = build(g)?;
    let mut entries: Vec<(ElementSet, usize)> = Vec::new();
    for class in &lat.classes {
        if up_to_conjugacy {
            let rep = class.iter().min().unwrap().clone();
            entries.push((rep, class.len()));
        } else {
            for h in class {
                entries.push((h.clone(), class.len()));
            }
        }
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    for (h, _) in &entries {
        debug_assert_eq!(g.order() % h.len(), 0);
    }
    Ok(SubgroupList {
        subgroups: entries.iter().map(|e| e.0.clone()).collect(),
        class_sizes: entries.iter().map(|e| e.1).collect(),
        up_to_conjugacy,
        certificate: format!(
            "layered cyclic joins, order {} <= lattice cap {}",
            g.order(),
            LATTICE_CAP
        ),
    })
}

/// All maximal proper subgroups of `g`, read off the full lattice.
pub fn maximal_subgroups(g: &FiniteGroup) -> Result<SubgroupList> {
    let lat = build(g)?;
    let n = g.order();
    let mut by_size: Vec<&ElementSet> = lat.index.keys().filter(|h| h.len() < n).collect();
    by_size.sort();
    let mut out: Vec<(ElementSet, usize)> = Vec::new();
    for class in &lat.classes {
        let rep = &class[0];
        if rep.len() == n {
            continue;
        }
        let contained = by_size
            .iter()
            .any(|k| k.len() > rep.len() && k.len() % rep.len() == 0 && rep.is_subset(k));
        if !contained {
            for h in class {
                out.push((h.clone(), class.len()));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(SubgroupList {
        subgroups: out.iter().map(|e| e.0.clone()).collect(),
        class_sizes: out.iter().map(|e| e.1).collect(),
        up_to_conjugacy: false,
        certificate: format!("filtered from the full lattice (order {n})"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// Oracle: every subset closed under the product, by brute force over
    /// closures of all pairs of elements plus joins until stable.
    fn brute_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut all: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
        all.insert(vec![0]);
        while let Some(h) = frontier.pop() {
            for x in 0..n {
                if h.contains(&x) {
                    continue;
                }
                // naive closure by repeated products
                let mut set: std::collections::BTreeSet<usize> = h.iter().copied().collect();
                set.insert(x);
                loop {
                    let cur: Vec<usize> = set.iter().copied().collect();
                    let before = set.len();
                    for &a in &cur {
                        for &b in &cur {
                            set.insert(g.mul(a, b));
                        }
                    }
                    if set.len() == before {
                        break;
                    }
                }
                let v: Vec<usize> = set.into_iter().collect();
                if all.insert(v.clone()) {
                    frontier.push(v);
                }
            }
        }
        all.len()
    }

    #[test]
    fn subgroup_counts() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let l = all_subgroups(&c6, false).unwrap();
        assert_eq!(l.len(), 4);
        let orders: Vec<usize> = l.subgroups.iter().map(|h| h.len()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        let q8 = corpus::generalized_quaternion(8).unwrap();
        assert_eq!(all_subgroups(&q8, false).unwrap().len(), 6);
        let s3 = corpus::symmetric(3).unwrap();
        assert_eq!(all_subgroups(&s3, false).unwrap().len(), 6);
        assert_eq!(all_subgroups(&s3, true).unwrap().len(), 4);
    }

    #[test]
    fn lattice_matches_brute_force() {
        for g in [
            corpus::symmetric(4).unwrap(),
            corpus::dihedral(6).unwrap(),
            corpus::elementary_abelian(2, 3).unwrap(),
            corpus::generalized_quaternion(16).unwrap(),
        ] {
            let l = all_subgroups(&g, false).unwrap();
            assert_eq!(l.len(), brute_subgroup_count(&g), "{g:?}");
            let reps = all_subgroups(&g, true).unwrap();
            assert_eq!(reps.class_sizes.iter().sum::<usize>(), l.len());
        }
    }

    #[test]
    fn maximal_examples() {
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let m: Vec<usize> = maximal_subgroups(&c12)
            .unwrap()
            .subgroups
            .iter()
            .map(|h| h.len())
            .collect();
        assert_eq!(m, vec![4, 6]);
        let q8 = corpus::generalized_quaternion(8).unwrap();
        let m = maximal_subgroups(&q8).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.subgroups.iter().all(|h| h.len() == 4));
        // Alt(4): four Sylow 3-subgroups and the Klein four-group
        let a4 = corpus::alternating(4).unwrap();
        let m = maximal_subgroups(&a4).unwrap();
        let mut orders: Vec<usize> = m.subgroups.iter().map(|h| h.len()).collect();
        orders.sort();
        assert_eq!(orders, vec![3, 3, 3, 3, 4]);
    }
}
