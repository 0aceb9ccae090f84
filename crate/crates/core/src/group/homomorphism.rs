use std::collections::VecDeque;

use super::{FiniteGroup, Provenance};
use crate::elemset::ElementSet;
use crate::error::{GroupError, Result};

/// A homomorphism stored as its full image table.
#[derive(Clone, Debug)]
pub struct Homomorphism {
    pub domain: FiniteGroup,
    pub codomain: FiniteGroup,
    map: Vec<u32>,
}

impl Homomorphism {
    /// Extends images of `domain.generators()` and checks the result is a
    /// homomorphism.
    pub fn from_generator_images(
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
        images: &[usize],
    ) -> Result<Homomorphism> {
        let gens = domain.generators();
        if gens.len() != images.len() {
            return Err(GroupError::InvalidParameters(format!(
                "{} images for {} generators",
                images.len(),
                gens.len()
            )));
        }
        let n = domain.order();
        let mut map = vec![u32::MAX; n];
        map[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in gens.iter().enumerate() {
                let xs = domain.mul(x, s);
                let want = codomain.mul(map[x] as usize, images[k]) as u32;
                if map[xs] == u32::MAX {
                    map[xs] = want;
                    queue.push_back(xs);
                } else if map[xs] != want {
                    return Err(GroupError::InvalidParameters(
                        "generator images do not define a homomorphism".into(),
                    ));
                }
            }
        }
        Ok(Homomorphism {
            domain: domain.clone(),
            codomain: codomain.clone(),
            map,
        })
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn kernel(&self) -> ElementSet {
        let mut k = ElementSet::from_indices(
            self.domain.order(),
            (0..self.domain.order()).filter(|&x| self.map[x] == 0),
        );
        k.is_subgroup = Some(true);
        k.is_normal = Some(true);
        k
    }

    pub fn image_set(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_indices(self.codomain.order(), s.iter().map(|x| self.image(x)))
    }

    pub fn preimage(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_indices(
            self.domain.order(),
            (0..self.domain.order()).filter(|&x| s.contains(self.image(x))),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }
}

/// `G / N` for a normal subgroup `N`. Cosets are numbered in ascending order
/// of their least element, so coset `0` is `N` itself.
pub fn quotient(g: &FiniteGroup, n: &ElementSet) -> Result<(FiniteGroup, Homomorphism)> {
    if n.universe() != g.order() || !n.contains(0) {
        return Err(GroupError::InvalidParameters("not a subgroup of this group".into()));
    }
    let ngens = if n.generators().is_empty() {
        n.to_vec()
    } else {
        n.generators()
    };
    if n.is_subgroup != Some(true) && crate::subgroup::closure(g, &ngens) != *n {
        return Err(GroupError::InvalidParameters("set is not a subgroup".into()));
    }
    if n.is_normal != Some(true) {
        for &s in &g.generators() {
            for &x in &ngens {
                if !n.contains(g.conj(s, x)) {
                    return Err(GroupError::NotNormal(format!(
                        "conjugate of {x} by generator {s} leaves the subgroup"
                    )));
                }
            }
        }
    }
    let members = n.to_vec();
    let mut coset = vec![u32::MAX; g.order()];
    let mut reps: Vec<u32> = Vec::with_capacity(g.order() / members.len());
    for x in 0..g.order() {
        if coset[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x as u32);
        for &m in &members {
            coset[g.mul(x, m)] = id;
        }
    }
    let mut qgens: Vec<u32> = Vec::new();
    for s in g.generators() {
        let c = coset[s];
        if c != 0 && !qgens.contains(&c) {
            qgens.push(c);
        }
    }
    let desc = format!(
        "quotient of order {} of {}",
        reps.len(),
        g.provenance().description
    );
    let q = FiniteGroup::from_quotient(g, reps, coset.clone(), qgens, Provenance::new(desc))?;
    let hom = Homomorphism {
        domain: g.clone(),
        codomain: q.clone(),
        map: coset,
    };
    Ok((q, hom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_cyclic() {
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let n = crate::subgroup::closure(&c12, &[4]);
        let (q, pi) = quotient(&c12, &n).unwrap();
        assert_eq!(q.order(), 4);
        assert_eq!(q.elem_order(pi.image(1)), 4);
        assert_eq!(pi.kernel(), n);
        q.check_invariants().unwrap();
    }

    #[test]
    fn non_normal_rejected() {
        let s3 = FiniteGroup::from_permutation_generators(
            &[
                super::super::parse_cycles("(0 1)", 3).unwrap(),
                super::super::parse_cycles("(0 1 2)", 3).unwrap(),
            ],
            3,
        )
        .unwrap();
        let h = crate::subgroup::closure(&s3, &[1]);
        let mut h2 = ElementSet::from_indices(6, h.iter());
        h2.is_subgroup = Some(true);
        assert!(matches!(quotient(&s3, &h2), Err(GroupError::NotNormal(_))));
    }

    #[test]
    fn hom_from_images() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let f = Homomorphism::from_generator_images(&c6, &c3, &[1]).unwrap();
        assert_eq!(f.kernel().to_vec(), vec![0, 3]);
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(Homomorphism::from_generator_images(&c6, &c4, &[1]).is_err());
    }
}
