use super::FiniteGroup;
use crate::elemset::ElementSet;

/// Conjugacy classes with representatives the least index in each class.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    pub reps: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ConjugacyClasses {
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x] as usize
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn members(&self, c: usize) -> Vec<usize> {
        (0..self.class_of.len())
            .filter(|&x| self.class_of[x] as usize == c)
            .collect()
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClasses {
    let n = g.order();
    let gens = g.generators();
    let mut class_of = vec![u32::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        class_of[x] = id;
        stack.push(x);
        let mut size = 1;
        while let Some(y) = stack.pop() {
            for &s in &gens {
                let z = g.conj(s, y);
                if class_of[z] == u32::MAX {
                    class_of[z] = id;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        sizes.push(size);
    }
    ConjugacyClasses {
        class_of,
        reps,
        sizes,
    }
}

/// Centralizer in `g` of the elements `xs`.
pub fn centralizer(g: &FiniteGroup, xs: &[usize]) -> ElementSet {
    let mut c = ElementSet::from_indices(
        g.order(),
        (0..g.order()).filter(|&y| xs.iter().all(|&x| g.mul(x, y) == g.mul(y, x))),
    );
    c.is_subgroup = Some(true);
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_cycles;

    #[test]
    fn s4_classes() {
        let g = FiniteGroup::from_permutation_generators(
            &[
                parse_cycles("(0 1)", 4).unwrap(),
                parse_cycles("(0 1 2 3)", 4).unwrap(),
            ],
            4,
        )
        .unwrap();
        let cc = conjugacy_classes(&g);
        let mut sizes = cc.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
        assert_eq!(centralizer(&g, &[0]).len(), 24);
        let t = cc.reps[1];
        assert_eq!(centralizer(&g, &[t]).len() * cc.sizes[1], 24);
    }
}
