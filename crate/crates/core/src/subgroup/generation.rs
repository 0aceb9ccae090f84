use super::{closure, extend, greedy_generators, is_nilpotent, primes_of};
use crate::elemset::ElementSet;
use crate::group::{conjugacy_classes, FiniteGroup};

pub fn generates(g: &FiniteGroup, gens: &[usize]) -> bool {
    closure(g, gens).len() == g.order()
}

/// Lower bound `max_p rank(G / G'G^p)`; exact for nilpotent groups.
fn frattini_quotient_rank(g: &FiniteGroup) -> usize {
    let w = g.whole();
    let d = super::derived_subgroup(g, &w);
    let gens = g.generators();
    let mut best = 0;
    for p in primes_of(g.order()) {
        let mut ks = super::gens_of(g, &d);
        ks.extend(gens.iter().map(|&x| g.pow(x, p as i64)).filter(|&y| y != 0));
        let k = closure(g, &ks);
        let mut idx = g.order() / k.len();
        let mut r = 0;
        while idx > 1 {
            idx /= p;
            r += 1;
        }
        best = best.max(r);
    }
    best
}

/// `d(G)`, the least size of a generating set (`0` for the trivial group).
pub fn min_generators(g: &FiniteGroup) -> usize {
    let n = g.order();
    if n == 1 {
        return 0;
    }
    if (0..n).any(|x| g.elem_order(x) == n) {
        return 1;
    }
    let lb = frattini_quotient_rank(g).max(2);
    if is_nilpotent(g, &g.whole()) {
        return lb;
    }
    let ub = greedy_generators(g, &g.whole()).len().min(
        if g.generators().is_empty() {
            usize::MAX
        } else {
            g.generators().len()
        },
    );
    let reps: Vec<usize> = conjugacy_classes(g).reps.into_iter().filter(|&x| x != 0).collect();
    for k in lb..ub {
        if generating_tuple_exists(g, &reps, k) {
            return k;
        }
    }
    ub.max(lb)
}

fn generating_tuple_exists(g: &FiniteGroup, reps: &[usize], k: usize) -> bool {
    // the first generator may be taken up to conjugacy
    reps.iter().any(|&x| {
        let h = closure(g, &[x]);
        search(g, &h, k - 1)
    })
}

fn search(g: &FiniteGroup, h: &ElementSet, left: usize) -> bool {
    if h.len() == g.order() {
        return true;
    }
    if left == 0 {
        return false;
    }
    let mut covered = h.clone();
    for y in 0..g.order() {
        if h.contains(y) {
            continue;
        }
        if left == 1 && covered.contains(y) {
            // y lies in a proper subgroup already generated with h
            continue;
        }
        let j = extend(g, h, &[y]);
        if j.len() == g.order() {
            return true;
        }
        if left == 1 {
            covered = covered.union(&j);
        } else if search(g, &j, left - 1) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn d_examples() {
        assert_eq!(min_generators(&FiniteGroup::cyclic(6).unwrap()), 1);
        assert_eq!(min_generators(&corpus::elementary_abelian(2, 3).unwrap()), 3);
        assert_eq!(min_generators(&corpus::generalized_quaternion(8).unwrap()), 2);
        assert_eq!(min_generators(&corpus::symmetric(4).unwrap()), 2);
        assert_eq!(min_generators(&FiniteGroup::cyclic(1).unwrap()), 0);
    }

    /// Brute force over all pairs and triples.
    fn brute_d(g: &FiniteGroup) -> usize {
        let n = g.order();
        if n == 1 {
            return 0;
        }
        for k in 1..=4usize {
            let mut idx = vec![0usize; k];
            loop {
                if generates(g, &idx) {
                    return k;
                }
                let mut i = 0;
                while i < k {
                    idx[i] += 1;
                    if idx[i] < n {
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == k {
                    break;
                }
            }
        }
        5
    }

    #[test]
    fn d_matches_brute_force() {
        for g in [
            corpus::dihedral(6).unwrap(),
            corpus::symmetric(3).unwrap(),
            FiniteGroup::direct_product(
                &corpus::symmetric(3).unwrap(),
                &corpus::symmetric(3).unwrap(),
            )
            .unwrap(),
            FiniteGroup::direct_product(
                &corpus::elementary_abelian(2, 2).unwrap(),
                &corpus::symmetric(3).unwrap(),
            )
            .unwrap(),
            corpus::alternating(4).unwrap(),
        ] {
            assert_eq!(min_generators(&g), brute_d(&g), "{g:?}");
        }
    }
}
