//! Subgroups of an explicit group, kept as [`ElementSet`]s of the parent.
//!
//! Most routines take the ambient group `g` and a subgroup `h` of it, so the
//! same code serves whole groups and 2-generated subgroups of a large parent
//! without materializing anything.

mod generation;
mod lattice;
mod structure;

pub use generation::{generates, min_generators};
pub use lattice::{all_subgroups, maximal_subgroups, SubgroupList, LATTICE_CAP};
pub use structure::{
    center, characteristic_structure, chief_series, derived_length, derived_series,
    derived_subgroup, fitting_subgroup, frattini, is_nilpotent, is_soluble, is_supersoluble,
    is_supersoluble_by_maximals, minimal_normal_subgroups, normal_subgroups, o_p, sylow,
    Characteristic,
};
pub(crate) use structure::standalone;

use crate::elemset::ElementSet;
use crate::group::FiniteGroup;

/// `<S>` in `g`.
pub fn closure(g: &FiniteGroup, gens: &[usize]) -> ElementSet {
    let mut h = g.trivial_subgroup();
    for &x in gens {
        if !h.contains(x) {
            h = extend(g, &h, &[x]);
        }
    }
    h
}

/// `<H, extra>` for a subgroup `H`, built coset by coset: the result is kept
/// as a union of right cosets `H r` and closed under right multiplication by
/// the generators.
pub fn extend(g: &FiniteGroup, h: &ElementSet, extra: &[usize]) -> ElementSet {
    let mut gens = gens_of(g, h);
    for &x in extra {
        if !gens.contains(&x) && x != 0 {
            gens.push(x);
        }
    }
    let base = h.to_vec();
    let mut set = h.clone();
    let mut reps = vec![0usize];
    let mut i = 0;
    while i < reps.len() {
        let r = reps[i];
        i += 1;
        for &s in &gens {
            let rs = g.mul(r, s);
            if !set.contains(rs) {
                for &b in &base {
                    set.insert(g.mul(b, rs));
                }
                reps.push(rs);
            }
        }
    }
    set.set_generators(&gens);
    set.is_subgroup = Some(true);
    set
}

/// Recorded generators of `h`, or a greedy generating set when none are
/// recorded.
pub fn gens_of(g: &FiniteGroup, h: &ElementSet) -> Vec<usize> {
    let gens = h.generators();
    if !gens.is_empty() || h.len() <= 1 {
        return gens;
    }
    if h.len() == g.order() && !g.generators().is_empty() {
        return g.generators();
    }
    greedy_generators(g, h)
}

/// Generating set for `h`: repeatedly adds the element of largest order not
/// yet covered, ties broken by least index.
pub fn greedy_generators(g: &FiniteGroup, h: &ElementSet) -> Vec<usize> {
    let mut cur = g.trivial_subgroup();
    let mut gens = Vec::new();
    while cur.len() < h.len() {
        let mut best = usize::MAX;
        let mut best_ord = 0;
        for x in h.iter() {
            if !cur.contains(x) && g.elem_order(x) > best_ord {
                best = x;
                best_ord = g.elem_order(x);
            }
        }
        gens.push(best);
        cur = extend(g, &cur, &[best]);
    }
    gens
}

pub fn is_subgroup(g: &FiniteGroup, set: &ElementSet) -> bool {
    if !set.contains(0) {
        return false;
    }
    let elems = set.to_vec();
    elems
        .iter()
        .all(|&a| set.contains(g.inv(a)) && elems.iter().all(|&b| set.contains(g.mul(a, b))))
}

/// Tests whether `n` is normalized by `within` (both subgroups of `g`).
pub fn is_normal_in(g: &FiniteGroup, n: &ElementSet, within: &ElementSet) -> bool {
    let ng = gens_of(g, n);
    gens_of(g, within)
        .iter()
        .all(|&s| ng.iter().all(|&x| n.contains(g.conj(s, x))))
}

/// `x H x^-1`.
pub fn conjugate_set(g: &FiniteGroup, h: &ElementSet, x: usize) -> ElementSet {
    let mut out = ElementSet::from_indices(g.order(), h.iter().map(|y| g.conj(x, y)));
    let gens: Vec<usize> = h.generators().iter().map(|&y| g.conj(x, y)).collect();
    out.set_generators(&gens);
    out.is_subgroup = h.is_subgroup;
    out
}

/// Normal closure of `s` inside the subgroup `within`.
pub fn normal_closure_in(g: &FiniteGroup, within: &ElementSet, s: &[usize]) -> ElementSet {
    let wg = gens_of(g, within);
    let mut n = closure(g, s);
    loop {
        let ng = n.generators();
        let mut added = None;
        'outer: for &t in &wg {
            for &x in &ng {
                let c = g.conj(t, x);
                if !n.contains(c) {
                    added = Some(c);
                    break 'outer;
                }
            }
        }
        match added {
            Some(c) => n = extend(g, &n, &[c]),
            None => break,
        }
    }
    n.is_subgroup = Some(true);
    n
}

pub fn normal_closure(g: &FiniteGroup, s: &[usize]) -> ElementSet {
    let mut n = normal_closure_in(g, &g.whole(), s);
    n.is_normal = Some(true);
    n
}

/// Largest subgroup of `m` normalized by `within`.
pub fn core_in(g: &FiniteGroup, within: &ElementSet, m: &ElementSet) -> ElementSet {
    let wg = gens_of(g, within);
    let mut c = m.clone();
    loop {
        let mut next = c.clone();
        for &s in &wg {
            let si = g.inv(s);
            let keep: Vec<usize> = next
                .iter()
                .filter(|&x| !c.contains(g.conj(si, x)))
                .collect();
            for x in keep {
                next.remove(x);
            }
        }
        if next.len() == c.len() {
            break;
        }
        c = next;
    }
    let mut out = ElementSet::from_indices(g.order(), c.iter());
    out.is_subgroup = Some(true);
    out
}

/// Normal core `M_G`: the largest normal subgroup of `g` inside `m`.
pub fn normal_core(g: &FiniteGroup, m: &ElementSet) -> ElementSet {
    let mut c = core_in(g, &g.whole(), m);
    c.is_normal = Some(true);
    c
}

/// `N_within(h)`.
pub fn normalizer_in(g: &FiniteGroup, within: &ElementSet, h: &ElementSet) -> ElementSet {
    let hg = gens_of(g, h);
    let mut n = ElementSet::from_indices(
        g.order(),
        within
            .iter()
            .filter(|&x| hg.iter().all(|&y| h.contains(g.conj(x, y)))),
    );
    n.is_subgroup = Some(true);
    n
}

/// Conjugacy classes of the subgroup `h` under its own conjugation, as
/// `(least member, size)` pairs in ascending order of representative.
pub fn classes_in(g: &FiniteGroup, h: &ElementSet) -> Vec<(usize, usize)> {
    let hg = gens_of(g, h);
    let mut seen = ElementSet::empty(g.order());
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for x in h.iter() {
        if seen.contains(x) {
            continue;
        }
        seen.insert(x);
        stack.push(x);
        let mut size = 1;
        while let Some(y) = stack.pop() {
            for &s in &hg {
                let z = g.conj(s, y);
                if seen.insert(z) {
                    size += 1;
                    stack.push(z);
                }
            }
        }
        out.push((x, size));
    }
    out
}

/// `H N` for subgroups `h` and normal `n` (or any two subgroups whose
/// product is a subgroup).
pub fn join(g: &FiniteGroup, h: &ElementSet, n: &ElementSet) -> ElementSet {
    if n.is_subset(h) {
        return h.clone();
    }
    if h.is_subset(n) {
        return n.clone();
    }
    extend(g, h, &gens_of(g, n))
}

/// Prime factorization as `(p, e)` pairs.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_of(n: usize) -> Vec<usize> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// p-part of `n`.
pub fn p_part(n: usize, p: usize) -> usize {
    let mut m = 1;
    let mut n = n;
    while n % p == 0 {
        n /= p;
        m *= p;
    }
    m
}

pub fn is_prime_power_of(n: usize, p: usize) -> bool {
    p_part(n, p) == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_cycles;

    pub(crate) fn sym(n: usize) -> FiniteGroup {
        let t = parse_cycles("(0 1)", n).unwrap();
        let c = crate::group::Permutation(
            (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
        );
        FiniteGroup::from_permutation_generators(&[t, c], n).unwrap()
    }

    fn quaternion() -> FiniteGroup {
        crate::corpus::generalized_quaternion(8).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s3 = sym(3);
        let three = (0..6).find(|&x| s3.elem_order(x) == 3).unwrap();
        assert_eq!(closure(&s3, &[three]).len(), 3);
        assert_eq!(closure(&s3, &[]).len(), 1);
        let q8 = quaternion();
        let fours: Vec<usize> = (0..8).filter(|&x| q8.elem_order(x) == 4).collect();
        let i = fours[0];
        let j = *fours.iter().find(|&&y| y != i && y != q8.inv(i)).unwrap();
        assert_eq!(closure(&q8, &[i, j]).len(), 8);
        let c8 = FiniteGroup::cyclic(8).unwrap();
        let a = FiniteGroup::direct_product(&c8, &c8).unwrap();
        assert_eq!(closure(&a, &[8, 1]).len(), 64);
    }

    #[test]
    fn core_examples() {
        let s3 = sym(3);
        let t = (0..6).find(|&x| s3.elem_order(x) == 2).unwrap();
        let m = closure(&s3, &[t]);
        assert_eq!(normal_core(&s3, &m).len(), 1);
        let a3 = closure(&s3, &[(0..6).find(|&x| s3.elem_order(x) == 3).unwrap()]);
        assert_eq!(normal_core(&s3, &a3), a3);
        let q8 = quaternion();
        let i = (0..8).find(|&x| q8.elem_order(x) == 4).unwrap();
        let ci = closure(&q8, &[i]);
        assert_eq!(normal_core(&q8, &ci), ci);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(75264), vec![(2, 9), (3, 1), (7, 2)]);
        assert_eq!(primes_of(1), Vec::<usize>::new());
        assert_eq!(p_part(48, 2), 16);
    }
}
