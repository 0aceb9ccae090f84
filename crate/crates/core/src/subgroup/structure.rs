use std::collections::HashSet;

use super::{
    classes_in, closure, core_in, extend, factorize, gens_of, is_prime_power_of, join,
    normal_closure_in, normalizer_in, p_part, primes_of,
};
use crate::elemset::ElementSet;
use crate::error::{cap_exceeded, GroupError, Result};
use crate::group::FiniteGroup;

/// Cap on the number of normal subgroups enumerated by [`normal_subgroups`].
pub const NORMAL_SUBGROUP_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Characteristic {
    Center,
    Frattini,
    Socle,
    SolubleRadical,
    DerivedSubgroup,
    OpOfCenter(usize),
    Sylow(usize),
    Fitting,
}

pub fn characteristic_structure(g: &FiniteGroup, which: Characteristic) -> Result<ElementSet> {
    let w = g.whole();
    let check_p = |p: usize| {
        if p < 2 || g.order() % p != 0 {
            Err(GroupError::InvalidParameters(format!(
                "{p} does not divide the group order {}",
                g.order()
            )))
        } else {
            Ok(())
        }
    };
    let mut out = match which {
        Characteristic::Center => center(g, &w),
        Characteristic::Frattini => frattini(g, &w)?,
        Characteristic::Socle => socle(g, &w),
        Characteristic::SolubleRadical => soluble_radical(g, &w),
        Characteristic::DerivedSubgroup => derived_subgroup(g, &w),
        Characteristic::OpOfCenter(p) => {
            check_p(p)?;
            let z = center(g, &w);
            p_elements(g, &z, p)
        }
        Characteristic::Sylow(p) => {
            check_p(p)?;
            return Ok(sylow(g, &w, p));
        }
        Characteristic::Fitting => fitting_subgroup(g, &w),
    };
    out.is_subgroup = Some(true);
    out.is_normal = Some(true);
    Ok(out)
}

/// Elements of `h` whose order is a power of `p`.
pub fn p_elements(g: &FiniteGroup, h: &ElementSet, p: usize) -> ElementSet {
    ElementSet::from_indices(
        g.order(),
        h.iter().filter(|&x| is_prime_power_of(g.elem_order(x), p)),
    )
}

pub fn center(g: &FiniteGroup, h: &ElementSet) -> ElementSet {
    let hg = gens_of(g, h);
    let mut z = ElementSet::from_indices(
        g.order(),
        h.iter()
            .filter(|&x| hg.iter().all(|&s| g.mul(x, s) == g.mul(s, x))),
    );
    z.is_subgroup = Some(true);
    z
}

pub fn derived_subgroup(g: &FiniteGroup, h: &ElementSet) -> ElementSet {
    let hg = gens_of(g, h);
    let mut comms = Vec::new();
    for (i, &a) in hg.iter().enumerate() {
        for &b in &hg[i + 1..] {
            let c = g.commutator(a, b);
            if c != 0 && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    normal_closure_in(g, h, &comms)
}

/// `h = D_0 > D_1 > ...` down to the first repeated term.
pub fn derived_series(g: &FiniteGroup, h: &ElementSet) -> Vec<ElementSet> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().unwrap();
        let d = derived_subgroup(g, last);
        if d.len() == last.len() {
            break;
        }
        series.push(d);
    }
    series
}

/// Derived length of a soluble `h`; `None` when `h` is not soluble.
pub fn derived_length(g: &FiniteGroup, h: &ElementSet) -> Option<usize> {
    let s = derived_series(g, h);
    if s.last().unwrap().len() == 1 {
        Some(s.len() - 1)
    } else {
        None
    }
}

pub fn is_soluble(g: &FiniteGroup, h: &ElementSet) -> bool {
    derived_length(g, h).is_some()
}

/// Nilpotent iff for every prime the `p`-elements number exactly `|h|_p`
/// (every Sylow subgroup is then normal).
pub fn is_nilpotent(g: &FiniteGroup, h: &ElementSet) -> bool {
    let n = h.len();
    primes_of(n).into_iter().all(|p| {
        h.iter()
            .filter(|&x| is_prime_power_of(g.elem_order(x), p))
            .count()
            == p_part(n, p)
    })
}

/// A Sylow `p`-subgroup of `h`, grown inside successive normalizers.
pub fn sylow(g: &FiniteGroup, h: &ElementSet, p: usize) -> ElementSet {
    let target = p_part(h.len(), p);
    let mut s = g.trivial_subgroup();
    while s.len() < target {
        let n = normalizer_in(g, h, &s);
        let x = n
            .iter()
            .find(|&x| !s.contains(x) && is_prime_power_of(g.elem_order(x), p))
            .expect("a p-element normalizing a non-Sylow p-subgroup exists");
        s = extend(g, &s, &[x]);
    }
    s.is_subgroup = Some(true);
    s
}

/// `O_p(h)`: the core of a Sylow `p`-subgroup.
pub fn o_p(g: &FiniteGroup, h: &ElementSet, p: usize) -> ElementSet {
    if h.len() % p != 0 {
        return g.trivial_subgroup();
    }
    let s = sylow(g, h, p);
    let mut c = core_in(g, h, &s);
    c.set_generators(&super::greedy_generators(g, &c));
    c
}

pub fn fitting_subgroup(g: &FiniteGroup, h: &ElementSet) -> ElementSet {
    let mut f = g.trivial_subgroup();
    for p in primes_of(h.len()) {
        let op = o_p(g, h, p);
        f = join(g, &f, &op);
    }
    f
}

/// Normal closures in `h` of its conjugacy class representatives, deduped.
fn class_closures(g: &FiniteGroup, h: &ElementSet) -> Vec<ElementSet> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (x, _) in classes_in(g, h) {
        if x == 0 {
            continue;
        }
        let n = normal_closure_in(g, h, &[x]);
        if seen.insert(n.clone()) {
            out.push(n);
        }
    }
    out.sort();
    out
}

/// Minimal normal subgroups of `h`, in canonical order.
pub fn minimal_normal_subgroups(g: &FiniteGroup, h: &ElementSet) -> Vec<ElementSet> {
    // every minimal normal subgroup is the normal closure of any of its
    // non-identity elements
    let cands = class_closures(g, h);
    cands
        .iter()
        .filter(|c| {
            !cands
                .iter()
                .any(|d| d.len() < c.len() && d.is_subset(c))
        })
        .cloned()
        .collect()
}

/// All normal subgroups of `h`, as joins of class normal closures.
pub fn normal_subgroups(g: &FiniteGroup, h: &ElementSet) -> Result<Vec<ElementSet>> {
    let cands = class_closures(g, h);
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut list = vec![g.trivial_subgroup()];
    seen.insert(list[0].clone());
    let mut i = 0;
    while i < list.len() {
        let n = list[i].clone();
        i += 1;
        for c in &cands {
            if c.is_subset(&n) {
                continue;
            }
            let j = join(g, &n, c);
            if !seen.contains(&j) {
                if list.len() >= NORMAL_SUBGROUP_CAP {
                    return Err(cap_exceeded("normal subgroup enumeration", NORMAL_SUBGROUP_CAP));
                }
                seen.insert(j.clone());
                list.push(j);
            }
        }
    }
    for n in &mut list {
        n.is_subgroup = Some(true);
    }
    list.sort();
    Ok(list)
}

/// A chief series `1 = U_0 < ... < U_t = h`; at each step the smallest
/// candidate in canonical order (order, then members) is taken.
pub fn chief_series(g: &FiniteGroup, h: &ElementSet) -> Vec<ElementSet> {
    let reps: Vec<usize> = classes_in(g, h).into_iter().map(|(x, _)| x).collect();
    let mut series = vec![g.trivial_subgroup()];
    loop {
        let u = series.last().unwrap().clone();
        if u.len() == h.len() {
            break;
        }
        let mut ugens = gens_of(g, &u);
        let mut best: Option<ElementSet> = None;
        let mut tried: HashSet<ElementSet> = HashSet::new();
        for &x in &reps {
            if u.contains(x) {
                continue;
            }
            ugens.push(x);
            let j = normal_closure_in(g, h, &ugens);
            ugens.pop();
            if tried.insert(j.clone()) && best.as_ref().map_or(true, |b| j < *b) {
                best = Some(j);
            }
        }
        series.push(best.expect("a proper normal subgroup has a class outside it"));
    }
    series
}

pub fn socle(g: &FiniteGroup, h: &ElementSet) -> ElementSet {
    let mut s = g.trivial_subgroup();
    for m in minimal_normal_subgroups(g, h) {
        s = join(g, &s, &m);
    }
    s
}

/// Largest normal soluble subgroup: repeatedly absorbs normal closures
/// that are abelian modulo the current radical.
pub fn soluble_radical(g: &FiniteGroup, h: &ElementSet) -> ElementSet {
    let reps: Vec<usize> = classes_in(g, h).into_iter().map(|(x, _)| x).collect();
    let mut r = g.trivial_subgroup();
    'grow: loop {
        for &x in &reps {
            if r.contains(x) {
                continue;
            }
            let mut gens = gens_of(g, &r);
            gens.push(x);
            let j = normal_closure_in(g, h, &gens);
            let jg = gens_of(g, &j);
            let abelian_mod_r = jg
                .iter()
                .all(|&a| jg.iter().all(|&b| r.contains(g.commutator(a, b))));
            if abelian_mod_r {
                r = j;
                continue 'grow;
            }
        }
        break;
    }
    r.is_subgroup = Some(true);
    r
}

/// Frattini subgroup. Nilpotent groups use `Phi(P) = P' P^p` on each Sylow
/// subgroup; other groups intersect the maximal subgroups from the lattice.
pub fn frattini(g: &FiniteGroup, h: &ElementSet) -> Result<ElementSet> {
    if is_nilpotent(g, h) {
        let mut phi = g.trivial_subgroup();
        for p in primes_of(h.len()) {
            let s = sylow(g, h, p);
            let d = derived_subgroup(g, &s);
            let mut gens = gens_of(g, &d);
            for x in gens_of(g, &s) {
                let y = g.pow(x, p as i64);
                if y != 0 {
                    gens.push(y);
                }
            }
            let f = closure(g, &gens);
            phi = join(g, &phi, &f);
        }
        return Ok(phi);
    }
    let (sub, emb) = standalone(g, h);
    let maxes = super::maximal_subgroups(&sub)?;
    let mut inter = sub.whole();
    for m in &maxes.subgroups {
        inter = inter.intersection(m);
    }
    let mut out = ElementSet::from_indices(g.order(), inter.iter().map(|x| emb[x]));
    out.is_subgroup = Some(true);
    out.set_generators(&super::greedy_generators(g, &out));
    Ok(out)
}

/// `h` as a group of its own plus the index map back into `g`.
pub(crate) fn standalone(g: &FiniteGroup, h: &ElementSet) -> (FiniteGroup, Vec<usize>) {
    if h.len() == g.order() {
        return (g.clone(), (0..g.order()).collect());
    }
    let mut hs = h.clone();
    if hs.generators().is_empty() {
        hs.set_generators(&gens_of(g, h));
    }
    let sub = g.subgroup(&hs);
    let emb = sub.embedding();
    (sub, emb)
}

/// Supersoluble iff every chief factor has prime order.
pub fn is_supersoluble(g: &FiniteGroup, h: &ElementSet) -> bool {
    let s = chief_series(g, h);
    s.windows(2).all(|w| {
        let f = w[1].len() / w[0].len();
        factorize(f).len() == 1 && factorize(f)[0].1 == 1
    })
}

/// Supersoluble iff every maximal subgroup has prime index (Huppert).
pub fn is_supersoluble_by_maximals(g: &FiniteGroup) -> Result<bool> {
    let maxes = super::maximal_subgroups(g)?;
    Ok(maxes.subgroups.iter().all(|m| {
        let idx = g.order() / m.len();
        factorize(idx).len() == 1 && factorize(idx)[0].1 == 1
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn center_and_frattini() {
        let q8 = corpus::generalized_quaternion(8).unwrap();
        assert_eq!(characteristic_structure(&q8, Characteristic::Center).unwrap().len(), 2);
        let c8 = FiniteGroup::cyclic(8).unwrap();
        let a = FiniteGroup::direct_product(&c8, &c8).unwrap();
        let phi = characteristic_structure(&a, Characteristic::Frattini).unwrap();
        assert_eq!(phi.len(), 16);
        // lattice route agrees
        let maxes = crate::subgroup::maximal_subgroups(&a).unwrap();
        let mut inter = a.whole();
        for m in &maxes.subgroups {
            inter = inter.intersection(m);
        }
        assert_eq!(inter, phi);
    }

    #[test]
    fn socle_of_c12() {
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let s = characteristic_structure(&c12, Characteristic::Socle).unwrap();
        assert_eq!(s.to_vec(), vec![0, 2, 4, 6, 8, 10]);
    }

    #[test]
    fn chief_series_examples() {
        let factors = |g: &FiniteGroup| -> Vec<usize> {
            let s = chief_series(g, &g.whole());
            s.windows(2).map(|w| w[1].len() / w[0].len()).collect()
        };
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(factors(&c6), vec![2, 3]);
        let q8 = corpus::generalized_quaternion(8).unwrap();
        assert_eq!(factors(&q8), vec![2, 2, 2]);
        let a4 = corpus::alternating(4).unwrap();
        assert_eq!(factors(&a4), vec![4, 3]);
    }

    #[test]
    fn radicals_and_fitting() {
        let a5 = corpus::alternating(5).unwrap();
        assert_eq!(soluble_radical(&a5, &a5.whole()).len(), 1);
        assert!(!is_soluble(&a5, &a5.whole()));
        let s4 = corpus::symmetric(4).unwrap();
        assert_eq!(soluble_radical(&s4, &s4.whole()).len(), 24);
        assert_eq!(fitting_subgroup(&s4, &s4.whole()).len(), 4);
        assert_eq!(derived_length(&s4, &s4.whole()), Some(3));
        assert_eq!(sylow(&s4, &s4.whole(), 2).len(), 8);
        assert!(!is_nilpotent(&s4, &s4.whole()));
        assert!(!is_supersoluble(&s4, &s4.whole()));
        assert!(!is_supersoluble_by_maximals(&s4).unwrap());
        let s3 = corpus::symmetric(3).unwrap();
        assert!(is_supersoluble(&s3, &s3.whole()));
    }

    #[test]
    fn normal_subgroups_of_s4() {
        let s4 = corpus::symmetric(4).unwrap();
        let ns = normal_subgroups(&s4, &s4.whole()).unwrap();
        let orders: Vec<usize> = ns.iter().map(|n| n.len()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        assert_eq!(minimal_normal_subgroups(&s4, &s4.whole()).len(), 1);
    }
}
