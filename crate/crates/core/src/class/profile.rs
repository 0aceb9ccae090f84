use std::collections::{BTreeSet, HashSet};

use super::ClassSpec;
use crate::elemset::ElementSet;
use crate::error::{GroupError, Result};
use crate::group::FiniteGroup;
use crate::subgroup::{classes_in, closure, extend, primes_of, sylow};

/// `pi(G)`, the primes whose Sylow subgroup is cyclic or generalized
/// quaternion, and the prime divisors of each element order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeProfile {
    pub pi: BTreeSet<usize>,
    pub pi_tilde: BTreeSet<usize>,
    pub per_element: Vec<Vec<usize>>,
}

/// Generalized quaternion: a non-cyclic 2-group with one involution.
fn is_generalized_quaternion(g: &FiniteGroup, p: &ElementSet) -> bool {
    let n = p.len();
    n.is_power_of_two()
        && n >= 8
        && !p.iter().any(|x| g.elem_order(x) == n)
        && p.iter().filter(|&x| g.elem_order(x) == 2).count() == 1
}

pub fn prime_profile(g: &FiniteGroup) -> PrimeProfile {
    let w = g.whole();
    let pi: BTreeSet<usize> = primes_of(g.order()).into_iter().collect();
    let pi_tilde = pi
        .iter()
        .copied()
        .filter(|&p| {
            let s = sylow(g, &w, p);
            s.iter().any(|x| g.elem_order(x) == s.len()) || (p == 2 && is_generalized_quaternion(g, &s))
        })
        .collect();
    let per_element = (0..g.order()).map(|x| primes_of(g.elem_order(x))).collect();
    PrimeProfile {
        pi,
        pi_tilde,
        per_element,
    }
}

/// `G` in `F_2`.
pub fn f2_member(spec: &ClassSpec, g: &FiniteGroup) -> Result<bool> {
    f2_member_in(spec, g, &g.whole())
}

/// Every `<x, y>` with `x, y` in `h` lies in `spec`; `x` runs over class
/// representatives of `h` only.
pub fn f2_member_in(spec: &ClassSpec, g: &FiniteGroup, h: &ElementSet) -> Result<bool> {
    if !spec.closure.subgroup_closed {
        return Err(GroupError::Precondition(format!(
            "F_2 needs a subgroup-closed class, {spec} is not declared so"
        )));
    }
    let mut checked: HashSet<ElementSet> = HashSet::new();
    for (x, _) in classes_in(g, h) {
        let cx = closure(g, &[x]);
        for y in h.iter() {
            let s = if cx.contains(y) { cx.clone() } else { extend(g, &cx, &[y]) };
            if checked.contains(&s) {
                continue;
            }
            if !spec.contains(g, &s)? {
                return Ok(false);
            }
            checked.insert(s);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct TwoRecognizabilityRow {
    pub name: String,
    pub order: usize,
    pub member: bool,
    pub f2_member: bool,
}

#[derive(Clone, Debug)]
pub struct TwoRecognizabilityReport {
    pub spec: String,
    pub rows: Vec<TwoRecognizabilityRow>,
    /// Names of groups in `F_2` but not in `F`.
    pub witnesses: Vec<String>,
}

pub fn two_recognizability_report(
    spec: &ClassSpec,
    corpus: &[(String, FiniteGroup)],
) -> Result<TwoRecognizabilityReport> {
    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    for (name, g) in corpus {
        let member = spec.is_member(g)?;
        let f2 = f2_member(spec, g)?;
        if f2 && !member {
            witnesses.push(name.clone());
        }
        rows.push(TwoRecognizabilityRow {
            name: name.clone(),
            order: g.order(),
            member,
            f2_member: f2,
        });
    }
    Ok(TwoRecognizabilityReport {
        spec: spec.to_string(),
        rows,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn profiles() {
        let q8 = corpus::generalized_quaternion(8).unwrap();
        let p = prime_profile(&q8);
        assert_eq!(p.pi, BTreeSet::from([2]));
        assert_eq!(p.pi_tilde, BTreeSet::from([2]));
        let v4 = corpus::elementary_abelian(2, 2).unwrap();
        assert!(prime_profile(&v4).pi_tilde.is_empty());
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let p = prime_profile(&c6);
        assert_eq!(p.pi_tilde, BTreeSet::from([2, 3]));
        assert_eq!(p.per_element[1], vec![2, 3]);
        assert!(p.per_element.iter().flatten().all(|q| p.pi.contains(q)));
    }

    #[test]
    fn metabelian_witness() {
        let g = corpus::sylow2_sym8().unwrap();
        let m = ClassSpec::parse("metabelian").unwrap();
        assert!(!m.is_member(&g).unwrap());
        assert!(f2_member(&m, &g).unwrap());
        let v4 = corpus::elementary_abelian(2, 2).unwrap();
        assert!(!f2_member(&ClassSpec::cyclic(), &v4).unwrap());
    }

    #[test]
    fn report_flags_witness() {
        let m = ClassSpec::parse("metabelian").unwrap();
        let corpus = vec![
            ("symmetric(4)".to_string(), corpus::symmetric(4).unwrap()),
            ("sylow2_sym8".to_string(), corpus::sylow2_sym8().unwrap()),
        ];
        let r = two_recognizability_report(&m, &corpus).unwrap();
        assert_eq!(r.witnesses, vec!["sylow2_sym8".to_string()]);
    }
}
