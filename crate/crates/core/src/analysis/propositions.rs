use super::is_closed_subgroup;
use crate::class::{prime_profile, ClassKind, ClassSpec};
use crate::elemset::ElementSet;
use crate::error::Result;
use crate::graph::{isolated_set, MembershipOracle};
use crate::group::{centralizer, conjugacy_classes, quotient, FiniteGroup};
use crate::subgroup::{
    characteristic_structure, closure, extend, gens_of, join, minimal_normal_subgroups, primes_of,
    Characteristic,
};

/// Both sides of `I_C(G) = prod O_p(Z(G))` over `p` in `pi~(G)`. The left
/// side comes straight from the definition: `x` is kept iff `<x, y>` is
/// cyclic for every `y`.
pub fn icyclic_sides(g: &FiniteGroup) -> Result<(ElementSet, ElementSet)> {
    let n = g.order();
    let cyclic = |h: &ElementSet| h.iter().any(|z| g.elem_order(z) == h.len());
    let mut lhs = ElementSet::empty(n);
    for x in 0..n {
        let cx = closure(g, &[x]);
        if (0..n)
            .filter(|&y| !cx.contains(y))
            .all(|y| cyclic(&extend(g, &cx, &[y])))
        {
            lhs.insert(x);
        }
    }
    let mut rhs = g.trivial_subgroup();
    for &p in &prime_profile(g).pi_tilde {
        let op = characteristic_structure(g, Characteristic::OpOfCenter(p))?;
        rhs = join(g, &rhs, &op);
    }
    Ok((lhs, rhs))
}

pub fn verify_icyclic_formula(g: &FiniteGroup) -> Result<bool> {
    let (lhs, rhs) = icyclic_sides(g)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DBranch {
    /// Some element order has three or more prime divisors; `checked` class
    /// representatives of such elements were tested against every vertex.
    Universal { checked: usize },
    /// Every element order has at most two prime divisors.
    Subgroup { isolated: usize },
}

/// `G = M H` with `M` a minimal normal elementary abelian `p`-subgroup,
/// `C_G(M) = M`, `p` coprime to `|H|` and `|pi(H)| = 2`. Then `I_D(G)` is
/// predicted to be `M` when `H` has no element of order `p1 p2`, else `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dichotomy {
    pub p: usize,
    pub m_order: usize,
    pub has_mixed_element: bool,
    pub predicted: usize,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct DClassRow {
    pub name: String,
    pub order: usize,
    pub branch: DBranch,
    pub holds: bool,
    pub dichotomy: Option<Dichotomy>,
}

#[derive(Clone, Debug)]
pub struct DClassReport {
    pub rows: Vec<DClassRow>,
}

impl DClassReport {
    pub fn passes(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.holds && r.dichotomy.as_ref().map_or(true, |d| d.holds))
    }

    pub fn failures(&self) -> Vec<String> {
        self.rows
            .iter()
            .filter(|r| !r.holds || r.dichotomy.as_ref().is_some_and(|d| !d.holds))
            .map(|r| r.name.clone())
            .collect()
    }
}

fn is_elementary_abelian_p(g: &FiniteGroup, m: &ElementSet) -> Option<usize> {
    let ps = primes_of(m.len());
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let gens = gens_of(g, m);
    let abelian = gens.iter().all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    (abelian && m.iter().all(|x| x == 0 || g.elem_order(x) == p)).then_some(p)
}

fn dichotomy(g: &FiniteGroup, isolated: &ElementSet) -> Result<Option<Dichotomy>> {
    let n = g.order();
    for m in minimal_normal_subgroups(g, &g.whole()) {
        let Some(p) = is_elementary_abelian_p(g, &m) else {
            continue;
        };
        let rest = n / m.len();
        let pis = primes_of(rest);
        if rest % p == 0 || pis.len() != 2 {
            continue;
        }
        if centralizer(g, &gens_of(g, &m)) != m {
            continue;
        }
        let mut mn = m.clone();
        mn.is_normal = Some(true);
        mn.is_subgroup = Some(true);
        let (q, _) = quotient(g, &mn)?;
        let mixed = pis[0] * pis[1];
        let has_mixed_element = (0..q.order()).any(|x| q.elem_order(x) % mixed == 0);
        let predicted = if has_mixed_element { g.trivial_subgroup() } else { m.clone() };
        return Ok(Some(Dichotomy {
            p,
            m_order: m.len(),
            has_mixed_element,
            predicted: predicted.len(),
            holds: *isolated == predicted,
        }));
    }
    Ok(None)
}

/// Checks, per group: elements with three or more prime divisors are
/// adjacent to every other element; otherwise `I_D(G)` is a subgroup, and
/// on groups of the faithful shape of [`Dichotomy`] it is `M` or `1` as
/// predicted.
pub fn verify_d_class_proposition(corpus: &[(String, FiniteGroup)]) -> Result<DClassReport> {
    let d = ClassSpec::new(ClassKind::TwoPrimes);
    let mut rows = Vec::new();
    for (name, g) in corpus {
        let n = g.order();
        let big: Vec<usize> = conjugacy_classes(g)
            .reps
            .into_iter()
            .filter(|&x| primes_of(g.elem_order(x)).len() >= 3)
            .collect();
        let row = if !big.is_empty() {
            let mut oracle = MembershipOracle::new(g, &d);
            let mut holds = true;
            'outer: for &x in &big {
                for y in (0..n).filter(|&y| y != x) {
                    if !oracle.adjacent(x, y)? {
                        holds = false;
                        break 'outer;
                    }
                }
            }
            DClassRow {
                name: name.clone(),
                order: n,
                branch: DBranch::Universal { checked: big.len() },
                holds,
                dichotomy: None,
            }
        } else {
            let i = isolated_set(g, &d)?;
            DClassRow {
                name: name.clone(),
                order: n,
                branch: DBranch::Subgroup { isolated: i.len() },
                holds: is_closed_subgroup(g, &i),
                dichotomy: dichotomy(g, &i)?,
            }
        };
        rows.push(row);
    }
    Ok(DClassReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, FamilySpec};

    fn named(s: &str) -> (String, FiniteGroup) {
        (s.to_string(), FamilySpec::parse(s).unwrap().construct().unwrap())
    }

    #[test]
    fn icyclic_examples() {
        let q8 = corpus::generalized_quaternion(8).unwrap();
        let (l, r) = icyclic_sides(&q8).unwrap();
        assert_eq!(l, r);
        assert_eq!(l.len(), 2);
        let v4 = corpus::elementary_abelian(2, 2).unwrap();
        let (l, r) = icyclic_sides(&v4).unwrap();
        assert_eq!((l.len(), r.len()), (1, 1));
        let c12 = FiniteGroup::cyclic(12).unwrap();
        let (l, r) = icyclic_sides(&c12).unwrap();
        assert_eq!((l.len(), r.len()), (12, 12));
    }

    #[test]
    fn icyclic_left_side_matches_graph() {
        for name in ["symmetric(4)", "generalized_quaternion(16)", "product(generalized_quaternion(8),cyclic(3))"] {
            let (_, g) = named(name);
            let (l, _) = icyclic_sides(&g).unwrap();
            assert_eq!(l, isolated_set(&g, &ClassSpec::cyclic()).unwrap(), "{name}");
        }
    }

    /// `I_D(G)` straight from the definition, by prime counts of `<x, y>`.
    fn brute_id(g: &FiniteGroup) -> ElementSet {
        let n = g.order();
        ElementSet::from_indices(
            n,
            (0..n).filter(|&x| {
                (0..n).all(|y| y == x || primes_of(closure(g, &[x, y]).len()).len() <= 2)
            }),
        )
    }

    #[test]
    fn d_class_examples() {
        let corpus = vec![
            named("cyclic(30)"),
            named("symmetric(3)"),
            named("product(alternating(4),cyclic(5))"),
            named("s3_plane(5)"),
            named("frobenius(7,6)"),
        ];
        let r = verify_d_class_proposition(&corpus).unwrap();
        assert!(r.passes(), "{:?}", r.failures());
        assert_eq!(r.rows[0].branch, DBranch::Universal { checked: 8 });
        assert_eq!(r.rows[1].branch, DBranch::Subgroup { isolated: 6 });
        // the central C5 stays isolated; the V4 there is not faithful, so no
        // dichotomy is claimed
        assert_eq!(r.rows[2].branch, DBranch::Subgroup { isolated: 5 });
        assert!(r.rows[2].dichotomy.is_none());
        let d = r.rows[3].dichotomy.as_ref().unwrap();
        assert_eq!((d.p, d.m_order, d.has_mixed_element, d.predicted), (5, 25, false, 25));
        let d = r.rows[4].dichotomy.as_ref().unwrap();
        assert_eq!((d.p, d.has_mixed_element, d.predicted), (7, true, 1));
        for (name, g) in &corpus[1..] {
            let brute = brute_id(g);
            let row = r.rows.iter().find(|x| &x.name == name).unwrap();
            assert_eq!(row.branch, DBranch::Subgroup { isolated: brute.len() }, "{name}");
        }
    }
}
