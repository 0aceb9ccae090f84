use std::collections::{HashMap, VecDeque};

use super::{order_cap, FiniteGroup, Provenance};
use crate::error::{cap_exceeded, GroupError, Result};

/// A permutation of `0..degree` in image form: `p[i]` is the image of `i`.
/// Products compose left to right: `(p * q)[i] = q[p[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn then(&self, q: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| q.0[i as usize]).collect())
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        for &i in &self.0 {
            let i = i as usize;
            if i >= seen.len() || seen[i] {
                return false;
            }
            seen[i] = true;
        }
        true
    }
}

/// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    let mut img: Vec<u32> = (0..degree as u32).collect();
    let mut seen = vec![false; degree];
    let mut rest = text.trim();
    while !rest.is_empty() {
        if !rest.starts_with('(') {
            return Err(GroupError::Parse(format!("expected '(' in {text:?}")));
        }
        let close = rest
            .find(')')
            .ok_or_else(|| GroupError::Parse(format!("unclosed cycle in {text:?}")))?;
        let body = &rest[1..close];
        let pts: Vec<usize> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| GroupError::Parse(format!("bad point {s:?} in {text:?}")))
            })
            .collect::<Result<_>>()?;
        for &p in &pts {
            if p >= degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "point {p} outside degree {degree}"
                )));
            }
            if seen[p] {
                return Err(GroupError::InvalidPermutation(format!(
                    "point {p} repeated in {text:?}"
                )));
            }
            seen[p] = true;
        }
        for k in 0..pts.len() {
            img[pts[k]] = pts[(k + 1) % pts.len()] as u32;
        }
        rest = rest[close + 1..].trim_start();
    }
    Ok(Permutation(img))
}

pub fn format_cycles(p: &Permutation) -> String {
    let mut seen = vec![false; p.degree()];
    let mut out = String::new();
    for start in 0..p.degree() {
        if seen[start] || p.0[start] as usize == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        let mut first = true;
        while !seen[i] {
            seen[i] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&i.to_string());
            first = false;
            i = p.0[i] as usize;
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

impl FiniteGroup {
    /// Closes `gens` under composition. Elements are numbered in
    /// breadth-first order from the identity, applying generators in input
    /// order, so the indexing is reproducible.
    pub fn from_permutation_generators(gens: &[Permutation], degree: usize) -> Result<FiniteGroup> {
        Self::from_permutation_generators_capped(gens, degree, order_cap())
    }

    pub fn from_permutation_generators_capped(
        gens: &[Permutation],
        degree: usize,
        cap: usize,
    ) -> Result<FiniteGroup> {
        for (k, g) in gens.iter().enumerate() {
            if g.degree() != degree || !g.is_bijection() {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator {k} is not a bijection of 0..{degree}"
                )));
            }
        }
        let id = Permutation::identity(degree);
        let mut lookup: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut perms: Vec<u32> = Vec::new();
        lookup.insert(id.0.clone(), 0);
        perms.extend_from_slice(&id.0);
        let mut queue = VecDeque::from([0usize]);
        let mut gen_idx = Vec::with_capacity(gens.len());
        // generator indices are found during the BFS; pre-seed their slots
        let mut pending: Vec<Option<u32>> = vec![None; gens.len()];
        while let Some(e) = queue.pop_front() {
            let pe = Permutation(perms[e * degree..(e + 1) * degree].to_vec());
            for g in gens {
                let c = pe.then(g);
                if !lookup.contains_key(&c.0) {
                    let idx = lookup.len();
                    if idx >= cap {
                        return Err(cap_exceeded("permutation group closure", cap));
                    }
                    lookup.insert(c.0.clone(), idx as u32);
                    perms.extend_from_slice(&c.0);
                    queue.push_back(idx);
                }
            }
        }
        for (k, g) in gens.iter().enumerate() {
            pending[k] = lookup.get(&g.0).copied();
        }
        for p in pending.into_iter().flatten() {
            if p != 0 && !gen_idx.contains(&p) {
                gen_idx.push(p);
            }
        }
        let desc = format!(
            "permutation group of degree {degree} on {} generators",
            gens.len()
        );
        FiniteGroup::from_perm_data(degree, perms, lookup, gen_idx, Provenance::new(desc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation_round_trip() {
        let p = parse_cycles("(0 1 2)(3 4)", 6).unwrap();
        assert_eq!(p.0, vec![1, 2, 0, 4, 3, 5]);
        assert_eq!(format_cycles(&p), "(0 1 2)(3 4)");
        assert_eq!(format_cycles(&Permutation::identity(3)), "()");
        assert!(parse_cycles("(0 0)", 3).is_err());
        assert!(parse_cycles("(0 5)", 3).is_err());
    }

    #[test]
    fn cyclic_closure() {
        let g = FiniteGroup::from_permutation_generators(&[parse_cycles("(0 1 2)", 3).unwrap()], 3)
            .unwrap();
        assert_eq!(g.order(), 3);
        assert!((0..3).all(|x| 3 % g.elem_order(x) == 0));
    }

    #[test]
    fn sym3_order_profile() {
        let gens = [
            parse_cycles("(0 1)", 3).unwrap(),
            parse_cycles("(0 1 2)", 3).unwrap(),
        ];
        let g = FiniteGroup::from_permutation_generators(&gens, 3).unwrap();
        assert_eq!(g.order(), 6);
        let mut orders: Vec<usize> = (0..6).map(|x| g.elem_order(x)).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 3]);
        g.check_invariants().unwrap();
        // BFS indexing: the generators come right after the identity
        assert_eq!(g.as_permutation(1), None); // tabled groups drop perm data
        assert_eq!(g.generators(), vec![1, 2]);
    }

    #[test]
    fn non_bijection_rejected() {
        let bad = Permutation(vec![0, 0, 1]);
        assert!(matches!(
            FiniteGroup::from_permutation_generators(&[bad], 3),
            Err(GroupError::InvalidPermutation(_))
        ));
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [
            parse_cycles("(0 1)", 5).unwrap(),
            parse_cycles("(0 1 2 3 4)", 5).unwrap(),
        ];
        assert!(matches!(
            FiniteGroup::from_permutation_generators_capped(&gens, 5, 100),
            Err(GroupError::CapExceeded { .. })
        ));
    }
}
