//! Shape checks for a disconnected semiregular group: the quotient
//! `V^t ⋊ H`, the family of submodules `W`, and where the edges live.

use std::collections::BTreeSet;

use super::{is_closed_subgroup, semiregular_with, subgroup_reps, Verdict};
use crate::class::ClassSpec;
use crate::elemset::ElementSet;
use crate::error::{GroupError, Result};
use crate::graph::{build_nonf_graph, isolated_set, MembershipOracle, Mode, PairOrbits};
use crate::group::{order_cap, quotient, FiniteGroup, Homomorphism};
use crate::linalg;
use crate::subgroup::{
    all_subgroups, closure, conjugate_set, gens_of, greedy_generators, is_soluble, join, min_generators,
    minimal_normal_subgroups, normal_subgroups, primes_of, standalone, sylow, LATTICE_CAP,
};

/// Candidate maps tried by the brute-force module routines.
const MAP_SEARCH_LIMIT: usize = 1 << 22;
const W_COMBINATION_LIMIT: usize = 200_000;

fn mismatch(step: &str, detail: impl Into<String>) -> GroupError {
    GroupError::ShapeMismatch {
        step: step.to_string(),
        detail: detail.into(),
    }
}

/// `G/N = (V_1 x ... x V_t) ⋊ H` with the `V_i` isomorphic irreducible
/// `H`-modules over `F_p`.
#[derive(Clone, Debug)]
pub struct ModuleDecomposition {
    pub quotient: FiniteGroup,
    pub socle_components: Vec<ElementSet>,
    pub complement: ElementSet,
    pub t: usize,
    /// Dimension of `V` over `End_H(V)`.
    pub endo_dim: usize,
    /// The `H`-submodules of the socle isomorphic to `V^(t-1)`.
    pub w_family: Vec<ElementSet>,
    pub p: usize,
    /// Dimension of `V` over `F_p`.
    pub dim: usize,
    /// `H` acts faithfully on `V`.
    pub faithful: bool,
}

impl ModuleDecomposition {
    /// Every `W` is an `H`-invariant subgroup of order `|V|^(t-1)` meeting
    /// each `V_i` it does not contain trivially.
    pub fn w_family_is_sound(&self) -> bool {
        let q = &self.quotient;
        let vlen = self.socle_components[0].len();
        let hgens = greedy_generators(q, &self.complement);
        self.w_family.iter().all(|w| {
            is_closed_subgroup(q, w)
                && w.len() == vlen.pow(self.t as u32 - 1)
                && hgens.iter().all(|&h| w.iter().all(|x| w.contains(q.conj(h, x))))
                && self
                    .socle_components
                    .iter()
                    .filter(|v| !v.is_subset(w))
                    .all(|v| v.intersection(w).len() == 1)
        })
    }

    pub fn socle(&self) -> ElementSet {
        let q = &self.quotient;
        self.socle_components
            .iter()
            .fold(q.trivial_subgroup(), |acc, v| join(q, &acc, v))
    }
}

/// Coordinates on an elementary abelian subgroup, in the encoding of
/// [`linalg::encode`].
struct Coords {
    p: usize,
    basis: Vec<usize>,
    elems: Vec<usize>,
    code: Vec<u32>,
}

impl Coords {
    fn new(q: &FiniteGroup, v: &ElementSet, p: usize) -> Result<Coords> {
        let basis = greedy_generators(q, v);
        if p.pow(basis.len() as u32) != v.len() {
            return Err(mismatch("module", format!("subgroup of order {} is not elementary abelian", v.len())));
        }
        let mut elems = Vec::with_capacity(v.len());
        let mut code = vec![u32::MAX; q.order()];
        for c in 0..v.len() {
            let digits = linalg::decode(c, p as u32, basis.len());
            let x = basis
                .iter()
                .zip(&digits)
                .fold(0, |acc, (&b, &k)| q.mul(acc, q.pow(b, k as i64)));
            code[x] = c as u32;
            elems.push(x);
        }
        Ok(Coords { p, basis, elems, code })
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Image of `x` under the linear map sending `basis[i]` to `images[i]`.
    fn apply(&self, q: &FiniteGroup, images: &[usize], x: usize) -> usize {
        let digits = linalg::decode(self.code[x] as usize, self.p as u32, self.dim());
        images
            .iter()
            .zip(&digits)
            .fold(0, |acc, (&b, &k)| q.mul(acc, q.pow(b, k as i64)))
    }
}

/// Runs `f` on every `H`-equivariant linear map `V -> U` (as basis images)
/// until it returns true.
fn equivariant_maps(
    q: &FiniteGroup,
    hgens: &[usize],
    v: &Coords,
    u: &Coords,
    mut f: impl FnMut(&[usize]) -> bool,
) -> Result<()> {
    let d = v.dim();
    let total = u.elems.len().checked_pow(d as u32).filter(|&t| t <= MAP_SEARCH_LIMIT);
    let Some(total) = total else {
        return Err(crate::error::cap_exceeded("equivariant map search", MAP_SEARCH_LIMIT));
    };
    let mut images = vec![0; d];
    for code in 0..total {
        let mut c = code;
        for img in images.iter_mut() {
            *img = u.elems[c % u.elems.len()];
            c /= u.elems.len();
        }
        let equivariant = hgens.iter().all(|&h| {
            v.basis
                .iter()
                .zip(&images)
                .all(|(&b, &fb)| v.apply(q, &images, q.conj(h, b)) == q.conj(h, fb))
        });
        if equivariant && f(&images) {
            break;
        }
    }
    Ok(())
}

fn h_isomorphic(q: &FiniteGroup, hgens: &[usize], v: &Coords, u: &Coords) -> Result<bool> {
    if v.elems.len() != u.elems.len() {
        return Ok(false);
    }
    let mut found = false;
    equivariant_maps(q, hgens, v, u, |images| {
        found = v.elems.iter().skip(1).all(|&x| v.apply(q, images, x) != 0);
        found
    })?;
    Ok(found)
}

/// Complement to the normal subgroup `s` in `q`: a Sylow subgroup when the
/// index is a prime power coprime to `|s|`, otherwise from the lattice.
fn complement(q: &FiniteGroup, s: &ElementSet) -> Result<ElementSet> {
    let idx = q.order() / s.len();
    let w = q.whole();
    let ps = primes_of(idx);
    if ps.len() == 1 && s.len() % ps[0] != 0 {
        return Ok(sylow(q, &w, ps[0]));
    }
    if idx == 1 {
        return Ok(q.trivial_subgroup());
    }
    if q.order() > LATTICE_CAP {
        return Err(crate::error::cap_exceeded("complement search", LATTICE_CAP));
    }
    all_subgroups(q, false)?
        .subgroups
        .into_iter()
        .find(|h| h.len() == idx && h.intersection(s).len() == 1)
        .ok_or_else(|| mismatch("complement", "the socle has no complement"))
}

/// Splits `q` as `V^t ⋊ H` with `V^t` its socle. Fails with
/// `ShapeMismatch` when the socle is not elementary abelian, has no
/// complement, or is not a sum of isomorphic modules.
pub fn module_decomposition(q: &FiniteGroup) -> Result<ModuleDecomposition> {
    let mins = minimal_normal_subgroups(q, &q.whole());
    let socle = mins.iter().fold(q.trivial_subgroup(), |acc, m| join(q, &acc, m));
    let ps = primes_of(socle.len());
    if ps.len() != 1 {
        return Err(mismatch("socle", format!("socle of order {} is not a p-group", socle.len())));
    }
    let p = ps[0];
    let sg = gens_of(q, &socle);
    let abelian = sg.iter().all(|&a| sg.iter().all(|&b| q.mul(a, b) == q.mul(b, a)));
    if !abelian || socle.iter().any(|x| x != 0 && q.elem_order(x) != p) {
        return Err(mismatch("socle", "socle is not elementary abelian"));
    }
    let h = complement(q, &socle)?;
    let hgens = greedy_generators(q, &h);

    let v1 = Coords::new(q, &mins[0], p)?;
    for m in &mins[1..] {
        if !h_isomorphic(q, &hgens, &v1, &Coords::new(q, m, p)?)? {
            return Err(mismatch("module", "minimal normal subgroups are not all H-isomorphic"));
        }
    }
    let mut components = vec![mins[0].clone()];
    let mut span = mins[0].clone();
    for m in &mins[1..] {
        if span.len() == socle.len() {
            break;
        }
        if !m.is_subset(&span) {
            span = join(q, &span, m);
            components.push(m.clone());
        }
    }
    let t = components.len();

    let faithful = h.iter().all(|x| x == 0 || v1.basis.iter().any(|&b| q.conj(x, b) != b));

    let mut endo = 0usize;
    equivariant_maps(q, &hgens, &v1, &v1, |_| {
        endo += 1;
        false
    })?;
    let e = (endo as f64).log(p as f64).round() as u32;
    if p.pow(e) != endo || e == 0 || v1.dim() % e as usize != 0 {
        return Err(mismatch("module", format!("End_H(V) has {endo} elements")));
    }
    let endo_dim = v1.dim() / e as usize;

    let w_family = w_family(q, &mins, mins[0].len().pow(t as u32 - 1), t - 1)?;
    Ok(ModuleDecomposition {
        quotient: q.clone(),
        socle_components: components,
        complement: h,
        t,
        endo_dim,
        w_family,
        p,
        dim: v1.dim(),
        faithful,
    })
}

/// Joins of `k` minimal normal subgroups with the given order. In a sum of
/// isomorphic irreducibles these are exactly the submodules isomorphic to
/// `V^k`.
fn w_family(q: &FiniteGroup, mins: &[ElementSet], order: usize, k: usize) -> Result<Vec<ElementSet>> {
    let mut out = BTreeSet::new();
    let mut combos = 0usize;
    let mut stack: Vec<(usize, ElementSet, usize)> = vec![(0, q.trivial_subgroup(), 0)];
    while let Some((start, cur, depth)) = stack.pop() {
        if depth == k {
            if cur.len() == order {
                out.insert(cur);
            }
            continue;
        }
        for i in start..mins.len() {
            if mins[i].is_subset(&cur) {
                continue;
            }
            combos += 1;
            if combos > W_COMBINATION_LIMIT {
                return Err(crate::error::cap_exceeded("submodule enumeration", W_COMBINATION_LIMIT));
            }
            stack.push((i + 1, join(q, &cur, &mins[i]), depth + 1));
        }
    }
    Ok(out.into_iter().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Precheck {
    Verified,
    /// Could not be decided within the caps.
    Unverified(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Disjunct {
    /// Every edge lies in a conjugate of `M`.
    InConjugatesOfM,
    /// `H` is cyclic of prime order and the edges outside the conjugates of
    /// `M` lie in `pi^-1(V_1 x ... x V_t)`.
    CyclicPrimeWithNormal,
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub prechecks: Vec<(String, Precheck)>,
    pub n: ElementSet,
    pub quotient_d: usize,
    pub decomposition: ModuleDecomposition,
    /// `pi^-1(W ⋊ H)` for each `W`, and whether it lies in `F_2`.
    pub m_candidates: Vec<(ElementSet, bool)>,
    /// The unique `pi^-1(W ⋊ H)` outside `F_2`.
    pub m: ElementSet,
    /// `pi^-1(V_1 x ... x V_t)`.
    pub normal_part: ElementSet,
    pub h_cyclic_prime: bool,
    /// Adjacent pair orbits inside a conjugate of `M`.
    pub edges_in_m: usize,
    /// Adjacent pair orbits in the normal part only.
    pub edges_in_normal: usize,
    /// Pair orbits skipped as lying in a conjugate of an `F_2` member.
    pub skipped_f2: usize,
    pub pairs_tested: usize,
    pub disjunct: Disjunct,
}

fn precondition(msg: impl Into<String>) -> GroupError {
    GroupError::Precondition(msg.into())
}

/// All proper subgroups have a connected graph, on one subgroup per class.
fn proper_subgroups_connected(g: &FiniteGroup, spec: &ClassSpec) -> Result<Precheck> {
    let Some(reps) = subgroup_reps(g)? else {
        return Ok(Precheck::Unverified(format!("subgroup lattice beyond cap {LATTICE_CAP}")));
    };
    for h in reps.iter().filter(|h| h.len() < g.order()) {
        let (sub, _) = standalone(g, h);
        let count = build_nonf_graph(&sub, spec, Mode::OrbitReduced)?.component_count;
        if count > 1 {
            return Err(precondition(format!(
                "a proper subgroup of order {} has {count} components",
                h.len()
            )));
        }
    }
    Ok(Precheck::Verified)
}

/// Largest normal `N` with `d(G/N) = 3` and `d(G/N') <= 2` for every normal
/// `N' > N`.
fn find_n(g: &FiniteGroup) -> Result<Option<(ElementSet, FiniteGroup, Homomorphism)>> {
    let mut normals = normal_subgroups(g, &g.whole())?;
    normals.sort_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    let mut wide: Vec<ElementSet> = Vec::new();
    for n in normals.into_iter().filter(|n| n.len() < g.order()) {
        if wide.iter().any(|w| n.is_subset(w)) {
            continue;
        }
        let (q, hom) = quotient(g, &n)?;
        let d = min_generators(&q);
        if d == 3 {
            return Ok(Some((n, q, hom)));
        }
        if d > 3 {
            wide.push(n);
        }
    }
    Ok(None)
}

/// Checks the predicted shape of a disconnected semiregular group all of
/// whose proper subgroups have connected graphs. Preconditions that fail
/// give `Precondition`; those out of reach are listed as unverified. A
/// conclusion that fails gives `ShapeMismatch` naming the step.
pub fn check_counterexample_structure(g: &FiniteGroup, spec: &ClassSpec) -> Result<StructureReport> {
    if g.order() > order_cap() {
        return Err(crate::error::cap_exceeded("structure check", order_cap()));
    }
    let graph = build_nonf_graph(g, spec, Mode::OrbitReduced)?;
    if graph.component_count < 2 {
        return Err(precondition(format!("the graph has {} components", graph.component_count)));
    }
    let mut prechecks = vec![("disconnected".to_string(), Precheck::Verified)];
    let semi = match semiregular_with(g, spec, Some(&graph.isolated))? {
        Verdict::Yes { .. } => Precheck::Verified,
        Verdict::Partial { reason, .. } => Precheck::Unverified(reason),
        Verdict::No { witness } => {
            return Err(precondition(format!(
                "not semiregular: subgroup of order {} has a non-subgroup isolated set",
                witness.x.len()
            )))
        }
    };
    prechecks.push(("semiregular".into(), semi));
    prechecks.push(("proper-subgroups-connected".into(), proper_subgroups_connected(g, spec)?));

    if !is_soluble(g, &g.whole()) {
        return Err(mismatch("soluble", "the group is not soluble"));
    }
    let Some((n, q, hom)) = find_n(g)? else {
        return Err(mismatch("quotient", "no normal N with d(G/N) = 3 minimal over larger normals"));
    };

    let dec = module_decomposition(&q)?;
    if !dec.faithful {
        return Err(mismatch("module", "H does not act faithfully on V"));
    }
    if dec.t != 1 + dec.endo_dim {
        return Err(mismatch("module", format!("t = {} but 1 + endo_dim = {}", dec.t, 1 + dec.endo_dim)));
    }

    let mut m_candidates = Vec::new();
    for w in &dec.w_family {
        let wh = join(&q, w, &dec.complement);
        let mut m = hom.preimage(&wh);
        m.set_generators(&gens_of(g, &m));
        let (sub, _) = standalone(g, &m);
        let in_f2 = isolated_set(&sub, spec)?.len() == sub.order();
        m_candidates.push((m, in_f2));
    }
    let outside: Vec<usize> = (0..m_candidates.len()).filter(|&i| !m_candidates[i].1).collect();
    if outside.len() != 1 {
        return Err(mismatch(
            "unique-w",
            format!("{} of {} candidates lie outside F_2", outside.len(), m_candidates.len()),
        ));
    }
    let m_idx = outside[0];
    let m = m_candidates[m_idx].0.clone();

    // conjugates in the quotient of M and of the other candidates
    let conjugates = |s: &ElementSet| -> Vec<ElementSet> {
        let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
        for x in 0..q.order() {
            seen.insert(conjugate_set(&q, s, x));
        }
        seen.into_iter().collect()
    };
    let m_bar = join(&q, &dec.w_family[m_idx], &dec.complement);
    let m_conj = conjugates(&m_bar);
    let f2_conj: Vec<ElementSet> = (0..dec.w_family.len())
        .filter(|&i| i != m_idx)
        .flat_map(|i| conjugates(&join(&q, &dec.w_family[i], &dec.complement)))
        .collect();
    let socle = dec.socle();
    let normal_part = hom.preimage(&socle);
    let h_cyclic_prime = primes_of(dec.complement.len()).len() == 1
        && dec.complement.len() == primes_of(dec.complement.len())[0];

    let orbits = PairOrbits::new(g);
    let mut oracle = MembershipOracle::new(g, spec);
    let (mut edges_in_m, mut edges_in_normal, mut skipped_f2, mut tested) = (0, 0, 0, 0);
    for (ci, &x) in orbits.class_reps.iter().enumerate() {
        for &y in &orbits.partners[ci] {
            let y = y as usize;
            if y == x {
                continue;
            }
            let k = closure(&q, &[hom.image(x), hom.image(y)]);
            let in_m = m_conj.iter().any(|c| k.is_subset(c));
            let in_normal = k.is_subset(&socle);
            if !in_m && !in_normal && f2_conj.iter().any(|c| k.is_subset(c)) {
                skipped_f2 += 1;
                continue;
            }
            tested += 1;
            if !oracle.adjacent(x, y)? {
                continue;
            }
            if in_m {
                edges_in_m += 1;
            } else if in_normal && h_cyclic_prime {
                edges_in_normal += 1;
            } else {
                return Err(mismatch(
                    "edge-sweep",
                    format!("edge ({x}, {y}) outside every conjugate of M and the normal part"),
                ));
            }
        }
    }
    let disjunct = if edges_in_normal == 0 {
        Disjunct::InConjugatesOfM
    } else {
        Disjunct::CyclicPrimeWithNormal
    };
    Ok(StructureReport {
        prechecks,
        n,
        quotient_d: 3,
        decomposition: dec,
        m_candidates,
        m,
        normal_part,
        h_cyclic_prime,
        edges_in_m,
        edges_in_normal,
        skipped_f2,
        pairs_tested: tested,
        disjunct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// Counts `H`-invariant subspaces of the socle of the given dimension by
    /// running through every subspace of `F_p^dim`.
    fn invariant_subspaces(dec: &ModuleDecomposition, k: usize) -> Vec<ElementSet> {
        let q = &dec.quotient;
        let socle = dec.socle();
        let coords = Coords::new(q, &socle, dec.p).unwrap();
        let hgens = greedy_generators(q, &dec.complement);
        linalg::all_subspaces(dec.p as u32, coords.dim(), k)
            .into_iter()
            .map(|sub| ElementSet::from_indices(q.order(), sub.into_iter().map(|c| coords.elems[c])))
            .filter(|s| hgens.iter().all(|&h| s.iter().all(|x| s.contains(q.conj(h, x)))))
            .collect()
    }

    #[test]
    fn example2_quotient_shape() {
        let q = corpus::example2_quotient().unwrap();
        let dec = module_decomposition(&q).unwrap();
        assert_eq!((dec.p, dec.dim, dec.t, dec.endo_dim), (2, 2, 2, 1));
        assert!(dec.faithful);
        assert_eq!(dec.complement.len(), 3);
        assert_eq!(dec.w_family.len(), 5);
        assert!(dec.w_family_is_sound());
        let mut oracle = invariant_subspaces(&dec, 2);
        oracle.sort();
        assert_eq!(oracle, dec.w_family);
    }

    #[test]
    fn example1_inner_shape() {
        let x = corpus::example1_inner(3).unwrap();
        let dec = module_decomposition(&x).unwrap();
        assert_eq!((dec.p, dec.dim, dec.t, dec.endo_dim), (3, 2, 3, 2));
        assert_eq!(dec.complement.len(), 8);
        assert!(dec.faithful);
        assert!(dec.w_family_is_sound());
        let oracle = invariant_subspaces(&dec, 4);
        assert_eq!(oracle.len(), 13);
        assert_eq!(dec.w_family.len(), oracle.len());
    }

    #[test]
    fn h_isomorphism_by_brute_force() {
        // C3 on F_2^2: each of the five minimal normal subgroups of
        // example2_quotient is isomorphic to the others
        let q = corpus::example2_quotient().unwrap();
        let mins = minimal_normal_subgroups(&q, &q.whole());
        assert_eq!(mins.len(), 5);
        let dec = module_decomposition(&q).unwrap();
        let hgens = greedy_generators(&q, &dec.complement);
        let a = Coords::new(&q, &mins[0], 2).unwrap();
        for m in &mins {
            assert!(h_isomorphic(&q, &hgens, &a, &Coords::new(&q, m, 2).unwrap()).unwrap());
        }
        // End of the 2-dim C3-module is F_4
        let mut count = 0;
        equivariant_maps(&q, &hgens, &a, &a, |_| {
            count += 1;
            false
        })
        .unwrap();
        assert_eq!(count, 4);
    }

    #[test]
    fn non_elementary_socle_is_a_mismatch() {
        let c3 = module_decomposition(&FiniteGroup::cyclic(3).unwrap()).unwrap();
        assert_eq!((c3.t, c3.endo_dim, c3.w_family.len()), (1, 1, 1));
        // the socle of C4 has no complement
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert!(matches!(module_decomposition(&c4), Err(GroupError::ShapeMismatch { .. })));
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert!(matches!(module_decomposition(&c6), Err(GroupError::ShapeMismatch { .. })));
    }

    #[test]
    fn preconditions_fail_on_small_groups() {
        for name in ["symmetric(4)", "example2_quotient", "sl2_3", "product(cyclic(8),cyclic(8))"] {
            let g = corpus::FamilySpec::parse(name).unwrap().construct().unwrap();
            for s in ["cyclic", "oneprime", "twoprimes", "abelian", "nilpotent", "soluble"] {
                let r = check_counterexample_structure(&g, &ClassSpec::parse(s).unwrap());
                assert!(matches!(r, Err(GroupError::Precondition(_))), "{name} {s}");
            }
        }
    }
}
