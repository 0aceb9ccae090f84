//! Instance checks of the lemmas behind the main connectivity result. Each
//! lemma is tested on every corpus group (and on subgroups and quotients of
//! it) whose hypotheses hold; an instance whose conclusion fails is a
//! failure.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use super::{is_closed_subgroup, is_strongly_semiregular, Verdict};
use crate::class::{ClassKind, ClassSpec};
use crate::elemset::ElementSet;
use crate::error::{GroupError, Result};
use crate::graph::{build_nonf_graph, generating_graph_omega, MembershipOracle, Mode, PairOrbits};
use crate::group::{quotient, FiniteGroup, Homomorphism};
use crate::subgroup::{
    all_subgroups, conjugate_set, extend, generates, is_soluble, maximal_subgroups, min_generators,
    minimal_normal_subgroups, normal_core, normal_subgroups, standalone,
};

/// Groups above this order skip the lemmas that need the subgroup lattice.
pub const LEMMA_ORDER_LIMIT: usize = 200;

const GAZ_PER_NORMAL: usize = 6;
const GAZ_SEARCH_LIMIT: usize = 40_000;
const LIFT_PAIRS: usize = 400;
const LIFT_EDGES_PER_NORMAL: usize = 40;
const SEED: u64 = 0x1e44a;

const GAZ: &str = "gaschutz-lift";
const MASU: &str = "maximal-intersection";
const ICYC: &str = "cyclic-over-isolated";
const UNODUE: &str = "minimal-normal-coset";
const FFF_A: &str = "quotient-edges-lift";
const FFF_B: &str = "isolated-maps-to-isolated";
const FFF_C: &str = "isolated-aut-invariant";
const DUEMAX_A: &str = "two-maximals-components(a)";
const DUEMAX_B: &str = "two-maximals-components(b)";
const DUEMAX_C: &str = "two-maximals-components(c)";
const DUEMAX_D: &str = "two-maximals-components(d)";
const NORMALE: &str = "normal-complement-components";
const DUEGEN: &str = "two-generated-connected";
const STRONGLY: &str = "strongly-quotients-in-f2";
const ORDINI: &str = "order-determined";

const GROUP_LEMMAS: &[&str] = &[GAZ, MASU, UNODUE];
const SPEC_LEMMAS: &[&str] = &[
    ICYC, FFF_A, FFF_B, FFF_C, DUEMAX_A, DUEMAX_B, DUEMAX_C, DUEMAX_D, NORMALE, DUEGEN, STRONGLY, ORDINI,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub name: String,
    /// Instances whose hypotheses held and whose conclusion was checked.
    pub instances: usize,
    /// Groups or instances left out by caps or unmet class flags.
    pub skipped: usize,
    pub failures: Vec<String>,
}

impl LemmaOutcome {
    fn new(name: &str) -> LemmaOutcome {
        LemmaOutcome {
            name: name.to_string(),
            instances: 0,
            skipped: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub spec: String,
    pub outcomes: Vec<LemmaOutcome>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(LemmaOutcome::passed)
    }

    pub fn outcome(&self, name: &str) -> Option<&LemmaOutcome> {
        self.outcomes.iter().find(|o| o.name == name)
    }

    pub fn instances(&self) -> usize {
        self.outcomes.iter().map(|o| o.instances).sum()
    }
}

struct Tally(BTreeMap<&'static str, LemmaOutcome>);

impl Tally {
    fn new(names: &[&'static str]) -> Tally {
        Tally(names.iter().map(|&n| (n, LemmaOutcome::new(n))).collect())
    }

    fn get(&mut self, name: &'static str) -> &mut LemmaOutcome {
        self.0.get_mut(name).expect("registered lemma")
    }

    fn skip(&mut self, names: &[&'static str]) {
        for &n in names {
            self.get(n).skipped += 1;
        }
    }
}

/// Spec-independent data of one group.
struct GroupData<'a> {
    name: &'a str,
    g: &'a FiniteGroup,
    soluble: bool,
    d: usize,
    normals: Vec<ElementSet>,
    /// Present when the order is within [`LEMMA_ORDER_LIMIT`] and the
    /// lattice was built.
    lattice: Option<Lattice>,
}

struct Lattice {
    /// One subgroup per conjugacy class, proper and nontrivial.
    reps: Vec<ElementSet>,
    /// Every maximal subgroup with its normal core and conjugacy class id.
    maximals: Vec<(ElementSet, ElementSet, usize)>,
}

/// What the graph says about one subgroup `H`, in parent indices.
struct SubInfo {
    isolated: ElementSet,
    count: usize,
}

impl SubInfo {
    fn of(g: &FiniteGroup, spec: &ClassSpec, h: &ElementSet) -> Result<SubInfo> {
        let (sub, emb) = standalone(g, h);
        let graph = build_nonf_graph(&sub, spec, Mode::OrbitReduced)?;
        Ok(SubInfo {
            isolated: ElementSet::from_indices(g.order(), graph.isolated.iter().map(|x| emb[x])),
            count: graph.component_count,
        })
    }
}

fn conjugacy_class_id(g: &FiniteGroup, list: &[ElementSet]) -> Vec<usize> {
    let mut ids = vec![usize::MAX; list.len()];
    let mut next = 0;
    for i in 0..list.len() {
        if ids[i] != usize::MAX {
            continue;
        }
        ids[i] = next;
        for x in 0..g.order() {
            let c = conjugate_set(g, &list[i], x);
            for j in i + 1..list.len() {
                if ids[j] == usize::MAX && list[j] == c {
                    ids[j] = next;
                }
            }
        }
        next += 1;
    }
    ids
}

fn group_data<'a>(name: &'a str, g: &'a FiniteGroup) -> Result<GroupData<'a>> {
    let w = g.whole();
    let lattice = if g.order() <= LEMMA_ORDER_LIMIT {
        match (all_subgroups(g, true), maximal_subgroups(g)) {
            (Ok(all), Ok(max)) => {
                let ids = conjugacy_class_id(g, &max.subgroups);
                Some(Lattice {
                    reps: all
                        .subgroups
                        .into_iter()
                        .filter(|h| h.len() > 1 && h.len() < g.order())
                        .collect(),
                    maximals: max
                        .subgroups
                        .into_iter()
                        .zip(ids)
                        .map(|(m, id)| {
                            let core = normal_core(g, &m);
                            (m, core, id)
                        })
                        .collect(),
                })
            }
            (Err(GroupError::CapExceeded { .. }), _) | (_, Err(GroupError::CapExceeded { .. })) => None,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    } else {
        None
    };
    Ok(GroupData {
        name,
        g,
        soluble: is_soluble(g, &w),
        d: min_generators(g),
        normals: normal_subgroups(g, &w)?,
        lattice,
    })
}

fn coset(hom: &Homomorphism, q: usize, a: usize) -> ElementSet {
    hom.preimage(&ElementSet::from_indices(q, [a]))
}

/// `<g_1, ..., g_k> N = G` with `k >= d(G)` lifts to generators of `G`
/// inside the cosets `g_i N`.
fn gaschutz(gd: &GroupData, t: &mut LemmaOutcome, rng: &mut StdRng) -> Result<()> {
    let g = gd.g;
    let k = gd.d;
    if k == 0 || k > 2 {
        t.skipped += 1;
        return Ok(());
    }
    for n in &gd.normals {
        if n.len() == 1 || n.len() == g.order() || n.len().pow(k as u32) > GAZ_SEARCH_LIMIT {
            continue;
        }
        let (q, hom) = quotient(g, n)?;
        let mut tuples: Vec<Vec<usize>> = if k == 1 {
            (0..q.order()).filter(|&a| generates(&q, &[a])).map(|a| vec![a]).collect()
        } else {
            let po = PairOrbits::new(&q);
            let mut v = Vec::new();
            for (ci, &a) in po.class_reps.iter().enumerate() {
                for &b in &po.partners[ci] {
                    if generates(&q, &[a, b as usize]) {
                        v.push(vec![a, b as usize]);
                    }
                }
            }
            v
        };
        tuples.shuffle(rng);
        let nv = n.to_vec();
        for tup in tuples.into_iter().take(GAZ_PER_NORMAL) {
            let lifts: Vec<usize> = tup
                .iter()
                .map(|&a| *coset(&hom, q.order(), a).to_vec().choose(rng).unwrap())
                .collect();
            let found = if k == 1 {
                nv.iter().any(|&m| generates(g, &[g.mul(lifts[0], m)]))
            } else {
                nv.iter().any(|&m1| {
                    let x = g.mul(lifts[0], m1);
                    nv.iter().any(|&m2| generates(g, &[x, g.mul(lifts[1], m2)]))
                })
            };
            t.check(found, || format!("{}: no lift of {lifts:?} over |N| = {}", gd.name, n.len()));
        }
    }
    Ok(())
}

/// Inconjugate maximals `L, M` of a soluble group with `M_G` not inside
/// `L_G` meet in a maximal subgroup of `L`.
fn maximal_intersection(gd: &GroupData, t: &mut LemmaOutcome) {
    let g = gd.g;
    let Some(lat) = gd.lattice.as_ref().filter(|_| gd.soluble) else {
        t.skipped += 1;
        return;
    };
    for (l, lcore, lid) in &lat.maximals {
        for (m, mcore, mid) in &lat.maximals {
            if lid == mid || mcore.is_subset(lcore) {
                continue;
            }
            let k = l.intersection(m);
            let maximal = k.len() < l.len()
                && l.iter().filter(|&x| !k.contains(x)).all(|x| extend(g, &k, &[x]).len() == l.len());
            t.check(maximal, || {
                format!("{}: |L| = {}, |M| = {}, |L n M| = {} not maximal in L", gd.name, l.len(), m.len(), k.len())
            });
        }
    }
}

/// For a 2-generated soluble group and a minimal normal `N`, whenever
/// `<g_1, g_2, N> = G` one of the cosets `g_i N` lies inside `Omega(G)`.
fn minimal_normal_coset(gd: &GroupData, t: &mut LemmaOutcome) -> Result<()> {
    let g = gd.g;
    if !gd.soluble || gd.d != 2 {
        t.skipped += 1;
        return Ok(());
    }
    let omega = generating_graph_omega(g, Mode::OrbitReduced)?.omega;
    for n in minimal_normal_subgroups(g, &g.whole()) {
        let (q, hom) = quotient(g, &n)?;
        let po = PairOrbits::new(&q);
        for (ci, &a) in po.class_reps.iter().enumerate() {
            for &b in &po.partners[ci] {
                let b = b as usize;
                if !generates(&q, &[a, b]) {
                    continue;
                }
                let ok = coset(&hom, q.order(), a).is_subset(&omega) || coset(&hom, q.order(), b).is_subset(&omega);
                t.check(ok, || format!("{}: neither coset of ({a}, {b}) mod |N| = {} in Omega", gd.name, n.len()));
            }
        }
    }
    Ok(())
}

/// Automorphisms beyond conjugation that are cheap to write down: power
/// maps of abelian groups and the factor swap of `K x K`.
fn outer_automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut out = Vec::new();
    if g.is_abelian() {
        let exp = (0..n).map(|x| g.elem_order(x)).fold(1, lcm);
        for k in 2..exp.min(8) {
            if gcd(k, exp) == 1 {
                out.push((0..n).map(|x| g.pow(x, k as i64)).collect());
            }
        }
    }
    // products K x K keep the index layout (a, b) -> a |K| + b even after
    // materializing, so the swap is a candidate whenever |G| is a square
    let m = (n as f64).sqrt().round() as usize;
    if m > 1 && m * m == n && n <= 1024 {
        let swap: Vec<usize> = (0..n).map(|i| (i % m) * m + i / m).collect();
        if (0..n).all(|x| (0..n).all(|y| swap[g.mul(x, y)] == g.mul(swap[x], swap[y]))) {
            out.push(swap);
        }
    }
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

struct SpecRun<'a, 'b> {
    gd: &'b GroupData<'a>,
    spec: &'b ClassSpec,
    isolated: ElementSet,
    labels: Vec<Option<u32>>,
    count: usize,
}

impl SpecRun<'_, '_> {
    fn name(&self) -> &str {
        self.gd.name
    }

    /// `I(H) = H` is membership of `H` in `F_2`.
    fn icyc(&self, t: &mut LemmaOutcome, h: &ElementSet, iso: &ElementSet) {
        if !is_closed_subgroup(self.gd.g, iso) {
            return;
        }
        let g = self.gd.g;
        let hyp = h.iter().any(|x| extend(g, iso, &[x]).len() == h.len());
        if hyp {
            t.check(iso.len() == h.len(), || {
                format!("{}: I(H) = {} of |H| = {} with H/I cyclic", self.name(), iso.len(), h.len())
            });
        }
    }

    fn quotient_lemmas(&self, tally: &mut Tally, oracle: &mut MembershipOracle, rng: &mut StdRng) -> Result<()> {
        let g = self.gd.g;
        let c = &self.spec.closure;
        if !(c.subgroup_closed && c.quotient_closed) {
            tally.skip(&[FFF_A, FFF_B]);
            return Ok(());
        }
        for n in &self.gd.normals {
            if n.len() == 1 || n.len() == g.order() {
                continue;
            }
            let (q, hom) = quotient(g, n)?;
            let qiso = crate::graph::isolated_set(&q, self.spec)?;
            let img = hom.image_set(&self.isolated);
            tally.get(FFF_B).check(img.is_subset(&qiso), || {
                format!("{}: image of I(G) not isolated mod |N| = {}", self.name(), n.len())
            });

            let po = PairOrbits::new(&q);
            let mut qoracle = MembershipOracle::new(&q, self.spec);
            let mut edges = Vec::new();
            for (ci, &a) in po.class_reps.iter().enumerate() {
                for &b in &po.partners[ci] {
                    let b = b as usize;
                    if a != b && qoracle.adjacent(a, b)? {
                        edges.push((a, b));
                    }
                }
            }
            edges.shuffle(rng);
            for (a, b) in edges.into_iter().take(LIFT_EDGES_PER_NORMAL) {
                let ca = coset(&hom, q.order(), a).to_vec();
                let cb = coset(&hom, q.order(), b).to_vec();
                let mut pairs: Vec<(usize, usize)> =
                    ca.iter().flat_map(|&x| cb.iter().map(move |&y| (x, y))).collect();
                if pairs.len() > LIFT_PAIRS {
                    pairs.shuffle(rng);
                    pairs.truncate(LIFT_PAIRS);
                }
                let mut ok = true;
                for (x, y) in pairs {
                    if !oracle.adjacent(x, y)? {
                        ok = false;
                        break;
                    }
                }
                tally.get(FFF_A).check(ok, || {
                    format!("{}: edge ({a}, {b}) mod |N| = {} does not lift", self.name(), n.len())
                });
            }
        }
        Ok(())
    }

    fn aut_invariance(&self, t: &mut LemmaOutcome) -> Result<()> {
        let g = self.gd.g;
        // an independent route to I(G), so conjugation invariance is not
        // inherited from the class-wise isolation test
        let explicit = if g.order() <= crate::graph::EXPLICIT_LIMIT {
            build_nonf_graph(g, self.spec, Mode::Explicit)?.isolated
        } else {
            self.isolated.clone()
        };
        for s in g.generators() {
            let img = ElementSet::from_indices(g.order(), explicit.iter().map(|x| g.conj(s, x)));
            t.check(img == explicit, || format!("{}: I(G) moved by conjugation", self.name()));
        }
        for sigma in outer_automorphisms(g) {
            let img = ElementSet::from_indices(g.order(), explicit.iter().map(|x| sigma[x]));
            t.check(img == explicit, || format!("{}: I(G) moved by an automorphism", self.name()));
        }
        Ok(())
    }
}

fn per_spec(
    gd: &GroupData,
    spec: &ClassSpec,
    tally: &mut Tally,
    rng: &mut StdRng,
) -> Result<()> {
    let g = gd.g;
    let graph = build_nonf_graph(g, spec, Mode::OrbitReduced)?;
    let run = SpecRun {
        gd,
        spec,
        isolated: graph.isolated.clone(),
        labels: graph.component_label.clone(),
        count: graph.component_count,
    };
    let mut oracle = MembershipOracle::new(g, spec);

    run.icyc(tally.get(ICYC), &g.whole(), &run.isolated);
    run.quotient_lemmas(tally, &mut oracle, rng)?;
    run.aut_invariance(tally.get(FFF_C))?;
    order_determined_instance(&run, tally.get(ORDINI));

    let lattice_lemmas = [DUEMAX_A, DUEMAX_B, DUEMAX_C, DUEMAX_D, NORMALE, DUEGEN, STRONGLY];
    let Some(lat) = &gd.lattice else {
        tally.skip(&lattice_lemmas);
        return Ok(());
    };

    let mut semiregular = is_closed_subgroup(g, &run.isolated);
    let mut proper_connected = true;
    for h in &lat.reps {
        let info = SubInfo::of(g, spec, h)?;
        run.icyc(tally.get(ICYC), h, &info.isolated);
        semiregular &= is_closed_subgroup(g, &info.isolated);
        proper_connected &= info.count <= 1;
    }

    duemax(&run, lat, tally)?;

    let c = &spec.closure;
    let base = c.soluble_only && c.subgroup_closed && semiregular && proper_connected;
    if base {
        // a proper normal N with G \ N inside one component
        for n in &gd.normals {
            if n.len() == g.order() {
                continue;
            }
            let mut outside = (0..g.order()).filter(|&x| !n.contains(x)).map(|x| run.labels[x]);
            let first = outside.next().flatten();
            let one = first.is_some() && outside.all(|l| l == first);
            if one {
                let maximal = lat.maximals.iter().any(|(m, _, _)| m == n);
                tally.get(NORMALE).check(run.count <= 1 || maximal, || {
                    format!("{}: G \\ N in one component, |N| = {} not maximal", run.name(), n.len())
                });
            }
        }
        if gd.d <= 2 {
            tally.get(DUEGEN).check(run.count <= 1, || {
                format!("{}: 2-generated with {} components", run.name(), run.count)
            });
        }
    } else {
        tally.skip(&[NORMALE, DUEGEN]);
    }

    if base && c.quotient_closed && run.count >= 2 {
        strongly(&run, tally.get(STRONGLY))?;
    } else {
        tally.get(STRONGLY).skipped += 1;
    }
    Ok(())
}

fn strongly(run: &SpecRun, t: &mut LemmaOutcome) -> Result<()> {
    let g = run.gd.g;
    if !matches!(is_strongly_semiregular(g, run.spec)?, Verdict::Yes { .. }) {
        t.skipped += 1;
        return Ok(());
    }
    let mut quotients = Vec::new();
    for n in &run.gd.normals {
        if n.len() == 1 {
            continue;
        }
        let q = quotient(g, n)?.0;
        if n.len() < g.order() && build_nonf_graph(&q, run.spec, Mode::OrbitReduced)?.component_count > 1 {
            t.skipped += 1;
            return Ok(());
        }
        quotients.push((n.len(), q));
    }
    for (size, q) in quotients {
        let iso = crate::graph::isolated_set(&q, run.spec)?;
        t.check(iso.len() == q.order(), || {
            format!("{}: disconnected but G/M not in F_2 for |M| = {size}", run.name())
        });
    }
    Ok(())
}

fn duemax(run: &SpecRun, lat: &Lattice, tally: &mut Tally) -> Result<()> {
    let gd = run.gd;
    let g = gd.g;
    if !gd.soluble {
        tally.skip(&[DUEMAX_A, DUEMAX_B, DUEMAX_C, DUEMAX_D]);
        return Ok(());
    }
    // per maximal: its isolated set and the component of Gamma(G) holding
    // the vertices of Gamma(M), when the hypotheses on M hold
    let mut eligible = Vec::new();
    for (m, core, _) in &lat.maximals {
        let info = SubInfo::of(g, run.spec, m)?;
        if info.isolated.len() == m.len() || info.count != 1 || !is_closed_subgroup(g, &info.isolated) {
            continue;
        }
        let verts = m.difference(&info.isolated);
        let labels: Vec<Option<u32>> = verts.iter().map(|x| run.labels[x]).collect();
        let comp = labels[0];
        if comp.is_none() || labels.iter().any(|&l| l != comp) {
            tally.get(DUEMAX_A).failures.push(format!(
                "{}: vertices of a connected Gamma(M) split in Gamma(G)",
                run.name()
            ));
            continue;
        }
        eligible.push((m, core, info.isolated, comp));
    }
    for (l, lcore, liso, lcomp) in &eligible {
        for (m, mcore, _, mcomp) in &eligible {
            if l == m {
                continue;
            }
            let same = lcomp == mcomp;
            if !lcore.is_subset(mcore) {
                tally.get(DUEMAX_A).check(same || l.intersection(m).is_subset(liso), || {
                    format!("{}: |L| = {}, |M| = {}", run.name(), l.len(), m.len())
                });
                if !mcore.is_subset(lcore) {
                    tally.get(DUEMAX_B).check(same, || {
                        format!("{}: |L| = {}, |M| = {} in different components", run.name(), l.len(), m.len())
                    });
                }
            }
            if mcore.is_subset(lcore) && mcore.len() < lcore.len() && !same {
                let unique_minimal = gd
                    .normals
                    .iter()
                    .filter(|n| mcore.is_subset(n) && n.len() > mcore.len())
                    .all(|n| lcore.is_subset(n));
                tally.get(DUEMAX_C).check(unique_minimal, || {
                    format!("{}: L_G/M_G not the unique minimal normal subgroup", run.name())
                });
                let normal = l.len() == lcore.len();
                let cyclic_top = l.iter().any(|x| extend(g, lcore, &[x]).len() == l.len());
                tally.get(DUEMAX_D).check(normal || cyclic_top, || {
                    format!("{}: L neither normal nor L/L_G cyclic", run.name())
                });
            }
        }
    }
    Ok(())
}

/// Classes whose membership depends only on the order.
fn order_determined(spec: &ClassSpec) -> bool {
    matches!(spec.kind, ClassKind::OnePrime | ClassKind::TwoPrimes)
}

/// For such classes every `I(G)` is a subgroup and `F_2` membership is a
/// function of `|G|`, so the graph must be connected.
fn order_determined_instance(run: &SpecRun, t: &mut LemmaOutcome) {
    if !order_determined(run.spec) {
        t.skipped += 1;
        return;
    }
    // with a universal vertex the identity is not isolated either, and the
    // hypothesis on I(G) fails for this group
    if !is_closed_subgroup(run.gd.g, &run.isolated) {
        t.skipped += 1;
        return;
    }
    t.check(run.count <= 1, || format!("{}: {} components", run.name(), run.count));
}

/// `F_2` membership must agree across corpus groups of equal order.
fn order_determined_corpus(corpus: &[(String, FiniteGroup)], spec: &ClassSpec, t: &mut LemmaOutcome) -> Result<()> {
    if !order_determined(spec) {
        return Ok(());
    }
    let mut seen: BTreeMap<usize, (bool, &str)> = BTreeMap::new();
    for (name, g) in corpus {
        let f2 = crate::class::f2_member(spec, g)?;
        match seen.get(&g.order()) {
            Some(&(v, other)) if v != f2 => t.failures.push(format!(
                "{name} and {other}: same order, F_2 membership differs"
            )),
            Some(_) => {}
            None => {
                seen.insert(g.order(), (f2, name));
            }
        }
    }
    Ok(())
}

pub fn lemma_harness(corpus: &[(String, FiniteGroup)], spec: &ClassSpec) -> Result<LemmaReport> {
    Ok(lemma_harness_multi(corpus, std::slice::from_ref(spec))?.remove(0))
}

/// One report per spec; the group-level data and the spec-independent
/// lemmas are computed once per group.
pub fn lemma_harness_multi(corpus: &[(String, FiniteGroup)], specs: &[ClassSpec]) -> Result<Vec<LemmaReport>> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut group_tally = Tally::new(GROUP_LEMMAS);
    let mut spec_tallies: Vec<Tally> = specs.iter().map(|_| Tally::new(SPEC_LEMMAS)).collect();
    for (name, g) in corpus {
        let gd = group_data(name, g)?;
        gaschutz(&gd, group_tally.get(GAZ), &mut rng)?;
        maximal_intersection(&gd, group_tally.get(MASU));
        minimal_normal_coset(&gd, group_tally.get(UNODUE))?;
        for (spec, tally) in specs.iter().zip(&mut spec_tallies) {
            per_spec(&gd, spec, tally, &mut rng)?;
        }
    }
    let mut reports = Vec::new();
    for (spec, mut tally) in specs.iter().zip(spec_tallies) {
        order_determined_corpus(corpus, spec, tally.get(ORDINI))?;
        let mut outcomes: Vec<LemmaOutcome> = GROUP_LEMMAS
            .iter()
            .map(|n| group_tally.0[n].clone())
            .collect();
        outcomes.extend(SPEC_LEMMAS.iter().map(|n| tally.0.remove(n).unwrap()));
        reports.push(LemmaReport {
            spec: spec.to_string(),
            outcomes,
        });
    }
    Ok(reports)
}
