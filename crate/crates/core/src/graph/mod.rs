//! The non-F graph: `x ~ y` for `x != y` iff `<x, y>` is not in `F`.
//!
//! Loops are never drawn. An element with `<x>` outside `F` is adjacent to
//! every other element and is reported as a universal vertex.

mod engine;
mod fpf;
mod generating;

pub use engine::UnionFind;
pub use fpf::{fpf_generation_check, fpf_instances, FpfCheck, FpfInstance};
pub use generating::{generating_graph_omega, GeneratingGraphData};

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::class::ClassSpec;
use crate::elemset::ElementSet;
use crate::error::{GroupError, Result};
use crate::group::{conjugacy_classes, FiniteGroup};
use crate::subgroup::{closure, extend};

pub(crate) use engine::PairOrbits;
use engine::{PairGraph, NO_LABEL};

/// Largest group for which explicit (all pairs) construction is allowed.
pub const EXPLICIT_LIMIT: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Explicit,
    OrbitReduced,
}

impl Mode {
    pub fn parse(s: &str) -> Result<Mode> {
        match s {
            "explicit" => Ok(Mode::Explicit),
            "orbit" | "orbit_reduced" => Ok(Mode::OrbitReduced),
            _ => Err(GroupError::Parse(format!("unknown mode {s:?}"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Explicit => "explicit",
            Mode::OrbitReduced => "orbit",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct OracleStats {
    pub calls: u64,
    pub memo_hits: u64,
    pub full_checks: u64,
}

/// Adjacency through class membership of `<x, y>`, memoizing expensive
/// verdicts by member set.
pub struct MembershipOracle<'a> {
    g: &'a FiniteGroup,
    spec: &'a ClassSpec,
    memo: HashMap<ElementSet, bool>,
    last: Option<(usize, ElementSet)>,
    pub stats: OracleStats,
}

impl<'a> MembershipOracle<'a> {
    pub fn new(g: &'a FiniteGroup, spec: &'a ClassSpec) -> Self {
        MembershipOracle {
            g,
            spec,
            memo: HashMap::new(),
            last: None,
            stats: OracleStats::default(),
        }
    }

    pub fn member(&mut self, h: &ElementSet) -> Result<bool> {
        self.stats.calls += 1;
        if !self.spec.may_exclude_order(h.len()) {
            return Ok(true);
        }
        if !self.spec.is_expensive() {
            self.stats.full_checks += 1;
            return self.spec.contains(self.g, h);
        }
        if let Some(&v) = self.memo.get(h) {
            self.stats.memo_hits += 1;
            return Ok(v);
        }
        self.stats.full_checks += 1;
        let v = self.spec.contains(self.g, h)?;
        self.memo.insert(h.clone(), v);
        Ok(v)
    }

    /// `<x, y>`, reusing `<x>` across consecutive calls with the same `x`.
    pub fn pair_subgroup(&mut self, x: usize, y: usize) -> ElementSet {
        let cx = match &self.last {
            Some((lx, c)) if *lx == x => c.clone(),
            _ => {
                let c = closure(self.g, &[x]);
                self.last = Some((x, c.clone()));
                c
            }
        };
        if cx.contains(y) {
            cx
        } else {
            extend(self.g, &cx, &[y])
        }
    }

    pub fn adjacent(&mut self, x: usize, y: usize) -> Result<bool> {
        if x == y {
            return Ok(false);
        }
        let h = self.pair_subgroup(x, y);
        Ok(!self.member(&h)?)
    }
}

#[derive(Clone, Debug)]
pub enum EdgeStore {
    /// Every edge `(x, y)` with `x < y`.
    Explicit(Vec<(u32, u32)>),
    /// Adjacent representative pairs; every edge is conjugate to one.
    OrbitRepresentatives(Vec<(u32, u32)>),
}

#[derive(Clone, Debug)]
pub struct NonFGraph {
    pub parent: FiniteGroup,
    pub spec: ClassSpec,
    pub mode: Mode,
    pub isolated: ElementSet,
    pub vertices: ElementSet,
    pub component_label: Vec<Option<u32>>,
    pub component_count: usize,
    pub edges: EdgeStore,
    pub universal_vertices: ElementSet,
    pub pairs_tested: u64,
    pub stats: OracleStats,
    pub elapsed: Duration,
}

impl NonFGraph {
    /// Components as element sets, ordered by least member.
    pub fn components(&self) -> Vec<ElementSet> {
        let n = self.parent.order();
        let mut out = vec![ElementSet::empty(n); self.component_count];
        for (x, l) in self.component_label.iter().enumerate() {
            if let Some(l) = l {
                out[*l as usize].insert(x);
            }
        }
        out
    }

    /// `Gamma` has no vertices.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Adjacency recomputed from the class; used to re-verify edges.
    pub fn adjacent(&self, x: usize, y: usize) -> Result<bool> {
        MembershipOracle::new(&self.parent, &self.spec).adjacent(x, y)
    }

    /// Text export: header lines, then component labels and edges.
    pub fn export(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nonf-graph/v1");
        let _ = writeln!(out, "group {}", self.parent.structure_hash());
        let _ = writeln!(out, "order {}", self.parent.order());
        let _ = writeln!(out, "spec {}", self.spec);
        let _ = writeln!(out, "mode {}", self.mode.as_str());
        let _ = writeln!(out, "isolated {}", self.isolated.len());
        let _ = writeln!(out, "components {}", self.component_count);
        let _ = writeln!(out, "labels {}", self.vertices.len());
        for x in self.vertices.iter() {
            let _ = writeln!(out, "{x} {}", self.component_label[x].unwrap());
        }
        let (kind, edges) = match &self.edges {
            EdgeStore::Explicit(e) => ("all", e),
            EdgeStore::OrbitRepresentatives(e) => ("orbit-representatives", e),
        };
        let _ = writeln!(out, "edges {} {kind}", edges.len());
        for (a, b) in edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

fn check_spec(spec: &ClassSpec) -> Result<()> {
    if !spec.closure.subgroup_closed {
        return Err(GroupError::Precondition(format!(
            "the non-F graph needs a subgroup-closed class, {spec} is not declared so"
        )));
    }
    Ok(())
}

/// Elements `g` with `<g>` outside the class.
pub fn universal_vertices(g: &FiniteGroup, spec: &ClassSpec) -> Result<ElementSet> {
    let cc = conjugacy_classes(g);
    let mut out = ElementSet::empty(g.order());
    if g.order() == 1 {
        return Ok(out);
    }
    let mut oracle = MembershipOracle::new(g, spec);
    for (ci, &x) in cc.reps.iter().enumerate() {
        if !oracle.member(&closure(g, &[x]))? {
            for y in cc.members(ci) {
                out.insert(y);
            }
        }
    }
    Ok(out)
}

pub fn build_nonf_graph(g: &FiniteGroup, spec: &ClassSpec, mode: Mode) -> Result<NonFGraph> {
    check_spec(spec)?;
    let start = Instant::now();
    let n = g.order();
    if mode == Mode::Explicit && n > EXPLICIT_LIMIT {
        return Err(crate::error::cap_exceeded("explicit graph construction", EXPLICIT_LIMIT));
    }
    let mut oracle = MembershipOracle::new(g, spec);
    let pg: PairGraph = {
        let mut pred = |x: usize, y: usize| oracle.adjacent(x, y);
        match mode {
            Mode::Explicit => engine::explicit(g, &mut pred)?,
            Mode::OrbitReduced => engine::orbit_reduced(g, &mut pred)?,
        }
    };
    let universal = universal_vertices(g, spec)?;
    let vertices = pg.isolated.complement();
    let edges = match mode {
        Mode::Explicit => EdgeStore::Explicit(pg.edges),
        Mode::OrbitReduced => EdgeStore::OrbitRepresentatives(pg.edges),
    };
    Ok(NonFGraph {
        parent: g.clone(),
        spec: spec.clone(),
        mode,
        isolated: pg.isolated,
        vertices,
        component_label: pg
            .labels
            .iter()
            .map(|&l| if l == NO_LABEL { None } else { Some(l) })
            .collect(),
        component_count: pg.count,
        edges,
        universal_vertices: universal,
        pairs_tested: pg.pairs_tested,
        stats: oracle.stats,
        elapsed: start.elapsed(),
    })
}

/// `I_F(G)` without computing components.
pub fn isolated_set(g: &FiniteGroup, spec: &ClassSpec) -> Result<ElementSet> {
    check_spec(spec)?;
    let orbits = engine::PairOrbits::new(g);
    let mut oracle = MembershipOracle::new(g, spec);
    let mut pred = |x: usize, y: usize| oracle.adjacent(x, y);
    let mut tested = 0;
    Ok(engine::isolation(g, &orbits, &mut pred, &mut tested)?.0)
}

/// Builds the graphs of `F` and `F_2` explicitly and compares edge sets.
pub fn gamma_equals_gamma_f2(g: &FiniteGroup, spec: &ClassSpec) -> Result<bool> {
    if g.order() > EXPLICIT_LIMIT {
        return Err(crate::error::cap_exceeded("explicit graph comparison", EXPLICIT_LIMIT));
    }
    let a = build_nonf_graph(g, spec, Mode::Explicit)?;
    let b = build_nonf_graph(g, &spec.f2(), Mode::Explicit)?;
    match (&a.edges, &b.edges) {
        (EdgeStore::Explicit(x), EdgeStore::Explicit(y)) => Ok(x == y),
        _ => unreachable!("explicit mode stores all edges"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn spec(s: &str) -> ClassSpec {
        ClassSpec::parse(s).unwrap()
    }

    /// Brute-force isolated set and components straight from the definition.
    fn brute(g: &FiniteGroup, s: &ClassSpec) -> (ElementSet, usize) {
        let n = g.order();
        let mut uf = UnionFind::new(n);
        let mut deg = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                if x != y && !s.contains(g, &closure(g, &[x, y])).unwrap() {
                    deg[x] += 1;
                    uf.union(x, y);
                }
            }
        }
        let iso = ElementSet::from_indices(n, (0..n).filter(|&x| deg[x] == 0));
        let mut roots: Vec<usize> = (0..n).filter(|&x| deg[x] > 0).map(|x| uf.find(x)).collect();
        roots.sort();
        roots.dedup();
        (iso, roots.len())
    }

    #[test]
    fn cyclic_group_is_all_isolated() {
        let c6 = FiniteGroup::cyclic(6).unwrap();
        let gr = build_nonf_graph(&c6, &spec("cyclic"), Mode::OrbitReduced).unwrap();
        assert_eq!(gr.isolated.len(), 6);
        assert_eq!(gr.component_count, 0);
        assert!(gr.is_empty());
    }

    #[test]
    fn sym3_cyclic() {
        let s3 = corpus::symmetric(3).unwrap();
        for mode in [Mode::Explicit, Mode::OrbitReduced] {
            let gr = build_nonf_graph(&s3, &spec("cyclic"), mode).unwrap();
            assert_eq!(gr.isolated.to_vec(), vec![0]);
            assert_eq!(gr.vertices.len(), 5);
            assert_eq!(gr.component_count, 1);
        }
        let ab = isolated_set(&s3, &spec("abelian")).unwrap();
        assert_eq!(ab.to_vec(), vec![0]);
    }

    #[test]
    fn q8_cyclic_isolated_is_center() {
        let q8 = corpus::generalized_quaternion(8).unwrap();
        let iso = isolated_set(&q8, &spec("cyclic")).unwrap();
        assert_eq!(iso.len(), 2);
        assert!(iso.iter().all(|x| q8.elem_order(x) <= 2));
    }

    #[test]
    fn modes_agree_with_brute_force() {
        let groups = [
            corpus::symmetric(4).unwrap(),
            corpus::dihedral(6).unwrap(),
            corpus::generalized_quaternion(16).unwrap(),
            corpus::frobenius(7, 3).unwrap(),
        ];
        for g in &groups {
            for s in ["cyclic", "abelian", "nilpotent", "oneprime", "supersoluble"] {
                let sp = spec(s);
                let (iso, count) = brute(g, &sp);
                let a = build_nonf_graph(g, &sp, Mode::Explicit).unwrap();
                let b = build_nonf_graph(g, &sp, Mode::OrbitReduced).unwrap();
                assert_eq!(a.isolated, iso, "{s} on order {}", g.order());
                assert_eq!(b.isolated, iso, "{s} on order {}", g.order());
                assert_eq!(a.component_count, count);
                assert_eq!(a.component_label, b.component_label);
            }
        }
    }

    #[test]
    fn universal_vertices_are_adjacent_to_everything() {
        let c30 = FiniteGroup::cyclic(30).unwrap();
        let s = spec("twoprimes");
        let gr = build_nonf_graph(&c30, &s, Mode::Explicit).unwrap();
        assert!(!gr.universal_vertices.is_empty());
        for u in gr.universal_vertices.iter() {
            for y in 0..30 {
                if y != u {
                    assert!(gr.adjacent(u, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn f2_graph_comparison() {
        let s3 = corpus::symmetric(3).unwrap();
        assert!(gamma_equals_gamma_f2(&s3, &spec("cyclic")).unwrap());
        let c30 = FiniteGroup::cyclic(30).unwrap();
        assert!(gamma_equals_gamma_f2(&c30, &spec("twoprimes")).unwrap());
    }

    #[test]
    fn export_has_headers() {
        let s3 = corpus::symmetric(3).unwrap();
        let gr = build_nonf_graph(&s3, &spec("cyclic"), Mode::Explicit).unwrap();
        let text = gr.export();
        assert!(text.starts_with("nonf-graph/v1\ngroup "));
        assert!(text.contains("\nspec cyclic\n"));
        assert!(text.contains("\ncomponents 1\n"));
        assert!(text.contains("\nedges 9 all\n"));
    }
}
