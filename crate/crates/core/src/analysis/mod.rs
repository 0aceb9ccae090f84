//! Verdicts built on the non-F graph: semiregularity, strong semiregularity,
//! connectivity, plus the proposition suite, the lemma harness and the
//! structure checker for disconnected semiregular groups.

mod lemmas;
mod propositions;
mod report;
mod structure;

pub use lemmas::{lemma_harness, lemma_harness_multi, LemmaOutcome, LemmaReport, LEMMA_ORDER_LIMIT};
pub use propositions::{
    icyclic_sides, verify_d_class_proposition, verify_icyclic_formula, DBranch, DClassReport, DClassRow,
    Dichotomy,
};
pub use report::{analyze, parse_report, AnalysisReport, REPORT_FORMAT};
pub use structure::{
    check_counterexample_structure, module_decomposition, Disjunct, ModuleDecomposition, Precheck,
    StructureReport,
};

use crate::class::ClassSpec;
use crate::elemset::ElementSet;
use crate::error::{GroupError, Result};
use crate::graph::{build_nonf_graph, isolated_set, Mode, EXPLICIT_LIMIT};
use crate::group::{quotient, FiniteGroup};
use crate::subgroup::{all_subgroups, extend, gens_of, normal_subgroups, standalone, LATTICE_CAP};

/// A section `X / Y` of the ambient group, both given as element sets of
/// the ambient group. Plain subgroups have `Y = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub x: ElementSet,
    pub y: ElementSet,
}

impl Section {
    pub fn subgroup(g: &FiniteGroup, x: ElementSet) -> Section {
        Section {
            x,
            y: g.trivial_subgroup(),
        }
    }

    /// The section as a standalone group.
    pub fn group(&self, g: &FiniteGroup) -> Result<FiniteGroup> {
        let (xs, emb) = standalone(g, &self.x);
        if self.y.len() == 1 {
            return Ok(xs);
        }
        let mut pos = vec![usize::MAX; g.order()];
        for (i, &e) in emb.iter().enumerate() {
            pos[e] = i;
        }
        let mut y = ElementSet::from_indices(xs.order(), self.y.iter().map(|e| pos[e]));
        y.set_generators(&gens_of(&xs, &y));
        Ok(quotient(&xs, &y)?.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes { checked: usize },
    /// A section whose isolated set is not a subgroup.
    No { witness: Section },
    /// Not every section was reachable; nothing failed among those checked.
    Partial { checked: usize, reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Yes { .. } => "yes",
            Verdict::No { .. } => "no",
            Verdict::Partial { .. } => "partial",
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Connectivity {
    /// No vertices at all: the group lies in `F_2`.
    Empty,
    Connected,
    Disconnected,
}

impl Connectivity {
    pub fn from_count(count: usize) -> Connectivity {
        match count {
            0 => Connectivity::Empty,
            1 => Connectivity::Connected,
            _ => Connectivity::Disconnected,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Connectivity::Empty => "empty",
            Connectivity::Connected => "connected",
            Connectivity::Disconnected => "disconnected",
        }
    }

    /// Connected in the sense used throughout: at most one component.
    pub fn is_connected(&self) -> bool {
        !matches!(self, Connectivity::Disconnected)
    }
}

/// Subgroup test that grows `<s>` one generator at a time and stops at the
/// first element outside `s`. The empty set is not a subgroup.
pub(crate) fn is_closed_subgroup(g: &FiniteGroup, s: &ElementSet) -> bool {
    if !s.contains(0) {
        return false;
    }
    let mut h = g.trivial_subgroup();
    for x in s.iter() {
        if h.contains(x) {
            continue;
        }
        h = extend(g, &h, &[x]);
        if h.len() > s.len() || !h.is_subset(s) {
            return false;
        }
    }
    true
}

fn require_subgroup_closed(spec: &ClassSpec) -> Result<()> {
    if spec.closure.subgroup_closed {
        Ok(())
    } else {
        Err(GroupError::Precondition(format!("{spec} is not declared subgroup-closed")))
    }
}

/// `I_F(H)` is a subgroup of `H`, for `H` a subgroup of `g`.
pub(crate) fn isolated_closed_in(g: &FiniteGroup, spec: &ClassSpec, h: &ElementSet) -> Result<bool> {
    // a member of a subgroup-closed class has no edges at all
    if spec.contains(g, h)? {
        return Ok(true);
    }
    let (sub, _) = standalone(g, h);
    let i = isolated_set(&sub, spec)?;
    Ok(is_closed_subgroup(&sub, &i))
}

fn section_closed(g: &FiniteGroup, spec: &ClassSpec, s: &Section) -> Result<bool> {
    let q = s.group(g)?;
    let i = isolated_set(&q, spec)?;
    Ok(is_closed_subgroup(&q, &i))
}

/// One subgroup per conjugacy class, or `None` past the lattice caps.
pub(crate) fn subgroup_reps(g: &FiniteGroup) -> Result<Option<Vec<ElementSet>>> {
    if g.order() > LATTICE_CAP {
        return Ok(None);
    }
    match all_subgroups(g, true) {
        Ok(list) => Ok(Some(list.subgroups)),
        Err(GroupError::CapExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `G` is F-semiregular: `I_F(H)` is a subgroup for every `H <= G`, checked
/// on one subgroup per conjugacy class.
pub fn is_semiregular(g: &FiniteGroup, spec: &ClassSpec) -> Result<Verdict> {
    semiregular_with(g, spec, None)
}

/// As [`is_semiregular`], reusing a known `I_F(G)` when the lattice is out
/// of reach.
pub(crate) fn semiregular_with(
    g: &FiniteGroup,
    spec: &ClassSpec,
    known_whole: Option<&ElementSet>,
) -> Result<Verdict> {
    require_subgroup_closed(spec)?;
    let Some(reps) = subgroup_reps(g)? else {
        let i = match known_whole {
            Some(i) => i.clone(),
            None => isolated_set(g, spec)?,
        };
        if !is_closed_subgroup(g, &i) {
            return Ok(Verdict::No {
                witness: Section::subgroup(g, g.whole()),
            });
        }
        return Ok(Verdict::Partial {
            checked: 1,
            reason: format!("subgroup lattice beyond cap {LATTICE_CAP}; only the whole group checked"),
        });
    };
    for h in &reps {
        if !isolated_closed_in(g, spec, h)? {
            return Ok(Verdict::No {
                witness: Section::subgroup(g, h.clone()),
            });
        }
    }
    Ok(Verdict::Yes { checked: reps.len() })
}

/// `I_F(X/Y)` is a subgroup for every `X <= G` (up to conjugacy) and every
/// `Y` normal in `X`.
pub fn is_strongly_semiregular(g: &FiniteGroup, spec: &ClassSpec) -> Result<Verdict> {
    require_subgroup_closed(spec)?;
    if !spec.closure.quotient_closed {
        return Err(GroupError::Precondition(format!("{spec} is not declared quotient-closed")));
    }
    let Some(reps) = subgroup_reps(g)? else {
        return Ok(Verdict::Partial {
            checked: 0,
            reason: format!("subgroup lattice beyond cap {LATTICE_CAP}"),
        });
    };
    let mut checked = 0;
    for x in &reps {
        // every section of a member is a member
        if spec.contains(g, x)? {
            checked += 1;
            continue;
        }
        let (xs, emb) = standalone(g, x);
        for y in normal_subgroups(&xs, &xs.whole())? {
            checked += 1;
            let q = if y.len() == 1 { xs.clone() } else { quotient(&xs, &y)?.0 };
            let i = isolated_set(&q, spec)?;
            if !is_closed_subgroup(&q, &i) {
                let y_parent = ElementSet::from_indices(g.order(), y.iter().map(|e| emb[e]));
                return Ok(Verdict::No {
                    witness: Section {
                        x: x.clone(),
                        y: y_parent,
                    },
                });
            }
        }
    }
    Ok(Verdict::Yes { checked })
}

/// Recomputes a "no" witness along a different route: the explicit graph
/// for the isolated set and the pairwise product test for closure. `true`
/// means the witness stands.
pub fn reverify_witness(g: &FiniteGroup, spec: &ClassSpec, w: &Section) -> Result<bool> {
    let q = w.group(g)?;
    if q.order() > EXPLICIT_LIMIT {
        return Ok(!section_closed(g, spec, w)?);
    }
    let graph = build_nonf_graph(&q, spec, Mode::Explicit)?;
    Ok(graph.isolated.is_empty() || !crate::subgroup::is_subgroup(&q, &graph.isolated))
}

/// Component count of `Gamma_F(G)` with its verdict.
pub fn connectivity_verdict(g: &FiniteGroup, spec: &ClassSpec) -> Result<(usize, Connectivity)> {
    connectivity_with(g, spec, Mode::OrbitReduced)
}

pub fn connectivity_with(g: &FiniteGroup, spec: &ClassSpec, mode: Mode) -> Result<(usize, Connectivity)> {
    let graph = build_nonf_graph(g, spec, mode)?;
    Ok((graph.component_count, Connectivity::from_count(graph.component_count)))
}
