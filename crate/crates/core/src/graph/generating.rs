use super::engine::{self, NO_LABEL};
use super::Mode;
use crate::elemset::ElementSet;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::subgroup::{closure, extend};

/// `Omega(G)`, the non-isolated vertices of the generating graph, and the
/// components of the graph `Delta(G)` it induces.
#[derive(Clone, Debug)]
pub struct GeneratingGraphData {
    pub parent: FiniteGroup,
    pub omega: ElementSet,
    pub delta_labels: Vec<Option<u32>>,
    pub delta_components: usize,
}

pub fn generating_graph_omega(g: &FiniteGroup, mode: Mode) -> Result<GeneratingGraphData> {
    let n = g.order();
    if mode == Mode::Explicit && n > super::EXPLICIT_LIMIT {
        return Err(crate::error::cap_exceeded("explicit generating graph", super::EXPLICIT_LIMIT));
    }
    let mut last: Option<(usize, ElementSet)> = None;
    let mut pred = |x: usize, y: usize| -> Result<bool> {
        let cx = match &last {
            Some((lx, c)) if *lx == x => c.clone(),
            _ => {
                let c = closure(g, &[x]);
                last = Some((x, c.clone()));
                c
            }
        };
        if cx.len() == n {
            return Ok(true);
        }
        Ok(!cx.contains(y) && extend(g, &cx, &[y]).len() == n)
    };
    let pg = match mode {
        Mode::Explicit => engine::explicit(g, &mut pred)?,
        Mode::OrbitReduced => engine::orbit_reduced(g, &mut pred)?,
    };
    Ok(GeneratingGraphData {
        parent: g.clone(),
        omega: pg.isolated.complement(),
        delta_labels: pg
            .labels
            .iter()
            .map(|&l| if l == NO_LABEL { None } else { Some(l) })
            .collect(),
        delta_components: pg.count,
    })
}
