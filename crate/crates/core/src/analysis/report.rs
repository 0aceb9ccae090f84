//! One-group analysis and its `key=value` text form.
//!
//! ```text
//! format=nonf-report/v1
//! group=<structure hash>
//! description=<provenance description>
//! order=<n>
//! spec=<class spec>
//! mode=explicit|orbit
//! isolated=<|I|>
//! isolated_is_subgroup=true|false
//! universal_vertices=<count>
//! component_count=<count>
//! connected=empty|connected|disconnected
//! semiregular=yes|no|partial|n/a
//! semiregular_checked=<subgroups checked>        (yes, partial)
//! semiregular_witness=<order>;<gens>             (no)
//! semiregular_note=<text>                        (partial, n/a)
//! strongly_semiregular=...                       (same keys, prefix strongly_semiregular)
//! lemmas=run|skipped
//! lemma.<name>=pass|fail instances=<k> skipped=<k>
//! failure=<record>                               (repeatable)
//! elapsed_ms=<ms>
//! ```
//!
//! Witness sections `X/Y` print as `<|X|>;<gens>` followed by
//! `/<|Y|>;<gens>` when `Y` is nontrivial; generators are element indices
//! joined by commas.

use std::fmt::Write as _;
use std::time::Instant;

use super::{
    is_closed_subgroup, is_strongly_semiregular, lemma_harness, reverify_witness, semiregular_with, Connectivity,
    LemmaOutcome, Section, Verdict, LEMMA_ORDER_LIMIT,
};
use crate::class::ClassSpec;
use crate::error::{GroupError, Result};
use crate::graph::{build_nonf_graph, Mode};
use crate::group::FiniteGroup;
use crate::subgroup::gens_of;

pub const REPORT_FORMAT: &str = "nonf-report/v1";

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub group: String,
    pub description: String,
    pub order: usize,
    pub spec: String,
    pub mode: Mode,
    pub isolated: usize,
    pub isolated_is_subgroup: bool,
    pub universal_vertices: usize,
    pub component_count: usize,
    pub connectivity: Connectivity,
    /// `Err` carries the reason the verdict does not apply.
    pub semiregular: std::result::Result<Verdict, String>,
    pub strongly_semiregular: std::result::Result<Verdict, String>,
    /// `None` when the group is above the lemma order limit.
    pub lemmas: Option<Vec<LemmaOutcome>>,
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl AnalysisReport {
    /// No verification failure was recorded. A "no" verdict is a finding,
    /// not a failure.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_text(&self, g: &FiniteGroup) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k}={v}");
        };
        kv("format", &REPORT_FORMAT);
        kv("group", &self.group);
        kv("description", &self.description.replace('\n', " "));
        kv("order", &self.order);
        kv("spec", &self.spec);
        kv("mode", &self.mode.as_str());
        kv("isolated", &self.isolated);
        kv("isolated_is_subgroup", &self.isolated_is_subgroup);
        kv("universal_vertices", &self.universal_vertices);
        kv("component_count", &self.component_count);
        kv("connected", &self.connectivity.as_str());
        for (key, v) in [
            ("semiregular", &self.semiregular),
            ("strongly_semiregular", &self.strongly_semiregular),
        ] {
            match v {
                Ok(Verdict::Yes { checked }) => {
                    kv(key, &"yes");
                    kv(&format!("{key}_checked"), checked);
                }
                Ok(Verdict::No { witness }) => {
                    kv(key, &"no");
                    kv(&format!("{key}_witness"), &format_section(g, witness));
                }
                Ok(Verdict::Partial { checked, reason }) => {
                    kv(key, &"partial");
                    kv(&format!("{key}_checked"), checked);
                    kv(&format!("{key}_note"), reason);
                }
                Err(reason) => {
                    kv(key, &"n/a");
                    kv(&format!("{key}_note"), reason);
                }
            }
        }
        match &self.lemmas {
            None => kv("lemmas", &"skipped"),
            Some(list) => {
                kv("lemmas", &"run");
                for o in list {
                    let status = if o.passed() { "pass" } else { "fail" };
                    kv(
                        &format!("lemma.{}", o.name),
                        &format!("{status} instances={} skipped={}", o.instances, o.skipped),
                    );
                }
            }
        }
        for f in &self.failures {
            kv("failure", &f.replace('\n', " "));
        }
        kv("elapsed_ms", &self.elapsed_ms);
        out
    }
}

fn format_set(g: &FiniteGroup, s: &crate::elemset::ElementSet) -> String {
    let gens: Vec<String> = gens_of(g, s).iter().map(|x| x.to_string()).collect();
    format!("{};{}", s.len(), gens.join(","))
}

fn format_section(g: &FiniteGroup, s: &Section) -> String {
    if s.y.len() == 1 {
        format_set(g, &s.x)
    } else {
        format!("{}/{}", format_set(g, &s.x), format_set(g, &s.y))
    }
}

fn verdict_or_reason(r: Result<Verdict>) -> Result<std::result::Result<Verdict, String>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(GroupError::Precondition(m)) => Ok(Err(m)),
        Err(e) => Err(e),
    }
}

/// Graph, verdicts and (for small groups) the lemma suite for one group.
/// Errors from the graph itself propagate; lattice caps turn verdicts
/// partial.
pub fn analyze(g: &FiniteGroup, spec: &ClassSpec, mode: Mode) -> Result<AnalysisReport> {
    let start = Instant::now();
    let graph = build_nonf_graph(g, spec, mode)?;
    let mut failures = Vec::new();

    let semiregular = verdict_or_reason(semiregular_with(g, spec, Some(&graph.isolated)))?;
    let strongly = verdict_or_reason(is_strongly_semiregular(g, spec))?;
    for (key, v) in [("semiregular", &semiregular), ("strongly_semiregular", &strongly)] {
        if let Ok(Verdict::No { witness }) = v {
            if !reverify_witness(g, spec, witness)? {
                failures.push(format!("{key}: witness {} does not re-verify", format_section(g, witness)));
            }
        }
    }

    let lemmas = if g.order() <= LEMMA_ORDER_LIMIT {
        let name = g.provenance().description.clone();
        let report = lemma_harness(&[(name, g.clone())], spec)?;
        for o in &report.outcomes {
            for f in &o.failures {
                failures.push(format!("lemma.{}: {f}", o.name));
            }
        }
        Some(report.outcomes)
    } else {
        None
    };

    Ok(AnalysisReport {
        group: g.structure_hash(),
        description: g.provenance().description.clone(),
        order: g.order(),
        spec: spec.to_string(),
        mode,
        isolated: graph.isolated.len(),
        isolated_is_subgroup: is_closed_subgroup(g, &graph.isolated),
        universal_vertices: graph.universal_vertices.len(),
        component_count: graph.component_count,
        connectivity: Connectivity::from_count(graph.component_count),
        semiregular,
        strongly_semiregular: strongly,
        lemmas,
        failures,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// Key/value pairs in file order. The first line must carry the format tag.
pub fn parse_report(text: &str) -> Result<Vec<(String, String)>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(l) if l == format!("format={REPORT_FORMAT}") => {}
        Some(l) => return Err(GroupError::Parse(format!("unexpected report header {l:?}"))),
        None => return Err(GroupError::Parse("empty report".into())),
    }
    let mut out = vec![("format".to_string(), REPORT_FORMAT.to_string())];
    for (i, l) in lines.enumerate() {
        let Some((k, v)) = l.split_once('=') else {
            return Err(GroupError::Parse(format!("line {}: missing '='", i + 2)));
        };
        if k.is_empty() || k.contains(char::is_whitespace) {
            return Err(GroupError::Parse(format!("line {}: bad key {k:?}", i + 2)));
        }
        out.push((k.to_string(), v.to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn get<'a>(kv: &'a [(String, String)], k: &str) -> &'a str {
        &kv.iter().find(|(a, _)| a == k).unwrap().1
    }

    #[test]
    fn cyclic6_report_round_trip() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let r = analyze(&g, &ClassSpec::cyclic(), Mode::Explicit).unwrap();
        assert!(r.passed());
        let text = r.to_text(&g);
        let kv = parse_report(&text).unwrap();
        assert_eq!(get(&kv, "isolated"), "6");
        assert_eq!(get(&kv, "connected"), "empty");
        assert_eq!(get(&kv, "component_count"), "0");
        assert_eq!(get(&kv, "semiregular"), "yes");
        assert_eq!(kv[0].0, "format");
        assert_eq!(kv.last().unwrap().0, "elapsed_ms");
    }

    #[test]
    fn no_verdict_carries_a_witness() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let r = analyze(&g, &ClassSpec::parse("oneprime").unwrap(), Mode::OrbitReduced).unwrap();
        let kv = parse_report(&r.to_text(&g)).unwrap();
        assert_eq!(get(&kv, "semiregular"), "no");
        assert!(get(&kv, "semiregular_witness").starts_with("6;"));
        assert_eq!(get(&kv, "isolated_is_subgroup"), "false");
        assert!(r.passed());
    }

    #[test]
    fn forbid_spec_is_not_applicable_for_strong_semiregularity() {
        let g = corpus::symmetric(3).unwrap();
        let spec = ClassSpec::forbidden(vec![crate::class::Forbidden::new("c2", &FiniteGroup::cyclic(2).unwrap())]);
        let r = analyze(&g, &spec, Mode::Explicit).unwrap();
        let kv = parse_report(&r.to_text(&g)).unwrap();
        assert_eq!(get(&kv, "strongly_semiregular"), "n/a");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(parse_report("").is_err());
        assert!(parse_report("format=other\n").is_err());
        assert!(parse_report("format=nonf-report/v1\nno equals sign\n").is_err());
        let kv = parse_report("format=nonf-report/v1\nfailure=a\nfailure=b\n").unwrap();
        assert_eq!(kv.len(), 3);
    }
}
