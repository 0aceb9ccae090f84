//! Acceptance criteria 1-10. Each test writes one `criterion N: PASS|FAIL`
//! line straight to stderr, so the line shows up even when the harness
//! captures test output.
//!
//! Criterion 8 builds the order-75264 example and is ignored by default;
//! run it with `cargo test -p nonf --test acceptance -- --ignored`.

use std::io::Write;
use std::time::Instant;

use nonf::analysis::{
    check_counterexample_structure, connectivity_verdict, lemma_harness_multi, module_decomposition,
    verify_d_class_proposition, verify_icyclic_formula, Connectivity, Disjunct,
};
use nonf::class::{f2_member, two_recognizability_report, ClassSpec};
use nonf::corpus::{builtin_corpus, example1_inner, example2, sylow2_sym8};
use nonf::graph::{build_nonf_graph, fpf_generation_check, fpf_instances, gamma_equals_gamma_f2, Mode};
use nonf::linalg;
use nonf::subgroup::closure;
use nonf::{ElementSet, FiniteGroup};

/// Every criterion is exact: no mismatch is tolerated.
const ALLOWED_MISMATCHES: usize = 0;
const CORPUS_MAX_ORDER: usize = 512;
const MIN_CORPUS_SIZE: usize = 60;
const ORACLE_MAX_ORDER: usize = 2000;
const FPF_SEARCH_MAX_ORDER: usize = 5000;
const C5_TIME_LIMIT_S: u64 = 30;
const EX2_ORDER: usize = 75_264;
const EX2_ISOLATED: usize = 1568;

const SPECS: &[&str] = &["cyclic", "oneprime", "twoprimes", "abelian", "nilpotent", "soluble"];

fn line(n: u32, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n}: {status} - {detail}");
}

fn corpus(max: usize) -> Vec<(String, FiniteGroup)> {
    builtin_corpus(max)
        .unwrap()
        .into_iter()
        .map(|e| (e.name, e.group))
        .collect()
}

fn spec(s: &str) -> ClassSpec {
    ClassSpec::parse(s).unwrap()
}

/// Names of corpus groups whose graph for `s` has two or more components.
fn disconnected(groups: &[(String, FiniteGroup)], s: &ClassSpec) -> Vec<String> {
    groups
        .iter()
        .filter(|(_, g)| !connectivity_verdict(g, s).unwrap().1.is_connected())
        .map(|(n, _)| n.clone())
        .collect()
}

#[test]
fn criterion_1_cyclic_graph_connected() {
    let t = Instant::now();
    let groups = corpus(CORPUS_MAX_ORDER);
    let bad = disconnected(&groups, &ClassSpec::cyclic());
    let ok = groups.len() >= MIN_CORPUS_SIZE && bad.len() <= ALLOWED_MISMATCHES;
    line(
        1,
        ok,
        &format!("{} groups, disconnected {:?}, {:.1?}", groups.len(), bad, t.elapsed()),
    );
    assert!(ok);
}

#[test]
fn criterion_2_icyclic_formula() {
    let groups = corpus(CORPUS_MAX_ORDER);
    let bad: Vec<&str> = groups
        .iter()
        .filter(|(_, g)| !verify_icyclic_formula(g).unwrap())
        .map(|(n, _)| n.as_str())
        .collect();
    let ok = bad.len() <= ALLOWED_MISMATCHES;
    line(2, ok, &format!("{} groups, formula fails on {bad:?}", groups.len()));
    assert!(ok);
}

#[test]
fn criterion_3_oneprime_graph_connected() {
    let groups = corpus(CORPUS_MAX_ORDER);
    let bad = disconnected(&groups, &spec("oneprime"));
    let ok = bad.len() <= ALLOWED_MISMATCHES;
    line(3, ok, &format!("{} groups, disconnected {bad:?}", groups.len()));
    assert!(ok);
}

#[test]
fn criterion_4_twoprimes() {
    let groups = corpus(CORPUS_MAX_ORDER);
    let d = spec("twoprimes");
    let rec = two_recognizability_report(&d, &groups).unwrap();
    let prop = verify_d_class_proposition(&groups).unwrap();
    let bad = disconnected(&groups, &d);
    let dichotomies = prop.rows.iter().filter(|r| r.dichotomy.is_some()).count();
    let ok = rec.witnesses.is_empty() && prop.passes() && bad.is_empty() && dichotomies > 0;
    line(
        4,
        ok,
        &format!(
            "(a) F_2 \\ F witnesses {:?}, (b) failing {:?} with {dichotomies} dichotomy rows, (c) disconnected {bad:?}",
            rec.witnesses,
            prop.failures()
        ),
    );
    assert!(ok);
}

#[test]
fn criterion_5_metabelian_witness() {
    let t = Instant::now();
    let g = sylow2_sym8().unwrap();
    let m = spec("metabelian");
    let member = m.is_member(&g).unwrap();
    let f2 = f2_member(&m, &g).unwrap();
    let same = gamma_equals_gamma_f2(&g, &m).unwrap();
    let secs = t.elapsed().as_secs();
    let ok = g.order() == 128 && !member && f2 && same && secs < C5_TIME_LIMIT_S;
    line(
        5,
        ok,
        &format!("order {}, member {member}, F_2 member {f2}, graphs equal {same}, {secs}s", g.order()),
    );
    assert!(ok);
}

#[test]
fn criterion_6_fpf_determinant_vs_search() {
    let mut checked = 0;
    let mut disagree = Vec::new();
    for inst in fpf_instances().unwrap() {
        let h = &inst.h;
        for h1 in 0..h.order() {
            for h2 in 0..h.order() {
                if closure(h, &[h1, h2]).len() != h.order() {
                    continue;
                }
                let c = fpf_generation_check(h, inst.p, inst.d, &inst.generator_matrices, h1, h2).unwrap();
                let v_order = (inst.p as usize).pow(inst.d as u32);
                let order = v_order.pow(c.u as u32) * h.order();
                if order > FPF_SEARCH_MAX_ORDER {
                    continue;
                }
                checked += 1;
                if c.by_search != Some(c.by_determinant) {
                    disagree.push(format!("{} ({h1}, {h2})", inst.name));
                }
            }
        }
    }
    let ok = checked > 0 && disagree.len() <= ALLOWED_MISMATCHES;
    line(6, ok, &format!("{checked} instances, disagreements {disagree:?}"));
    assert!(ok);
}

#[test]
fn criterion_7_lemma_harness() {
    let t = Instant::now();
    let groups = corpus(CORPUS_MAX_ORDER);
    let specs: Vec<ClassSpec> = SPECS.iter().map(|s| spec(s)).collect();
    let reports = lemma_harness_multi(&groups, &specs).unwrap();
    let mut failures = Vec::new();
    let mut instances = 0;
    for r in &reports {
        instances += r.instances();
        for o in &r.outcomes {
            for f in &o.failures {
                failures.push(format!("[{}] {}: {f}", r.spec, o.name));
            }
        }
    }
    let ok = failures.len() <= ALLOWED_MISMATCHES;
    line(
        7,
        ok,
        &format!(
            "{} groups x {} specs, {instances} instances, failures {failures:?}, {:.1?}",
            groups.len(),
            specs.len(),
            t.elapsed()
        ),
    );
    for r in &reports {
        for o in &r.outcomes {
            let _ = writeln!(
                std::io::stderr(),
                "    [{}] {}: {} instances, {} skipped",
                r.spec,
                o.name,
                o.instances,
                o.skipped
            );
        }
    }
    assert!(ok);
}

#[test]
fn criterion_8_skipped_by_default() {
    let _ = writeln!(
        std::io::stderr(),
        "criterion 8: not run in the default pass (slow); see criterion_8_example2 with --ignored"
    );
}

#[test]
#[ignore = "slow: order-75264 example"]
fn criterion_8_example2() {
    let t = Instant::now();
    let g = example2().unwrap();
    let p = g.provenance().subgroups.clone();
    let s = ClassSpec::parse_with("forbid:B,C", Some(&g)).unwrap();
    let graph = build_nonf_graph(&g, &s, Mode::OrbitReduced).unwrap();
    let comps = graph.components();
    let mut expected = vec![p["Omega_B"].clone(), p["Omega_C"].clone()];
    expected.sort();
    let mut got = comps.clone();
    got.sort();
    let ok = g.order() == EX2_ORDER
        && graph.isolated.len() == EX2_ISOLATED
        && graph.isolated == p["I_expected"]
        && graph.component_count == 2
        && got == expected;
    line(
        8,
        ok,
        &format!(
            "|I| = {}, I = W Phi(A) <c>: {}, components {:?}, {:.1?}",
            graph.isolated.len(),
            graph.isolated == p["I_expected"],
            comps.iter().map(ElementSet::len).collect::<Vec<_>>(),
            t.elapsed()
        ),
    );
    assert!(ok);

    // the shape check on the same group
    let r = check_counterexample_structure(&g, &s).unwrap();
    let dec = &r.decomposition;
    let _ = writeln!(
        std::io::stderr(),
        "    structure: |G/N| = {}, t = {}, endo_dim = {}, |W family| = {}, |M| = {}, disjunct {:?}, edge orbits in M {} / in normal {}, {:.1?}",
        dec.quotient.order(),
        dec.t,
        dec.endo_dim,
        dec.w_family.len(),
        r.m.len(),
        r.disjunct,
        r.edges_in_m,
        r.edges_in_normal,
        t.elapsed()
    );
    assert_eq!(r.disjunct, Disjunct::CyclicPrimeWithNormal);
    assert_eq!(r.normal_part, p["WM0"]);
}

#[test]
fn criterion_9_example1_inner_structure() {
    let x = example1_inner(3).unwrap();
    let dec = module_decomposition(&x).unwrap();
    // independent oracle: element (v, q) sits at 8 v + q, so the socle is
    // {8 v}; run through all 4-dimensional subspaces of F_3^6 and keep the
    // ones fixed by conjugation under the provenance generators of Q8
    let hgens = [x.provenance().elements["i"], x.provenance().elements["j"]];
    let mut oracle: Vec<ElementSet> = linalg::all_subspaces(3, 6, 4)
        .into_iter()
        .map(|sub| ElementSet::from_indices(x.order(), sub.into_iter().map(|v| 8 * v)))
        .filter(|s| hgens.iter().all(|&h| s.iter().all(|e| s.contains(x.conj(h, e)))))
        .collect();
    oracle.sort();
    let mut family = dec.w_family.clone();
    family.sort();
    let ok = x.order() == 5832 && dec.t == 3 && dec.endo_dim == 2 && family == oracle;
    line(
        9,
        ok,
        &format!(
            "t = {}, endo_dim = {}, |W family| = {}, oracle count = {}",
            dec.t,
            dec.endo_dim,
            dec.w_family.len(),
            oracle.len()
        ),
    );
    assert!(ok);
    assert!(dec.w_family_is_sound());
}

#[test]
fn criterion_10_explicit_vs_orbit() {
    let t = Instant::now();
    let groups = corpus(ORACLE_MAX_ORDER);
    let mut bad = Vec::new();
    let mut runs = 0;
    for (name, g) in &groups {
        for s in SPECS {
            let s = spec(s);
            let a = build_nonf_graph(g, &s, Mode::Explicit).unwrap();
            let b = build_nonf_graph(g, &s, Mode::OrbitReduced).unwrap();
            runs += 1;
            if a.isolated != b.isolated || a.components() != b.components() {
                bad.push(format!("{name} {s}"));
            }
        }
    }
    let ok = bad.len() <= ALLOWED_MISMATCHES;
    line(
        10,
        ok,
        &format!("{} groups, {runs} comparisons, mismatches {bad:?}, {:.1?}", groups.len(), t.elapsed()),
    );
    assert!(ok);
}

#[test]
fn connectivity_labels_are_as_documented() {
    assert_eq!(Connectivity::from_count(0).as_str(), "empty");
    assert!(Connectivity::from_count(0).is_connected());
    assert!(!Connectivity::from_count(2).is_connected());
}
