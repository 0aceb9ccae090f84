//! Property tests for invariants that hold for every group and class.

use proptest::prelude::*;

use nonf::analysis::{analyze, parse_report};
use nonf::class::ClassSpec;
use nonf::corpus::{format_group, parse_group, FamilySpec};
use nonf::graph::{build_nonf_graph, Mode};
use nonf::subgroup::{closure, is_subgroup};
use nonf::{ElementSet, FiniteGroup};

const FAMILIES: &[&str] = &[
    "cyclic(1)",
    "cyclic(12)",
    "cyclic(30)",
    "dihedral(4)",
    "dihedral(6)",
    "dihedral(15)",
    "generalized_quaternion(8)",
    "generalized_quaternion(16)",
    "symmetric(3)",
    "symmetric(4)",
    "alternating(4)",
    "elementary_abelian(2,3)",
    "elementary_abelian(3,2)",
];

const SPECS: &[&str] = &["cyclic", "oneprime", "twoprimes", "abelian", "nilpotent", "soluble"];

fn family(i: usize) -> FiniteGroup {
    FamilySpec::parse(FAMILIES[i]).unwrap().construct().unwrap()
}

/// A family group, or a direct product of two small cyclic groups.
fn small_group() -> impl Strategy<Value = FiniteGroup> {
    prop_oneof![
        (0..FAMILIES.len()).prop_map(family),
        (1usize..8, 1usize..8).prop_map(|(a, b)| {
            FiniteGroup::direct_product(&FiniteGroup::cyclic(a).unwrap(), &FiniteGroup::cyclic(b).unwrap()).unwrap()
        }),
    ]
}

fn spec() -> impl Strategy<Value = ClassSpec> {
    (0..SPECS.len()).prop_map(|i| ClassSpec::parse(SPECS[i]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_is_a_subgroup_containing_its_generators(g in small_group(), seeds in prop::collection::vec(any::<usize>(), 0..4)) {
        let gens: Vec<usize> = seeds.iter().map(|s| s % g.order()).collect();
        let h = closure(&g, &gens);
        prop_assert!(is_subgroup(&g, &h));
        prop_assert_eq!(g.order() % h.len(), 0);
        for x in gens {
            prop_assert!(h.contains(x));
        }
    }

    #[test]
    fn isolated_set_and_components_partition_the_group(g in small_group(), s in spec()) {
        let graph = build_nonf_graph(&g, &s, Mode::OrbitReduced).unwrap();
        prop_assert_eq!(graph.isolated.intersection(&graph.vertices).len(), 0);
        prop_assert_eq!(graph.isolated.len() + graph.vertices.len(), g.order());
        let comps = graph.components();
        prop_assert_eq!(comps.len(), graph.component_count);
        let mut union = ElementSet::empty(g.order());
        for c in &comps {
            prop_assert!(!c.is_empty());
            prop_assert_eq!(union.intersection(c).len(), 0);
            union = union.union(c);
        }
        prop_assert_eq!(union, graph.vertices.clone());
    }

    #[test]
    fn isolated_set_matches_brute_force_adjacency(g in small_group(), s in spec()) {
        prop_assume!(g.order() <= 60);
        let graph = build_nonf_graph(&g, &s, Mode::Explicit).unwrap();
        for x in 0..g.order() {
            let mut isolated = true;
            for y in 0..g.order() {
                let adj = graph.adjacent(x, y).unwrap();
                prop_assert_eq!(adj, graph.adjacent(y, x).unwrap());
                if adj {
                    isolated = false;
                    prop_assert_eq!(graph.component_label[x], graph.component_label[y]);
                }
            }
            prop_assert_eq!(isolated, graph.isolated.contains(x));
        }
    }

    #[test]
    fn isolated_set_is_closed_under_conjugation(g in small_group(), s in spec()) {
        let graph = build_nonf_graph(&g, &s, Mode::OrbitReduced).unwrap();
        for h in 0..g.order() {
            for x in graph.isolated.iter() {
                prop_assert!(graph.isolated.contains(g.conj(h, x)));
            }
        }
    }

    #[test]
    fn explicit_and_orbit_modes_agree(g in small_group(), s in spec()) {
        let a = build_nonf_graph(&g, &s, Mode::Explicit).unwrap();
        let b = build_nonf_graph(&g, &s, Mode::OrbitReduced).unwrap();
        prop_assert_eq!(&a.isolated, &b.isolated);
        prop_assert_eq!(a.components(), b.components());
    }

    #[test]
    fn group_file_round_trip_keeps_the_table(g in small_group()) {
        // table files carry the multiplication, not the generating set, so
        // compare tables and require the text to be a fixed point
        let text = format_group(&g);
        let back = parse_group(&text).unwrap();
        prop_assert_eq!(back.order(), g.order());
        for a in 0..g.order() {
            for b in 0..g.order() {
                prop_assert_eq!(back.mul(a, b), g.mul(a, b));
            }
        }
        prop_assert_eq!(format_group(&back), text);
    }

    #[test]
    fn report_text_parses_back(g in small_group(), s in spec()) {
        let r = analyze(&g, &s, Mode::OrbitReduced).unwrap();
        let kv = parse_report(&r.to_text(&g)).unwrap();
        let get = |k: &str| kv.iter().find(|(a, _)| a == k).map(|(_, v)| v.clone());
        prop_assert_eq!(get("order"), Some(g.order().to_string()));
        prop_assert_eq!(get("isolated"), Some(r.isolated.to_string()));
        prop_assert_eq!(get("component_count"), Some(r.component_count.to_string()));
    }

    #[test]
    fn element_set_algebra(n in 1usize..200, a in prop::collection::vec(any::<usize>(), 0..50), b in prop::collection::vec(any::<usize>(), 0..50)) {
        let a = ElementSet::from_indices(n, a.into_iter().map(|x| x % n));
        let b = ElementSet::from_indices(n, b.into_iter().map(|x| x % n));
        prop_assert_eq!(a.union(&b).len() + a.intersection(&b).len(), a.len() + b.len());
        prop_assert_eq!(a.complement().len(), n - a.len());
        prop_assert_eq!(a.difference(&b), a.intersection(&b.complement()));
        prop_assert!(a.intersection(&b).is_subset(&a));
    }
}
