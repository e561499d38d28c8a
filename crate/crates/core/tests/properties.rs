use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use proptest::prelude::*;
use wsdepnet::collection::{
    parse_canonical, parse_sawsdl_document, write_canonical, Param, ServiceCollection, SourceFormat,
};
use wsdepnet::community::{modularity, walktrap};
use wsdepnet::depnet::{build_network, export, ExportFormat};
use wsdepnet::graph::Digraph;
use wsdepnet::matching::{build_archetypes, build_archetypes_pairwise, Matcher, MatcherKind};
use wsdepnet::powerlaw::{pvalue_from_replicates, select_xmin};
use wsdepnet::topology::{components, degree_correlation, transitivity, CorrelationMode};

const NAMES: [&str; 6] = ["_AUTHOR", "_author", "_BOOK", "_PRICE", " _PRICE", "_TITLE"];
const CONCEPTS: [&str; 4] = ["#author", "#book", "#price", "#title"];

fn param() -> impl Strategy<Value = Param> {
    (0..NAMES.len(), prop::option::of(0..CONCEPTS.len())).prop_map(|(n, c)| {
        let p = Param::named(NAMES[n]);
        match c {
            Some(c) => p.with_concept(CONCEPTS[c]),
            None => p,
        }
    })
}

type OpSpec = (Vec<Param>, Vec<Param>);

fn services() -> impl Strategy<Value = Vec<Vec<OpSpec>>> {
    let op = (
        prop::collection::vec(param(), 0..4),
        prop::collection::vec(param(), 0..4),
    );
    prop::collection::vec(prop::collection::vec(op, 0..4), 0..6)
}

fn collection(spec: &[Vec<OpSpec>]) -> ServiceCollection {
    let mut b = wsdepnet::collection::CollectionBuilder::new();
    for (i, ops) in spec.iter().enumerate() {
        b = b.service(format!("svc{i}"));
        for (j, (ins, outs)) in ops.iter().enumerate() {
            b = b.operation(format!("op{j}"), ins.clone(), outs.clone());
        }
    }
    b.build().unwrap()
}

fn matchers() -> [MatcherKind; 2] {
    [MatcherKind::SyntacticEqual, MatcherKind::SemanticExact]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_round_trip(spec in services()) {
        let c = collection(&spec);
        let back = parse_canonical(&write_canonical(&c), "mem.json").unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn instance_count_ignores_service_order(spec in services(), seed in any::<u64>()) {
        let c = collection(&spec);
        let mut services = c.clone().into_services();
        let k = services.len().max(1);
        services.rotate_left(seed as usize % k);
        let shuffled = ServiceCollection::new(services, SourceFormat::Canonical).unwrap();
        prop_assert_eq!(shuffled.instance_count(), c.instance_count());
        prop_assert_eq!(c.instance_count(), c.instances().count());
    }

    #[test]
    fn keyed_archetypes_equal_pairwise_closure(spec in services()) {
        let c = collection(&spec);
        prop_assume!(c.instance_count() <= 200);
        for kind in matchers() {
            let m = Matcher::new(kind);
            prop_assert_eq!(build_archetypes(&c, m), build_archetypes_pairwise(&c, &m));
        }
    }

    #[test]
    fn every_link_has_sound_witnesses(spec in services()) {
        let c = collection(&spec);
        for kind in matchers() {
            let net = build_network(&c, kind);
            let map = build_archetypes(&c, kind).instance_map;
            // archetype pairs each operation produces
            let mut expected: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
            let mut offset = 0;
            for op in c.operations() {
                let ins = &map[offset..offset + op.inputs.len()];
                let outs = &map[offset + op.inputs.len()..offset + op.instance_count()];
                for &u in ins {
                    for &v in outs {
                        if u != v {
                            expected.entry((u, v)).or_default().push(op.id.clone());
                        }
                    }
                }
                offset += op.instance_count();
            }
            prop_assert_eq!(net.links().len(), expected.len());
            for l in net.links() {
                let mut w = l.witness_operations.clone();
                w.sort();
                let mut e = expected[&(l.source, l.target)].clone();
                e.sort();
                prop_assert_eq!(l.weight, w.len());
                prop_assert_eq!(w, e);
            }
        }
    }

    #[test]
    fn duplicating_services_keeps_links(spec in services()) {
        let c = collection(&spec);
        let mut doubled = spec.clone();
        doubled.extend(spec.iter().cloned());
        let d = collection(&doubled);
        // unannotated instances are singletons under semantic matching, so
        // copies of them are new nodes there
        let all_annotated = c.instances().all(|p| p.concept.is_some());
        for kind in matchers() {
            if kind == MatcherKind::SemanticExact && !all_annotated {
                continue;
            }
            let a = build_network(&c, kind);
            let b = build_network(&d, kind);
            let pairs = |n: &wsdepnet::depnet::DependencyNetwork| {
                n.links().iter().map(|l| (l.source, l.target, l.weight)).collect::<Vec<_>>()
            };
            prop_assert_eq!(a.node_count(), b.node_count());
            let doubled_weights: Vec<_> = pairs(&a).into_iter().map(|(s, t, w)| (s, t, 2 * w)).collect();
            prop_assert_eq!(pairs(&b), doubled_weights);
        }
    }

    #[test]
    fn edge_list_is_deterministic(spec in services()) {
        let c = collection(&spec);
        let render = || {
            let mut out = Vec::new();
            export(&build_network(&c, MatcherKind::SemanticExact), ExportFormat::EdgeList, &mut out).unwrap();
            out
        };
        prop_assert_eq!(render(), render());
    }

    #[test]
    fn sawsdl_concepts_come_from_annotations(
        parts in prop::collection::vec((0..NAMES.len(), prop::option::of(0..CONCEPTS.len())), 1..8)
    ) {
        let mut body = String::from("<wsdl:message name=\"M\">");
        for (i, (n, c)) in parts.iter().enumerate() {
            let annotation = c.map(|c| format!(" sawsdl:modelReference=\"{}\"", CONCEPTS[c])).unwrap_or_default();
            body.push_str(&format!(
                "<wsdl:part name=\"{}{i}\" type=\"xsd:string\"{annotation}/>",
                NAMES[*n].trim()
            ));
        }
        body.push_str("</wsdl:message><wsdl:portType name=\"P\"><wsdl:operation name=\"op\">\
            <wsdl:input message=\"tns:M\"/></wsdl:operation></wsdl:portType>");
        let doc = format!(
            "<wsdl:definitions name=\"S\" xmlns:wsdl=\"http://schemas.xmlsoap.org/wsdl/\" \
             xmlns:sawsdl=\"http://www.w3.org/ns/sawsdl\" xmlns:tns=\"urn:t\">{body}</wsdl:definitions>"
        );
        let s = parse_sawsdl_document(&doc, Path::new("p.wsdl"), "p", None).unwrap();
        let found: Vec<Option<&str>> = s.operations[0].inputs.iter().map(|p| p.concept.as_deref()).collect();
        let annotated: Vec<Option<&str>> = parts.iter().map(|(_, c)| c.map(|c| CONCEPTS[c])).collect();
        prop_assert_eq!(found, annotated);
    }
}

fn digraph() -> impl Strategy<Value = Digraph> {
    (1usize..30).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..3 * n).prop_map(move |e| Digraph::new(n, e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn metric_ranges(g in digraph()) {
        let t = transitivity(&g);
        prop_assert!((0.0..=1.0).contains(&t));
        if let Ok(r) = degree_correlation(&g, CorrelationMode::Undirected) {
            prop_assert!((-1.0..=1.0).contains(&r));
        }
        let c = components(&g);
        let mut all: Vec<usize> = c.components.concat();
        all.sort();
        prop_assert_eq!(all, (0..g.node_count()).collect::<Vec<_>>());
        prop_assert!(c.components.windows(2).all(|w| w[0].len() >= w[1].len()));
        prop_assert_eq!(c.sizes.iter().map(|s| s.1).sum::<usize>(), g.link_count());
    }

    #[test]
    fn walktrap_partition_is_consistent(g in digraph(), t in 1usize..6) {
        let c = components(&g);
        let giant = g.induced(c.giant().unwrap());
        prop_assume!(giant.link_count() > 0);
        let (p, merges) = walktrap(&giant, t).unwrap();
        prop_assert_eq!(merges.len(), giant.node_count() - 1);
        let ids: BTreeSet<usize> = p.assignment.iter().copied().collect();
        prop_assert_eq!(ids, (0..p.community_count).collect::<BTreeSet<_>>());
        prop_assert!((p.modularity - modularity(&giant, &p.assignment).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn cutoff_selection_survives_duplication(
        values in prop::collection::btree_set(1u64..200, 2..12),
        extra in prop::collection::vec(0usize..5, 12),
    ) {
        // every value at least ten times, so duplication leaves the candidate set unchanged
        let data: Vec<u64> = values
            .iter()
            .zip(&extra)
            .flat_map(|(&v, &k)| std::iter::repeat_n(v, 10 + k))
            .collect();
        let twice: Vec<u64> = data.iter().chain(&data).copied().collect();
        let a = select_xmin(&data).unwrap();
        let b = select_xmin(&twice).unwrap();
        prop_assert_eq!(a.xmin, b.xmin);
        prop_assert!((a.alpha - b.alpha).abs() < 1e-9);
    }

    #[test]
    fn pvalue_decreases_with_observed_ks(
        replicates in prop::collection::vec(0.0f64..1.0, 1..200),
        a in 0.0f64..1.0,
        b in 0.0f64..1.0,
    ) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (p_lo, p_hi) = (pvalue_from_replicates(lo, &replicates), pvalue_from_replicates(hi, &replicates));
        prop_assert!(p_hi <= p_lo);
        prop_assert!((0.0..=1.0).contains(&p_lo));
    }
}
