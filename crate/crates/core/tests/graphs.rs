use navrel::eval::evaluate;
use navrel::expr::{enumerate_exprs, Fragment};
use navrel::graph::{
    classify, enumerate, enumerate_chains, enumerate_trees, find_homomorphism, fixtures, instance_count,
    standard_alphabet, Bound, Graph, GraphClass,
};

fn is_hom(g1: &Graph, g2: &Graph, h: &[usize], injective: bool) -> bool {
    let edges2: Vec<(usize, usize, usize)> = g2.edges().collect();
    let preserved = g1.edges().all(|(f, l, t)| {
        let l2 = g2.label_index(&g1.labels()[l]).unwrap();
        edges2.contains(&(h[f], l2, h[t]))
    });
    let distinct = !injective || (0..h.len()).all(|i| (0..i).all(|j| h[i] != h[j]));
    preserved && distinct
}

#[test]
fn found_maps_are_homomorphisms() {
    let ab = standard_alphabet(2);
    let trees: Vec<Graph> = enumerate_trees(4, &ab).collect();
    let chains: Vec<Graph> = enumerate_chains(4, &ab).collect();
    let mut found = 0;
    for t in &trees {
        for c in &chains {
            for injective in [false, true] {
                if let Some(h) = find_homomorphism(c, t, injective) {
                    found += 1;
                    assert!(is_hom(c, t, &h, injective));
                }
                if let Some(h) = find_homomorphism(t, c, injective) {
                    assert!(is_hom(t, c, &h, injective));
                }
            }
        }
    }
    assert!(found > 100);
}

#[test]
fn search_is_complete_on_small_pairs() {
    // brute force over every node map
    let ab = standard_alphabet(1);
    let trees: Vec<Graph> = enumerate_trees(4, &ab).collect();
    for g1 in &trees {
        for g2 in &trees {
            let (n1, n2) = (g1.node_count(), g2.node_count());
            let mut any = false;
            let mut any_inj = false;
            for code in 0..n2.pow(n1 as u32) {
                let h: Vec<usize> = (0..n1).map(|i| code / n2.pow(i as u32) % n2).collect();
                any |= is_hom(g1, g2, &h, false);
                any_inj |= is_hom(g1, g2, &h, true);
            }
            assert_eq!(find_homomorphism(g1, g2, false).is_some(), any);
            assert_eq!(find_homomorphism(g1, g2, true).is_some(), any_inj);
        }
    }
}

#[test]
fn labels_must_match_by_name() {
    let a = Graph::from_triples(&[("x", "a", "y")]);
    let b = Graph::from_triples(&[("x", "b", "y")]);
    assert!(find_homomorphism(&a, &b, false).is_none());
    assert!(find_homomorphism(&a, &a, true).is_some());
}

#[test]
fn homomorphic_images_preserve_positive_queries() {
    let ab = standard_alphabet(2);
    let exprs = enumerate_exprs(Fragment::parse("conv tc pi cap").unwrap(), &ab, 2);
    let trees: Vec<Graph> = enumerate_trees(4, &ab).collect();
    for g1 in &trees {
        for g2 in &trees {
            let Some(h) = find_homomorphism(g1, g2, false) else { continue };
            for e in &exprs {
                let (r1, r2) = (evaluate(e, g1).unwrap(), evaluate(e, g2).unwrap());
                assert!(r1.pairs().all(|(m, n)| r2.contains(h[m], h[n])), "{e}");
            }
        }
    }
}

#[test]
fn coprojection_is_not_closed_under_homomorphisms() {
    let e = navrel::parse("copi1(a)").unwrap();
    let (c1, c2) = (fixtures::unlabeled_chain(2, "a"), fixtures::unlabeled_chain(3, "a"));
    let h = find_homomorphism(&c1, &c2, true).unwrap();
    let (r1, r2) = (evaluate(&e, &c1).unwrap(), evaluate(&e, &c2).unwrap());
    assert!(r1.pairs().any(|(m, n)| !r2.contains(h[m], h[n])));
}

#[test]
fn enumerators_match_their_counts() {
    for class in GraphClass::ALL {
        let labels = if class.is_unlabeled() { 1 } else { 2 };
        let bound = Bound::new(4, labels).with_max_edges(3);
        let ab = standard_alphabet(labels);
        let got = enumerate(class, &ab, bound).count() as u128;
        assert_eq!(got, instance_count(class, labels, bound), "{class}");
    }
}

#[test]
fn enumerated_trees_are_trees() {
    let ab = standard_alphabet(2);
    for t in enumerate_trees(6, &ab) {
        assert!(classify(&t).is_tree());
    }
    assert_eq!(enumerate_trees(6, &ab).count(), 1619);
    assert!(!classify(&fixtures::power_dag()).is_tree());
}
