//! Frozen translated-component searches for the bundled arrangements.

use charvar_core::arrangement::Arrangement;
use charvar_core::search::search_translated_default;

fn load(name: &str) -> Arrangement {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    Arrangement::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn falk_pair_searches() {
    let hits1 = search_translated_default(&load("falk-f1"), 1, 2, 7, 3).unwrap();
    assert_eq!(hits1.len(), 1);
    // The embedded configuration omits the plane x - 3z.
    assert_eq!(hits1[0].support, vec![0, 1, 2, 3, 4, 5, 6, 8]);
    assert_eq!(hits1[0].coset.dim(), 1);
    assert_eq!(hits1[0].certificate.order, 2);
    let hits2 = search_translated_default(&load("falk-f2"), 1, 2, 7, 3).unwrap();
    assert!(hits2.is_empty());
}

#[test]
fn ziegler_pair_searches() {
    let hits1 = search_translated_default(&load("ziegler-z1"), 1, 2, 7, 3).unwrap();
    assert_eq!(hits1.len(), 3);
    let hits2 = search_translated_default(&load("ziegler-z2"), 1, 2, 7, 3).unwrap();
    assert_eq!(hits2.len(), 2);
    for h in hits1.iter().chain(&hits2) {
        assert_eq!(h.coset.dim(), 1);
        assert_eq!(h.certificate.order, 2);
        assert_eq!(h.certificate.generic_depth, 1);
    }
}

#[test]
fn grunbaum_search() {
    let hits = search_translated_default(&load("grunbaum"), 1, 2, 7, 3).unwrap();
    assert_eq!(hits.len(), 3);
    let mut missing: Vec<Vec<usize>> = hits
        .iter()
        .map(|h| (0..10).filter(|i| !h.support.contains(i)).collect())
        .collect();
    missing.sort();
    assert_eq!(missing, vec![vec![0, 1], vec![0, 6], vec![1, 6]]);
    for h in &hits {
        assert_eq!(h.coset.dim(), 1);
        assert_eq!(h.certificate.order, 2);
    }
}
