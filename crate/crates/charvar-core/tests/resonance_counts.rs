//! Frozen resonance-component censuses for the bundled arrangements.

use charvar_core::arrangement::Arrangement;
use charvar_core::resonance::{
    partition_component, resonance_components, ComponentKind, ResonanceComponent,
    DEFAULT_PARTITION_BUDGET,
};

fn load(name: &str) -> Arrangement {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    Arrangement::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn census(arr: &Arrangement) -> (usize, usize, Vec<ResonanceComponent>) {
    let comps = resonance_components(arr, 1, DEFAULT_PARTITION_BUDGET).unwrap();
    let locals = comps
        .iter()
        .filter(|c| matches!(c.kind, ComponentKind::Local { .. }))
        .count();
    (locals, comps.len() - locals, comps)
}

#[test]
fn braid_arrangement_census() {
    let (locals, partitions, _) = census(&load("a3"));
    assert_eq!((locals, partitions), (4, 1));
}

#[test]
fn non_fano_census() {
    let (locals, partitions, _) = census(&load("non-fano"));
    assert_eq!((locals, partitions), (6, 3));
}

#[test]
fn deleted_b3_census() {
    let arr = load("deleted-b3");
    let (locals, partitions, comps) = census(&arr);
    assert_eq!((locals, partitions), (7, 5));
    let dims3: Vec<&ResonanceComponent> = comps.iter().filter(|c| c.dim == 3).collect();
    assert_eq!(dims3.len(), 1);
    assert_eq!(dims3[0].support, vec![4, 5, 6, 7]);
    // The five essential two-dimensional partition components.
    let mut supports: Vec<Vec<usize>> = comps
        .iter()
        .filter(|c| matches!(c.kind, ComponentKind::Partition { .. }))
        .map(|c| c.support.clone())
        .collect();
    supports.sort();
    assert_eq!(
        supports,
        vec![
            vec![0, 1, 2, 3, 5, 7],
            vec![0, 1, 2, 4, 5, 7],
            vec![0, 1, 3, 5, 6, 7],
            vec![0, 2, 3, 5, 6, 7],
            vec![1, 2, 3, 4, 5, 7],
        ]
    );
}

#[test]
fn full_b3_census() {
    let arr = load("b3");
    let (locals, partitions, comps) = census(&arr);
    // 7 local, 11 from braid sub-arrangements, 1 essential.
    assert_eq!((locals, partitions), (7, 12));
    assert_eq!(comps.iter().filter(|c| c.dim == 3).count(), 3);
    assert_eq!(
        comps
            .iter()
            .filter(|c| matches!(c.kind, ComponentKind::Partition { .. }) && c.support.len() == 6)
            .count(),
        11
    );
    // The essential partition in full support.
    let gamma = partition_component(&arr, &[vec![0, 4, 5], vec![1, 3, 7], vec![2, 6, 8]])
        .expect("the essential partition cuts a plane");
    assert_eq!(gamma.dim, 2);
    assert!(comps.iter().any(|c| c.basis == gamma.basis));
}

#[test]
fn grunbaum_census() {
    let arr = load("grunbaum");
    let (locals, partitions, comps) = census(&arr);
    assert_eq!((locals, partitions), (10, 18));
    let gamma = partition_component(&arr, &[vec![0, 4, 9], vec![1, 3, 7], vec![2, 6, 8]])
        .expect("the essential partition cuts a plane");
    assert_eq!(gamma.dim, 2);
    assert!(comps.iter().any(|c| c.basis == gamma.basis));
}

#[test]
fn falk_pair_census() {
    let (l1, p1, _) = census(&load("falk-f1"));
    let (l2, p2, _) = census(&load("falk-f2"));
    assert_eq!(l1 + p1, 12);
    assert_eq!(l2 + p2, 11);
}

#[test]
fn ziegler_pair_census() {
    let (l1, p1, _) = census(&load("ziegler-z1"));
    assert_eq!((l1, p1), (11, 18));
    let (l2, p2, _) = census(&load("ziegler-z2"));
    assert_eq!((l2, p2), (11, 18));
}
