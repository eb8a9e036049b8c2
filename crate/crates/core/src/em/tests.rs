
use super::*;
use crate::abgrp::Hom;
use crate::chain::homology_groups;
use crate::reduct::{verify_exhaustive, verify_reduction};
use crate::simp::{check_identities, simplex_counts};

fn groups(c: &ChainComplex, top: isize) -> Vec<String> {
    homology_groups(c, top).unwrap().iter().map(|g| g.to_string()).collect()
}

/// Tables of `K(π, 1)` on `Δ^q` from consecutive edge values.
fn table_from_edges(k: &EmSpace, edges: &[Vec<i64>]) -> CocycleTable {
    let q = edges.len();
    k.faces(q)
        .iter()
        .map(|f| {
            let mut acc = vec![0i64; k.group().len()];
            for e in &edges[f[0]..f[1]] {
                for (a, x) in acc.iter_mut().zip(e) {
                    *a += x;
                }
            }
            k.reduce(&acc)
        })
        .collect()
}

fn integer_probes(k: &EmSpace, max_q: usize) -> Vec<Chain> {
    let values = [-2i64, -1, 1, 3];
    let mut out = Vec::new();
    for q in 1..=max_q {
        for seed in 0..values.len().pow(q as u32).min(40) {
            let edges: Vec<Vec<i64>> = (0..q).map(|i| vec![values[(seed / values.len().pow(i as u32)) % values.len()]]).collect();
            let s = k.simplex_of(table_from_edges(k, &edges), q);
            assert!(!s.is_degenerate());
            out.push(Chain::generator(s.base, q as isize));
        }
    }
    out
}

#[test]
fn finite_models_satisfy_identities() {
    for orders in [vec![2u64], vec![3], vec![2, 2]] {
        let k = em_space(&AbGroup::from_orders(&orders), 1);
        check_identities(k.as_ref(), 4).unwrap();
    }
    let k2 = em_space(&AbGroup::cyclic(2), 2);
    check_identities(k2.as_ref(), 4).unwrap();
}

#[test]
fn nondegenerate_counts() {
    // K(Z/m, 1): words of nonzero letters
    assert_eq!(simplex_counts(em_space(&AbGroup::cyclic(2), 1).as_ref(), 4).unwrap(), vec![1, 1, 1, 1, 1]);
    assert_eq!(simplex_counts(em_space(&AbGroup::cyclic(3), 1).as_ref(), 4).unwrap(), vec![1, 2, 4, 8, 16]);
    // K(Z/2, 2): one vertex, no nondegenerate edge
    assert_eq!(simplex_counts(em_space(&AbGroup::cyclic(2), 2).as_ref(), 3).unwrap(), vec![1, 0, 1, 4]);
}

#[test]
fn integer_model_faces_commute() {
    let k = EmSpace::new(&AbGroup::free(1), 1);
    for c in integer_probes(&k, 4) {
        let q = c.degree() as usize;
        for (key, _) in c.iter() {
            let x = Simplex::nondegenerate(key.clone(), q);
            for j in 1..=q {
                for i in 0..j {
                    if q < 2 {
                        continue;
                    }
                    let a = x.face(&k, j).face(&k, i);
                    let b = x.face(&k, i).face(&k, j - 1);
                    assert_eq!(a, b, "d{i} d{j} on {x:?}");
                }
            }
        }
    }
}

#[test]
fn cyclic_reductions_exhaustive() {
    for m in [2u64, 3] {
        let eq = em_effective_homology(&AbGroup::cyclic(m), 1).unwrap();
        verify_exhaustive(eq.right(), 4).unwrap().into_result().unwrap();
    }
    let eq = em_effective_homology(&AbGroup::from_orders(&[2, 2]), 1).unwrap();
    verify_exhaustive(eq.right(), 3).unwrap().into_result().unwrap();
}

#[test]
fn integer_reduction_on_probes() {
    let group = AbGroup::free(1);
    let k = EmSpace::new(&group, 1);
    let eq = em_effective_homology(&group, 1).unwrap();
    let bottom: Vec<Chain> = (0..=1).map(|n| Chain::generator(Key::int(n), n)).collect();
    verify_reduction(eq.right(), &integer_probes(&k, 3), &bottom).into_result().unwrap();
    assert_eq!(groups(eq.effective(), 3), ["Z", "Z", "0", "0"]);
}

#[test]
fn effective_homology_matches_direct() {
    for orders in [vec![2u64], vec![3], vec![2, 2], vec![2, 3]] {
        let group = AbGroup::from_orders(&orders);
        let eq = em_effective_homology(&group, 1).unwrap();
        let direct = groups(&normalized_chains(&em_space(&group, 1)), 3);
        assert_eq!(groups(eq.effective(), 3), direct, "{group}");
    }
    let eq = em_effective_homology(&AbGroup::cyclic(2), 1).unwrap();
    assert_eq!(groups(eq.effective(), 5), ["Z", "Z/2", "0", "Z/2", "0", "Z/2"]);
}

#[test]
fn trivial_group_and_mixed() {
    let eq = em_effective_homology(&AbGroup::trivial(), 1).unwrap();
    assert_eq!(groups(eq.effective(), 2), ["Z", "0", "0"]);
    // Z ⊕ Z/2: one free and one torsion coordinate
    let eq = em_effective_homology(&AbGroup::from_invariants(&[2], 1), 1).unwrap();
    assert_eq!(groups(eq.effective(), 3), ["Z", "Z + Z/2", "Z/2", "Z/2"]);
}

#[test]
fn higher_degree_needs_provider() {
    assert!(matches!(em_effective_homology(&AbGroup::cyclic(2), 2), Err(Error::Unsupported(_))));

    struct Finite;
    impl EmProvider for Finite {
        fn equivalence(&self, g: &AbGroup, _: usize, chains: &ChainComplex) -> Option<Result<StrongEquivalence>> {
            g.order().map(|_| Ok(StrongEquivalence::identity(chains)))
        }
    }
    let mut reg = EmRegistry::default();
    reg.register(Arc::new(Finite));
    let eq = reg.effective_homology(&AbGroup::cyclic(2), 2).unwrap();
    // H_*(K(Z/2, 2)) = Z, 0, Z/2, 0, Z/4
    assert_eq!(groups(eq.effective(), 4), ["Z", "0", "Z/2", "0", "Z/4"]);
}

#[test]
fn doubling_map() {
    let z = AbGroup::free(1);
    let two = Hom::new(z.clone(), z.clone(), crate::abgrp::IntMatrix::from_rows(&[[2i64]])).unwrap();
    let f = em_map(&two, 1);
    let k = EmSpace::new(&z, 1);
    let edge = k.simplex_of(vec![vec![3]], 1);
    let image = f.apply(&edge);
    assert_eq!(EmSpace::table(&image.base), vec![vec![6]]);
    assert!(f.source().contains(&edge.base, 1));
}
