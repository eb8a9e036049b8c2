use std::collections::HashMap;

use proptest::prelude::*;

use super::*;
use crate::chain::{explicit_complex, homology_groups, Chain, ChainComplex, Key, LinearMap};
use crate::error::Error;

fn k(s: &str) -> Key {
    Key::str(s)
}

fn gen(s: &str, n: isize) -> Chain {
    Chain::generator(k(s), n)
}

fn chain(n: isize, terms: &[(&str, i64)]) -> Chain {
    Chain::from_terms(n, terms.iter().map(|(s, c)| (k(s), *c)))
}

/// A map given on generators; unlisted generators go to zero.
fn table(shift: isize, entries: Vec<(&str, isize, Chain)>) -> LinearMap {
    let m: HashMap<(Key, isize), Chain> = entries.into_iter().map(|(s, n, c)| ((k(s), n), c)).collect();
    LinearMap::new(shift, move |key, n| m.get(&(key.clone(), n)).cloned().unwrap_or_else(|| Chain::zero(n + shift)))
}

fn complex(name: &str, bases: &[&[&str]], d: Vec<(&str, isize, Chain)>) -> ChainComplex {
    let bases = bases.iter().map(|b| b.iter().map(|s| k(s)).collect()).collect();
    let d = d.into_iter().map(|(s, n, c)| ((k(s), n), c)).collect();
    explicit_complex(name, bases, d).unwrap()
}

/// The interval `v --e--> w` collapsed onto `v`.
fn interval(v: &str, w: &str, e: &str) -> Reduction {
    let top = complex("I", &[&[v, w], &[e]], vec![(e, 1, chain(0, &[(w, 1), (v, -1)]))]);
    let bottom = complex("pt", &[&[v]], vec![]);
    Reduction::new(
        top,
        bottom,
        table(0, vec![(v, 0, gen(v, 0)), (w, 0, gen(v, 0))]),
        LinearMap::identity(),
        table(1, vec![(w, 0, gen(e, 1))]),
    )
}

#[test]
fn identity_reduction_verifies() {
    let c = interval("v", "w", "e").top().clone();
    let r = Reduction::identity(&c);
    assert!(r.is_identity());
    assert!(verify_exhaustive(&r, 2).unwrap().passed);
}

#[test]
fn interval_verifies() {
    let r = interval("v", "w", "e");
    let report = verify_exhaustive(&r, 2).unwrap();
    assert!(report.passed, "{report:?}");
    assert_eq!(report.top_probes, 3);
    assert_eq!(report.bottom_probes, 1);
}

#[test]
fn corrupted_homotopy_is_caught() {
    let r = interval("v", "w", "e");
    let bad = Reduction::new(
        r.top().clone(),
        r.bottom().clone(),
        r.projection().clone(),
        r.inclusion().clone(),
        r.homotopy().scale(2),
    );
    let report = verify_exhaustive(&bad, 2).unwrap();
    assert!(!report.passed);
    let v = report.violation.clone().unwrap();
    assert_eq!(v.law, "∂η + η∂ = 1 − βα");
    assert!(report.to_json().contains("\"passed\":false"));
    assert!(matches!(report.into_result(), Err(Error::Audit { .. })));
}

#[test]
fn easy_lemma_transports_perturbation() {
    // bottom: p (deg 0), q (deg 1); perturb ∂q = 2p
    let top = complex(
        "T",
        &[&["p", "w"], &["q", "e"]],
        vec![("e", 1, chain(0, &[("w", 1), ("p", -1)]))],
    );
    let bottom = complex("B", &[&["p"], &["q"]], vec![]);
    let r = Reduction::new(
        top,
        bottom,
        table(0, vec![("p", 0, gen("p", 0)), ("w", 0, gen("p", 0)), ("q", 1, gen("q", 1))]),
        LinearMap::identity(),
        table(1, vec![("w", 0, gen("e", 1))]),
    );
    assert!(verify_exhaustive(&r, 2).unwrap().passed);
    let delta = table(-1, vec![("q", 1, chain(0, &[("p", 2)]))]);
    let p = easy_perturbation(&r, &delta).unwrap();
    assert!(verify_exhaustive(&p, 2).unwrap().passed);
    assert_eq!(p.top().d_gen(&k("q"), 1), chain(0, &[("p", 2)]));
    let h = homology_groups(p.top(), 1).unwrap();
    assert_eq!(h[0].to_string(), "Z/2");
    assert_eq!(h[1].to_string(), "0");
    assert_eq!(homology_groups(p.bottom(), 1).unwrap(), h);
}

#[test]
fn easy_lemma_keeps_identity() {
    let c = complex("B", &[&["p"], &["q"]], vec![]);
    let delta = table(-1, vec![("q", 1, gen("p", 0))]);
    let p = easy_perturbation(&Reduction::identity(&c), &delta).unwrap();
    assert!(p.is_identity());
    assert!(p.top().same(p.bottom()));
    assert!(verify_exhaustive(&p, 1).unwrap().passed);
}

/// Top `x, z` in degree 0 and `y` in degree 1 with `∂y = z`, reduced onto
/// `x`; the perturbation `δy = x` gives `α'(z) = −x`.
#[test]
fn basic_lemma_three_generators() {
    let top = complex("T", &[&["x", "z"], &["y"]], vec![("y", 1, gen("z", 0))]);
    let bottom = complex("B", &[&["x"]], vec![]);
    let r = Reduction::new(
        top,
        bottom,
        table(0, vec![("x", 0, gen("x", 0))]),
        LinearMap::identity(),
        table(1, vec![("z", 0, gen("y", 1))]),
    );
    assert!(verify_exhaustive(&r, 1).unwrap().passed);
    let delta = table(-1, vec![("y", 1, gen("x", 0))]);
    let p = basic_perturbation(&r, &delta, None).unwrap();
    assert!(verify_exhaustive(&p, 1).unwrap().passed);
    assert_eq!(p.projection().apply_gen(&k("z"), 0), chain(0, &[("x", -1)]));
    assert_eq!(p.top().d_gen(&k("y"), 1), chain(0, &[("x", 1), ("z", 1)]));
}

#[test]
fn perturbing_back_restores_the_differential() {
    let top = complex(
        "T",
        &[&["p", "w"], &["q", "e"]],
        vec![("e", 1, chain(0, &[("w", 1), ("p", -1)]))],
    );
    let bottom = complex("B", &[&["p"], &["q"]], vec![]);
    let r = Reduction::new(
        top,
        bottom,
        table(0, vec![("p", 0, gen("p", 0)), ("w", 0, gen("p", 0)), ("q", 1, gen("q", 1))]),
        LinearMap::identity(),
        table(1, vec![("w", 0, gen("e", 1))]),
    );
    let delta = table(-1, vec![("q", 1, chain(0, &[("w", 3)]))]);
    let once = basic_perturbation(&r, &delta, None).unwrap();
    assert!(verify_exhaustive(&once, 1).unwrap().passed);
    assert_eq!(once.bottom().d_gen(&k("q"), 1), chain(0, &[("p", 3)]));
    let twice = basic_perturbation(&once, &delta.neg(), None).unwrap();
    assert!(verify_exhaustive(&twice, 1).unwrap().passed);
    assert!(twice.top().d_gen(&k("q"), 1).is_zero());
    assert!(twice.bottom().d_gen(&k("q"), 1).is_zero());
}

#[test]
fn non_nilpotent_perturbation_is_rejected() {
    // ∂e = w − v contracted by η(w) = e; δ(e) = w makes ηδ(e) = e
    let r = interval("v", "w", "e");
    let delta = table(-1, vec![("e", 1, gen("w", 0))]);
    match basic_perturbation(&r, &delta, Some(5)) {
        Err(Error::NonNilpotent { bound, .. }) => assert_eq!(bound, 5),
        other => panic!("expected NonNilpotent, got {other:?}"),
    }
}

#[test]
fn compose_with_identity_is_the_reduction() {
    let r = interval("v", "w", "e");
    let a = compose_reductions(&Reduction::identity(r.top()), &r).unwrap();
    let b = compose_reductions(&r, &Reduction::identity(r.bottom())).unwrap();
    for x in [a, b] {
        assert!(x.top().same(r.top()) && x.bottom().same(r.bottom()));
        assert!(verify_exhaustive(&x, 1).unwrap().passed);
    }
    let other = interval("v", "w", "e");
    assert!(matches!(compose_reductions(&r, &other), Err(Error::ComplexMismatch(..))));
}

#[test]
fn compose_reductions_chain() {
    // a -x-> b -y-> c onto a, through the interval on a, b
    let big = complex(
        "P",
        &[&["a", "b", "c"], &["x", "y"]],
        vec![("x", 1, chain(0, &[("b", 1), ("a", -1)])), ("y", 1, chain(0, &[("c", 1), ("b", -1)]))],
    );
    let mid = complex("I", &[&["a", "b"], &["x"]], vec![("x", 1, chain(0, &[("b", 1), ("a", -1)]))]);
    let r1 = Reduction::new(
        big,
        mid.clone(),
        table(0, vec![("a", 0, gen("a", 0)), ("b", 0, gen("b", 0)), ("c", 0, gen("b", 0)), ("x", 1, gen("x", 1))]),
        LinearMap::identity(),
        table(1, vec![("c", 0, gen("y", 1))]),
    );
    let r2 = interval("a", "b", "x").rebased(&mid, interval("a", "b", "x").bottom());
    let c = compose_reductions(&r1, &r2).unwrap();
    assert!(verify_exhaustive(&c, 1).unwrap().passed);
    assert_eq!(c.homotopy().apply_gen(&k("c"), 0), chain(1, &[("x", 1), ("y", 1)]));
}

#[test]
fn compose_equivalences_through_pullback() {
    let r1 = interval("v", "w", "e");
    let d = r1.bottom().clone();
    let t2 = complex(
        "T2",
        &[&["v", "b", "c"], &["x", "y"]],
        vec![("x", 1, chain(0, &[("b", 1), ("v", -1)])), ("y", 1, chain(0, &[("c", 1), ("b", -1)]))],
    );
    let r2 = Reduction::new(
        t2.clone(),
        d,
        table(0, vec![("v", 0, gen("v", 0)), ("b", 0, gen("v", 0)), ("c", 0, gen("v", 0))]),
        LinearMap::identity(),
        table(1, vec![("b", 0, gen("x", 1)), ("c", 0, chain(1, &[("x", 1), ("y", 1)]))]),
    );
    assert!(verify_exhaustive(&r2, 1).unwrap().passed);
    let e1 = StrongEquivalence::from_reduction(r1.clone());
    let e2 = StrongEquivalence::new(r2, Reduction::identity(&t2)).unwrap();
    let e = compose_equivalences(&e1, &e2).unwrap();
    assert!(!e.left().is_identity() && !e.right().is_identity());
    assert!(e.original().same(r1.top()));
    assert!(e.effective().same(&t2));
    let rep = verify_exhaustive(e.left(), 2).unwrap();
    assert!(rep.passed, "{rep:?}");
    assert!(verify_exhaustive(e.right(), 2).unwrap().passed);
    let h = homology_groups(e.top(), 2).unwrap();
    assert_eq!(h, homology_groups(&t2, 2).unwrap());
}

#[test]
fn compose_equivalences_mismatch() {
    let a = StrongEquivalence::from_reduction(interval("v", "w", "e"));
    let b = StrongEquivalence::from_reduction(interval("v", "w", "e"));
    assert!(compose_equivalences(&a, &b).is_err());
}

#[test]
fn tensor_of_reductions() {
    let r1 = interval("v", "w", "e");
    let r2 = interval("a", "b", "x");
    let t = tensor_reductions(&r1, &r2);
    assert!(verify_exhaustive(&t, 2).unwrap().passed);
    let h = homology_groups(t.top(), 2).unwrap();
    assert_eq!(h[0].to_string(), "Z");
    assert!(h[1].is_trivial() && h[2].is_trivial());
}

#[test]
fn with_fixed_homotopy_restores_side_conditions() {
    // a homotopy with η(v) = e breaks ηβ = 0 but still satisfies the
    // homotopy identity up to βα, since β(v) = v and ∂e = w − v
    let r = interval("v", "w", "e");
    let bad_h = table(1, vec![("w", 0, gen("e", 1)), ("e", 1, Chain::zero(2))]);
    let bad = Reduction::new(r.top().clone(), r.bottom().clone(), r.projection().clone(), r.inclusion().clone(), bad_h.add(&table(1, vec![("v", 0, Chain::zero(1))])));
    assert!(verify_exhaustive(&bad, 1).unwrap().passed);
    let fixed = bad.with_fixed_homotopy();
    assert!(verify_exhaustive(&fixed, 1).unwrap().passed);
}

/// Two stages: the interval `v, w, e` onto `v`, and a single 1-cell `s`
/// glued in by `δs = w − v`.
fn two_stages() -> (StrongEquivalence, LinearMap) {
    let s0 = StrongEquivalence::from_reduction(interval("v", "w", "e"));
    let cell = complex("S", &[&[], &["s"]], vec![]);
    let s1 = StrongEquivalence::identity(&cell);
    let sum = sum_stages(&[s0, s1]).unwrap();
    let delta = table(-1, vec![("s", 1, chain(0, &[("w", 1), ("v", -1)]))]);
    (sum, delta)
}

#[test]
fn sum_of_stages() {
    let (sum, _) = two_stages();
    assert!(sum.left().is_identity());
    assert_eq!(sum.top().filtration(&k("s"), 1), Some(1));
    assert_eq!(sum.top().filtration(&k("e"), 1), Some(0));
    assert!(verify_exhaustive(sum.right(), 2).unwrap().passed);
}

#[test]
fn filtered_assembly_builds_a_circle() {
    let (sum, delta) = two_stages();
    let opts = AssemblyOptions { check_degree: 2, ..Default::default() };
    let e = filtered_assembly(&sum, &delta, &opts).unwrap();
    assert!(verify_exhaustive(e.right(), 2).unwrap().passed);
    let h = homology_groups(e.effective(), 2).unwrap();
    assert_eq!(h.iter().map(|g| g.to_string()).collect::<Vec<_>>(), ["Z", "Z", "0"]);
    assert_eq!(homology_groups(e.original(), 2).unwrap(), h);
}

#[test]
fn filtered_assembly_rejects_rising_perturbation() {
    let (sum, _) = two_stages();
    // e → v stays inside stage 0
    let flat = table(-1, vec![("e", 1, gen("v", 0)), ("s", 1, gen("v", 0))]);
    assert!(matches!(
        filtered_assembly(&sum, &flat, &AssemblyOptions { check_degree: 2, ..Default::default() }),
        Err(Error::NonNilpotent { .. })
    ));
}

// ---------------------------------------------------------------------
// random perturbations of a split complex, checked against dense matrices

#[derive(Clone, Debug)]
struct Gen {
    degree: usize,
    level: usize,
    kind: u8, // 0 bottom, 1 cone top, 2 cone base
    partner: usize,
}

type Dense = Vec<Vec<i64>>;

fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][l] * b[l][j];
                }
            }
        }
    }
    c
}

fn add(a: &Dense, b: &Dense, s: i64) -> Dense {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + s * q).collect()).collect()
}

fn eye(n: usize) -> Dense {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// `Σ (−a)^i` for nilpotent `a`.
fn neumann(a: &Dense) -> Dense {
    let n = a.len();
    let mut term = eye(n);
    let mut sum = eye(n);
    for _ in 0..=n {
        term = mul(&term, a).iter().map(|r| r.iter().map(|x| -x).collect()).collect();
        sum = add(&sum, &term, 1);
    }
    sum
}

fn as_map(m: &Dense, gens: &[Gen], shift: isize) -> LinearMap {
    let m = m.clone();
    let degs: Vec<usize> = gens.iter().map(|g| g.degree).collect();
    LinearMap::new(shift, move |key, n| {
        let j = key.as_usize();
        let out = n + shift;
        Chain::from_terms(
            out,
            (0..m.len()).filter(|&i| m[i][j] != 0 && degs[i] as isize == out).map(|i| (Key::int(i as i64), m[i][j])),
        )
    })
}

fn setup() -> impl Strategy<Value = (Vec<Gen>, Dense)> {
    let shape = proptest::collection::vec((0usize..3, 0usize..3, 0usize..3), 1..6);
    shape.prop_flat_map(|items| {
        // each item: (degree, level, kind 0 = bottom, else a cone pair)
        let mut gens = Vec::new();
        for (deg, level, kind) in items {
            if kind == 0 {
                gens.push(Gen { degree: deg, level, kind: 0, partner: 0 });
            } else {
                let i = gens.len();
                gens.push(Gen { degree: deg + 1, level, kind: 1, partner: i + 1 });
                gens.push(Gen { degree: deg, level, kind: 2, partner: i });
            }
        }
        let n = gens.len();
        (Just(gens), proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_basic_perturbation((gens, noise) in setup()) {
        let n = gens.len();
        let mut d0 = vec![vec![0; n]; n];
        let mut eta = vec![vec![0; n]; n];
        for (j, g) in gens.iter().enumerate() {
            if g.kind == 1 {
                d0[g.partner][j] = 1;
                eta[j][g.partner] = 1;
            }
        }
        // unipotent change of basis lowering the level
        let mut nil = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                if gens[i].degree == gens[j].degree && gens[i].level < gens[j].level {
                    nil[i][j] = noise[i][j];
                }
            }
        }
        let phi = add(&eye(n), &nil, 1);
        let phi_inv = neumann(&nil);
        let d = mul(&mul(&phi, &d0), &phi_inv);
        let delta = add(&d, &d0, -1);

        let keys_at = |deg: usize, pred: &dyn Fn(&Gen) -> bool| -> Vec<Key> {
            (0..n).filter(|&i| gens[i].degree == deg && pred(&gens[i])).map(|i| Key::int(i as i64)).collect()
        };
        let top_bases: Vec<Vec<Key>> = (0..4).map(|deg| keys_at(deg, &|_| true)).collect();
        let bot_bases: Vec<Vec<Key>> = (0..4).map(|deg| keys_at(deg, &|g| g.kind == 0)).collect();
        let top = ChainComplex::builder("T", as_map(&d0, &gens, -1))
            .basis(move |m| top_bases.get(m as usize).cloned().unwrap_or_default())
            .build();
        let bottom = ChainComplex::builder("B", LinearMap::zero(-1))
            .basis(move |m| bot_bases.get(m as usize).cloned().unwrap_or_default())
            .build();
        let mut proj = vec![vec![0; n]; n];
        for i in 0..n {
            if gens[i].kind == 0 {
                proj[i][i] = 1;
            }
        }
        let r = Reduction::new(top, bottom, as_map(&proj, &gens, 0), as_map(&proj, &gens, 0), as_map(&eta, &gens, 1));
        prop_assert!(verify_exhaustive(&r, 3).unwrap().passed);

        let p = basic_perturbation(&r, &as_map(&delta, &gens, -1), None).unwrap();
        prop_assert!(verify_exhaustive(&p, 3).unwrap().passed);

        // δ' = α Σ(−δη)^i δ β
        let psi = neumann(&mul(&delta, &eta));
        let expected = mul(&mul(&mul(&proj, &psi), &delta), &proj);
        for j in 0..n {
            if gens[j].kind != 0 {
                continue;
            }
            let got = p.bottom().d_gen(&Key::int(j as i64), gens[j].degree as isize);
            for i in 0..n {
                let want = if gens[i].kind == 0 && gens[i].degree + 1 == gens[j].degree { expected[i][j] } else { 0 };
                prop_assert_eq!(got.coeff(&Key::int(i as i64)), want);
            }
        }
        prop_assert_eq!(homology_groups(p.top(), 3).unwrap(), homology_groups(p.bottom(), 3).unwrap());
    }
}

#[test]
fn two_point_stages_make_a_contractible_cone() {
    let p = complex("p", &[&["p"]], vec![]);
    let q = complex("q", &[&[], &["q"]], vec![]);
    let sum = sum_stages(&[StrongEquivalence::identity(&p), StrongEquivalence::identity(&q)]).unwrap();
    let delta = table(-1, vec![("q", 1, gen("p", 0))]);
    let e = filtered_assembly(&sum, &delta, &AssemblyOptions { check_degree: 2, ..Default::default() }).unwrap();
    assert!(verify_exhaustive(e.right(), 2).unwrap().passed);
    let direct = complex("cone", &[&["p"], &["q"]], vec![("q", 1, gen("p", 0))]);
    let h = homology_groups(&direct, 2).unwrap();
    assert!(h.iter().all(|g| g.is_trivial()));
    assert_eq!(homology_groups(e.effective(), 2).unwrap(), h);
}

#[test]
fn single_stage_with_zero_perturbation() {
    let sum = sum_stages(&[StrongEquivalence::from_reduction(interval("v", "w", "e"))]).unwrap();
    let e = filtered_assembly(&sum, &LinearMap::zero(-1), &AssemblyOptions { check_degree: 2, ..Default::default() })
        .unwrap();
    assert!(verify_exhaustive(e.right(), 2).unwrap().passed);
    assert_eq!(e.effective().basis(0).unwrap().as_ref(), &vec![k("v")]);
    assert!(e.effective().basis(1).unwrap().is_empty());
}

#[test]
fn threefold_composition_is_bracketing_independent() {
    // C ⇐ C ⇒ pt, pt ⇐ T ⇒ T, T ⇐ T ⇒ pt' through nontrivial legs
    let r1 = interval("v", "w", "e");
    let pt = r1.bottom().clone();
    let t = complex("T", &[&["v", "b"], &["x"]], vec![("x", 1, chain(0, &[("b", 1), ("v", -1)]))]);
    let r2 = interval("v", "b", "x").rebased(&t, &pt);
    let r3 = interval("v", "b", "x").rebased(&t, &complex("pt2", &[&["v"]], vec![]));
    let e1 = StrongEquivalence::from_reduction(r1);
    let e2 = StrongEquivalence::new(r2, Reduction::identity(&t)).unwrap();
    let e3 = StrongEquivalence::from_reduction(r3);
    let left = compose_equivalences(&compose_equivalences(&e1, &e2).unwrap(), &e3).unwrap();
    let right = compose_equivalences(&e1, &compose_equivalences(&e2, &e3).unwrap()).unwrap();
    for e in [&left, &right] {
        assert!(verify_exhaustive(e.left(), 2).unwrap().passed);
        assert!(verify_exhaustive(e.right(), 2).unwrap().passed);
    }
    assert_eq!(homology_groups(left.top(), 2).unwrap(), homology_groups(right.top(), 2).unwrap());
    assert_eq!(homology_groups(left.effective(), 2).unwrap(), homology_groups(right.original(), 2).unwrap());
}
